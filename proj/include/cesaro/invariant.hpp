#pragma once

// Invariant-subspace constructions with residual certificates, carried out in
// the two models where each statement is natively computable: spans of
// y^k e^{lambda y} on the weighted line, and spans of generalized eigenvectors
// (1-z)^{-gamma} log^k(1/(1-z)) on coefficient truncations of the disc.
//
// Boundary policy on the disc side: the generator picks up (N+1) a_{N+1} in
// its top row, so the truncated resolvent applied to a slowly decaying
// coefficient vector is off by an exactly known constant vector (the top-row
// defect spreads evenly through the back substitution). That constant is
// removed in closed form before residuals are measured, and pairings against
// finitely supported probes are completed with the closed-form coefficient
// sums sum_n a_n/(n+1). What remains is pure rounding.

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cesaro/evaluable.hpp"
#include "cesaro/hardy.hpp"
#include "cesaro/linemodel.hpp"
#include "cesaro/quadrature.hpp"

namespace cesaro {

// Finite spectral set: (lambda, block size). Re lambda > 0, blocks >= 1,
// lambdas pairwise distinct. Block size m covers powers y^0..y^{m-1}.
struct SpectralData {
    std::vector<std::pair<Complex, int>> points;
};

void validate_spectral_data(const SpectralData& data);
int spectral_dimension(const SpectralData& data);

struct CertCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Certificate {
    std::string subspace;
    std::vector<CertCheck> checks;
    std::map<std::string, double> metrics;
    bool pass = true;

    // pass when residual <= tolerance
    void add(const std::string& name, double residual, double tolerance);
    // pass when value >= floor (margin checks such as Gram determinants)
    void add_floor(const std::string& name, double value, double floor);
};

std::string certificate_json(const Certificate& cert);

// Coefficients c_j in S_t (y^k e^{lambda y}) = sum_j c_j y^j e^{lambda y}:
// c_j = binom(k,j) (-t)^{k-j} e^{-lambda t}.
std::vector<Complex> exp_monomial_shift_expansion(Complex lambda, int k, double t);

// Max pointwise mismatch of that expansion against the shifted tree over the
// probe grid, relative to max(1, |value|).
double shift_reconstruction_residual(Complex lambda, int k, double t,
                                     const std::vector<double>& probes);

struct SubspaceBasis {
    std::vector<EvalPtr> vectors;
    OperatorMatrix gram;  // dense, spectral_dimension square, exactly Hermitian
    std::string model;
};

// Basis {y^k e^{lambda y}} with Gram by weighted quadrature over the line.
SubspaceBasis build_line_subspace(const SpectralData& data);

// Shift-invariance certificate for the span: reconstruction residual for every
// basis element at every sampled t.
Certificate line_subspace_invariance(const SpectralData& data, const std::vector<double>& ts,
                                     const std::vector<double>& probes);

// Taylor coefficients through degree N of (1-z)^{-gamma} log^k(1/(1-z)).
// Requires Re gamma < 1/2 (square summability of the coefficients).
CoeffVector gen_eigenvector_coeffs(Complex gamma, int k, int N);

// Max over rows 0..N-1 of (A - gamma) g_k - k g_{k-1}, relative to the largest
// coefficient of g_k. Row N is excluded: the truncation drops (N+1) a_{N+1}.
double chain_residual(Complex gamma, int k, int N);

struct CoinvarianceReport {
    int N = 0;
    int band = 0;    // excluded top band width
    int window = 0;  // residuals measured on indices 0..window
    std::vector<double> eigen_residuals;
    double complement_leak = 0.0;
    Certificate cert;
};

// Span of the chain g_0..g_{count-1} under the adjoint resolvent action:
// per-vector span residuals after the boundary correction, plus the leak of
// C f back into the span for seeded random probes f orthogonal to it.
CoinvarianceReport verify_cesaro_coinvariance(Complex gamma, int count, int N, int band = 16);

// M + L2((T, inf), w) with M spanned by e^{conj(lambda) y} on (-inf, T):
// translation membership for each tau in t_samples, plus the standardness
// refutation (the left component is one-dimensional, not a full tail space).
Certificate nonstandard_subspace_certificate(Complex lambda, double T,
                                             const std::vector<double>& t_samples,
                                             const std::vector<double>& probes);

// The same classifier on the plain tail space L2((a, inf), w); must come out
// standard (left component empty).
Certificate standard_subspace_regression(double a);

// int_{-T}^inf e^{-s u} f(-u) du for f supported on (-inf, T), Re s > 0.
// breakpoints lists v = T - y values where f(T - v) jumps; the integration is
// split there so the doubling error control sees smooth pieces only.
Complex twisted_laplace(const EvalPtr& f, Complex s, double T, const QuadratureRule& rule,
                        const std::vector<double>& breakpoints = {});

// B(s) = prod ((s - lambda)/(s + conj(lambda)))^m over the spectral set.
Complex blaschke_eval(Complex s, const SpectralData& zeros);

// {s -> 1/(s + conj(lambda))^{j+1} : j < m} across the set, the kernel
// functions spanning the model space of B.
std::vector<std::function<Complex(Complex)>> model_space_kernel_basis(const SpectralData& zeros);

// Unit modulus on the imaginary axis, vanishing at the zeros, and the twisted
// transform of e^{conj(lambda) y} chi_{(-inf,0)} sitting in the kernel span.
Certificate model_space_certificate(const SpectralData& zeros);

// Two shift-invariant one-dimensional spans, neither containing the other:
// the invariant lattice is not a chain.
Certificate non_unicellularity_certificate(Complex lambda1, Complex lambda2);

}  // namespace cesaro
