#pragma once

// Quadrature on [0, infinity) for the kernel family
//
//     I(lambda, beta, m) = int_0^inf t^{beta-1} e^{-lambda t} (1 - e^{-t})^m dt
//
// with Re lambda > 0, Re beta > 0. Every rule stores plain nodes t_i and
// total weights w_i with the contract  int_0^inf F(t) dt ~ sum w_i F(t_i)
// for integrands that decay exponentially and are at worst t^{beta-1}
// singular at the origin (how the singularity is handled depends on the
// rule kind). For m=0 the exact value Gamma(beta) lambda^{-beta} serves as
// the built-in reference.
//
// Kinds:
//   gauss-laguerre: Newton-iterated nodes of L_n, total weights w_i e^{x_i};
//     the t^{beta-1} singularity is absorbed at integration time by the
//     substitution t = u^p / Re(lambda) with p chosen from Re beta.
//   tanh-sinh: the double-exponential rule composed with the Moebius map
//     (0,inf) -> (-1,1), which collapses to nodes t_k = exp(pi sinh(kh)).
//   gauss-jacobi-transformed: Gauss-Jacobi on (0,1) with weight
//     (1-x)^{beta-1}, transported by x = e^{-t}; the stored weights absorb
//     the singular factor for the beta the rule was built with.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cesaro/special.hpp"

namespace cesaro {

enum class RuleKind { GaussLaguerre, TanhSinh, GaussJacobiTransformed };

class QuadratureRule {
  public:
    static QuadratureRule gauss_laguerre(int count);
    static QuadratureRule tanh_sinh(int count);
    static QuadratureRule gauss_jacobi_transformed(int count, double beta);

    // Memoized variants; safe to call concurrently.
    static const QuadratureRule& cached(RuleKind kind, int count, double beta = 1.0);

    RuleKind kind() const { return kind_; }
    int count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double jacobi_beta() const { return jacobi_beta_; }

    // Validates positivity and strict node ordering; the named factories above
    // are the usual entry points.
    QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights,
                   double jacobi_beta);

  private:
    RuleKind kind_;
    std::vector<double> nodes_;    // strictly increasing, positive
    std::vector<double> weights_;  // positive
    double jacobi_beta_;           // only meaningful for the jacobi kind
};

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate(estimate) {}
    double estimate;
};

struct IntegralResult {
    Complex value;
    double error_estimate;  // node-doubling difference
    int nodes_used;
    RuleKind kind_used;
};

// Single-rule evaluation, no error control. Exposed for convergence studies.
Complex integrate_with_rule(Complex lambda, Complex beta, int m, const QuadratureRule& rule);

// Doubling error estimate starting from the given base rule; escalates the
// node count (cap 1024), then retries with tanh-sinh if the base was
// Gauss-Laguerre, then throws QuadratureError carrying the last estimate.
// Acceptance is est <= tol * max(scale, |value|); scale = 1 gives the usual
// mixed criterion, scale = 0 demands pure relative accuracy.
IntegralResult integrate_gamma_kernel_checked(Complex lambda, Complex beta, int m,
                                              const QuadratureRule& base, double tol = 1e-10,
                                              double scale = 1.0);

Complex integrate_gamma_kernel(Complex lambda, Complex beta, int m, const QuadratureRule& rule);

// Same doubling driver for an arbitrary integrand on (0, inf). The integrand
// sees raw nodes (no power substitution), so endpoint singularities rely on
// the tanh-sinh escalation.
IntegralResult integrate_function_checked(const std::function<Complex(double)>& f,
                                          const QuadratureRule& base, double tol = 1e-10,
                                          double scale = 1.0);

// int_0^inf e^{-t} binom(n,j) e^{-jt} (1-e^{-t})^{n-j} dt; exact value 1/(n+1).
Complex laplace_resolvent_entry(int n, int j, const QuadratureRule& rule);

const QuadratureRule& default_rule();  // Gauss-Laguerre, 64 nodes

}  // namespace cesaro
