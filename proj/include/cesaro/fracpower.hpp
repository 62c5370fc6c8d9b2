#pragma once

// Fractional powers (lambda - A)^{-beta} of the semigroup generator, in the
// transposed (lower-triangular) coefficient convention, so beta = 1 at
// lambda = 1 reproduces cesaro_matrix(N) entrywise:
//
//     M[i][j] = binom(i,j) sum_{k=0}^{i-j} (-1)^k binom(i-j,k) (lambda+j+k)^{-beta}
//
// for i >= j. The alternating sum loses roughly i-j bits to cancellation, so
// each entry carries a running error estimate 2 eps binom(i,j) sum|terms|;
// the Auto method keeps the direct sum only while that estimate stays below
// 1e-13 and otherwise evaluates the equivalent positive-integrand form
//
//     binom(i,j)/Gamma(beta) int_0^inf t^{beta-1} e^{-(lambda+j)t} (1-e^{-t})^{i-j} dt
//
// through the checked quadrature driver in pure-relative mode. The explicit
// DirectSum and ExtendedPrecision methods throw FracCancellationError instead
// of silently returning entries whose estimate exceeds spec.tolerance.

#include <complex>
#include <stdexcept>
#include <string>

#include "cesaro/evaluable.hpp"
#include "cesaro/hardy.hpp"
#include "cesaro/quadrature.hpp"
#include "cesaro/special.hpp"

namespace cesaro {

enum class FracMethod { Auto, DirectSum, Integral, ExtendedPrecision };

const char* frac_method_name(FracMethod m);
FracMethod frac_method_from_name(const std::string& name);

struct FracPowerSpec {
    Complex beta{1.0, 0.0};    // Re beta > 0
    Complex lambda{1.0, 0.0};  // Re lambda > 1/2, the semigroup growth bound
    int N = 32;
    FracMethod method = FracMethod::Auto;
    double tolerance = 1e-8;  // cancellation gate for the explicit sum methods
};

struct FracCancellationError : std::runtime_error {
    FracCancellationError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate(estimate) {}
    double estimate;
};

// (lambda - A)^{-beta} at truncation order spec.N.
OperatorMatrix resolvent_power_matrix(const FracPowerSpec& spec);

// The lambda = 1 instance, i.e. the fractional Cesaro power C^beta.
OperatorMatrix frac_cesaro_matrix(const FracPowerSpec& spec);

// beta = 1/2 by the integral method over the caller's base rule; the square
// B * B matches resolvent_power_matrix at beta = 1 up to quadrature accuracy.
OperatorMatrix square_root_matrix(Complex lambda, int N, const QuadratureRule& rule);

// int_0^inf (adjoint composition entries at time t) density(t) dt, entrywise.
// density must be absolutely integrable against e^{t/2}; only quadrature
// convergence is checked. With density t^{beta-1} e^{-t} / Gamma(beta) this
// reproduces frac_cesaro_matrix.
OperatorMatrix phillips_apply(const EvalPtr& density, int N, const QuadratureRule& rule);

// max-abs of frac(beta1) frac(beta2) - frac(beta1+beta2) at lambda = 1.
// Truncated lower-triangular products are exact, so this isolates entry
// accuracy.
double semigroup_property_residual(Complex beta1, Complex beta2, int N);

}  // namespace cesaro
