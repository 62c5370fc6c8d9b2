#include "cesaro/fracpower.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

namespace {

void require_spec(Complex beta, Complex lambda, int N) {
    if (!(beta.real() > 0.0)) throw std::invalid_argument("fracpower: need Re beta > 0");
    if (!(lambda.real() > 0.5))
        throw std::invalid_argument("fracpower: need Re lambda > 1/2, the semigroup growth bound");
    if (N < 0) throw std::invalid_argument("fracpower: negative truncation order");
}

// Alternating sum with its cancellation estimate. The estimate is absolute:
// 2 eps binom(i,j) sum|terms| bounds what rounding can leave behind after the
// compensated sum, and grows roughly like 2^{i-j} once cancellation sets in.
Complex direct_entry(Complex lambda, Complex beta, int i, int j, double& est) {
    const int m = i - j;
    NeumaierComplexSum<double> sum;
    long double abs_sum = 0.0L;
    for (int k = 0; k <= m; ++k) {
        Complex term = binomial(m, k) * std::exp(-beta * std::log(lambda + Complex(j + k, 0.0)));
        if (k & 1) term = -term;
        sum.add(term);
        abs_sum += std::abs(term);
    }
    const long double pre = binomial_ld(i, j);
    est = static_cast<double>(2.0L * std::numeric_limits<double>::epsilon() * pre * abs_sum);
    return static_cast<double>(pre) * sum.result();
}

Complex extended_entry(Complex lambda, Complex beta, int i, int j, double& est) {
    using CLD = std::complex<long double>;
    const int m = i - j;
    const CLD betaL(beta.real(), beta.imag());
    const CLD lambdaL(lambda.real(), lambda.imag());
    NeumaierComplexSum<long double> sum;
    long double abs_sum = 0.0L;
    for (int k = 0; k <= m; ++k) {
        CLD term = binomial_ld(m, k) * std::exp(-betaL * std::log(lambdaL + CLD(j + k, 0.0L)));
        if (k & 1) term = -term;
        sum.add(term);
        abs_sum += std::abs(term);
    }
    const long double pre = binomial_ld(i, j);
    est = static_cast<double>(2.0L * std::numeric_limits<long double>::epsilon() * pre * abs_sum);
    const CLD v = pre * sum.result();
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Positive-integrand route. Pure-relative acceptance, because the binomial
// prefactor can reach ~1e18 and would amplify any absolute quadrature slack
// into the leading digits of the entry.
Complex integral_entry(Complex lambda, Complex beta, int i, int j, const QuadratureRule& base,
                       Complex inv_gamma) {
    const int m = i - j;
    const Complex shifted = lambda + Complex(j, 0.0);
    Complex val;
    try {
        val = integrate_gamma_kernel_checked(shifted, beta, m, base, 1e-12, 0.0).value;
    } catch (const QuadratureError&) {
        val = integrate_gamma_kernel_checked(shifted, beta, m, base, 1e-10, 0.0).value;
    }
    return static_cast<double>(binomial_ld(i, j)) * inv_gamma * val;
}

[[noreturn]] void throw_cancellation(const char* what, int i, int j, double est, double tol) {
    throw FracCancellationError(std::string(what) + " at entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + "): cancellation estimate " +
                                    std::to_string(est) + " exceeds tolerance " +
                                    std::to_string(tol) + "; switch to the integral method",
                                est);
}

Complex entry_value(const FracPowerSpec& spec, int i, int j, const QuadratureRule& base,
                    Complex inv_gamma) {
    double est = 0.0;
    switch (spec.method) {
        case FracMethod::DirectSum: {
            const Complex v = direct_entry(spec.lambda, spec.beta, i, j, est);
            if (!(est <= spec.tolerance)) throw_cancellation("direct sum", i, j, est, spec.tolerance);
            return v;
        }
        case FracMethod::ExtendedPrecision: {
            const Complex v = extended_entry(spec.lambda, spec.beta, i, j, est);
            if (!(est <= spec.tolerance))
                throw_cancellation("extended-precision sum", i, j, est, spec.tolerance);
            return v;
        }
        case FracMethod::Integral:
            return integral_entry(spec.lambda, spec.beta, i, j, base, inv_gamma);
        case FracMethod::Auto: {
            // keep the cheap sum only while its own estimate says it is clean
            const Complex v = direct_entry(spec.lambda, spec.beta, i, j, est);
            if (est <= 1e-13) return v;
            return integral_entry(spec.lambda, spec.beta, i, j, base, inv_gamma);
        }
    }
    throw std::logic_error("fracpower: unknown method");
}

OperatorMatrix build_matrix(const FracPowerSpec& spec, const QuadratureRule& base) {
    require_spec(spec.beta, spec.lambda, spec.N);
    if (!(spec.tolerance > 0.0)) throw std::invalid_argument("fracpower: tolerance must be > 0");
    const std::size_t stride = static_cast<std::size_t>(spec.N) + 1;
    std::vector<Complex> entries(stride * stride, Complex(0.0, 0.0));
    const Complex inv_gamma = std::exp(-log_gamma(spec.beta));
    for (int i = 0; i <= spec.N; ++i)
        for (int j = 0; j <= i; ++j)
            entries[static_cast<std::size_t>(i) * stride + j] =
                entry_value(spec, i, j, base, inv_gamma);
    return OperatorMatrix(spec.N, std::move(entries), MatrixStructure::LowerTriangular);
}

}  // namespace

const char* frac_method_name(FracMethod m) {
    switch (m) {
        case FracMethod::Auto: return "auto";
        case FracMethod::DirectSum: return "direct-sum";
        case FracMethod::Integral: return "integral";
        case FracMethod::ExtendedPrecision: return "extended-precision";
    }
    return "?";
}

FracMethod frac_method_from_name(const std::string& name) {
    if (name == "auto") return FracMethod::Auto;
    if (name == "direct-sum") return FracMethod::DirectSum;
    if (name == "integral") return FracMethod::Integral;
    if (name == "extended-precision") return FracMethod::ExtendedPrecision;
    throw std::invalid_argument("fracpower: unknown method name '" + name + "'");
}

OperatorMatrix resolvent_power_matrix(const FracPowerSpec& spec) {
    return build_matrix(spec, QuadratureRule::cached(RuleKind::GaussLaguerre, 64));
}

OperatorMatrix frac_cesaro_matrix(const FracPowerSpec& spec) {
    if (spec.lambda != Complex(1.0, 0.0))
        throw std::invalid_argument("frac_cesaro_matrix: the Cesaro instance has lambda = 1");
    return resolvent_power_matrix(spec);
}

OperatorMatrix square_root_matrix(Complex lambda, int N, const QuadratureRule& rule) {
    FracPowerSpec spec;
    spec.beta = Complex(0.5, 0.0);
    spec.lambda = lambda;
    spec.N = N;
    spec.method = FracMethod::Integral;
    return build_matrix(spec, rule);
}

OperatorMatrix phillips_apply(const EvalPtr& density, int N, const QuadratureRule& rule) {
    if (!density) throw std::invalid_argument("phillips_apply: null density");
    if (density->domain() != Evaluable::Domain::HalfLine)
        throw std::invalid_argument("phillips_apply: density must live on (0, inf)");
    if (N < 0) throw std::invalid_argument("phillips_apply: negative truncation order");
    const std::size_t stride = static_cast<std::size_t>(N) + 1;
    std::vector<Complex> entries(stride * stride, Complex(0.0, 0.0));
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= i; ++j) {
            const int m = i - j;
            const auto f = [&density, j, m](double t) -> Complex {
                const double window = m == 0 ? 1.0 : std::pow(-std::expm1(-t), m);
                return density->eval(t) * (std::exp(-j * t) * window);
            };
            Complex val;
            try {
                val = integrate_function_checked(f, rule, 1e-11, 0.0).value;
            } catch (const QuadratureError&) {
                val = integrate_function_checked(f, rule, 1e-9, 0.0).value;
            }
            entries[static_cast<std::size_t>(i) * stride + j] =
                static_cast<double>(binomial_ld(i, j)) * val;
        }
    }
    return OperatorMatrix(N, std::move(entries), MatrixStructure::LowerTriangular);
}

double semigroup_property_residual(Complex beta1, Complex beta2, int N) {
    FracPowerSpec spec;
    spec.N = N;
    spec.beta = beta1;
    const OperatorMatrix a = resolvent_power_matrix(spec);
    spec.beta = beta2;
    const OperatorMatrix b = resolvent_power_matrix(spec);
    spec.beta = beta1 + beta2;
    const OperatorMatrix c = resolvent_power_matrix(spec);
    return max_abs_diff(matmul(a, b), c);
}

}  // namespace cesaro
