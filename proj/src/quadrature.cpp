#include "cesaro/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace cesaro {

QuadratureRule::QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights,
                               double jacobi_beta)
    : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)), jacobi_beta_(jacobi_beta) {
    if (nodes_.empty() || nodes_.size() != weights_.size())
        throw std::invalid_argument("QuadratureRule: node/weight count mismatch");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > 0.0)) throw std::invalid_argument("QuadratureRule: nodes must be positive");
        if (!(weights_[i] > 0.0)) throw std::invalid_argument("QuadratureRule: weights must be positive");
        if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
            throw std::invalid_argument("QuadratureRule: nodes must be strictly increasing");
    }
}

namespace {

// Laguerre recurrence carried in the scaled form q_j = s^j L_j(x) with
// s = exp(-x/(2n)), so q_n = e^{-x/2} L_n(x) stays O(1) even deep in the
// oscillatory region; the raw L_n would overflow near e^{x/2} at large n.
struct ScaledLaguerre {
    double qn;    // e^{-x/2} L_n
    double qnm1;  // s^{n-1} L_{n-1}
    double s;
};

ScaledLaguerre laguerre_scaled(int n, double x) {
    const double s = std::exp(-x / (2.0 * n));
    double p2 = 0.0;  // q_{j-1}
    double p1 = 1.0;  // q_0 = L_0 = 1
    for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - x) * p2 * s - (j - 1.0) * p3 * s * s) / j;
    }
    return {p1, p2, s};
}

void gauss_laguerre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest style initial guesses
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - x[static_cast<std::size_t>(i) - 2]);
        }
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            ScaledLaguerre q = laguerre_scaled(n, z);
            // x L_n' = n (L_n - L_{n-1});  scales cancel in the Newton ratio
            const double deriv = n * (q.qn - q.s * q.qnm1) / z;
            const double dz = q.qn / deriv;
            z -= dz;
            if (std::abs(dz) <= 1e-10 * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("gauss_laguerre: Newton iteration stalled");
        // two polishing sweeps; quadratic convergence parks z within an ulp of
        // the root, so a step-size stopping rule cannot stall at large n
        for (int polish = 0; polish < 2; ++polish) {
            ScaledLaguerre q = laguerre_scaled(n, z);
            const double deriv = n * (q.qn - q.s * q.qnm1) / z;
            z -= q.qn / deriv;
        }
        x[static_cast<std::size_t>(i)] = z;
        // total weight w_i e^{x_i} = x_i / ((n+1)^2 (e^{-x/2} L_{n+1}(x_i))^2);
        // laguerre_scaled(n+1, .) returns exactly e^{-x/2} L_{n+1}
        ScaledLaguerre q = laguerre_scaled(n + 1, z);
        const double ln1 = q.qn;
        w[static_cast<std::size_t>(i)] = z / ((n + 1.0) * (n + 1.0) * ln1 * ln1);
    }
}

QuadratureRule make_gauss_laguerre(int count) {
    if (count < 2) throw std::invalid_argument("gauss_laguerre: need at least 2 nodes");
    std::vector<double> x, w;
    gauss_laguerre_nodes(count, x, w);
    return QuadratureRule(RuleKind::GaussLaguerre, std::move(x), std::move(w), 1.0);
}

QuadratureRule make_tanh_sinh(int count) {
    if (count < 8) throw std::invalid_argument("tanh_sinh: need at least 8 nodes");
    // t_k = exp(pi sinh(kh)); left range must reach exponents ~ -650 so
    // t^{beta-1} tails are captured even for small Re beta, the right range
    // only needs to cover exponential decay.
    const double pi = std::numbers::pi;
    const double span_l = std::asinh(650.0 / pi);
    const double span_r = std::asinh(25.0 / pi);
    const double h = (span_l + span_r) / (count - 1);
    const int kl = static_cast<int>(std::ceil(span_l / h));
    const int kr = static_cast<int>(std::ceil(span_r / h));
    std::vector<double> x, w;
    x.reserve(static_cast<std::size_t>(kl) + kr + 1);
    w.reserve(static_cast<std::size_t>(kl) + kr + 1);
    for (int k = -kl; k <= kr; ++k) {
        const double sh = pi * std::sinh(k * h);
        if (sh < -708.0 || sh > 700.0) continue;
        const double t = std::exp(sh);
        const double weight = h * pi * std::cosh(k * h) * t;
        if (!(t > 0.0) || !(weight > 0.0) || !std::isfinite(weight)) continue;
        x.push_back(t);
        w.push_back(weight);
    }
    return QuadratureRule(RuleKind::TanhSinh, std::move(x), std::move(w), 1.0);
}

// Gauss-Jacobi nodes on (-1,1) with weight (1-x)^alf (1+x)^bet, Newton on
// the three-term recurrence; nodes come out in descending order.
void gauss_jacobi_nodes(int n, double alf, double bet, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    const double alpbet = alf + bet;
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            const double an = alf / n, bn = bet / n;
            const double r1 = (1.0 + alf) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
            const double r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if (i == 1) {
            const double r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
            const double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * alf) / n;
            const double r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * std::abs(alf)) / n;
            z -= (1.0 - z) * r1 * r2 * r3;
        } else if (i == 2) {
            const double r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
            const double r2 = 1.0 + 0.22 * (n - 8.0) / n;
            const double r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * n * n);
            z -= (x[0] - z) * r1 * r2 * r3;
        } else if (i == n - 2) {
            const double r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
            const double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
            const double r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * n * n));
            z += (z - x[static_cast<std::size_t>(i) - 2]) * r1 * r2 * r3;
        } else if (i == n - 1) {
            const double r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
            const double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
            const double r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * n * n));
            z += (z - x[static_cast<std::size_t>(i) - 2]) * r1 * r2 * r3;
        } else {
            z = 3.0 * x[static_cast<std::size_t>(i) - 1] - 3.0 * x[static_cast<std::size_t>(i) - 2] +
                x[static_cast<std::size_t>(i) - 3];
        }
        double p1 = 0.0, p2 = 0.0, pp = 0.0, temp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            temp = 2.0 + alpbet;
            p1 = (alf - bet + temp * z) / 2.0;
            p2 = 1.0;
            for (int j = 2; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                temp = 2.0 * j + alpbet;
                const double a = 2.0 * j * (j + alpbet) * (temp - 2.0);
                const double b = (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
                const double c = 2.0 * (j - 1.0 + alf) * (j - 1.0 + bet) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (n * (alf - bet - temp * z) * p1 + 2.0 * (n + alf) * (n + bet) * p2) /
                 (temp * (1.0 - z * z));
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("gauss_jacobi: Newton iteration stalled");
        x[static_cast<std::size_t>(i)] = z;
        w[static_cast<std::size_t>(i)] =
            std::exp(std::lgamma(alf + n) + std::lgamma(bet + n) - std::lgamma(n + 1.0) -
                     std::lgamma(n + alpbet + 1.0)) *
            temp * std::pow(2.0, alpbet) / (pp * p2);
    }
}

QuadratureRule make_gauss_jacobi_transformed(int count, double beta) {
    if (count < 4) throw std::invalid_argument("gauss_jacobi_transformed: need at least 4 nodes");
    if (!(beta > 0.0)) throw std::invalid_argument("gauss_jacobi_transformed: beta must be positive");
    std::vector<double> xj, wj;
    gauss_jacobi_nodes(count, beta - 1.0, 0.0, xj, wj);
    // transport (−1,1) -> (0,1) -> t = −log(xt); the rule weight absorbs the
    // singular factor (1−xt)^{beta−1} ~ t^{beta−1} near t = 0
    std::vector<double> t(static_cast<std::size_t>(count)), w(static_cast<std::size_t>(count));
    const double two_pow = std::pow(2.0, -beta);
    for (int i = 0; i < count; ++i) {
        const double xt = 0.5 * (1.0 + xj[static_cast<std::size_t>(i)]);
        const double one_minus = 0.5 * (1.0 - xj[static_cast<std::size_t>(i)]);
        t[static_cast<std::size_t>(i)] = -std::log(xt);
        w[static_cast<std::size_t>(i)] =
            two_pow * wj[static_cast<std::size_t>(i)] * std::pow(one_minus, 1.0 - beta) / xt;
    }
    // NR emits x descending from +1, so t comes out ascending already
    return QuadratureRule(RuleKind::GaussJacobiTransformed, std::move(t), std::move(w), beta);
}

}  // namespace

QuadratureRule QuadratureRule::gauss_laguerre(int count) { return make_gauss_laguerre(count); }
QuadratureRule QuadratureRule::tanh_sinh(int count) { return make_tanh_sinh(count); }
QuadratureRule QuadratureRule::gauss_jacobi_transformed(int count, double beta) {
    return make_gauss_jacobi_transformed(count, beta);
}

const QuadratureRule& QuadratureRule::cached(RuleKind kind, int count, double beta) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, double>, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(static_cast<int>(kind), count, kind == RuleKind::GaussJacobiTransformed ? beta : 0.0);
    auto it = cache.find(key);
    if (it == cache.end()) {
        switch (kind) {
            case RuleKind::GaussLaguerre: it = cache.emplace(key, make_gauss_laguerre(count)).first; break;
            case RuleKind::TanhSinh: it = cache.emplace(key, make_tanh_sinh(count)).first; break;
            case RuleKind::GaussJacobiTransformed:
                it = cache.emplace(key, make_gauss_jacobi_transformed(count, beta)).first;
                break;
        }
    }
    return it->second;
}

const QuadratureRule& default_rule() { return QuadratureRule::cached(RuleKind::GaussLaguerre, 64); }

namespace {

// log of the kernel t^{beta-1} e^{-lambda t} (1-e^{-t})^m at a positive node;
// evaluated in log form so huge nodes underflow cleanly instead of hitting
// inf * 0.
Complex kernel_log(double t, Complex lambda, Complex beta, int m) {
    Complex e = (beta - 1.0) * std::log(t) - lambda * t;
    if (m > 0) e += static_cast<double>(m) * std::log(-std::expm1(-t));
    return e;
}

Complex kernel_value(double t, Complex lambda, Complex beta, int m) {
    Complex e = kernel_log(t, lambda, beta, m);
    if (e.real() < -745.0) return {0.0, 0.0};
    return std::exp(e);
}

int power_substitution(Complex beta) {
    const double rb = beta.real();
    if (rb >= 1.0) return 1;
    int p = static_cast<int>(std::ceil(1.0 / rb));
    p = std::max(p, 2);
    return std::min(p, 8);
}

}  // namespace

Complex integrate_with_rule(Complex lambda, Complex beta, int m, const QuadratureRule& rule) {
    if (!(lambda.real() > 0.0)) throw std::domain_error("integrate_gamma_kernel: Re lambda must be > 0");
    if (!(beta.real() > 0.0)) throw std::domain_error("integrate_gamma_kernel: Re beta must be > 0");
    if (m < 0) throw std::domain_error("integrate_gamma_kernel: m must be >= 0");

    NeumaierComplexSum<double> acc;
    if (rule.kind() == RuleKind::GaussLaguerre) {
        // substitution t = u^p / c with c = Re lambda; p = 1 leaves the
        // e^{-u}-type decay the rule is exact for, p >= 2 removes the
        // t^{beta-1} endpoint singularity when Re beta < 1
        const int p = power_substitution(beta);
        const double c = lambda.real();
        const double logc = std::log(c);
        for (int i = 0; i < rule.count(); ++i) {
            const double u = rule.nodes()[static_cast<std::size_t>(i)];
            const double logu = std::log(u);
            const double logt = p * logu - logc;
            if (logt > 700.0) continue;  // e^{-lambda t} underflows anyway
            const double t = std::exp(logt);
            // G(u) = p u^{p-1}/c * kernel(t); assembled in log form
            Complex e = (beta - 1.0) * logt - lambda * t + (p - 1.0) * logu - logc + std::log(static_cast<double>(p));
            if (m > 0) e += static_cast<double>(m) * std::log(-std::expm1(-t));
            if (e.real() < -745.0) continue;
            acc.add(rule.weights()[static_cast<std::size_t>(i)] * std::exp(e));
        }
        return acc.result();
    }
    for (int i = 0; i < rule.count(); ++i) {
        const double t = rule.nodes()[static_cast<std::size_t>(i)];
        const Complex v = kernel_value(t, lambda, beta, m);
        if (v != 0.0) acc.add(rule.weights()[static_cast<std::size_t>(i)] * v);
    }
    return acc.result();
}

namespace {

IntegralResult doubling_drive(const std::function<Complex(const QuadratureRule&)>& eval,
                              const QuadratureRule& base, double tol, double scale) {
    const int cap = 1024;
    RuleKind kind = base.kind();
    int count = base.count();
    Complex prev = eval(base);
    double est = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 2; ++pass) {
        while (2 * count <= cap) {
            count *= 2;
            const QuadratureRule& finer = QuadratureRule::cached(kind, count, base.jacobi_beta());
            const Complex cur = eval(finer);
            est = std::abs(cur - prev);
            prev = cur;
            if (est <= tol * std::max(scale, std::abs(cur)))
                return {cur, est, count, kind};
        }
        if (kind != RuleKind::GaussLaguerre) break;
        // tanh-sinh fallback for integrands Gauss-Laguerre cannot settle
        kind = RuleKind::TanhSinh;
        count = 128;
        prev = eval(QuadratureRule::cached(kind, count));
    }
    throw QuadratureError("quadrature: error estimate " + std::to_string(est) +
                              " above requested tolerance",
                          est);
}

}  // namespace

IntegralResult integrate_gamma_kernel_checked(Complex lambda, Complex beta, int m,
                                              const QuadratureRule& base, double tol, double scale) {
    return doubling_drive(
        [&](const QuadratureRule& rule) { return integrate_with_rule(lambda, beta, m, rule); }, base,
        tol, scale);
}

IntegralResult integrate_function_checked(const std::function<Complex(double)>& f,
                                          const QuadratureRule& base, double tol, double scale) {
    auto eval = [&](const QuadratureRule& rule) {
        NeumaierComplexSum<double> acc;
        for (int i = 0; i < rule.count(); ++i) {
            const Complex v = f(rule.nodes()[static_cast<std::size_t>(i)]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) continue;
            acc.add(rule.weights()[static_cast<std::size_t>(i)] * v);
        }
        return acc.result();
    };
    return doubling_drive(eval, base, tol, scale);
}

Complex integrate_gamma_kernel(Complex lambda, Complex beta, int m, const QuadratureRule& rule) {
    return integrate_gamma_kernel_checked(lambda, beta, m, rule).value;
}

Complex laplace_resolvent_entry(int n, int j, const QuadratureRule& rule) {
    if (j < 0 || j > n) throw std::domain_error("laplace_resolvent_entry: need 0 <= j <= n");
    const double coeff = binomial(n, j);
    return coeff * integrate_gamma_kernel(Complex{static_cast<double>(j + 1), 0.0}, Complex{1.0, 0.0},
                                          n - j, rule);
}

}  // namespace cesaro
