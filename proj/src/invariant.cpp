#include "cesaro/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cesaro/semigroup.hpp"
#include "cesaro/special.hpp"
#include "json.hpp"

namespace cesaro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex cpow_int(Complex base, int n) {
    Complex out(1.0, 0.0);
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

double rpow_int(double base, int n) {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

// Gaussian elimination with partial pivoting, in place; b receives the
// solution. Small dense systems only (Gram and normal equations).
void solve_dense(std::vector<Complex>& a, std::vector<Complex>& b, int d, const char* who) {
    for (int col = 0; col < d; ++col) {
        int piv = col;
        double best = std::abs(a[static_cast<std::size_t>(col) * d + col]);
        for (int r = col + 1; r < d; ++r) {
            const double v = std::abs(a[static_cast<std::size_t>(r) * d + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (!(best > 0.0)) throw std::runtime_error(std::string(who) + ": singular system");
        if (piv != col) {
            for (int c = 0; c < d; ++c)
                std::swap(a[static_cast<std::size_t>(piv) * d + c],
                          a[static_cast<std::size_t>(col) * d + c]);
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < d; ++r) {
            const Complex f = a[static_cast<std::size_t>(r) * d + col] /
                              a[static_cast<std::size_t>(col) * d + col];
            if (f == Complex(0.0, 0.0)) continue;
            for (int c = col; c < d; ++c)
                a[static_cast<std::size_t>(r) * d + c] -=
                    f * a[static_cast<std::size_t>(col) * d + c];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = d - 1; r >= 0; --r) {
        Complex acc = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < d; ++c)
            acc -= a[static_cast<std::size_t>(r) * d + c] * b[static_cast<std::size_t>(c)];
        b[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r) * d + r];
    }
}

}  // namespace

void validate_spectral_data(const SpectralData& data) {
    if (data.points.empty()) throw std::invalid_argument("spectral data: empty point set");
    for (std::size_t i = 0; i < data.points.size(); ++i) {
        const auto& [lambda, mult] = data.points[i];
        if (!(lambda.real() > 0.0))
            throw std::invalid_argument("spectral data: need Re lambda > 0, got " +
                                        std::to_string(lambda.real()));
        if (mult < 1) throw std::invalid_argument("spectral data: block size must be >= 1");
        for (std::size_t j = 0; j < i; ++j)
            if (data.points[j].first == lambda)
                throw std::invalid_argument("spectral data: repeated lambda");
    }
}

int spectral_dimension(const SpectralData& data) {
    int d = 0;
    for (const auto& [lambda, mult] : data.points) d += mult;
    return d;
}

void Certificate::add(const std::string& name, double residual, double tolerance) {
    const bool ok = residual <= tolerance;
    checks.push_back({name, residual, tolerance, ok});
    pass = pass && ok;
}

void Certificate::add_floor(const std::string& name, double value, double floor) {
    const bool ok = value >= floor;
    checks.push_back({name, value, floor, ok});
    pass = pass && ok;
}

std::string certificate_json(const Certificate& cert) {
    nlohmann::json j;
    j["subspace"] = cert.subspace;
    j["pass"] = cert.pass;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : cert.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"residual", c.residual},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    j["metrics"] = nlohmann::json::object();
    for (const auto& [k, v] : cert.metrics) j["metrics"][k] = v;
    return j.dump(2);
}

std::vector<Complex> exp_monomial_shift_expansion(Complex lambda, int k, double t) {
    if (k < 0) throw std::invalid_argument("shift expansion: degree must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("shift expansion: time must be >= 0");
    const Complex decay = std::exp(-lambda * t);
    std::vector<Complex> c(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j)
        c[static_cast<std::size_t>(j)] = binomial(k, j) * rpow_int(-t, k - j) * decay;
    return c;
}

double shift_reconstruction_residual(Complex lambda, int k, double t,
                                     const std::vector<double>& probes) {
    if (probes.empty()) throw std::invalid_argument("shift residual: empty probe grid");
    const auto f = Evaluable::exp_monomial(lambda, k);
    const auto shifted = shift_apply(t, f);
    const auto c = exp_monomial_shift_expansion(lambda, k, t);
    std::vector<std::pair<Complex, EvalPtr>> parts;
    for (int j = 0; j <= k; ++j)
        parts.emplace_back(c[static_cast<std::size_t>(j)], Evaluable::exp_monomial(lambda, j));
    const auto rec = Evaluable::lin_comb(parts);
    double worst = 0.0;
    for (double y : probes) {
        const Complex want = shifted->eval(y);
        const double diff = std::abs(rec->eval(y) - want);
        worst = std::max(worst, diff / std::max(1.0, std::abs(want)));
    }
    return worst;
}

SubspaceBasis build_line_subspace(const SpectralData& data) {
    validate_spectral_data(data);
    std::vector<EvalPtr> vecs;
    for (const auto& [lambda, mult] : data.points)
        for (int k = 0; k < mult; ++k) vecs.push_back(Evaluable::exp_monomial(lambda, k));
    const int d = static_cast<int>(vecs.size());
    const auto w = WeightFn::canonical();
    const auto& rule = default_rule();
    std::vector<Complex> entries(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Complex v = weighted_inner(vecs[static_cast<std::size_t>(i)],
                                       vecs[static_cast<std::size_t>(j)], w, -kInf, kInf, rule);
            if (i == j) v = Complex(v.real(), 0.0);
            entries[static_cast<std::size_t>(i) * d + j] = v;
            entries[static_cast<std::size_t>(j) * d + i] = std::conj(v);
        }
    }
    return {std::move(vecs), OperatorMatrix(d - 1, std::move(entries), MatrixStructure::Dense),
            "line"};
}

Certificate line_subspace_invariance(const SpectralData& data, const std::vector<double>& ts,
                                     const std::vector<double>& probes) {
    validate_spectral_data(data);
    if (ts.empty()) throw std::invalid_argument("invariance certificate: no sampled times");
    Certificate cert;
    cert.subspace = "line span, dim " + std::to_string(spectral_dimension(data));
    for (const auto& [lambda, mult] : data.points) {
        for (int k = 0; k < mult; ++k) {
            for (double t : ts) {
                const double r = shift_reconstruction_residual(lambda, k, t, probes);
                cert.add("shift reconstruction lambda=" + std::to_string(lambda.real()) + "+" +
                             std::to_string(lambda.imag()) + "i k=" + std::to_string(k) +
                             " t=" + std::to_string(t),
                         r, 1e-12);
            }
        }
    }
    cert.metrics["dimension"] = spectral_dimension(data);
    return cert;
}

CoeffVector gen_eigenvector_coeffs(Complex gamma, int k, int N) {
    if (!(gamma.real() < 0.5))
        throw std::invalid_argument("generalized eigenvector: need Re gamma < 1/2, got " +
                                    std::to_string(gamma.real()));
    if (k < 0) throw std::invalid_argument("generalized eigenvector: log power must be >= 0");
    if (N < 0) throw std::invalid_argument("generalized eigenvector: order must be >= 0");
    const std::size_t len = static_cast<std::size_t>(N) + 1;
    std::vector<Complex> g(len);
    g[0] = Complex(1.0, 0.0);
    for (int n = 0; n < N; ++n)
        g[static_cast<std::size_t>(n) + 1] =
            g[static_cast<std::size_t>(n)] * (gamma + Complex(n, 0.0)) / Complex(n + 1, 0.0);
    std::vector<Complex> logs(len);
    for (int n = 1; n <= N; ++n) logs[static_cast<std::size_t>(n)] = Complex(1.0 / n, 0.0);
    for (int rep = 0; rep < k; ++rep) {
        std::vector<Complex> next(len);
        for (std::size_t n = 0; n < len; ++n) {
            NeumaierComplexSum<double> acc;
            for (std::size_t m = 0; m <= n; ++m) acc.add(g[m] * logs[n - m]);
            next[n] = acc.result();
        }
        g = std::move(next);
    }
    return CoeffVector(std::move(g));
}

double chain_residual(Complex gamma, int k, int N) {
    if (N < 1) throw std::invalid_argument("chain residual: order must be >= 1");
    const auto gk = gen_eigenvector_coeffs(gamma, k, N);
    const auto gprev = k > 0 ? gen_eigenvector_coeffs(gamma, k - 1, N) : CoeffVector::zero(N);
    const auto Ag = generator_matrix(N).apply(gk);
    double scale = 0.0;
    for (int n = 0; n <= N; ++n) scale = std::max(scale, std::abs(gk[n]));
    double worst = 0.0;
    for (int n = 0; n < N; ++n) {
        const Complex r = Ag[n] - gamma * gk[n] - Complex(k, 0.0) * gprev[n];
        worst = std::max(worst, std::abs(r));
    }
    return worst / scale;
}

CoinvarianceReport verify_cesaro_coinvariance(Complex gamma, int count, int N, int band) {
    if (count < 1) throw std::invalid_argument("coinvariance: need at least one chain vector");
    if (band < 0) throw std::invalid_argument("coinvariance: band must be >= 0");
    if (N < band + 4 * count + 8)
        throw std::invalid_argument("coinvariance: truncation too small for band " +
                                    std::to_string(band));

    // chain vectors one order beyond N; the extra coefficient feeds the
    // boundary correction
    std::vector<std::vector<Complex>> g(static_cast<std::size_t>(count));
    std::vector<Complex> top(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const auto ext = gen_eigenvector_coeffs(gamma, j, N + 1);
        auto& gj = g[static_cast<std::size_t>(j)];
        gj.assign(ext.coeffs().begin(), ext.coeffs().begin() + N + 1);
        top[static_cast<std::size_t>(j)] = ext[N + 1];
    }

    // resolvent action coefficients on the chain: mu[j][i] = (j!/i!) (1-gamma)^{-(j-i+1)}
    const Complex one_minus = Complex(1.0, 0.0) - gamma;
    std::vector<std::vector<Complex>> mu(static_cast<std::size_t>(count),
                                         std::vector<Complex>(static_cast<std::size_t>(count)));
    for (int j = 0; j < count; ++j) {
        double fact = 1.0;
        for (int i = j; i >= 0; --i) {
            if (i < j) fact *= i + 1;
            mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                fact / cpow_int(one_minus, j - i + 1);
        }
    }

    const auto T = resolvent_T_matrix(N);
    const int W = N - band;

    // window Gram and the corrected adjoint images
    const int d = count;
    std::vector<Complex> gram(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            NeumaierComplexSum<double> acc;
            for (int n = 0; n <= W; ++n)
                acc.add(g[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                        std::conj(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]));
            gram[static_cast<std::size_t>(i) * d + j] = acc.result();
        }

    CoinvarianceReport rep;
    rep.N = N;
    rep.band = band;
    rep.window = W;
    rep.cert.subspace =
        "disc chain span, gamma=" + std::to_string(gamma.real()) + "+" +
        std::to_string(gamma.imag()) + "i, dim " + std::to_string(count);

    for (int j = 0; j < count; ++j) {
        const auto u = T.apply(CoeffVector(g[static_cast<std::size_t>(j)]));
        // truncating the generator's top row shifts the whole solve by an
        // exactly known constant; put it back before measuring
        NeumaierComplexSum<double> ct;
        for (int i = 0; i <= j; ++i)
            ct.add(mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                   top[static_cast<std::size_t>(i)]);
        const Complex correction = ct.result();
        std::vector<Complex> v(static_cast<std::size_t>(W) + 1);
        for (int n = 0; n <= W; ++n) v[static_cast<std::size_t>(n)] = -u[n] + correction;

        std::vector<Complex> rhs(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            NeumaierComplexSum<double> acc;
            for (int n = 0; n <= W; ++n)
                acc.add(v[static_cast<std::size_t>(n)] *
                        std::conj(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]));
            rhs[static_cast<std::size_t>(i)] = acc.result();
        }
        auto a = gram;
        solve_dense(a, rhs, d, "coinvariance gram");

        double num = 0.0, den = 0.0;
        for (int n = 0; n <= W; ++n) {
            Complex fit(0.0, 0.0);
            for (int i = 0; i < d; ++i)
                fit += rhs[static_cast<std::size_t>(i)] *
                       g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
            num += std::norm(v[static_cast<std::size_t>(n)] - fit);
            den += std::norm(g[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)]);
        }
        const double resid = std::sqrt(num) / std::sqrt(den);
        rep.eigen_residuals.push_back(resid);
        rep.cert.add("coinvariance residual k=" + std::to_string(j), resid, 1e-10);
    }

    // complement probes: finite-support vectors orthogonal to the span under
    // the full sequence pairing; the pairing of C f against the chain is then
    // completed with the closed-form sums sum_n a_n/(n+1) = j!/(1-gamma)^{j+1}
    std::vector<Complex> tail(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double fact = 1.0;
        for (int i = 1; i <= j; ++i) fact *= i;
        const Complex full = fact / cpow_int(one_minus, j + 1);
        NeumaierComplexSum<double> part;
        for (int n = 0; n <= N; ++n)
            part.add(g[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] /
                     Complex(n + 1, 0.0));
        tail[static_cast<std::size_t>(j)] = full - part.result();
    }
    std::vector<Complex> gram_full(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            NeumaierComplexSum<double> acc;
            for (int n = 0; n <= N; ++n)
                acc.add(g[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                        std::conj(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]));
            gram_full[static_cast<std::size_t>(i) * d + j] = acc.result();
        }

    std::mt19937_64 rng(20260821u);
    std::uniform_real_distribution<double> coin(-1.0, 1.0);
    double worst_leak = 0.0;
    for (int probe = 0; probe < 100; ++probe) {
        std::vector<Complex> f(static_cast<std::size_t>(N) + 1);
        for (auto& z : f) z = Complex(coin(rng), coin(rng));
        std::vector<Complex> beta(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            NeumaierComplexSum<double> acc;
            for (int n = 0; n <= N; ++n)
                acc.add(f[static_cast<std::size_t>(n)] *
                        std::conj(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]));
            beta[static_cast<std::size_t>(i)] = acc.result();
        }
        auto a = gram_full;
        solve_dense(a, beta, d, "coinvariance gram");
        for (int n = 0; n <= N; ++n)
            for (int i = 0; i < d; ++i)
                f[static_cast<std::size_t>(n)] -=
                    beta[static_cast<std::size_t>(i)] *
                    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];

        const auto cf = apply_cesaro(CoeffVector(f));
        NeumaierComplexSum<double> fsum;
        for (int n = 0; n <= N; ++n) fsum.add(f[static_cast<std::size_t>(n)]);
        const Complex S = fsum.result();

        std::vector<Complex> p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            NeumaierComplexSum<double> acc;
            for (int n = 0; n <= N; ++n)
                acc.add(cf[n] *
                        std::conj(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]));
            p[static_cast<std::size_t>(i)] =
                acc.result() + S * std::conj(tail[static_cast<std::size_t>(i)]);
        }
        auto a2 = gram_full;
        auto alpha = p;
        solve_dense(a2, alpha, d, "coinvariance gram");
        double proj_sq = 0.0;
        for (int i = 0; i < d; ++i)
            proj_sq += (std::conj(p[static_cast<std::size_t>(i)]) *
                        alpha[static_cast<std::size_t>(i)])
                           .real();
        double fn_sq = 0.0;
        for (int n = 0; n <= N; ++n) fn_sq += std::norm(f[static_cast<std::size_t>(n)]);
        worst_leak = std::max(worst_leak, std::sqrt(std::max(proj_sq, 0.0) / fn_sq));
    }
    rep.complement_leak = worst_leak;
    rep.cert.add("complement invariance leak", worst_leak, 1e-8);

    const Complex eig = Complex(1.0, 0.0) / one_minus;
    rep.cert.metrics["eigenvalue_re"] = eig.real();
    rep.cert.metrics["eigenvalue_im"] = eig.imag();
    rep.cert.metrics["window"] = W;
    rep.cert.metrics["band"] = band;
    rep.cert.metrics["order"] = N;
    return rep;
}

Certificate nonstandard_subspace_certificate(Complex lambda, double T,
                                             const std::vector<double>& t_samples,
                                             const std::vector<double>& probes) {
    if (!(lambda.real() > 0.0))
        throw std::invalid_argument("nonstandard certificate: need Re lambda > 0");
    if (t_samples.empty()) throw std::invalid_argument("nonstandard certificate: no times");
    for (double t : t_samples)
        if (!(t >= 0.0)) throw std::invalid_argument("nonstandard certificate: negative time");
    std::vector<double> left;
    for (double y : probes)
        if (y < T - 1e-12) left.push_back(y);
    if (left.size() < 2)
        throw std::invalid_argument("nonstandard certificate: need at least 2 probes left of T");

    const Complex lbar = std::conj(lambda);
    const auto ebar = Evaluable::exp_monomial(lbar, 0);
    const auto one = Evaluable::constant({1.0, 0.0});
    const auto gen = Evaluable::indicator(-kInf, T, ebar);
    const auto tail_gen = Evaluable::indicator(T, T + 1.0, one);

    Certificate cert;
    cert.subspace = "left kernel span + tail, lambda=" + std::to_string(lambda.real()) + "+" +
                    std::to_string(lambda.imag()) + "i, T=" + std::to_string(T);

    for (double tau : t_samples) {
        const auto shifted = shift_apply(tau, gen);
        const Complex denom = ebar->eval(left[0]);
        const Complex c = shifted->eval(left[0]) / denom;
        double worst = 0.0;
        for (double y : left) {
            const Complex want = shifted->eval(y);
            worst = std::max(worst, std::abs(c * ebar->eval(y) - want) /
                                        std::max(1.0, std::abs(want)));
        }
        cert.add("left restriction stays in the span, tau=" + std::to_string(tau), worst, 1e-12);
        cert.add("translation scalar matches, tau=" + std::to_string(tau),
                 std::abs(c - std::exp(-lbar * tau)), 1e-12);

        const auto tail_shifted = shift_apply(tau, tail_gen);
        double spill = 0.0;
        for (double y : left) spill = std::max(spill, std::abs(tail_shifted->eval(y)));
        cert.add("tail component stays right of T, tau=" + std::to_string(tau), spill, 1e-15);
    }

    // standardness refutation: the left component is the single ray through
    // e^{conj(lambda) y}, so a window indicator left of T cannot be absorbed
    const auto w = WeightFn::canonical();
    const auto& rule = default_rule();
    const auto window = Evaluable::indicator(T - 1.0, T, one);
    const double en2 = weighted_norm_sq(ebar, w, -kInf, T, rule);
    const double hn2 = weighted_norm_sq(window, w, T - 1.0, T, rule);
    const Complex ip = weighted_inner(window, ebar, w, T - 1.0, T, rule);
    const double resid_sq = std::max(hn2 - std::norm(ip) / en2, 0.0);
    const double ratio = std::sqrt(resid_sq / hn2);
    cert.add_floor("left member present, norm^2", en2, 1e-12);
    cert.add_floor("window probe escapes the left span, ratio", ratio, 0.1);

    cert.metrics["left_norm_sq"] = en2;
    cert.metrics["refutation_ratio"] = ratio;
    return cert;
}

Certificate standard_subspace_regression(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("standard regression: cut must be finite");
    const auto one = Evaluable::constant({1.0, 0.0});
    const auto q1 = Evaluable::indicator(a, a + 1.0, one);
    const auto q2 = Evaluable::indicator(a + 1.0, a + 2.0, one);
    const auto w = WeightFn::canonical();
    const auto& rule = default_rule();

    Certificate cert;
    cert.subspace = "standard tail, a=" + std::to_string(a);

    const std::vector<double> probes = {a - 3.0, a - 1.5, a - 0.5, a - 0.01};
    double spill = 0.0;
    for (double tau : {0.0, 0.5, 1.0, 2.0}) {
        for (const auto& q : {q1, q2}) {
            const auto shifted = shift_apply(tau, q);
            for (double y : probes) spill = std::max(spill, std::abs(shifted->eval(y)));
        }
    }
    cert.add("members vanish left of the cut after every shift", spill, 1e-15);

    const double left_sq = weighted_norm_sq(q1, w, -kInf, a, rule) +
                           weighted_norm_sq(q2, w, -kInf, a, rule);
    cert.add("left component norm^2 (standard iff ~0)", left_sq, 1e-12);
    cert.metrics["left_norm_sq"] = left_sq;
    cert.metrics["standard"] = cert.pass ? 1.0 : 0.0;
    return cert;
}

Complex twisted_laplace(const EvalPtr& f, Complex s, double T, const QuadratureRule& rule,
                        const std::vector<double>& breakpoints) {
    if (!f) throw std::invalid_argument("twisted_laplace: null tree");
    if (f->domain() != Evaluable::Domain::Line)
        throw std::invalid_argument("twisted_laplace: need a full-line tree");
    if (!(s.real() > 0.0)) throw std::invalid_argument("twisted_laplace: need Re s > 0");

    std::vector<double> cuts;
    for (double c : breakpoints)
        if (c > 1e-14 && std::isfinite(c)) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto piece = [&f, s, T](double v) { return std::exp(-s * v) * f->eval(T - v); };
    NeumaierComplexSum<double> total;
    double prev = 0.0;
    for (double c : cuts) {
        const double len = c - prev;
        const auto seg = [piece, prev, len](double r) {
            const double v = prev + len * -std::expm1(-r);
            return piece(v) * (len * std::exp(-r));
        };
        total.add(integrate_function_checked(seg, rule, 1e-11, 1.0).value);
        prev = c;
    }
    const double base = prev;
    const auto tail = [piece, base](double r) { return piece(base + r); };
    total.add(integrate_function_checked(tail, rule, 1e-11, 1.0).value);
    return std::exp(s * T) * total.result();
}

Complex blaschke_eval(Complex s, const SpectralData& zeros) {
    validate_spectral_data(zeros);
    Complex out(1.0, 0.0);
    for (const auto& [lambda, mult] : zeros.points)
        out *= cpow_int((s - lambda) / (s + std::conj(lambda)), mult);
    return out;
}

std::vector<std::function<Complex(Complex)>> model_space_kernel_basis(const SpectralData& zeros) {
    validate_spectral_data(zeros);
    std::vector<std::function<Complex(Complex)>> basis;
    for (const auto& [lambda, mult] : zeros.points) {
        const Complex lbar = std::conj(lambda);
        for (int j = 0; j < mult; ++j)
            basis.push_back(
                [lbar, j](Complex s) { return Complex(1.0, 0.0) / cpow_int(s + lbar, j + 1); });
    }
    return basis;
}

Certificate model_space_certificate(const SpectralData& zeros) {
    validate_spectral_data(zeros);
    Certificate cert;
    cert.subspace = "model space, " + std::to_string(zeros.points.size()) + " zero group(s)";

    double axis_worst = 0.0;
    for (double y : {-5.0, -1.0, 0.3, 2.0, 7.0})
        axis_worst =
            std::max(axis_worst, std::abs(std::abs(blaschke_eval(Complex(0.0, y), zeros)) - 1.0));
    cert.add("unit modulus on the imaginary axis", axis_worst, 1e-12);

    double zero_worst = 0.0;
    for (const auto& [lambda, mult] : zeros.points)
        zero_worst = std::max(zero_worst, std::abs(blaschke_eval(lambda, zeros)));
    cert.add("vanishing at the prescribed zeros", zero_worst, 1e-12);

    // the twisted transform of the left generator must lie in the kernel span
    const auto basis = model_space_kernel_basis(zeros);
    const int d = static_cast<int>(basis.size());
    const Complex lbar = std::conj(zeros.points.front().first);
    const auto f =
        Evaluable::indicator(-kInf, 0.0, Evaluable::exp_monomial(lbar, 0));
    std::vector<Complex> svals, target;
    for (int i = 0; i < 20; ++i) {
        const Complex s(0.4 + 0.11 * i, -1.4 + 0.15 * i);
        svals.push_back(s);
        target.push_back(twisted_laplace(f, s, 0.0, default_rule()));
    }
    std::vector<Complex> normal(static_cast<std::size_t>(d) * d);
    std::vector<Complex> rhs(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        NeumaierComplexSum<double> r;
        for (std::size_t m = 0; m < svals.size(); ++m)
            r.add(std::conj(basis[static_cast<std::size_t>(i)](svals[m])) * target[m]);
        rhs[static_cast<std::size_t>(i)] = r.result();
        for (int j = 0; j < d; ++j) {
            NeumaierComplexSum<double> acc;
            for (std::size_t m = 0; m < svals.size(); ++m)
                acc.add(std::conj(basis[static_cast<std::size_t>(i)](svals[m])) *
                        basis[static_cast<std::size_t>(j)](svals[m]));
            normal[static_cast<std::size_t>(i) * d + j] = acc.result();
        }
    }
    solve_dense(normal, rhs, d, "model space fit");
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < svals.size(); ++m) {
        Complex fit(0.0, 0.0);
        for (int j = 0; j < d; ++j)
            fit += rhs[static_cast<std::size_t>(j)] * basis[static_cast<std::size_t>(j)](svals[m]);
        num += std::norm(target[m] - fit);
        den += std::norm(target[m]);
    }
    cert.add("twisted transform sits in the kernel span", std::sqrt(num / den), 1e-10);
    cert.metrics["kernel_dimension"] = d;
    return cert;
}

Certificate non_unicellularity_certificate(Complex lambda1, Complex lambda2) {
    if (!(lambda1.real() > 0.0) || !(lambda2.real() > 0.0))
        throw std::invalid_argument("non-unicellularity: need Re lambda > 0");
    if (lambda1 == lambda2)
        throw std::invalid_argument("non-unicellularity: the two rays must be distinct");

    const auto f1 = Evaluable::exp_monomial(lambda1, 0);
    const auto f2 = Evaluable::exp_monomial(lambda2, 0);
    const auto w = WeightFn::canonical();
    const auto& rule = default_rule();
    const double g11 = weighted_norm_sq(f1, w, -kInf, kInf, rule);
    const double g22 = weighted_norm_sq(f2, w, -kInf, kInf, rule);
    const Complex g12 = weighted_inner(f1, f2, w, -kInf, kInf, rule);
    const double det_ratio = (g11 * g22 - std::norm(g12)) / (g11 * g22);

    Certificate cert;
    cert.subspace = "two exponential rays, lambda1=" + std::to_string(lambda1.real()) + "+" +
                    std::to_string(lambda1.imag()) + "i, lambda2=" +
                    std::to_string(lambda2.real()) + "+" + std::to_string(lambda2.imag()) + "i";
    cert.add_floor("gram determinant ratio", det_ratio, 1e-6);

    std::vector<double> probes;
    for (int i = 0; i <= 40; ++i) probes.push_back(-8.0 + 0.3 * i);
    for (double t : {0.1, 1.0, 3.0}) {
        cert.add("ray 1 invariance t=" + std::to_string(t),
                 shift_reconstruction_residual(lambda1, 0, t, probes), 1e-10);
        cert.add("ray 2 invariance t=" + std::to_string(t),
                 shift_reconstruction_residual(lambda2, 0, t, probes), 1e-10);
    }
    cert.metrics["gram_det_ratio"] = det_ratio;
    cert.metrics["norm1_sq"] = g11;
    cert.metrics["norm2_sq"] = g22;
    return cert;
}

}  // namespace cesaro
