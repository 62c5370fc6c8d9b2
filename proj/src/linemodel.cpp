#include "cesaro/linemodel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace cesaro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_time(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("linemodel: time must be >= 0");
}

void require_tree(const EvalPtr& f, Evaluable::Domain dom, const char* who) {
    if (!f) throw std::invalid_argument(std::string(who) + ": null tree");
    if (f->domain() != dom)
        throw std::invalid_argument(std::string(who) + ": tree lives on the wrong domain");
}

// never decreasing (within slack), at least doubling, ending above 1
bool diverging_trend(const std::vector<double>& v) {
    if (v.size() < 2) return false;
    for (double s : v)
        if (!std::isfinite(s)) return false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] < v[i] - 1e-9 * (1.0 + std::abs(v[i]))) return false;
    return v.back() >= 2.0 * v.front() && v.back() > 1.0;
}

}  // namespace

WeightFn WeightFn::canonical() { return {Tag::Canonical, 0.0}; }

WeightFn WeightFn::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("WeightFn: constant weight must be positive");
    return {Tag::Constant, c};
}

WeightFn WeightFn::exp_linear(double a) { return {Tag::ExpLinear, a}; }

WeightFn WeightFn::exp_quadratic(double a) { return {Tag::ExpQuadratic, a}; }

double WeightFn::eval(double y) const { return tag_ == Tag::Constant ? param_ : std::exp(log_eval(y)); }

double WeightFn::log_eval(double y) const {
    switch (tag_) {
        case Tag::Canonical: return -2.0 * std::expm1(y);
        case Tag::Constant: return std::log(param_);
        case Tag::ExpLinear: return param_ * y;
        case Tag::ExpQuadratic: return param_ * y * y;
    }
    return 0.0;
}

std::string WeightFn::name() const {
    switch (tag_) {
        case Tag::Canonical: return "e^{-2(e^y-1)}";
        case Tag::Constant: return "constant " + std::to_string(param_);
        case Tag::ExpLinear: return "e^{" + std::to_string(param_) + " y}";
        case Tag::ExpQuadratic: return "e^{" + std::to_string(param_) + " y^2}";
    }
    return "?";
}

double weight_eval(double y) { return std::exp(-2.0 * std::expm1(y)); }

EvalPtr halfline_semigroup_apply(double t, const EvalPtr& g) {
    require_time(t);
    require_tree(g, Evaluable::Domain::HalfLine, "halfline_semigroup_apply");
    return Evaluable::exp_factor(Evaluable::arg_scale(g, std::exp(-t)), {}, Complex(-t, 0.0),
                                 Complex(std::expm1(-t), 0.0));
}

EvalPtr mellin_unitary(const EvalPtr& h) {
    require_tree(h, Evaluable::Domain::Line, "mellin_unitary");
    return Evaluable::log_warp(Evaluable::exp_factor(h, {}, Complex(0.0, 0.0), Complex(-0.5, 0.0)));
}

EvalPtr mellin_unitary_inv(const EvalPtr& g) {
    require_tree(g, Evaluable::Domain::HalfLine, "mellin_unitary_inv");
    return Evaluable::exp_factor(Evaluable::exp_warp(g), {}, Complex(0.0, 0.0), Complex(0.5, 0.0));
}

EvalPtr sigma_apply(double t, const EvalPtr& h) {
    require_time(t);
    require_tree(h, Evaluable::Domain::Line, "sigma_apply");
    // -(1-e^{-t})e^y split as -e^y + e^{y-t}: the second term's argument is
    // computed exactly like the shifted frame, so the weight conjugations
    // cancel both groups bitwise
    return Evaluable::exp_factor(Evaluable::shift(h, t),
                                 {{Complex(-1.0, 0.0), 1.0, 0.0}, {Complex(1.0, 0.0), 1.0, -t}},
                                 Complex(0.0, 0.0), Complex(0.0, 0.0));
}

EvalPtr shift_apply(double t, const EvalPtr& f) {
    require_time(t);
    require_tree(f, Evaluable::Domain::Line, "shift_apply");
    return Evaluable::shift(f, t);
}

EvalPtr weight_conj(const EvalPtr& h) {
    require_tree(h, Evaluable::Domain::Line, "weight_conj");
    return Evaluable::exp_factor(h, {{Complex(1.0, 0.0), 1.0, 0.0}}, Complex(-1.0, 0.0),
                                 Complex(0.0, 0.0));
}

EvalPtr weight_conj_inv(const EvalPtr& f) {
    require_tree(f, Evaluable::Domain::Line, "weight_conj_inv");
    return Evaluable::exp_factor(f, {{Complex(-1.0, 0.0), 1.0, 0.0}}, Complex(1.0, 0.0),
                                 Complex(0.0, 0.0));
}

double verify_intertwining(double t, const EvalPtr& f, const std::vector<double>& probes) {
    require_time(t);
    require_tree(f, Evaluable::Domain::Line, "verify_intertwining");
    if (probes.empty()) throw std::invalid_argument("verify_intertwining: no probes");
    const EvalPtr lhs = weight_conj(sigma_apply(t, weight_conj_inv(f)));
    const EvalPtr rhs = shift_apply(t, f);
    double worst = 0.0;
    for (double y : probes) worst = std::max(worst, std::abs(lhs->eval(y) - rhs->eval(y)));
    return worst;
}

double weighted_norm_sq(const EvalPtr& f, const WeightFn& w, double a, double b,
                        const QuadratureRule& rule) {
    if (!f) throw std::invalid_argument("weighted_norm_sq: null tree");
    if (std::isnan(a) || std::isnan(b) || !(a < b))
        throw std::invalid_argument("weighted_norm_sq: need a < b");
    if (f->domain() == Evaluable::Domain::HalfLine && !(a >= 0.0))
        throw std::invalid_argument("weighted_norm_sq: half-line tree needs a >= 0");
    const auto dens = [&f, &w](double y) { return std::norm(f->eval(y)) * w.eval(y); };
    std::function<Complex(double)> g;
    if (std::isinf(a) && std::isinf(b)) {
        g = [dens](double s) { return Complex(dens(s) + dens(-s), 0.0); };
    } else if (std::isinf(a)) {
        g = [dens, b](double s) { return Complex(dens(b - s), 0.0); };
    } else if (std::isinf(b)) {
        g = [dens, a](double s) { return Complex(dens(a + s), 0.0); };
    } else {
        const double len = b - a;
        g = [dens, a, len](double s) {
            const double y = a + len * -std::expm1(-s);
            return Complex(dens(y) * len * std::exp(-s), 0.0);
        };
    }
    return integrate_function_checked(g, rule).value.real();
}

Complex weighted_inner(const EvalPtr& f, const EvalPtr& g, const WeightFn& w, double a, double b,
                       const QuadratureRule& rule) {
    if (!f || !g) throw std::invalid_argument("weighted_inner: null tree");
    if (std::isnan(a) || std::isnan(b) || !(a < b))
        throw std::invalid_argument("weighted_inner: need a < b");
    if ((f->domain() == Evaluable::Domain::HalfLine ||
         g->domain() == Evaluable::Domain::HalfLine) &&
        !(a >= 0.0))
        throw std::invalid_argument("weighted_inner: half-line tree needs a >= 0");
    const auto dens = [&f, &g, &w](double y) {
        return f->eval(y) * std::conj(g->eval(y)) * w.eval(y);
    };
    std::function<Complex(double)> h;
    if (std::isinf(a) && std::isinf(b)) {
        h = [dens](double s) { return dens(s) + dens(-s); };
    } else if (std::isinf(a)) {
        h = [dens, b](double s) { return dens(b - s); };
    } else if (std::isinf(b)) {
        h = [dens, a](double s) { return dens(a + s); };
    } else {
        const double len = b - a;
        h = [dens, a, len](double s) {
            const double y = a + len * -std::expm1(-s);
            return dens(y) * (len * std::exp(-s));
        };
    }
    return integrate_function_checked(h, rule).value;
}

std::vector<DomarIndicatorRow> domar_nonstandard_indicator(const WeightFn& w,
                                                           const std::vector<double>& ys) {
    if (ys.empty()) throw std::invalid_argument("domar_nonstandard_indicator: empty grid");
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!(ys[i] < 0.0))
            throw std::invalid_argument("domar_nonstandard_indicator: grid must be negative");
        if (i > 0 && !(ys[i] < ys[i - 1]))
            throw std::invalid_argument("domar_nonstandard_indicator: grid must descend");
    }
    std::vector<DomarIndicatorRow> rows;
    rows.reserve(ys.size());
    double run = kInf;
    for (double y : ys) {
        const double ratio = w.log_eval(y) / y;
        run = std::min(run, ratio);
        rows.push_back({y, ratio, run});
    }
    return rows;
}

DomarRigidityReport domar_rigidity_check(const WeightFn& w, const std::vector<double>& xs) {
    if (xs.size() < 3) throw std::invalid_argument("domar_rigidity_check: need at least 3 points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw std::invalid_argument("domar_rigidity_check: grid must be positive");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw std::invalid_argument("domar_rigidity_check: grid must increase");
    }
    DomarRigidityReport rep;
    rep.grid = xs;
    std::vector<double> logw(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) logw[i] = w.log_eval(xs[i]);

    double prev_slope = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double slope = (logw[i + 1] - logw[i]) / (xs[i + 1] - xs[i]);
        if (i > 0 && slope > prev_slope + 1e-9 * (1.0 + std::abs(prev_slope)))
            ++rep.concavity_violations;
        prev_slope = slope;
    }
    rep.concavity_consistent = rep.concavity_violations == 0;

    for (std::size_t i = 0; i < xs.size(); ++i) rep.condition2.push_back(-logw[i] / xs[i]);
    rep.condition2_consistent = diverging_trend(rep.condition2);

    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]);
        if (!(lx > 0.0) || logw[i] == 0.0) continue;
        rep.condition3.push_back((std::log(std::abs(logw[i])) - lx) / std::sqrt(lx));
        rep.condition3_x.push_back(xs[i]);
    }
    rep.condition3_consistent = diverging_trend(rep.condition3);
    return rep;
}

std::string domar_rigidity_json(const DomarRigidityReport& report) {
    nlohmann::json j;
    j["grid"] = report.grid;
    j["concavity"] = {{"violations", report.concavity_violations},
                      {"consistent", report.concavity_consistent}};
    j["condition2"] = {{"samples", report.condition2}, {"consistent", report.condition2_consistent}};
    j["condition3"] = {{"samples", report.condition3},
                       {"x", report.condition3_x},
                       {"consistent", report.condition3_consistent}};
    return j.dump(2);
}

std::vector<MuntzRow> muntz_ratio_table(int n_max) {
    if (n_max < 1) throw std::invalid_argument("muntz_ratio_table: need n_max >= 1");
    const WeightFn w = WeightFn::canonical();
    std::vector<MuntzRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double lambda = static_cast<double>(n) * n;
        const EvalPtr e = Evaluable::exp_monomial({lambda, 0.0}, 0);
        const double num = weighted_norm_sq(e, w, -kInf, 0.0, default_rule());
        // the full-line norm is e^2 int_0^inf u^{2 lambda - 1} e^{-2u} du after
        // u = e^y, a plain gamma kernel; quadrature on the y line would have to
        // chase an interior peak of height e^{2 lambda(log lambda - 1)} instead
        const double log_den = 2.0 + std::lgamma(2.0 * lambda) - lambda * std::log(4.0);
        double ratio;
        if (log_den <= 600.0) {
            const double den =
                std::exp(2.0) *
                integrate_gamma_kernel_checked({2.0, 0.0}, {2.0 * lambda, 0.0}, 0, default_rule())
                    .value.real();
            ratio = std::sqrt(num / den);
        } else {
            ratio = std::exp(0.5 * (std::log(num) - log_den));
        }
        rows.push_back({n, lambda, ratio});
    }
    return rows;
}

std::vector<std::pair<double, double>> figure1_data(double y_min, double y_max, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("figure1_data: step must be > 0");
    if (!(y_min <= y_max)) throw std::invalid_argument("figure1_data: need y_min <= y_max");
    std::vector<std::pair<double, double>> rows;
    for (int k = 0;; ++k) {
        const double y = y_min + k * step;
        if (y > y_max + step * 1e-9) break;
        rows.emplace_back(y, weight_eval(y));
    }
    return rows;
}

}  // namespace cesaro
