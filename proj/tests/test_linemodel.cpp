#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "cesaro/evaluable.hpp"
#include "cesaro/linemodel.hpp"
#include "cesaro/quadrature.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cesaro;

TEST_CASE("evaluable leaves match their closed forms") {
    const auto c = Evaluable::constant({3.0, 2.0});
    CHECK(c->eval(-4.7) == Complex(3.0, 2.0));

    const auto f = Evaluable::exp_monomial({-0.5, 0.3}, 2);
    const double y = 1.7;
    const Complex want = y * y * std::exp(Complex(-0.5, 0.3) * y);
    CHECK(std::abs(f->eval(y) - want) < 1e-15 * std::abs(want));

    const auto g = Evaluable::power_law({2.0, 0.0}, -0.5, {-1.0, 0.0});
    CHECK(std::abs(g->eval(4.0) - Complex(std::exp(-4.0), 0.0)) < 1e-15);
}

TEST_CASE("half-line trees reject nonpositive arguments") {
    const auto g = Evaluable::power_law({1.0, 0.0}, 0.5, {0.0, 0.0});
    CHECK_THROWS_AS((void)g->eval(0.0), std::domain_error);
    CHECK_THROWS_AS((void)g->eval(-1.0), std::domain_error);
}

TEST_CASE("indicator windows are half-open") {
    const auto inner = Evaluable::constant({1.0, 0.0});
    const auto w = Evaluable::indicator(0.0, 1.0, inner);
    CHECK(w->eval(-0.1) == Complex(0.0, 0.0));
    CHECK(w->eval(0.0) == Complex(1.0, 0.0));
    CHECK(w->eval(0.999) == Complex(1.0, 0.0));
    CHECK(w->eval(1.0) == Complex(0.0, 0.0));
}

TEST_CASE("shift and scale rewrite the argument") {
    const Complex lam{-0.8, 0.2};
    const auto e = Evaluable::exp_monomial(lam, 0);
    const auto s = Evaluable::shift(e, 2.5);
    const auto a = Evaluable::arg_scale(e, 3.0);
    const double y = 0.9;
    CHECK(std::abs(s->eval(y) - std::exp(lam * (y - 2.5))) < 1e-15);
    CHECK(std::abs(a->eval(y) - std::exp(lam * (3.0 * y))) < 1e-15);
}

TEST_CASE("exp factor evaluates the canonical weight exactly at zero") {
    // w(y) = e^{-2(e^y - 1)} as one symbolic term q e^{y} plus the affine +2
    const auto w = Evaluable::exp_factor(Evaluable::constant({1.0, 0.0}),
                                         {{Complex(-2.0, 0.0), 1.0, 0.0}}, {2.0, 0.0}, {0.0, 0.0});
    CHECK(w->eval(0.0) == Complex(1.0, 0.0));
    const double y = 1.3;
    const double want = std::exp(-2.0 * std::expm1(y));
    CHECK(std::abs(w->eval(y) - Complex(want, 0.0)) < 1e-15 * want);
}

TEST_CASE("opposite exponential factors cancel symbolically") {
    // e^{+e^y} stacked against e^{-e^y}; the naive product is inf * 0 already
    // at y = 30, the split evaluation stays exactly 1 for every y
    const auto up = Evaluable::exp_factor(Evaluable::constant({1.0, 0.0}),
                                          {{Complex(1.0, 0.0), 1.0, 0.0}}, {0.0, 0.0}, {0.0, 0.0});
    const auto both =
        Evaluable::exp_factor(up, {{Complex(-1.0, 0.0), 1.0, 0.0}}, {0.0, 0.0}, {0.0, 0.0});
    CHECK(both->eval(30.0) == Complex(1.0, 0.0));
    CHECK(both->eval(700.0) == Complex(1.0, 0.0));
    CHECK(both->eval(-3.0) == Complex(1.0, 0.0));
}

TEST_CASE("linear combinations sum their parts") {
    const auto lc = Evaluable::lin_comb({{Complex(2.0, 0.0), Evaluable::exp_monomial({-1.0, 0.0}, 0)},
                                         {Complex(-1.0, 0.0), Evaluable::constant({1.0, 0.0})}});
    const double y = 0.4;
    CHECK(std::abs(lc->eval(y) - Complex(2.0 * std::exp(-y) - 1.0, 0.0)) < 1e-15);
}

TEST_CASE("log warp turns exponentials into power laws") {
    const Complex lam{0.7, -0.1};
    const auto h = Evaluable::log_warp(Evaluable::exp_monomial(lam, 0));
    CHECK(h->domain() == Evaluable::Domain::HalfLine);
    const double x = 2.6;
    CHECK(std::abs(h->eval(x) - std::pow(Complex(x, 0.0), lam)) < 1e-14);
}

TEST_CASE("exp warp pulls half-line trees back to the line") {
    const auto g = Evaluable::power_law({1.0, 0.0}, 0.25, {-2.0, 0.0});
    const auto h = Evaluable::exp_warp(g);
    CHECK(h->domain() == Evaluable::Domain::Line);
    const double y = 1.1;
    const double t = std::exp(y);
    const double want = std::pow(t, 0.25) * std::exp(-2.0 * t);
    CHECK(std::abs(h->eval(y) - Complex(want, 0.0)) < 1e-14 * want);
    CHECK(h->eval(200.0) == Complex(0.0, 0.0));  // underflow flushes cleanly
}

TEST_CASE("evaluable construction rejects malformed trees") {
    const auto line = Evaluable::constant({1.0, 0.0});
    const auto half = Evaluable::power_law({1.0, 0.0}, 0.0, {0.0, 0.0});
    CHECK_THROWS_AS((void)Evaluable::exp_monomial({0.0, 0.0}, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::indicator(1.0, 1.0, line), std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::indicator(0.0, 1.0, nullptr), std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::arg_scale(line, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::lin_comb({}), std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::lin_comb({{Complex(1.0, 0.0), line}, {Complex(1.0, 0.0), half}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::log_warp(half), std::invalid_argument);
    CHECK_THROWS_AS((void)Evaluable::exp_warp(line), std::invalid_argument);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EvalPtr line_one() { return Evaluable::constant({1.0, 0.0}); }

}  // namespace

TEST_CASE("weight: value at zero is exactly one and tails match closed forms") {
    CHECK(weight_eval(0.0) == 1.0);
    CHECK(std::abs(weight_eval(1.0) - 0.032175060121677395) < 1e-16);
    // far left the weight saturates at e^2
    CHECK(std::abs(weight_eval(-20.0) - std::exp(2.0)) < 1e-6);
    CHECK(std::abs(weight_eval(-10.0) - 7.3883852041338828) < 1e-14);
    // far right it underflows to zero instead of overflowing
    CHECK(weight_eval(50.0) == 0.0);

    const auto w = WeightFn::canonical();
    CHECK(w.eval(0.7) == weight_eval(0.7));
    CHECK(std::abs(w.log_eval(3.0) + 2.0 * std::expm1(3.0)) < 1e-12);
    // log_eval stays finite where eval has already flushed to zero
    CHECK(w.eval(100.0) == 0.0);
    CHECK(std::isfinite(w.log_eval(100.0)));

    CHECK(WeightFn::exp_quadratic(1.0).log_eval(-50.0) == 2500.0);
    CHECK(WeightFn::constant(2.5).eval(17.0) == 2.5);
    CHECK_THROWS_AS((void)WeightFn::constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)WeightFn::constant(-1.0), std::invalid_argument);
}

TEST_CASE("half-line semigroup: closed-form value and the one-parameter law") {
    const auto g = Evaluable::power_law({1.0, 0.0}, 0.5, {-0.3, 0.0});

    const auto id = halfline_semigroup_apply(0.0, g);
    for (double x : {0.2, 1.0, 7.5}) CHECK(std::abs(id->eval(x) - g->eval(x)) < 1e-15);

    // V_t 1 (x) = e^{-t} exp((e^{-t}-1) x); at t = log 2, x = 1 this is e^{-1/2}/2
    const auto one = Evaluable::power_law({1.0, 0.0}, 0.0, {0.0, 0.0});
    const auto v1 = halfline_semigroup_apply(std::log(2.0), one);
    CHECK(std::abs(v1->eval(1.0) - Complex(0.5 * std::exp(-0.5), 0.0)) < 1e-16);

    std::mt19937_64 rng(20260821u);
    std::uniform_real_distribution<double> ux(0.05, 8.0), ut(0.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = ux(rng), t1 = ut(rng), t2 = ut(rng);
        const auto once = halfline_semigroup_apply(t1 + t2, g)->eval(x);
        const auto twice = halfline_semigroup_apply(t2, halfline_semigroup_apply(t1, g))->eval(x);
        worst = std::max(worst, std::abs(once - twice) / std::max(1.0, std::abs(once)));
    }
    CHECK(worst < 1e-13);

    CHECK_THROWS_AS((void)halfline_semigroup_apply(-0.1, g), std::invalid_argument);
    CHECK_THROWS_AS((void)halfline_semigroup_apply(1.0, line_one()), std::invalid_argument);
}

TEST_CASE("mellin transporter: exponentials go to power laws and the round trip is exact") {
    // e^{lambda y} maps to x^{lambda - 1/2}
    const auto h = Evaluable::exp_monomial({0.6, 0.0}, 0);
    const auto th = mellin_unitary(h);
    for (double x : {0.3, 1.0, 4.2}) {
        CHECK(std::abs(th->eval(x) - Complex(std::pow(x, 0.1), 0.0)) < 1e-14 * std::pow(x, 0.1));
    }

    const auto hh = Evaluable::exp_monomial({0.4, -0.2}, 1);
    const auto round = mellin_unitary_inv(mellin_unitary(hh));
    std::mt19937_64 rng(77u);
    std::uniform_real_distribution<double> uy(-6.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double y = uy(rng);
        const auto want = hh->eval(y);
        CHECK(std::abs(round->eval(y) - want) < 1e-13 * std::max(1.0, std::abs(want)));
    }

    CHECK_THROWS_AS((void)mellin_unitary(Evaluable::power_law({1.0, 0.0}, 0.0, {0.0, 0.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)mellin_unitary_inv(line_one()), std::invalid_argument);
}

TEST_CASE("mellin transporter preserves the weighted norm") {
    // h(y) = e^{y - e^y}: Th(x) = x^{1/2} e^{-x}, and both plain L^2 norms are 1/4
    const auto h = Evaluable::exp_factor(line_one(), {{Complex(-1.0, 0.0), 1.0, 0.0}},
                                         Complex(0.0, 0.0), Complex(1.0, 0.0));
    const double line_norm =
        weighted_norm_sq(h, WeightFn::constant(1.0), -kInf, kInf, default_rule());
    const auto th = mellin_unitary(h);
    const auto val = integrate_function_checked(
        [&](double x) { return Complex(std::norm(th->eval(x)), 0.0); }, default_rule(), 1e-11,
        1.0);
    CHECK(std::abs(line_norm - 0.25) < 1e-10);
    CHECK(std::abs(val.value.real() - 0.25) < 1e-10);
    CHECK(std::abs(line_norm - val.value.real()) < 1e-8);
}

TEST_CASE("sigma semigroup and the weight conjugation cancel bitwise") {
    const auto h = Evaluable::exp_monomial({0.8, 0.4}, 1);

    const auto s0 = sigma_apply(0.0, h);
    for (double y : {-3.0, 0.0, 2.5}) CHECK(s0->eval(y) == h->eval(y));

    // sigma_t 1 (0) = exp(-(1 - e^{-t})); at t = log 2 this is e^{-1/2}
    const auto s1 = sigma_apply(std::log(2.0), line_one());
    CHECK(std::abs(s1->eval(0.0) - Complex(std::exp(-0.5), 0.0)) < 1e-16);

    // W W^{-1} is the identity even where e^{e^y} alone would overflow
    const auto wrap = weight_conj(weight_conj_inv(h));
    for (double y : {-5.0, 0.0, 3.0, 20.0, 200.0}) CHECK(wrap->eval(y) == h->eval(y));

    const auto sh = shift_apply(1.3, h);
    CHECK(sh->eval(2.0) == h->eval(0.7));

    CHECK_THROWS_AS((void)sigma_apply(-1.0, h), std::invalid_argument);
    CHECK_THROWS_AS((void)shift_apply(0.5, Evaluable::power_law({1.0, 0.0}, 0.0, {0.0, 0.0})),
                    std::invalid_argument);
}

TEST_CASE("intertwining: conjugated sigma equals the plain shift on smooth data") {
    const auto f = Evaluable::exp_monomial({1.0, 1.0}, 2);

    std::mt19937_64 rng(20260821u);
    std::uniform_real_distribution<double> uy(-10.0, 5.0);
    std::vector<double> probes;
    for (int i = 0; i < 1000; ++i) probes.push_back(uy(rng));

    CHECK(verify_intertwining(0.0, f, probes) == 0.0);
    for (double t : {0.1, 0.7, 1.0, 3.0, 10.0}) {
        const double resid = verify_intertwining(t, f, probes);
        CHECK(resid <= 1e-12);
        // the split arrangement of the sigma exponent cancels exactly
        CHECK(resid == 0.0);
    }
}

TEST_CASE("intertwining: indicator data away from the jump points") {
    const auto f = Evaluable::indicator(0.0, 1.0, line_one());
    const double t = 2.0;

    std::mt19937_64 rng(5150u);
    std::uniform_real_distribution<double> uy(-10.0, 5.0);
    std::vector<double> probes;
    while (probes.size() < 1000) {
        const double y = uy(rng);
        // skip the discontinuities of f and of its shift
        if (std::abs(y) < 1e-9 || std::abs(y - 1.0) < 1e-9) continue;
        if (std::abs(y - t) < 1e-9 || std::abs(y - 1.0 - t) < 1e-9) continue;
        probes.push_back(y);
    }
    CHECK(verify_intertwining(t, f, probes) <= 1e-12);
}

TEST_CASE("weighted norms: exponential data against the canonical weight") {
    const auto e2 = Evaluable::exp_monomial({2.0, 0.0}, 0);
    const auto w = WeightFn::canonical();
    const auto rule = default_rule();

    const double left = weighted_norm_sq(e2, w, -kInf, 0.0, rule);
    const double full = weighted_norm_sq(e2, w, -kInf, kInf, rule);
    // closed forms: (6 e^2 - 38)/16 on the left tail, 3 e^2 / 8 over the whole line
    CHECK(std::abs(left - 0.39589603709899384) < 1e-9);
    CHECK(std::abs(full - 2.7708960370989938) < 1e-9);
    CHECK(left < full);

    const auto zero = Evaluable::constant({0.0, 0.0});
    CHECK(weighted_norm_sq(zero, w, -kInf, kInf, rule) == 0.0);

    CHECK_THROWS_AS((void)weighted_norm_sq(e2, w, 1.0, 1.0, rule), std::invalid_argument);
    CHECK_THROWS_AS((void)weighted_norm_sq(e2, w, kInf, -kInf, rule), std::invalid_argument);
    const auto half = Evaluable::power_law({1.0, 0.0}, 0.0, {0.0, 0.0});
    CHECK_THROWS_AS((void)weighted_norm_sq(half, w, -1.0, 1.0, rule), std::invalid_argument);
}

TEST_CASE("weighted norms: sandwich and growth of the exponential family") {
    const auto w = WeightFn::canonical();
    const auto rule = default_rule();
    const double e2 = std::exp(2.0);
    for (double lam : {1.0, 2.0, 4.0, 9.0, 16.0}) {
        const auto f = Evaluable::exp_monomial({lam, 0.0}, 0);
        const double left = weighted_norm_sq(f, w, -kInf, 0.0, rule);
        // 1/(2 lambda) <= left tail norm <= e^2/(2 lambda)
        CHECK(left >= 1.0 / (2.0 * lam));
        CHECK(left <= e2 / (2.0 * lam));
        // whole-line norm: e^2 Gamma(2 lambda) / 4^lambda, checked in log space
        const double log_closed = 2.0 + std::lgamma(2.0 * lam) - lam * std::log(4.0);
        CHECK(log_closed >= 2.0 * lam - 2.0 * (e2 - 1.0));
        if (lam <= 9.0) {
            const double full = weighted_norm_sq(f, w, -kInf, kInf, rule);
            CHECK(std::abs(full - std::exp(log_closed)) < 1e-9 * std::exp(log_closed));
        }
    }
}

TEST_CASE("weighted norms: finite windows and one-sided tails") {
    const auto w = WeightFn::canonical();
    const auto rule = default_rule();
    const auto f = Evaluable::exp_monomial({1.0, 0.0}, 0);
    const double a = -1.0, b = 2.0;
    const double window = weighted_norm_sq(f, w, a, b, rule);
    const double left = weighted_norm_sq(f, w, -kInf, b, rule);
    const double right = weighted_norm_sq(f, w, a, kInf, rule);
    const double full = weighted_norm_sq(f, w, -kInf, kInf, rule);
    // windows and tails add back up to the whole-line norm
    CHECK(std::abs((left + right - window) - full) < 1e-9 * full);
    CHECK(window > 0.0);
    CHECK(window < full);
}

TEST_CASE("nonstandard indicator: the canonical weight stays tame far left") {
    const std::vector<double> ys = {-5.0, -10.0, -50.0, -1000.0};
    const auto rows = domar_nonstandard_indicator(WeightFn::canonical(), ys);
    REQUIRE(rows.size() == 4);
    CHECK(std::abs(rows[0].ratio - (-0.3973048212003658)) < 1e-15);
    CHECK(std::abs(rows[1].ratio - (-0.19999092001404747)) < 1e-15);
    CHECK(rows[2].ratio == -0.04);
    CHECK(rows[3].ratio == -0.002);
    // ratios rise toward zero going left, so the running minimum freezes at the first entry
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].ratio > rows[i - 1].ratio);
    for (const auto& r : rows) {
        CHECK(r.running_min == rows[0].ratio);
        CHECK(r.running_min > -1.0);
    }

    // a genuinely nonstandard-looking weight pushes the ratio to minus infinity
    const auto bad = domar_nonstandard_indicator(WeightFn::exp_quadratic(1.0), ys);
    for (std::size_t i = 0; i < bad.size(); ++i) {
        CHECK(std::abs(bad[i].ratio - ys[i]) < 1e-12 * std::abs(ys[i]));
    }
    CHECK(bad.back().running_min == bad.back().ratio);

    CHECK_THROWS_AS((void)domar_nonstandard_indicator(WeightFn::canonical(), {}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)domar_nonstandard_indicator(WeightFn::canonical(), {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)domar_nonstandard_indicator(WeightFn::canonical(), {-2.0, -1.0}),
                    std::invalid_argument);
}

TEST_CASE("rigidity screen: canonical weight passes, degenerate weights fail") {
    std::vector<double> xs;
    for (int i = 1; i <= 50; ++i) xs.push_back(double(i));

    const auto good = domar_rigidity_check(WeightFn::canonical(), xs);
    CHECK(good.concavity_consistent);
    CHECK(good.condition2_consistent);
    CHECK(good.condition3_consistent);
    CHECK(good.concavity_violations == 0);

    // pure exponential decay: condition 2 plateaus at 1 instead of diverging
    const auto flat = domar_rigidity_check(WeightFn::exp_linear(-1.0), xs);
    CHECK_FALSE(flat.condition2_consistent);
    CHECK(std::abs(flat.condition2.back() - 1.0) < 1e-12);

    const auto cst = domar_rigidity_check(WeightFn::constant(1.0), xs);
    CHECK_FALSE(cst.condition2_consistent);
    CHECK_FALSE(cst.condition3_consistent);

    // log-convex growth breaks the concavity screen outright
    const auto convex = domar_rigidity_check(WeightFn::exp_quadratic(1.0), xs);
    CHECK_FALSE(convex.concavity_consistent);
    CHECK(convex.concavity_violations > 0);

    const auto parsed = nlohmann::json::parse(domar_rigidity_json(good));
    CHECK(parsed.contains("concavity"));
    CHECK(parsed.contains("condition2"));
    CHECK(parsed.contains("condition3"));
    CHECK(parsed["concavity"]["consistent"].get<bool>());

    CHECK_THROWS_AS((void)domar_rigidity_check(WeightFn::canonical(), {1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)domar_rigidity_check(WeightFn::canonical(), {0.0, 1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)domar_rigidity_check(WeightFn::canonical(), {1.0, 3.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("muntz ratios collapse super-exponentially") {
    const auto rows = muntz_ratio_table(6);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) CHECK(r.lambda == double(r.n * r.n));

    CHECK(std::abs(rows[0].ratio - 0.77071015971645393) < 1e-9);
    CHECK(std::abs(rows[1].ratio - 0.033116747543481722) < 1e-9);
    CHECK(std::abs(rows[2].ratio - 2.4877716378546204e-6) < 1e-14);
    CHECK(std::abs(rows[3].ratio - 4.8489679773887171e-14) < 1e-22);

    CHECK(rows[0].ratio < 1.0);
    CHECK(rows[2].ratio <= 0.05);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].ratio < rows[i - 1].ratio);
    for (const auto& r : rows) CHECK(r.ratio > 0.0);

    // the log-space branch keeps producing finite positive values far out
    const auto far = muntz_ratio_table(8);
    CHECK(far[7].ratio > 0.0);
    CHECK(far[7].ratio < 1e-80);

    CHECK_THROWS_AS((void)muntz_ratio_table(0), std::invalid_argument);
}

TEST_CASE("figure data: the weight profile is monotone and hits its anchors") {
    const auto rows = figure1_data(-20.0, 5.0, 0.25);
    REQUIRE(rows.size() == 101);
    CHECK(rows.front().first == -20.0);
    CHECK(std::abs(rows.back().first - 5.0) < 1e-9);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].second < rows[i - 1].second);
    }
    // w(0) = 1 exactly, and the left edge sits within 1e-6 of e^2
    for (const auto& [y, v] : rows) {
        if (y == 0.0) CHECK(v == 1.0);
    }
    CHECK(std::abs(rows.front().second - std::exp(2.0)) < 1e-6);

    const auto single = figure1_data(-10.0, -10.0, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single[0].second - 7.3883852041338828) < 1e-14);

    CHECK_THROWS_AS((void)figure1_data(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)figure1_data(1.0, 0.0, 0.5), std::invalid_argument);
}
