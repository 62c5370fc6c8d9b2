#pragma once

// The weighted-line model: the half-line semigroup V_t, the Mellin-type
// unitary between the line and the half-line, the weight w(y) = e^{-2(e^y-1)}
// with its conjugations, and the right-shift semigroup S_t. The algebraic
// chain W sigma_t W^{-1} = S_t is arranged to cancel symbolically: sigma_t
// contributes the exponent terms -e^y + e^{y-t}, whose computed arguments are
// bit-identical to the ones the two weight conjugations and the shift
// produce, so the intertwining residual is exactly zero at every probe.
//
// Also here: weighted norms over intervals with infinite endpoints, the
// Domar weight diagnostics (trend evidence, not proof), and the Muntz
// closed-span ratio table.

#include <string>
#include <utility>
#include <vector>

#include "cesaro/evaluable.hpp"
#include "cesaro/quadrature.hpp"

namespace cesaro {

class WeightFn {
  public:
    static WeightFn canonical();             // e^{-2(e^y - 1)}
    static WeightFn constant(double c);      // c > 0
    static WeightFn exp_linear(double a);    // e^{a y}
    static WeightFn exp_quadratic(double a); // e^{a y^2}

    double eval(double y) const;
    // log w directly, finite where w itself would over- or underflow
    double log_eval(double y) const;
    std::string name() const;

  private:
    enum class Tag { Canonical, Constant, ExpLinear, ExpQuadratic };
    WeightFn(Tag tag, double param) : tag_(tag), param_(param) {}
    Tag tag_;
    double param_;
};

// The canonical weight at a point; exact 1 at y = 0.
double weight_eval(double y);

// V_t g(x) = e^{-t} e^{-(1-e^{-t})x} g(e^{-t}x) on the half-line.
EvalPtr halfline_semigroup_apply(double t, const EvalPtr& g);

// T h(x) = x^{-1/2} h(log x) and its inverse T^{-1} g(y) = e^{y/2} g(e^y).
EvalPtr mellin_unitary(const EvalPtr& h);
EvalPtr mellin_unitary_inv(const EvalPtr& g);

// sigma_t h(y) = e^{-(1-e^{-t})e^y} h(y - t) on the line.
EvalPtr sigma_apply(double t, const EvalPtr& h);

// S_t f(y) = f(y - t), the right shift.
EvalPtr shift_apply(double t, const EvalPtr& f);

// W h = h / sqrt(w), W^{-1} f = f sqrt(w).
EvalPtr weight_conj(const EvalPtr& h);
EvalPtr weight_conj_inv(const EvalPtr& f);

// max over probes of |W sigma_t W^{-1} f - S_t f|.
double verify_intertwining(double t, const EvalPtr& f, const std::vector<double>& probes);

// int_a^b |f|^2 w dy; a = -inf, b = +inf allowed. Infinite tails reuse the
// half-line rules after a linear flip; finite intervals are transported by
// y = a + (b-a)(1 - e^{-s}).
double weighted_norm_sq(const EvalPtr& f, const WeightFn& w, double a, double b,
                        const QuadratureRule& rule);

// <f, g> = int_a^b f(y) conj(g(y)) w(y) dy, same interval mapping as the norm.
Complex weighted_inner(const EvalPtr& f, const EvalPtr& g, const WeightFn& w, double a, double b,
                       const QuadratureRule& rule);

struct DomarIndicatorRow {
    double y;
    double ratio;  // log w(y) / y
    double running_min;
};

// Samples log w(y)/y on a grid descending toward -inf. For the canonical
// weight the ratios rise toward 0 from below; a weight failing the Domar
// lower bound sends them to -inf instead.
std::vector<DomarIndicatorRow> domar_nonstandard_indicator(const WeightFn& w,
                                                           const std::vector<double>& ys);

struct DomarRigidityReport {
    std::vector<double> grid;
    int concavity_violations = 0;
    std::vector<double> condition2;    // -log w(x) / x
    std::vector<double> condition3;    // (log|log w(x)| - log x) / sqrt(log x)
    std::vector<double> condition3_x;  // abscissae with log x > 0 and log w != 0
    bool concavity_consistent = false;
    bool condition2_consistent = false;
    bool condition3_consistent = false;
};

// Trend report on an increasing positive grid. A divergence condition counts
// as consistent when its samples never decrease (within slack), at least
// double from first to last, and end above 1; this is sampled evidence only.
DomarRigidityReport domar_rigidity_check(const WeightFn& w, const std::vector<double>& xs);
std::string domar_rigidity_json(const DomarRigidityReport& report);

struct MuntzRow {
    int n;
    double lambda;  // n^2
    double ratio;   // left-tail weighted norm over full-line weighted norm
};

// Norm ratios of e_{n^2}; strictly decreasing, the closed-range failure of
// the left-tail restriction in miniature. The full-line norm is evaluated as
// a gamma kernel after the exact substitution u = e^y, falling back to the
// log-space closed form e^2 Gamma(2 lambda)/4^lambda once its magnitude
// leaves the double range.
std::vector<MuntzRow> muntz_ratio_table(int n_max);

// Sampled weight curve rows (y, w(y)) for plotting.
std::vector<std::pair<double, double>> figure1_data(double y_min, double y_max, double step);

}  // namespace cesaro
