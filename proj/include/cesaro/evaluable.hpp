#pragma once

// Immutable function trees on the line or the half-line, with two consumers:
// quadrature (plain pointwise evaluation) and the semigroup transform chains.
// A value is assembled as  prefactor * exp(E)  where E collects an affine
// part numerically and keeps terms q e^{sigma y + s} symbolic until the one
// final exp. Terms whose computed exponent arguments are bit-identical merge
// first, so factors like e^{+e^y} against e^{-e^y} from different branches
// cancel exactly instead of leaving |f| e^y eps residue behind.

#include <memory>
#include <utility>
#include <vector>

#include "cesaro/special.hpp"

namespace cesaro {

class Evaluable;
using EvalPtr = std::shared_ptr<const Evaluable>;

// One exponent term q * exp(sigma * y + s), in the argument frame of the node
// that carries it.
struct ExpTerm {
    Complex q{0.0, 0.0};
    double sigma = 1.0;
    double s = 0.0;
};

class Evaluable {
  public:
    enum class Domain { Line, HalfLine };
    enum class Kind {
        Constant,
        ExpMonomial,  // y^k e^{lambda y}
        PowerLaw,     // c t^p e^{mu t} on (0, inf)
        Indicator,    // [a, b) window around an inner tree
        Shift,        // y -> inner(y - tau)
        ArgScale,     // y -> inner(c y)
        ExpFactor,    // inner * exp(sum q e^{sigma y + s} + a + b y)
        LinComb,
        LogWarp,  // half-line x -> inner(log x)
        ExpWarp   // line y -> inner(e^y)
    };

    static EvalPtr constant(Complex c, Domain dom = Domain::Line);
    static EvalPtr exp_monomial(Complex lambda, int k, Domain dom = Domain::Line);
    static EvalPtr power_law(Complex c, double p, Complex mu);

    static EvalPtr indicator(double a, double b, EvalPtr inner);
    static EvalPtr shift(EvalPtr inner, double tau);
    static EvalPtr arg_scale(EvalPtr inner, double c);
    static EvalPtr exp_factor(EvalPtr inner, std::vector<ExpTerm> terms, Complex a, Complex b);
    static EvalPtr lin_comb(std::vector<std::pair<Complex, EvalPtr>> parts);
    static EvalPtr log_warp(EvalPtr inner);
    static EvalPtr exp_warp(EvalPtr inner);

    Complex eval(double y) const;

    Domain domain() const { return domain_; }
    Kind kind() const { return kind_; }

    ~Evaluable() = default;

  private:
    struct SplitVal;
    Evaluable(Kind kind, Domain dom) : kind_(kind), domain_(dom) {}
    void walk(double y, SplitVal& out) const;

    Kind kind_;
    Domain domain_;
    // leaf payloads
    Complex coeff_{1.0, 0.0};  // Constant c; PowerLaw c; LinComb unused
    Complex lambda_{0.0, 0.0};
    int k_ = 0;
    double p_ = 0.0;
    Complex mu_{0.0, 0.0};
    // wrapper payloads
    double a_ = 0.0, b_ = 0.0;  // indicator window
    double tau_ = 0.0;
    double cscale_ = 1.0;
    std::vector<ExpTerm> terms_;
    Complex aff_a_{0.0, 0.0}, aff_b_{0.0, 0.0};
    EvalPtr inner_;
    std::vector<std::pair<Complex, EvalPtr>> parts_;
};

}  // namespace cesaro
