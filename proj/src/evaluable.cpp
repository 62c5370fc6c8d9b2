#include "cesaro/evaluable.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cesaro {

namespace {

double int_pow(double y, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= y;
    return acc;
}

}  // namespace

struct Evaluable::SplitVal {
    Complex pre{1.0, 0.0};
    NeumaierSum<double> ex_re;  // affine exponent pieces, numerically
    NeumaierSum<double> ex_im;
    // (u, q) pairs meaning q * exp(u) inside E; merged by bit-equal u at flush
    std::vector<std::pair<double, Complex>> big;
    bool zero = false;
};

EvalPtr Evaluable::constant(Complex c, Domain dom) {
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::Constant, dom));
    n->coeff_ = c;
    return n;
}

EvalPtr Evaluable::exp_monomial(Complex lambda, int k, Domain dom) {
    if (k < 0) throw std::invalid_argument("exp_monomial: k must be >= 0");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::ExpMonomial, dom));
    n->lambda_ = lambda;
    n->k_ = k;
    return n;
}

EvalPtr Evaluable::power_law(Complex c, double p, Complex mu) {
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::PowerLaw, Domain::HalfLine));
    n->coeff_ = c;
    n->p_ = p;
    n->mu_ = mu;
    return n;
}

EvalPtr Evaluable::indicator(double a, double b, EvalPtr inner) {
    if (!inner) throw std::invalid_argument("indicator: null inner");
    if (!(a < b)) throw std::invalid_argument("indicator: need a < b");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::Indicator, inner->domain()));
    n->a_ = a;
    n->b_ = b;
    n->inner_ = std::move(inner);
    return n;
}

EvalPtr Evaluable::shift(EvalPtr inner, double tau) {
    if (!inner) throw std::invalid_argument("shift: null inner");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::Shift, inner->domain()));
    n->tau_ = tau;
    n->inner_ = std::move(inner);
    return n;
}

EvalPtr Evaluable::arg_scale(EvalPtr inner, double c) {
    if (!inner) throw std::invalid_argument("arg_scale: null inner");
    if (!(c > 0.0)) throw std::invalid_argument("arg_scale: need c > 0");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::ArgScale, inner->domain()));
    n->cscale_ = c;
    n->inner_ = std::move(inner);
    return n;
}

EvalPtr Evaluable::exp_factor(EvalPtr inner, std::vector<ExpTerm> terms, Complex a, Complex b) {
    if (!inner) throw std::invalid_argument("exp_factor: null inner");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::ExpFactor, inner->domain()));
    n->terms_ = std::move(terms);
    n->aff_a_ = a;
    n->aff_b_ = b;
    n->inner_ = std::move(inner);
    return n;
}

EvalPtr Evaluable::lin_comb(std::vector<std::pair<Complex, EvalPtr>> parts) {
    if (parts.empty()) throw std::invalid_argument("lin_comb: empty");
    for (const auto& p : parts)
        if (!p.second || p.second->domain() != parts.front().second->domain())
            throw std::invalid_argument("lin_comb: null part or mixed domains");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::LinComb, parts.front().second->domain()));
    n->parts_ = std::move(parts);
    return n;
}

EvalPtr Evaluable::log_warp(EvalPtr inner) {
    if (!inner) throw std::invalid_argument("log_warp: null inner");
    if (inner->domain() != Domain::Line) throw std::invalid_argument("log_warp: inner must live on the line");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::LogWarp, Domain::HalfLine));
    n->inner_ = std::move(inner);
    return n;
}

EvalPtr Evaluable::exp_warp(EvalPtr inner) {
    if (!inner) throw std::invalid_argument("exp_warp: null inner");
    if (inner->domain() != Domain::HalfLine)
        throw std::invalid_argument("exp_warp: inner must live on the half-line");
    auto n = std::shared_ptr<Evaluable>(new Evaluable(Kind::ExpWarp, Domain::Line));
    n->inner_ = std::move(inner);
    return n;
}

void Evaluable::walk(double y, SplitVal& out) const {
    if (out.zero) return;
    switch (kind_) {
        case Kind::Constant:
            out.pre *= coeff_;
            if (out.pre == Complex(0.0, 0.0)) out.zero = true;
            return;
        case Kind::ExpMonomial:
            if (k_ > 0) out.pre *= int_pow(y, k_);
            out.ex_re.add(lambda_.real() * y);
            out.ex_im.add(lambda_.imag() * y);
            return;
        case Kind::PowerLaw:
            if (!(y > 0.0)) throw std::domain_error("power_law: argument must be > 0");
            out.pre *= coeff_;
            if (p_ != 0.0) out.ex_re.add(p_ * std::log(y));
            out.ex_re.add(mu_.real() * y);
            out.ex_im.add(mu_.imag() * y);
            return;
        case Kind::Indicator:
            if (y < a_ || y >= b_) {
                out.zero = true;
                return;
            }
            inner_->walk(y, out);
            return;
        case Kind::Shift:
            inner_->walk(y - tau_, out);
            return;
        case Kind::ArgScale:
            inner_->walk(cscale_ * y, out);
            return;
        case Kind::ExpFactor: {
            for (const ExpTerm& t : terms_) {
                double u = t.sigma == 1.0 ? y : t.sigma * y;
                if (t.s != 0.0) u += t.s;
                out.big.emplace_back(u, t.q);
            }
            out.ex_re.add(aff_a_.real());
            out.ex_im.add(aff_a_.imag());
            if (aff_b_ != Complex(0.0, 0.0)) {
                out.ex_re.add(aff_b_.real() * y);
                out.ex_im.add(aff_b_.imag() * y);
            }
            inner_->walk(y, out);
            return;
        }
        case Kind::LinComb: {
            // parts flush independently; cross-part cancellation is numeric
            NeumaierComplexSum<double> s;
            for (const auto& p : parts_) s.add(p.first * p.second->eval(y));
            out.pre *= s.result();
            if (out.pre == Complex(0.0, 0.0)) out.zero = true;
            return;
        }
        case Kind::LogWarp:
            if (!(y > 0.0)) throw std::domain_error("log_warp: argument must be > 0");
            inner_->walk(std::log(y), out);
            return;
        case Kind::ExpWarp:
            inner_->walk(std::exp(y), out);
            return;
    }
}

Complex Evaluable::eval(double y) const {
    if (domain_ == Domain::HalfLine && !(y > 0.0))
        throw std::domain_error("Evaluable: half-line tree evaluated at y <= 0");
    SplitVal sv;
    walk(y, sv);
    if (sv.zero || sv.pre == Complex(0.0, 0.0)) return {0.0, 0.0};
    if (!sv.big.empty()) {
        std::map<double, NeumaierComplexSum<double>> groups;
        for (const auto& [u, q] : sv.big) groups[u].add(q);
        for (const auto& [u, qs] : groups) {
            const Complex q = qs.result();
            if (q == Complex(0.0, 0.0)) continue;  // exact cancellation, e^u never formed
            const double e = std::exp(u);
            sv.ex_re.add(q.real() * e);
            sv.ex_im.add(q.imag() * e);
        }
    }
    const double er = sv.ex_re.result();
    const double ei = sv.ex_im.result();
    if (er > 709.0 || er < -709.0) {
        // route the prefactor magnitude through the exponent so a finite value
        // near the double range does not under- or overflow in two stages
        const double lp = std::log(std::abs(sv.pre));
        const double tot = er + lp;
        if (tot < -745.0) return {0.0, 0.0};
        return (sv.pre / std::abs(sv.pre)) * std::exp(Complex(tot, ei));
    }
    return sv.pre * std::exp(Complex(er, ei));
}

}  // namespace cesaro
