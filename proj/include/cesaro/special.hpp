#pragma once

// Small numeric kernel shared by the whole library: compensated summation,
// exact binomial coefficients, and a complex log-gamma.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace cesaro {

using Complex = std::complex<double>;

// Neumaier variant of Kahan summation. result() = s + c recovers the
// running compensation, so exactly cancelling term pairs cost nothing.
template <class T>
struct NeumaierSum {
    T s{0};
    T c{0};

    void add(T x) {
        T t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    T result() const { return s + c; }
};

// Complex accumulator built from two real compensated sums.
template <class R>
struct NeumaierComplexSum {
    NeumaierSum<R> re;
    NeumaierSum<R> im;

    void add(std::complex<R> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<R> result() const { return {re.result(), im.result()}; }
};

// Exact binomial coefficient. Values up to n = 67 fit in uint64 and convert
// to long double without rounding; beyond that falls back to lgamma with
// ~1e-14 relative error, which the callers using large n can absorb.
long double binomial_ld(int n, int k);
inline double binomial(int n, int k) { return static_cast<double>(binomial_ld(n, k)); }

// Principal-branch log Gamma, Lanczos g=7. Valid for z not a nonpositive
// integer; reflection handles Re z < 1/2.
Complex log_gamma(Complex z);
inline Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

}  // namespace cesaro
