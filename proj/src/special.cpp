#include "cesaro/special.hpp"

#include <numbers>

namespace cesaro {

long double binomial_ld(int n, int k) {
    if (k < 0 || k > n) return 0.0L;
    if (k > n - k) k = n - k;
    if (n <= 67) {
        // multiplicative form, exact in 128-bit intermediates
        unsigned __int128 acc = 1;
        for (int i = 1; i <= k; ++i) {
            acc = acc * static_cast<unsigned>(n - k + i);
            acc /= static_cast<unsigned>(i);  // divides exactly at every step
        }
        return static_cast<long double>(static_cast<std::uint64_t>(acc));
    }
    long double r = std::lgammal(static_cast<long double>(n + 1)) -
                    std::lgammal(static_cast<long double>(k + 1)) -
                    std::lgammal(static_cast<long double>(n - k + 1));
    return std::exp(r);
}

namespace {

// Lanczos g=7, n=9 coefficient set.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7,
};

Complex log_gamma_positive(Complex z) {
    // valid for Re z >= 1/2
    z -= 1.0;
    Complex a{kLanczos[0], 0.0};
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + static_cast<double>(i));
    Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::domain_error("log_gamma: pole at nonpositive integer");
    if (z.real() >= 0.5) return log_gamma_positive(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const double pi = std::numbers::pi;
    return std::log(pi / std::sin(pi * z)) - log_gamma_positive(1.0 - z);
}

}  // namespace cesaro
