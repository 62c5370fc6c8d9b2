#include "cesaro/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cesaro {

CoeffVector::CoeffVector(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("CoeffVector: needs at least the constant term");
}

CoeffVector CoeffVector::zero(int order) {
    if (order < 0) throw std::invalid_argument("CoeffVector: order must be >= 0");
    return CoeffVector(std::vector<Complex>(static_cast<std::size_t>(order) + 1));
}

CoeffVector CoeffVector::basis(int order, int k) {
    if (k < 0 || k > order) throw std::invalid_argument("CoeffVector: basis index out of range");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    c[static_cast<std::size_t>(k)] = 1.0;
    return CoeffVector(std::move(c));
}

Complex inner(const CoeffVector& f, const CoeffVector& g) {
    if (f.order() != g.order()) throw std::invalid_argument("inner: mismatched truncation orders");
    NeumaierComplexSum<double> acc;
    for (int k = 0; k <= f.order(); ++k) acc.add(f[k] * std::conj(g[k]));
    return acc.result();
}

double h2_norm(const CoeffVector& f) {
    NeumaierSum<double> acc;
    for (int k = 0; k <= f.order(); ++k) acc.add(std::norm(f[k]));
    return std::sqrt(acc.result());
}

const char* structure_name(MatrixStructure s) {
    switch (s) {
        case MatrixStructure::LowerTriangular: return "lower-triangular";
        case MatrixStructure::UpperTriangular: return "upper-triangular";
        case MatrixStructure::Bidiagonal: return "bidiagonal";
        case MatrixStructure::Dense: return "dense";
    }
    throw std::logic_error("structure_name: unknown tag");
}

MatrixStructure structure_from_name(const std::string& name) {
    if (name == "lower-triangular") return MatrixStructure::LowerTriangular;
    if (name == "upper-triangular") return MatrixStructure::UpperTriangular;
    if (name == "bidiagonal") return MatrixStructure::Bidiagonal;
    if (name == "dense") return MatrixStructure::Dense;
    throw std::invalid_argument("structure_from_name: unknown structure '" + name + "'");
}

namespace {

bool pattern_allows(MatrixStructure s, int n, int m) {
    switch (s) {
        case MatrixStructure::LowerTriangular: return n >= m;
        case MatrixStructure::UpperTriangular: return n <= m;
        case MatrixStructure::Bidiagonal: return m == n || m == n + 1;  // diagonal + superdiagonal
        case MatrixStructure::Dense: return true;
    }
    return true;
}

MatrixStructure detect_structure(int N, const std::vector<Complex>& e) {
    auto fits = [&](MatrixStructure s) {
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= N; ++m)
                if (!pattern_allows(s, n, m) &&
                    e[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(m)] != 0.0)
                    return false;
        return true;
    };
    if (fits(MatrixStructure::Bidiagonal)) return MatrixStructure::Bidiagonal;
    if (fits(MatrixStructure::UpperTriangular)) return MatrixStructure::UpperTriangular;
    if (fits(MatrixStructure::LowerTriangular)) return MatrixStructure::LowerTriangular;
    return MatrixStructure::Dense;
}

}  // namespace

OperatorMatrix::OperatorMatrix(int shape, std::vector<Complex> entries, MatrixStructure structure)
    : shape_(shape), entries_(std::move(entries)), structure_(structure) {
    if (shape_ < 0) throw std::invalid_argument("OperatorMatrix: shape must be >= 0");
    const std::size_t want = (static_cast<std::size_t>(shape_) + 1) * (static_cast<std::size_t>(shape_) + 1);
    if (entries_.size() != want) throw std::invalid_argument("OperatorMatrix: entry count does not match shape");
    for (int n = 0; n <= shape_; ++n)
        for (int m = 0; m <= shape_; ++m)
            if (!pattern_allows(structure_, n, m) && (*this)(n, m) != 0.0)
                throw std::invalid_argument("OperatorMatrix: entries violate declared structure");
}

OperatorMatrix OperatorMatrix::with_detected_structure(int shape, std::vector<Complex> entries) {
    MatrixStructure s = detect_structure(shape, entries);
    return OperatorMatrix(shape, std::move(entries), s);
}

CoeffVector OperatorMatrix::apply(const CoeffVector& f) const {
    if (f.order() != shape_) throw std::invalid_argument("apply: vector order does not match matrix shape");
    std::vector<Complex> out(static_cast<std::size_t>(shape_) + 1);
    for (int n = 0; n <= shape_; ++n) {
        NeumaierComplexSum<double> acc;
        for (int m = 0; m <= shape_; ++m) acc.add((*this)(n, m) * f[m]);
        out[static_cast<std::size_t>(n)] = acc.result();
    }
    return CoeffVector(std::move(out));
}

OperatorMatrix identity_matrix(int N) {
    std::vector<Complex> e((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (int n = 0; n <= N; ++n) e[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(n)] = 1.0;
    return OperatorMatrix(N, std::move(e), MatrixStructure::Bidiagonal);
}

OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("matmul: mismatched truncation orders");
    const int N = a.shape();
    std::vector<Complex> out((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) {
            NeumaierComplexSum<double> acc;
            for (int k = 0; k <= N; ++k) acc.add(a(n, k) * b(k, m));
            out[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(m)] = acc.result();
        }
    }
    return OperatorMatrix::with_detected_structure(N, std::move(out));
}

namespace {

template <class F>
OperatorMatrix entrywise(const OperatorMatrix& a, const OperatorMatrix& b, F&& f) {
    if (a.shape() != b.shape()) throw std::invalid_argument("matrix arithmetic: mismatched truncation orders");
    const int N = a.shape();
    std::vector<Complex> out((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m)
            out[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(m)] = f(a(n, m), b(n, m));
    return OperatorMatrix::with_detected_structure(N, std::move(out));
}

}  // namespace

OperatorMatrix mat_add(const OperatorMatrix& a, const OperatorMatrix& b) {
    return entrywise(a, b, [](Complex x, Complex y) { return x + y; });
}

OperatorMatrix mat_sub(const OperatorMatrix& a, const OperatorMatrix& b) {
    return entrywise(a, b, [](Complex x, Complex y) { return x - y; });
}

OperatorMatrix mat_scale(Complex c, const OperatorMatrix& a) {
    const int N = a.shape();
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    for (auto& v : out) v *= c;
    return OperatorMatrix::with_detected_structure(N, std::move(out));
}

OperatorMatrix conj_transpose(const OperatorMatrix& a) {
    const int N = a.shape();
    std::vector<Complex> out((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m)
            out[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(m)] = std::conj(a(m, n));
    return OperatorMatrix::with_detected_structure(N, std::move(out));
}

double max_abs(const OperatorMatrix& a) {
    double r = 0.0;
    for (const Complex& v : a.entries()) r = std::max(r, std::abs(v));
    return r;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("max_abs_diff: mismatched truncation orders");
    double r = 0.0;
    const int N = a.shape();
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m) r = std::max(r, std::abs(a(n, m) - b(n, m)));
    return r;
}

double max_abs_diff(const CoeffVector& f, const CoeffVector& g) {
    if (f.order() != g.order()) throw std::invalid_argument("max_abs_diff: mismatched truncation orders");
    double r = 0.0;
    for (int k = 0; k <= f.order(); ++k) r = std::max(r, std::abs(f[k] - g[k]));
    return r;
}

OperatorMatrix cesaro_matrix(int N) {
    if (N < 0) throw std::invalid_argument("cesaro_matrix: N must be >= 0");
    std::vector<Complex> e((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (int n = 0; n <= N; ++n) {
        const double v = 1.0 / (n + 1.0);
        for (int m = 0; m <= n; ++m) e[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(m)] = v;
    }
    return OperatorMatrix(N, std::move(e), MatrixStructure::LowerTriangular);
}

OperatorMatrix cesaro_adjoint_matrix(int N) {
    if (N < 0) throw std::invalid_argument("cesaro_adjoint_matrix: N must be >= 0");
    std::vector<Complex> e((static_cast<std::size_t>(N) + 1) * (static_cast<std::size_t>(N) + 1));
    for (int m = 0; m <= N; ++m) {
        const double v = 1.0 / (m + 1.0);
        for (int n = 0; n <= m; ++n) e[static_cast<std::size_t>(n) * (N + 1u) + static_cast<std::size_t>(m)] = v;
    }
    return OperatorMatrix(N, std::move(e), MatrixStructure::UpperTriangular);
}

CoeffVector apply_cesaro(const CoeffVector& f) {
    std::vector<Complex> out(static_cast<std::size_t>(f.order()) + 1);
    NeumaierComplexSum<double> prefix;
    for (int n = 0; n <= f.order(); ++n) {
        prefix.add(f[n]);
        out[static_cast<std::size_t>(n)] = prefix.result() / (n + 1.0);
    }
    return CoeffVector(std::move(out));
}

}  // namespace cesaro
