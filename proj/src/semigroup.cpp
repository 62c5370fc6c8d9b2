#include "cesaro/semigroup.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cesaro {

namespace {

void require_time(double t, const char* who) {
    if (!(t >= 0.0)) throw std::invalid_argument(std::string(who) + ": time must be >= 0");
}

void require_order(int N, const char* who) {
    if (N < 0) throw std::invalid_argument(std::string(who) + ": order must be >= 0");
}

}  // namespace

OperatorMatrix composition_matrix(double t, int N) {
    require_time(t, "composition_matrix");
    require_order(N, "composition_matrix");
    const double p = std::exp(-t);
    const double q = -std::expm1(-t);  // 1 - e^{-t} without cancellation
    const std::size_t stride = static_cast<std::size_t>(N) + 1;
    std::vector<Complex> entries(stride * stride, Complex(0.0, 0.0));
    // Column m holds the coefficients of (p z + q)^m. Multiplying the previous
    // column by (p z + q) keeps every term nonnegative, so no cancellation.
    std::vector<double> col(stride, 0.0);
    col[0] = 1.0;
    entries[0] = Complex(1.0, 0.0);
    for (int m = 1; m <= N; ++m) {
        for (int n = std::min(m, N); n >= 1; --n) col[n] = p * col[n - 1] + q * col[n];
        col[0] = q * col[0];
        for (int n = 0; n <= m; ++n) entries[static_cast<std::size_t>(n) * stride + m] = Complex(col[n], 0.0);
    }
    return OperatorMatrix(N, std::move(entries), MatrixStructure::UpperTriangular);
}

OperatorMatrix adjoint_composition_matrix(double t, int N) {
    require_time(t, "adjoint_composition_matrix");
    require_order(N, "adjoint_composition_matrix");
    const double q = -std::expm1(-t);
    const std::size_t stride = static_cast<std::size_t>(N) + 1;
    std::vector<Complex> entries(stride * stride, Complex(0.0, 0.0));
    // Column m is the expansion of p^m z^m / (1 - q z)^{m+1} with p = e^{-t}:
    // the coefficient of z^{m+k} is p^m binom(m+k, k) q^k, by ratio recurrence.
    for (int m = 0; m <= N; ++m) {
        double a = std::exp(-static_cast<double>(m) * t);
        for (int k = 0; m + k <= N; ++k) {
            entries[static_cast<std::size_t>(m + k) * stride + m] = Complex(a, 0.0);
            a *= q * static_cast<double>(m + k + 1) / static_cast<double>(k + 1);
        }
    }
    return OperatorMatrix(N, std::move(entries), MatrixStructure::LowerTriangular);
}

double semigroup_law_residual(double t1, double t2, int N) {
    require_time(t1, "semigroup_law_residual");
    require_time(t2, "semigroup_law_residual");
    require_order(N, "semigroup_law_residual");
    const OperatorMatrix lhs = matmul(composition_matrix(t1, N), composition_matrix(t2, N));
    return max_abs_diff(lhs, composition_matrix(t1 + t2, N));
}

OperatorMatrix generator_matrix(int N) {
    require_order(N, "generator_matrix");
    const std::size_t stride = static_cast<std::size_t>(N) + 1;
    std::vector<Complex> entries(stride * stride, Complex(0.0, 0.0));
    // (1 - z) d/dz maps z^n to n z^{n-1} - n z^n.
    for (int n = 0; n <= N; ++n) {
        entries[static_cast<std::size_t>(n) * stride + n] = Complex(-static_cast<double>(n), 0.0);
        if (n >= 1) entries[static_cast<std::size_t>(n - 1) * stride + n] = Complex(static_cast<double>(n), 0.0);
    }
    return OperatorMatrix(N, std::move(entries), MatrixStructure::Bidiagonal);
}

OperatorMatrix resolvent_T_matrix(int N) {
    require_order(N, "resolvent_T_matrix");
    const std::size_t stride = static_cast<std::size_t>(N) + 1;
    std::vector<Complex> entries(stride * stride, Complex(0.0, 0.0));
    for (int n = 0; n <= N; ++n) {
        const double v = -1.0 / static_cast<double>(n + 1);
        for (int j = 0; j <= n; ++j) entries[static_cast<std::size_t>(j) * stride + n] = Complex(v, 0.0);
    }
    return OperatorMatrix(N, std::move(entries), MatrixStructure::UpperTriangular);
}

OperatorMatrix cogenerator_matrix(int N) {
    require_order(N, "cogenerator_matrix");
    return mat_add(identity_matrix(N), mat_scale(Complex(2.0, 0.0), resolvent_T_matrix(N)));
}

namespace {

// Power iteration working set: the composition matrix is real, so keep flat
// row-major copies of M and M^T and stay in real arithmetic.
struct NormIteration {
    int n;
    std::vector<double> mat;
    std::vector<double> mat_t;

    explicit NormIteration(const OperatorMatrix& M) : n(M.shape() + 1), mat(static_cast<size_t>(n) * n), mat_t(static_cast<size_t>(n) * n) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = M(i, j).real();
                mat[static_cast<size_t>(i) * n + j] = v;
                mat_t[static_cast<size_t>(j) * n + i] = v;
            }
    }

    void apply(const std::vector<double>& a, std::vector<double>& x, std::vector<double>& y) const {
        for (int i = 0; i < n; ++i) {
            const double* row = a.data() + static_cast<size_t>(i) * n;
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += row[j] * x[j];
            y[i] = s;
        }
    }
};

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Runs power iteration on M^H M from the given start vector. Returns the
// singular value estimate and leaves the final unit vector in v.
double norm_iterate(const NormIteration& it, std::vector<double>& v, double tol, int max_iter) {
    double nv = vec_norm(v);
    if (!(nv > 0.0)) throw std::invalid_argument("operator norm iteration: zero start vector");
    for (double& x : v) x /= nv;
    std::vector<double> w(static_cast<size_t>(it.n)), u(static_cast<size_t>(it.n));
    double rho_prev = -1.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        it.apply(it.mat, v, w);
        double rho = 0.0;
        for (double x : w) rho += x * x;  // Rayleigh quotient of M^H M at unit v
        if (rho_prev >= 0.0 && std::abs(rho - rho_prev) <= tol * std::max(rho, 1.0)) return std::sqrt(rho);
        rho_prev = rho;
        it.apply(it.mat_t, w, u);
        const double nu = vec_norm(u);
        if (!(nu > 0.0)) return std::sqrt(rho);
        for (int i = 0; i < it.n; ++i) v[i] = u[i] / nu;
    }
    throw std::runtime_error("operator_norm_truncation: power iteration hit the cap of " + std::to_string(max_iter) + " sweeps without meeting tol");
}

std::vector<double> default_start(int n) {
    // Strictly positive generic profile; M^H M has positive entries, so the
    // overlap with the dominant singular vector cannot vanish.
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.25 * std::sin(0.7 * i);
    return v;
}

}  // namespace

double operator_norm_truncation(double t, int N, double tol, int max_iter) {
    require_time(t, "operator_norm_truncation");
    require_order(N, "operator_norm_truncation");
    const NormIteration it(composition_matrix(t, N));
    std::vector<double> v = default_start(it.n);
    return norm_iterate(it, v, tol, max_iter);
}

std::vector<std::pair<int, double>> norm_convergence_curve(double t, const std::vector<int>& orders, double tol, int max_iter) {
    require_time(t, "norm_convergence_curve");
    if (orders.empty()) throw std::invalid_argument("norm_convergence_curve: no orders");
    for (size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0) throw std::invalid_argument("norm_convergence_curve: order must be >= 0");
        if (i > 0 && orders[i] <= orders[i - 1]) throw std::invalid_argument("norm_convergence_curve: orders must be strictly increasing");
    }
    std::vector<std::pair<int, double>> out;
    out.reserve(orders.size());
    std::vector<double> carry;
    for (int N : orders) {
        const NormIteration it(composition_matrix(t, N));
        std::vector<double> v = default_start(it.n);
        // Zero-padding the previous singular vector leaves its Rayleigh
        // quotient intact (the new rows of M annihilate the padding), so the
        // curve cannot decrease.
        for (size_t i = 0; i < carry.size() && i < v.size(); ++i) v[i] = carry[i];
        for (size_t i = carry.size(); i < v.size() && !carry.empty(); ++i) v[i] = 0.0;
        out.emplace_back(N, norm_iterate(it, v, tol, max_iter));
        carry = v;
    }
    return out;
}

}  // namespace cesaro
