#pragma once

// Coefficient-space model of the Hardy space on the disc, truncated at a
// fixed order N. A CoeffVector holds Taylor coefficients a_0..a_N of
// f(z) = sum a_k z^k; an OperatorMatrix holds the action of an operator on
// the monomial basis with the convention
//
//     entries[n][m] = coefficient of z^n in the image of z^m.
//
// The Cesaro operator (C f)_n = (1/(n+1)) sum_{k<=n} a_k is lower
// triangular in this convention; its adjoint has the constant columns
// M[n][m] = 1/(m+1) for n <= m.

#include <complex>
#include <span>
#include <vector>

#include "cesaro/special.hpp"

namespace cesaro {

class CoeffVector {
  public:
    explicit CoeffVector(std::vector<Complex> coeffs);
    static CoeffVector zero(int order);
    static CoeffVector basis(int order, int k);  // e_k

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    const Complex& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  private:
    std::vector<Complex> coeffs_;  // size order+1, immutable after construction
};

Complex inner(const CoeffVector& f, const CoeffVector& g);
double h2_norm(const CoeffVector& f);

enum class MatrixStructure { LowerTriangular, UpperTriangular, Bidiagonal, Dense };

const char* structure_name(MatrixStructure s);
MatrixStructure structure_from_name(const std::string& name);

class OperatorMatrix {
  public:
    // Declared structure is verified against the zero pattern on construction.
    OperatorMatrix(int shape, std::vector<Complex> entries, MatrixStructure structure);

    // Convenience: detect the tightest structure tag for the given entries.
    static OperatorMatrix with_detected_structure(int shape, std::vector<Complex> entries);

    int shape() const { return shape_; }
    MatrixStructure structure() const { return structure_; }
    const Complex& operator()(int n, int m) const {
        return entries_[static_cast<std::size_t>(n) * (shape_ + 1u) + static_cast<std::size_t>(m)];
    }
    std::span<const Complex> entries() const { return entries_; }

    CoeffVector apply(const CoeffVector& f) const;

  private:
    int shape_;                     // truncation order N; matrix is (N+1)x(N+1)
    std::vector<Complex> entries_;  // row-major
    MatrixStructure structure_;
};

OperatorMatrix identity_matrix(int N);
OperatorMatrix matmul(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix mat_add(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix mat_sub(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix mat_scale(Complex c, const OperatorMatrix& a);
OperatorMatrix conj_transpose(const OperatorMatrix& a);

double max_abs(const OperatorMatrix& a);
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);
double max_abs_diff(const CoeffVector& f, const CoeffVector& g);

// The Cesaro operator and its adjoint at truncation order N.
OperatorMatrix cesaro_matrix(int N);
OperatorMatrix cesaro_adjoint_matrix(int N);

// Prefix-sum form of C f, O(N); agrees with cesaro_matrix(N).apply(f).
CoeffVector apply_cesaro(const CoeffVector& f);

}  // namespace cesaro
