#pragma once

// The composition semigroup on the disc induced by phi_t(z) = e^{-t} z + 1 - e^{-t},
// together with its generator A f = (1-z) f', the resolvent T = (A-I)^{-1},
// the cogenerator V = (A+I)(A-I)^{-1} = I + 2T, and the adjoint
// weighted-composition form. Matrices follow the hardy_core convention
// entries[n][m] = coefficient of z^n in the image of z^m, which makes the
// composition matrices upper triangular: truncated products of them are exact.
//
// Sign convention: (I - A)^{-1} = int_0^inf e^{-t} C_{phi_t} dt equals the
// Cesaro adjoint; equivalently T = -C^* and V - I = -2 C^*. The quadrature
// module's Beta-integral check pins this sign.

#include <utility>
#include <vector>

#include "cesaro/hardy.hpp"

namespace cesaro {

OperatorMatrix composition_matrix(double t, int N);
OperatorMatrix adjoint_composition_matrix(double t, int N);

double semigroup_law_residual(double t1, double t2, int N);

OperatorMatrix generator_matrix(int N);
OperatorMatrix resolvent_T_matrix(int N);
OperatorMatrix cogenerator_matrix(int N);

// Largest singular value of composition_matrix(t, N) by power iteration on
// M^H M. The returned Rayleigh estimate can only undershoot, so it is always
// <= the operator norm e^{t/2}. tol is the relative change of the squared
// estimate between sweeps; iteration cap overrun throws.
double operator_norm_truncation(double t, int N, double tol = 1e-11, int max_iter = 20000);

// Norm estimates for a whole ladder of truncation orders. Each order warm
// starts from the previous singular vector, which makes the reported values
// nondecreasing by construction (the Rayleigh quotient never drops under
// power iteration, and zero-padding preserves it across orders).
std::vector<std::pair<int, double>> norm_convergence_curve(double t, const std::vector<int>& orders,
                                                           double tol = 1e-11, int max_iter = 20000);

}  // namespace cesaro
