#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ramct/errors.hpp"

namespace ramct {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Generalized singular value decomposition of a matrix pair (A, L) with a
/// common column count n, in the CS convention:
///
///   A = U * diag(c) * X^T,   L = V * diag(s) * X^T,   c_i^2 + s_i^2 = 1.
///
/// U and V have orthonormal columns (whenever their row counts permit n of
/// them), X is square invertible, c is sorted descending.
struct GsvdFactors {
    RealMatrix U;   // m x n
    RealMatrix V;   // p x n
    RealMatrix X;   // n x n, invertible
    RealVector c;   // n, entries in [0, 1]
    RealVector s;   // n, entries in [0, 1]
};

/// Search interval for the scalar zero-finder. lo < hi.
struct Bracket {
    double lo;
    double hi;
};

/// Factor the pair (A, L). The stacked matrix [A; L] must have full column
/// rank; otherwise RankDeficient is thrown. Column counts must agree.
///
/// Computed by a rank-revealing factorization of the stacked matrix followed
/// by a CS decomposition of the resulting orthonormal blocks.
GsvdFactors gsvd(const RealMatrix& A, const RealMatrix& L);

/// Minimizer of ||A x - b||^2 + lam * ||L x||^2 expressed in the GSVD basis:
///
///   x = X^{-T} * diag(c_i / (c_i^2 + lam * s_i^2)) * U^T b.
///
/// Throws SingularFilter when some c_i^2 + lam * s_i^2 vanishes (lam = 0 with
/// a rank-deficient A side).
RealVector tikhonov_solve_gsvd(const GsvdFactors& f, const RealVector& b, double lam);

/// One weighted least-squares term w * ||A x - b||^2.
struct NormalTerm {
    RealMatrix A;
    RealVector b;
    double weight = 1.0;
};

/// One weighted seminorm penalty r * ||L x||^2.
struct NormalReg {
    RealMatrix L;
    double weight = 1.0;
};

/// Dense normal-equations solve of
///
///   min_x  sum_i w_i ||A_i x - b_i||^2 + sum_j r_j ||L_j x||^2 + ridge ||x||^2
///
/// by SPD factorization with one step of iterative refinement. This is the
/// brute-force reference used to cross-check every closed-form update.
RealVector dense_normal_solve(const std::vector<NormalTerm>& terms,
                              const std::vector<NormalReg>& regs,
                              double ridge);

/// Bracketing bisection for phi(t) = target on a monotone phi. If the initial
/// bracket does not straddle the target the bracket is expanded (up to 60
/// doublings of its width, in the direction indicated by the slope) before
/// giving up with NoBracket. Non-finite phi values raise NonFinite.
///
/// Returns t with |phi(t) - target| <= tol or |hi - lo| <= tol * max(1, |t|).
double zero_find(const std::function<double(double)>& phi, double target, Bracket bracket,
                 double tol);

}  // namespace ramct
