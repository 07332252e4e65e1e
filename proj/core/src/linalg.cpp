#include "ramct/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ramct {

namespace {

// Fill column `col` of V with a unit vector orthogonal to all columns in
// `taken` (indices of already-valid columns). Candidates are the identity
// basis vectors, tried in order; the first one with a large residual after
// projection wins, which keeps the completion deterministic.
void complete_orthonormal_column(RealMatrix& V, int col, const std::vector<int>& taken) {
    const int p = static_cast<int>(V.rows());
    for (int k = 0; k < p; ++k) {
        RealVector cand = RealVector::Zero(p);
        cand(k) = 1.0;
        for (int j : taken) cand -= V.col(j).dot(cand) * V.col(j);
        const double nrm = cand.norm();
        if (nrm > 0.5) {
            // Second projection pass tightens orthogonality.
            for (int j : taken) cand -= V.col(j).dot(cand) * V.col(j);
            V.col(col) = cand / cand.norm();
            return;
        }
    }
    V.col(col).setZero();  // p < n leaves nothing to complete with
}

}  // namespace

GsvdFactors gsvd(const RealMatrix& A, const RealMatrix& L) {
    if (A.cols() != L.cols()) {
        throw DimensionMismatch("gsvd: A and L must share a column count");
    }
    const int m = static_cast<int>(A.rows());
    const int p = static_cast<int>(L.rows());
    const int n = static_cast<int>(A.cols());
    if (n == 0) throw DimensionMismatch("gsvd: empty pair");

    RealMatrix M(m + p, n);
    M.topRows(m) = A;
    M.bottomRows(p) = L;

    // Rank-revealing factorization M = Q * T with Q column-orthonormal and
    // T square. The thin SVD provides both at n <= 64 scale.
    Eigen::JacobiSVD<RealMatrix> svd_m(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sig = svd_m.singularValues();
    const double rank_tol =
        std::max(m + p, n) * std::numeric_limits<double>::epsilon() * sig(0);
    if (sig(0) == 0.0 || sig(n - 1) <= rank_tol) {
        throw RankDeficient("gsvd: stacked matrix [A; L] is rank deficient");
    }
    const RealMatrix Q = svd_m.matrixU();
    const RealMatrix T = sig.asDiagonal() * svd_m.matrixV().transpose();

    const RealMatrix Q1 = Q.topRows(m);
    const RealMatrix Q2 = Q.bottomRows(p);

    // CS decomposition of (Q1, Q2): Q1 = U diag(c) Z^T, then the columns of
    // Q2 Z are mutually orthogonal with norms s_i = sqrt(1 - c_i^2).
    GsvdFactors f;
    f.c = RealVector::Zero(n);
    f.U = RealMatrix::Zero(m, n);
    RealMatrix Z;
    if (m > 0) {
        Eigen::JacobiSVD<RealMatrix> svd_q1(Q1, Eigen::ComputeThinU | Eigen::ComputeFullV);
        const int r = static_cast<int>(svd_q1.singularValues().size());
        for (int i = 0; i < r; ++i) f.c(i) = std::min(1.0, svd_q1.singularValues()(i));
        f.U.leftCols(r) = svd_q1.matrixU();
        Z = svd_q1.matrixV();  // n x n
    } else {
        Z = RealMatrix::Identity(n, n);
    }

    f.s = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) f.s(i) = std::sqrt(std::max(0.0, 1.0 - f.c(i) * f.c(i)));

    f.V = RealMatrix::Zero(p, n);
    if (p > 0) {
        const RealMatrix W2 = Q2 * Z;
        std::vector<int> taken;
        std::vector<int> missing;
        for (int i = 0; i < n; ++i) {
            const double nrm = W2.col(i).norm();
            if (nrm > 1e-8) {
                f.V.col(i) = W2.col(i) / nrm;
                taken.push_back(i);
            } else {
                missing.push_back(i);
            }
        }
        for (int i : missing) {
            if (static_cast<int>(taken.size()) >= p) break;  // no room left
            complete_orthonormal_column(f.V, i, taken);
            taken.push_back(i);
        }
    }

    f.X = T.transpose() * Z;  // X^T = Z^T T
    return f;
}

RealVector tikhonov_solve_gsvd(const GsvdFactors& f, const RealVector& b, double lam) {
    if (b.size() != f.U.rows()) {
        throw DimensionMismatch("tikhonov_solve_gsvd: b length must match rows of A");
    }
    const int n = static_cast<int>(f.c.size());
    RealVector y = f.U.transpose() * b;
    for (int i = 0; i < n; ++i) {
        const double d = f.c(i) * f.c(i) + lam * f.s(i) * f.s(i);
        if (!(d > 0.0)) {
            throw SingularFilter("tikhonov_solve_gsvd: c_i^2 + lam*s_i^2 vanishes");
        }
        y(i) *= f.c(i) / d;
    }
    // x = X^{-T} y  <=>  X^T x = y
    RealVector x = f.X.transpose().partialPivLu().solve(y);
    if (!x.allFinite()) throw NonFinite("tikhonov_solve_gsvd: non-finite solution");
    return x;
}

RealVector dense_normal_solve(const std::vector<NormalTerm>& terms,
                              const std::vector<NormalReg>& regs, double ridge) {
    if (terms.empty() && regs.empty()) {
        throw DimensionMismatch("dense_normal_solve: no terms");
    }
    const int n = static_cast<int>(terms.empty() ? regs.front().L.cols() : terms.front().A.cols());

    RealMatrix N = ridge * RealMatrix::Identity(n, n);
    RealVector rhs = RealVector::Zero(n);
    for (const auto& t : terms) {
        if (t.A.cols() != n) throw DimensionMismatch("dense_normal_solve: term column count");
        if (t.A.rows() != t.b.size()) throw DimensionMismatch("dense_normal_solve: A/b rows");
        N.noalias() += t.weight * t.A.transpose() * t.A;
        rhs.noalias() += t.weight * t.A.transpose() * t.b;
    }
    for (const auto& r : regs) {
        if (r.L.cols() != n) throw DimensionMismatch("dense_normal_solve: reg column count");
        N.noalias() += r.weight * r.L.transpose() * r.L;
    }

    Eigen::LLT<RealMatrix> llt(N);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("dense_normal_solve: normal matrix is not positive definite");
    }
    RealVector x = llt.solve(rhs);
    x += llt.solve(rhs - N * x);  // one refinement step
    if (!x.allFinite()) throw NonFinite("dense_normal_solve: non-finite solution");
    return x;
}

double zero_find(const std::function<double(double)>& phi, double target, Bracket bracket,
                 double tol) {
    if (!(bracket.lo < bracket.hi)) {
        throw DimensionMismatch("zero_find: bracket requires lo < hi");
    }
    if (!(tol > 0.0)) throw DimensionMismatch("zero_find: tol must be positive");

    auto eval = [&](double t) {
        const double v = phi(t) - target;
        if (!std::isfinite(v)) throw NonFinite("zero_find: phi returned a non-finite value");
        return v;
    };

    double lo = bracket.lo;
    double hi = bracket.hi;
    double flo = eval(lo);
    double fhi = eval(hi);

    for (int round = 0; round < 60 && flo * fhi > 0.0; ++round) {
        const double width = hi - lo;
        const bool increasing = fhi >= flo;
        const bool below = flo > 0.0;  // both residuals positive
        // Monotone phi: extend toward the side where the sign must flip.
        if (increasing == below) {
            lo -= width;
            flo = eval(lo);
        } else {
            hi += width;
            fhi = eval(hi);
        }
    }
    if (flo * fhi > 0.0) {
        throw NoBracket("zero_find: could not establish a sign change");
    }
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    // Bisect until the residual itself meets tol; the width criterion is a
    // machine-resolution backstop for targets steeper than tol allows.
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if (std::abs(fm) <= tol) return mid;
        const double eps_width =
            4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid));
        if (hi - lo <= std::min(eps_width, tol * std::max(1.0, std::abs(mid)))) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

}  // namespace ramct
