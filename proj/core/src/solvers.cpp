#include "ramct/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace ramct {

namespace {

// Flattened per-source weights for the u-step. Sources beyond the configured
// lists weigh 1.0.
std::vector<double> chi_weights(const WeightConfig& w, std::size_t count) {
    std::vector<double> out;
    for (const auto& row : w.component_weights)
        for (double v : row) out.push_back(v);
    out.resize(count, 1.0);
    return out;
}

std::vector<double> kappa_weights(const WeightConfig& w, std::size_t count) {
    std::vector<double> out = w.reg_group_weights;
    out.resize(count, 1.0);
    return out;
}

}  // namespace

RealVector subproblem_a_update(const ProblemInstance& p, const SolverState& st) {
    p.validate();
    if (st.u.size() != p.n) throw DimensionMismatch("subproblem_a_update: u length");
    const WeightConfig& w = p.weights;

    // Objective scaled by 2: fidelity weight d_ik, coupling mu, ridge 2*nu,
    // spatial s_jl. Everything not centered at w0 joins the data side.
    StackedOperators ops = stack_operators(p);
    const bool with_mu = w.relaxation_mu > 0.0;
    const bool with_nu = w.ridge_nu > 0.0;
    Eigen::Index rows = ops.A.rows() + (with_mu ? p.n : 0) + (with_nu ? p.n : 0);

    RealMatrix A_aug(rows, p.n);
    RealVector b_aug(rows);
    A_aug.topRows(ops.A.rows()) = ops.A;
    b_aug.head(ops.b.size()) = ops.b;
    Eigen::Index at = ops.A.rows();
    if (with_mu) {
        const double sm = std::sqrt(w.relaxation_mu);
        A_aug.middleRows(at, p.n) = sm * RealMatrix::Identity(p.n, p.n);
        b_aug.segment(at, p.n) = sm * st.u;
        at += p.n;
    }
    if (with_nu) {
        A_aug.middleRows(at, p.n) = std::sqrt(2.0 * w.ridge_nu) * RealMatrix::Identity(p.n, p.n);
        b_aug.segment(at, p.n).setZero();
    }

    // Shift to z = w - w0 so the regularization side is centered at zero.
    const RealVector rhs = b_aug - A_aug * p.w0;
    GsvdFactors f = gsvd(A_aug, ops.L);
    return p.w0 + tikhonov_solve_gsvd(f, rhs, 1.0);
}

RealVector subproblem_b_update(const ProblemInstance& p,
                               const std::vector<RealVector>& w_sources,
                               const std::vector<RealVector>& v_sources) {
    const WeightConfig& w = p.weights;
    for (const auto& s : w_sources)
        if (s.size() != p.n) throw DimensionMismatch("subproblem_b_update: w source length");
    for (const auto& s : v_sources)
        if (s.size() != p.n) throw DimensionMismatch("subproblem_b_update: v source length");

    const std::vector<double> chi = chi_weights(w, w_sources.size());
    const std::vector<double> kappa = kappa_weights(w, v_sources.size());

    RealVector num = RealVector::Zero(p.n);
    double den = 0.0;
    for (std::size_t s = 0; s < w_sources.size(); ++s) {
        num += w.data_side_gamma * chi[s] * w_sources[s];
        den += w.data_side_gamma * chi[s];
    }
    for (std::size_t t = 0; t < v_sources.size(); ++t) {
        num += w.data_side_beta * kappa[t] * v_sources[t];
        den += w.data_side_beta * kappa[t];
    }
    const double xi_psi = w.temporal_weight * w.psi_sum();
    num += xi_psi * p.u0;
    den += xi_psi;

    if (den <= 0.0) throw ZeroDenominator("subproblem_b_update: all effective weights are zero");
    return num / den;
}

RealVector subproblem_c_update(const ProblemInstance& p, const SolverState& st,
                               const RealVector& w_next, const RealVector& u_next) {
    if (w_next.size() != p.n || u_next.size() != p.n || st.v.size() != p.n) {
        throw DimensionMismatch("subproblem_c_update: dimension mismatch");
    }
    const WeightConfig& w = p.weights;
    return st.v + st.rho * w.tau_sum() * (w_next - u_next) +
           w.multiplier_eta * w.psi_sum() * (p.v0 - st.v);
}

double penalty_update(const WeightConfig& cfg, double rho, const RealVector& w_next,
                      const RealVector& u_next) {
    const double step = cfg.penalty_delta * cfg.tau_sum() * (w_next - u_next).norm();
    return std::min(cfg.penalty_rho_max, rho + step);
}

RealMatrix assemble_P(const ProblemInstance& p) {
    if (p.n <= 0) throw DimensionMismatch("assemble_P: n must be positive");
    for (const auto& t : p.data_terms) {
        if (t.A.cols() != p.n || t.A.rows() != t.b.size()) {
            throw DimensionMismatch("assemble_P: data term dimensions");
        }
    }
    for (const auto& r : p.reg_terms) {
        if (r.L.cols() != p.n) throw DimensionMismatch("assemble_P: reg term columns");
    }
    RealMatrix P = RealMatrix::Zero(p.n, p.n);
    for (const auto& t : p.data_terms) {
        P.noalias() += p.data_weight(t) * t.A.transpose() * t.A;
    }
    for (const auto& r : p.reg_terms) {
        P.noalias() += p.reg_weight(r) * r.L.transpose() * r.L;
    }
    return P;
}

RealVector aux_w_update(const ProblemInstance& p, const RealVector& u) {
    if (u.size() != p.n) throw DimensionMismatch("aux_w_update: u length");
    if (p.w0.size() != p.n && !p.reg_terms.empty()) {
        throw DimensionMismatch("aux_w_update: prior length");
    }
    const RealMatrix N = assemble_P(p) + RealMatrix::Identity(p.n, p.n);

    RealVector rhs = u;
    for (const auto& t : p.data_terms) {
        rhs.noalias() += p.data_weight(t) * t.A.transpose() * t.b;
    }
    for (const auto& r : p.reg_terms) {
        rhs.noalias() += p.reg_weight(r) * r.L.transpose() * (r.L * p.w0);
    }

    Eigen::LLT<RealMatrix> llt(N);
    RealVector x = llt.solve(rhs);
    x += llt.solve(rhs - N * x);
    return x;
}

RealVector aux_u_update(const ProblemInstance& p, const std::vector<RealVector>& w_sources,
                        const std::vector<RealVector>& v_sources) {
    return subproblem_b_update(p, w_sources, v_sources);
}

RealVector aux_v_update(const RealVector& u, const RealVector& v0, double zeta) {
    if (u.size() != v0.size()) throw DimensionMismatch("aux_v_update: length mismatch");
    if (zeta < 0.0) throw DimensionMismatch("aux_v_update: zeta must be nonnegative");
    return (u + zeta * v0) / (1.0 + zeta);
}

RealVector aux_v_refine(const ProblemInstance& p, const SolverState& st,
                        const RealVector& w_next, const RealVector& u_next) {
    return subproblem_c_update(p, st, w_next, u_next);
}

bool convergence_check(const SolverState& prev, const SolverState& next,
                       const SolverConfig& cfg) {
    if (prev.w.size() != next.w.size() || next.w.size() != next.u.size()) {
        throw DimensionMismatch("convergence_check: dimension mismatch");
    }
    const double rel = (next.w - prev.w).norm() / std::max(1.0, prev.w.norm());
    const double coupling = (next.w - next.u).norm();
    return rel < cfg.tol_rel && coupling < cfg.tol_coupling;
}

double joint_objective(const ProblemInstance& p, const RealVector& w, const RealVector& u,
                       const RealVector& v) {
    double j = 0.0;
    for (const auto& t : p.data_terms) j += p.data_weight(t) * (t.A * w - t.b).squaredNorm();
    for (const auto& r : p.reg_terms) j += p.reg_weight(r) * (r.L * (w - p.w0)).squaredNorm();
    j += (w - u).squaredNorm();
    j += (u - v).squaredNorm();
    j += p.weights.temporal_weight * p.weights.psi_sum() * (w - p.w0).squaredNorm();
    return j;
}

SolveReport run_online_optimizer(const ProblemInstance& p, const SolverConfig& cfg) {
    p.validate();
    SolveReport rep;
    SolverState st{p.w0, p.w0, p.v0, p.weights.penalty_rho_init, 0, {}};

    for (int it = 1; it <= cfg.max_iter; ++it) {
        const SolverState prev = st;
        const RealVector w_next = subproblem_a_update(p, st);
        const RealVector u_next = subproblem_b_update(p, {w_next}, {st.v});
        const RealVector v_next = subproblem_c_update(p, st, w_next, u_next);
        const double rho_next = penalty_update(p.weights, st.rho, w_next, u_next);

        st.w = w_next;
        st.u = u_next;
        st.v = v_next;
        st.rho = rho_next;
        st.k = it;
        st.loss_history.push_back(evaluate_loss(p, st));

        rep.iterations = it;
        if (cfg.record_history) {
            rep.loss_history.push_back(st.loss_history.back());
            rep.coupling_history.push_back((st.w - st.u).norm());
            rep.rho_history.push_back(st.rho);
        }
        if (convergence_check(prev, st, cfg)) {
            rep.converged = true;
            break;
        }
    }
    rep.final_state = std::move(st);
    return rep;
}

SolveReport run_aux_optimizer(const ProblemInstance& p, const SolverConfig& cfg) {
    p.validate();
    SolveReport rep;
    SolverState st{p.w0, p.u0, p.v0, p.weights.penalty_rho_init, 0, {}};
    double j_prev = joint_objective(p, st.w, st.u, st.v);

    for (int it = 1; it <= cfg.max_iter; ++it) {
        const RealVector w_prev = st.w;
        const RealVector w_next = aux_w_update(p, st.u);
        const RealVector u_next = aux_u_update(p, {w_next}, {st.v});
        RealVector v_next = aux_v_update(u_next, p.v0, p.weights.zeta);
        if (cfg.aux_refine) {
            SolverState mid = st;
            mid.v = v_next;
            v_next = aux_v_refine(p, mid, w_next, u_next);
        }

        st.w = w_next;
        st.u = u_next;
        st.v = v_next;
        st.k = it;
        st.loss_history.push_back(evaluate_loss(p, st));

        rep.iterations = it;
        if (cfg.record_history) {
            rep.loss_history.push_back(st.loss_history.back());
            rep.coupling_history.push_back((st.w - st.u).norm());
            rep.rho_history.push_back(st.rho);
        }

        const double j = joint_objective(p, st.w, st.u, st.v);
        const double w_rel = (st.w - w_prev).norm() / std::max(1.0, w_prev.norm());
        if (std::abs(j_prev - j) <= cfg.tol_rel * std::max(1.0, std::abs(j_prev)) &&
            w_rel < cfg.tol_rel) {
            rep.converged = true;
            break;
        }
        j_prev = j;
    }
    rep.final_state = std::move(st);
    return rep;
}

}  // namespace ramct
