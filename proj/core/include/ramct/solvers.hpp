#pragma once

#include "ramct/objective.hpp"

namespace ramct {

enum class SolverMode { online, auxiliary };

struct SolverConfig {
    int max_iter = 200;
    double tol_rel = 1e-6;       // relative change of w
    double tol_coupling = 1e-6;  // on ||w - u||
    SolverMode mode = SolverMode::online;
    bool record_history = false;
    bool aux_refine = false;  // optional multiplier refinement in auxiliary mode
};

struct SolveReport {
    SolverState final_state;
    int iterations = 0;
    bool converged = false;
    std::vector<double> loss_history;
    std::vector<double> coupling_history;  // ||w - u|| per iteration
    std::vector<double> rho_history;
};

/// w-step of the online algorithm: minimizer of
///
///   1/2 sum a_k w_ks ||A w - b||^2 + lambda/2 sum ||L (w - w0)||^2
///     + mu/2 ||w - u||^2 + nu ||w||^2
///
/// computed in the GSVD basis of the stacked pair. The shifted and
/// differently-centered quadratics join the data side of the pair, so the
/// per-value division of the closed form is literal in the shared basis.
RealVector subproblem_a_update(const ProblemInstance& p, const SolverState& st);

/// u-step: convex combination of the w sources, v sources and the prior u0,
///
///   u = (g * sum chi_s w_s + b * sum kappa_t v_t + xi * sum psi_r * u0)
///       / (g * sum chi_s + b * sum kappa_t + xi * sum psi_r)
///
/// with chi drawn from the component weights, kappa from the group weights.
RealVector subproblem_b_update(const ProblemInstance& p,
                               const std::vector<RealVector>& w_sources,
                               const std::vector<RealVector>& v_sources);

/// v-step (multiplier-style): v + rho * tau_sum * (w - u) + eta * psi_sum * (v0 - v).
RealVector subproblem_c_update(const ProblemInstance& p, const SolverState& st,
                               const RealVector& w_next, const RealVector& u_next);

/// Penalty growth: min(rho_max, rho + delta * tau_sum * ||w - u||). Never
/// decreases.
double penalty_update(const WeightConfig& cfg, double rho, const RealVector& w_next,
                      const RealVector& u_next);

/// Gram-style operator of the auxiliary w-step:
/// P = sum d_ik A^T A + sum s_jl L^T L (canonical effective weights).
RealMatrix assemble_P(const ProblemInstance& p);

/// Auxiliary w-step: solves (P + I) w = sum d_ik A^T b + sum s_jl L^T L w0 + u,
/// the stationary point of the w-subproblem with its shifted spatial terms.
RealVector aux_w_update(const ProblemInstance& p, const RealVector& u);

/// Auxiliary u-step; same closed form as subproblem_b_update.
RealVector aux_u_update(const ProblemInstance& p, const std::vector<RealVector>& w_sources,
                        const std::vector<RealVector>& v_sources);

/// Auxiliary v-step: (u + zeta * v0) / (1 + zeta), componentwise between u and v0.
RealVector aux_v_update(const RealVector& u, const RealVector& v0, double zeta);

/// Optional refinement of v; identical form to subproblem_c_update.
RealVector aux_v_refine(const ProblemInstance& p, const SolverState& st,
                        const RealVector& w_next, const RealVector& u_next);

/// True iff ||w_next - w_prev|| / max(1, ||w_prev||) < tol_rel and
/// ||w_next - u_next|| < tol_coupling (both strict).
bool convergence_check(const SolverState& prev, const SolverState& next,
                       const SolverConfig& cfg);

/// Joint objective in (w, u, v) that both optimizers drive down:
/// fidelity + ||w-u||^2 + ||u-v||^2 + spatial + temporal pull of w on w0.
double joint_objective(const ProblemInstance& p, const RealVector& w, const RealVector& u,
                       const RealVector& v);

/// Online optimization with dynamic discrepancy adjustment: A/B/C sweeps with
/// the growing penalty, starting from w = u = w0, v = v0.
SolveReport run_online_optimizer(const ProblemInstance& p, const SolverConfig& cfg);

/// Auxiliary-variable alternating minimization, starting from the priors and
/// converging on the change of the joint objective value.
SolveReport run_aux_optimizer(const ProblemInstance& p, const SolverConfig& cfg);

}  // namespace ramct
