#pragma once

#include <vector>

#include "ramct/linalg.hpp"

namespace ramct {

/// Every scalar weight of the multi-term objective, one field per role.
/// The source formulation reuses Greek letters across sections; this struct
/// is the canonical dictionary so the two optimizers cannot drift apart:
///
///   channel_weights            per-channel fidelity weights
///   component_weights          per-channel, per-component fidelity weights
///                              (also the per-source weights of the u-update)
///   spatial_weight             top-level multiplier on the spatial group
///   reg_group_weights          per-group regularization weights
///                              (also the per-v-source weights of the u-update)
///   reg_operator_weights       per-group, per-operator weights (their flat
///                              sum also scales the multiplier correction)
///   temporal_weight            strength of the pull toward the prior
///   temporal_component_weights per-prior weights, default {1}
struct WeightConfig {
    std::vector<double> channel_weights;
    std::vector<std::vector<double>> component_weights;
    double spatial_weight = 0.6;
    std::vector<double> reg_group_weights;
    std::vector<std::vector<double>> reg_operator_weights;
    double temporal_weight = 0.5;
    std::vector<double> temporal_component_weights{1.0};
    double relaxation_mu = 4.0;
    double ridge_nu = 0.001;
    double data_side_gamma = 1.0;
    double data_side_beta = 1.0;
    double multiplier_eta = 0.2;
    double penalty_rho_init = 0.1;
    double penalty_rho_max = 1.0;
    double penalty_delta = 0.05;
    double zeta = 1.0;

    double psi_sum() const;  // sum of temporal_component_weights
    double tau_sum() const;  // flat sum of reg_operator_weights
    // Lookups default to 1.0 beyond the configured lists.
    double channel_weight(int i) const;
    double component_weight(int i, int k) const;
    double reg_group_weight(int j) const;
    double reg_operator_weight(int j, int l) const;
};

/// One fidelity term ||A w - b||^2 attached to channel/component indices.
struct DataTerm {
    RealMatrix A;
    RealVector b;
    int channel = 0;
    int component = 0;
};

/// One spatial penalty ||L (w - w0)||^2 attached to group/member indices.
struct RegTerm {
    RealMatrix L;
    int group = 0;
    int member = 0;
};

/// A multi-term regularized least-squares problem over R^n with priors for
/// the three iterates.
struct ProblemInstance {
    int n = 0;
    std::vector<DataTerm> data_terms;
    std::vector<RegTerm> reg_terms;
    RealVector w0, u0, v0;
    WeightConfig weights;

    // Effective scalar weight of a term under the canonical dictionary:
    // data terms carry channel * component, reg terms carry
    // spatial * group * operator.
    double data_weight(const DataTerm& t) const;
    double reg_weight(const RegTerm& r) const;

    void validate() const;  // throws DimensionMismatch
};

/// Iterates, penalty and iteration bookkeeping owned by one optimizer run.
struct SolverState {
    RealVector w, u, v;
    double rho = 0.1;
    int k = 0;
    std::vector<double> loss_history;
};

/// Per-iteration loss: fidelity + spatial penalties + the two coupling
/// residuals + the zeta-weighted anchor of v on its prior.
double evaluate_loss(const ProblemInstance& p, const SolverState& st);

/// Stability displacement of v: (v_next - v_prev) + eta * sum(psi) * (v0 - v_prev).
RealVector delta_v_metric(const RealVector& v_next, const RealVector& v_prev,
                          const RealVector& v0, const WeightConfig& w);

/// Weighted mean squared error over a batch of estimates:
/// (1/N) * sum_i gamma_i * ||x_i - x_true||^2.
double weighted_mse(const std::vector<RealVector>& estimates, const RealVector& x_true,
                    const std::vector<double>& gammas);

struct StackedOperators {
    RealMatrix A;  // vertical concatenation of sqrt(weight) * A_ik
    RealVector b;  // matching sqrt(weight) * b_ik
    RealMatrix L;  // vertical concatenation of sqrt(weight) * L_jl
};

/// Fold the weighted term lists into a single pair so that minimizing
/// ||A x - b||^2 + ||L (x - w0)||^2 minimizes the original fidelity and
/// spatial groups.
StackedOperators stack_operators(const ProblemInstance& p);

}  // namespace ramct
