#include "ramct/objective.hpp"

#include <cmath>
#include <numeric>

namespace ramct {

double WeightConfig::psi_sum() const {
    return std::accumulate(temporal_component_weights.begin(), temporal_component_weights.end(),
                           0.0);
}

double WeightConfig::tau_sum() const {
    double s = 0.0;
    for (const auto& group : reg_operator_weights)
        s = std::accumulate(group.begin(), group.end(), s);
    return s;
}

double WeightConfig::channel_weight(int i) const {
    return i < static_cast<int>(channel_weights.size()) ? channel_weights[i] : 1.0;
}

double WeightConfig::component_weight(int i, int k) const {
    if (i >= static_cast<int>(component_weights.size())) return 1.0;
    const auto& row = component_weights[i];
    return k < static_cast<int>(row.size()) ? row[k] : 1.0;
}

double WeightConfig::reg_group_weight(int j) const {
    return j < static_cast<int>(reg_group_weights.size()) ? reg_group_weights[j] : 1.0;
}

double WeightConfig::reg_operator_weight(int j, int l) const {
    if (j >= static_cast<int>(reg_operator_weights.size())) return 1.0;
    const auto& row = reg_operator_weights[j];
    return l < static_cast<int>(row.size()) ? row[l] : 1.0;
}

double ProblemInstance::data_weight(const DataTerm& t) const {
    return weights.channel_weight(t.channel) * weights.component_weight(t.channel, t.component);
}

double ProblemInstance::reg_weight(const RegTerm& r) const {
    return weights.spatial_weight * weights.reg_group_weight(r.group) *
           weights.reg_operator_weight(r.group, r.member);
}

void ProblemInstance::validate() const {
    if (n <= 0) throw DimensionMismatch("ProblemInstance: n must be positive");
    if (data_terms.empty()) throw DimensionMismatch("ProblemInstance: needs at least one data term");
    for (const auto& t : data_terms) {
        if (t.A.cols() != n) throw DimensionMismatch("ProblemInstance: data term column count");
        if (t.A.rows() != t.b.size()) throw DimensionMismatch("ProblemInstance: A/b row count");
    }
    for (const auto& r : reg_terms) {
        if (r.L.cols() != n) throw DimensionMismatch("ProblemInstance: reg term column count");
    }
    if (w0.size() != n || u0.size() != n || v0.size() != n) {
        throw DimensionMismatch("ProblemInstance: priors must have length n");
    }
}

double evaluate_loss(const ProblemInstance& p, const SolverState& st) {
    if (st.w.size() != p.n || st.u.size() != p.n || st.v.size() != p.n) {
        throw DimensionMismatch("evaluate_loss: state dimensions do not match the problem");
    }
    double loss = 0.0;
    for (const auto& t : p.data_terms) {
        loss += p.data_weight(t) * (t.A * st.w - t.b).squaredNorm();
    }
    for (const auto& r : p.reg_terms) {
        loss += p.reg_weight(r) * (r.L * (st.w - p.w0)).squaredNorm();
    }
    loss += (st.w - st.u).squaredNorm();
    loss += (st.u - st.v).squaredNorm();
    loss += p.weights.zeta * p.weights.psi_sum() * (st.v - p.v0).squaredNorm();
    return loss;
}

RealVector delta_v_metric(const RealVector& v_next, const RealVector& v_prev,
                          const RealVector& v0, const WeightConfig& w) {
    if (v_next.size() != v_prev.size() || v_prev.size() != v0.size()) {
        throw DimensionMismatch("delta_v_metric: vector lengths differ");
    }
    return v_next - v_prev + w.multiplier_eta * w.psi_sum() * (v0 - v_prev);
}

double weighted_mse(const std::vector<RealVector>& estimates, const RealVector& x_true,
                    const std::vector<double>& gammas) {
    if (estimates.empty()) throw DimensionMismatch("weighted_mse: empty batch");
    if (estimates.size() != gammas.size()) {
        throw DimensionMismatch("weighted_mse: gamma count must match the batch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (estimates[i].size() != x_true.size()) {
            throw DimensionMismatch("weighted_mse: estimate length differs from truth");
        }
        acc += gammas[i] * (estimates[i] - x_true).squaredNorm();
    }
    return acc / static_cast<double>(estimates.size());
}

StackedOperators stack_operators(const ProblemInstance& p) {
    p.validate();
    Eigen::Index data_rows = 0;
    for (const auto& t : p.data_terms) data_rows += t.A.rows();
    Eigen::Index reg_rows = 0;
    for (const auto& r : p.reg_terms) reg_rows += r.L.rows();

    StackedOperators out;
    out.A.resize(data_rows, p.n);
    out.b.resize(data_rows);
    out.L.resize(reg_rows, p.n);

    Eigen::Index row = 0;
    for (const auto& t : p.data_terms) {
        const double sw = std::sqrt(p.data_weight(t));
        out.A.middleRows(row, t.A.rows()) = sw * t.A;
        out.b.segment(row, t.b.size()) = sw * t.b;
        row += t.A.rows();
    }
    row = 0;
    for (const auto& r : p.reg_terms) {
        out.L.middleRows(row, r.L.rows()) = std::sqrt(p.reg_weight(r)) * r.L;
        row += r.L.rows();
    }
    return out;
}

}  // namespace ramct
