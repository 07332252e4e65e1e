#include "ramct/problem_gen.hpp"

#include <random>

namespace ramct {

ProblemInstance seeded_instance(int n, int channels, std::uint32_t seed) {
    if (n < 1 || channels < 1) {
        throw DimensionMismatch("seeded_instance: n and channels must be positive");
    }
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto randn_matrix = [&](int rows, int cols) {
        RealMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
        return m;
    };
    auto randn_vector = [&](int len, double scale) {
        RealVector v(len);
        for (int i = 0; i < len; ++i) v(i) = scale * gauss(rng);
        return v;
    };

    ProblemInstance p;
    p.n = n;
    for (int c = 0; c < channels; ++c) {
        DataTerm t;
        t.A = randn_matrix(n + 2, n);
        t.b = randn_vector(n + 2, 1.0);
        t.channel = c;
        t.component = 0;
        p.data_terms.push_back(std::move(t));
    }

    RegTerm identity;
    identity.L = RealMatrix::Identity(n, n);
    identity.group = 0;
    identity.member = 0;
    p.reg_terms.push_back(std::move(identity));
    if (n > 1) {
        RegTerm diff;
        diff.L = RealMatrix::Zero(n - 1, n);
        for (int i = 0; i < n - 1; ++i) {
            diff.L(i, i) = -1.0;
            diff.L(i, i + 1) = 1.0;
        }
        diff.group = 0;
        diff.member = 1;
        p.reg_terms.push_back(std::move(diff));
    }

    p.w0 = randn_vector(n, 0.3);
    p.u0 = p.w0;
    p.v0 = p.w0;

    WeightConfig& w = p.weights;
    w.channel_weights.assign(channels, 1.0);
    w.component_weights.assign(channels, {1.0});
    w.spatial_weight = 0.6;
    w.reg_group_weights = {1.0};
    w.reg_operator_weights = {{1.0, 1.0}};
    w.temporal_weight = 0.0;  // xi = 0: consistent-weights configuration
    w.temporal_component_weights = {1.0};
    w.relaxation_mu = 4.0;
    w.ridge_nu = 0.0;
    w.data_side_gamma = 1.0;
    w.data_side_beta = 1.0;
    w.multiplier_eta = 0.0;
    w.penalty_rho_init = 0.1;
    w.penalty_rho_max = 1.0;
    w.penalty_delta = 0.05;
    w.zeta = 0.0;
    return p;
}

RealVector collapsed_minimizer(const ProblemInstance& p) {
    std::vector<NormalTerm> terms;
    for (const auto& t : p.data_terms) terms.push_back({t.A, t.b, p.data_weight(t)});
    for (const auto& r : p.reg_terms) terms.push_back({r.L, r.L * p.w0, p.reg_weight(r)});
    const double xi_psi = p.weights.temporal_weight * p.weights.psi_sum();
    if (xi_psi > 0.0) {
        terms.push_back({RealMatrix::Identity(p.n, p.n), p.w0, xi_psi});
    }
    return dense_normal_solve(terms, {}, 0.0);
}

}  // namespace ramct
