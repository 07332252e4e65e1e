// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one PASS/FAIL line. The process exits nonzero if any criterion
// fails.

#include <array>
#include <chrono>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ramct/fft.hpp"
#include "ramct/metrics.hpp"
#include "ramct/problem_gen.hpp"
#include "ramct/sequence_io.hpp"
#include "ramct/solvers.hpp"
#include "ramct/synth.hpp"
#include "ramct/tracker.hpp"
#include "test_helpers.hpp"

using namespace ramct;
using namespace ramct::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%2d] %-34s %s  (%s)\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_gsvd_validity() {
    Timer timer;
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> dim(1, 16);
    std::uniform_int_distribution<int> extra(0, 4);
    double worst_recon = 0.0, worst_orth = 0.0, worst_cs = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = dim(rng);
        const RealMatrix A = randn_matrix(rng, n + extra(rng), n);
        const RealMatrix L = randn_matrix(rng, n + extra(rng), n);
        const GsvdFactors f = gsvd(A, L);

        const double ra = (f.U * f.c.asDiagonal() * f.X.transpose() - A).norm() /
                          std::max(1.0, A.norm());
        const double rl = (f.V * f.s.asDiagonal() * f.X.transpose() - L).norm() /
                          std::max(1.0, L.norm());
        worst_recon = std::max({worst_recon, ra, rl});
        const int k = n;
        worst_orth = std::max(
            {worst_orth,
             (f.U.transpose() * f.U - RealMatrix::Identity(k, k)).norm(),
             (f.V.transpose() * f.V - RealMatrix::Identity(k, k)).norm()});
        for (int i = 0; i < n; ++i) {
            worst_cs = std::max(worst_cs,
                                std::abs(f.c(i) * f.c(i) + f.s(i) * f.s(i) - 1.0));
        }
    }
    const double secs = timer.seconds();
    const bool pass =
        worst_recon < 1e-10 && worst_orth < 1e-10 && worst_cs < 1e-12 && secs < 5.0;
    report(1, "GSVD validity (100 pairs)", pass,
           fmt("recon %.2e, orth %.2e, c2+s2 %.2e, %.2fs", worst_recon, worst_orth, worst_cs,
               secs));
}

// ---------------------------------------------------------------- criterion 2
void criterion_closed_form_exactness() {
    Timer timer;
    std::mt19937 rng(202);
    std::uniform_int_distribution<int> dim(2, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = dim(rng);
        ProblemInstance p = seeded_instance(n, 1 + trial % 3, 300 + trial);
        p.weights.ridge_nu = (trial % 2) ? 0.001 : 0.0;
        p.weights.data_side_gamma = 1.0;
        p.weights.data_side_beta = 0.8;
        p.weights.temporal_weight = 0.3;
        p.u0 = randn_vector(rng, n, 0.4);

        SolverState st{randn_vector(rng, n), randn_vector(rng, n), randn_vector(rng, n), 0.1, 0,
                       {}};

        // subproblem A against the dense oracle.
        std::vector<NormalTerm> terms;
        for (const auto& t : p.data_terms) terms.push_back({t.A, t.b, p.data_weight(t)});
        for (const auto& r : p.reg_terms) terms.push_back({r.L, r.L * p.w0, p.reg_weight(r)});
        terms.push_back({RealMatrix::Identity(n, n), st.u, p.weights.relaxation_mu});
        const RealVector ref_a = dense_normal_solve(terms, {}, 2.0 * p.weights.ridge_nu);
        const RealVector w_a = subproblem_a_update(p, st);
        worst = std::max(worst, (w_a - ref_a).norm() / std::max(1.0, ref_a.norm()));

        // auxiliary w against the dense oracle (unit coupling).
        terms.back() = {RealMatrix::Identity(n, n), st.u, 1.0};
        const RealVector ref_w = dense_normal_solve(terms, {}, 0.0);
        const RealVector w_x = aux_w_update(p, st.u);
        worst = std::max(worst, (w_x - ref_w).norm() / std::max(1.0, ref_w.norm()));

        // u updates against the finite-difference gradient-zero oracle.
        const std::vector<RealVector> ws{st.w};
        const std::vector<RealVector> vs{st.v};
        const RealVector u_b = subproblem_b_update(p, ws, vs);
        const RealVector u_x = aux_u_update(p, ws, vs);
        auto obj_u = [&](const RealVector& x) { return u_objective(p, x, ws, vs); };
        worst = std::max(worst, fd_gradient(obj_u, u_b).cwiseAbs().maxCoeff());
        worst = std::max(worst, (u_b - u_x).cwiseAbs().maxCoeff());

        // v update against its own stationarity condition.
        const double zeta = 0.7;
        const RealVector v = aux_v_update(st.u, p.v0, zeta);
        auto obj_v = [&](const RealVector& x) {
            return 0.5 * (x - st.u).squaredNorm() + 0.5 * zeta * (x - p.v0).squaredNorm();
        };
        worst = std::max(worst, fd_gradient(obj_v, v).cwiseAbs().maxCoeff());
    }
    const double secs = timer.seconds();
    const bool pass = worst < 1e-8 && secs < 10.0;
    report(2, "Closed-form exactness (50 seeds)", pass, fmt("worst %.2e, %.2fs", worst, secs));
}

// ------------------------------------------------------------- criteria 3/4/5
void criterion_joint_minimizer_penalty_descent() {
    double worst_rel = 0.0;
    int worst_iters = 0;
    bool rho_ok = true;
    bool descent_ok = true;
    double rho_start = 0.0;
    for (std::uint32_t seed = 1; seed <= 20; ++seed) {
        ProblemInstance p = seeded_instance(4 + seed % 5, 1 + seed % 2, 1000 + seed);
        SolverConfig cfg;
        cfg.record_history = true;

        const SolveReport online = run_online_optimizer(p, cfg);
        const SolveReport aux = run_aux_optimizer(p, cfg);
        const JointSolution ref = kkt_joint_minimizer(p);

        worst_rel = std::max(
            worst_rel, (online.final_state.w - ref.w).norm() / std::max(1.0, ref.w.norm()));
        worst_rel = std::max(worst_rel,
                             (aux.final_state.w - ref.w).norm() / std::max(1.0, ref.w.norm()));
        worst_iters = std::max({worst_iters, online.iterations, aux.iterations});

        rho_start = p.weights.penalty_rho_init;
        double prev = p.weights.penalty_rho_init;
        for (const SolveReport* rep : {&online, &aux}) {
            prev = p.weights.penalty_rho_init;
            for (double rho : rep->rho_history) {
                if (rho < prev - 1e-15 || rho > 1.0 + 1e-15) rho_ok = false;
                prev = rho;
            }
        }

        // Consistent-weights configuration: gamma = beta = 1, xi = 0,
        // zeta = 0, refinement off. The recorded loss equals the joint
        // objective here and must never rise.
        for (std::size_t i = 1; i < aux.loss_history.size(); ++i) {
            if (aux.loss_history[i] > aux.loss_history[i - 1] + 1e-9) descent_ok = false;
        }
    }
    report(3, "Joint-minimizer agreement (20)", worst_rel <= 1e-4 && worst_iters <= 200,
           fmt("worst rel %.2e, max iters %d", worst_rel, worst_iters));
    report(4, "Penalty discipline", rho_ok && rho_start == 0.1,
           fmt("rho_init %.2f, monotone within [0.1, 1.0]: %s", rho_start,
               rho_ok ? "yes" : "no"));
    report(5, "Monotone descent (consistent)", descent_ok,
           descent_ok ? "non-increasing within 1e-9" : "loss increased beyond 1e-9");
}

// ---------------------------------------------------------------- criterion 6
void criterion_freq_spatial_equivalence() {
    WeightConfig w;
    w.temporal_weight = 0.0;
    TrackState st;
    st.cells_h = 8;
    st.cells_w = 8;
    st.channels = 1;
    st.cell_size = 1;
    st.weights = w;
    st.label = gaussian_label(8, 8, 0.1, 4.0, 4.0);
    st.mask.cells_h = 8;
    st.mask.cells_w = 8;
    st.mask.values.assign(64, 1);

    std::mt19937 rng(606);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ChannelStack feats;
    feats.cells_h = feats.cells_w = 8;
    feats.channels = 1;
    feats.cell_size = 1;
    feats.values.resize(64);
    for (auto& v : feats.values) v = uni(rng);

    SolverConfig solver;
    solver.max_iter = 400;
    solver.tol_rel = 1e-13;
    solver.tol_coupling = 1e-12;
    train_filter(st, feats, st.label, solver);

    ChannelStack probe = feats;
    for (auto& v : probe.values) v = uni(rng);
    const DetectResult det = detect(st, probe);
    const std::vector<double> h = filter_spatial_template(st, 0);
    double worst = 0.0;
    for (int dy = 0; dy < 8; ++dy) {
        for (int dx = 0; dx < 8; ++dx) {
            double acc = 0.0;
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    acc += h[y * 8 + x] * probe.at(0, (y + dy) % 8, (x + dx) % 8);
            worst = std::max(worst, std::abs(det.response.at(dy, dx) - acc));
        }
    }
    report(6, "Frequency/spatial equivalence", worst < 1e-6, fmt("worst abs %.2e", worst));
}

// ---------------------------------------------------------------- criterion 7
void criterion_classical_filter() {
    WeightConfig w;
    w.temporal_weight = 0.0;
    w.ridge_nu = 5e-4;
    TrackState st;
    st.cells_h = 8;
    st.cells_w = 8;
    st.channels = 1;
    st.cell_size = 1;
    st.weights = w;
    st.label = gaussian_label(8, 8, 0.1, 4.0, 4.0);
    st.mask.cells_h = 8;
    st.mask.cells_w = 8;
    st.mask.values.assign(64, 1);

    std::mt19937 rng(707);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ChannelStack feats;
    feats.cells_h = feats.cells_w = 8;
    feats.channels = 1;
    feats.cell_size = 1;
    feats.values.resize(64);
    for (auto& v : feats.values) v = uni(rng);

    SolverConfig solver;
    solver.max_iter = 400;
    solver.tol_rel = 1e-13;
    solver.tol_coupling = 1e-12;
    train_filter(st, feats, st.label, solver);

    const ComplexGrid xhat = fft2(feats.values, 8, 8);
    const ComplexGrid yhat = fft2(st.label.values, 8, 8);
    const double eps = 2.0 * w.ridge_nu;
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const std::complex<double> ref = std::conj(xhat[i]) * yhat[i] / (std::norm(xhat[i]) + eps);
        worst = std::max(worst, std::abs(st.filters[0][i] - ref) / (1.0 + std::abs(ref)));
    }
    report(7, "Classical per-value filter", worst < 1e-8, fmt("worst rel %.2e", worst));
}

// ---------------------------------------------------------------- criterion 8
void criterion_synthetic_tracking() {
    RunConfig cfg;

    Timer t_clean;
    const SynthSequence clean = synth_generate(SynthPreset::clean, 200, 11);
    const SequenceResult r_clean = track_sequence(clean.frames, clean.boxes[0], cfg);
    const MetricsReport m_clean = make_metrics_report(r_clean.boxes, clean.boxes, 1.0);
    const double s_clean = t_clean.seconds();

    Timer t_occ;
    const SynthSequence occ = synth_generate(SynthPreset::occlusion, 60, 11);
    const SequenceResult r_occ = track_sequence(occ.frames, occ.boxes[0], cfg);
    const double final_iou = iou(r_occ.boxes.back(), occ.boxes.back());
    const double s_occ = t_occ.seconds();

    Timer t_clutter;
    const SynthSequence clutter = synth_generate(SynthPreset::clutter, 120, 11);
    const SequenceResult r_clutter = track_sequence(clutter.frames, clutter.boxes[0], cfg);
    const double auc = success_auc(r_clutter.boxes, clutter.boxes);
    const double s_clutter = t_clutter.seconds();

    const bool pass = m_clean.mean_center_error <= 3.0 && m_clean.precision20 == 1.0 &&
                      final_iou >= 0.5 && auc >= 0.5 &&
                      s_clean < 60.0 && s_occ < 60.0 && s_clutter < 60.0;
    report(8, "Synthetic tracking (3 presets)", pass,
           fmt("clean mce %.2fpx p20 %.2f (%.1fs); occ IoU %.2f (%.1fs); clutter AUC %.2f (%.1fs)",
               m_clean.mean_center_error, m_clean.precision20, s_clean, final_iou, s_occ, auc,
               s_clutter));
}

// ---------------------------------------------------------------- criterion 9
void criterion_metric_oracles() {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> pos(10.0, 120.0);
    std::uniform_real_distribution<double> size(8.0, 40.0);
    std::uniform_real_distribution<double> eps(-15.0, 15.0);
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const int frames = 5 + trial % 20;
        std::vector<BoundingBox> gt, pred;
        for (int i = 0; i < frames; ++i) {
            gt.push_back({pos(rng), pos(rng), size(rng), size(rng)});
            pred.push_back({gt.back().x + eps(rng), gt.back().y + eps(rng), gt.back().w,
                            gt.back().h});
        }

        int hits = 0;
        for (int i = 0; i < frames; ++i) {
            const double dx = pred[i].cx() - gt[i].cx();
            const double dy = pred[i].cy() - gt[i].cy();
            if (std::hypot(dx, dy) <= 20.0) ++hits;
        }
        if (precision_metric(pred, gt, 20.0) != double(hits) / frames) ok = false;

        double acc = 0.0;
        for (int k = 0; k <= 20; ++k) {
            int s = 0;
            for (int i = 0; i < frames; ++i) {
                const double ix = std::max(
                    0.0, std::min(pred[i].x + pred[i].w, gt[i].x + gt[i].w) -
                             std::max(pred[i].x, gt[i].x));
                const double iy = std::max(
                    0.0, std::min(pred[i].y + pred[i].h, gt[i].y + gt[i].h) -
                             std::max(pred[i].y, gt[i].y));
                const double inter = ix * iy;
                const double o = inter / (pred[i].w * pred[i].h + gt[i].w * gt[i].h - inter);
                if (o >= 0.05 * k) ++s;
            }
            acc += double(s) / frames;
        }
        if (std::abs(success_auc(pred, gt) - acc / 21.0) > 1e-14) ok = false;

        if (precision_metric(gt, gt, 20.0) != 1.0 || success_auc(gt, gt) != 1.0) ok = false;
    }
    report(9, "Metric oracles (50 lists)", ok, ok ? "exact agreement" : "oracle disagreement");
}

// --------------------------------------------------------------- criterion 10
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RAMCT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_determinism() {
    const fs::path base = fs::temp_directory_path() / "ramct_acceptance";
    fs::remove_all(base);
    const fs::path seq_a = base / "seq_a";
    const fs::path seq_b = base / "seq_b";
    const fs::path out_a = base / "out_a";
    const fs::path out_b = base / "out_b";

    bool ok = run_cli("synth --preset clutter --frames 30 --seed 9 --out " + seq_a.string()) == 0;
    ok = ok &&
         run_cli("synth --preset clutter --frames 30 --seed 9 --out " + seq_b.string()) == 0;
    if (ok) {
        for (const auto& e : fs::directory_iterator(seq_a)) {
            if (slurp(e.path()) != slurp(seq_b / e.path().filename())) ok = false;
        }
    }

    ok = ok && run_cli("track --seq " + seq_a.string() + " --out " + out_a.string()) == 0;
    ok = ok && run_cli("track --seq " + seq_a.string() + " --out " + out_b.string()) == 0;
    ok = ok && slurp(out_a / "results.txt") == slurp(out_b / "results.txt") &&
         !slurp(out_a / "results.txt").empty();
    if (ok) {
        // metrics.json equality modulo the wall-clock fields.
        nlohmann::json ja = nlohmann::json::parse(slurp(out_a / "metrics.json"));
        nlohmann::json jb = nlohmann::json::parse(slurp(out_b / "metrics.json"));
        ja.erase("runtime_seconds");
        ja.erase("fps");
        jb.erase("runtime_seconds");
        jb.erase("fps");
        ok = ja == jb;
    }
    report(10, "Determinism of synth and track", ok,
           ok ? "byte-identical reruns" : "outputs differ across reruns");
}

// --------------------------------------------------------------- criterion 11
void criterion_convergence_metrics() {
    std::mt19937 rng(111);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + trial % 6;
        ProblemInstance p = seeded_instance(n, 1 + trial % 2, 500 + trial);
        p.weights.zeta = 0.4;
        p.weights.multiplier_eta = 0.2;
        SolverState st{randn_vector(rng, n), randn_vector(rng, n), randn_vector(rng, n), 0.1, 0,
                       {}};

        double expected = 0.0;
        for (const auto& t : p.data_terms) {
            expected += p.data_weight(t) * (t.A * st.w - t.b).squaredNorm();
        }
        for (const auto& r : p.reg_terms) {
            expected += p.reg_weight(r) * (r.L * (st.w - p.w0)).squaredNorm();
        }
        expected += (st.w - st.u).squaredNorm() + (st.u - st.v).squaredNorm();
        expected += p.weights.zeta * p.weights.psi_sum() * (st.v - p.v0).squaredNorm();
        worst = std::max(worst, std::abs(evaluate_loss(p, st) - expected));

        const RealVector v_next = randn_vector(rng, n);
        const RealVector dv = delta_v_metric(v_next, st.v, p.v0, p.weights);
        const RealVector dv_ref =
            v_next - st.v + p.weights.multiplier_eta * p.weights.psi_sum() * (p.v0 - st.v);
        worst = std::max(worst, (dv - dv_ref).cwiseAbs().maxCoeff());

        std::vector<RealVector> batch;
        std::vector<double> gammas;
        double mse_ref = 0.0;
        for (int i = 0; i < 4; ++i) {
            batch.push_back(randn_vector(rng, n));
            gammas.push_back(0.25 * (i + 1));
            mse_ref += gammas.back() * (batch.back() - st.w).squaredNorm();
        }
        mse_ref /= batch.size();
        worst = std::max(worst, std::abs(weighted_mse(batch, st.w, gammas) - mse_ref));
    }
    report(11, "Loss/stability/MSE oracles", worst < 1e-12, fmt("worst abs %.2e", worst));
}

}  // namespace

int main() {
    std::printf("RAMCT acceptance suite\n");
    criterion_gsvd_validity();
    criterion_closed_form_exactness();
    criterion_joint_minimizer_penalty_descent();
    criterion_freq_spatial_equivalence();
    criterion_classical_filter();
    criterion_synthetic_tracking();
    criterion_metric_oracles();
    criterion_determinism();
    criterion_convergence_metrics();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
