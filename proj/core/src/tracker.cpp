#include "ramct/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace ramct {

namespace {

using Cplx = std::complex<double>;

struct ScalarCfWeights {
    double data = 1.0;      // effective fidelity weight of the channel
    double temporal = 0.0;  // pull toward the prior coefficient
    double mu = 4.0;
    double nu = 0.001;
    double gamma = 1.0;
    double beta = 1.0;
    double xi_psi = 0.0;   // prior pull inside the u-step
    double eta_psi = 0.0;  // prior pull inside the v-step
    double rho_init = 0.1;
    double rho_max = 1.0;
    double delta = 0.05;
};

// Per-frequency instance of the online A/B/C sweep on a complex scalar. The
// single coupling weight is 1, so the multiplier correction is undamped.
// The iterates start from the closed-form ridge solution when no prior
// exists (that point is stationary for the whole sweep) and from the prior
// otherwise.
Cplx solve_scalar_cf(Cplx xhat, Cplx yhat, Cplx prior, bool has_prior,
                     const ScalarCfWeights& w, int max_iter, double tol_rel,
                     double tol_coupling) {
    const double q = w.data * std::norm(xhat) + w.temporal + 2.0 * w.nu;
    if (q + w.mu <= 0.0) return prior;  // nothing constrains this bin
    const Cplx drive = w.data * std::conj(xhat) * yhat + w.temporal * prior;
    const double u_den = w.gamma + w.beta + w.xi_psi;

    const Cplx start = has_prior || q <= 0.0 ? prior : drive / q;
    Cplx wv = start, u = start, v = start;
    double rho = w.rho_init;
    for (int it = 0; it < max_iter; ++it) {
        const Cplx w_prev = wv;
        wv = (drive + w.mu * u) / (q + w.mu);
        u = (w.gamma * wv + w.beta * v + w.xi_psi * prior) / u_den;
        v += rho * (wv - u) + w.eta_psi * (prior - v);
        rho = std::min(w.rho_max, rho + w.delta * std::abs(wv - u));
        if (std::abs(wv - w_prev) <= tol_rel * std::max(1.0, std::abs(w_prev)) &&
            std::abs(wv - u) <= tol_coupling) {
            break;
        }
    }
    return wv;
}

std::vector<double> channel_values(const ChannelStack& feats, int c) {
    const std::size_t g = feats.grid_size();
    return std::vector<double>(feats.values.begin() + c * g, feats.values.begin() + (c + 1) * g);
}

int wrap_offset(int idx, int size) { return idx > size / 2 ? idx - size : idx; }

// Quadratic sub-cell refinement from the wrapped neighbors of the peak.
double subcell_offset(double prev, double peak, double next) {
    const double denom = prev - 2.0 * peak + next;
    if (std::abs(denom) < 1e-12) return 0.0;
    return std::clamp(0.5 * (prev - next) / denom, -0.5, 0.5);
}

// Cosine window over the cell grid, applied to every channel. Suppresses the
// circular wraparound of the unpadded correlation.
void apply_hann_window(ChannelStack& feats) {
    const int h = feats.cells_h;
    const int w = feats.cells_w;
    std::vector<double> wy(h), wx(w);
    for (int y = 0; y < h; ++y) wy[y] = 0.5 - 0.5 * std::cos(2.0 * M_PI * y / h);
    for (int x = 0; x < w; ++x) wx[x] = 0.5 - 0.5 * std::cos(2.0 * M_PI * x / w);
    for (int c = 0; c < feats.channels; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) feats.at(c, y, x) *= wy[y] * wx[x];
        }
    }
}

}  // namespace

TrackState init_track_state(const BoundingBox& init, const RunConfig& cfg) {
    if (init.w <= 0 || init.h <= 0) {
        throw DimensionMismatch("init_track_state: box extent must be positive");
    }
    TrackState st;
    st.params = cfg.tracker;
    st.solver = cfg.solver;
    st.weights = cfg.weights;
    st.learning_rate = cfg.tracker.learning_rate;
    st.cell_size = cfg.tracker.cell_size;
    st.bins = cfg.tracker.bins;
    st.box = init;
    st.base_w = init.w;
    st.base_h = init.h;
    st.scale = 1.0;

    const int cell = st.cell_size;
    st.cells_w = std::max(3, static_cast<int>(std::lround(cfg.tracker.padding * init.w / cell)));
    st.cells_h = std::max(3, static_cast<int>(std::lround(cfg.tracker.padding * init.h / cell)));
    st.tmpl_w = st.cells_w * cell;
    st.tmpl_h = st.cells_h * cell;
    st.channels = 1 + st.bins;

    st.label = gaussian_label(st.cells_h, st.cells_w, cfg.tracker.sigma_factor, init.h / cell,
                              init.w / cell);
    st.label_fft = fft2(st.label.values, st.cells_h, st.cells_w);

    // Target box expressed in template coordinates (window is recentered on
    // the estimate every frame, so the box sits at the template center).
    const BoundingBox tmpl_region{0.0, 0.0, double(st.tmpl_w), double(st.tmpl_h)};
    const BoundingBox tmpl_box{0.5 * (st.tmpl_w - init.w), 0.5 * (st.tmpl_h - init.h), init.w,
                               init.h};
    st.mask = build_adaptive_mask(tmpl_box, tmpl_region, cell, cfg.tracker.inflation);
    return st;
}

void train_filter(TrackState& st, const ChannelStack& feats, const ResponseMap& label,
                  const SolverConfig& cfg) {
    if (feats.cells_h != st.cells_h || feats.cells_w != st.cells_w ||
        feats.channels != st.channels) {
        throw DimensionMismatch("train_filter: feature stack does not match the state geometry");
    }
    if (label.cells_h != st.cells_h || label.cells_w != st.cells_w) {
        throw DimensionMismatch("train_filter: label does not match the state geometry");
    }
    if (st.mask.cells_h != st.cells_h || st.mask.cells_w != st.cells_w) {
        throw DimensionMismatch("train_filter: mask does not match the state geometry");
    }

    const std::size_t g = feats.grid_size();
    const ComplexGrid yhat = fft2(label.values, label.cells_h, label.cells_w);
    const WeightConfig& wc = st.weights;
    const double psi = wc.psi_sum();

    ScalarCfWeights sw;
    sw.mu = wc.relaxation_mu;
    sw.nu = wc.ridge_nu;
    sw.gamma = wc.data_side_gamma;
    sw.beta = wc.data_side_beta;
    sw.rho_init = wc.penalty_rho_init;
    sw.rho_max = wc.penalty_rho_max;
    sw.delta = wc.penalty_delta;
    // Prior pulls engage only once a prior exists (from the second frame on).
    sw.temporal = st.has_prior ? wc.temporal_weight * psi : 0.0;
    sw.xi_psi = st.has_prior ? wc.temporal_weight * psi : 0.0;
    sw.eta_psi = st.has_prior ? wc.multiplier_eta * psi : 0.0;

    std::vector<ComplexGrid> next(st.channels, ComplexGrid(g, Cplx(0.0, 0.0)));
    for (int c = 0; c < st.channels; ++c) {
        std::vector<double> vals = channel_values(feats, c);
        for (std::size_t i = 0; i < g; ++i) {
            vals[i] *= st.mask.values[i];  // masked-correlation training
        }
        const ComplexGrid xhat = fft2(vals, feats.cells_h, feats.cells_w);

        ScalarCfWeights cw = sw;
        cw.data = wc.channel_weight(c) * wc.component_weight(c, 0);
        for (std::size_t i = 0; i < g; ++i) {
            const Cplx prior = st.has_prior ? st.prior_filters[c][i] : Cplx(0.0, 0.0);
            next[c][i] = solve_scalar_cf(xhat[i], yhat[i], prior, st.has_prior, cw,
                                         cfg.max_iter, cfg.tol_rel, cfg.tol_coupling);
        }
    }

    if (st.params.mask_mode == MaskMode::filter) {
        // Constrain the spatial support of the filter itself.
        for (int c = 0; c < st.channels; ++c) {
            ComplexGrid conj_f(g);
            for (std::size_t i = 0; i < g; ++i) conj_f[i] = std::conj(next[c][i]);
            std::vector<double> spatial = ifft2_real(conj_f, st.cells_h, st.cells_w);
            for (std::size_t i = 0; i < g; ++i) spatial[i] *= st.mask.values[i];
            const ComplexGrid back = fft2(spatial, st.cells_h, st.cells_w);
            for (std::size_t i = 0; i < g; ++i) next[c][i] = std::conj(back[i]);
        }
    }

    // The stored model is the learning-rate interpolation of the fresh
    // per-bin solutions; it is also the temporal prior of the next training
    // pass, so the template anchor moves slowly.
    if (!st.has_prior) {
        st.prior_filters = std::move(next);
        st.has_prior = true;
    } else {
        const double lr = st.learning_rate;
        for (int c = 0; c < st.channels; ++c) {
            for (std::size_t i = 0; i < g; ++i) {
                st.prior_filters[c][i] = (1.0 - lr) * st.prior_filters[c][i] + lr * next[c][i];
            }
        }
    }
    st.filters = st.prior_filters;
}

DetectResult detect(const TrackState& st, const ChannelStack& feats) {
    if (st.filters.empty() || feats.cells_h != st.cells_h || feats.cells_w != st.cells_w ||
        feats.channels != static_cast<int>(st.filters.size())) {
        throw DimensionMismatch("detect: feature stack does not match the trained filters");
    }
    const std::size_t g = feats.grid_size();
    ComplexGrid acc(g, Cplx(0.0, 0.0));
    for (int c = 0; c < feats.channels; ++c) {
        const ComplexGrid zhat = fft2(channel_values(feats, c), feats.cells_h, feats.cells_w);
        for (std::size_t i = 0; i < g; ++i) acc[i] += st.filters[c][i] * zhat[i];
    }

    DetectResult out;
    out.response.cells_h = feats.cells_h;
    out.response.cells_w = feats.cells_w;
    out.response.values = ifft2_real(acc, feats.cells_h, feats.cells_w);

    double best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < feats.cells_h; ++r) {
        for (int c = 0; c < feats.cells_w; ++c) {
            const double v = out.response.at(r, c);
            if (v > best) {
                best = v;
                out.peak_row = r;
                out.peak_col = c;
            }
        }
    }
    out.score = best;
    return out;
}

std::vector<double> filter_spatial_template(const TrackState& st, int channel) {
    const std::size_t g = static_cast<std::size_t>(st.cells_h) * st.cells_w;
    ComplexGrid conj_f(g);
    for (std::size_t i = 0; i < g; ++i) conj_f[i] = std::conj(st.filters[channel][i]);
    return ifft2_real(conj_f, st.cells_h, st.cells_w);
}

SequenceResult track_sequence(const std::vector<Frame>& frames, const BoundingBox& init,
                              const RunConfig& cfg) {
    if (frames.empty()) throw EmptySequence("track_sequence: no frames");
    for (const auto& f : frames) {
        if (f.width < 16 || f.height < 16) {
            throw DimensionMismatch("track_sequence: frames must be at least 16x16");
        }
    }
    const Frame& first = frames.front();
    if (init.x < 0 || init.y < 0 || init.x + init.w > first.width ||
        init.y + init.h > first.height) {
        throw DimensionMismatch("track_sequence: init box outside frame 0");
    }

    TrackState st = init_track_state(init, cfg);
    const BoundingBox tmpl_region{0.0, 0.0, double(st.tmpl_w), double(st.tmpl_h)};

    double cx = init.cx();
    double cy = init.cy();

    auto window_features = [&](const Frame& frame, double factor) {
        const double sw = st.tmpl_w * st.scale * factor;
        const double sh = st.tmpl_h * st.scale * factor;
        const Frame patch = extract_patch(frame, cx, cy, sw, sh, st.tmpl_w, st.tmpl_h);
        ChannelStack feats = extract_channels(patch, tmpl_region, st.cell_size, st.bins);
        apply_hann_window(feats);
        return feats;
    };

    SequenceResult result;
    result.boxes.reserve(frames.size());
    result.scores.reserve(frames.size());

    ChannelStack feats = window_features(first, 1.0);
    train_filter(st, feats, st.label, st.solver);
    result.boxes.push_back(st.box);
    result.scores.push_back(detect(st, feats).score);

    std::vector<double> factors{1.0};
    if (cfg.tracker.use_scale) {
        factors = {2.0 - cfg.tracker.scale_step, 1.0, cfg.tracker.scale_step};
    }

    for (std::size_t t = 1; t < frames.size(); ++t) {
        const Frame& frame = frames[t];
        DetectResult best;
        double best_weighted = -std::numeric_limits<double>::infinity();
        double best_factor = 1.0;
        for (double factor : factors) {
            const ChannelStack f = window_features(frame, factor);
            DetectResult det = detect(st, f);
            const double weighted =
                det.score * (factor == 1.0 ? 1.0 : cfg.tracker.scale_penalty);
            if (weighted > best_weighted) {
                best_weighted = weighted;
                best = det;
                best_factor = factor;
            }
        }

        const ResponseMap& resp = best.response;
        const int pr = best.peak_row;
        const int pc = best.peak_col;
        const int up = (pr + st.cells_h - 1) % st.cells_h;
        const int down = (pr + 1) % st.cells_h;
        const int left = (pc + st.cells_w - 1) % st.cells_w;
        const int right = (pc + 1) % st.cells_w;
        const double dr = wrap_offset(pr, st.cells_h) +
                          subcell_offset(resp.at(up, pc), resp.at(pr, pc), resp.at(down, pc));
        const double dc = wrap_offset(pc, st.cells_w) +
                          subcell_offset(resp.at(pr, left), resp.at(pr, pc), resp.at(pr, right));
        const double step = st.cell_size * st.scale * best_factor;
        cx = std::clamp(cx + dc * step, 0.0, double(frame.width - 1));
        cy = std::clamp(cy + dr * step, 0.0, double(frame.height - 1));
        st.scale = std::clamp(st.scale * best_factor, 0.1, 10.0);

        st.box = BoundingBox{cx - 0.5 * st.base_w * st.scale, cy - 0.5 * st.base_h * st.scale,
                             st.base_w * st.scale, st.base_h * st.scale};
        result.boxes.push_back(st.box);
        result.scores.push_back(best.score);

        // Rebuild the mask from the latest estimate, then retrain at the new
        // location; the prior interpolation inside train_filter applies the
        // learning rate.
        const BoundingBox tmpl_box{0.5 * (st.tmpl_w - st.base_w), 0.5 * (st.tmpl_h - st.base_h),
                                   st.base_w, st.base_h};
        st.mask = build_adaptive_mask(tmpl_box, tmpl_region, st.cell_size,
                                      cfg.tracker.inflation);
        const ChannelStack train_feats = window_features(frame, 1.0);
        train_filter(st, train_feats, st.label, st.solver);
    }
    return result;
}

}  // namespace ramct
