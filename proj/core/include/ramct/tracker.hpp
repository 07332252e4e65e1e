#pragma once

#include "ramct/config.hpp"
#include "ramct/features.hpp"
#include "ramct/fft.hpp"

namespace ramct {

/// Per-sequence tracking state. Filters are stored as frequency-domain
/// coefficient grids in correlation form: the detection response is the
/// inverse transform of filter .* feature spectrum, which applies the
/// conjugate of the underlying spatial template.
struct TrackState {
    BoundingBox box;
    std::vector<ComplexGrid> filters;        // per channel
    std::vector<ComplexGrid> prior_filters;  // temporal prior (EMA of filters)
    BinaryMask mask;
    double learning_rate = 0.012;
    WeightConfig weights;
    double scale = 1.0;

    // Geometry, fixed at init. The search window is scale-normalized: every
    // frame is resampled to tmpl_w x tmpl_h pixels before feature extraction.
    int cell_size = 4;
    int bins = 9;
    int cells_h = 0;
    int cells_w = 0;
    int channels = 0;
    int tmpl_w = 0;
    int tmpl_h = 0;
    double base_w = 0.0;  // target extent at scale 1
    double base_h = 0.0;
    ResponseMap label;
    ComplexGrid label_fft;
    TrackerParams params;
    SolverConfig solver;
    bool has_prior = false;
};

struct DetectResult {
    ResponseMap response;
    int peak_row = 0;
    int peak_col = 0;
    double score = 0.0;
};

struct SequenceResult {
    std::vector<BoundingBox> boxes;
    std::vector<double> scores;
};

/// Geometry, label and mask for a fresh target; no filters yet.
TrackState init_track_state(const BoundingBox& init, const RunConfig& cfg);

/// Train the per-channel filters from one feature stack. Features are
/// multiplied by the binary mask, transformed per channel, and every
/// frequency bin is solved as an independent scalar problem by the online
/// A/B/C sweep (fidelity weighted per channel, ridge nu, temporal pull
/// toward prior_filters). The stored model is the learning-rate
/// interpolation of the fresh solution into the prior; the first training
/// pass adopts the solution outright.
void train_filter(TrackState& st, const ChannelStack& feats, const ResponseMap& label,
                  const SolverConfig& cfg);

/// Correlation response over all channels; peak ties break on the smallest
/// row, then the smallest column.
DetectResult detect(const TrackState& st, const ChannelStack& feats);

/// One-pass evaluation: train on the first frame at the given box, then
/// detect / re-train through the sequence. Deterministic for fixed inputs.
SequenceResult track_sequence(const std::vector<Frame>& frames, const BoundingBox& init,
                              const RunConfig& cfg);

/// Spatial-domain template of one channel's filter (real part after undoing
/// the correlation-form conjugation). Used by the support/equivalence checks.
std::vector<double> filter_spatial_template(const TrackState& st, int channel);

}  // namespace ramct
