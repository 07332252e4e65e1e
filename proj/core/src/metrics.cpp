#include "ramct/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ramct {

namespace {

void check_lengths(const std::vector<BoundingBox>& pred, const std::vector<BoundingBox>& gt) {
    if (pred.empty() || pred.size() != gt.size()) {
        throw LengthMismatch("metrics: box lists must be nonempty and equally long");
    }
}

}  // namespace

double iou(const BoundingBox& a, const BoundingBox& b) {
    // Overlaps are measured relative to a's corner so that identical boxes
    // give exactly 1.0.
    const double ux = b.x - a.x;
    const double uy = b.y - a.y;
    const double ix = std::min(a.w, ux + b.w) - std::max(0.0, ux);
    const double iy = std::min(a.h, uy + b.h) - std::max(0.0, uy);
    const double inter = std::max(0.0, ix) * std::max(0.0, iy);
    const double uni = a.w * a.h + b.w * b.h - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

double center_distance(const BoundingBox& a, const BoundingBox& b) {
    return std::hypot(a.cx() - b.cx(), a.cy() - b.cy());
}

double precision_metric(const std::vector<BoundingBox>& pred,
                        const std::vector<BoundingBox>& gt, double threshold) {
    check_lengths(pred, gt);
    int hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (center_distance(pred[i], gt[i]) <= threshold) ++hits;
    }
    return static_cast<double>(hits) / pred.size();
}

std::vector<double> success_curve(const std::vector<BoundingBox>& pred,
                                  const std::vector<BoundingBox>& gt) {
    check_lengths(pred, gt);
    std::vector<double> overlaps(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) overlaps[i] = iou(pred[i], gt[i]);

    std::vector<double> curve(21, 0.0);
    for (int k = 0; k <= 20; ++k) {
        const double thr = 0.05 * k;
        int hits = 0;
        for (double o : overlaps) {
            if (o >= thr) ++hits;
        }
        curve[k] = static_cast<double>(hits) / pred.size();
    }
    return curve;
}

double success_auc(const std::vector<BoundingBox>& pred, const std::vector<BoundingBox>& gt) {
    const std::vector<double> curve = success_curve(pred, gt);
    double acc = 0.0;
    for (double v : curve) acc += v;
    return acc / curve.size();
}

std::vector<double> precision_curve(const std::vector<BoundingBox>& pred,
                                    const std::vector<BoundingBox>& gt) {
    check_lengths(pred, gt);
    std::vector<double> curve(51, 0.0);
    for (int t = 0; t <= 50; ++t) curve[t] = precision_metric(pred, gt, t);
    return curve;
}

MetricsReport make_metrics_report(const std::vector<BoundingBox>& pred,
                                  const std::vector<BoundingBox>& gt, double runtime_seconds) {
    check_lengths(pred, gt);
    MetricsReport rep;
    rep.frames = static_cast<int>(pred.size());
    rep.precision20 = precision_metric(pred, gt, 20.0);
    rep.success_auc = success_auc(pred, gt);
    rep.center_errors.resize(pred.size());
    rep.ious.resize(pred.size());
    double ce = 0.0, ov = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        rep.center_errors[i] = center_distance(pred[i], gt[i]);
        rep.ious[i] = iou(pred[i], gt[i]);
        ce += rep.center_errors[i];
        ov += rep.ious[i];
    }
    rep.mean_center_error = ce / pred.size();
    rep.mean_iou = ov / pred.size();
    rep.runtime_seconds = runtime_seconds;
    rep.fps = runtime_seconds > 0.0 ? pred.size() / runtime_seconds : 0.0;
    return rep;
}

}  // namespace ramct
