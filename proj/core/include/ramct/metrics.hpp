#pragma once

#include <vector>

#include "ramct/features.hpp"

namespace ramct {

double iou(const BoundingBox& a, const BoundingBox& b);
double center_distance(const BoundingBox& a, const BoundingBox& b);

/// Fraction of frames whose center distance is <= threshold (inclusive).
double precision_metric(const std::vector<BoundingBox>& pred,
                        const std::vector<BoundingBox>& gt, double threshold);

/// Success rate at the 21 overlap thresholds 0.00, 0.05, ..., 1.00, with the
/// inclusive comparison IoU >= threshold.
std::vector<double> success_curve(const std::vector<BoundingBox>& pred,
                                  const std::vector<BoundingBox>& gt);

/// Mean of the 21-point success curve.
double success_auc(const std::vector<BoundingBox>& pred, const std::vector<BoundingBox>& gt);

/// Precision at integer pixel thresholds 0..50, for plot emission.
std::vector<double> precision_curve(const std::vector<BoundingBox>& pred,
                                    const std::vector<BoundingBox>& gt);

struct MetricsReport {
    int frames = 0;
    double precision20 = 0.0;
    double success_auc = 0.0;
    double mean_center_error = 0.0;
    double mean_iou = 0.0;
    double runtime_seconds = 0.0;
    double fps = 0.0;
    std::vector<double> center_errors;
    std::vector<double> ious;
};

MetricsReport make_metrics_report(const std::vector<BoundingBox>& pred,
                                  const std::vector<BoundingBox>& gt, double runtime_seconds);

}  // namespace ramct
