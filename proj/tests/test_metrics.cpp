#include <doctest.h>

#include <random>

#include "ramct/metrics.hpp"
#include "test_helpers.hpp"

using namespace ramct;

namespace {

std::vector<BoundingBox> random_boxes(int count, std::uint32_t seed, double jitter) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pos(10.0, 100.0);
    std::uniform_real_distribution<double> size(8.0, 40.0);
    std::uniform_real_distribution<double> eps(-jitter, jitter);
    std::vector<BoundingBox> out;
    for (int i = 0; i < count; ++i) {
        out.push_back({pos(rng) + eps(rng), pos(rng) + eps(rng), size(rng), size(rng)});
    }
    return out;
}

}  // namespace

TEST_CASE("precision_metric trivial and boundary cases") {
    const std::vector<BoundingBox> gt = random_boxes(12, 1, 0.0);
    CHECK(precision_metric(gt, gt, 20.0) == 1.0);

    // All centers exactly at the threshold distance: inclusive comparison.
    // Integer coordinates keep the distances exactly representable.
    std::vector<BoundingBox> exact_gt, pred;
    for (int i = 0; i < 10; ++i) {
        exact_gt.push_back({10.0 + 2 * i, 30.0, 16.0, 16.0});
        pred.push_back({10.0 + 2 * i + 20.0, 30.0, 16.0, 16.0});
    }
    CHECK(precision_metric(pred, exact_gt, 20.0) == 1.0);
    CHECK(precision_metric(pred, exact_gt, 19.999) == 0.0);
}

TEST_CASE("precision_metric matches a counting oracle") {
    const std::vector<BoundingBox> gt = random_boxes(50, 2, 0.0);
    std::vector<BoundingBox> pred = random_boxes(50, 3, 0.0);
    for (double thr : {5.0, 20.0, 60.0}) {
        int hits = 0;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            const double dx = pred[i].cx() - gt[i].cx();
            const double dy = pred[i].cy() - gt[i].cy();
            if (std::sqrt(dx * dx + dy * dy) <= thr) ++hits;
        }
        CHECK(precision_metric(pred, gt, thr) ==
              doctest::Approx(double(hits) / gt.size()).epsilon(1e-15));
    }
}

TEST_CASE("success_auc conventions") {
    const std::vector<BoundingBox> gt = random_boxes(9, 4, 0.0);
    CHECK(success_auc(gt, gt) == 1.0);

    // Disjoint boxes: only the zero threshold succeeds.
    std::vector<BoundingBox> far = gt;
    for (auto& b : far) b.x += 1000.0;
    CHECK(success_auc(far, gt) == doctest::Approx(1.0 / 21.0).epsilon(1e-15));
}

TEST_CASE("success_auc matches a direct IoU oracle") {
    std::vector<BoundingBox> gt = random_boxes(50, 5, 0.0);
    std::vector<BoundingBox> pred = gt;
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> eps(-8.0, 8.0);
    for (auto& b : pred) {
        b.x += eps(rng);
        b.y += eps(rng);
    }

    auto naive_iou = [](const BoundingBox& a, const BoundingBox& b) {
        const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
        const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
        const double inter = ix * iy;
        return inter / (a.w * a.h + b.w * b.h - inter);
    };
    double acc = 0.0;
    for (int k = 0; k <= 20; ++k) {
        int hits = 0;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            if (naive_iou(pred[i], gt[i]) >= 0.05 * k) ++hits;
        }
        acc += double(hits) / gt.size();
    }
    CHECK(success_auc(pred, gt) == doctest::Approx(acc / 21.0).epsilon(1e-14));

    for (std::size_t i = 0; i < gt.size(); ++i) {
        CHECK(iou(pred[i], gt[i]) == doctest::Approx(naive_iou(pred[i], gt[i])).epsilon(1e-14));
    }
}

TEST_CASE("metrics reject mismatched lists") {
    const std::vector<BoundingBox> gt = random_boxes(5, 7, 0.0);
    const std::vector<BoundingBox> pred = random_boxes(4, 8, 0.0);
    CHECK_THROWS_AS(precision_metric(pred, gt, 20.0), LengthMismatch);
    CHECK_THROWS_AS(success_auc(pred, gt), LengthMismatch);
    CHECK_THROWS_AS(precision_metric({}, {}, 20.0), LengthMismatch);
}

TEST_CASE("metrics report aggregates") {
    const std::vector<BoundingBox> gt = random_boxes(20, 9, 0.0);
    std::vector<BoundingBox> pred = gt;
    pred[3].x += 100.0;
    const MetricsReport rep = make_metrics_report(pred, gt, 2.0);
    CHECK(rep.frames == 20);
    CHECK(rep.precision20 == doctest::Approx(19.0 / 20.0));
    CHECK(rep.fps == doctest::Approx(10.0));
    CHECK(rep.center_errors.size() == 20);
    CHECK(rep.mean_iou < 1.0);
    CHECK(rep.mean_iou > 0.9);
}
