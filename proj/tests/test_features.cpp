#include <doctest.h>

#include <cmath>
#include <random>

#include "ramct/features.hpp"
#include "test_helpers.hpp"

using namespace ramct;
using namespace ramct::testing;

namespace {

Frame random_frame(int w, int h, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Frame f;
    f.width = w;
    f.height = h;
    f.pixels.resize(static_cast<std::size_t>(w) * h);
    for (auto& p : f.pixels) p = uni(rng);
    return f;
}

// Independent re-implementation of the per-pixel binning for the oracle
// comparison: central differences, unsigned orientation, hard assignment,
// per-cell L2 normalization with epsilon 1e-5, clip at 1.5.
ChannelStack naive_channels(const Frame& f, int x0, int y0, int cells_w, int cells_h,
                            int cell, int bins) {
    ChannelStack out;
    out.cells_h = cells_h;
    out.cells_w = cells_w;
    out.cell_size = cell;
    out.channels = 1 + bins;
    out.values.assign(static_cast<std::size_t>(out.channels) * cells_w * cells_h, 0.0);
    for (int cy = 0; cy < cells_h; ++cy) {
        for (int cx = 0; cx < cells_w; ++cx) {
            double acc = 0.0;
            std::vector<double> hist(bins, 0.0);
            for (int py = 0; py < cell; ++py) {
                for (int px = 0; px < cell; ++px) {
                    const int ix = x0 + cx * cell + px;
                    const int iy = y0 + cy * cell + py;
                    acc += f.at(ix, iy);
                    const double gx = f.at_clamped(ix + 1, iy) - f.at_clamped(ix - 1, iy);
                    const double gy = f.at_clamped(ix, iy + 1) - f.at_clamped(ix, iy - 1);
                    const double mag = std::sqrt(gx * gx + gy * gy);
                    if (mag == 0.0) continue;
                    double theta = std::atan2(gy, gx);
                    if (theta < 0.0) theta += M_PI;
                    if (theta >= M_PI) theta -= M_PI;
                    hist[std::min(static_cast<int>(theta / M_PI * bins), bins - 1)] += mag;
                }
            }
            out.at(0, cy, cx) = acc / (cell * cell);
            double energy = 0.0;
            for (double h : hist) energy += h * h;
            for (int b = 0; b < bins; ++b) {
                out.at(1 + b, cy, cx) =
                    std::min(hist[b] / std::sqrt(energy + 1e-5 * 1e-5), 1.5);
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("extract_channels on a constant patch") {
    Frame f;
    f.width = 32;
    f.height = 32;
    f.pixels.assign(32 * 32, 0.37);
    const ChannelStack feats = extract_channels(f, {0, 0, 32, 32}, 4, 9);
    REQUIRE(feats.cells_w == 8);
    REQUIRE(feats.cells_h == 8);
    REQUIRE(feats.channels == 10);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            CHECK(feats.at(0, y, x) == doctest::Approx(0.37).epsilon(1e-14));
            for (int c = 1; c < 10; ++c) CHECK(feats.at(c, y, x) == 0.0);
        }
    }
}

TEST_CASE("extract_channels concentrates a vertical edge in the first bin") {
    Frame f;
    f.width = 32;
    f.height = 32;
    f.pixels.assign(32 * 32, 0.0);
    for (int y = 0; y < 32; ++y)
        for (int x = 16; x < 32; ++x) f.at(x, y) = 1.0;

    const ChannelStack feats = extract_channels(f, {0, 0, 32, 32}, 4, 9);
    double bin0 = 0.0, others = 0.0;
    for (int y = 0; y < feats.cells_h; ++y) {
        for (int x = 0; x < feats.cells_w; ++x) {
            bin0 += feats.at(1, y, x);
            for (int c = 2; c < feats.channels; ++c) others += feats.at(c, y, x);
        }
    }
    CHECK(bin0 > 0.0);
    CHECK(others == 0.0);
}

TEST_CASE("extract_channels matches the naive binning oracle") {
    const Frame f = random_frame(48, 40, 97);
    const ChannelStack feats = extract_channels(f, {4, 8, 32, 24}, 4, 9);
    const ChannelStack ref = naive_channels(f, 4, 8, feats.cells_w, feats.cells_h, 4, 9);
    REQUIRE(feats.values.size() == ref.values.size());
    for (std::size_t i = 0; i < feats.values.size(); ++i) {
        CHECK(feats.values[i] == doctest::Approx(ref.values[i]).epsilon(1e-10));
    }
    for (double v : feats.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.5);
    }
}

TEST_CASE("extract_channels rejects sub-cell regions") {
    const Frame f = random_frame(32, 32, 5);
    CHECK_THROWS_AS(extract_channels(f, {0, 0, 3, 3}, 4, 9), RegionTooSmall);
    CHECK_THROWS_AS(extract_channels(f, {31, 31, 20, 20}, 4, 9), RegionTooSmall);
}

TEST_CASE("gaussian_label peak, symmetry and formula") {
    const ResponseMap label = gaussian_label(12, 15, 0.1, 6.0, 6.0);
    CHECK(label.at(0, 0) == 1.0);
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 15; ++j) {
            CHECK(label.at(i, j) == label.at((12 - i) % 12, (15 - j) % 15));
        }
    }
    const double sigma = 0.1 * 6.0;
    CHECK(label.at(1, 2) ==
          doctest::Approx(std::exp(-5.0 / (2.0 * sigma * sigma))).epsilon(1e-12));
    CHECK(label.at(0, 1) ==
          doctest::Approx(std::exp(-1.0 / (2.0 * sigma * sigma))).epsilon(1e-12));
}

TEST_CASE("build_adaptive_mask coverage") {
    const BoundingBox search{0, 0, 32, 32};

    const BinaryMask full = build_adaptive_mask({0, 0, 32, 32}, search, 4, 1.0);
    for (auto v : full.values) CHECK(v == 1);

    // Box exactly spanning cells 2..5 in both axes.
    const BinaryMask block = build_adaptive_mask({8, 8, 16, 16}, search, 4, 1.0);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            const bool inside = r >= 2 && r <= 5 && c >= 2 && c <= 5;
            CHECK(block.at(r, c) == (inside ? 1 : 0));
        }
    }
}

TEST_CASE("build_adaptive_mask translates with the box") {
    const BoundingBox search{0, 0, 48, 48};
    const double inflation = 1.2;
    for (int shift_cells : {1, 2, 3}) {
        const BoundingBox base{12, 16, 12, 10};
        const BoundingBox moved{base.x + 4.0 * shift_cells, base.y, base.w, base.h};
        const BinaryMask a = build_adaptive_mask(base, search, 4, inflation);
        const BinaryMask b = build_adaptive_mask(moved, search, 4, inflation);
        for (int r = 0; r < a.cells_h; ++r) {
            for (int c = 0; c + shift_cells < a.cells_w; ++c) {
                CHECK(a.at(r, c) == b.at(r, c + shift_cells));
            }
        }
        // Brute-force point-in-rectangle oracle.
        for (int r = 0; r < b.cells_h; ++r) {
            for (int c = 0; c < b.cells_w; ++c) {
                const double px = (c + 0.5) * 4.0;
                const double py = (r + 0.5) * 4.0;
                const bool in = px >= moved.cx() - 0.5 * inflation * moved.w &&
                                px < moved.cx() + 0.5 * inflation * moved.w &&
                                py >= moved.cy() - 0.5 * inflation * moved.h &&
                                py < moved.cy() + 0.5 * inflation * moved.h;
                CHECK(b.at(r, c) == (in ? 1 : 0));
            }
        }
    }
}

TEST_CASE("build_adaptive_mask rejects degenerate geometry") {
    CHECK_THROWS_AS(build_adaptive_mask({100, 100, 4, 4}, {0, 0, 32, 32}, 4, 1.0), EmptyMask);
}

TEST_CASE("extract_patch is exact on aligned unit-scale windows") {
    const Frame f = random_frame(40, 40, 13);
    const Frame patch = extract_patch(f, 20.0, 20.0, 16.0, 16.0, 16, 16);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            CHECK(patch.at(x, y) == doctest::Approx(f.at(12 + x, 12 + y)).epsilon(1e-14));
        }
    }
}
