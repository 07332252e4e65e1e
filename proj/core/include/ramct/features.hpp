#pragma once

#include <cstdint>
#include <vector>

#include "ramct/errors.hpp"

namespace ramct {

/// Grayscale frame, intensities in [0, 1], row-major.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    // Replicate-border read.
    double at_clamped(int x, int y) const;
};

/// Axis-aligned box, top-left corner plus extent, pixel units.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
};

/// Cell-domain feature tensor: channel 0 is cell-averaged intensity, the
/// remaining channels are orientation histograms.
struct ChannelStack {
    int cells_h = 0;
    int cells_w = 0;
    int channels = 0;
    int cell_size = 0;
    std::vector<double> values;  // [c][y][x]

    double at(int c, int y, int x) const {
        return values[(static_cast<std::size_t>(c) * cells_h + y) * cells_w + x];
    }
    double& at(int c, int y, int x) {
        return values[(static_cast<std::size_t>(c) * cells_h + y) * cells_w + x];
    }
    std::size_t grid_size() const { return static_cast<std::size_t>(cells_h) * cells_w; }
};

/// {0,1} cell grid marking the target region.
struct BinaryMask {
    int cells_h = 0;
    int cells_w = 0;
    std::vector<std::uint8_t> values;

    std::uint8_t at(int y, int x) const {
        return values[static_cast<std::size_t>(y) * cells_w + x];
    }
};

/// Real-valued cell grid; argmax ties break on the smallest row, then column.
struct ResponseMap {
    int cells_h = 0;
    int cells_w = 0;
    std::vector<double> values;

    double at(int y, int x) const { return values[static_cast<std::size_t>(y) * cells_w + x]; }
    double& at(int y, int x) { return values[static_cast<std::size_t>(y) * cells_w + x]; }
};

/// Cell-averaged intensity plus unsigned gradient-orientation histograms.
/// Gradients are central differences with replicated borders; each pixel's
/// magnitude lands entirely in its orientation bin; histograms are
/// L2-normalized per cell with epsilon 1e-5 and clipped to [0, 1.5].
///
/// The region is clamped to the frame; it must retain at least one full cell.
ChannelStack extract_channels(const Frame& f, const BoundingBox& region, int cell_size, int bins);

/// Circularly-shifted 2-D Gaussian with peak 1 at index (0,0) and
/// sigma = sigma_factor * sqrt(target_cells_h * target_cells_w).
ResponseMap gaussian_label(int cells_h, int cells_w, double sigma_factor, double target_cells_h,
                           double target_cells_w);

/// Cells of the search grid whose centers fall inside the inflation-scaled
/// box are 1. Throws EmptyMask when no center qualifies.
BinaryMask build_adaptive_mask(const BoundingBox& box, const BoundingBox& search_region,
                               int cell_size, double inflation);

/// Bilinear resample of the src_w x src_h window centered at (cx, cy) into an
/// out_w x out_h patch, replicating the frame border.
Frame extract_patch(const Frame& f, double cx, double cy, double src_w, double src_h, int out_w,
                    int out_h);

}  // namespace ramct
