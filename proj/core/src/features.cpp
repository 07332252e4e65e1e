#include "ramct/features.hpp"

#include <algorithm>
#include <cmath>

namespace ramct {

double Frame::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return at(x, y);
}

ChannelStack extract_channels(const Frame& f, const BoundingBox& region, int cell_size,
                              int bins) {
    if (cell_size < 1 || bins < 1) {
        throw RegionTooSmall("extract_channels: cell_size and bins must be positive");
    }
    const int x0 = std::clamp(static_cast<int>(std::lround(region.x)), 0, f.width);
    const int y0 = std::clamp(static_cast<int>(std::lround(region.y)), 0, f.height);
    const int x1 = std::clamp(static_cast<int>(std::lround(region.x + region.w)), x0, f.width);
    const int y1 = std::clamp(static_cast<int>(std::lround(region.y + region.h)), y0, f.height);

    ChannelStack out;
    out.cells_w = (x1 - x0) / cell_size;
    out.cells_h = (y1 - y0) / cell_size;
    out.cell_size = cell_size;
    out.channels = 1 + bins;
    if (out.cells_w < 1 || out.cells_h < 1) {
        throw RegionTooSmall("extract_channels: clamped region smaller than one cell");
    }
    out.values.assign(static_cast<std::size_t>(out.channels) * out.grid_size(), 0.0);

    for (int cy = 0; cy < out.cells_h; ++cy) {
        for (int cx = 0; cx < out.cells_w; ++cx) {
            double intensity = 0.0;
            for (int py = 0; py < cell_size; ++py) {
                for (int px = 0; px < cell_size; ++px) {
                    const int ix = x0 + cx * cell_size + px;
                    const int iy = y0 + cy * cell_size + py;
                    intensity += f.at(ix, iy);

                    const double gx = f.at_clamped(ix + 1, iy) - f.at_clamped(ix - 1, iy);
                    const double gy = f.at_clamped(ix, iy + 1) - f.at_clamped(ix, iy - 1);
                    const double mag = std::sqrt(gx * gx + gy * gy);
                    if (mag > 0.0) {
                        double theta = std::atan2(gy, gx);  // signed, (-pi, pi]
                        if (theta < 0.0) theta += M_PI;     // unsigned, [0, pi)
                        if (theta >= M_PI) theta -= M_PI;
                        int bin = static_cast<int>(theta / M_PI * bins);
                        bin = std::min(bin, bins - 1);
                        out.at(1 + bin, cy, cx) += mag;
                    }
                }
            }
            out.at(0, cy, cx) = intensity / (cell_size * cell_size);
        }
    }

    // Per-cell L2 normalization of the orientation histogram.
    const double eps = 1e-5;
    for (int cy = 0; cy < out.cells_h; ++cy) {
        for (int cx = 0; cx < out.cells_w; ++cx) {
            double energy = 0.0;
            for (int b = 0; b < bins; ++b) {
                const double v = out.at(1 + b, cy, cx);
                energy += v * v;
            }
            const double inv = 1.0 / std::sqrt(energy + eps * eps);
            for (int b = 0; b < bins; ++b) {
                double& v = out.at(1 + b, cy, cx);
                v = std::min(v * inv, 1.5);
            }
        }
    }
    return out;
}

ResponseMap gaussian_label(int cells_h, int cells_w, double sigma_factor, double target_cells_h,
                           double target_cells_w) {
    ResponseMap label;
    label.cells_h = cells_h;
    label.cells_w = cells_w;
    label.values.assign(static_cast<std::size_t>(cells_h) * cells_w, 0.0);
    const double sigma = sigma_factor * std::sqrt(target_cells_h * target_cells_w);
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (int i = 0; i < cells_h; ++i) {
        const double di = std::min(i, cells_h - i);
        for (int j = 0; j < cells_w; ++j) {
            const double dj = std::min(j, cells_w - j);
            label.at(i, j) = std::exp(-(di * di + dj * dj) * inv2s2);
        }
    }
    return label;
}

BinaryMask build_adaptive_mask(const BoundingBox& box, const BoundingBox& search_region,
                               int cell_size, double inflation) {
    if (inflation < 1.0) throw EmptyMask("build_adaptive_mask: inflation must be >= 1");
    BinaryMask mask;
    mask.cells_w = static_cast<int>(search_region.w) / cell_size;
    mask.cells_h = static_cast<int>(search_region.h) / cell_size;
    if (mask.cells_w < 1 || mask.cells_h < 1) {
        throw EmptyMask("build_adaptive_mask: search region smaller than one cell");
    }
    mask.values.assign(static_cast<std::size_t>(mask.cells_h) * mask.cells_w, 0);

    const double half_w = 0.5 * inflation * box.w;
    const double half_h = 0.5 * inflation * box.h;
    const double cx = box.cx();
    const double cy = box.cy();

    int ones = 0;
    for (int r = 0; r < mask.cells_h; ++r) {
        const double ccy = search_region.y + (r + 0.5) * cell_size;
        for (int c = 0; c < mask.cells_w; ++c) {
            const double ccx = search_region.x + (c + 0.5) * cell_size;
            const bool inside = ccx >= cx - half_w && ccx < cx + half_w &&
                                ccy >= cy - half_h && ccy < cy + half_h;
            if (inside) {
                mask.values[static_cast<std::size_t>(r) * mask.cells_w + c] = 1;
                ++ones;
            }
        }
    }
    if (ones == 0) throw EmptyMask("build_adaptive_mask: no cell center inside the box");
    return mask;
}

Frame extract_patch(const Frame& f, double cx, double cy, double src_w, double src_h, int out_w,
                    int out_h) {
    Frame patch;
    patch.width = out_w;
    patch.height = out_h;
    patch.pixels.assign(static_cast<std::size_t>(out_w) * out_h, 0.0);
    const double x_left = cx - 0.5 * src_w;
    const double y_top = cy - 0.5 * src_h;
    const double sx = src_w / out_w;
    const double sy = src_h / out_h;
    for (int oy = 0; oy < out_h; ++oy) {
        const double v = y_top + (oy + 0.5) * sy - 0.5;
        const int iy = static_cast<int>(std::floor(v));
        const double fy = v - iy;
        for (int ox = 0; ox < out_w; ++ox) {
            const double u = x_left + (ox + 0.5) * sx - 0.5;
            const int ix = static_cast<int>(std::floor(u));
            const double fx = u - ix;
            const double p00 = f.at_clamped(ix, iy);
            const double p10 = f.at_clamped(ix + 1, iy);
            const double p01 = f.at_clamped(ix, iy + 1);
            const double p11 = f.at_clamped(ix + 1, iy + 1);
            patch.at(ox, oy) = (1 - fy) * ((1 - fx) * p00 + fx * p10) +
                               fy * ((1 - fx) * p01 + fx * p11);
        }
    }
    return patch;
}

}  // namespace ramct
