#include "ramct/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ramct/errors.hpp"

namespace ramct {

namespace {

constexpr int kWidth = 192;
constexpr int kHeight = 144;
constexpr double kTargetAmp = 0.65;
constexpr double kTargetRadius = 5.0;
constexpr double kTargetBox = 24.0;
constexpr double kMargin = 24.0;
constexpr int kOccluderWidth = 20;
constexpr double kOccluderValue = 0.55;
constexpr int kOcclusionSpan = 10;

struct Mover {
    double x, y, vx, vy;
    void step() {
        x += vx;
        y += vy;
        if (x < kMargin || x > kWidth - kMargin) {
            vx = -vx;
            x += 2.0 * vx;
        }
        if (y < kMargin || y > kHeight - kMargin) {
            vy = -vy;
            y += 2.0 * vy;
        }
    }
};

std::vector<double> make_texture(std::mt19937& rng) {
    // Bilinearly upsampled coarse noise, mean ~0.25.
    const int step = 8;
    const int gw = kWidth / step + 2;
    const int gh = kHeight / step + 2;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> coarse(static_cast<std::size_t>(gw) * gh);
    for (auto& v : coarse) v = uni(rng);

    std::vector<double> tex(static_cast<std::size_t>(kWidth) * kHeight);
    for (int y = 0; y < kHeight; ++y) {
        const double gy = static_cast<double>(y) / step;
        const int iy = static_cast<int>(gy);
        const double fy = gy - iy;
        for (int x = 0; x < kWidth; ++x) {
            const double gx = static_cast<double>(x) / step;
            const int ix = static_cast<int>(gx);
            const double fx = gx - ix;
            const double v00 = coarse[iy * gw + ix];
            const double v10 = coarse[iy * gw + ix + 1];
            const double v01 = coarse[(iy + 1) * gw + ix];
            const double v11 = coarse[(iy + 1) * gw + ix + 1];
            const double v = (1 - fy) * ((1 - fx) * v00 + fx * v10) +
                             fy * ((1 - fx) * v01 + fx * v11);
            tex[static_cast<std::size_t>(y) * kWidth + x] = 0.18 + 0.14 * v;
        }
    }
    return tex;
}

void add_blob(Frame& f, double cx, double cy, double amp, double radius) {
    const int r = static_cast<int>(std::ceil(3.0 * radius));
    const int x0 = std::max(0, static_cast<int>(cx) - r);
    const int x1 = std::min(f.width - 1, static_cast<int>(cx) + r);
    const int y0 = std::max(0, static_cast<int>(cy) - r);
    const int y1 = std::min(f.height - 1, static_cast<int>(cy) + r);
    const double inv = 1.0 / (2.0 * radius * radius);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
            f.at(x, y) += amp * std::exp(-d2 * inv);
        }
    }
}

BoundingBox box_at(double cx, double cy) {
    return BoundingBox{cx - 0.5 * kTargetBox, cy - 0.5 * kTargetBox, kTargetBox, kTargetBox};
}

}  // namespace

SynthPreset parse_synth_preset(const std::string& name) {
    if (name == "clean") return SynthPreset::clean;
    if (name == "occlusion") return SynthPreset::occlusion;
    if (name == "clutter") return SynthPreset::clutter;
    if (name == "fast-motion") return SynthPreset::fast_motion;
    throw ConfigError("synth: unknown preset '" + name + "'");
}

const char* synth_preset_name(SynthPreset p) {
    switch (p) {
        case SynthPreset::clean: return "clean";
        case SynthPreset::occlusion: return "occlusion";
        case SynthPreset::clutter: return "clutter";
        case SynthPreset::fast_motion: return "fast-motion";
    }
    return "?";
}

SynthSequence synth_generate(SynthPreset preset, int frames, std::uint32_t seed) {
    if (frames < 2) throw ConfigError("synth: need at least 2 frames");
    std::mt19937 rng(seed);
    const std::vector<double> texture = make_texture(rng);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    Mover target{48.0, 48.0, 1.6, 1.2};
    std::vector<Mover> distractors;
    int occlusion_start = 0;
    switch (preset) {
        case SynthPreset::clean:
            break;
        case SynthPreset::occlusion:
            target = Mover{0.5 * kWidth, 0.5 * kHeight, 0.0, 0.0};
            occlusion_start = std::max(1, frames / 3);
            break;
        case SynthPreset::clutter: {
            target.vx = 1.0;
            target.vy = 0.75;
            for (int i = 0; i < 4; ++i) {
                Mover m;
                do {
                    m.x = kMargin + uni(rng) * (kWidth - 2 * kMargin);
                    m.y = kMargin + uni(rng) * (kHeight - 2 * kMargin);
                } while (std::hypot(m.x - target.x, m.y - target.y) < 50.0);
                const double speed = 1.0 + uni(rng);
                const double angle = uni(rng) * 2.0 * M_PI;
                m.vx = speed * std::cos(angle);
                m.vy = speed * std::sin(angle);
                distractors.push_back(m);
            }
            break;
        }
        case SynthPreset::fast_motion:
            target.vx = 6.4;
            target.vy = 4.8;
            break;
    }

    SynthSequence seq;
    seq.frames.reserve(frames);
    seq.boxes.reserve(frames);

    for (int t = 0; t < frames; ++t) {
        Frame f;
        f.width = kWidth;
        f.height = kHeight;
        f.pixels = texture;

        for (auto& d : distractors) add_blob(f, d.x, d.y, 0.45, kTargetRadius);
        add_blob(f, target.x, target.y, kTargetAmp, kTargetRadius);
        const BoundingBox box = box_at(target.x, target.y);

        if (preset == SynthPreset::occlusion) {
            // The bar sweeps so that it covers >= 50% of the target for
            // exactly kOcclusionSpan frames (odd-offset stagger keeps the
            // boundary positions outside the covered band).
            const double bx = box.x - 7.0 + 2.0 * (t - occlusion_start);
            const double overlap = std::max(
                0.0, std::min(bx + kOccluderWidth, box.x + box.w) - std::max(bx, box.x));
            seq.occlusion_fraction.push_back(overlap / box.w);
            const int ix0 = std::max(0, static_cast<int>(std::lround(bx)));
            const int ix1 = std::min(kWidth, static_cast<int>(std::lround(bx)) + kOccluderWidth);
            for (int y = 0; y < kHeight; ++y) {
                for (int x = ix0; x < ix1; ++x) f.at(x, y) = kOccluderValue;
            }
        }

        for (auto& v : f.pixels) v = std::clamp(v + noise(rng), 0.0, 1.0);

        seq.frames.push_back(std::move(f));
        seq.boxes.push_back(box);
        target.step();
        for (auto& d : distractors) d.step();
    }
    return seq;
}

}  // namespace ramct
