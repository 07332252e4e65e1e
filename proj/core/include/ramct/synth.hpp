#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramct/features.hpp"

namespace ramct {

enum class SynthPreset { clean, occlusion, clutter, fast_motion };

/// Parse "clean" | "occlusion" | "clutter" | "fast-motion"; throws ConfigError.
SynthPreset parse_synth_preset(const std::string& name);
const char* synth_preset_name(SynthPreset p);

struct SynthSequence {
    std::vector<Frame> frames;
    std::vector<BoundingBox> boxes;  // exact ground truth per frame
    // Occlusion preset only: fraction of the target area covered per frame.
    std::vector<double> occlusion_fraction;
};

/// Deterministic synthetic sequence: a bright Gaussian blob over a textured
/// background plus the preset-specific challenge (occluder bar, distractor
/// blobs, or fast motion). Identical (preset, frames, seed) produce
/// bit-identical output.
SynthSequence synth_generate(SynthPreset preset, int frames, std::uint32_t seed);

}  // namespace ramct
