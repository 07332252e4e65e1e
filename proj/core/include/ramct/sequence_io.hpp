#pragma once

#include <string>
#include <vector>

#include "ramct/features.hpp"

namespace ramct {

/// Binary PGM (P5), 8-bit write; 8- and 16-bit read (16-bit is big-endian
/// per the format). Intensities map linearly to [0, 1].
void write_pgm(const std::string& path, const Frame& frame);
Frame read_pgm(const std::string& path);

struct Sequence {
    std::vector<Frame> frames;
    std::vector<BoundingBox> groundtruth;  // 0-based internally
    std::vector<std::string> frame_files;
};

/// Load a sequence directory: zero-padded numbered *.pgm frames plus
/// groundtruth.txt with one "x,y,w,h" line per frame (1-based pixel
/// coordinates on disk). Raises SequenceIoError naming the offending file.
Sequence load_sequence(const std::string& dir);

/// Write one "x,y,w,h" line per box (1-based, two decimals).
void write_boxes(const std::string& path, const std::vector<BoundingBox>& boxes);

/// Write a full sequence directory (frames + groundtruth.txt).
void write_sequence(const std::string& dir, const std::vector<Frame>& frames,
                    const std::vector<BoundingBox>& boxes);

}  // namespace ramct
