#include "ramct/sequence_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ramct {

namespace fs = std::filesystem;

void write_pgm(const std::string& path, const Frame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SequenceIoError("pgm: cannot write '" + path + "'");
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    std::vector<unsigned char> row(frame.width);
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            const double v = std::clamp(frame.at(x, y), 0.0, 1.0);
            row[x] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
}

namespace {

int next_pnm_token(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments between header fields.
    while (true) {
        int ch = in.get();
        if (ch == EOF) throw SequenceIoError("pgm: truncated header in '" + path + "'");
        if (std::isspace(ch)) continue;
        if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
            continue;
        }
        std::string tok;
        while (ch != EOF && !std::isspace(ch)) {
            tok.push_back(static_cast<char>(ch));
            ch = in.get();
        }
        try {
            return std::stoi(tok);
        } catch (const std::exception&) {
            throw SequenceIoError("pgm: malformed header token '" + tok + "' in '" + path + "'");
        }
    }
}

}  // namespace

Frame read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SequenceIoError("pgm: cannot open '" + path + "'");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5') {
        throw SequenceIoError("pgm: '" + path + "' is not binary PGM (P5)");
    }
    const int width = next_pnm_token(in, path);
    const int height = next_pnm_token(in, path);
    const int maxval = next_pnm_token(in, path);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
        throw SequenceIoError("pgm: bad dimensions in '" + path + "'");
    }

    Frame frame;
    frame.width = width;
    frame.height = height;
    frame.pixels.resize(static_cast<std::size_t>(width) * height);
    const bool wide = maxval > 255;
    const std::size_t count = frame.pixels.size() * (wide ? 2 : 1);
    std::vector<unsigned char> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), count);
    if (static_cast<std::size_t>(in.gcount()) != count) {
        throw SequenceIoError("pgm: truncated pixel data in '" + path + "'");
    }
    const double scale = 1.0 / maxval;
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        const int v = wide ? (raw[2 * i] << 8 | raw[2 * i + 1]) : raw[i];
        frame.pixels[i] = v * scale;
    }
    return frame;
}

namespace {

BoundingBox parse_box_line(const std::string& line, const std::string& path, int lineno) {
    std::stringstream ss(line);
    std::string item;
    double vals[4];
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(ss, item, ',')) {
            throw SequenceIoError("groundtruth: expected x,y,w,h at " + path + ":" +
                                  std::to_string(lineno));
        }
        try {
            vals[i] = std::stod(item);
        } catch (const std::exception&) {
            throw SequenceIoError("groundtruth: malformed number '" + item + "' at " + path +
                                  ":" + std::to_string(lineno));
        }
    }
    // 1-based on disk.
    return BoundingBox{vals[0] - 1.0, vals[1] - 1.0, vals[2], vals[3]};
}

}  // namespace

Sequence load_sequence(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw SequenceIoError("sequence: '" + dir + "' is not a directory");
    }
    Sequence seq;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".pgm") {
            seq.frame_files.push_back(entry.path().string());
        }
    }
    std::sort(seq.frame_files.begin(), seq.frame_files.end());
    if (seq.frame_files.empty()) {
        throw SequenceIoError("sequence: no .pgm frames in '" + dir + "'");
    }
    for (const auto& f : seq.frame_files) seq.frames.push_back(read_pgm(f));

    const std::string gt_path = (fs::path(dir) / "groundtruth.txt").string();
    std::ifstream gt(gt_path);
    if (!gt) throw SequenceIoError("sequence: missing '" + gt_path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(gt, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        seq.groundtruth.push_back(parse_box_line(line, gt_path, lineno));
    }
    if (seq.groundtruth.size() != seq.frames.size()) {
        throw SequenceIoError("sequence: '" + gt_path + "' has " +
                              std::to_string(seq.groundtruth.size()) + " boxes for " +
                              std::to_string(seq.frames.size()) + " frames");
    }
    return seq;
}

void write_boxes(const std::string& path, const std::vector<BoundingBox>& boxes) {
    std::ofstream out(path);
    if (!out) throw SequenceIoError("sequence: cannot write '" + path + "'");
    char buf[128];
    for (const auto& b : boxes) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f,%.2f,%.2f\n", b.x + 1.0, b.y + 1.0, b.w, b.h);
        out << buf;
    }
}

void write_sequence(const std::string& dir, const std::vector<Frame>& frames,
                    const std::vector<BoundingBox>& boxes) {
    fs::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "%04zu.pgm", i + 1);
        write_pgm((fs::path(dir) / name).string(), frames[i]);
    }
    write_boxes((fs::path(dir) / "groundtruth.txt").string(), boxes);
}

}  // namespace ramct
