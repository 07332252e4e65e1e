#pragma once

#include <stdexcept>
#include <string>

namespace ramct {

// Error taxonomy shared by all modules. Each condition that callers are
// expected to handle separately gets its own type.

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

struct SingularFilter : std::runtime_error {
    explicit SingularFilter(const std::string& what) : std::runtime_error(what) {}
};

struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct NoBracket : std::runtime_error {
    explicit NoBracket(const std::string& what) : std::runtime_error(what) {}
};

struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(const std::string& what) : std::runtime_error(what) {}
};

struct RegionTooSmall : std::invalid_argument {
    explicit RegionTooSmall(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyMask : std::runtime_error {
    explicit EmptyMask(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySequence : std::invalid_argument {
    explicit EmptySequence(const std::string& what) : std::invalid_argument(what) {}
};

struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SequenceIoError : std::runtime_error {
    explicit SequenceIoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ramct
