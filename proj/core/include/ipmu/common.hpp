#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ipmu {

// Node ids are 0-based in memory; files and CLI output use 1-based ids.
using NodeId = std::int32_t;
using ArcId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr ArcId kNoArc = -1;

// A candidate objective counts as an improvement only if it is below the
// incumbent by more than this absolute amount.
inline constexpr double kImprovementTolerance = 1e-9;

inline bool improves(double candidate, double incumbent) {
    return candidate < incumbent - kImprovementTolerance;
}

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ipmu
