#pragma once

#include <cstddef>
#include <vector>

#include "pathlet/geometry.hpp"

namespace pathlet {

enum class PathletKind { kVertex, kSubedge, kWhole };

/// A reference curve with parameter intervals of T matched to it.
///
/// The reference is S[from, to] when from <= to, and the reversal of
/// S[to, from] otherwise (only subedge references run backwards).
struct Pathlet {
  PathletKind kind = PathletKind::kVertex;
  PolyCurve reference;
  double from = 1.0;
  double to = 1.0;
  std::vector<ParamInterval> intervals;
  std::size_t score = 0;
};

}  // namespace pathlet
