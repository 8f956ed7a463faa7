#pragma once

namespace bfun {

// bumped whenever serialized formats or computed results could change;
// part of every cache key, so stale entries miss instead of misleading
inline constexpr const char* kVersionTag = "bfun-1.0.0";

}  // namespace bfun
