#pragma once

#include <cstddef>
#include <functional>

namespace rtnq {

/// Environment variable that pins every kernel to one worker when set to a non-empty value other than "0".
inline constexpr const char* kSingleThreadEnv = "RTNQ_SINGLE_THREAD";

/// 0 means "all hardware threads"; the environment override wins over the request.
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, count). Each index must write only to its own output slot,
/// so results do not depend on the number of workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace rtnq
