#pragma once

#include <cstddef>
#include <functional>

namespace sednoise {

/// Runs body(i) for i in [0, count) on up to `threads` worker threads using
/// a static block partition. Bodies must write only to disjoint slots; the
/// first exception thrown by any body is rethrown after all workers join.
/// threads <= 1 runs inline.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sednoise
