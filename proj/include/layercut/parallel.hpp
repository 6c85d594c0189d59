#ifndef LAYERCUT_PARALLEL_HPP
#define LAYERCUT_PARALLEL_HPP

#include <functional>

namespace layercut {

/// Runs fn(0..count-1) on up to `threads` workers. Tasks write only their own
/// slot, so callers reduce sequentially afterwards and results do not depend
/// on the thread count. The lowest-index exception is rethrown.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace layercut

#endif
