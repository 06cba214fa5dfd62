#pragma once

#include <cstddef>
#include <functional>

namespace muskat {

// Number of workers used by parallel_for. Defaults to hardware concurrency,
// capped by the MUSKAT_THREADS environment variable when set.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks, one per
// worker. fn must be safe to call concurrently for distinct i; results must
// not depend on execution order (each index writes only its own slot).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace muskat
