#pragma once

#include <cstddef>
#include <functional>

namespace bocse {

// Process-wide worker budget for parallel_for. 0 means "use
// hardware_concurrency". The CLI sets this from --threads.
void set_thread_budget(unsigned n);
unsigned thread_budget();

// Runs fn(i) for i in [0, count). Work is split into contiguous chunks
// across at most thread_budget() threads. Tasks must only write to
// per-index slots; results are then independent of the schedule.
// Nested calls run serially on the calling thread, so only the
// outermost loop of a pipeline fans out.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace bocse
