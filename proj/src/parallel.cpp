#include "bocse/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace bocse {

namespace {
std::atomic<unsigned> g_budget{0};
thread_local bool t_inside = false;
}  // namespace

void set_thread_budget(unsigned n) { g_budget.store(n); }

unsigned thread_budget() {
  unsigned n = g_budget.load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned workers = thread_budget();
  if (t_inside || workers <= 1 || count == 1) {
    bool was = t_inside;
    t_inside = true;
    for (std::size_t i = 0; i < count; ++i) fn(i);
    t_inside = was;
    return;
  }
  if (workers > count) workers = static_cast<unsigned>(count);

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = count * w / workers;
    std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end]() {
      t_inside = true;
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bocse
