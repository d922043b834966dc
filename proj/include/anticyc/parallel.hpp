// Block partitioning of an index range across std::thread workers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace anticyc {

inline unsigned effective_jobs(unsigned jobs) {
  if (jobs == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
  }
  return jobs;
}

/// Calls fn(worker, begin, end) on contiguous blocks covering [0, n).
/// Results must be merged by the caller in worker order to stay deterministic.
template <class Fn>
void parallel_blocks(std::uint64_t n, unsigned jobs, Fn&& fn) {
  unsigned w = std::max(1u, std::min<unsigned>(effective_jobs(jobs), n ? static_cast<unsigned>(std::min<std::uint64_t>(n, 1024)) : 1));
  if (w == 1) {
    fn(0u, std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errs(w);
  for (unsigned i = 0; i < w; ++i) {
    std::uint64_t b = n * i / w, e = n * (i + 1) / w;
    threads.emplace_back([&, i, b, e] {
      try {
        fn(i, b, e);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

/// Number of workers parallel_blocks will use for n items.
inline unsigned block_count(std::uint64_t n, unsigned jobs) {
  return std::max(1u, std::min<unsigned>(effective_jobs(jobs), n ? static_cast<unsigned>(std::min<std::uint64_t>(n, 1024)) : 1));
}

}  // namespace anticyc
