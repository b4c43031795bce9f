#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "ordinarium/error.hpp"

namespace ordinarium {

/// Worker count from ORDINARIUM_THREADS (positive integer), default 1.
inline unsigned threads_from_env() {
  const char* v = std::getenv("ORDINARIUM_THREADS");
  if (v == nullptr || *v == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  require(end != nullptr && *end == '\0' && n > 0, std::string("ORDINARIUM_THREADS must be a positive integer, got '") + v + "'");
  return static_cast<unsigned>(n);
}

/// Applies fn to every item on up to `threads` workers.  Items are split into
/// contiguous blocks and results land at their input index, so the output is
/// identical for every thread count.  The first exception (by item index) is
/// rethrown after all workers finish.
template <class T, class Fn>
auto parallel_map(std::span<const T> items, Fn&& fn, unsigned threads)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
  using R = std::invoke_result_t<Fn&, const T&>;
  static_assert(!std::is_same_v<R, bool>, "std::vector<bool> is not safe for concurrent writes");
  std::vector<R> out(items.size());
  const std::size_t n = items.size();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(items[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        try {
          for (std::size_t i = lo; i < hi; ++i) out[i] = fn(items[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn&& fn, unsigned threads) {
  return parallel_map(std::span<const T>(items), std::forward<Fn>(fn), threads);
}

}  // namespace ordinarium
