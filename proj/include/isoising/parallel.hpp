// Copyright 2026 The isoising Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace isoising {

namespace detail {
inline std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{0};
  return cap;
}
}  // namespace detail

/// Caps the number of worker threads used by grid evaluations. 0 means
/// hardware concurrency.
inline void set_max_threads(int n) { detail::thread_cap() = std::max(0, n); }

inline int max_threads() {
  int cap = detail::thread_cap();
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return cap > 0 ? cap : hw;
}

/// Runs fn(i) for i in [0, count) over a static partition of the range.
/// Each index is visited exactly once; callers write to per-index slots and
/// reduce afterwards so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(max_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += workers) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace isoising
