// Copyright 2026 The Magic Ladder Authors
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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace magic {

/// Worker count: `requested` if nonzero, else MAGIC_LADDER_THREADS, else the
/// hardware concurrency.
std::size_t worker_count(std::size_t requested = 0);

/// Runs fn(0..count-1) on up to `threads` workers. The first exception thrown
/// by any task is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Independent stream seed for (master, stream) via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Portable random source: identical sequences for identical seeds on every
/// platform (no std distribution objects).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, m).
  std::size_t index(std::size_t m) { return static_cast<std::size_t>(engine_() % m); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace magic
