// Copyright 2026 The sbpr Authors
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

// Counter-style randomness used everywhere determinism matters. All draws are
// pure functions of (seed, stream tags), so results are identical across runs
// and independent of evaluation order.

#ifndef SBPR_RNG_HPP_
#define SBPR_RNG_HPP_

#include <cstdint>
#include <string_view>

namespace sbpr
{

inline std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value)
{
  return splitmix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t hash_string(std::uint64_t seed, std::string_view text)
{
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h = hash_combine(h, c);
  }
  return hash_combine(h, text.size());
}

// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit_interval(std::uint64_t h)
{
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Stateful stream for places that need a sequence of draws from one key.
class RandomStream
{
public:
  explicit RandomStream(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t next_u64()
  {
    state_ = splitmix64(state_);
    return state_;
  }

  double next_unit() { return to_unit_interval(next_u64()); }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

private:
  std::uint64_t state_;
};

}  // namespace sbpr

#endif  // SBPR_RNG_HPP_
