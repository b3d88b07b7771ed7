// Copyright 2026 The LRCoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <string_view>

#include "lrcoin/bytes.hpp"

namespace lrcoin {

/// Source of the scheme's random scalars. Production code uses ChaChaRng;
/// test vectors substitute ForcedScalars to pin every draw.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  /// Uniform integer in [0, bound). Requires bound > 0.
  virtual mpz_class below(const mpz_class& bound) = 0;
};

/// Seedable ChaCha20 keystream generator. Two instances built from the same
/// seed material produce the same stream.
class ChaChaRng final : public RandomSource {
 public:
  explicit ChaChaRng(std::uint64_t seed);
  explicit ChaChaRng(ByteView seed_material);

  /// Independent child stream keyed by (this key, label, index). Does not
  /// advance the parent.
  ChaChaRng derive(std::string_view label, std::uint64_t index = 0) const;

  /// Seeded from the operating system entropy pool.
  static ChaChaRng from_os();

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below_u64(std::uint64_t bound);
  mpz_class below(const mpz_class& bound) override;

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 512> buf_{};
  std::size_t pos_ = buf_.size();
};

/// Replays a fixed queue of values. Throws std::logic_error when drained or
/// when a queued value is not below the requested bound.
class ForcedScalars final : public RandomSource {
 public:
  ForcedScalars(std::initializer_list<long> values);
  void push(const mpz_class& v) { queue_.push_back(v); }
  std::size_t pending() const { return queue_.size(); }
  mpz_class below(const mpz_class& bound) override;

 private:
  std::deque<mpz_class> queue_;
};

}  // namespace lrcoin
