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

#include "lrcoin/random.hpp"

#include <sodium.h>

#include <stdexcept>

#include "lrcoin/hash.hpp"

namespace lrcoin {

namespace {

std::array<std::uint8_t, 32> key_from(ByteView material) {
  Digest d = sha256({as_bytes("lrcoin/rng/v1"), material});
  return d;
}

}  // namespace

ChaChaRng::ChaChaRng(std::uint64_t seed) {
  ByteWriter w;
  w.u64(seed);
  key_ = key_from(w.bytes());
}

ChaChaRng::ChaChaRng(ByteView seed_material) : key_(key_from(seed_material)) {}

ChaChaRng ChaChaRng::derive(std::string_view label, std::uint64_t index) const {
  ByteWriter w;
  w.raw(key_);
  w.var16(as_bytes(label));
  w.u64(index);
  return ChaChaRng(ByteView(w.bytes()));
}

ChaChaRng ChaChaRng::from_os() {
  std::array<std::uint8_t, 32> seed;
  randombytes_buf(seed.data(), seed.size());
  return ChaChaRng(ByteView(seed));
}

void ChaChaRng::refill() {
  static constexpr std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> kNonce{};
  buf_.fill(0);
  crypto_stream_chacha20_xor_ic(buf_.data(), buf_.data(), buf_.size(), kNonce.data(), block_,
                                key_.data());
  block_ += buf_.size() / 64;
  pos_ = 0;
}

void ChaChaRng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ == buf_.size()) refill();
    b = buf_[pos_++];
  }
}

std::uint64_t ChaChaRng::next_u64() {
  std::array<std::uint8_t, 8> b;
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t ChaChaRng::below_u64(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below_u64: bound must be positive");
  // Rejection on the largest multiple of bound that fits.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

mpz_class ChaChaRng::below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned top_mask = bits % 8 == 0 ? 0xff : (1u << (bits % 8)) - 1;
  Bytes buf(nbytes);
  mpz_class v;
  for (;;) {
    fill(buf);
    buf[0] &= static_cast<std::uint8_t>(top_mask);
    mpz_import(v.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    if (v < bound) return v;
  }
}

ForcedScalars::ForcedScalars(std::initializer_list<long> values) {
  for (long v : values) queue_.emplace_back(v);
}

mpz_class ForcedScalars::below(const mpz_class& bound) {
  if (queue_.empty()) throw std::logic_error("ForcedScalars: queue drained");
  mpz_class v = queue_.front();
  queue_.pop_front();
  if (v < 0 || v >= bound) throw std::logic_error("ForcedScalars: value out of range");
  return v;
}

}  // namespace lrcoin
