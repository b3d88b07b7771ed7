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

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "lrcoin/bilinear_backend.hpp"
#include "lrcoin/bytes.hpp"
#include "lrcoin/random.hpp"

namespace lrcoin::bilinear {

enum class SecurityLevel { toy, standard };

/// Whether a mock group may be built above the toy ceiling. `wide` exists for
/// test harnesses that need exact exponent arithmetic at realistic sizes.
enum class MockRange { toy, wide };

/// Largest modulus the mock backend accepts without MockRange::wide.
inline const mpz_class kMockToyCeiling = mpz_class(1) << 20;
inline constexpr long kDefaultToyPrime = 101;
/// 2^160 - 47, a prime of the same size as the curve group order. Used for
/// mock-backed experiments that need full-width scalars.
inline const mpz_class kWideMockPrime{"1461501637330902918203684832716283019655932542929"};

/// Operands belong to different groups.
class MixedParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested (security level, backend, modulus) combination is refused.
class UnsupportedParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Scalar;
class G1Elem;
class G2Elem;
class GTElem;

namespace detail {

class Handle {
 public:
  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const Payload& payload() const { return value_; }

 protected:
  Handle(std::shared_ptr<const Group> g, Payload v) : group_(std::move(g)), value_(std::move(v)) {}
  void require_same(const Handle& other) const;

  std::shared_ptr<const Group> group_;
  Payload value_;
};

}  // namespace detail

/// Integer modulo the group order.
class Scalar : public detail::Handle {
 public:
  Scalar(std::shared_ptr<const Group> g, const mpz_class& v);

  const mpz_class& value() const { return value_.x; }
  bool is_zero() const { return value_.x == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;

  /// Fixed-width big-endian, as wide as the group order.
  Bytes encode() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.group().same_as(b.group()) && a.value() == b.value();
  }
};

/// Element of G1 or G2 (additive).
template <Slot S>
class Point : public detail::Handle {
  static_assert(S != Slot::gt);

 public:
  Point(std::shared_ptr<const Group> g, Payload v) : Handle(std::move(g), std::move(v)) {}

  Point operator+(const Point& o) const {
    require_same(o);
    return {group_, group_->op(S, value_, o.value_)};
  }
  Point operator-(const Point& o) const { return *this + (-o); }
  Point operator-() const { return {group_, group_->inverse(S, value_)}; }
  friend Point operator*(const Scalar& k, const Point& a) {
    a.require_same(k);
    return {a.group_, a.group_->exp(S, k.value(), a.value_)};
  }

  bool is_identity() const { return value_ == group_->identity(S); }
  Bytes encode() const { return group_->encode(S, value_); }

  friend bool operator==(const Point& a, const Point& b) {
    return a.group().same_as(b.group()) && a.payload() == b.payload();
  }
};

class G1Elem : public Point<Slot::g1> {
 public:
  using Point::Point;
  G1Elem(Point p) : Point(std::move(p)) {}  // NOLINT(google-explicit-constructor)
};

class G2Elem : public Point<Slot::g2> {
 public:
  using Point::Point;
  G2Elem(Point p) : Point(std::move(p)) {}  // NOLINT(google-explicit-constructor)
};

/// Element of GT (multiplicative).
class GTElem : public detail::Handle {
 public:
  GTElem(std::shared_ptr<const Group> g, Payload v) : Handle(std::move(g), std::move(v)) {}

  GTElem operator*(const GTElem& o) const;
  GTElem pow(const Scalar& k) const;
  GTElem inverse() const;

  bool is_identity() const { return value_ == group_->identity(Slot::gt); }
  Bytes encode() const { return group_->encode(Slot::gt, value_); }

  friend bool operator==(const GTElem& a, const GTElem& b) {
    return a.group().same_as(b.group()) && a.payload() == b.payload();
  }
};

GTElem pair(const G1Elem& a, const G2Elem& b);

/// Message hash into Z_p. Returns any integer; the caller reduces mod p.
using HashFn = std::function<mpz_class(ByteView)>;

/// System parameters: the groups, their generators, the pairing, the message
/// hash H and the reduction f. Cheap to copy; the group backend is shared.
class BilinearParams {
 public:
  /// toy: mock backend only, prime \p toy_prime (default 101, at most 2^20).
  /// standard: curve backend only (160-bit group order).
  static BilinearParams setup(SecurityLevel level, BackendId backend,
                              std::optional<std::uint64_t> seed = std::nullopt,
                              std::optional<mpz_class> toy_prime = std::nullopt);
  static BilinearParams mock(const mpz_class& p, MockRange range = MockRange::toy);
  static BilinearParams curve();

  BackendId backend() const { return group_->id(); }
  const mpz_class& order() const { return group_->order(); }
  const std::shared_ptr<const Group>& group() const { return group_; }

  G1Elem g1_gen() const { return {group_, group_->generator(Slot::g1)}; }
  G2Elem g2_gen() const { return {group_, group_->generator(Slot::g2)}; }
  GTElem gt_gen() const { return {group_, group_->generator(Slot::gt)}; }
  G1Elem g1_identity() const { return {group_, group_->identity(Slot::g1)}; }
  G2Elem g2_identity() const { return {group_, group_->identity(Slot::g2)}; }
  GTElem gt_identity() const { return {group_, group_->identity(Slot::gt)}; }

  Scalar scalar(const mpz_class& v) const { return {group_, v}; }
  Scalar random_scalar(RandomSource& rng) const { return scalar(rng.below(order())); }

  /// H: SHA-256 of \p msg read big-endian, mod p (unless overridden).
  Scalar hash_to_scalar(ByteView msg) const;
  /// f: GT -> Z_p.
  Scalar reduce_f(const GTElem& r) const;

  /// Copy with H replaced; used to pin hash outputs in test vectors.
  BilinearParams with_hash(HashFn h) const;

  std::size_t scalar_size() const;
  std::size_t element_size(Slot s) const { return group_->encoded_size(s); }

  Scalar decode_scalar(ByteView in) const;
  G1Elem decode_g1(ByteView in) const { return {group_, group_->decode(Slot::g1, in)}; }
  G2Elem decode_g2(ByteView in) const { return {group_, group_->decode(Slot::g2, in)}; }
  GTElem decode_gt(ByteView in) const { return {group_, group_->decode(Slot::gt, in)}; }

  /// backend_id (1 byte) || len16 || p big-endian.
  Bytes encode() const;
  static BilinearParams decode(ByteReader& in, MockRange range = MockRange::toy);
  static BilinearParams decode(ByteView in, MockRange range = MockRange::toy);

  friend bool operator==(const BilinearParams& a, const BilinearParams& b) {
    return a.group_->same_as(*b.group_);
  }

 private:
  explicit BilinearParams(std::shared_ptr<const Group> g) : group_(std::move(g)) {}

  std::shared_ptr<const Group> group_;
  std::shared_ptr<const HashFn> hash_;
};

/// Minimal big-endian byte string of a non-negative integer, left-padded to
/// \p width bytes when width is nonzero.
Bytes mpz_to_bytes(const mpz_class& v, std::size_t width = 0);
mpz_class mpz_from_bytes(ByteView b);
bool is_probable_prime(const mpz_class& v);

}  // namespace lrcoin::bilinear
