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

#include <cstdint>
#include <memory>

#include "lrcoin/bytes.hpp"

namespace lrcoin::bilinear {

enum class BackendId : std::uint8_t { mock = 0, curve = 1 };

enum class Slot : std::uint8_t { g1, g2, gt };

/// Backend-defined value of one group element. The mock backend keeps the
/// discrete log in `x`; the curve backend keeps affine coordinates (G1/G2)
/// or the two F_q coefficients of an F_{q^2} element (GT) in `x`, `y`.
/// Backends must keep payloads canonical so that payload equality is element
/// equality.
struct Payload {
  mpz_class x;
  mpz_class y;
  bool infinity = false;

  friend bool operator==(const Payload& a, const Payload& b) {
    return a.infinity == b.infinity && a.x == b.x && a.y == b.y;
  }
};

/// Group backend. G1 and G2 are written additively, GT multiplicatively.
/// Every method is pure; one instance may be shared across threads.
class Group {
 public:
  virtual ~Group() = default;

  virtual BackendId id() const = 0;
  /// Prime order shared by G1, G2 and GT.
  virtual const mpz_class& order() const = 0;

  virtual Payload identity(Slot s) const = 0;
  virtual Payload generator(Slot s) const = 0;
  /// Group law: a + b in G1/G2, a * b in GT.
  virtual Payload op(Slot s, const Payload& a, const Payload& b) const = 0;
  virtual Payload inverse(Slot s, const Payload& a) const = 0;
  /// k·a in G1/G2, a^k in GT. k is reduced into [0, order).
  virtual Payload exp(Slot s, const mpz_class& k, const Payload& a) const = 0;
  virtual Payload pair(const Payload& g1, const Payload& g2) const = 0;
  /// The almost-invertible reduction GT -> Z_p.
  virtual mpz_class reduce(const Payload& gt) const = 0;

  virtual std::size_t encoded_size(Slot s) const = 0;
  virtual Bytes encode(Slot s, const Payload& a) const = 0;
  /// Throws DecodeError on anything that is not a canonical encoding of an
  /// element of the prime-order subgroup.
  virtual Payload decode(Slot s, ByteView in) const = 0;

  virtual bool same_as(const Group& other) const {
    return id() == other.id() && order() == other.order();
  }
};

/// Exponent-representation backend: each element is stored as its discrete
/// log to the fixed generator. Insecure by construction; every equation is
/// exactly checkable by integer arithmetic.
std::shared_ptr<const Group> make_mock_group(const mpz_class& p);

/// Supersingular curve y^2 = x^3 + x over a 511-bit F_q (q = 3 mod 4) with a
/// 160-bit prime-order subgroup, embedding degree 2, reduced Tate pairing with
/// the distortion map (x, y) -> (-x, i*y). G2 is a second generator of the
/// same subgroup, so the pairing is symmetric (Type-1).
std::shared_ptr<const Group> curve_group();

}  // namespace lrcoin::bilinear
