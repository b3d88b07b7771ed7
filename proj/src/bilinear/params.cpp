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

#include <string>

#include "lrcoin/bilinear.hpp"
#include "lrcoin/hash.hpp"

namespace lrcoin::bilinear {

Bytes mpz_to_bytes(const mpz_class& v, std::size_t width) {
  if (v < 0) throw std::invalid_argument("mpz_to_bytes: negative value");
  std::size_t n = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (width != 0 && n > width) throw std::length_error("mpz_to_bytes: value wider than field");
  Bytes out(std::max(n, width));
  if (n != 0) mpz_export(out.data() + (out.size() - n), nullptr, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

mpz_class mpz_from_bytes(ByteView b) {
  mpz_class v;
  if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

bool is_probable_prime(const mpz_class& v) {
  return v > 1 && mpz_probab_prime_p(v.get_mpz_t(), 40) != 0;
}

namespace detail {

void Handle::require_same(const Handle& other) const {
  if (group_ != other.group_ && !group_->same_as(*other.group_))
    throw MixedParamsError("operands belong to different bilinear groups");
}

}  // namespace detail

Scalar::Scalar(std::shared_ptr<const Group> g, const mpz_class& v) : Handle(std::move(g), {}) {
  mpz_mod(value_.x.get_mpz_t(), v.get_mpz_t(), group_->order().get_mpz_t());
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(o);
  return {group_, value() + o.value()};
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same(o);
  return {group_, value() - o.value()};
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(o);
  return {group_, value() * o.value()};
}

Scalar Scalar::operator-() const { return {group_, -value()}; }

Bytes Scalar::encode() const {
  return mpz_to_bytes(value(), (mpz_sizeinbase(group_->order().get_mpz_t(), 2) + 7) / 8);
}

GTElem GTElem::operator*(const GTElem& o) const {
  require_same(o);
  return {group_, group_->op(Slot::gt, value_, o.value_)};
}

GTElem GTElem::pow(const Scalar& k) const {
  require_same(k);
  return {group_, group_->exp(Slot::gt, k.value(), value_)};
}

GTElem GTElem::inverse() const { return {group_, group_->inverse(Slot::gt, value_)}; }

GTElem pair(const G1Elem& a, const G2Elem& b) {
  if (!a.group().same_as(b.group()))
    throw MixedParamsError("pair: operands belong to different bilinear groups");
  return {a.group_ptr(), a.group().pair(a.payload(), b.payload())};
}

namespace {

void check_mock_prime(const mpz_class& p, MockRange range) {
  if (!is_probable_prime(p) || p <= 3)
    throw UnsupportedParams("mock backend: modulus must be a prime greater than 3");
  if (range == MockRange::toy && p > kMockToyCeiling)
    throw UnsupportedParams("mock backend refuses moduli above 2^20");
}

}  // namespace

BilinearParams BilinearParams::setup(SecurityLevel level, BackendId backend,
                                     std::optional<std::uint64_t> /*seed*/,
                                     std::optional<mpz_class> toy_prime) {
  // Both backends are fully determined by their modulus, so the seed only
  // matters for callers that derive keys from it.
  if (level == SecurityLevel::toy) {
    if (backend != BackendId::mock)
      throw UnsupportedParams("toy security level is only available on the mock backend");
    return mock(toy_prime.value_or(mpz_class(kDefaultToyPrime)), MockRange::toy);
  }
  if (backend != BackendId::curve)
    throw UnsupportedParams("standard security level requires the curve backend");
  if (toy_prime) throw UnsupportedParams("the curve backend has a fixed group order");
  return curve();
}

BilinearParams BilinearParams::mock(const mpz_class& p, MockRange range) {
  check_mock_prime(p, range);
  return BilinearParams(make_mock_group(p));
}

BilinearParams BilinearParams::curve() { return BilinearParams(curve_group()); }

Scalar BilinearParams::hash_to_scalar(ByteView msg) const {
  if (hash_) return scalar((*hash_)(msg));
  Digest d = sha256(msg);
  return scalar(mpz_from_bytes(view(d)));
}

Scalar BilinearParams::reduce_f(const GTElem& r) const {
  if (!r.group().same_as(*group_)) throw MixedParamsError("reduce_f: element from another group");
  return scalar(group_->reduce(r.payload()));
}

BilinearParams BilinearParams::with_hash(HashFn h) const {
  BilinearParams out = *this;
  out.hash_ = std::make_shared<const HashFn>(std::move(h));
  return out;
}

std::size_t BilinearParams::scalar_size() const {
  return (mpz_sizeinbase(order().get_mpz_t(), 2) + 7) / 8;
}

Scalar BilinearParams::decode_scalar(ByteView in) const {
  if (in.size() != scalar_size()) throw DecodeError("scalar: wrong length");
  mpz_class v = mpz_from_bytes(in);
  if (v >= order()) throw DecodeError("scalar: not reduced");
  return scalar(v);
}

Bytes BilinearParams::encode() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(backend()));
  w.var16(mpz_to_bytes(order()));
  return std::move(w).take();
}

BilinearParams BilinearParams::decode(ByteReader& in, MockRange range) {
  const std::uint8_t tag = in.u8();
  ByteView pb = in.var16();
  if (pb.empty() || pb[0] == 0) throw DecodeError("params: modulus not minimally encoded");
  mpz_class p = mpz_from_bytes(pb);
  switch (static_cast<BackendId>(tag)) {
    case BackendId::mock:
      try {
        return mock(p, range);
      } catch (const UnsupportedParams& e) {
        throw DecodeError(std::string("params: ") + e.what());
      }
    case BackendId::curve: {
      BilinearParams c = curve();
      if (p != c.order()) throw DecodeError("params: curve backend order mismatch");
      return c;
    }
  }
  throw DecodeError("params: unknown backend id");
}

BilinearParams BilinearParams::decode(ByteView in, MockRange range) {
  ByteReader r(in);
  BilinearParams out = decode(r, range);
  r.expect_done();
  return out;
}

}  // namespace lrcoin::bilinear
