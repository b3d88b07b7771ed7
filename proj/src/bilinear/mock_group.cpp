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

#include <algorithm>

#include "lrcoin/bilinear.hpp"

namespace lrcoin::bilinear {

namespace {

class MockGroup final : public Group {
 public:
  explicit MockGroup(mpz_class p)
      : p_(std::move(p)), width_(std::max<std::size_t>(4, (mpz_sizeinbase(p_.get_mpz_t(), 2) + 7) / 8)) {}

  BackendId id() const override { return BackendId::mock; }
  const mpz_class& order() const override { return p_; }

  Payload identity(Slot) const override { return {}; }
  Payload generator(Slot) const override { return {mpz_class(1), 0, false}; }

  // In exponent form both the additive and the multiplicative group laws add
  // discrete logs.
  Payload op(Slot, const Payload& a, const Payload& b) const override { return wrap(a.x + b.x); }
  Payload inverse(Slot, const Payload& a) const override { return wrap(-a.x); }
  Payload exp(Slot, const mpz_class& k, const Payload& a) const override { return wrap(k * a.x); }
  Payload pair(const Payload& a, const Payload& b) const override { return wrap(a.x * b.x); }
  mpz_class reduce(const Payload& gt) const override { return gt.x; }

  std::size_t encoded_size(Slot) const override { return width_; }
  Bytes encode(Slot, const Payload& a) const override { return mpz_to_bytes(a.x, width_); }
  Payload decode(Slot, ByteView in) const override {
    if (in.size() != width_) throw DecodeError("mock element: wrong length");
    mpz_class v = mpz_from_bytes(in);
    if (v >= p_) throw DecodeError("mock element: exponent not reduced");
    return {v, 0, false};
  }

 private:
  Payload wrap(mpz_class v) const {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return {std::move(v), 0, false};
  }

  mpz_class p_;
  std::size_t width_;
};

}  // namespace

std::shared_ptr<const Group> make_mock_group(const mpz_class& p) {
  return std::make_shared<const MockGroup>(p);
}

}  // namespace lrcoin::bilinear
