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

namespace {

// q = cofactor * r - 1, q = 3 (mod 4); both prime.
constexpr const char* kFieldHex =
    "7c614d33d360f10ddcb2f98cfbb4e5330e59733670e14d044c3aef13152b5f9e"
    "f32787b44fe60ee252fa3e66f24d44db30fa102e60bc14dd6da2a54b59bd1e03";
constexpr const char* kOrderHex = "a7ba3c5cfc92f91a3586b65e651b915bf831515b";
constexpr const char* kCofactorHex =
    "bdd6e97452305271696d9498551359c2e2346aaed3bcebb661b63af57389efc9"
    "bdd6e97452305271696d954c";

constexpr std::size_t kFieldBytes = 64;

// a + b*i with i^2 = -1.
struct Fq2 {
  mpz_class a;
  mpz_class b;
};

// Jacobian coordinates; z == 0 is the point at infinity.
struct Jacobian {
  mpz_class x, y, z;
};

class CurveGroup final : public Group {
 public:
  CurveGroup()
      : q_(kFieldHex, 16), r_(kOrderHex, 16), cofactor_(kCofactorHex, 16), sqrt_exp_((q_ + 1) / 4) {
    g1_ = hash_to_subgroup("lrcoin/curve/P1");
    g2_ = hash_to_subgroup("lrcoin/curve/P2");
    gt_ = pair(g1_, g2_);
  }

  BackendId id() const override { return BackendId::curve; }
  const mpz_class& order() const override { return r_; }

  Payload identity(Slot s) const override {
    if (s == Slot::gt) return {mpz_class(1), mpz_class(0), false};
    return {0, 0, true};
  }

  Payload generator(Slot s) const override {
    switch (s) {
      case Slot::g1: return g1_;
      case Slot::g2: return g2_;
      case Slot::gt: return gt_;
    }
    return {};
  }

  Payload op(Slot s, const Payload& a, const Payload& b) const override {
    if (s == Slot::gt) return from_fq2(mul(to_fq2(a), to_fq2(b)));
    if (a.infinity) return b;
    if (b.infinity) return a;
    Jacobian j = to_jacobian(a);
    add_affine(j, b.x, b.y);
    return to_affine(j);
  }

  Payload inverse(Slot s, const Payload& a) const override {
    if (s == Slot::gt) return from_fq2(conj(to_fq2(a)));  // GT elements are unitary
    if (a.infinity) return a;
    Payload out = a;
    out.y = mod(q_ - a.y);
    return out;
  }

  Payload exp(Slot s, const mpz_class& k, const Payload& a) const override {
    mpz_class e = k % r_;
    if (e < 0) e += r_;
    if (s == Slot::gt) return from_fq2(pow(to_fq2(a), e));
    return scalar_mul(e, a);
  }

  Payload pair(const Payload& p, const Payload& q) const override {
    if (p.infinity || q.infinity) return identity(Slot::gt);
    return from_fq2(final_exponentiation(miller(p, q)));
  }

  mpz_class reduce(const Payload& gt) const override {
    return mpz_from_bytes(encode(Slot::gt, gt)) % r_;
  }

  std::size_t encoded_size(Slot s) const override {
    return s == Slot::gt ? 2 * kFieldBytes : 1 + kFieldBytes;
  }

  Bytes encode(Slot s, const Payload& a) const override {
    if (s == Slot::gt) {
      Bytes out = mpz_to_bytes(a.x, kFieldBytes);
      Bytes hi = mpz_to_bytes(a.y, kFieldBytes);
      out.insert(out.end(), hi.begin(), hi.end());
      return out;
    }
    // Compressed: 0x00 || zeros for infinity, else (0x02 | parity(y)) || x.
    if (a.infinity) return Bytes(1 + kFieldBytes, 0);
    Bytes out{static_cast<std::uint8_t>(0x02 | mpz_odd_p(a.y.get_mpz_t()))};
    Bytes x = mpz_to_bytes(a.x, kFieldBytes);
    out.insert(out.end(), x.begin(), x.end());
    return out;
  }

  Payload decode(Slot s, ByteView in) const override {
    if (in.size() != encoded_size(s)) throw DecodeError("curve element: wrong length");
    if (s == Slot::gt) {
      Fq2 v{mpz_from_bytes(in.first(kFieldBytes)), mpz_from_bytes(in.subspan(kFieldBytes))};
      if (v.a >= q_ || v.b >= q_) throw DecodeError("GT element: coefficient not reduced");
      Fq2 check = pow(v, r_);
      if (check.a != 1 || check.b != 0) throw DecodeError("GT element: not in the order-r subgroup");
      return from_fq2(v);
    }
    const std::uint8_t tag = in[0];
    mpz_class x = mpz_from_bytes(in.subspan(1));
    if (tag == 0x00) {
      if (x != 0) throw DecodeError("curve point: malformed infinity");
      return identity(s);
    }
    if (tag != 0x02 && tag != 0x03) throw DecodeError("curve point: bad tag");
    if (x >= q_) throw DecodeError("curve point: x not reduced");
    auto y = sqrt_rhs(x);
    if (!y) throw DecodeError("curve point: x not on curve");
    if (static_cast<int>(mpz_odd_p(y->get_mpz_t())) != (tag & 1)) *y = mod(q_ - *y);
    Payload p{x, *y, false};
    if (!scalar_mul(r_, p).infinity) throw DecodeError("curve point: not in the order-r subgroup");
    return p;
  }

 private:
  mpz_class mod(mpz_class v) const {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
    return v;
  }

  mpz_class inv(const mpz_class& v) const {
    mpz_class out;
    if (mpz_invert(out.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t()) == 0)
      throw std::domain_error("curve: inverse of zero");
    return out;
  }

  // --- F_{q^2} ---------------------------------------------------------------

  static Payload from_fq2(Fq2 v) { return {std::move(v.a), std::move(v.b), false}; }
  static Fq2 to_fq2(const Payload& p) { return {p.x, p.y}; }

  Fq2 mul(const Fq2& u, const Fq2& v) const {
    mpz_class ac = u.a * v.a;
    mpz_class bd = u.b * v.b;
    mpz_class cross = (u.a + u.b) * (v.a + v.b) - ac - bd;
    return {mod(ac - bd), mod(cross)};
  }

  Fq2 sqr(const Fq2& u) const { return {mod((u.a + u.b) * (u.a - u.b)), mod(2 * u.a * u.b)}; }

  Fq2 conj(const Fq2& u) const { return {u.a, mod(q_ - u.b)}; }

  Fq2 pow(const Fq2& base, const mpz_class& e) const {
    Fq2 acc{1, 0};
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
      acc = sqr(acc);
      if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, base);
    }
    return acc;
  }

  // --- curve arithmetic ----------------------------------------------------

  std::optional<mpz_class> sqrt_rhs(const mpz_class& x) const {
    mpz_class rhs = mod(x * x * x + x);
    mpz_class y;
    mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), sqrt_exp_.get_mpz_t(), q_.get_mpz_t());
    if (mod(y * y) != rhs) return std::nullopt;
    return y;
  }

  static Jacobian to_jacobian(const Payload& a) {
    if (a.infinity) return {1, 1, 0};
    return {a.x, a.y, 1};
  }

  Payload to_affine(const Jacobian& j) const {
    if (j.z == 0) return {0, 0, true};
    mpz_class zi = inv(j.z);
    mpz_class zi2 = mod(zi * zi);
    return {mod(j.x * zi2), mod(j.y * zi2 * zi), false};
  }

  void dbl(Jacobian& p) const {
    if (p.z == 0) return;
    if (p.y == 0) {
      p.z = 0;
      return;
    }
    mpz_class yy = mod(p.y * p.y);
    mpz_class s = mod(4 * p.x * yy);
    mpz_class zz = mod(p.z * p.z);
    mpz_class m = mod(3 * p.x * p.x + zz * zz);  // curve coefficient a = 1
    mpz_class x3 = mod(m * m - 2 * s);
    mpz_class y3 = mod(m * (s - x3) - 8 * yy * yy);
    p.z = mod(2 * p.y * p.z);
    p.x = std::move(x3);
    p.y = std::move(y3);
  }

  void add_affine(Jacobian& p, const mpz_class& x2, const mpz_class& y2) const {
    if (p.z == 0) {
      p = {x2, y2, 1};
      return;
    }
    mpz_class z1z1 = mod(p.z * p.z);
    mpz_class u2 = mod(x2 * z1z1);
    mpz_class s2 = mod(y2 * p.z * z1z1);
    mpz_class h = mod(u2 - p.x);
    mpz_class rr = mod(s2 - p.y);
    if (h == 0) {
      if (rr == 0) {
        dbl(p);
      } else {
        p.z = 0;
      }
      return;
    }
    mpz_class hh = mod(h * h);
    mpz_class hhh = mod(h * hh);
    mpz_class v = mod(p.x * hh);
    mpz_class x3 = mod(rr * rr - hhh - 2 * v);
    mpz_class y3 = mod(rr * (v - x3) - p.y * hhh);
    p.z = mod(p.z * h);
    p.x = std::move(x3);
    p.y = std::move(y3);
  }

  // k is not reduced: also used for cofactor clearing and subgroup checks.
  Payload scalar_mul(const mpz_class& k, const Payload& a) const {
    if (a.infinity || k == 0) return {0, 0, true};
    Jacobian acc{1, 1, 0};
    for (long i = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; i >= 0; --i) {
      dbl(acc);
      if (mpz_tstbit(k.get_mpz_t(), i)) add_affine(acc, a.x, a.y);
    }
    return to_affine(acc);
  }

  Payload hash_to_subgroup(const std::string& label) const {
    for (std::uint32_t ctr = 0;; ++ctr) {
      ByteWriter w;
      w.var16(as_bytes(label));
      w.u32(ctr);
      Digest lo = sha256({w.bytes(), as_bytes("lo")});
      Digest hi = sha256({w.bytes(), as_bytes("hi")});
      Bytes wide(hi.begin(), hi.end());
      wide.insert(wide.end(), lo.begin(), lo.end());
      mpz_class x = mod(mpz_from_bytes(wide));
      auto y = sqrt_rhs(x);
      if (!y) continue;
      Payload p = scalar_mul(cofactor_, Payload{x, *y, false});
      if (!p.infinity) return p;
    }
  }

  // --- pairing ---------------------------------------------------------------

  // Miller loop for f_{r,P} evaluated at psi(Q) = (-x_Q, i*y_Q). Vertical
  // lines take values in F_q and vanish under the final exponentiation, so
  // they are skipped.
  Fq2 miller(const Payload& p, const Payload& q) const {
    Fq2 f{1, 0};
    mpz_class xt = p.x;
    mpz_class yt = p.y;
    const mpz_class& xq = q.x;
    const mpz_class& yq = q.y;
    for (long i = static_cast<long>(mpz_sizeinbase(r_.get_mpz_t(), 2)) - 2; i >= 0; --i) {
      mpz_class lambda = mod((3 * xt * xt + 1) * inv(mod(2 * yt)));
      f = mul(sqr(f), Fq2{mod(lambda * (xq + xt) - yt), yq});
      mpz_class x3 = mod(lambda * lambda - 2 * xt);
      yt = mod(lambda * (xt - x3) - yt);
      xt = std::move(x3);
      if (mpz_tstbit(r_.get_mpz_t(), i)) {
        if (xt == p.x) break;  // T = -P: vertical line, T + P = O ends the loop
        lambda = mod((p.y - yt) * inv(mod(p.x - xt)));
        f = mul(f, Fq2{mod(lambda * (xq + xt) - yt), yq});
        x3 = mod(lambda * lambda - xt - p.x);
        yt = mod(lambda * (xt - x3) - yt);
        xt = std::move(x3);
      }
    }
    return f;
  }

  // f^((q^2 - 1) / r) = (conj(f) / f)^((q + 1) / r).
  Fq2 final_exponentiation(const Fq2& f) const {
    mpz_class norm = mod(f.a * f.a + f.b * f.b);
    Fq2 c = sqr(conj(f));
    mpz_class ni = inv(norm);
    Fq2 unitary{mod(c.a * ni), mod(c.b * ni)};
    return pow(unitary, cofactor_);
  }

  mpz_class q_;
  mpz_class r_;
  mpz_class cofactor_;
  mpz_class sqrt_exp_;
  Payload g1_, g2_, gt_;
};

}  // namespace

std::shared_ptr<const Group> curve_group() {
  static const std::shared_ptr<const Group> instance = std::make_shared<const CurveGroup>();
  return instance;
}

}  // namespace lrcoin::bilinear
