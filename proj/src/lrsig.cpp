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

#include "lrcoin/lrsig.hpp"

namespace lrcoin::lrsig {

using bilinear::MockRange;

Bytes PublicKey::encode() const {
  ByteWriter w;
  w.raw(params.encode());
  w.raw(q.encode());
  return std::move(w).take();
}

PublicKey PublicKey::decode(ByteReader& in, MockRange range) {
  BilinearParams params = BilinearParams::decode(in, range);
  GTElem q = params.decode_gt(in.raw(params.element_size(bilinear::Slot::gt)));
  if (q.is_identity()) throw DecodeError("public key: Q is the identity");
  return {params, q};
}

PublicKey PublicKey::decode(ByteView in, MockRange range) {
  ByteReader r(in);
  PublicKey pk = decode(r, range);
  r.expect_done();
  return pk;
}

Bytes StepOneCoins::encode() const {
  Bytes out = l.encode();
  Bytes tb = t.encode();
  out.insert(out.end(), tb.begin(), tb.end());
  return out;
}

Bytes TransferState::encode() const {
  ByteWriter w;
  w.raw(this->w.encode());
  w.raw(h.encode());
  w.raw(r.encode());
  w.raw(delta.encode());
  w.u64(round);
  return std::move(w).take();
}

Bytes Signature::encode() const {
  ByteWriter w;
  w.u8(kSignatureTag);
  w.var16(r.encode());
  w.raw(s.encode());
  return std::move(w).take();
}

Signature Signature::decode(const BilinearParams& params, ByteView in) {
  ByteReader rd(in);
  if (rd.u8() != kSignatureTag) throw DecodeError("signature: bad tag");
  Scalar r = params.decode_scalar(rd.var16());
  G1Elem s = params.decode_g1(rd.raw(params.element_size(bilinear::Slot::g1)));
  rd.expect_done();
  return {r, s};
}

KeyPair keygen(const BilinearParams& params, RandomSource& rng) {
  Scalar d = params.random_scalar(rng);
  while (d.is_zero()) d = params.random_scalar(rng);
  Scalar l0 = params.random_scalar(rng);
  while (l0.is_zero() || l0 == d) l0 = params.random_scalar(rng);

  const G1Elem p1 = params.g1_gen();
  PublicKey pk{params, params.gt_gen().pow(d)};
  SecretState sk{ActiveShare{l0 * p1, 0}, PassiveShare{(d - l0) * p1, 0}};
  return {std::move(pk), std::move(sk)};
}

StepOneCoins draw_step_one_coins(const BilinearParams& params, RandomSource& rng) {
  Scalar l = params.random_scalar(rng);
  Scalar t = params.random_scalar(rng);
  while (params.reduce_f(params.gt_gen().pow(t)).is_zero()) t = params.random_scalar(rng);
  return {l, t};
}

TransferState sign_step1(const BilinearParams& params, ActiveShare& active, ByteView msg,
                         const StepOneCoins& coins) {
  const G1Elem p1 = params.g1_gen();
  Scalar r = params.reduce_f(params.gt_gen().pow(coins.t));
  if (r.is_zero()) throw std::invalid_argument("sign_step1: nonce maps to r = 0");
  Scalar h = params.hash_to_scalar(msg);
  G1Elem delta = coins.l * p1;
  G1Elem refreshed = active.share + delta;
  G1Elem w = coins.t * p1 + (h * r) * refreshed;

  TransferState out{w, h, r, delta, active.round};
  active.share = refreshed;
  active.round += 1;
  return out;
}

TransferState sign_step1(const BilinearParams& params, ActiveShare& active, ByteView msg,
                         RandomSource& rng) {
  return sign_step1(params, active, msg, draw_step_one_coins(params, rng));
}

Signature sign_step2(PassiveShare& passive, const TransferState& transfer) {
  if (transfer.round != passive.round)
    throw RoundMismatch("sign_step2: transfer from round " + std::to_string(transfer.round) +
                        " applied to passive share at round " + std::to_string(passive.round));
  G1Elem refreshed = passive.share - transfer.delta;
  G1Elem s = transfer.w + (transfer.h * transfer.r) * refreshed;
  passive.share = refreshed;
  passive.round += 1;
  return {transfer.r, s};
}

Signature sign(const BilinearParams& params, SecretState& state, ByteView msg, RandomSource& rng) {
  if (state.active.round != state.passive.round)
    throw RoundMismatch("sign: shares are at rounds " + std::to_string(state.active.round) +
                        " and " + std::to_string(state.passive.round));
  TransferState transfer = sign_step1(params, state.active, msg, rng);
  return sign_step2(state.passive, transfer);
}

bool verify(const PublicKey& pk, ByteView msg, const Signature& sig) {
  const BilinearParams& pp = pk.params;
  if (sig.r.is_zero()) return false;
  if (!sig.r.group().same_as(*pp.group()) || !sig.s.group().same_as(*pp.group())) return false;
  Scalar h = pp.hash_to_scalar(msg);
  GTElem rv = pair(sig.s, pp.g2_gen()) * pk.q.pow(-(h * sig.r));
  return pp.reduce_f(rv) == sig.r;
}

bool verify(const PublicKey& pk, ByteView msg, ByteView sig_bytes) {
  try {
    return verify(pk, msg, Signature::decode(pk.params, sig_bytes));
  } catch (const DecodeError&) {
    return false;
  }
}

bool shares_consistent(const PublicKey& pk, const SecretState& state) {
  const auto p2 = pk.params.g2_gen();
  return pair(state.active.share, p2) * pair(state.passive.share, p2) == pk.q;
}

namespace {

constexpr std::uint8_t kActiveKind = 'A';
constexpr std::uint8_t kPassiveKind = 'P';

Bytes export_impl(const BilinearParams& params, std::uint8_t kind, const G1Elem& share,
                  std::uint64_t round) {
  ByteWriter w;
  w.u8(kSecretWarningByte);
  w.u8(kind);
  w.raw(params.encode());
  w.u64(round);
  w.raw(share.encode());
  return std::move(w).take();
}

std::pair<G1Elem, std::uint64_t> import_impl(const BilinearParams& params, std::uint8_t kind,
                                             ByteView in) {
  ByteReader rd(in);
  if (rd.u8() != kSecretWarningByte) throw DecodeError("secret share: missing warning header");
  if (rd.u8() != kind) throw DecodeError("secret share: wrong share kind");
  if (!(BilinearParams::decode(rd, MockRange::wide) == params))
    throw DecodeError("secret share: parameter mismatch");
  std::uint64_t round = rd.u64();
  G1Elem share = params.decode_g1(rd.raw(params.element_size(bilinear::Slot::g1)));
  rd.expect_done();
  return {share, round};
}

}  // namespace

Bytes export_share(const BilinearParams& params, const ActiveShare& share) {
  return export_impl(params, kActiveKind, share.share, share.round);
}

Bytes export_share(const BilinearParams& params, const PassiveShare& share) {
  return export_impl(params, kPassiveKind, share.share, share.round);
}

ActiveShare import_active_share(const BilinearParams& params, ByteView in) {
  auto [share, round] = import_impl(params, kActiveKind, in);
  return {share, round};
}

PassiveShare import_passive_share(const BilinearParams& params, ByteView in) {
  auto [share, round] = import_impl(params, kPassiveKind, in);
  return {share, round};
}

}  // namespace lrcoin::lrsig
