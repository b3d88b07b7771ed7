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

#include <gtest/gtest.h>

#include <set>
#include <string>

namespace lrcoin::lrsig {
namespace {

using bilinear::BackendId;
using bilinear::MockRange;
using bilinear::SecurityLevel;

const mpz_class kWidePrime("1461501637330902918203684832716283019655932542929");  // 2^160 - 47

BilinearParams toy() { return BilinearParams::setup(SecurityLevel::toy, BackendId::mock, 1); }
BilinearParams with_constant_hash(const BilinearParams& pp, long h) {
  return pp.with_hash([h](ByteView) { return mpz_class(h); });
}
long exponent(const bilinear::detail::Handle& e) { return e.payload().x.get_si(); }

// p = 101, d = 7, l0 = 3, l1 = 2, t1 = 5, H(m) = 2, f = identity on exponents.
TEST(LrsigVectorTest, KeygenStepOneStepTwoVerify) {
  BilinearParams pp = with_constant_hash(toy(), 2);
  ForcedScalars keys{7, 3};
  KeyPair kp = keygen(pp, keys);
  EXPECT_EQ(exponent(kp.sk.active.share), 3);
  EXPECT_EQ(exponent(kp.sk.passive.share), 4);
  EXPECT_EQ(exponent(kp.pk.q), 7);

  ForcedScalars coins{2, 5};
  TransferState tr = sign_step1(pp, kp.sk.active, as_bytes("m"), coins);
  EXPECT_EQ(exponent(kp.sk.active.share), 5);
  EXPECT_EQ(tr.r.value(), 5);
  EXPECT_EQ(exponent(tr.w), 55);  // 5 + 2·5·5

  Signature sig = sign_step2(kp.sk.passive, tr);
  EXPECT_EQ(exponent(kp.sk.passive.share), 2);
  EXPECT_EQ(sig.r.value(), 5);
  EXPECT_EQ(exponent(sig.s), 75);  // 55 + 2·5·2 == 5 + 2·5·7
  EXPECT_TRUE(shares_consistent(kp.pk, kp.sk));

  EXPECT_TRUE(verify(kp.pk, as_bytes("m"), sig));
  // H(m) = 3: R_v exponent 75 - 3·5·7 = -30 = 71 (mod 101) != 5.
  PublicKey pk3{with_constant_hash(toy(), 3), kp.pk.q};
  EXPECT_FALSE(verify(pk3, as_bytes("m"), sig));
}

TEST(LrsigVectorTest, VerifyRejectsZeroR) {
  BilinearParams pp = with_constant_hash(toy(), 2);
  ForcedScalars keys{7, 3};
  KeyPair kp = keygen(pp, keys);
  // With r = 0 the equation f(e(s,P2)) == 0 holds for s = 0; still rejected.
  Signature sig{pp.scalar(0), pp.g1_identity()};
  EXPECT_FALSE(verify(kp.pk, as_bytes("m"), sig));
}

TEST(KeygenTest, ResamplesDegenerateScalars) {
  BilinearParams pp = toy();
  ForcedScalars keys{0, 7, 0, 7, 3};  // d = 0 rejected; l0 = 0 and l0 = d rejected
  KeyPair kp = keygen(pp, keys);
  EXPECT_EQ(keys.pending(), 0u);
  EXPECT_EQ(exponent(kp.pk.q), 7);
  EXPECT_EQ(exponent(kp.sk.active.share), 3);
  EXPECT_EQ(kp.sk.active.round, 0u);
  EXPECT_EQ(kp.sk.passive.round, 0u);
  EXPECT_TRUE(shares_consistent(kp.pk, kp.sk));
}

TEST(SignStepOneTest, ResamplesNonceWhenRIsZero) {
  BilinearParams pp = with_constant_hash(toy(), 2);
  ForcedScalars keys{7, 3};
  KeyPair kp = keygen(pp, keys);
  ForcedScalars coins{2, 0, 5};
  TransferState tr = sign_step1(pp, kp.sk.active, as_bytes("m"), coins);
  EXPECT_EQ(coins.pending(), 0u);
  EXPECT_EQ(tr.r.value(), 5);
  EXPECT_THROW(sign_step1(pp, kp.sk.active, as_bytes("m"), StepOneCoins{pp.scalar(1), pp.scalar(0)}),
               std::invalid_argument);
}

TEST(SignStepOneTest, DifferentSeedsGiveDifferentTransfers) {
  BilinearParams pp = BilinearParams::mock(kWidePrime, MockRange::wide);
  ChaChaRng key_rng(1);
  KeyPair kp = keygen(pp, key_rng);
  ActiveShare a1 = kp.sk.active, a2 = kp.sk.active;
  ChaChaRng s1(10), s2(20);
  TransferState t1 = sign_step1(pp, a1, as_bytes("same"), s1);
  TransferState t2 = sign_step1(pp, a2, as_bytes("same"), s2);
  EXPECT_NE(t1.r, t2.r);
  EXPECT_NE(t1.w, t2.w);
  EXPECT_EQ(t1.h, t2.h);
}

TEST(SignStepTwoTest, RejectsTransferFromAnotherRound) {
  BilinearParams pp = toy();
  ChaChaRng rng(3);
  KeyPair kp = keygen(pp, rng);
  TransferState first = sign_step1(pp, kp.sk.active, as_bytes("a"), rng);
  sign_step2(kp.sk.passive, first);
  PassiveShare before = kp.sk.passive;
  EXPECT_THROW(sign_step2(kp.sk.passive, first), RoundMismatch);
  EXPECT_EQ(kp.sk.passive.share, before.share);
  EXPECT_EQ(kp.sk.passive.round, before.round);

  SecretState desynced = kp.sk;
  desynced.active.round += 1;
  EXPECT_THROW(sign(pp, desynced, as_bytes("b"), rng), RoundMismatch);
}

TEST(SignTest, CorrectnessRoundsAndFreshSignatures) {
  BilinearParams pp = BilinearParams::mock(kWidePrime, MockRange::wide);
  ChaChaRng rng(4);
  KeyPair kp = keygen(pp, rng);
  Signature a = sign(pp, kp.sk, as_bytes("msg"), rng);
  EXPECT_EQ(kp.sk.active.round, 1u);
  EXPECT_EQ(kp.sk.passive.round, 1u);
  Signature b = sign(pp, kp.sk, as_bytes("msg"), rng);
  EXPECT_EQ(kp.sk.passive.round, 2u);
  EXPECT_TRUE(verify(kp.pk, as_bytes("msg"), a));
  EXPECT_TRUE(verify(kp.pk, as_bytes("msg"), b));
  EXPECT_FALSE(a == b);
  EXPECT_FALSE(verify(kp.pk, as_bytes("msG"), a));
}

// Independent oracle: for every (d, l0, l, t, h) the signature exponent is
// t + h·r·d (mod p) with r = t on the mock backend.
TEST(ClosedFormTest, RandomTuplesAtToyPrime) {
  const long p = 101;
  ChaChaRng gen(77);
  for (int i = 0; i < 2000; ++i) {
    long d = 1 + static_cast<long>(gen.below_u64(p - 1));
    long l0 = 0;
    while (l0 == 0 || l0 == d) l0 = static_cast<long>(gen.below_u64(p));
    long l = static_cast<long>(gen.below_u64(p));
    long t = 1 + static_cast<long>(gen.below_u64(p - 1));
    long h = static_cast<long>(gen.below_u64(p));
    BilinearParams pp = with_constant_hash(toy(), h);
    ForcedScalars keys{d, l0};
    KeyPair kp = keygen(pp, keys);
    ForcedScalars coins{l, t};
    Signature sig = sign(pp, kp.sk, as_bytes("x"), coins);
    ASSERT_EQ(exponent(sig.s), (t + h * t % p * d) % p) << d << ' ' << l0 << ' ' << l << ' ' << t;
    ASSERT_EQ(exponent(kp.sk.active.share), (l0 + l) % p);
    ASSERT_EQ(exponent(kp.sk.passive.share), ((d - l0 - l) % p + 2 * p) % p);
  }
}

// At p = 101 exactly one s passes for each nonzero r, namely s = r·(1 + h·d).
TEST(SoundnessTest, ExhaustiveToyAcceptanceSet) {
  BilinearParams pp = with_constant_hash(toy(), 9);
  ForcedScalars keys{7, 3};
  KeyPair kp = keygen(pp, keys);
  int accepted = 0;
  for (long r = 0; r < 101; ++r) {
    for (long s = 0; s < 101; ++s) {
      Signature sig{pp.scalar(r), pp.scalar(s) * pp.g1_gen()};
      bool expect = r != 0 && s == r * (1 + 9 * 7) % 101;
      ASSERT_EQ(verify(kp.pk, as_bytes("m"), sig), expect) << r << ' ' << s;
      accepted += expect;
    }
  }
  EXPECT_EQ(accepted, 100);
}

TEST(SoundnessTest, SingleBitFlipsRejectedAtWidePrime) {
  BilinearParams pp = BilinearParams::mock(kWidePrime, MockRange::wide);
  ChaChaRng rng(8);
  int trials = 10000, rejected = 0;
  for (int i = 0; i < trials; ++i) {
    KeyPair kp = keygen(pp, rng);
    Bytes msg(1 + rng.below_u64(24));
    rng.fill(msg);
    Bytes sig = sign(pp, kp.sk, msg, rng).encode();
    Bytes blob = msg;
    blob.insert(blob.end(), sig.begin(), sig.end());
    std::size_t bit = rng.below_u64(blob.size() * 8);
    blob[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    ByteView m(blob.data(), msg.size());
    ByteView s(blob.data() + msg.size(), sig.size());
    rejected += !verify(kp.pk, m, s);
  }
  EXPECT_GE(rejected, trials * 999 / 1000);
}

TEST(RefreshTest, SharesArePairwiseDistinct) {
  // Toy prime: distinctness rate of S_0..S_5 must be at least 1 - n^2/p.
  BilinearParams pp = toy();
  ChaChaRng rng(12);
  const int n = 5, trials = 2000;
  int distinct = 0;
  for (int i = 0; i < trials; ++i) {
    KeyPair kp = keygen(pp, rng);
    std::set<std::string> seen{to_hex(kp.sk.active.share.encode())};
    for (int k = 0; k < n; ++k) {
      sign(pp, kp.sk, as_bytes("m"), rng);
      seen.insert(to_hex(kp.sk.active.share.encode()));
    }
    distinct += seen.size() == n + 1;
  }
  EXPECT_GE(static_cast<double>(distinct) / trials, 1.0 - double(n * n) / 101.0);

  BilinearParams wide = BilinearParams::mock(kWidePrime, MockRange::wide);
  KeyPair kp = keygen(wide, rng);
  std::set<std::string> seen{to_hex(kp.sk.active.share.encode())};
  for (int k = 0; k < 50; ++k) {
    sign(wide, kp.sk, as_bytes("m"), rng);
    EXPECT_TRUE(seen.insert(to_hex(kp.sk.active.share.encode())).second);
    EXPECT_TRUE(shares_consistent(kp.pk, kp.sk));
  }
}

TEST(CurveBackendTest, SignVerifyRoundTrips) {
  BilinearParams pp = BilinearParams::curve();
  ChaChaRng rng(21);
  KeyPair kp = keygen(pp, rng);
  for (int i = 0; i < 5; ++i) {
    std::string msg = "curve message " + std::to_string(i);
    Signature sig = sign(pp, kp.sk, as_bytes(msg), rng);
    EXPECT_TRUE(verify(kp.pk, as_bytes(msg), sig));
    EXPECT_TRUE(verify(kp.pk, as_bytes(msg), sig.encode()));
    EXPECT_FALSE(verify(kp.pk, as_bytes(msg + "!"), sig));
    Bytes flipped = sig.encode();
    flipped[3] ^= 0x10;
    EXPECT_FALSE(verify(kp.pk, as_bytes(msg), flipped));
  }
  EXPECT_TRUE(shares_consistent(kp.pk, kp.sk));
  EXPECT_EQ(PublicKey::decode(kp.pk.encode()), kp.pk);
}

TEST(EncodingTest, SignatureAndKeyFormats) {
  BilinearParams pp = toy();
  ChaChaRng rng(30);
  KeyPair kp = keygen(pp, rng);
  Signature sig = sign(pp, kp.sk, as_bytes("m"), rng);
  Bytes enc = sig.encode();
  ASSERT_EQ(enc.size(), 1u + 2u + 1u + 4u);
  EXPECT_EQ(enc[0], kSignatureTag);
  EXPECT_EQ(enc[1], 0);
  EXPECT_EQ(enc[2], 1);
  EXPECT_EQ(Signature::decode(pp, enc), sig);

  Bytes bad = enc;
  bad[0] = 0x02;
  EXPECT_THROW(Signature::decode(pp, bad), DecodeError);
  Bytes trailing = enc;
  trailing.push_back(0);
  EXPECT_THROW(Signature::decode(pp, trailing), DecodeError);
  EXPECT_FALSE(verify(kp.pk, as_bytes("m"), ByteView(trailing)));
  EXPECT_FALSE(verify(kp.pk, as_bytes("m"), ByteView(enc).first(5)));

  Bytes pk = kp.pk.encode();
  EXPECT_EQ(PublicKey::decode(pk), kp.pk);
  Bytes identity_q = pk;
  std::fill(identity_q.end() - 4, identity_q.end(), 0);
  EXPECT_THROW(PublicKey::decode(identity_q), DecodeError);
}

TEST(EncodingTest, SecretShareExport) {
  BilinearParams pp = toy();
  ChaChaRng rng(31);
  KeyPair kp = keygen(pp, rng);
  sign(pp, kp.sk, as_bytes("m"), rng);
  Bytes a = export_share(pp, kp.sk.active);
  Bytes b = export_share(pp, kp.sk.passive);
  EXPECT_EQ(a[0], kSecretWarningByte);
  ActiveShare ia = import_active_share(pp, a);
  PassiveShare ib = import_passive_share(pp, b);
  EXPECT_EQ(ia.share, kp.sk.active.share);
  EXPECT_EQ(ia.round, 1u);
  EXPECT_EQ(ib.share, kp.sk.passive.share);
  EXPECT_THROW(import_passive_share(pp, a), DecodeError);
  EXPECT_THROW(import_active_share(BilinearParams::mock(mpz_class(103)), a), DecodeError);
}

}  // namespace
}  // namespace lrcoin::lrsig
