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

#include "lrcoin/leakage.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace lrcoin::leakage {
namespace {

using bilinear::BilinearParams;
using bilinear::MockRange;

BilinearParams toy() { return BilinearParams::mock(101); }
BilinearParams wide() { return BilinearParams::mock(bilinear::kWideMockPrime, MockRange::wide); }

Bytes msg(std::string_view s) { return Bytes(s.begin(), s.end()); }

bool contains(ByteView hay, ByteView needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

Bits bits_of(std::uint64_t v, std::size_t n) {
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (v >> (n - 1 - i)) & 1;
  return out;
}

TEST(LeakageFnTest, BuiltinsOnKnownBytes) {
  const Bytes secret{0x0f, 0xf0, 0x01};
  const Bytes coins{0x80};
  LeakageInput in{secret, coins, {}};
  EXPECT_EQ(LeakageFn::prefix_bits(8)(in), bits_of(0x0f, 8));
  EXPECT_EQ(LeakageFn::prefix_bits(12)(in), bits_of(0x0ff, 12));
  EXPECT_EQ(LeakageFn::bit_window(4, 8)(in), bits_of(0xff, 8));
  EXPECT_EQ(LeakageFn::bit_window(20, 8)(in), bits_of(0x10, 8));  // zero past the end
  // 0x0f ^ 0xf0 ^ 0x01 ^ 0x80
  EXPECT_EQ(LeakageFn::xor_fold(8)(in), bits_of(0x7e, 8));
  EXPECT_EQ(LeakageFn::xor_fold(0)(in).size(), 0u);
  EXPECT_EQ(pack_bits(bits_of(0x5, 3)), Bytes{0xa0});
}

TEST(SignLeakGameTest, PrefixLeakIsTopBitsOfActiveShare) {
  SignLeakGame game(toy(), 8, 42);
  for (int i = 0; i < 5; ++i) {
    const Bytes before = game.hidden_state().active.share.encode();
    auto rec = game.sign_leak(msg("m" + std::to_string(i)), LeakageFn::prefix_bits(8),
                              LeakageFn::prefix_bits(8));
    ASSERT_TRUE(rec.has_value());
    EXPECT_EQ(rec->leak_f, bits_of(before[0], 8));
  }
}

TEST(SignLeakGameTest, WrongLengthIsBottomAndLeavesGameUntouched) {
  SignLeakGame game(toy(), 8, 3), twin(toy(), 8, 3);
  const LeakageFn ok = LeakageFn::prefix_bits(8);
  const SecretState before = game.hidden_state();

  EXPECT_FALSE(game.sign_leak(msg("a"), LeakageFn::prefix_bits(9), ok));
  EXPECT_FALSE(game.sign_leak(msg("a"), ok, LeakageFn::xor_fold(7)));
  auto liar = LeakageFn::callback(8, [](const LeakageInput&) { return Bits(9, true); });
  EXPECT_FALSE(game.sign_leak(msg("a"), liar, ok));
  EXPECT_FALSE(game.sign_leak(msg("a"), ok, liar));

  EXPECT_EQ(game.counter(), 1u);
  EXPECT_TRUE(game.queried().empty());
  EXPECT_TRUE(game.transcript().empty());
  EXPECT_EQ(game.hidden_state().active.share, before.active.share);
  EXPECT_EQ(game.hidden_state().passive.share, before.passive.share);

  // The rejected attempts consumed no randomness either.
  auto a = game.sign_leak(msg("a"), ok, ok);
  auto b = twin.sign_leak(msg("a"), ok, ok);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->sig, b->sig);
}

TEST(SignLeakGameTest, HonestRoundsVerifyAndLeakExactlyTwoLambda) {
  for (std::size_t lambda : {0u, 1u, 8u, 32u}) {
    SignLeakGame game(toy(), lambda, 9);
    for (std::uint64_t i = 1; i <= 20; ++i) {
      Bytes m = msg("msg " + std::to_string(i % 7));
      EXPECT_EQ(game.counter(), i);
      auto rec = game.sign_leak(m, LeakageFn::xor_fold(lambda), LeakageFn::bit_window(3, lambda));
      ASSERT_TRUE(rec.has_value());
      EXPECT_TRUE(lrsig::verify(game.public_key(), m, rec->sig));
      EXPECT_EQ(rec->leak_f.size() + rec->leak_h.size(), 2 * lambda);
      EXPECT_TRUE(game.queried().contains(m));
      EXPECT_TRUE(lrsig::shares_consistent(game.public_key(), game.hidden_state()));
    }
    EXPECT_EQ(game.queried().size(), 7u);
    EXPECT_EQ(game.transcript().size(), 20u);
  }
}

TEST(SignLeakGameTest, SameSeedSameTranscript) {
  SignLeakGame a(wide(), 16, 5), b(wide(), 16, 5);
  EXPECT_EQ(a.public_key(), b.public_key());
  for (int i = 0; i < 5; ++i) {
    auto f = LeakageFn::bit_window(16 * i, 16);
    auto ra = a.sign_leak(msg("x"), f, f);
    auto rb = b.sign_leak(msg("x"), f, f);
    EXPECT_EQ(ra->sig, rb->sig);
    EXPECT_EQ(ra->leak_f, rb->leak_f);
    EXPECT_EQ(ra->leak_h, rb->leak_h);
  }
  SignLeakGame c(wide(), 16, 6);
  EXPECT_FALSE(c.public_key() == a.public_key());
}

TEST(SignLeakGameTest, LeakageViewsFollowTheSplit) {
  SignLeakGame game(wide(), 8, 77);
  Bytes f_secret, f_rand, f_transfer, h_secret, h_rand, h_transfer;
  auto f = LeakageFn::callback(8, [&](const LeakageInput& in) {
    f_secret.assign(in.secret.begin(), in.secret.end());
    f_rand.assign(in.randomness.begin(), in.randomness.end());
    f_transfer.assign(in.transfer.begin(), in.transfer.end());
    return Bits(8);
  });
  auto h = LeakageFn::callback(8, [&](const LeakageInput& in) {
    h_secret.assign(in.secret.begin(), in.secret.end());
    h_rand.assign(in.randomness.begin(), in.randomness.end());
    h_transfer.assign(in.transfer.begin(), in.transfer.end());
    return Bits(8);
  });
  for (int i = 0; i < 10; ++i) {
    const SecretState before = game.hidden_state();
    const Bytes active = before.active.share.encode();
    const Bytes passive = before.passive.share.encode();
    ASSERT_TRUE(game.sign_leak(msg("v" + std::to_string(i)), f, h));
    const Bytes active_after = game.hidden_state().active.share.encode();

    EXPECT_EQ(f_secret, active);
    EXPECT_TRUE(f_transfer.empty());
    for (const Bytes& part : {f_secret, f_rand}) EXPECT_FALSE(contains(part, passive));

    EXPECT_EQ(h_secret, passive);
    EXPECT_TRUE(h_rand.empty());
    for (const Bytes& s : {active, active_after}) {
      EXPECT_FALSE(contains(h_secret, s));
      EXPECT_FALSE(contains(h_transfer, s));
    }
  }
}

TEST(SignLeakGameTest, TwoPhaseRounds) {
  SignLeakGame game(toy(), 4, 8, Adaptivity::two_phase);
  SignLeakGame upfront(toy(), 4, 8);
  EXPECT_THROW(game.sign_leak(msg("a"), LeakageFn::prefix_bits(4), LeakageFn::prefix_bits(4)),
               GameError);
  EXPECT_THROW(upfront.begin_sign_leak(msg("a"), LeakageFn::prefix_bits(4)), GameError);
  EXPECT_THROW(game.finish_sign_leak(LeakageFn::prefix_bits(4)), GameError);

  auto lf = game.begin_sign_leak(msg("a"), LeakageFn::prefix_bits(4));
  ASSERT_TRUE(lf.has_value());
  EXPECT_THROW(game.begin_sign_leak(msg("b"), LeakageFn::prefix_bits(4)), GameError);
  // h picked after seeing the first leak; a bad length discards the round.
  EXPECT_FALSE(game.finish_sign_leak(LeakageFn::prefix_bits(5)));
  EXPECT_EQ(game.counter(), 1u);
  EXPECT_TRUE(game.queried().empty());

  ASSERT_TRUE(game.begin_sign_leak(msg("a"), LeakageFn::prefix_bits(4)));
  auto rec = game.finish_sign_leak(LeakageFn::bit_window((*lf)[0] ? 4 : 0, 4));
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->leak_f, *lf);
  EXPECT_TRUE(lrsig::verify(game.public_key(), msg("a"), rec->sig));

  // Same coins as the upfront game.
  auto ref = upfront.sign_leak(msg("a"), LeakageFn::prefix_bits(4), LeakageFn::prefix_bits(4));
  EXPECT_EQ(ref->sig, rec->sig);
}

TEST(ForgeryTest, ReplayIsRejected) {
  SignLeakGame game(toy(), 8, 1);
  auto rec = game.sign_leak(msg("pay 5"), LeakageFn::prefix_bits(8), LeakageFn::prefix_bits(8));
  ForgeryVerdict v = game.submit_forgery(msg("pay 5"), rec->sig);
  EXPECT_FALSE(v.b);
  EXPECT_EQ(v.reason, Reason::message_already_queried);
  EXPECT_TRUE(game.finished());
  EXPECT_THROW(game.submit_forgery(msg("x"), rec->sig), GameError);
  EXPECT_THROW(game.sign_leak(msg("x"), LeakageFn::prefix_bits(8), LeakageFn::prefix_bits(8)),
               GameError);
}

TEST(ForgeryTest, WhiteBoxForgeryWins) {
  SignLeakGame game(toy(), 8, 2);
  game.sign_leak(msg("a"), LeakageFn::prefix_bits(8), LeakageFn::prefix_bits(8));
  SecretState stolen = game.hidden_state();
  ChaChaRng rng(10);
  Signature sig = lrsig::sign(toy(), stolen, msg("b"), rng);
  ForgeryVerdict v = game.submit_forgery(msg("b"), sig);
  EXPECT_TRUE(v.b);
  EXPECT_EQ(v.reason, Reason::valid_fresh_forgery);
}

// A random (r, s) verifies with probability about 1/p: for each r exactly
// one s works.
TEST(ForgeryTest, RandomSignaturesFail) {
  struct Case {
    BilinearParams params;
    double p;
  };
  for (const Case& c : {Case{toy(), 101.0}, Case{wide(), 1.4615e48}}) {
    ChaChaRng rng(123);
    int wins = 0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
      SignLeakGame game(c.params, 0, rng.derive("game", i));
      Signature sig{c.params.random_scalar(rng), c.params.random_scalar(rng) * c.params.g1_gen()};
      ForgeryVerdict v = game.submit_forgery(msg("fresh"), sig);
      EXPECT_EQ(v.b, v.reason == Reason::valid_fresh_forgery);
      if (!v.b) EXPECT_EQ(v.reason, Reason::verify_failed);
      wins += v.b;
    }
    const double mean = n / c.p;
    EXPECT_LE(wins, mean + 3 * std::sqrt(mean) + 1e-9);
  }
}

TEST(AttackTest, NaiveSchemeFallsSplitSchemeHolds) {
  AttackReport naive = run_attack(Variant::naive_monolithic, 16, 100, 1);
  EXPECT_EQ(naive.success_rate, 1.0);
  EXPECT_EQ(naive.mean_rounds, 10.0);
  EXPECT_EQ(naive.exact_reconstructions, 100u);

  AttackReport split = run_attack(Variant::split_refresh, 16, 100, 1);
  EXPECT_EQ(split.success_rate, 0.0);
  EXPECT_EQ(split.mean_rounds, 10.0);
  EXPECT_EQ(split.exact_reconstructions, 0u);
}

TEST(AttackTest, ThresholdAndExtremes) {
  for (std::size_t lambda : {1u, 8u, 40u}) {
    EXPECT_EQ(run_attack(Variant::naive_monolithic, lambda, 5, 2).success_rate, 1.0);
    EXPECT_EQ(run_attack(Variant::split_refresh, lambda, 5, 2).exact_reconstructions, 0u);
  }
  AttackReport full = run_attack(Variant::naive_monolithic, 160, 10, 3);
  EXPECT_EQ(full.success_rate, 1.0);
  EXPECT_EQ(full.mean_rounds, 1.0);
  // With a single round there is no refresh between the two leaks, so adding
  // the halves recovers d; with several rounds carries usually spoil it.
  AttackReport one_round = run_attack(Variant::split_refresh, 160, 10, 3);
  EXPECT_EQ(one_round.combined_reconstructions, 10u);
  EXPECT_EQ(one_round.exact_reconstructions, 0u);
  EXPECT_EQ(one_round.success_rate, 0.0);
  AttackReport none = run_attack(Variant::naive_monolithic, 0, 10, 3);
  EXPECT_EQ(none.success_rate, 0.0);
  EXPECT_EQ(none.mean_rounds, 0.0);
  EXPECT_EQ(run_attack(Variant::split_refresh, 0, 10, 3).success_rate, 0.0);
}

TEST(AttackTest, SerialMatchesParallel) {
  for (Variant v : {Variant::naive_monolithic, Variant::split_refresh}) {
    AttackReport a = run_attack(v, 16, 20, 9, Exec::serial);
    AttackReport b = run_attack(v, 16, 20, 9, Exec::parallel);
    EXPECT_EQ(a.successes, b.successes);
    EXPECT_EQ(a.exact_reconstructions, b.exact_reconstructions);
    EXPECT_EQ(csv_row(a), csv_row(b));
  }
  EXPECT_EQ(csv_row(run_attack(Variant::naive_monolithic, 16, 4, 1)), "naive,16,4,1,10");
  EXPECT_EQ(csv_header(), "variant,lambda,trials,success_rate,mean_rounds");
}

}  // namespace
}  // namespace lrcoin::leakage
