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

#include <algorithm>
#include <sstream>

namespace lrcoin::leakage {

using bilinear::BilinearParams;
using bilinear::G1Elem;
using bilinear::Scalar;

bool bit_at(ByteView b, std::size_t i) {
  if (i / 8 >= b.size()) return false;
  return (b[i / 8] >> (7 - i % 8)) & 1;
}

Bytes pack_bits(const Bits& bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  return out;
}

LeakageFn LeakageFn::prefix_bits(std::size_t n) { return bit_window(0, n); }

LeakageFn LeakageFn::bit_window(std::size_t offset, std::size_t n) {
  return LeakageFn(n, [offset, n](const LeakageInput& in) {
    Bits out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = bit_at(in.secret, offset + i);
    return out;
  });
}

LeakageFn LeakageFn::xor_fold(std::size_t n) {
  return LeakageFn(n, [n](const LeakageInput& in) {
    Bits out(n, false);
    if (n == 0) return out;
    std::size_t k = 0;
    for (ByteView part : {in.secret, in.randomness, in.transfer}) {
      for (std::size_t i = 0; i < part.size() * 8; ++i, ++k) {
        if (bit_at(part, i)) out[k % n] = !out[k % n];
      }
    }
    return out;
  });
}

LeakageFn LeakageFn::callback(std::size_t declared_bits, Callback fn) {
  return LeakageFn(declared_bits, std::move(fn));
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::valid_fresh_forgery: return "valid-fresh-forgery";
    case Reason::verify_failed: return "verify-failed";
    case Reason::message_already_queried: return "message-already-queried";
  }
  return "?";
}

const char* to_string(Variant v) {
  return v == Variant::naive_monolithic ? "naive" : "split";
}

namespace {

lrsig::KeyPair keygen_from(const BilinearParams& params, const ChaChaRng& rng) {
  ChaChaRng keyrng = rng.derive("keygen");
  return lrsig::keygen(params, keyrng);
}

// Runs \p fn and returns its output only if it has exactly lambda bits.
std::optional<Bits> leak(const LeakageFn& fn, std::size_t lambda, const LeakageInput& in) {
  if (fn.declared_bits() != lambda) return std::nullopt;
  Bits out = fn(in);
  if (out.size() != lambda) return std::nullopt;
  return out;
}

}  // namespace

SignLeakGame::SignLeakGame(const BilinearParams& params, std::size_t lambda, ChaChaRng rng,
                           Adaptivity mode)
    : params_(params),
      lambda_(lambda),
      mode_(mode),
      rng_(rng.derive("signer")),
      keys_(keygen_from(params, rng)) {}

SignLeakGame::SignLeakGame(const BilinearParams& params, std::size_t lambda, std::uint64_t seed,
                           Adaptivity mode)
    : SignLeakGame(params, lambda, ChaChaRng(seed), mode) {}

void SignLeakGame::require_open() const {
  if (finished_) throw GameError("game already ended");
}

std::optional<SignLeakGame::Pending> SignLeakGame::step_one(ByteView msg,
                                                            const LeakageFn& f) const {
  SecretState sk = keys_.sk;
  ChaChaRng rng = rng_;
  lrsig::StepOneCoins coins = lrsig::draw_step_one_coins(params_, rng);
  const Bytes secret = sk.active.share.encode();
  const Bytes randomness = coins.encode();
  auto lf = leak(f, lambda_, {secret, randomness, {}});
  if (!lf) return std::nullopt;
  lrsig::TransferState transfer = lrsig::sign_step1(params_, sk.active, msg, coins);
  return Pending{Bytes(msg.begin(), msg.end()), std::move(sk), rng, std::move(transfer),
                 std::move(*lf)};
}

std::optional<QueryRecord> SignLeakGame::step_two(Pending p, const LeakageFn& h) {
  const Bytes secret = p.sk.passive.share.encode();
  const Bytes transfer = p.transfer.encode();
  auto lh = leak(h, lambda_, {secret, {}, transfer});
  if (!lh) return std::nullopt;
  Signature sig = lrsig::sign_step2(p.sk.passive, p.transfer);

  keys_.sk = std::move(p.sk);
  rng_ = p.rng;
  queried_.insert(p.message);
  transcript_.push_back({std::move(p.message), sig, std::move(p.leak_f), std::move(*lh)});
  counter_ += 1;
  return transcript_.back();
}

std::optional<QueryRecord> SignLeakGame::sign_leak(ByteView msg, const LeakageFn& f,
                                                   const LeakageFn& h) {
  require_open();
  if (mode_ != Adaptivity::upfront) throw GameError("game expects two-phase queries");
  auto p = step_one(msg, f);
  if (!p) return std::nullopt;
  return step_two(std::move(*p), h);
}

std::optional<Bits> SignLeakGame::begin_sign_leak(ByteView msg, const LeakageFn& f) {
  require_open();
  if (mode_ != Adaptivity::two_phase) throw GameError("game does not allow two-phase queries");
  if (pending_) throw GameError("previous round not finished");
  pending_ = step_one(msg, f);
  if (!pending_) return std::nullopt;
  return pending_->leak_f;
}

std::optional<QueryRecord> SignLeakGame::finish_sign_leak(const LeakageFn& h) {
  require_open();
  if (!pending_) throw GameError("no round in progress");
  Pending p = std::move(*pending_);
  pending_.reset();
  return step_two(std::move(p), h);
}

ForgeryVerdict SignLeakGame::submit_forgery(ByteView msg, const Signature& sig) {
  require_open();
  finished_ = true;
  pending_.reset();
  if (queried_.contains(Bytes(msg.begin(), msg.end())))
    return {false, Reason::message_already_queried};
  if (!lrsig::verify(keys_.pk, msg, sig)) return {false, Reason::verify_failed};
  return {true, Reason::valid_fresh_forgery};
}

namespace {

// Signs with a bare secret scalar d using the scheme's equations; this is
// what a signer without split shares computes, and what the adversary
// computes once it holds a guess for d.
Signature sign_with_scalar(const BilinearParams& params, const Scalar& d, ByteView msg,
                           const Scalar& t) {
  Scalar h = params.hash_to_scalar(msg);
  Scalar r = params.reduce_f(params.gt_gen().pow(t));
  return {r, t * params.g1_gen() + (h * r * d) * params.g1_gen()};
}

Scalar nonce(const BilinearParams& params, ChaChaRng& rng) {
  return lrsig::draw_step_one_coins(params, rng).t;
}

Scalar from_bits(const BilinearParams& params, const Bits& bits) {
  return params.scalar(bilinear::mpz_from_bytes(pack_bits(bits)));
}

void place(Bits& dst, const Bits& src, std::size_t offset) {
  for (std::size_t i = 0; i < src.size() && offset + i < dst.size(); ++i) dst[offset + i] = src[i];
}

Bytes round_message(std::size_t k) {
  std::string s = "leak round " + std::to_string(k);
  return Bytes(s.begin(), s.end());
}

struct TrialOutcome {
  bool success = false;
  bool exact = false;
  bool combined = false;
  std::size_t rounds = 0;
};

TrialOutcome naive_trial(const BilinearParams& params, std::size_t lambda, ChaChaRng rng) {
  const std::size_t width = params.scalar_size() * 8;
  const std::size_t rounds = lambda == 0 ? 0 : (width + lambda - 1) / lambda;

  Scalar d = params.random_scalar(rng);
  while (d.is_zero()) d = params.random_scalar(rng);
  const lrsig::PublicKey pk{params, params.gt_gen().pow(d)};
  const Bytes secret = d.encode();

  std::set<Bytes> queried;
  Bits guess(width, false);
  for (std::size_t k = 0; k < rounds; ++k) {
    Bytes msg = round_message(k);
    Scalar t = nonce(params, rng);
    sign_with_scalar(params, d, msg, t);
    const Bytes coins = t.encode();
    auto lf = leak(LeakageFn::bit_window(k * lambda, lambda), lambda, {secret, coins, {}});
    place(guess, *lf, k * lambda);
    queried.insert(std::move(msg));
  }

  Scalar d_hat = from_bits(params, guess);
  const Bytes target = round_message(rounds);
  Signature forged = sign_with_scalar(params, d_hat, target, nonce(params, rng));
  return {!queried.contains(target) && lrsig::verify(pk, target, forged), d_hat == d, false,
          rounds};
}

TrialOutcome split_trial(const BilinearParams& params, std::size_t lambda, ChaChaRng rng) {
  const std::size_t width = params.element_size(bilinear::Slot::g1) * 8;
  const std::size_t rounds = lambda == 0 ? 0 : (width + lambda - 1) / lambda;

  SignLeakGame game(params, lambda, rng.derive("game"));
  ChaChaRng adversary = rng.derive("adversary");
  Bits active(width, false), passive(width, false);
  for (std::size_t k = 0; k < rounds; ++k) {
    const LeakageFn window = LeakageFn::bit_window(k * lambda, lambda);
    auto rec = game.sign_leak(round_message(k), window, window);
    place(active, rec->leak_f, k * lambda);
    place(passive, rec->leak_h, k * lambda);
  }

  // In the mock group a G1 encoding is the discrete log itself, so the
  // concatenated windows read directly as share exponents.
  const Scalar d_hat = from_bits(params, active);
  const Scalar combined = d_hat + from_bits(params, passive);
  const SecretState& sk = game.hidden_state();
  const G1Elem d_p1 = sk.active.share + sk.passive.share;
  const bool exact = d_hat * params.g1_gen() == d_p1;
  const bool combined_exact = combined * params.g1_gen() == d_p1;
  const Bytes target = round_message(rounds);
  Signature forged = sign_with_scalar(params, d_hat, target, nonce(params, adversary));
  return {game.submit_forgery(target, forged).b, exact, combined_exact, rounds};
}

}  // namespace

AttackReport run_attack(Variant variant, std::size_t lambda, std::uint64_t trials,
                        std::uint64_t seed, Exec exec) {
  const BilinearParams params = BilinearParams::mock(bilinear::kWideMockPrime,
                                                     bilinear::MockRange::wide);
  const ChaChaRng root(seed);
  auto trial = [&](std::uint64_t i) {
    ChaChaRng rng = root.derive("trial", i);
    return variant == Variant::naive_monolithic ? naive_trial(params, lambda, rng)
                                                : split_trial(params, lambda, rng);
  };

  std::uint64_t successes = 0, exact = 0, combined = 0, rounds = 0;
  const auto n = static_cast<std::int64_t>(trials);
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      TrialOutcome o = trial(static_cast<std::uint64_t>(i));
      successes += o.success;
      exact += o.exact;
      combined += o.combined;
      rounds += o.rounds;
    }
  } else {
#pragma omp parallel for reduction(+ : successes, exact, combined, rounds) schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
      TrialOutcome o = trial(static_cast<std::uint64_t>(i));
      successes += o.success;
      exact += o.exact;
      combined += o.combined;
      rounds += o.rounds;
    }
  }

  AttackReport r;
  r.variant = variant;
  r.lambda = lambda;
  r.trials = trials;
  r.successes = successes;
  r.exact_reconstructions = exact;
  r.combined_reconstructions = combined;
  if (trials != 0) {
    r.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
    r.mean_rounds = static_cast<double>(rounds) / static_cast<double>(trials);
  }
  return r;
}

std::string csv_header() { return "variant,lambda,trials,success_rate,mean_rounds"; }

std::string csv_row(const AttackReport& r) {
  std::ostringstream out;
  out << to_string(r.variant) << ',' << r.lambda << ',' << r.trials << ',' << r.success_rate << ','
      << r.mean_rounds;
  return out.str();
}

}  // namespace lrcoin::leakage
