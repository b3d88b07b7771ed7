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

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lrcoin/exec.hpp"
#include "lrcoin/lrsig.hpp"

// Sign-Leak game: every signing round runs the two halves of the signer
// separately and lets the adversary observe lambda bits from each half.
namespace lrcoin::leakage {

using lrsig::PublicKey;
using lrsig::SecretState;
using lrsig::Signature;

/// Leakage output, most significant bit first.
using Bits = std::vector<bool>;

/// What one half of the signer exposes to a leakage function. Step one sees
/// the active share and its coins; step two sees the passive share and the
/// transfer from step one (it draws no randomness of its own).
struct LeakageInput {
  ByteView secret;
  ByteView randomness;
  ByteView transfer;
};

class LeakageFn {
 public:
  using Callback = std::function<Bits(const LeakageInput&)>;

  /// The first n bits of the secret bytes.
  static LeakageFn prefix_bits(std::size_t n);
  /// secret || randomness || transfer, xor-folded into n bits.
  static LeakageFn xor_fold(std::size_t n);
  /// n bits of the secret starting at bit \p offset (zero past the end).
  static LeakageFn bit_window(std::size_t offset, std::size_t n);
  /// Arbitrary function; the oracle rejects it if the result length differs
  /// from \p declared_bits.
  static LeakageFn callback(std::size_t declared_bits, Callback fn);

  std::size_t declared_bits() const { return declared_; }
  Bits operator()(const LeakageInput& in) const { return fn_(in); }

 private:
  LeakageFn(std::size_t declared, Callback fn) : declared_(declared), fn_(std::move(fn)) {}

  std::size_t declared_;
  Callback fn_;
};

/// Bit \p i of \p b, most significant first; zero past the end.
bool bit_at(ByteView b, std::size_t i);
/// Packs bits MSB-first, zero padding the final byte.
Bytes pack_bits(const Bits& bits);

struct QueryRecord {
  Bytes message;
  Signature sig;
  Bits leak_f;  // from step one
  Bits leak_h;  // from step two
};

enum class Reason { valid_fresh_forgery, verify_failed, message_already_queried };
const char* to_string(Reason r);

struct ForgeryVerdict {
  bool b = false;
  Reason reason = Reason::verify_failed;
};

/// Whether h may be chosen after seeing the step-one leakage.
enum class Adaptivity { upfront, two_phase };

/// Thrown on use of a game that has ended or on a call sequence the game's
/// adaptivity mode does not allow.
class GameError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SignLeakGame {
 public:
  SignLeakGame(const bilinear::BilinearParams& params, std::size_t lambda, ChaChaRng rng,
               Adaptivity mode = Adaptivity::upfront);
  SignLeakGame(const bilinear::BilinearParams& params, std::size_t lambda, std::uint64_t seed,
               Adaptivity mode = Adaptivity::upfront);

  const PublicKey& public_key() const { return keys_.pk; }
  std::size_t lambda() const { return lambda_; }
  /// i: the index the next query will get, starting at 1.
  std::uint64_t counter() const { return counter_; }
  /// omega: every message queried so far.
  const std::set<Bytes>& queried() const { return queried_; }
  const std::vector<QueryRecord>& transcript() const { return transcript_; }
  bool finished() const { return finished_; }

  /// One signing round leaking f on step one and h on step two. Returns
  /// nullopt (bottom) and leaves the game untouched if either function does
  /// not produce exactly lambda bits.
  std::optional<QueryRecord> sign_leak(ByteView msg, const LeakageFn& f, const LeakageFn& h);

  // Two-phase rounds (Adaptivity::two_phase only). Nothing is committed
  // until finish_sign_leak succeeds; a bottom answer from either call
  // discards the pending round.
  std::optional<Bits> begin_sign_leak(ByteView msg, const LeakageFn& f);
  std::optional<QueryRecord> finish_sign_leak(const LeakageFn& h);

  /// Ends the game.
  ForgeryVerdict submit_forgery(ByteView msg, const Signature& sig);

  /// White-box access for tests and experiments.
  const SecretState& hidden_state() const { return keys_.sk; }

 private:
  struct Pending {
    Bytes message;
    SecretState sk;
    ChaChaRng rng;
    lrsig::TransferState transfer;
    Bits leak_f;
  };

  void require_open() const;
  std::optional<Pending> step_one(ByteView msg, const LeakageFn& f) const;
  std::optional<QueryRecord> step_two(Pending p, const LeakageFn& h);

  bilinear::BilinearParams params_;
  std::size_t lambda_;
  Adaptivity mode_;
  ChaChaRng rng_;
  lrsig::KeyPair keys_;
  std::uint64_t counter_ = 1;
  std::set<Bytes> queried_;
  std::vector<QueryRecord> transcript_;
  std::optional<Pending> pending_;
  bool finished_ = false;
};

enum class Variant { naive_monolithic, split_refresh };
const char* to_string(Variant v);

struct AttackReport {
  Variant variant = Variant::naive_monolithic;
  std::size_t lambda = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  /// Trials whose reconstructed key equals the hidden d (white-box check).
  std::uint64_t exact_reconstructions = 0;
  /// Split variant only: trials where the sum of the active and passive
  /// windows equals d. Carries between windows make this a coin flip per
  /// window boundary, so it is not negligible when there are few rounds.
  std::uint64_t combined_reconstructions = 0;
  double success_rate = 0.0;
  double mean_rounds = 0.0;
};

/// Window adversary: in round k it leaks bits [k·lambda, (k+1)·lambda) of
/// the secret, concatenates the windows into a guess for d, forges on a
/// fresh message with that guess and submits it. The naive variant keeps a
/// single unrefreshed scalar d and leaks it directly; the split variant
/// leaks the same windows of the real signer's active share (and of the
/// passive share through h). Runs over the 160-bit mock group.
AttackReport run_attack(Variant variant, std::size_t lambda, std::uint64_t trials,
                        std::uint64_t seed, Exec exec = Exec::parallel);

/// "variant,lambda,trials,success_rate,mean_rounds".
std::string csv_header();
std::string csv_row(const AttackReport& r);

}  // namespace lrcoin::leakage
