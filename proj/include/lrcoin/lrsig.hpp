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
#include <stdexcept>

#include "lrcoin/bilinear.hpp"
#include "lrcoin/bytes.hpp"
#include "lrcoin/random.hpp"

// Split-key, continually refreshed signature over a bilinear group.
//
//   keygen:  d, l0 <- Z_p;  S0 = l0·P1,  S0' = (d - l0)·P1,  Q = P_T^d
//   step 1:  l, t <- Z_p;   S_i = S_{i-1} + l·P1,  r = f(P_T^t),  h = H(m),
//            w = t·P1 + h·r·S_i
//   step 2:  S_i' = S_{i-1}' - l·P1,  s = w + h·r·S_i'
//   verify:  f(e(s, P2) · Q^{-h·r}) == r
//
// S_i + S_i' = d·P1 holds after every round while each share is re-randomized.
namespace lrcoin::lrsig {

using bilinear::BilinearParams;
using bilinear::G1Elem;
using bilinear::GTElem;
using bilinear::Scalar;

/// The two halves of a signer disagree on the round they are in.
class RoundMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PublicKey {
  BilinearParams params;
  GTElem q;

  /// params || Q.
  Bytes encode() const;
  static PublicKey decode(ByteView in, bilinear::MockRange range = bilinear::MockRange::toy);
  static PublicKey decode(ByteReader& in, bilinear::MockRange range = bilinear::MockRange::toy);

  friend bool operator==(const PublicKey& a, const PublicKey& b) {
    return a.params == b.params && a.q == b.q;
  }
};

/// S_i, the share read and rewritten by sign_step1.
struct ActiveShare {
  G1Elem share;
  std::uint64_t round = 0;
};

/// S_i', the share read and rewritten by sign_step2.
struct PassiveShare {
  G1Elem share;
  std::uint64_t round = 0;
};

struct SecretState {
  ActiveShare active;
  PassiveShare passive;
};

struct KeyPair {
  PublicKey pk;
  SecretState sk;
};

/// Fresh randomness of one sign_step1 call: the refresh scalar l and the
/// nonce t.
struct StepOneCoins {
  Scalar l;
  Scalar t;

  Bytes encode() const;
};

/// Everything sign_step1 hands to sign_step2. `delta` is l·P1, so the
/// passive half never sees the refresh scalar itself.
struct TransferState {
  G1Elem w;
  Scalar h;
  Scalar r;
  G1Elem delta;
  std::uint64_t round = 0;  // round of the active share before the update

  Bytes encode() const;
};

struct Signature {
  Scalar r;
  G1Elem s;

  /// tag || len16 || r || s.
  Bytes encode() const;
  static Signature decode(const BilinearParams& params, ByteView in);

  friend bool operator==(const Signature& a, const Signature& b) { return a.r == b.r && a.s == b.s; }
};

inline constexpr std::uint8_t kSignatureTag = 0x01;

/// Draws d then l0, resampling d = 0 and l0 in {0, d}. The scalar d is not
/// retained.
KeyPair keygen(const BilinearParams& params, RandomSource& rng);

/// Draws l then t, redrawing t while f(P_T^t) = 0.
StepOneCoins draw_step_one_coins(const BilinearParams& params, RandomSource& rng);

TransferState sign_step1(const BilinearParams& params, ActiveShare& active, ByteView msg,
                         const StepOneCoins& coins);
TransferState sign_step1(const BilinearParams& params, ActiveShare& active, ByteView msg,
                         RandomSource& rng);

/// Throws RoundMismatch if \p transfer was not produced in the passive share's
/// current round; the share is left untouched in that case.
Signature sign_step2(PassiveShare& passive, const TransferState& transfer);

Signature sign(const BilinearParams& params, SecretState& state, ByteView msg, RandomSource& rng);

/// Stateless. Signatures with r = 0 and operands from another group are
/// rejected.
bool verify(const PublicKey& pk, ByteView msg, const Signature& sig);
/// Malformed encodings verify as false.
bool verify(const PublicKey& pk, ByteView msg, ByteView sig_bytes);

/// e(S_i, P2) · e(S_i', P2) == Q.
bool shares_consistent(const PublicKey& pk, const SecretState& state);

// Secret share export. Each blob starts with kSecretWarningByte so tooling
// can refuse to print or upload it.
inline constexpr std::uint8_t kSecretWarningByte = 0xA5;

Bytes export_share(const BilinearParams& params, const ActiveShare& share);
Bytes export_share(const BilinearParams& params, const PassiveShare& share);
ActiveShare import_active_share(const BilinearParams& params, ByteView in);
PassiveShare import_passive_share(const BilinearParams& params, ByteView in);

}  // namespace lrcoin::lrsig
