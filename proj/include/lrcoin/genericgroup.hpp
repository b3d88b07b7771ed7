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
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lrcoin/bilinear_backend.hpp"
#include "lrcoin/exec.hpp"
#include "lrcoin/random.hpp"

// Generic bilinear group simulator. Elements of G1, G2 and GT are handed out
// as random fixed-length bit strings; the only way to compute on them is
// through the oracles, which record every input and output so that each
// string can be written as a combination of the independent inputs seen so
// far.
namespace lrcoin::genericgroup {

using bilinear::Slot;

/// A representation: the low rep_bits() bits of the integer.
using Rep = std::uint64_t;

/// Basis key of a combination. In G1/G2 it is the index of an independent
/// input; in GT it is either the index of an independent GT input or a
/// pairing monomial (G1 index, G2 index) tagged with kMonomialBit.
using BasisKey = std::uint64_t;
inline constexpr BasisKey kMonomialBit = 1ull << 63;
inline constexpr BasisKey monomial(std::uint64_t j1, std::uint64_t j2) {
  return kMonomialBit | (j1 << 31) | j2;
}

/// Sparse integer vector mod p, sorted by key, zero coefficients dropped.
using Combination = std::vector<std::pair<BasisKey, std::uint64_t>>;

struct TableEntry {
  Rep rep;
  Combination combination;
};

/// Largest modulus accepted (representations must fit 64 bits).
inline constexpr std::uint64_t kMaxPrime = (1ull << 31) - 1;

class OracleWorld {
 public:
  /// Throws std::invalid_argument unless p is a prime in [2, kMaxPrime].
  OracleWorld(std::uint64_t p, std::uint64_t seed);
  OracleWorld(std::uint64_t p, ChaChaRng rng);

  std::uint64_t p() const { return p_; }
  /// ceil(log2 p) + 32.
  unsigned rep_bits() const { return rep_bits_; }

  /// Public generator: sigma(slot, 1). Materialized on first use.
  Rep generator(Slot s) { return sigma(s, 1); }
  /// Encoding of \p value, materializing it if needed. Observer-side
  /// bookkeeping is untouched: the string enters the tables only when it is
  /// used as an oracle input.
  Rep sigma(Slot s, std::uint64_t value);
  std::optional<std::uint64_t> preimage(Slot s, Rep r) const;

  // Group oracles. Inputs never seen before are independent representations
  // and receive a uniformly random unused preimage. Throws
  // std::invalid_argument on representations wider than rep_bits(), or on a
  // fresh string once every value of Z_p is already encoded.
  Rep oracle_g1(Rep x, Rep y) { return add_query(Slot::g1, x, y); }
  Rep oracle_g2(Rep x, Rep y) { return add_query(Slot::g2, x, y); }
  /// GT is written multiplicatively: the preimages (discrete logs) add.
  Rep oracle_gt(Rep x, Rep y) { return add_query(Slot::gt, x, y); }
  Rep oracle_pair(Rep x_g1, Rep y_g2);

  /// L: every input and output, in query order (R_1, R_2, R_3, ...).
  const std::vector<TableEntry>& table(Slot s) const { return groups_[idx(s)].table; }
  /// Q: independent inputs in order of arrival.
  const std::vector<Rep>& independents(Slot s) const { return groups_[idx(s)].independents; }
  /// Queries whose output lives in \p s (pairings count toward GT).
  std::uint64_t queries(Slot s) const { return groups_[idx(s)].queries; }
  std::uint64_t total_queries() const;
  /// Whether an unused preimage remains for a fresh string in \p s.
  bool has_unused_value(Slot s) const { return unused_values(s) != 0; }
  std::uint64_t unused_values(Slot s) const { return p_ - groups_[idx(s)].by_value.size(); }

  /// The hidden value u of a basis element (white-box).
  std::uint64_t hidden(Slot s, BasisKey key) const;
  /// Sum of coefficient times hidden value, mod p.
  std::uint64_t evaluate(Slot s, const Combination& a) const;

 private:
  struct GroupState {
    std::unordered_map<Rep, std::uint64_t> by_rep;
    std::unordered_map<std::uint64_t, Rep> by_value;
    std::unordered_map<Rep, std::size_t> first_seen;  // rep -> index in table
    std::vector<TableEntry> table;
    std::vector<Rep> independents;
    std::vector<std::uint64_t> hidden;  // u_j, parallel to independents
    std::uint64_t queries = 0;
  };

  static std::size_t idx(Slot s) { return static_cast<std::size_t>(s); }
  Rep materialize(GroupState& g, std::uint64_t value);
  std::uint64_t fresh_value(GroupState& g);
  /// Combination of \p r, registering it as independent if unseen.
  Combination observe_input(Slot s, Rep r);
  void record(Slot s, Rep r, Combination a);
  Rep add_query(Slot s, Rep x, Rep y);

  std::uint64_t p_;
  unsigned rep_bits_;
  ChaChaRng rng_;
  GroupState groups_[3];
};

struct CollisionPair {
  Slot slot;
  std::size_t j;
  std::size_t k;
  Combination a_j;
  Combination a_k;
};

struct CollisionReport {
  std::uint64_t p = 0;
  std::uint64_t queries = 0;
  std::vector<CollisionPair> collisions;
  /// 3·C(m+1, 2) over p, numerator kept exact.
  std::uint64_t bound_numerator = 0;
  double bound = 0.0;
};

/// 3·C(m+1, 2) / p.
double collision_bound(std::uint64_t p, std::uint64_t m);

/// Every pair of table entries with equal representations but different
/// combinations.
CollisionReport audit_collisions(const OracleWorld& w);
/// True iff audit_collisions would report at least one pair.
bool has_collision(const OracleWorld& w);

enum class Strategy { random, adversarial_birthday };

/// Issues exactly \p m oracle queries against \p w.
void run_strategy(OracleWorld& w, std::uint64_t m, Strategy strategy, ChaChaRng& rng);

struct ExperimentResult {
  std::uint64_t p = 0;
  std::uint64_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t colliding_trials = 0;
  double empirical_rate = 0.0;
  double bound = 0.0;
};

/// Fraction of independent worlds (one per trial) in which m queries under
/// \p strategy produce a collision. Trial i uses streams derived from
/// (seed, i) only, so both execution policies agree exactly.
ExperimentResult collision_experiment(std::uint64_t p, std::uint64_t m, std::uint64_t trials,
                                      Strategy strategy, std::uint64_t seed,
                                      Exec exec = Exec::parallel);

}  // namespace lrcoin::genericgroup
