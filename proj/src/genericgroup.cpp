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

#include "lrcoin/genericgroup.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace lrcoin::genericgroup {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  for (b %= p; e != 0; e >>= 1) {
    if (e & 1) acc = mulmod(acc, b, p);
    b = mulmod(b, b, p);
  }
  return acc;
}

// Deterministic Miller-Rabin; bases 2, 3, 5, 7 cover every n < 3.2e9.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t checked_prime(std::uint64_t p) {
  if (p > kMaxPrime || !is_prime(p))
    throw std::invalid_argument("OracleWorld: modulus must be a prime below 2^31");
  return p;
}

Combination add(const Combination& a, const Combination& b, std::uint64_t p) {
  Combination out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      std::uint64_t c = (i->second + j->second) % p;
      if (c != 0) out.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

// Pairing of two linear forms: the product expands into monomials.
Combination tensor(const Combination& a, const Combination& b, std::uint64_t p) {
  Combination out;
  out.reserve(a.size() * b.size());
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) out.emplace_back(monomial(ka, kb), mulmod(ca, cb, p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

OracleWorld::OracleWorld(std::uint64_t p, std::uint64_t seed) : OracleWorld(p, ChaChaRng(seed)) {}

OracleWorld::OracleWorld(std::uint64_t p, ChaChaRng rng)
    : p_(checked_prime(p)),
      rep_bits_(static_cast<unsigned>(std::bit_width(p - 1)) + 32),
      rng_(std::move(rng)) {}

Rep OracleWorld::materialize(GroupState& g, std::uint64_t value) {
  if (auto it = g.by_value.find(value); it != g.by_value.end()) return it->second;
  Rep r;
  do {
    r = rng_.next_u64() >> (64 - rep_bits_);
  } while (g.by_rep.contains(r));
  g.by_rep.emplace(r, value);
  g.by_value.emplace(value, r);
  return r;
}

std::uint64_t OracleWorld::fresh_value(GroupState& g) {
  const std::uint64_t used = g.by_value.size();
  if (used >= p_) throw std::invalid_argument("OracleWorld: every element is already encoded");
  if (used * 2 < p_) {
    for (;;) {
      std::uint64_t v = rng_.below_u64(p_);
      if (!g.by_value.contains(v)) return v;
    }
  }
  std::vector<std::uint64_t> unused;
  unused.reserve(p_ - used);
  for (std::uint64_t v = 0; v < p_; ++v) {
    if (!g.by_value.contains(v)) unused.push_back(v);
  }
  return unused[rng_.below_u64(unused.size())];
}

Rep OracleWorld::sigma(Slot s, std::uint64_t value) {
  if (value >= p_) throw std::invalid_argument("OracleWorld::sigma: value out of range");
  return materialize(groups_[idx(s)], value);
}

std::optional<std::uint64_t> OracleWorld::preimage(Slot s, Rep r) const {
  const auto& m = groups_[idx(s)].by_rep;
  if (auto it = m.find(r); it != m.end()) return it->second;
  return std::nullopt;
}

std::uint64_t OracleWorld::total_queries() const {
  std::uint64_t n = 0;
  for (const auto& g : groups_) n += g.queries;
  return n;
}

Combination OracleWorld::observe_input(Slot s, Rep r) {
  if (rep_bits_ < 64 && (r >> rep_bits_) != 0)
    throw std::invalid_argument("OracleWorld: representation wider than the encoding length");
  GroupState& g = groups_[idx(s)];
  if (auto it = g.first_seen.find(r); it != g.first_seen.end()) return g.table[it->second].combination;

  std::uint64_t u;
  if (auto it = g.by_rep.find(r); it != g.by_rep.end()) {
    u = it->second;
  } else {
    u = fresh_value(g);
    g.by_rep.emplace(r, u);
    g.by_value.emplace(u, r);
  }
  const BasisKey key = g.independents.size();
  g.independents.push_back(r);
  g.hidden.push_back(u);
  return {{key, 1}};
}

void OracleWorld::record(Slot s, Rep r, Combination a) {
  GroupState& g = groups_[idx(s)];
  g.first_seen.try_emplace(r, g.table.size());
  g.table.push_back({r, std::move(a)});
}

Rep OracleWorld::add_query(Slot s, Rep x, Rep y) {
  GroupState& g = groups_[idx(s)];
  Combination ax = observe_input(s, x);
  record(s, x, ax);
  Combination ay = observe_input(s, y);
  record(s, y, ay);
  std::uint64_t value = (g.by_rep.at(x) + g.by_rep.at(y)) % p_;
  Rep z = materialize(g, value);
  record(s, z, add(ax, ay, p_));
  g.queries += 1;
  return z;
}

Rep OracleWorld::oracle_pair(Rep x_g1, Rep y_g2) {
  GroupState& g1 = groups_[idx(Slot::g1)];
  GroupState& g2 = groups_[idx(Slot::g2)];
  Combination ax = observe_input(Slot::g1, x_g1);
  record(Slot::g1, x_g1, ax);
  Combination ay = observe_input(Slot::g2, y_g2);
  record(Slot::g2, y_g2, ay);
  std::uint64_t value = mulmod(g1.by_rep.at(x_g1), g2.by_rep.at(y_g2), p_);
  Rep z = materialize(groups_[idx(Slot::gt)], value);
  record(Slot::gt, z, tensor(ax, ay, p_));
  groups_[idx(Slot::gt)].queries += 1;
  return z;
}

std::uint64_t OracleWorld::hidden(Slot s, BasisKey key) const {
  if (s == Slot::gt && (key & kMonomialBit)) {
    const std::uint64_t j1 = (key & ~kMonomialBit) >> 31;
    const std::uint64_t j2 = key & ((1ull << 31) - 1);
    return mulmod(groups_[idx(Slot::g1)].hidden.at(j1), groups_[idx(Slot::g2)].hidden.at(j2), p_);
  }
  return groups_[idx(s)].hidden.at(key);
}

std::uint64_t OracleWorld::evaluate(Slot s, const Combination& a) const {
  std::uint64_t acc = 0;
  for (const auto& [key, coeff] : a) acc = (acc + mulmod(coeff, hidden(s, key), p_)) % p_;
  return acc;
}

double collision_bound(std::uint64_t p, std::uint64_t m) {
  return 3.0 * (static_cast<double>(m + 1) * static_cast<double>(m) / 2.0) / static_cast<double>(p);
}

CollisionReport audit_collisions(const OracleWorld& w) {
  CollisionReport out;
  out.p = w.p();
  out.queries = w.total_queries();
  out.bound_numerator = 3 * ((out.queries + 1) * out.queries / 2);
  out.bound = collision_bound(out.p, out.queries);
  for (Slot s : {Slot::g1, Slot::g2, Slot::gt}) {
    const auto& table = w.table(s);
    std::unordered_map<Rep, std::vector<std::size_t>> by_rep;
    for (std::size_t j = 0; j < table.size(); ++j) {
      auto& earlier = by_rep[table[j].rep];
      for (std::size_t k : earlier) {
        if (table[k].combination != table[j].combination)
          out.collisions.push_back({s, k, j, table[k].combination, table[j].combination});
      }
      earlier.push_back(j);
    }
  }
  return out;
}

bool has_collision(const OracleWorld& w) {
  for (Slot s : {Slot::g1, Slot::g2, Slot::gt}) {
    const auto& table = w.table(s);
    std::unordered_map<Rep, std::size_t> first;
    first.reserve(table.size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      auto [it, inserted] = first.try_emplace(table[j].rep, j);
      if (!inserted && table[it->second].combination != table[j].combination) return true;
    }
  }
  return false;
}

namespace {

class Adversary {
 public:
  Adversary(OracleWorld& w, ChaChaRng& rng) : w_(w), rng_(rng) {
    pool_[0].push_back(w.generator(Slot::g1));
    pool_[1].push_back(w.generator(Slot::g2));
  }

  Rep pick(Slot s, bool prefer_fresh) {
    auto& pool = pool_[static_cast<std::size_t>(s)];
    auto& pending = pending_[static_cast<std::size_t>(s)];
    if ((prefer_fresh || pool.empty()) && w_.unused_values(s) > pending.size()) {
      Rep r;
      do {
        r = rng_.next_u64() >> (64 - w_.rep_bits());
      } while (w_.preimage(s, r).has_value() ||
               std::find(pending.begin(), pending.end(), r) != pending.end());
      pending.push_back(r);
      pool.push_back(r);
      return r;
    }
    return pool[rng_.below_u64(pool.size())];
  }

  // Called after each query; fresh strings picked for it are now encoded.
  void learn(Slot s, Rep r) {
    pool_[static_cast<std::size_t>(s)].push_back(r);
    for (auto& p : pending_) p.clear();
  }

 private:
  OracleWorld& w_;
  ChaChaRng& rng_;
  std::vector<Rep> pool_[3];
  std::vector<Rep> pending_[3];
};

}  // namespace

void run_strategy(OracleWorld& w, std::uint64_t m, Strategy strategy, ChaChaRng& rng) {
  Adversary adv(w, rng);
  for (std::uint64_t q = 0; q < m; ++q) {
    if (strategy == Strategy::adversarial_birthday) {
      // Two unknown discrete logs, then keep combining what is known.
      const bool fresh = q == 0;
      Rep x = adv.pick(Slot::g1, fresh);
      Rep y = adv.pick(Slot::g1, fresh);
      adv.learn(Slot::g1, w.oracle_g1(x, y));
      continue;
    }
    switch (rng.below_u64(4)) {
      case 0: {
        Rep x = adv.pick(Slot::g1, rng.below_u64(2) == 0);
        Rep y = adv.pick(Slot::g1, rng.below_u64(2) == 0);
        adv.learn(Slot::g1, w.oracle_g1(x, y));
        break;
      }
      case 1: {
        Rep x = adv.pick(Slot::g2, rng.below_u64(2) == 0);
        Rep y = adv.pick(Slot::g2, rng.below_u64(2) == 0);
        adv.learn(Slot::g2, w.oracle_g2(x, y));
        break;
      }
      case 2: {
        Rep x = adv.pick(Slot::gt, rng.below_u64(2) == 0);
        Rep y = adv.pick(Slot::gt, rng.below_u64(2) == 0);
        adv.learn(Slot::gt, w.oracle_gt(x, y));
        break;
      }
      default: {
        Rep x = adv.pick(Slot::g1, rng.below_u64(2) == 0);
        Rep y = adv.pick(Slot::g2, rng.below_u64(2) == 0);
        adv.learn(Slot::gt, w.oracle_pair(x, y));
        break;
      }
    }
  }
}

ExperimentResult collision_experiment(std::uint64_t p, std::uint64_t m, std::uint64_t trials,
                                      Strategy strategy, std::uint64_t seed, Exec exec) {
  if (trials == 0) throw std::invalid_argument("collision_experiment: trials must be >= 1");
  checked_prime(p);
  const ChaChaRng root(seed);
  auto trial = [&](std::uint64_t i) -> std::uint64_t {
    OracleWorld w(p, root.derive("world", i));
    ChaChaRng adversary = root.derive("adversary", i);
    run_strategy(w, m, strategy, adversary);
    return has_collision(w) ? 1 : 0;
  };

  std::uint64_t hits = 0;
  const auto n = static_cast<std::int64_t>(trials);
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) hits += trial(static_cast<std::uint64_t>(i));
  } else {
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) hits += trial(static_cast<std::uint64_t>(i));
  }
  return {p, m, trials, hits, static_cast<double>(hits) / static_cast<double>(trials),
          collision_bound(p, m)};
}

}  // namespace lrcoin::genericgroup
