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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrcoin/chain.hpp"

// Single-sequencer data market: sellers post sale transactions and upload
// data to a storage stub, buyers post purchase transactions, and every
// SETTLE matches them, pays, and seals the round into a block.
namespace lrcoin::market {

using chain::Hash;

class MarketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Content-addressed blob store; the URI is derived from the data hash.
class StorageStub {
 public:
  struct Entry {
    Bytes data;
    Hash hash;
  };

  /// Stores \p data and returns its URI ("stub://<hex sha256>").
  std::string upload(ByteView data);
  std::optional<Bytes> download(const std::string& uri) const;
  /// Replaces stored bytes without updating the hash (for tamper tests).
  void tamper(const std::string& uri, Bytes data);
  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

enum class Role { seller, buyer };
const char* to_string(Role r);

struct Actor {
  std::string name;
  std::optional<Role> role;  // fixed by the first SELL or BUY
  lrsig::KeyPair keys;
  ChaChaRng rng;
  std::uint64_t balance = 0;
};

struct MatchRecord {
  Hash sale_id;
  Hash purchase_id;
  Hash payment_id;
  std::string topic;
  std::string seller;
  std::string buyer;
  std::uint64_t clearing_price = 0;
  /// The downloaded data hashed to the sale's data_hash.
  bool data_verified = false;
};

struct SkippedPurchase {
  Hash purchase_id;
  std::string buyer;
  std::string reason;
};

struct SettleResult {
  std::vector<MatchRecord> matches;
  std::vector<SkippedPurchase> skipped;
  /// Height of the sealed block; empty when nothing was pending.
  std::optional<std::uint64_t> block_height;
  std::uint64_t balance_before = 0;
  std::uint64_t balance_after = 0;
};

inline constexpr std::uint64_t kGenesisTime = 1'700'000'000;
inline constexpr std::uint64_t kBlockInterval = 600;

class Market {
 public:
  Market(bilinear::BilinearParams params, std::uint64_t seed);

  /// Creates the actor on first use, otherwise tops up its balance. Keys
  /// come from the market seed and the order in which actors appear.
  void fund(const std::string& actor, std::uint64_t amount);
  /// Throws MarketError on an unknown actor, a role conflict or a negative
  /// price.
  Hash post_sale(const std::string& seller, const std::string& topic, std::int64_t price,
                 ByteView data);
  Hash post_purchase(const std::string& buyer, const std::string& topic, std::int64_t max_price);

  /// Purchases in post order each take the earliest open sale with the same
  /// topic and an asking price within their limit, paying the asking price.
  /// A buyer who cannot afford it is skipped and the purchase stays open.
  /// Pending transactions and payments are sealed into one block.
  SettleResult match_and_settle();

  const chain::Chain& chain() const { return chain_; }
  const StorageStub& storage() const { return storage_; }
  StorageStub& storage() { return storage_; }
  const std::map<std::string, Actor>& actors() const { return actors_; }
  std::uint64_t total_balance() const;
  std::size_t pending() const { return mempool_.size(); }

 private:
  Actor& actor(const std::string& name, Role role);

  bilinear::BilinearParams params_;
  ChaChaRng root_;
  std::map<std::string, Actor> actors_;
  StorageStub storage_;
  chain::Chain chain_;
  std::vector<chain::Transaction> mempool_;
  std::vector<Hash> open_sales_;      // post order
  std::vector<Hash> open_purchases_;  // post order
  std::map<Hash, std::pair<chain::Transaction, std::string>> book_;  // id -> (tx, author)
};

/// A scenario line: SELL, BUY, SETTLE or FUND.
struct Command {
  enum class Op { fund, sell, buy, settle } op;
  std::size_t line = 0;
  std::string actor;
  std::string topic;
  std::int64_t amount = 0;  // FUND amount, SELL price, BUY max price
  std::filesystem::path data_file;
};

/// Parse or execution failure, tagged with the scenario line.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Blank lines and lines starting with '#' are ignored. Relative data
/// paths are resolved against \p base_dir.
std::vector<Command> parse_scenario(std::string_view text,
                                    const std::filesystem::path& base_dir = {});

struct Report {
  std::size_t blocks = 0;
  std::vector<MatchRecord> matches;
  std::vector<SkippedPurchase> skipped;
  std::map<std::string, std::uint64_t> balances;
  std::uint64_t funded = 0;
  /// Every settle preserved the balance sum and the final sum equals the
  /// funded total.
  bool conserved = false;
  /// validate_chain on the final chain.
  bool all_valid = false;
  Bytes chain_file;
};

Report run_scenario(const std::vector<Command>& commands, const bilinear::BilinearParams& params,
                    std::uint64_t seed);
/// Reads and parses \p path, then runs it.
Report run_scenario_file(const std::filesystem::path& path,
                         const bilinear::BilinearParams& params, std::uint64_t seed);

/// JSON report with a top-level "v" field.
std::string report_json(const Report& r);

}  // namespace lrcoin::market
