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

#include "lrcoin/market.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lrcoin::market {

using chain::Transaction;

std::string StorageStub::upload(ByteView data) {
  const Hash h = sha256(data);
  std::string uri = "stub://" + to_hex(h);
  entries_[uri] = {Bytes(data.begin(), data.end()), h};
  return uri;
}

std::optional<Bytes> StorageStub::download(const std::string& uri) const {
  auto it = entries_.find(uri);
  if (it == entries_.end()) return std::nullopt;
  return it->second.data;
}

void StorageStub::tamper(const std::string& uri, Bytes data) { entries_.at(uri).data = std::move(data); }

const char* to_string(Role r) { return r == Role::seller ? "seller" : "buyer"; }

Market::Market(bilinear::BilinearParams params, std::uint64_t seed)
    : params_(std::move(params)), root_(seed), chain_(chain::genesis(kGenesisTime)) {}

void Market::fund(const std::string& name, std::uint64_t amount) {
  auto it = actors_.find(name);
  if (it == actors_.end()) {
    const std::uint64_t index = actors_.size();
    ChaChaRng keyrng = root_.derive("actor-key", index);
    Actor a{name, std::nullopt, lrsig::keygen(params_, keyrng), root_.derive("actor-sign", index),
            amount};
    actors_.emplace(name, std::move(a));
    return;
  }
  if (it->second.balance > std::numeric_limits<std::uint64_t>::max() - amount)
    throw MarketError("balance overflow for " + name);
  it->second.balance += amount;
}

Actor& Market::actor(const std::string& name, Role role) {
  auto it = actors_.find(name);
  if (it == actors_.end()) throw MarketError("unknown actor " + name);
  Actor& a = it->second;
  if (a.role && *a.role != role)
    throw MarketError(name + " is a " + to_string(*a.role) + ", not a " + to_string(role));
  a.role = role;
  return a;
}

Hash Market::post_sale(const std::string& seller, const std::string& topic, std::int64_t price,
                       ByteView data) {
  if (price < 0) throw MarketError("negative price");
  Actor& a = actor(seller, Role::seller);
  const std::string uri = storage_.upload(data);
  Transaction tx = chain::sign_tx(
      chain::make_sale(topic, static_cast<std::uint64_t>(price), sha256(data), uri), a.keys.pk,
      a.keys.sk, a.rng);
  const Hash id = tx.id();
  book_.emplace(id, std::make_pair(tx, seller));
  open_sales_.push_back(id);
  mempool_.push_back(std::move(tx));
  return id;
}

Hash Market::post_purchase(const std::string& buyer, const std::string& topic,
                           std::int64_t max_price) {
  if (max_price < 0) throw MarketError("negative maximum price");
  Actor& a = actor(buyer, Role::buyer);
  Transaction tx = chain::sign_tx(chain::make_purchase(topic, static_cast<std::uint64_t>(max_price)),
                                  a.keys.pk, a.keys.sk, a.rng);
  const Hash id = tx.id();
  book_.emplace(id, std::make_pair(tx, buyer));
  open_purchases_.push_back(id);
  mempool_.push_back(std::move(tx));
  return id;
}

std::uint64_t Market::total_balance() const {
  std::uint64_t sum = 0;
  for (const auto& [name, a] : actors_) sum += a.balance;
  return sum;
}

SettleResult Market::match_and_settle() {
  SettleResult out;
  out.balance_before = total_balance();

  std::vector<Hash> still_open;
  for (const Hash& pid : open_purchases_) {
    const auto& [purchase, buyer_name] = book_.at(pid);
    auto sale_it = std::find_if(open_sales_.begin(), open_sales_.end(), [&](const Hash& sid) {
      const Transaction& sale = book_.at(sid).first;
      return sale.topic == purchase.topic && sale.amount <= purchase.amount;
    });
    if (sale_it == open_sales_.end()) {
      still_open.push_back(pid);
      continue;
    }
    const auto& [sale, seller_name] = book_.at(*sale_it);
    Actor& buyer = actors_.at(buyer_name);
    Actor& seller = actors_.at(seller_name);
    if (buyer.balance < sale.amount) {
      out.skipped.push_back({pid, buyer_name, "insufficient balance"});
      still_open.push_back(pid);
      continue;
    }

    Transaction pay = chain::sign_tx(chain::make_payment(sale, purchase), buyer.keys.pk,
                                     buyer.keys.sk, buyer.rng);
    buyer.balance -= sale.amount;
    seller.balance += sale.amount;

    MatchRecord m{*sale_it, pid, pay.id(), sale.topic, seller_name, buyer_name, sale.amount, false};
    if (auto data = storage_.download(sale.storage_uri)) m.data_verified = sha256(*data) == sale.data_hash;
    out.matches.push_back(std::move(m));
    mempool_.push_back(std::move(pay));
    open_sales_.erase(sale_it);
  }
  open_purchases_ = std::move(still_open);

  if (!mempool_.empty()) {
    const std::uint64_t height = chain_.tip().header.height + 1;
    chain::Block b = chain::build_block(chain_.tip(), std::move(mempool_),
                                        kGenesisTime + height * kBlockInterval);
    mempool_.clear();
    chain_.append(std::move(b));
    out.block_height = height;
  }
  out.balance_after = total_balance();
  return out;
}

ScenarioError::ScenarioError(std::size_t line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::int64_t parse_int(const std::string& s, std::size_t line) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ScenarioError(line, "not an integer: '" + s + "'");
  return v;
}

Bytes read_data(const std::filesystem::path& path, std::size_t line) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(line, "cannot read data file " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::vector<Command> parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<Command> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    std::istringstream words(raw);
    std::vector<std::string> w{std::istream_iterator<std::string>(words),
                               std::istream_iterator<std::string>()};
    if (w.empty() || w[0][0] == '#') continue;

    auto expect_args = [&](std::size_t n, const char* usage) {
      if (w.size() != n) throw ScenarioError(line, std::string("expected: ") + usage);
    };
    Command c{};
    c.line = line;
    if (w[0] == "FUND") {
      expect_args(3, "FUND <actor> <amount>");
      c.op = Command::Op::fund;
      c.actor = w[1];
      c.amount = parse_int(w[2], line);
      if (c.amount < 0) throw ScenarioError(line, "negative amount");
    } else if (w[0] == "SELL") {
      expect_args(5, "SELL <actor> <topic> <price> <datafile>");
      c.op = Command::Op::sell;
      c.actor = w[1];
      c.topic = w[2];
      c.amount = parse_int(w[3], line);
      c.data_file = std::filesystem::path(w[4]);
      if (c.data_file.is_relative()) c.data_file = base_dir / c.data_file;
    } else if (w[0] == "BUY") {
      expect_args(4, "BUY <actor> <topic> <maxprice>");
      c.op = Command::Op::buy;
      c.actor = w[1];
      c.topic = w[2];
      c.amount = parse_int(w[3], line);
    } else if (w[0] == "SETTLE") {
      expect_args(1, "SETTLE");
      c.op = Command::Op::settle;
    } else {
      throw ScenarioError(line, "unknown command '" + w[0] + "'");
    }
    out.push_back(std::move(c));
  }
  return out;
}

Report run_scenario(const std::vector<Command>& commands, const bilinear::BilinearParams& params,
                    std::uint64_t seed) {
  Market m(params, seed);
  Report r;
  bool conserved = true;
  for (const Command& c : commands) {
    try {
      switch (c.op) {
        case Command::Op::fund:
          m.fund(c.actor, static_cast<std::uint64_t>(c.amount));
          r.funded += static_cast<std::uint64_t>(c.amount);
          break;
        case Command::Op::sell:
          m.post_sale(c.actor, c.topic, c.amount, read_data(c.data_file, c.line));
          break;
        case Command::Op::buy:
          m.post_purchase(c.actor, c.topic, c.amount);
          break;
        case Command::Op::settle: {
          SettleResult s = m.match_and_settle();
          conserved = conserved && s.balance_before == s.balance_after;
          for (auto& x : s.matches) r.matches.push_back(std::move(x));
          for (auto& x : s.skipped) r.skipped.push_back(std::move(x));
          break;
        }
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError(c.line, e.what());
    }
  }
  for (const auto& [name, a] : m.actors()) r.balances[name] = a.balance;
  r.blocks = m.chain().blocks().size();
  r.conserved = conserved && m.total_balance() == r.funded;
  r.all_valid = chain::validate_chain(m.chain().blocks()).valid;
  r.chain_file = chain::encode_chain_file(m.chain().blocks());
  return r;
}

Report run_scenario_file(const std::filesystem::path& path, const bilinear::BilinearParams& params,
                         std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(0, "cannot read scenario " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return run_scenario(parse_scenario(text, path.parent_path()), params, seed);
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["v"] = 1;
  j["blocks"] = r.blocks;
  j["all_valid"] = r.all_valid;
  j["conserved"] = r.conserved;
  j["funded"] = r.funded;
  j["matches"] = nlohmann::ordered_json::array();
  for (const auto& m : r.matches) {
    j["matches"].push_back({{"topic", m.topic},
                            {"seller", m.seller},
                            {"buyer", m.buyer},
                            {"price", m.clearing_price},
                            {"sale", to_hex(m.sale_id)},
                            {"purchase", to_hex(m.purchase_id)},
                            {"payment", to_hex(m.payment_id)},
                            {"data_verified", m.data_verified}});
  }
  j["skipped"] = nlohmann::ordered_json::array();
  for (const auto& s : r.skipped)
    j["skipped"].push_back({{"buyer", s.buyer}, {"purchase", to_hex(s.purchase_id)}, {"reason", s.reason}});
  j["balances"] = r.balances;
  return j.dump();
}

}  // namespace lrcoin::market
