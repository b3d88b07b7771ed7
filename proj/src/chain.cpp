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

#include "lrcoin/chain.hpp"

#include <algorithm>

namespace lrcoin::chain {

namespace {

constexpr std::uint8_t kLeafTag = 0x00;
constexpr std::uint8_t kNodeTag = 0x01;
constexpr char kMagic[4] = {'L', 'R', 'C', 'N'};

std::string as_string(ByteView b) { return std::string(b.begin(), b.end()); }

Hash read_hash(ByteReader& in) {
  Hash h;
  ByteView b = in.raw(h.size());
  std::copy(b.begin(), b.end(), h.begin());
  return h;
}

bool is_zero(const Hash& h) {
  return std::all_of(h.begin(), h.end(), [](std::uint8_t b) { return b == 0; });
}

}  // namespace

const char* to_string(TxKind k) {
  switch (k) {
    case TxKind::sale: return "sale";
    case TxKind::purchase: return "purchase";
    case TxKind::payment: return "payment";
  }
  return "?";
}

Bytes Transaction::signing_bytes() const {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(kind));
  w.var16(as_bytes(topic));
  w.u64(amount);
  if (kind == TxKind::sale) {
    w.raw(data_hash);
    w.var16(as_bytes(storage_uri));
  } else if (kind == TxKind::payment) {
    w.raw(sale_id);
    w.raw(purchase_id);
  }
  w.var16(author_pk);
  return std::move(w).take();
}

Bytes Transaction::encode() const {
  ByteWriter w;
  w.raw(signing_bytes());
  w.var16(sig);
  return std::move(w).take();
}

Transaction Transaction::decode(ByteReader& in) {
  Transaction tx;
  std::uint8_t kind = in.u8();
  if (kind < 1 || kind > 3) throw DecodeError("unknown transaction kind");
  tx.kind = static_cast<TxKind>(kind);
  tx.topic = as_string(in.var16());
  tx.amount = in.u64();
  if (tx.kind == TxKind::sale) {
    tx.data_hash = read_hash(in);
    tx.storage_uri = as_string(in.var16());
  } else if (tx.kind == TxKind::payment) {
    tx.sale_id = read_hash(in);
    tx.purchase_id = read_hash(in);
  }
  ByteView pk = in.var16();
  tx.author_pk.assign(pk.begin(), pk.end());
  ByteView sig = in.var16();
  tx.sig.assign(sig.begin(), sig.end());
  return tx;
}

Transaction Transaction::decode(ByteView in) {
  ByteReader r(in);
  Transaction tx = decode(r);
  r.expect_done();
  return tx;
}

Hash Transaction::id() const { return sha256(encode()); }

Transaction make_sale(std::string topic, std::uint64_t price, const Hash& data_hash,
                      std::string storage_uri) {
  Transaction tx;
  tx.kind = TxKind::sale;
  tx.topic = std::move(topic);
  tx.amount = price;
  tx.data_hash = data_hash;
  tx.storage_uri = std::move(storage_uri);
  return tx;
}

Transaction make_purchase(std::string topic, std::uint64_t max_price) {
  Transaction tx;
  tx.kind = TxKind::purchase;
  tx.topic = std::move(topic);
  tx.amount = max_price;
  return tx;
}

Transaction make_payment(const Transaction& sale, const Transaction& purchase) {
  Transaction tx;
  tx.kind = TxKind::payment;
  tx.topic = purchase.topic;
  tx.amount = sale.amount;
  tx.sale_id = sale.id();
  tx.purchase_id = purchase.id();
  return tx;
}

Transaction sign_tx(Transaction tx, const lrsig::PublicKey& pk, lrsig::SecretState& signer,
                    RandomSource& rng) {
  tx.author_pk = pk.encode();
  tx.sig.clear();
  const Hash digest = sha256(tx.signing_bytes());
  tx.sig = lrsig::sign(pk.params, signer, digest, rng).encode();
  return tx;
}

bool verify_tx(const Transaction& tx) {
  try {
    const auto pk = lrsig::PublicKey::decode(tx.author_pk, bilinear::MockRange::wide);
    return lrsig::verify(pk, sha256(tx.signing_bytes()), tx.sig);
  } catch (const std::exception&) {
    return false;
  }
}

Hash merkle_leaf(const Transaction& tx) {
  const std::uint8_t tag = kLeafTag;
  return sha256({ByteView(&tag, 1), tx.encode()});
}

Hash merkle_node(const Hash& left, const Hash& right) {
  const std::uint8_t tag = kNodeTag;
  return sha256({ByteView(&tag, 1), left, right});
}

Hash merkle_root(const std::vector<Transaction>& txs) {
  if (txs.empty()) throw std::invalid_argument("merkle_root: no transactions");
  std::vector<Hash> level;
  level.reserve(txs.size());
  for (const auto& tx : txs) level.push_back(merkle_leaf(tx));
  while (level.size() > 1) {
    if (level.size() % 2 == 1) level.push_back(level.back());
    std::vector<Hash> next;
    next.reserve(level.size() / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) next.push_back(merkle_node(level[i], level[i + 1]));
    level = std::move(next);
  }
  return level[0];
}

Bytes BlockHeader::encode() const {
  ByteWriter w;
  w.raw(prev_hash);
  w.raw(merkle_root);
  w.u64(height);
  w.u64(timestamp);
  return std::move(w).take();
}

BlockHeader BlockHeader::decode(ByteReader& in) {
  BlockHeader h;
  h.prev_hash = read_hash(in);
  h.merkle_root = read_hash(in);
  h.height = in.u64();
  h.timestamp = in.u64();
  return h;
}

Hash BlockHeader::hash() const { return sha256(encode()); }

Bytes Block::encode() const {
  ByteWriter w;
  w.raw(header.encode());
  w.u32(static_cast<std::uint32_t>(txs.size()));
  for (const auto& tx : txs) w.var32(tx.encode());
  return std::move(w).take();
}

Block Block::decode(ByteView in) {
  ByteReader r(in);
  Block b;
  b.header = BlockHeader::decode(r);
  const std::uint32_t n = r.u32();
  // Each transaction takes at least its 4-byte length prefix.
  if (n > r.remaining() / 4) throw DecodeError("transaction count exceeds input");
  b.txs.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) b.txs.push_back(Transaction::decode(r.var32()));
  r.expect_done();
  return b;
}

Block genesis(std::uint64_t timestamp) {
  Block b;
  b.header.timestamp = timestamp;
  return b;
}

namespace {

bool is_genesis(const Block& b) {
  return b.header.height == 0 && is_zero(b.header.prev_hash) && is_zero(b.header.merkle_root) &&
         b.txs.empty();
}

// Everything about a block except its signatures and cross-block references.
std::string check_links(const Block& b, const Block& parent) {
  if (b.header.prev_hash != parent.hash()) return "prev_hash does not match parent";
  if (b.header.height != parent.header.height + 1) return "height is not parent height + 1";
  if (b.txs.empty()) return "block has no transactions";
  if (b.header.merkle_root != merkle_root(b.txs)) return "merkle root mismatch";
  std::set<Hash> ids;
  for (const auto& tx : b.txs) {
    if (!ids.insert(tx.id()).second) return "duplicate transaction in block";
  }
  return {};
}

std::vector<const Transaction*> tx_pointers(const Block& b) {
  std::vector<const Transaction*> out;
  for (const auto& tx : b.txs) out.push_back(&tx);
  return out;
}

}  // namespace

std::vector<bool> verify_batch(const std::vector<const Transaction*>& txs, Exec exec) {
  // vector<bool> packs bits, so workers write to a byte array instead.
  std::vector<std::uint8_t> ok(txs.size(), 0);
  const auto n = static_cast<std::int64_t>(txs.size());
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) ok[i] = verify_tx(*txs[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) ok[i] = verify_tx(*txs[i]);
  }
  return std::vector<bool>(ok.begin(), ok.end());
}

Block build_block(const Block& parent, std::vector<Transaction> txs, std::uint64_t timestamp) {
  if (txs.empty()) throw ChainError("build_block: no transactions");
  Block b;
  b.txs = std::move(txs);
  auto ok = verify_batch(tx_pointers(b), Exec::parallel);
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (!ok[i]) throw ChainError("build_block: transaction " + std::to_string(i) + " does not verify");
  }
  b.header.prev_hash = parent.hash();
  b.header.merkle_root = merkle_root(b.txs);
  b.header.height = parent.header.height + 1;
  b.header.timestamp = timestamp;
  return b;
}

bool validate_block(const Block& b, const Block& parent, Exec exec) {
  if (!check_links(b, parent).empty()) return false;
  auto ok = verify_batch(tx_pointers(b), exec);
  return std::all_of(ok.begin(), ok.end(), [](bool v) { return v; });
}

std::string detail::RefIndex::add(const std::vector<Block>& blocks, std::size_t block_index,
                                  const Block& b) {
  auto lookup = [&](const Hash& id) -> const Transaction* {
    auto it = where.find(id);
    if (it == where.end()) return nullptr;
    const Block& owner = it->second.block < blocks.size() ? blocks[it->second.block] : b;
    return &owner.txs[it->second.pos];
  };
  for (std::size_t pos = 0; pos < b.txs.size(); ++pos) {
    const Transaction& tx = b.txs[pos];
    const Hash id = tx.id();
    if (where.contains(id)) return "transaction id repeats an earlier one";
    if (tx.kind == TxKind::payment) {
      const Transaction* sale = lookup(tx.sale_id);
      const Transaction* purchase = lookup(tx.purchase_id);
      if (sale == nullptr || sale->kind != TxKind::sale) return "payment references no earlier sale";
      if (purchase == nullptr || purchase->kind != TxKind::purchase)
        return "payment references no earlier purchase";
      if (sale->topic != purchase->topic || tx.topic != sale->topic)
        return "payment topics do not match";
      if (purchase->amount < sale->amount) return "purchase price below asking price";
      if (tx.amount != sale->amount) return "payment amount differs from asking price";
      if (tx.author_pk != purchase->author_pk) return "payment not authored by the buyer";
      if (!paid_sales.insert(tx.sale_id).second) return "sale already paid";
      if (!paid_purchases.insert(tx.purchase_id).second) return "purchase already paid";
    }
    where.emplace(id, TxLocation{block_index, pos});
  }
  return {};
}

ValidationReport validate_chain(const std::vector<Block>& blocks, Exec exec) {
  ValidationReport r;
  r.blocks = blocks.size();
  auto fail = [&](std::uint64_t height, std::string why) {
    r.valid = false;
    r.failed_height = height;
    r.error = std::move(why);
    return r;
  };
  if (blocks.empty()) {
    r.error = "empty chain";
    return r;
  }
  if (!is_genesis(blocks[0])) return fail(0, "first block is not a genesis block");

  detail::RefIndex index;
  std::vector<const Transaction*> all;
  std::vector<std::uint64_t> owner;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (std::string e = check_links(blocks[i], blocks[i - 1]); !e.empty()) return fail(i, e);
    if (std::string e = index.add(blocks, i, blocks[i]); !e.empty()) return fail(i, e);
    for (const auto& tx : blocks[i].txs) {
      all.push_back(&tx);
      owner.push_back(i);
    }
  }
  r.txs = all.size();

  auto ok = verify_batch(all, exec);
  for (std::size_t k = 0; k < ok.size(); ++k) {
    if (!ok[k]) return fail(owner[k], "signature does not verify");
  }
  r.valid = true;
  return r;
}

Chain::Chain(Block genesis_block) {
  if (!is_genesis(genesis_block)) throw ChainError("not a genesis block");
  blocks_.push_back(std::move(genesis_block));
}

void Chain::append(Block b) {
  if (!validate_block(b, tip())) throw ChainError("block does not extend the tip validly");
  detail::RefIndex next = index_;
  if (std::string e = next.add(blocks_, blocks_.size(), b); !e.empty()) throw ChainError(e);
  blocks_.push_back(std::move(b));
  index_ = std::move(next);
}

const Transaction* Chain::find_tx(const Hash& id) const {
  auto it = index_.where.find(id);
  if (it == index_.where.end()) return nullptr;
  return &blocks_[it->second.block].txs[it->second.pos];
}

Bytes encode_chain_file(const std::vector<Block>& blocks) {
  ByteWriter w;
  w.raw(as_bytes(std::string_view(kMagic, 4)));
  w.u8(kChainFileVersion);
  w.u32(static_cast<std::uint32_t>(blocks.size()));
  for (const auto& b : blocks) w.var32(b.encode());
  w.raw(blocks.empty() ? Hash{} : blocks.back().hash());
  return std::move(w).take();
}

std::vector<Block> decode_chain_file(ByteView in) {
  ByteReader r(in);
  ByteView magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic)) throw DecodeError("not a chain file");
  if (r.u8() != kChainFileVersion) throw DecodeError("unsupported chain file version");
  const std::uint32_t n = r.u32();
  if (n > r.remaining() / 4) throw DecodeError("block count exceeds input");
  std::vector<Block> blocks;
  blocks.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) blocks.push_back(Block::decode(r.var32()));
  const Hash tip = read_hash(r);
  r.expect_done();
  if (tip != (blocks.empty() ? Hash{} : blocks.back().hash())) throw DecodeError("tip hash mismatch");
  return blocks;
}

}  // namespace lrcoin::chain
