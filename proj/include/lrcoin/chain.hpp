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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lrcoin/exec.hpp"
#include "lrcoin/hash.hpp"
#include "lrcoin/lrsig.hpp"

// Transactions, Merkle trees and hash-linked blocks. There is no consensus
// layer: a single sequencer appends blocks.
namespace lrcoin::chain {

using Hash = Digest;

/// Raised by operations that would produce an invalid chain.
class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TxKind : std::uint8_t { sale = 1, purchase = 2, payment = 3 };
const char* to_string(TxKind k);

/// Wire format, all integers big-endian:
///   kind u8 | topic var16 | amount u64
///   sale:    data_hash[32] | storage_uri var16
///   payment: sale_id[32] | purchase_id[32]
///   author_pk var16 | sig var16
/// The signature covers everything before the sig field.
struct Transaction {
  TxKind kind = TxKind::sale;
  std::string topic;
  /// Asking price (sale), maximum price (purchase) or amount paid (payment).
  std::uint64_t amount = 0;
  Hash data_hash{};
  std::string storage_uri;
  Hash sale_id{};
  Hash purchase_id{};
  Bytes author_pk;
  Bytes sig;

  /// Throws std::length_error when a field exceeds its length prefix.
  Bytes signing_bytes() const;
  Bytes encode() const;
  static Transaction decode(ByteView in);
  static Transaction decode(ByteReader& in);
  /// SHA-256 of the full encoding.
  Hash id() const;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

Transaction make_sale(std::string topic, std::uint64_t price, const Hash& data_hash,
                      std::string storage_uri);
Transaction make_purchase(std::string topic, std::uint64_t max_price);
Transaction make_payment(const Transaction& sale, const Transaction& purchase);

/// Fills in author_pk and sig. The signed message is SHA-256 of
/// signing_bytes(); the signer advances one round.
Transaction sign_tx(Transaction tx, const lrsig::PublicKey& pk, lrsig::SecretState& signer,
                    RandomSource& rng);
/// Malformed keys or signatures verify as false.
bool verify_tx(const Transaction& tx);

/// Leaves are H(0x00 || tx), inner nodes H(0x01 || left || right); an odd
/// level repeats its last node. Throws std::invalid_argument on an empty
/// list.
Hash merkle_root(const std::vector<Transaction>& txs);
Hash merkle_leaf(const Transaction& tx);
Hash merkle_node(const Hash& left, const Hash& right);

struct BlockHeader {
  Hash prev_hash{};
  Hash merkle_root{};
  std::uint64_t height = 0;
  std::uint64_t timestamp = 0;

  /// prev_hash | merkle_root | height u64 | timestamp u64.
  Bytes encode() const;
  static BlockHeader decode(ByteReader& in);
  Hash hash() const;

  friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
  BlockHeader header;
  std::vector<Transaction> txs;

  /// header | u32 count | (var32 tx)*.
  Bytes encode() const;
  static Block decode(ByteView in);
  Hash hash() const { return header.hash(); }

  friend bool operator==(const Block&, const Block&) = default;
};

/// Height 0, zero prev_hash and merkle_root, no transactions.
Block genesis(std::uint64_t timestamp = 0);
/// Throws ChainError if \p txs is empty or any transaction fails to verify.
Block build_block(const Block& parent, std::vector<Transaction> txs, std::uint64_t timestamp);

/// Signature check of every transaction, one result per input.
std::vector<bool> verify_batch(const std::vector<const Transaction*>& txs, Exec exec);

/// Header link, height, non-empty body, Merkle root, no repeated tx ids
/// and every signature. Payment references need the whole chain and are
/// checked by validate_chain.
bool validate_block(const Block& b, const Block& parent, Exec exec = Exec::parallel);

struct ValidationReport {
  bool valid = false;
  std::size_t blocks = 0;
  std::size_t txs = 0;
  /// Height of the first offending block, if any.
  std::optional<std::uint64_t> failed_height;
  std::string error;
};

namespace detail {

struct TxLocation {
  std::size_t block;
  std::size_t pos;
};

/// Transactions seen so far and which sales and purchases have been paid.
struct RefIndex {
  std::map<Hash, TxLocation> where;
  std::set<Hash> paid_sales;
  std::set<Hash> paid_purchases;

  /// Indexes block \p b (at position \p block_index of \p blocks) and
  /// returns an error message, or an empty string if every id is new and
  /// every payment reference is sound.
  std::string add(const std::vector<Block>& blocks, std::size_t block_index, const Block& b);
};

}  // namespace detail

/// Everything validate_block checks for each block, plus: a genesis block
/// first, tx ids unique across the chain, and every payment references an
/// earlier sale and purchase with the same topic, a compatible price and
/// the purchase's author, with each sale and purchase paid at most once.
ValidationReport validate_chain(const std::vector<Block>& blocks, Exec exec = Exec::parallel);

/// Append-only chain that only accepts valid blocks.
class Chain {
 public:
  explicit Chain(Block genesis_block = genesis());

  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& tip() const { return blocks_.back(); }
  /// Throws ChainError (leaving the chain unchanged) if the extended chain
  /// would not validate.
  void append(Block b);
  const Transaction* find_tx(const Hash& id) const;

 private:
  std::vector<Block> blocks_;
  detail::RefIndex index_;
};

// Chain file: "LRCN" | version u8 | count u32 | (var32 block)* | tip hash.
inline constexpr std::uint8_t kChainFileVersion = 1;
Bytes encode_chain_file(const std::vector<Block>& blocks);
/// Throws DecodeError on any format error, including a tip hash that does
/// not match the last block.
std::vector<Block> decode_chain_file(ByteView in);

}  // namespace lrcoin::chain
