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

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace lrcoin::chain {
namespace {

const std::string kFixtures = LRCOIN_FIXTURE_DIR;

struct Signer {
  lrsig::KeyPair keys;
  ChaChaRng rng;

  explicit Signer(std::uint64_t seed, const bilinear::BilinearParams& params =
                                          bilinear::BilinearParams::mock(101))
      : keys([&] {
          ChaChaRng k(seed);
          return lrsig::keygen(params, k);
        }()),
        rng(seed + 1000) {}

  Transaction sign(Transaction tx) { return sign_tx(std::move(tx), keys.pk, keys.sk, rng); }
};

Hash h(std::string_view s) { return sha256(as_bytes(s)); }

TEST(TransactionTest, RoundTripAndInjectivity) {
  Signer s(1);
  std::vector<Transaction> corpus{
      s.sign(make_sale("temp", 10, h("a"), "stub://a")),
      s.sign(make_sale("", 0, h(""), "")),
      s.sign(make_purchase("temp", 15)),
      s.sign(make_purchase(std::string(300, 'x'), ~0ull)),
  };
  corpus.push_back(s.sign(make_payment(corpus[0], corpus[2])));
  corpus.push_back(make_purchase("unsigned", 1));
  for (const auto& tx : corpus) {
    const Bytes b = tx.encode();
    EXPECT_EQ(Transaction::decode(b), tx);
    EXPECT_EQ(Transaction::decode(b).encode(), b);
  }
  Transaction a = make_sale("temp", 10, h("a"), "u"), b = a;
  b.amount = 11;
  EXPECT_NE(a.encode(), b.encode());
  EXPECT_NE(a.id(), b.id());
}

TEST(TransactionTest, LayoutAndBounds) {
  Transaction p = make_purchase("ab", 258);
  p.author_pk = {0xaa};
  p.sig = {0xbb, 0xcc};
  EXPECT_EQ(to_hex(p.encode()), "02" "0002" "6162" "0000000000000102" "0001aa" "0002bbcc");
  EXPECT_EQ(to_hex(p.signing_bytes()), "02" "0002" "6162" "0000000000000102" "0001aa");

  EXPECT_THROW(make_purchase(std::string(1 << 16, 't'), 1).encode(), std::length_error);
  EXPECT_NO_THROW(make_purchase(std::string((1 << 16) - 1, 't'), 1).encode());
}

TEST(TransactionTest, DecodeRejectsMalformedInput) {
  const Bytes good = make_purchase("t", 1).encode();
  Bytes bad_kind = good;
  bad_kind[0] = 4;
  EXPECT_THROW(Transaction::decode(bad_kind), DecodeError);
  Bytes trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(Transaction::decode(trailing), DecodeError);
  for (std::size_t n = 0; n < good.size(); ++n)
    EXPECT_THROW(Transaction::decode(ByteView(good).first(n)), DecodeError);
}

TEST(TransactionTest, GoldenSaleIsByteStable) {
  const Bytes raw = fixtures::read_file(kFixtures + "/sale_temp.hex");
  std::string hex(raw.begin(), raw.end());
  while (!hex.empty() && hex.back() == '\n') hex.pop_back();
  const Transaction tx = fixtures::golden_sale();
  EXPECT_EQ(to_hex(tx.encode()), hex);
  EXPECT_TRUE(verify_tx(Transaction::decode(from_hex(hex))));
  EXPECT_EQ(tx.topic, "temp");
  EXPECT_EQ(tx.amount, 10u);
}

TEST(SignTxTest, SignerAdvancesOneRoundPerTx) {
  Signer s(2);
  for (std::uint64_t i = 1; i <= 6; ++i) {
    Transaction tx = s.sign(make_purchase("t" + std::to_string(i), i));
    EXPECT_TRUE(verify_tx(tx));
    EXPECT_EQ(s.keys.sk.active.round, i);
    EXPECT_EQ(s.keys.sk.passive.round, i);
    EXPECT_TRUE(lrsig::shares_consistent(s.keys.pk, s.keys.sk));
  }
}

TEST(SignTxTest, TamperingBreaksVerification) {
  const auto wide = bilinear::BilinearParams::mock(bilinear::kWideMockPrime,
                                                   bilinear::MockRange::wide);
  Signer s(3, wide);
  Transaction a = s.sign(make_sale("temp", 10, h("x"), "stub://x"));
  Transaction b = s.sign(make_sale("temp", 11, h("y"), "stub://y"));
  ASSERT_TRUE(verify_tx(a) && verify_tx(b));

  Transaction t = a;
  t.amount = 1000;
  EXPECT_FALSE(verify_tx(t));
  std::swap(a.sig, b.sig);
  EXPECT_FALSE(verify_tx(a));
  EXPECT_FALSE(verify_tx(b));

  Transaction junk = b;
  junk.sig = {1, 2, 3};
  EXPECT_FALSE(verify_tx(junk));
  junk = b;
  junk.author_pk = {9};
  EXPECT_FALSE(verify_tx(junk));
  EXPECT_FALSE(verify_tx(make_purchase("unsigned", 1)));
}

TEST(SignTxTest, CurveSignedTransaction) {
  Signer s(4, bilinear::BilinearParams::curve());
  Transaction tx = s.sign(make_purchase("temp", 15));
  EXPECT_TRUE(verify_tx(tx));
  tx.amount = 16;
  EXPECT_FALSE(verify_tx(tx));
}

TEST(MerkleTest, SmallTrees) {
  Transaction a = make_purchase("a", 1), b = make_purchase("b", 2), c = make_purchase("c", 3);
  EXPECT_THROW(merkle_root({}), std::invalid_argument);

  // Independent recomputation straight from the byte rule.
  auto leaf = [](const Transaction& tx) {
    Bytes in{0x00};
    Bytes e = tx.encode();
    in.insert(in.end(), e.begin(), e.end());
    return sha256(in);
  };
  auto node = [](const Hash& l, const Hash& r) {
    Bytes in{0x01};
    in.insert(in.end(), l.begin(), l.end());
    in.insert(in.end(), r.begin(), r.end());
    return sha256(in);
  };
  EXPECT_EQ(merkle_root({a}), leaf(a));
  EXPECT_EQ(merkle_root({a, b}), node(leaf(a), leaf(b)));
  EXPECT_NE(merkle_root({a, b}), merkle_root({b, a}));
  EXPECT_EQ(merkle_root({a, b, c}), node(node(leaf(a), leaf(b)), node(leaf(c), leaf(c))));
  EXPECT_EQ(merkle_root({a, b, c}), merkle_root({a, b, c}));
}

class ChainFixture : public ::testing::Test {
 protected:
  std::vector<Block> blocks = fixtures::five_block_chain();
};

TEST_F(ChainFixture, MatchesFrozenFile) {
  const Bytes frozen = fixtures::read_file(kFixtures + "/chain5.lrcn");
  EXPECT_EQ(encode_chain_file(blocks), frozen);
  EXPECT_LE(frozen.size(), 4096u);
  EXPECT_EQ(decode_chain_file(frozen), blocks);
}

TEST_F(ChainFixture, ValidChainValidates) {
  ASSERT_EQ(blocks.size(), 6u);
  ValidationReport r = validate_chain(blocks);
  EXPECT_TRUE(r.valid) << r.error;
  EXPECT_EQ(r.blocks, 6u);
  EXPECT_EQ(r.txs, 11u);
  EXPECT_TRUE(validate_chain({genesis()}).valid);
  EXPECT_FALSE(validate_chain({}).valid);

  Chain c(blocks[0]);
  for (std::size_t i = 1; i < blocks.size(); ++i) c.append(blocks[i]);
  EXPECT_EQ(c.tip(), blocks.back());
  EXPECT_NE(c.find_tx(blocks[3].txs[0].id()), nullptr);
  EXPECT_EQ(c.find_tx(Hash{}), nullptr);
}

TEST_F(ChainFixture, SerialAndParallelAgree) {
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    Block bad = blocks[i];
    bad.txs[0].sig.back() ^= 1;
    bad.header.merkle_root = merkle_root(bad.txs);
    std::vector<Block> copy = blocks;
    copy[i] = bad;
    auto s = validate_chain(copy, Exec::serial);
    auto p = validate_chain(copy, Exec::parallel);
    EXPECT_EQ(s.valid, p.valid);
    EXPECT_EQ(s.failed_height, p.failed_height);
  }
}

TEST_F(ChainFixture, TamperedTransactionFails) {
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    for (std::size_t t = 0; t < blocks[i].txs.size(); ++t) {
      std::vector<Block> copy = blocks;
      copy[i].txs[t].amount += 1;
      auto r = validate_chain(copy);
      EXPECT_FALSE(r.valid);
      EXPECT_EQ(r.failed_height, i);
    }
  }
}

TEST_F(ChainFixture, MislinkedBlockFails) {
  std::vector<Block> copy = blocks;
  copy[3].header.prev_hash = blocks[1].hash();  // grandparent
  EXPECT_FALSE(validate_chain(copy).valid);
  EXPECT_FALSE(validate_block(copy[3], copy[2]));

  copy = blocks;
  copy[2].header.height = 5;
  EXPECT_FALSE(validate_chain(copy).valid);

  copy = blocks;
  std::swap(copy[2], copy[3]);
  EXPECT_FALSE(validate_chain(copy).valid);
}

TEST_F(ChainFixture, ForeignBlockIsRejected) {
  // Re-sealing a tampered body with a fresh root still fails on signatures.
  Block b = blocks[1];
  b.txs[0].amount = 1;
  b.header.merkle_root = merkle_root(b.txs);
  EXPECT_FALSE(validate_block(b, blocks[0]));
  Chain c(blocks[0]);
  EXPECT_THROW(c.append(b), ChainError);
  EXPECT_EQ(c.blocks().size(), 1u);
  EXPECT_THROW(build_block(blocks[0], {b.txs[0]}, 5), ChainError);
  EXPECT_THROW(build_block(blocks[0], {}, 5), ChainError);
}

TEST_F(ChainFixture, PaymentReferencesAreChecked) {
  // Block 5 pays for the co2 sale; paying for it again must fail.
  const Transaction& pay = blocks[5].txs[0];
  Chain c(blocks[0]);
  for (std::size_t i = 1; i < blocks.size(); ++i) c.append(blocks[i]);
  Signer bob(99);
  Transaction again = pay;
  again.sig.clear();
  EXPECT_THROW(c.append(build_block(c.tip(), {bob.sign(again)}, 9999)), ChainError);

  // A payment whose sale is unknown.
  Transaction orphan = make_payment(make_sale("x", 1, h("x"), "u"), blocks[2].txs[0]);
  EXPECT_THROW(c.append(build_block(c.tip(), {bob.sign(orphan)}, 9999)), ChainError);
  EXPECT_EQ(c.blocks().size(), 6u);

  // Duplicate transaction across blocks.
  std::vector<Block> copy = blocks;
  copy.push_back(build_block(copy.back(), {blocks[1].txs[0]}, 9999));
  ValidationReport r = validate_chain(copy);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.failed_height, 6u);
}

TEST_F(ChainFixture, FileFormatRejectsDamage) {
  Bytes file = encode_chain_file(blocks);
  EXPECT_EQ(std::string(file.begin(), file.begin() + 4), "LRCN");
  Bytes bad = file;
  bad[4] = 2;
  EXPECT_THROW(decode_chain_file(bad), DecodeError);
  bad = file;
  bad.back() ^= 1;
  EXPECT_THROW(decode_chain_file(bad), DecodeError);
  bad = file;
  bad.push_back(0);
  EXPECT_THROW(decode_chain_file(bad), DecodeError);
  EXPECT_THROW(decode_chain_file(ByteView(file).first(file.size() - 1)), DecodeError);
  EXPECT_TRUE(decode_chain_file(encode_chain_file({})).empty());
}

// Exhaustive single-byte flips. Every byte belongs to some hashed field
// (header, transaction, or the trailing tip hash), so each flip must either
// fail to decode or fail validation.
TEST_F(ChainFixture, EveryByteFlipIsDetected) {
  const Bytes file = encode_chain_file(blocks);
  std::size_t undetected = 0;
  for (std::size_t i = 0; i < file.size(); ++i) {
    for (std::uint8_t mask : {0x01, 0x80, 0xff}) {
      Bytes m = file;
      m[i] ^= mask;
      try {
        if (validate_chain(decode_chain_file(m), Exec::serial).valid) ++undetected;
      } catch (const DecodeError&) {
      }
    }
  }
  EXPECT_EQ(undetected, 0u);
}

}  // namespace
}  // namespace lrcoin::chain
