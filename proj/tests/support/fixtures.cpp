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

#include "fixtures.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace lrcoin::fixtures {

namespace {

using chain::Block;
using chain::Transaction;

struct Signer {
  lrsig::KeyPair keys;
  ChaChaRng rng;

  Transaction sign(Transaction tx) { return chain::sign_tx(std::move(tx), keys.pk, keys.sk, rng); }
};

Signer make_signer(std::uint64_t seed, std::uint64_t index) {
  ChaChaRng root(seed);
  ChaChaRng keyrng = root.derive("key", index);
  auto params = bilinear::BilinearParams::mock(bilinear::kDefaultToyPrime);
  return {lrsig::keygen(params, keyrng), root.derive("sign", index)};
}

Transaction sale(Signer& s, const std::string& topic, std::uint64_t price, std::string_view data) {
  const chain::Hash h = sha256(as_bytes(data));
  return s.sign(chain::make_sale(topic, price, h, "stub://" + to_hex(h)));
}

}  // namespace

Transaction golden_sale() {
  Signer s = make_signer(2026, 0);
  return sale(s, "temp", 10, "21.5C");
}

std::vector<Block> five_block_chain() {
  Signer alice = make_signer(7, 0), bob = make_signer(7, 1), carol = make_signer(7, 2),
         dave = make_signer(7, 3);
  std::vector<Block> out{chain::genesis(1000)};
  auto seal = [&](std::vector<Transaction> txs) {
    out.push_back(chain::build_block(out.back(), std::move(txs), 1000 + 60 * out.size()));
  };

  Transaction s_temp = sale(alice, "temp", 10, "21.5C");
  seal({s_temp});

  Transaction p_temp = bob.sign(chain::make_purchase("temp", 15));
  Transaction s_hum = sale(carol, "humidity", 7, "40%");
  seal({p_temp, s_hum});

  Transaction p_hum = dave.sign(chain::make_purchase("humidity", 7));
  Transaction s_co2 = sale(alice, "co2", 3, "410ppm");
  seal({bob.sign(chain::make_payment(s_temp, p_temp)), p_hum, s_co2});

  Transaction p_co2 = bob.sign(chain::make_purchase("co2", 5));
  seal({dave.sign(chain::make_payment(s_hum, p_hum)), p_co2,
        dave.sign(chain::make_purchase("temp", 1)), sale(carol, "light", 2, "300lx")});

  seal({bob.sign(chain::make_payment(s_co2, p_co2))});
  return out;
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace lrcoin::fixtures
