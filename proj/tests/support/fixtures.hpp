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

#include <string>
#include <vector>

#include "lrcoin/chain.hpp"

// Deterministic test fixtures. The generator target writes them to
// tests/fixtures once; tests rebuild them and compare against the frozen
// files.
namespace lrcoin::fixtures {

/// sale{topic="temp", price=10} signed by a toy key from seed 2026.
chain::Transaction golden_sale();

/// Genesis plus five blocks of 1, 2, 3, 4 and 1 transactions (sales,
/// purchases and the payments matching them) under toy keys.
std::vector<chain::Block> five_block_chain();

Bytes read_file(const std::string& path);
void write_file(const std::string& path, ByteView data);

}  // namespace lrcoin::fixtures
