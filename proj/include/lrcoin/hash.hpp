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

#include <array>
#include <cstdint>
#include <initializer_list>

#include "lrcoin/bytes.hpp"

namespace lrcoin {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256 of the concatenation of \p parts.
Digest sha256(ByteView data);
Digest sha256(std::initializer_list<ByteView> parts);

inline ByteView view(const Digest& d) { return {d.data(), d.size()}; }

}  // namespace lrcoin
