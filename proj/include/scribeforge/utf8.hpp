// Copyright 2026 The ScribeForge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace scribeforge::utf8 {

// Decodes UTF-8, throwing Utf8Error with the byte offset of the first
// malformed sequence (overlongs, surrogates and values past U+10FFFF
// included).
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
std::string encode(char32_t symbol);

// Printable form for diagnostics, e.g. "'§' (U+00A7)".
std::string describe(char32_t symbol);

}  // namespace scribeforge::utf8
