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

#include <filesystem>
#include <string>

#include "scribeforge/image.hpp"

namespace scribeforge {

// Reads any PNG as 8-bit grayscale. Colour input is converted to luminance,
// alpha is dropped and 16-bit samples are reduced. Throws FormatError for a
// corrupt file and IoError when the file cannot be opened.
LineImage read_png(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const LineImage& image);

}  // namespace scribeforge
