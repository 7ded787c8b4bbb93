// Copyright 2026 The etchog Authors
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

#ifndef ETCHOG_CONFIG_H_
#define ETCHOG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace etchog {

using ConfigMap = std::map<std::string, std::string>;

/// Flat "key = value" text. Blank lines and '#' comments are ignored;
/// later keys override earlier ones. Throws FormatError on other lines.
ConfigMap ParseConfig(const std::string& text);
ConfigMap ReadConfigFile(const std::filesystem::path& path);

/// Decimal or 0x-prefixed hexadecimal 64-bit unsigned integer.
std::uint64_t ParseU64(const std::string& text);
int ParseInt(const std::string& text);
double ParseDouble(const std::string& text);
bool ParseBool(const std::string& text);

}  // namespace etchog

#endif  // ETCHOG_CONFIG_H_
