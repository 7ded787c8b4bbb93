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

#include "etchog/config.h"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "etchog/errors.h"

namespace etchog {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ConfigMap ParseConfig(const std::string& text) {
  ConfigMap map;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(number) +
                        ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw FormatError("config line " + std::to_string(number) + ": empty key");
    }
    map[key] = Trim(line.substr(eq + 1));
  }
  return map;
}

ConfigMap ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str());
}

std::uint64_t ParseU64(const std::string& text) {
  const std::string s = Trim(text);
  if (s.empty() || s[0] == '-' || s[0] == '+') {
    throw InvalidArgument("not an unsigned 64-bit integer: '" + text + "'");
  }
  const bool hex = s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
  errno = 0;
  char* end = nullptr;
  const unsigned long long v =
      std::strtoull(s.c_str() + (hex ? 2 : 0), &end, hex ? 16 : 10);
  if (errno == ERANGE || end != s.c_str() + s.size() ||
      end == s.c_str() + (hex ? 2 : 0)) {
    throw InvalidArgument("not an unsigned 64-bit integer: '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

int ParseInt(const std::string& text) {
  const std::string s = Trim(text);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || errno == ERANGE || end != s.c_str() + s.size() ||
      v < -2147483647L || v > 2147483647L) {
    throw InvalidArgument("not an integer: '" + text + "'");
  }
  return static_cast<int>(v);
}

double ParseDouble(const std::string& text) {
  const std::string s = Trim(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  return v;
}

bool ParseBool(const std::string& text) {
  const std::string s = Trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InvalidArgument("not a boolean: '" + text + "'");
}

}  // namespace etchog
