// Copyright 2026 The superx Authors
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

#ifndef SUPERX_NETGRAPH_IO_HPP_
#define SUPERX_NETGRAPH_IO_HPP_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "superx/netgraph.hpp"

namespace superx {

inline constexpr int kFormatVersion = 1;

// FNV-1a 64-bit hash, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);

// Adds/validates a "checksum" member computed over the compact dump of the
// object without that member.
void attach_checksum(nlohmann::json& j);
void check_checksum(const nlohmann::json& j);

nlohmann::json to_json(const NetGraph& net);
// `prec_override` > 0 parses all values at that precision instead of the
// file's precision_bits.
NetGraph from_json(const nlohmann::json& j, Precision prec_override = 0);

void save(const NetGraph& net, const std::string& path);
NetGraph load(const std::string& path, Precision prec_override = 0);

// Reads a whole JSON file; throws SchemaError with the path on failure.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);
// Requires j["format_version"] == kFormatVersion.
void require_format_version(const nlohmann::json& j, const std::string& what);

}  // namespace superx

#endif  // SUPERX_NETGRAPH_IO_HPP_
