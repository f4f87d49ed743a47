// dtlse: software model of a reconfigurable DTLS 1.3 cryptographic engine
// Copyright 2026 The dtlse Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>

namespace dtlse {

/// Line-oriented key=value parser shared by curve descriptions, calibration
/// tables and simulation scenarios. '#' starts a comment; keys and values are
/// trimmed; duplicate keys are rejected.
std::map<std::string, std::string> parse_kv(std::string_view text);

std::map<std::string, std::string> parse_kv_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace dtlse
