#pragma once

// Command-line driver.  Every artifact embeds a run manifest (command,
// resolved parameters, precision, seed, version, timestamp, input digests);
// `replay --manifest F` re-executes it and reproduces the artifact byte for
// byte.
//
// Exit status: 0 success, 1 failed construction or certificate,
// 2 precondition violation or bad usage, 3 precision cap or undecided ordering.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace beurling {

inline constexpr const char* kLibraryVersion = "0.1.0";

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a byte string and of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string file_sha256(const std::string& path);

/// Manifest embedded in a JSON artifact or in the first line of a CSV artifact.
nlohmann::json read_manifest(const std::string& path);

}  // namespace beurling
