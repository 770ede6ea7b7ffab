#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mp2d {

/// Strips leading and trailing ASCII whitespace.
std::string trim(const std::string& s);

/// Whitespace-separated tokens, empties dropped.
std::vector<std::string> whitespace_tokens(const std::string& s);

/// ASCII lowercase copy.
std::string to_lower(const std::string& s);

/// Strips leading and trailing ASCII punctuation from a token.
std::string strip_punctuation(const std::string& token);

/// Percent-encodes everything outside RFC 3986 unreserved characters.
std::string percent_encode(const std::string& s);

/// Decodes %XX escapes; malformed escapes are kept verbatim.
std::string percent_decode(const std::string& s);

/// FNV-1a 64-bit over bytes.
std::uint64_t fnv1a64(const std::string& data);

/// Lowercase hex, zero-padded to 16 digits.
std::string to_hex16(std::uint64_t value);

} // namespace mp2d
