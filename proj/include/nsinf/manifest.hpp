#pragma once

#include <json.hpp>

#include <string>

namespace nsinf {

/// SHA-256 of the canonical (sorted-key, compact) JSON dump; used as the
/// reproducibility fingerprint of resolved configurations.
std::string sha256_hex(const std::string& bytes);
std::string manifest_hash(const nlohmann::json& resolved_config);

} // namespace nsinf
