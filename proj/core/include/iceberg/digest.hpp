#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace iceberg {

// FNV-1a, 64 bit. Used to fingerprint input files in run metadata.
std::uint64_t fnv1a64(std::string_view bytes);

/// Digest of a file's raw bytes as a 16-char lowercase hex string.
std::string file_digest(const std::filesystem::path& path);

} // namespace iceberg
