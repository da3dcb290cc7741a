#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prng.hpp"

namespace chaoscrypt {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it into place, so a
// failed write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

// Writes several files; none of them is renamed into place unless every
// temporary was written successfully.
void write_files_atomic(std::span<const std::pair<std::filesystem::path, std::string>> files);

/// Metadata stored next to a bit file as `<path>.meta`.
struct BitFileMeta {
    std::string kind;
    std::uint64_t bits = 0;
    std::uint64_t transient = 0;
};

std::filesystem::path sidecar_path(const std::filesystem::path& bit_file);
void save_bit_file(const std::filesystem::path& path, const BitSequence& bits, const BitFileMeta& meta);
// Reads packed bits; the true length comes from the sidecar when present,
// otherwise every bit of the file is used.
BitSequence load_bit_file(const std::filesystem::path& path, BitFileMeta* meta = nullptr);

std::string format_meta(const BitFileMeta& meta);
BitFileMeta parse_meta(std::string_view text);

}  // namespace chaoscrypt
