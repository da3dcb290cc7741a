#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "prng.hpp"

namespace chaoscrypt {

struct ImageBuffer {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 1;  // 1 grayscale, 3 RGB
    std::vector<std::uint8_t> data;  // row-major, interleaved channels

    std::uint64_t byte_count() const noexcept {
        return std::uint64_t{width} * height * channels;
    }
    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

// Throws ContractViolation unless dimensions are positive, channels is 1 or 3
// and the data length matches.
void validate(const ImageBuffer& image);

inline constexpr std::array<std::uint8_t, 4> kEnvelopeMagic{'C', 'H', 'C', 'R'};
inline constexpr std::uint8_t kEnvelopeVersion = 1;
inline constexpr std::size_t kEnvelopeHeaderSize = 15;

// Largest keystream `encrypt` will generate, in bits.
inline constexpr std::uint64_t kDefaultBitBudget = std::uint64_t{1} << 31;

struct EnvelopeHeader {
    std::uint8_t version = kEnvelopeVersion;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 1;
    GeneratorKind kind = GeneratorKind::HybridLogistic;

    friend bool operator==(const EnvelopeHeader&, const EnvelopeHeader&) = default;
};

struct CipherEnvelope {
    EnvelopeHeader header;
    std::vector<std::uint8_t> ciphertext;

    friend bool operator==(const CipherEnvelope&, const CipherEnvelope&) = default;
};

// The keystream for `byte_count` bytes under `key`: the key's generator run
// for exactly 8 * byte_count bits.
std::vector<std::uint8_t> keystream_for(const CipherKey& key, std::uint64_t byte_count,
                                        std::uint64_t bit_budget = kDefaultBitBudget);

CipherEnvelope encrypt(const ImageBuffer& image, const CipherKey& key,
                       std::uint64_t bit_budget = kDefaultBitBudget);
ImageBuffer decrypt(const CipherEnvelope& envelope, const CipherKey& key,
                    std::uint64_t bit_budget = kDefaultBitBudget);

std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& envelope);
// Raises ErrorCode::Format with a specific message for each defect.
CipherEnvelope parse_envelope(std::span<const std::uint8_t> bytes);

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(std::span<const std::uint8_t> data);
// Chi-square goodness of fit against the flat distribution, 255 degrees of
// freedom. Requires at least 5 expected counts per bin.
double chi_square_statistic(const Histogram& hist);
double chi_square_uniformity(const Histogram& hist);

}  // namespace chaoscrypt
