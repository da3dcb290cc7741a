#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaos.hpp"

namespace chaoscrypt {

/// Every generator the toolkit can build. The numeric values are the
/// generator-kind byte of the envelope format and must not change.
enum class GeneratorKind : std::uint8_t {
    Chua = 0,
    Lorenz = 1,
    Rossler = 2,
    Henon = 3,
    Logistic = 4,
    HybridHenon = 5,
    HybridLogistic = 6,
};

enum class GeneratorFamily { SingleContinuous, SingleDiscrete, HybridLogistic, HybridHenon };

std::string_view generator_name(GeneratorKind kind) noexcept;
GeneratorKind generator_from_name(std::string_view name);
std::optional<GeneratorKind> generator_from_byte(std::uint8_t value) noexcept;
GeneratorFamily family_of(GeneratorKind kind) noexcept;
bool is_hybrid(GeneratorKind kind) noexcept;
// The chaotic system each map of `kind` runs.
SystemKind map_system(GeneratorKind kind) noexcept;

inline constexpr std::uint64_t kDefaultDiscreteTransient = 1000;
inline constexpr std::uint64_t kDefaultContinuousTransient = 5000;
inline constexpr std::uint64_t kDefaultSequenceLength = 1'000'000;
inline constexpr double kDefaultTimeStep = 0.01;

struct MapDescriptor {
    SystemParams params;
    StateVector initial;

    SystemKind kind() const noexcept { return kind_of(params); }
    friend bool operator==(const MapDescriptor&, const MapDescriptor&) = default;
};

/// Complete recipe for a bit generator. Immutable once built; share freely.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::HybridLogistic;
    MapDescriptor first;
    std::optional<MapDescriptor> second;  // hybrids only
    std::uint64_t transient = kDefaultDiscreteTransient;
    std::uint64_t n_bits = kDefaultSequenceLength;
    std::size_t sample_component = 0;
    double dt = kDefaultTimeStep;  // continuous systems only

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

// Throws ContractViolation describing the first broken invariant.
void validate(const GeneratorSpec& spec);

/// Length-tagged packed bit string, MSB-first within each byte. Unused
/// trailing bits of the last byte are always zero.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::uint64_t length);

    static BitSequence from_bits(std::span<const std::uint8_t> bits);
    static BitSequence from_packed(std::vector<std::uint8_t> bytes, std::uint64_t length);
    static BitSequence from_string(std::string_view zeros_and_ones);

    std::uint64_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }
    bool operator[](std::uint64_t i) const noexcept { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }
    void set(std::uint64_t i, bool value) noexcept;

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    // One byte (0 or 1) per bit.
    std::vector<std::uint8_t> unpack() const;
    std::uint64_t count_ones() const noexcept;

    friend bool operator==(const BitSequence&, const BitSequence&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t length_ = 0;
};

std::vector<double> sample_orbit(const GeneratorSpec& spec);
BitSequence binarize_mean(std::span<const double> samples);
BitSequence hybrid_bits(const GeneratorSpec& spec);
// Dispatches on the spec's family: mean-threshold for single systems,
// pairwise comparison for hybrids.
BitSequence generate_bits(const GeneratorSpec& spec);

/// Key material: a generator recipe plus, when derived, the seed it came from.
struct CipherKey {
    GeneratorSpec spec;
    std::optional<std::string> hex_seed;

    friend bool operator==(const CipherKey&, const CipherKey&) = default;
};

inline constexpr std::size_t kHexSeedLength = 64;
inline constexpr int kMaxKeyPerturbations = 8;

GeneratorSpec derive_spec_from_hex(std::string_view hex_seed, GeneratorKind kind);
CipherKey derive_key(std::string_view hex_seed, GeneratorKind kind);

// Canonical `key=value` text form, one field per line in fixed order.
std::string serialize_key(const CipherKey& key);
CipherKey parse_key(std::string_view text);

std::vector<std::uint8_t> keystream_bytes(const BitSequence& bits, std::size_t byte_count);

}  // namespace chaoscrypt
