#include "cipher.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "special_functions.hpp"

namespace chaoscrypt {

void validate(const ImageBuffer& image) {
    require(image.width >= 1 && image.height >= 1, "image dimensions must be at least 1x1");
    require(image.channels == 1 || image.channels == 3, "image channels must be 1 or 3");
    require(image.data.size() == image.byte_count(), "image data length does not match its dimensions");
}

std::vector<std::uint8_t> keystream_for(const CipherKey& key, std::uint64_t byte_count, std::uint64_t bit_budget) {
    require(byte_count > 0, "keystream of zero bytes requested");
    if (byte_count > bit_budget / 8) {
        throw Error(ErrorCode::Length, "image needs " + std::to_string(8 * byte_count) +
                                           " keystream bits, over the budget of " + std::to_string(bit_budget));
    }
    GeneratorSpec spec = key.spec;
    spec.n_bits = 8 * byte_count;
    return keystream_bytes(generate_bits(spec), static_cast<std::size_t>(byte_count));
}

namespace {

void xor_into(std::vector<std::uint8_t>& data, const std::vector<std::uint8_t>& stream) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] ^= stream[i];
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

}  // namespace

CipherEnvelope encrypt(const ImageBuffer& image, const CipherKey& key, std::uint64_t bit_budget) {
    validate(image);
    CipherEnvelope env;
    env.header.width = image.width;
    env.header.height = image.height;
    env.header.channels = image.channels;
    env.header.kind = key.spec.kind;
    env.ciphertext = image.data;
    xor_into(env.ciphertext, keystream_for(key, image.data.size(), bit_budget));
    return env;
}

ImageBuffer decrypt(const CipherEnvelope& envelope, const CipherKey& key, std::uint64_t bit_budget) {
    const auto& h = envelope.header;
    if (h.version != kEnvelopeVersion) {
        throw Error(ErrorCode::Format, "unsupported envelope version " + std::to_string(h.version));
    }
    if (h.kind != key.spec.kind) {
        throw Error(ErrorCode::Format, "envelope was made with generator '" + std::string(generator_name(h.kind)) +
                                           "' but the key is for '" +
                                           std::string(generator_name(key.spec.kind)) + "'");
    }
    ImageBuffer image{h.width, h.height, h.channels, envelope.ciphertext};
    if (h.width == 0 || h.height == 0 || (h.channels != 1 && h.channels != 3) ||
        image.data.size() != image.byte_count()) {
        throw Error(ErrorCode::Format, "envelope dimensions do not match its ciphertext length");
    }
    xor_into(image.data, keystream_for(key, image.data.size(), bit_budget));
    return image;
}

std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& envelope) {
    std::vector<std::uint8_t> out(kEnvelopeMagic.begin(), kEnvelopeMagic.end());
    out.reserve(kEnvelopeHeaderSize + envelope.ciphertext.size());
    out.push_back(envelope.header.version);
    put_u32(out, envelope.header.width);
    put_u32(out, envelope.header.height);
    out.push_back(envelope.header.channels);
    out.push_back(static_cast<std::uint8_t>(envelope.header.kind));
    out.insert(out.end(), envelope.ciphertext.begin(), envelope.ciphertext.end());
    return out;
}

CipherEnvelope parse_envelope(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kEnvelopeHeaderSize) {
        throw Error(ErrorCode::Format, "envelope truncated: header needs " + std::to_string(kEnvelopeHeaderSize) +
                                           " bytes, got " + std::to_string(bytes.size()));
    }
    if (!std::equal(kEnvelopeMagic.begin(), kEnvelopeMagic.end(), bytes.begin())) {
        throw Error(ErrorCode::Format, "not a cipher envelope (bad magic)");
    }
    CipherEnvelope env;
    env.header.version = bytes[4];
    if (env.header.version != kEnvelopeVersion) {
        throw Error(ErrorCode::Format, "unsupported envelope version " + std::to_string(env.header.version));
    }
    env.header.width = get_u32(bytes.data() + 5);
    env.header.height = get_u32(bytes.data() + 9);
    env.header.channels = bytes[13];
    const auto kind = generator_from_byte(bytes[14]);
    if (!kind) throw Error(ErrorCode::Format, "unknown generator kind byte " + std::to_string(bytes[14]));
    env.header.kind = *kind;
    if (env.header.width == 0 || env.header.height == 0 || (env.header.channels != 1 && env.header.channels != 3)) {
        throw Error(ErrorCode::Format, "envelope header has invalid dimensions");
    }
    const std::uint64_t expected = std::uint64_t{env.header.width} * env.header.height * env.header.channels;
    const std::uint64_t actual = bytes.size() - kEnvelopeHeaderSize;
    if (actual != expected) {
        throw Error(ErrorCode::Format, "envelope dimension mismatch: header declares " + std::to_string(expected) +
                                           " ciphertext bytes, found " + std::to_string(actual));
    }
    env.ciphertext.assign(bytes.begin() + kEnvelopeHeaderSize, bytes.end());
    return env;
}

Histogram histogram(std::span<const std::uint8_t> data) {
    if (data.empty()) throw Error(ErrorCode::Length, "histogram of empty data");
    Histogram hist{};
    for (auto b : data) ++hist[b];
    return hist;
}

double chi_square_statistic(const Histogram& hist) {
    const std::uint64_t total = std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
    if (total < 5 * hist.size()) {
        throw Error(ErrorCode::Length, "uniformity test needs at least " + std::to_string(5 * hist.size()) +
                                           " samples, got " + std::to_string(total));
    }
    const double expected = static_cast<double>(total) / static_cast<double>(hist.size());
    double chi2 = 0.0;
    for (auto c : hist) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d;
    }
    return chi2 / expected;
}

double chi_square_uniformity(const Histogram& hist) {
    return igamc(255.0 / 2.0, chi_square_statistic(hist) / 2.0);
}

}  // namespace chaoscrypt
