#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "prng.hpp"

using namespace chaoscrypt;

namespace {

std::string random_seed(std::mt19937_64& rng) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < kHexSeedLength; ++i) s += digits[rng() % 16];
    return s;
}

std::string flip_bit(std::string seed, unsigned bit) {
    const std::size_t nibble = bit / 4;
    const int value = std::stoi(seed.substr(nibble, 1), nullptr, 16) ^ (1 << (3 - bit % 4));
    seed[nibble] = "0123456789abcdef"[value];
    return seed;
}

GeneratorSpec logistic_spec(double lambda, double x0, std::uint64_t n) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::Logistic;
    spec.first = {LogisticParams{lambda}, StateVector{x0}};
    spec.transient = 0;
    spec.n_bits = n;
    return spec;
}

GeneratorSpec logistic_pair(double l1, double x0, double l2, double y0, std::uint64_t n) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::HybridLogistic;
    spec.first = {LogisticParams{l1}, StateVector{x0}};
    spec.second = MapDescriptor{LogisticParams{l2}, StateVector{y0}};
    spec.transient = 0;
    spec.n_bits = n;
    return spec;
}

}  // namespace

TEST_CASE("sample_orbit") {
    CHECK(sample_orbit(logistic_spec(4.0, 0.75, 3)) == std::vector<double>{0.75, 0.75, 0.75});

    GeneratorSpec h;
    h.kind = GeneratorKind::Henon;
    h.first = {HenonParams{}, StateVector{0.0, 0.0}};
    h.transient = 0;
    h.n_bits = 2;
    const auto xs = sample_orbit(h);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == doctest::Approx(1.0));
    CHECK(xs[1] == doctest::Approx(-0.4));

    SUBCASE("transient k equals dropping the first k samples") {
        auto base = logistic_spec(3.9, 0.123, 50);
        const auto full = sample_orbit(base);
        base.transient = 10;
        base.n_bits = 40;
        const auto tail = sample_orbit(base);
        CHECK(tail == std::vector<double>(full.begin() + 10, full.end()));
    }
}

TEST_CASE("binarize_mean") {
    const std::vector<double> a{1, 2, 3};
    CHECK(binarize_mean(a) == BitSequence::from_string("001"));
    const std::vector<double> flat(17, 0.3);
    CHECK(binarize_mean(flat).count_ones() == 0);
    const std::vector<double> sym{-1, 1};
    CHECK(binarize_mean(sym) == BitSequence::from_string("01"));
    CHECK_THROWS_AS(binarize_mean(std::span<const double>{}), Error);
}

TEST_CASE("binarize_mean commutes with positive affine maps") {
    // Dyadic samples with power-of-two scales and integer shifts keep every
    // transformed value exact.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        const double scale = std::ldexp(1.0, static_cast<int>(rng() % 7) - 3);
        const double shift = static_cast<double>(static_cast<int>(rng() % 41) - 20);
        std::vector<double> x(257), y(257);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::round(g(rng) * 64) / 64;
            y[i] = scale * x[i] + shift;
        }
        CHECK(binarize_mean(x) == binarize_mean(y));
    }
}

TEST_CASE("hybrid comparison rule") {
    // 1 - 1/3.9 is an unstable fixed point; rounding error grows by 1.9 per
    // step, so keep the run short.
    const double y_fixed = 1.0 - 1.0 / 3.9;
    const auto ones = hybrid_bits(logistic_pair(4.0, 0.75, 3.9, y_fixed, 16));
    CHECK(ones.count_ones() == 16);
    const auto zeros = hybrid_bits(logistic_pair(3.9, y_fixed, 4.0, 0.75, 16));
    CHECK(zeros.count_ones() == 0);

    SUBCASE("swapping the maps complements the output") {
        const auto a = hybrid_bits(logistic_pair(3.99, 0.2, 3.98, 0.7, 4096));
        const auto b = hybrid_bits(logistic_pair(3.98, 0.7, 3.99, 0.2, 4096));
        for (std::uint64_t i = 0; i < a.size(); ++i) REQUIRE(a[i] != b[i]);
    }
    SUBCASE("identical maps are rejected") {
        CHECK_THROWS_AS(hybrid_bits(logistic_pair(3.9, 0.3, 3.9, 0.3, 16)), Error);
    }
}

TEST_CASE("generators return exactly n_bits") {
    std::mt19937_64 rng(5);
    for (auto kind : {GeneratorKind::Lorenz, GeneratorKind::Rossler, GeneratorKind::Henon, GeneratorKind::Logistic,
                      GeneratorKind::HybridHenon, GeneratorKind::HybridLogistic}) {
        auto key = derive_key(random_seed(rng), kind);
        for (std::uint64_t n : {1ull, 7ull, 8ull, 1001ull}) {
            key.spec.n_bits = n;
            CHECK(generate_bits(key.spec).size() == n);
        }
    }
}

TEST_CASE("chua with the literal parameters diverges") {
    std::mt19937_64 rng(9);
    auto key = derive_key(random_seed(rng), GeneratorKind::Chua);
    key.spec.n_bits = 1000;
    CHECK_THROWS_AS(generate_bits(key.spec), DivergenceError);
}

TEST_CASE("hybrid outputs are balanced") {
    std::mt19937_64 rng(21);
    for (auto kind : {GeneratorKind::HybridHenon, GeneratorKind::HybridLogistic}) {
        for (int i = 0; i < 3; ++i) {
            const auto bits = generate_bits(derive_key(random_seed(rng), kind).spec);
            const double ones = static_cast<double>(bits.count_ones()) / static_cast<double>(bits.size());
            CHECK(ones >= 0.49);
            CHECK(ones <= 0.51);
        }
    }
}

TEST_CASE("key derivation") {
    const std::string zero(64, '0');
    SUBCASE("all-zero seed goes through the perturbation path") {
        const auto spec = derive_spec_from_hex(zero, GeneratorKind::HybridLogistic);
        REQUIRE(spec.second);
        CHECK(spec.first.initial != spec.second->initial);
        CHECK_NOTHROW(validate(spec));
    }
    SUBCASE("one-bit seed changes give different specs") {
        std::mt19937_64 rng(2);
        for (int t = 0; t < 64; ++t) {
            const auto seed = random_seed(rng);
            const unsigned bit = static_cast<unsigned>(rng() % 256);
            for (auto kind : {GeneratorKind::HybridHenon, GeneratorKind::HybridLogistic, GeneratorKind::Logistic}) {
                CHECK(derive_spec_from_hex(seed, kind) != derive_spec_from_hex(flip_bit(seed, bit), kind));
            }
        }
    }
    SUBCASE("logistic window and hybrid distinctness") {
        std::mt19937_64 rng(4);
        for (int t = 0; t < 32; ++t) {
            const auto single = derive_spec_from_hex(random_seed(rng), GeneratorKind::Logistic);
            const double lambda = std::get<LogisticParams>(single.first.params).lambda;
            CHECK(lambda >= 3.57);
            CHECK(lambda <= 4.0);
            const auto pair = derive_spec_from_hex(random_seed(rng), GeneratorKind::HybridHenon);
            CHECK(pair.first.params != pair.second->params);
            CHECK(pair.first.initial != pair.second->initial);
        }
    }
    SUBCASE("malformed seeds") {
        CHECK_THROWS_AS(derive_key("abc", GeneratorKind::HybridLogistic), Error);
        std::string bad = zero;
        bad[10] = 'g';
        try {
            (void)derive_key(bad, GeneratorKind::HybridLogistic);
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
        }
    }
    SUBCASE("uppercase and lowercase seeds agree") {
        const std::string s = "00112233445566778899AABBCCDDEEFF00112233445566778899aabbccddeeff";
        std::string lower = s;
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        CHECK(derive_spec_from_hex(s, GeneratorKind::HybridHenon) ==
              derive_spec_from_hex(lower, GeneratorKind::HybridHenon));
    }
}

TEST_CASE("key serialization round-trips") {
    std::mt19937_64 rng(8);
    for (int k = 0; k <= 6; ++k) {
        const auto kind = static_cast<GeneratorKind>(k);
        const auto key = derive_key(random_seed(rng), kind);
        const auto text = serialize_key(key);
        CHECK(parse_key(text) == key);
        CHECK(serialize_key(parse_key(text)) == text);
    }
    CHECK_THROWS_AS(parse_key("chaoscrypt-key v1\nkind=nope\n"), Error);
    CHECK_THROWS_AS(parse_key(""), Error);
}

TEST_CASE("same key gives the same keystream") {
    const auto key = derive_key(std::string(64, 'a'), GeneratorKind::HybridLogistic);
    CHECK(generate_bits(key.spec) == generate_bits(parse_key(serialize_key(key)).spec));
}

TEST_CASE("keystream_bytes") {
    CHECK(keystream_bytes(BitSequence::from_string("10000000"), 1) == std::vector<std::uint8_t>{0x80});
    CHECK(keystream_bytes(BitSequence::from_string("00000001"), 1) == std::vector<std::uint8_t>{0x01});
    CHECK(keystream_bytes(BitSequence::from_string("1010101010101010"), 2) ==
          std::vector<std::uint8_t>{0xAA, 0xAA});
    try {
        (void)keystream_bytes(BitSequence::from_string("1010"), 1);
        FAIL("expected length error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Length);
        CHECK(std::string(e.what()).find('4') != std::string::npos);
    }
}

TEST_CASE("bit sequence packing") {
    const auto b = BitSequence::from_string("1011");
    CHECK(b.size() == 4);
    CHECK(b.bytes() == std::vector<std::uint8_t>{0xB0});
    CHECK(b.unpack() == std::vector<std::uint8_t>{1, 0, 1, 1});
    CHECK(BitSequence::from_packed({0xB0}, 4) == b);
    CHECK_THROWS_AS(BitSequence::from_packed({0xB0, 0x00}, 4), Error);
    CHECK_THROWS_AS(BitSequence::from_string("10x1"), Error);
}
