// Exercises the shared library through its public header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chaoscrypt/chaoscrypt.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

namespace {

const char* kSeed = "9e3779b97f4a7c15f39cc0605cedc8341082276bf3a27251c2b2ae3d27d4eb4f";

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("chaoscrypt_capi_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string take(char* s) {
    std::string out = s;
    cc_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("names and status strings") {
    CHECK(std::string(cc_version()).size() > 0);
    CHECK(std::string(cc_status_name(CC_OK)) != std::string(cc_status_name(CC_ERR_PARSE)));
    cc_kind k;
    REQUIRE(cc_kind_from_name("hybrid-henon", &k) == CC_OK);
    CHECK(k == CC_KIND_HYBRID_HENON);
    CHECK(std::string(cc_kind_name(CC_KIND_LOGISTIC)) == "logistic");
    CHECK(cc_kind_from_name("tent", &k) != CC_OK);
    CHECK(std::strlen(cc_last_error()) > 0);
}

TEST_CASE("null arguments are contract errors") {
    cc_key* key = nullptr;
    CHECK(cc_key_from_hex(nullptr, CC_KIND_LOGISTIC, &key) == CC_ERR_CONTRACT);
    CHECK(cc_key_from_hex(kSeed, CC_KIND_LOGISTIC, nullptr) == CC_ERR_CONTRACT);
    CHECK(cc_generate(nullptr, nullptr) == CC_ERR_CONTRACT);
    CHECK(key == nullptr);
    cc_key_free(nullptr);
    cc_bits_free(nullptr);
}

TEST_CASE("malformed seeds are parse errors") {
    cc_key* key = nullptr;
    CHECK(cc_key_from_hex("abc", CC_KIND_HYBRID_LOGISTIC, &key) == CC_ERR_PARSE);
    CHECK(key == nullptr);
}

TEST_CASE("key generate and battery") {
    cc_key* key = nullptr;
    REQUIRE(cc_key_from_hex(kSeed, CC_KIND_HYBRID_LOGISTIC, &key) == CC_OK);
    CHECK(cc_key_kind(key) == CC_KIND_HYBRID_LOGISTIC);
    REQUIRE(cc_key_set_bits(key, 100'000) == CC_OK);
    CHECK(cc_key_bits(key) == 100'000);
    CHECK(cc_key_set_bits(key, 0) != CC_OK);

    cc_bits* a = nullptr;
    cc_bits* b = nullptr;
    REQUIRE(cc_generate(key, &a) == CC_OK);
    REQUIRE(cc_generate(key, &b) == CC_OK);
    CHECK(cc_bits_length(a) == 100'000);
    uint64_t distance = 1;
    REQUIRE(cc_bits_hamming(a, b, &distance) == CC_OK);
    CHECK(distance == 0);

    cc_report* report = nullptr;
    REQUIRE(cc_run_suite(a, 0.01, "probe", &report) == CC_OK);
    CHECK(cc_report_test_count(report) == 10);
    CHECK(cc_report_pass_count(report) <= cc_report_applicable_count(report));
    CHECK(std::string(cc_report_test_name(report, 0)) == "frequency");
    CHECK(cc_report_test_p_count(report, 0) == 1);
    const double p = cc_report_test_p(report, 0, 0);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    char* text = nullptr;
    REQUIRE(cc_report_text(report, &text) == CC_OK);
    CHECK(take(text).find("probe") != std::string::npos);
    char* json = nullptr;
    REQUIRE(cc_report_json(report, &json) == CC_OK);
    CHECK(take(json).find("\"frequency\"") != std::string::npos);

    cc_report_free(report);
    cc_bits_free(a);
    cc_bits_free(b);
    cc_key_free(key);
}

TEST_CASE("key and bit files roundtrip") {
    const auto dir = scratch_dir();
    cc_key* key = nullptr;
    REQUIRE(cc_key_from_hex(kSeed, CC_KIND_HENON, &key) == CC_OK);
    REQUIRE(cc_key_set_bits(key, 4096) == CC_OK);
    const auto key_path = (dir / "k.key").string();
    REQUIRE(cc_key_save(key, key_path.c_str()) == CC_OK);
    cc_key* loaded = nullptr;
    REQUIRE(cc_key_load(key_path.c_str(), &loaded) == CC_OK);
    char* s1 = nullptr;
    char* s2 = nullptr;
    REQUIRE(cc_key_serialize(key, &s1) == CC_OK);
    REQUIRE(cc_key_serialize(loaded, &s2) == CC_OK);
    CHECK(take(s1) == take(s2));

    cc_bits* bits = nullptr;
    REQUIRE(cc_generate(loaded, &bits) == CC_OK);
    const auto bit_path = (dir / "h.bin").string();
    REQUIRE(cc_bits_save(bits, bit_path.c_str(), "henon", cc_key_transient(loaded)) == CC_OK);
    cc_bits* back = nullptr;
    REQUIRE(cc_bits_load(bit_path.c_str(), &back) == CC_OK);
    CHECK(cc_bits_length(back) == 4096);
    CHECK(std::string(cc_bits_kind(back)) == "henon");
    uint64_t distance = 1;
    REQUIRE(cc_bits_hamming(bits, back, &distance) == CC_OK);
    CHECK(distance == 0);

    cc_bits* missing = nullptr;
    CHECK(cc_bits_load((dir / "absent.bin").string().c_str(), &missing) == CC_ERR_IO);

    cc_bits_free(bits);
    cc_bits_free(back);
    cc_key_free(key);
    cc_key_free(loaded);
    std::filesystem::remove_all(dir);
}

TEST_CASE("packed bits validate their length") {
    const uint8_t bytes[] = {0xF0, 0x80};
    cc_bits* bits = nullptr;
    REQUIRE(cc_bits_from_packed(bytes, 2, 9, &bits) == CC_OK);
    size_t n = 0;
    const uint8_t* data = cc_bits_data(bits, &n);
    CHECK(n == 2);
    CHECK(data[0] == 0xF0);
    cc_bits_free(bits);
    CHECK(cc_bits_from_packed(bytes, 2, 17, &bits) != CC_OK);
}

TEST_CASE("cipher roundtrip and wrong key") {
    std::vector<uint8_t> pixels(24 * 16 * 3);
    for (size_t i = 0; i < pixels.size(); ++i) pixels[i] = static_cast<uint8_t>(i * 7);
    cc_image* image = nullptr;
    REQUIRE(cc_image_new(24, 16, 3, pixels.data(), &image) == CC_OK);
    cc_key* key = nullptr;
    REQUIRE(cc_key_from_hex(kSeed, CC_KIND_HYBRID_LOGISTIC, &key) == CC_OK);

    cc_envelope* env = nullptr;
    REQUIRE(cc_encrypt(image, key, &env) == CC_OK);
    CHECK(cc_envelope_kind(env) == CC_KIND_HYBRID_LOGISTIC);
    size_t n = 0;
    const uint8_t* ct = cc_envelope_ciphertext(env, &n);
    REQUIRE(n == pixels.size());
    CHECK(std::memcmp(ct, pixels.data(), n) != 0);

    const auto dir = scratch_dir();
    const auto env_path = (dir / "c.env").string();
    REQUIRE(cc_envelope_save(env, env_path.c_str()) == CC_OK);
    cc_envelope* loaded = nullptr;
    REQUIRE(cc_envelope_load(env_path.c_str(), &loaded) == CC_OK);

    cc_image* back = nullptr;
    REQUIRE(cc_decrypt(loaded, key, &back) == CC_OK);
    CHECK(cc_image_width(back) == 24);
    CHECK(cc_image_height(back) == 16);
    CHECK(cc_image_channels(back) == 3);
    size_t m = 0;
    const uint8_t* pt = cc_image_data(back, &m);
    REQUIRE(m == pixels.size());
    CHECK(std::memcmp(pt, pixels.data(), m) == 0);

    cc_key* other = nullptr;
    REQUIRE(cc_key_from_hex(kSeed, CC_KIND_HYBRID_HENON, &other) == CC_OK);
    cc_image* wrong = nullptr;
    CHECK(cc_decrypt(loaded, other, &wrong) == CC_ERR_FORMAT);
    CHECK(wrong == nullptr);

    cc_image_free(back);
    cc_envelope_free(env);
    cc_envelope_free(loaded);
    cc_key_free(key);
    cc_key_free(other);
    cc_image_free(image);
    std::filesystem::remove_all(dir);
}

TEST_CASE("histogram and uniformity") {
    std::vector<uint8_t> flat(256 * 20);
    for (size_t i = 0; i < flat.size(); ++i) flat[i] = static_cast<uint8_t>(i);
    uint64_t counts[256];
    REQUIRE(cc_histogram(flat.data(), flat.size(), counts) == CC_OK);
    CHECK(counts[0] == 20);
    double chi2 = -1, p = -1;
    REQUIRE(cc_chi_square_uniformity(counts, &chi2, &p) == CC_OK);
    CHECK(chi2 == 0.0);
    CHECK(p == doctest::Approx(1.0));
    CHECK(cc_histogram(flat.data(), 0, counts) == CC_ERR_LENGTH);
}

TEST_CASE("comparison through the C interface") {
    char* joined = nullptr;
    REQUIRE(cc_expand_seeds(1, 2, &joined) == CC_OK);
    const std::string seeds = take(joined);
    CHECK(seeds.substr(0, 64) == "910a2dec89025cc1beeb8da1658eec67f893a2eefb32555e71c18690ee42c90b");
    const std::string s0 = seeds.substr(0, 64), s1 = seeds.substr(65, 64);
    const char* list[] = {s0.c_str(), s1.c_str()};
    const cc_kind kinds[] = {CC_KIND_LOGISTIC, CC_KIND_HYBRID_LOGISTIC};
    cc_matrix* m = nullptr;
    REQUIRE(cc_compare(kinds, 2, list, 2, 20'000, 0.01, 2, &m) == CC_OK);
    const int p00 = cc_matrix_passes(m, 0, 0);
    CHECK(p00 >= 0);
    CHECK(p00 <= 10);
    CHECK(cc_matrix_mean(m, 1) == doctest::Approx((cc_matrix_passes(m, 1, 0) + cc_matrix_passes(m, 1, 1)) / 2.0));
    char* text = nullptr;
    REQUIRE(cc_matrix_text(m, &text) == CC_OK);
    CHECK(take(text).find("mean") != std::string::npos);
    cc_matrix_free(m);
}
