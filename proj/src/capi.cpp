#include "chaoscrypt/chaoscrypt.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cipher.hpp"
#include "compare.hpp"
#include "files.hpp"
#include "image_io.hpp"
#include "prng.hpp"
#include "sts.hpp"

struct cc_key {
    chaoscrypt::CipherKey value;
};
struct cc_bits {
    chaoscrypt::BitSequence value;
    std::string kind;
};
struct cc_report {
    chaoscrypt::sts::SuiteReport value;
};
struct cc_image {
    chaoscrypt::ImageBuffer value;
};
struct cc_envelope {
    chaoscrypt::CipherEnvelope value;
};
struct cc_matrix {
    chaoscrypt::ComparisonMatrix value;
};

namespace {

using namespace chaoscrypt;

thread_local std::string last_error;

cc_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::ContractViolation: return CC_ERR_CONTRACT;
        case ErrorCode::Divergence: return CC_ERR_DIVERGENCE;
        case ErrorCode::Parse: return CC_ERR_PARSE;
        case ErrorCode::Length: return CC_ERR_LENGTH;
        case ErrorCode::KeyRejected: return CC_ERR_KEY_REJECTED;
        case ErrorCode::Io: return CC_ERR_IO;
        case ErrorCode::Format: return CC_ERR_FORMAT;
        case ErrorCode::NotApplicable: return CC_ERR_NOT_APPLICABLE;
    }
    return CC_ERR_INTERNAL;
}

template <class F>
cc_status guarded(F&& body) noexcept {
    try {
        body();
        return CC_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return CC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return CC_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return CC_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (p == nullptr) contract_violation(std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

GeneratorKind to_kind(cc_kind kind) {
    const auto k = generator_from_byte(static_cast<std::uint8_t>(kind));
    if (!k) contract_violation("unknown generator kind " + std::to_string(static_cast<int>(kind)));
    return *k;
}

const sts::TestResult& test_at(const cc_report* report, int index) {
    return report->value.tests.at(static_cast<std::size_t>(index));
}

}  // namespace

extern "C" {

const char* cc_version(void) { return "0.1.0"; }

const char* cc_last_error(void) { return last_error.c_str(); }

const char* cc_status_name(cc_status status) {
    switch (status) {
        case CC_OK: return "ok";
        case CC_ERR_CONTRACT: return "contract violation";
        case CC_ERR_DIVERGENCE: return "divergence";
        case CC_ERR_PARSE: return "parse error";
        case CC_ERR_LENGTH: return "length error";
        case CC_ERR_KEY_REJECTED: return "key rejected";
        case CC_ERR_IO: return "i/o error";
        case CC_ERR_FORMAT: return "format error";
        case CC_ERR_NOT_APPLICABLE: return "not applicable";
        case CC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void cc_string_free(char* s) { std::free(s); }

const char* cc_kind_name(cc_kind kind) {
    const auto k = generator_from_byte(static_cast<std::uint8_t>(kind));
    return k ? generator_name(*k).data() : nullptr;
}

cc_status cc_kind_from_name(const char* name, cc_kind* out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        *out = static_cast<cc_kind>(generator_from_name(name));
    });
}

cc_status cc_key_from_hex(const char* hex_seed, cc_kind kind, cc_key** out) {
    return guarded([&] {
        need(hex_seed, "hex_seed");
        need(out, "out");
        *out = new cc_key{derive_key(hex_seed, to_kind(kind))};
    });
}

cc_status cc_key_parse(const char* text, cc_key** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new cc_key{parse_key(text)};
    });
}

cc_status cc_key_load(const char* path, cc_key** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new cc_key{parse_key(read_text_file(path))};
    });
}

cc_status cc_key_save(const cc_key* key, const char* path) {
    return guarded([&] {
        need(key, "key");
        need(path, "path");
        write_file_atomic(path, std::string_view(serialize_key(key->value)));
    });
}

cc_status cc_key_serialize(const cc_key* key, char** out) {
    return guarded([&] {
        need(key, "key");
        need(out, "out");
        *out = copy_string(serialize_key(key->value));
    });
}

cc_kind cc_key_kind(const cc_key* key) { return static_cast<cc_kind>(key->value.spec.kind); }
uint64_t cc_key_transient(const cc_key* key) { return key->value.spec.transient; }
uint64_t cc_key_bits(const cc_key* key) { return key->value.spec.n_bits; }

cc_status cc_key_set_transient(cc_key* key, uint64_t transient) {
    return guarded([&] {
        need(key, "key");
        auto spec = key->value.spec;
        spec.transient = transient;
        validate(spec);
        key->value.spec = spec;
    });
}

cc_status cc_key_set_bits(cc_key* key, uint64_t n_bits) {
    return guarded([&] {
        need(key, "key");
        auto spec = key->value.spec;
        spec.n_bits = n_bits;
        validate(spec);
        key->value.spec = spec;
    });
}

cc_status cc_key_set_dt(cc_key* key, double dt) {
    return guarded([&] {
        need(key, "key");
        auto spec = key->value.spec;
        spec.dt = dt;
        validate(spec);
        key->value.spec = spec;
    });
}

void cc_key_free(cc_key* key) { delete key; }

cc_status cc_generate(const cc_key* key, cc_bits** out) {
    return guarded([&] {
        need(key, "key");
        need(out, "out");
        *out = new cc_bits{generate_bits(key->value.spec), std::string(generator_name(key->value.spec.kind))};
    });
}

cc_status cc_bits_from_packed(const uint8_t* bytes, size_t n_bytes, uint64_t n_bits, cc_bits** out) {
    return guarded([&] {
        if (n_bytes > 0) need(bytes, "bytes");
        need(out, "out");
        *out = new cc_bits{BitSequence::from_packed(std::vector<std::uint8_t>(bytes, bytes + n_bytes), n_bits), {}};
    });
}

cc_status cc_bits_load(const char* path, cc_bits** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        BitFileMeta meta;
        auto bits = load_bit_file(path, &meta);
        *out = new cc_bits{std::move(bits), meta.kind};
    });
}

cc_status cc_bits_save(const cc_bits* bits, const char* path, const char* kind, uint64_t transient) {
    return guarded([&] {
        need(bits, "bits");
        need(path, "path");
        save_bit_file(path, bits->value, BitFileMeta{kind ? kind : bits->kind, bits->value.size(), transient});
    });
}

uint64_t cc_bits_length(const cc_bits* bits) { return bits->value.size(); }

const uint8_t* cc_bits_data(const cc_bits* bits, size_t* n_bytes) {
    if (n_bytes) *n_bytes = bits->value.bytes().size();
    return bits->value.bytes().data();
}

const char* cc_bits_kind(const cc_bits* bits) { return bits->kind.c_str(); }

cc_status cc_bits_hamming(const cc_bits* a, const cc_bits* b, uint64_t* out) {
    return guarded([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        if (a->value.size() != b->value.size()) throw Error(ErrorCode::Length, "sequences differ in length");
        const auto& x = a->value.bytes();
        const auto& y = b->value.bytes();
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < x.size(); ++i) d += static_cast<unsigned>(__builtin_popcount(x[i] ^ y[i]));
        *out = d;
    });
}

void cc_bits_free(cc_bits* bits) { delete bits; }

cc_status cc_run_suite(const cc_bits* bits, double alpha, const char* label, cc_report** out) {
    return guarded([&] {
        need(bits, "bits");
        need(out, "out");
        std::string name = label ? label : bits->kind;
        *out = new cc_report{sts::run_suite(bits->value, alpha, std::move(name))};
    });
}

int cc_report_pass_count(const cc_report* report) { return report->value.pass_count(); }
int cc_report_applicable_count(const cc_report* report) { return report->value.applicable_count(); }
int cc_report_test_count(const cc_report* report) { return static_cast<int>(report->value.tests.size()); }
const char* cc_report_test_name(const cc_report* report, int index) { return test_at(report, index).name.c_str(); }

cc_verdict cc_report_test_verdict(const cc_report* report, int index) {
    switch (test_at(report, index).verdict()) {
        case sts::Verdict::Pass: return CC_PASS;
        case sts::Verdict::Fail: return CC_FAIL;
        case sts::Verdict::NotApplicable: break;
    }
    return CC_NOT_APPLICABLE;
}

int cc_report_test_p_count(const cc_report* report, int index) {
    return static_cast<int>(test_at(report, index).p_values.size());
}

double cc_report_test_p(const cc_report* report, int index, int p_index) {
    return test_at(report, index).p_values.at(static_cast<std::size_t>(p_index));
}

cc_status cc_report_text(const cc_report* report, char** out) {
    return guarded([&] {
        need(report, "report");
        need(out, "out");
        *out = copy_string(sts::format_text(report->value));
    });
}

cc_status cc_report_json(const cc_report* report, char** out) {
    return guarded([&] {
        need(report, "report");
        need(out, "out");
        *out = copy_string(sts::format_json(report->value));
    });
}

void cc_report_free(cc_report* report) { delete report; }

cc_status cc_image_new(uint32_t width, uint32_t height, uint8_t channels, const uint8_t* data, cc_image** out) {
    return guarded([&] {
        need(data, "data");
        need(out, "out");
        ImageBuffer image{width, height, channels, {}};
        image.data.assign(data, data + image.byte_count());
        validate(image);
        *out = new cc_image{std::move(image)};
    });
}

cc_status cc_image_load(const char* path, cc_image** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new cc_image{read_image(path)};
    });
}

cc_status cc_image_load_raw(const char* path, uint32_t width, uint32_t height, uint8_t channels, cc_image** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new cc_image{read_raw_image(path, width, height, channels)};
    });
}

cc_status cc_image_save(const cc_image* image, const char* path) {
    return guarded([&] {
        need(image, "image");
        need(path, "path");
        write_image(image->value, path);
    });
}

uint32_t cc_image_width(const cc_image* image) { return image->value.width; }
uint32_t cc_image_height(const cc_image* image) { return image->value.height; }
uint8_t cc_image_channels(const cc_image* image) { return image->value.channels; }

const uint8_t* cc_image_data(const cc_image* image, size_t* n_bytes) {
    if (n_bytes) *n_bytes = image->value.data.size();
    return image->value.data.data();
}

void cc_image_free(cc_image* image) { delete image; }

cc_status cc_encrypt(const cc_image* image, const cc_key* key, cc_envelope** out) {
    return guarded([&] {
        need(image, "image");
        need(key, "key");
        need(out, "out");
        *out = new cc_envelope{encrypt(image->value, key->value)};
    });
}

cc_status cc_decrypt(const cc_envelope* envelope, const cc_key* key, cc_image** out) {
    return guarded([&] {
        need(envelope, "envelope");
        need(key, "key");
        need(out, "out");
        *out = new cc_image{decrypt(envelope->value, key->value)};
    });
}

cc_status cc_envelope_load(const char* path, cc_envelope** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new cc_envelope{parse_envelope(read_file(path))};
    });
}

cc_status cc_envelope_save(const cc_envelope* envelope, const char* path) {
    return guarded([&] {
        need(envelope, "envelope");
        need(path, "path");
        write_file_atomic(path, serialize_envelope(envelope->value));
    });
}

cc_kind cc_envelope_kind(const cc_envelope* envelope) { return static_cast<cc_kind>(envelope->value.header.kind); }

const uint8_t* cc_envelope_ciphertext(const cc_envelope* envelope, size_t* n_bytes) {
    if (n_bytes) *n_bytes = envelope->value.ciphertext.size();
    return envelope->value.ciphertext.data();
}

void cc_envelope_free(cc_envelope* envelope) { delete envelope; }

cc_status cc_histogram(const uint8_t* data, size_t n, uint64_t counts[256]) {
    return guarded([&] {
        if (n > 0) need(data, "data");
        need(counts, "counts");
        const auto hist = histogram(std::span(data, n));
        std::copy(hist.begin(), hist.end(), counts);
    });
}

cc_status cc_chi_square_uniformity(const uint64_t counts[256], double* chi2, double* p_value) {
    return guarded([&] {
        need(counts, "counts");
        Histogram hist;
        std::copy(counts, counts + 256, hist.begin());
        const double statistic = chi_square_statistic(hist);
        const double p = chi_square_uniformity(hist);
        if (chi2) *chi2 = statistic;
        if (p_value) *p_value = p;
    });
}

cc_status cc_expand_seeds(uint64_t base, size_t count, char** out) {
    return guarded([&] {
        need(out, "out");
        std::string joined;
        for (const auto& s : expand_seeds(base, count)) joined += s + '\n';
        *out = copy_string(joined);
    });
}

cc_status cc_compare(const cc_kind* kinds, size_t n_kinds, const char* const* seeds, size_t n_seeds,
                     uint64_t n_bits, double alpha, unsigned threads, cc_matrix** out) {
    return guarded([&] {
        need(kinds, "kinds");
        need(seeds, "seeds");
        need(out, "out");
        std::vector<GeneratorKind> k;
        for (size_t i = 0; i < n_kinds; ++i) k.push_back(to_kind(kinds[i]));
        std::vector<std::string> s;
        for (size_t i = 0; i < n_seeds; ++i) {
            need(seeds[i], "seed");
            s.emplace_back(seeds[i]);
        }
        *out = new cc_matrix{compare_generators(k, s, n_bits, alpha, threads)};
    });
}

int cc_matrix_passes(const cc_matrix* matrix, size_t kind_index, size_t seed_index) {
    return matrix->value.passes.at(kind_index).at(seed_index);
}

double cc_matrix_mean(const cc_matrix* matrix, size_t kind_index) { return matrix->value.mean_passes(kind_index); }

cc_status cc_matrix_text(const cc_matrix* matrix, char** out) {
    return guarded([&] {
        need(matrix, "matrix");
        need(out, "out");
        *out = copy_string(format_matrix(matrix->value));
    });
}

void cc_matrix_free(cc_matrix* matrix) { delete matrix; }

}  // extern "C"
