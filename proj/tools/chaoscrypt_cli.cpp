// Command-line front end. Talks to the toolkit only through the C API.
//
// Exit codes: 0 success, 1 operational failure, 2 usage error,
// 3 statistical failure (test subcommand).

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "chaoscrypt/chaoscrypt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitStatistical = 3;

// Raised for any failed C API call; carries the exit code to use.
struct CliFailure {
    int exit_code;
    std::string message;
};

void check(cc_status status, const std::string& context) {
    if (status == CC_OK) return;
    const int code = status == CC_ERR_CONTRACT ? kExitUsage : kExitFailure;
    throw CliFailure{code, context + ": " + cc_status_name(status) + ": " + cc_last_error()};
}

void usage_error(const std::string& message) { throw CliFailure{kExitUsage, message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Key = std::unique_ptr<cc_key, Deleter<cc_key, cc_key_free>>;
using Bits = std::unique_ptr<cc_bits, Deleter<cc_bits, cc_bits_free>>;
using Report = std::unique_ptr<cc_report, Deleter<cc_report, cc_report_free>>;
using Image = std::unique_ptr<cc_image, Deleter<cc_image, cc_image_free>>;
using Envelope = std::unique_ptr<cc_envelope, Deleter<cc_envelope, cc_envelope_free>>;
using Matrix = std::unique_ptr<cc_matrix, Deleter<cc_matrix, cc_matrix_free>>;
using CString = std::unique_ptr<char, Deleter<char, cc_string_free>>;

std::string take(char* s) { return CString(s).get(); }

void write_text_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw CliFailure{kExitFailure, "cannot write '" + path + "'"};
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CliFailure{kExitFailure, "cannot move output into place at '" + path + "'"};
    }
}

const std::vector<std::string> kKindNames = {"chua",  "lorenz",       "rossler",        "henon",
                                              "logistic", "hybrid-henon", "hybrid-logistic"};

cc_kind parse_kind(const std::string& name) {
    cc_kind kind;
    if (cc_kind_from_name(name.c_str(), &kind) != CC_OK) usage_error("unknown generator kind '" + name + "'");
    return kind;
}

const auto kHexSeedValidator = CLI::Validator(
    [](std::string& s) -> std::string {
        if (s.size() != 64) return "hex seed must be 64 hex characters";
        for (char c : s)
            if (!std::isxdigit(static_cast<unsigned char>(c))) return "hex seed contains a non-hex character";
        return {};
    },
    "HEX64");

/// Options shared by every subcommand that needs key material.
struct KeyOptions {
    std::string key_file;
    std::string hex_seed;
    std::string kind = "hybrid-logistic";
    std::optional<std::uint64_t> transient;
    std::optional<double> dt;

    void add_to(CLI::App* cmd, bool with_overrides) {
        auto* key_opt = cmd->add_option("--key", key_file, "key file")->check(CLI::ExistingFile);
        auto* seed_opt = cmd->add_option("--hex-seed", hex_seed, "256-bit seed as 64 hex digits (or CHAOSCRYPT_SEED)")
                             ->check(kHexSeedValidator);
        key_opt->excludes(seed_opt);
        kind_opt = cmd->add_option("--kind", kind, "generator kind")->check(CLI::IsMember(kKindNames));
        if (with_overrides) {
            cmd->add_option("--transient", transient, "discarded iterations");
            cmd->add_option("--dt", dt, "RK4 time step")->check(CLI::PositiveNumber);
        }
    }

    // `fallback_kind` is used when no --kind was given and the key is derived
    // from a seed (decrypt takes it from the envelope header).
    Key resolve(std::optional<cc_kind> fallback_kind = std::nullopt) const {
        cc_key* raw = nullptr;
        if (!key_file.empty()) {
            if (kind_opt->count() > 0) usage_error("--kind cannot be combined with --key; the key file fixes it");
            check(cc_key_load(key_file.c_str(), &raw), "loading key '" + key_file + "'");
        } else {
            std::string seed = hex_seed;
            if (seed.empty()) {
                const char* env = std::getenv("CHAOSCRYPT_SEED");
                if (env == nullptr || *env == '\0') usage_error("no key: pass --key FILE, --hex-seed HEX64 or set CHAOSCRYPT_SEED");
                seed = env;
                std::string why = seed;
                why = kHexSeedValidator(why);
                if (!why.empty()) usage_error("CHAOSCRYPT_SEED: " + why);
            }
            const cc_kind k = kind_opt->count() == 0 && fallback_kind ? *fallback_kind : parse_kind(kind);
            check(cc_key_from_hex(seed.c_str(), k, &raw), "deriving key");
        }
        Key key(raw);
        if (transient) check(cc_key_set_transient(key.get(), *transient), "--transient");
        if (dt) check(cc_key_set_dt(key.get(), *dt), "--dt");
        return key;
    }

    CLI::Option* kind_opt = nullptr;
};

struct RawOptions {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    unsigned channels = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--width", width, "raw input width");
        cmd->add_option("--height", height, "raw input height");
        cmd->add_option("--channels", channels, "raw input channels (1 or 3)")->check(CLI::IsMember({1, 3}));
    }

    bool requested() const { return width != 0 || height != 0 || channels != 0; }

    Image load(const std::string& path) const {
        cc_image* raw = nullptr;
        if (requested()) {
            if (width == 0 || height == 0) usage_error("raw input needs --width and --height");
            const auto c = static_cast<std::uint8_t>(channels == 0 ? 1 : channels);
            check(cc_image_load_raw(path.c_str(), width, height, c, &raw), "reading raw image '" + path + "'");
        } else {
            check(cc_image_load(path.c_str(), &raw), "reading image '" + path + "'");
        }
        return Image(raw);
    }
};

int cmd_keygen(const KeyOptions& key_opts, const std::string& out) {
    const Key key = key_opts.resolve();
    check(cc_key_save(key.get(), out.c_str()), "writing key '" + out + "'");
    return kExitOk;
}

int cmd_generate(const KeyOptions& key_opts, std::uint64_t n_bits, const std::string& out) {
    if (n_bits == 0) usage_error("--bits must be at least 1");
    const Key key = key_opts.resolve();
    check(cc_key_set_bits(key.get(), n_bits), "--bits");
    cc_bits* raw = nullptr;
    check(cc_generate(key.get(), &raw), "generating bits");
    const Bits bits(raw);
    check(cc_bits_save(bits.get(), out.c_str(), cc_kind_name(cc_key_kind(key.get())), cc_key_transient(key.get())),
          "writing '" + out + "'");
    return kExitOk;
}

int cmd_test(const std::string& input, double alpha, const std::string& out, const std::string& label) {
    cc_bits* raw = nullptr;
    check(cc_bits_load(input.c_str(), &raw), "reading '" + input + "'");
    const Bits bits(raw);
    cc_report* rep = nullptr;
    const std::string name = label.empty() ? cc_bits_kind(bits.get()) : label;
    check(cc_run_suite(bits.get(), alpha, name.empty() ? "sequence" : name.c_str(), &rep), "running the battery");
    const Report report(rep);
    if (cc_report_applicable_count(report.get()) == 0) {
        throw CliFailure{kExitFailure, "'" + input + "' is shorter than the minimum length of every test"};
    }
    char* text = nullptr;
    char* json = nullptr;
    check(cc_report_text(report.get(), &text), "formatting report");
    const std::string text_report = take(text);
    check(cc_report_json(report.get(), &json), "formatting report");
    const std::string json_report = take(json);
    if (out.empty()) {
        std::cout << text_report;
    } else {
        write_text_atomic(out + ".txt", text_report);
        write_text_atomic(out + ".json", json_report);
    }
    const bool all_passed = cc_report_pass_count(report.get()) == cc_report_applicable_count(report.get());
    return all_passed ? kExitOk : kExitStatistical;
}

int cmd_encrypt(const KeyOptions& key_opts, const RawOptions& raw_opts, const std::string& input,
                const std::string& out) {
    const Image image = raw_opts.load(input);
    const Key key = key_opts.resolve();
    cc_envelope* raw = nullptr;
    check(cc_encrypt(image.get(), key.get(), &raw), "encrypting");
    const Envelope env(raw);
    check(cc_envelope_save(env.get(), out.c_str()), "writing '" + out + "'");
    return kExitOk;
}

int cmd_decrypt(const KeyOptions& key_opts, const std::string& input, const std::string& out) {
    cc_envelope* raw = nullptr;
    check(cc_envelope_load(input.c_str(), &raw), "reading envelope '" + input + "'");
    const Envelope env(raw);
    const Key key = key_opts.resolve(cc_envelope_kind(env.get()));
    cc_image* img = nullptr;
    check(cc_decrypt(env.get(), key.get(), &img), "decrypting");
    const Image image(img);
    check(cc_image_save(image.get(), out.c_str()), "writing '" + out + "'");
    return kExitOk;
}

int cmd_analyze(const RawOptions& raw_opts, const std::string& input, const std::string& out) {
    // Envelopes are analysed by their ciphertext, anything else as an image.
    std::vector<std::uint8_t> data;
    cc_envelope* env_raw = nullptr;
    if (!raw_opts.requested() && cc_envelope_load(input.c_str(), &env_raw) == CC_OK) {
        const Envelope env(env_raw);
        std::size_t n = 0;
        const std::uint8_t* p = cc_envelope_ciphertext(env.get(), &n);
        data.assign(p, p + n);
    } else {
        const Image image = raw_opts.load(input);
        std::size_t n = 0;
        const std::uint8_t* p = cc_image_data(image.get(), &n);
        data.assign(p, p + n);
    }
    std::uint64_t counts[256];
    check(cc_histogram(data.data(), data.size(), counts), "histogram");
    std::ostringstream csv;
    csv << "bin,count\n";
    for (int i = 0; i < 256; ++i) csv << i << ',' << counts[i] << '\n';
    double chi2 = 0, p = 0;
    check(cc_chi_square_uniformity(counts, &chi2, &p), "uniformity test");
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_atomic(out, csv.str());
    }
    char line[128];
    std::snprintf(line, sizeof line, "bytes %zu  chi2 %.4f  p %.6f\n", data.size(), chi2, p);
    std::cerr << line;
    return kExitOk;
}

struct ReportOptions {
    std::string kinds = "logistic,henon,hybrid-logistic,hybrid-henon";
    std::size_t seed_count = 20;
    std::uint64_t base_seed = 1;
    std::string seed_list;
    std::uint64_t n_bits = 1'000'000;
    double alpha = 0.01;
    unsigned threads = 0;
    std::string out;
};

int cmd_report(const ReportOptions& o) {
    std::vector<cc_kind> kinds;
    std::stringstream kind_stream(o.kinds);
    for (std::string name; std::getline(kind_stream, name, ',');) {
        if (!name.empty()) kinds.push_back(parse_kind(name));
    }
    if (kinds.empty()) usage_error("--kinds lists no generator");
    if (o.n_bits == 0) usage_error("--bits must be at least 1");

    std::string seed_text;
    if (!o.seed_list.empty()) {
        std::ifstream in(o.seed_list);
        if (!in) throw CliFailure{kExitFailure, "cannot read seed list '" + o.seed_list + "'"};
        seed_text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        if (o.seed_count == 0) usage_error("--seeds must be at least 1");
        char* joined = nullptr;
        check(cc_expand_seeds(o.base_seed, o.seed_count, &joined), "expanding seeds");
        seed_text = take(joined);
    }
    std::vector<std::string> seeds;
    std::stringstream seed_stream(seed_text);
    for (std::string s; std::getline(seed_stream, s);) {
        if (s.empty() || s[0] == '#') continue;
        std::string why = s;
        why = kHexSeedValidator(why);
        if (!why.empty()) usage_error("seed list: " + why);
        seeds.push_back(s);
    }
    if (seeds.empty()) usage_error("no seeds to run");
    std::vector<const char*> seed_ptrs;
    for (const auto& s : seeds) seed_ptrs.push_back(s.c_str());

    cc_matrix* raw = nullptr;
    check(cc_compare(kinds.data(), kinds.size(), seed_ptrs.data(), seed_ptrs.size(), o.n_bits, o.alpha, o.threads,
                     &raw),
          "running the comparison");
    const Matrix matrix(raw);
    char* text = nullptr;
    check(cc_matrix_text(matrix.get(), &text), "formatting matrix");
    const std::string table = take(text);
    if (o.out.empty()) {
        std::cout << table;
    } else {
        write_text_atomic(o.out, table);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaos-based bit generators, randomness battery and image stream cipher"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cc_version());

    KeyOptions keygen_key;
    std::string keygen_out;
    auto* keygen = app.add_subcommand("keygen", "derive a key file from a hex seed");
    keygen_key.add_to(keygen, true);
    keygen->add_option("--out", keygen_out, "key file to write")->required();

    KeyOptions gen_key;
    std::uint64_t gen_bits = 1'000'000;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "write a packed bit file and its .meta sidecar");
    gen_key.add_to(generate, true);
    generate->add_option("--bits", gen_bits, "number of bits");
    generate->add_option("--out", gen_out, "bit file to write")->required();

    std::string test_in, test_out, test_label;
    double test_alpha = 0.01;
    auto* test = app.add_subcommand("test", "run the ten-test battery on a bit file");
    test->add_option("input", test_in, "bit file")->required()->check(CLI::ExistingFile);
    test->add_option("--alpha", test_alpha, "significance level")->check(CLI::Range(0.0, 1.0));
    test->add_option("--label", test_label, "column label (defaults to the generator kind)");
    test->add_option("--out", test_out, "write <out>.txt and <out>.json instead of printing");

    KeyOptions enc_key;
    RawOptions enc_raw;
    std::string enc_in, enc_out;
    auto* encrypt = app.add_subcommand("encrypt", "XOR-encrypt a PGM/PPM or raw image into an envelope");
    encrypt->add_option("input", enc_in, "image file")->required()->check(CLI::ExistingFile);
    enc_key.add_to(encrypt, true);
    enc_raw.add_to(encrypt);
    encrypt->add_option("--out", enc_out, "envelope to write")->required();

    KeyOptions dec_key;
    std::string dec_in, dec_out;
    auto* decrypt = app.add_subcommand("decrypt", "recover the image from an envelope");
    decrypt->add_option("input", dec_in, "envelope file")->required()->check(CLI::ExistingFile);
    dec_key.add_to(decrypt, true);
    decrypt->add_option("--out", dec_out, "PGM/PPM to write")->required();

    RawOptions an_raw;
    std::string an_in, an_out;
    auto* analyze = app.add_subcommand("analyze", "byte histogram (CSV) and chi-square uniformity");
    analyze->add_option("input", an_in, "image or envelope")->required()->check(CLI::ExistingFile);
    an_raw.add_to(analyze);
    analyze->add_option("--out", an_out, "CSV file to write instead of printing");

    ReportOptions rep;
    auto* report = app.add_subcommand("report", "pass-count matrix over generator kinds and seeds");
    report->add_option("--kinds", rep.kinds, "comma-separated generator kinds");
    auto* seeds_opt = report->add_option("--seeds", rep.seed_count, "number of seeds expanded from --base-seed");
    report->add_option("--base-seed", rep.base_seed, "base for the seed expansion");
    report->add_option("--seed-list", rep.seed_list, "file with one hex seed per line")
        ->check(CLI::ExistingFile)
        ->excludes(seeds_opt);
    report->add_option("--bits", rep.n_bits, "bits per sequence");
    report->add_option("--alpha", rep.alpha, "significance level")->check(CLI::Range(0.0, 1.0));
    report->add_option("--threads", rep.threads, "worker threads (0 = all cores)");
    report->add_option("--out", rep.out, "write the matrix here instead of printing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*keygen) return cmd_keygen(keygen_key, keygen_out);
        if (*generate) return cmd_generate(gen_key, gen_bits, gen_out);
        if (*test) return cmd_test(test_in, test_alpha, test_out, test_label);
        if (*encrypt) return cmd_encrypt(enc_key, enc_raw, enc_in, enc_out);
        if (*decrypt) return cmd_decrypt(dec_key, dec_in, dec_out);
        if (*analyze) return cmd_analyze(an_raw, an_in, an_out);
        if (*report) return cmd_report(rep);
    } catch (const CliFailure& f) {
        std::cerr << "chaoscrypt: " << f.message << '\n';
        return f.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "chaoscrypt: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
