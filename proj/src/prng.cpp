#include "prng.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace chaoscrypt {

namespace {

constexpr std::array<GeneratorKind, 7> kAllKinds{
    GeneratorKind::Chua,  GeneratorKind::Lorenz,      GeneratorKind::Rossler,        GeneratorKind::Henon,
    GeneratorKind::Logistic, GeneratorKind::HybridHenon, GeneratorKind::HybridLogistic,
};

}  // namespace

std::string_view generator_name(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::Chua: return "chua";
        case GeneratorKind::Lorenz: return "lorenz";
        case GeneratorKind::Rossler: return "rossler";
        case GeneratorKind::Henon: return "henon";
        case GeneratorKind::Logistic: return "logistic";
        case GeneratorKind::HybridHenon: return "hybrid-henon";
        case GeneratorKind::HybridLogistic: return "hybrid-logistic";
    }
    return "?";
}

GeneratorKind generator_from_name(std::string_view name) {
    for (auto kind : kAllKinds) {
        if (generator_name(kind) == name) return kind;
    }
    throw Error(ErrorCode::Parse, "unknown generator kind '" + std::string(name) + "'");
}

std::optional<GeneratorKind> generator_from_byte(std::uint8_t value) noexcept {
    if (value < kAllKinds.size()) return kAllKinds[value];
    return std::nullopt;
}

GeneratorFamily family_of(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::Chua:
        case GeneratorKind::Lorenz:
        case GeneratorKind::Rossler: return GeneratorFamily::SingleContinuous;
        case GeneratorKind::Henon:
        case GeneratorKind::Logistic: return GeneratorFamily::SingleDiscrete;
        case GeneratorKind::HybridHenon: return GeneratorFamily::HybridHenon;
        case GeneratorKind::HybridLogistic: return GeneratorFamily::HybridLogistic;
    }
    return GeneratorFamily::SingleDiscrete;
}

bool is_hybrid(GeneratorKind kind) noexcept {
    return kind == GeneratorKind::HybridHenon || kind == GeneratorKind::HybridLogistic;
}

SystemKind map_system(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::Chua: return SystemKind::Chua;
        case GeneratorKind::Lorenz: return SystemKind::Lorenz;
        case GeneratorKind::Rossler: return SystemKind::Rossler;
        case GeneratorKind::Henon:
        case GeneratorKind::HybridHenon: return SystemKind::Henon;
        case GeneratorKind::Logistic:
        case GeneratorKind::HybridLogistic: return SystemKind::Logistic;
    }
    return SystemKind::Logistic;
}

// ---------------------------------------------------------------------------
// GeneratorSpec

namespace {

void validate_map(const MapDescriptor& map, SystemKind expected, const char* which) {
    if (map.kind() != expected) {
        contract_violation(std::string(which) + " map must be " + std::string(system_name(expected)));
    }
    validate(map.params);
    if (map.initial.size() != system_dimension(expected)) {
        contract_violation(std::string(which) + " initial condition has wrong dimension");
    }
    if (!map.initial.is_finite()) contract_violation(std::string(which) + " initial condition must be finite");
    if (expected == SystemKind::Logistic && !(map.initial[0] >= 0.0 && map.initial[0] <= 1.0)) {
        contract_violation(std::string(which) + " logistic initial condition must lie in [0, 1]");
    }
}

bool inside_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

void validate(const GeneratorSpec& spec) {
    const SystemKind system = map_system(spec.kind);
    validate_map(spec.first, system, "first");
    if (spec.n_bits < 1) contract_violation("n_bits must be at least 1");
    if (spec.sample_component >= system_dimension(system)) contract_violation("sample_component out of range");
    if (is_continuous(system) && (!(spec.dt > 0.0) || !std::isfinite(spec.dt))) {
        contract_violation("dt must be positive and finite");
    }
    if (!is_hybrid(spec.kind)) {
        if (spec.second) contract_violation("single-map generators take exactly one map");
        return;
    }
    if (!spec.second) contract_violation("hybrid generators need a second map");
    validate_map(*spec.second, system, "second");
    if (spec.first.initial == spec.second->initial) {
        contract_violation("hybrid maps need distinct initial conditions (identical orbits give constant output)");
    }
    if (system == SystemKind::Logistic &&
        !(inside_open_unit(spec.first.initial[0]) && inside_open_unit(spec.second->initial[0]))) {
        contract_violation("hybrid logistic initial conditions must lie in (0, 1)");
    }
}

// ---------------------------------------------------------------------------
// BitSequence

BitSequence::BitSequence(std::uint64_t length) : bytes_((length + 7) / 8, 0), length_(length) {}

BitSequence BitSequence::from_bits(std::span<const std::uint8_t> bits) {
    BitSequence seq(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) seq.bytes_[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
    }
    return seq;
}

BitSequence BitSequence::from_packed(std::vector<std::uint8_t> bytes, std::uint64_t length) {
    if (bytes.size() != (length + 7) / 8) {
        throw Error(ErrorCode::Length, "packed bit buffer holds " + std::to_string(bytes.size()) +
                                           " bytes but length " + std::to_string(length) + " needs " +
                                           std::to_string((length + 7) / 8));
    }
    BitSequence seq;
    seq.bytes_ = std::move(bytes);
    seq.length_ = length;
    if (length % 8 != 0) seq.bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - length % 8));
    return seq;
}

BitSequence BitSequence::from_string(std::string_view zeros_and_ones) {
    BitSequence seq(zeros_and_ones.size());
    for (std::size_t i = 0; i < zeros_and_ones.size(); ++i) {
        const char c = zeros_and_ones[i];
        if (c != '0' && c != '1') throw Error(ErrorCode::Parse, "bit strings may contain only '0' and '1'");
        seq.set(i, c == '1');
    }
    return seq;
}

void BitSequence::set(std::uint64_t i, bool value) noexcept {
    const auto mask = static_cast<std::uint8_t>(0x80u >> (i & 7));
    if (value) bytes_[i >> 3] |= mask;
    else bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

std::vector<std::uint8_t> BitSequence::unpack() const {
    std::vector<std::uint8_t> bits(length_);
    for (std::uint64_t i = 0; i < length_; ++i) bits[i] = (*this)[i] ? 1 : 0;
    return bits;
}

std::uint64_t BitSequence::count_ones() const noexcept {
    std::uint64_t ones = 0;
    for (auto byte : bytes_) ones += static_cast<std::uint64_t>(std::popcount(byte));
    return ones;
}

// ---------------------------------------------------------------------------
// Bit production

namespace {

// Packs bits into a sequence as they are produced.
class BitWriter {
public:
    explicit BitWriter(std::uint64_t length) : bytes_((length + 7) / 8, 0), length_(length) {}
    void push(bool bit) noexcept {
        if (bit) bytes_[pos_ >> 3] |= static_cast<std::uint8_t>(0x80u >> (pos_ & 7));
        ++pos_;
    }
    BitSequence finish() { return BitSequence::from_packed(std::move(bytes_), length_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t length_;
    std::uint64_t pos_ = 0;
};

inline bool escaped(double x) noexcept { return !(std::abs(x) <= kEscapeBound); }

template <class Field>
std::vector<double> sample_continuous(Field&& field, const GeneratorSpec& spec) {
    std::vector<double> samples;
    samples.reserve(spec.n_bits);
    StateVector state = spec.first.initial;
    const std::uint64_t total = spec.transient + spec.n_bits;
    for (std::uint64_t step = 1; step <= total; ++step) {
        state = rk4_step(field, state, spec.dt, step);
        if (state.max_abs() > kEscapeBound) throw DivergenceError(step, "continuous orbit escaped");
        if (step > spec.transient) samples.push_back(state[spec.sample_component]);
    }
    return samples;
}

std::vector<double> sample_henon(const HenonParams& p, StateVector state, const GeneratorSpec& spec) {
    std::vector<double> samples;
    samples.reserve(spec.n_bits);
    double x = state[0];
    double y = state[1];
    const std::uint64_t total = spec.transient + spec.n_bits;
    for (std::uint64_t step = 1; step <= total; ++step) {
        const double nx = p.c - p.a * x * x + y;
        y = p.b * x;
        x = nx;
        if (escaped(x) || escaped(y)) throw DivergenceError(step, "henon orbit escaped");
        if (step > spec.transient) samples.push_back(spec.sample_component == 0 ? x : y);
    }
    return samples;
}

std::vector<double> sample_logistic(const LogisticParams& p, double x, const GeneratorSpec& spec) {
    std::vector<double> samples;
    samples.reserve(spec.n_bits);
    const std::uint64_t total = spec.transient + spec.n_bits;
    for (std::uint64_t step = 1; step <= total; ++step) {
        x = p.lambda * x * (1.0 - x);
        if (step > spec.transient) samples.push_back(x);
    }
    return samples;
}

}  // namespace

std::vector<double> sample_orbit(const GeneratorSpec& spec) {
    validate(spec);
    const MapDescriptor& map = spec.first;
    return std::visit(
        [&](const auto& p) -> std::vector<double> {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, HenonParams>) {
                return sample_henon(p, map.initial, spec);
            } else if constexpr (std::is_same_v<P, LogisticParams>) {
                return sample_logistic(p, map.initial[0], spec);
            } else if constexpr (std::is_same_v<P, ChuaParams>) {
                return sample_continuous([&](const StateVector& s) { return chua_deriv(s, p); }, spec);
            } else if constexpr (std::is_same_v<P, LorenzParams>) {
                return sample_continuous([&](const StateVector& s) { return lorenz_deriv(s, p); }, spec);
            } else {
                return sample_continuous([&](const StateVector& s) { return rossler_deriv(s, p); }, spec);
            }
        },
        map.params);
}

BitSequence binarize_mean(std::span<const double> samples) {
    if (samples.empty()) contract_violation("binarize_mean: empty sample sequence");
    // Neumaier summation keeps the threshold stable for long orbits.
    double sum = 0.0;
    double compensation = 0.0;
    for (double x : samples) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) compensation += (sum - t) + x;
        else compensation += (x - t) + sum;
        sum = t;
    }
    const double mean = (sum + compensation) / static_cast<double>(samples.size());
    BitWriter writer(samples.size());
    for (double x : samples) writer.push(x > mean);
    return writer.finish();
}

namespace {

BitSequence hybrid_logistic(const GeneratorSpec& spec) {
    const double l1 = std::get<LogisticParams>(spec.first.params).lambda;
    const double l2 = std::get<LogisticParams>(spec.second->params).lambda;
    double x = spec.first.initial[0];
    double y = spec.second->initial[0];
    for (std::uint64_t i = 0; i < spec.transient; ++i) {
        x = l1 * x * (1.0 - x);
        y = l2 * y * (1.0 - y);
    }
    BitWriter writer(spec.n_bits);
    for (std::uint64_t i = 0; i < spec.n_bits; ++i) {
        x = l1 * x * (1.0 - x);
        y = l2 * y * (1.0 - y);
        writer.push(x > y);
    }
    return writer.finish();
}

BitSequence hybrid_henon(const GeneratorSpec& spec) {
    const auto& p = std::get<HenonParams>(spec.first.params);
    const auto& q = std::get<HenonParams>(spec.second->params);
    double x1 = spec.first.initial[0], y1 = spec.first.initial[1];
    double x2 = spec.second->initial[0], y2 = spec.second->initial[1];
    const bool observe_x = spec.sample_component == 0;
    BitWriter writer(spec.n_bits);
    const std::uint64_t total = spec.transient + spec.n_bits;
    for (std::uint64_t step = 1; step <= total; ++step) {
        const double nx1 = p.c - p.a * x1 * x1 + y1;
        const double nx2 = q.c - q.a * x2 * x2 + y2;
        y1 = p.b * x1;
        y2 = q.b * x2;
        x1 = nx1;
        x2 = nx2;
        if (escaped(x1) || escaped(x2) || escaped(y1) || escaped(y2)) {
            throw DivergenceError(step, "henon orbit escaped");
        }
        if (step > spec.transient) writer.push(observe_x ? x1 > x2 : y1 > y2);
    }
    return writer.finish();
}

}  // namespace

BitSequence hybrid_bits(const GeneratorSpec& spec) {
    if (!is_hybrid(spec.kind)) contract_violation("hybrid_bits: spec is not a hybrid generator");
    validate(spec);
    return spec.kind == GeneratorKind::HybridLogistic ? hybrid_logistic(spec) : hybrid_henon(spec);
}

BitSequence generate_bits(const GeneratorSpec& spec) {
    if (is_hybrid(spec.kind)) return hybrid_bits(spec);
    const auto samples = sample_orbit(spec);
    return binarize_mean(samples);
}

// ---------------------------------------------------------------------------
// Key derivation
//
// The 256-bit seed is split into four big-endian words, which are diffused
// into u1..u4 by an invertible mixing pass so that every seed bit reaches
// both maps of a hybrid. Each u is then mapped to v = (u + 1) / (2^64 + 2)
// in (0, 1). A double keeps only the top ~53 bits of
// u, so the low 11 bits of each word are routed separately ("fine" values w)
// into parameter jitter where the construction has room for them.

namespace {

constexpr double kHenonJitter = 1e-4;
constexpr double kHenonInitialYScale = 0.1;
// Hybrid logistic maps run at lambda in [4 - 2d, 4 - d]; closer to 4 keeps
// the two invariant densities (and so the comparison output) balanced.
constexpr double kHybridLogisticOffset = 0x1p-27;
constexpr std::uint64_t kHenonProbeSteps = 1000;

struct SeedMaterial {
    std::array<std::uint64_t, 4> words{};
    std::array<double, 4> coarse{};  // v_i
    std::array<double, 4> fine{};    // from the low 11 bits of each word
};

// Murmur3 finalizer: a bijection on 64-bit words with full avalanche, and
// fmix64(0) == 0.
std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xFF51AFD7ED558CCDull;
    k ^= k >> 33;
    k *= 0xC4CEB9FE1A85EC53ull;
    k ^= k >> 33;
    return k;
}

// Two Feistel-style passes; each update xors a word with a function of the
// other three, so the whole map is invertible and the zero seed stays zero.
void diffuse(std::array<std::uint64_t, 4>& u) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < 4; ++i) {
            u[i] ^= fmix64(u[(i + 1) % 4] ^ std::rotl(u[(i + 2) % 4], 21) ^ std::rotl(u[(i + 3) % 4], 42));
        }
    }
}

SeedMaterial parse_seed(std::string_view hex) {
    if (hex.size() != kHexSeedLength) {
        throw Error(ErrorCode::Parse,
                    "hex seed must be exactly 64 hex characters, got " + std::to_string(hex.size()));
    }
    for (char c : hex) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) {
            throw Error(ErrorCode::Parse, std::string("hex seed contains non-hex character '") + c + "'");
        }
    }
    SeedMaterial seed;
    for (std::size_t i = 0; i < 4; ++i) {
        const char* first = hex.data() + 16 * i;
        std::from_chars(first, first + 16, seed.words[i], 16);
    }
    diffuse(seed.words);
    for (std::size_t i = 0; i < 4; ++i) {
        const long double u = static_cast<long double>(seed.words[i]);
        seed.coarse[i] = static_cast<double>((u + 1.0L) / (0x1p64L + 2.0L));
        seed.fine[i] = (static_cast<double>(seed.words[i] & 0x7FFu) + 0.5) / 2048.0;
    }
    return seed;
}

GeneratorSpec initial_spec(const SeedMaterial& s, GeneratorKind kind) {
    const auto& v = s.coarse;
    const auto& w = s.fine;
    GeneratorSpec spec;
    spec.kind = kind;
    spec.n_bits = kDefaultSequenceLength;
    spec.dt = kDefaultTimeStep;
    spec.sample_component = 0;
    spec.transient = is_continuous(map_system(kind)) ? kDefaultContinuousTransient : kDefaultDiscreteTransient;
    switch (kind) {
        case GeneratorKind::Chua:
        case GeneratorKind::Lorenz:
        case GeneratorKind::Rossler:
            spec.first = {default_params(map_system(kind)), StateVector{v[0], v[1], v[2]}};
            break;
        case GeneratorKind::Henon:
            spec.first = {HenonParams{1.4 - kHenonJitter * v[2], 0.3 - kHenonJitter * v[3], 1.0},
                          StateVector{v[0], kHenonInitialYScale * v[1]}};
            break;
        case GeneratorKind::Logistic:
            spec.first = {LogisticParams{3.57 + 0.43 * v[2]}, StateVector{v[0]}};
            break;
        case GeneratorKind::HybridHenon:
            spec.first = {HenonParams{1.4 - kHenonJitter * w[0], 0.3 - kHenonJitter * w[1], 1.0},
                          StateVector{v[0], kHenonInitialYScale * v[1]}};
            spec.second = MapDescriptor{HenonParams{1.4 - kHenonJitter * w[2], 0.3 - kHenonJitter * w[3], 1.0},
                                        StateVector{v[2], kHenonInitialYScale * v[3]}};
            break;
        case GeneratorKind::HybridLogistic:
            spec.first = {LogisticParams{4.0 - kHybridLogisticOffset * (1.0 + v[1])}, StateVector{v[0]}};
            spec.second = MapDescriptor{LogisticParams{4.0 - kHybridLogisticOffset * (1.0 + v[3])},
                                        StateVector{v[2]}};
            break;
    }
    return spec;
}

bool henon_escapes(const MapDescriptor& map, std::uint64_t steps) {
    const auto& p = std::get<HenonParams>(map.params);
    double x = map.initial[0];
    double y = map.initial[1];
    for (std::uint64_t i = 0; i < steps; ++i) {
        const double nx = p.c - p.a * x * x + y;
        y = p.b * x;
        x = nx;
        if (escaped(x) || escaped(y)) return true;
    }
    return false;
}

bool degenerate_logistic_start(double x, double lambda) {
    if (!inside_open_unit(x)) return true;
    if (lambda == 4.0 && x == 0.5) return true;  // 0.5 -> 1 -> 0, absorbed
    return x == 1.0 - 1.0 / lambda;              // fixed point
}

// Applies one smallest-step perturbation to the first broken invariant.
// Returns false when the spec is acceptable as is.
bool perturb_once(GeneratorSpec& spec) {
    const SystemKind system = map_system(spec.kind);
    auto fix_map = [&](MapDescriptor& map) {
        if (system == SystemKind::Logistic) {
            const double lambda = std::get<LogisticParams>(map.params).lambda;
            double& x = map.initial[0];
            if (degenerate_logistic_start(x, lambda)) {
                x = std::nextafter(x, x >= 0.5 ? 0.0 : 1.0);
                if (x <= 0.0) x = std::nextafter(0.0, 1.0);
                return true;
            }
        } else if (system == SystemKind::Henon) {
            if (!inside_open_unit(map.initial[0]) || !inside_open_unit(map.initial[1])) {
                for (std::size_t i = 0; i < 2; ++i) {
                    if (!inside_open_unit(map.initial[i])) map.initial[i] = std::nextafter(map.initial[i], 0.5);
                }
                return true;
            }
            if (henon_escapes(map, spec.transient + kHenonProbeSteps)) {
                map.initial[0] = std::nextafter(map.initial[0], 0.5);
                return true;
            }
        }
        return false;
    };
    if (fix_map(spec.first)) return true;
    if (!spec.second) return false;
    if (fix_map(*spec.second)) return true;
    if (spec.first.initial == spec.second->initial) {
        double& x = spec.second->initial[0];
        x = std::nextafter(x, 1.0);
        return true;
    }
    if (spec.first.params == spec.second->params) {
        if (auto* logistic = std::get_if<LogisticParams>(&spec.second->params)) {
            logistic->lambda = std::nextafter(logistic->lambda, 0.0);
        } else if (auto* henon = std::get_if<HenonParams>(&spec.second->params)) {
            henon->a = std::nextafter(henon->a, 0.0);
        }
        return true;
    }
    return false;
}

}  // namespace

GeneratorSpec derive_spec_from_hex(std::string_view hex_seed, GeneratorKind kind) {
    GeneratorSpec spec = initial_spec(parse_seed(hex_seed), kind);
    int perturbations = 0;
    while (perturb_once(spec)) {
        if (++perturbations > kMaxKeyPerturbations) {
            throw Error(ErrorCode::KeyRejected, "seed rejected: derived generator still degenerate after " +
                                                    std::to_string(kMaxKeyPerturbations) + " perturbations");
        }
    }
    validate(spec);
    return spec;
}

CipherKey derive_key(std::string_view hex_seed, GeneratorKind kind) {
    CipherKey key{derive_spec_from_hex(hex_seed, kind), std::string(hex_seed)};
    std::transform(key.hex_seed->begin(), key.hex_seed->end(), key.hex_seed->begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return key;
}

// ---------------------------------------------------------------------------
// Canonical key text

namespace {

constexpr std::string_view kKeyHeader = "chaoscrypt-key v1";
constexpr std::array<std::string_view, 3> kStateNames{"x0", "y0", "z0"};

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), end);
}

void write_map(std::ostringstream& out, const MapDescriptor& map, std::string_view prefix) {
    out << prefix << ".system=" << system_name(map.kind()) << '\n';
    const auto names = param_names(map.kind());
    const auto values = param_values(map.params);
    for (std::size_t i = 0; i < names.size(); ++i) out << prefix << '.' << names[i] << '=' << format_double(values[i]) << '\n';
    for (std::size_t i = 0; i < map.initial.size(); ++i) {
        out << prefix << '.' << kStateNames[i] << '=' << format_double(map.initial[i]) << '\n';
    }
}

class KeyReader {
public:
    explicit KeyReader(std::string_view text) {
        std::size_t start = 0;
        while (start < text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines_.push_back(line);
            start = end + 1;
        }
        while (!lines_.empty() && lines_.back().empty()) lines_.pop_back();
    }

    std::string_view raw_line() {
        if (next_ >= lines_.size()) fail("unexpected end of key text");
        return lines_[next_++];
    }

    std::string_view value(std::string_view field) {
        const std::string_view line = raw_line();
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || line.substr(0, eq) != field) {
            fail("expected field '" + std::string(field) + "' on line " + std::to_string(next_) + ", found '" +
                 std::string(line) + "'");
        }
        return line.substr(eq + 1);
    }

    double real(std::string_view field) {
        const auto text = value(field);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
            fail("field '" + std::string(field) + "' is not a finite decimal number");
        }
        return v;
    }

    std::uint64_t integer(std::string_view field) {
        const auto text = value(field);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
            fail("field '" + std::string(field) + "' is not a non-negative integer");
        }
        return v;
    }

    bool at_end() const { return next_ >= lines_.size(); }

    [[noreturn]] static void fail(const std::string& what) { throw Error(ErrorCode::Parse, "key: " + what); }

private:
    std::vector<std::string_view> lines_;
    std::size_t next_ = 0;
};

MapDescriptor read_map(KeyReader& in, std::string_view prefix, SystemKind expected) {
    const std::string p(prefix);
    const SystemKind kind = system_from_name(in.value(p + ".system"));
    if (kind != expected) KeyReader::fail(p + ".system does not match the generator kind");
    const auto names = param_names(kind);
    std::vector<double> values;
    for (auto name : names) values.push_back(in.real(p + "." + std::string(name)));
    StateVector initial(system_dimension(kind));
    for (std::size_t i = 0; i < initial.size(); ++i) initial[i] = in.real(p + "." + std::string(kStateNames[i]));
    return {params_from_values(kind, values), initial};
}

}  // namespace

std::string serialize_key(const CipherKey& key) {
    const GeneratorSpec& spec = key.spec;
    std::ostringstream out;
    out << kKeyHeader << '\n';
    out << "kind=" << generator_name(spec.kind) << '\n';
    out << "hex_seed=" << (key.hex_seed ? *key.hex_seed : std::string("none")) << '\n';
    out << "transient=" << spec.transient << '\n';
    out << "n_bits=" << spec.n_bits << '\n';
    out << "sample_component=" << spec.sample_component << '\n';
    out << "dt=" << format_double(spec.dt) << '\n';
    write_map(out, spec.first, "map1");
    if (spec.second) write_map(out, *spec.second, "map2");
    return out.str();
}

CipherKey parse_key(std::string_view text) {
    KeyReader in(text);
    if (in.raw_line() != kKeyHeader) KeyReader::fail("missing '" + std::string(kKeyHeader) + "' header");
    CipherKey key;
    GeneratorSpec& spec = key.spec;
    spec.kind = generator_from_name(in.value("kind"));
    const std::string_view seed = in.value("hex_seed");
    if (seed != "none") {
        parse_seed(seed);
        key.hex_seed = std::string(seed);
    }
    spec.transient = in.integer("transient");
    spec.n_bits = in.integer("n_bits");
    spec.sample_component = static_cast<std::size_t>(in.integer("sample_component"));
    spec.dt = in.real("dt");
    const SystemKind system = map_system(spec.kind);
    spec.first = read_map(in, "map1", system);
    if (is_hybrid(spec.kind)) spec.second = read_map(in, "map2", system);
    if (!in.at_end()) KeyReader::fail("unexpected trailing fields");
    try {
        validate(spec);
    } catch (const Error& e) {
        KeyReader::fail(e.what());
    }
    return key;
}

std::vector<std::uint8_t> keystream_bytes(const BitSequence& bits, std::size_t byte_count) {
    const std::uint64_t needed = 8ull * byte_count;
    if (bits.size() < needed) {
        throw Error(ErrorCode::Length, "keystream short by " + std::to_string(needed - bits.size()) + " bits (" +
                                           std::to_string(bits.size()) + " available, " + std::to_string(needed) +
                                           " required)");
    }
    return {bits.bytes().begin(), bits.bytes().begin() + static_cast<std::ptrdiff_t>(byte_count)};
}

}  // namespace chaoscrypt
