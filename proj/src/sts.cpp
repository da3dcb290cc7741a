#include "sts.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "special_functions.hpp"

namespace chaoscrypt::sts {

const char* to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

Verdict TestResult::verdict() const {
    if (!applicable || p_values.empty()) return Verdict::NotApplicable;
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        if (!passed(i)) return Verdict::Fail;
    }
    return Verdict::Pass;
}

double TestResult::summary_p() const {
    if (p_values.empty()) return std::numeric_limits<double>::quiet_NaN();
    return *std::min_element(p_values.begin(), p_values.end());
}

int SuiteReport::pass_count() const {
    return static_cast<int>(
        std::count_if(tests.begin(), tests.end(), [](const TestResult& t) { return t.verdict() == Verdict::Pass; }));
}

int SuiteReport::applicable_count() const {
    return static_cast<int>(std::count_if(tests.begin(), tests.end(), [](const TestResult& t) {
        return t.verdict() != Verdict::NotApplicable;
    }));
}

bool SuiteReport::all_applicable_passed() const {
    return applicable_count() > 0 && pass_count() == applicable_count();
}

namespace {

TestResult make_result(std::string name, std::string title, double alpha) {
    TestResult r;
    r.name = std::move(name);
    r.title = std::move(title);
    r.alpha = alpha;
    return r;
}

TestResult not_applicable(TestResult r, std::string why) {
    r.applicable = false;
    r.note = std::move(why);
    r.p_values.clear();
    r.p_labels.clear();
    return r;
}

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

void require_length(std::size_t n, std::size_t minimum, const char* test) {
    if (n < minimum) {
        throw Error(ErrorCode::Length, std::string(test) + ": needs at least " + std::to_string(minimum) +
                                           " bits, got " + std::to_string(n));
    }
}

// Length of the longest run of ones in bits[begin, begin + length).
int longest_run(Bits bits, std::size_t begin, std::size_t length) {
    int best = 0;
    int current = 0;
    for (std::size_t i = begin; i < begin + length; ++i) {
        if (bits[i]) {
            best = std::max(best, ++current);
        } else {
            current = 0;
        }
    }
    return best;
}

double chi_square(std::span<const std::int64_t> observed, std::span<const double> probabilities, double total) {
    double chi2 = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = total * probabilities[i];
        const double diff = static_cast<double>(observed[i]) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

double psi_squared(Bits bits, unsigned m) {
    if (m == 0) return 0.0;
    const std::size_t n = bits.size();
    const std::size_t patterns = std::size_t{1} << m;
    const std::uint32_t mask = static_cast<std::uint32_t>(patterns - 1);
    std::vector<std::uint32_t> counts(patterns, 0);
    std::uint32_t window = 0;
    for (unsigned i = 0; i + 1 < m; ++i) window = (window << 1) | bits[i % n];
    for (std::size_t i = 0; i < n; ++i) {
        window = ((window << 1) | bits[(i + m - 1) % n]) & mask;
        ++counts[window];
    }
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    return sum * static_cast<double>(patterns) / static_cast<double>(n) - static_cast<double>(n);
}

double cusum_p_value(long n, long z) {
    const double root_n = std::sqrt(static_cast<double>(n));
    double sum1 = 0.0;
    for (long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k) {
        sum1 += normal_cdf(static_cast<double>((4 * k + 1) * z) / root_n);
        sum1 -= normal_cdf(static_cast<double>((4 * k - 1) * z) / root_n);
    }
    double sum2 = 0.0;
    for (long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k) {
        sum2 += normal_cdf(static_cast<double>((4 * k + 3) * z) / root_n);
        sum2 -= normal_cdf(static_cast<double>((4 * k + 1) * z) / root_n);
    }
    return clamp_p(1.0 - sum1 + sum2);
}

struct ExcursionCounts {
    std::int64_t cycles = 0;
    // visit_classes[state index][k]: cycles with k visits (k = 5 means >= 5), states -4..-1, 1..4
    std::array<std::array<std::int64_t, 6>, 8> visit_classes{};
    // total visits to states -9..-1, 1..9
    std::array<std::int64_t, 18> total_visits{};
};

constexpr std::array<int, 8> kExcursionStates{-4, -3, -2, -1, 1, 2, 3, 4};
constexpr std::array<int, 18> kVariantStates{-9, -8, -7, -6, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7, 8, 9};

ExcursionCounts count_excursions(Bits bits) {
    ExcursionCounts out;
    std::array<std::int64_t, 9> visits{};  // states -4..4 for the open cycle
    auto close_cycle = [&] {
        for (std::size_t s = 0; s < kExcursionStates.size(); ++s) {
            const auto v = visits[static_cast<std::size_t>(kExcursionStates[s] + 4)];
            ++out.visit_classes[s][static_cast<std::size_t>(std::min<std::int64_t>(v, 5))];
        }
        visits.fill(0);
        ++out.cycles;
    };
    std::int64_t walk = 0;
    for (auto b : bits) {
        walk += b ? 1 : -1;
        if (walk == 0) {
            close_cycle();
            continue;
        }
        if (walk >= -4 && walk <= 4) ++visits[static_cast<std::size_t>(walk + 4)];
        if (walk >= -9 && walk <= 9) ++out.total_visits[static_cast<std::size_t>(walk < 0 ? walk + 9 : walk + 8)];
    }
    if (walk != 0) close_cycle();
    return out;
}

double excursion_probability(int x, int k) {
    const double ax = std::abs(x);
    const double q = 1.0 - 1.0 / (2.0 * ax);
    if (k == 0) return q;
    if (k < 5) return 1.0 / (4.0 * ax * ax) * std::pow(q, k - 1);
    return 1.0 / (2.0 * ax) * std::pow(q, 4);
}

std::string state_label(int x) { return "x=" + std::to_string(x); }

bool excursions_applicable(std::size_t n, std::int64_t cycles) {
    const double constraint = std::max(0.005 * std::sqrt(static_cast<double>(n)), 500.0);
    return static_cast<double>(cycles) >= constraint;
}

}  // namespace

TestResult frequency_monobit(Bits bits, double alpha) {
    require_length(bits.size(), 100, "frequency_monobit");
    TestResult r = make_result("frequency", "Frequency mono bits", alpha);
    const auto n = static_cast<double>(bits.size());
    const auto ones = static_cast<double>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
    const double s = 2.0 * ones - n;
    r.detail = {{"S_n", s}, {"s_obs", std::abs(s) / std::sqrt(n)}};
    r.p_labels = {"p"};
    r.p_values = {clamp_p(std::erfc(std::abs(s) / std::sqrt(2.0 * n)))};
    return r;
}

TestResult block_frequency(Bits bits, std::size_t block_length, double alpha) {
    if (block_length < 20) contract_violation("block_frequency: block length must be at least 20");
    require_length(bits.size(), block_length, "block_frequency");
    TestResult r = make_result("block_frequency", "Block tests", alpha);
    const std::size_t blocks = bits.size() / block_length;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < blocks; ++i) {
        const auto first = bits.begin() + static_cast<std::ptrdiff_t>(i * block_length);
        const auto ones = std::count(first, first + static_cast<std::ptrdiff_t>(block_length), std::uint8_t{1});
        const double pi = static_cast<double>(ones) / static_cast<double>(block_length) - 0.5;
        chi2 += pi * pi;
    }
    chi2 *= 4.0 * static_cast<double>(block_length);
    r.parameters = {{"M", static_cast<double>(block_length)}};
    r.detail = {{"blocks", static_cast<double>(blocks)}, {"chi2", chi2}};
    r.p_labels = {"p"};
    r.p_values = {clamp_p(igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0))};
    return r;
}

TestResult runs(Bits bits, double alpha) {
    require_length(bits.size(), 100, "runs");
    TestResult r = make_result("runs", "Runs Large (small)", alpha);
    const auto n = static_cast<double>(bits.size());
    const auto ones = static_cast<double>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
    const double pi = ones / n;
    // pi * (1 - pi) from integer counts, so complementing the input is exact.
    const double spread = ones * (n - ones) / (n * n);
    const double tau = 2.0 / std::sqrt(n);
    r.detail = {{"pi", pi}};
    if (std::abs(pi - 0.5) >= tau) {
        return not_applicable(std::move(r), "frequency prerequisite failed: |pi - 1/2| >= 2/sqrt(n)");
    }
    std::size_t v_obs = 1;
    for (std::size_t k = 0; k + 1 < bits.size(); ++k) v_obs += bits[k] != bits[k + 1];
    const double expected = 2.0 * n * spread;
    r.detail.emplace_back("V_obs", static_cast<double>(v_obs));
    r.p_labels = {"p"};
    r.p_values = {clamp_p(std::erfc(std::abs(static_cast<double>(v_obs) - expected) /
                                    (2.0 * std::sqrt(2.0 * n) * spread)))};
    return r;
}

TestResult longest_run_of_ones(Bits bits, double alpha) {
    require_length(bits.size(), 128, "longest_run_of_ones");
    TestResult r = make_result("longest_run", "Longest Runs Of Ones", alpha);
    const std::size_t n = bits.size();
    std::size_t block_length = 0;
    std::vector<int> classes;
    std::vector<double> probabilities;
    if (n < 6272) {
        block_length = 8;
        classes = {1, 2, 3, 4};
        probabilities = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    } else if (n < 750000) {
        block_length = 128;
        classes = {4, 5, 6, 7, 8, 9};
        probabilities = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847};
    } else {
        block_length = 10000;
        classes = {10, 11, 12, 13, 14, 15, 16};
        probabilities = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    }
    const std::size_t blocks = n / block_length;
    std::vector<std::int64_t> nu(classes.size(), 0);
    for (std::size_t i = 0; i < blocks; ++i) {
        const int run = longest_run(bits, i * block_length, block_length);
        const auto cls = std::clamp<std::ptrdiff_t>(run - classes.front(), 0,
                                                    static_cast<std::ptrdiff_t>(classes.size()) - 1);
        ++nu[static_cast<std::size_t>(cls)];
    }
    const double chi2 = chi_square(nu, probabilities, static_cast<double>(blocks));
    const double k = static_cast<double>(classes.size() - 1);
    r.parameters = {{"M", static_cast<double>(block_length)}};
    r.detail = {{"blocks", static_cast<double>(blocks)}, {"chi2", chi2}};
    r.p_labels = {"p"};
    r.p_values = {clamp_p(igamc(k / 2.0, chi2 / 2.0))};
    return r;
}

int gf2_rank(std::span<const std::uint32_t, 32> input) {
    std::array<std::uint32_t, 32> rows{};
    std::copy(input.begin(), input.end(), rows.begin());
    int rank = 0;
    for (int col = 31; col >= 0 && rank < 32; --col) {
        const std::uint32_t bit = 1u << col;
        int pivot = -1;
        for (int i = rank; i < 32; ++i) {
            if (rows[static_cast<std::size_t>(i)] & bit) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        for (int i = 0; i < 32; ++i) {
            if (i != rank && (rows[static_cast<std::size_t>(i)] & bit)) {
                rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(rank)];
            }
        }
        ++rank;
    }
    return rank;
}

TestResult rank(Bits bits, double alpha) {
    constexpr std::size_t kSide = 32;
    constexpr std::size_t kMatrixBits = kSide * kSide;
    require_length(bits.size(), 38 * kMatrixBits, "rank");
    TestResult r = make_result("rank", "Rank", alpha);
    const std::size_t matrices = bits.size() / kMatrixBits;

    // Probabilities of full rank, rank 31 and rank <= 30 for a random 32x32 matrix.
    auto rank_probability = [](int rk) {
        double product = 1.0;
        for (int i = 0; i < rk; ++i) {
            const double term = 1.0 - std::pow(2.0, i - 32);
            product *= term * term / (1.0 - std::pow(2.0, i - rk));
        }
        return std::pow(2.0, rk * (32 + 32 - rk) - 32 * 32) * product;
    };
    const double p32 = rank_probability(32);
    const double p31 = rank_probability(31);
    const double p30 = 1.0 - (p32 + p31);

    std::int64_t full = 0;
    std::int64_t minus_one = 0;
    std::array<std::uint32_t, kSide> rows{};
    for (std::size_t k = 0; k < matrices; ++k) {
        for (std::size_t i = 0; i < kSide; ++i) {
            std::uint32_t row = 0;
            for (std::size_t j = 0; j < kSide; ++j) row = (row << 1) | bits[k * kMatrixBits + i * kSide + j];
            rows[i] = row;
        }
        const int rk = gf2_rank(rows);
        if (rk == 32) ++full;
        else if (rk == 31) ++minus_one;
    }
    const std::array<std::int64_t, 3> observed{full, minus_one, static_cast<std::int64_t>(matrices) - full - minus_one};
    const std::array<double, 3> probabilities{p32, p31, p30};
    const double chi2 = chi_square(observed, probabilities, static_cast<double>(matrices));
    r.detail = {{"matrices", static_cast<double>(matrices)},
                {"F_32", static_cast<double>(full)},
                {"F_31", static_cast<double>(minus_one)},
                {"chi2", chi2}};
    r.p_labels = {"p"};
    r.p_values = {clamp_p(std::exp(-chi2 / 2.0))};
    return r;
}

TestResult serial(Bits bits, unsigned m, double alpha) {
    const std::size_t n = bits.size();
    if (n < 2) throw Error(ErrorCode::Length, "serial: sequence too short");
    const int log2n = std::bit_width(n) - 1;
    if (m < 1 || static_cast<int>(m) >= log2n - 2) {
        throw Error(ErrorCode::Length, "serial: pattern length m=" + std::to_string(m) +
                                           " requires m < floor(log2 n) - 2 = " + std::to_string(log2n - 2));
    }
    TestResult r = make_result("serial", "Serial tests", alpha);
    const double psim0 = psi_squared(bits, m);
    const double psim1 = psi_squared(bits, m - 1);
    const double psim2 = m >= 2 ? psi_squared(bits, m - 2) : 0.0;
    const double del1 = psim0 - psim1;
    const double del2 = psim0 - 2.0 * psim1 + psim2;
    r.parameters = {{"m", static_cast<double>(m)}};
    r.detail = {{"psi2_m", psim0}, {"psi2_m-1", psim1}, {"psi2_m-2", psim2}, {"del1", del1}, {"del2", del2}};
    r.p_labels = {"p1", "p2"};
    r.p_values = {clamp_p(igamc(std::pow(2.0, static_cast<double>(m) - 2.0), del1 / 2.0)),
                  clamp_p(igamc(std::pow(2.0, static_cast<double>(m) - 3.0), del2 / 2.0))};
    return r;
}

TestResult cumulative_sums(Bits bits, std::span<const CusumMode> modes, double alpha) {
    require_length(bits.size(), 100, "cumulative_sums");
    TestResult r = make_result("cumulative_sums", "Cumulative Sums", alpha);
    const auto n = static_cast<long>(bits.size());
    for (CusumMode mode : modes) {
        long walk = 0;
        long z = 0;
        for (long k = 0; k < n; ++k) {
            const auto bit = bits[static_cast<std::size_t>(mode == CusumMode::Forward ? k : n - 1 - k)];
            walk += bit ? 1 : -1;
            z = std::max(z, std::abs(walk));
        }
        const bool forward = mode == CusumMode::Forward;
        r.detail.emplace_back(forward ? "z_forward" : "z_backward", static_cast<double>(z));
        r.p_labels.emplace_back(forward ? "forward" : "backward");
        r.p_values.push_back(cusum_p_value(n, z));
    }
    return r;
}

TestResult cumulative_sums(Bits bits, CusumMode mode, double alpha) {
    const std::array<CusumMode, 1> modes{mode};
    return cumulative_sums(bits, modes, alpha);
}

TestResult random_excursions(Bits bits, double alpha) {
    TestResult r = make_result("random_excursions", "Random Excursions", alpha);
    const ExcursionCounts counts = count_excursions(bits);
    r.detail = {{"J", static_cast<double>(counts.cycles)}};
    if (!excursions_applicable(bits.size(), counts.cycles)) {
        return not_applicable(std::move(r), "too few zero-crossing cycles (J=" + std::to_string(counts.cycles) + ")");
    }
    const auto j = static_cast<double>(counts.cycles);
    for (std::size_t s = 0; s < kExcursionStates.size(); ++s) {
        const int x = kExcursionStates[s];
        std::array<double, 6> probabilities{};
        for (int k = 0; k < 6; ++k) probabilities[static_cast<std::size_t>(k)] = excursion_probability(x, k);
        const double chi2 = chi_square(counts.visit_classes[s], probabilities, j);
        r.detail.emplace_back("chi2(" + state_label(x) + ")", chi2);
        r.p_labels.push_back(state_label(x));
        r.p_values.push_back(clamp_p(igamc(2.5, chi2 / 2.0)));
    }
    return r;
}

TestResult random_excursions_variant(Bits bits, double alpha) {
    TestResult r = make_result("random_excursions_variant", "Random Excursion Variant", alpha);
    const ExcursionCounts counts = count_excursions(bits);
    r.detail = {{"J", static_cast<double>(counts.cycles)}};
    if (!excursions_applicable(bits.size(), counts.cycles)) {
        return not_applicable(std::move(r), "too few zero-crossing cycles (J=" + std::to_string(counts.cycles) + ")");
    }
    const auto j = static_cast<double>(counts.cycles);
    for (std::size_t s = 0; s < kVariantStates.size(); ++s) {
        const int x = kVariantStates[s];
        const auto xi = static_cast<double>(counts.total_visits[s]);
        r.p_labels.push_back(state_label(x));
        r.p_values.push_back(clamp_p(std::erfc(std::abs(xi - j) / std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0)))));
    }
    return r;
}

std::size_t berlekamp_massey(Bits s) {
    const std::size_t m = s.size();
    if (m == 0) return 0;
    // Reversed copy so that s[N-i], i = 1..L, is a contiguous run.
    std::vector<std::uint8_t> rev(s.rbegin(), s.rend());
    std::vector<std::uint8_t> c(m + 1, 0), b(m + 1, 0), t;
    c[0] = b[0] = 1;
    std::size_t l = 0;
    std::ptrdiff_t last = -1;
    for (std::size_t n = 0; n < m; ++n) {
        // rev[m - 1 - n + i] == s[n - i]
        const std::uint8_t* window = rev.data() + (m - 1 - n);
        std::uint8_t d = 0;
        for (std::size_t i = 0; i <= l; ++i) d ^= static_cast<std::uint8_t>(c[i] & window[i]);
        if (!d) continue;
        t = c;
        const std::size_t shift = n - static_cast<std::size_t>(last);
        for (std::size_t j = 0; j + shift <= m; ++j) c[j + shift] ^= b[j];
        if (2 * l <= n) {
            l = n + 1 - l;
            last = static_cast<std::ptrdiff_t>(n);
            b.swap(t);
        }
    }
    return l;
}

TestResult linear_complexity(Bits bits, std::size_t block_length, double alpha) {
    if (block_length < 500 || block_length > 5000) {
        contract_violation("linear_complexity: block length must lie in [500, 5000]");
    }
    constexpr std::size_t kMinBlocks = 200;
    require_length(bits.size(), kMinBlocks * block_length, "linear_complexity");
    TestResult r = make_result("linear_complexity", "Linear Complexity", alpha);
    const std::size_t blocks = bits.size() / block_length;
    const auto m = static_cast<double>(block_length);
    const double sign = block_length % 2 == 0 ? 1.0 : -1.0;  // (-1)^M
    const double mu = m / 2.0 + (9.0 - sign) / 36.0 - (m / 3.0 + 2.0 / 9.0) / std::pow(2.0, m);
    static constexpr std::array<double, 7> kProbabilities{0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};
    std::array<std::int64_t, 7> nu{};
    for (std::size_t i = 0; i < blocks; ++i) {
        const auto l = static_cast<double>(berlekamp_massey(bits.subspan(i * block_length, block_length)));
        const double t = sign * (l - mu) + 2.0 / 9.0;
        std::size_t cls = 6;
        if (t <= -2.5) cls = 0;
        else if (t <= -1.5) cls = 1;
        else if (t <= -0.5) cls = 2;
        else if (t <= 0.5) cls = 3;
        else if (t <= 1.5) cls = 4;
        else if (t <= 2.5) cls = 5;
        ++nu[cls];
    }
    const double chi2 = chi_square(nu, kProbabilities, static_cast<double>(blocks));
    r.parameters = {{"M", m}};
    r.detail = {{"blocks", static_cast<double>(blocks)}, {"chi2", chi2}};
    r.p_labels = {"p"};
    r.p_values = {clamp_p(igamc(3.0, chi2 / 2.0))};
    return r;
}

SuiteReport run_suite(Bits bits, double alpha, std::string label, const SuiteParameters& params) {
    if (!(alpha > 0.0 && alpha < 1.0)) contract_violation("run_suite: alpha must lie in (0, 1)");
    SuiteReport report;
    report.length = bits.size();
    report.label = std::move(label);
    report.alpha = alpha;

    constexpr std::array<CusumMode, 2> kBothModes{CusumMode::Forward, CusumMode::Backward};
    struct Entry {
        const char* name;
        const char* title;
        std::function<TestResult()> run;
    };
    const std::array<Entry, 10> battery{{
        {"frequency", "Frequency mono bits", [&] { return frequency_monobit(bits, alpha); }},
        {"block_frequency", "Block tests", [&] { return block_frequency(bits, params.block_frequency_m, alpha); }},
        {"serial", "Serial tests", [&] { return serial(bits, params.serial_m, alpha); }},
        {"runs", "Runs Large (small)", [&] { return runs(bits, alpha); }},
        {"rank", "Rank", [&] { return rank(bits, alpha); }},
        {"longest_run", "Longest Runs Of Ones", [&] { return longest_run_of_ones(bits, alpha); }},
        {"random_excursions", "Random Excursions", [&] { return random_excursions(bits, alpha); }},
        {"random_excursions_variant", "Random Excursion Variant",
         [&] { return random_excursions_variant(bits, alpha); }},
        {"cumulative_sums", "Cumulative Sums", [&] { return cumulative_sums(bits, kBothModes, alpha); }},
        {"linear_complexity", "Linear Complexity",
         [&] { return linear_complexity(bits, params.linear_complexity_m, alpha); }},
    }};
    for (const Entry& entry : battery) {
        try {
            report.tests.push_back(entry.run());
        } catch (const Error& e) {
            report.tests.push_back(not_applicable(make_result(entry.name, entry.title, alpha), e.what()));
        }
    }
    return report;
}

SuiteReport run_suite(const BitSequence& bits, double alpha, std::string label, const SuiteParameters& params) {
    const auto unpacked = bits.unpack();
    return run_suite(unpacked, alpha, std::move(label), params);
}

}  // namespace chaoscrypt::sts
