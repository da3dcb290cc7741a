#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prng.hpp"

// Statistical battery: the ten SP 800-22 rev 1a tests used to assess the
// chaotic generators, plus a suite runner applying the significance rule.
//
// Every test takes the sequence as one byte (0/1) per bit; overloads accept a
// packed BitSequence and unpack it. Length preconditions raise
// ErrorCode::Length; failed applicability gates (runs, excursions) come back as
// not-applicable results instead.
namespace chaoscrypt::sts {

inline constexpr double kDefaultAlpha = 0.01;

using Bits = std::span<const std::uint8_t>;

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Verdict verdict) noexcept;

struct TestResult {
    std::string name;   // stable identifier, e.g. "block_frequency"
    std::string title;  // human label, e.g. "Block tests"
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<std::string> p_labels;  // one per p-value
    std::vector<double> p_values;
    std::vector<std::pair<std::string, double>> detail;  // statistics behind the p-values
    double alpha = kDefaultAlpha;
    bool applicable = true;
    std::string note;  // why the test was not applicable

    bool passed(std::size_t i) const { return p_values.at(i) >= alpha; }
    // Pass iff applicable and every p-value >= alpha.
    Verdict verdict() const;
    // Smallest p-value; the figure quoted in summary tables.
    double summary_p() const;
};

struct SuiteParameters {
    std::size_t block_frequency_m = 128;
    unsigned serial_m = 16;
    std::size_t linear_complexity_m = 500;
};

struct SuiteReport {
    std::uint64_t length = 0;
    std::string label;
    double alpha = kDefaultAlpha;
    std::vector<TestResult> tests;  // always the ten tests, in battery order

    int pass_count() const;
    int applicable_count() const;
    bool all_applicable_passed() const;
};

TestResult frequency_monobit(Bits bits, double alpha = kDefaultAlpha);
TestResult block_frequency(Bits bits, std::size_t block_length = 128, double alpha = kDefaultAlpha);
TestResult runs(Bits bits, double alpha = kDefaultAlpha);
TestResult longest_run_of_ones(Bits bits, double alpha = kDefaultAlpha);
TestResult rank(Bits bits, double alpha = kDefaultAlpha);
TestResult serial(Bits bits, unsigned m = 16, double alpha = kDefaultAlpha);

enum class CusumMode { Forward, Backward };
// Both directions when `modes` holds both; the suite runs forward and backward.
TestResult cumulative_sums(Bits bits, std::span<const CusumMode> modes, double alpha = kDefaultAlpha);
TestResult cumulative_sums(Bits bits, CusumMode mode, double alpha = kDefaultAlpha);

TestResult random_excursions(Bits bits, double alpha = kDefaultAlpha);
TestResult random_excursions_variant(Bits bits, double alpha = kDefaultAlpha);
TestResult linear_complexity(Bits bits, std::size_t block_length = 500, double alpha = kDefaultAlpha);

// Length of the shortest LFSR generating `bits`.
std::size_t berlekamp_massey(Bits bits);
// Rank over GF(2) of a 32x32 matrix given as row bitmasks.
int gf2_rank(std::span<const std::uint32_t, 32> rows);

SuiteReport run_suite(Bits bits, double alpha = kDefaultAlpha, std::string label = {},
                      const SuiteParameters& params = {});
SuiteReport run_suite(const BitSequence& bits, double alpha = kDefaultAlpha, std::string label = {},
                      const SuiteParameters& params = {});

// Packed-sequence conveniences.
inline TestResult frequency_monobit(const BitSequence& b, double alpha = kDefaultAlpha) {
    const auto bits = b.unpack();
    return frequency_monobit(bits, alpha);
}
inline TestResult runs(const BitSequence& b, double alpha = kDefaultAlpha) {
    const auto bits = b.unpack();
    return runs(bits, alpha);
}
inline TestResult cumulative_sums(const BitSequence& b, CusumMode mode, double alpha = kDefaultAlpha) {
    const auto bits = b.unpack();
    return cumulative_sums(bits, mode, alpha);
}

// Plain-text report laid out as a numbered test table with one p-value
// column headed by the generator label, followed by per-test detail.
std::string format_text(const SuiteReport& report);
// JSON document, one record per test.
std::string format_json(const SuiteReport& report);
// Fixed-precision rendering shared by both report forms.
std::string format_p(double p);

}  // namespace chaoscrypt::sts
