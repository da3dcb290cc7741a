#include <doctest.h>

#include <set>

#include "compare.hpp"

using namespace chaoscrypt;

TEST_CASE("seed expansion") {
    // SplitMix64 from state 1, computed independently.
    const auto seeds = expand_seeds(1, 2);
    REQUIRE(seeds.size() == 2);
    CHECK(seeds[0] == "910a2dec89025cc1beeb8da1658eec67f893a2eefb32555e71c18690ee42c90b");
    CHECK(seeds[1] == "71bb54d8d101b5b9c34d0bff90150280e099ec6cd7363ca585e7bb0f12278575");

    const auto many = expand_seeds(77, 50);
    CHECK(std::set<std::string>(many.begin(), many.end()).size() == 50);
    CHECK(expand_seeds(77, 50) == many);
    CHECK(expand_seeds(78, 1)[0] != many[0]);
    CHECK(expand_seeds(5, 0).empty());
}

TEST_CASE("comparison matrix is independent of scheduling") {
    const std::vector<GeneratorKind> kinds = {GeneratorKind::Logistic, GeneratorKind::HybridLogistic,
                                              GeneratorKind::Henon};
    const auto seeds = expand_seeds(9, 3);
    const auto one = compare_generators(kinds, seeds, 20'000, 0.01, 1);
    const auto four = compare_generators(kinds, seeds, 20'000, 0.01, 4);
    CHECK(one.passes == four.passes);
    CHECK(one.applicable == four.applicable);
    REQUIRE(one.passes.size() == 3);
    REQUIRE(one.passes[0].size() == 3);
    for (const auto& row : one.applicable)
        for (int a : row) CHECK(a <= 10);
}

TEST_CASE("single cell matrix and formatting") {
    const auto seeds = expand_seeds(1, 1);
    const auto m = compare_generators({GeneratorKind::HybridLogistic}, seeds, 100'000);
    CHECK(m.mean_passes(0) == m.passes[0][0]);
    const auto text = format_matrix(m);
    CHECK(text.find("hybrid-logistic") != std::string::npos);
    CHECK(text.find("mean") != std::string::npos);
    CHECK(text.find(seeds[0].substr(0, 16)) != std::string::npos);
}

TEST_CASE("comparison rejects empty input and surfaces job failures") {
    const auto seeds = expand_seeds(1, 2);
    CHECK_THROWS_AS(compare_generators({}, seeds, 1000), Error);
    CHECK_THROWS_AS(compare_generators({GeneratorKind::Henon}, {}, 1000), Error);
    CHECK_THROWS_AS(compare_generators({GeneratorKind::Henon}, seeds, 0), Error);
    CHECK_THROWS_AS(compare_generators({GeneratorKind::Henon}, {"not-hex"}, 1000), Error);
}
