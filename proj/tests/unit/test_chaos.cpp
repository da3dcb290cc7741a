#include <doctest.h>

#include <cmath>
#include <random>

#include "chaos.hpp"

using namespace chaoscrypt;

namespace {

void check_vec(const StateVector& got, std::initializer_list<double> want, double tol = 1e-12) {
    REQUIRE(got.size() == want.size());
    std::size_t i = 0;
    for (double w : want) CHECK(got[i++] == doctest::Approx(w).epsilon(tol));
}

const ChuaParams chua{};
const LorenzParams lorenz{};
const RosslerParams rossler{};
const HenonParams henon{};

}  // namespace

TEST_CASE("chua vector field") {
    check_vec(chua_deriv({0, 0, 0}, chua), {0, 0, 0});
    check_vec(chua_deriv({1, 0, 0}, chua), {12.7, 1, 0});
    check_vec(chua_deriv({0, 1, 0}, chua), {10, -1, -14.87});
    CHECK(chua_nonlinearity(1.0, chua) == doctest::Approx(-1.27));
    CHECK_THROWS_AS(chua_deriv({0, 0}, chua), Error);
}

TEST_CASE("lorenz vector field") {
    check_vec(lorenz_deriv({0, 0, 0}, lorenz), {0, 0, 0});
    check_vec(lorenz_deriv({1, 1, 1}, lorenz), {0, 26, 1 - 8.0 / 3.0});
    const double r = std::sqrt(72.0);
    CHECK(lorenz_deriv({r, r, 27}, lorenz).norm() < 1e-12);
    CHECK(lorenz_deriv({-r, -r, 27}, lorenz).norm() < 1e-12);
    CHECK_THROWS_AS(lorenz_deriv({1, 1}, lorenz), Error);
}

TEST_CASE("rossler vector field") {
    check_vec(rossler_deriv({0, 0, 0}, rossler), {0, 0, 0.2});
    check_vec(rossler_deriv({0, 1, -1}, rossler), {0, 0.2, 5.9});
    const RosslerParams a0{0.0, 0.2, 5.7};
    CHECK(rossler_deriv({1, 1, 0}, a0)[1] == 1.0);
}

TEST_CASE("rk4 on the exponential fixture") {
    auto decay = [](const StateVector& s) { return StateVector{-s[0]}; };
    const StateVector one{1.0};
    CHECK(std::abs(rk4_step(decay, one, 0.1)[0] - std::exp(-0.1)) < 1e-7);

    auto global_error = [&](int steps) {
        StateVector x = one;
        const double dt = 1.0 / steps;
        for (int i = 0; i < steps; ++i) x = rk4_step(decay, x, dt);
        return std::abs(x[0] - std::exp(-1.0));
    };
    const double ratio = global_error(10) / global_error(20);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
    const double order = std::log2(ratio);
    CHECK(order >= 3.5);
    CHECK(order <= 4.5);
}

TEST_CASE("rk4 preserves equilibria and rejects bad steps") {
    const ContinuousSystem sys{lorenz};
    const double r = std::sqrt(72.0);
    const StateVector eq{r, r, 27};
    CHECK((rk4_step(sys, eq, 0.01) - eq).norm() < 1e-12);
    CHECK((rk4_step(ContinuousSystem{chua}, StateVector{0, 0, 0}, 0.01)).norm() == 0.0);
    CHECK_THROWS_AS(rk4_step(sys, eq, 0.0), Error);
    CHECK_THROWS_AS(rk4_step(sys, eq, std::nan("")), Error);
}

TEST_CASE("rk4 divergence carries the step index") {
    auto blowup = [](const StateVector& s) { return StateVector{s[0] * s[0] * 1e300}; };
    try {
        (void)rk4_step(blowup, StateVector{1e10}, 1.0, 42);
        FAIL("expected divergence");
    } catch (const DivergenceError& e) {
        CHECK(e.step() == 42);
        CHECK(e.code() == ErrorCode::Divergence);
    }
}

TEST_CASE("henon map") {
    check_vec(henon_step({0, 0}, henon), {1, 0});
    check_vec(henon_step({1, 0}, henon), {-0.4, 0.3});
    const HenonParams linear{0.0, 0.3, 0.0};
    check_vec(henon_step({2, 5}, linear), {5, 0.6});
    CHECK_THROWS_AS(henon_step({1e5, 0}, henon, 7), DivergenceError);
}

TEST_CASE("logistic map") {
    const LogisticParams four{4.0};
    CHECK(logistic_step(0.75, four) == 0.75);
    CHECK(logistic_step(0.5, four) == 1.0);
    CHECK(logistic_step(1.0, four) == 0.0);
    CHECK(logistic_step(0.0, LogisticParams{3.7}) == 0.0);
    CHECK_THROWS_AS(logistic_step(1.5, four), Error);
    CHECK_THROWS_AS(logistic_step(-0.1, four), Error);
    CHECK_THROWS_AS(validate(SystemParams{LogisticParams{3.5}}), Error);
    CHECK_THROWS_AS(validate(SystemParams{LogisticParams{4.01}}), Error);
}

TEST_CASE("logistic orbits stay in the unit interval") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0), lam(3.57, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const LogisticParams p{lam(rng)};
        double x = unit(rng);
        for (int i = 0; i < 1000; ++i) {
            x = logistic_step(x, p);
            REQUIRE(x >= 0.0);
            REQUIRE(x <= 1.0);
        }
    }
}

TEST_CASE("lorenz trajectories separate") {
    const ContinuousSystem sys{lorenz};
    StateVector a{1, 1, 1};
    for (int i = 0; i < 1000; ++i) a = rk4_step(sys, a, 0.01);
    StateVector b = a;
    b[0] += 1e-9;
    double separation = 0;
    for (int i = 0; i < 2500 && separation <= 1.0; ++i) {
        a = rk4_step(sys, a, 0.01);
        b = rk4_step(sys, b, 0.01);
        separation = (a - b).norm();
    }
    CHECK(separation > 1.0);
}

TEST_CASE("trajectories are deterministic") {
    const ContinuousSystem sys{rossler};
    StateVector a{0.1, 0.2, 0.3}, b{0.1, 0.2, 0.3};
    for (int i = 0; i < 1000; ++i) {
        a = rk4_step(sys, a, 0.01);
        b = rk4_step(sys, b, 0.01);
    }
    CHECK(a == b);
}

TEST_CASE("parameter tables") {
    CHECK(system_dimension(SystemKind::Logistic) == 1);
    CHECK(system_dimension(SystemKind::Henon) == 2);
    CHECK(system_dimension(SystemKind::Chua) == 3);
    CHECK(system_from_name("rossler") == SystemKind::Rossler);
    CHECK_THROWS(system_from_name("duffing"));
    const double v[] = {1.0, 2.0, 3.0};
    const auto p = params_from_values(SystemKind::Lorenz, v);
    CHECK(param_values(p) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(std::get<HenonParams>(default_params(SystemKind::Henon)).c == 1.0);
    CHECK_THROWS_AS(validate(SystemParams{LorenzParams{std::nan(""), 28, 1}}), Error);
}
