#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"

namespace chaoscrypt {

enum class SystemKind : std::uint8_t { Chua, Lorenz, Rossler, Henon, Logistic };

std::string_view system_name(SystemKind kind) noexcept;
SystemKind system_from_name(std::string_view name);
std::size_t system_dimension(SystemKind kind) noexcept;
bool is_continuous(SystemKind kind) noexcept;

// Orbits whose magnitude exceeds this bound are treated as divergent.
inline constexpr double kEscapeBound = 1e6;

/// State of a chaotic system: 1 component (logistic), 2 (Henon) or 3
/// (Chua, Lorenz, Rossler).
class StateVector {
public:
    static constexpr std::size_t kMaxDimension = 3;

    StateVector() = default;
    StateVector(std::initializer_list<double> values);
    explicit StateVector(std::size_t dimension);

    std::size_t size() const noexcept { return size_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    const double* begin() const noexcept { return values_.data(); }
    const double* end() const noexcept { return values_.data() + size_; }

    bool is_finite() const noexcept;
    double norm() const noexcept;
    double max_abs() const noexcept;

    friend bool operator==(const StateVector& a, const StateVector& b) noexcept;

private:
    std::array<double, kMaxDimension> values_{};
    std::size_t size_ = 0;
};

StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(double s, const StateVector& v);

// Parameter sets, lettered as in the defining equations. Defaults are the
// chaotic values each system is usually quoted with.
struct ChuaParams {
    double alpha = 10.0;
    double beta = 14.87;
    double a = -1.27;
    double b = -0.1;
    static constexpr std::array<std::string_view, 4> kNames{"alpha", "beta", "a", "b"};
    std::array<double, 4> values() const { return {alpha, beta, a, b}; }
    friend bool operator==(const ChuaParams&, const ChuaParams&) = default;
};

struct LorenzParams {
    double a = 10.0;
    double b = 28.0;
    double c = 8.0 / 3.0;
    static constexpr std::array<std::string_view, 3> kNames{"a", "b", "c"};
    std::array<double, 3> values() const { return {a, b, c}; }
    friend bool operator==(const LorenzParams&, const LorenzParams&) = default;
};

struct RosslerParams {
    double a = 0.2;
    double b = 0.2;
    double c = 5.7;
    static constexpr std::array<std::string_view, 3> kNames{"a", "b", "c"};
    std::array<double, 3> values() const { return {a, b, c}; }
    friend bool operator==(const RosslerParams&, const RosslerParams&) = default;
};

struct HenonParams {
    double a = 1.4;
    double b = 0.3;
    double c = 1.0;
    static constexpr std::array<std::string_view, 3> kNames{"a", "b", "c"};
    std::array<double, 3> values() const { return {a, b, c}; }
    friend bool operator==(const HenonParams&, const HenonParams&) = default;
};

struct LogisticParams {
    static constexpr double kMinLambda = 3.57;
    static constexpr double kMaxLambda = 4.0;
    double lambda = 4.0;
    static constexpr std::array<std::string_view, 1> kNames{"lambda"};
    std::array<double, 1> values() const { return {lambda}; }
    friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

using SystemParams = std::variant<ChuaParams, LorenzParams, RosslerParams, HenonParams, LogisticParams>;

SystemKind kind_of(const SystemParams& params) noexcept;
SystemParams default_params(SystemKind kind);
// Builds parameters from values listed in `kNames` order.
SystemParams params_from_values(SystemKind kind, std::span<const double> values);
std::vector<double> param_values(const SystemParams& params);
std::span<const std::string_view> param_names(SystemKind kind) noexcept;
// Throws ContractViolation on non-finite parameters or λ outside [3.57, 4].
void validate(const SystemParams& params);

struct ContinuousSystem {
    std::variant<ChuaParams, LorenzParams, RosslerParams> params;
    SystemKind kind() const noexcept;
};

struct DiscreteMap {
    std::variant<HenonParams, LogisticParams> params;
    SystemKind kind() const noexcept;
};

// Piecewise-linear Chua nonlinearity h(x).
double chua_nonlinearity(double x, const ChuaParams& p) noexcept;

StateVector chua_deriv(const StateVector& state, const ChuaParams& p);
StateVector lorenz_deriv(const StateVector& state, const LorenzParams& p);
StateVector rossler_deriv(const StateVector& state, const RosslerParams& p);
StateVector vector_field(const ContinuousSystem& system, const StateVector& state);

/// Classical fourth-order Runge-Kutta step for an arbitrary vector field.
/// Throws DivergenceError tagged with `step_index` when any stage goes
/// non-finite.
template <class Field>
    requires std::invocable<Field&, const StateVector&>
StateVector rk4_step(Field&& field, const StateVector& state, double dt, std::uint64_t step_index = 0) {
    if (!(dt > 0.0) || !std::isfinite(dt)) contract_violation("rk4_step: dt must be positive and finite");
    const StateVector k1 = field(state);
    const StateVector k2 = field(state + (0.5 * dt) * k1);
    const StateVector k3 = field(state + (0.5 * dt) * k2);
    const StateVector k4 = field(state + dt * k3);
    StateVector next = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.is_finite() || !k1.is_finite() || !k2.is_finite() || !k3.is_finite() || !k4.is_finite()) {
        throw DivergenceError(step_index, "rk4_step: non-finite state");
    }
    return next;
}

StateVector rk4_step(const ContinuousSystem& system, const StateVector& state, double dt,
                     std::uint64_t step_index = 0);

StateVector henon_step(const StateVector& state, const HenonParams& p, std::uint64_t step_index = 0);
double logistic_step(double x, const LogisticParams& p);

}  // namespace chaoscrypt
