#include "chaos.hpp"

#include <algorithm>
#include <string>

namespace chaoscrypt {

std::string_view system_name(SystemKind kind) noexcept {
    switch (kind) {
        case SystemKind::Chua: return "chua";
        case SystemKind::Lorenz: return "lorenz";
        case SystemKind::Rossler: return "rossler";
        case SystemKind::Henon: return "henon";
        case SystemKind::Logistic: return "logistic";
    }
    return "?";
}

SystemKind system_from_name(std::string_view name) {
    for (auto kind : {SystemKind::Chua, SystemKind::Lorenz, SystemKind::Rossler, SystemKind::Henon,
                      SystemKind::Logistic}) {
        if (system_name(kind) == name) return kind;
    }
    throw Error(ErrorCode::Parse, "unknown chaotic system '" + std::string(name) + "'");
}

std::size_t system_dimension(SystemKind kind) noexcept {
    switch (kind) {
        case SystemKind::Henon: return 2;
        case SystemKind::Logistic: return 1;
        default: return 3;
    }
}

bool is_continuous(SystemKind kind) noexcept {
    return kind == SystemKind::Chua || kind == SystemKind::Lorenz || kind == SystemKind::Rossler;
}

StateVector::StateVector(std::initializer_list<double> values) {
    require(values.size() >= 1 && values.size() <= kMaxDimension, "StateVector: dimension must be 1..3");
    std::copy(values.begin(), values.end(), values_.begin());
    size_ = values.size();
}

StateVector::StateVector(std::size_t dimension) : size_(dimension) {
    require(dimension >= 1 && dimension <= kMaxDimension, "StateVector: dimension must be 1..3");
}

bool StateVector::is_finite() const noexcept {
    return std::all_of(begin(), end(), [](double v) { return std::isfinite(v); });
}

double StateVector::norm() const noexcept {
    double sum = 0.0;
    for (double v : *this) sum += v * v;
    return std::sqrt(sum);
}

double StateVector::max_abs() const noexcept {
    double m = 0.0;
    for (double v : *this) m = std::max(m, std::abs(v));
    return m;
}

bool operator==(const StateVector& a, const StateVector& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    require(a.size() == b.size(), "StateVector: dimension mismatch");
    StateVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
    require(a.size() == b.size(), "StateVector: dimension mismatch");
    StateVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

StateVector operator*(double s, const StateVector& v) {
    StateVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

SystemKind kind_of(const SystemParams& params) noexcept {
    return static_cast<SystemKind>(params.index());
}

SystemParams default_params(SystemKind kind) {
    switch (kind) {
        case SystemKind::Chua: return ChuaParams{};
        case SystemKind::Lorenz: return LorenzParams{};
        case SystemKind::Rossler: return RosslerParams{};
        case SystemKind::Henon: return HenonParams{};
        case SystemKind::Logistic: return LogisticParams{};
    }
    contract_violation("default_params: unknown system");
}

SystemParams params_from_values(SystemKind kind, std::span<const double> v) {
    if (v.size() != param_names(kind).size()) contract_violation("params_from_values: wrong parameter count");
    switch (kind) {
        case SystemKind::Chua: return ChuaParams{v[0], v[1], v[2], v[3]};
        case SystemKind::Lorenz: return LorenzParams{v[0], v[1], v[2]};
        case SystemKind::Rossler: return RosslerParams{v[0], v[1], v[2]};
        case SystemKind::Henon: return HenonParams{v[0], v[1], v[2]};
        case SystemKind::Logistic: return LogisticParams{v[0]};
    }
    contract_violation("params_from_values: unknown system");
}

std::vector<double> param_values(const SystemParams& params) {
    return std::visit(
        [](const auto& p) {
            const auto values = p.values();
            return std::vector<double>(values.begin(), values.end());
        },
        params);
}

std::span<const std::string_view> param_names(SystemKind kind) noexcept {
    switch (kind) {
        case SystemKind::Chua: return ChuaParams::kNames;
        case SystemKind::Lorenz: return LorenzParams::kNames;
        case SystemKind::Rossler: return RosslerParams::kNames;
        case SystemKind::Henon: return HenonParams::kNames;
        case SystemKind::Logistic: return LogisticParams::kNames;
    }
    return {};
}

void validate(const SystemParams& params) {
    std::visit(
        [](const auto& p) {
            for (double v : p.values()) {
                if (!std::isfinite(v)) contract_violation("system parameters must be finite");
            }
        },
        params);
    if (const auto* logistic = std::get_if<LogisticParams>(&params)) {
        if (logistic->lambda < LogisticParams::kMinLambda || logistic->lambda > LogisticParams::kMaxLambda) {
            contract_violation("logistic lambda " + std::to_string(logistic->lambda) +
                               " outside the chaotic window [3.57, 4]");
        }
    }
}

SystemKind ContinuousSystem::kind() const noexcept { return static_cast<SystemKind>(params.index()); }

SystemKind DiscreteMap::kind() const noexcept {
    return params.index() == 0 ? SystemKind::Henon : SystemKind::Logistic;
}

double chua_nonlinearity(double x, const ChuaParams& p) noexcept {
    return p.b * x + 0.5 * (p.a - p.b) * (std::abs(x + 1.0) - std::abs(x - 1.0));
}

namespace {
void require_dimension(const StateVector& state, std::size_t dim, const char* op) {
    if (state.size() != dim) {
        contract_violation(std::string(op) + ": expected state of dimension " + std::to_string(dim) + ", got " +
                           std::to_string(state.size()));
    }
}
}  // namespace

StateVector chua_deriv(const StateVector& s, const ChuaParams& p) {
    require_dimension(s, 3, "chua_deriv");
    return {p.alpha * (s[1] - chua_nonlinearity(s[0], p)), s[0] - s[1] + s[2], -p.beta * s[1]};
}

StateVector lorenz_deriv(const StateVector& s, const LorenzParams& p) {
    require_dimension(s, 3, "lorenz_deriv");
    return {p.a * (s[1] - s[0]), p.b * s[0] - s[1] - s[0] * s[2], s[0] * s[1] - p.c * s[2]};
}

StateVector rossler_deriv(const StateVector& s, const RosslerParams& p) {
    require_dimension(s, 3, "rossler_deriv");
    return {-s[1] - s[2], s[0] + p.a * s[1], p.b + s[2] * (s[0] - p.c)};
}

StateVector vector_field(const ContinuousSystem& system, const StateVector& state) {
    return std::visit(
        [&](const auto& p) -> StateVector {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ChuaParams>) return chua_deriv(state, p);
            else if constexpr (std::is_same_v<P, LorenzParams>) return lorenz_deriv(state, p);
            else return rossler_deriv(state, p);
        },
        system.params);
}

StateVector rk4_step(const ContinuousSystem& system, const StateVector& state, double dt, std::uint64_t step_index) {
    require_dimension(state, 3, "rk4_step");
    return rk4_step([&](const StateVector& s) { return vector_field(system, s); }, state, dt, step_index);
}

StateVector henon_step(const StateVector& s, const HenonParams& p, std::uint64_t step_index) {
    require_dimension(s, 2, "henon_step");
    StateVector next{p.c - p.a * s[0] * s[0] + s[1], p.b * s[0]};
    if (!next.is_finite() || next.max_abs() > kEscapeBound) {
        throw DivergenceError(step_index, "henon_step: orbit escaped");
    }
    return next;
}

double logistic_step(double x, const LogisticParams& p) {
    if (!(x >= 0.0 && x <= 1.0)) contract_violation("logistic_step: x must lie in [0, 1]");
    validate(SystemParams{p});
    return p.lambda * x * (1.0 - x);
}

}  // namespace chaoscrypt
