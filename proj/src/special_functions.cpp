#include "special_functions.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"

namespace chaoscrypt {

// Series / continued-fraction evaluation after Cephes (igam.c).

namespace {

constexpr double kMachineEpsilon = 1.11022302462515654042e-16;
constexpr double kMaxLog = 7.09782712893383996843e2;
constexpr double kBig = 4.503599627370496e15;
constexpr double kBigInverse = 2.22044604925031308085e-16;

void check_domain(double a, double x, const char* fn) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || std::isnan(x)) {
        contract_violation(std::string(fn) + ": requires a > 0 and x >= 0");
    }
}

// log of x^a e^-x / Γ(a)
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

double lower_series(double a, double x) {
    const double ax = log_prefactor(a, x);
    if (ax < -kMaxLog) return 0.0;
    double r = a;
    double c = 1.0;
    double sum = 1.0;
    do {
        r += 1.0;
        c *= x / r;
        sum += c;
    } while (c / sum > kMachineEpsilon);
    return sum * std::exp(ax) / a;
}

double upper_continued_fraction(double a, double x) {
    const double ax = log_prefactor(a, x);
    if (ax < -kMaxLog) return 0.0;
    double y = 1.0 - a;
    double z = x + y + 1.0;
    double c = 0.0;
    double pkm2 = 1.0, qkm2 = x;
    double pkm1 = x + 1.0, qkm1 = z * x;
    double ans = pkm1 / qkm1;
    double t = 0.0;
    do {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        const double yc = y * c;
        const double pk = pkm1 * z - pkm2 * yc;
        const double qk = qkm1 * z - qkm2 * yc;
        if (qk != 0.0) {
            const double r = pk / qk;
            t = std::abs((ans - r) / r);
            ans = r;
        } else {
            t = 1.0;
        }
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if (std::abs(pk) > kBig) {
            pkm2 *= kBigInverse;
            pkm1 *= kBigInverse;
            qkm2 *= kBigInverse;
            qkm1 *= kBigInverse;
        }
    } while (t > kMachineEpsilon);
    return ans * std::exp(ax);
}

}  // namespace

double igamc(double a, double x) {
    check_domain(a, x, "igamc");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < 1.0 || x < a) return 1.0 - lower_series(a, x);
    return upper_continued_fraction(a, x);
}

double igam(double a, double x) {
    check_domain(a, x, "igam");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x > 1.0 && x > a) return 1.0 - upper_continued_fraction(a, x);
    return lower_series(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace chaoscrypt
