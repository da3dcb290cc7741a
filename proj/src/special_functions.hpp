#pragma once

namespace chaoscrypt {

// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
double igamc(double a, double x);
// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double igam(double a, double x);
// Standard normal cumulative distribution function.
double normal_cdf(double x);

}  // namespace chaoscrypt
