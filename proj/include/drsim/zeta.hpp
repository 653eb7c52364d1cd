#pragma once
// Riemann zeta evaluation, truncated power sums, and their inverses.

#include <cstdint>
#include <optional>

namespace drsim {

// Riemann zeta(beta) for beta > 1 + 1e-9, absolute error <= 1e-10.
// Direct compensated summation plus an Euler-Maclaurin tail.
// Throws std::domain_error for beta <= 1 + 1e-9 (series diverges).
double riemann_zeta(double beta);

// Finite sum_{k=1..kmax} k^(-beta), defined for all beta > 0.
// Throws std::domain_error for beta <= 0 or kmax < 1.
double truncated_zeta(double beta, std::uint64_t kmax);

// Solve riemann_zeta(b) = target for b in (1 + 1e-6, 60] by bisection.
// Throws std::domain_error if target <= 1 and std::range_error if the
// target lies outside the bracket's value range.
double inverse_zeta(double target);

// Non-throwing variant: nullopt where inverse_zeta would throw.
std::optional<double> try_inverse_zeta(double target);

// Solve truncated_zeta(b, kmax) = target for b in (1e-6, 60] by bisection;
// nullopt when the target cannot be bracketed (target <= 1 included).
std::optional<double> try_inverse_truncated_zeta(double target, std::uint64_t kmax);

}  // namespace drsim
