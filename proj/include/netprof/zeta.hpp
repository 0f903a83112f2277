#pragma once
// Hurwitz zeta and the normalizers of discrete power laws.

#include <cstdint>
#include <optional>

namespace netprof {

// zeta(s, a) = sum_{j>=0} (a + j)^-s for s > 1, a > 0.
// Direct summation of the first terms plus an Euler-Maclaurin tail;
// absolute error is far below 1e-12 over the ranges used here.
double hurwitz_zeta(double s, double a);

// sum_{k=k_min}^{k_max} k^-s (k_max empty = unbounded). This is the
// normalizing constant of p(k) proportional to k^-s on that support.
double power_law_normalizer(double s, std::uint32_t k_min,
                            std::optional<std::uint32_t> k_max = {});

}  // namespace netprof
