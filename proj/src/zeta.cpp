#include "netprof/zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace netprof {

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0)) throw std::invalid_argument("hurwitz_zeta requires s > 1");
    if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta requires a > 0");

    constexpr int kDirectTerms = 18;
    double sum = 0.0;
    for (int j = 0; j < kDirectTerms; ++j) sum += std::pow(a + j, -s);

    const double m = a + kDirectTerms;
    // Euler-Maclaurin tail with Bernoulli corrections B2, B4, B6.
    double tail = std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s);
    double c = s * std::pow(m, -s - 1.0);
    tail += c / 12.0;
    c *= (s + 1.0) * (s + 2.0) / (m * m);
    tail -= c / 720.0;
    c *= (s + 3.0) * (s + 4.0) / (m * m);
    tail += c / 30240.0;
    return sum + tail;
}

double power_law_normalizer(double s, std::uint32_t k_min, std::optional<std::uint32_t> k_max) {
    if (k_min == 0) throw std::invalid_argument("power law support starts at k >= 1");
    if (k_max && *k_max < k_min) throw std::invalid_argument("k_max below k_min");
    if (!k_max) return hurwitz_zeta(s, static_cast<double>(k_min));
    // Short truncated supports are cheaper and more accurate summed directly.
    if (*k_max - k_min < 64) {
        double z = 0.0;
        for (std::uint32_t k = k_min; k <= *k_max; ++k) z += std::pow(static_cast<double>(k), -s);
        return z;
    }
    return hurwitz_zeta(s, static_cast<double>(k_min)) -
           hurwitz_zeta(s, static_cast<double>(*k_max) + 1.0);
}

}  // namespace netprof
