// Resonance function Omega(xi1, xi2) = phi(xi1 + xi2) - phi(xi1) - phi(xi2), the
// phase mismatch of the quadratic interaction (xi1, xi2) -> xi1 + xi2.
//
// For the isotropic a = 2 planar symbol phi(p, q) = p(p^2 + q^2) the definition
// expands, with xi1 = (p1, p2) and xi2 = (q1, q2), to the cubic
//
//   Omega = 3 p1 q1 (p1 + q1) + p1 q2 (2 p2 + q2) + q1 p2 (p2 + 2 q2)
//
// which we evaluate in 64-bit integers on lattice input. Its gradient in the second
// argument has the closed form
//
//   dOmega/dq1 = 3(p1+q1)^2 + (p2+q2)^2 - 3 q1^2 - q2^2
//   dOmega/dq2 = 2(p1+q1)(p2+q2) - 2 q1 q2
//
// (= d1 phi(xi1+xi2) - d1 phi(xi2), d2 phi(xi1+xi2) - d2 phi(xi2)).
#ifndef FZK_RESONANCE_HPP
#define FZK_RESONANCE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fzk/params.hpp"

namespace fzk {

inline std::int64_t resonance_zk_exact(const std::int64_t* k1, const std::int64_t* k2) {
    std::int64_t p1 = k1[0], p2 = k1[1], q1 = k2[0], q2 = k2[1];
    return 3 * p1 * q1 * (p1 + q1) + p1 * q2 * (2 * p2 + q2) + q1 * p2 * (p2 + 2 * q2);
}

inline double resonance(const DispersionParams& dp, const double* xi1, const double* xi2) {
    double sum[3];
    for (int d = 0; d < dp.n; ++d) sum[d] = xi1[d] + xi2[d];
    // grouped so the evaluation is bit-exactly symmetric in the two arguments
    double val = symbol(dp, sum) - (symbol(dp, xi1) + symbol(dp, xi2));

    // on the integer lattice the planar a = 2 case must reproduce the expanded cubic
    if (dp.family == SymbolFamily::IsotropicFZK && dp.a == 2.0 && dp.n == 2) {
        bool lattice = true;
        std::int64_t k1[2], k2[2];
        for (int d = 0; d < 2; ++d) {
            k1[d] = static_cast<std::int64_t>(std::llround(xi1[d]));
            k2[d] = static_cast<std::int64_t>(std::llround(xi2[d]));
            lattice = lattice && xi1[d] == static_cast<double>(k1[d]) &&
                      xi2[d] == static_cast<double>(k2[d]) && std::abs(xi1[d]) < 1e6 &&
                      std::abs(xi2[d]) < 1e6;
        }
        if (lattice) {
            std::int64_t exact = resonance_zk_exact(k1, k2);
            if (val != static_cast<double>(exact))
                throw std::logic_error("resonance expansion mismatch on lattice input");
            return static_cast<double>(exact);
        }
    }
    return val;
}

inline std::array<std::int64_t, 2> resonance_partials_exact(const std::int64_t* k1,
                                                            const std::int64_t* k2) {
    std::int64_t s1 = k1[0] + k2[0], s2 = k1[1] + k2[1];
    return {3 * s1 * s1 + s2 * s2 - 3 * k2[0] * k2[0] - k2[1] * k2[1],
            2 * s1 * s2 - 2 * k2[0] * k2[1]};
}

// gradient of Omega in its second argument, planar isotropic a = 2 only
inline std::array<double, 2> resonance_partials(const DispersionParams& dp, const double* xi1,
                                                const double* xi2) {
    if (dp.family != SymbolFamily::IsotropicFZK || dp.a != 2.0 || dp.n != 2)
        throw std::invalid_argument("resonance partials require IsotropicFZK with a = 2, n = 2");
    double s1 = xi1[0] + xi2[0], s2 = xi1[1] + xi2[1];
    return {3.0 * s1 * s1 + s2 * s2 - 3.0 * xi2[0] * xi2[0] - xi2[1] * xi2[1],
            2.0 * s1 * s2 - 2.0 * xi2[0] * xi2[1]};
}

}  // namespace fzk

#endif
