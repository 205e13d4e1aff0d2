// Closed-form gradients of the dispersion symbols. For a wave packet at frequency xi
// the propagation speed is grad phi(xi); transversality statements below are lower
// bounds on gaps between these velocities.
//
//   IsotropicFZK       d1 phi = |xi|^a + a xi_1^2 |xi|^{a-2}
//                      dj phi = a xi_1 xi_j |xi|^{a-2}          (j >= 2)
//   MultiDirectionalBO dj phi = (1+a) |xi_j|^a
//   RibaudVento2D      d1 phi = -(1+a)|xi_1|^a - xi_2^2,  d2 phi = -2 xi_1 xi_2
//
// The isotropic formula contains |xi|^{a-2}, which for a < 2 has no continuous
// extension to the origin; evaluation there is rejected. At a = 2 the symbol is a
// polynomial and the gradient is exact (and zero) at the origin. Since every symbol
// is odd, every gradient is even: grad phi(-xi) = grad phi(xi).
#ifndef FZK_GROUP_VELOCITY_HPP
#define FZK_GROUP_VELOCITY_HPP

#include <array>
#include <cmath>
#include <stdexcept>

#include "fzk/params.hpp"

namespace fzk {

inline std::array<double, 3> group_velocity(const DispersionParams& dp, const double* xi) {
    std::array<double, 3> v = {0.0, 0.0, 0.0};
    switch (dp.family) {
        case SymbolFamily::IsotropicFZK: {
            double r2 = 0.0;
            for (int i = 0; i < dp.n; ++i) r2 += xi[i] * xi[i];
            if (r2 == 0.0) {
                if (dp.a < 2.0) throw std::domain_error("group velocity singular at origin");
                return v;  // polynomial case, gradient vanishes
            }
            if (dp.a == 2.0) {
                v[0] = r2 + 2.0 * xi[0] * xi[0];
                for (int j = 1; j < dp.n; ++j) v[j] = 2.0 * xi[0] * xi[j];
            } else {
                double rm = std::pow(r2, 0.5 * dp.a - 1.0);  // |xi|^{a-2}
                v[0] = rm * r2 + dp.a * xi[0] * xi[0] * rm;
                for (int j = 1; j < dp.n; ++j) v[j] = dp.a * xi[0] * xi[j] * rm;
            }
            return v;
        }
        case SymbolFamily::MultiDirectionalBO: {
            for (int j = 0; j < dp.n; ++j) {
                double x = xi[j];
                v[j] = (1.0 + dp.a) * (dp.a == 2.0 ? x * x : std::pow(std::abs(x), dp.a));
            }
            return v;
        }
        case SymbolFamily::RibaudVento2D: {
            double x = xi[0], y = xi[1];
            double frac = dp.a == 2.0 ? x * x : std::pow(std::abs(x), dp.a);
            v[0] = -(1.0 + dp.a) * frac - y * y;
            v[1] = -2.0 * x * y;
            return v;
        }
    }
    return v;
}

// exact integer gradient of the isotropic a = 2 symbol xi_1 |xi|^2 on the lattice
inline void group_velocity_zk_exact(const std::int64_t* k, int n, std::int64_t* v) {
    std::int64_t r2 = 0;
    for (int i = 0; i < n; ++i) r2 += k[i] * k[i];
    v[0] = r2 + 2 * k[0] * k[0];
    for (int j = 1; j < n; ++j) v[j] = 2 * k[0] * k[j];
}

}  // namespace fzk

#endif
