// Dispersion parameters and the symbol families phi(xi) driving e^{-it.phi}.
#ifndef FZK_PARAMS_HPP
#define FZK_PARAMS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fzk {

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline bool is_dyadic(long N) { return N >= 1 && (N & (N - 1)) == 0; }

enum class SymbolFamily { IsotropicFZK, MultiDirectionalBO, RibaudVento2D };

inline const char* family_name(SymbolFamily f) {
    switch (f) {
        case SymbolFamily::IsotropicFZK: return "IsotropicFZK";
        case SymbolFamily::MultiDirectionalBO: return "MultiDirectionalBO";
        case SymbolFamily::RibaudVento2D: return "RibaudVento2D";
    }
    return "?";
}

inline SymbolFamily family_from_name(const std::string& s) {
    if (s == "IsotropicFZK" || s == "isotropic_fzk") return SymbolFamily::IsotropicFZK;
    if (s == "MultiDirectionalBO" || s == "multidirectional_bo") return SymbolFamily::MultiDirectionalBO;
    if (s == "RibaudVento2D" || s == "ribaud_vento_2d") return SymbolFamily::RibaudVento2D;
    throw std::invalid_argument("unknown symbol family: " + s);
}

// Fractional exponent a in [1,2], dimension n, and box side L. Frequencies live on
// (2pi/L).Z^n, so the default L = 2pi puts them on the integer lattice.
struct DispersionParams {
    SymbolFamily family = SymbolFamily::IsotropicFZK;
    double a = 2.0;
    int n = 2;
    double period = two_pi;

    void validate() const {
        if (!(a >= 1.0 && a <= 2.0)) throw std::invalid_argument("exponent a must lie in [1,2]");
        if (n < 1 || n > 3) throw std::invalid_argument("dimension n must be 1, 2 or 3");
        if (family == SymbolFamily::RibaudVento2D && n != 2)
            throw std::invalid_argument("RibaudVento2D is a two-dimensional model");
        if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
    }
};

// phi(xi) for each family. All three symbols are odd, phi(-xi) = -phi(xi), and vanish at
// the origin (by continuity for a < 2).
//
//   IsotropicFZK       phi = xi_1 |xi|^a
//   MultiDirectionalBO phi = sum_i xi_i |xi_i|^a
//   RibaudVento2D      phi = -xi_1 |xi_1|^a - xi_1 xi_2^2
//
// The RibaudVento2D sign follows from writing the model equation
// d_t u - d_{x1} D_{x1}^a u + d_{x1} d_{x2}^2 u = u d_{x1} u in the propagator
// convention u^(t) = e^{-it.phi} u0^: the linear operator's Fourier symbol is
// i.(-xi_1|xi_1|^a - xi_1 xi_2^2). At a = 2 this variant is the time reversal of the
// isotropic symbol.
inline double symbol(const DispersionParams& dp, const double* xi) {
    switch (dp.family) {
        case SymbolFamily::IsotropicFZK: {
            double r2 = 0.0;
            for (int i = 0; i < dp.n; ++i) r2 += xi[i] * xi[i];
            if (r2 == 0.0) return 0.0;
            if (dp.a == 2.0) return xi[0] * r2;  // exact on integer lattices
            if (dp.a == 1.0) return xi[0] * std::sqrt(r2);
            return xi[0] * std::pow(r2, 0.5 * dp.a);
        }
        case SymbolFamily::MultiDirectionalBO: {
            double s = 0.0;
            for (int i = 0; i < dp.n; ++i) {
                double x = xi[i];
                if (x == 0.0) continue;
                if (dp.a == 2.0) s += x * x * x;  // x |x|^2 = x^3
                else s += x * std::pow(std::abs(x), dp.a);
            }
            return s;
        }
        case SymbolFamily::RibaudVento2D: {
            double x = xi[0], y = xi[1];
            double frac = (x == 0.0) ? 0.0
                        : (dp.a == 2.0) ? x * x * x
                                        : x * std::pow(std::abs(x), dp.a);
            return -frac - x * y * y;
        }
    }
    return 0.0;
}

inline double symbol(const DispersionParams& dp, const std::array<double, 3>& xi) {
    return symbol(dp, xi.data());
}

// Exact integer evaluation of the isotropic a = 2 symbol xi_1|xi|^2 on Z^n.
inline std::int64_t symbol_zk_exact(const std::int64_t* k, int n) {
    std::int64_t r2 = 0;
    for (int i = 0; i < n; ++i) r2 += k[i] * k[i];
    return k[0] * r2;
}

}  // namespace fzk

#endif
