// Conserved functionals of the flow: mass M(u) = int u^2 dx and, for the isotropic
// symbol, the Hamiltonian energy E(u) = int |D^{a/2} u|^2 - (1/3) u^3 dx. Mass is a
// pure Parseval sum; the energy's quadratic part applies the fractional multiplier
// |xi|^{a/2} in frequency (zero at the mean mode, which carries no homogeneous-Sobolev
// energy) while the cubic part is a physical-space lattice integral.
#ifndef FZK_OBSERVABLES_HPP
#define FZK_OBSERVABLES_HPP

#include <cmath>
#include <stdexcept>

#include "fzk/norms.hpp"
#include "fzk/params.hpp"
#include "fzk/transform.hpp"

namespace fzk {

inline double mass(const Field& f) {
    if (!f.real_flag) throw std::invalid_argument("mass defined for real fields");
    double s = 0.0;
    for (const cplx& c : f.coeffs) s += std::norm(c);
    return s * f.grid.box_volume();
}

struct EnergyTerms {
    double quadratic = 0.0;  // int |D^{a/2} u|^2
    double cubic = 0.0;      // -(1/3) int u^3
    double total = 0.0;
};

inline EnergyTerms energy_terms(const Field& f, const DispersionParams& dp) {
    if (!f.real_flag) throw std::invalid_argument("energy defined for real fields");
    if (dp.family != SymbolFamily::IsotropicFZK)
        throw std::invalid_argument("energy defined for the isotropic family");
    EnergyTerms e;
    double scale = f.grid.freq_scale();
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        double r2 = 0.0;
        for (int d = 0; d < f.grid.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
        if (r2 > 0.0)
            e.quadratic += std::pow(scale * scale * r2, dp.a / 2.0) * std::norm(f.coeffs[idx]);
    });
    e.quadratic *= f.grid.box_volume();

    std::vector<cplx> phys = to_physical(f);
    double cub = 0.0;
    for (const cplx& v : phys) {
        double r = v.real();
        cub += r * r * r;
    }
    e.cubic = -cub * f.grid.cell_volume() / 3.0;
    e.total = e.quadratic + e.cubic;
    return e;
}

inline double energy(const Field& f, const DispersionParams& dp) {
    return energy_terms(f, dp).total;
}

}  // namespace fzk

#endif
