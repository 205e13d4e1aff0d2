// Free evolution: the solution of u_t + d/dx_1 (-Delta)^{a/2} u = 0 is, mode by mode,
// uhat(t, xi) = exp(-i t phi(xi)) uhat(0, xi) with the family's dispersion symbol phi.
// The multiplier is unimodular (unitary on ell^2), and since every phi here is odd in
// xi it maps real fields to real fields.
#ifndef FZK_PROPAGATOR_HPP
#define FZK_PROPAGATOR_HPP

#include <cmath>
#include <complex>

#include "fzk/field.hpp"
#include "fzk/params.hpp"

namespace fzk {

inline Field propagate(const Field& f, const DispersionParams& dp, double t) {
    Field out(f.grid, f.real_flag);
    const double scale = f.grid.freq_scale();
    double xi[3];
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        for (int d = 0; d < f.grid.n; ++d) xi[d] = scale * k[d];
        out.coeffs[idx] = f.coeffs[idx] * std::polar(1.0, -t * symbol(dp, xi));
    });
    return out;
}

// the phase table alone, for solvers that reuse it across many steps
inline std::vector<double> symbol_table(const SpectralGrid& g, const DispersionParams& dp) {
    std::vector<double> phi(g.size());
    const double scale = g.freq_scale();
    double xi[3];
    for_each_mode(g, [&](std::size_t idx, const int* k) {
        for (int d = 0; d < g.n; ++d) xi[d] = scale * k[d];
        phi[idx] = symbol(dp, xi);
    });
    return phi;
}

}  // namespace fzk

#endif
