// Norms live in two conventions and we keep them strictly apart:
//
//  * spectral sums: l2_norm, sobolev_norm, anisotropic_norm are plain ell^2 sums over
//    Fourier coefficients, (sum w(xi) |fhat(xi)|^2)^{1/2}, no volume factor. A single
//    mode of amplitude 1 has l2_norm 1 and sobolev_norm (1+|xi|^2)^{s/2}.
//
//  * physical lattice integrals: physical_lp_norm approximates integrals over the box
//    with the rectangle rule, (sum |u(x)|^p cellvol)^{1/p}. On the torus this rule is
//    exact for trigonometric polynomials of the degrees we use. The two conventions
//    differ by box_volume^{1/2} at p = 2 (Parseval).
//
// Estimate ratios quote physical norms; substrate invariants quote spectral ones.
#ifndef FZK_NORMS_HPP
#define FZK_NORMS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fzk/field.hpp"

namespace fzk {

inline double l2_norm(const Field& f) {
    double s = 0.0;
    for (const cplx& c : f.coeffs) s += std::norm(c);
    return std::sqrt(s);
}

// H^s with weight (1 + |xi|^2)^s
inline double sobolev_norm(const Field& f, double s) {
    const double scale2 = f.grid.freq_scale() * f.grid.freq_scale();
    double acc = 0.0;
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        double r2 = 0.0;
        for (int d = 0; d < f.grid.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
        acc += std::pow(1.0 + scale2 * r2, s) * std::norm(f.coeffs[idx]);
    });
    return std::sqrt(acc);
}

// weight (1 + xi_1^2)^s, i.e. regularity counted in the x_1 direction only
inline double anisotropic_norm(const Field& f, double s) {
    if (f.grid.n != 2) throw std::invalid_argument("anisotropic norm defined for n = 2");
    const double scale = f.grid.freq_scale();
    double acc = 0.0;
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        double x1 = scale * k[0];
        acc += std::pow(1.0 + x1 * x1, s) * std::norm(f.coeffs[idx]);
    });
    return std::sqrt(acc);
}

// multiply by (i xi_1): d/dx_1 in frequency space
inline Field apply_x1_derivative(const Field& f) {
    Field out(f.grid, false);
    const double scale = f.grid.freq_scale();
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        out.coeffs[idx] = f.coeffs[idx] * cplx(0.0, scale * k[0]);
    });
    out.real_flag = f.real_flag;  // i xi_1 is odd, so Hermitian symmetry survives
    return out;
}

// rectangle-rule L^p norm of physical samples; p = infinity passed as p <= 0
inline double physical_lp_norm(const std::vector<cplx>& phys, const SpectralGrid& g, double p) {
    if (phys.size() != g.size()) throw std::invalid_argument("sample count does not match grid");
    if (p <= 0.0) {
        double m = 0.0;
        for (const cplx& v : phys) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (const cplx& v : phys) acc += std::pow(std::abs(v), p);
    return std::pow(acc * g.cell_volume(), 1.0 / p);
}

inline double physical_l2_norm(const std::vector<cplx>& phys, const SpectralGrid& g) {
    double acc = 0.0;
    for (const cplx& v : phys) acc += std::norm(v);
    return std::sqrt(acc * g.cell_volume());
}

}  // namespace fzk

#endif
