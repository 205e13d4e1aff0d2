// Field: one spatial snapshot as a complex coefficient array on a SpectralGrid.
#ifndef FZK_FIELD_HPP
#define FZK_FIELD_HPP

#include <complex>
#include <vector>

#include "fzk/grid.hpp"

namespace fzk {

using cplx = std::complex<double>;

// Coefficients are spectral; physical samples are produced on demand by the transform
// layer. real_flag asserts Hermitian symmetry c(-k) = conj(c(k)) with the unpaired
// Nyquist (-M/2) planes zeroed.
struct Field {
    SpectralGrid grid;
    std::vector<cplx> coeffs;
    bool real_flag = false;

    Field() = default;
    explicit Field(const SpectralGrid& g, bool real = false)
        : grid(g), coeffs(g.size()), real_flag(real) {}

    cplx& at(const int* k) { return coeffs[grid.flat(k)]; }
    const cplx& at(const int* k) const { return coeffs[grid.flat(k)]; }
    cplx& at(int k0, int k1) {
        int k[2] = {k0, k1};
        return coeffs[grid.flat(k)];
    }
    cplx& at(int k0, int k1, int k2) {
        int k[3] = {k0, k1, k2};
        return coeffs[grid.flat(k)];
    }
};

inline bool on_nyquist_plane(const SpectralGrid& g, const int* k) {
    for (int d = 0; d < g.n; ++d)
        if (k[d] == -g.modes / 2) return true;
    return false;
}

// Zero the -M/2 planes (they have no +M/2 partner on the storage lattice).
inline void zero_nyquist(Field& f) {
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        if (on_nyquist_plane(f.grid, k)) f.coeffs[idx] = 0.0;
    });
}

// Enforce c(-k) = conj(c(k)) by averaging the pair, zero the Nyquist planes, and mark
// the field real.
inline void hermitian_symmetrize(Field& f) {
    const SpectralGrid& g = f.grid;
    zero_nyquist(f);
    for_each_mode(g, [&](std::size_t idx, const int* k) {
        int mk[3];
        for (int d = 0; d < g.n; ++d) mk[d] = -k[d];
        if (on_nyquist_plane(g, k)) return;
        std::size_t midx = g.flat(mk);
        if (midx < idx) return;   // each pair handled once, from its smaller offset
        cplx c = f.coeffs[idx], d = f.coeffs[midx];
        cplx avg = 0.5 * (c + std::conj(d));
        f.coeffs[idx] = avg;
        f.coeffs[midx] = std::conj(avg);
        if (midx == idx) f.coeffs[idx] = cplx(avg.real(), 0.0);
    });
    f.real_flag = true;
}

// Max |c(-k) - conj(c(k))| relative to the largest coefficient magnitude.
inline double hermitian_defect(const Field& f) {
    const SpectralGrid& g = f.grid;
    double worst = 0.0, scale = 0.0;
    for_each_mode(g, [&](std::size_t idx, const int* k) {
        scale = std::max(scale, std::abs(f.coeffs[idx]));
        if (on_nyquist_plane(g, k)) {
            worst = std::max(worst, std::abs(f.coeffs[idx]));
            return;
        }
        int mk[3];
        for (int d = 0; d < g.n; ++d) mk[d] = -k[d];
        worst = std::max(worst, std::abs(f.coeffs[g.flat(mk)] - std::conj(f.coeffs[idx])));
    });
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace fzk

#endif
