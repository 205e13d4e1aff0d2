// Discrete frequency/physical lattices for one periodic box.
#ifndef FZK_GRID_HPP
#define FZK_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "fzk/params.hpp"

namespace fzk {

// M modes per dimension, M even. Coefficients are stored in DFT index order
// (index i holds signed frequency k = i for i < M/2, k = i - M otherwise); the
// serialization layer reorders to plain signed order. Physical samples sit at
// x_j = j L / M.
struct SpectralGrid {
    int n = 2;
    int modes = 0;    // M
    double period = two_pi;

    SpectralGrid() = default;
    SpectralGrid(int n_, int modes_, double period_ = two_pi)
        : n(n_), modes(modes_), period(period_) {
        if (n < 1 || n > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
        if (modes < 2 || modes % 2 != 0) throw std::invalid_argument("modes_per_dim must be even and >= 2");
        if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
    }

    bool operator==(const SpectralGrid& o) const {
        return n == o.n && modes == o.modes && period == o.period;
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(modes);
        return s;
    }

    // frequency = freq_scale() * integer index; equals 1 for the default box
    double freq_scale() const { return two_pi / period; }
    double cell_volume() const {
        double h = period / modes, v = 1.0;
        for (int i = 0; i < n; ++i) v *= h;
        return v;
    }
    double box_volume() const {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= period;
        return v;
    }

    int signed_index(int storage_index) const {
        return storage_index < modes / 2 ? storage_index : storage_index - modes;
    }
    int storage_index(int signed_k) const {
        return signed_k >= 0 ? signed_k : signed_k + modes;
    }

    // flat offset of an integer frequency vector (row-major over dimensions)
    std::size_t flat(const int* k) const {
        std::size_t idx = 0;
        for (int d = 0; d < n; ++d) idx = idx * modes + static_cast<std::size_t>(storage_index(k[d]));
        return idx;
    }

    // largest |xi| on the lattice (the (-M/2,...,-M/2) corner)
    double max_abs_freq() const {
        return freq_scale() * (modes / 2) * std::sqrt(static_cast<double>(n));
    }
};

// Visit every stored mode: fn(flat_index, k) with k the signed integer frequency
// vector (length grid.n). Iteration order equals storage order.
template <typename Fn>
inline void for_each_mode(const SpectralGrid& g, Fn&& fn) {
    const int M = g.modes;
    int k[3] = {0, 0, 0};
    std::size_t idx = 0;
    if (g.n == 1) {
        for (int i0 = 0; i0 < M; ++i0, ++idx) {
            k[0] = g.signed_index(i0);
            fn(idx, k);
        }
    } else if (g.n == 2) {
        for (int i0 = 0; i0 < M; ++i0) {
            k[0] = g.signed_index(i0);
            for (int i1 = 0; i1 < M; ++i1, ++idx) {
                k[1] = g.signed_index(i1);
                fn(idx, k);
            }
        }
    } else {
        for (int i0 = 0; i0 < M; ++i0) {
            k[0] = g.signed_index(i0);
            for (int i1 = 0; i1 < M; ++i1) {
                k[1] = g.signed_index(i1);
                for (int i2 = 0; i2 < M; ++i2, ++idx) {
                    k[2] = g.signed_index(i2);
                    fn(idx, k);
                }
            }
        }
    }
}

}  // namespace fzk

#endif
