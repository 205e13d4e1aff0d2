// Dyadic Littlewood-Paley projectors, sharp and smooth.
//
// Shell conventions on |xi| (documented here once, used everywhere):
//
//   Sharp   N = 1: |xi| <= 1          N >= 2: N/2 < |xi| <= N
//   Smooth  N = 1: theta(|xi|)        N >= 2: theta(|xi|/N) - theta(2|xi|/N)
//
// theta is the C^infinity roll-off below (1 on [0,1], 0 on [2,inf)), so the smooth
// shell N is supported in the open annulus (N/2, 2N) and equals 1 on (N/2.. at |xi|=N),
// while sharp shells tile the lattice exactly: [0,1] u (1,2] u (2,4] u ... Every sharp
// shell sits inside the support envelope [N/2, 2N) of its smooth counterpart.
//
// Smooth profile closed form: with B(x) = exp(-1/x) for x > 0 (else 0) and the
// transition h(x) = B(x) / (B(x) + B(1-x)) (0 for x <= 0, 1 for x >= 1, C^infinity),
//
//   theta(r) = 1 - h(r - 1)
//
// Summing shells telescopes: theta(r) + sum_{N=2..Ntop} [theta(r/N) - theta(2r/N)]
// = theta(r/Ntop), which is identically 1 on the lattice once Ntop >= max |xi|; that
// gives the exact partition of unity.
#ifndef FZK_PROJECTOR_HPP
#define FZK_PROJECTOR_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fzk/field.hpp"

namespace fzk {

enum class Cutoff { Sharp, Smooth };

struct DyadicShell {
    long N = 1;
    Cutoff cutoff = Cutoff::Sharp;
};

inline double smooth_transition(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double b0 = std::exp(-1.0 / x);
    double b1 = std::exp(-1.0 / (1.0 - x));
    return b0 / (b0 + b1);
}

// 1 on [0,1], 0 on [2,inf), smooth in between
inline double smooth_theta(double r) { return 1.0 - smooth_transition(r - 1.0); }

// weight of shell N at radius r = |xi|
inline double shell_weight(const DyadicShell& sh, double r) {
    if (sh.cutoff == Cutoff::Sharp) {
        if (sh.N == 1) return r <= 1.0 ? 1.0 : 0.0;
        double half = 0.5 * static_cast<double>(sh.N);
        return (r > half && r <= static_cast<double>(sh.N)) ? 1.0 : 0.0;
    }
    if (sh.N == 1) return smooth_theta(r);
    double N = static_cast<double>(sh.N);
    return smooth_theta(r / N) - smooth_theta(2.0 * r / N);
}

// Largest shell label the grid supports: smallest dyadic >= max lattice |xi| (so the
// shell family 1..max_shell covers every mode).
inline long max_shell(const SpectralGrid& g) {
    double top = g.max_abs_freq();
    long N = 1;
    while (static_cast<double>(N) < top) N *= 2;
    return N;
}

inline std::vector<long> all_shells(const SpectralGrid& g) {
    std::vector<long> out;
    for (long N = 1; N <= max_shell(g); N *= 2) out.push_back(N);
    return out;
}

inline Field lp_project(const Field& f, const DyadicShell& sh) {
    if (!is_dyadic(sh.N)) throw std::invalid_argument("shell label must be a dyadic integer >= 1");
    if (sh.N > max_shell(f.grid)) throw std::invalid_argument("shell beyond grid");
    Field out(f.grid, f.real_flag);
    const double scale2 = f.grid.freq_scale() * f.grid.freq_scale();
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        double r2 = 0.0;
        for (int d = 0; d < f.grid.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
        double w = shell_weight(sh, std::sqrt(scale2 * r2));
        out.coeffs[idx] = w == 0.0 ? cplx(0.0, 0.0) : f.coeffs[idx] * w;
    });
    return out;
}

// P_{<=N}: keep modes with |xi| <= N (the union of sharp shells 1..N).
inline Field lowpass(const Field& f, long Ncut) {
    if (Ncut < 1) throw std::invalid_argument("lowpass cutoff must be >= 1");
    Field out(f.grid, f.real_flag);
    const double scale2 = f.grid.freq_scale() * f.grid.freq_scale();
    const double cut2 = static_cast<double>(Ncut) * static_cast<double>(Ncut);
    for_each_mode(f.grid, [&](std::size_t idx, const int* k) {
        double r2 = 0.0;
        for (int d = 0; d < f.grid.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
        if (scale2 * r2 <= cut2) out.coeffs[idx] = f.coeffs[idx];
    });
    return out;
}

}  // namespace fzk

#endif
