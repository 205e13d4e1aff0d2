// Dispersive kernel of the free group on an annulus: for a radial profile psi
// supported in 1/2 <= |xi| <= 2,
//
//   I(x, t) = int_{R^3} psi(|xi|) e^{i (t xi_1 |xi|^a + x.xi)} dxi.
//
// The decay claim under test is |I(x, t)| <= C / |t| uniformly in x.
//
// Writing xi = r w and integrating the sphere first (the surface measure of S^2 has
// Fourier transform 4 pi sin|z| / |z|) collapses the integral to one dimension:
//
//   I(x, t) = 4 pi int psi(r) r^2 sinc(r |y(r)|) dr,   y(r) = (t r^a + x_1, x_2, x_3),
//
// with sinc(z) = sin(z)/z. This is exact, manifestly real, and turns a 3-d
// oscillatory quadrature (hopeless at t = 64) into a cheap radial one. The radial
// integrand oscillates at rate at most |t|(1+a)2^a + |x|_inf, and the panel count
// scales with that bound; a brute tensorized 3-d rule with the same panel law is kept
// as an independent oracle for small |t|, where it is affordable.
#ifndef FZK_KERNEL_DECAY_HPP
#define FZK_KERNEL_DECAY_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fzk/params.hpp"
#include "fzk/rng.hpp"

namespace fzk {

using RadialProfile = std::function<double(double)>;

// smooth bump on (1/2, 2): e^{-1/(1-u^2)} with u = (4r-5)/3 mapping the support
// interval onto (-1, 1)
inline double standard_bump(double r) {
    double u = (4.0 * r - 5.0) / 3.0;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1]
inline constexpr double gl_nodes[8] = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975362};
inline constexpr double gl_weights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <class Fn>
double gl_composite(double lo, double hi, int panels, Fn&& fn) {
    double acc = 0.0;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * h, mid = a + 0.5 * h, half = 0.5 * h;
        double local = 0.0;
        for (int i = 0; i < 8; ++i) local += gl_weights[i] * fn(mid + half * gl_nodes[i]);
        acc += local * half;
    }
    return acc;
}

inline double sinc(double z) {
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

// The phase-rate term sizes the panels against oscillation; the floor sizes them
// against the bump's boundary layers, which dominate when the phase is slow.
inline int kernel_panels(double t, double a, double xmax, int panel_scale, int floor) {
    double rate = (std::abs(t) * (1.0 + a) * std::pow(2.0, a) + xmax) / two_pi;
    int panels = static_cast<int>(std::ceil(8.0 * (1.0 + rate)));
    return std::max(panels, floor) * std::max(1, panel_scale);
}

}  // namespace detail

inline std::complex<double> kernel_integral(const std::array<double, 3>& x, double t,
                                            const DispersionParams& dp, const RadialProfile& psi,
                                            int panel_scale = 1) {
    if (dp.n < 3) throw std::invalid_argument("kernel estimate stated for n >= 3");
    double xmax = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
    int panels = detail::kernel_panels(t, dp.a, xmax, panel_scale, 56);
    double xperp = std::sqrt(x[1] * x[1] + x[2] * x[2]);
    double val = detail::gl_composite(0.5, 2.0, panels, [&](double r) {
        double w = psi(r);
        if (w == 0.0) return 0.0;
        double y1 = t * std::pow(r, dp.a) + x[0];
        double ylen = std::sqrt(y1 * y1 + xperp * xperp);
        return w * r * r * detail::sinc(r * ylen);
    });
    return {2.0 * two_pi * val, 0.0};
}

// Brute tensorized quadrature over the bounding cube, same panel law per axis. Cost
// grows like the cube of the panel count, so this is only usable for small |t|; it
// exists to validate the spherical reduction against an independent evaluation.
inline std::complex<double> kernel_integral_tensor(const std::array<double, 3>& x, double t,
                                                   const DispersionParams& dp,
                                                   const RadialProfile& psi,
                                                   int panel_scale = 1) {
    if (dp.n < 3) throw std::invalid_argument("kernel estimate stated for n >= 3");
    double xmax = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
    int panels = detail::kernel_panels(t, dp.a, xmax, panel_scale, 16);

    // 1-d node/weight table for [-2, 2]
    std::vector<double> nodes, weights;
    double h = 4.0 / panels;
    for (int p = 0; p < panels; ++p) {
        double a = -2.0 + p * h, mid = a + 0.5 * h, half = 0.5 * h;
        for (int i = 0; i < 8; ++i) {
            nodes.push_back(mid + half * detail::gl_nodes[i]);
            weights.push_back(half * detail::gl_weights[i]);
        }
    }
    std::complex<double> acc = 0.0;
    const std::size_t m = nodes.size();
    for (std::size_t i = 0; i < m; ++i) {
        double xi1 = nodes[i];
        for (std::size_t j = 0; j < m; ++j) {
            double xi2 = nodes[j];
            std::complex<double> row = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                double xi3 = nodes[k];
                double r = std::sqrt(xi1 * xi1 + xi2 * xi2 + xi3 * xi3);
                double w = psi(r);
                if (w == 0.0) continue;
                double phase = t * xi1 * std::pow(r, dp.a) + x[0] * xi1 + x[1] * xi2 + x[2] * xi3;
                row += weights[k] * w * std::polar(1.0, phase);
            }
            acc += weights[i] * weights[j] * row;
        }
    }
    return acc;
}

struct KernelScanRow {
    double t = 0.0;
    double sup_abs = 0.0;   // sup over sampled x of |I(x, t)|
    double t_times_sup = 0.0;
};

struct KernelScanResult {
    std::vector<KernelScanRow> rows;
    bool pass = false;
    double c_emp = 0.0;  // max over t of |t| sup_x |I|
};

// Sample x where stationary phase puts the mass (|x_1/t| in [1/4, 4] since the group
// speed on the annulus lies in that range up to the factor (1+a)2^a), plus transverse
// offsets and random far points where the integral should be negligible.
inline std::vector<std::array<double, 3>> default_x_samples(double t, Rng& rng) {
    std::vector<std::array<double, 3>> xs;
    xs.push_back({0.0, 0.0, 0.0});
    const double speeds[9] = {0.25, 0.35, 0.5, 0.7, 1.0, 1.4, 2.0, 2.8, 4.0};
    for (double s : speeds)
        for (double sign : {-1.0, 1.0}) {
            double x1 = sign * s * std::abs(t);
            xs.push_back({x1, 0.0, 0.0});
            xs.push_back({x1, 0.3 * std::abs(t), 0.0});
            xs.push_back({x1, rng.uniform(-2.0, 2.0) * std::abs(t),
                          rng.uniform(-2.0, 2.0) * std::abs(t)});
        }
    for (int far = 0; far < 6; ++far) {
        double rad = rng.uniform(8.0, 16.0) * std::abs(t);
        double c = rng.uniform(-1.0, 1.0), ph = rng.uniform(0.0, two_pi);
        double sphi = std::sqrt(std::max(0.0, 1.0 - c * c));
        xs.push_back({rad * c, rad * sphi * std::cos(ph), rad * sphi * std::sin(ph)});
    }
    return xs;
}

inline KernelScanResult kernel_decay_scan(const DispersionParams& dp,
                                          const std::vector<double>& t_list,
                                          const RadialProfile& psi, std::uint64_t seed = 99) {
    if (dp.n < 3) throw std::invalid_argument("kernel estimate stated for n >= 3");
    KernelScanResult res;
    for (std::size_t it = 0; it < t_list.size(); ++it) {
        double t = t_list[it];
        Rng rng(mix_seed(seed, it));
        double sup = 0.0;
        for (const auto& x : default_x_samples(t, rng))
            sup = std::max(sup, std::abs(kernel_integral(x, t, dp, psi)));
        res.rows.push_back({t, sup, std::abs(t) * sup});
    }
    res.pass = true;
    if (!res.rows.empty()) {
        const KernelScanRow* base = &res.rows.front();
        for (const auto& row : res.rows)
            if (std::abs(row.t) < std::abs(base->t)) base = &row;
        double ref = base->t_times_sup;
        for (const auto& row : res.rows) {
            res.c_emp = std::max(res.c_emp, row.t_times_sup);
            if (row.t_times_sup > 4.0 * ref) res.pass = false;
        }
    }
    return res;
}

}  // namespace fzk

#endif
