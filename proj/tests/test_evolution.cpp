#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "fzk/bona_smith.hpp"
#include "fzk/rng.hpp"
#include "fzk/solver.hpp"

using namespace fzk;

namespace {

DispersionParams iso(double a, int n) {
    DispersionParams dp;
    dp.family = SymbolFamily::IsotropicFZK;
    dp.a = a;
    dp.n = n;
    return dp;
}

// real cosine of a single integer frequency vector
Field cosine(const SpectralGrid& g, std::initializer_list<int> mode, double amp = 1.0) {
    Field f(g, true);
    std::vector<int> k(mode);
    std::vector<int> mk(k);
    for (auto& c : mk) c = -c;
    f.at(k.data()) = amp * 0.5;
    f.at(mk.data()) = amp * 0.5;
    return f;
}

// random real field supported on 0 < |k| <= B, rescaled to a target H^3 norm
Field band_datum(const SpectralGrid& g, double B, std::uint64_t seed, double h3_target) {
    Field f(g, true);
    Rng rng(seed);
    for_each_mode(g, [&](std::size_t idx, const int* k) {
        double r2 = 0.0;
        for (int d = 0; d < g.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
        if (r2 > 0.0 && r2 <= B * B) f.coeffs[idx] = {rng.gaussian(), rng.gaussian()};
    });
    hermitian_symmetrize(f);
    double h3 = sobolev_norm(f, 3.0);
    for (auto& c : f.coeffs) c *= h3_target / h3;
    return f;
}

// real field with an algebraic spectral tail |c(k)| ~ (1+|k|)^{-p}, H^s-normalized
Field tail_datum(const SpectralGrid& g, double p, std::uint64_t seed, double s,
                 double hs_target) {
    Field f(g, true);
    Rng rng(seed);
    for_each_mode(g, [&](std::size_t idx, const int* k) {
        double r2 = 0.0;
        for (int d = 0; d < g.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
        if (r2 == 0.0) return;
        double w = std::pow(1.0 + std::sqrt(r2), -p);
        f.coeffs[idx] = {w * rng.gaussian(), w * rng.gaussian()};
    });
    hermitian_symmetrize(f);
    double hs = sobolev_norm(f, s);
    for (auto& c : f.coeffs) c *= hs_target / hs;
    return f;
}

double l2_diff(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += std::norm(a.coeffs[i] - b.coeffs[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("mass of a planar cosine is half the box volume") {
    SpectralGrid g{2, 32, two_pi};
    Field zero(g, true);
    REQUIRE(mass(zero) == 0.0);

    // int cos^2(x1) over [0, 2pi]^2 = 2 pi^2
    Field c = cosine(g, {1, 0});
    REQUIRE(mass(c) == Catch::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));

    Field cplxf(g, false);
    REQUIRE_THROWS_WITH(mass(cplxf), Catch::Matchers::ContainsSubstring("real fields"));
}

TEST_CASE("mass is invariant under the free flow") {
    SpectralGrid g{2, 32, two_pi};
    Field f = band_datum(g, 6.0, 17, 1.0);
    double m0 = mass(f);
    for (double t : {0.3, 2.7, -14.0}) {
        Field ft = propagate(f, iso(1.5, 2), t);
        REQUIRE(mass(ft) == Catch::Approx(m0).epsilon(1e-13));
    }
}

TEST_CASE("energy of a single cosine: fractional multiplier and vanishing cubic") {
    SpectralGrid g{2, 32, two_pi};
    Field zero(g, true);
    REQUIRE(energy(zero, iso(2.0, 2)) == 0.0);

    // quadratic term of cos(2 x1) is |xi|^a m(u) = 4 * 2 pi^2 at a = 2; the cubic
    // power of one Fourier mode has zero mean
    Field c = cosine(g, {2, 0});
    auto e = energy_terms(c, iso(2.0, 2));
    REQUIRE(e.quadratic == Catch::Approx(8.0 * M_PI * M_PI).epsilon(1e-13));
    REQUIRE(std::abs(e.cubic) < 1e-13);
    REQUIRE(e.total == Catch::Approx(e.quadratic).epsilon(1e-12));

    DispersionParams bo = iso(2.0, 2);
    bo.family = SymbolFamily::MultiDirectionalBO;
    REQUIRE_THROWS_WITH(energy(c, bo), Catch::Matchers::ContainsSubstring("isotropic"));
}

TEST_CASE("cubic term sign distinguishes u from -u") {
    // u = cos(x1) + cos(x2) + cos(x1 + x2): the only zero-sum mode triples are the 12
    // signed orderings of {e1, e2, -(e1+e2)}, so int u^3 = 12 (1/2)^3 (2pi)^2 = 6 pi^2
    SpectralGrid g{2, 32, two_pi};
    Field u(g, true);
    int m1[2] = {1, 0}, m2[2] = {0, 1}, m3[2] = {1, 1};
    for (auto* m : {m1, m2, m3}) {
        int neg[2] = {-m[0], -m[1]};
        u.at(m) = 0.5;
        u.at(neg) = 0.5;
    }
    auto e = energy_terms(u, iso(2.0, 2));
    REQUIRE(e.cubic == Catch::Approx(-2.0 * M_PI * M_PI).epsilon(1e-12));
    // quadratic: (1 + 1 + 2^{a/2})/2 * box at a = 2
    REQUIRE(e.quadratic == Catch::Approx(8.0 * M_PI * M_PI).epsilon(1e-12));

    Field neg_u = u;
    for (auto& c : neg_u.coeffs) c = -c;
    double gap = energy(neg_u, iso(2.0, 2)) - energy(u, iso(2.0, 2));
    REQUIRE(gap == Catch::Approx(4.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.params = iso(2.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.horizon = 0.1;
    cfg.dt = 1.0;  // max|phi| on the dealiased band is ~2000
    REQUIRE_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("exceeds 0.5"));

    cfg.dt = 1e-4;
    REQUIRE_NOTHROW(cfg.validate());

    // declaring a resolved band relaxes the bound accordingly
    cfg.dt = 1e-2;
    cfg.resolve_band = 2.0;
    REQUIRE_NOTHROW(cfg.validate());

    cfg.diag_every = 0;
    REQUIRE_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("diag_every"));
}

TEST_CASE("zero field stays zero and linear-only stepping is exact propagation") {
    SolverConfig cfg;
    cfg.params = iso(2.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.dt = 5e-4;
    cfg.horizon = 1e-2;
    cfg.resolve_band = 8.0;

    Field zero(cfg.grid, true);
    Field z1 = step(zero, cfg);
    REQUIRE(l2_norm(z1) == 0.0);

    cfg.linear_only = true;
    Field f = band_datum(cfg.grid, 6.0, 23, 1.0);
    Field stepped = step(f, cfg);
    Field exact = propagate(f, cfg.params, cfg.dt);
    REQUIRE(l2_diff(stepped, exact) < 1e-12);

    auto traj = solve(f, cfg);
    REQUIRE(l2_diff(*traj.final_state, propagate(f, cfg.params, cfg.horizon)) < 1e-12);
}

TEST_CASE("small-amplitude step matches first-order perturbation theory") {
    SolverConfig cfg;
    cfg.params = iso(2.0, 2);
    cfg.grid = SpectralGrid{2, 16, two_pi};
    cfg.dt = 1e-3;
    cfg.horizon = cfg.dt;
    cfg.resolve_band = 2.0;

    const double eps = 1e-4;
    Field u0 = cosine(cfg.grid, {1, 0}, eps);
    Field stepped = step(u0, cfg);
    Field linear = propagate(u0, cfg.params, cfg.dt);
    REQUIRE(l2_diff(stepped, linear) < 1e-7);
}

TEST_CASE("dealiased nonlinearity equals the direct truncated convolution") {
    SolverConfig cfg;
    cfg.params = iso(1.0, 2);
    cfg.grid = SpectralGrid{2, 16, two_pi};
    cfg.dt = 1e-3;
    cfg.horizon = cfg.dt;

    const int lim = 5;  // floor(16/3)
    Field u(cfg.grid, true);
    Rng rng(91);
    for_each_mode(cfg.grid, [&](std::size_t idx, const int* k) {
        if (std::abs(k[0]) <= lim && std::abs(k[1]) <= lim)
            u.coeffs[idx] = {rng.gaussian(), rng.gaussian()};
    });
    hermitian_symmetrize(u);

    detail::Stepper st(cfg);
    std::vector<cplx> out(cfg.grid.size());
    st.nonlinearity(u.coeffs, out);

    // w(k) = sum_{p+q=k} u(p) u(q) over the retained square, then (i k1 / 2) w(k)
    for (int k0 = -lim; k0 <= lim; ++k0) {
        for (int k1 = -lim; k1 <= lim; ++k1) {
            cplx w = 0.0;
            for (int p0 = -lim; p0 <= lim; ++p0) {
                for (int p1 = -lim; p1 <= lim; ++p1) {
                    int q0 = k0 - p0, q1 = k1 - p1;
                    if (std::abs(q0) > lim || std::abs(q1) > lim) continue;
                    int kp[2] = {p0, p1}, kq[2] = {q0, q1};
                    w += u.coeffs[cfg.grid.flat(kp)] * u.coeffs[cfg.grid.flat(kq)];
                }
            }
            int kk[2] = {k0, k1};
            cplx expect = cplx(0.0, 0.5 * k0) * w;
            REQUIRE(std::abs(out[cfg.grid.flat(kk)] - expect) < 1e-12);
        }
    }
    // outside the retained band the result is zero
    int high[2] = {7, 0};
    REQUIRE(std::abs(out[cfg.grid.flat(high)]) == 0.0);
}

TEST_CASE("mass and energy are conserved at small amplitude") {
    SolverConfig cfg;
    cfg.params = iso(1.5, 2);
    cfg.grid = SpectralGrid{2, 64, two_pi};
    cfg.dt = 2e-3;
    cfg.horizon = 0.5;
    cfg.resolve_band = 8.0;
    cfg.diag_every = 50;

    Field u0 = band_datum(cfg.grid, 8.0, 42, 1.0);
    auto traj = solve(u0, cfg);
    double m0 = traj.mass_values.front();
    double e0 = traj.energy_total.front();
    for (double m : traj.mass_values) REQUIRE(std::abs(m - m0) < 1e-8 * m0);
    for (double e : traj.energy_total) REQUIRE(std::abs(e - e0) < 1e-6 * std::abs(e0));
}

TEST_CASE("mass conservation survives without dealiasing when products stay in band") {
    SolverConfig cfg;
    cfg.params = iso(1.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.dealias = Dealias::None;
    cfg.dt = 2e-3;
    cfg.horizon = 0.2;
    cfg.resolve_band = 4.0;

    Field u0 = band_datum(cfg.grid, 4.0, 43, 0.5);
    auto traj = solve(u0, cfg);
    double m0 = traj.mass_values.front();
    // band-4 data: quadratic products reach |k| = 8 < M/2, still alias-free
    REQUIRE(std::abs(traj.mass_values.back() - m0) < 1e-8 * m0);
}

TEST_CASE("RK4 self-convergence order is four") {
    SolverConfig cfg;
    cfg.params = iso(2.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.horizon = 0.128;
    cfg.resolve_band = 4.0;

    Field u0 = band_datum(cfg.grid, 4.0, 7, 8.0);  // large enough that dt error dominates

    auto terminal = [&](double dt) {
        SolverConfig c = cfg;
        c.dt = dt;
        c.diag_every = 1 << 20;
        return *solve(u0, c).final_state;
    };
    Field ref = terminal(2.5e-4);
    double e1 = l2_diff(terminal(2e-3), ref);
    double e2 = l2_diff(terminal(1e-3), ref);
    double e3 = l2_diff(terminal(5e-4), ref);
    double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
    REQUIRE(e3 > 1e-13);  // above roundoff, so the orders mean something
    REQUIRE(o1 > 3.7);
    REQUIRE(o1 < 4.4);
    REQUIRE(o2 > 3.5);
    REQUIRE(o2 < 4.6);
}

TEST_CASE("time reversal returns the initial datum") {
    SolverConfig cfg;
    cfg.params = iso(2.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.dt = 5e-4;
    cfg.horizon = 0.25;
    cfg.resolve_band = 4.0;
    cfg.diag_every = 1 << 20;

    Field u0 = band_datum(cfg.grid, 4.0, 9, 2.0);
    Field uT = *solve(u0, cfg).final_state;
    Field back = reflect_x1(*solve(reflect_x1(uT), cfg).final_state);
    REQUIRE(l2_diff(back, u0) < 1e-8 * l2_norm(u0));

    // reflecting twice is the identity
    REQUIRE(l2_diff(reflect_x1(reflect_x1(u0)), u0) == 0.0);
}

TEST_CASE("zero horizon yields a single-sample trajectory") {
    SolverConfig cfg;
    cfg.params = iso(1.0, 2);
    cfg.grid = SpectralGrid{2, 16, two_pi};
    cfg.dt = 1e-3;
    cfg.horizon = 0.0;
    Field u0 = band_datum(cfg.grid, 3.0, 3, 1.0);
    auto traj = solve(u0, cfg);
    REQUIRE(traj.times.size() == 1);
    REQUIRE(traj.steps == 0);
    REQUIRE(l2_diff(*traj.final_state, u0) < 1e-15);
}

TEST_CASE("trajectory diagnostics are consistent") {
    SolverConfig cfg;
    cfg.params = iso(1.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.dt = 1e-3;
    cfg.horizon = 0.05;
    cfg.resolve_band = 6.0;
    cfg.diag_every = 7;
    cfg.sobolev_s = {0.0, 2.0};
    cfg.keep_snapshots = true;

    Field u0 = band_datum(cfg.grid, 6.0, 31, 1.0);
    auto traj = solve(u0, cfg);

    REQUIRE(traj.times.front() == 0.0);
    REQUIRE(traj.times.back() == Catch::Approx(0.05).margin(1e-12));
    for (std::size_t i = 1; i < traj.times.size(); ++i)
        REQUIRE(traj.times[i] > traj.times[i - 1]);
    REQUIRE(traj.snapshots.size() == traj.times.size());
    REQUIRE(traj.sobolev.front().size() == 2);
    // H^0 equals the plain l2 norm
    REQUIRE(traj.sobolev.front()[0] == Catch::Approx(l2_norm(u0)).epsilon(1e-12));

    // the shell ledger is the running sup of the per-sample profiles
    REQUIRE(traj.shell_sup.size() == traj.shells.size());
    for (std::size_t s = 0; s < traj.shells.size(); ++s) {
        double sup = 0.0;
        for (const auto& prof : traj.shell_l2) sup = std::max(sup, prof[s]);
        REQUIRE(traj.shell_sup[s] == sup);
    }
}

TEST_CASE("violent data trips the blow-up detector") {
    SolverConfig cfg;
    cfg.params = iso(2.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.dt = 1e-4;
    cfg.horizon = 0.01;

    Field u0 = band_datum(cfg.grid, 4.0, 5, 1.0);
    for (auto& c : u0.coeffs) c *= 1e9;
    REQUIRE_THROWS_WITH(solve(u0, cfg),
                        Catch::Matchers::ContainsSubstring("blow-up or instability at step"));
}

TEST_CASE("bona smith table vanishes for data below the smallest cutoff") {
    SolverConfig cfg;
    cfg.params = iso(1.0, 2);
    cfg.grid = SpectralGrid{2, 32, two_pi};
    cfg.dt = 2e-3;
    cfg.horizon = 0.05;
    cfg.resolve_band = 4.0;

    Field u0 = band_datum(cfg.grid, 2.0, 77, 0.5);  // supported in |k| <= 2
    auto table = bona_smith(u0, 2.0, {4, 8}, cfg);
    for (const auto& row : table) {
        REQUIRE(row.sup_l2 < 1e-14);
        REQUIRE(row.sup_hs < 1e-13);
    }
}

TEST_CASE("bona smith differences sink as the cutoff rises") {
    SolverConfig cfg;
    cfg.params = iso(1.0, 2);
    cfg.grid = SpectralGrid{2, 64, two_pi};
    cfg.dt = 8e-4;
    cfg.horizon = 0.1;
    cfg.diag_every = 5;

    Field u0 = tail_datum(cfg.grid, 5.5, 55, 4.0, 1.0);
    auto table = bona_smith(u0, 2.0, {2, 4, 8}, cfg);
    REQUIRE(table.size() == 3);
    for (std::size_t i = 1; i < table.size(); ++i) {
        REQUIRE(table[i].sup_l2 < table[i - 1].sup_l2);
        REQUIRE(table[i].sup_hs <= table[i - 1].sup_hs);
        // the L^2 column decays at least quadratically per doubling for this tail
        REQUIRE(table[i].sup_l2 < 0.5 * table[i - 1].sup_l2);
    }
    REQUIRE(table.back().sup_l2 > 1e-13);  // not trivially zero

    REQUIRE_THROWS_WITH(bona_smith(u0, 2.0, {128}, cfg),
                        Catch::Matchers::ContainsSubstring("cutoff beyond grid"));
    REQUIRE_THROWS_WITH(bona_smith(u0, -1.0, {4}, cfg),
                        Catch::Matchers::ContainsSubstring("positive"));
}
