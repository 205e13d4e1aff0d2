// Experiment drivers behind the CLI. Each kind parses its whole configuration up
// front (unknown keys are schema violations), runs the corresponding module
// operation, writes CSV artifacts plus an SVG where a plot makes sense, and ends
// with a manifest listing every emitted file with its digest. A run is a pure
// function of (config, seed): repeating it reproduces the artifacts byte for byte.
#ifndef FZK_EXPERIMENTS_HPP
#define FZK_EXPERIMENTS_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fzk/bona_smith.hpp"
#include "fzk/config.hpp"
#include "fzk/csv.hpp"
#include "fzk/io.hpp"
#include "fzk/kernel_decay.hpp"
#include "fzk/manifest.hpp"
#include "fzk/observables.hpp"
#include "fzk/resonance.hpp"
#include "fzk/rng.hpp"
#include "fzk/solver.hpp"
#include "fzk/strichartz.hpp"
#include "fzk/svg.hpp"
#include "fzk/transversality.hpp"

namespace fzk {

enum class ExperimentKind {
    Simulate,
    VerifyBilinear,
    VerifyShorttime,
    VerifyKernel,
    VerifyLinearStrichartz,
    Transversality,
    ResonanceScan,
    BonaSmith,
};

inline const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Simulate: return "Simulate";
        case ExperimentKind::VerifyBilinear: return "VerifyBilinear";
        case ExperimentKind::VerifyShorttime: return "VerifyShorttime";
        case ExperimentKind::VerifyKernel: return "VerifyKernel";
        case ExperimentKind::VerifyLinearStrichartz: return "VerifyLinearStrichartz";
        case ExperimentKind::Transversality: return "Transversality";
        case ExperimentKind::ResonanceScan: return "ResonanceScan";
        case ExperimentKind::BonaSmith: return "BonaSmith";
    }
    return "?";
}

inline ExperimentKind kind_from_name(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != '-' && c != '_') s.push_back(static_cast<char>(std::tolower(c)));
    if (s == "simulate") return ExperimentKind::Simulate;
    if (s == "verifybilinear") return ExperimentKind::VerifyBilinear;
    if (s == "verifyshorttime") return ExperimentKind::VerifyShorttime;
    if (s == "verifykernel") return ExperimentKind::VerifyKernel;
    if (s == "verifylinearstrichartz") return ExperimentKind::VerifyLinearStrichartz;
    if (s == "transversality") return ExperimentKind::Transversality;
    if (s == "resonancescan") return ExperimentKind::ResonanceScan;
    if (s == "bonasmith") return ExperimentKind::BonaSmith;
    throw ConfigError("unknown experiment kind: " + raw);
}

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Simulate;
    Config config;
    std::uint64_t seed = 1;
    std::string out_dir = "fzk-out";
};

namespace detail {

inline Dealias dealias_from(const Config& cfg) {
    std::string s = cfg.get_string("dealias", "two_thirds");
    if (s == "two_thirds") return Dealias::TwoThirds;
    if (s == "none") return Dealias::None;
    throw ConfigError("config key 'dealias': expected two_thirds or none, got " + s);
}

// dt leaving margin under the dt.max|phi| <= 0.5 stability gate
inline double auto_dt(const SolverConfig& sc) {
    auto mask = dealias_mask(sc.grid, sc.dealias);
    double mp = max_phase_in_ball(sc.grid, sc.params, sc.resolve_band, mask);
    if (mp <= 0.0) return sc.horizon > 0.0 ? sc.horizon : 1.0;
    return 0.4 / mp;
}

// datum kinds: band (Gaussian coefficients on 0 < |k| <= datum_band), tail
// (coefficients ~ (1+|k|)^{-datum_p}), cosine (one real mode). band and tail are
// rescaled to datum_norm in H^{datum_norm_s}.
inline Field make_datum(const SpectralGrid& g, const Config& cfg, std::uint64_t seed,
                        const std::string& default_kind, double default_norm_s) {
    std::string kind = cfg.get_string("datum", default_kind);
    std::uint64_t dseed = cfg.get_u64("datum_seed", seed);

    if (kind == "cosine") {
        auto mode = cfg.get_long_list("datum_mode", "1,0");
        double amp = cfg.get_double("datum_amp", 1.0);
        if (static_cast<int>(mode.size()) != g.n)
            throw ConfigError("datum_mode must have one entry per dimension");
        Field f(g, true);
        int k[3] = {0, 0, 0}, mk[3] = {0, 0, 0};
        for (int d = 0; d < g.n; ++d) {
            k[d] = static_cast<int>(mode[d]);
            mk[d] = -k[d];
        }
        f.at(k) = 0.5 * amp;
        f.at(mk) = 0.5 * amp;
        return f;
    }

    Field f(g, true);
    Rng rng(dseed);
    if (kind == "band") {
        double B = cfg.get_double("datum_band", 8.0);
        for_each_mode(g, [&](std::size_t idx, const int* k) {
            double r2 = 0.0;
            for (int d = 0; d < g.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
            if (r2 > 0.0 && r2 <= B * B) f.coeffs[idx] = {rng.gaussian(), rng.gaussian()};
        });
    } else if (kind == "tail") {
        double p = cfg.get_double("datum_p", 5.5);
        for_each_mode(g, [&](std::size_t idx, const int* k) {
            double r2 = 0.0;
            for (int d = 0; d < g.n; ++d) r2 += static_cast<double>(k[d]) * k[d];
            if (r2 == 0.0) return;
            double w = std::pow(1.0 + std::sqrt(r2), -p);
            f.coeffs[idx] = {w * rng.gaussian(), w * rng.gaussian()};
        });
    } else {
        throw ConfigError("config key 'datum': expected band, tail or cosine, got " + kind);
    }
    hermitian_symmetrize(f);
    double target = cfg.get_double("datum_norm", 1.0);
    double s = cfg.get_double("datum_norm_s", default_norm_s);
    double cur = sobolev_norm(f, s);
    if (cur == 0.0) throw ConfigError("datum support is empty on this grid");
    for (auto& c : f.coeffs) c *= target / cur;
    return f;
}

inline DispersionParams scalar_params(const Config& cfg, int default_n, double default_a) {
    DispersionParams dp;
    dp.family = family_from_name(cfg.get_string("family", "IsotropicFZK"));
    dp.a = cfg.get_double("a", default_a);
    dp.n = static_cast<int>(cfg.get_long("n", default_n));
    dp.period = cfg.get_double("L", two_pi);
    dp.validate();
    return dp;
}

inline nlohmann::json run_simulate(const ExperimentSpec& spec,
                                   const std::filesystem::path& dir) {
    const Config& cfg = spec.config;
    SolverConfig sc;
    sc.params = scalar_params(cfg, 2, 2.0);
    sc.grid = SpectralGrid{sc.params.n, static_cast<int>(cfg.get_long("M", 64)),
                           sc.params.period};
    sc.horizon = cfg.get_double("horizon", 1.0);
    sc.dealias = dealias_from(cfg);
    sc.resolve_band = cfg.get_double("resolve_band", 0.0);
    sc.linear_only = cfg.get_bool("linear_only", false);
    sc.sobolev_s = cfg.get_double_list("sobolev_s", "0,3");
    sc.dt = cfg.get_double("dt", 0.0);
    if (sc.dt <= 0.0) sc.dt = auto_dt(sc);
    long diag = cfg.get_long("diag_every", 0);
    if (diag <= 0)
        diag = std::max(1L, static_cast<long>(std::lround(sc.horizon / sc.dt)) / 64);
    sc.diag_every = diag;
    long snap = cfg.get_long("snapshot_every", 0);
    sc.keep_snapshots = snap > 0;

    Field u0 = make_datum(sc.grid, cfg, spec.seed, "band", 3.0);
    cfg.check_consumed();

    Trajectory traj = solve(u0, sc);

    std::vector<std::string> header = {"t", "mass", "energy_total", "energy_quadratic",
                                       "energy_cubic"};
    for (double s : sc.sobolev_s) header.push_back("h" + csv_cell(s));
    for (long sh : traj.shells) header.push_back("shell_" + std::to_string(sh));
    CsvWriter csv((dir / "trajectory.csv").string(), header);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<std::string> cells = {
            csv_cell(traj.times[i]), csv_cell(traj.mass_values[i]),
            csv_cell(traj.energy_total[i]), csv_cell(traj.energy_quadratic[i]),
            csv_cell(traj.energy_cubic[i])};
        for (double v : traj.sobolev[i]) cells.push_back(csv_cell(v));
        for (double v : traj.shell_l2[i]) cells.push_back(csv_cell(v));
        csv.row(cells);
    }

    if (snap > 0) {
        std::filesystem::create_directories(dir / "snapshots");
        for (std::size_t i = 0; i < traj.snapshots.size(); i += snap) {
            char name[32];
            std::snprintf(name, sizeof name, "snap_%06zu.fzk", i);
            save_field(traj.snapshots[i], (dir / "snapshots" / name).string());
        }
    }

    std::vector<PlotSeries> series(sc.sobolev_s.size());
    for (std::size_t j = 0; j < sc.sobolev_s.size(); ++j) {
        series[j].label = "H^" + csv_cell(sc.sobolev_s[j]);
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            series[j].points.push_back({traj.times[i], traj.sobolev[i][j]});
    }
    write_svg_plot((dir / "norms_vs_t.svg").string(),
                   {"Sobolev norms along the flow", "t", "norm", false, false}, series);

    double m0 = traj.mass_values.front();
    double mass_drift = 0.0;
    for (double m : traj.mass_values)
        mass_drift = std::max(mass_drift, std::abs(m - m0) / std::max(1e-300, std::abs(m0)));

    nlohmann::json summary;
    summary["steps"] = traj.steps;
    summary["dt"] = sc.dt;
    summary["samples"] = traj.times.size();
    summary["mass_drift_rel"] = mass_drift;
    bool has_energy = std::isfinite(traj.energy_total.front());
    summary["energy_defined"] = has_energy;
    if (has_energy) {
        double e0 = traj.energy_total.front(), ed = 0.0;
        for (double e : traj.energy_total)
            ed = std::max(ed, std::abs(e - e0) / std::max(1e-300, std::abs(e0)));
        summary["energy_drift_rel"] = ed;
    }
    return summary;
}

inline nlohmann::json run_verify_pair(const ExperimentSpec& spec,
                                      const std::filesystem::path& dir, bool shorttime) {
    const Config& cfg = spec.config;
    auto a_list = cfg.get_double_list("a", shorttime ? "1" : "1,1.5,2");
    int n = static_cast<int>(cfg.get_long("n", 2));
    double L = cfg.get_double("L", two_pi);
    int M = static_cast<int>(cfg.get_long("M", 256));
    auto N_list = cfg.get_long_list("N", "16,32,64");
    auto K_list = cfg.get_long_list("K", "1,2");
    long trials = cfg.get_long("trials", 50);
    double T = cfg.get_double("time_horizon", 0.0);
    long m = cfg.get_long("time_samples", 0);
    SymbolFamily fam = family_from_name(cfg.get_string("family", "IsotropicFZK"));
    cfg.check_consumed();

    CsvWriter rows((dir / "trials.csv").string(),
                   {"a", "N", "K", "trial", "lhs", "rhs_scale", "ratio"});
    CsvWriter sum((dir / "summary.csv").string(),
                  {"a", "N", "K", "time_horizon", "time_samples", "max_ratio", "mean_ratio"});

    nlohmann::json verdicts = nlohmann::json::array();
    bool all = true;
    std::vector<PlotSeries> series;
    std::size_t cell = 0;
    for (double a : a_list) {
        for (long K : K_list) {
            std::vector<RatioReport> sweep;
            PlotSeries s;
            s.label = "a=" + csv_cell(a) + " K=" + std::to_string(K);
            for (long N : N_list) {
                EstimateProbe probe;
                probe.params.family = fam;
                probe.params.a = a;
                probe.params.n = n;
                probe.params.period = L;
                probe.grid = SpectralGrid{n, M, L};
                probe.shells = {N, K};
                probe.time_horizon = T;
                probe.time_samples = m;
                probe.trials = trials;
                probe.rng_seed = mix_seed(spec.seed, cell++);
                RatioReport rep =
                    shorttime ? shorttime_amelioration(probe) : bilinear_ratio(probe);
                for (const auto& tr : rep.trials)
                    rows.row(csv_cell(a), csv_cell(N), csv_cell(K), csv_cell(tr.trial),
                             csv_cell(tr.lhs), csv_cell(tr.rhs_scale), csv_cell(tr.ratio));
                sum.row(csv_cell(a), csv_cell(N), csv_cell(K), csv_cell(rep.time_horizon),
                        csv_cell(rep.time_samples), csv_cell(rep.max_ratio),
                        csv_cell(rep.mean_ratio));
                s.points.push_back({static_cast<double>(N), rep.max_ratio});
                sweep.push_back(std::move(rep));
            }
            SweepVerdict v = uniformity_verdict(sweep);
            verdicts.push_back({{"a", a},
                                {"K", K},
                                {"lo", v.lo},
                                {"hi", v.hi},
                                {"pass", v.pass}});
            all = all && v.pass;
            series.push_back(std::move(s));
        }
    }
    write_svg_plot((dir / "ratio_vs_N.svg").string(),
                   {shorttime ? "Shorttime bilinear ratio vs N" : "Bilinear ratio vs N", "N",
                    "max ratio", true, true},
                   series);
    nlohmann::json summary;
    summary["verdicts"] = verdicts;
    summary["uniform_in_N"] = all;
    return summary;
}

inline nlohmann::json run_verify_kernel(const ExperimentSpec& spec,
                                        const std::filesystem::path& dir) {
    const Config& cfg = spec.config;
    auto a_list = cfg.get_double_list("a", "1,2");
    double t_min = cfg.get_double("t_min", 1.0);
    double t_max = cfg.get_double("t_max", 64.0);
    double t_step = cfg.get_double("t_step", 1.0);
    SymbolFamily fam = family_from_name(cfg.get_string("family", "IsotropicFZK"));
    int n = static_cast<int>(cfg.get_long("n", 3));
    cfg.check_consumed();
    if (fam != SymbolFamily::IsotropicFZK)
        throw ConfigError("kernel scan covers the isotropic family only");
    if (!(t_step > 0.0) || t_max < t_min)
        throw ConfigError("kernel scan needs t_min <= t_max and t_step > 0");

    std::vector<double> ts;
    for (double t = t_min; t <= t_max + 1e-12; t += t_step) ts.push_back(t);

    CsvWriter csv((dir / "scan.csv").string(), {"a", "t", "sup_abs", "t_times_sup"});
    nlohmann::json per_a = nlohmann::json::array();
    std::vector<PlotSeries> series;
    bool all = true;
    for (std::size_t ai = 0; ai < a_list.size(); ++ai) {
        DispersionParams dp;
        dp.family = fam;
        dp.a = a_list[ai];
        dp.n = n;
        KernelScanResult res =
            kernel_decay_scan(dp, ts, standard_bump, mix_seed(spec.seed, ai));
        PlotSeries s;
        s.label = "a=" + csv_cell(dp.a);
        for (const auto& row : res.rows) {
            csv.row(csv_cell(dp.a), csv_cell(row.t), csv_cell(row.sup_abs),
                    csv_cell(row.t_times_sup));
            s.points.push_back({row.t, row.t_times_sup});
        }
        series.push_back(std::move(s));

        // quadrature self-consistency: doubling the panel count at the extreme times
        double quad = 0.0;
        for (double t : {t_min, t_max}) {
            Rng rng(mix_seed(spec.seed, 1000 + ai));
            auto xs = default_x_samples(t, rng);
            for (std::size_t i = 0; i < std::min<std::size_t>(4, xs.size()); ++i)
                quad = std::max(quad,
                                std::abs(kernel_integral(xs[i], t, dp, standard_bump, 1.0) -
                                         kernel_integral(xs[i], t, dp, standard_bump, 2.0)));
        }
        per_a.push_back({{"a", dp.a},
                         {"pass", res.pass},
                         {"c_emp", res.c_emp},
                         {"quadrature_err", quad}});
        all = all && res.pass;
    }
    write_svg_plot((dir / "decay.svg").string(),
                   {"|t| sup_x |I(x,t)| vs t", "t", "t * sup|I|", true, false}, series);
    nlohmann::json summary;
    summary["per_a"] = per_a;
    summary["decay_uniform"] = all;
    return summary;
}

inline nlohmann::json run_verify_linear(const ExperimentSpec& spec,
                                        const std::filesystem::path& dir) {
    const Config& cfg = spec.config;
    auto a_list = cfg.get_double_list("a", "1,2");
    int n = static_cast<int>(cfg.get_long("n", 3));
    double L = cfg.get_double("L", two_pi);
    int M = static_cast<int>(cfg.get_long("M", 32));
    auto N_list = cfg.get_long_list("N", "2,4,8");
    double q = cfg.get_double("q", 4.0);
    double p = cfg.get_double("p", 4.0);
    long trials = cfg.get_long("trials", 6);
    double T = cfg.get_double("time_horizon", 0.0);
    long m = cfg.get_long("time_samples", 0);
    SymbolFamily fam = family_from_name(cfg.get_string("family", "IsotropicFZK"));
    cfg.check_consumed();

    CsvWriter rows((dir / "trials.csv").string(),
                   {"a", "N", "trial", "lhs", "rhs_scale", "ratio"});
    CsvWriter sum((dir / "summary.csv").string(), {"a", "N", "max_ratio", "mean_ratio"});
    nlohmann::json slopes = nlohmann::json::array();
    std::vector<PlotSeries> series;
    bool all = true;
    std::size_t cell = 0;
    for (double a : a_list) {
        std::vector<std::pair<double, double>> pts;
        PlotSeries s;
        s.label = "a=" + csv_cell(a);
        for (long N : N_list) {
            EstimateProbe probe;
            probe.params.family = fam;
            probe.params.a = a;
            probe.params.n = n;
            probe.params.period = L;
            probe.grid = SpectralGrid{n, M, L};
            probe.shells = {N, 0};
            probe.time_horizon = T;
            probe.time_samples = m;
            probe.trials = trials;
            probe.rng_seed = mix_seed(spec.seed, cell++);
            RatioReport rep = linear_strichartz_ratio(probe, q, p);
            for (const auto& tr : rep.trials)
                rows.row(csv_cell(a), csv_cell(N), csv_cell(tr.trial), csv_cell(tr.lhs),
                         csv_cell(tr.rhs_scale), csv_cell(tr.ratio));
            sum.row(csv_cell(a), csv_cell(N), csv_cell(rep.max_ratio),
                    csv_cell(rep.mean_ratio));
            pts.push_back({static_cast<double>(N), rep.max_ratio});
            s.points.push_back({static_cast<double>(N), rep.max_ratio});
        }
        double slope = loglog_slope(pts);
        bool ok = slope <= 0.1;
        slopes.push_back({{"a", a}, {"slope", slope}, {"pass", ok}});
        all = all && ok;
        series.push_back(std::move(s));
    }
    write_svg_plot((dir / "ratio_vs_N.svg").string(),
                   {"Linear Strichartz ratio vs N", "N", "max ratio", true, true}, series);
    nlohmann::json summary;
    summary["slopes"] = slopes;
    summary["no_growth"] = all;
    return summary;
}

inline nlohmann::json run_transversality(const ExperimentSpec& spec,
                                         const std::filesystem::path& dir) {
    const Config& cfg = spec.config;
    TransversalityConstraint c =
        constraint_from_name(cfg.get_string("constraint", "HighHighHigh"));
    bool zk = c == TransversalityConstraint::ZK_nD_SmallFirstComponent;
    auto a_list = cfg.get_double_list("a", zk ? "2" : "1,1.5,2");
    int n = static_cast<int>(cfg.get_long("n", zk ? 3 : 2));
    auto N_list = cfg.get_long_list("N", zk ? "16,32" : "8,16,32");
    long K = cfg.get_long("K", c == TransversalityConstraint::SeparatedHighLow ? 2 : 0);
    std::uint64_t samples = cfg.get_u64("target_samples", 1000000);
    SymbolFamily fam = family_from_name(cfg.get_string("family", "IsotropicFZK"));
    cfg.check_consumed();

    std::vector<std::string> header = {"constraint", "a",       "n",
                                       "N",          "K",       "c_min",
                                       "triples_scanned", "sampled", "witness_ok"};
    for (int i = 1; i <= 3; ++i)
        for (int d = 1; d <= 3; ++d)
            header.push_back("w" + std::to_string(i) + "_" + std::to_string(d));
    CsvWriter csv((dir / "certificates.csv").string(), header);

    std::vector<PlotSeries> series;
    double min_c = std::numeric_limits<double>::infinity();
    bool all_pos = true, all_wit = true;
    std::size_t cell = 0;
    for (double a : a_list) {
        DispersionParams dp;
        dp.family = fam;
        dp.a = a;
        dp.n = n;
        PlotSeries s;
        s.label = "a=" + csv_cell(a);
        for (long N : N_list) {
            TransversalityReport rep =
                min_transversality(N, dp, c, K, mix_seed(spec.seed, cell++), samples);
            bool wok = witness_valid(rep);
            std::vector<std::string> cells = {
                constraint_name(c),  csv_cell(a),
                csv_cell(n),         csv_cell(N),
                csv_cell(rep.K),     csv_cell(rep.c_min),
                csv_cell(rep.triples_scanned), rep.sampled ? "1" : "0",
                wok ? "1" : "0"};
            for (int i = 0; i < 3; ++i)
                for (int d = 0; d < 3; ++d) cells.push_back(csv_cell(rep.witness[i][d]));
            csv.row(cells);
            min_c = std::min(min_c, rep.c_min);
            all_pos = all_pos && rep.c_min > 0.0;
            all_wit = all_wit && wok;
            s.points.push_back({static_cast<double>(N), rep.c_min});
        }
        series.push_back(std::move(s));
    }
    write_svg_plot((dir / "cmin_vs_N.svg").string(),
                   {"Normalized transversality floor vs N", "N", "c_min", true, true},
                   series);
    nlohmann::json summary;
    summary["min_c_min"] = min_c;
    summary["all_positive"] = all_pos;
    summary["all_witnesses_valid"] = all_wit;
    return summary;
}

inline nlohmann::json run_resonance_scan(const ExperimentSpec& spec,
                                         const std::filesystem::path& dir) {
    const Config& cfg = spec.config;
    long R = cfg.get_long("R", 4);
    DispersionParams dp = scalar_params(cfg, 2, 2.0);
    cfg.check_consumed();
    if (dp.n != 2) throw ConfigError("resonance scan tabulates planar frequency pairs");
    if (R < 0) throw ConfigError("config key 'R': must be nonnegative");

    bool exact = dp.family == SymbolFamily::IsotropicFZK && dp.a == 2.0;
    CsvWriter csv((dir / "resonance.csv").string(),
                  {"xi1_1", "xi1_2", "xi2_1", "xi2_2", "omega"});
    long long zero_rows = 0;
    double max_abs = 0.0;
    for (long k1 = -R; k1 <= R; ++k1)
        for (long k2 = -R; k2 <= R; ++k2)
            for (long l1 = -R; l1 <= R; ++l1)
                for (long l2 = -R; l2 <= R; ++l2) {
                    std::string om;
                    double val;
                    if (exact) {
                        std::int64_t ka[2] = {k1, k2}, kb[2] = {l1, l2};
                        std::int64_t o = resonance_zk_exact(ka, kb);
                        om = std::to_string(o);
                        val = static_cast<double>(o);
                        if (o == 0) ++zero_rows;
                    } else {
                        double xa[2] = {static_cast<double>(k1), static_cast<double>(k2)};
                        double xb[2] = {static_cast<double>(l1), static_cast<double>(l2)};
                        val = resonance(dp, xa, xb);
                        om = csv_cell(val);
                        if (std::abs(val) < 1e-12) ++zero_rows;
                    }
                    max_abs = std::max(max_abs, std::abs(val));
                    csv.row(csv_cell(k1), csv_cell(k2), csv_cell(l1), csv_cell(l2), om);
                }
    nlohmann::json summary;
    summary["rows"] = csv.rows() - 1;
    summary["resonant_rows"] = zero_rows;
    summary["max_abs_omega"] = max_abs;
    summary["integer_exact"] = exact;
    return summary;
}

inline nlohmann::json run_bona_smith(const ExperimentSpec& spec,
                                     const std::filesystem::path& dir) {
    const Config& cfg = spec.config;
    SolverConfig sc;
    sc.params = scalar_params(cfg, 2, 1.0);
    sc.grid = SpectralGrid{sc.params.n, static_cast<int>(cfg.get_long("M", 128)),
                           sc.params.period};
    sc.horizon = cfg.get_double("horizon", 0.05);
    sc.dealias = dealias_from(cfg);
    double s = cfg.get_double("s", 2.0);
    auto cutoffs = cfg.get_long_list("cutoffs", "4,8,16,32");
    sc.resolve_band = cfg.get_double("resolve_band", 0.0);
    if (sc.resolve_band <= 0.0) {
        long top = *std::max_element(cutoffs.begin(), cutoffs.end());
        sc.resolve_band = std::min<double>(2.0 * static_cast<double>(top),
                                           static_cast<double>(detail::dealias_limit(
                                               sc.grid, sc.dealias)));
    }
    sc.dt = cfg.get_double("dt", 0.0);
    if (sc.dt <= 0.0) sc.dt = auto_dt(sc);
    sc.diag_every = cfg.get_long("diag_every", 1);
    Field u0 = make_datum(sc.grid, cfg, spec.seed, "tail", s + 2.0);
    cfg.check_consumed();

    auto table = bona_smith(u0, s, cutoffs, sc);

    CsvWriter csv((dir / "convergence.csv").string(), {"cutoff", "sup_l2", "sup_hs"});
    PlotSeries sl2{"sup |u - u_N| in L2", {}}, shs{"sup |u - u_N| in H^s", {}};
    for (const auto& row : table) {
        csv.row(csv_cell(row.cutoff), csv_cell(row.sup_l2), csv_cell(row.sup_hs));
        sl2.points.push_back({static_cast<double>(row.cutoff), row.sup_l2});
        shs.points.push_back({static_cast<double>(row.cutoff), row.sup_hs});
    }
    write_svg_plot((dir / "convergence.svg").string(),
                   {"Smoothed-datum convergence vs cutoff", "N", "sup_t difference", true,
                    true},
                   {sl2, shs});

    bool mono_l2 = true, mono_hs = true;
    double min_drop = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < table.size(); ++i) {
        mono_l2 = mono_l2 && table[i].sup_l2 <= table[i - 1].sup_l2;
        mono_hs = mono_hs && table[i].sup_hs <= table[i - 1].sup_hs;
        if (table[i].cutoff == 2 * table[i - 1].cutoff && table[i].sup_l2 > 0.0)
            min_drop = std::min(min_drop, table[i - 1].sup_l2 / table[i].sup_l2);
    }
    nlohmann::json summary;
    summary["nonincreasing_l2"] = mono_l2;
    summary["nonincreasing_hs"] = mono_hs;
    if (std::isfinite(min_drop)) summary["min_doubling_drop_l2"] = min_drop;
    summary["pass"] = mono_l2 && mono_hs && (!std::isfinite(min_drop) || min_drop >= 4.0);
    summary["dt"] = sc.dt;
    return summary;
}

}  // namespace detail

// Runs one experiment: creates the output directory, executes the kind's runner,
// and writes manifest.json covering every emitted file. Returns the manifest.
inline nlohmann::json run_experiment(const ExperimentSpec& spec) {
    namespace fs = std::filesystem;
    fs::path dir(spec.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    nlohmann::json summary;
    switch (spec.kind) {
        case ExperimentKind::Simulate: summary = detail::run_simulate(spec, dir); break;
        case ExperimentKind::VerifyBilinear:
            summary = detail::run_verify_pair(spec, dir, false);
            break;
        case ExperimentKind::VerifyShorttime:
            summary = detail::run_verify_pair(spec, dir, true);
            break;
        case ExperimentKind::VerifyKernel:
            summary = detail::run_verify_kernel(spec, dir);
            break;
        case ExperimentKind::VerifyLinearStrichartz:
            summary = detail::run_verify_linear(spec, dir);
            break;
        case ExperimentKind::Transversality:
            summary = detail::run_transversality(spec, dir);
            break;
        case ExperimentKind::ResonanceScan:
            summary = detail::run_resonance_scan(spec, dir);
            break;
        case ExperimentKind::BonaSmith: summary = detail::run_bona_smith(spec, dir); break;
    }

    nlohmann::json echo;
    echo["kind"] = kind_name(spec.kind);
    echo["seed"] = spec.seed;
    echo["out_dir"] = dir.generic_string();
    echo["config"] = spec.config.resolved();
    return write_manifest(dir, echo, summary);
}

inline std::string describe(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Simulate:
            return
                "Simulate: pseudospectral integration of d_t u + d_{x_1}(-Delta)^{a/2} u = "
                "u ∂_{x_1} u\n"
                "on the periodic box [0,L]^n with an integrating-factor RK4 step and 2/3\n"
                "dealiasing. Emits trajectory.csv (t, mass, energy, H^s norms, per-shell\n"
                "l2), optional binary snapshots, and a norm plot.\n"
                "keys: family (IsotropicFZK) a (2) n (2) L (2pi) M (64) horizon (1)\n"
                "      dt (0 = auto from dt*max|phi| <= 0.4) dealias (two_thirds|none)\n"
                "      resolve_band (0 = whole retained band) diag_every (0 = auto)\n"
                "      snapshot_every (0 = off) sobolev_s (0,3) linear_only (false)\n"
                "      datum (band|tail|cosine) datum_band (8) datum_p (5.5)\n"
                "      datum_norm (1) datum_norm_s (3) datum_mode datum_amp datum_seed\n"
                "      seed (1) out_dir\n";
        case ExperimentKind::VerifyBilinear:
            return
                "VerifyBilinear: Monte Carlo check of the bilinear space-time bound\n"
                "  |uv|_{L^2_{t,x}} <= C (K^{n−1}/N^a)^{1/2} |u0|_{L^2} |v0|_{L^2}\n"
                "for free waves on shells |xi| ~ N and |xi| ~ K <= N/8, over a horizon\n"
                "capped by the torus wrap-around guard. The reported ratio lhs/rhs_scale\n"
                "must stay bounded as N grows; summary.json carries the per-(a,K)\n"
                "uniformity verdicts.\n"
                "keys: family (IsotropicFZK) a (1,1.5,2) n (2) L (2pi) M (256)\n"
                "      N (16,32,64) K (1,2) trials (50) time_horizon (0 = policy)\n"
                "      time_samples (0 = auto) seed (1) out_dir\n";
        case ExperimentKind::VerifyShorttime:
            return
                "VerifyShorttime: the bilinear check on frequency-dependent windows\n"
                "T = N^{a−2} with the amelioration normalizer N^{1+(a−2)/2} (K^{n−1}/N^a)^{1/2};\n"
                "the d_{x_1} derivative falls on the product. Uniformity of the ratio in N\n"
                "is the pass condition. For a < 2 on the 2pi box the window exceeds the\n"
                "wrap-around guard only when N^{a−2} is too long; infeasible (a, N) pairs\n"
                "abort with the guard error rather than reporting a vacuous number.\n"
                "keys: family (IsotropicFZK) a (1) n (2) L (2pi) M (256) N (16,32,64)\n"
                "      K (1,2) trials (50) time_horizon (ignored: pinned to N^{a−2})\n"
                "      time_samples (0 = auto) seed (1) out_dir\n";
        case ExperimentKind::VerifyKernel:
            return
                "VerifyKernel: decay of the frequency-localized oscillatory kernel\n"
                "  I(x,t) = int psi(|xi|) e^{i(t xi_1 |xi|^a + x.xi)} dxi,   n = 3,\n"
                "checked as sup_x |t| |I(x,t)| bounded uniformly over t (within a factor\n"
                "4 of its smallest-|t| value). The integral reduces over spheres to a 1d\n"
                "radial quadrature; quadrature_err reports the effect of doubling the\n"
                "panel count.\n"
                "keys: family (IsotropicFZK only) a (1,2) n (3) t_min (1) t_max (64)\n"
                "      t_step (1) seed (1) out_dir\n";
        case ExperimentKind::VerifyLinearStrichartz:
            return
                "VerifyLinearStrichartz: Monte Carlo ratios for the linear estimate\n"
                "  |e^{-t d_{x_1}(-Delta)^{a/2}} P_N u0|_{L^q_t L^p_x} <= C N^s |u0|_{L^2},\n"
                "s = n(1/2 − 1/p) − (a+1)/q, on admissible pairs with 2/q + 2/p = 1\n"
                "(the n = 3 scaling line, q, p >= 2, p finite). The log-log slope of the\n"
                "max ratio against N must not grow (slope <= 0.1).\n"
                "keys: family (IsotropicFZK) a (1,2) n (3) L (2pi) M (32) N (2,4,8)\n"
                "      q (4) p (4) trials (6) time_horizon (0 = unit) time_samples (0)\n"
                "      seed (1) out_dir\n";
        case ExperimentKind::Transversality:
            return
                "Transversality: certified minima of the normalized group-velocity gap\n"
                "  min max_{i,j} |grad phi(xi_i) − grad phi(xi_j)| / N^a\n"
                "over zero-sum frequency triples in one of three constraint regimes:\n"
                "HighHighHigh (all three on the shell N), SeparatedHighLow (N, N, K with\n"
                "K <= N/8), ZK_nD_SmallFirstComponent (a = 2, first components small:\n"
                "1 <= |xi_{i1}| <= N/8). Emits per-(a, N) certificates with the witness\n"
                "triple; witnesses are re-validated independently.\n"
                "keys: constraint (HighHighHigh) family (IsotropicFZK) a n N K\n"
                "      target_samples (1000000, sampling path only) seed (1) out_dir\n";
        case ExperimentKind::ResonanceScan:
            return
                "ResonanceScan: tabulates the resonance function\n"
                "  Omega(xi, eta) = phi(xi + eta) − phi(xi) − phi(eta)\n"
                "for planar integer pairs with |components| <= R. For the isotropic\n"
                "family at a = 2 the values are computed in exact integer arithmetic\n"
                "(for example Omega((1,0),(1,0)) = 6).\n"
                "keys: family (IsotropicFZK) a (2) n (2) L (2pi) R (4) seed (1) out_dir\n";
        case ExperimentKind::BonaSmith:
            return
                "BonaSmith: continuous-dependence probe. Evolves a rough datum u0 and its\n"
                "smoothed truncations P_N u0 side by side and tabulates\n"
                "  sup_t |u − u_N| in L^2 and in H^s.\n"
                "Both columns must be nonincreasing in N, and the L^2 column must drop by\n"
                "at least a factor 4 per cutoff doubling for an H^{s+2} datum.\n"
                "keys: family (IsotropicFZK) a (1) n (2) L (2pi) M (128) s (2)\n"
                "      cutoffs (4,8,16,32) horizon (0.05) dt (0 = auto) dealias\n"
                "      resolve_band (0 = 2 max cutoff) diag_every (1) datum (tail)\n"
                "      datum_p (5.5) datum_norm (1) datum_norm_s (s+2) datum_seed\n"
                "      seed (1) out_dir\n";
    }
    return "";
}

}  // namespace fzk

#endif
