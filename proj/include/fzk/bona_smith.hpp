// Continuous-dependence experiment in the Bona-Smith style: evolve the same equation
// from a datum u0 and from its frequency truncations P_{<=N} u0, and tabulate the
// worst-case divergence sup_{t <= T} ||u(t) - u_N(t)||_{H^{s'}} for s' = 0 and s' = s.
// If the flow map is continuous on H^s the table must sink as the cutoff rises, and
// the L^2 column inherits the datum's tail decay rate.
#ifndef FZK_BONA_SMITH_HPP
#define FZK_BONA_SMITH_HPP

#include <stdexcept>
#include <vector>

#include "fzk/solver.hpp"

namespace fzk {

struct BonaSmithRow {
    long cutoff = 0;
    double sup_l2 = 0.0;  // sup_t ||u - u_N||_{L^2}
    double sup_hs = 0.0;  // sup_t ||u - u_N||_{H^s}
};

inline std::vector<BonaSmithRow> bona_smith(const Field& u0, double s,
                                            const std::vector<long>& cutoffs,
                                            const SolverConfig& cfg) {
    if (!(s > 0.0)) throw std::invalid_argument("smoothness index must be positive");
    if (cutoffs.empty()) throw std::invalid_argument("no cutoffs given");
    for (long N : cutoffs)
        if (!is_dyadic(N) || N > max_shell(cfg.grid))
            throw std::invalid_argument("cutoff beyond grid");
    cfg.validate();
    if (!u0.real_flag) throw std::invalid_argument("solver evolves real fields");

    std::vector<BonaSmithRow> table;
    table.reserve(cutoffs.size());
    for (long N : cutoffs) {
        // evolve both branches in lockstep so no snapshot storage is needed
        detail::Stepper st(cfg);
        Field u = u0;
        st.apply_mask(u.coeffs);
        Field uN = lowpass(u, N);

        BonaSmithRow row;
        row.cutoff = N;
        auto update = [&]() {
            Field diff(cfg.grid, true);
            for (std::size_t i = 0; i < diff.coeffs.size(); ++i)
                diff.coeffs[i] = u.coeffs[i] - uN.coeffs[i];
            row.sup_l2 = std::max(row.sup_l2, l2_norm(diff));
            row.sup_hs = std::max(row.sup_hs, sobolev_norm(diff, s));
        };
        update();
        double t = 0.0;
        long k = 0;
        const double tiny = 1e-12 * std::max(cfg.dt, cfg.horizon);
        while (t < cfg.horizon - tiny) {
            double h = std::min(cfg.dt, cfg.horizon - t);
            ++k;
            st.step(u.coeffs, h);
            st.step(uN.coeffs, h);
            if (!detail::finite_field(u.coeffs) || !detail::finite_field(uN.coeffs))
                throw std::runtime_error("blow-up or instability at step " + std::to_string(k));
            t = (h == cfg.dt) ? k * cfg.dt : cfg.horizon;
            if (k % cfg.diag_every == 0 || t >= cfg.horizon - tiny) update();
        }
        table.push_back(row);
    }
    return table;
}

}  // namespace fzk

#endif
