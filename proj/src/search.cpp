#include "werner/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "werner/hmatrix.hpp"
#include "werner/rng.hpp"
#include "werner/states.hpp"
#include "werner/threading.hpp"

namespace werner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_config(const SearchConfig& cfg) {
    if (cfg.d < 1) throw ConfigError("search: d must be >= 1");
    if (cfg.restarts < 1) throw ConfigError("search: restarts must be >= 1");
    if (cfg.max_iters < 1) throw ConfigError("search: max_iters must be >= 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("search: tol must be positive");
}

struct RestartResult {
    double value = kInf;
    MatrixQuadruple quadruple;
    int iterations = 0;
    bool done = false;
    std::vector<double> trace;
};

RestartResult run_two_copy_restart(const SearchConfig& cfg, int restart) {
    const Eigen::Index d = cfg.d;
    const Eigen::Index n = d * d;
    Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(restart)));

    CMat x, y;
    if (restart % 2 == 1) {
        // Structured start near the known-positive diagonal stratum:
        // diagonal X with positive entries, dense random Y.
        CVec diag(d);
        for (Eigen::Index i = 0; i < d; ++i) diag(i) = Complex(0.1 + rng.uniform(), 0.0);
        x = CMat(diag.asDiagonal());
        y = rng.cgaussian_matrix(d, d);
    } else {
        x = rng.cgaussian_matrix(d, d);
        y = rng.cgaussian_matrix(d, d);
    }
    const double scale = std::sqrt(x.squaredNorm() + y.squaredNorm());
    x /= scale;
    y /= scale;

    RestartResult result;
    CMat u, v;
    double prev = kInf;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        const EigenResult eh = hermitian_eig(build_H(x, y).H);
        const CVec wh = eh.eigenvectors.col(0);
        u = unvec(wh.head(n), d);
        v = unvec(wh.tail(n), d);
        result.trace.push_back(eh.eigenvalues(0));

        const EigenResult eg = hermitian_eig(build_G_polarized(u, v));
        const CVec wg = eg.eigenvectors.col(0);
        x = unvec(wg.head(n), d);
        y = unvec(wg.tail(n), d);
        result.trace.push_back(eg.eigenvalues(0));

        result.iterations = iter;
        if (prev - eg.eigenvalues(0) < cfg.tol) break;
        prev = eg.eigenvalues(0);
    }
    result.value = result.trace.back();
    result.quadruple = MatrixQuadruple{x, y, u, v};
    result.done = true;
    return result;
}

}  // namespace

SearchOutcome minimize_phi_alternating(const SearchConfig& cfg, const std::atomic<bool>* stop) {
    validate_config(cfg);
    if (cfg.d < 3) throw ConfigError("search: the two-copy form is studied for d >= 3");
    if (cfg.mode != SearchMode::TwoCopyPhi)
        throw ConfigError("minimize_phi_alternating: config mode must be two_copy_phi");

    std::vector<RestartResult> slots(static_cast<std::size_t>(cfg.restarts));
    parallel_for(slots.size(), resolve_threads(cfg.threads), [&](std::size_t r) {
        if (stop != nullptr && stop->load()) return;
        slots[r] = run_two_copy_restart(cfg, static_cast<int>(r));
    });

    SearchOutcome outcome;
    outcome.best_value = kInf;
    for (int r = 0; r < cfg.restarts; ++r) {
        RestartResult& slot = slots[r];
        if (slot.done) ++outcome.completed_restarts;
        if (slot.done && slot.value < outcome.best_value) {
            outcome.best_value = slot.value;
            outcome.best_quadruple = slot.quadruple;
            outcome.best_restart = r;
            outcome.iterations = slot.iterations;
        }
        if (slot.value < tol::candidate_threshold) {
            // Re-verify through the operator oracle before reporting: a
            // negative this deep must not rest on the H assembly alone.
            const double oracle = phi_oracle(slot.quadruple);
            if (oracle < tol::candidate_threshold)
                outcome.candidates.push_back(Candidate{slot.quadruple, slot.value, oracle, r});
        }
        outcome.traces.push_back(std::move(slot.trace));
    }
    return outcome;
}

namespace {

// One restart of the k = 1 alternating minimization; returns the smallest
// Rayleigh quotient seen along the iterates.
double run_one_copy_restart(const WernerFamily& fam, const SearchConfig& cfg,
                            std::uint64_t stream) {
    const Eigen::Index d = fam.d;
    Rng rng(stream);

    CVec xy = rng.cgaussian_vector(2 * d);
    xy.normalize();
    CVec x = xy.head(d), y = xy.tail(d);
    CVec u = CVec::Zero(d), v = CVec::Zero(d);

    const auto rayleigh = [&](double& best) {
        const PureStateVector psi = rank2_vector(x, u, y, v);
        const double norm2 = psi.amplitudes.squaredNorm();
        if (norm2 > tol::psi_norm_floor)
            best = std::min(best, eval_sigma_form(psi, fam, 1).value / norm2);
    };

    double best = kInf;
    double prev = kInf;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        const CMat m_uv = polarize_hermitian_form(2 * d, [&](const CVec& w) {
            return eval_sigma_form(rank2_vector(x, w.head(d), y, w.tail(d)), fam, 1).value;
        });
        const EigenResult eu = hermitian_eig(m_uv);
        u = eu.eigenvectors.col(0).head(d);
        v = eu.eigenvectors.col(0).tail(d);
        rayleigh(best);

        const CMat m_xy = polarize_hermitian_form(2 * d, [&](const CVec& w) {
            return eval_sigma_form(rank2_vector(w.head(d), u, w.tail(d), v), fam, 1).value;
        });
        const EigenResult ex = hermitian_eig(m_xy);
        x = ex.eigenvectors.col(0).head(d);
        y = ex.eigenvectors.col(0).tail(d);
        rayleigh(best);

        if (prev - ex.eigenvalues(0) < cfg.tol) break;
        prev = ex.eigenvalues(0);
    }
    return best;
}

}  // namespace

std::vector<ScanPoint> scan_one_distill(int d, const std::vector<double>& t_grid,
                                        const SearchConfig& cfg, const std::atomic<bool>* stop) {
    validate_config(cfg);
    if (d < 1) throw ConfigError("scan_one_distill: d must be >= 1");
    for (const double t : t_grid)
        if (!(t >= -1.0 && t <= 1.0))
            throw ConfigError("scan_one_distill: grid values must lie in [-1, 1]");

    std::vector<ScanPoint> scan;
    scan.reserve(t_grid.size());
    const unsigned threads = resolve_threads(cfg.threads);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        if (stop != nullptr && stop->load()) break;
        const WernerFamily fam{d, t_grid[ti]};
        std::vector<double> values(static_cast<std::size_t>(cfg.restarts), kInf);
        parallel_for(values.size(), threads, [&](std::size_t r) {
            if (stop != nullptr && stop->load()) return;
            const std::uint64_t stream =
                substream_seed(cfg.seed, ti * static_cast<std::uint64_t>(cfg.restarts) + r);
            values[r] = run_one_copy_restart(fam, cfg, stream);
        });
        if (std::any_of(values.begin(), values.end(), [](double v) { return v == kInf; }))
            break;  // a restart of this point was skipped: the point is incomplete
        scan.push_back(ScanPoint{t_grid[ti], *std::min_element(values.begin(), values.end())});
    }
    return scan;
}

bool monotonicity_report(const std::vector<ScanPoint>& scan) {
    for (std::size_t i = 1; i < scan.size(); ++i)
        if (scan[i].min_value > scan[i - 1].min_value + tol::monotonicity) return false;
    return true;
}

}  // namespace werner
