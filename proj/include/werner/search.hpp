// Counterexample search by alternating smallest-eigenvector steps: Phi is a
// Hermitian quadratic form in (vec U; vec V) for fixed (X, Y) and vice versa,
// so each half-step is an exact block minimization at unit block norm. The
// single-copy variant scans <psi| sigma(t) |psi> over psi = x(x)u + y(x)v to
// reproduce the t = 1/2 one-distillability threshold.
#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "werner/linalg.hpp"
#include "werner/phi.hpp"

namespace werner {

enum class SearchMode {
    TwoCopyPhi,
    OneCopy,
};

struct SearchConfig {
    int d = 3;
    int restarts = 1;
    int max_iters = tol::search_max_iters;
    double tol = tol::search_tol;
    std::uint64_t seed = 0;
    SearchMode mode = SearchMode::TwoCopyPhi;
    double t = 0.5;          // one-copy only: the family parameter
    unsigned threads = 0;    // 0 resolves through WERNER_THREADS
};

// A restart that converged below the candidate threshold, kept only after
// the direct operator oracle confirmed the negative value.
struct Candidate {
    MatrixQuadruple quadruple;
    double search_value = 0.0;
    double oracle_value = 0.0;
    int restart = -1;
};

struct SearchOutcome {
    double best_value = 0.0;
    MatrixQuadruple best_quadruple;
    int best_restart = -1;
    int iterations = 0;                       // full sweeps used by the best restart
    int completed_restarts = 0;               // < restarts only after a stop request
    std::vector<std::vector<double>> traces;  // per restart, objective after each half-step
    std::vector<Candidate> candidates;
};

// Minimizes Phi over unit-block-norm quadruples; deterministic for a fixed
// seed independent of the worker count. Restarts not yet started when `stop`
// flips are skipped and leave an empty trace.
SearchOutcome minimize_phi_alternating(const SearchConfig& cfg,
                                       const std::atomic<bool>* stop = nullptr);

struct ScanPoint {
    double t = 0.0;
    double min_value = 0.0;  // min of <psi|sigma(t)|psi> / <psi|psi> over iterates
};

// Runs the k = 1 alternating minimization at every grid point. The block
// matrices are recovered by polarization from the state-module oracle, and
// the reported value is the scale-invariant Rayleigh quotient of the iterate.
// A stop request truncates the result to the grid points already finished.
std::vector<ScanPoint> scan_one_distill(int d, const std::vector<double>& t_grid,
                                        const SearchConfig& cfg,
                                        const std::atomic<bool>* stop = nullptr);

// True iff min_value never increases along the list by more than the
// monotonicity tolerance (the list is taken in the given order).
bool monotonicity_report(const std::vector<ScanPoint>& scan);

}  // namespace werner
