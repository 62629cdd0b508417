// The determinant polynomial D(X,Y) = det H(X,Y): overflow-safe evaluation,
// the two determinant identities (unitary invariance and the
// |det Lambda|^{2d^2} scaling law), randomized evidence that D does not
// vanish on generic pairs for d >= 3, and a continuation procedure that
// certifies positive definiteness of H by walking a path from a known-PD
// generic diagonal pair while tracking lambda_min.
#pragma once

#include <atomic>
#include <cstdint>
#include <utility>
#include <vector>

#include "werner/diagonal.hpp"
#include "werner/hmatrix.hpp"
#include "werner/linalg.hpp"

namespace werner {

struct DetRecord {
    int d = 0;
    CMat X, Y;
    double value = 0.0;    // product of eigenvalues; may overflow for large orders
    double log_abs = 0.0;  // log |D|, -inf when singular
    int sign = 0;
    bool generic = false;
};

DetRecord detH(const CMat& x, const CMat& y);

// log of prod_i (|m_ii| + sum_{j != i} |m_ij|): a dimensionally consistent
// magnitude reference for zero tests of determinants of this size.
double gershgorin_log_scale(const CMat& m);

// Screening test: |D| < tol::det_zero_rel * scale, evaluated in log space.
// Deliberately loose -- a few percent of healthy generic samples trip it and
// are cleared again by the confirmation stage below.
bool zero_candidate(double log_abs_det, double log_scale);

// Confirmation test for a screened sample, order-normalized so it means the
// same thing for every d: |D|^(1/order) < tol::det_confirm_eig_rel *
// scale^(1/order). Run against an independently computed (LU) determinant.
bool confirmed_zero(double log_abs_det, double log_scale, Eigen::Index order);

struct DetIdentityReport {
    // Relative log-magnitude deviation of D(AXB, AYB) = D(X, Y).
    double unitary_dev = 0.0;
    // Relative log-magnitude deviation of
    // D(aX+bY, cX+dY) = |ad - bc|^{2d^2} D(X, Y); for singular Lambda this
    // holds the ratio |D(mixed)| / gershgorin-scale instead (should be ~0).
    double gl_dev = 0.0;
    bool lambda_singular = false;
};

DetIdentityReport check_det_identities(const CMat& x, const CMat& y, const CMat& a, const CMat& b,
                                       const MoebiusParam& lam);

// Sample `index` of the non-vanishing experiment's ensemble: cycles through
// complex Gaussian, diagonal-plus-perturbation and identity-plus-rank-one
// pairs so structured near-zero strata are not missed by one distribution.
std::pair<CMat, CMat> det_ensemble_pair(int d, std::uint64_t seed, std::uint64_t index);

// Scalar per-sample facts, kept separate from the heavyweight DetRecord so a
// long run can stream them without storing every sampled matrix pair.
struct DetSampleRow {
    std::size_t index = 0;
    bool done = false;  // false when the run was interrupted before this slot
    bool generic = false;
    int sign = 0;
    double log_abs = 0.0;
    double log_margin = 0.0;  // log |D| - gershgorin log scale
    bool zero = false;
};

struct DetSampleSummary {
    int n_samples = 0;
    int n_generic = 0;
    double min_log_abs_D = 0.0;   // raw log |D|, minimum over generic samples
    double min_log_margin = 0.0;  // minimum of log |D| - log scale (zero line at log 1e-12)
    bool any_zero = false;
    std::vector<DetSampleRow> rows;  // one per requested sample, index order
    // Generic samples that tripped the screening threshold AND whose
    // independently computed LU determinant stayed below the tightened
    // order-normalized confirmation threshold.
    std::vector<DetRecord> zero_candidates;
};

// `stop` is an optional cooperative cancellation flag: slots not yet sampled
// when it flips stay `done = false` and are excluded from the aggregates.
DetSampleSummary sample_det_nonvanishing(int d, int n_samples, std::uint64_t seed,
                                         unsigned threads = 1,
                                         const std::atomic<bool>* stop = nullptr);

struct PathSample {
    double t = 0.0;
    double lambda_min = 0.0;
    double log_abs_det = 0.0;
    bool generic = false;
};

enum class ContinuationVerdict {
    PositiveDefinite,  // lambda_min > 0 with margin along the whole path
    NotCertified,      // a path sample had lambda_min <= 0 (candidate finding)
};

struct ContinuationPath {
    CMat X0, Y0;  // seeded generic diagonal start, PD by the diagonal theorem
    CMat X1, Y1;  // target pair
    std::vector<PathSample> samples;  // t strictly increasing from 0 to 1
    ContinuationVerdict verdict = ContinuationVerdict::NotCertified;
    int retries_used = 0;
    bool midpoint_perturbed = false;
};

// A path sample failed the genericity test even after re-seeded starts and a
// midpoint perturbation; carries the partial path for audit.
struct GenericityLost : Error {
    ContinuationPath path;
    GenericityLost(const std::string& msg, ContinuationPath p)
        : Error(msg), path(std::move(p)) {}
};

// Adaptive bisection hit its depth limit without establishing the
// eigenvalue-continuity margin; carries the partial path for audit.
struct CertificationInconclusive : Error {
    ContinuationPath path;
    CertificationInconclusive(const std::string& msg, ContinuationPath p)
        : Error(msg), path(std::move(p)) {}
};

// Straight-line walk from a seeded generic diagonal pair to (X1, Y1) with
// `steps` base samples; each interval must satisfy
// min(lambda_min) > 10 * ||H(t_{k+1}) - H(t_k)|| or it is bisected (depth
// limit tol::continuation_depth).
ContinuationPath certify_psd_continuation(const CMat& x1, const CMat& y1, int steps,
                                          std::uint64_t seed);

}  // namespace werner
