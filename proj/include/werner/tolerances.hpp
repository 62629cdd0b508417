// Central registry of numerical tolerances. Every threshold used by the
// library is pinned here so that tests, the CLI and the acceptance suite all
// agree on what "equal", "zero" and "positive definite" mean.
#pragma once

namespace werner::tol {

// hermitian_eig: relative Hermiticity requirement, ||M - M^dag|| <= herm_rel * max(1, ||M||_F).
inline constexpr double herm_rel = 1e-10;

// Schmidt rank: singular values below rank_rel * sigma_max count as zero.
inline constexpr double rank_rel = 1e-9;

// is_psd default: lambda_min >= -psd_rel * max(1, ||M||_F).
inline constexpr double psd_rel = 1e-12;

// Health checks: imaginary residue of values that are real by theory.
inline constexpr double sigma_imag_rel = 1e-10;   // <psi|sigma^k|psi>
inline constexpr double quad_imag_rel = 1e-12;    // z^dag H z

// Cross-formulation agreement (phi_vector / phi_matrix / oracle / H form).
inline constexpr double phi_rel = 1e-9;

// Residuals of the unitary covariance, parameter-mixing and invariance identities.
inline constexpr double identity_rel = 1e-10;

// Unitarity requirement on A, B inputs.
inline constexpr double unitary_rel = 1e-10;

// Conjecture evidence thresholds: lambda_min(H) >= -psd_evidence_rel * ||H||.
inline constexpr double psd_evidence_rel = 1e-9;

// Block decomposition of the diagonal case.
inline constexpr double decomp_rel = 1e-10;       // off-block residual vs ||H||
inline constexpr double subblock_rel = 1e-12;     // B' vs direct sum of G(i)
inline constexpr double pd_rel = 1e-10;           // PD means lambda_min > pd_rel * ||block||

// Genericity test.
inline constexpr double generic_det_rel = 1e-10;  // |det(aX+bY)| threshold vs (||X||+||Y||)^d
inline constexpr double gram_rank_rel = 1e-12;    // smaller Gram eigenvalue vs trace

// Determinant polynomial D = det H.
inline constexpr double det_zero_rel = 1e-12;     // screening: |D| < det_zero_rel * scale
// Confirmation of a screened zero, per eigenvalue: |D|^(1/n) < det_confirm_eig_rel * scale^(1/n)
// for a determinant of order n. Generic samples never get near this line
// (their order-normalized margins bottom out around e^-2.5 per eigenvalue),
// while pairs with identically vanishing D sit around e^-19 per eigenvalue.
inline constexpr double det_confirm_eig_rel = 1e-4;
inline constexpr double det_vanish_rel = 1e-9;    // identical-vanishing checks (d <= 2, dependent pairs)
inline constexpr double logdet_abs = 1e-6;        // log-space deviation of the det identities
inline constexpr double singular_lambda_rel = 1e-12;

// Continuation certification.
inline constexpr int continuation_retries = 5;
inline constexpr int continuation_depth = 20;
inline constexpr double continuation_margin = 10.0;  // lambda_min must exceed 10x step motion

// Alternating search.
inline constexpr double search_tol = 1e-12;
inline constexpr int search_max_iters = 500;
inline constexpr double candidate_threshold = -1e-6;  // restart flagged as counterexample candidate
inline constexpr double trace_slack = 1e-9;           // allowed float noise in monotone traces
inline constexpr double psi_norm_floor = 1e-12;       // Rayleigh guard for the one-copy scan
inline constexpr double monotonicity = 1e-7;          // scan min_value nonincreasing in t

}  // namespace werner::tol
