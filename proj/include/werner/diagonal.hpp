// Block structure of H for diagonal X = diag(lambda), Y = diag(mu): a
// permutation splits H into d^2 - d two-by-two blocks H(p) plus one block of
// order 2d whose PSD part decomposes further into the 2x2 blocks G(i). Used
// to verify that generic diagonal pairs give a positive definite H.
#pragma once

#include <vector>

#include "werner/hmatrix.hpp"
#include "werner/linalg.hpp"

namespace werner {

struct DiagonalPair {
    int d = 0;
    CVec lambda;  // diagonal of X
    CVec mu;      // diagonal of Y
};

// Throws ConfigError unless both vectors have length d >= 1.
void validate_pair(const DiagonalPair& pair);

// General genericity test: {X, Y} linearly independent (2x2 Gram rank 2) and
// det(aX + bY) != 0 for some (a, b) from a fixed trial set plus seeded
// random retries.
bool is_generic(const CMat& x, const CMat& y);

// Exact rule for diagonal pairs: vectors independent and no index k with
// lambda_k = mu_k = 0.
bool is_generic(const DiagonalPair& pair);

// H(p) = sum_k c_k [[|l_k|^2, conj(l_k) m_k], [l_k conj(m_k), |m_k|^2]] with
// c_i = c_j = 1/2 and c_k = 1 otherwise; i, j one-based, i != j.
CMat small_block(const DiagonalPair& pair, int i, int j);

// G(i) = the same sum restricted to k != i with unit weights; i one-based.
CMat sub_block_G(const DiagonalPair& pair, int i);

struct SmallBlockEntry {
    int i = 0;     // one-based row label
    int j = 0;     // one-based column label, j != i
    int p = 0;     // (i-1)d + j, the one-based H index the block pairs with p+d^2
    CMat block;    // 2x2 Hermitian
    RVec weights;  // c_1..c_d
};

struct BlockDecomposition {
    std::vector<Eigen::Index> permutation;      // row r of PI H PI^T is row permutation[r] of H
    std::vector<SmallBlockEntry> small_blocks;  // d^2 - d entries in (i, j) order
    CMat big_block;                             // 2d x 2d, basis (u_1..u_d, v_1..v_d)
    std::vector<CMat> sub_blocks;               // G(1)..G(d)
    double residual = 0.0;                      // off-block mass of PI H PI^T
};

// Builds the permutation, extracts all blocks from build_H(diag l, diag m)
// and cross-checks them against the closed-form small_block / sub_block_G
// expressions. Throws DecompositionMismatch when anything is off.
BlockDecomposition decompose(const DiagonalPair& pair);

struct TheoremReport {
    bool generic = false;
    bool all_small_pd = false;
    bool big_pd = false;
    double lambda_min_H = 0.0;
    double min_block_eig = 0.0;
    double residual = 0.0;
    double norm_H = 0.0;  // Frobenius norm, the scale for PSD slack tests
};

// Generic pairs must yield PD small blocks, PD big block and lambda_min > 0;
// non-generic pairs are reported without assertion (PSD still expected).
TheoremReport verify_theorem(const DiagonalPair& pair);

}  // namespace werner
