// Werner-state machinery: flip operator, maximally entangled projector,
// partial transpose, the one-parameter family (rho, sigma), classification of
// its members and direct evaluation of <psi| sigma^{(x)k} |psi>. The direct
// evaluation is the oracle every other module is validated against.
#pragma once

#include "werner/linalg.hpp"

namespace werner {

struct WernerFamily {
    int d = 0;
    double t = 0.0;
};

// Throws ConfigError unless d >= 1 and -1 <= t <= 1.
void validate_family(const WernerFamily& fam);

enum class WernerClass {
    Separable,
    NptNotOneDistillable,
    OneDistillable,
};

const char* to_string(WernerClass c);

// Non-normalized pure state on k copies of the d x d bipartite system,
// amplitudes indexed by |i1, j1, i2, j2, ...> with i* on Alice's side and
// j* on Bob's, most significant digit first.
struct PureStateVector {
    int copies = 1;
    int d = 0;
    CVec amplitudes;
};

// F = sum_{i,j} |i,j><j,i| acting on C^d (x) C^d.
CMat flip_operator(int d);

// P = (1/d) sum_{i,j} |i,i><j,j|; rank-one projector onto the maximally
// entangled vector.
CMat me_projector(int d);

// Transpose of the second tensor factor: <i,j|M'|r,s> = <i,s|M|r,j>.
CMat partial_transpose(const CMat& m, int d);

struct WernerPair {
    CMat rho;    // 1 - t F
    CMat sigma;  // 1 - t d P = partial transpose of rho
};

WernerPair werner_pair(const WernerFamily& fam);

// Separable iff t <= 1/d; one-distillable iff t > 1/2.
WernerClass classify(const WernerFamily& fam);

// Evaluates <psi| sigma^{(x)k} |psi> by explicit construction of the k-fold
// tensor power. k in {1, 2}; throws UnsupportedCopies beyond that.
FormValue eval_sigma_form(const PureStateVector& psi, const WernerFamily& fam, int k);

// Rank of the d^k x d^k coefficient matrix across the Alice|Bob bipartition;
// singular values below tol::rank_rel * sigma_max count as zero.
int schmidt_rank(const PureStateVector& psi);

// k=2 Schmidt-rank-two vector psi = psi1 + psi2 with
// psi[i,j,a,b] = X(a,i) U(b,j) + Y(a,i) V(b,j)  (columns x_i, u_j, ...).
PureStateVector rank2_vector(const CMat& x, const CMat& u, const CMat& y, const CMat& v);

// k=1 counterpart psi = x (x) u + y (x) v.
PureStateVector rank2_vector(const CVec& x, const CVec& u, const CVec& y, const CVec& v);

}  // namespace werner
