// Seeded random number utilities. Every randomized driver derives one
// independent substream per sample from a master seed, so results do not
// depend on evaluation order or worker count.
#pragma once

#include <cstdint>
#include <random>

#include "werner/linalg.hpp"

namespace werner {

// SplitMix64 step; used both as a stand-alone mixer and to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic seed for sample `index` under `master` (order-independent).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double gaussian() { return normal_(gen_); }
    double uniform() { return uniform_(gen_); }

    // Standard complex Gaussian: (N(0,1) + i N(0,1)) / sqrt(2).
    Complex cgaussian();

    CMat cgaussian_matrix(Eigen::Index rows, Eigen::Index cols);
    CVec cgaussian_vector(Eigen::Index n);

    // Haar-like unitary: QR of a complex Gaussian matrix with the phases of
    // the R diagonal folded back into Q.
    CMat unitary(Eigen::Index d);

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace werner
