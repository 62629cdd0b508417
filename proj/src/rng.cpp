#include "werner/rng.hpp"

#include <cmath>

namespace werner {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master;
    const std::uint64_t mixed = splitmix64(state);
    state = mixed ^ (index * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    return splitmix64(state);
}

Complex Rng::cgaussian() {
    const double re = normal_(gen_);
    const double im = normal_(gen_);
    return Complex(re, im) / std::sqrt(2.0);
}

CMat Rng::cgaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    CMat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = cgaussian();
    return m;
}

CVec Rng::cgaussian_vector(Eigen::Index n) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cgaussian();
    return v;
}

CMat Rng::unitary(Eigen::Index d) {
    const CMat g = cgaussian_matrix(d, d);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace werner
