#pragma once

#include "freespec/linalg.hpp"

#include <cstdint>
#include <string_view>

namespace freespec {

/**
 * Deterministic, platform-independent random source (xoshiro256** seeded via
 * splitmix64, Box-Muller normals).  Every randomized routine in the library
 * takes an explicit seed; per-trial seeds come from derive_seed so that
 * concurrent and serial runs of a suite produce identical reports.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    /// Standard real normal.
    double normal();
    /// Standard complex normal (variance 1: re and im each N(0, 1/2)).
    Complex cnormal();

    Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
    /// Haar-ish unitary: QR of a complex Gaussian with R-diagonal phase fix.
    Matrix unitary(Eigen::Index n);

private:
    std::uint64_t s_[4];
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Per-trial seed: avalanche mix of master seed, a label, and a trial index.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index);

}  // namespace freespec
