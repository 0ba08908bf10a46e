#pragma once

#include <cstdint>
#include <random>

#include "costbound/common.hpp"

namespace costbound {

using Rng = std::mt19937_64;

/// Independent per-sample seed derived from a run seed (SplitMix64 mix), so
/// sample i is reproducible regardless of how samples are scheduled.
std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t index);

double standard_normal(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

CVector complex_gaussian_vector(Eigen::Index dim, Rng& rng);

/// GUE sample rescaled to unit operator norm.
CMatrix gue_unit_norm(Eigen::Index dim, Rng& rng);

/// Haar-random unitary via QR of a complex Ginibre matrix.
CMatrix haar_unitary(Eigen::Index dim, Rng& rng);

}  // namespace costbound
