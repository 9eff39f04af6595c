#pragma once

#include <random>

#include "ck/group.hpp"

namespace ck::test {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index size, double scale) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = uniform(rng, -scale, scale);
  return v;
}

/// Blocks start..n-1 with components uniform in [-scale, scale].
inline CanonicalParams random_params(const Signature& sig, std::mt19937_64& rng, double scale, std::size_t start = 0) {
  CanonicalParams p;
  for (std::size_t k = start; k < sig.size(); ++k) {
    p.blocks.push_back({k, random_vector(rng, static_cast<Eigen::Index>(sig.size() - k), scale)});
  }
  return p;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ck::test
