#pragma once

/**
 * @file oracles.hpp
 * @brief Slow reference computations used to cross-check the closed forms.
 *
 * Nothing here calls into the closed-form paths of the library: generators
 * are assembled entry by entry, exponentials go through a Taylor series,
 * integrals through a midpoint grid.
 */

#include <functional>

#include "ck/algebra.hpp"
#include "ck/group.hpp"

namespace ck::oracle {

/// exp(A) by scaling and squaring around an 18-term Taylor core.
[[nodiscard]] Matrix expm(const Matrix& a);

/// Generator X_{mu nu} written out from the squares of the signature.
[[nodiscard]] Matrix generator(const Signature& sig, std::size_t mu, std::size_t nu);

/// exp(sum_s q_s X_{k s}).
[[nodiscard]] Matrix rotation_block(const Signature& sig, std::size_t k, const Vector& q);

/// Product of oracle rotation blocks.
[[nodiscard]] Matrix group_element(const Signature& sig, const CanonicalParams& params);

/// Translation part of k(Q0)^{-1} t(x) k(Q0), i.e. Ad(k^{-1}(Q0)) x.
[[nodiscard]] Vector transported(const Signature& sig, const CanonicalParams& q0, const Vector& x);

/// Power series of the kernels, `terms` terms each.
[[nodiscard]] double series_vc(double u, int terms = 20);
[[nodiscard]] double series_vs(double u, int terms = 20);
[[nodiscard]] double series_vg(double u, int terms = 20);

/// Midpoint rule on the box [lo, hi] with `cells` points per axis.
[[nodiscard]] double grid_integral(const std::function<double(const Vector&)>& f, const Vector& lo, const Vector& hi,
                                   int cells);

}  // namespace ck::oracle
