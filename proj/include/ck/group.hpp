#pragma once

/**
 * @file group.hpp
 * @brief One-parameter blocks s(Q_k), the canonical product q = s(Q_0)...s(Q_{n-1}),
 *        the invariant metric and canonical-coordinate recovery.
 *
 * Block k acts on coordinates k..n. With w_r = prod_{m=k+2}^{r} j_m^2,
 * Q_k^2 = sum_r w_r Q_{kr}^2 and u = j_{k+1}^2 Q_k^2 the block is
 *
 *   (k,k)   VC(u)
 *   (s,k)   Q_{ks} VS(u)
 *   (k,r)   -j_{k+1}^2 w_r Q_{kr} VS(u)
 *   (s,r)   delta_{sr} - j_{k+1}^2 w_r Q_{ks} Q_{kr} VG(u)
 *
 * and the identity elsewhere. Null directions (Q_k^2 = 0, q != 0) and the
 * region Q_k^2 < 0 need no special casing.
 */

#include <vector>

#include "ck/algebra.hpp"

namespace ck {

/// Parameters Q_k = (Q_{k,k+1}, ..., Q_{kn}) of one block.
struct BlockParams {
  std::size_t k = 0;
  Vector q;
};

/// Blocks in strictly increasing k; a subgroup element starts at k = 1.
struct CanonicalParams {
  std::vector<BlockParams> blocks;
};

struct GroupElement {
  Matrix matrix;
  Signature signature;
};

inline constexpr double kIsometryTolerance = 1e-9;
inline constexpr double kRoundtripTolerance = 1e-8;
inline constexpr double kVsDegeneracyThreshold = 1e-7;

/// Weights w_r = prod_{m=k+2}^{r} j_m^2 for r = k+1..n (first weight is 1).
[[nodiscard]] Vector block_weights(const Signature& sig, std::size_t k);

/// (a, b)_k = sum_{r=k+1}^{n} w_r a_r b_r.
[[nodiscard]] double weighted_inner(const Signature& sig, std::size_t k, const Vector& a, const Vector& b);

[[nodiscard]] double q_squared(const Signature& sig, const BlockParams& p);

/// u = j_{k+1}^2 Q_k^2, the argument fed to the kernels.
[[nodiscard]] double block_argument(const Signature& sig, const BlockParams& p);

[[nodiscard]] GroupElement rotation_block(const Signature& sig, const BlockParams& p);

/// Ordered product of rotation blocks, lowest k leftmost.
[[nodiscard]] GroupElement group_element(const Signature& sig, const CanonicalParams& params);

/// s(-Q_{last}) ... s(-Q_{first}).
[[nodiscard]] GroupElement inverse(const Signature& sig, const CanonicalParams& params);

/// diag(1, j_1^2, j_1^2 j_2^2, ..., prod j^2).
[[nodiscard]] Matrix gram(const Signature& sig);

/// max |M^T G M - G|.
[[nodiscard]] double isometry_defect(const Signature& sig, const Matrix& m);

/// s(Q_0) F_0 = (VC(u), Q_{01} VS(u), ..., Q_{0n} VS(u)).
[[nodiscard]] Vector act_on_base_point(const Signature& sig, const BlockParams& p);

/// Zero parameters for blocks start..n-1.
[[nodiscard]] CanonicalParams zero_params(const Signature& sig, std::size_t start = 0);

/**
 * @brief Recovers canonical coordinates by peeling blocks left to right.
 *
 * At stage k column k of the residual is (VC(u), Q_k VS(u)); u comes from the
 * corner entry together with the weighted norm of the column, Q_k from the
 * column, and the residual is multiplied by s(-Q_k). start = 1 factorizes an
 * element of the stabilizer SO(n; j') of the base point.
 *
 * Throws PreconditionError when M is not an isometry of gram(sig) (or not in
 * the subgroup selected by start) and DegeneracyError when a stage admits no
 * canonical coordinates.
 */
[[nodiscard]] CanonicalParams factorize(const Signature& sig, const Matrix& m, std::size_t start = 0);

}  // namespace ck
