#pragma once

/**
 * @file algebra.hpp
 * @brief Matrix generators of so(n+1; j), structure constants and the
 *        second-order Casimir in the defining representation.
 *
 * Generator X_{mu,nu} (mu < nu) has entry (nu, mu) = 1 and entry
 * (mu, nu) = -prod_{m=mu+1}^{nu} j_m^2. Matrices are (n+1) x (n+1) with
 * rows and columns numbered 0..n.
 */

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ck/scalar.hpp"

namespace ck {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct GeneratorIndex {
  std::size_t mu = 0;
  std::size_t nu = 1;

  friend constexpr bool operator==(GeneratorIndex, GeneratorIndex) = default;
};

/// Element of so(n+1; j); the matrix satisfies M^T G + G M = 0.
struct AlgebraElement {
  Matrix matrix;
  Signature signature;
};

/// Single term coefficient * X_index of a structure-constant expansion.
struct BracketTerm {
  double coefficient = 0.0;
  GeneratorIndex index;
};

/// All valid indices (mu < nu <= n) in lexicographic order.
[[nodiscard]] std::vector<GeneratorIndex> generator_indices(const Signature& sig);

[[nodiscard]] AlgebraElement generator(const Signature& sig, GeneratorIndex idx);

/// Structure-constant expansion of [X_a, X_b]. An empty optional means the
/// pair does not chain and the bracket vanishes identically.
[[nodiscard]] std::optional<BracketTerm> bracket(const Signature& sig, GeneratorIndex a, GeneratorIndex b);

/// Matrix of a bracket expansion (zero matrix for the empty combination).
[[nodiscard]] Matrix expansion_matrix(const Signature& sig, const std::optional<BracketTerm>& term);

/// X(Q_k) = sum_s Q_{ks} X_{ks}, s = k+1..n. q has length n - k.
[[nodiscard]] AlgebraElement algebra_element(const Signature& sig, std::size_t k, const Vector& q);

/// The two sums of the second-order Casimir, kept apart so the vanishing of
/// the second one for parabolic j_1 can be observed directly.
struct CasimirParts {
  Matrix translations;  ///< sum_r (prod_{m=r+1}^n j_m^2) X_{0r}^2
  Matrix rotations;     ///< sum_{a<b} (prod_{m<=a} j_m^2)(prod_{l>b} j_l^2) X_{ab}^2
};

[[nodiscard]] CasimirParts casimir_parts(const Signature& sig);
[[nodiscard]] Matrix casimir(const Signature& sig);

}  // namespace ck
