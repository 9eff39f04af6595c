#pragma once

/**
 * @file orbits.hpp
 * @brief Adjoint and coadjoint actions of SO(n; j') on the translation
 *        characters of SO(n+1; iota, j') and the classification of orbits.
 *
 * All functions take the full signature (j_1, ..., j_n); only j_2..j_n enter,
 * j_1 is treated as the dual unit of the contracted group. Characters and
 * translation vectors have n components h_1..h_n stored at positions 0..n-1.
 */

#include <optional>
#include <string>
#include <vector>

#include "ck/group.hpp"

namespace ck {

/// Ad(s(Q_k)) on N(x): rotation_block with row and column 0 removed. Needs k >= 1.
[[nodiscard]] Matrix adjoint_block(const Signature& sig, const BlockParams& p);

/// Ad of a subgroup element, product of adjoint blocks in block order.
[[nodiscard]] Matrix adjoint(const Signature& sig, const CanonicalParams& params);

/// Ad*(s(Q_k)) = [Ad(s(-Q_k))]^T.
[[nodiscard]] Matrix coadjoint_block(const Signature& sig, const BlockParams& p);

[[nodiscard]] Matrix coadjoint(const Signature& sig, const CanonicalParams& params);

/// t(x): identity with x in column 0 below the diagonal.
[[nodiscard]] Matrix translation(const Vector& x);

/// Coefficients of the orbit equation: w_r = prod_{m=r+1}^{n} j_m^2 (w_n = 1).
[[nodiscard]] Vector orbit_weights(const Signature& sig);

[[nodiscard]] double orbit_invariant(const Signature& sig, const Vector& h);

enum class RadiusKind { positive, imaginary, zero };
enum class ZeroDegeneracy { none, point, lower_dimensional, cone };
enum class StabilizerKind { fix_axis_n, fix_axis_m };

[[nodiscard]] std::string_view to_string(RadiusKind k) noexcept;
[[nodiscard]] std::string_view to_string(ZeroDegeneracy d) noexcept;
[[nodiscard]] std::string_view to_string(StabilizerKind k) noexcept;

/// Q_{k r} = 0.
struct PinnedComponent {
  std::size_t k = 0;
  std::size_t r = 0;
};

struct StabilizerDescriptor {
  StabilizerKind kind = StabilizerKind::fix_axis_n;
  std::size_t axis = 0;                 ///< fixed character axis (n or m)
  std::vector<PinnedComponent> pinned;  ///< components forced to zero
  std::vector<std::size_t> absent;      ///< blocks that do not occur
};

struct OrbitClass {
  RadiusKind radius_kind = RadiusKind::zero;
  double value = 0.0;  ///< R, rho, or 0
  double invariant = 0.0;
  int families = 1;
  int sign = 1;  ///< +1 for M+ / P+ and -1 for M- / P-
  std::size_t axis = 0;
  Vector representative;
  ZeroDegeneracy degeneracy = ZeroDegeneracy::none;
  std::size_t subspace_dim = 0;  ///< for lower_dimensional orbits
  std::optional<StabilizerDescriptor> stabilizer;
  /// Axis chosen by the most-negative-weight fallback instead of the j_{m+1} = i pattern.
  bool axis_fallback = false;
  /// Family count read off the literal enumerations of the propositions
  /// (0 when they say nothing, i.e. zero radius).
  int enumerated_families = 0;
  bool enumeration_disagrees = false;
};

/// Family count per the connectedness rule: 1 if some rotation Y_{r,axis}
/// (r < axis) is compact after scaling by prod_{l=r+1}^{axis} j_l.
[[nodiscard]] int families_by_compactness(const Signature& sig, std::size_t axis);

/// Family counts as enumerated literally for positive and imaginary radius.
[[nodiscard]] int enumerated_families_positive(const Signature& sig);
[[nodiscard]] int enumerated_families_imaginary(const Signature& sig, std::size_t axis);

/// True iff the orbit equation can take negative values.
[[nodiscard]] bool admits_imaginary_radius(const Signature& sig);

/// Largest axis m with weight -1; nullopt if none.
[[nodiscard]] std::optional<std::size_t> imaginary_axis(const Signature& sig);

[[nodiscard]] OrbitClass classify_orbit(const Signature& sig, const Vector& h);

/// Throws UnsupportedError for zero-radius classes.
[[nodiscard]] StabilizerDescriptor stabilizer(const Signature& sig, const OrbitClass& cls);

/// Applies the stabilizer constraints to subgroup parameters (blocks 1..n-1).
[[nodiscard]] CanonicalParams constrain_to_stabilizer(const StabilizerDescriptor& desc, CanonicalParams params);

}  // namespace ck
