#pragma once

/**
 * @file indrep.hpp
 * @brief Induced unitary representations of SO(n+1; iota, j') = N(x) x| SO(n; j').
 *
 * Operators act on functions of the subgroup parameters:
 *
 *   (U(t(x) k(Q)) f)(Q0) = exp(+-i r <e_a, Ad(k^{-1}(Q0)) x>) f(k^{-1}(Q) k(Q0))
 *
 * with (r, a) = (R, n) on real-radius orbits and (rho, m) on imaginary-radius
 * orbits. The transported vector Ad(k^{-1}(Q0)) x is evaluated in closed form
 * through the rescaled coefficients below, which stay real and regular for
 * every branch and on null blocks. For blocks p < k and u_k = j_{k+1}^2 Q_k^2:
 *
 *   Xt_k  = x_k VS(u_k) + j_{k+1}^2 VG(u_k) (Q_k, x)
 *   Yt_k  = x_k VC(u_k) + j_{k+1}^2 VS(u_k) (Q_k, x)
 *   At_pk = Q_pk VS(u_k) + j_{k+1}^2 VG(u_k) (Q_p, Q_k)
 *   Bt_pk = Q_pk VC(u_k) + j_{k+1}^2 VS(u_k) (Q_p, Q_k)
 *   Dt_p  = Xt_p - sum_{s<p} Dt_s At_sp
 *
 * where (a, b) is the block-k weighted inner product. Then
 *   x^(n-1)_r = Yt_r - sum_{p<r} Dt_p Bt_pr      (r < n)
 *   x^(n-1)_n = x_n  - sum_{p<n} Dt_p Q_pn.
 */

#include <complex>
#include <functional>
#include <vector>

#include "ck/orbits.hpp"

namespace ck {

using Complex = std::complex<double>;

enum class RepFamily { real_radius, imaginary_radius };

/// Data selecting one induced representation. Build through the factories.
struct RepContext {
  Signature signature;
  RepFamily family = RepFamily::real_radius;
  double radius = 1.0;    ///< R or rho
  std::size_t axis = 0;   ///< n for real radius, m for imaginary radius
  int sign = 1;
  int families = 1;       ///< from the orbit classification of the character

  /// Throws ConfigError unless j_1 is parabolic and R > 0.
  [[nodiscard]] static RepContext real(const Signature& sig, double R, int sign);
  /// Throws ConfigError unless j_1 is parabolic, rho > 0 and the orbit equation
  /// has weight -1 at the axis. axis = 0 selects the classification axis.
  [[nodiscard]] static RepContext imaginary(const Signature& sig, double rho, std::size_t axis, int sign);

  /// h0 = sign * radius * e_axis.
  [[nodiscard]] Vector character() const;
};

/// Element t(x) k(Q) of the semidirect product; Q covers blocks 1..n-1.
struct SemidirectElement {
  Vector x;
  CanonicalParams q;
};

using RepFunction = std::function<Complex(const CanonicalParams&)>;

struct GeometryCoeffs {
  Vector xt;  ///< Xt_p, p = 1..n-1 at position p-1
  Vector yt;
  Matrix at;  ///< At_pk at (p-1, k-1), strictly upper triangular
  Matrix bt;
  Vector u;
};

/// exp(i <h, x>).
[[nodiscard]] Complex character_eval(const Vector& h, const Vector& x);

/// q must hold blocks 1..n-1 in order, x has n components.
[[nodiscard]] GeometryCoeffs geometry(const Signature& sig, const CanonicalParams& q, const Vector& x);

/// Dt_1..Dt_{n-1} by forward substitution.
[[nodiscard]] Vector dcoeffs(const Signature& sig, const CanonicalParams& q, const Vector& x);
[[nodiscard]] Vector dcoeffs(const GeometryCoeffs& g);

/// Dt_p as the p x p determinant with unit lower-triangular At columns and Xt
/// as last column, expanded by cofactors (1 <= p <= n-1).
[[nodiscard]] double dcoeffs_det(const Signature& sig, const CanonicalParams& q, const Vector& x, std::size_t p);

/// Laplace cofactor expansion along the first row.
[[nodiscard]] double cofactor_determinant(const Matrix& m);

/// Ad(k^{-1}(q)) x in closed form.
[[nodiscard]] Vector transported(const Signature& sig, const CanonicalParams& q, const Vector& x);

/// t(x1) k1 t(x2) k2 = t(x1 + Ad(k1) x2) k1 k2.
[[nodiscard]] SemidirectElement compose(const Signature& sig, const SemidirectElement& a, const SemidirectElement& b);

/// Exponent of the representation phase: sign * radius * x^(n-1)_axis at q0.
[[nodiscard]] double rep_phase_argument(const RepContext& ctx, const Vector& x, const CanonicalParams& q0);

/// Subgroup coordinates of k^{-1}(Q) k(Q0).
[[nodiscard]] CanonicalParams shifted_argument(const Signature& sig, const CanonicalParams& q,
                                               const CanonicalParams& q0);

/// Real-radius operator. Throws ConfigError for an imaginary-radius context.
[[nodiscard]] Complex omega_apply(const RepContext& ctx, const SemidirectElement& g, const RepFunction& f,
                                  const CanonicalParams& q0);

/// Imaginary-radius operator. Throws ConfigError for a real-radius context.
[[nodiscard]] Complex sigma_apply(const RepContext& ctx, const SemidirectElement& g, const RepFunction& f,
                                  const CanonicalParams& q0);

/// Dispatches on ctx.family.
[[nodiscard]] Complex rep_apply(const RepContext& ctx, const SemidirectElement& g, const RepFunction& f,
                                const CanonicalParams& q0);

/// Closed form for the Heisenberg group SO(3; iota, iota):
/// exp(+-i R (x2 - x1 Q0)) f(Q0 - Q).
[[nodiscard]] Complex heisenberg_apply(double R, int sign, double x1, double x2, double q12,
                                       const std::function<Complex(double)>& f, double q0_12);

struct ContractionCheck {
  std::string name;
  std::vector<double> deviations;  ///< one per epsilon
  double ratio = 0.0;              ///< deviation(1e-3) / deviation(1e-4), scaled for other pairs
  bool identically_zero = false;
  bool monotone = true;
  bool pass = false;
};

struct ContractionReport {
  Signature target;
  std::vector<double> epsilons;
  std::vector<ContractionCheck> checks;
  [[nodiscard]] bool pass() const;
};

/**
 * @brief Replaces every parabolic j of the target by a real eps and measures
 *        how rotation blocks, block products and the real-radius phase
 *        approach their parabolic values.
 *
 * epsilons must be decreasing values in (0, 0.1]; the ratio is taken between
 * the last two and normalized to a factor-of-ten step, so O(eps^2) gives 100.
 * A check passes when its deviations decrease monotonically and the ratio
 * lies in [50, 200], or when the quantity does not depend on eps at all.
 */
[[nodiscard]] ContractionReport contraction_limit_check(const Signature& target, const std::vector<double>& epsilons,
                                                        std::uint64_t seed = 7);

}  // namespace ck
