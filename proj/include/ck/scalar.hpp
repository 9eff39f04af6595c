#pragma once

/**
 * @file scalar.hpp
 * @brief Branch labels, signatures and the branch-uniform trigonometric kernels.
 *
 * Every trigonometric expression of the Cayley-Klein formulas is evaluated
 * through three entire functions of u = j^2 Q^2:
 *
 *   VC(u) = cos(sqrt u)                 cosh(sqrt(-u))             for u < 0
 *   VS(u) = sin(sqrt u) / sqrt u        sinh(sqrt(-u)) / sqrt(-u)  for u < 0
 *   VG(u) = (1 - cos(sqrt u)) / u       (cosh(sqrt(-u)) - 1) / -u  for u < 0
 *
 * with VC(0) = VS(0) = 1 and VG(0) = 1/2. Since only squares of the branch
 * parameters ever appear, no imaginary or nilpotent scalar exists at runtime.
 */

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ck {

enum class BranchKind { elliptic, parabolic, hyperbolic };

/// One Cayley-Klein parameter j_m: 1, the dual unit iota, or the imaginary unit i.
struct Branch {
  BranchKind kind = BranchKind::elliptic;

  /// j^2: +1, 0 or -1.
  [[nodiscard]] constexpr int square() const noexcept {
    switch (kind) {
      case BranchKind::elliptic: return 1;
      case BranchKind::parabolic: return 0;
      case BranchKind::hyperbolic: return -1;
    }
    return 1;
  }

  /// Token used by the text format: "1", "d" or "i".
  [[nodiscard]] char token() const noexcept;

  friend constexpr bool operator==(Branch, Branch) = default;

  static constexpr Branch elliptic() { return {BranchKind::elliptic}; }
  static constexpr Branch parabolic() { return {BranchKind::parabolic}; }
  static constexpr Branch hyperbolic() { return {BranchKind::hyperbolic}; }
};

/**
 * @brief Ordered parameters (j_1, ..., j_n) selecting SO(n+1; j).
 *
 * Indices are 1-based to match the usual j_m numbering. Besides the exact
 * branch labels a signature carries the numeric squares used by every
 * formula. These coincide with the labels' squares except for signatures
 * produced by deformed(), where each parabolic slot carries eps^2; that is
 * how the contraction limit is probed numerically.
 */
class Signature {
 public:
  explicit Signature(std::vector<Branch> branches);

  [[nodiscard]] std::size_t size() const noexcept { return branches_.size(); }
  [[nodiscard]] Branch branch(std::size_t m) const;
  [[nodiscard]] const std::vector<Branch>& branches() const noexcept { return branches_; }

  /// Numeric j_m^2 (1-based).
  [[nodiscard]] double square(std::size_t m) const;

  /// prod_{m=a}^{b} j_m^2 as a double; empty range (b < a) gives 1.
  [[nodiscard]] double weight(std::size_t a, std::size_t b) const;

  /// Sub-signature j^(k) = (j_{k+1}, ..., j_n).
  [[nodiscard]] Signature tail(std::size_t k) const;

  /// Copy in which every parabolic j is replaced by the real number eps.
  [[nodiscard]] Signature deformed(double eps) const;
  [[nodiscard]] bool is_deformed() const noexcept { return deformed_; }

  /// Text form, e.g. "d,1,i".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.branches_ == b.branches_ && a.squares_ == b.squares_;
  }

 private:
  std::vector<Branch> branches_;
  std::vector<double> squares_;
  bool deformed_ = false;
};

/// Parses "1", "i", "d" tokens separated by commas. Throws DomainError naming
/// the offending token. Requires at least two entries.
[[nodiscard]] Signature parse_signature(std::string_view text);

/// All 3^n signatures of length n, in lexicographic order over (1, d, i).
[[nodiscard]] std::vector<Signature> all_signatures(std::size_t n);

/// Threshold below which the kernels switch to their Taylor polynomials.
inline constexpr double kKernelSeriesThreshold = 1e-4;

[[nodiscard]] double kernel_vc(double u);
[[nodiscard]] double kernel_vs(double u);
[[nodiscard]] double kernel_vg(double u);

/// prod_{m=a}^{b} sigma_m over the branch labels: +1, 0 or -1 (empty = +1).
[[nodiscard]] int sigma_product(const Signature& sig, std::size_t a, std::size_t b);

enum class Compactness { compact, parabolic, hyperbolic };

[[nodiscard]] std::string_view to_string(Compactness c) noexcept;

/// Type of a generator scaled by prod_{m=a}^{b} j_m (the unsquared product).
[[nodiscard]] Compactness compactness(const Signature& sig, std::size_t a, std::size_t b);

}  // namespace ck
