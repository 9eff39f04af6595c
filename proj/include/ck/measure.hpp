#pragma once

/**
 * @file measure.hpp
 * @brief Parameter domains of the canonical blocks, the invariant density
 *        prod_k VS(u_k)^{n-k-1} and Monte Carlo integration against it.
 *
 * Noncompact directions are cut to a user supplied box [-T, T]. Proposals are
 * uniform in the per-block bounding box of the (truncated) domain and the
 * estimator keeps rejected proposals with weight zero, so integrals over
 * domains without a closed-form volume stay unbiased.
 */

#include <cstdint>
#include <functional>
#include <string_view>

#include "ck/group.hpp"

namespace ck {

enum class DomainKind { real_ball, full_space, imaginary_ball, circle, line };

[[nodiscard]] std::string_view to_string(DomainKind k) noexcept;

struct DomainSpec {
  DomainKind kind = DomainKind::real_ball;
  std::size_t k = 0;
  Signature ambient;  ///< j^(k) = (j_{k+1}, ..., j_n)
  /// Imaginary ball whose constraint Q^2 >= -pi^2 holds everywhere because no
  /// weight is negative; the ball coincides with the whole space.
  bool constraint_vacuous = false;

  [[nodiscard]] bool contains(const Signature& sig, const Vector& q) const;
};

[[nodiscard]] DomainSpec domain(const Signature& sig, std::size_t k);

[[nodiscard]] double density(const Signature& sig, const CanonicalParams& params);

struct MeasureSample {
  CanonicalParams params;
  double weight = 0.0;
};

/// Counter-based generator: the value stream is a pure function of the key.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  [[nodiscard]] std::uint64_t next_u64();
  /// Uniform in [0, 1).
  [[nodiscard]] double uniform();
  [[nodiscard]] double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform proposals over the truncated domain box of blocks start..n-1.
class Sampler {
 public:
  /// Throws ConfigError if a noncompact direction needs truncation <= 0.
  Sampler(Signature sig, double truncation, std::size_t start = 0);

  [[nodiscard]] const Signature& signature() const noexcept { return sig_; }
  [[nodiscard]] double box_volume() const noexcept { return volume_; }

  /// Uniform point of the box; may fall outside the domain.
  [[nodiscard]] CanonicalParams propose(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) const;

  [[nodiscard]] bool contains(const CanonicalParams& params) const;

  /// Rejection sample inside the domain; weight = density.
  [[nodiscard]] MeasureSample sample(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) const;

 private:
  CanonicalParams draw(CounterRng& rng) const;

  Signature sig_;
  std::size_t start_;
  std::vector<DomainSpec> domains_;
  std::vector<Vector> lo_;
  std::vector<Vector> hi_;
  double volume_ = 1.0;
};

[[nodiscard]] MeasureSample sample(const Signature& sig, std::uint64_t seed, double truncation);

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

using ParamFunction = std::function<double(const CanonicalParams&)>;

inline constexpr std::size_t kSampleStreams = 64;

/**
 * @brief Monte Carlo estimate of the integral of f against the invariant measure.
 *
 * Sample i belongs to stream i mod kSampleStreams; streams may run on
 * separate threads and are merged in stream order, so the result does not
 * depend on the thread count. f must be pure.
 */
[[nodiscard]] Estimate integrate(const Signature& sig, const ParamFunction& f, std::size_t samples,
                                 std::uint64_t seed, double truncation, std::size_t start = 0,
                                 std::size_t threads = 0);

/// Canonical coordinates of g0 * q(params).
[[nodiscard]] CanonicalParams left_shift(const Signature& sig, const Matrix& g0, const CanonicalParams& params);
/// Canonical coordinates of q(params) * g0.
[[nodiscard]] CanonicalParams right_shift(const Signature& sig, const Matrix& g0, const CanonicalParams& params);

}  // namespace ck
