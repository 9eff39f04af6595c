#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ck/errors.hpp"
#include "ck/measure.hpp"
#include "ck/oracles.hpp"
#include "support.hpp"

using namespace ck;

namespace {
constexpr double kPi = std::numbers::pi;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Density of SO(3) integrated over ball x circle on a polar grid.
double so3_volume_by_quadrature() {
  // integrand in the ball |Q0| <= pi of R^2 is sin|Q0| / |Q0|; polar form
  // 2 pi * int_0^pi sin(r) dr = 4 pi, times the circle 2 pi.
  const Vector lo = vec({0.0});
  const Vector hi = vec({kPi});
  const double radial = oracle::grid_integral([](const Vector& r) { return 2 * kPi * std::sin(r(0)); }, lo, hi, 4000);
  return radial * 2 * kPi;
}
}  // namespace

TEST_CASE("domains") {
  CHECK(domain(parse_signature("1,1"), 1).kind == DomainKind::circle);
  CHECK(domain(parse_signature("d,1"), 0).kind == DomainKind::full_space);
  CHECK(domain(parse_signature("d,d"), 1).kind == DomainKind::line);
  CHECK(domain(parse_signature("1,i"), 1).kind == DomainKind::line);
  CHECK(domain(parse_signature("1,1"), 0).kind == DomainKind::real_ball);

  const DomainSpec ib = domain(parse_signature("i,1,1"), 0);
  CHECK(ib.kind == DomainKind::imaginary_ball);
  CHECK(ib.constraint_vacuous);
  const DomainSpec mixed = domain(parse_signature("i,i,1"), 0);
  CHECK(mixed.kind == DomainKind::imaginary_ball);
  CHECK_FALSE(mixed.constraint_vacuous);
  CHECK(mixed.contains(parse_signature("i,i,1"), vec({0.0, 3.0, 0.0})));
  CHECK_FALSE(mixed.contains(parse_signature("i,i,1"), vec({0.0, 4.0, 0.0})));

  CHECK_THROWS_AS((void)domain(parse_signature("1,1"), 2), DomainError);
}

TEST_CASE("density") {
  const Signature s = parse_signature("1,1");
  const CanonicalParams p{{{0, vec({0.6, 0.8})}, {1, vec({2.0})}}};
  CHECK(density(s, p) == doctest::Approx(std::sin(1.0)));

  CHECK(density(parse_signature("d,1"), p) == 1.0);

  const Signature h = parse_signature("i,1");
  CHECK(density(h, p) == doctest::Approx(std::sinh(1.0)));

  std::mt19937_64 rng(2);
  for (const auto& sig : all_signatures(3)) {
    auto q = test::random_params(sig, rng, 1.0);
    auto neg = q;
    for (auto& b : neg.blocks) b.q = -b.q;
    CHECK(density(sig, q) == doctest::Approx(density(sig, neg)).epsilon(1e-15));
    if (sig.branch(1).kind == BranchKind::parabolic) {
      auto without = q;
      without.blocks.erase(without.blocks.begin());
      CHECK(density(sig, q) == doctest::Approx(density(sig, without)).epsilon(1e-15));
    }
  }
}

TEST_CASE("sampling") {
  const Signature s = parse_signature("1,1");
  const auto a = sample(s, 99, 0.0);
  const auto b = sample(s, 99, 0.0);
  CHECK(test::max_abs(a.params.blocks[0].q - b.params.blocks[0].q) == 0.0);
  CHECK(a.weight == b.weight);

  const Sampler sampler(s, 0.0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto m = sampler.sample(5, 0, i);
    const double r = m.params.blocks[0].q.norm();
    CHECK(r <= kPi);
    CHECK(m.params.blocks[1].q(0) >= 0.0);
    CHECK(m.params.blocks[1].q(0) < 2 * kPi);
    CHECK(m.weight == doctest::Approx(std::sin(r) / r));
  }

  const Sampler e(parse_signature("d,1"), 10.0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto m = e.sample(5, 3, i);
    CHECK(m.params.blocks[0].q.cwiseAbs().maxCoeff() <= 10.0);
  }

  CHECK_THROWS_AS((void)sample(parse_signature("d,1"), 1, 0.0), ConfigError);
  CHECK_THROWS_AS((void)sample(parse_signature("1,i"), 1, -1.0), ConfigError);
}

TEST_CASE("volume of SO(3)") {
  const double oracle = so3_volume_by_quadrature();
  CHECK(oracle == doctest::Approx(8 * kPi * kPi).epsilon(1e-6));
  const auto est = integrate(parse_signature("1,1"), [](const CanonicalParams&) { return 1.0; }, 200000, 17, 0.0);
  CHECK(std::abs(est.estimate - oracle) <= 3 * est.std_error);

  // half of the domain by the q -> -q symmetry
  const auto half = integrate(
      parse_signature("1,1"), [](const CanonicalParams& p) { return p.blocks[0].q(0) > 0 ? 1.0 : 0.0; }, 200000, 18,
      0.0);
  CHECK(std::abs(half.estimate - oracle / 2) <= 3 * half.std_error);
}

TEST_CASE("integration is deterministic across thread counts") {
  const auto f = [](const CanonicalParams& p) { return std::cos(p.blocks[0].q(0)) + p.blocks[1].q(0); };
  const Signature s = parse_signature("1,1");
  const auto one = integrate(s, f, 5000, 4, 0.0, 0, 1);
  const auto many = integrate(s, f, 5000, 4, 0.0, 0, 8);
  CHECK(one.estimate == many.estimate);
  CHECK(one.std_error == many.std_error);
}

TEST_CASE("left and right invariance") {
  const Signature s = parse_signature("1,1");
  std::mt19937_64 rng(31);
  const auto f = [](const CanonicalParams& p) {
    const Matrix m = group_element(parse_signature("1,1"), p).matrix;
    return std::exp(m(0, 0)) + m(1, 2) * m(2, 1);
  };
  for (int i = 0; i < 3; ++i) {
    const Matrix g0 = group_element(s, test::random_params(s, rng, 1.5)).matrix;
    const auto base = integrate(s, f, 40000, 100 + i, 0.0);
    const auto left = integrate(s, [&](const CanonicalParams& p) { return f(left_shift(s, g0, p)); }, 40000, 200 + i, 0.0);
    const auto right =
        integrate(s, [&](const CanonicalParams& p) { return f(right_shift(s, g0, p)); }, 40000, 300 + i, 0.0);
    const auto combined = [](const Estimate& a, const Estimate& b) { return std::hypot(a.std_error, b.std_error); };
    CHECK(std::abs(base.estimate - left.estimate) <= 3 * combined(base, left));
    CHECK(std::abs(base.estimate - right.estimate) <= 3 * combined(base, right));
    CHECK(std::abs(left.estimate - right.estimate) <= 3 * combined(left, right));
  }
}
