#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ck/errors.hpp"
#include "ck/indrep.hpp"
#include "ck/oracles.hpp"
#include "support.hpp"

using namespace ck;
using test::max_abs;

namespace {
constexpr double kPi = std::numbers::pi;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::vector<Signature> contracted(std::size_t n) {
  std::vector<Signature> out;
  for (const auto& s : all_signatures(n)) {
    if (s.branch(1).kind == BranchKind::parabolic) out.push_back(s);
  }
  return out;
}

// Smooth test function of the subgroup element through its matrix entries.
RepFunction matrix_function(const Signature& sig, double a, double b) {
  return [sig, a, b](const CanonicalParams& q) {
    const Matrix m = group_element(sig, q).matrix;
    const double s = m.bottomRightCorner(m.rows() - 1, m.cols() - 1).sum();
    return Complex(std::cos(a * s), std::sin(b * m(m.rows() - 1, 1)));
  };
}
}  // namespace

TEST_CASE("characters") {
  CHECK(character_eval(vec({0, 0}), vec({1, 2})) == Complex(1, 0));
  CHECK(std::abs(character_eval(vec({1, 0}), vec({kPi, 7})) - Complex(-1, 0)) <= 1e-15);
  CHECK(std::abs(character_eval(vec({2, 3}), vec({0.5, -1})) - std::polar(1.0, -2.0)) <= 1e-15);
  CHECK_THROWS_AS((void)character_eval(vec({1}), vec({1, 2})), DomainError);
}

TEST_CASE("geometry at the identity") {
  const Signature sig = parse_signature("d,i,1,d");
  const Vector x = vec({0.3, -1.2, 2.0, 0.7});
  const auto g = geometry(sig, zero_params(sig, 1), x);
  CHECK(max_abs(g.xt - x.head(3)) == 0.0);
  CHECK(max_abs(g.yt - x.head(3)) == 0.0);
  CHECK(max_abs(g.at) == 0.0);
  CHECK(max_abs(g.bt) == 0.0);
  CHECK(max_abs(transported(sig, zero_params(sig, 1), x) - x) == 0.0);

  const Signature hz = parse_signature("d,d");
  const auto h = geometry(hz, CanonicalParams{{{1, vec({0.8})}}}, vec({1.5, 2.5}));
  CHECK(h.u(0) == 0.0);
  CHECK(h.xt(0) == 1.5);
}

TEST_CASE("geometry agrees with the trigonometric formulas on the elliptic branch") {
  std::mt19937_64 rng(1);
  const Signature sig = parse_signature("d,1,1,1");
  for (int i = 0; i < 100; ++i) {
    const auto q = test::random_params(sig, rng, 0.9, 1);
    const Vector x = test::random_vector(rng, 4, 2.0);
    const auto g = geometry(sig, q, x);
    for (const auto& b : q.blocks) {
      const double norm = b.q.norm();
      const double qx = b.q.dot(x.tail(b.q.size()));
      const auto k = static_cast<Eigen::Index>(b.k - 1);
      const double xk = x(k);
      CHECK(norm * g.xt(k) == doctest::Approx(xk * std::sin(norm) + qx / norm * (1 - std::cos(norm))).epsilon(1e-12));
      CHECK(g.yt(k) == doctest::Approx(xk * std::cos(norm) + qx / norm * std::sin(norm)).epsilon(1e-12));
    }
  }
}

TEST_CASE("recurrence against the determinant") {
  const Signature sig = parse_signature("d,1,i,1");
  std::mt19937_64 rng(2);
  const auto q = test::random_params(sig, rng, 1.0, 1);
  const Vector x = test::random_vector(rng, 4, 1.0);
  const auto g = geometry(sig, q, x);
  const Vector d = dcoeffs(g);
  CHECK(d(0) == g.xt(0));
  CHECK(d(1) == doctest::Approx(g.xt(1) - d(0) * g.at(0, 1)));
  CHECK(dcoeffs_det(sig, q, x, 1) == g.xt(0));
  CHECK(dcoeffs_det(sig, q, x, 2) == doctest::Approx(g.xt(1) - g.at(0, 1) * g.xt(0)));
  CHECK_THROWS_AS((void)dcoeffs_det(sig, q, x, 4), DomainError);

  Matrix m(3, 3);
  m << 2, -1, 0, 4, 3, 1, -2, 5, 6;
  CHECK(cofactor_determinant(m) == 52.0);

  for (std::size_t n = 2; n <= 6; ++n) {
    for (int i = 0; i < 50; ++i) {
      std::vector<Branch> br{Branch::parabolic()};
      for (std::size_t m2 = 1; m2 < n; ++m2) {
        br.push_back(Branch{static_cast<BranchKind>(std::uniform_int_distribution<int>(0, 2)(rng))});
      }
      const Signature s(br);
      const auto qq = test::random_params(s, rng, 1.0, 1);
      const Vector xx = test::random_vector(rng, static_cast<Eigen::Index>(n), 1.0);
      const Vector dd = dcoeffs(s, qq, xx);
      for (std::size_t p = 1; p < n; ++p) {
        CHECK(std::abs(dd(static_cast<Eigen::Index>(p - 1)) - dcoeffs_det(s, qq, xx, p)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("transport against the adjoint matrix product") {
  const Signature circle = parse_signature("d,1");
  const Vector x = vec({0.4, -1.3});
  const double th = 0.9;
  Matrix rot(2, 2);
  rot << std::cos(-th), -std::sin(-th), std::sin(-th), std::cos(-th);
  CHECK(max_abs(transported(circle, CanonicalParams{{{1, vec({th})}}}, x) - rot * x) <= 1e-15);

  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const auto& sig : contracted(n)) {
      for (int i = 0; i < 20; ++i) {
        const auto q = test::random_params(sig, rng, 1.0, 1);
        const Vector v = test::random_vector(rng, static_cast<Eigen::Index>(n), 2.0);
        CHECK(max_abs(transported(sig, q, v) - oracle::transported(sig, q, v)) <= 1e-10);
      }
    }
  }

  // a null block: Q_1 = (1, 1, 0) with weights (1, -1, -1)
  const Signature sig = parse_signature("d,1,i,1");
  const CanonicalParams q{{{1, vec({1.0, 1.0, 0.0})}, {2, vec({0.2, 0.3})}, {3, vec({0.5})}}};
  CHECK(q_squared(sig, q.blocks[0]) == 0.0);
  const Vector v = vec({0.3, 0.1, -0.6, 1.1});
  CHECK(max_abs(transported(sig, q, v) - oracle::transported(sig, q, v)) <= 1e-10);
}

TEST_CASE("representation contexts") {
  CHECK_THROWS_AS((void)RepContext::real(parse_signature("1,1"), 1.0, 1), ConfigError);
  CHECK_THROWS_AS((void)RepContext::real(parse_signature("d,1"), 0.0, 1), ConfigError);
  CHECK_THROWS_AS((void)RepContext::real(parse_signature("d,1"), 1.0, 0), ConfigError);
  CHECK_THROWS_AS((void)RepContext::imaginary(parse_signature("d,1"), 1.0, 0, 1), ConfigError);
  CHECK_THROWS_AS((void)RepContext::imaginary(parse_signature("d,i,1"), 1.0, 2, 1), ConfigError);

  const auto im = RepContext::imaginary(parse_signature("d,i,1"), 1.5, 0, -1);
  CHECK(im.axis == 1);
  CHECK(max_abs(im.character() - vec({-1.5, 0, 0})) == 0.0);
  CHECK(RepContext::real(parse_signature("d,1,1"), 1.0, 1).families == 1);
  CHECK(RepContext::real(parse_signature("d,d"), 1.0, 1).families == 2);
}

TEST_CASE("operator examples") {
  const Signature sig = parse_signature("d,1,i");
  const auto ctx = RepContext::real(sig, 1.3, 1);
  const auto f = matrix_function(sig, 0.7, 0.4);
  std::mt19937_64 rng(4);
  const auto q0 = test::random_params(sig, rng, 0.8, 1);

  const SemidirectElement id{Vector::Zero(3), zero_params(sig, 1)};
  CHECK(std::abs(omega_apply(ctx, id, f, q0) - f(q0)) <= 1e-12);

  const Vector x = vec({0.5, -0.2, 0.9});
  const SemidirectElement t{x, zero_params(sig, 1)};
  const auto z = zero_params(sig, 1);
  CHECK(std::abs(omega_apply(ctx, t, f, z) - std::polar(1.0, 1.3 * 0.9) * f(z)) <= 1e-12);

  const auto ictx = RepContext::imaginary(sig, 0.8, 0, 1);
  CHECK(std::abs(sigma_apply(ictx, id, f, q0) - f(q0)) <= 1e-12);
  CHECK(std::abs(sigma_apply(ictx, t, f, z) - std::polar(1.0, 0.8 * x(ictx.axis - 1)) * f(z)) <= 1e-12);

  CHECK_THROWS_AS((void)omega_apply(ictx, t, f, z), ConfigError);
  CHECK_THROWS_AS((void)sigma_apply(ctx, t, f, z), ConfigError);
}

TEST_CASE("homomorphism") {
  std::mt19937_64 rng(5);
  for (const auto* text : {"d,1", "d,d", "d,i", "d,1,1", "d,i,1"}) {
    const Signature sig = parse_signature(text);
    const std::size_t n = sig.size();
    std::vector<RepContext> contexts{RepContext::real(sig, 1.1, 1), RepContext::real(sig, 0.6, -1)};
    if (admits_imaginary_radius(sig)) contexts.push_back(RepContext::imaginary(sig, 0.9, 0, 1));
    for (const auto& ctx : contexts) {
      for (int i = 0; i < 20; ++i) {
        const SemidirectElement g1{test::random_vector(rng, static_cast<Eigen::Index>(n), 1.5),
                                   test::random_params(sig, rng, 0.8, 1)};
        const SemidirectElement g2{test::random_vector(rng, static_cast<Eigen::Index>(n), 1.5),
                                   test::random_params(sig, rng, 0.8, 1)};
        const auto f = matrix_function(sig, test::uniform(rng, 0.2, 1.0), test::uniform(rng, 0.2, 1.0));
        const auto q0 = test::random_params(sig, rng, 0.8, 1);
        const Complex lhs = rep_apply(ctx, compose(sig, g1, g2), f, q0);
        const RepFunction inner = [&](const CanonicalParams& q) { return rep_apply(ctx, g2, f, q); };
        const Complex rhs = rep_apply(ctx, g1, inner, q0);
        CHECK(std::abs(lhs - rhs) <= 1e-8);
        CHECK(std::abs(std::abs(lhs / f(shifted_argument(sig, compose(sig, g1, g2).q, q0))) - 1.0) <= 1e-15);
      }
    }
  }
}

TEST_CASE("Heisenberg closed form") {
  const Signature hz = parse_signature("d,d");
  const auto f1 = [](double) { return Complex(1, 0); };
  CHECK(heisenberg_apply(1.0, 1, 2.0, 3.0, 0.5, f1, 1.0) == std::polar(1.0, 1.0));
  const auto f = [](double q) { return Complex(std::exp(-q * q), std::sin(q)); };
  CHECK(heisenberg_apply(2.0, -1, 0.0, 0.0, 0.0, f, 0.7) == f(0.7));

  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const double R = test::uniform(rng, 0.1, 3.0);
    const int sign = i % 2 ? 1 : -1;
    const double x1 = test::uniform(rng, -3, 3);
    const double x2 = test::uniform(rng, -3, 3);
    const double q = test::uniform(rng, -3, 3);
    const double q0 = test::uniform(rng, -3, 3);
    const auto ctx = RepContext::real(hz, R, sign);
    const RepFunction generic_f = [&](const CanonicalParams& p) { return f(p.blocks[0].q(0)); };
    const Complex generic =
        omega_apply(ctx, {vec({x1, x2}), CanonicalParams{{{1, vec({q})}}}}, generic_f, CanonicalParams{{{1, vec({q0})}}});
    CHECK(std::abs(generic - heisenberg_apply(R, sign, x1, x2, q, f, q0)) <= 1e-13);
  }
}

TEST_CASE("unitarity on the circle") {
  const Signature sig = parse_signature("d,1");
  constexpr int kPoints = 2048;
  std::mt19937_64 rng(7);
  const auto f = [](double t) { return Complex(std::exp(std::cos(t)), std::sin(2 * t)); };
  const auto g = [](double t) { return Complex(std::cos(3 * t), 1.0 / (2.0 + std::sin(t))); };
  const auto ctx = RepContext::real(sig, 1.7, 1);
  const auto inner = [&](const auto& a, const auto& b) {
    Complex s = 0;
    for (int i = 0; i < kPoints; ++i) {
      const double t = 2 * kPi * i / kPoints;
      s += std::conj(a(t)) * b(t);
    }
    return s * (2 * kPi / kPoints);
  };
  const Complex base = inner(f, g);
  for (int i = 0; i < 10; ++i) {
    const SemidirectElement el{test::random_vector(rng, 2, 2.0), CanonicalParams{{{1, vec({test::uniform(rng, 0, 2 * kPi)})}}}};
    const auto lift = [&](const auto& h) {
      return [&, h](double t) {
        const RepFunction rf = [&](const CanonicalParams& p) { return h(p.blocks[0].q(0)); };
        return omega_apply(ctx, el, rf, CanonicalParams{{{1, vec({t})}}});
      };
    };
    CHECK(std::abs(inner(lift(f), lift(g)) - base) <= 1e-6);
  }
}

TEST_CASE("contraction limit") {
  const std::vector<double> eps{1e-2, 1e-3, 1e-4};
  for (const auto* text : {"d,1", "d,d", "1,d", "d,1,d", "d,i,1"}) {
    const auto report = contraction_limit_check(parse_signature(text), eps);
    CHECK(report.pass());
    for (const auto& c : report.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
      CHECK(c.deviations.size() == eps.size());
    }
  }
  const auto circle = contraction_limit_check(parse_signature("d,1"), eps);
  REQUIRE(circle.checks.size() == 3);
  CHECK(circle.checks[2].identically_zero);

  CHECK_THROWS_AS((void)contraction_limit_check(parse_signature("1,1"), eps), ConfigError);
  CHECK_THROWS_AS((void)contraction_limit_check(parse_signature("d,1"), {1e-3}), ConfigError);
  CHECK_THROWS_AS((void)contraction_limit_check(parse_signature("d,1"), {0.5, 1e-3}), ConfigError);
}
