#include <doctest.h>

#include "ck/algebra.hpp"
#include "ck/errors.hpp"
#include "ck/group.hpp"
#include "ck/oracles.hpp"
#include "support.hpp"

using namespace ck;
using test::max_abs;

namespace {
Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
}  // namespace

TEST_CASE("generator entries") {
  const Matrix x = generator(parse_signature("1,1"), {0, 1}).matrix;
  CHECK(x(1, 0) == 1.0);
  CHECK(x(0, 1) == -1.0);
  CHECK(x.cwiseAbs().sum() == 2.0);

  const Matrix d = generator(parse_signature("d,1"), {0, 1}).matrix;
  CHECK(d(1, 0) == 1.0);
  CHECK(d(0, 1) == 0.0);
  CHECK(d.cwiseAbs().sum() == 1.0);

  const Matrix h = generator(parse_signature("1,i"), {0, 2}).matrix;
  CHECK(h(2, 0) == 1.0);
  CHECK(h(0, 2) == 1.0);

  CHECK_THROWS_AS((void)generator(parse_signature("1,1"), {1, 1}), DomainError);
  CHECK_THROWS_AS((void)generator(parse_signature("1,1"), {0, 3}), DomainError);
}

TEST_CASE("generators are infinitesimal isometries and match the oracle") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& sig : all_signatures(n)) {
      const Matrix g = gram(sig);
      for (const auto idx : generator_indices(sig)) {
        const Matrix x = generator(sig, idx).matrix;
        CHECK(max_abs(x.transpose() * g + g * x) == 0.0);
        CHECK(max_abs(x - oracle::generator(sig, idx.mu, idx.nu)) == 0.0);
      }
    }
  }
}

TEST_CASE("bracket examples") {
  const auto a = bracket(parse_signature("1,1"), {0, 1}, {1, 2});
  REQUIRE(a);
  CHECK(a->coefficient == -1.0);
  CHECK(a->index == GeneratorIndex{0, 2});

  const auto b = bracket(parse_signature("1,i"), {0, 1}, {0, 2});
  REQUIRE(b);
  CHECK(b->coefficient == 1.0);
  CHECK(b->index == GeneratorIndex{1, 2});

  CHECK_FALSE(bracket(parse_signature("1,1,1"), {0, 1}, {2, 3}));
}

TEST_CASE("bracket matches the matrix commutator exhaustively") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& sig : all_signatures(n)) {
      const auto idx = generator_indices(sig);
      for (const auto a : idx) {
        for (const auto b : idx) {
          const Matrix lhs = commutator(oracle::generator(sig, a.mu, a.nu), oracle::generator(sig, b.mu, b.nu));
          CHECK(max_abs(lhs - expansion_matrix(sig, bracket(sig, a, b))) <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("Jacobi identity") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& sig : all_signatures(n)) {
      const auto idx = generator_indices(sig);
      for (const auto a : idx) {
        for (const auto b : idx) {
          for (const auto c : idx) {
            const Matrix x = generator(sig, a).matrix;
            const Matrix y = generator(sig, b).matrix;
            const Matrix z = generator(sig, c).matrix;
            const Matrix j = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                             commutator(z, commutator(x, y));
            CHECK(max_abs(j) <= 1e-13);
          }
        }
      }
    }
  }
}

TEST_CASE("algebra elements") {
  const Signature s = parse_signature("1,1");
  CHECK(max_abs(algebra_element(s, 0, Vector::Zero(2)).matrix) == 0.0);
  Vector th(1);
  th << 0.7;
  CHECK(max_abs(algebra_element(s, 1, th).matrix - 0.7 * generator(s, {1, 2}).matrix) == 0.0);

  Vector ab(2);
  ab << 2.0, -3.0;
  const Matrix t = algebra_element(parse_signature("d,1"), 0, ab).matrix;
  Matrix expect = Matrix::Zero(3, 3);
  expect(1, 0) = 2.0;
  expect(2, 0) = -3.0;
  CHECK(max_abs(t - expect) == 0.0);

  CHECK_THROWS_AS((void)algebra_element(s, 0, Vector::Zero(1)), DomainError);
  CHECK_THROWS_AS((void)algebra_element(s, 2, Vector::Zero(0)), DomainError);
}

TEST_CASE("Casimir examples") {
  CHECK(max_abs(casimir(parse_signature("1,1")) + 2.0 * Matrix::Identity(3, 3)) <= 1e-15);

  const auto parts = casimir_parts(parse_signature("d,1"));
  CHECK(max_abs(parts.rotations) == 0.0);

  const Signature hz = parse_signature("d,d");
  const Matrix x02 = generator(hz, {0, 2}).matrix;
  CHECK(max_abs(casimir(hz) - x02 * x02) == 0.0);
}

TEST_CASE("Casimir is central") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& sig : all_signatures(n)) {
      const Matrix c = casimir(sig);
      for (const auto idx : generator_indices(sig)) {
        CHECK(max_abs(commutator(c, generator(sig, idx).matrix)) <= 1e-12);
      }
      if (sig.branch(1).kind == BranchKind::parabolic) CHECK(max_abs(casimir_parts(sig).rotations) == 0.0);
    }
  }
}
