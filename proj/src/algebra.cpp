#include "ck/algebra.hpp"

#include "ck/errors.hpp"

namespace ck {

namespace {

void check_index(const Signature& sig, GeneratorIndex idx) {
  if (idx.mu >= idx.nu || idx.nu > sig.size()) {
    throw DomainError("invalid generator index (" + std::to_string(idx.mu) + ", " + std::to_string(idx.nu) + ")");
  }
}

std::optional<BracketTerm> ordered_bracket(const Signature& sig, GeneratorIndex a, GeneratorIndex b) {
  if (a.mu == b.mu && a.nu < b.nu) {
    return BracketTerm{sig.weight(a.mu + 1, a.nu), {a.nu, b.nu}};
  }
  if (a.mu < b.mu && a.nu == b.nu) {
    return BracketTerm{sig.weight(b.mu + 1, b.nu), {a.mu, b.mu}};
  }
  if (a.mu < b.mu && b.mu == a.nu && a.nu < b.nu) {
    return BracketTerm{-1.0, {a.mu, b.nu}};
  }
  return std::nullopt;
}

}  // namespace

std::vector<GeneratorIndex> generator_indices(const Signature& sig) {
  std::vector<GeneratorIndex> out;
  const std::size_t n = sig.size();
  for (std::size_t mu = 0; mu <= n; ++mu) {
    for (std::size_t nu = mu + 1; nu <= n; ++nu) out.push_back({mu, nu});
  }
  return out;
}

AlgebraElement generator(const Signature& sig, GeneratorIndex idx) {
  check_index(sig, idx);
  const auto dim = static_cast<Eigen::Index>(sig.size() + 1);
  Matrix m = Matrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(idx.nu), static_cast<Eigen::Index>(idx.mu)) = 1.0;
  m(static_cast<Eigen::Index>(idx.mu), static_cast<Eigen::Index>(idx.nu)) = -sig.weight(idx.mu + 1, idx.nu);
  return {std::move(m), sig};
}

std::optional<BracketTerm> bracket(const Signature& sig, GeneratorIndex a, GeneratorIndex b) {
  check_index(sig, a);
  check_index(sig, b);
  if (a == b) return std::nullopt;
  if (auto t = ordered_bracket(sig, a, b)) return t;
  if (auto t = ordered_bracket(sig, b, a)) {
    t->coefficient = -t->coefficient;
    return t;
  }
  return std::nullopt;
}

Matrix expansion_matrix(const Signature& sig, const std::optional<BracketTerm>& term) {
  const auto dim = static_cast<Eigen::Index>(sig.size() + 1);
  if (!term) return Matrix::Zero(dim, dim);
  return term->coefficient * generator(sig, term->index).matrix;
}

AlgebraElement algebra_element(const Signature& sig, std::size_t k, const Vector& q) {
  const std::size_t n = sig.size();
  if (k >= n) throw DomainError("block index " + std::to_string(k) + " out of range");
  if (static_cast<std::size_t>(q.size()) != n - k) {
    throw DomainError("block " + std::to_string(k) + " expects " + std::to_string(n - k) + " components, got " +
                      std::to_string(q.size()));
  }
  const auto dim = static_cast<Eigen::Index>(n + 1);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t s = k + 1; s <= n; ++s) {
    m += q(static_cast<Eigen::Index>(s - k - 1)) * generator(sig, {k, s}).matrix;
  }
  return {std::move(m), sig};
}

CasimirParts casimir_parts(const Signature& sig) {
  const std::size_t n = sig.size();
  const auto dim = static_cast<Eigen::Index>(n + 1);
  CasimirParts parts{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  for (std::size_t r = 1; r <= n; ++r) {
    const Matrix x = generator(sig, {0, r}).matrix;
    parts.translations += sig.weight(r + 1, n) * (x * x);
  }
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) {
      const double c = sig.weight(1, a) * sig.weight(b + 1, n);
      if (c == 0.0) continue;
      const Matrix x = generator(sig, {a, b}).matrix;
      parts.rotations += c * (x * x);
    }
  }
  return parts;
}

Matrix casimir(const Signature& sig) {
  auto parts = casimir_parts(sig);
  return parts.translations + parts.rotations;
}

}  // namespace ck
