#include "ck/oracles.hpp"

#include <cmath>

#include "ck/errors.hpp"

namespace ck::oracle {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

}  // namespace

Matrix expm(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Matrix generator(const Signature& sig, std::size_t mu, std::size_t nu) {
  const std::size_t n = sig.size();
  if (mu >= nu || nu > n) throw DomainError("oracle generator index out of range");
  double prod = 1.0;
  for (std::size_t m = mu + 1; m <= nu; ++m) prod *= sig.square(m);
  Matrix x = Matrix::Zero(idx(n + 1), idx(n + 1));
  x(idx(nu), idx(mu)) = 1.0;
  x(idx(mu), idx(nu)) = -prod;
  return x;
}

Matrix rotation_block(const Signature& sig, std::size_t k, const Vector& q) {
  const std::size_t n = sig.size();
  Matrix a = Matrix::Zero(idx(n + 1), idx(n + 1));
  for (std::size_t s = k + 1; s <= n; ++s) a += q(idx(s - k - 1)) * generator(sig, k, s);
  return expm(a);
}

Matrix group_element(const Signature& sig, const CanonicalParams& params) {
  const auto dim = idx(sig.size() + 1);
  Matrix m = Matrix::Identity(dim, dim);
  for (const auto& b : params.blocks) m = m * rotation_block(sig, b.k, b.q);
  return m;
}

Vector transported(const Signature& sig, const CanonicalParams& q0, const Vector& x) {
  const auto n = idx(sig.size());
  const Matrix k = oracle::group_element(sig, q0);
  Matrix kinv = Matrix::Identity(n + 1, n + 1);
  for (auto it = q0.blocks.rbegin(); it != q0.blocks.rend(); ++it) kinv = kinv * rotation_block(sig, it->k, -it->q);
  Matrix t = Matrix::Identity(n + 1, n + 1);
  t.block(1, 0, n, 1) = x;
  const Matrix conj = kinv * t * k;
  return conj.block(1, 0, n, 1);
}

double series_vc(double u, int terms) {
  // sum (-u)^m / (2m)!
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < terms; ++m) {
    term *= -u / ((2.0 * m - 1.0) * (2.0 * m));
    sum += term;
  }
  return sum;
}

double series_vs(double u, int terms) {
  // sum (-u)^m / (2m+1)!
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < terms; ++m) {
    term *= -u / ((2.0 * m) * (2.0 * m + 1.0));
    sum += term;
  }
  return sum;
}

double series_vg(double u, int terms) {
  // sum (-u)^m / (2m+2)!
  double term = 0.5;
  double sum = 0.5;
  for (int m = 1; m < terms; ++m) {
    term *= -u / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
    sum += term;
  }
  return sum;
}

double grid_integral(const std::function<double(const Vector&)>& f, const Vector& lo, const Vector& hi, int cells) {
  const Index d = lo.size();
  const Vector h = (hi - lo) / static_cast<double>(cells);
  std::vector<int> counter(static_cast<std::size_t>(d), 0);
  Vector point(d);
  double sum = 0.0;
  while (true) {
    for (Index i = 0; i < d; ++i) point(i) = lo(i) + (counter[static_cast<std::size_t>(i)] + 0.5) * h(i);
    sum += f(point);
    Index i = 0;
    for (; i < d; ++i) {
      if (++counter[static_cast<std::size_t>(i)] < cells) break;
      counter[static_cast<std::size_t>(i)] = 0;
    }
    if (i == d) break;
  }
  return sum * h.prod();
}

}  // namespace ck::oracle
