#include "ck/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ck/errors.hpp"

namespace ck {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_block(const Signature& sig, const BlockParams& p) {
  const std::size_t n = sig.size();
  if (p.k >= n) throw DomainError("block index " + std::to_string(p.k) + " out of range");
  if (static_cast<std::size_t>(p.q.size()) != n - p.k) {
    throw DomainError("block " + std::to_string(p.k) + " expects " + std::to_string(n - p.k) + " components, got " +
                      std::to_string(p.q.size()));
  }
  if (!p.q.allFinite()) throw DomainError("block " + std::to_string(p.k) + " has non-finite components");
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Vector block_weights(const Signature& sig, std::size_t k) {
  const std::size_t n = sig.size();
  if (k >= n) throw DomainError("block index " + std::to_string(k) + " out of range");
  Vector w(idx(n - k));
  double acc = 1.0;
  for (std::size_t r = k + 1; r <= n; ++r) {
    if (r >= k + 2) acc *= sig.square(r);
    w(idx(r - k - 1)) = acc;
  }
  return w;
}

double weighted_inner(const Signature& sig, std::size_t k, const Vector& a, const Vector& b) {
  const Vector w = block_weights(sig, k);
  if (a.size() != w.size() || b.size() != w.size()) {
    throw DomainError("weighted_inner: vectors must have length " + std::to_string(w.size()));
  }
  return (w.array() * a.array() * b.array()).sum();
}

double q_squared(const Signature& sig, const BlockParams& p) {
  check_block(sig, p);
  return weighted_inner(sig, p.k, p.q, p.q);
}

double block_argument(const Signature& sig, const BlockParams& p) {
  return sig.square(p.k + 1) * q_squared(sig, p);
}

GroupElement rotation_block(const Signature& sig, const BlockParams& p) {
  check_block(sig, p);
  const std::size_t n = sig.size();
  const std::size_t k = p.k;
  const Vector w = block_weights(sig, k);
  const double sigma = sig.square(k + 1);
  const double u = sigma * (w.array() * p.q.array().square()).sum();
  const double vc = kernel_vc(u);
  const double vs = kernel_vs(u);
  const double vg = kernel_vg(u);

  Matrix m = Matrix::Identity(idx(n + 1), idx(n + 1));
  const Index d = idx(n - k);
  const Index kk = idx(k);
  m(kk, kk) = vc;
  m.block(kk + 1, kk, d, 1) = p.q * vs;
  const Vector wq = w.cwiseProduct(p.q);
  m.block(kk, kk + 1, 1, d) = (-sigma * vs) * wq.transpose();
  m.block(kk + 1, kk + 1, d, d) -= (sigma * vg) * (p.q * wq.transpose());
  return {std::move(m), sig};
}

GroupElement group_element(const Signature& sig, const CanonicalParams& params) {
  const auto dim = idx(sig.size() + 1);
  Matrix m = Matrix::Identity(dim, dim);
  std::size_t next = 0;
  bool first = true;
  for (const auto& b : params.blocks) {
    if (!first && b.k < next) throw DomainError("canonical blocks must have strictly increasing k");
    first = false;
    next = b.k + 1;
    m = m * rotation_block(sig, b).matrix;
  }
  return {std::move(m), sig};
}

GroupElement inverse(const Signature& sig, const CanonicalParams& params) {
  const auto dim = idx(sig.size() + 1);
  Matrix m = Matrix::Identity(dim, dim);
  for (auto it = params.blocks.rbegin(); it != params.blocks.rend(); ++it) {
    m = m * rotation_block(sig, {it->k, -it->q}).matrix;
  }
  return {std::move(m), sig};
}

Matrix gram(const Signature& sig) {
  const std::size_t n = sig.size();
  Vector d(idx(n + 1));
  d(0) = 1.0;
  for (std::size_t k = 1; k <= n; ++k) d(idx(k)) = d(idx(k - 1)) * sig.square(k);
  return d.asDiagonal();
}

double isometry_defect(const Signature& sig, const Matrix& m) {
  const Matrix g = gram(sig);
  if (m.rows() != g.rows() || m.cols() != g.cols()) throw DomainError("matrix size does not match signature");
  return max_abs(m.transpose() * g * m - g);
}

Vector act_on_base_point(const Signature& sig, const BlockParams& p) {
  if (p.k != 0) throw DomainError("act_on_base_point needs the k = 0 block");
  const double u = block_argument(sig, p);
  Vector x(p.q.size() + 1);
  x(0) = kernel_vc(u);
  x.tail(p.q.size()) = p.q * kernel_vs(u);
  return x;
}

CanonicalParams zero_params(const Signature& sig, std::size_t start) {
  CanonicalParams out;
  for (std::size_t k = start; k < sig.size(); ++k) out.blocks.push_back({k, Vector::Zero(idx(sig.size() - k))});
  return out;
}

CanonicalParams factorize(const Signature& sig, const Matrix& m, std::size_t start) {
  const std::size_t n = sig.size();
  const auto dim = idx(n + 1);
  if (m.rows() != dim || m.cols() != dim) throw DomainError("matrix size does not match signature");
  if (start >= n) throw DomainError("factorize start must be below n");
  if (!m.allFinite()) throw PreconditionError("matrix has non-finite entries");

  const double scale = std::max(1.0, max_abs(m));
  const double defect = isometry_defect(sig, m);
  if (defect > kIsometryTolerance * scale * scale) {
    throw PreconditionError("matrix does not preserve the metric (defect " + std::to_string(defect) + ")");
  }
  const double stage_tol = kRoundtripTolerance * scale * scale;

  Matrix residual = m;
  for (std::size_t k = 0; k < start; ++k) {
    Vector e = Vector::Zero(dim);
    e(idx(k)) = 1.0;
    if ((residual.col(idx(k)) - e).cwiseAbs().maxCoeff() > stage_tol ||
        (residual.row(idx(k)).transpose() - e).cwiseAbs().maxCoeff() > stage_tol) {
      throw PreconditionError("matrix is not in the subgroup fixing axis " + std::to_string(k));
    }
  }

  CanonicalParams out;
  for (std::size_t k = start; k < n; ++k) {
    const Index kk = idx(k);
    const Index d = idx(n - k);
    const double c = residual(kk, kk);
    const Vector col = residual.block(kk + 1, kk, d, 1);
    const Vector w = block_weights(sig, k);
    const double sigma = sig.square(k + 1);
    const double s2 = sigma * (w.array() * col.array().square()).sum();

    double u = 0.0;
    double theta = 0.0;
    bool trig = true;
    if (sigma == 0.0) {
      if (std::fabs(c - 1.0) > stage_tol) {
        throw PreconditionError("parabolic stage " + std::to_string(k) + " has corner entry " + std::to_string(c));
      }
    } else if (s2 < -stage_tol && c < 0.0) {
      // c^2 = 1 - s2 > 1 with c < -1: a single block has corner VC(u) >= -1,
      // so this element is not reached by real canonical parameters.
      throw DegeneracyError(k, "corner entry " + std::to_string(c) + " below -1 is outside the canonical chart");
    } else if (s2 >= 0.0 || c <= 1.0) {
      theta = std::atan2(std::sqrt(std::max(s2, 0.0)), c);
      u = theta * theta;
    } else {
      theta = std::asinh(std::sqrt(-s2));
      u = -theta * theta;
      trig = false;
    }

    Vector q;
    const double vs = kernel_vs(u);
    if (std::fabs(vs) >= kVsDegeneracyThreshold) {
      q = col / vs;
    } else if (trig && s2 > 0.0 && col.cwiseAbs().maxCoeff() > 0.0) {
      // Column still carries a direction; sin(theta) = sqrt(s2) normalizes it.
      q = col * (theta / std::sqrt(s2));
    } else {
      // Corner at -1 with a vanishing column: any admissible direction works,
      // take the first axis along which sigma * w_r > 0 with positive sign.
      q = Vector::Zero(d);
      bool found = false;
      for (Index r = 0; r < d && !found; ++r) {
        const double sw = sigma * w(r);
        if (sw > 0.0) {
          q(r) = theta / std::sqrt(sw);
          found = true;
        }
      }
      if (!found) throw DegeneracyError(k, "no admissible direction for a half-turn block");
    }

    if (k + 1 == n && sig.branch(n).kind == BranchKind::elliptic && q(0) < 0.0) {
      q(0) += 2.0 * std::numbers::pi;
    }

    residual = rotation_block(sig, {k, -q}).matrix * residual;
    Vector e = Vector::Zero(dim);
    e(kk) = 1.0;
    const double col_err = (residual.col(kk) - e).cwiseAbs().maxCoeff();
    const double row_err = (residual.row(kk).transpose() - e).cwiseAbs().maxCoeff();
    if (col_err > stage_tol || row_err > stage_tol) {
      throw PreconditionError("stage " + std::to_string(k) + " residual is not block diagonal (column " +
                              std::to_string(col_err) + ", row " + std::to_string(row_err) + ")");
    }
    residual.row(kk).setZero();
    residual.col(kk).setZero();
    residual(kk, kk) = 1.0;
    out.blocks.push_back({k, std::move(q)});
  }
  return out;
}

}  // namespace ck
