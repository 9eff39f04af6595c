#include "ck/orbits.hpp"

#include <algorithm>
#include <cmath>

#include "ck/errors.hpp"

namespace ck {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_subgroup_block(const BlockParams& p) {
  if (p.k == 0) throw DomainError("subgroup block required (k >= 1); k = 0 is the translation part");
}

void check_character(const Signature& sig, const Vector& h) {
  if (static_cast<std::size_t>(h.size()) != sig.size()) {
    throw DomainError("character must have " + std::to_string(sig.size()) + " components");
  }
  if (!h.allFinite()) throw DomainError("character has non-finite components");
}

bool is(const Signature& sig, std::size_t m, BranchKind k) { return sig.branch(m).kind == k; }

// j_a..j_b all equal to 1 (empty range is true).
bool all_elliptic(const Signature& sig, std::size_t a, std::size_t b) {
  for (std::size_t m = a; m <= b; ++m) {
    if (!is(sig, m, BranchKind::elliptic)) return false;
  }
  return true;
}

}  // namespace

Matrix adjoint_block(const Signature& sig, const BlockParams& p) {
  check_subgroup_block(p);
  const Matrix full = rotation_block(sig, p).matrix;
  const auto n = idx(sig.size());
  return full.bottomRightCorner(n, n);
}

Matrix adjoint(const Signature& sig, const CanonicalParams& params) {
  const auto n = idx(sig.size());
  Matrix m = Matrix::Identity(n, n);
  for (const auto& b : params.blocks) m = m * adjoint_block(sig, b);
  return m;
}

Matrix coadjoint_block(const Signature& sig, const BlockParams& p) {
  check_subgroup_block(p);
  return adjoint_block(sig, {p.k, -p.q}).transpose();
}

Matrix coadjoint(const Signature& sig, const CanonicalParams& params) {
  const auto n = idx(sig.size());
  Matrix m = Matrix::Identity(n, n);
  for (const auto& b : params.blocks) m = m * coadjoint_block(sig, b);
  return m;
}

Matrix translation(const Vector& x) {
  const Index n = x.size();
  Matrix t = Matrix::Identity(n + 1, n + 1);
  t.block(1, 0, n, 1) = x;
  return t;
}

Vector orbit_weights(const Signature& sig) {
  const std::size_t n = sig.size();
  Vector w(idx(n));
  for (std::size_t r = 1; r <= n; ++r) w(idx(r - 1)) = sig.weight(r + 1, n);
  return w;
}

double orbit_invariant(const Signature& sig, const Vector& h) {
  check_character(sig, h);
  return (orbit_weights(sig).array() * h.array().square()).sum();
}

std::string_view to_string(RadiusKind k) noexcept {
  switch (k) {
    case RadiusKind::positive: return "positive";
    case RadiusKind::imaginary: return "imaginary";
    case RadiusKind::zero: return "zero";
  }
  return "?";
}

std::string_view to_string(ZeroDegeneracy d) noexcept {
  switch (d) {
    case ZeroDegeneracy::none: return "none";
    case ZeroDegeneracy::point: return "point";
    case ZeroDegeneracy::lower_dimensional: return "lower_dimensional";
    case ZeroDegeneracy::cone: return "cone";
  }
  return "?";
}

std::string_view to_string(StabilizerKind k) noexcept {
  switch (k) {
    case StabilizerKind::fix_axis_n: return "fix_axis_n";
    case StabilizerKind::fix_axis_m: return "fix_axis_m";
  }
  return "?";
}

int families_by_compactness(const Signature& sig, std::size_t axis) {
  for (std::size_t r = 1; r < axis; ++r) {
    if (compactness(sig, r + 1, axis) == Compactness::compact) return 1;
  }
  return 2;
}

int enumerated_families_positive(const Signature& sig) {
  const std::size_t n = sig.size();
  if (!is(sig, n, BranchKind::hyperbolic)) return 2;
  for (std::size_t k = 1; k + 2 <= n; ++k) {
    if (is(sig, k + 1, BranchKind::hyperbolic) && all_elliptic(sig, k + 2, n - 1)) return 1;
  }
  return 2;
}

int enumerated_families_imaginary(const Signature& sig, std::size_t axis) {
  const std::size_t n = sig.size();
  const std::size_t m = axis;
  if (m < 1 || m + 1 > n) return 2;
  if (!is(sig, m + 1, BranchKind::hyperbolic) || !all_elliptic(sig, m + 2, n)) return 2;
  if (m >= 2 && is(sig, m, BranchKind::elliptic)) return 1;
  if (m >= 3 && is(sig, m, BranchKind::hyperbolic)) {
    for (std::size_t r = 1; r + 2 <= m; ++r) {
      if (is(sig, r + 1, BranchKind::hyperbolic) && all_elliptic(sig, r + 2, m - 1)) return 1;
    }
  }
  return 2;
}

bool admits_imaginary_radius(const Signature& sig) { return orbit_weights(sig).minCoeff() < 0.0; }

std::optional<std::size_t> imaginary_axis(const Signature& sig) {
  const Vector w = orbit_weights(sig);
  for (std::size_t m = sig.size() - 1; m >= 1; --m) {
    if (w(idx(m - 1)) < 0.0) return m;
  }
  return std::nullopt;
}

OrbitClass classify_orbit(const Signature& sig, const Vector& h) {
  check_character(sig, h);
  const std::size_t n = sig.size();
  const Vector w = orbit_weights(sig);
  const double inv = (w.array() * h.array().square()).sum();
  const double scale = (w.array().abs() * h.array().square()).sum();
  const double tol = 1e-12 * std::max(1.0, scale);

  OrbitClass cls;
  cls.invariant = inv;
  cls.representative = Vector::Zero(idx(n));

  if (inv > tol) {
    cls.radius_kind = RadiusKind::positive;
    cls.value = std::sqrt(inv);
    cls.axis = n;
    cls.families = families_by_compactness(sig, n);
    cls.sign = (cls.families == 2 && h(idx(n - 1)) < 0.0) ? -1 : 1;
    cls.representative(idx(n - 1)) = cls.sign * cls.value;
    cls.enumerated_families = enumerated_families_positive(sig);
  } else if (inv < -tol) {
    cls.radius_kind = RadiusKind::imaginary;
    cls.value = std::sqrt(-inv);
    std::size_t m = *imaginary_axis(sig);
    // The largest negative weight always sits at j_{m+1} = i followed by ones;
    // keep the check so a violation is reported instead of assumed away.
    bool pattern = is(sig, m + 1, BranchKind::hyperbolic) && all_elliptic(sig, m + 2, n);
    if (!pattern) {
      Index most = 0;
      w.head(idx(n - 1)).minCoeff(&most);
      m = static_cast<std::size_t>(most) + 1;
      cls.axis_fallback = true;
    }
    cls.axis = m;
    cls.families = families_by_compactness(sig, m);
    cls.sign = (cls.families == 2 && h(idx(m - 1)) < 0.0) ? -1 : 1;
    cls.representative(idx(m - 1)) = cls.sign * cls.value;
    cls.enumerated_families = enumerated_families_imaginary(sig, m);
  } else {
    cls.radius_kind = RadiusKind::zero;
    cls.value = 0.0;
    const double hmax = h.cwiseAbs().maxCoeff();
    if (hmax <= 1e-12) {
      cls.degeneracy = ZeroDegeneracy::point;
      cls.subspace_dim = 0;
      return cls;
    }
    std::size_t last = 0;
    for (std::size_t m = n; m >= 2; --m) {
      if (!is(sig, m, BranchKind::elliptic)) {
        last = m;
        break;
      }
    }
    if (last == 0) {
      // Only reachable through the tolerance: all weights are +1.
      cls.degeneracy = ZeroDegeneracy::point;
    } else if (is(sig, last, BranchKind::parabolic)) {
      cls.degeneracy = ZeroDegeneracy::lower_dimensional;
      cls.subspace_dim = last - 1;
      cls.representative = h;
      cls.representative.tail(idx(n - last + 1)).setZero();
    } else {
      cls.degeneracy = ZeroDegeneracy::cone;
      const std::size_t s = *imaginary_axis(sig);
      cls.axis = s;
      cls.representative(idx(s - 1)) = 1.0;
      cls.representative(idx(n - 1)) = 1.0;
    }
    return cls;
  }

  cls.enumeration_disagrees = cls.enumerated_families != cls.families;
  cls.stabilizer = stabilizer(sig, cls);
  return cls;
}

StabilizerDescriptor stabilizer(const Signature& sig, const OrbitClass& cls) {
  const std::size_t n = sig.size();
  StabilizerDescriptor d;
  switch (cls.radius_kind) {
    case RadiusKind::zero:
      throw UnsupportedError("zero-radius orbits carry no stabilizer support");
    case RadiusKind::positive:
      d.kind = StabilizerKind::fix_axis_n;
      d.axis = n;
      for (std::size_t k = 1; k + 2 <= n; ++k) d.pinned.push_back({k, n});
      if (n >= 2) d.absent.push_back(n - 1);
      break;
    case RadiusKind::imaginary: {
      const std::size_t m = cls.axis;
      if (m < 1 || m >= n) throw DomainError("imaginary axis out of range");
      d.kind = StabilizerKind::fix_axis_m;
      d.axis = m;
      for (std::size_t k = 1; k < m; ++k) d.pinned.push_back({k, m});
      d.absent.push_back(m);
      break;
    }
  }
  return d;
}

CanonicalParams constrain_to_stabilizer(const StabilizerDescriptor& desc, CanonicalParams params) {
  for (auto& b : params.blocks) {
    if (std::find(desc.absent.begin(), desc.absent.end(), b.k) != desc.absent.end()) {
      b.q.setZero();
      continue;
    }
    for (const auto& pin : desc.pinned) {
      if (pin.k == b.k) b.q(idx(pin.r - b.k - 1)) = 0.0;
    }
  }
  return params;
}

}  // namespace ck
