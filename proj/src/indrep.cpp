#include "ck/indrep.hpp"

#include <algorithm>
#include <cmath>

#include "ck/errors.hpp"
#include "ck/measure.hpp"

namespace ck {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_subgroup_params(const Signature& sig, const CanonicalParams& q) {
  const std::size_t n = sig.size();
  if (q.blocks.size() != n - 1) {
    throw DomainError("subgroup parameters need blocks 1.." + std::to_string(n - 1));
  }
  for (std::size_t i = 0; i < q.blocks.size(); ++i) {
    const auto& b = q.blocks[i];
    if (b.k != i + 1 || static_cast<std::size_t>(b.q.size()) != n - b.k) {
      throw DomainError("subgroup block " + std::to_string(i + 1) + " malformed");
    }
  }
}

void check_context(const Signature& sig) {
  if (sig.branch(1).kind != BranchKind::parabolic) {
    throw ConfigError("induced representations need j_1 parabolic, got signature " + sig.str());
  }
}

// Component r (1-based, r > p) of block p.
double component(const CanonicalParams& q, std::size_t p, std::size_t r) {
  const auto& b = q.blocks[p - 1];
  return b.q(idx(r - p - 1));
}

// Block-k weighted inner product of the components r = k+1..n of two vectors
// given as functions of r.
template <typename A, typename B>
double block_inner(const Vector& w, std::size_t k, std::size_t n, A a, B b) {
  double s = 0.0;
  for (std::size_t r = k + 1; r <= n; ++r) s += w(idx(r - k - 1)) * a(r) * b(r);
  return s;
}

}  // namespace

RepContext RepContext::real(const Signature& sig, double R, int sign) {
  check_context(sig);
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("R must be positive");
  if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
  RepContext ctx{sig, RepFamily::real_radius, R, sig.size(), sign, 1};
  ctx.families = classify_orbit(sig, ctx.character()).families;
  return ctx;
}

RepContext RepContext::imaginary(const Signature& sig, double rho, std::size_t axis, int sign) {
  check_context(sig);
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ConfigError("rho must be positive");
  if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
  if (!admits_imaginary_radius(sig)) {
    throw ConfigError("signature " + sig.str() + " has no orbits of imaginary radius");
  }
  if (axis == 0) axis = *imaginary_axis(sig);
  if (axis >= sig.size() || orbit_weights(sig)(idx(axis - 1)) != -1.0) {
    throw ConfigError("axis " + std::to_string(axis) + " does not carry weight -1 in the orbit equation");
  }
  RepContext ctx{sig, RepFamily::imaginary_radius, rho, axis, sign, 1};
  ctx.families = classify_orbit(sig, ctx.character()).families;
  return ctx;
}

Vector RepContext::character() const {
  Vector h = Vector::Zero(idx(signature.size()));
  h(idx(axis - 1)) = sign * radius;
  return h;
}

Complex character_eval(const Vector& h, const Vector& x) {
  if (h.size() != x.size()) throw DomainError("character and translation lengths differ");
  return std::polar(1.0, h.dot(x));
}

GeometryCoeffs geometry(const Signature& sig, const CanonicalParams& q, const Vector& x) {
  check_subgroup_params(sig, q);
  const std::size_t n = sig.size();
  if (static_cast<std::size_t>(x.size()) != n) throw DomainError("translation vector must have n components");
  const std::size_t blocks = n - 1;
  GeometryCoeffs g{Vector::Zero(idx(blocks)), Vector::Zero(idx(blocks)), Matrix::Zero(idx(blocks), idx(blocks)),
                   Matrix::Zero(idx(blocks), idx(blocks)), Vector::Zero(idx(blocks))};
  for (std::size_t k = 1; k <= blocks; ++k) {
    const Vector w = block_weights(sig, k);
    const double sigma = sig.square(k + 1);
    auto qk = [&](std::size_t r) { return component(q, k, r); };
    const double u = sigma * block_inner(w, k, n, qk, qk);
    const double vc = kernel_vc(u);
    const double vs = kernel_vs(u);
    const double vg = kernel_vg(u);
    const double qx = block_inner(w, k, n, qk, [&](std::size_t r) { return x(idx(r - 1)); });
    const double xk = x(idx(k - 1));
    g.u(idx(k - 1)) = u;
    g.xt(idx(k - 1)) = xk * vs + sigma * vg * qx;
    g.yt(idx(k - 1)) = xk * vc + sigma * vs * qx;
    for (std::size_t p = 1; p < k; ++p) {
      auto qp = [&](std::size_t r) { return component(q, p, r); };
      const double qpqk = block_inner(w, k, n, qp, qk);
      const double qpk = component(q, p, k);
      g.at(idx(p - 1), idx(k - 1)) = qpk * vs + sigma * vg * qpqk;
      g.bt(idx(p - 1), idx(k - 1)) = qpk * vc + sigma * vs * qpqk;
    }
  }
  return g;
}

Vector dcoeffs(const GeometryCoeffs& g) {
  const Index m = g.xt.size();
  Vector d(m);
  for (Index p = 0; p < m; ++p) {
    double v = g.xt(p);
    for (Index s = 0; s < p; ++s) v -= d(s) * g.at(s, p);
    d(p) = v;
  }
  return d;
}

Vector dcoeffs(const Signature& sig, const CanonicalParams& q, const Vector& x) {
  return dcoeffs(geometry(sig, q, x));
}

double cofactor_determinant(const Matrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (Index c = 0; c < n; ++c) {
    const double a = m(0, c);
    if (a == 0.0) continue;
    Matrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(r - 1, cc++) = m(r, j);
      }
    }
    const double term = a * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

double dcoeffs_det(const Signature& sig, const CanonicalParams& q, const Vector& x, std::size_t p) {
  const GeometryCoeffs g = geometry(sig, q, x);
  if (p < 1 || p > static_cast<std::size_t>(g.xt.size())) throw DomainError("dcoeffs_det: p out of range");
  const Index size = idx(p);
  Matrix m = Matrix::Zero(size, size);
  for (Index r = 0; r < size; ++r) {
    for (Index c = 0; c + 1 < size; ++c) {
      if (c == r) {
        m(r, c) = 1.0;
      } else if (c < r) {
        m(r, c) = g.at(c, r);
      }
    }
    m(r, size - 1) = g.xt(r);
  }
  return cofactor_determinant(m);
}

Vector transported(const Signature& sig, const CanonicalParams& q, const Vector& x) {
  const GeometryCoeffs g = geometry(sig, q, x);
  const Vector d = dcoeffs(g);
  const std::size_t n = sig.size();
  Vector out(idx(n));
  for (std::size_t r = 1; r < n; ++r) {
    double v = g.yt(idx(r - 1));
    for (std::size_t p = 1; p < r; ++p) v -= d(idx(p - 1)) * g.bt(idx(p - 1), idx(r - 1));
    out(idx(r - 1)) = v;
  }
  double last = x(idx(n - 1));
  for (std::size_t p = 1; p < n; ++p) last -= d(idx(p - 1)) * component(q, p, n);
  out(idx(n - 1)) = last;
  return out;
}

SemidirectElement compose(const Signature& sig, const SemidirectElement& a, const SemidirectElement& b) {
  const Matrix k = group_element(sig, a.q).matrix * group_element(sig, b.q).matrix;
  return {a.x + adjoint(sig, a.q) * b.x, factorize(sig, k, 1)};
}

double rep_phase_argument(const RepContext& ctx, const Vector& x, const CanonicalParams& q0) {
  const Vector moved = transported(ctx.signature, q0, x);
  return ctx.sign * ctx.radius * moved(idx(ctx.axis - 1));
}

CanonicalParams shifted_argument(const Signature& sig, const CanonicalParams& q, const CanonicalParams& q0) {
  return factorize(sig, inverse(sig, q).matrix * group_element(sig, q0).matrix, 1);
}

Complex omega_apply(const RepContext& ctx, const SemidirectElement& g, const RepFunction& f,
                    const CanonicalParams& q0) {
  if (ctx.family != RepFamily::real_radius) throw ConfigError("omega_apply needs a real-radius context");
  return rep_apply(ctx, g, f, q0);
}

Complex sigma_apply(const RepContext& ctx, const SemidirectElement& g, const RepFunction& f,
                    const CanonicalParams& q0) {
  if (ctx.family != RepFamily::imaginary_radius) throw ConfigError("sigma_apply needs an imaginary-radius context");
  return rep_apply(ctx, g, f, q0);
}

Complex rep_apply(const RepContext& ctx, const SemidirectElement& g, const RepFunction& f,
                  const CanonicalParams& q0) {
  const Complex phase = std::polar(1.0, rep_phase_argument(ctx, g.x, q0));
  return phase * f(shifted_argument(ctx.signature, g.q, q0));
}

Complex heisenberg_apply(double R, int sign, double x1, double x2, double q12,
                         const std::function<Complex(double)>& f, double q0_12) {
  return std::polar(1.0, sign * R * (x2 - x1 * q0_12)) * f(q0_12 - q12);
}

bool ContractionReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ContractionCheck& c) { return c.pass; });
}

ContractionReport contraction_limit_check(const Signature& target, const std::vector<double>& epsilons,
                                          std::uint64_t seed) {
  bool has_parabolic = false;
  for (const auto b : target.branches()) has_parabolic = has_parabolic || b.kind == BranchKind::parabolic;
  if (!has_parabolic) throw ConfigError("contraction check needs a parabolic slot in " + target.str());
  if (epsilons.size() < 2) throw ConfigError("contraction check needs at least two epsilons");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] <= 0.1)) throw ConfigError("epsilon outside (0, 0.1]");
    if (i && !(epsilons[i] < epsilons[i - 1])) throw ConfigError("epsilons must decrease");
  }

  constexpr int kDraws = 5;
  const std::size_t n = target.size();
  const Sampler sampler(target, 1.0);
  std::vector<CanonicalParams> draws;
  std::vector<Vector> translations;
  for (int i = 0; i < kDraws; ++i) {
    draws.push_back(sampler.propose(seed, 0, static_cast<std::uint64_t>(i)));
    CounterRng rng(seed, 1, static_cast<std::uint64_t>(i));
    Vector x(idx(n));
    for (Index r = 0; r < x.size(); ++r) x(r) = rng.uniform(-2.0, 2.0);
    translations.push_back(std::move(x));
  }

  const bool with_phase = n >= 2 && target.branch(1).kind == BranchKind::parabolic;

  ContractionReport report{target, epsilons, {}};
  ContractionCheck blocks;
  blocks.name = "rotation_block";
  ContractionCheck products;
  products.name = "group_element";
  ContractionCheck phases;
  phases.name = "omega_phase";
  for (const double eps : epsilons) {
    const Signature deformed = target.deformed(eps);
    double block_dev = 0.0;
    double product_dev = 0.0;
    double phase_dev = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      for (const auto& b : draws[static_cast<std::size_t>(i)].blocks) {
        const Matrix diff = rotation_block(deformed, b).matrix - rotation_block(target, b).matrix;
        block_dev = std::max(block_dev, diff.cwiseAbs().maxCoeff());
      }
      const Matrix diff = group_element(deformed, draws[static_cast<std::size_t>(i)]).matrix -
                          group_element(target, draws[static_cast<std::size_t>(i)]).matrix;
      product_dev = std::max(product_dev, diff.cwiseAbs().maxCoeff());
      if (with_phase) {
        CanonicalParams sub;
        sub.blocks.assign(draws[static_cast<std::size_t>(i)].blocks.begin() + 1,
                          draws[static_cast<std::size_t>(i)].blocks.end());
        const auto ctx_eps = RepContext::real(deformed, 1.0, 1);
        const auto ctx_0 = RepContext::real(target, 1.0, 1);
        const Complex a = std::polar(1.0, rep_phase_argument(ctx_eps, translations[static_cast<std::size_t>(i)], sub));
        const Complex b = std::polar(1.0, rep_phase_argument(ctx_0, translations[static_cast<std::size_t>(i)], sub));
        phase_dev = std::max(phase_dev, std::abs(a - b));
      }
    }
    blocks.deviations.push_back(block_dev);
    products.deviations.push_back(product_dev);
    phases.deviations.push_back(phase_dev);
  }

  auto finish = [&](ContractionCheck& c) {
    const auto& d = c.deviations;
    c.identically_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
    for (std::size_t i = 1; i < d.size(); ++i) c.monotone = c.monotone && d[i] <= d[i - 1];
    const double ea = epsilons[epsilons.size() - 2];
    const double eb = epsilons.back();
    const double da = d[d.size() - 2];
    const double db = d.back();
    c.ratio = db > 0.0 ? (da / db) * 100.0 * (eb / ea) * (eb / ea) : 0.0;
    c.pass = c.identically_zero || (c.monotone && c.ratio >= 50.0 && c.ratio <= 200.0);
  };
  finish(blocks);
  finish(products);
  report.checks.push_back(std::move(blocks));
  report.checks.push_back(std::move(products));
  if (with_phase) {
    finish(phases);
    report.checks.push_back(std::move(phases));
  }
  return report;
}

}  // namespace ck
