#include "ck/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <Eigen/LU>

#include "ck/errors.hpp"
#include "ck/measure.hpp"
#include "ck/oracles.hpp"

namespace ck::cli {

namespace {

using json = nlohmann::ordered_json;
using Index = Eigen::Index;

constexpr double kPi = std::numbers::pi;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Deterministic draws: one counter stream per check, one key per trial.
class Draws {
 public:
  Draws(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  CounterRng next() { return CounterRng(seed_, stream_, index_++); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
};

Vector draw_vector(CounterRng& rng, std::size_t size, double scale) {
  Vector v(idx(size));
  for (Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(-scale, scale);
  return v;
}

CanonicalParams draw_params(const Signature& sig, CounterRng& rng, double scale, std::size_t start = 0) {
  CanonicalParams p;
  for (std::size_t k = start; k < sig.size(); ++k) p.blocks.push_back({k, draw_vector(rng, sig.size() - k, scale)});
  return p;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

CheckRecord record(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation, tolerance, deviation <= tolerance};
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

RepFunction matrix_function(const Signature& sig, double a, double b) {
  return [sig, a, b](const CanonicalParams& q) {
    const Matrix m = group_element(sig, q).matrix;
    const double s = m.bottomRightCorner(m.rows() - 1, m.cols() - 1).sum();
    return Complex(std::cos(a * s), std::sin(b * m(m.rows() - 1, 1)));
  };
}

bool contracted(const Signature& sig) { return sig.branch(1).kind == BranchKind::parabolic; }

std::string join(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  return os.str();
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json stabilizer_json(const std::optional<StabilizerDescriptor>& s) {
  if (!s) return nullptr;
  json pinned = json::array();
  for (const auto& p : s->pinned) pinned.push_back(json::array({p.k, p.r}));
  return json{{"kind", std::string(to_string(s->kind))}, {"axis", s->axis}, {"pinned", pinned}, {"absent", s->absent}};
}

json class_json(const OrbitClass& c) {
  json j;
  j["radius_kind"] = std::string(to_string(c.radius_kind));
  j["value"] = c.value;
  j["invariant"] = c.invariant;
  j["families"] = c.families;
  j["sign"] = c.sign;
  j["axis"] = c.axis;
  j["representative"] = vector_json(c.representative);
  j["degeneracy"] = std::string(to_string(c.degeneracy));
  j["subspace_dim"] = c.subspace_dim;
  j["stabilizer"] = stabilizer_json(c.stabilizer);
  j["enumerated_families"] = c.enumerated_families;
  j["enumeration_disagrees"] = c.enumeration_disagrees;
  j["axis_fallback"] = c.axis_fallback;
  return j;
}

json checks_json(const std::vector<CheckRecord>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    a.push_back({{"name", c.name}, {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return a;
}

bool all_pass(const std::vector<CheckRecord>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

}  // namespace

std::vector<CheckRecord> verify_suite(const Signature& sig, std::uint64_t seed, std::size_t trials) {
  const std::size_t n = sig.size();
  const Matrix g = gram(sig);
  const auto dim = idx(n + 1);
  std::vector<CheckRecord> out;

  {
    Draws draws(seed, 1);
    double dev = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const auto k = static_cast<std::size_t>(rng.next_u64() % n);
      const Vector q = draw_vector(rng, n - k, 1.5);
      dev = std::max(dev, max_abs(rotation_block(sig, {k, q}).matrix - oracle::rotation_block(sig, k, q)));
    }
    out.push_back(record("rotation_block_vs_exponential", dev, 1e-9));
  }
  {
    Draws draws(seed, 2);
    double iso = 0.0;
    double det = 0.0;
    double inv = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const auto p = draw_params(sig, rng, 0.5);
      const Matrix m = group_element(sig, p).matrix;
      iso = std::max(iso, max_abs(m.transpose() * g * m - g));
      det = std::max(det, std::abs(m.determinant() - 1.0));
      inv = std::max(inv, max_abs(m * inverse(sig, p).matrix - Matrix::Identity(dim, dim)));
    }
    out.push_back(record("isometry", iso, 1e-12));
    out.push_back(record("determinant", det, 1e-12));
    out.push_back(record("inverse", inv, 1e-12));
  }
  {
    Draws draws(seed, 3);
    double dev = 0.0;
    std::size_t degenerate = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const Matrix m = group_element(sig, draw_params(sig, rng, 1.0)).matrix;
      try {
        dev = std::max(dev, max_abs(group_element(sig, factorize(sig, m)).matrix - m));
      } catch (const DegeneracyError&) {
        ++degenerate;
      }
    }
    out.push_back(record("factorize_roundtrip", dev, 1e-8));
    out.push_back(record("factorize_degenerate_fraction", static_cast<double>(degenerate) / static_cast<double>(trials),
                         1e-3));
  }
  {
    double br = 0.0;
    double cas = 0.0;
    double alg = 0.0;
    const auto indices = generator_indices(sig);
    const Matrix c = casimir(sig);
    for (const auto a : indices) {
      const Matrix xa = generator(sig, a).matrix;
      alg = std::max(alg, max_abs(xa.transpose() * g + g * xa));
      cas = std::max(cas, max_abs(commutator(c, xa)));
      for (const auto b : indices) {
        const Matrix lhs = commutator(oracle::generator(sig, a.mu, a.nu), oracle::generator(sig, b.mu, b.nu));
        br = std::max(br, max_abs(lhs - expansion_matrix(sig, bracket(sig, a, b))));
      }
    }
    out.push_back(record("generator_isometry", alg, 0.0));
    out.push_back(record("bracket_vs_commutator", br, 1e-14));
    out.push_back(record("casimir_central", cas, 1e-12));
    if (contracted(sig)) out.push_back(record("casimir_rotation_sum_vanishes", max_abs(casimir_parts(sig).rotations), 0.0));
  }
  if (!contracted(sig)) return out;

  {
    Draws draws(seed, 4);
    double conserve = 0.0;
    double duality = 0.0;
    double conj = 0.0;
    const auto nn = idx(n);
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const auto k = draw_params(sig, rng, 1.0, 1);
      const Vector h = draw_vector(rng, n, 2.0);
      const Vector x = draw_vector(rng, n, 2.0);
      conserve = std::max(conserve, std::abs(orbit_invariant(sig, coadjoint(sig, k) * h) - orbit_invariant(sig, h)));
      const Matrix kinv = inverse(sig, k).matrix;
      duality = std::max(duality, std::abs((coadjoint(sig, k) * h).dot(x) - h.dot(kinv.bottomRightCorner(nn, nn) * x)));
      conj = std::max(conj, max_abs(translation(adjoint(sig, k) * x) - group_element(sig, k).matrix * translation(x) * kinv));
    }
    out.push_back(record("coadjoint_invariant", conserve, 1e-12));
    out.push_back(record("coadjoint_duality", duality, 1e-12));
    out.push_back(record("adjoint_conjugation", conj, 1e-12));
  }
  {
    Draws draws(seed, 5);
    double transport = 0.0;
    double dcross = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const auto q = draw_params(sig, rng, 1.0, 1);
      const Vector x = draw_vector(rng, n, 2.0);
      transport = std::max(transport, max_abs(transported(sig, q, x) - oracle::transported(sig, q, x)));
      const Vector d = dcoeffs(sig, q, x);
      for (std::size_t p = 1; p < n; ++p) {
        dcross = std::max(dcross, std::abs(d(idx(p - 1)) - dcoeffs_det(sig, q, x, p)));
      }
    }
    out.push_back(record("transport_vs_adjoint_product", transport, 1e-10));
    out.push_back(record("dcoeffs_vs_determinant", dcross, 1e-10));
  }
  return out;
}

std::vector<CheckRecord> rep_suite(const RepContext& ctx, std::uint64_t seed, std::size_t trials) {
  const Signature& sig = ctx.signature;
  const std::size_t n = sig.size();
  std::vector<CheckRecord> out;

  auto homomorphism = [&](const RepContext& c, std::uint64_t stream, double& dev, double& modulus,
                          std::size_t& degenerate) {
    Draws draws(seed, stream);
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const SemidirectElement g1{draw_vector(rng, n, 1.5), draw_params(sig, rng, 0.8, 1)};
      const SemidirectElement g2{draw_vector(rng, n, 1.5), draw_params(sig, rng, 0.8, 1)};
      const auto f = matrix_function(sig, rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0));
      const auto q0 = draw_params(sig, rng, 0.8, 1);
      try {
        const auto g12 = compose(sig, g1, g2);
        const Complex lhs = rep_apply(c, g12, f, q0);
        const RepFunction inner = [&](const CanonicalParams& q) { return rep_apply(c, g2, f, q); };
        dev = std::max(dev, std::abs(lhs - rep_apply(c, g1, inner, q0)));
        modulus = std::max(modulus, std::abs(std::abs(std::polar(1.0, rep_phase_argument(c, g12.x, q0))) - 1.0));
      } catch (const DegeneracyError&) {
        ++degenerate;
      }
    }
  };

  double dev = 0.0;
  double modulus = 0.0;
  std::size_t degenerate = 0;
  homomorphism(ctx, 10, dev, modulus, degenerate);
  out.push_back(record("homomorphism", dev, 1e-8));
  out.push_back(record("phase_modulus", modulus, 1e-15));
  if (ctx.families == 1) {
    // One orbit family: the opposite sign must still give a representation.
    RepContext other = ctx;
    other.sign = -ctx.sign;
    double odev = 0.0;
    double omod = 0.0;
    homomorphism(other, 11, odev, omod, degenerate);
    out.push_back(record("opposite_sign_homomorphism", odev, 1e-8));
  }
  out.push_back(record("degenerate_fraction", static_cast<double>(degenerate) / static_cast<double>(trials), 1e-3));

  if (n == 2 && sig.branch(2).kind == BranchKind::parabolic && ctx.family == RepFamily::real_radius) {
    Draws draws(seed, 12);
    double h = 0.0;
    const auto f = [](double q) { return Complex(std::exp(-q * q), std::sin(q)); };
    const RepFunction generic_f = [&](const CanonicalParams& p) { return f(p.blocks[0].q(0)); };
    for (std::size_t t = 0; t < trials; ++t) {
      auto rng = draws.next();
      const double x1 = rng.uniform(-3, 3);
      const double x2 = rng.uniform(-3, 3);
      const double q = rng.uniform(-3, 3);
      const double q0 = rng.uniform(-3, 3);
      Vector x(2);
      x << x1, x2;
      const Complex generic = omega_apply(ctx, {x, CanonicalParams{{{1, Vector::Constant(1, q)}}}}, generic_f,
                                          CanonicalParams{{{1, Vector::Constant(1, q0)}}});
      h = std::max(h, std::abs(generic - heisenberg_apply(ctx.radius, ctx.sign, x1, x2, q, f, q0)));
    }
    out.push_back(record("heisenberg_closed_form", h, 1e-13));
  }

  if (n == 2 && sig.branch(2).kind == BranchKind::elliptic) {
    constexpr int kPoints = 2048;
    const auto f = [](double t) { return Complex(std::exp(std::cos(t)), std::sin(2 * t)); };
    const auto g = [](double t) { return Complex(std::cos(3 * t), 1.0 / (2.0 + std::sin(t))); };
    auto inner = [&](const auto& a, const auto& b) {
      Complex s = 0;
      for (int i = 0; i < kPoints; ++i) {
        const double t = 2 * kPi * i / kPoints;
        s += std::conj(a(t)) * b(t);
      }
      return s * (2 * kPi / kPoints);
    };
    const Complex base = inner(f, g);
    Draws draws(seed, 13);
    double dev = 0.0;
    for (int i = 0; i < 10; ++i) {
      auto rng = draws.next();
      const SemidirectElement el{draw_vector(rng, 2, 2.0),
                                 CanonicalParams{{{1, Vector::Constant(1, rng.uniform(0, 2 * kPi))}}}};
      auto lift = [&](const auto& h) {
        return [&, h](double t) {
          const RepFunction rf = [&](const CanonicalParams& p) { return h(p.blocks[0].q(0)); };
          return rep_apply(ctx, el, rf, CanonicalParams{{{1, Vector::Constant(1, t)}}});
        };
      };
      dev = std::max(dev, std::abs(inner(lift(f), lift(g)) - base));
    }
    out.push_back(record("unitarity_quadrature", dev, 1e-6));
  }
  return out;
}

std::vector<OrbitRow> orbit_table(std::size_t n) {
  if (n < 2 || n > 6) throw ConfigError("orbit table needs 2 <= n <= 6");
  std::vector<OrbitRow> rows;
  for (const auto& rest : all_signatures(n - 1)) {
    std::vector<Branch> br{Branch::parabolic()};
    br.insert(br.end(), rest.branches().begin(), rest.branches().end());
    const Signature sig(br);
    const Vector w = orbit_weights(sig);

    std::vector<Vector> characters;
    Vector m = Vector::Zero(idx(n));
    m(idx(n - 1)) = 1.0;
    characters.push_back(m);
    if (admits_imaginary_radius(sig)) {
      Vector p = Vector::Zero(idx(n));
      p(idx(*imaginary_axis(sig) - 1)) = 1.0;
      characters.push_back(p);
      Vector cone = p;
      cone(idx(n - 1)) = 1.0;
      characters.push_back(cone);
    } else if (w.minCoeff() == 0.0) {
      Vector lower = Vector::Zero(idx(n));
      lower(0) = 1.0;
      characters.push_back(lower);
    }
    characters.push_back(Vector::Zero(idx(n)));

    for (const auto& h : characters) {
      OrbitRow row{sig, h, classify_orbit(sig, h), false};
      row.discrepancy = row.cls.enumeration_disagrees || row.cls.axis_fallback;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<CheckRecord> orbit_table_checks(const std::vector<OrbitRow>& rows) {
  double negative_without_weight = 0.0;
  double zero_not_point = 0.0;
  double unflagged = 0.0;
  for (const auto& r : rows) {
    if (r.cls.radius_kind == RadiusKind::imaginary && !admits_imaginary_radius(r.signature)) {
      negative_without_weight += 1.0;
    }
    if (r.character.isZero(0.0) &&
        !(r.cls.radius_kind == RadiusKind::zero && r.cls.degeneracy == ZeroDegeneracy::point)) {
      zero_not_point += 1.0;
    }
    const bool disagrees = r.cls.radius_kind != RadiusKind::zero && r.cls.enumerated_families != r.cls.families;
    if ((disagrees || r.cls.axis_fallback) && !r.discrepancy) unflagged += 1.0;
  }
  return {record("no_imaginary_radius_without_negative_weight", negative_without_weight, 0.0),
          record("zero_character_is_point", zero_not_point, 0.0),
          record("every_discrepancy_flagged", unflagged, 0.0)};
}

namespace {

struct Options {
  std::string signature;
  std::vector<double> h;
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  double truncation = 0.0;
  std::size_t trials = 200;
  double R = 1.0;
  double rho = 1.0;
  std::string sign = "plus";
  std::size_t axis = 0;
  std::string family = "real";
  std::size_t n = 3;
  std::string format = "json";
  std::string output;
};

json metadata(std::uint64_t seed, std::chrono::steady_clock::time_point start) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return json{{"seed", seed}, {"version", kVersion}, {"wall_time", wall}};
}

std::string orbit_csv(const std::vector<OrbitRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "signature,character,radius_kind,value,families,sign,axis,stabilizer,degeneracy,enumerated_families,"
        "discrepancy\n";
  for (const auto& r : rows) {
    os << '"' << r.signature.str() << "\",\"" << join(r.character) << "\"," << to_string(r.cls.radius_kind) << ','
       << r.cls.value << ',' << r.cls.families << ',' << r.cls.sign << ',' << r.cls.axis << ','
       << (r.cls.stabilizer ? std::string(to_string(r.cls.stabilizer->kind)) : std::string("none")) << ','
       << to_string(r.cls.degeneracy) << ',' << r.cls.enumerated_families << ',' << (r.discrepancy ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::uint64_t default_seed() {
  const char* env = std::getenv("CK_SEED");
  if (!env || !*env) return 42;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || env[0] == '-') throw ConfigError(std::string("CK_SEED is not an unsigned integer: ") + env);
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  try {
    o.seed = default_seed();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Cayley-Klein groups: verification suites, orbit classification and induced representations", "ck"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto add_common = [&](CLI::App* sub, bool needs_signature) {
    auto* opt = sub->add_option("--signature", o.signature, "comma-separated j_1..j_n from {1,d,i}");
    if (needs_signature) opt->required();
    sub->add_option("--seed", o.seed, "seed (default: CK_SEED or 42)");
    sub->add_option("--output", o.output, "write the report to this file");
    sub->add_option("--format", o.format, "json (csv only for orbit-table)")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* classify = app.add_subcommand("classify", "classify the coadjoint orbit of a character");
  add_common(classify, true);
  classify->add_option("--h", o.h, "character h_1,...,h_n")->delimiter(',')->required()->allow_extra_args(false);

  auto* verify = app.add_subcommand("verify", "run the invariant suite for one signature");
  add_common(verify, true);
  verify->add_option("--trials", o.trials, "random draws per check")->check(CLI::PositiveNumber);

  auto* measure = app.add_subcommand("measure", "Monte Carlo integration of the invariant measure");
  add_common(measure, true);
  measure->add_option("--samples", o.samples, "samples per integral")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  measure->add_option("--truncation", o.truncation, "box half-width for noncompact directions");
  measure->add_option("--trials", o.trials, "random shifts for the invariance checks")->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("rep-check", "check an induced representation");
  add_common(rep, true);
  rep->add_option("--family", o.family, "real or imaginary radius")->check(CLI::IsMember({"real", "imaginary"}));
  rep->add_option("--R", o.R, "radius of a real-radius orbit");
  rep->add_option("--rho", o.rho, "radius of an imaginary-radius orbit");
  rep->add_option("--sign", o.sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
  rep->add_option("--axis", o.axis, "axis m of an imaginary-radius orbit (0 = automatic)");
  rep->add_option("--trials", o.trials, "random tuples")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("orbit-table", "classify representative characters for all j' of length n-1");
  add_common(table, false);
  table->add_option("--n", o.n, "dimension n (2..6)");

  std::vector<const char*> argv{"ck"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  json report;
  bool pass = true;
  std::string text;
  try {
    if (o.format == "csv" && !table->parsed()) throw ConfigError("--format csv is only available for orbit-table");
    if (table->parsed()) {
      if (!o.signature.empty()) throw ConfigError("orbit-table takes --n, not --signature");
      const auto rows = orbit_table(o.n);
      const auto checks = orbit_table_checks(rows);
      pass = all_pass(checks);
      if (o.format == "csv") {
        text = orbit_csv(rows);
      } else {
        report["subcommand"] = "orbit-table";
        report["n"] = o.n;
        json arr = json::array();
        for (const auto& r : rows) {
          json row;
          row["signature"] = r.signature.str();
          row["character"] = vector_json(r.character);
          row["class"] = class_json(r.cls);
          row["discrepancy"] = r.discrepancy;
          arr.push_back(std::move(row));
        }
        report["rows"] = std::move(arr);
        report["checks"] = checks_json(checks);
      }
    } else {
      const Signature sig = parse_signature(o.signature);
      if (classify->parsed()) {
        const Vector h = Eigen::Map<const Vector>(o.h.data(), idx(o.h.size()));
        const auto cls = classify_orbit(sig, h);
        report["subcommand"] = "classify";
        report["signature"] = sig.str();
        report["h"] = vector_json(h);
        const json fields = class_json(cls);
        for (const auto& [k, v] : fields.items()) report[k] = v;
        std::vector<CheckRecord> checks;
        if (cls.radius_kind != RadiusKind::zero) {
          const double target = cls.radius_kind == RadiusKind::positive ? cls.value * cls.value : -cls.value * cls.value;
          const double dev = std::abs(orbit_invariant(sig, cls.representative) - target);
          checks.push_back(record("representative_invariant", dev, 1e-12 * std::max(1.0, std::abs(target))));
        }
        pass = all_pass(checks);
        report["checks"] = checks_json(checks);
      } else if (verify->parsed()) {
        const auto checks = verify_suite(sig, o.seed, o.trials);
        pass = all_pass(checks);
        report["subcommand"] = "verify";
        report["signature"] = sig.str();
        report["trials"] = o.trials;
        report["checks"] = checks_json(checks);
      } else if (measure->parsed()) {
        const auto one = [](const CanonicalParams&) { return 1.0; };
        const Estimate vol = integrate(sig, one, o.samples, o.seed, o.truncation);
        // invariance of a test function supported well inside the box
        const double reach = o.truncation > 0.0 ? o.truncation / 2 : 1.0;
        const auto f = [&](const CanonicalParams& p) {
          const Matrix m = group_element(sig, p).matrix;
          const double r2 = (m - Matrix::Identity(m.rows(), m.cols())).squaredNorm();
          return std::exp(-r2 / (reach * reach));
        };
        std::vector<CheckRecord> checks;
        const Sampler shifts(sig, std::min(reach, 1.0) / 4);
        const Estimate base = integrate(sig, f, o.samples, o.seed + 1, o.truncation);
        const std::size_t shift_count = std::min<std::size_t>(o.trials, 5);
        double left_dev = 0.0, left_tol = 0.0, right_dev = 0.0, right_tol = 0.0;
        double left_margin = -INFINITY, right_margin = -INFINITY;
        for (std::size_t t = 0; t < shift_count; ++t) {
          const Matrix g0 = group_element(sig, shifts.propose(o.seed, 99, t)).matrix;
          const Estimate l = integrate(sig, [&](const CanonicalParams& p) { return f(left_shift(sig, g0, p)); },
                                       o.samples, o.seed + 2 + 2 * t, o.truncation);
          const Estimate r = integrate(sig, [&](const CanonicalParams& p) { return f(right_shift(sig, g0, p)); },
                                       o.samples, o.seed + 3 + 2 * t, o.truncation);
          const double ld = std::abs(l.estimate - base.estimate);
          const double lt = 3 * std::hypot(l.std_error, base.std_error);
          const double rd = std::abs(r.estimate - base.estimate);
          const double rt = 3 * std::hypot(r.std_error, base.std_error);
          if (ld - lt > left_margin) {
            left_margin = ld - lt;
            left_dev = ld;
            left_tol = lt;
          }
          if (rd - rt > right_margin) {
            right_margin = rd - rt;
            right_dev = rd;
            right_tol = rt;
          }
        }
        checks.push_back(record("left_invariance", left_dev, left_tol));
        checks.push_back(record("right_invariance", right_dev, right_tol));
        pass = all_pass(checks);
        report["subcommand"] = "measure";
        report["signature"] = sig.str();
        report["estimate"] = vol.estimate;
        report["std_error"] = vol.std_error;
        report["samples"] = o.samples;
        report["seed"] = o.seed;
        report["truncation"] = o.truncation;
        report["checks"] = checks_json(checks);
      } else if (rep->parsed()) {
        const int sign = o.sign == "plus" ? 1 : -1;
        const RepContext ctx = o.family == "real" ? RepContext::real(sig, o.R, sign)
                                                  : RepContext::imaginary(sig, o.rho, o.axis, sign);
        const auto checks = rep_suite(ctx, o.seed, o.trials);
        pass = all_pass(checks);
        report["subcommand"] = "rep-check";
        report["signature"] = sig.str();
        report["family"] = o.family;
        report["radius"] = ctx.radius;
        report["sign"] = o.sign;
        report["axis"] = ctx.axis;
        report["families"] = ctx.families;
        report["trials"] = o.trials;
        report["checks"] = checks_json(checks);
      }
    }
  } catch (const DegeneracyError& e) {
    err << "error: degenerate factorization at stage " << e.stage() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (text.empty()) {
    report["pass"] = pass;
    report["metadata"] = metadata(o.seed, start);
    text = report.dump(2) + "\n";
  }
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) {
      err << "error: cannot open " << o.output << '\n';
      return 2;
    }
    f << text;
  }
  return pass ? 0 : 1;
}

}  // namespace ck::cli
