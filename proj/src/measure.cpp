#include "ck/measure.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "ck/errors.hpp"

namespace ck {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double weighted_square(const Vector& w, const Vector& q) { return (w.array() * q.array().square()).sum(); }

}  // namespace

std::string_view to_string(DomainKind k) noexcept {
  switch (k) {
    case DomainKind::real_ball: return "real_ball";
    case DomainKind::full_space: return "full_space";
    case DomainKind::imaginary_ball: return "imaginary_ball";
    case DomainKind::circle: return "circle";
    case DomainKind::line: return "line";
  }
  return "?";
}

bool DomainSpec::contains(const Signature& sig, const Vector& q) const {
  switch (kind) {
    case DomainKind::full_space:
    case DomainKind::line: return true;
    case DomainKind::circle: return q(0) >= 0.0 && q(0) < 2.0 * kPi;
    case DomainKind::real_ball: return weighted_square(block_weights(sig, k), q) <= kPi * kPi;
    case DomainKind::imaginary_ball: return weighted_square(block_weights(sig, k), q) >= -kPi * kPi;
  }
  return false;
}

DomainSpec domain(const Signature& sig, std::size_t k) {
  const std::size_t n = sig.size();
  if (k >= n) throw DomainError("block index " + std::to_string(k) + " out of range");
  DomainSpec spec{DomainKind::real_ball, k, sig.tail(k), false};
  const bool last = k + 1 == n;
  switch (sig.branch(k + 1).kind) {
    case BranchKind::elliptic: spec.kind = last ? DomainKind::circle : DomainKind::real_ball; break;
    case BranchKind::parabolic: spec.kind = last ? DomainKind::line : DomainKind::full_space; break;
    case BranchKind::hyperbolic:
      if (last) {
        spec.kind = DomainKind::line;
      } else {
        spec.kind = DomainKind::imaginary_ball;
        spec.constraint_vacuous = block_weights(sig, k).minCoeff() >= 0.0;
      }
      break;
  }
  return spec;
}

double density(const Signature& sig, const CanonicalParams& params) {
  const std::size_t n = sig.size();
  double d = 1.0;
  for (const auto& b : params.blocks) {
    const std::size_t exponent = n - b.k - 1;
    if (exponent == 0) continue;
    d *= std::pow(kernel_vs(block_argument(sig, b)), static_cast<double>(exponent));
  }
  return d;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Sampler::Sampler(Signature sig, double truncation, std::size_t start) : sig_(std::move(sig)), start_(start) {
  const std::size_t n = sig_.size();
  if (start_ >= n) throw DomainError("sampler start must be below n");
  for (std::size_t k = start_; k < n; ++k) {
    DomainSpec spec = domain(sig_, k);
    const Vector w = block_weights(sig_, k);
    const auto d = w.size();
    Vector lo(d);
    Vector hi(d);
    bool needs_truncation = false;
    if (spec.kind == DomainKind::circle) {
      lo(0) = 0.0;
      hi(0) = 2.0 * kPi;
    } else {
      const bool nonnegative = w.minCoeff() >= 0.0;
      for (Eigen::Index r = 0; r < d; ++r) {
        if (spec.kind == DomainKind::real_ball && nonnegative && w(r) > 0.0) {
          hi(r) = kPi / std::sqrt(w(r));
        } else {
          needs_truncation = true;
          hi(r) = truncation;
        }
        lo(r) = -hi(r);
      }
    }
    if (needs_truncation && !(truncation > 0.0 && std::isfinite(truncation))) {
      throw ConfigError("block " + std::to_string(k) + " is noncompact (" + std::string(to_string(spec.kind)) +
                        ") and needs a positive truncation");
    }
    volume_ *= (hi - lo).prod();
    domains_.push_back(std::move(spec));
    lo_.push_back(std::move(lo));
    hi_.push_back(std::move(hi));
  }
}

CanonicalParams Sampler::draw(CounterRng& rng) const {
  CanonicalParams out;
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    Vector q(lo_[i].size());
    for (Eigen::Index r = 0; r < q.size(); ++r) q(r) = rng.uniform(lo_[i](r), hi_[i](r));
    out.blocks.push_back({domains_[i].k, std::move(q)});
  }
  return out;
}

CanonicalParams Sampler::propose(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) const {
  CounterRng rng(seed, stream, index);
  return draw(rng);
}

bool Sampler::contains(const CanonicalParams& params) const {
  if (params.blocks.size() != domains_.size()) return false;
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    if (!domains_[i].contains(sig_, params.blocks[i].q)) return false;
  }
  return true;
}

MeasureSample Sampler::sample(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) const {
  CounterRng rng(seed, stream, index);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    CanonicalParams p = draw(rng);
    if (contains(p)) {
      const double w = density(sig_, p);
      return {std::move(p), w};
    }
  }
  throw ConfigError("rejection sampler failed to hit the domain");
}

MeasureSample sample(const Signature& sig, std::uint64_t seed, double truncation) {
  return Sampler(sig, truncation).sample(seed, 0, 0);
}

Estimate integrate(const Signature& sig, const ParamFunction& f, std::size_t samples, std::uint64_t seed,
                   double truncation, std::size_t start, std::size_t threads) {
  if (samples < 2) throw ConfigError("integrate needs at least two samples");
  const Sampler sampler(sig, truncation, start);
  const double volume = sampler.box_volume();

  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Partial> partial(kSampleStreams);

  auto run_stream = [&](std::size_t s) {
    Partial acc;
    for (std::size_t i = s; i < samples; i += kSampleStreams) {
      const CanonicalParams p = sampler.propose(seed, s, i / kSampleStreams);
      double v = 0.0;
      if (sampler.contains(p)) v = volume * density(sig, p) * f(p);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    partial[s] = acc;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, kSampleStreams);
  if (threads == 1) {
    for (std::size_t s = 0; s < kSampleStreams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t s = t; s < kSampleStreams; s += threads) run_stream(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const auto count = static_cast<double>(samples);
  const double mean = sum / count;
  const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
  return {mean, std::sqrt(var / count)};
}

CanonicalParams left_shift(const Signature& sig, const Matrix& g0, const CanonicalParams& params) {
  const std::size_t start = params.blocks.empty() ? 0 : params.blocks.front().k;
  return factorize(sig, g0 * group_element(sig, params).matrix, start);
}

CanonicalParams right_shift(const Signature& sig, const Matrix& g0, const CanonicalParams& params) {
  const std::size_t start = params.blocks.empty() ? 0 : params.blocks.front().k;
  return factorize(sig, group_element(sig, params).matrix * g0, start);
}

}  // namespace ck
