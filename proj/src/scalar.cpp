#include "ck/scalar.hpp"

#include <cmath>

#include "ck/errors.hpp"

namespace ck {

namespace {

void require_finite(double u, const char* what) {
  if (!std::isfinite(u)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

void check_range(const Signature& sig, std::size_t a, std::size_t b) {
  if (a < 1 || b > sig.size() || a > sig.size() + 1) {
    throw DomainError("index range [" + std::to_string(a) + ", " + std::to_string(b) +
                      "] outside signature of length " + std::to_string(sig.size()));
  }
}

// Horner evaluation of sum_{k=0}^{8} (-u)^k / (2k + offset)!.
double taylor8(double u, int offset) {
  double coeff[9];
  double fact = 1.0;
  for (int i = 1; i <= offset; ++i) fact *= i;
  for (int k = 0; k < 9; ++k) {
    coeff[k] = 1.0 / fact;
    const int m = 2 * k + offset;
    fact *= static_cast<double>((m + 1) * (m + 2));
  }
  double acc = coeff[8];
  for (int k = 7; k >= 0; --k) acc = coeff[k] - u * acc;
  return acc;
}

}  // namespace

char Branch::token() const noexcept {
  switch (kind) {
    case BranchKind::elliptic: return '1';
    case BranchKind::parabolic: return 'd';
    case BranchKind::hyperbolic: return 'i';
  }
  return '?';
}

Signature::Signature(std::vector<Branch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw DomainError("signature must contain at least one branch");
  squares_.reserve(branches_.size());
  for (const auto b : branches_) squares_.push_back(static_cast<double>(b.square()));
}

Branch Signature::branch(std::size_t m) const {
  if (m < 1 || m > branches_.size()) {
    throw DomainError("branch index " + std::to_string(m) + " out of range");
  }
  return branches_[m - 1];
}

double Signature::square(std::size_t m) const {
  if (m < 1 || m > squares_.size()) {
    throw DomainError("branch index " + std::to_string(m) + " out of range");
  }
  return squares_[m - 1];
}

double Signature::weight(std::size_t a, std::size_t b) const {
  double w = 1.0;
  for (std::size_t m = a; m <= b; ++m) w *= square(m);
  return w;
}

Signature Signature::tail(std::size_t k) const {
  if (k >= branches_.size()) throw DomainError("tail index out of range");
  Signature out(std::vector<Branch>(branches_.begin() + static_cast<std::ptrdiff_t>(k), branches_.end()));
  out.squares_.assign(squares_.begin() + static_cast<std::ptrdiff_t>(k), squares_.end());
  out.deformed_ = deformed_;
  return out;
}

Signature Signature::deformed(double eps) const {
  require_finite(eps, "deformed");
  Signature out = *this;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (branches_[i].kind == BranchKind::parabolic) {
      out.squares_[i] = eps * eps;
      out.deformed_ = true;
    }
  }
  return out;
}

std::string Signature::str() const {
  std::string s;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (i) s += ',';
    s += branches_[i].token();
  }
  return s;
}

Signature parse_signature(std::string_view text) {
  std::vector<Branch> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token == "1") {
      out.push_back(Branch::elliptic());
    } else if (token == "d") {
      out.push_back(Branch::parabolic());
    } else if (token == "i") {
      out.push_back(Branch::hyperbolic());
    } else {
      throw DomainError("bad signature token '" + std::string(token) + "' (expected 1, d or i)");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() < 2) throw DomainError("signature needs at least two entries");
  return Signature(std::move(out));
}

std::vector<Signature> all_signatures(std::size_t n) {
  static constexpr Branch kAll[] = {Branch::elliptic(), Branch::parabolic(), Branch::hyperbolic()};
  std::vector<Signature> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Branch> b(n);
    std::size_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      b[i] = kAll[c % 3];
      c /= 3;
    }
    out.emplace_back(std::move(b));
  }
  return out;
}

double kernel_vc(double u) {
  require_finite(u, "kernel_vc");
  if (std::fabs(u) < kKernelSeriesThreshold) return taylor8(u, 0);
  if (u > 0.0) return std::cos(std::sqrt(u));
  return std::cosh(std::sqrt(-u));
}

double kernel_vs(double u) {
  require_finite(u, "kernel_vs");
  if (std::fabs(u) < kKernelSeriesThreshold) return taylor8(u, 1);
  if (u > 0.0) {
    const double s = std::sqrt(u);
    return std::sin(s) / s;
  }
  const double s = std::sqrt(-u);
  return std::sinh(s) / s;
}

double kernel_vg(double u) {
  require_finite(u, "kernel_vg");
  if (std::fabs(u) < kKernelSeriesThreshold) return taylor8(u, 2);
  // 1 - cos x = 2 sin^2(x/2) avoids the cancellation of the textbook form.
  if (u > 0.0) {
    const double h = std::sin(0.5 * std::sqrt(u));
    return 2.0 * h * h / u;
  }
  const double h = std::sinh(0.5 * std::sqrt(-u));
  return 2.0 * h * h / (-u);
}

int sigma_product(const Signature& sig, std::size_t a, std::size_t b) {
  check_range(sig, a, b);
  int p = 1;
  for (std::size_t m = a; m <= b; ++m) p *= sig.branch(m).square();
  return p;
}

std::string_view to_string(Compactness c) noexcept {
  switch (c) {
    case Compactness::compact: return "compact";
    case Compactness::parabolic: return "parabolic";
    case Compactness::hyperbolic: return "hyperbolic";
  }
  return "?";
}

Compactness compactness(const Signature& sig, std::size_t a, std::size_t b) {
  check_range(sig, a, b);
  std::size_t imaginary = 0;
  for (std::size_t m = a; m <= b; ++m) {
    switch (sig.branch(m).kind) {
      case BranchKind::parabolic: return Compactness::parabolic;
      case BranchKind::hyperbolic: ++imaginary; break;
      case BranchKind::elliptic: break;
    }
  }
  return imaginary % 2 == 0 ? Compactness::compact : Compactness::hyperbolic;
}

}  // namespace ck
