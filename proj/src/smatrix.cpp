#include "fusionq/smatrix.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include "fusionq/errors.hpp"
#include "fusionq/parallel.hpp"

namespace fusionq {

namespace {

constexpr double kCsvFlushBelow = 1e-14;

std::int64_t positive_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::vector<std::int64_t> scaled_dual(const Weight& y, const RootSystem& rs) {
  const int r = rs.rank();
  std::vector<std::int64_t> v(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) v[i] += rs.scaled_gram()[i][j] * y[j];
  return v;
}

}  // namespace

WeylGroup::WeylGroup(const RootSystem& rs) : rank_(rs.rank()) {
  if (rank_ > kOracleRankCap)
    throw OracleUnavailable("S-matrix oracle is capped at rank " + std::to_string(kOracleRankCap) + ", got " +
                            rs.dynkin().name());
  const int r = rank_;
  std::vector<int> identity(r * r, 0);
  for (int i = 0; i < r; ++i) identity[i * r + i] = 1;
  // w is identified by w(ρ), which has trivial stabilizer.
  std::set<std::vector<int>> seen{rs.rho().coeffs};
  elements_.push_back({identity, 1});
  std::size_t begin = 0;
  while (begin < elements_.size()) {
    const std::size_t end = elements_.size();
    for (std::size_t e = begin; e < end; ++e) {
      for (int a = 1; a <= r; ++a) {
        // left multiplication by s_a: row_j -= C_ja·row_a
        std::vector<int> m = elements_[e].matrix;
        for (int j = 0; j < r; ++j) {
          const int c = rs.cartan()[j][a - 1];
          if (c == 0) continue;
          for (int col = 0; col < r; ++col) m[j * r + col] -= c * elements_[e].matrix[(a - 1) * r + col];
        }
        std::vector<int> image(r, 0);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) image[i] += m[i * r + j];
        if (seen.insert(image).second) elements_.push_back({std::move(m), -elements_[e].sign});
      }
    }
    begin = end;
  }
}

Weight WeylGroup::apply(const Element& w, const Weight& lambda) const {
  Weight out = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += w.matrix[i * rank_ + j] * lambda[j];
  return out;
}

std::shared_ptr<const WeylGroup> weyl_group(const RootSystem& rs) {
  static std::mutex mutex;
  static std::map<DynkinType, std::shared_ptr<const WeylGroup>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(rs.dynkin());
    if (it != cache.end()) return it->second;
  }
  auto group = std::make_shared<const WeylGroup>(rs);
  std::lock_guard lock(mutex);
  return cache.emplace(rs.dynkin(), std::move(group)).first->second;
}

double SMatrix::unitarity_residual() const {
  double worst = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Complex s = 0;
      for (std::size_t l = 0; l < n_; ++l) s += (*this)(i, l) * std::conj((*this)(j, l));
      worst = std::max(worst, std::abs(s - Complex(i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double SMatrix::symmetry_residual() const {
  double worst = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

SEvaluator::SEvaluator(const FusionContext& ctx) : ctx_(ctx), weyl_(weyl_group(ctx.rs())) {
  const RootSystem& rs = ctx.rs();
  const int r = rs.rank();
  const int kh = ctx.shifted_level();
  modulus_ = rs.form_scale() * kh;
  roots_of_unity_.resize(modulus_);
  for (std::int64_t j = 0; j < modulus_; ++j)
    roots_of_unity_[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(modulus_));
  const int npos = static_cast<int>(rs.positive_roots().size());
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double norm = std::sqrt(static_cast<double>(rs.index_p_over_coroot()) * std::pow(static_cast<double>(kh), r));
  prefactor_ = powers[npos % 4] / norm;
  for (const auto& mu : ctx.basis()) basis_duals_.push_back(scaled_dual(mu.finite() + rs.rho(), rs));
}

Complex SEvaluator::entry(const Weight& lambda, const Weight& mu) const {
  const RootSystem& rs = ctx_.rs();
  const Weight x = lambda + rs.rho();
  const auto v = scaled_dual(mu + rs.rho(), rs);
  Complex sum = 0;
  for (const auto& w : weyl_->elements()) {
    const Weight y = weyl_->apply(w, x);
    std::int64_t s = 0;
    for (int i = 0; i < rs.rank(); ++i) s += y[i] * v[i];
    sum += static_cast<double>(w.sign) * roots_of_unity_[positive_mod(s, modulus_)];
  }
  return prefactor_ * sum;
}

std::vector<Complex> SEvaluator::row(const Weight& lambda) const {
  const RootSystem& rs = ctx_.rs();
  const int r = rs.rank();
  const Weight x = lambda + rs.rho();
  std::vector<Weight> images;
  images.reserve(weyl_->size());
  for (const auto& w : weyl_->elements()) images.push_back(weyl_->apply(w, x));
  std::vector<Complex> out(basis_duals_.size());
  for (std::size_t b = 0; b < basis_duals_.size(); ++b) {
    const auto& v = basis_duals_[b];
    Complex sum = 0;
    for (std::size_t e = 0; e < images.size(); ++e) {
      std::int64_t s = 0;
      for (int i = 0; i < r; ++i) s += images[e][i] * v[i];
      sum += static_cast<double>(weyl_->elements()[e].sign) * roots_of_unity_[positive_mod(s, modulus_)];
    }
    out[b] = prefactor_ * sum;
  }
  return out;
}

Complex SEvaluator::phase(const Weight& x, const Weight& y) const {
  const RootSystem& rs = ctx_.rs();
  const std::int64_t d = rs.form_scale();
  const std::int64_t s = positive_mod(rs.scaled_form(x, y), d);
  return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(d));
}

SMatrix build_smatrix(const FusionContext& ctx, double zero_tol, int threads) {
  const SEvaluator eval(ctx);
  const std::size_t n = ctx.size();
  SMatrix S(n, zero_tol);
  parallel_for(
      n,
      [&](std::size_t i) {
        const auto row = eval.row(ctx.basis()[i].finite());
        for (std::size_t j = 0; j < n; ++j) S.at(i, j) = row[j];
      },
      threads);
  return S;
}

std::int64_t verlinde_coefficient(const AffineWeight& l, const AffineWeight& m, const AffineWeight& n,
                                  const SMatrix& S, const FusionContext& ctx, double tol, double* residual) {
  const std::size_t il = ctx.index_of(l), im = ctx.index_of(m), in = ctx.index_of(n);
  const std::size_t i0 = ctx.index_of(ctx.vacuum());
  Complex sum = 0;
  for (std::size_t w = 0; w < S.size(); ++w) sum += S(il, w) * S(im, w) * std::conj(S(in, w)) / S(i0, w);
  const double rounded = std::round(sum.real());
  const double res = std::max(std::abs(sum.real() - rounded), std::abs(sum.imag()));
  if (residual) *residual = res;
  if (res >= tol)
    throw NumericDegradation("Verlinde rounding residual " + std::to_string(res) + " exceeds tolerance for " +
                             l.to_string() + ", " + m.to_string() + ", " + n.to_string());
  return static_cast<std::int64_t>(rounded);
}

double quantum_dimension(const AffineWeight& l, const FusionContext& ctx) {
  ctx.check_weight(l);
  const RootSystem& rs = ctx.rs();
  const Weight x = l.finite() + rs.rho();
  const std::int64_t d = rs.form_scale();
  const double kh = static_cast<double>(ctx.shifted_level()) * static_cast<double>(d);
  double num = 1, den = 1;
  for (const auto& alpha : rs.positive_roots()) {
    const std::int64_t top = rs.scaled_form(x, alpha);
    if (positive_mod(top, d * ctx.shifted_level()) == 0) return 0.0;
    num *= std::sin(std::numbers::pi * static_cast<double>(top) / kh);
    den *= std::sin(std::numbers::pi * static_cast<double>(rs.scaled_form(rs.rho(), alpha)) / kh);
  }
  return num / den;
}

double quantum_dimension(const FusionElement& u, const FusionContext& ctx) {
  double total = 0;
  for (const auto& [w, c] : u.terms()) total += static_cast<double>(c) * quantum_dimension(w, ctx);
  return total;
}

Complex generalized_qdim(const FusionElement& u, const AffineWeight& mu, const SMatrix& S, const FusionContext& ctx) {
  const std::size_t j = ctx.index_of(mu);
  const Complex s0 = S(ctx.index_of(ctx.vacuum()), j);
  Complex total = 0;
  for (const auto& [w, c] : u.terms()) total += static_cast<double>(c) * S(ctx.index_of(w), j);
  return total / s0;
}

std::vector<Complex> generalized_qdims(const FusionElement& u, const SMatrix& S, const FusionContext& ctx) {
  std::vector<Complex> out;
  out.reserve(ctx.size());
  for (const auto& mu : ctx.basis()) out.push_back(generalized_qdim(u, mu, S, ctx));
  return out;
}

std::string smatrix_csv(const SMatrix& S, const FusionContext& ctx) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ctx.size(); ++i) out << (i ? "," : "") << ctx.basis()[i].label();
  out << '\n';
  char buf[96];
  auto clean = [](double x) { return std::abs(x) < kCsvFlushBelow ? 0.0 : x; };
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = 0; j < S.size(); ++j) {
      std::snprintf(buf, sizeof buf, "\"%.15g,%.15g\"", clean(S(i, j).real()), clean(S(i, j).imag()));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fusionq
