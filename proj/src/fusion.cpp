#include "fusionq/fusion.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "fusionq/errors.hpp"

namespace fusionq {

namespace {

constexpr int kReflectionCap = 1000000;

void enumerate_rec(const RootSystem& rs, int level, int i, int budget, std::vector<int>& coeffs,
                   std::vector<AffineWeight>& out) {
  const int r = rs.rank();
  if (i > r) {
    coeffs[0] = budget;
    out.emplace_back(coeffs);
    return;
  }
  const int c = rs.comarks()[i];
  for (int x = 0; c * x <= budget; ++x) {
    coeffs[i] = x;
    enumerate_rec(rs, level, i + 1, budget - c * x, coeffs, out);
  }
  coeffs[i] = 0;
}

}  // namespace

FusionElement FusionElement::basis(const AffineWeight& w, std::int64_t c) {
  FusionElement u;
  u.add(w, c);
  return u;
}

std::int64_t FusionElement::coefficient(const AffineWeight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

void FusionElement::add(const AffineWeight& w, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void FusionElement::add(const ReducedWeight& r, std::int64_t c) {
  if (!r.is_zero()) add(r.dominant, r.sign * c);
}

bool FusionElement::is_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

bool FusionElement::is_nonpositive() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second < 0; });
}

FusionElement& FusionElement::operator+=(const FusionElement& other) {
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

FusionElement& FusionElement::operator-=(const FusionElement& other) {
  for (const auto& [w, c] : other.terms_) add(w, -c);
  return *this;
}

FusionElement operator*(std::int64_t s, const FusionElement& u) {
  FusionElement out;
  if (s == 0) return out;
  out.terms_ = u.terms_;
  for (auto& [w, c] : out.terms_) c *= s;
  return out;
}

std::string FusionElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    const std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) out << mag << "*";
    out << "V[" << w.to_string() << "]";
    first = false;
  }
  return out.str();
}

FusionContext::FusionContext(std::shared_ptr<const RootSystem> rs, int level) : rs_(std::move(rs)), level_(level) {
  if (!rs_) throw ConstructionError("fusion context needs a root system");
  if (level_ < 2) throw ConstructionError("level must be >= 2 (got " + std::to_string(level_) + ")");
  basis_ = enumerate_basis(*rs_, level_);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  basis_dimension_.reserve(basis_.size());
  for (const auto& w : basis_) basis_dimension_.push_back(rs_->weyl_dimension(w.finite()));
}

FusionContext::FusionContext(DynkinType type, int level) : FusionContext(make_root_system(type), level) {}

std::size_t FusionContext::index_of(const AffineWeight& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw NotDominant("not a dominant level-" + std::to_string(level_) + " weight: " + w.to_string());
  return it->second;
}

AffineWeight FusionContext::vacuum() const { return simple_current(0); }

AffineWeight FusionContext::simple_current(int j) const {
  if (j < 0 || j > rs_->rank()) throw DimensionMismatch("vertex out of range");
  if (rs_->comarks()[j] != 1) throw NotAnAutomorphism("vertex " + std::to_string(j) + " is not a simple-current vertex");
  AffineWeight w(std::vector<int>(rs_->rank() + 1, 0));
  w[j] = level_;
  return w;
}

void FusionContext::check_weight(const AffineWeight& w) const {
  if (w.rank() != rs_->rank())
    throw DimensionMismatch("affine weight has " + std::to_string(w.coeffs.size()) + " coefficients, expected " +
                            std::to_string(rs_->rank() + 1));
  const int lvl = w.level(rs_->comarks());
  if (lvl != level_)
    throw LevelMismatch("weight " + w.to_string() + " has level " + std::to_string(lvl) + ", context level is " +
                        std::to_string(level_));
}

void FusionContext::check_element(const FusionElement& u) const {
  for (const auto& [w, c] : u.terms()) {
    check_weight(w);
    if (!w.is_dominant()) throw NotDominant("fusion element key is not dominant: " + w.to_string());
  }
}

std::shared_ptr<const WeightSystem> FusionContext::weight_system(const Weight& lambda) const {
  {
    std::shared_lock lock(ws_mutex_);
    auto it = ws_cache_.find(lambda);
    if (it != ws_cache_.end()) return it->second;
  }
  auto ws = std::make_shared<const WeightSystem>(weight_multiplicities(lambda, *rs_));
  std::unique_lock lock(ws_mutex_);
  return ws_cache_.emplace(lambda, std::move(ws)).first->second;
}

const FusionElement& FusionContext::basis_product(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::uint64_t key = static_cast<std::uint64_t>(i) * basis_.size() + j;
  {
    std::shared_lock lock(product_mutex_);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return *it->second;
  }
  auto product = std::make_unique<FusionElement>(compute_basis_product(i, j));
  std::unique_lock lock(product_mutex_);
  return *product_cache_.emplace(key, std::move(product)).first->second;
}

std::vector<std::tuple<std::size_t, std::size_t, FusionElement>> FusionContext::cached_products() const {
  std::shared_lock lock(product_mutex_);
  std::vector<std::tuple<std::size_t, std::size_t, FusionElement>> out;
  for (const auto& [key, product] : product_cache_) out.emplace_back(key / basis_.size(), key % basis_.size(), *product);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  return out;
}

void FusionContext::preload_product(std::size_t i, std::size_t j, FusionElement product) const {
  if (i > j) std::swap(i, j);
  if (j >= basis_.size()) throw DimensionMismatch("basis index out of range");
  check_element(product);
  const std::uint64_t key = static_cast<std::uint64_t>(i) * basis_.size() + j;
  std::unique_lock lock(product_mutex_);
  product_cache_.emplace(key, std::make_unique<FusionElement>(std::move(product)));
}

FusionElement FusionContext::compute_basis_product(std::size_t i, std::size_t j) const {
  const AffineWeight vac = vacuum();
  if (basis_[i] == vac) return FusionElement::basis(basis_[j]);
  if (basis_[j] == vac) return FusionElement::basis(basis_[i]);
  // enumerate the weight system of the factor with smaller Weyl dimension
  if (basis_dimension_[i] < basis_dimension_[j]) std::swap(i, j);
  const Weight lambda = basis_[i].finite();
  const auto ws = weight_system(basis_[j].finite());
  FusionElement out;
  for (const auto& [nu, mult] : ws->entries) out.add(alcove_reduce(affinize(lambda + nu, *this), *this), mult);
  return out;
}

AffineWeight affinize(const Weight& lambda, const FusionContext& ctx) {
  const RootSystem& rs = ctx.rs();
  if (lambda.rank() != rs.rank()) throw DimensionMismatch("weight length does not match rank");
  std::vector<int> c(rs.rank() + 1);
  int used = 0;
  for (int i = 1; i <= rs.rank(); ++i) {
    c[i] = lambda[i - 1];
    used += rs.comarks()[i] * c[i];
  }
  c[0] = ctx.level() - used;
  return AffineWeight(std::move(c));
}

std::vector<AffineWeight> enumerate_basis(const RootSystem& rs, int level) {
  std::vector<AffineWeight> out;
  std::vector<int> coeffs(rs.rank() + 1, 0);
  enumerate_rec(rs, level, 1, level, coeffs, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AffineWeight> enumerate_basis(const FusionContext& ctx) { return ctx.basis(); }

AffineWeight shifted_reflect(const AffineWeight& lam, int i, const RootSystem& rs) {
  const auto& ext = rs.extended_cartan();
  AffineWeight out = lam;
  const int c = lam[i] + 1;
  for (std::size_t j = 0; j < out.coeffs.size(); ++j) out[j] -= c * ext[j][i];
  return out;
}

ReducedWeight alcove_reduce(const AffineWeight& lam, const FusionContext& ctx, ReflectionPolicy policy) {
  ctx.check_weight(lam);
  const auto& ext = ctx.rs().extended_cartan();
  const int n = static_cast<int>(lam.coeffs.size());
  std::vector<int> mu = lam.coeffs;
  for (int& x : mu) x += 1;
  int parity = 0;
  for (int steps = 0;; ++steps) {
    if (steps > kReflectionCap) throw InternalError("alcove reduction exceeded the reflection cap for " + lam.to_string());
    int pick = -1;
    for (int t = 0; t < n; ++t) {
      const int i = policy == ReflectionPolicy::LowestIndex ? t : n - 1 - t;
      if (mu[i] == 0) return {};
      if (mu[i] < 0 && pick < 0) pick = i;
    }
    if (pick < 0) break;
    const int c = mu[pick];
    for (int j = 0; j < n; ++j) mu[j] -= c * ext[j][pick];
    parity ^= 1;
  }
  for (int& x : mu) x -= 1;
  return {ReducedWeight::Outcome::Signed, parity ? -1 : 1, AffineWeight(std::move(mu))};
}

FusionElement fusion_product(const FusionElement& u, const FusionElement& v, const FusionContext& ctx) {
  ctx.check_element(u);
  ctx.check_element(v);
  FusionElement out;
  for (const auto& [a, ca] : u.terms()) {
    const std::size_t ia = ctx.index_of(a);
    for (const auto& [b, cb] : v.terms()) {
      const auto& p = ctx.basis_product(ia, ctx.index_of(b));
      for (const auto& [w, c] : p.terms()) out.add(w, c * ca * cb);
    }
  }
  return out;
}

AffineWeight permute_weight(const AffineWeight& w, const Permutation& tau) {
  if (tau.size() != w.coeffs.size()) throw DimensionMismatch("permutation size does not match the extended diagram");
  AffineWeight out(std::vector<int>(w.coeffs.size(), 0));
  for (std::size_t i = 0; i < tau.size(); ++i) out[tau[i]] = w[i];
  return out;
}

FusionElement conjugate(const FusionElement& u, const FusionContext& ctx) {
  FusionElement out;
  for (const auto& [w, c] : u.terms()) out.add(permute_weight(w, ctx.rs().conj_perm()), c);
  return out;
}

FusionElement apply_outer(const Permutation& tau, const FusionElement& u, const FusionContext& ctx) {
  if (!ctx.rs().is_outer_automorphism(tau)) throw NotAnAutomorphism("permutation is not an outer automorphism of the extended diagram");
  FusionElement out;
  for (const auto& [w, c] : u.terms()) out.add(permute_weight(w, tau), c);
  return out;
}

FusionElement apply_outer_by_product(const Permutation& tau, const FusionElement& u, const FusionContext& ctx) {
  if (!ctx.rs().is_outer_automorphism(tau)) throw NotAnAutomorphism("permutation is not an outer automorphism of the extended diagram");
  return fusion_product(FusionElement::basis(ctx.simple_current(tau[0])), u, ctx);
}

nlohmann::ordered_json to_json(const FusionElement& u, const FusionContext& ctx) {
  nlohmann::ordered_json j;
  j["family"] = std::string(1, family_letter(ctx.rs().dynkin().family));
  j["rank"] = ctx.rs().rank();
  j["level"] = ctx.level();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [w, c] : u.terms()) {
    nlohmann::ordered_json t;
    t["w"] = w.coeffs;
    t["c"] = c;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

FusionElement fusion_element_from_json(const nlohmann::ordered_json& j, const FusionContext& ctx) {
  const auto& rs = ctx.rs();
  if (j.at("family").get<std::string>() != std::string(1, family_letter(rs.dynkin().family)) ||
      j.at("rank").get<int>() != rs.rank())
    throw DimensionMismatch("serialized element belongs to a different algebra");
  if (j.at("level").get<int>() != ctx.level()) throw LevelMismatch("serialized element has a different level");
  FusionElement u;
  for (const auto& t : j.at("terms")) u.add(AffineWeight(t.at("w").get<std::vector<int>>()), t.at("c").get<std::int64_t>());
  ctx.check_element(u);
  return u;
}

}  // namespace fusionq
