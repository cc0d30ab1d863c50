#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "fusionq/cartan.hpp"
#include "fusionq/weight.hpp"

namespace fusionq {

// Result of bringing a level-k weight into the fundamental alcove.
struct ReducedWeight {
  enum class Outcome { Zero, Signed };
  Outcome outcome = Outcome::Zero;
  int sign = 0;
  AffineWeight dominant;

  bool is_zero() const { return outcome == Outcome::Zero; }
  friend bool operator==(const ReducedWeight&, const ReducedWeight&) = default;
};

// Which negative coordinate alcove_reduce reflects first.
enum class ReflectionPolicy { LowestIndex, HighestIndex };

// Finite integer combination of dominant level-k basis weights.
class FusionElement {
 public:
  using Terms = std::map<AffineWeight, std::int64_t>;

  FusionElement() = default;
  static FusionElement basis(const AffineWeight& w, std::int64_t c = 1);

  const Terms& terms() const { return terms_; }
  std::int64_t coefficient(const AffineWeight& w) const;
  std::size_t size() const { return terms_.size(); }

  void add(const AffineWeight& w, std::int64_t c);
  void add(const ReducedWeight& r, std::int64_t c);

  bool is_zero() const { return terms_.empty(); }
  bool is_nonnegative() const;
  bool is_nonpositive() const;
  bool is_positive() const { return !is_zero() && is_nonnegative(); }
  bool is_negative() const { return !is_zero() && is_nonpositive(); }

  FusionElement& operator+=(const FusionElement& other);
  FusionElement& operator-=(const FusionElement& other);
  friend FusionElement operator+(FusionElement a, const FusionElement& b) { return a += b; }
  friend FusionElement operator-(FusionElement a, const FusionElement& b) { return a -= b; }
  friend FusionElement operator*(std::int64_t s, const FusionElement& u);
  FusionElement operator-() const { return -1 * *this; }
  friend bool operator==(const FusionElement&, const FusionElement&) = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

class FusionContext {
 public:
  FusionContext(std::shared_ptr<const RootSystem> rs, int level);
  FusionContext(DynkinType type, int level);

  const RootSystem& rs() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system() const { return rs_; }
  int level() const { return level_; }
  // k + h∨
  int shifted_level() const { return level_ + rs_->dual_coxeter(); }

  const std::vector<AffineWeight>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  bool contains(const AffineWeight& w) const { return index_.count(w) > 0; }
  std::size_t index_of(const AffineWeight& w) const;

  AffineWeight vacuum() const;
  FusionElement unit() const { return FusionElement::basis(vacuum()); }
  // V_{k ω̂_j}
  AffineWeight simple_current(int j) const;

  // Throws LevelMismatch / DimensionMismatch.
  void check_weight(const AffineWeight& w) const;
  void check_element(const FusionElement& u) const;

  // Memoized Freudenthal weight system of V(lambda).
  std::shared_ptr<const WeightSystem> weight_system(const Weight& lambda) const;
  // Memoized Kac-Walton product of two basis weights, by basis index.
  const FusionElement& basis_product(std::size_t i, std::size_t j) const;

  // Cached products as (i, j, product) with i <= j, for persistence.
  std::vector<std::tuple<std::size_t, std::size_t, FusionElement>> cached_products() const;
  void preload_product(std::size_t i, std::size_t j, FusionElement product) const;

 private:
  FusionElement compute_basis_product(std::size_t i, std::size_t j) const;

  std::shared_ptr<const RootSystem> rs_;
  int level_;
  std::vector<AffineWeight> basis_;
  std::unordered_map<AffineWeight, std::size_t, WeightHash> index_;
  std::vector<std::int64_t> basis_dimension_;

  mutable std::shared_mutex ws_mutex_;
  mutable std::unordered_map<Weight, std::shared_ptr<const WeightSystem>, WeightHash> ws_cache_;
  mutable std::shared_mutex product_mutex_;
  mutable std::unordered_map<std::uint64_t, std::unique_ptr<FusionElement>> product_cache_;
};

AffineWeight affinize(const Weight& lambda, const FusionContext& ctx);
// Dominant weights of level k in basis order.
std::vector<AffineWeight> enumerate_basis(const FusionContext& ctx);
std::vector<AffineWeight> enumerate_basis(const RootSystem& rs, int level);

ReducedWeight alcove_reduce(const AffineWeight& lam, const FusionContext& ctx,
                            ReflectionPolicy policy = ReflectionPolicy::LowestIndex);
// The shifted action s_i · lam.
AffineWeight shifted_reflect(const AffineWeight& lam, int i, const RootSystem& rs);

FusionElement fusion_product(const FusionElement& u, const FusionElement& v, const FusionContext& ctx);
FusionElement conjugate(const FusionElement& u, const FusionContext& ctx);
// Relabels basis weights by the permutation: (τλ̂)_{τ(i)} = λ_i.
AffineWeight permute_weight(const AffineWeight& w, const Permutation& tau);
FusionElement apply_outer(const Permutation& tau, const FusionElement& u, const FusionContext& ctx);
// Same action through multiplication by V_{k τ ω̂_0}.
FusionElement apply_outer_by_product(const Permutation& tau, const FusionElement& u, const FusionContext& ctx);

nlohmann::ordered_json to_json(const FusionElement& u, const FusionContext& ctx);
FusionElement fusion_element_from_json(const nlohmann::ordered_json& j, const FusionContext& ctx);

}  // namespace fusionq
