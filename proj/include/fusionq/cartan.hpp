#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fusionq/weight.hpp"

namespace fusionq {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<int>>;
// A permutation of the extended vertex set {0..r}: perm[i] is the image of i.
using Permutation = std::vector<int>;

enum class Family { A, B, C, D, E, F, G };

char family_letter(Family f);
Family parse_family(const std::string& s);

struct DynkinType {
  Family family = Family::A;
  int rank = 1;

  // Throws ConstructionError naming the violated rank bound.
  void validate() const;
  bool is_classical() const { return family <= Family::D; }
  bool is_simply_laced() const {
    return family == Family::A || family == Family::D || family == Family::E;
  }
  std::string name() const;

  friend auto operator<=>(const DynkinType&, const DynkinType&) = default;
};

// Immutable root datum for one simple type, vertex labels as in the standard
// Bourbaki-style diagrams (0 is the affine vertex).
//
// Conventions: C_ab = (α_a^∨|α_b); α_b = Σ_a C_ab ω_a; t_a = 2/(α_a|α_a);
// (θ|θ) = 2. Vertex-indexed vectors (marks, comarks, tau, ...) are indexed by
// the vertex itself, so entry 0 belongs to the affine vertex where defined.
class RootSystem {
 public:
  explicit RootSystem(DynkinType type);

  const DynkinType& dynkin() const { return type_; }
  int rank() const { return type_.rank; }

  // 0-based: cartan()[a-1][b-1] = C_ab.
  const IntMatrix& cartan() const { return cartan_; }
  // (r+1)x(r+1) extended matrix (α_i^∨|α_j), i, j in 0..r.
  const IntMatrix& extended_cartan() const { return extended_cartan_; }
  // 0-based: gram()[i][j] = (ω_{i+1}|ω_{j+1}).
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }
  // Rows of simple roots in fundamental-weight coordinates.
  const std::vector<Weight>& simple_roots() const { return simple_roots_; }

  int t(int a) const { return t_[a - 1]; }
  const std::vector<int>& marks() const { return marks_; }
  const std::vector<int>& comarks() const { return comarks_; }
  int coxeter() const { return coxeter_; }
  int dual_coxeter() const { return dual_coxeter_; }
  const Weight& theta() const { return theta_; }
  const std::vector<int>& theta_root_coords() const { return theta_root_; }
  const Weight& rho() const { return rho_; }

  const std::vector<Weight>& positive_roots() const { return positive_roots_; }
  // Same order as positive_roots(), in simple-root coordinates.
  const std::vector<std::vector<int>>& positive_root_coords() const { return positive_root_coords_; }

  // Exact form and its integer-scaled version: scaled_form(x,y) = form_scale()·(x|y).
  Rational form(const Weight& x, const Weight& y) const;
  std::int64_t scaled_form(const Weight& x, const Weight& y) const;
  std::int64_t form_scale() const { return form_scale_; }
  const std::vector<std::vector<std::int64_t>>& scaled_gram() const { return scaled_gram_; }

  Weight reflect(const Weight& w, int a) const;
  // Reflects into the dominant chamber; parity receives ℓ(w) mod 2 when given.
  Weight dominant_conjugate(const Weight& w, int* parity = nullptr) const;
  Weight from_root_coords(const std::vector<int>& coords) const;
  std::vector<Rational> to_root_coords(const Weight& w) const;

  // Weyl dimension formula; throws NotDominant for non-dominant input.
  std::int64_t weyl_dimension(const Weight& lambda) const;

  // |P/Q^∨| = |det C|·Π t_a.
  std::int64_t index_p_over_coroot() const { return p_over_coroot_; }
  // True when w (fundamental-weight coordinates) lies in the coroot lattice.
  bool in_coroot_lattice(const Weight& w) const;

  // Diagram data.
  const Permutation& conj_perm() const { return conj_perm_; }
  const std::vector<Permutation>& outer_generators() const { return outer_generators_; }
  const std::vector<Permutation>& outer_group() const { return outer_group_; }
  bool is_outer_automorphism(const Permutation& p) const;
  // The unique element τ of the outer group with τ(0) = j.
  const Permutation& outer_with_zero_image(int j) const;
  // τ_a ω̂_0 = ω̂_{tau_zero_image(a)}.
  int tau_zero_image(int a) const { return tau_[a]; }
  const Permutation& tau(int a) const { return outer_with_zero_image(tau_[a]); }
  int sigma(int a) const { return sigma_[a]; }
  // τ_a ∘ *, derived by composition.
  const Permutation& tau_star(int a) const { return tau_star_[a]; }
  const std::vector<int>& minuscule_vertices() const { return minuscule_; }
  bool is_minuscule(int a) const;
  // M of the full-period table: W_{m + M t_a (k+h∨)} = W_m.
  int period_multiplier() const { return period_multiplier_; }

 private:
  void build_cartan();
  void build_form();
  void build_roots();
  void build_affine();
  void build_diagram_tables();

  DynkinType type_;
  IntMatrix cartan_;
  IntMatrix extended_cartan_;
  std::vector<int> t_;
  std::vector<std::vector<Rational>> gram_;
  std::int64_t form_scale_ = 1;
  std::vector<std::vector<std::int64_t>> scaled_gram_;
  std::vector<std::vector<Rational>> cartan_inverse_;
  std::vector<Weight> simple_roots_;
  std::vector<int> marks_;
  std::vector<int> comarks_;
  int coxeter_ = 0;
  int dual_coxeter_ = 0;
  Weight theta_;
  std::vector<int> theta_root_;
  Weight rho_;
  std::vector<Weight> positive_roots_;
  std::vector<std::vector<int>> positive_root_coords_;
  std::int64_t p_over_coroot_ = 1;
  Permutation conj_perm_;
  std::vector<Permutation> outer_generators_;
  std::vector<Permutation> outer_group_;
  std::vector<int> tau_;
  std::vector<int> sigma_;
  std::vector<Permutation> tau_star_;
  std::vector<int> minuscule_;
  int period_multiplier_ = 1;
};

RootSystem build_root_system(DynkinType type);
std::shared_ptr<const RootSystem> make_root_system(DynkinType type);

// (x|y), exact. Throws DimensionMismatch if the lengths differ from the rank.
Rational bilinear_form(const Weight& x, const Weight& y, const RootSystem& rs);

// Weights of the irreducible module V(highest) with multiplicities.
struct WeightSystem {
  Weight highest;
  std::map<Weight, std::int64_t> entries;

  std::int64_t dimension() const;
  std::int64_t multiplicity(const Weight& w) const;
};

// Freudenthal multiplicities of the dominant weights below lambda, in order of
// increasing depth (lambda first).
std::vector<std::pair<Weight, std::int64_t>> dominant_multiplicities(const Weight& lambda,
                                                                     const RootSystem& rs);
// Dominant multiplicities expanded over Weyl orbits.
WeightSystem weight_multiplicities(const Weight& lambda, const RootSystem& rs);
// Weyl orbit of a dominant weight.
std::vector<Weight> weyl_orbit(const Weight& dominant, const RootSystem& rs);

// β_1, ..., β_{h∨-1} in simple-root coordinates with (ω_a|β_l) = 1, (ρ|β_l) = l.
struct BetaChain {
  int vertex = 0;
  std::vector<std::vector<int>> chain;
};

// Exhaustive search over Δ_+. Throws InternalError if some level has no root.
BetaChain verify_beta_chain(int a, const RootSystem& rs);
// The explicit reflection recipe for types A-D; empty for other families.
BetaChain explicit_beta_chain(int a, const RootSystem& rs);
// True when the chain satisfies (ω_a|β_l)=1, (ρ|β_l)=l, β_1 = α_a, β_{h∨-1} = θ.
bool is_valid_beta_chain(const BetaChain& chain, const RootSystem& rs);

}  // namespace fusionq
