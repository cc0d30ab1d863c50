#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusionq/fusion.hpp"
#include "fusionq/smatrix.hpp"

namespace fusionq {

struct KRIndex {
  int a = 1;
  int m = 0;

  friend auto operator<=>(const KRIndex&, const KRIndex&) = default;
};

// (a, m) ∈ H_k: 0 <= m <= t_a k.
bool in_level_range(const KRIndex& i, const RootSystem& rs, int level);
// (a, m) ∈ H̊_k: 1 <= m <= t_a k - 1.
bool in_interior_range(const KRIndex& i, const RootSystem& rs, int level);

// Neighbour indices ⌊(C_ba m - j)/C_ab⌋ of the Q-system product term, one entry
// per factor, as (b, index) pairs.
std::vector<KRIndex> relation_factors(int a, int m, const RootSystem& rs);

// True when Ω^(a)_m is available for the vertex.
bool kr_data_available(const RootSystem& rs, int a);
// True when the data for this type rests on the minuscule assumption.
bool kr_data_conditional(const RootSystem& rs);
// The finite weights Ω^(a)_m, sorted.
std::vector<Weight> kr_omega(int a, int m, const RootSystem& rs);
// Σ_{ω ∈ Ω^(a)_m} V_ω̂ after alcove reduction.
FusionElement kr_element(int a, int m, const FusionContext& ctx);

class WGrid {
 public:
  WGrid(const FusionContext& ctx, std::vector<int> horizons);

  const FusionContext& context() const { return *ctx_; }
  int horizon(int a) const { return horizons_[a - 1]; }
  const std::vector<int>& horizons() const { return horizons_; }
  bool has(int a, int m) const { return m >= -1 && m <= horizon(a); }
  // W^(a)_m; zero for m = -1.
  const FusionElement& at(int a, int m) const;
  FusionElement& slot(int a, int m) { return table_[a - 1][m]; }

 private:
  const FusionContext* ctx_;
  std::vector<int> horizons_;
  std::vector<std::vector<FusionElement>> table_;
  FusionElement zero_;
};

// Default per-vertex horizon 2 M t_a (k+h∨) - 1: one full period plus room to compare it.
std::vector<int> auto_horizons(const FusionContext& ctx);
WGrid generate_w_grid(const FusionContext& ctx, int threads = 0);
WGrid generate_w_grid(const FusionContext& ctx, int horizon, int threads);
WGrid generate_w_grid(const FusionContext& ctx, std::vector<int> horizons, int threads);

enum class Status { Pass, Fail, Unsupported };
std::string status_name(Status s);

struct CheckItem {
  std::string id;
  int vertex = 0;
  int m = 0;
  Status status = Status::Pass;
};

struct Counterexample {
  std::string id;
  int vertex = 0;
  int m = 0;
  nlohmann::ordered_json detail;
};

struct Report {
  std::string check;
  DynkinType type;
  int level = 0;
  bool conditional = false;
  std::vector<CheckItem> items;
  std::vector<Counterexample> counterexamples;
  // Facts recorded without a pass/fail claim.
  std::vector<CheckItem> observations;

  void record(const std::string& id, int vertex, int m, bool ok);
  void fail(const std::string& id, int vertex, int m, nlohmann::ordered_json detail);
  void unsupported(const std::string& id, int vertex = 0, int m = 0);
  void append(const Report& other);

  bool passed() const;
  bool any_unsupported() const;
  std::size_t count(const std::string& id, Status s) const;
  nlohmann::ordered_json to_json() const;
};

// Exact check of the unrestricted relation at every (a, m) the grid covers.
Report check_unrestricted(const WGrid& grid, int threads = 0);
Report check_conjecture(const WGrid& grid, int threads = 0);
Report check_conjecture(const FusionContext& ctx, int threads = 0);

// Σ_b C_ab ω_{τ_b(0)}, the weight whose membership in Q∨ is the lattice condition.
Weight boundary_lattice_weight(int a, const RootSystem& rs);
// The explicitly listed lattice conditions for the type, transcribed.
std::vector<Weight> listed_lattice_conditions(const RootSystem& rs);
Report boundary_check(const FusionContext& ctx);

class RGrid {
 public:
  RGrid(const FusionContext& ctx, const WGrid& w);

  const FusionContext& context() const { return *ctx_; }
  int top(int a) const { return tops_[a - 1]; }
  // R^(a)_m with R_{-1} = R_{t_a k + 1} = 0 and zero outside.
  const FusionElement& at(int a, int m) const;

 private:
  const FusionContext* ctx_;
  std::vector<int> tops_;
  std::vector<std::vector<FusionElement>> table_;
  FusionElement zero_;
};

struct RestrictedResult {
  WGrid w;
  RGrid r;
  Report report;
};

// W-grid is generated up to t_a k when not supplied.
RestrictedResult restricted_solution(const FusionContext& ctx, int threads = 0);
Report check_restricted(const WGrid& w, const RGrid& r, int threads = 0);

struct AdmissibilityMatrix {
  int a = 1;
  int m = 0;
  std::size_t n = 0;
  std::vector<std::int64_t> entries;  // row-major; row λ holds R · V_λ

  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  bool nonnegative() const;
  // Spectral radius via a dense eigen-decomposition.
  double perron_frobenius() const;
};

AdmissibilityMatrix multiplication_matrix(const FusionElement& u, const FusionContext& ctx);
AdmissibilityMatrix admissibility_matrix(int a, int m, const RGrid& r);
std::vector<std::int64_t> matrix_product(const AdmissibilityMatrix& x, const AdmissibilityMatrix& y);
// Restricted Q-system relations for the matrices A^(a)_m over H_k.
Report check_admissibility(const RGrid& r, double tol = 1e-8, int threads = 0);

// Per vertex, values indexed by m >= 0.
using NumericTable = std::vector<std::vector<Complex>>;

Report zero_string_lemmas(const NumericTable& q, const RootSystem& rs, double tol = 1e-9);

struct UniquenessResult {
  bool preconditions = true;
  bool holds = true;
  std::optional<KRIndex> discrepancy;
};

// Compares a nowhere-zero restricted solution w against an unrestricted one q on H_k.
UniquenessResult uniqueness_check(const NumericTable& w, const NumericTable& q, const RootSystem& rs,
                                  int level, double tol = 1e-8);

struct KNSOptions {
  double zero_tol = 1e-9;
  double value_tol = 1e-8;
  double strict_margin = 1e-10;
  double fixed_point_tol = 1e-12;
  double x_tol = 1e-9;
  int max_iterations = 100000;
  double damping = 0.5;
  int threads = 0;
};

struct KNSReport {
  std::vector<KRIndex> interior;  // H̊_k in order
  std::vector<std::vector<double>> D;  // D^(a)_m for 0 <= m < t_a(k+h∨), per vertex
  std::vector<double> x;
  std::vector<std::vector<double>> K;
  std::vector<double> f;
  std::string fixed_point_method;
  int iterations = 0;
  double residual = 0.0;
  bool k_positive_definite = false;
  std::size_t sampled_mu = 0;
  std::size_t skipped_mu = 0;
  Report report;
};

// Builds its own W-grid up to t_a(k+h∨).
KNSReport kns_report(const FusionContext& ctx, const KNSOptions& opt = {});
KNSReport kns_report(const WGrid& w, const RGrid& r, const KNSOptions& opt = {});

// K^{mn}_{ab} over H̊_k.
std::vector<std::vector<double>> kns_k_matrix(const RootSystem& rs, int level, const std::vector<KRIndex>& interior);
// Exact leading principal minors for small sizes, Cholesky otherwise.
bool kns_k_positive_definite(const RootSystem& rs, int level, const std::vector<KRIndex>& interior);

struct FixedPoint {
  std::string method;  // "damped" or "newton"
  std::vector<double> f;
  int iterations = 0;
  double residual = 0.0;
};

// Damped iteration of f = Π (1 - f)^K, with a Newton fallback when the iterates
// leave (0,1); throws NumericDegradation past the cap.
FixedPoint solve_f_system(const std::vector<std::vector<double>>& K, const KNSOptions& opt = {});

}  // namespace fusionq
