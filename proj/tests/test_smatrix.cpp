#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fusionq/errors.hpp"
#include "fusionq/smatrix.hpp"

using namespace fusionq;

namespace {

AffineWeight aw(std::vector<int> c) { return AffineWeight(std::move(c)); }

std::vector<std::pair<DynkinType, int>> oracle_matrix() {
  std::vector<std::pair<DynkinType, int>> out;
  for (int k : {2, 3, 4})
    for (int r = 1; r <= 3; ++r) out.push_back({{Family::A, r}, k});
  for (int k : {2, 3}) {
    out.push_back({{Family::B, 2}, k});
    out.push_back({{Family::B, 3}, k});
    out.push_back({{Family::C, 2}, k});
    out.push_back({{Family::C, 3}, k});
    out.push_back({{Family::D, 4}, k});
    out.push_back({{Family::D, 5}, k});
  }
  return out;
}

FusionElement random_element(std::mt19937& rng, const FusionContext& ctx, int terms = 3) {
  std::uniform_int_distribution<std::size_t> pick(0, ctx.size() - 1);
  std::uniform_int_distribution<int> coeff(-2, 3);
  FusionElement u;
  for (int t = 0; t < terms; ++t) u.add(ctx.basis()[pick(rng)], coeff(rng));
  return u;
}

Weight random_weight(std::mt19937& rng, int rank, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Weight w = Weight::zero(rank);
  for (auto& c : w.coeffs) c = dist(rng);
  return w;
}

}  // namespace

TEST(SMatrix, UnitaryAndSymmetric) {
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const auto S = build_smatrix(ctx);
    EXPECT_LT(S.unitarity_residual(), 1e-9) << type.name() << " k=" << k;
    EXPECT_LT(S.symmetry_residual(), 1e-9) << type.name() << " k=" << k;
  }
}

// Oracle: closed-form su(2) S-matrix.
TEST(SMatrix, MatchesSu2ClosedForm) {
  for (int k = 2; k <= 7; ++k) {
    const FusionContext ctx({Family::A, 1}, k);
    const auto S = build_smatrix(ctx);
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        const double expect = std::sqrt(2.0 / (k + 2)) * std::sin(std::numbers::pi * (a + 1) * (b + 1) / (k + 2));
        EXPECT_NEAR(S(a, b).real(), expect, 1e-12);
        EXPECT_NEAR(S(a, b).imag(), 0.0, 1e-12);
      }
    for (int b = 0; b <= k; ++b) EXPECT_GT(S(0, b).real(), 0);
  }
}

TEST(SMatrix, ShiftedWeylAntisymmetry) {
  std::mt19937 rng(17);
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const SEvaluator eval(ctx);
    const int n = ctx.rs().rank() + 1;
    std::uniform_int_distribution<std::size_t> pick(0, ctx.size() - 1);
    std::uniform_int_distribution<int> gen(0, n - 1), len(1, 6);
    for (int trial = 0; trial < 20; ++trial) {
      const AffineWeight lam = ctx.basis()[pick(rng)];
      AffineWeight w = lam;
      const int steps = len(rng);
      for (int s = 0; s < steps; ++s) w = shifted_reflect(w, gen(rng), ctx.rs());
      const double sign = steps % 2 ? -1.0 : 1.0;
      const AffineWeight mu = ctx.basis()[pick(rng)];
      EXPECT_LT(std::abs(eval.entry(w.finite(), mu.finite()) - sign * eval.entry(lam.finite(), mu.finite())), 1e-8);
    }
  }
}

TEST(SMatrix, OuterAutomorphismPhaseAndConjugation) {
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const auto S = build_smatrix(ctx);
    const SEvaluator eval(ctx);
    const int r = ctx.rs().rank();
    for (const auto& tau : ctx.rs().outer_group()) {
      const Weight omega = tau[0] == 0 ? Weight::zero(r) : Weight::fundamental(r, tau[0]);
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        const std::size_t ti = ctx.index_of(permute_weight(ctx.basis()[i], tau));
        for (std::size_t j = 0; j < ctx.size(); ++j) {
          const Complex ph = eval.phase(omega, ctx.basis()[j].finite());
          EXPECT_LT(std::abs(S(ti, j) - S(i, j) * ph), 1e-8);
        }
      }
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const std::size_t ci = ctx.index_of(permute_weight(ctx.basis()[i], ctx.rs().conj_perm()));
      for (std::size_t j = 0; j < ctx.size(); ++j) EXPECT_LT(std::abs(S(ci, j) - std::conj(S(i, j))), 1e-8);
    }
  }
}

TEST(SMatrix, AddSigmaLaw) {
  std::mt19937 rng(23);
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const SEvaluator eval(ctx);
    const auto& rs = ctx.rs();
    const int r = rs.rank();
    std::uniform_int_distribution<std::size_t> pick(0, ctx.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Weight lambda = random_weight(rng, r, -3, 5);
      Weight sigma = random_weight(rng, r, -2, 2);
      // the law needs W-orbit differences of σ in Q∨, i.e. t_j | σ_j
      for (int j = 1; j <= r; ++j) sigma[j - 1] *= rs.t(j);
      const Weight mu = ctx.basis()[pick(rng)].finite();
      const Weight shifted = lambda + ctx.shifted_level() * sigma;
      const Complex ph = eval.phase(sigma, mu + rs.rho());
      EXPECT_LT(std::abs(eval.entry(shifted, mu) - ph * eval.entry(lambda, mu)), 1e-8);
      // coroot shifts carry no phase
      Weight coroot = Weight::zero(r);
      for (int j = 1; j <= r; ++j) coroot += (sigma[j - 1] * rs.t(j)) * rs.simple_roots()[j - 1];
      ASSERT_TRUE(rs.in_coroot_lattice(coroot));
      EXPECT_EQ(rs.scaled_form(coroot, mu + rs.rho()) % rs.form_scale(), 0);
      EXPECT_LT(std::abs(eval.entry(lambda + ctx.shifted_level() * coroot, mu) - eval.entry(lambda, mu)), 1e-8);
    }
  }
}

// For non-simply-laced types an arbitrary σ ∈ P does not give a pure phase.
TEST(SMatrix, AddSigmaLawNeedsCorootOrbitDifferences) {
  const FusionContext b2({Family::B, 2}, 2);
  const SEvaluator eval(b2);
  const Weight sigma = Weight::fundamental(2, 2), lambda({1, 0});
  double worst = 0;
  for (const auto& mu : b2.basis()) {
    const Complex ph = eval.phase(sigma, mu.finite() + b2.rs().rho());
    worst = std::max(worst, std::abs(eval.entry(lambda + b2.shifted_level() * sigma, mu.finite()) -
                                     ph * eval.entry(lambda, mu.finite())));
  }
  EXPECT_GT(worst, 0.1);
}

TEST(SMatrix, MinusculePeriodicity) {
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const SEvaluator eval(ctx);
    const auto& rs = ctx.rs();
    const int r = rs.rank();
    for (int a : rs.minuscule_vertices()) {
      const Weight wa = Weight::fundamental(r, a);
      const Complex sigma = eval.phase(wa, rs.rho());
      for (int m = 0; m <= k + 1; ++m)
        for (int n = 1; n <= 2; ++n)
          for (const auto& mu : ctx.basis()) {
            const Complex tau = eval.phase(wa, mu.finite());
            const Complex lhs = eval.entry((m + n * ctx.shifted_level()) * wa, mu.finite());
            const Complex rhs = std::pow(sigma, n) * std::pow(tau, n) * eval.entry(m * wa, mu.finite());
            EXPECT_LT(std::abs(lhs - rhs), 1e-8);
          }
    }
  }
}

TEST(SMatrix, VanishingEquivalence) {
  std::mt19937 rng(31);
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const SEvaluator eval(ctx);
    const auto S = build_smatrix(ctx);
    for (int trial = 0; trial < 30; ++trial) {
      const AffineWeight w = affinize(random_weight(rng, ctx.rs().rank(), -4, 2 * k + 4), ctx);
      const auto red = alcove_reduce(w, ctx);
      const bool qdim_zero = quantum_dimension(w, ctx) == 0.0;
      const auto row = eval.row(w.finite());
      double worst = 0;
      for (const auto& x : row) worst = std::max(worst, std::abs(x));
      EXPECT_EQ(qdim_zero, red.is_zero()) << w.to_string();
      EXPECT_EQ(worst < S.zero_tol(), red.is_zero()) << w.to_string();
      if (!red.is_zero()) {
        const std::size_t i = ctx.index_of(red.dominant);
        for (std::size_t j = 0; j < ctx.size(); ++j) EXPECT_LT(std::abs(row[j] - double(red.sign) * S(i, j)), 1e-8);
      }
    }
  }
}

TEST(Verlinde, Examples) {
  const FusionContext a1({Family::A, 1}, 2);
  const auto S1 = build_smatrix(a1);
  EXPECT_EQ(verlinde_coefficient(aw({1, 1}), aw({1, 1}), aw({1, 1}), S1, a1), 0);
  for (const auto& l : a1.basis())
    for (const auto& n : a1.basis()) EXPECT_EQ(verlinde_coefficient(l, a1.vacuum(), n, S1, a1), l == n ? 1 : 0);
  const FusionContext a3({Family::A, 3}, 3);
  const auto S3 = build_smatrix(a3);
  EXPECT_EQ(verlinde_coefficient(aw({0, 3, 0, 0}), aw({0, 3, 0, 0}), aw({0, 0, 3, 0}), S3, a3), 1);
}

TEST(Verlinde, MatchesKacWaltonOnSmallCases) {
  for (const auto& [type, k] : std::vector<std::pair<DynkinType, int>>{
           {{Family::A, 2}, 3}, {{Family::B, 2}, 2}, {{Family::C, 3}, 2}, {{Family::D, 4}, 2}}) {
    const FusionContext ctx(type, k);
    const auto S = build_smatrix(ctx);
    for (std::size_t i = 0; i < ctx.size(); ++i)
      for (std::size_t j = i; j < ctx.size(); ++j) {
        const auto& p = ctx.basis_product(i, j);
        for (const auto& nu : ctx.basis())
          EXPECT_EQ(verlinde_coefficient(ctx.basis()[i], ctx.basis()[j], nu, S, ctx), p.coefficient(nu));
      }
  }
}

TEST(QuantumDimension, Examples) {
  const FusionContext a3({Family::A, 3}, 3);
  EXPECT_DOUBLE_EQ(quantum_dimension(a3.vacuum(), a3), 1.0);
  EXPECT_EQ(quantum_dimension(aw({-1, 4, 0, 0}), a3), 0.0);
  const FusionContext a1({Family::A, 1}, 2);
  EXPECT_NEAR(quantum_dimension(aw({1, 1}), a1), std::sqrt(2.0), 1e-9);
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const auto S = build_smatrix(ctx);
    const std::size_t i0 = ctx.index_of(ctx.vacuum());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const double d = quantum_dimension(ctx.basis()[i], ctx);
      EXPECT_GT(d, 0);
      EXPECT_NEAR(d, (S(i, i0) / S(i0, i0)).real(), 1e-9);
    }
  }
}

TEST(GeneralizedQdim, HomomorphismConjugationAndSimpleCurrents) {
  std::mt19937 rng(41);
  for (const auto& [type, k] : oracle_matrix()) {
    const FusionContext ctx(type, k);
    const auto S = build_smatrix(ctx);
    const SEvaluator eval(ctx);
    std::uniform_int_distribution<std::size_t> pick(0, ctx.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto u = random_element(rng, ctx), v = random_element(rng, ctx);
      const auto& mu = ctx.basis()[pick(rng)];
      const Complex gu = generalized_qdim(u, mu, S, ctx), gv = generalized_qdim(v, mu, S, ctx);
      EXPECT_LT(std::abs(generalized_qdim(fusion_product(u, v, ctx), mu, S, ctx) - gu * gv), 1e-8);
      EXPECT_LT(std::abs(generalized_qdim(conjugate(u, ctx), mu, S, ctx) - std::conj(gu)), 1e-8);
    }
    const int r = ctx.rs().rank();
    for (const auto& tau : ctx.rs().outer_group()) {
      const Weight omega = tau[0] == 0 ? Weight::zero(r) : Weight::fundamental(r, tau[0]);
      const auto current = FusionElement::basis(ctx.simple_current(tau[0]));
      for (const auto& mu : ctx.basis())
        EXPECT_LT(std::abs(generalized_qdim(current, mu, S, ctx) - eval.phase(omega, mu.finite())), 1e-8);
    }
    for (const auto& mu : ctx.basis()) EXPECT_EQ(generalized_qdim(FusionElement(), mu, S, ctx), Complex(0));
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_element(rng, ctx);
      if (u.is_zero()) continue;
      double worst = 0;
      for (const auto& g : generalized_qdims(u, S, ctx)) worst = std::max(worst, std::abs(g));
      EXPECT_GT(worst, 1e-6);
    }
  }
}

TEST(SMatrix, CsvAndRankCap) {
  const FusionContext a1({Family::A, 1}, 2);
  const auto csv = smatrix_csv(build_smatrix(a1), a1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "0,1,2");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.substr(csv.find('\n') + 1, 29), "\"0.5,0\",\"0.707106781186547,0\"");
  EXPECT_EQ(csv, smatrix_csv(build_smatrix(a1), a1));
  const FusionContext d7({Family::D, 7}, 2);
  EXPECT_THROW(build_smatrix(d7), OracleUnavailable);
}
