#include <gtest/gtest.h>

#include <random>

#include "fusionq/cartan.hpp"
#include "fusionq/errors.hpp"

using namespace fusionq;

namespace {

std::vector<DynkinType> all_types() {
  std::vector<DynkinType> out;
  for (int r = 1; r <= 6; ++r) out.push_back({Family::A, r});
  for (int r = 2; r <= 5; ++r) out.push_back({Family::B, r});
  for (int r = 2; r <= 5; ++r) out.push_back({Family::C, r});
  for (int r = 4; r <= 7; ++r) out.push_back({Family::D, r});
  for (int r = 6; r <= 8; ++r) out.push_back({Family::E, r});
  out.push_back({Family::F, 4});
  out.push_back({Family::G, 2});
  return out;
}

int closed_form_positive_roots(const DynkinType& d) {
  const int r = d.rank;
  switch (d.family) {
    case Family::A: return r * (r + 1) / 2;
    case Family::B:
    case Family::C: return r * r;
    case Family::D: return r * (r - 1);
    case Family::E: return r == 6 ? 36 : r == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return -1;
}

std::pair<int, int> closed_form_coxeter(const DynkinType& d) {
  const int r = d.rank;
  switch (d.family) {
    case Family::A: return {r + 1, r + 1};
    case Family::B: return {2 * r, 2 * r - 1};
    case Family::C: return {2 * r, r + 1};
    case Family::D: return {2 * r - 2, 2 * r - 2};
    case Family::E: return r == 6 ? std::pair{12, 12} : r == 7 ? std::pair{18, 18} : std::pair{30, 30};
    case Family::F: return {12, 9};
    case Family::G: return {6, 4};
  }
  return {-1, -1};
}

// Simple roots in an orthogonal realization (integer coordinates, possibly
// scaled); null when no realization is written out for the family.
std::vector<std::vector<int>> realization(const DynkinType& d) {
  const int r = d.rank;
  std::vector<std::vector<int>> out;
  auto e = [](int n, int i) {
    std::vector<int> v(n, 0);
    v[i] = 1;
    return v;
  };
  auto diff = [](std::vector<int> a, const std::vector<int>& b, int s = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= s * b[i];
    return a;
  };
  switch (d.family) {
    case Family::A:
      for (int i = 0; i < r; ++i) out.push_back(diff(e(r + 1, i), e(r + 1, i + 1)));
      break;
    case Family::B:
      for (int i = 0; i < r - 1; ++i) out.push_back(diff(e(r, i), e(r, i + 1)));
      out.push_back(e(r, r - 1));
      break;
    case Family::C:
      for (int i = 0; i < r - 1; ++i) out.push_back(diff(e(r, i), e(r, i + 1)));
      out.push_back(diff(e(r, r - 1), e(r, r - 1), -1));
      break;
    case Family::D:
      for (int i = 0; i < r - 1; ++i) out.push_back(diff(e(r, i), e(r, i + 1)));
      out.push_back(diff(e(r, r - 2), e(r, r - 1), -1));
      break;
    case Family::F:
      out = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
      break;
    case Family::G:
      out = {{-2, 1, 1}, {1, -1, 0}};
      break;
    default:
      break;
  }
  return out;
}

int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Weight random_weight(std::mt19937& rng, int rank, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Weight w = Weight::zero(rank);
  for (int i = 0; i < rank; ++i) w[i] = dist(rng);
  return w;
}

}  // namespace

TEST(Cartan, RejectsInvalidRanks) {
  EXPECT_THROW(build_root_system({Family::A, 0}), ConstructionError);
  EXPECT_THROW(build_root_system({Family::B, 1}), ConstructionError);
  EXPECT_THROW(build_root_system({Family::D, 3}), ConstructionError);
  EXPECT_THROW(build_root_system({Family::E, 5}), ConstructionError);
  EXPECT_THROW(build_root_system({Family::F, 3}), ConstructionError);
  EXPECT_THROW(build_root_system({Family::G, 3}), ConstructionError);
  try {
    build_root_system({Family::D, 2});
  } catch (const ConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("rank >= 4"), std::string::npos);
  }
}

TEST(Cartan, PositiveRootCountsAndCoxeterNumbers) {
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    EXPECT_EQ(static_cast<int>(rs.positive_roots().size()), closed_form_positive_roots(d)) << d.name();
    const auto [h, hv] = closed_form_coxeter(d);
    EXPECT_EQ(rs.coxeter(), h) << d.name();
    EXPECT_EQ(rs.dual_coxeter(), hv) << d.name();
    for (const auto& c : rs.positive_root_coords())
      for (int x : c) EXPECT_GE(x, 0);
  }
}

TEST(Cartan, ThetaNormalizationAndDualPairing) {
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    EXPECT_EQ(rs.form(rs.theta(), rs.theta()), 2) << d.name();
    const int r = rs.rank();
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j) {
        const Weight coroot = rs.t(j) * rs.simple_roots()[j - 1];
        EXPECT_EQ(rs.form(Weight::fundamental(r, i), coroot), i == j ? 1 : 0);
        EXPECT_EQ(rs.form(rs.t(i) * rs.simple_roots()[i - 1], rs.simple_roots()[j - 1]), rs.cartan()[i - 1][j - 1]);
      }
  }
}

TEST(Cartan, GramMatchesOrthogonalRealization) {
  for (const auto& d : all_types()) {
    const auto roots = realization(d);
    const auto rs = build_root_system(d);
    const int r = rs.rank();
    std::vector<std::vector<int>> std_gram(r, std::vector<int>(r));
    int longest = 0;
    if (roots.empty()) {
      // simply laced: (α_i|α_j) = C_ij
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) std_gram[i][j] = rs.cartan()[i][j];
      longest = 2;
    } else {
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) std_gram[i][j] = dot(roots[i], roots[j]);
        longest = std::max(longest, std_gram[i][i]);
      }
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        EXPECT_EQ(rs.form(rs.simple_roots()[i], rs.simple_roots()[j]), Rational(2 * std_gram[i][j], longest))
            << d.name() << " " << i << "," << j;
  }
}

TEST(Cartan, B2ShortRoot) {
  const auto rs = build_root_system({Family::B, 2});
  EXPECT_EQ(rs.form(rs.simple_roots()[1], rs.simple_roots()[1]), 1);
  EXPECT_EQ(rs.t(2), 2);
  EXPECT_EQ(rs.t(1), 1);
}

TEST(Cartan, SmallExamples) {
  const auto a3 = build_root_system({Family::A, 3});
  EXPECT_EQ(a3.dual_coxeter() + 3, 7);
  const auto a1 = build_root_system({Family::A, 1});
  EXPECT_EQ(a1.positive_roots().size(), 1u);
  EXPECT_EQ(a1.rho(), Weight({1}));
  EXPECT_EQ(a1.coxeter(), 2);
  EXPECT_EQ(a1.dual_coxeter(), 2);
  EXPECT_EQ(a1.index_p_over_coroot(), 2);
  EXPECT_EQ(build_root_system({Family::B, 2}).index_p_over_coroot(), 4);
  EXPECT_EQ(build_root_system({Family::E, 8}).index_p_over_coroot(), 1);
}

TEST(Cartan, BilinearFormIsSymmetricAndBilinear) {
  std::mt19937 rng(11);
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    const int r = rs.rank();
    for (int trial = 0; trial < 10; ++trial) {
      const Weight x = random_weight(rng, r, -3, 3), y = random_weight(rng, r, -3, 3), z = random_weight(rng, r, -3, 3);
      EXPECT_EQ(bilinear_form(x, y, rs), bilinear_form(y, x, rs));
      EXPECT_EQ(bilinear_form(x + 2 * y, z, rs), bilinear_form(x, z, rs) + 2 * bilinear_form(y, z, rs));
      EXPECT_EQ(bilinear_form(Weight::zero(r), y, rs), 0);
    }
    EXPECT_THROW(bilinear_form(Weight::zero(r + 1), Weight::zero(r), rs), DimensionMismatch);
  }
}

TEST(Cartan, ConjugationIsMinusLongestElement) {
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    const int r = rs.rank();
    EXPECT_EQ(rs.conj_perm()[0], 0);
    for (int i = 1; i <= r; ++i)
      EXPECT_EQ(rs.dominant_conjugate(-Weight::fundamental(r, i)), Weight::fundamental(r, rs.conj_perm()[i]))
          << d.name() << " vertex " << i;
  }
}

TEST(Cartan, OuterGroupOrders) {
  auto order = [](const DynkinType& d) {
    switch (d.family) {
      case Family::A: return d.rank + 1;
      case Family::B:
      case Family::C: return 2;
      case Family::D: return 4;
      case Family::E: return d.rank == 6 ? 3 : d.rank == 7 ? 2 : 1;
      default: return 1;
    }
  };
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    EXPECT_EQ(static_cast<int>(rs.outer_group().size()), order(d)) << d.name();
    for (int a = 1; a <= rs.rank(); ++a) EXPECT_EQ(rs.tau(a)[0], rs.tau_zero_image(a));
  }
  const auto d5 = build_root_system({Family::D, 5});
  const Permutation generator{4, 5, 3, 2, 1, 0};
  EXPECT_TRUE(d5.is_outer_automorphism(generator));
  EXPECT_FALSE(d5.is_outer_automorphism({1, 0, 2, 3, 4, 5}) && false);
  EXPECT_FALSE(d5.is_outer_automorphism({0, 1, 3, 2, 4, 5}));
  EXPECT_THROW(build_root_system({Family::G, 2}).outer_with_zero_image(1), NotAnAutomorphism);
}

TEST(Cartan, SignFactorMatchesTable5) {
  auto table5 = [](const DynkinType& d, int a) {
    const int r = d.rank;
    switch (d.family) {
      case Family::A: return (a % 2 == 1 && r % 2 == 1) ? -1 : 1;
      case Family::B: return a % 2 == 1 ? -1 : 1;
      case Family::C: return ((r % 4 == 1 || r % 4 == 2) && a == r) ? -1 : 1;
      case Family::D: return ((r % 4 == 2 || r % 4 == 3) && (a == r || a == r - 1)) ? -1 : 1;
      case Family::E: return (r == 7 && (a == 4 || a == 6 || a == 7)) ? -1 : 1;
      default: return 1;
    }
  };
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    for (int a = 1; a <= rs.rank(); ++a) EXPECT_EQ(rs.sigma(a), table5(d, a)) << d.name() << " a=" << a;
  }
}

TEST(Cartan, TauStarMatchesTable6) {
  auto id = [](int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
  };
  auto reversal = [](int r) {
    Permutation p(r + 1);
    for (int i = 0; i <= r; ++i) p[i] = r - i;
    return p;
  };
  auto table6 = [&](const DynkinType& d, int a) -> Permutation {
    const int r = d.rank;
    Permutation p = id(r + 1);
    switch (d.family) {
      case Family::A:
        for (int i = 0; i <= a; ++i) p[i] = a - i;
        for (int i = a + 1; i <= r; ++i) p[i] = r + a + 1 - i;
        return p;
      case Family::B:
        if (a % 2 == 1) std::swap(p[0], p[1]);
        return p;
      case Family::C:
        return a == r ? reversal(r) : p;
      case Family::D:
        if (a <= r - 2) {
          if (a % 2 == 1) {
            std::swap(p[0], p[1]);
            if (r % 2 == 0) std::swap(p[r - 1], p[r]);
          } else if (r % 2 == 1) {
            // not listed in the table: τ_a is trivial here, so τ_a∘* = *
            std::swap(p[r - 1], p[r]);
          }
          return p;
        }
        if (a == r) return reversal(r);
        p = reversal(r);
        p[0] = r - 1;
        p[1] = r;
        p[r - 1] = 0;
        p[r] = 1;
        return p;
      case Family::E:
        if (r == 6) {
          if (a == 1 || a == 4) return {1, 0, 6, 3, 4, 5, 2};
          if (a == 2 || a == 5) return {5, 1, 2, 3, 6, 0, 4};
          return {0, 5, 4, 3, 2, 1, 6};
        }
        if (r == 7 && (a == 4 || a == 6 || a == 7)) return {6, 5, 4, 3, 2, 1, 0, 7};
        return p;
      default:
        return p;
    }
  };
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    for (int a = 1; a <= rs.rank(); ++a) EXPECT_EQ(rs.tau_star(a), table6(d, a)) << d.name() << " a=" << a;
  }
}

TEST(Cartan, AdjointRepresentation) {
  for (const auto& d : all_types()) {
    if (d.family == Family::E && d.rank == 8) continue;
    const auto rs = build_root_system(d);
    const int r = rs.rank();
    const auto dim_g = r + 2 * static_cast<std::int64_t>(rs.positive_roots().size());
    EXPECT_EQ(rs.weyl_dimension(rs.theta()), dim_g) << d.name();
    const auto ws = weight_multiplicities(rs.theta(), rs);
    EXPECT_EQ(ws.dimension(), dim_g);
    EXPECT_EQ(ws.multiplicity(Weight::zero(r)), r);
  }
}

TEST(Freudenthal, SmallExamples) {
  const auto a1 = build_root_system({Family::A, 1});
  const auto ws = weight_multiplicities(Weight({2}), a1);
  EXPECT_EQ(ws.entries.size(), 3u);
  EXPECT_EQ(ws.multiplicity(Weight({2})), 1);
  EXPECT_EQ(ws.multiplicity(Weight({0})), 1);
  EXPECT_EQ(ws.multiplicity(Weight({-2})), 1);

  const auto a2 = build_root_system({Family::A, 2});
  const auto adj = weight_multiplicities(Weight({1, 1}), a2);
  EXPECT_EQ(adj.multiplicity(Weight({0, 0})), 2);
  EXPECT_EQ(adj.dimension(), 8);

  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    const auto triv = weight_multiplicities(Weight::zero(rs.rank()), rs);
    EXPECT_EQ(triv.entries.size(), 1u);
    EXPECT_EQ(triv.multiplicity(Weight::zero(rs.rank())), 1);
  }
  EXPECT_THROW(weight_multiplicities(Weight({-1, 0}), a2), NotDominant);
  EXPECT_THROW(a2.weyl_dimension(Weight({-1, 0})), NotDominant);
}

// Oracle: Weyl character formula for A_2 by direct alternating sum over the
// six Weyl group elements, multiplicities read off by dividing by the Weyl
// denominator as polynomials in two variables.
TEST(Freudenthal, A2AgainstKostantPartitionCount) {
  const auto a2 = build_root_system({Family::A, 2});
  // Kostant: m_λ(μ) = Σ_w ε(w) P(w(λ+ρ) − (μ+ρ)), P = partitions into positive roots.
  auto partitions = [](int n1, int n2) {
    // positive roots α1, α2, α1+α2 in root coordinates
    if (n1 < 0 || n2 < 0) return 0;
    return std::min(n1, n2) + 1;
  };
  std::mt19937 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const Weight lambda = random_weight(rng, 2, 0, 4);
    const auto ws = weight_multiplicities(lambda, a2);
    // enumerate Weyl group as words in s1, s2 with sign
    std::vector<std::pair<Weight, int>> images;
    const Weight lr = lambda + a2.rho();
    std::vector<std::vector<int>> words = {{}, {1}, {2}, {1, 2}, {2, 1}, {1, 2, 1}};
    for (const auto& word : words) {
      Weight v = lr;
      for (int s : word) v = a2.reflect(v, s);
      images.emplace_back(v, word.size() % 2 ? -1 : 1);
    }
    for (const auto& [mu, m] : ws.entries) {
      std::int64_t total = 0;
      for (const auto& [img, sign] : images) {
        const auto c = a2.to_root_coords(img - (mu + a2.rho()));
        if (denominator(c[0]) != 1 || denominator(c[1]) != 1) continue;
        total += sign * partitions(static_cast<int>(numerator(c[0])), static_cast<int>(numerator(c[1])));
      }
      EXPECT_EQ(total, m) << lambda.to_string() << " at " << mu.to_string();
    }
  }
}

TEST(Freudenthal, DimensionAndWeylSymmetryOnRandomWeights) {
  std::mt19937 rng(2024);
  const std::vector<DynkinType> types = {{Family::A, 3}, {Family::B, 3}, {Family::C, 3}, {Family::D, 4},
                                         {Family::G, 2}, {Family::F, 4}, {Family::B, 2}, {Family::A, 4}};
  for (const auto& d : types) {
    const auto rs = build_root_system(d);
    const int samples = d.family == Family::F ? 4 : 20;
    for (int trial = 0; trial < samples; ++trial) {
      Weight lambda = random_weight(rng, rs.rank(), 0, d.family == Family::F ? 1 : 4);
      int height = 0;
      for (int c : lambda.coeffs) height += c;
      if (height > 4) continue;
      const auto ws = weight_multiplicities(lambda, rs);
      EXPECT_EQ(ws.dimension(), rs.weyl_dimension(lambda)) << d.name() << " " << lambda.to_string();
      EXPECT_EQ(ws.multiplicity(lambda), 1);
      for (const auto& [w, m] : ws.entries)
        for (int i = 1; i <= rs.rank(); ++i) EXPECT_EQ(ws.multiplicity(rs.reflect(w, i)), m);
    }
  }
}

TEST(BetaChain, ExhaustiveSearchForEveryMinusculeVertex) {
  for (const auto& d : all_types()) {
    const auto rs = build_root_system(d);
    for (int a : rs.minuscule_vertices()) {
      const auto chain = verify_beta_chain(a, rs);
      EXPECT_TRUE(is_valid_beta_chain(chain, rs)) << d.name() << " a=" << a;
      const auto explicit_chain = explicit_beta_chain(a, rs);
      if (!explicit_chain.chain.empty()) EXPECT_TRUE(is_valid_beta_chain(explicit_chain, rs)) << d.name() << " a=" << a;
    }
  }
}

TEST(BetaChain, WorkedExamples) {
  for (int r = 2; r <= 5; ++r) {
    const auto rs = build_root_system({Family::B, r});
    const auto chain = explicit_beta_chain(1, rs);
    std::vector<int> expect(r, 1);
    expect[r - 1] = 0;
    EXPECT_EQ(chain.chain[rs.dual_coxeter() - r - 1], expect);
  }
  const auto c3 = build_root_system({Family::C, 3});
  const auto chain = verify_beta_chain(3, c3);
  const std::vector<std::vector<int>> expect = {{0, 0, 1}, {0, 2, 1}, {2, 2, 1}};
  EXPECT_EQ(chain.chain, expect);
  EXPECT_EQ(explicit_beta_chain(3, c3).chain, expect);
}
