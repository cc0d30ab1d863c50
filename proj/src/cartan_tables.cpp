#include <algorithm>
#include <set>

#include "fusionq/cartan.hpp"
#include "fusionq/errors.hpp"

namespace fusionq {

namespace {

Permutation identity(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// (p∘q)(i) = p(q(i))
Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i]];
  return out;
}

}  // namespace

void RootSystem::build_diagram_tables() {
  const int r = type_.rank;
  const int n = r + 1;
  const Family f = type_.family;

  conj_perm_ = identity(n);
  if (f == Family::A) {
    for (int i = 1; i <= r; ++i) conj_perm_[i] = r + 1 - i;
  } else if (f == Family::D && r % 2 == 1) {
    std::swap(conj_perm_[r - 1], conj_perm_[r]);
  } else if (f == Family::E && r == 6) {
    conj_perm_ = {0, 5, 4, 3, 2, 1, 6};
  }

  outer_generators_.clear();
  switch (f) {
    case Family::A: {
      Permutation p(n);
      p[0] = r;
      for (int i = 1; i <= r; ++i) p[i] = i - 1;
      if (r >= 1) outer_generators_.push_back(p);
      break;
    }
    case Family::B: {
      Permutation p = identity(n);
      std::swap(p[0], p[1]);
      outer_generators_.push_back(p);
      break;
    }
    case Family::C: {
      Permutation p(n);
      for (int i = 0; i <= r; ++i) p[i] = r - i;
      outer_generators_.push_back(p);
      break;
    }
    case Family::D: {
      if (r % 2 == 0) {
        Permutation p = identity(n);
        std::swap(p[0], p[1]);
        std::swap(p[r - 1], p[r]);
        outer_generators_.push_back(p);
        Permutation q(n);
        for (int i = 0; i <= r; ++i) q[i] = r - i;
        outer_generators_.push_back(q);
      } else {
        Permutation p(n);
        for (int i = 2; i <= r - 2; ++i) p[i] = r - i;
        p[0] = r - 1;
        p[1] = r;
        p[r - 1] = 1;
        p[r] = 0;
        outer_generators_.push_back(p);
      }
      break;
    }
    case Family::E:
      if (r == 6) outer_generators_.push_back({1, 5, 4, 3, 6, 0, 2});
      if (r == 7) outer_generators_.push_back({6, 5, 4, 3, 2, 1, 0, 7});
      break;
    default:
      break;
  }

  std::set<Permutation> group{identity(n)};
  std::vector<Permutation> frontier{identity(n)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier)
      for (const auto& s : outer_generators_) {
        Permutation h = compose(s, g);
        if (group.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  outer_group_.assign(group.begin(), group.end());
  for (const auto& p : outer_group_)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (extended_cartan_[p[i]][p[j]] != extended_cartan_[i][j])
          throw InternalError("outer automorphism table does not preserve the extended diagram of " + type_.name());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (extended_cartan_[conj_perm_[i]][conj_perm_[j]] != extended_cartan_[i][j])
        throw InternalError("conjugation table does not preserve the extended diagram of " + type_.name());

  tau_.assign(n, 0);
  for (int a = 1; a <= r; ++a) {
    int j = 0;
    switch (f) {
      case Family::A: j = a; break;
      case Family::B: j = a % 2; break;
      case Family::C: j = a == r ? r : 0; break;
      case Family::D: j = a >= r - 1 ? a : a % 2; break;
      case Family::E:
        if (r == 6) j = std::vector<int>{1, 5, 0, 1, 5, 0}[a - 1];
        if (r == 7) j = std::vector<int>{0, 0, 0, 6, 0, 6, 6}[a - 1];
        break;
      default: break;
    }
    tau_[a] = j;
  }

  sigma_.assign(n, 1);
  tau_star_.assign(n, identity(n));
  for (int a = 1; a <= r; ++a) {
    const int j = tau_[a];
    if (j != 0) {
      const Rational twice = 2 * form(Weight::fundamental(r, j), rho_);
      if (denominator(twice) != 1) throw InternalError("sign factor is not ±1");
      sigma_[a] = numerator(twice) % 2 == 0 ? 1 : -1;
    }
    tau_star_[a] = compose(outer_with_zero_image(j), conj_perm_);
  }

  minuscule_.clear();
  switch (f) {
    case Family::A:
      for (int a = 1; a <= r; ++a) minuscule_.push_back(a);
      break;
    case Family::B: minuscule_ = {1}; break;
    case Family::C: minuscule_ = {r}; break;
    case Family::D: minuscule_ = {1, r - 1, r}; break;
    case Family::E:
      if (r == 6) minuscule_ = {1, 5};
      if (r == 7) minuscule_ = {6};
      break;
    default: break;
  }

  switch (f) {
    case Family::A: period_multiplier_ = r + 1; break;
    case Family::B:
    case Family::C: period_multiplier_ = 2; break;
    case Family::D: period_multiplier_ = r % 2 == 0 ? 2 : 4; break;
    case Family::E: period_multiplier_ = r == 6 ? 3 : r == 7 ? 2 : 1; break;
    default: period_multiplier_ = 1; break;
  }
}

}  // namespace fusionq
