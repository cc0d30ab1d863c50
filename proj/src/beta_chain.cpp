#include <algorithm>

#include "fusionq/cartan.hpp"
#include "fusionq/errors.hpp"

namespace fusionq {

namespace {

using Coords = std::vector<int>;

Rational omega_pairing(const Coords& beta, int a, const RootSystem& rs) { return Rational(beta[a - 1], rs.t(a)); }

Rational rho_pairing(const Coords& beta, const RootSystem& rs) {
  Rational total = 0;
  for (int j = 1; j <= rs.rank(); ++j) total += Rational(beta[j - 1], rs.t(j));
  return total;
}

Coords simple_reflect(Coords beta, int j, const RootSystem& rs) {
  int pairing = 0;
  for (int i = 0; i < rs.rank(); ++i) pairing += beta[i] * rs.cartan()[j - 1][i];
  beta[j - 1] -= pairing;
  return beta;
}

// Peels endpoints off a type-A path of active vertices until only a is left.
void peel_type_a(Coords beta, std::vector<bool> active, int a, const RootSystem& rs, std::vector<Coords>& out) {
  const int r = rs.rank();
  while (true) {
    const int remaining = static_cast<int>(std::count(active.begin(), active.end(), true));
    if (remaining <= 1) break;
    int pick = -1;
    for (int j = 1; j <= r && pick < 0; ++j) {
      if (!active[j - 1] || j == a) continue;
      int neighbours = 0;
      for (int i = 1; i <= r; ++i)
        if (i != j && active[i - 1] && rs.cartan()[j - 1][i - 1] != 0) ++neighbours;
      if (neighbours <= 1) pick = j;
    }
    if (pick < 0) throw InternalError("type A peeling found no endpoint");
    beta[pick - 1] -= 1;
    active[pick - 1] = false;
    out.push_back(beta);
  }
}

}  // namespace

bool is_valid_beta_chain(const BetaChain& chain, const RootSystem& rs) {
  const int a = chain.vertex;
  const int len = rs.dual_coxeter() - 1;
  if (static_cast<int>(chain.chain.size()) != len) return false;
  std::vector<int> alpha(rs.rank(), 0);
  alpha[a - 1] = 1;
  if (chain.chain.front() != alpha || chain.chain.back() != rs.theta_root_coords()) return false;
  const auto& roots = rs.positive_root_coords();
  for (int l = 1; l <= len; ++l) {
    const auto& beta = chain.chain[l - 1];
    if (std::find(roots.begin(), roots.end(), beta) == roots.end()) return false;
    if (omega_pairing(beta, a, rs) != 1 || rho_pairing(beta, rs) != l) return false;
  }
  return true;
}

BetaChain verify_beta_chain(int a, const RootSystem& rs) {
  if (a < 1 || a > rs.rank()) throw DimensionMismatch("vertex out of range");
  BetaChain out{a, {}};
  const int len = rs.dual_coxeter() - 1;
  const auto& roots = rs.positive_root_coords();
  for (int l = 1; l <= len; ++l) {
    std::vector<const Coords*> hits;
    for (const auto& beta : roots)
      if (omega_pairing(beta, a, rs) == 1 && rho_pairing(beta, rs) == l) hits.push_back(&beta);
    if (hits.empty())
      throw InternalError("no positive root with (ω_a|β)=1 and (ρ|β)=" + std::to_string(l) + " for " +
                          rs.dynkin().name() + " vertex " + std::to_string(a));
    const Coords* pick = *std::min_element(hits.begin(), hits.end(), [](auto* x, auto* y) { return *x < *y; });
    for (const auto* h : hits) {
      const bool simple = l == 1 && (*h)[a - 1] == 1 && std::count(h->begin(), h->end(), 0) == rs.rank() - 1;
      if (simple || (l == len && *h == rs.theta_root_coords())) pick = h;
    }
    out.chain.push_back(*pick);
  }
  return out;
}

BetaChain explicit_beta_chain(int a, const RootSystem& rs) {
  const int r = rs.rank();
  BetaChain out{a, {}};
  std::vector<Coords> top_down;
  Coords beta = rs.theta_root_coords();
  top_down.push_back(beta);
  std::vector<bool> active(r, true);
  switch (rs.dynkin().family) {
    case Family::A:
      peel_type_a(beta, active, a, rs, top_down);
      break;
    case Family::B:
      for (int j = 2; j <= r; ++j) {
        beta = simple_reflect(beta, j, rs);
        top_down.push_back(beta);
      }
      active[r - 1] = false;
      peel_type_a(beta, active, a, rs, top_down);
      break;
    case Family::C:
      for (int j = 1; j <= r - 1; ++j) {
        beta = simple_reflect(beta, j, rs);
        top_down.push_back(beta);
      }
      break;
    case Family::D: {
      for (int j = 2; j <= r - 2; ++j) {
        beta = simple_reflect(beta, j, rs);
        top_down.push_back(beta);
      }
      const int drop = a == r ? r - 1 : r;
      beta[drop - 1] -= 1;
      top_down.push_back(beta);
      active[drop - 1] = false;
      peel_type_a(beta, active, a, rs, top_down);
      break;
    }
    default:
      return out;
  }
  out.chain.assign(top_down.rbegin(), top_down.rend());
  return out;
}

}  // namespace fusionq
