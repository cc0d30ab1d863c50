#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

#include "fusionq/cartan.hpp"
#include "fusionq/errors.hpp"

namespace fusionq {

std::int64_t WeightSystem::dimension() const {
  std::int64_t total = 0;
  for (const auto& [w, m] : entries) total += m;
  return total;
}

std::int64_t WeightSystem::multiplicity(const Weight& w) const {
  auto it = entries.find(w);
  return it == entries.end() ? 0 : it->second;
}

namespace {

int depth_below(const Weight& lambda, const Weight& mu, const RootSystem& rs) {
  const auto coords = rs.to_root_coords(lambda - mu);
  Rational total = 0;
  for (const auto& c : coords) total += c;
  if (denominator(total) != 1) throw InternalError("weight is not in the root lattice coset of the highest weight");
  return static_cast<int>(numerator(total));
}

}  // namespace

std::vector<std::pair<Weight, std::int64_t>> dominant_multiplicities(const Weight& lambda, const RootSystem& rs) {
  if (lambda.rank() != rs.rank()) throw DimensionMismatch("weight length does not match rank");
  if (!lambda.is_dominant()) throw NotDominant("highest weight must be dominant, got " + lambda.to_string());

  // Every dominant weight below lambda is reachable through dominant weights by
  // subtracting single positive roots.
  std::set<Weight> seen{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    const Weight w = queue.front();
    queue.pop_front();
    for (const auto& alpha : rs.positive_roots()) {
      Weight next = w - alpha;
      if (!next.is_dominant() || seen.count(next)) continue;
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  std::vector<std::pair<int, Weight>> order;
  for (const auto& w : seen) order.emplace_back(depth_below(lambda, w, rs), w);
  std::sort(order.begin(), order.end());

  const Weight& rho = rs.rho();
  const std::int64_t top = rs.scaled_form(lambda + rho, lambda + rho);
  std::unordered_map<Weight, std::int64_t, WeightHash> mult;
  std::vector<std::pair<Weight, std::int64_t>> out;
  out.reserve(order.size());
  for (const auto& [depth, mu] : order) {
    std::int64_t m = 1;
    if (depth > 0) {
      std::int64_t sum = 0;
      for (const auto& alpha : rs.positive_roots()) {
        Weight shifted = mu;
        while (true) {
          shifted += alpha;
          auto it = mult.find(rs.dominant_conjugate(shifted));
          if (it == mult.end()) break;
          sum += it->second * rs.scaled_form(shifted, alpha);
        }
      }
      const std::int64_t denom = top - rs.scaled_form(mu + rho, mu + rho);
      if (denom <= 0 || (2 * sum) % denom != 0) throw InternalError("Freudenthal recursion produced a non-integer");
      m = 2 * sum / denom;
    }
    mult.emplace(mu, m);
    out.emplace_back(mu, m);
  }
  return out;
}

std::vector<Weight> weyl_orbit(const Weight& dominant, const RootSystem& rs) {
  if (!dominant.is_dominant()) throw NotDominant("orbit seed must be dominant");
  std::set<Weight> seen{dominant};
  std::vector<Weight> frontier{dominant};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& w : frontier)
      for (int i = 1; i <= rs.rank(); ++i) {
        if (w[i - 1] <= 0) continue;
        Weight v = rs.reflect(w, i);
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

WeightSystem weight_multiplicities(const Weight& lambda, const RootSystem& rs) {
  WeightSystem ws;
  ws.highest = lambda;
  for (const auto& [mu, m] : dominant_multiplicities(lambda, rs))
    for (auto& w : weyl_orbit(mu, rs)) ws.entries.emplace(std::move(w), m);
  return ws;
}

}  // namespace fusionq
