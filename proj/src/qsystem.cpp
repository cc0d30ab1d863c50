#include "fusionq/qsystem.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "fusionq/errors.hpp"
#include "fusionq/parallel.hpp"

namespace fusionq {

namespace {

int floor_div(int num, int den) {
  int q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

// Appends every assignment of non-negative values to coeffs at `idx[pos..]`
// with sum == budget (exact) or <= budget, each value a multiple of step.
void distribute(const std::vector<int>& idx, std::size_t pos, int budget, bool exact, int step, Weight& w,
                std::vector<Weight>& out) {
  if (pos == idx.size()) {
    if (!exact || budget == 0) out.push_back(w);
    return;
  }
  for (int x = 0; x <= budget; x += step) {
    w[idx[pos] - 1] = x;
    distribute(idx, pos + 1, budget - x, exact, step, w, out);
  }
  w[idx[pos] - 1] = 0;
}

// ω = k_a ω_a + Σ_{b ∈ rest} k_b ω_b with k_a + scale·(Σ k_b [+ slack]) = m.
std::vector<Weight> omega_family(int rank, int a, int m, const std::vector<int>& rest, int scale, bool slack,
                                 int rest_step, bool a_parity) {
  std::vector<Weight> out;
  Weight w = Weight::zero(rank);
  for (int ka = m; ka >= 0; --ka) {
    if ((m - ka) % scale != 0) continue;
    if (a_parity && (m - ka) % 2 != 0) continue;
    w[a - 1] = ka;
    distribute(rest, 0, (m - ka) / scale, !slack, rest_step, w, out);
  }
  return out;
}

std::vector<int> step_down(int from, int stop, int step) {
  std::vector<int> v;
  for (int b = from; b >= stop; b -= step) v.push_back(b);
  return v;
}

// τ_a(u*)
FusionElement tau_dual(int a, const FusionElement& u, const FusionContext& ctx) {
  return apply_outer(ctx.rs().tau(a), conjugate(u, ctx), ctx);
}

bool same(const FusionElement& x, const FusionElement& y) { return x == y; }

nlohmann::ordered_json terms_json(const FusionElement& u) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [w, c] : u.terms()) {
    nlohmann::ordered_json t;
    t["w"] = w.coeffs;
    t["c"] = c;
    arr.push_back(std::move(t));
  }
  return arr;
}

nlohmann::ordered_json mismatch(const FusionElement& expected, const FusionElement& actual) {
  nlohmann::ordered_json j;
  j["expected"] = terms_json(expected);
  j["actual"] = terms_json(actual);
  return j;
}

Report make_report(const std::string& check, const FusionContext& ctx) {
  Report rep;
  rep.check = check;
  rep.type = ctx.rs().dynkin();
  rep.level = ctx.level();
  return rep;
}

FusionElement relation_rhs(int a, int m, const RootSystem& rs, const FusionContext& ctx,
                           const std::function<const FusionElement&(int, int)>& q) {
  FusionElement rhs = fusion_product(q(a, m - 1), q(a, m + 1), ctx);
  FusionElement prod = ctx.unit();
  for (const auto& f : relation_factors(a, m, rs)) prod = fusion_product(prod, q(f.a, f.m), ctx);
  return rhs + prod;
}

}  // namespace

bool in_level_range(const KRIndex& i, const RootSystem& rs, int level) {
  return i.a >= 1 && i.a <= rs.rank() && i.m >= 0 && i.m <= rs.t(i.a) * level;
}

bool in_interior_range(const KRIndex& i, const RootSystem& rs, int level) {
  return i.a >= 1 && i.a <= rs.rank() && i.m >= 1 && i.m <= rs.t(i.a) * level - 1;
}

std::vector<KRIndex> relation_factors(int a, int m, const RootSystem& rs) {
  const auto& C = rs.cartan();
  std::vector<KRIndex> out;
  for (int b = 1; b <= rs.rank(); ++b) {
    const int cab = C[a - 1][b - 1];
    if (b == a || cab >= 0) continue;
    const int cba = C[b - 1][a - 1];
    for (int j = 0; j <= -cab - 1; ++j) out.push_back({b, floor_div(cba * m - j, cab)});
  }
  return out;
}

bool kr_data_available(const RootSystem& rs, int a) {
  if (a < 1 || a > rs.rank()) return false;
  switch (rs.dynkin().family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::D:
      return true;
    case Family::E:
      return rs.rank() != 8 && rs.is_minuscule(a);
    default:
      return false;
  }
}

bool kr_data_conditional(const RootSystem& rs) { return rs.dynkin().family == Family::E; }

std::vector<Weight> kr_omega(int a, int m, const RootSystem& rs) {
  if (!kr_data_available(rs, a))
    throw KRDataUnavailable("no Kirillov-Reshetikhin decomposition data for vertex " + std::to_string(a) + " of " +
                            rs.dynkin().name());
  if (m < 0) throw std::invalid_argument("kr_omega: m must be non-negative");
  const int r = rs.rank();
  std::vector<Weight> out;
  const auto single = [&] {
    Weight w = Weight::zero(r);
    w[a - 1] = m;
    return std::vector<Weight>{w};
  };
  switch (rs.dynkin().family) {
    case Family::A:
    case Family::E:
      out = single();
      break;
    case Family::B:
      if (a % 2 == 0)
        out = omega_family(r, a, m, step_down(a - 2, 2, 2), rs.t(a), true, 1, false);
      else
        out = omega_family(r, a, m, step_down(a - 2, 1, 2), rs.t(a), false, 1, false);
      break;
    case Family::C:
      if (a == r)
        out = single();
      else
        out = omega_family(r, a, m, step_down(a - 1, 1, 1), 1, true, 2, true);
      break;
    case Family::D:
      if (a >= r - 1)
        out = single();
      else if (a % 2 == 0)
        out = omega_family(r, a, m, step_down(a - 2, 2, 2), 1, true, 1, false);
      else
        out = omega_family(r, a, m, step_down(a - 2, 1, 2), 1, false, 1, false);
      break;
    default:
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FusionElement kr_element(int a, int m, const FusionContext& ctx) {
  FusionElement u;
  for (const auto& w : kr_omega(a, m, ctx.rs())) u.add(alcove_reduce(affinize(w, ctx), ctx), 1);
  return u;
}

WGrid::WGrid(const FusionContext& ctx, std::vector<int> horizons) : ctx_(&ctx), horizons_(std::move(horizons)) {
  if (static_cast<int>(horizons_.size()) != ctx.rs().rank()) throw DimensionMismatch("one horizon per vertex expected");
  table_.resize(horizons_.size());
  for (std::size_t i = 0; i < horizons_.size(); ++i) table_[i].resize(std::max(0, horizons_[i] + 1));
}

const FusionElement& WGrid::at(int a, int m) const {
  if (m == -1) return zero_;
  if (a < 1 || a > static_cast<int>(horizons_.size()) || m < -1 || m > horizons_[a - 1])
    throw std::out_of_range("W-grid index (" + std::to_string(a) + ", " + std::to_string(m) + ") outside the horizon");
  return table_[a - 1][m];
}

std::vector<int> auto_horizons(const FusionContext& ctx) {
  const RootSystem& rs = ctx.rs();
  std::vector<int> h(rs.rank());
  for (int a = 1; a <= rs.rank(); ++a)
    h[a - 1] = kr_data_available(rs, a) ? 2 * rs.period_multiplier() * rs.t(a) * ctx.shifted_level() - 1 : -1;
  return h;
}

WGrid generate_w_grid(const FusionContext& ctx, int threads) { return generate_w_grid(ctx, auto_horizons(ctx), threads); }

WGrid generate_w_grid(const FusionContext& ctx, int horizon, int threads) {
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  std::vector<int> h(ctx.rs().rank());
  for (int a = 1; a <= ctx.rs().rank(); ++a) h[a - 1] = kr_data_available(ctx.rs(), a) ? horizon : -1;
  return generate_w_grid(ctx, std::move(h), threads);
}

WGrid generate_w_grid(const FusionContext& ctx, std::vector<int> horizons, int threads) {
  WGrid grid(ctx, std::move(horizons));
  std::vector<KRIndex> jobs;
  for (int a = 1; a <= ctx.rs().rank(); ++a)
    for (int m = 0; m <= grid.horizon(a); ++m) jobs.push_back({a, m});
  parallel_for(
      jobs.size(), [&](std::size_t i) { grid.slot(jobs[i].a, jobs[i].m) = kr_element(jobs[i].a, jobs[i].m, ctx); },
      threads);
  return grid;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    default:
      return "unsupported";
  }
}

void Report::record(const std::string& id, int vertex, int m, bool ok) {
  items.push_back({id, vertex, m, ok ? Status::Pass : Status::Fail});
}

void Report::fail(const std::string& id, int vertex, int m, nlohmann::ordered_json detail) {
  counterexamples.push_back({id, vertex, m, std::move(detail)});
}

void Report::unsupported(const std::string& id, int vertex, int m) { items.push_back({id, vertex, m, Status::Unsupported}); }

void Report::append(const Report& other) {
  items.insert(items.end(), other.items.begin(), other.items.end());
  counterexamples.insert(counterexamples.end(), other.counterexamples.begin(), other.counterexamples.end());
  observations.insert(observations.end(), other.observations.begin(), other.observations.end());
  conditional = conditional || other.conditional;
}

bool Report::passed() const {
  return std::none_of(items.begin(), items.end(), [](const CheckItem& i) { return i.status == Status::Fail; });
}

bool Report::any_unsupported() const {
  return std::any_of(items.begin(), items.end(), [](const CheckItem& i) { return i.status == Status::Unsupported; });
}

std::size_t Report::count(const std::string& id, Status s) const {
  return std::count_if(items.begin(), items.end(), [&](const CheckItem& i) { return i.id == id && i.status == s; });
}

nlohmann::ordered_json Report::to_json() const {
  const auto item_json = [](const CheckItem& i) {
    nlohmann::ordered_json j;
    j["id"] = i.id;
    j["vertex"] = i.vertex;
    j["m"] = i.m;
    j["status"] = status_name(i.status);
    return j;
  };
  nlohmann::ordered_json j;
  j["check"] = check;
  j["family"] = std::string(1, family_letter(type.family));
  j["rank"] = type.rank;
  j["level"] = level;
  j["conditional"] = conditional;
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& i : items) j["items"].push_back(item_json(i));
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& c : counterexamples) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["vertex"] = c.vertex;
    e["m"] = c.m;
    e["detail"] = c.detail;
    j["counterexamples"].push_back(std::move(e));
  }
  j["observations"] = nlohmann::ordered_json::array();
  for (const auto& i : observations) j["observations"].push_back(item_json(i));
  return j;
}

Report check_unrestricted(const WGrid& grid, int threads) {
  const FusionContext& ctx = grid.context();
  const RootSystem& rs = ctx.rs();
  Report rep = make_report("unrestricted", ctx);
  rep.conditional = kr_data_conditional(rs);
  std::vector<KRIndex> jobs;
  for (int a = 1; a <= rs.rank(); ++a) {
    for (int m = 0; m + 1 <= grid.horizon(a); ++m) {
      const auto fs = relation_factors(a, m, rs);
      if (std::all_of(fs.begin(), fs.end(), [&](const KRIndex& f) { return f.m <= grid.horizon(f.a); }))
        jobs.push_back({a, m});
    }
  }
  std::vector<std::optional<nlohmann::ordered_json>> bad(jobs.size());
  const auto q = [&](int a, int m) -> const FusionElement& { return grid.at(a, m); };
  parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        const auto [a, m] = jobs[i];
        const FusionElement lhs = fusion_product(grid.at(a, m), grid.at(a, m), ctx);
        const FusionElement rhs = relation_rhs(a, m, rs, ctx, q);
        if (!same(lhs, rhs)) bad[i] = mismatch(lhs, rhs);
      },
      threads);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rep.record("relation", jobs[i].a, jobs[i].m, !bad[i]);
    if (bad[i]) rep.fail("relation", jobs[i].a, jobs[i].m, *bad[i]);
  }
  return rep;
}

Report check_conjecture(const WGrid& grid, int threads) {
  const FusionContext& ctx = grid.context();
  const RootSystem& rs = ctx.rs();
  const int k = ctx.level();
  Report rep = make_report("conjecture", ctx);
  rep.conditional = kr_data_conditional(rs);
  std::vector<Report> per(rs.rank());
  parallel_for(
      rs.rank(),
      [&](std::size_t idx) {
        const int a = static_cast<int>(idx) + 1;
        Report& out = per[idx];
        if (grid.horizon(a) < 0) {
          for (const char* id : {"i", "ii", "iii", "iv", "v", "sign", "period"}) out.unsupported(id, a);
          return;
        }
        const int H = grid.horizon(a);
        const int T = rs.t(a) * k;
        const int P = rs.t(a) * ctx.shifted_level();
        const int M = rs.period_multiplier();
        const auto check = [&](const std::string& id, int m, const FusionElement& expected, const FusionElement& actual) {
          const bool ok = same(expected, actual);
          out.record(id, a, m, ok);
          if (!ok) out.fail(id, a, m, mismatch(expected, actual));
        };
        const auto flag = [&](const std::string& id, int m, bool ok, const FusionElement& actual) {
          out.record(id, a, m, ok);
          if (!ok) out.fail(id, a, m, nlohmann::ordered_json{{"actual", terms_json(actual)}});
        };
        for (int m = 0; m <= std::min(T, H); ++m) flag("i", m, grid.at(a, m).is_positive(), grid.at(a, m));
        for (int m = 0; m <= T && T <= H; ++m)
          check("ii", m, tau_dual(a, grid.at(a, m), ctx), grid.at(a, T - m));
        if (T <= H) check("iii", T, FusionElement::basis(ctx.simple_current(rs.tau_zero_image(a))), grid.at(a, T));
        for (int m = T + 1; m <= std::min(P - 1, H); ++m) flag("iv", m, grid.at(a, m).is_zero(), grid.at(a, m));
        const Permutation& tau = rs.tau(a);
        for (int m = 0; m < P && m + P <= H; ++m) {
          FusionElement cur = grid.at(a, m);
          bool ok = true;
          for (int n = 1; m + n * P <= H; ++n) {
            cur = rs.sigma(a) * apply_outer(tau, cur, ctx);
            if (!same(cur, grid.at(a, m + n * P))) {
              ok = false;
              out.fail("v", a, m, mismatch(cur, grid.at(a, m + n * P)));
              break;
            }
          }
          out.record("v", a, m, ok);
        }
        for (int m = 0; m <= H; ++m) {
          const auto& w = grid.at(a, m);
          flag("sign", m, w.is_zero() || w.is_nonnegative() || w.is_nonpositive(), w);
        }
        for (int m = 0; m + M * P <= H; ++m) check("period", m, grid.at(a, m), grid.at(a, m + M * P));
      },
      threads);
  for (const auto& p : per) rep.append(p);
  return rep;
}

Report check_conjecture(const FusionContext& ctx, int threads) {
  return check_conjecture(generate_w_grid(ctx, threads), threads);
}

Weight boundary_lattice_weight(int a, const RootSystem& rs) {
  const int r = rs.rank();
  Weight w = Weight::zero(r);
  for (int b = 1; b <= r; ++b) {
    const int j = rs.tau_zero_image(b);
    if (j != 0) w[j - 1] += rs.cartan()[a - 1][b - 1];
  }
  return w;
}

std::vector<Weight> listed_lattice_conditions(const RootSystem& rs) {
  const int r = rs.rank();
  const auto om = [&](std::initializer_list<std::pair<int, int>> terms) {
    Weight w = Weight::zero(r);
    for (auto [b, c] : terms) w[b - 1] += c;
    return w;
  };
  switch (rs.dynkin().family) {
    case Family::B:
      return {om({{1, 2}})};
    case Family::C:
      return {om({{r, 2}})};
    case Family::D:
      if (r % 2 == 1)
        return {om({{1, 2}}), om({{r - 1, 1}, {r, 1}, {1, -2}}), om({{r - 1, 2}, {1, -1}}), om({{r, 2}, {1, -1}})};
      return {om({{1, 2}}), om({{1, 1}, {r - 1, 1}, {r, 1}}), om({{r - 1, 2}}), om({{r, 2}})};
    case Family::E:
      if (r == 6) return {om({{1, 2}, {5, -1}}), om({{5, 2}, {1, -1}}), om({{1, 1}, {5, 1}})};
      if (r == 7) return {om({{6, 2}})};
      return {};
    default:
      return {};
  }
}

Report boundary_check(const FusionContext& ctx) {
  const RootSystem& rs = ctx.rs();
  Report rep = make_report("boundary", ctx);
  const int r = rs.rank();
  std::vector<FusionElement> c(r + 1);
  for (int a = 1; a <= r; ++a) c[a] = FusionElement::basis(ctx.simple_current(rs.tau_zero_image(a)));
  for (int a = 1; a <= r; ++a) {
    const FusionElement lhs = fusion_product(c[a], c[a], ctx);
    FusionElement rhs = ctx.unit();
    for (int b = 1; b <= r; ++b) {
      const int cab = rs.cartan()[a - 1][b - 1];
      if (b == a || cab >= 0) continue;
      for (int j = 0; j < -cab; ++j) rhs = fusion_product(rhs, c[b], ctx);
    }
    const bool ok = same(lhs, rhs);
    rep.record("boundary-ring", a, rs.t(a) * ctx.level(), ok);
    if (!ok) rep.fail("boundary-ring", a, rs.t(a) * ctx.level(), mismatch(rhs, lhs));
  }
  for (int a = 1; a <= r; ++a) {
    const Weight w = boundary_lattice_weight(a, rs);
    const bool ok = rs.in_coroot_lattice(w);
    rep.record("boundary-lattice", a, 0, ok);
    if (!ok) rep.fail("boundary-lattice", a, 0, nlohmann::ordered_json{{"weight", w.coeffs}});
  }
  const auto listed = listed_lattice_conditions(rs);
  for (std::size_t i = 0; i < listed.size(); ++i) {
    const bool ok = rs.in_coroot_lattice(listed[i]);
    rep.record("boundary-listed", 0, static_cast<int>(i), ok);
    if (!ok) rep.fail("boundary-listed", 0, static_cast<int>(i), nlohmann::ordered_json{{"weight", listed[i].coeffs}});
  }
  return rep;
}

RGrid::RGrid(const FusionContext& ctx, const WGrid& w) : ctx_(&ctx) {
  const RootSystem& rs = ctx.rs();
  for (int a = 1; a <= rs.rank(); ++a) {
    const int T = rs.t(a) * ctx.level();
    tops_.push_back(T);
    std::vector<FusionElement> col(T + 1);
    for (int m = 0; m <= T; ++m)
      col[m] = (m <= T / 2) ? w.at(a, m) : tau_dual(a, w.at(a, T - m), ctx);
    table_.push_back(std::move(col));
  }
}

const FusionElement& RGrid::at(int a, int m) const {
  if (a < 1 || a > static_cast<int>(tops_.size())) throw std::out_of_range("R-grid vertex out of range");
  if (m < 0 || m > tops_[a - 1]) return zero_;
  return table_[a - 1][m];
}

Report check_restricted(const WGrid& w, const RGrid& r, int threads) {
  const FusionContext& ctx = r.context();
  const RootSystem& rs = ctx.rs();
  Report rep = make_report("restricted", ctx);
  std::vector<KRIndex> jobs;
  for (int a = 1; a <= rs.rank(); ++a)
    for (int m = 0; m <= r.top(a); ++m) jobs.push_back({a, m});
  std::vector<std::optional<nlohmann::ordered_json>> bad(jobs.size());
  const auto q = [&](int a, int m) -> const FusionElement& { return r.at(a, m); };
  parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        const auto [a, m] = jobs[i];
        const FusionElement lhs = fusion_product(r.at(a, m), r.at(a, m), ctx);
        const FusionElement rhs = relation_rhs(a, m, rs, ctx, q);
        if (!same(lhs, rhs)) bad[i] = mismatch(lhs, rhs);
      },
      threads);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rep.record("restricted-relation", jobs[i].a, jobs[i].m, !bad[i]);
    if (bad[i]) rep.fail("restricted-relation", jobs[i].a, jobs[i].m, *bad[i]);
  }
  for (const auto& [a, m] : jobs) {
    const bool ok = r.at(a, m).is_positive();
    rep.record("restricted-positive", a, m, ok);
    if (!ok) rep.fail("restricted-positive", a, m, nlohmann::ordered_json{{"actual", terms_json(r.at(a, m))}});
  }
  for (int a = 1; a <= rs.rank(); ++a) {
    const int T = r.top(a);
    const int s = T / 2;
    const int src = (T % 2 == 0) ? s - 1 : s;
    if (s + 1 > w.horizon(a)) {
      rep.unsupported("gluing", a, s + 1);
      continue;
    }
    const FusionElement glued = tau_dual(a, w.at(a, src), ctx);
    const bool ok = same(glued, w.at(a, s + 1));
    rep.record("gluing", a, s + 1, ok);
    if (!ok) rep.fail("gluing", a, s + 1, mismatch(glued, w.at(a, s + 1)));
    for (int m = s + 2; m <= std::min(T, w.horizon(a)); ++m)
      rep.observations.push_back({"r-equals-w", a, m, same(r.at(a, m), w.at(a, m)) ? Status::Pass : Status::Fail});
  }
  return rep;
}

RestrictedResult restricted_solution(const FusionContext& ctx, int threads) {
  const RootSystem& rs = ctx.rs();
  if (!rs.dynkin().is_classical())
    throw KRDataUnavailable("the restricted solution is built for types A, B, C and D only");
  std::vector<int> h(rs.rank());
  for (int a = 1; a <= rs.rank(); ++a) h[a - 1] = rs.t(a) * ctx.level();
  WGrid w = generate_w_grid(ctx, std::move(h), threads);
  RGrid r(ctx, w);
  Report rep = check_restricted(w, r, threads);
  return {std::move(w), std::move(r), std::move(rep)};
}

bool AdmissibilityMatrix::nonnegative() const {
  return std::all_of(entries.begin(), entries.end(), [](std::int64_t x) { return x >= 0; });
}

AdmissibilityMatrix multiplication_matrix(const FusionElement& u, const FusionContext& ctx) {
  ctx.check_element(u);
  AdmissibilityMatrix A;
  A.n = ctx.size();
  A.entries.assign(A.n * A.n, 0);
  for (std::size_t i = 0; i < A.n; ++i) {
    for (const auto& [w, c] : u.terms()) {
      for (const auto& [v, d] : ctx.basis_product(ctx.index_of(w), i).terms()) A.entries[i * A.n + ctx.index_of(v)] += c * d;
    }
  }
  return A;
}

AdmissibilityMatrix admissibility_matrix(int a, int m, const RGrid& r) {
  const FusionContext& ctx = r.context();
  if (!in_level_range({a, m}, ctx.rs(), ctx.level()))
    throw std::out_of_range("admissibility matrix requested outside H_k");
  AdmissibilityMatrix A = multiplication_matrix(r.at(a, m), ctx);
  A.a = a;
  A.m = m;
  return A;
}

std::vector<std::int64_t> matrix_product(const AdmissibilityMatrix& x, const AdmissibilityMatrix& y) {
  if (x.n != y.n) throw DimensionMismatch("matrix sizes differ");
  const std::size_t n = x.n;
  std::vector<std::int64_t> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const std::int64_t v = x.entries[i * n + l];
      if (v == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += v * y.entries[l * n + j];
    }
  return out;
}

}  // namespace fusionq
