#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include <Eigen/Dense>

#include "fusionq/errors.hpp"
#include "fusionq/parallel.hpp"
#include "fusionq/qsystem.hpp"

namespace fusionq {

namespace {

// AND-accumulates outcomes per (id, vertex, m), emitted in first-seen order.
class Tally {
 public:
  void note(const std::string& id, int vertex, int m, bool ok) {
    const auto key = std::make_tuple(id, vertex, m);
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, items_.size());
      items_.push_back({id, vertex, m, ok ? Status::Pass : Status::Fail});
    } else if (!ok) {
      items_[it->second].status = Status::Fail;
    }
  }
  void absorb(const Report& rep) {
    for (const auto& i : rep.items) note(i.id, i.vertex, i.m, i.status != Status::Fail);
  }
  void flush(Report& rep) {
    rep.items.insert(rep.items.end(), items_.begin(), items_.end());
    items_.clear();
    index_.clear();
  }

 private:
  std::map<std::tuple<std::string, int, int>, std::size_t> index_;
  std::vector<CheckItem> items_;
};

bool near(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

bool is_zero(Complex x, double tol) { return std::abs(x) <= tol; }

Complex value(const NumericTable& q, int a, int m) {
  if (m < 0) return 0.0;
  return q[a - 1][m];
}

bool has(const NumericTable& q, int a, int m) { return m < static_cast<int>(q[a - 1].size()); }

// Every available Q^(a)_m for lo_a <= m <= hi_a vanishes.
bool zeros_between(const NumericTable& q, const RootSystem& rs, int lo, int hi_plus, int hi_minus, int scale_lo,
                   double tol) {
  for (int a = 1; a <= rs.rank(); ++a) {
    const int t = rs.t(a);
    for (int m = t * lo + scale_lo; m <= t * hi_plus + hi_minus; ++m)
      if (has(q, a, m) && !is_zero(value(q, a, m), tol)) return false;
  }
  return true;
}

std::vector<std::int64_t> zero_matrix(std::size_t n) { return std::vector<std::int64_t>(n * n, 0); }

std::vector<std::int64_t> identity_matrix(std::size_t n) {
  auto I = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) I[i * n + i] = 1;
  return I;
}

std::vector<std::int64_t> mat_mul(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y, std::size_t n) {
  AdmissibilityMatrix X, Y;
  X.n = Y.n = n;
  X.entries = x;
  Y.entries = y;
  return matrix_product(X, Y);
}

Report make_report(const std::string& check, const FusionContext& ctx) {
  Report rep;
  rep.check = check;
  rep.type = ctx.rs().dynkin();
  rep.level = ctx.level();
  return rep;
}

}  // namespace

double AdmissibilityMatrix::perron_frobenius() const {
  if (n == 0) return 0.0;
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = static_cast<double>(entries[i * n + j]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  if (es.info() != Eigen::Success) throw NumericDegradation("eigenvalue computation did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Report check_admissibility(const RGrid& r, double tol, int threads) {
  const FusionContext& ctx = r.context();
  const RootSystem& rs = ctx.rs();
  const std::size_t n = ctx.size();
  Report rep = make_report("admissibility", ctx);
  std::vector<KRIndex> jobs;
  for (int a = 1; a <= rs.rank(); ++a)
    for (int m = 0; m <= r.top(a); ++m) jobs.push_back({a, m});
  std::map<KRIndex, std::size_t> slot;
  for (std::size_t i = 0; i < jobs.size(); ++i) slot[jobs[i]] = i;
  std::vector<AdmissibilityMatrix> mats(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { mats[i] = admissibility_matrix(jobs[i].a, jobs[i].m, r); }, threads);
  const auto zero = zero_matrix(n);
  const auto get = [&](int a, int m) -> const std::vector<std::int64_t>& {
    auto it = slot.find({a, m});
    return it == slot.end() ? zero : mats[it->second].entries;
  };
  std::vector<char> relation_ok(jobs.size()), pf_ok(jobs.size());
  std::vector<double> pf(jobs.size()), dim(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        const auto [a, m] = jobs[i];
        const auto lhs = mat_mul(get(a, m), get(a, m), n);
        auto rhs = mat_mul(get(a, m - 1), get(a, m + 1), n);
        auto prod = identity_matrix(n);
        for (const auto& f : relation_factors(a, m, rs)) prod = mat_mul(prod, get(f.a, f.m), n);
        for (std::size_t e = 0; e < rhs.size(); ++e) rhs[e] += prod[e];
        relation_ok[i] = lhs == rhs;
        pf[i] = mats[i].perron_frobenius();
        dim[i] = quantum_dimension(r.at(a, m), ctx);
        pf_ok[i] = std::abs(pf[i] - dim[i]) <= tol * std::max(1.0, dim[i]);
      },
      threads);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto [a, m] = jobs[i];
    rep.record("adm-nonneg", a, m, mats[i].nonnegative());
    rep.record("adm-relation", a, m, relation_ok[i]);
    if (!relation_ok[i]) rep.fail("adm-relation", a, m, nlohmann::ordered_json::object());
    rep.record("adm-pf", a, m, pf_ok[i]);
    if (!pf_ok[i]) rep.fail("adm-pf", a, m, nlohmann::ordered_json{{"eigenvalue", pf[i]}, {"qdim", dim[i]}});
  }
  return rep;
}

Report zero_string_lemmas(const NumericTable& q, const RootSystem& rs, double tol) {
  if (static_cast<int>(q.size()) != rs.rank()) throw DimensionMismatch("one value column per vertex expected");
  Report rep;
  rep.check = "zero-strings";
  rep.type = rs.dynkin();
  const int r = rs.rank();
  int span = 0;
  for (int a = 1; a <= r; ++a) span = std::max(span, static_cast<int>(q[a - 1].size()) / rs.t(a) + 1);
  const auto all = [&](auto pred) {
    for (int a = 1; a <= r; ++a)
      if (!pred(a)) return false;
    return true;
  };
  for (int m = 0; m <= span; ++m) {
    if (all([&](int a) { return has(q, a, rs.t(a) * m + 1) && is_zero(value(q, a, rs.t(a) * m + 1), tol); }))
      rep.record("string-a", 0, m, zeros_between(q, rs, m, m + 1, 0, 1, tol));
    if (all([&](int a) { return has(q, a, rs.t(a) * m) && is_zero(value(q, a, rs.t(a) * m), tol); }))
      rep.record("string-b", 0, m, zeros_between(q, rs, m, m + 1, -1, 1, tol));
    if (m >= 1 && all([&](int a) {
          return has(q, a, rs.t(a) * m) && !is_zero(value(q, a, rs.t(a) * m - 1), tol);
        })) {
      const bool boundary = all([&](int a) {
        Complex rhs = 1.0;
        for (int b = 1; b <= r; ++b) {
          const int cab = rs.cartan()[a - 1][b - 1];
          if (b != a && cab < 0) rhs *= std::pow(value(q, b, rs.t(b) * m), -cab);
        }
        return near(std::pow(value(q, a, rs.t(a) * m), 2), rhs, tol);
      });
      if (boundary) rep.record("string-c", 0, m, zeros_between(q, rs, m, m + 2, -1, 1, tol));
    }
    const bool block_zero = all([&](int a) {
      for (int j = rs.t(a) * m; j <= rs.t(a) * (m + 1) - 1; ++j)
        if (!has(q, a, j) || !is_zero(value(q, a, j), tol)) return false;
      return true;
    });
    bool some = false;
    for (int b = 1; b <= r; ++b)
      some = some || (has(q, b, rs.t(b) * (m + 1)) && is_zero(value(q, b, rs.t(b) * (m + 1)), tol));
    if (block_zero && some) rep.record("string-d", 0, m, zeros_between(q, rs, m + 1, m + 2, -1, 0, tol));
  }
  return rep;
}

UniquenessResult uniqueness_check(const NumericTable& w, const NumericTable& q, const RootSystem& rs, int level,
                                  double tol) {
  UniquenessResult res;
  for (int a = 1; a <= rs.rank(); ++a) {
    const int T = rs.t(a) * level;
    if (!has(w, a, T) || !has(q, a, T) || !near(value(w, a, 1), value(q, a, 1), tol)) res.preconditions = false;
    for (int m = 0; m <= T && has(w, a, m); ++m)
      if (is_zero(value(w, a, m), tol)) res.preconditions = false;
  }
  if (!res.preconditions) {
    res.holds = false;
    return res;
  }
  for (int a = 1; a <= rs.rank(); ++a)
    for (int m = 0; m <= rs.t(a) * level; ++m)
      if (!near(value(w, a, m), value(q, a, m), tol)) {
        res.holds = false;
        res.discrepancy = KRIndex{a, m};
        return res;
      }
  return res;
}

std::vector<std::vector<double>> kns_k_matrix(const RootSystem& rs, int level, const std::vector<KRIndex>& interior) {
  const std::size_t n = interior.size();
  std::vector<std::vector<double>> K(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [a, m] = interior[i];
      const auto [b, l] = interior[j];
      const Rational ab = rs.form(rs.simple_roots()[a - 1], rs.simple_roots()[b - 1]);
      const Rational v = ab * (Rational(std::min(rs.t(b) * m, rs.t(a) * l)) - Rational(m * l) / level);
      K[i][j] = static_cast<double>(v);
    }
  return K;
}

bool kns_k_positive_definite(const RootSystem& rs, int level, const std::vector<KRIndex>& interior) {
  const std::size_t n = interior.size();
  if (n <= 12) {
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto [a, m] = interior[i];
        const auto [b, l] = interior[j];
        A[i][j] = rs.form(rs.simple_roots()[a - 1], rs.simple_roots()[b - 1]) *
                  (Rational(std::min(rs.t(b) * m, rs.t(a) * l)) - Rational(m * l) / level);
      }
    // Pivots of elimination without exchanges are ratios of leading principal minors.
    for (std::size_t p = 0; p < n; ++p) {
      if (A[p][p] <= 0) return false;
      for (std::size_t i = p + 1; i < n; ++i) {
        const Rational f = A[i][p] / A[p][p];
        for (std::size_t j = p; j < n; ++j) A[i][j] -= f * A[p][j];
      }
    }
    return true;
  }
  const auto K = kns_k_matrix(rs, level, interior);
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = K[i][j];
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  return llt.info() == Eigen::Success;
}

namespace {

// log f_i - Σ_j K_ij log(1 - f_j)
std::vector<double> log_residual(const std::vector<std::vector<double>>& K, const std::vector<double>& f) {
  const std::size_t n = f.size();
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = std::log(f[i]);
    for (std::size_t j = 0; j < n; ++j) s -= K[i][j] * std::log1p(-f[j]);
    res[i] = s;
  }
  return res;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool inside(const std::vector<double>& f) {
  return std::all_of(f.begin(), f.end(), [](double x) { return x > 0.0 && x < 1.0; });
}

std::optional<FixedPoint> damped(const std::vector<std::vector<double>>& K, const KNSOptions& opt) {
  const std::size_t n = K.size();
  FixedPoint fp;
  fp.method = "damped";
  fp.f.assign(n, 0.5);
  std::vector<double> next(n);
  for (fp.iterations = 1; fp.iterations <= opt.max_iterations; ++fp.iterations) {
    fp.residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lg = 0.0;
      for (std::size_t j = 0; j < n; ++j) lg += K[i][j] * std::log1p(-fp.f[j]);
      const double target = std::exp(lg);
      fp.residual = std::max(fp.residual, std::abs(target - fp.f[i]));
      next[i] = (1.0 - opt.damping) * fp.f[i] + opt.damping * target;
    }
    if (!std::isfinite(fp.residual)) return std::nullopt;
    if (fp.residual < opt.fixed_point_tol) return fp;
    if (!inside(next)) return std::nullopt;
    fp.f.swap(next);
  }
  return std::nullopt;
}

// Newton on the log residual, halving steps to stay inside (0,1) and decrease the residual.
FixedPoint newton(const std::vector<std::vector<double>>& K, const KNSOptions& opt) {
  const std::size_t n = K.size();
  FixedPoint fp;
  fp.method = "newton";
  fp.f.assign(n, 0.5);
  auto res = log_residual(K, fp.f);
  double norm = max_abs(res);
  for (fp.iterations = 1; fp.iterations <= opt.max_iterations; ++fp.iterations) {
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) J(i, j) = K[i][j] / (1.0 - fp.f[j]);
      J(i, i) += 1.0 / fp.f[i];
      rhs(i) = -res[i];
    }
    const Eigen::VectorXd step = J.partialPivLu().solve(rhs);
    double t = 1.0;
    std::vector<double> trial(n);
    std::vector<double> trial_res;
    for (; t > 1e-12; t *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = fp.f[i] + t * step(i);
      if (!inside(trial)) continue;
      trial_res = log_residual(K, trial);
      if (max_abs(trial_res) < norm || max_abs(trial_res) < opt.fixed_point_tol) break;
    }
    if (t <= 1e-12) break;
    fp.f = trial;
    res = trial_res;
    norm = max_abs(res);
    fp.residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lg = 0.0;
      for (std::size_t j = 0; j < n; ++j) lg += K[i][j] * std::log1p(-fp.f[j]);
      fp.residual = std::max(fp.residual, std::abs(std::exp(lg) - fp.f[i]));
    }
    if (fp.residual < opt.fixed_point_tol) return fp;
  }
  throw NumericDegradation("f-system fixed point did not converge; residual " + std::to_string(fp.residual));
}

}  // namespace

FixedPoint solve_f_system(const std::vector<std::vector<double>>& K, const KNSOptions& opt) {
  if (auto fp = damped(K, opt)) return *fp;
  return newton(K, opt);
}

KNSReport kns_report(const FusionContext& ctx, const KNSOptions& opt) {
  const RootSystem& rs = ctx.rs();
  if (!rs.dynkin().is_classical()) throw KRDataUnavailable("the KNS report is built for types A, B, C and D only");
  std::vector<int> h(rs.rank());
  for (int a = 1; a <= rs.rank(); ++a) h[a - 1] = rs.t(a) * ctx.shifted_level() - 1;
  WGrid w = generate_w_grid(ctx, std::move(h), opt.threads);
  RGrid r(ctx, w);
  return kns_report(w, r, opt);
}

KNSReport kns_report(const WGrid& w, const RGrid& r, const KNSOptions& opt) {
  const FusionContext& ctx = w.context();
  const RootSystem& rs = ctx.rs();
  const int k = ctx.level();
  const int R = rs.rank();
  KNSReport out;
  out.report = make_report("kns", ctx);
  Tally tally;

  out.D.resize(R);
  for (int a = 1; a <= R; ++a) {
    const int P = rs.t(a) * ctx.shifted_level();
    const int top = std::min(P - 1, w.horizon(a));
    out.D[a - 1].resize(top + 1);
    parallel_for(
        top + 1, [&](std::size_t m) { out.D[a - 1][m] = quantum_dimension(w.at(a, static_cast<int>(m)), ctx); },
        opt.threads);
  }

  for (int a = 1; a <= R; ++a) {
    const auto& D = out.D[a - 1];
    const int T = rs.t(a) * k;
    const int last = static_cast<int>(D.size()) - 1;
    if (last < T) {
      tally.note("kns-positive", a, 0, false);
      continue;
    }
    for (int m = 0; m <= T; ++m) tally.note("kns-positive", a, m, D[m] > opt.zero_tol);
    for (int m = 0; m <= T; ++m)
      tally.note("kns-palindrome", a, m, std::abs(D[m] - D[T - m]) <= opt.value_tol * std::max(1.0, D[m]));
    tally.note("kns-unit", a, T, std::abs(D[T] - 1.0) <= opt.value_tol);
    for (int m = T + 1; m <= last; ++m) tally.note("kns-zero", a, m, std::abs(D[m]) <= opt.zero_tol);
    for (int m = 1; m <= T / 2; ++m) tally.note("kns-monotone", a, m, D[m] - D[m - 1] > opt.strict_margin);
  }

  for (int a = 1; a <= R; ++a)
    for (int m = 1; m <= rs.t(a) * k - 1; ++m) out.interior.push_back({a, m});
  out.K = kns_k_matrix(rs, k, out.interior);
  bool symmetric = true;
  for (std::size_t i = 0; i < out.K.size(); ++i)
    for (std::size_t j = 0; j < out.K.size(); ++j) symmetric = symmetric && out.K[i][j] == out.K[j][i];
  tally.note("k-symmetric", 0, 0, symmetric);
  out.k_positive_definite = kns_k_positive_definite(rs, k, out.interior);
  tally.note("k-posdef", 0, 0, out.k_positive_definite);
  for (const auto& [a, m] : out.interior) {
    const auto& D = out.D[a - 1];
    out.x.push_back(D[m - 1] * D[m + 1] / (D[m] * D[m]));
  }
  const FixedPoint fp = solve_f_system(out.K, opt);
  out.f = fp.f;
  out.fixed_point_method = fp.method;
  out.iterations = fp.iterations;
  out.residual = fp.residual;
  for (std::size_t i = 0; i < out.interior.size(); ++i) {
    const auto [a, m] = out.interior[i];
    tally.note("f-range", a, m, out.f[i] > 0.0 && out.f[i] < 1.0);
    const bool ok = std::abs((1.0 - out.f[i]) - out.x[i]) < opt.x_tol;
    tally.note("f-x", a, m, ok);
    if (!ok) out.report.fail("f-x", a, m, nlohmann::ordered_json{{"f", out.f[i]}, {"x", out.x[i]}});
  }

  if (R > kOracleRankCap) {
    tally.flush(out.report);
    for (const char* id : {"gqdim-r", "gqdim-sym", "gqdim-unit", "gqdim-zero"}) out.report.unsupported(id);
    return out;
  }

  const SMatrix S = build_smatrix(ctx, opt.zero_tol, opt.threads);
  const SEvaluator ev(ctx);
  const std::size_t n = ctx.size();
  // gw[a][m][μ], gr[a][m][μ]
  std::vector<std::vector<std::vector<Complex>>> gw(R), gr(R);
  for (int a = 1; a <= R; ++a) {
    gw[a - 1].resize(out.D[a - 1].size());
    gr[a - 1].resize(r.top(a) + 1);
    parallel_for(
        gw[a - 1].size(),
        [&](std::size_t m) { gw[a - 1][m] = generalized_qdims(w.at(a, static_cast<int>(m)), S, ctx); }, opt.threads);
    parallel_for(
        gr[a - 1].size(),
        [&](std::size_t m) { gr[a - 1][m] = generalized_qdims(r.at(a, static_cast<int>(m)), S, ctx); }, opt.threads);
  }

  for (std::size_t mu = 0; mu < n; ++mu) {
    bool hypothesis = true;
    for (int a = 1; a <= R && hypothesis; ++a)
      for (int m = 0; m <= rs.t(a) * k / 2; ++m)
        if (std::abs(gw[a - 1][m][mu]) <= opt.zero_tol) hypothesis = false;
    if (!hypothesis) {
      ++out.skipped_mu;
      continue;
    }
    ++out.sampled_mu;
    const Weight mu_fin = ctx.basis()[mu].finite();
    NumericTable slice(R), rslice(R);
    for (int a = 1; a <= R; ++a) {
      const int T = rs.t(a) * k;
      const auto g = [&](int m) { return gw[a - 1][m][mu]; };
      for (std::size_t m = 0; m < gw[a - 1].size(); ++m) slice[a - 1].push_back(gw[a - 1][m][mu]);
      for (std::size_t m = 0; m < gr[a - 1].size(); ++m) rslice[a - 1].push_back(gr[a - 1][m][mu]);
      for (int m = 0; m <= T; ++m) {
        tally.note("gqdim-r", a, m, near(g(m), gr[a - 1][m][mu], opt.value_tol));
        tally.note("gqdim-sym", a, m, near(g(m), g(T) * std::conj(g(T - m)), opt.value_tol));
      }
      const int j = rs.tau_zero_image(a);
      const Weight tw = j == 0 ? Weight::zero(R) : Weight::fundamental(R, j);
      tally.note("gqdim-unit", a, T, near(g(T), ev.phase(tw, mu_fin), opt.value_tol));
      for (int m = T + 1; m < static_cast<int>(gw[a - 1].size()); ++m)
        tally.note("gqdim-zero", a, m, is_zero(g(m), opt.zero_tol));
    }
    tally.absorb(zero_string_lemmas(slice, rs, opt.zero_tol));
    const UniquenessResult u = uniqueness_check(rslice, slice, rs, k, opt.value_tol);
    tally.note("uniqueness", 0, 0, u.preconditions && u.holds);
  }
  tally.flush(out.report);
  return out;
}

}  // namespace fusionq
