#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fusionq/errors.hpp"
#include "fusionq/parallel.hpp"
#include "fusionq/qsystem.hpp"

using namespace fusionq;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kViolation = 1, kUsage = 2, kNumeric = 3 };

struct RunConfig {
  std::string family;
  int rank = 0;
  int level = 0;
  std::string horizon = "auto";
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  int threads = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DynkinType config_type(const RunConfig& cfg) {
  if (cfg.level < 2) throw UsageError("level must be at least 2");
  DynkinType t{parse_family(cfg.family), cfg.rank};
  t.validate();
  return t;
}

std::optional<int> config_horizon(const RunConfig& cfg) {
  if (cfg.horizon == "auto") return std::nullopt;
  std::size_t used = 0;
  int h = -1;
  try {
    h = std::stoi(cfg.horizon, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != cfg.horizon.size() || h < 0) throw UsageError("horizon must be a non-negative integer or 'auto'");
  return h;
}

std::string type_tag(const FusionContext& ctx) {
  return std::string(1, family_letter(ctx.rs().dynkin().family)) + std::to_string(ctx.rs().rank()) + "_k" +
         std::to_string(ctx.level());
}

std::optional<std::filesystem::path> cache_file(const FusionContext& ctx) {
  const char* dir = std::getenv("FUSIONQ_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir) / ("products_" + type_tag(ctx) + ".json");
}

void load_cache(const FusionContext& ctx) {
  const auto path = cache_file(ctx);
  if (!path || !std::filesystem::exists(*path)) return;
  try {
    std::ifstream in(*path);
    const json j = json::parse(in);
    for (const auto& e : j.at("products"))
      ctx.preload_product(e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(),
                          fusion_element_from_json(e.at("product"), ctx));
  } catch (const std::exception& e) {
    std::cerr << "ignoring unreadable cache " << path->string() << ": " << e.what() << "\n";
  }
}

void save_cache(const FusionContext& ctx) {
  const auto path = cache_file(ctx);
  if (!path) return;
  json j;
  j["family"] = std::string(1, family_letter(ctx.rs().dynkin().family));
  j["rank"] = ctx.rs().rank();
  j["level"] = ctx.level();
  auto products = json::array();
  for (const auto& [i, k, p] : ctx.cached_products()) products.push_back(json{{"i", i}, {"j", k}, {"product", to_json(p, ctx)}});
  j["products"] = std::move(products);
  std::error_code ec;
  std::filesystem::create_directories(path->parent_path(), ec);
  const auto tmp = path->string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      std::cerr << "cannot write cache " << tmp << "\n";
      return;
    }
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, *path, ec);
  if (ec) std::cerr << "cannot write cache " << path->string() << ": " << ec.message() << "\n";
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + cfg.out);
  out << text;
}

json terms_json(const FusionElement& u) {
  auto terms = json::array();
  for (const auto& [w, c] : u.terms()) terms.push_back(json{{"w", w.coeffs}, {"c", c}});
  return terms;
}

int cmd_ring(const RunConfig& cfg) {
  const FusionContext ctx(config_type(cfg), cfg.level);
  load_cache(ctx);
  const auto& basis = ctx.basis();
  const std::size_t n = basis.size();
  std::vector<FusionElement> table(n * n);
  parallel_for(n * n, [&](std::size_t idx) {
    const std::size_t i = idx / n, j = idx % n;
    table[idx] = ctx.basis_product(std::min(i, j), std::max(i, j));
  }, cfg.threads);
  save_cache(ctx);

  std::ostringstream out;
  if (cfg.format == "csv") {
    out << "lambda,mu,product\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out << '"' << basis[i].to_string() << "\",\"" << basis[j].to_string() << "\",\"" << table[i * n + j].to_string()
            << "\"\n";
  } else {
    json j;
    j["family"] = std::string(1, family_letter(ctx.rs().dynkin().family));
    j["rank"] = ctx.rs().rank();
    j["level"] = ctx.level();
    auto b = json::array();
    for (const auto& w : basis) b.push_back(json{{"label", w.label()}, {"w", w.coeffs}});
    j["basis"] = std::move(b);
    auto products = json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        products.push_back(json{{"i", i}, {"j", k}, {"terms", terms_json(table[i * n + k])}});
    j["products"] = std::move(products);
    out << j.dump(1) << "\n";
  }
  emit(cfg, out.str());
  return kPass;
}

std::string fmt_double(double x) {
  if (std::abs(x) < 1e-14) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

int cmd_smatrix(const RunConfig& cfg) {
  const DynkinType t = config_type(cfg);
  if (t.rank > kOracleRankCap)
    throw UsageError("S-matrix export is limited to rank " + std::to_string(kOracleRankCap));
  const FusionContext ctx(t, cfg.level);
  const SMatrix S = build_smatrix(ctx, 1e-9, cfg.threads);
  const double tol = cfg.tol.value_or(1e-9);
  const double residual = S.unitarity_residual();

  std::string text;
  if (cfg.format == "json") {
    json j;
    j["family"] = std::string(1, family_letter(t.family));
    j["rank"] = t.rank;
    j["level"] = cfg.level;
    auto labels = json::array();
    for (const auto& w : ctx.basis()) labels.push_back(w.label());
    j["basis"] = std::move(labels);
    auto rows = json::array();
    for (std::size_t i = 0; i < S.size(); ++i) {
      auto row = json::array();
      for (std::size_t k = 0; k < S.size(); ++k)
        row.push_back(json::array({fmt_double(S(i, k).real()), fmt_double(S(i, k).imag())}));
      rows.push_back(std::move(row));
    }
    j["s"] = std::move(rows);
    text = j.dump(1) + "\n";
  } else {
    text = smatrix_csv(S, ctx);
  }
  emit(cfg, text);
  std::cerr << "unitarity residual " << residual << "\n";
  if (!(residual <= tol)) {
    std::cerr << "unitarity residual exceeds tolerance " << tol << "\n";
    return kNumeric;
  }
  return kPass;
}

Report unsupported_report(const std::string& check, const FusionContext& ctx) {
  Report r;
  r.check = check;
  r.type = ctx.rs().dynkin();
  r.level = ctx.level();
  r.unsupported(check);
  return r;
}

json grid_json(const WGrid& grid, const FusionContext& ctx) {
  json j = json::object();
  for (int a = 1; a <= ctx.rs().rank(); ++a) {
    if (grid.horizon(a) < 0) continue;
    auto col = json::array();
    const int top = std::min(grid.horizon(a), ctx.rs().t(a) * ctx.level());
    for (int m = 0; m <= top; ++m) col.push_back(grid.at(a, m).is_zero() ? "0" : grid.at(a, m).to_string());
    j[std::to_string(a)] = std::move(col);
  }
  return j;
}

int cmd_verify(const RunConfig& cfg) {
  const FusionContext ctx(config_type(cfg), cfg.level);
  const auto horizon = config_horizon(cfg);
  load_cache(ctx);
  const RootSystem& rs = ctx.rs();

  std::vector<Report> reports;
  json extra;
  bool any_data = false;
  for (int a = 1; a <= rs.rank(); ++a) any_data = any_data || kr_data_available(rs, a);

  if (any_data) {
    const WGrid grid = horizon ? generate_w_grid(ctx, *horizon, cfg.threads) : generate_w_grid(ctx, cfg.threads);
    reports.push_back(check_conjecture(grid, cfg.threads));
    reports.push_back(check_unrestricted(grid, cfg.threads));
    json periods = json::object();
    for (int a = 1; a <= rs.rank(); ++a)
      if (grid.horizon(a) >= 0) periods[std::to_string(a)] = rs.period_multiplier() * rs.t(a) * ctx.shifted_level();
    extra["period"] = std::move(periods);
    extra["w_grid"] = grid_json(grid, ctx);
  } else {
    reports.push_back(unsupported_report("conjecture", ctx));
    reports.push_back(unsupported_report("unrestricted", ctx));
  }

  reports.push_back(boundary_check(ctx));

  const double tol = cfg.tol.value_or(1e-8);
  if (rs.dynkin().is_classical()) {
    const auto res = restricted_solution(ctx, cfg.threads);
    reports.push_back(res.report);
    reports.push_back(check_admissibility(res.r, tol, cfg.threads));
    KNSOptions opt;
    opt.value_tol = tol;
    opt.threads = cfg.threads;
    const KNSReport kns = kns_report(ctx, opt);
    reports.push_back(kns.report);
    json k;
    k["method"] = kns.fixed_point_method;
    k["iterations"] = kns.iterations;
    k["residual"] = kns.residual;
    k["k_positive_definite"] = kns.k_positive_definite;
    k["sampled_mu"] = kns.sampled_mu;
    k["skipped_mu"] = kns.skipped_mu;
    auto fx = json::array();
    for (std::size_t i = 0; i < kns.interior.size(); ++i)
      fx.push_back(json{{"vertex", kns.interior[i].a}, {"m", kns.interior[i].m}, {"f", kns.f[i]}, {"x", kns.x[i]}});
    k["interior"] = std::move(fx);
    extra["kns"] = std::move(k);
  } else {
    for (const char* c : {"restricted", "admissibility", "kns"}) reports.push_back(unsupported_report(c, ctx));
  }
  save_cache(ctx);

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();

  std::ostringstream out;
  if (cfg.format == "csv") {
    out << "check,id,vertex,m,status\n";
    for (const auto& r : reports)
      for (const auto& it : r.items)
        out << r.check << ',' << it.id << ',' << it.vertex << ',' << it.m << ',' << status_name(it.status) << "\n";
  } else {
    json j;
    j["family"] = std::string(1, family_letter(rs.dynkin().family));
    j["rank"] = rs.rank();
    j["level"] = ctx.level();
    j["status"] = ok ? "pass" : "fail";
    auto checks = json::array();
    for (const auto& r : reports) checks.push_back(r.to_json());
    j["checks"] = std::move(checks);
    for (auto& [key, value] : extra.items()) j[key] = value;
    out << j.dump(1) << "\n";
  }
  emit(cfg, out.str());
  for (const auto& r : reports) {
    std::size_t pass = 0, fail = 0, unsupported = 0;
    for (const auto& it : r.items) {
      if (it.status == Status::Pass) ++pass;
      else if (it.status == Status::Fail) ++fail;
      else ++unsupported;
    }
    std::cerr << r.check << ": " << pass << " pass, " << fail << " fail, " << unsupported << " unsupported\n";
  }
  return ok ? kPass : kViolation;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_horizon) {
  cmd->add_option("--family", cfg.family, "Lie algebra family")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
  cmd->add_option("--rank", cfg.rank, "rank")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--level", cfg.level, "level k >= 2")->required();
  if (with_horizon) cmd->add_option("--horizon", cfg.horizon, "largest m, or 'auto'");
  cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol", cfg.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-k fusion rings and restricted Q-systems"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* ring = app.add_subcommand("ring", "write the fusion product table");
  auto* verify = app.add_subcommand("verify", "run every Q-system check and write a report");
  auto* smatrix = app.add_subcommand("smatrix", "write the modular S-matrix");
  add_common(ring, cfg, false);
  add_common(verify, cfg, true);
  add_common(smatrix, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  if (smatrix->parsed() && smatrix->count("--format") == 0) cfg.format = "csv";
  default_thread_count() = cfg.threads;

  try {
    if (ring->parsed()) return cmd_ring(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return cmd_smatrix(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OracleUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericDegradation& e) {
    std::cerr << "numeric degradation: " << e.what() << "\n";
    return kNumeric;
  }
}
