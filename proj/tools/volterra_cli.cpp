// Experiment runner: lift / norms / chen-check / extend / solve /
// brownian-mc / verify-h / convergence, with TOML-subset configs and
// deterministic JSON/CSV outputs that embed the resolved config.
//
// Exit codes: 0 ok, 2 validation/config error, 3 numerical check failed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "volterra/brownian.hpp"
#include "volterra/config.hpp"
#include "volterra/controlled.hpp"
#include "volterra/convolution.hpp"
#include "volterra/hoelder.hpp"
#include "volterra/kernel.hpp"
#include "volterra/lift.hpp"
#include "volterra/solver.hpp"

using nlohmann::json;
using namespace volterra;

namespace {

struct MathCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& o)
{
  sub->add_option("--config", o.config_path, "TOML config file");
  sub->add_option("--out", o.out_path, "output file (default: stdout)");
  sub->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", o.threads, "worker thread cap (or env VOLTERRA_THREADS)");
}

void apply_threads(int threads)
{
  if (threads <= 0)
    if (const char* env = std::getenv("VOLTERRA_THREADS")) threads = std::atoi(env);
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

json resolve_config(const CommonOpts& o, const json& overrides)
{
  json cfg = default_config();
  if (!o.config_path.empty()) cfg = merge_config(cfg, load_config_file(o.config_path));
  return merge_config(cfg, overrides);
}

void write_output(const CommonOpts& o, const std::string& text)
{
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw ConfigError("cannot write output file: " + o.out_path);
  out << text;
}

void write_json(const CommonOpts& o, const json& cfg, const json& results)
{
  write_output(o, json{{"config", cfg}, {"results", results}}.dump(2) + "\n");
}

// CSV with the resolved config embedded as '# section.key = value'.
std::string csv_header(const json& cfg)
{
  std::string s;
  for (auto sec = cfg.begin(); sec != cfg.end(); ++sec)
    for (auto kv = sec.value().begin(); kv != sec.value().end(); ++kv)
      s += "# " + sec.key() + "." + kv.key() + " = " + kv.value().dump() + "\n";
  return s;
}

SimplexGrid grid_from(const json& cfg)
{
  return make_uniform(cfg["grid"]["T"].get<double>(), cfg["grid"]["depth"].get<int>());
}

VolterraKernel kernel_from(const json& cfg)
{
  const std::string kind = cfg["kernel"]["kind"].get<std::string>();
  const double g = cfg["kernel"]["gamma"].get<double>();
  if (kind == "unit") return unit_kernel();
  if (kind == "fractional") return fractional_kernel(g);
  if (kind == "tempered")
    return tempered_fractional_kernel(g, cfg["kernel"]["lambda"].get<double>());
  throw ConfigError("unknown kernel kind: " + kind);
}

DrivingPath driver_from(const json& cfg, const SimplexGrid& g)
{
  const std::string kind = cfg["driver"]["kind"].get<std::string>();
  DrivingPath x;
  if (kind == "linear")
    x = linear_path(g);
  else if (kind == "sine")
    x = sine_path(g);
  else
    throw ConfigError("unknown driver kind: " + kind);
  x.alpha = cfg["driver"]["alpha"].get<double>();
  return x;
}

SewParams sew_from(const json& cfg)
{
  return {cfg["sew"]["max_level"].get<int>(), cfg["sew"]["tol"].get<double>()};
}

VectorField field_from(const json& cfg, int m, int d)
{
  const std::string kind = cfg["solve"]["field"].get<std::string>();
  if (kind == "sin") return sin_field(m, d);
  if (kind == "zero") return zero_field(m, d);
  throw ConfigError("unknown field kind: " + kind);
}

json stat_json(const NormStat& s)
{
  return {{"value", s.value},
          {"argmax", s.argmax},
          {"argmax_eta", s.argmax_eta},
          {"probes", s.probes},
          {"skipped", s.skipped}};
}

json mcstat_json(const MCStat& s)
{
  return {{"name", s.name},  {"mean", s.mean},     {"variance", s.variance},
          {"n", s.n},        {"target", s.target}, {"z_score", s.z_score}};
}

// Evenly spread index subsample, endpoints included.
std::vector<int> subsample(int N, int budget)
{
  std::vector<int> idx;
  const int stride = std::max(1, (N - 1 + budget - 1) / budget);
  for (int i = 0; i < N; i += stride) idx.push_back(i);
  if (idx.back() != N - 1) idx.push_back(N - 1);
  return idx;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = int(xs.size());
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------- verify-h

int run_verify_h(const CommonOpts& o, const json& cfg)
{
  const SimplexGrid g = grid_from(cfg);
  const VolterraKernel k = kernel_from(cfg);
  std::vector<double> etas, betas;
  for (const auto& e : cfg["hoelder"]["etas"]) etas.push_back(e.get<double>());
  betas = etas.empty() ? default_probe_exponents() : etas;
  const HReport rep = verify_h(k, g, etas.empty() ? default_probe_exponents() : etas, betas);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"name", r.name},
                    {"constant", r.constant},
                    {"probes", r.probes},
                    {"skipped", r.skipped},
                    {"argmax_tuple", r.argmax_tuple},
                    {"argmax_eta", r.argmax_eta},
                    {"argmax_beta", r.argmax_beta}});
  write_json(o, cfg, {{"h_report", rows}});
  return 0;
}

// -------------------------------------------------------------------- lift

int run_lift(const CommonOpts& o, const json& cfg)
{
  const SimplexGrid g = grid_from(cfg);
  const VolterraKernel k = kernel_from(cfg);
  const DrivingPath x = driver_from(cfg, g);
  LiftStats stats;
  const VolterraLevel z1 = lift_level1(k, x, g, sew_from(cfg), &stats);
  if (o.format == "csv") {
    std::string s = csv_header(cfg) + "i,j,k,component,value\n";
    for (int kc = 0; kc < g.N; ++kc)
      for (int j = 0; j <= kc; ++j)
        for (int i = 0; i <= j; ++i) {
          const Value v = z1.value(i, j, kc);
          for (std::size_t c = 0; c < v.size(); ++c)
            s += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(kc) +
                 "," + std::to_string(c) + "," + fmt(v[c]) + "\n";
        }
    write_output(o, s);
    return 0;
  }
  double mx = 0.0;
  for (double v : z1.data) mx = std::max(mx, std::abs(v));
  write_json(o, cfg,
             {{"cells", stats.cells},
              {"nonconverged", stats.nonconverged},
              {"max_abs", mx},
              {"z1_full", z1.value(0, g.N - 1, g.N - 1)}});
  return stats.nonconverged == 0 ? 0 : 3;
}

// ------------------------------------------------------------------- norms

int run_norms(const CommonOpts& o, const json& cfg)
{
  const SimplexGrid g = grid_from(cfg);
  const VolterraKernel k = kernel_from(cfg);
  const DrivingPath x = driver_from(cfg, g);
  const VolterraLevel z1 = lift_level1(k, x, g, sew_from(cfg));
  HoelderPair hp{cfg["hoelder"]["alpha"].get<double>(), cfg["hoelder"]["gamma"].get<double>()};
  std::vector<double> etas;
  for (const auto& e : cfg["hoelder"]["etas"]) etas.push_back(e.get<double>());
  const HoelderReport rep = estimate_norms(z1, hp, etas);
  write_json(o, cfg,
             {{"norm1", stat_json(rep.norm1)},
              {"norm2", stat_json(rep.norm2)},
              {"norm12", stat_json(rep.norm12)},
              {"rho", hp.rho()}});
  return 0;
}

// -------------------------------------------------------------- chen-check

// Relative Chen residual at one depth, maxed over a subsampled tuple
// set.  The reference z2 is continuum-accurate (nested product
// quadrature per tuple) while the convolution is evaluated at grid
// resolution, so the residual measures the grid discretization error;
// a grid-resolution z2 would satisfy the discrete identity exactly.
double chen_residual_at_depth(const VolterraKernel& k, const DrivingPath& x, double T,
                              int L, const SewParams& sp)
{
  const SimplexGrid g = make_uniform(T, L);
  const VolterraLevel z1 = lift_level1(k, x, g, sp);
  const int d = z1.dim;
  std::map<std::array<int, 3>, Value> memo;
  auto z2at = [&](int i, int j, int kc) -> const Value& {
    auto it = memo.find({i, j, kc});
    if (it != memo.end()) return it->second;
    Value v = i == j ? zeros(std::size_t(d) * d)
                     : smooth_signature(k, x, 2, g.points[i], g.points[j],
                                        g.points[kc], 8)[1];
    return memo.emplace(std::array<int, 3>{i, j, kc}, std::move(v)).first->second;
  };
  const auto idx = subsample(g.N, 9);
  double worst = 0.0, ref = 0.0;
  for (int kc : idx)
    for (int it : idx) {
      if (it > kc) continue;
      for (int iu : idx) {
        if (iu >= it) continue;
        for (int is : idx) {
          if (is >= iu) continue;
          Value lhs = z2at(is, it, kc);
          ref = std::max(ref, norm_inf(lhs));
          sub_inplace(lhs, z2at(iu, it, kc));
          sub_inplace(lhs, z2at(is, iu, kc));
          const Value conv = conv1_discrete(
              [&](int l) { return z1.value(l, l + 1, kc); },
              [&](int l) { return z1.value(is, iu, l); }, iu, it, d, d);
          sub_inplace(lhs, conv);
          worst = std::max(worst, norm_inf(lhs));
        }
      }
    }
  return worst / std::max(ref, 1e-12);
}

int run_chen_check(const CommonOpts& o, const json& cfg)
{
  const VolterraKernel k = kernel_from(cfg);
  const double T = cfg["grid"]["T"].get<double>();
  const int lo = cfg["chen"]["depth_lo"].get<int>();
  const int hi = cfg["chen"]["depth_hi"].get<int>();
  if (lo < 1 || hi < lo) throw ConfigError("chen: need 1 <= depth_lo <= depth_hi");
  const SewParams sp = sew_from(cfg);
  json rows = json::array();
  std::vector<double> xs, ys;
  for (int L = lo; L <= hi; ++L) {
    const SimplexGrid g = make_uniform(T, L);
    const DrivingPath x = driver_from(cfg, g);
    const double r = chen_residual_at_depth(k, x, T, L, sp);
    rows.push_back({{"depth", L}, {"relative_residual", r}});
    xs.push_back(L);
    ys.push_back(std::log2(std::max(r, 1e-300)));
  }
  const double slope = xs.size() >= 2 ? -fit_slope(xs, ys) : 0.0;
  write_json(o, cfg, {{"table", rows}, {"fitted_slope", slope}});
  return slope >= 1.0 ? 0 : 3;
}

// ------------------------------------------------------------------ extend

int run_extend(const CommonOpts& o, const json& cfg)
{
  const SimplexGrid g = grid_from(cfg);
  const VolterraKernel k = kernel_from(cfg);
  const DrivingPath x = driver_from(cfg, g);
  const int m = cfg["extend"]["m"].get<int>();
  const SewParams sp = sew_from(cfg);
  const double rho = x.alpha - k.gamma;
  const bool c1 = x.kind == PathKind::Smooth && x.alpha >= 1.0;

  const VolterraLevel z1 = lift_level1(k, x, g, sp);
  const VolterraLevel z2 = extend({&z1}, 2, rho, sp, {}, c1);
  json results;
  double mx2 = 0.0;
  for (double v : z2.data) mx2 = std::max(mx2, std::abs(v));
  results["z2_max_abs"] = mx2;
  results["z2_full"] = z2.value(0, g.N - 1, g.N - 1);
  if (m >= 3) {
    const VolterraLevel z3 = extend({&z1, &z2}, 3, rho, sp, {}, c1);
    double mx3 = 0.0;
    for (double v : z3.data) mx3 = std::max(mx3, std::abs(v));
    results["z3_max_abs"] = mx3;
    results["z3_full"] = z3.value(0, g.N - 1, g.N - 1);
  }
  write_json(o, cfg, results);
  return 0;
}

// ------------------------------------------------------------------- solve

int run_solve(const CommonOpts& o, const json& cfg)
{
  const SimplexGrid g = grid_from(cfg);
  const VolterraKernel k = kernel_from(cfg);
  const DrivingPath x = driver_from(cfg, g);
  Value y0;
  for (const auto& v : cfg["solve"]["y0"]) y0.push_back(v.get<double>());
  if (y0.empty()) throw ConfigError("solve: y0 must be nonempty");
  const int m = int(y0.size());

  const CellLevels cells = cell_levels(k, x, g);
  SolveConfig sc;
  sc.grid = g;
  sc.d = x.d;
  sc.z1cell = cell_accessor1(cells);
  sc.z2cell = cell_accessor2(cells);
  sc.f = field_from(cfg, m, x.d);
  sc.y0 = y0;
  sc.scheme = cfg["solve"]["scheme"].get<std::string>() == "level1" ? Scheme::Level1Euler
                                                                    : Scheme::RoughEuler;
  sc.rho = x.alpha - k.gamma;
  const Solution sol = solve(sc);
  if (sol.blew_up)
    throw MathCheckFailure("solve: blow-up guard tripped at step " +
                           std::to_string(sol.blowup_step));

  std::vector<int> columns;
  for (const auto& c : cfg["solve"]["columns"]) {
    const int ci = c.get<int>();
    if (ci < 0 || ci >= g.N) throw ConfigError("solve: column index out of range");
    columns.push_back(ci);
  }
  if (o.format == "csv" || o.format == "json") {
    std::string s = csv_header(cfg) + "t,tau,";
    for (int a = 0; a < m; ++a) s += "y" + std::to_string(a) + (a + 1 < m ? "," : "\n");
    auto row = [&](int t, int tau) {
      s += fmt(g.points[t]) + "," + fmt(g.points[tau]);
      const Value& v = sol.at(t, tau);
      for (int a = 0; a < m; ++a) s += "," + fmt(v[a]);
      s += "\n";
    };
    for (int t = 0; t < g.N; ++t) row(t, t);
    for (int ci : columns)
      for (int t = 0; t <= ci; ++t) row(t, ci);
    if (o.format == "csv") {
      write_output(o, s);
      return 0;
    }
    write_json(o, cfg,
               {{"diagonal_final", sol.diagonal(g.N - 1)},
                {"csv", s}});
  }
  return 0;
}

// ------------------------------------------------------------- brownian-mc

int run_brownian(const CommonOpts& o, const json& cfg)
{
  const SimplexGrid g = grid_from(cfg);
  const VolterraKernel k = kernel_from(cfg);
  BrownianBatch b;
  b.seed = cfg["brownian"]["seed"].get<std::uint64_t>();
  b.n_paths = cfg["brownian"]["n_paths"].get<int>();
  b.d = cfg["brownian"]["d"].get<int>();
  b.fine_depth = cfg["brownian"]["fine_depth"].get<int>();
  b.T = cfg["grid"]["T"].get<double>();

  // Tuples: spread over the simplex with t < tau (so the isometry
  // integrand stays smooth) plus one t == tau corner tuple at the end,
  // whose left-point discretization bias is reported but not gated on.
  const int n = g.N - 1;
  const std::vector<TupleSpec> tuples = {
      {0, n / 4, n / 2},       {0, n / 2, n},     {n / 4, n / 2, (3 * n) / 4},
      {n / 4, (3 * n) / 4, n}, {0, n / 4, n},     {n / 2, (3 * n) / 4, n},
      {0, (3 * n) / 4, n},     {n / 8, n / 2, n}, {n / 4, n / 2, n},
      {0, n, n}};
  const TupleSamples s = sample_tuple_values(b, k, g, tuples);

  json results;
  json stats = json::array();
  double max_z = 0.0;
  {
    const auto iso = isometry_check(s, k, g);
    const std::size_t gated = iso.size() - std::size_t(b.d);  // all but the corner tuple
    for (std::size_t i = 0; i < iso.size(); ++i) {
      if (i < gated) max_z = std::max(max_z, std::abs(iso[i].z_score));
      stats.push_back(mcstat_json(iso[i]));
    }
  }
  for (const auto& st : mean_zero_check(s, k, g)) stats.push_back(mcstat_json(st));
  for (const auto& st : cross_correlation_check(s)) stats.push_back(mcstat_json(st));
  results["stats"] = stats;

  const int n_chen = std::min(b.n_paths, 3);
  const double chen = chen_exact_check(b, k, g, n_chen);
  results["chen_max_relative_residual"] = chen;
  results["chen_paths_checked"] = n_chen;
  results["seed"] = b.seed;
  results["grid"] = {{"depth", cfg["grid"]["depth"]}, {"T", b.T}, {"N", g.N}};
  write_json(o, cfg, results);
  if (chen > 1e-10)
    throw MathCheckFailure("brownian-mc: discrete Chen residual " + fmt(chen));
  if (max_z > 4.0)
    throw MathCheckFailure("brownian-mc: isometry z-score " + fmt(max_z));
  return 0;
}

// ------------------------------------------------------------- convergence

int run_convergence(const CommonOpts& o, const json& cfg)
{
  const VolterraKernel k = kernel_from(cfg);
  const double T = cfg["grid"]["T"].get<double>();
  const int lo = cfg["convergence"]["level_lo"].get<int>();
  const int hi = cfg["convergence"]["level_hi"].get<int>();
  if (lo < 1 || hi < lo) throw ConfigError("convergence: need 1 <= level_lo <= level_hi");
  Value y0;
  for (const auto& v : cfg["solve"]["y0"]) y0.push_back(v.get<double>());
  const int m = int(y0.size());

  auto diag_final = [&](int L) {
    const SimplexGrid g = make_uniform(T, L);
    const DrivingPath x = driver_from(cfg, g);
    const CellLevels cells = cell_levels(k, x, g);
    SolveConfig sc;
    sc.grid = g;
    sc.d = x.d;
    sc.z1cell = cell_accessor1(cells);
    sc.z2cell = cell_accessor2(cells);
    sc.f = field_from(cfg, m, x.d);
    sc.y0 = y0;
    sc.rho = x.alpha - k.gamma;
    const Solution sol = solve(sc);
    if (sol.blew_up) throw MathCheckFailure("convergence: blow-up at level " + std::to_string(L));
    return sol.diagonal(g.N - 1);
  };
  const Value ref = diag_final(hi + 1);
  const ConvergenceTable tab = convergence_study(
      [&](int L) { return dist_inf(diag_final(L), ref); }, lo, hi);
  json rows = json::array();
  for (const auto& r : tab.rows) rows.push_back({{"level", r.level}, {"error", r.error}});
  write_json(o, cfg,
             {{"table", rows},
              {"observed_order", tab.observed_order},
              {"exact", tab.exact}});
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Volterra rough-path toolkit experiment runner"};
  app.require_subcommand(0, 1);
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "print the default config as TOML and exit");

  struct Sub {
    CLI::App* cmd;
    CommonOpts opts;
    json over = json::object();
    int (*run)(const CommonOpts&, const json&);
  };
  std::vector<Sub> subs;
  subs.reserve(16);  // option callbacks hold references into this vector
  auto add = [&](const std::string& name, const std::string& desc,
                 int (*run)(const CommonOpts&, const json&)) -> Sub& {
    subs.push_back(Sub{app.add_subcommand(name, desc), {}, json::object(), run});
    add_common(subs.back().cmd, subs.back().opts);
    return subs.back();
  };

  // Flag-to-config overrides shared by the numeric subcommands.
  auto opt_double = [](Sub& s, const std::string& flag, const char* sec, const char* key,
                       const std::string& desc) {
    s.cmd->add_option_function<double>(
        flag, [&s, sec, key](double v) { s.over[sec][key] = v; }, desc);
  };
  auto opt_int = [](Sub& s, const std::string& flag, const char* sec, const char* key,
                    const std::string& desc) {
    s.cmd->add_option_function<int>(
        flag, [&s, sec, key](int v) { s.over[sec][key] = v; }, desc);
  };
  auto opt_str = [](Sub& s, const std::string& flag, const char* sec, const char* key,
                    const std::string& desc) {
    s.cmd->add_option_function<std::string>(
        flag, [&s, sec, key](const std::string& v) { s.over[sec][key] = v; }, desc);
  };

  {
    Sub& s = add("verify-h", "empirical constants of the kernel inequalities", run_verify_h);
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_double(s, "--lambda", "kernel", "lambda", "tempering rate");
    opt_int(s, "--depth", "grid", "depth", "dyadic grid depth");
  }
  {
    Sub& s = add("lift", "level-1 lift of a driver", run_lift);
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_str(s, "--driver", "driver", "kind", "sine | linear");
    opt_int(s, "--depth", "grid", "depth", "dyadic grid depth");
  }
  {
    Sub& s = add("norms", "two-exponent Hoelder norms of the lift", run_norms);
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_str(s, "--driver", "driver", "kind", "sine | linear");
    opt_int(s, "--depth", "grid", "depth", "dyadic grid depth");
  }
  {
    Sub& s = add("chen-check", "Chen-identity residual decay across depths", run_chen_check);
    opt_str(s, "--driver", "driver", "kind", "sine | linear");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    s.cmd->add_option_function<std::string>(
        "--depths",
        [&s](const std::string& v) {
          const auto c = v.find(':');
          if (c == std::string::npos) throw CLI::ValidationError("--depths", "expected lo:hi");
          s.over["chen"]["depth_lo"] = std::stoi(v.substr(0, c));
          s.over["chen"]["depth_hi"] = std::stoi(v.substr(c + 1));
        },
        "depth range lo:hi");
  }
  {
    Sub& s = add("extend", "extend a level-1 lift to higher levels", run_extend);
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_str(s, "--driver", "driver", "kind", "sine | linear");
    opt_int(s, "--depth", "grid", "depth", "dyadic grid depth");
    opt_int(s, "--m", "extend", "m", "target level (2 or 3)");
  }
  {
    Sub& s = add("solve", "rough-Volterra time stepping", run_solve);
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_str(s, "--driver", "driver", "kind", "sine | linear");
    opt_int(s, "--depth", "grid", "depth", "dyadic grid depth");
    opt_str(s, "--field", "solve", "field", "sin | zero");
    s.opts.format = "csv";
  }
  {
    Sub& s = add("brownian-mc", "Monte-Carlo Brownian lift statistics", run_brownian);
    opt_int(s, "--seed", "brownian", "seed", "RNG seed");
    opt_int(s, "--n-paths", "brownian", "n_paths", "number of paths");
    opt_int(s, "--fine-depth", "brownian", "fine_depth", "fine grid depth");
    opt_int(s, "--d", "brownian", "d", "driver dimension");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_int(s, "--depth", "grid", "depth", "coarse dyadic grid depth");
  }
  {
    Sub& s = add("convergence", "empirical solver convergence order", run_convergence);
    opt_str(s, "--kernel", "kernel", "kind", "unit | fractional | tempered");
    opt_double(s, "--gamma", "kernel", "gamma", "singularity order");
    opt_str(s, "--driver", "driver", "kind", "sine | linear");
    s.cmd->add_option_function<std::string>(
        "--levels",
        [&s](const std::string& v) {
          const auto c = v.find(':');
          if (c == std::string::npos) throw CLI::ValidationError("--levels", "expected lo:hi");
          s.over["convergence"]["level_lo"] = std::stoi(v.substr(0, c));
          s.over["convergence"]["level_hi"] = std::stoi(v.substr(c + 1));
        },
        "level range lo:hi");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  if (print_defaults) {
    std::cout << default_config_toml();
    return 0;
  }

  try {
    for (auto& s : subs)
      if (s.cmd->parsed()) {
        apply_threads(s.opts.threads);
        return s.run(s.opts, resolve_config(s.opts, s.over));
      }
    std::cerr << app.help();
    return 2;
  } catch (const MathCheckFailure& e) {
    std::cerr << "math check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
