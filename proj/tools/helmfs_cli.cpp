#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helmfs/a2.hpp"
#include "helmfs/fundsol.hpp"
#include "helmfs/verify.hpp"
#include "../src/suites.hpp"

namespace {

using nlohmann::json;
using namespace helmfs;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitNonConvergence = 3;

struct Options {
  double alpha = 0.25, beta = 0.25, lambda = 0.0;
  int dim = 3;
  int kernel = 0; // 0 = evaluate the series itself, 1..4 = kernel
  double k_const = 1.0;
  double a = 0.9, b1 = 0.3, b2 = 0.4, c1 = 0.6, c2 = 0.8;
  std::vector<std::string> points;
  std::string grid;
  std::vector<double> x0, direction, radii;
  double rel_tol = 1e-12;
  int max_terms = 400;
  double step = 1e-2;
  int order = 4;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 7;
  std::vector<std::string> suites_sel{"all"};
  bool allow_partial = false;
  std::string config_path;
};

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    v.push_back(std::stod(tok));
  }
  return v;
}

// grid spec: one "lo:hi:count" entry per axis, comma separated
std::vector<std::vector<double>> expand_grid(const std::string& spec) {
  std::vector<std::vector<double>> axes;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    double lo, hi;
    int n;
    if (std::sscanf(tok.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
      throw std::invalid_argument("bad grid axis spec: " + tok);
    std::vector<double> axis;
    for (int i = 0; i < n; ++i)
      axis.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    axes.push_back(axis);
  }
  std::vector<std::vector<double>> pts{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& base : pts)
      for (double v : axis) {
        auto pt = base;
        pt.push_back(v);
        next.push_back(pt);
      }
    pts.swap(next);
  }
  if (axes.empty()) pts.clear();
  return pts;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// config file wins over flags; warn when it overrides an explicit flag
void apply_config(const json& cfg, CLI::App& app, Options& o) {
  auto warn = [&](const char* flag) {
    if (app.count(flag) > 0)
      std::cerr << "warning: config file overrides " << flag << "\n";
  };
  auto num = [&](const char* key, const char* flag, auto& var) {
    if (cfg.contains(key)) {
      warn(flag);
      var = cfg.at(key);
    }
  };
  num("alpha", "--alpha", o.alpha);
  num("beta", "--beta", o.beta);
  num("lambda", "--lambda", o.lambda);
  num("dim", "--dim", o.dim);
  num("kernel", "--kernel", o.kernel);
  num("k_const", "--k-const", o.k_const);
  num("a", "--a", o.a);
  num("b1", "--b1", o.b1);
  num("b2", "--b2", o.b2);
  num("c1", "--c1", o.c1);
  num("c2", "--c2", o.c2);
  num("rel_tol", "--rel-tol", o.rel_tol);
  num("max_terms", "--max-terms", o.max_terms);
  num("step", "--step", o.step);
  num("order", "--order", o.order);
  num("seed", "--seed", o.seed);
  num("allow_partial", "--allow-partial", o.allow_partial);
  if (cfg.contains("format")) {
    warn("--format");
    o.format = cfg.at("format");
  }
  if (cfg.contains("out")) {
    warn("--out");
    o.out = cfg.at("out");
  }
  if (cfg.contains("grid")) {
    warn("--grid");
    o.grid = cfg.at("grid");
  }
  if (cfg.contains("point")) {
    warn("--point");
    o.points = cfg.at("point").get<std::vector<std::string>>();
  }
  if (cfg.contains("x0")) {
    warn("--x0");
    o.x0 = cfg.at("x0").get<std::vector<double>>();
  }
  if (cfg.contains("direction")) {
    warn("--direction");
    o.direction = cfg.at("direction").get<std::vector<double>>();
  }
  if (cfg.contains("radii")) {
    warn("--radii");
    o.radii = cfg.at("radii").get<std::vector<double>>();
  }
  if (cfg.contains("suite")) {
    warn("--suite");
    o.suites_sel = cfg.at("suite").get<std::vector<std::string>>();
  }
}

// single output sink: --out (joined with HELMFS_OUT_DIR when relative),
// otherwise stdout
void write_output(const Options& o, const std::string& body) {
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::path path = o.out;
  if (const char* dir = std::getenv("HELMFS_OUT_DIR");
      dir != nullptr && path.is_relative())
    path = std::filesystem::path(dir) / path;
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output: " + path.string());
  f << body;
}

json config_echo(const Options& o, const std::string& command) {
  return {{"command", command},   {"alpha", o.alpha},
          {"beta", o.beta},       {"lambda", o.lambda},
          {"dim", o.dim},         {"kernel", o.kernel},
          {"rel_tol", o.rel_tol}, {"max_terms", o.max_terms},
          {"step", o.step},       {"order", o.order},
          {"seed", o.seed},       {"suite", o.suites_sel}};
}

struct Row {
  std::vector<std::pair<std::string, std::string>> cols;

  void add(const std::string& name, const std::string& v) {
    cols.emplace_back(name, v);
  }
  void add(const std::string& name, double v) { add(name, fmt(v)); }
};

std::string render_rows(const std::vector<Row>& rows,
                        const std::string& format) {
  if (rows.empty()) return format == "json" ? "{\"rows\":[]}\n" : "";
  if (format == "csv") {
    std::string s;
    for (size_t i = 0; i < rows[0].cols.size(); ++i)
      s += (i ? "," : "") + rows[0].cols[i].first;
    s += "\n";
    for (const Row& r : rows) {
      for (size_t i = 0; i < r.cols.size(); ++i)
        s += (i ? "," : "") + r.cols[i].second;
      s += "\n";
    }
    return s;
  }
  json out;
  out["rows"] = json::array();
  for (const Row& r : rows) {
    json jr;
    for (const auto& [k, v] : r.cols) jr[k] = v;
    out["rows"].push_back(jr);
  }
  return out.dump(2) + "\n";
}

int run_eval(const Options& o) {
  SeriesOptions series{o.rel_tol, o.max_terms, 3};
  series.check();

  std::vector<std::vector<double>> pts;
  for (const auto& s : o.points) pts.push_back(parse_csv_doubles(s));
  if (!o.grid.empty())
    for (auto& g : expand_grid(o.grid)) pts.push_back(std::move(g));
  if (pts.empty()) throw std::invalid_argument("eval: no points given");

  std::vector<Row> rows;
  int worst = kExitOk;
  for (const auto& coords : pts) {
    Row row;
    std::string status = "ok";
    try {
      if (o.kernel >= 1) {
        HelmholtzParams hp{o.alpha, o.beta, o.lambda, o.dim};
        hp.check();
        if (o.x0.empty())
          throw std::invalid_argument("eval: kernel mode requires --x0");
        HalfSpacePoint x{coords}, x0{o.x0};
        if (!(x.coords.size() > 1 && x.x1() > 0.0 && x.x2() > 0.0))
          throw DomainError(
              "eval: the open half-space requires x1 > 0 and x2 > 0");
        const Geometry g = geometry(x, x0, hp);
        const EvalResult r = q({o.kernel, o.k_const}, x, x0, hp, series);
        for (size_t i = 0; i < coords.size(); ++i)
          row.add("x" + std::to_string(i + 1), coords[i]);
        row.add("r2", g.r2);
        row.add("xi", g.xi);
        row.add("eta", g.eta);
        row.add("zeta", g.zeta);
        row.add("value", r.value);
        row.add("err_estimate", r.err_estimate);
        row.add("representation", to_string(r.representation));
        row.add("terms_used", std::to_string(r.terms_used));
      } else {
        if (coords.size() != 3)
          throw std::invalid_argument("eval: series points are x,y,z");
        A2Params p{o.a, o.b1, o.b2, o.c1, o.c2};
        p.check();
        const EvalResult r = a2_auto(p, {coords[0], coords[1], coords[2]},
                                     series);
        row.add("x", coords[0]);
        row.add("y", coords[1]);
        row.add("z", coords[2]);
        row.add("value", r.value);
        row.add("err_estimate", r.err_estimate);
        row.add("representation", to_string(r.representation));
        row.add("terms_used", std::to_string(r.terms_used));
      }
    } catch (const NonConvergence& e) {
      if (!o.allow_partial) throw;
      status = std::string("non_convergence: ") + e.what();
      worst = std::max(worst, kExitNonConvergence);
    } catch (const std::exception& e) {
      if (!o.allow_partial) throw;
      status = std::string("error: ") + e.what();
      worst = std::max(worst, kExitConfig);
    }
    row.add("status", status);
    rows.push_back(std::move(row));
  }
  write_output(o, render_rows(rows, o.format));
  return o.allow_partial ? kExitOk : worst;
}

int run_table(const Options& o) {
  if (o.kernel < 1) throw std::invalid_argument("table: requires --kernel");
  HelmholtzParams hp{o.alpha, o.beta, o.lambda, o.dim};
  hp.check();
  SeriesOptions series{o.rel_tol, o.max_terms, 3};
  series.check();
  if (o.x0.empty() || o.direction.empty() || o.radii.empty())
    throw std::invalid_argument("table: requires --x0, --direction, --radii");
  double norm = 0.0;
  for (double d : o.direction) norm += d * d;
  norm = std::sqrt(norm);
  if (!(norm > 0.0))
    throw std::invalid_argument("table: direction must be nonzero");

  HalfSpacePoint x0{o.x0};
  std::vector<Row> rows;
  int worst = kExitOk;
  for (double r : o.radii) {
    Row row;
    row.add("r", r);
    std::string status = "ok";
    try {
      HalfSpacePoint x = x0;
      for (size_t i = 0; i < x.coords.size(); ++i)
        x.coords[i] += r * o.direction[i] / norm;
      const EvalResult v = q({o.kernel, o.k_const}, x, x0, hp, series);
      row.add("value", v.value);
      row.add("compensated", std::pow(r, hp.p - 2) * v.value);
      row.add("err_estimate", v.err_estimate);
      row.add("representation", to_string(v.representation));
      row.add("terms_used", std::to_string(v.terms_used));
    } catch (const NonConvergence& e) {
      if (!o.allow_partial) throw;
      status = std::string("non_convergence: ") + e.what();
      worst = std::max(worst, kExitNonConvergence);
    } catch (const std::exception& e) {
      if (!o.allow_partial) throw;
      status = std::string("error: ") + e.what();
      worst = std::max(worst, kExitConfig);
    }
    row.add("status", status);
    rows.push_back(std::move(row));
  }
  write_output(o, render_rows(rows, o.format));
  return o.allow_partial ? kExitOk : worst;
}

int run_verify(const Options& o) {
  HelmholtzParams hp{o.alpha, o.beta, o.lambda, o.dim};
  hp.check();
  suites::SuiteConfig cfg;
  cfg.hp = hp;
  cfg.series = {o.rel_tol, o.max_terms, 3};
  cfg.series.check();
  cfg.stencil = {o.step, o.order, 1};
  cfg.stencil.check();
  cfg.seed = o.seed;

  std::vector<std::string> names;
  for (const auto& s : o.suites_sel) {
    if (s == "all") {
      for (const auto& n : suites::all_suites()) names.push_back(n);
    } else {
      names.push_back(s);
    }
  }

  json report;
  report["config_echo"] = config_echo(o, "verify");
  report["suites"] = json::array();
  bool pass = true;
  bool any_error = false;
  for (const auto& n : names) {
    json s = suites::run_suite(n, cfg);
    pass = pass && s.at("pass").get<bool>();
    for (const auto& c : s.at("checks"))
      any_error = any_error || c.contains("error");
    report["suites"].push_back(std::move(s));
  }
  report["pass"] = pass;
  write_output(o, report.dump(2) + "\n");
  if (pass) return kExitOk;
  if (any_error && !o.allow_partial) return kExitNonConvergence;
  return kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"series and kernel evaluator with verification suites"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", o.alpha);
    cmd->add_option("--beta", o.beta);
    cmd->add_option("--lambda", o.lambda);
    cmd->add_option("--dim", o.dim);
    cmd->add_option("--kernel", o.kernel)->check(CLI::Range(1, 4));
    cmd->add_option("--k-const", o.k_const);
    cmd->add_option("--a", o.a);
    cmd->add_option("--b1", o.b1);
    cmd->add_option("--b2", o.b2);
    cmd->add_option("--c1", o.c1);
    cmd->add_option("--c2", o.c2);
    cmd->add_option("--point", o.points);
    cmd->add_option("--grid", o.grid);
    cmd->add_option("--x0", o.x0)->delimiter(',');
    cmd->add_option("--direction", o.direction)->delimiter(',');
    cmd->add_option("--radii", o.radii)->delimiter(',');
    cmd->add_option("--rel-tol", o.rel_tol);
    cmd->add_option("--max-terms", o.max_terms);
    cmd->add_option("--step", o.step);
    cmd->add_option("--order", o.order);
    cmd->add_option("--format", o.format)
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out);
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--suite", o.suites_sel);
    cmd->add_flag("--allow-partial", o.allow_partial);
    cmd->add_option("--config", o.config_path);
    return cmd;
  };

  CLI::App* eval = add_common(app.add_subcommand("eval", "evaluate at points"));
  CLI::App* verify =
      add_common(app.add_subcommand("verify", "run verification suites"));
  CLI::App* table =
      add_common(app.add_subcommand("table", "radial kernel profiles"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* active = eval->parsed() ? eval : verify->parsed() ? verify : table;
  try {
    if (!o.config_path.empty()) {
      std::ifstream f(o.config_path);
      if (!f)
        throw std::invalid_argument("cannot read config: " + o.config_path);
      apply_config(json::parse(f), *active, o);
    }
    if (eval->parsed()) return run_eval(o);
    if (table->parsed()) return run_table(o);
    return run_verify(o);
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
