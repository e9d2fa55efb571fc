// Command line front end: instance generation, cost/ratio estimation, grid
// sweeps, verification suites, and manifest replay. Every command that writes
// an output file also writes <out>.manifest.json recording the argument
// vector, so a run can be repeated bit for bit later.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "facloc/evaluation.hpp"
#include "facloc/generators.hpp"
#include "facloc/geometry.hpp"
#include "facloc/instance.hpp"
#include "facloc/json_io.hpp"
#include "facloc/mechanisms.hpp"
#include "facloc/medians.hpp"
#include "facloc/rng.hpp"
#include "facloc/verification.hpp"
#include "facloc/version.hpp"

namespace {

using namespace facloc;

struct GlobalOpts {
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out;
  std::string format = "csv";
};

std::string now_iso8601_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
#if defined(_WIN32)
  gmtime_s(&tm, &t);
#else
  gmtime_r(&t, &tm);
#endif
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// The hash covers the arguments (not the program path) plus the tool
// version, so a manifest pins exactly what was asked of which build.
void write_manifest(const std::vector<std::string>& argv, const GlobalOpts& g,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["argv"] = argv;
  std::string blob;
  for (std::size_t i = 1; i < argv.size(); ++i) {
    blob += argv[i];
    blob += '\n';
  }
  blob += kVersion;
  m["config_hash"] = stable_hash_hex(blob);
  if (g.seed)
    m["master_seed"] = *g.seed;
  else
    m["master_seed"] = nullptr;
  m["version"] = kVersion;
  m["timestamp"] = now_iso8601_utc();
  m["outputs"] = outputs;
  write_text_file(g.out + ".manifest.json", m.dump(2) + "\n");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  q += '"';
  return q;
}

std::string instance_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

Vec vec_of(const std::vector<double>& xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
  return v;
}

void require_out(const GlobalOpts& g, const char* cmd) {
  if (g.out.empty())
    throw std::runtime_error(std::string(cmd) + ": --out is required");
}

void require_seed(const GlobalOpts& g, const char* why) {
  if (!g.seed)
    throw std::runtime_error(std::string(why) + "; pass --seed");
}

int run(const std::vector<std::string>& argv);

int cmd_gen(const std::vector<std::string>& argv, const GlobalOpts& g, const std::string& recipe,
            const std::optional<double>& pM, const std::optional<std::int64_t>& pk,
            const std::optional<std::int64_t>& pn, const std::optional<std::int64_t>& pd) {
  require_out(g, "gen");
  std::map<std::string, double> params;
  if (pM) params["M"] = *pM;
  if (pk) params["k"] = static_cast<double>(*pk);
  if (pn) params["n"] = static_cast<double>(*pn);
  if (pd) params["d"] = static_cast<double>(*pd);

  const Instance P = make_from_recipe(recipe, params, g.seed);
  save_instance(P, g.out);
  write_manifest(argv, g, {g.out});

  std::cout.precision(10);
  std::cout << "wrote " << g.out << ": recipe=" << recipe << " dim=" << P.dim()
            << " n=" << P.n() << " atoms=" << P.atoms().size() << "\n";
  if (recipe == "paper-lb-2d") {
    Vec cert(2);
    cert << 1.0, 0.0;
    std::cout << "cost upper bound at (1, 0) = " << scost(P, cert) << "\n";
  } else if (recipe == "fig1") {
    const Vec m = cwmed(P);
    Vec half(2);
    half << 0.5, 0.5;
    std::cout << "componentwise median cost 2k = " << scost(P, m) << "\n"
              << "cost at (0.5, 0.5) = " << scost(P, half) << "\n";
  } else if (recipe == "unit-circle") {
    const double n = static_cast<double>(P.n());
    std::cout << "cost at origin = " << scost(P, Vec::Zero(2)) << "\n"
              << "uniform dictator expected cost = " << grd_uniform_expected_cost(P, 2.0)
              << " (2 cot(pi/2n) = " << 2.0 / std::tan(kHalfPi / n) << ")\n";
  }
  return 0;
}

int cmd_eval(const std::vector<std::string>& argv, const GlobalOpts& g,
             const std::string& inst_path, MechanismKind kind, double c,
             const std::vector<double>& pred, const std::vector<double>& cert,
             const std::string& method_s, double q, int panels, std::int64_t samples) {
  require_out(g, "eval");
  const Instance P = load_instance(inst_path);

  MechanismSpec spec;
  spec.kind = kind;
  spec.c = c;
  if (!pred.empty()) spec.prediction = vec_of(pred);
  spec.validate(P.dim());

  std::optional<EstimateMethod> method;
  if (method_s == "quadrature") method = EstimateMethod::QUADRATURE;
  else if (method_s == "mc") method = EstimateMethod::MONTE_CARLO;
  else if (method_s == "exact") method = EstimateMethod::EXACT;

  const bool rotation_arm = kind == MechanismKind::RRCWM || kind == MechanismKind::RRCMP;
  const bool monte_carlo = method ? *method == EstimateMethod::MONTE_CARLO
                                  : (rotation_arm && P.dim() != 2);
  if (monte_carlo) require_seed(g, "eval: Monte Carlo estimation draws randomness");

  EvalConfig cfg;
  cfg.seed = g.seed.value_or(0);
  cfg.q = q;
  cfg.quad_panels = panels;
  cfg.mc_samples = samples;

  std::vector<Vec> certs;
  if (!cert.empty()) {
    if (static_cast<int>(cert.size()) != P.dim())
      throw std::runtime_error("eval: --cert length must equal the instance dimension");
    certs.push_back(vec_of(cert));
  }

  const RatioEstimate est = ratio(P, spec, cfg, certs, g.workers, method);
  const ResultRow row = make_row(instance_stem(inst_path), spec, q, est);
  const std::span<const ResultRow> rows(&row, 1);
  write_text_file(g.out, g.format == "json" ? to_json_report(rows) : to_csv(rows));
  write_manifest(argv, g, {g.out});

  std::cout.precision(10);
  std::cout << "instance=" << row.instance_id << " mechanism=" << row.mechanism
            << " method=" << row.method << " (n=" << est.n << ")\n"
            << "expected cost = " << row.mean << ", opt <= " << row.opt << "\n"
            << "ratio = " << est.mean << "  ci95 = [" << est.ci_lo << ", " << est.ci_hi << "]\n"
            << "wrote " << g.out << "\n";
  return 0;
}

int cmd_tradeoff(const std::vector<std::string>& argv, const GlobalOpts& g,
                 const std::string& inst_path, const std::vector<double>& cs,
                 const std::vector<double>& etas, int panels, std::int64_t samples) {
  require_out(g, "sweep cmp-tradeoff");
  const Instance P = load_instance(inst_path);
  if (P.dim() != 2) require_seed(g, "sweep cmp-tradeoff: Monte Carlo estimation draws randomness");

  EvalConfig cfg;
  cfg.seed = g.seed.value_or(0);
  cfg.quad_panels = panels;
  cfg.mc_samples = samples;

  const auto pts = consistency_robustness_sweep(P, cs, etas, cfg, nullptr, g.workers);

  std::string body;
  if (g.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const TradeoffPoint& p : pts) {
      nlohmann::json row;
      row["c"] = format_double(p.c);
      row["eta"] = format_double(p.eta);
      row["mean"] = format_double(p.measured.mean);
      row["std_error"] = format_double(p.measured.std_error);
      row["ci_lo"] = format_double(p.measured.ci_lo);
      row["ci_hi"] = format_double(p.measured.ci_hi);
      row["bound"] = format_double(p.bound);
      row["within_bound"] = p.within_bound;
      arr.push_back(std::move(row));
    }
    body = arr.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "c,eta,mean,std_error,ci_lo,ci_hi,bound,within_bound\n";
    for (const TradeoffPoint& p : pts)
      os << format_double(p.c) << ',' << format_double(p.eta) << ','
         << format_double(p.measured.mean) << ',' << format_double(p.measured.std_error) << ','
         << format_double(p.measured.ci_lo) << ',' << format_double(p.measured.ci_hi) << ','
         << format_double(p.bound) << ',' << (p.within_bound ? "true" : "false") << '\n';
    body = os.str();
  }
  write_text_file(g.out, body);
  write_manifest(argv, g, {g.out});

  std::size_t above = 0;
  for (const TradeoffPoint& p : pts)
    if (!p.within_bound) ++above;
  std::cout << "swept " << cs.size() << "x" << etas.size() << " grid on " << instance_stem(inst_path)
            << ": " << (pts.size() - above) << "/" << pts.size() << " points within bound\n"
            << "wrote " << g.out << "\n";
  return 0;
}

int cmd_grd_floor(const std::vector<std::string>& argv, const GlobalOpts& g,
                  const std::vector<std::int64_t>& ns) {
  require_out(g, "sweep grd-floor");
  EvalConfig cfg;
  const auto rows = grd_floor_check(ns, cfg);

  std::string body;
  if (g.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const GrdFloorRow& r : rows) {
      nlohmann::json row;
      row["n"] = r.n;
      row["exact_cost"] = format_double(r.exact_cost);
      row["cot_formula"] = format_double(r.cot_formula);
      row["opt"] = format_double(r.opt);
      row["ratio"] = format_double(r.ratio);
      row["floor"] = format_double(r.floor);
      row["ok"] = r.ok;
      arr.push_back(std::move(row));
    }
    body = arr.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "n,exact_cost,cot_formula,opt,ratio,floor,ok\n";
    for (const GrdFloorRow& r : rows)
      os << r.n << ',' << format_double(r.exact_cost) << ',' << format_double(r.cot_formula)
         << ',' << format_double(r.opt) << ',' << format_double(r.ratio) << ','
         << format_double(r.floor) << ',' << (r.ok ? "true" : "false") << '\n';
    body = os.str();
  }
  write_text_file(g.out, body);
  write_manifest(argv, g, {g.out});

  std::cout.precision(10);
  for (const GrdFloorRow& r : rows)
    std::cout << "n=" << r.n << " dictator ratio = " << r.ratio << " floor = " << r.floor
              << (r.ok ? "  ok" : "  BELOW FLOOR") << "\n";
  std::cout << "wrote " << g.out << "\n";
  return 0;
}

int cmd_hd_ratio(const std::vector<std::string>& argv, const GlobalOpts& g,
                 const std::vector<std::int64_t>& ds, std::int64_t samples) {
  require_out(g, "sweep hd-ratio");
  require_seed(g, "sweep hd-ratio: rotation sampling draws randomness");

  RandomStream master(*g.seed);
  std::vector<ResultRow> rows;
  std::cout.precision(10);
  for (std::int64_t d : ds) {
    const Instance P = gen_clusters_outlier_hd(static_cast<int>(d));
    Vec cert = Vec::Zero(P.dim());
    cert[0] = 0.5;
    cert[1] = 0.5;
    EvalConfig cfg;
    cfg.seed = master.substream(static_cast<std::uint64_t>(d)).seed();
    cfg.mc_samples = samples;
    MechanismSpec spec;
    spec.kind = MechanismKind::RRCWM;
    const RatioEstimate est = ratio(P, spec, cfg, {cert}, g.workers);
    rows.push_back(make_row("hd-clusters-d" + std::to_string(d), spec, 2.0, est));
    std::cout << "d=" << d << " ratio = " << est.mean << "  ci95 = [" << est.ci_lo << ", "
              << est.ci_hi << "]\n";
  }
  write_text_file(g.out, g.format == "json" ? to_json_report(rows) : to_csv(rows));
  write_manifest(argv, g, {g.out});
  std::cout << "wrote " << g.out << "\n";
  return 0;
}

int cmd_check(const std::vector<std::string>& argv, const GlobalOpts& g,
              const std::string& suite_s) {
  require_seed(g, "check: verification suites draw randomness");
  CheckSuite suite = CheckSuite::ALL;
  if (suite_s == "lemmas") suite = CheckSuite::LEMMAS;
  else if (suite_s == "sp") suite = CheckSuite::SP;
  else if (suite_s == "robustness") suite = CheckSuite::ROBUSTNESS;

  const auto reports = run_check_suite(suite, *g.seed, g.workers);

  std::size_t passed = 0;
  std::cout.precision(9);
  for (const CheckReport& r : reports) {
    if (r.passed) ++passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  measured=" << r.measured
              << " expected=" << r.expected << " tol=" << r.tolerance;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
  }
  std::cout << "suite=" << suite_s << ": " << passed << "/" << reports.size() << " checks passed\n";

  if (!g.out.empty()) {
    std::string body;
    if (g.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const CheckReport& r : reports) {
        nlohmann::json row;
        row["name"] = r.name;
        row["passed"] = r.passed;
        row["measured"] = format_double(r.measured);
        row["expected"] = format_double(r.expected);
        row["tolerance"] = format_double(r.tolerance);
        row["detail"] = r.detail;
        arr.push_back(std::move(row));
      }
      body = arr.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "name,passed,measured,expected,tolerance,detail\n";
      for (const CheckReport& r : reports)
        os << r.name << ',' << (r.passed ? "true" : "false") << ',' << format_double(r.measured)
           << ',' << format_double(r.expected) << ',' << format_double(r.tolerance) << ','
           << csv_escape(r.detail) << '\n';
      body = os.str();
    }
    write_text_file(g.out, body);
    write_manifest(argv, g, {g.out});
    std::cout << "wrote " << g.out << "\n";
  }
  return passed == reports.size() ? 0 : 1;
}

int cmd_replay(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("replay: cannot open " + manifest_path);
  nlohmann::json m = nlohmann::json::parse(in);
  if (!m.contains("argv") || !m["argv"].is_array() || m["argv"].size() < 2)
    throw std::runtime_error("replay: manifest has no usable argv record");
  std::vector<std::string> stored = m["argv"].get<std::vector<std::string>>();
  if (stored[1] == "replay")
    throw std::runtime_error("replay: manifest records a replay command");

  std::cout << "replaying:";
  for (std::size_t i = 1; i < stored.size(); ++i) std::cout << ' ' << stored[i];
  std::cout << "\n";
  return run(stored);
}

int run(const std::vector<std::string>& argv) {
  CLI::App app{"strategyproof facility location workbench"};
  app.require_subcommand(1);
  app.set_config("--config");

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for any randomized work");
  app.add_option("--workers", g.workers, "worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file; a .manifest.json sidecar is written next to it");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* gen = app.add_subcommand("gen", "write an instance built from a named recipe");
  gen->fallthrough();
  std::string recipe;
  std::optional<double> pM;
  std::optional<std::int64_t> pk, pn, pd;
  gen->add_option("--recipe", recipe,
                  "paper-lb-2d | two-clusters-outlier-2d | fig1 | hd-clusters | unit-circle | "
                  "sphere | gaussian | box")
      ->required();
  gen->add_option("--M", pM, "cluster scale parameter");
  gen->add_option("--k", pk, "cluster size parameter");
  gen->add_option("--n", pn, "number of agents");
  gen->add_option("--d", pd, "dimension");

  auto* eval = app.add_subcommand("eval", "estimate expected cost and ratio on one instance");
  eval->fallthrough();
  std::string eval_inst;
  MechanismKind eval_kind = MechanismKind::CWM;
  double eval_c = 0.0;
  std::vector<double> eval_pred, eval_cert;
  std::string eval_method = "auto";
  double eval_q = 2.0;
  int eval_panels = 20000;
  std::int64_t eval_samples = 2000;
  const std::map<std::string, MechanismKind> mech_map{
      {"cwm", MechanismKind::CWM},
      {"rrcwm", MechanismKind::RRCWM},
      {"cmp", MechanismKind::CMP},
      {"rrcmp", MechanismKind::RRCMP},
      {"grd-uniform", MechanismKind::GRD_UNIFORM},
      {"grd-proportional", MechanismKind::GRD_PROPORTIONAL}};
  eval->add_option("--instance", eval_inst, "instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--mech", eval_kind, "mechanism")
      ->required()
      ->transform(CLI::CheckedTransformer(mech_map, CLI::ignore_case));
  eval->add_option("--c", eval_c, "prediction weight in [0, 1) for cmp/rrcmp");
  eval->add_option("--pred", eval_pred, "prediction point, comma separated")->delimiter(',');
  eval->add_option("--cert", eval_cert, "optimum certificate point, comma separated")
      ->delimiter(',');
  eval->add_option("--method", eval_method, "auto | quadrature | mc | exact")
      ->check(CLI::IsMember({"auto", "quadrature", "mc", "exact"}));
  eval->add_option("--q", eval_q, "cost norm exponent")->check(CLI::Range(1.0, 64.0));
  eval->add_option("--panels", eval_panels, "quadrature panels (even)");
  eval->add_option("--samples", eval_samples, "Monte Carlo samples");

  auto* sweep = app.add_subcommand("sweep", "grid studies");
  sweep->require_subcommand(1);
  sweep->fallthrough();

  auto* tr = sweep->add_subcommand("cmp-tradeoff",
                                   "rotated prediction arm across a (c, eta) grid");
  tr->fallthrough();
  std::string tr_inst;
  std::vector<double> tr_cs, tr_etas;
  int tr_panels = 2000;
  std::int64_t tr_samples = 2000;
  tr->add_option("--instance", tr_inst)->required()->check(CLI::ExistingFile);
  tr->add_option("--c-grid", tr_cs, "prediction weights, comma separated")
      ->required()
      ->delimiter(',');
  tr->add_option("--eta-grid", tr_etas, "normalized prediction errors, comma separated")
      ->required()
      ->delimiter(',');
  tr->add_option("--panels", tr_panels, "quadrature panels per point");
  tr->add_option("--samples", tr_samples, "Monte Carlo samples per point");

  auto* fl = sweep->add_subcommand("grd-floor", "exact dictator ratio on regular n-gons");
  fl->fallthrough();
  std::vector<std::int64_t> fl_ns;
  fl->add_option("--n-grid", fl_ns, "agent counts, comma separated")->required()->delimiter(',');

  auto* hd = sweep->add_subcommand("hd-ratio",
                                   "rotated median ratio on cluster instances across dimensions");
  hd->fallthrough();
  std::vector<std::int64_t> hd_ds;
  std::int64_t hd_samples = 2000;
  hd->add_option("--d-grid", hd_ds, "dimensions, comma separated")->required()->delimiter(',');
  hd->add_option("--samples", hd_samples, "Monte Carlo samples per dimension");

  auto* chk = app.add_subcommand("check", "run verification suites");
  chk->fallthrough();
  std::string suite_s = "all";
  chk->add_option("--suite", suite_s, "all | lemmas | sp | robustness")
      ->check(CLI::IsMember({"all", "lemmas", "sp", "robustness"}));

  auto* rp = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  std::string manifest_path;
  rp->add_option("--manifest", manifest_path, "manifest JSON written by a previous run")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    std::vector<const char*> cargs;
    cargs.reserve(argv.size());
    for (const std::string& s : argv) cargs.push_back(s.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) return cmd_gen(argv, g, recipe, pM, pk, pn, pd);
    if (eval->parsed())
      return cmd_eval(argv, g, eval_inst, eval_kind, eval_c, eval_pred, eval_cert, eval_method,
                      eval_q, eval_panels, eval_samples);
    if (sweep->parsed()) {
      if (tr->parsed()) return cmd_tradeoff(argv, g, tr_inst, tr_cs, tr_etas, tr_panels, tr_samples);
      if (fl->parsed()) return cmd_grd_floor(argv, g, fl_ns);
      if (hd->parsed()) return cmd_hd_ratio(argv, g, hd_ds, hd_samples);
    }
    if (chk->parsed()) return cmd_check(argv, g, suite_s);
    if (rp->parsed()) return cmd_replay(manifest_path);
  } catch (const OptNonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args);
}
