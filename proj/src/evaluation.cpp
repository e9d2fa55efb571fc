#include "facloc/evaluation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "facloc/generators.hpp"
#include "facloc/json_io.hpp"
#include "facloc/parallel.hpp"

namespace facloc {

double scost(const Instance& P, const Vec& facility, double q) {
  if (facility.size() != P.dim()) throw std::invalid_argument("scost: dimension mismatch");
  double s = 0.0;
  if (q == 2.0) {
    for (const Atom& a : P.atoms())
      s += static_cast<double>(a.mult) * (a.point - facility).norm();
    return s;
  }
  for (const Atom& a : P.atoms())
    s += static_cast<double>(a.mult) * lp_norm(a.point - facility, q);
  return s;
}

void EvalConfig::validate() const {
  if (mc_samples < 2) throw std::invalid_argument("EvalConfig: mc_samples must be >= 2");
  if (quad_panels < 2 || quad_panels % 2 != 0)
    throw std::invalid_argument("EvalConfig: quad_panels must be even and >= 2");
  if (!(opt_tol > 0.0)) throw std::invalid_argument("EvalConfig: opt_tol must be positive");
  if (!(q >= 1.0)) throw std::invalid_argument("EvalConfig: q must be >= 1");
}

std::string method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::QUADRATURE: return "quadrature";
    case EstimateMethod::MONTE_CARLO: return "monte_carlo";
    case EstimateMethod::EXACT: return "exact";
  }
  throw std::logic_error("method_name: unknown method");
}

OptResult opt_value(const Instance& P, double q, const EvalConfig& cfg,
                    const std::vector<Vec>& certificates) {
  cfg.validate();
  MedianResult mr = q == 2.0 ? geometric_median(P, cfg.opt_tol)
                             : q_median(P, q, std::max(cfg.opt_tol, 1e-8));
  OptResult best{scost(P, mr.point, q), mr.point, mr.converged};
  for (const Vec& c : certificates) {
    const double v = scost(P, c, q);
    if (v < best.value) {
      best.value = v;
      best.point = c;
      best.converged = true;  // a certificate value needs no iteration
    }
  }
  return best;
}

namespace {

Vec facility_at_theta(const Instance& P, const MechanismSpec& spec, double theta) {
  if (spec.kind == MechanismKind::RRCWM) return rcwmed(P, theta);
  return rcwmed(augment_with_prediction(P, *spec.prediction, spec.c), theta);
}

}  // namespace

CostEstimate expected_cost_quadrature_2d(const Instance& P, const MechanismSpec& spec,
                                         const EvalConfig& cfg, int workers) {
  cfg.validate();
  spec.validate(P.dim());
  if (P.dim() != 2)
    throw std::invalid_argument("expected_cost_quadrature_2d: planar instances only");
  if (spec.kind != MechanismKind::RRCWM && spec.kind != MechanismKind::RRCMP)
    throw std::invalid_argument("expected_cost_quadrature_2d: rotation-randomized arms only");

  const int panels = cfg.quad_panels;
  const double h = kHalfPi / panels;
  std::vector<double> weighted(panels + 1);
  parallel_for(panels + 1, workers, [&](std::int64_t i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const Vec f = facility_at_theta(P, spec, static_cast<double>(i) * h);
    weighted[i] = w * scost(P, f, cfg.q);
  });
  const double integral = pairwise_sum(weighted) * h / 3.0;
  return {integral / kHalfPi, 0.0, panels, EstimateMethod::QUADRATURE};
}

CostEstimate expected_cost_mc(const Instance& P, const MechanismSpec& spec,
                              const EvalConfig& cfg, int workers) {
  cfg.validate();
  spec.validate(P.dim());
  const std::int64_t n = cfg.mc_samples;
  std::vector<double> costs(n);
  RandomStream master(cfg.seed);
  parallel_for(n, workers, [&](std::int64_t i) {
    RandomStream sub = master.substream(static_cast<std::uint64_t>(i));
    const Outcome o = run_mechanism(P, spec, sub);
    costs[i] = scost(P, o.facility, cfg.q);
  });
  const double mean = pairwise_sum(costs) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::int64_t i = 0; i < n; ++i) sq[i] = (costs[i] - mean) * (costs[i] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n, EstimateMethod::MONTE_CARLO};
}

CostEstimate expected_cost_exact(const Instance& P, const MechanismSpec& spec,
                                 const EvalConfig& cfg) {
  cfg.validate();
  spec.validate(P.dim());
  switch (spec.kind) {
    case MechanismKind::CWM:
      return {scost(P, cwmed(P), cfg.q), 0.0, 1, EstimateMethod::EXACT};
    case MechanismKind::CMP:
      return {scost(P, cwmed(augment_with_prediction(P, *spec.prediction, spec.c)), cfg.q), 0.0,
              1, EstimateMethod::EXACT};
    case MechanismKind::GRD_UNIFORM:
      return {grd_uniform_expected_cost(P, cfg.q), 0.0, P.n(), EstimateMethod::EXACT};
    case MechanismKind::GRD_PROPORTIONAL:
      return {grd_proportional_expected_cost(P, cfg.q), 0.0, P.n(), EstimateMethod::EXACT};
    default:
      throw std::invalid_argument("expected_cost_exact: lottery is not enumerable");
  }
}

RatioEstimate ratio(const Instance& P, const MechanismSpec& spec, const EvalConfig& cfg,
                    const std::vector<Vec>& opt_certificates, int workers,
                    std::optional<EstimateMethod> method) {
  cfg.validate();
  spec.validate(P.dim());

  if (!method) {
    switch (spec.kind) {
      case MechanismKind::CWM:
      case MechanismKind::CMP:
      case MechanismKind::GRD_UNIFORM:
      case MechanismKind::GRD_PROPORTIONAL:
        method = EstimateMethod::EXACT;
        break;
      case MechanismKind::RRCWM:
      case MechanismKind::RRCMP:
        method = P.dim() == 2 ? EstimateMethod::QUADRATURE : EstimateMethod::MONTE_CARLO;
        break;
    }
  }

  CostEstimate cost;
  switch (*method) {
    case EstimateMethod::EXACT:
      cost = expected_cost_exact(P, spec, cfg);
      break;
    case EstimateMethod::QUADRATURE:
      cost = expected_cost_quadrature_2d(P, spec, cfg, workers);
      break;
    case EstimateMethod::MONTE_CARLO:
      cost = expected_cost_mc(P, spec, cfg, workers);
      break;
  }

  const OptResult opt = opt_value(P, cfg.q, cfg, opt_certificates);
  if (!opt.converged)
    throw OptNonConvergence("ratio: optimum solver did not converge");

  RatioEstimate out;
  out.method = cost.method;
  out.n = cost.n;
  out.opt = opt.value;
  out.opt_certificate = opt.point;
  if (opt.value == 0.0) {
    if (cost.mean <= 1e-12) {
      out.mean = 1.0;
      out.ci_lo = out.ci_hi = 1.0;
      return out;
    }
    throw std::runtime_error("ratio: OPT is zero but expected cost is not");
  }
  out.mean = cost.mean / opt.value;
  out.std_error = cost.std_error / opt.value;
  out.ci_lo = out.mean - 1.959963984540054 * out.std_error;
  out.ci_hi = out.mean + 1.959963984540054 * out.std_error;
  return out;
}

double rrcmp_bound(double c, double eta) {
  if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("rrcmp_bound: c must lie in [0, 1)");
  if (!(eta >= 0.0)) throw std::invalid_argument("rrcmp_bound: eta must be >= 0");
  const double root = std::sqrt(2.0 * c * c + 2.0);
  const double b1 = root / (1.0 + c) + eta;
  const double b2 = kFourOverPi * (1.0 + c * eta);
  const double b3 = root / (1.0 - c);
  const double b4 = kFourOverPi * (1.0 + c) / (1.0 - c);
  return std::min(std::min(b1, b2), std::min(b3, b4));
}

std::vector<TradeoffPoint> consistency_robustness_sweep(const Instance& P,
                                                        std::span<const double> cs,
                                                        std::span<const double> etas,
                                                        const EvalConfig& cfg,
                                                        const Vec* direction, int workers) {
  cfg.validate();
  const OptResult opt = opt_value(P, 2.0, cfg);
  if (!opt.converged)
    throw OptNonConvergence("consistency_robustness_sweep: optimum solver did not converge");
  const Vec& g = opt.point;

  Vec u;
  if (direction) {
    if (direction->size() != P.dim())
      throw std::invalid_argument("consistency_robustness_sweep: direction dimension mismatch");
    const double nrm = direction->norm();
    if (nrm == 0.0)
      throw std::invalid_argument("consistency_robustness_sweep: zero direction");
    u = *direction / nrm;
  } else {
    u = Vec::Zero(P.dim());
    u[0] = 1.0;
  }

  std::vector<TradeoffPoint> out;
  out.reserve(cs.size() * etas.size());
  for (double c : cs) {
    for (double eta : etas) {
      MechanismSpec spec;
      spec.kind = MechanismKind::RRCMP;
      spec.c = c;
      spec.prediction = g + eta * (opt.value / static_cast<double>(P.n())) * u;
      TradeoffPoint tp;
      tp.c = c;
      tp.eta = eta;
      tp.measured = ratio(P, spec, cfg, {g}, workers);
      tp.bound = rrcmp_bound(c, eta);
      tp.within_bound = tp.measured.mean <= tp.bound + 3.0 * tp.measured.std_error + 0.01;
      out.push_back(std::move(tp));
    }
  }
  return out;
}

std::vector<GrdFloorRow> grd_floor_check(std::span<const std::int64_t> ns,
                                         const EvalConfig& cfg) {
  cfg.validate();
  std::vector<GrdFloorRow> out;
  out.reserve(ns.size());
  for (std::int64_t n : ns) {
    const Instance P = gen_unit_circle(n);
    GrdFloorRow row;
    row.n = n;
    row.exact_cost = grd_uniform_expected_cost(P, 2.0);
    row.cot_formula = 2.0 / std::tan(kPi / (2.0 * static_cast<double>(n)));
    Vec origin = Vec::Zero(2);
    const OptResult opt = opt_value(P, 2.0, cfg, {origin});
    row.opt = opt.value;
    row.ratio = row.exact_cost / row.opt;
    row.floor = kFourOverPi - 3.0 / static_cast<double>(n);
    row.ok = row.ratio >= row.floor;
    out.push_back(row);
  }
  return out;
}

std::string to_csv(std::span<const ResultRow> rows) {
  std::ostringstream os;
  os << "instance,mechanism,q,method,mean,std_error,ci_lo,ci_hi,opt,ratio\n";
  for (const ResultRow& r : rows) {
    os << r.instance_id << ',' << r.mechanism << ',' << format_double(r.q) << ',' << r.method
       << ',' << format_double(r.mean) << ',' << format_double(r.std_error) << ','
       << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ','
       << format_double(r.opt) << ',' << format_double(r.ratio) << '\n';
  }
  return os.str();
}

std::string to_json_report(std::span<const ResultRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json row;
    row["instance"] = r.instance_id;
    row["mechanism"] = r.mechanism;
    row["q"] = format_double(r.q);
    row["method"] = r.method;
    row["mean"] = format_double(r.mean);
    row["std_error"] = format_double(r.std_error);
    row["ci_lo"] = format_double(r.ci_lo);
    row["ci_hi"] = format_double(r.ci_hi);
    row["opt"] = format_double(r.opt);
    row["ratio"] = format_double(r.ratio);
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

ResultRow make_row(const std::string& instance_id, const MechanismSpec& spec, double q,
                   const RatioEstimate& est) {
  ResultRow r;
  r.instance_id = instance_id;
  r.mechanism = mechanism_name(spec.kind);
  r.q = q;
  r.method = method_name(est.method);
  // cost-scale columns; the ratio column carries the normalized value
  r.mean = est.mean * est.opt;
  r.std_error = est.std_error * est.opt;
  r.ci_lo = est.ci_lo * est.opt;
  r.ci_hi = est.ci_hi * est.opt;
  r.opt = est.opt;
  r.ratio = est.mean;
  return r;
}

}  // namespace facloc
