#include "facloc/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

namespace facloc {

std::string mechanism_name(MechanismKind k) {
  switch (k) {
    case MechanismKind::CWM: return "cwm";
    case MechanismKind::RRCWM: return "rrcwm";
    case MechanismKind::CMP: return "cmp";
    case MechanismKind::RRCMP: return "rrcmp";
    case MechanismKind::GRD_UNIFORM: return "grd-uniform";
    case MechanismKind::GRD_PROPORTIONAL: return "grd-proportional";
  }
  throw std::logic_error("mechanism_name: unknown kind");
}

void MechanismSpec::validate(int dim) const {
  const bool cmp_arm = kind == MechanismKind::CMP || kind == MechanismKind::RRCMP;
  if (cmp_arm) {
    if (!(c >= 0.0 && c < 1.0))
      throw std::invalid_argument("MechanismSpec: c must lie in [0, 1)");
    if (!prediction) throw std::invalid_argument("MechanismSpec: prediction required");
    if (prediction->size() != dim)
      throw std::invalid_argument("MechanismSpec: prediction dimension mismatch");
  } else {
    if (c != 0.0 || prediction)
      throw std::invalid_argument("MechanismSpec: c/prediction only valid for cmp arms");
  }
}

Instance augment_with_prediction(const Instance& P, const Vec& prediction, double c) {
  if (!(c >= 0.0 && c < 1.0))
    throw std::invalid_argument("augment_with_prediction: c must lie in [0, 1)");
  if (prediction.size() != P.dim())
    throw std::invalid_argument("augment_with_prediction: dimension mismatch");
  const auto copies = static_cast<std::int64_t>(std::floor(c * static_cast<double>(P.n())));
  if (copies < 1) return P;
  std::vector<Atom> atoms = P.atoms();
  atoms.push_back({prediction, copies});
  return Instance(P.dim(), std::move(atoms));
}

Outcome run_cwm(const Instance& P) { return {cwmed(P), {}}; }

Outcome run_rrcwm(const Instance& P, RandomStream& rng) {
  if (P.dim() == 2) {
    const double theta = rng.uniform(0.0, kHalfPi);
    Outcome o{rcwmed(P, theta), {}};
    o.randomness.theta = theta;
    return o;
  }
  const Rotation R = sample_haar_rotation(P.dim(), rng);
  Outcome o{rcwmed(P, R), {}};
  o.randomness.rotation = R.matrix();
  return o;
}

Outcome run_rrcwm_fixed(const Instance& P, const Rotation& R) {
  Outcome o{rcwmed(P, R), {}};
  o.randomness.rotation = R.matrix();
  return o;
}

Outcome run_cmp(const Instance& P, const Vec& prediction, double c) {
  return {cwmed(augment_with_prediction(P, prediction, c)), {}};
}

Outcome run_rrcmp(const Instance& P, const Vec& prediction, double c, RandomStream& rng) {
  return run_rrcwm(augment_with_prediction(P, prediction, c), rng);
}

Outcome run_grd(const Instance& P, bool proportional, RandomStream& rng) {
  const std::int64_t first = rng.uniform_index(P.n());
  if (!proportional) {
    Outcome o{P.report(first).point, {}};
    o.randomness.dictator = first;
    return o;
  }
  // Second pick with probability proportional to distance from the first; when
  // every report coincides with the first pick, it wins by default.
  const Vec& p0 = P.report(first).point;
  std::vector<double> w(P.atoms().size());
  double total = 0.0;
  for (std::size_t a = 0; a < P.atoms().size(); ++a) {
    w[a] = static_cast<double>(P.atoms()[a].mult) * (P.atoms()[a].point - p0).norm();
    total += w[a];
  }
  Outcome o{p0, {}};
  o.randomness.proposer = first;
  if (total == 0.0) {
    o.randomness.dictator = first;
    return o;
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::int64_t base = 0;
  for (std::size_t a = 0; a < P.atoms().size(); ++a) {
    acc += w[a];
    if (u < acc || a + 1 == P.atoms().size()) {
      o.facility = P.atoms()[a].point;
      o.randomness.dictator = base;  // first profile position of the atom
      return o;
    }
    base += P.atoms()[a].mult;
  }
  throw std::logic_error("run_grd: weight walk failed");
}

Outcome run_mechanism(const Instance& P, const MechanismSpec& spec, RandomStream& rng) {
  spec.validate(P.dim());
  switch (spec.kind) {
    case MechanismKind::CWM: return run_cwm(P);
    case MechanismKind::RRCWM: return run_rrcwm(P, rng);
    case MechanismKind::CMP: return run_cmp(P, *spec.prediction, spec.c);
    case MechanismKind::RRCMP: return run_rrcmp(P, *spec.prediction, spec.c, rng);
    case MechanismKind::GRD_UNIFORM: return run_grd(P, false, rng);
    case MechanismKind::GRD_PROPORTIONAL: return run_grd(P, true, rng);
  }
  throw std::logic_error("run_mechanism: unknown kind");
}

Vec replay(const Instance& P, const MechanismSpec& spec, const Realized& r) {
  spec.validate(P.dim());
  switch (spec.kind) {
    case MechanismKind::CWM: return cwmed(P);
    case MechanismKind::CMP: return cwmed(augment_with_prediction(P, *spec.prediction, spec.c));
    case MechanismKind::RRCWM:
    case MechanismKind::RRCMP: {
      const Instance& Q = spec.kind == MechanismKind::RRCWM
                              ? P
                              : augment_with_prediction(P, *spec.prediction, spec.c);
      if (r.theta) return rcwmed(Q, *r.theta);
      if (r.rotation) return rcwmed(Q, Rotation::checked(*r.rotation));
      throw std::invalid_argument("replay: missing rotation draw");
    }
    case MechanismKind::GRD_UNIFORM:
    case MechanismKind::GRD_PROPORTIONAL:
      if (!r.dictator) throw std::invalid_argument("replay: missing dictator index");
      return P.report(*r.dictator).point;
  }
  throw std::logic_error("replay: unknown kind");
}

double grd_expected_cost(const Instance& P, std::span<const double> weights, double q) {
  if (static_cast<std::int64_t>(weights.size()) != P.n())
    throw std::invalid_argument("grd_expected_cost: one weight per agent required");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("grd_expected_cost: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("grd_expected_cost: weights must sum to 1");

  double e = 0.0;
  std::int64_t pos = 0;
  for (const Atom& a : P.atoms()) {
    double wa = 0.0;
    for (std::int64_t i = 0; i < a.mult; ++i) wa += weights[pos++];
    if (wa == 0.0) continue;
    double cost = 0.0;
    for (const Atom& b : P.atoms())
      cost += static_cast<double>(b.mult) * lp_norm(b.point - a.point, q);
    e += wa * cost;
  }
  return e;
}

double grd_uniform_expected_cost(const Instance& P, double q) {
  const double n = static_cast<double>(P.n());
  double e = 0.0;
  for (const Atom& a : P.atoms()) {
    double cost = 0.0;
    for (const Atom& b : P.atoms())
      cost += static_cast<double>(b.mult) * lp_norm(b.point - a.point, q);
    e += (static_cast<double>(a.mult) / n) * cost;
  }
  return e;
}

double grd_proportional_expected_cost(const Instance& P, double q) {
  const double n = static_cast<double>(P.n());
  const auto& atoms = P.atoms();
  std::vector<double> cost(atoms.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    cost[a] = 0.0;
    for (const Atom& b : atoms)
      cost[a] += static_cast<double>(b.mult) * lp_norm(b.point - atoms[a].point, q);
  }
  double e = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double pi = static_cast<double>(atoms[i].mult) / n;
    double total = 0.0;
    std::vector<double> w(atoms.size());
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      w[j] = static_cast<double>(atoms[j].mult) * (atoms[j].point - atoms[i].point).norm();
      total += w[j];
    }
    if (total == 0.0) {
      e += pi * cost[i];
      continue;
    }
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (w[j] > 0.0) e += pi * (w[j] / total) * cost[j];
  }
  return e;
}

double mac_bound(double delta) {
  if (!(delta >= 0.0 && delta < 0.5))
    throw std::invalid_argument("mac_bound: delta must lie in [0, 0.5)");
  return std::min(1.0 + 4.0 * delta / (1.0 - 2.0 * delta), kFourOverPi);
}

std::optional<SpViolation> sp_probe(const Instance& P,
                                    const std::function<Vec(const Instance&)>& mechanism,
                                    const SpProbeConfig& cfg, RandomStream& rng) {
  const Vec truthful = mechanism(P);
  const double spread = std::max(P.spread(), 1e-6);
  const Vec center = P.mean();
  const int half = cfg.deviations_per_agent / 2;

  for (std::int64_t agent = 0; agent < P.n(); ++agent) {
    const Vec& loc = P.report(agent).point;
    const double d_truth = (truthful - loc).norm();
    for (int k = 0; k < cfg.deviations_per_agent; ++k) {
      Vec dev(P.dim());
      if (k < half) {
        for (int j = 0; j < P.dim(); ++j)
          dev[j] = center[j] + rng.uniform(-1.5, 1.5) * spread;
      } else {
        // Along the agent-facility line: at the facility, short of it, past
        // it, and mirrored through it.
        const double s = rng.uniform(-2.0, 2.0);
        dev = truthful + s * (loc - truthful);
      }
      const Vec moved = mechanism(P.with_report(agent, dev));
      const double d_dev = (moved - loc).norm();
      if (d_dev < d_truth - cfg.tol)
        return SpViolation{agent, dev, d_truth - d_dev};
    }
  }
  return std::nullopt;
}

}  // namespace facloc
