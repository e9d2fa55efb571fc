#include "facloc/medians.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "facloc/parallel.hpp"

namespace facloc {

double median_1d(std::vector<std::pair<double, std::int64_t>> vals) {
  if (vals.empty()) throw std::invalid_argument("median_1d: empty input");
  std::int64_t n = 0;
  for (const auto& [v, m] : vals) {
    if (m < 1) throw std::invalid_argument("median_1d: multiplicity must be >= 1");
    n += m;
  }
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::int64_t rank = (n + 1) / 2;
  std::int64_t c = 0;
  for (const auto& [v, m] : vals) {
    c += m;
    if (c >= rank) return v;
  }
  throw std::logic_error("median_1d: rank not reached");
}

Vec cwmed(const Instance& P) {
  const int d = P.dim();
  Vec out(d);
  std::vector<std::pair<double, std::int64_t>> axis(P.atoms().size());
  for (int j = 0; j < d; ++j) {
    for (std::size_t a = 0; a < P.atoms().size(); ++a)
      axis[a] = {P.atoms()[a].point[j], P.atoms()[a].mult};
    out[j] = median_1d(axis);
  }
  return out;
}

namespace {

// Weighted median over a scratch buffer, no allocation beyond the buffer.
double weighted_median_inplace(std::vector<std::pair<double, std::int64_t>>& vals,
                               std::int64_t n) {
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::int64_t rank = (n + 1) / 2;
  std::int64_t c = 0;
  for (const auto& [v, m] : vals) {
    c += m;
    if (c >= rank) return v;
  }
  return vals.back().first;
}

}  // namespace

MedianResult geometric_median(const Instance& P, double tol, int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("geometric_median: tol must be positive");
  const auto& atoms = P.atoms();
  if (atoms.size() == 1) return {atoms[0].point, 0, true, 0.0};

  Vec x = P.mean();
  std::vector<double> dist(atoms.size());
  MedianResult res;
  for (int it = 1; it <= max_iters; ++it) {
    res.iterations = it;
    double coincident_w = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      dist[i] = (atoms[i].point - x).norm();
      if (dist[i] <= tol) coincident_w += static_cast<double>(atoms[i].mult);
    }

    Vec x_next;
    if (coincident_w > 0.0) {
      // Residual pull of the non-coincident reports decides whether the data
      // point itself is optimal; otherwise it scales a damped step off it.
      Vec pull = Vec::Zero(P.dim());
      Vec num = Vec::Zero(P.dim());
      double den = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (dist[i] <= tol) continue;
        const double w = static_cast<double>(atoms[i].mult);
        pull += w * (atoms[i].point - x) / dist[i];
        num += w * atoms[i].point / dist[i];
        den += w / dist[i];
      }
      const double r = pull.norm();
      if (r <= coincident_w) {
        res.converged = true;
        res.residual = 0.0;
        res.point = x;
        return res;
      }
      const double beta = coincident_w / r;
      x_next = (1.0 - beta) * (num / den) + beta * x;
    } else {
      Vec num = Vec::Zero(P.dim());
      double den = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double w = static_cast<double>(atoms[i].mult);
        num += w * atoms[i].point / dist[i];
        den += w / dist[i];
      }
      x_next = num / den;
    }

    const double step = (x_next - x).norm();
    x = x_next;
    res.residual = step;
    if (step <= tol) {
      res.converged = true;
      break;
    }
  }
  res.point = x;
  return res;
}

namespace {

double scost_q_local(const Instance& P, const Vec& m, double q) {
  double s = 0.0;
  for (const Atom& a : P.atoms())
    s += static_cast<double>(a.mult) * lp_norm(a.point - m, q);
  return s;
}

}  // namespace

MedianResult q_median(const Instance& P, double q, double tol, int max_iters) {
  if (!(q >= 1.0) || std::isinf(q))
    throw std::invalid_argument("q_median: q must be a finite real >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("q_median: tol must be positive");

  const MedianResult gm = geometric_median(P);
  const Vec cm = cwmed(P);
  Vec best = gm.point;
  double best_f = scost_q_local(P, best, q);
  const double f_cm = scost_q_local(P, cm, q);
  if (f_cm < best_f) {
    best = cm;
    best_f = f_cm;
  }

  const double a = P.spread();
  if (a == 0.0) return {best, 0, true, 0.0};

  Vec x = best;
  Vec g(P.dim());
  // Convergence is reported as a plateau: negligible improvement of the best
  // objective over the last quarter of the iterations.
  double f_at_checkpoint = best_f;
  const int checkpoint = std::max(1, max_iters - max_iters / 4);
  int t = 1;
  for (; t <= max_iters; ++t) {
    if (t == checkpoint) f_at_checkpoint = best_f;
    g.setZero();
    for (const Atom& at : P.atoms()) {
      const Vec v = x - at.point;
      const double r = lp_norm(v, q);
      if (r == 0.0) continue;
      const double w = static_cast<double>(at.mult);
      for (int j = 0; j < P.dim(); ++j) {
        const double aj = std::abs(v[j]);
        if (aj == 0.0) continue;
        const double s = v[j] > 0.0 ? 1.0 : -1.0;
        g[j] += w * s * std::pow(aj / r, q - 1.0);
      }
    }
    const double gn = g.norm();
    if (gn == 0.0) return {x, t, true, 0.0};
    x -= (a / std::sqrt(static_cast<double>(t))) * (g / gn);
    const double f = scost_q_local(P, x, q);
    if (f < best_f) {
      best_f = f;
      best = x;
    }
  }
  const double improvement = f_at_checkpoint - best_f;
  const bool plateaued = improvement <= tol * (1.0 + std::abs(best_f));
  return {best, max_iters, plateaued, improvement};
}

Vec rcwmed(const Instance& P, const Rotation& R) {
  if (R.dim() != P.dim()) throw std::invalid_argument("rcwmed: rotation dimension mismatch");
  std::vector<Atom> rotated;
  rotated.reserve(P.atoms().size());
  for (const Atom& a : P.atoms()) rotated.push_back({R.apply(a.point), a.mult});
  const Vec m = cwmed(Instance(P.dim(), std::move(rotated)));
  return R.apply_inverse(m);
}

Vec rcwmed(const Instance& P, double theta) {
  if (P.dim() != 2) throw std::invalid_argument("rcwmed(theta): planar instances only");
  const double c = std::cos(theta), s = std::sin(theta);
  const auto& atoms = P.atoms();
  std::vector<std::pair<double, std::int64_t>> xs(atoms.size()), ys(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double rx, ry;
    rotate2(c, s, atoms[i].point[0], atoms[i].point[1], rx, ry);
    xs[i] = {rx, atoms[i].mult};
    ys[i] = {ry, atoms[i].mult};
  }
  const double mx = weighted_median_inplace(xs, P.n());
  const double my = weighted_median_inplace(ys, P.n());
  Vec out(2);
  out[0] = c * mx + s * my;
  out[1] = -s * mx + c * my;
  return out;
}

Vec projection_median_estimate(const Instance& P, int quad_panels, std::int64_t mc_samples,
                               RandomStream& rng) {
  if (P.dim() == 2) {
    if (quad_panels < 2 || quad_panels % 2 != 0)
      throw std::invalid_argument("projection_median_estimate: panels must be even, >= 2");
    const double h = kHalfPi / quad_panels;
    Vec acc = Vec::Zero(2);
    for (int i = 0; i <= quad_panels; ++i) {
      const double w = (i == 0 || i == quad_panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * rcwmed(P, i * h);
    }
    return (acc * h / 3.0) / kHalfPi;
  }
  if (mc_samples < 1)
    throw std::invalid_argument("projection_median_estimate: mc_samples must be >= 1");
  Vec acc = Vec::Zero(P.dim());
  for (std::int64_t i = 0; i < mc_samples; ++i) {
    RandomStream sub = rng.substream(static_cast<std::uint64_t>(i));
    acc += rcwmed(P, sample_haar_rotation(P.dim(), sub));
  }
  return acc / static_cast<double>(mc_samples);
}

}  // namespace facloc
