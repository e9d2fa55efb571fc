#include "facloc/instance.hpp"

#include <cmath>
#include <stdexcept>

namespace facloc {

Instance::Instance(int dim, std::vector<Atom> atoms, std::optional<InstanceMeta> meta)
    : dim_(dim), atoms_(std::move(atoms)), n_(0), meta_(std::move(meta)) {
  if (dim_ < 1) throw std::invalid_argument("Instance: dim must be >= 1");
  if (atoms_.empty()) throw std::invalid_argument("Instance: at least one report required");
  for (const Atom& a : atoms_) {
    if (a.point.size() != dim_) throw std::invalid_argument("Instance: point dimension mismatch");
    for (int j = 0; j < dim_; ++j)
      if (!std::isfinite(a.point[j]))
        throw std::invalid_argument("Instance: non-finite coordinate");
    if (a.mult < 1) throw std::invalid_argument("Instance: multiplicity must be >= 1");
    n_ += a.mult;
  }
}

Vec Instance::mean() const {
  Vec s = Vec::Zero(dim_);
  for (const Atom& a : atoms_) s += static_cast<double>(a.mult) * a.point;
  return s / static_cast<double>(n_);
}

double Instance::spread() const {
  Vec lo = atoms_[0].point, hi = atoms_[0].point;
  for (const Atom& a : atoms_) {
    lo = lo.cwiseMin(a.point);
    hi = hi.cwiseMax(a.point);
  }
  return (hi - lo).norm();
}

std::size_t Instance::atom_of_report(std::int64_t i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("Instance: report index out of range");
  std::int64_t c = 0;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    c += atoms_[a].mult;
    if (i < c) return a;
  }
  throw std::logic_error("Instance: inconsistent multiplicities");
}

const Atom& Instance::report(std::int64_t i) const { return atoms_[atom_of_report(i)]; }

Instance Instance::with_report(std::int64_t i, const Vec& p) const {
  const std::size_t a = atom_of_report(i);
  std::int64_t base = 0;
  for (std::size_t j = 0; j < a; ++j) base += atoms_[j].mult;
  const std::int64_t off = i - base;

  // Splice the replacement in at position i so every other agent keeps its
  // profile position; fixed-dictator replays depend on that.
  std::vector<Atom> out;
  out.reserve(atoms_.size() + 2);
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    if (j != a) {
      out.push_back(atoms_[j]);
      continue;
    }
    if (off > 0) out.push_back({atoms_[j].point, off});
    out.push_back({p, 1});
    if (atoms_[j].mult - 1 - off > 0) out.push_back({atoms_[j].point, atoms_[j].mult - 1 - off});
  }
  return Instance(dim_, std::move(out));
}

Instance Instance::with_meta(InstanceMeta m) const {
  return Instance(dim_, atoms_, std::move(m));
}

}  // namespace facloc
