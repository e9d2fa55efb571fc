#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "facloc/geometry.hpp"

namespace facloc {

// A report location with its multiplicity. Grouping identical reports keeps
// cost evaluation linear in the number of distinct locations, which is what
// makes the large lower-bound instances (k = M^2 agents per cluster) cheap.
struct Atom {
  Vec point;
  std::int64_t mult = 1;
};

struct InstanceMeta {
  std::string recipe;
  std::vector<std::pair<std::string, double>> params;  // ordered for stable output
};

class Instance {
 public:
  Instance(int dim, std::vector<Atom> atoms, std::optional<InstanceMeta> meta = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::int64_t n() const { return n_; }  // agent count, multiplicities included
  const std::optional<InstanceMeta>& meta() const { return meta_; }

  // Coordinate-wise mean of all reports.
  Vec mean() const;
  // Euclidean diagonal of the bounding box.
  double spread() const;

  // The profile position i in [0, n) resolved to its atom.
  const Atom& report(std::int64_t i) const;
  std::size_t atom_of_report(std::int64_t i) const;

  // Copy with report i replaced by a deviating location (same multiplicities
  // otherwise); used by the strategyproofness probe.
  Instance with_report(std::int64_t i, const Vec& p) const;

  Instance with_meta(InstanceMeta m) const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
  std::int64_t n_;
  std::optional<InstanceMeta> meta_;
};

}  // namespace facloc
