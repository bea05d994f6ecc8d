#include "fordiff/modular.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fordiff/arith.hpp"
#include "fordiff/graph.hpp"

namespace fordiff {

Ratio Ratio::of(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("ratio denominator must be positive");
  if (num < 0) throw std::invalid_argument("ratio numerator must be nonnegative");
  if (num == 0) return Ratio{0, 1};
  std::int64_t g = std::gcd(num, den);
  return Ratio{num / g, den / g};
}

std::string Ratio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

DensityRecord local_density(const ForbiddenSet& x, std::int64_t m, const SearchOptions& opts,
                            std::int64_t cap) {
  if (m < 1) throw std::invalid_argument("modulus must be at least 1");
  if (m > cap)
    throw std::invalid_argument("modulus " + std::to_string(m) + " exceeds the cap " +
                                std::to_string(cap));
  DensityRecord rec;
  rec.m = m;
  rec.residues = x.residues_mod(m);
  if (std::binary_search(rec.residues.begin(), rec.residues.end(), std::int64_t{0})) {
    rec.ratio = Ratio::of(0, 1);
    return rec;
  }

  DiffGraph g = circulant_graph(m, rec.residues);
  // Every maximum avoiding subset can be rotated to contain residue 0, so
  // it is 0 plus a clique among the residues compatible with 0.
  std::vector<std::int64_t> neighbours;
  for (int v = 1; v < g.n(); ++v)
    if (g.adjacent(0, v)) neighbours.push_back(v);
  DiffGraph sub(GraphKind::Generic, m, neighbours);
  for (std::size_t i = 0; i < neighbours.size(); ++i)
    for (std::size_t j = i + 1; j < neighbours.size(); ++j)
      if (g.adjacent(static_cast<int>(neighbours[i]), static_cast<int>(neighbours[j])))
        sub.add_edge(static_cast<int>(i), static_cast<int>(j));

  auto clique = max_clique(sub, opts);
  rec.d = clique.size + 1;
  rec.witness.reserve(static_cast<std::size_t>(rec.d));
  rec.witness.push_back(0);
  rec.witness.insert(rec.witness.end(), clique.witness.begin(), clique.witness.end());
  rec.ratio = Ratio::of(rec.d, m);
  return rec;
}

std::vector<DensityRecord> scan_densities(const ForbiddenSet& x, std::int64_t max_m,
                                          const SearchOptions& opts, std::int64_t cap) {
  if (max_m < 1) throw std::invalid_argument("modulus range must reach at least 1");
  if (max_m > cap)
    throw std::invalid_argument("modulus range " + std::to_string(max_m) + " exceeds the cap " +
                                std::to_string(cap));
  std::vector<DensityRecord> out;
  out.reserve(static_cast<std::size_t>(max_m));
  for (std::int64_t m = 1; m <= max_m; ++m) out.push_back(local_density(x, m, opts, cap));
  return out;
}

DensityRecord mu_lower_scan(const ForbiddenSet& x, std::int64_t max_m, const SearchOptions& opts,
                            std::int64_t cap) {
  auto all = scan_densities(x, max_m, opts, cap);
  const DensityRecord* best = &all.front();
  for (const auto& r : all)
    if (best->ratio < r.ratio) best = &r;
  return *best;
}

IntersectiveReport locally_intersective_up_to(const ForbiddenSet& x, std::int64_t max_m) {
  if (max_m < 1) throw std::invalid_argument("modulus range must reach at least 1");
  for (std::int64_t m = 1; m <= max_m; ++m) {
    auto res = x.residues_mod(m);
    if (!std::binary_search(res.begin(), res.end(), std::int64_t{0})) return {false, m};
  }
  return {true, std::nullopt};
}

std::vector<std::int64_t> lift_density_witness(const DensityRecord& record, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("lift factor must be at least 1");
  if (record.d < 1 || record.witness.empty())
    throw std::invalid_argument("record has no witness to lift");
  if (record.m > kValueRange / k)
    throw std::invalid_argument("lifted range outside the working range");
  std::vector<std::int64_t> out;
  out.reserve(record.witness.size() * static_cast<std::size_t>(k));
  for (std::int64_t j = 0; j < k; ++j)
    for (std::int64_t r : record.witness) out.push_back(r + 1 + j * record.m);
  return out;
}

void write_density_csv(const std::vector<DensityRecord>& rows, std::ostream& os) {
  os << "m,d,ratio,witness\n";
  for (const auto& r : rows) {
    os << r.m << ',' << r.d << ',' << r.ratio.str() << ',';
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
      if (i) os << ';';
      os << r.witness[i];
    }
    os << '\n';
  }
}

}  // namespace fordiff
