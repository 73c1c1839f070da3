#include <cmath>
#include <set>

#include "unitaylor/engine/engine.hpp"
#include "unitaylor/errors.hpp"

namespace unitaylor::engine {

ScanResult universal_point_scan(const Poly& f, const Point& zeta, const Point& z, std::int64_t horizon,
                                const ValueGrid& grid) {
  if (zeta.size() != f.dimension() || z.size() != f.dimension())
    throw PreconditionError("scan: point dimension mismatch");
  if (horizon < 0) throw PreconditionError("scan: horizon must be >= 0");
  if (!(grid.cell > 0) || grid.box.empty()) throw PreconditionError("scan: bad value grid");
  Poly g = recenter(f, zeta);
  if (horizon > std::max<std::int64_t>(0, g.max_enum_index()))
    throw PreconditionError("scan: horizon exceeds the support of f recentered at zeta");

  MultiIndexEnum en(f.dimension());
  std::vector<HiComplex> dz;
  for (std::size_t i = 0; i < z.size(); ++i) dz.push_back(to_hi(z[i]) - to_hi(zeta[i]));
  ScanResult out;
  HiComplex sum(0);
  auto it = g.terms().begin();
  for (std::int64_t k = 0; k <= horizon; ++k) {
    while (it != g.terms().end() && en.index_of(it->first) == k) {
      HiComplex term = it->second;
      for (std::size_t i = 0; i < dz.size(); ++i)
        for (int p = 0; p < it->first[i]; ++p) term *= dz[i];
      sum += term;
      ++it;
    }
    out.visited.push_back(to_double(sum));
  }

  auto nx = static_cast<std::int64_t>(std::ceil((grid.box.x1 - grid.box.x0) / grid.cell));
  auto ny = static_cast<std::int64_t>(std::ceil((grid.box.y1 - grid.box.y0) / grid.cell));
  std::set<std::int64_t> hit;
  for (auto v : out.visited) {
    if (v.real() < grid.box.x0 || v.real() > grid.box.x1 || v.imag() < grid.box.y0 || v.imag() > grid.box.y1) continue;
    auto cx = std::min(nx - 1, static_cast<std::int64_t>(std::floor((v.real() - grid.box.x0) / grid.cell)));
    auto cy = std::min(ny - 1, static_cast<std::int64_t>(std::floor((v.imag() - grid.box.y0) / grid.cell)));
    hit.insert(cy * nx + cx);
  }
  out.cells_hit = hit.size();
  out.cells_total = static_cast<std::size_t>(nx * ny);
  out.coverage = out.cells_total ? static_cast<double>(out.cells_hit) / static_cast<double>(out.cells_total) : 0.0;
  return out;
}

}  // namespace unitaylor::engine
