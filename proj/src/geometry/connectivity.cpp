#include <algorithm>
#include <cmath>
#include <deque>

#include "unitaylor/errors.hpp"
#include "unitaylor/geometry/compact.hpp"

namespace unitaylor::geometry {

namespace {

struct Raster {
  Box box;
  double res = 0;
  long nx = 0, ny = 0;

  Raster(Box b, double r) : box(b), res(r) {
    double w = b.x1 - b.x0;
    double hgt = b.y1 - b.y0;
    // Cap the raster size; coarser cells only make the verdict more conservative.
    double cells = (w / res) * (hgt / res);
    if (cells > 2.5e6) res = std::sqrt(w * hgt / 2.5e6);
    nx = std::max(1L, static_cast<long>(std::ceil(w / res)));
    ny = std::max(1L, static_cast<long>(std::ceil(hgt / res)));
  }
  std::size_t size() const { return static_cast<std::size_t>(nx * ny); }
  std::size_t index(long i, long j) const { return static_cast<std::size_t>(j * nx + i); }
  Complex corner(long i, long j) const { return {box.x0 + i * res, box.y0 + j * res}; }
  Complex center(long i, long j) const { return corner(i, j) + Complex(0.5 * res, 0.5 * res); }
};

// Flood fill over open cells from the raster edge; returns reached flags.
std::vector<char> flood_from_edge(const Raster& r, const std::vector<char>& open) {
  std::vector<char> reached(r.size(), 0);
  std::deque<std::pair<long, long>> queue;
  auto push = [&](long i, long j) {
    if (i < 0 || j < 0 || i >= r.nx || j >= r.ny) return;
    std::size_t k = r.index(i, j);
    if (!open[k] || reached[k]) return;
    reached[k] = 1;
    queue.emplace_back(i, j);
  };
  for (long i = 0; i < r.nx; ++i) {
    push(i, 0);
    push(i, r.ny - 1);
  }
  for (long j = 0; j < r.ny; ++j) {
    push(0, j);
    push(r.nx - 1, j);
  }
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    push(i + 1, j);
    push(i - 1, j);
    push(i, j + 1);
    push(i, j - 1);
  }
  return reached;
}

std::vector<std::size_t> unreached(const std::vector<char>& open, const std::vector<char>& reached) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < open.size(); ++k)
    if (open[k] && !reached[k]) out.push_back(k);
  return out;
}

Complex witness_cell(const Raster& r, const std::vector<std::size_t>& cells) {
  Complex mean{};
  for (auto k : cells) mean += r.center(static_cast<long>(k % r.nx), static_cast<long>(k / r.nx));
  mean /= static_cast<double>(cells.size());
  Complex best = r.center(static_cast<long>(cells[0] % r.nx), static_cast<long>(cells[0] / r.nx));
  for (auto k : cells) {
    Complex c = r.center(static_cast<long>(k % r.nx), static_cast<long>(k / r.nx));
    if (std::abs(c - mean) < std::abs(best - mean)) best = c;
  }
  return best;
}

}  // namespace

ConnectivityCertificate complement_connected(const PlanarCompact& k, double box_margin,
                                             double resolution) {
  if (!(resolution > 0)) throw PreconditionError("resolution must be positive");
  ConnectivityCertificate cert;
  cert.resolution = resolution;
  if (k.empty()) {
    cert.verdict = Verdict::Connected;
    return cert;
  }
  Box b = k.point_bounds().expanded(std::max(box_margin, 0.0) + 2 * resolution);
  Raster r(b, resolution);
  cert.resolution = r.res;
  const Descriptor& d = k.descriptor;

  // meets: the cell certainly meets k (holds a stored point or a probe inside k).
  // full: every probe of the cell is inside k.
  // near: the cell center is within one cell diagonal of k.
  std::vector<char> meets(r.size(), 0), full(r.size(), 0), near(r.size(), 0);
  for (auto p : k.validation_points) {
    long i = static_cast<long>(std::floor((p.real() - b.x0) / r.res));
    long j = static_cast<long>(std::floor((p.imag() - b.y0) / r.res));
    if (i >= 0 && j >= 0 && i < r.nx && j < r.ny) meets[r.index(i, j)] = 1;
  }
  double diag = r.res * std::sqrt(2.0);
  bool thin = d.is_thin();
  for (long j = 0; j < r.ny; ++j) {
    for (long i = 0; i < r.nx; ++i) {
      std::size_t idx = r.index(i, j);
      Complex c = r.center(i, j);
      if (!d.contains(c, diag)) continue;
      near[idx] = 1;
      if (thin) continue;
      const Complex probes[] = {c,
                                r.corner(i, j),
                                r.corner(i + 1, j),
                                r.corner(i, j + 1),
                                r.corner(i + 1, j + 1),
                                c + Complex(0.5 * r.res, 0),
                                c - Complex(0.5 * r.res, 0),
                                c + Complex(0, 0.5 * r.res),
                                c - Complex(0, 0.5 * r.res)};
      int hits = 0;
      for (auto p : probes) hits += d.contains(p, 0.0) ? 1 : 0;
      if (hits > 0) meets[idx] = 1;
      if (hits == 9) full[idx] = 1;
    }
  }

  // Pessimistic pass: everything possibly in k blocks.
  std::vector<char> open_a(r.size());
  for (std::size_t q = 0; q < r.size(); ++q) open_a[q] = !(meets[q] || near[q]);
  auto miss_a = unreached(open_a, flood_from_edge(r, open_a));
  if (miss_a.empty()) {
    cert.verdict = Verdict::Connected;
    return cert;
  }
  // Optimistic pass: only cells entirely inside k block.
  std::vector<char> open_b(r.size());
  for (std::size_t q = 0; q < r.size(); ++q) open_b[q] = !full[q];
  auto miss_b = unreached(open_b, flood_from_edge(r, open_b));
  if (!miss_b.empty()) {
    cert.verdict = Verdict::Disconnected;
    cert.witness = witness_cell(r, miss_b);
  } else {
    cert.verdict = Verdict::Inconclusive;
    cert.witness = witness_cell(r, miss_a);
  }
  return cert;
}

ConnectivityCertificate domain_complement_connected(const DomainSpec& domain,
                                                    const BoundaryPortion& portion, Box box,
                                                    double resolution) {
  (void)portion;  // S lies on the boundary and never separates the complement.
  if (!(resolution > 0)) throw PreconditionError("resolution must be positive");
  ConnectivityCertificate cert;
  Raster r(box, resolution);
  cert.resolution = r.res;
  std::vector<char> open_a(r.size()), open_b(r.size());
  for (long j = 0; j < r.ny; ++j) {
    for (long i = 0; i < r.nx; ++i) {
      Complex c = r.center(i, j);
      double dist = domain.distance_to_closure(c);
      open_a[r.index(i, j)] = dist > r.res ? 1 : 0;
      open_b[r.index(i, j)] = domain.contains(c) ? 0 : 1;
    }
  }
  auto miss_a = unreached(open_a, flood_from_edge(r, open_a));
  auto miss_b = unreached(open_b, flood_from_edge(r, open_b));
  if (miss_a.empty() && miss_b.empty()) {
    cert.verdict = Verdict::Connected;
  } else if (!miss_a.empty() && !miss_b.empty()) {
    cert.verdict = Verdict::Disconnected;
    cert.witness = witness_cell(r, miss_b);
  } else {
    cert.verdict = Verdict::Inconclusive;
    cert.witness = witness_cell(r, miss_a.empty() ? miss_b : miss_a);
  }
  return cert;
}

}  // namespace unitaylor::geometry
