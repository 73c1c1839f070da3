#include "unitaylor/geometry/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "unitaylor/errors.hpp"

namespace unitaylor::geometry {

CutSet CutSet::all() { return CutSet{}; }

CutSet CutSet::residues(std::int64_t modulus, std::vector<std::int64_t> residues) {
  if (modulus < 1) throw ConfigError("mu modulus must be >= 1");
  if (residues.empty()) throw ConfigError("mu residue set is empty");
  for (auto& r : residues) {
    if (r < 0 || r >= modulus) throw ConfigError("mu residues must lie in [0, modulus)");
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  CutSet c;
  c.kind_ = Kind::Residues;
  c.modulus_ = modulus;
  c.values_ = std::move(residues);
  return c;
}

CutSet CutSet::list(std::vector<std::int64_t> values) {
  if (values.empty()) throw ConfigError("mu list is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw ConfigError("mu entries must be >= 0");
    if (i > 0 && values[i] <= values[i - 1]) throw ConfigError("mu list must be increasing");
  }
  CutSet c;
  c.kind_ = Kind::List;
  c.values_ = std::move(values);
  return c;
}

bool CutSet::contains(std::int64_t n) const {
  if (n < 0) return false;
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Residues:
      return std::binary_search(values_.begin(), values_.end(), n % modulus_);
    case Kind::List:
      return std::binary_search(values_.begin(), values_.end(), n);
  }
  return false;
}

std::optional<std::int64_t> CutSet::next_at_least(std::int64_t n) const {
  n = std::max<std::int64_t>(n, 0);
  switch (kind_) {
    case Kind::All:
      return n;
    case Kind::Residues:
      for (std::int64_t k = n; k < n + modulus_; ++k)
        if (contains(k)) return k;
      return std::nullopt;
    case Kind::List: {
      auto it = std::lower_bound(values_.begin(), values_.end(), n);
      if (it == values_.end()) return std::nullopt;
      return *it;
    }
  }
  return std::nullopt;
}

namespace {

Box scene_box(const DomainSpec& domain, Complex center) {
  double r = 0.0;
  if (auto b = domain.bounding_radius())
    r = *b + 1.0;
  else
    r = std::abs(domain.reference_point()) + std::abs(center) + 4.0;
  return Box{-r, r, -r, r};
}

}  // namespace

void validate_scene(const DomainScene& scene, double resolution) {
  std::size_t d = scene.dimension();
  if (d == 0) throw ConfigError("scene needs at least one domain");
  if (scene.portions.size() != d) throw ConfigError("portions count must equal the dimension");
  if (scene.center.size() != d) throw ConfigError("center must have one coordinate per factor");
  if (!scene.base_outside.empty() && scene.base_outside.size() != d)
    throw ConfigError("base_outside_compacts needs one list per factor");
  if (scene.horizon.max_level < 1 || scene.horizon.max_radius < 1)
    throw ConfigError("enumeration horizon entries must be >= 1");
  for (std::size_t i = 0; i < d; ++i) {
    const auto& dom = scene.domains[i];
    dom.validate();
    validate_portion(dom, scene.portions[i]);
    if (!dom.contains(scene.center[i])) {
      std::ostringstream msg;
      msg << "center coordinate " << i << " is not inside domain " << i << " (" << dom.kind()
          << ")";
      throw ConfigError(msg.str());
    }
    auto cert = domain_complement_connected(dom, scene.portions[i], scene_box(dom, scene.center[i]),
                                            resolution);
    if (cert.verdict != Verdict::Connected) {
      std::ostringstream msg;
      msg << "complement of domain " << i << " united with its boundary portion is not certified "
          << "connected (" << to_string(cert.verdict) << ")";
      throw ConfigError(msg.str());
    }
    if (!scene.base_outside.empty()) {
      for (std::size_t j = 0; j < scene.base_outside[i].size(); ++j) {
        const auto& desc = scene.base_outside[i][j];
        PlanarCompact k = sample(desc, Sampling{resolution, resolution});
        for (auto p : k.validation_points) {
          if (dom.contains(p)) {
            std::ostringstream msg;
            msg << "outside compact " << j << " of factor " << i << " meets the domain at (" << p.real()
                << ", " << p.imag() << ")";
            throw ConfigError(msg.str());
          }
        }
        auto cc = complement_connected(k, 0.5, std::max(2 * resolution, 1e-3));
        if (cc.verdict != Verdict::Connected) {
          std::ostringstream msg;
          msg << "outside compact " << j << " of factor " << i
              << " does not have a certified connected complement";
          throw ConfigError(msg.str());
        }
      }
    }
  }
}

std::vector<TauEntry> tau_pairing(const DomainScene& scene) {
  std::size_t d = scene.dimension();
  std::vector<TauEntry> entries;
  int smax = scene.horizon.max_radius;
  for (std::size_t i0 = 0; i0 < d; ++i0) {
    std::size_t jcount = scene.base_outside.empty() ? 0 : scene.base_outside[i0].size();
    for (std::size_t j = 0; j < jcount; ++j) {
      for (int m = 1; m <= scene.horizon.max_level; ++m) {
        // Odometer over radii of the other factors.
        std::vector<int> radii(d, 1);
        radii[i0] = 0;
        while (true) {
          entries.push_back(TauEntry{i0, j, m, radii});
          std::size_t k = 0;
          for (; k < d; ++k) {
            if (k == i0) continue;
            if (radii[k] < smax) {
              ++radii[k];
              break;
            }
            radii[k] = 1;
          }
          if (k == d) break;
        }
      }
    }
  }
  auto key = [](const TauEntry& e) {
    int sum = static_cast<int>(e.i0 + 1 + e.j + 1) + e.m;
    for (int s : e.radii) sum += s;
    return sum;
  };
  std::stable_sort(entries.begin(), entries.end(), [&](const TauEntry& a, const TauEntry& b) {
    int ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return std::tie(a.i0, a.j, a.m, a.radii) < std::tie(b.i0, b.j, b.m, b.radii);
  });
  return entries;
}

std::vector<Descriptor> enumerate_K_tau_descriptors(const DomainScene& scene, std::int64_t tau) {
  auto entries = tau_pairing(scene);
  if (tau < 1 || static_cast<std::size_t>(tau) > entries.size()) {
    std::ostringstream msg;
    msg << "tau = " << tau << " is outside the configured enumeration horizon (1.."
        << entries.size() << ")";
    throw HorizonExceeded(msg.str());
  }
  const TauEntry& e = entries[static_cast<std::size_t>(tau - 1)];
  std::vector<Descriptor> factors;
  for (std::size_t i = 0; i < scene.dimension(); ++i) {
    if (i == e.i0) {
      auto base = std::make_shared<const Descriptor>(scene.base_outside[i][e.j]);
      factors.emplace_back(Shrink{base, scene.domains[i], scene.portions[i], e.m});
    } else {
      factors.emplace_back(Ball{Complex(0, 0), static_cast<double>(e.radii[i])});
    }
  }
  return factors;
}

ProductCompact enumerate_K_tau(const DomainScene& scene, std::int64_t tau, const Sampling& s,
                               double box_margin) {
  return make_product(enumerate_K_tau_descriptors(scene, tau), s, box_margin);
}

std::vector<Descriptor> default_outside_compacts(const DomainSpec& domain, std::size_t count) {
  std::vector<Descriptor> out;
  for (int level = 0; level < 4 && out.size() < count; ++level) {
    double spacing = std::ldexp(1.0, 1 - level);
    double r = spacing / 4.0;
    int n = static_cast<int>(std::lround(4.0 / spacing));
    std::vector<Complex> centers;
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b) centers.emplace_back(a * spacing, b * spacing);
    std::stable_sort(centers.begin(), centers.end(), [](Complex x, Complex y) {
      double ax = std::abs(x), ay = std::abs(y);
      if (ax != ay) return ax < ay;
      return std::arg(x) < std::arg(y);
    });
    for (auto c : centers) {
      if (out.size() >= count) break;
      if (domain.distance_to_closure(c) <= r) continue;
      out.emplace_back(Ball{c, r});
      if (out.size() >= count) break;
      out.emplace_back(Polyline{{c - r, c + r}});
    }
  }
  return out;
}

}  // namespace unitaylor::geometry
