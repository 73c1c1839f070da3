#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include "json.hpp"
#include "unitaylor/approx/approx.hpp"
#include "unitaylor/geometry/scene.hpp"

namespace unitaylor::io {

using Json = nlohmann::json;

// Throws ConfigError when `j` is not an object or carries a key outside `allowed`.
void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);
// Required member; ConfigError naming `where` when absent.
const Json& need(const Json& j, const char* key, const std::string& where);

Json complex_to_json(Complex z);
// Accepts [re, im] or a bare real number.
Complex complex_from_json(const Json& j, const std::string& where);
// Reals may be written as numbers or as "inf" / "-inf".
Json real_to_json(double x);
double real_from_json(const Json& j, const std::string& where);

Json domain_to_json(const geometry::DomainSpec& d);
geometry::DomainSpec domain_from_json(const Json& j);

Json portion_to_json(const geometry::BoundaryPortion& p);
geometry::BoundaryPortion portion_from_json(const Json& j);

Json descriptor_to_json(const geometry::Descriptor& d);
geometry::Descriptor descriptor_from_json(const Json& j);

Json cutset_to_json(const geometry::CutSet& mu);
geometry::CutSet cutset_from_json(const Json& j);

Json multi_index_to_json(const MultiIndex& a);
MultiIndex multi_index_from_json(const Json& j, std::size_t dim);

Json family_to_json(const DerivativeFamily& f);
DerivativeFamily family_from_json(const Json& j, std::size_t dim);

// Coefficients are written as decimal strings with full 256-bit precision.
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json fit_report_to_json(const approx::FitReport& r);

Json verdict_to_json(const geometry::ConnectivityCertificate& c);

// Canonical form of a scene: sorted keys, no whitespace.
Json scene_to_json(const geometry::DomainScene& s);
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace unitaylor::io
