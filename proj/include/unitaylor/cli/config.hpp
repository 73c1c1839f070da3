#pragma once

#include <string>
#include <vector>

#include "unitaylor/engine/engine.hpp"

namespace unitaylor::cli {

io::Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Scene config: {dimension, domains, portions, center, mu,
// base_outside_compacts, grid, caps, enumeration}. Unknown keys are rejected.
// Densities are points per unit length.
engine::Config parse_scene_config(const io::Json& j);

struct Schedule {
  std::vector<engine::Requirement> requirements;
  std::optional<Poly> seed;
};

// Schedule: {requirements: [...], seed}.
Schedule parse_schedule(const io::Json& j, std::size_t dimension);

// Points are written "re,im" per variable, variables separated by ';'.
Point parse_point(const std::string& text, std::size_t dimension);

}  // namespace unitaylor::cli
