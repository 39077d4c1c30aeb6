#pragma once

#include <cstdint>
#include <vector>

#include "ersl/grid.hpp"

namespace ersl {

struct ClusterReport {
  // dense component id per vertex (vid order); ids are assigned in order of
  // each component's smallest vertex id, so labels are deterministic
  std::vector<std::int32_t> component_id;
  std::vector<std::int64_t> component_size;  // by component id
  std::int64_t component_count = 0;
  bool spans_x = false;  // some component touches both u=0 and u=n
  bool spans_y = false;
  std::int64_t origin_component_size = 0;  // component of vertex (0,0)
};

// union-find over the open edges
ClusterReport cluster(const EdgeGrid& grid);

}  // namespace ersl
