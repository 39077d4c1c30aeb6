#pragma once

#include <iosfwd>
#include <string>

#include "ersl/cluster.hpp"
#include "ersl/generate.hpp"

namespace ersl {

// shortest decimal form that parses back to the same double
std::string format_double(double x);

// Version-stamped text format: one header line
//   # ersl v1 d=2 n=<n> model=<kind> seed=<seed> p=<p> q=<q> sigma=<s> L=<L>
// then one line per open edge, `H u v` or `V u v`, rows bottom to top.
void write_edge_list(std::ostream& out, const Realization& real);

// Rebuilds the grid and the spec fields the header carries (layer metadata
// is not serialized; regenerate from the seed if it is needed).
Realization read_edge_list(std::istream& in);

// header `vertex_u,vertex_v,component_id`, one row per vertex
void write_cluster_csv(std::ostream& out, const EdgeGrid& grid,
                       const ClusterReport& report);

}  // namespace ersl
