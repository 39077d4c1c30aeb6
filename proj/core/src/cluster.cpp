#include "ersl/cluster.hpp"

#include <numeric>

namespace ersl {

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;

  explicit UnionFind(std::int64_t count)
      : parent(static_cast<std::size_t>(count)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::int32_t find(std::int32_t a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }

  // union by smaller root id keeps the representative the minimum vertex
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[static_cast<std::size_t>(b)] = a;
    else
      parent[static_cast<std::size_t>(a)] = b;
  }
};

}  // namespace

ClusterReport cluster(const EdgeGrid& grid) {
  const std::int64_t n = grid.n();
  const std::int64_t verts = grid.vertex_count();
  UnionFind uf(verts);

  for (std::int64_t v = 0; v <= n; ++v)
    for (std::int64_t u = 0; u < n; ++u)
      if (grid.open_h(u, v))
        uf.unite(static_cast<std::int32_t>(grid.vid(u, v)),
                 static_cast<std::int32_t>(grid.vid(u + 1, v)));
  for (std::int64_t v = 0; v < n; ++v)
    for (std::int64_t u = 0; u <= n; ++u)
      if (grid.open_v(u, v))
        uf.unite(static_cast<std::int32_t>(grid.vid(u, v)),
                 static_cast<std::int32_t>(grid.vid(u, v + 1)));

  ClusterReport report;
  report.component_id.assign(static_cast<std::size_t>(verts), -1);

  // roots are minimal vids, so an ascending scan assigns dense ids in order
  // of each component's smallest vertex
  for (std::int64_t z = 0; z < verts; ++z) {
    std::int32_t root = uf.find(static_cast<std::int32_t>(z));
    if (root == z) {
      report.component_id[static_cast<std::size_t>(z)] =
          static_cast<std::int32_t>(report.component_count++);
      report.component_size.push_back(0);
    } else {
      report.component_id[static_cast<std::size_t>(z)] =
          report.component_id[static_cast<std::size_t>(root)];
    }
    ++report.component_size[static_cast<std::size_t>(
        report.component_id[static_cast<std::size_t>(z)])];
  }

  std::vector<char> lo_x(report.component_size.size(), 0), hi_x = lo_x,
                    lo_y = lo_x, hi_y = lo_x;
  for (std::int64_t v = 0; v <= n; ++v) {
    lo_x[static_cast<std::size_t>(report.component_id[static_cast<std::size_t>(
        grid.vid(0, v))])] = 1;
    hi_x[static_cast<std::size_t>(report.component_id[static_cast<std::size_t>(
        grid.vid(n, v))])] = 1;
    lo_y[static_cast<std::size_t>(report.component_id[static_cast<std::size_t>(
        grid.vid(v, 0))])] = 1;
    hi_y[static_cast<std::size_t>(report.component_id[static_cast<std::size_t>(
        grid.vid(v, n))])] = 1;
  }
  for (std::size_t c = 0; c < report.component_size.size(); ++c) {
    report.spans_x = report.spans_x || (lo_x[c] && hi_x[c]);
    report.spans_y = report.spans_y || (lo_y[c] && hi_y[c]);
  }
  report.origin_component_size = report.component_size[static_cast<std::size_t>(
      report.component_id[0])];
  return report;
}

}  // namespace ersl
