#include "ersl/io.hpp"

#include <cstdint>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ersl/cluster.hpp"
#include "ersl/generate.hpp"

using namespace ersl;

namespace {

RealizationSpec reference_spec(std::int64_t n, std::uint64_t seed) {
  RealizationSpec spec;
  spec.params.p = 0.65;
  spec.params.q = 0.3;
  spec.params.sigma = 0.25;
  spec.params.L = 2;
  spec.kind = ModelKind::ersl;
  spec.n = n;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("doubles are printed in shortest round-trip form") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  for (double x : {1.0 / 3.0, 1e-300, 123456789.123, 6.02214076e23,
                   0.30000000000000004}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("edge list round trip preserves the grid and header fields") {
  Realization real = generate_window(reference_spec(12, 31));
  std::ostringstream out;
  write_edge_list(out, real);
  std::istringstream in(out.str());
  Realization back = read_edge_list(in);
  CHECK(back.grid == real.grid);
  CHECK(back.spec.n == 12);
  CHECK(back.spec.seed == 31);
  CHECK(back.spec.kind == ModelKind::ersl);
  CHECK(back.spec.params.p == real.spec.params.p);
  CHECK(back.spec.params.q == real.spec.params.q);
  CHECK(back.spec.params.sigma == real.spec.params.sigma);
  CHECK(back.spec.params.L == real.spec.params.L);
}

TEST_CASE("bernoulli edge lists restore p0 through the p field") {
  RealizationSpec spec;
  spec.kind = ModelKind::bernoulli;
  spec.n = 6;
  spec.seed = 4;
  spec.p0 = 0.37;
  Realization real = generate_window(spec);
  std::ostringstream out;
  write_edge_list(out, real);
  std::istringstream in(out.str());
  Realization back = read_edge_list(in);
  CHECK(back.grid == real.grid);
  CHECK(back.spec.p0 == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("header is versioned and self-describing") {
  Realization real = generate_window(reference_spec(5, 9));
  std::ostringstream out;
  write_edge_list(out, real);
  std::string first = out.str().substr(0, out.str().find('\n'));
  CHECK(first.find("# ersl v1 ") == 0);
  CHECK(first.find("n=5") != std::string::npos);
  CHECK(first.find("model=ersl") != std::string::npos);
  CHECK(first.find("seed=9") != std::string::npos);
}

TEST_CASE("malformed edge lists are rejected") {
  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_edge_list(in), ConfigError);
  };
  reject("");
  reject("# other v1 d=2 n=4 model=full seed=0 p=0 q=0 sigma=0 L=0\n");
  reject("# ersl v2 d=2 n=4 model=full seed=0 p=0 q=0 sigma=0 L=0\n");
  reject("# ersl v1 d=2 n=abc model=full seed=0 p=0 q=0 sigma=0 L=0\n");
  reject("# ersl v1 d=2 n=4 model=nosuch seed=0 p=0 q=0 sigma=0 L=0\n");
  // out-of-range and malformed edge lines
  reject("# ersl v1 d=2 n=4 model=full seed=0 p=0.5 q=0.3 sigma=0.2 L=0\nH 4 0\n");
  reject("# ersl v1 d=2 n=4 model=full seed=0 p=0.5 q=0.3 sigma=0.2 L=0\nV 0 4\n");
  reject("# ersl v1 d=2 n=4 model=full seed=0 p=0.5 q=0.3 sigma=0.2 L=0\nQ 0 0\n");
  reject("# ersl v1 d=2 n=4 model=full seed=0 p=0.5 q=0.3 sigma=0.2 L=0\nH 0\n");
}

TEST_CASE("cluster csv layout") {
  EdgeGrid g(1);
  g.set_h(0, 0, true);
  std::ostringstream out;
  write_cluster_csv(out, g, cluster(g));
  CHECK(out.str() ==
        "vertex_u,vertex_v,component_id\n"
        "0,0,0\n"
        "1,0,0\n"
        "0,1,1\n"
        "1,1,2\n");
}
