#include <doctest.h>

#include <cmath>
#include <sstream>

#include "npg/harness.hpp"
#include "npg/parallel.hpp"

using namespace npg;

TEST_CASE("parallel grid scan matches the serial reference") {
  SUBCASE("smooth objective") {
    auto f = [](double x) { return x * (1.0 - x); };
    const GridMax serial = grid_max_serial(f, 0.0, 1.0, 100001);
    const GridMax parallel = grid_max(f, 0.0, 1.0, 100001);
    CHECK(serial.index == parallel.index);
    CHECK(serial.x == parallel.x);
    CHECK(serial.value == parallel.value);
  }

  SUBCASE("flat objective ties to the first grid point") {
    auto f = [](double) { return 0.0; };
    const GridMax serial = grid_max_serial(f, 0.0, 1.0, 5001);
    const GridMax parallel = grid_max(f, 0.0, 1.0, 5001);
    CHECK(serial.index == 0);
    CHECK(parallel.index == 0);
    CHECK(parallel.x == 0.0);
  }

  SUBCASE("plateau ties resolve to the lowest index") {
    auto f = [](double x) { return std::min(x, 0.25); };
    const GridMax serial = grid_max_serial(f, 0.0, 1.0, 4001);
    const GridMax parallel = grid_max(f, 0.0, 1.0, 4001);
    CHECK(serial.index == parallel.index);
    CHECK(parallel.x == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("parallel gradient field matches the serial reference") {
  auto objective = [](double x, double y) {
    return std::max(0.0, 1.0 - x - y) * (x + y);
  };
  const Box region{0.0, 1.0, 0.0, 1.0};
  const auto serial = gradient_field_serial(objective, region, 33, 17, 1e-6);
  const auto parallel = gradient_field(objective, region, 33, 17, 1e-6);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].x == parallel[i].x);
    CHECK(serial[i].y == parallel[i].y);
    CHECK(serial[i].gx == parallel[i].gx);
    CHECK(serial[i].gy == parallel[i].gy);
    CHECK(serial[i].magnitude == parallel[i].magnitude);
  }
}

TEST_CASE("parallel sweep emits the serial bytes") {
  RunConfig config;
  config.scenario = "duopoly-side-payment";
  config.sweep_spec = SweepSpec{"ps", -0.03, 0.2, 0.01};

  std::ostringstream serial_csv, parallel_csv;
  sweep_serial(config).write_csv(serial_csv);
  sweep(config).write_csv(parallel_csv);
  CHECK(serial_csv.str() == parallel_csv.str());
}
