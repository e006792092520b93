#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "elasticflow/error.hpp"
#include "elasticflow/profile_io.hpp"

using namespace elasticflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "elasticflow_profile_io_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_SUITE("profile_io") {

TEST_CASE("numbers carry fifteen significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("write then read round trips") {
  const GridFunction u = GridFunction::sample(UniformGrid(10), [](double x) { return x * x - 0.1; });
  const fs::path p = scratch("rt.csv");
  write_profile(p, u);
  const GridFunction back = read_profile(p);
  CHECK(back.grid() == u.grid());
  for (std::size_t i = 0; i <= 10; ++i) CHECK(back[i] == doctest::Approx(u[i]).epsilon(1e-14));
  CHECK_THROWS_AS(read_profile(p, 12), ShapeError);
}

TEST_CASE("format errors name the line") {
  const fs::path p = scratch("bad.csv");
  write_text(p, "x,value\n0,0\n0.25,abc\n0.5,1\n0.75,0\n1,0\n");
  try {
    read_profile(p);
    FAIL("expected an error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  write_text(p, "x,u\n0,0\n");
  CHECK_THROWS_AS(read_profile(p), ParameterError);
  write_text(p, "x,value\n0,0\n0.3,1\n0.5,1\n0.75,1\n1,0\n");
  CHECK_THROWS_AS(read_profile(p), ShapeError);
  CHECK_THROWS_AS(read_profile(scratch("missing.csv")), ParameterError);
}

}  // TEST_SUITE
