#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fracmax/io.hpp"
#include "test_support.hpp"

using namespace fracmax;
using namespace fracmax::io;
using namespace testing_support;

namespace {

std::vector<char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

bool bit_equal(const ScalarField& a, const ScalarField& b) {
  return a.size() == b.size() && std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("field files round trip bit for bit", "[io]") {
  const auto dir = scratch_dir("io_roundtrip");
  Grid3 g(8, 1.2345678901234567);
  auto v = random_vector(g, 1);
  // Values that a text round trip would mangle.
  v[0][0] = Complex(std::numeric_limits<double>::denorm_min(), -0.0);
  v[1][5] = Complex(1.0 / 3.0, std::numeric_limits<double>::max());
  const auto path = dir + "/v.f3d";
  write_field(path, v);
  const auto back = read_field(path);
  REQUIRE(back.rank == 3);
  CHECK(back.grid().n() == 8);
  CHECK(back.grid().length() == g.length());
  for (int a = 0; a < 3; ++a) CHECK(bit_equal((*back.vector)[a], v[a]));

  const auto f = random_scalar(g, 2);
  write_field(dir + "/f.f3d", f);
  const auto fb = read_field(dir + "/f.f3d");
  REQUIRE(fb.rank == 1);
  CHECK(bit_equal(*fb.scalar, f));
  CHECK(std::filesystem::file_size(dir + "/f.f3d") == 29u + 16u * 512u);
}

TEST_CASE("field file header layout is little-endian", "[io]") {
  const auto dir = scratch_dir("io_header");
  Grid3 g(4, 2.0);
  ScalarField f(g);
  f[0] = Complex(1.0, 0.0);
  write_field(dir + "/h.f3d", f);
  const auto b = slurp(dir + "/h.f3d");
  REQUIRE(b.size() == 29u + 16u * 64u);
  CHECK(std::string(b.data(), 4) == "F3DF");
  CHECK(b[4] == 1);
  CHECK(b[5] == 0);
  CHECK(b[8] == 1);  // rank
  CHECK(b[9] == 4);  // nx
  // L = 2.0 = 0x4000000000000000, most significant byte last.
  CHECK(static_cast<unsigned char>(b[28]) == 0x40);
  CHECK(b[21] == 0);
  // First sample re = 1.0 = 0x3ff0000000000000.
  CHECK(static_cast<unsigned char>(b[36]) == 0x3f);
  CHECK(static_cast<unsigned char>(b[35]) == 0xf0);
}

TEST_CASE("malformed field files are rejected", "[io][negative]") {
  const auto dir = scratch_dir("io_bad");
  Grid3 g(4, 1.0);
  const auto path = dir + "/v.f3d";
  write_field(path, random_vector(g, 3));
  const auto good = slurp(path);

  auto bad = good;
  bad[0] = 'X';
  spit(path, bad);
  CHECK_THROWS_WITH(read_field(path), Catch::Matchers::ContainsSubstring(path) &&
                                          Catch::Matchers::ContainsSubstring("magic"));

  bad = good;
  bad.resize(good.size() - 8);
  spit(path, bad);
  CHECK_THROWS_AS(read_field(path), FormatError);

  bad = good;
  bad.resize(20);
  spit(path, bad);
  CHECK_THROWS_AS(read_field(path), FormatError);

  bad = good;
  bad[4] = 2;  // version
  spit(path, bad);
  CHECK_THROWS_AS(read_field(path), FormatError);

  bad = good;
  bad[8] = 2;  // rank
  spit(path, bad);
  CHECK_THROWS_AS(read_field(path), FormatError);

  bad = good;
  bad[13] = 5;  // ny != nx
  spit(path, bad);
  CHECK_THROWS_AS(read_field(path), FormatError);

  CHECK_THROWS_AS(read_field(dir + "/missing.f3d"), IoError);
  CHECK_THROWS_AS(write_field(dir + "/no/such/dir/x.f3d", random_vector(g, 3)), IoError);
}

TEST_CASE("slice csv", "[io][csv]") {
  const auto dir = scratch_dir("io_csv");
  Grid3 g(4, 4.0);
  VectorField3 v(g);
  v.set(g.index(1, 2, 3), CVec3{Complex(3.0, 0.0), Complex(0.0, 4.0), Complex(0.1, 0.0)});
  write_slice_csv(dir + "/s.csv", v, 3);
  std::ifstream in(dir + "/s.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,abs,re0,im0,re1,im1,re2,im2");
  int rows = 0;
  bool found = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("1,2,", 0) == 0) {
      found = true;
      char expect[128];
      std::snprintf(expect, sizeof expect, "1,2,%.17g,3,0,0,4,%.17g,0", std::sqrt(9.0 + 16.0 + 0.1 * 0.1), 0.1);
      CHECK(line == expect);
    }
  }
  CHECK(rows == 16);
  CHECK(found);
  CHECK_THROWS_AS(write_slice_csv(dir + "/s.csv", v, 4), std::invalid_argument);
}
