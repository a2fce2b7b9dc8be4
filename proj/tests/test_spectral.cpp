#include <catch_amalgamated.hpp>

#include "fracmax/fft.hpp"
#include "fracmax/norms.hpp"
#include "fracmax/spectral.hpp"
#include "test_support.hpp"

using namespace fracmax;
using namespace testing_support;

namespace {
const double kTwoPi = 2.0 * kPi;
}

TEST_CASE("grid invariants", "[grid]") {
  CHECK_THROWS_AS(Grid3(6 - 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid3(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid3(8, 0.0), std::invalid_argument);

  Grid3 g(8, 3.0);
  int zeros = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (norm(g.frequency(i)) == 0.0) ++zeros;
  }
  CHECK(zeros == 1);
  CHECK(g.point(g.index(1, 2, 3))[2] == Catch::Approx(3 * 3.0 / 8));
  CHECK(g.signed_index(4) == -4);
  CHECK(g.signed_index(3) == 3);
}

TEST_CASE("forward transform matches a direct DFT sum", "[fft]") {
  Grid3 g(4, kTwoPi);
  const auto u = random_scalar(g, 3);
  const auto spec = fft::forward(u);
  double worst = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    const auto km = g.unravel(m);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto xj = g.unravel(j);
      const double phase = -kTwoPi * (km[0] * xj[0] + km[1] * xj[1] + km[2] * xj[2]) / 4.0;
      acc += u[j] * std::exp(Complex(0.0, phase));
    }
    worst = std::max(worst, std::abs(acc - spec[m]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("fft round trip and Parseval", "[fft]") {
  Grid3 g(16, 5.0);
  const auto u = random_scalar(g, 11);
  const auto spec = fft::forward(u);
  CHECK(rel_err(fft::inverse(g, spec), u) <= 1e-13);
  double e_real = 0.0, e_spec = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    e_real += std::norm(u[i]);
    e_spec += std::norm(spec[i]);
  }
  CHECK(std::abs(e_spec / static_cast<double>(g.size()) - e_real) / e_real <= 1e-13);
}

TEST_CASE("frac_laplacian on single modes", "[spectral]") {
  Grid3 g(16, kTwoPi);
  SECTION("unit frequency is a fixed point") {
    const auto u = plane_wave(g, {1, 0, 0});
    CHECK(rel_err(frac_laplacian(u, 0.75), u) <= 1e-13);
  }
  SECTION("|xi| = 2 with t = 1/2 doubles the wave") {
    const auto u = plane_wave(g, {2, 0, 0});
    CHECK(rel_err(frac_laplacian(u, 0.5), 2.0 * u) <= 1e-13);
  }
  SECTION("constants are annihilated") {
    ScalarField one(g);
    for (auto& v : one.values()) v = 1.0;
    CHECK(max_abs(frac_laplacian(one, 0.5)) <= 1e-14);
    CHECK(max_abs(riesz_potential(one, 0.5)) <= 1e-14);
  }
  SECTION("t = 0 is the identity exactly") {
    const auto u = random_scalar(g, 5);
    CHECK(frac_laplacian(u, 0.0).values() == u.values());
  }
  SECTION("riesz potential symbol") {
    const auto u = plane_wave(g, {2, 0, 0});
    CHECK(rel_err(riesz_potential(u, 0.5), std::pow(2.0, -0.5) * u) <= 1e-13);
    CHECK_THROWS_AS(riesz_potential(u, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(riesz_potential(u, 0.0), std::invalid_argument);
  }
}

TEST_CASE("non-finite input names its index", "[spectral]") {
  Grid3 g(4, 1.0);
  ScalarField u(g);
  u[g.index(1, 2, 3)] = std::nan("");
  try {
    (void)frac_laplacian(u, 0.5);
    FAIL("expected rejection");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("index 57") != std::string::npos);
  }
}

TEST_CASE("multiplier composition and round trips", "[spectral][property]") {
  Grid3 g(16, 4.0);
  const auto u = remove_mean(random_scalar(g, 21));
  const double orders[] = {0.25, -0.25, 0.5, -0.5, 0.75};
  for (double a : orders) {
    for (double b : orders) {
      const auto lhs = frac_laplacian(frac_laplacian(u, a), b);
      const auto rhs = frac_laplacian(u, a + b);
      INFO("a=" << a << " b=" << b);
      CHECK(rel_err(lhs, rhs) <= 1e-12);
    }
  }
  CHECK(rel_err(frac_laplacian(riesz_potential(u, 1.0), 0.5), u) <= 1e-12);
  const auto v = random_scalar(g, 22);
  CHECK(rel_err(riesz_potential(frac_laplacian(v, 0.75), 1.5), remove_mean(v)) <= 1e-12);
}

TEST_CASE("classical vector identities", "[spectral][property]") {
  Grid3 g(16, 3.0);
  const auto u = random_scalar(g, 1);
  const auto v = random_vector(g, 2);
  CHECK(l2_norm(curl(grad(u))) <= 1e-13 * l2_norm(grad(u)));
  CHECK(l2_norm(div(curl(v))) <= 1e-13 * l2_norm(curl(v)));
  CHECK(rel_err(curl_curl(v), grad(div(v)) - laplacian(v)) <= 1e-13);

  SECTION("curl_curl of a single mode") {
    const Vec3 xi{2 * kTwoPi / 3.0, -kTwoPi / 3.0, 3 * kTwoPi / 3.0};
    const CVec3 amp{Complex(1, 2), Complex(-0.5, 0), Complex(0, 1)};
    const auto w = plane_wave(g, xi);
    const VectorField3 field(amp[0] * w, amp[1] * w, amp[2] * w);
    const Complex proj = dot(xi, amp);
    const double k2 = dot(xi, xi);
    const VectorField3 expected((k2 * amp[0] - xi[0] * proj) * w, (k2 * amp[1] - xi[1] * proj) * w,
                                (k2 * amp[2] - xi[2] * proj) * w);
    CHECK(rel_err(curl_curl(field), expected) <= 1e-13);
  }
  SECTION("divergence-free mode") {
    const Vec3 xi{kTwoPi / 3.0, 0, 0};
    const auto w = plane_wave(g, xi);
    const VectorField3 field(ScalarField(g), Complex(2.0) * w, Complex(0, 1) * w);
    CHECK(max_abs(div(field)) <= 1e-13);
  }
  SECTION("grid mismatch is rejected") {
    VectorField3 a(g);
    Grid3 other(8, 3.0);
    CHECK_THROWS_AS(VectorField3(ScalarField(g), ScalarField(other), ScalarField(g)), std::invalid_argument);
    CHECK_THROWS_AS(a + VectorField3(other), std::invalid_argument);
  }
}

TEST_CASE("real fields stay real under odd-order operators", "[spectral]") {
  Grid3 g(8, 2.0);
  auto u = random_scalar(g, 9);
  for (auto& v : u.values()) v = v.real();
  const auto gu = grad(u);
  double imag = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (const auto& v : gu[a].values()) imag = std::max(imag, std::abs(v.imag()));
  }
  CHECK(imag <= 1e-13);
}

TEST_CASE("linearity of spectral operators", "[spectral][property]") {
  Grid3 g(8, 2.5);
  const auto u1 = random_vector(g, 31), u2 = random_vector(g, 32);
  const Complex a(0.3, -1.2), b(-2.0, 0.5);
  const auto combo = a * u1 + b * u2;
  CHECK(rel_err(curl(combo), a * curl(u1) + b * curl(u2)) <= 1e-13);
  CHECK(rel_err(curl_curl(combo), a * curl_curl(u1) + b * curl_curl(u2)) <= 1e-13);
  CHECK(rel_err(frac_laplacian(combo, 0.37), a * frac_laplacian(u1, 0.37) + b * frac_laplacian(u2, 0.37)) <= 1e-13);
  CHECK(rel_err(div(combo), a * div(u1) + b * div(u2)) <= 1e-13);
  CHECK(rel_err(grad(combo[0]), a * grad(u1[0]) + b * grad(u2[0])) <= 1e-13);
}

TEST_CASE("weighted norms", "[norms]") {
  Grid3 g(16, kTwoPi);
  SECTION("zero field") {
    const auto n = weighted_norms(ScalarField(g), {1.0, 0.5});
    CHECK(n.l2_delta == 0.0);
    CHECK(n.hs_delta == 0.0);
  }
  SECTION("single mode, delta = 0") {
    const auto n = weighted_norms(plane_wave(g, {2, 0, 0}), {0.0, 0.5});
    const double L3 = std::pow(kTwoPi, 3);
    CHECK(n.hs_delta * n.hs_delta == Catch::Approx(L3 * 3.0).epsilon(1e-12));
  }
  SECTION("weight only increases the norm") {
    const auto u = random_vector(g, 4);
    CHECK(weighted_norms(u, {1.0, 0.75}).hs_delta >= weighted_norms(u, {0.0, 0.75}).hs_delta);
  }
  SECTION("negative delta rejected") {
    CHECK_THROWS_AS(weighted_norms(ScalarField(g), {-0.1, 0.5}), std::invalid_argument);
  }
}
