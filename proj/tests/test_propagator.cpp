#include <cmath>
#include <numbers>

#include <afshar/propagator.hpp>

#include "test_support.hpp"

using namespace afshar;
using Catch::Approx;

TEST_CASE("kernel has unit modulus and the exact path phase") {
  const KernelSpec ks{1.0, 0.5};
  // straight through: path length 1, phase 2*pi/0.5 = 4*pi, so K = 1
  const cdouble k0 = kernel(ks, 0.0, 0.0);
  CHECK(k0.real() == Approx(1.0).margin(1e-12));
  CHECK(k0.imag() == Approx(0.0).margin(1e-12));

  // 3-4-5 triangle: path 5, phase 20*pi, K = 1 again
  const cdouble k1 = kernel(KernelSpec{4.0, 0.5}, 0.0, 3.0);
  CHECK(k1.real() == Approx(1.0).margin(1e-12));
  CHECK(k1.imag() == Approx(0.0).margin(1e-12));

  CHECK(std::abs(kernel(ks, 0.3e-3, -1.7e-3)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernel scale multiplies through") {
  const KernelSpec plain{0.7, 633e-9};
  KernelSpec scaled_ks = plain;
  scaled_ks.scale = cdouble{0.0, 2.0};
  const cdouble a = kernel(plain, 1e-4, -2e-4);
  const cdouble b = kernel(scaled_ks, 1e-4, -2e-4);
  CHECK(std::abs(b - cdouble{0.0, 2.0} * a) < 1e-14);
}

TEST_CASE("two point sources reproduce the exact interference law") {
  // Two unit emitters at -+s/2. The discrete sum is exactly
  // I(x) = 2 dx^2 (1 + cos(2 pi (L1 - L2)/lambda)), no approximation.
  const double s = 250e-6;
  const double z = 0.5;
  const double lambda = 650e-9;
  const Grid1D src = make_grid(-0.5 * s, 0.5 * s, 2);
  WaveField f = make_field(src);
  f.amp[0] = f.amp[1] = cdouble{1.0, 0.0};

  const Grid1D tgt = make_grid(-2e-3, 2e-3, 401);
  const WaveField out = propagate(f, tgt, KernelSpec{z, lambda});

  for (std::size_t k = 0; k < tgt.n; ++k) {
    const double x = tgt.position(k);
    const double l1 = std::hypot(x + 0.5 * s, z);
    const double l2 = std::hypot(x - 0.5 * s, z);
    const double expected = 2.0 * src.spacing * src.spacing *
                            (1.0 + std::cos(2.0 * std::numbers::pi * (l1 - l2) / lambda));
    CHECK(std::norm(out.amp[k]) == Approx(expected).margin(1e-12 * 2.0 * src.spacing * src.spacing));
  }
}

TEST_CASE("propagation is linear") {
  const Grid1D src = make_grid(-1e-4, 1e-4, 33);
  WaveField a = make_field(src), b = make_field(src);
  a.amp[4] = cdouble{0.7, -0.1};
  a.amp[20] = cdouble{-0.3, 0.9};
  b.amp[4] = cdouble{0.2, 0.5};
  b.amp[28] = cdouble{1.1, 0.0};

  WaveField ab = make_field(src);
  for (std::size_t k = 0; k < src.n; ++k) ab.amp[k] = a.amp[k] + b.amp[k];

  const Grid1D tgt = make_grid(-1e-3, 1e-3, 101);
  const KernelSpec ks{0.4, 633e-9};
  const WaveField pa = propagate(a, tgt, ks);
  const WaveField pb = propagate(b, tgt, ks);
  const WaveField pab = propagate(ab, tgt, ks);
  for (std::size_t k = 0; k < tgt.n; ++k)
    CHECK(std::abs(pab.amp[k] - (pa.amp[k] + pb.amp[k])) < 1e-12);
}

TEST_CASE("zero field propagates to zero without error") {
  const WaveField f = make_field(make_grid(-1e-4, 1e-4, 9));
  const WaveField out = propagate(f, make_grid(-1e-3, 1e-3, 11), KernelSpec{0.5, 650e-9});
  for (const cdouble& a : out.amp) CHECK(a == cdouble{});
}

TEST_CASE("a too-coarse target grid is rejected") {
  // 2 mm source extent at z = 0.5 m needs target samples every 81 um or
  // finer; 200 um spacing must be refused.
  const Grid1D src = make_grid(-2e-3, 2e-3, 2);
  WaveField f = make_field(src);
  f.amp[0] = f.amp[1] = cdouble{1.0, 0.0};
  const Grid1D tgt = make_grid(-2e-3, 2e-3, 21);
  expect_error(Errc::undersampled_source,
               [&] { propagate(f, tgt, KernelSpec{0.5, 650e-9}); });
}

TEST_CASE("propagate validates its geometry") {
  WaveField f = make_field(make_grid(-1e-4, 1e-4, 9));
  f.amp[4] = cdouble{1.0, 0.0};
  const Grid1D tgt = make_grid(-1e-3, 1e-3, 11);
  expect_error(Errc::out_of_range, [&] { propagate(f, tgt, KernelSpec{0.0, 650e-9}); });
  expect_error(Errc::out_of_range, [&] { propagate(f, tgt, KernelSpec{0.5, 0.0}); });
}

TEST_CASE("a global kernel phase leaves intensities unchanged") {
  const Grid1D src = make_grid(-1e-4, 1e-4, 17);
  WaveField f = make_field(src);
  f.amp[3] = cdouble{1.0, 0.2};
  f.amp[12] = cdouble{-0.4, 0.8};

  const Grid1D tgt = make_grid(-1e-3, 1e-3, 51);
  KernelSpec plain{0.5, 650e-9};
  KernelSpec rotated = plain;
  rotated.scale = cdouble{std::cos(0.3), std::sin(0.3)};
  const WaveField p = propagate(f, tgt, plain);
  const WaveField r = propagate(f, tgt, rotated);
  for (std::size_t k = 0; k < tgt.n; ++k)
    CHECK(std::norm(r.amp[k]) == Approx(std::norm(p.amp[k])).margin(1e-14));
}

TEST_CASE("illuminated_half_extent tracks the lit region") {
  const Grid1D g = make_grid(-1.0, 1.0, 21);
  WaveField f = make_field(g);
  CHECK(illuminated_half_extent(f) == 0.0);
  f.amp[12] = cdouble{1.0, 0.0};  // x = 0.2
  CHECK(illuminated_half_extent(f) == Approx(0.2).margin(1e-12));
  f.amp[1] = cdouble{0.0, 0.1};  // x = -0.9 dominates
  CHECK(illuminated_half_extent(f) == Approx(0.9).margin(1e-12));
}
