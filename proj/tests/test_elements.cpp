#include <doctest.h>

#include <cmath>
#include <vector>

#include "interf/elements.hpp"
#include "support/generators.hpp"

using namespace interf;
using interf::testing::Gen;

TEST_CASE("rotator") {
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(rotator(M_PI / 2), Element2{h, -h, h, h}) < 1e-15);
  CHECK(max_abs_diff(rotator(0.0), Element2::identity()) == 0.0);
  CHECK(max_abs_diff(rotator(M_PI), Element2{0.0, -1.0, 1.0, 0.0}) < 1e-15);
  // Applied to (1, 0): lower component is +sin(theta/2).
  const Element2 r = rotator(0.9);
  CHECK(r.gamma.real() == doctest::Approx(std::sin(0.45)));
}

TEST_CASE("phase_shifter") {
  CHECK(max_abs_diff(phase_shifter(0.0), Element2::identity()) == 0.0);
  CHECK(max_abs_diff(phase_shifter(M_PI), Element2{Complex(0, -1), 0.0, 0.0, Complex(0, 1)}) < 1e-15);
  const StokesVector pure{1, 1, 0, 0};
  CHECK(max_abs_diff(lift(phase_shifter(1.234)) * pure, pure) < 1e-15);
}

TEST_CASE("squeezer") {
  CHECK(max_abs_diff(squeezer(0.0), Element2::identity()) == 0.0);
  CHECK(max_abs_diff(squeezer(2.0 * std::log(2.0)), Element2{2.0, 0.0, 0.0, 0.5}) < 1e-15);
}

TEST_CASE("attenuator") {
  SUBCASE("no loss") {
    const Attenuation a = attenuator(0.0, 0.0);
    CHECK(a.overall == 1.0);
    CHECK(max_abs_diff(a.element, Element2::identity()) == 0.0);
  }
  SUBCASE("equal rates leave polarization alone") {
    const Attenuation a = attenuator(0.4, 0.4);
    CHECK(a.overall == doctest::Approx(std::exp(-0.4)).epsilon(1e-15));
    CHECK(max_abs_diff(a.element, Element2::identity()) == 0.0);
  }
  SUBCASE("unequal rates") {
    const Attenuation a = attenuator(0.1, 0.3);
    CHECK(a.overall == doctest::Approx(std::exp(-0.2)).epsilon(1e-15));
    CHECK(max_abs_diff(a.element, squeezer(0.2)) < 1e-15);
  }
  SUBCASE("factorization reproduces diag(e^-eta1, e^-eta2)") {
    Gen gen(21);
    for (int i = 0; i < 200; ++i) {
      const double e1 = gen.uniform(0, 3), e2 = gen.uniform(0, 3);
      const Attenuation a = attenuator(e1, e2);
      CHECK(std::abs(a.overall * a.element.alpha - std::exp(-e1)) < 1e-14);
      CHECK(std::abs(a.overall * a.element.delta - std::exp(-e2)) < 1e-14);
    }
  }
  SUBCASE("intensity scales by overall^2") {
    const Attenuation a = attenuator(0.2, 0.2);
    const CoherencyMatrix c = conjugate({1.0, 0.0, 0.0}, a.element);
    CHECK(a.overall * a.overall * c.trace() == doctest::Approx(std::exp(-0.4)));
  }
  CHECK_THROWS_AS(attenuator(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(attenuator(0.0, -1.0), DomainError);
}

TEST_CASE("split_angle") {
  CHECK(split_angle(0.5) == doctest::Approx(-M_PI / 2).epsilon(1e-15));
  CHECK(split_angle(1.0) == 0.0);
  CHECK(split_angle(0.0) == doctest::Approx(-M_PI));
  for (double ratio : {0.1, 0.25, 0.9}) {
    const double c = std::cos(0.5 * split_angle(ratio));
    CHECK(c * c == doctest::Approx(ratio).epsilon(1e-14));
  }
  CHECK_THROWS_AS(split_angle(1.5), DomainError);
  CHECK_THROWS_AS(split_angle(-0.1), DomainError);
}

TEST_CASE("every constructor is unimodular") {
  Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    const double x = gen.uniform(-10, 10);
    CHECK(std::abs(rotator(x).det() - 1.0) < 1e-14);
    CHECK(std::abs(phase_shifter(x).det() - 1.0) < 1e-14);
    CHECK(std::abs(squeezer(x).det() - 1.0) < 1e-14);
  }
}

TEST_CASE("closed-form 4x4 elements equal the lift") {
  Gen gen(23);
  for (int i = 0; i < 300; ++i) {
    const double x = gen.uniform(-4, 4);
    CHECK(max_abs_diff(rotator4(x), lift(rotator(x))) < 1e-14);
    CHECK(max_abs_diff(phase4(x), lift(phase_shifter(x))) < 1e-14);
    CHECK(max_abs_diff(squeeze4(x), lift(squeezer(x))) < 1e-13 * std::cosh(x));
  }
}

TEST_CASE("4x4 element structure") {
  const double t = 0.77;
  const Transform4 r = rotator4(t);
  CHECK(r(1, 1) == std::cos(t));
  CHECK(r(1, 2) == -std::sin(t));
  CHECK(r(2, 1) == std::sin(t));
  CHECK(r(2, 2) == std::cos(t));

  const double eta = 0.45;
  const StokesVector boosted = squeeze4(eta) * StokesVector{1, 0, 0, 0};
  CHECK(max_abs_diff(boosted, {std::cosh(eta), std::sinh(eta), 0, 0}) == 0.0);

  const Transform4 p = phase4(1.3);
  const StokesVector s{2.0, 0.5, 0.3, -0.4};
  const StokesVector q = p * s;
  CHECK(q.s0 == s.s0);
  CHECK(q.s1 == s.s1);
}

TEST_CASE("compose") {
  const std::vector<Element2> one{rotator(0.3)};
  CHECK(max_abs_diff(compose(one), rotator(0.3)) == 0.0);

  const std::vector<Element2> two{rotator(0.3), rotator(1.1)};
  CHECK(max_abs_diff(compose(two), rotator(1.4)) < 1e-15);

  // First listed element meets the beam first.
  const std::vector<Element2> chain{squeezer(0.5), rotator(0.7)};
  CHECK(max_abs_diff(compose(chain), rotator(0.7) * squeezer(0.5)) == 0.0);

  CHECK(max_abs_diff(compose({}), Element2::identity()) == 0.0);

  const std::vector<Element2> bad{rotator(0.1), Element2{2.0, 0.0, 0.0, 2.0}};
  CHECK_THROWS_AS(compose(bad), DomainError);
}

TEST_CASE("commutation") {
  Gen gen(24);
  for (int i = 0; i < 100; ++i) {
    const double phi = gen.uniform(-3, 3), eta = gen.uniform(-2, 2), th = gen.uniform(0.2, 2.5);
    CHECK(max_abs_diff(phase_shifter(phi) * squeezer(eta), squeezer(eta) * phase_shifter(phi)) < 1e-15);
    CHECK(max_abs_diff(phase4(phi) * squeeze4(eta), squeeze4(eta) * phase4(phi)) < 1e-12);
    if (std::abs(eta) > 0.1)
      CHECK(max_abs_diff(rotator4(th) * squeeze4(eta), squeeze4(eta) * rotator4(th)) > 1e-3);
  }
}

TEST_CASE("compose is a homomorphism under lift") {
  Gen gen(25);
  for (int i = 0; i < 200; ++i) {
    std::vector<Element2> chain;
    Transform4 expected = Transform4::identity();
    for (int k = 0; k < 5; ++k) {
      chain.push_back(gen.coherent_factor());
      expected = lift(chain.back()) * expected;
    }
    CHECK(max_abs_diff(lift(compose(chain)), expected) < 1e-10);
  }
}

TEST_CASE("realize") {
  CHECK(max_abs_diff(realize(spec::Rotation{0.4}).element, rotator(0.4)) == 0.0);
  CHECK(max_abs_diff(realize(spec::PhaseShift{0.4}).element, phase_shifter(0.4)) == 0.0);
  CHECK(max_abs_diff(realize(spec::Squeeze{0.4}).element, squeezer(0.4)) == 0.0);
  CHECK(realize(spec::Attenuate{0.1, 0.3}).overall == doctest::Approx(std::exp(-0.2)));
  CHECK_THROWS_AS(realize(spec::General{Element2{1.0, 1.0, 0.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(realize(spec::Rotation{NAN}), DomainError);
}
