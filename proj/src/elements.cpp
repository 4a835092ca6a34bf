#include "interf/elements.hpp"

#include <cmath>
#include <sstream>

namespace interf {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Element2 rotator(double theta) {
  require_finite(theta, "rotation angle");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {c, -s, s, c};
}

Element2 phase_shifter(double phi) {
  require_finite(phi, "phase");
  return {std::polar(1.0, -0.5 * phi), 0.0, 0.0, std::polar(1.0, 0.5 * phi)};
}

Element2 squeezer(double eta) {
  require_finite(eta, "squeeze exponent");
  return {std::exp(0.5 * eta), 0.0, 0.0, std::exp(-0.5 * eta)};
}

Attenuation attenuator(double eta1, double eta2) {
  require_finite(eta1, "eta1");
  require_finite(eta2, "eta2");
  if (eta1 < 0.0 || eta2 < 0.0) {
    std::ostringstream os;
    os << "attenuation exponents must be nonnegative (eta1=" << eta1 << ", eta2=" << eta2
       << ")";
    throw DomainError(os.str());
  }
  return {std::exp(-0.5 * (eta1 + eta2)), squeezer(eta2 - eta1)};
}

double split_angle(double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0))
    throw DomainError("split ratio must lie in [0, 1]");
  return -2.0 * std::acos(std::sqrt(ratio));
}

// Closed forms of lift(rotator), lift(phase_shifter) and lift(squeezer).
// The phase shifter turns (S2, S3) by -phi: S12 picks up exp(-i phi).

Transform4 rotator4(double theta) {
  require_finite(theta, "rotation angle");
  Transform4 t = Transform4::identity();
  const double c = std::cos(theta), s = std::sin(theta);
  t(1, 1) = c;
  t(1, 2) = -s;
  t(2, 1) = s;
  t(2, 2) = c;
  return t;
}

Transform4 phase4(double phi) {
  require_finite(phi, "phase");
  Transform4 t = Transform4::identity();
  const double c = std::cos(phi), s = std::sin(phi);
  t(2, 2) = c;
  t(2, 3) = s;
  t(3, 2) = -s;
  t(3, 3) = c;
  return t;
}

Transform4 squeeze4(double eta) {
  require_finite(eta, "squeeze exponent");
  Transform4 t = Transform4::identity();
  const double c = std::cosh(eta), s = std::sinh(eta);
  t(0, 0) = c;
  t(0, 1) = s;
  t(1, 0) = s;
  t(1, 1) = c;
  return t;
}

Element2 compose(std::span<const Element2> elements) {
  Element2 acc = Element2::identity();
  for (const Element2& g : elements) {
    require_unimodular(g);
    acc = g * acc;
  }
  return acc;
}

Attenuation realize(const ElementSpec& spec) {
  return std::visit(
      overloaded{
          [](const spec::Rotation& r) { return Attenuation{1.0, rotator(r.theta)}; },
          [](const spec::PhaseShift& p) { return Attenuation{1.0, phase_shifter(p.phi)}; },
          [](const spec::Attenuate& a) { return attenuator(a.eta1, a.eta2); },
          [](const spec::Squeeze& s) { return Attenuation{1.0, squeezer(s.eta)}; },
          [](const spec::General& g) {
            require_unimodular(g.g);
            return Attenuation{1.0, g.g};
          },
      },
      spec);
}

}  // namespace interf
