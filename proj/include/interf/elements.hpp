#pragma once

#include <span>
#include <variant>

#include "interf/stokes.hpp"

namespace interf {

/// Beam splitter / synthesizer, half-angle form:
/// [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
Element2 rotator(double theta);

/// diag(exp(-i phi/2), exp(i phi/2)).
Element2 phase_shifter(double phi);

/// diag(exp(eta/2), exp(-eta/2)).
Element2 squeezer(double eta);

struct Attenuation {
  double overall = 1.0;  // exp(-(eta1 + eta2)/2), multiplies the field
  Element2 element;      // squeezer(eta2 - eta1)
};

/// diag(exp(-eta1), exp(-eta2)) = overall * squeezer(eta2 - eta1).
/// Throws DomainError for negative exponents.
Attenuation attenuator(double eta1, double eta2);

/// Rotator angle that sends a fraction `ratio` of the intensity of (1, 0)
/// into the first beam: cos^2(theta/2) = ratio, with theta <= 0 so the
/// second output carries a -sin(theta/2) amplitude. ratio = 0.5 gives -pi/2.
double split_angle(double ratio);

Transform4 rotator4(double theta);
Transform4 phase4(double phi);
Transform4 squeeze4(double eta);

/// Ordered chain: elements.front() meets the beam first, so the result is
/// elements[n-1] * ... * elements[0]. Throws DomainError if any factor is
/// not unimodular.
Element2 compose(std::span<const Element2> elements);

namespace spec {

struct Rotation { double theta = 0.0; };
struct PhaseShift { double phi = 0.0; };
struct Attenuate { double eta1 = 0.0, eta2 = 0.0; };
struct Squeeze { double eta = 0.0; };
struct General { Element2 g; };

}  // namespace spec

using ElementSpec =
    std::variant<spec::Rotation, spec::PhaseShift, spec::Attenuate, spec::Squeeze, spec::General>;

/// Builds the unimodular element for a spec; `overall` is 1 except for
/// attenuators.
Attenuation realize(const ElementSpec& spec);

}  // namespace interf
