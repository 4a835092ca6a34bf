#include "interf/little_group.hpp"

#include <cmath>
#include <sstream>

#include "interf/elements.hpp"

namespace interf {

std::string_view to_string(StateTag tag) {
  switch (tag) {
    case StateTag::pure: return "pure";
    case StateTag::impure: return "impure";
    case StateTag::boundary_ambiguous: return "boundary-ambiguous";
    case StateTag::non_physical: return "non-physical";
  }
  return "non-physical";
}

StateClass classify(const StokesVector& s, double rel_tol) {
  if (!(s.s0 > 0.0) || !std::isfinite(s.s0))
    throw DomainError("classification requires s0 > 0");
  StateClass out;
  out.invariant_norm = minkowski_norm(s);
  // Decide on the s0-normalized vector so that tiny intensities cannot
  // underflow the comparison.
  const StokesVector n{1.0, s.s1 / s.s0, s.s2 / s.s0, s.s3 / s.s0};
  const double norm = minkowski_norm(n);
  if (std::abs(norm) <= rel_tol) {
    out.tag = StateTag::pure;
  } else if (norm > 0.0) {
    out.tag = StateTag::impure;
    const double eta = std::atanh(n.polarized_intensity());
    out.eta_to_standard = (s.s1 < 0.0) ? -eta : eta;
  } else {
    out.tag = StateTag::non_physical;
  }
  return out;
}

Standardization standardize(const StokesVector& s, double rel_tol) {
  const StateClass cls = classify(s, rel_tol);
  if (cls.tag != StateTag::pure && cls.tag != StateTag::impure)
    throw DomainError("cannot standardize a non-physical Stokes vector");

  // phase4(phi) sends s2 + i s3 to exp(-i phi)(s2 + i s3); choose phi so the
  // result is real and nonnegative.
  const double phi = (s.s2 == 0.0 && s.s3 == 0.0) ? 0.0 : std::atan2(s.s3, s.s2);
  const double rho = std::hypot(s.s2, s.s3);

  // rotator4 turns (s1, s2) by +theta. Pure states land on +S1; impure ones
  // on the S1 half-axis matching the sign of s1.
  const bool negative = cls.tag == StateTag::impure && s.s1 < 0.0;
  const double current = std::atan2(rho, s.s1);
  const double theta = negative ? M_PI - current : -current;

  Transform4 t = rotator4(theta) * phase4(phi);
  Standardization out;
  if (cls.tag == StateTag::impure) {
    t = squeeze4(-*cls.eta_to_standard) * t;
    out.standard = {std::sqrt(cls.invariant_norm), 0.0, 0.0, 0.0};
  } else {
    out.standard = {s.s0, s.s0, 0.0, 0.0};
  }
  out.transform = t;
  return out;
}

Transform4 f1(double u) {
  Transform4 t = Transform4::identity();
  const double h = 0.5 * u * u;
  t(0, 0) = 1.0 + h;
  t(0, 1) = -h;
  t(0, 2) = u;
  t(1, 0) = h;
  t(1, 1) = 1.0 - h;
  t(1, 2) = u;
  t(2, 0) = u;
  t(2, 1) = -u;
  return t;
}

Transform4 f2(double v) {
  Transform4 t = Transform4::identity();
  const double h = 0.5 * v * v;
  t(0, 0) = 1.0 + h;
  t(0, 1) = -h;
  t(0, 3) = v;
  t(1, 0) = h;
  t(1, 1) = 1.0 - h;
  t(1, 3) = v;
  // Last row (v, -v, 0, 1): required for (1, 1, 0, 0) to stay fixed.
  t(3, 0) = v;
  t(3, 1) = -v;
  return t;
}

Transform4 f_product(double u, double v) { return f1(u) * f2(v); }

Transform4 little_group_element(const StateClass& cls, const LittleGroupParams& p) {
  switch (cls.tag) {
    case StateTag::pure: return phase4(p.phi) * f1(p.u) * f2(p.v);
    case StateTag::impure: return rotator4(p.theta) * phase4(p.phi);
    default:
      throw DomainError("little group is defined for pure or impure states only, got " +
                        std::string(to_string(cls.tag)));
  }
}

Transform4 little_group_element_at(const StokesVector& s, const LittleGroupParams& p,
                                   double rel_tol) {
  const Standardization st = standardize(s, rel_tol);
  const Transform4 local = little_group_element(classify(s, rel_tol), p);
  return lorentz_inverse(st.transform) * local * st.transform;
}

Transform4 conjugated_rotation(double theta, double eta) {
  return squeeze4(eta) * rotator4(theta) * squeeze4(-eta);
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "alpha must lie in [0, 1], got " << alpha;
    throw DomainError(os.str());
  }
}

}  // namespace

InterpolationParams InterpolationParams::from_rotation(double theta, double eta) {
  const double t = std::tan(0.5 * theta);
  const double alpha = std::tanh(eta);
  return {alpha, -2.0 * t, 1.0 / (1.0 + (1.0 - alpha * alpha) * t * t)};
}

InterpolationParams InterpolationParams::from_alpha(double alpha, double u) {
  require_alpha(alpha);
  const double t = -0.5 * u;
  return {alpha, u, 1.0 / (1.0 + (1.0 - alpha * alpha) * t * t)};
}

Transform4 closed_form_family(const InterpolationParams& p) {
  require_alpha(p.alpha);
  const double a = p.alpha, u = p.u, w = p.w;
  const double h = 0.5 * u * u * w;
  Transform4 t = Transform4::identity();
  t.kind = Transform4::Kind::general;
  t(0, 0) = 1.0 + a * h;
  t(0, 1) = -a * h;
  t(0, 2) = a * u * w;
  t(1, 0) = a * h;
  t(1, 1) = 1.0 - h;
  t(1, 2) = u * w;
  t(2, 0) = a * u * w;
  t(2, 1) = -u * w;
  t(2, 2) = 1.0 - (1.0 - a * a) * h;
  return t;
}

FamilyDiagnostics family_diagnostics(const InterpolationParams& p) {
  const Transform4 m = closed_form_family(p);
  const StokesVector x{1.0, p.alpha, 0.0, 0.0};
  return {metric_defect(m), max_abs_diff(m * x, x), 0.25 * minkowski_norm(x)};
}

}  // namespace interf
