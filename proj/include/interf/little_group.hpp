/**
 * @file little_group.hpp
 * @brief Little groups of pure (lightlike) and impure (timelike) Stokes
 *        vectors, state classification and the standard-form reduction.
 *
 * The pure standard vector (1, 1, 0, 0) is fixed by the phase shifter and by
 * the two commuting null rotations F1(u), F2(v); together they form an
 * E(2)-like group. The impure standard vector (1, 0, 0, 0) is fixed by the
 * rotation group generated by rotator4 and phase4. Boosting the impure
 * standard vector along S1 and letting the rapidity grow contracts the
 * rotation little group towards the pure one.
 */

#pragma once

#include <optional>
#include <string_view>

#include "interf/stokes.hpp"

namespace interf {

enum class StateTag { pure, impure, boundary_ambiguous, non_physical };

std::string_view to_string(StateTag tag);

struct StateClass {
  StateTag tag = StateTag::non_physical;
  double invariant_norm = 0.0;  // minkowski_norm of the classified vector
  /// Rapidity of the S1 boost taking (c, 0, 0, 0) to the state once its
  /// polarization part is aligned with the S1 axis. Signed: it carries the
  /// sign of s1 (positive when s1 == 0), so diagonal states need no
  /// rotation. Present for impure states only.
  std::optional<double> eta_to_standard;
};

/// Three-way light-cone test with tolerance rel_tol * s0^2. Throws
/// DomainError unless s0 > 0.
StateClass classify(const StokesVector& s, double rel_tol = kClassifyTol);

struct Standardization {
  Transform4 transform;   // Lorentz, transform * s == standard
  StokesVector standard;  // (c, 0, 0, 0) impure, (c, c, 0, 0) pure
};

/// Reduces s to its standard vector with a phase shift and a rotation that
/// align (s1, s2, s3) with the S1 axis, followed by squeeze4(-eta) for
/// impure states. Throws DomainError for non-physical input.
Standardization standardize(const StokesVector& s, double rel_tol = kClassifyTol);

/// Null rotations fixing (1, 1, 0, 0).
Transform4 f1(double u);
Transform4 f2(double v);

/// f1(u) * f2(v), formed by multiplication.
Transform4 f_product(double u, double v);

struct LittleGroupParams {
  double phi = 0.0;    // phase shifter, both classes
  double u = 0.0;      // pure only
  double v = 0.0;      // pure only
  double theta = 0.0;  // impure only
};

/// Pure: phase4(phi) * f1(u) * f2(v). Impure: rotator4(theta) * phase4(phi).
/// Both act in the standard frame. Throws DomainError for other tags.
Transform4 little_group_element(const StateClass& cls, const LittleGroupParams& p);

/// The same element carried to the frame of s: T^-1 L T where T is the
/// standardizing transform. The result fixes s itself.
Transform4 little_group_element_at(const StokesVector& s, const LittleGroupParams& p,
                                   double rel_tol = kClassifyTol);

/// squeeze4(eta) * rotator4(theta) * squeeze4(-eta). Fixes (cosh eta, sinh eta, 0, 0).
Transform4 conjugated_rotation(double theta, double eta);

/// Parameters of the closed-form interpolation between the rotation
/// (alpha = 0) and F1 (alpha = 1) little-group matrices.
struct InterpolationParams {
  double alpha = 0.0;
  double u = 0.0;
  double w = 1.0;

  /// alpha = tanh(eta), u = -2 tan(theta/2),
  /// w = 1 / (1 + (1 - alpha^2) tan^2(theta/2)).
  static InterpolationParams from_rotation(double theta, double eta);

  /// Same w, with tan(theta/2) = -u/2. Throws DomainError for alpha
  /// outside [0, 1].
  static InterpolationParams from_alpha(double alpha, double u);
};

/// Closed-form interpolating matrix in (alpha, u, w). It is not claimed equal
/// to conjugated_rotation for 0 < alpha < 1. Throws DomainError for alpha
/// outside [0, 1].
Transform4 closed_form_family(const InterpolationParams& p);

struct FamilyDiagnostics {
  double metric_defect = 0.0;         // max |M^T g M - g|
  double fixed_point_residual = 0.0;  // max |M x - x|, x = (1, alpha, 0, 0)
  double fixed_point_det = 0.0;       // det of the unit-trace state x: (1 - alpha^2)/4
};

FamilyDiagnostics family_diagnostics(const InterpolationParams& p);

}  // namespace interf
