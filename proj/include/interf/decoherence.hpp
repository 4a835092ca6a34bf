#pragma once

#include <utility>

#include "interf/stokes.hpp"

namespace interf {

/// diag(e^l, e^l, e^-l, e^-l). Not a Lorentz matrix for l != 0; flagged
/// Transform4::Kind::general.
Transform4 decoherence4(double lambda);

/// Physical depolarizing channel e^-l * D(l) = diag(1, 1, e^-2l, e^-2l).
/// Throws DomainError for lambda < 0 or a non-physical input.
StokesVector decohere_channel(const StokesVector& s, double lambda);

struct SubVectorA {
  double s1 = 0.0;
  double s2 = 0.0;
};

struct SubVectorB {
  double s0 = 0.0;
  double s3 = 0.0;
};

std::pair<SubVectorA, SubVectorB> split_subvectors(const StokesVector& s);
StokesVector recombine(const SubVectorA& a, const SubVectorB& b);

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);
SubVectorA operator*(const Mat2& m, const SubVectorA& v);
double max_abs_diff(const Mat2& x, const Mat2& y);

Mat2 d_a(double lambda);  // diag(e^l, e^-l) on (s1, s2)
Mat2 d_b(double lambda);  // diag(e^l, e^-l) on (s0, s3)
Mat2 r_a(double theta);   // full-angle rotation on (s1, s2)
Mat2 shear(double n);     // [[1, n], [0, 1]]

/// m = r_a(k) * d_a(a) * shear(n), k in (-pi, pi].
struct IwasawaFactors {
  double k = 0.0;
  double a = 0.0;
  double n = 0.0;

  Mat2 recompose() const { return r_a(k) * d_a(a) * shear(n); }
};

/// Throws DomainError unless |det(m) - 1| < 1e-10.
IwasawaFactors iwasawa_decompose(const Mat2& m);

/// m = r_a(axis_angle) * d_a(squeeze_exponent) * r_a(residual_rotation) with
/// squeeze_exponent >= 0 and axis_angle in (-pi/2, pi/2]. A pure rotation
/// (squeeze_exponent == 0) is reported as (theta, 0, 0).
struct WignerFactors {
  double axis_angle = 0.0;
  double squeeze_exponent = 0.0;
  double residual_rotation = 0.0;

  /// Rotation left over when m is written as a symmetric squeeze times a
  /// rotation; normalized to (-pi, pi].
  double wigner_angle() const;
  Mat2 recompose() const {
    return r_a(axis_angle) * d_a(squeeze_exponent) * r_a(residual_rotation);
  }
};

/// Throws DomainError unless |det(m) - 1| < 1e-10.
WignerFactors wigner_decompose(const Mat2& m);

}  // namespace interf
