#include "interf/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace interf {

namespace {

constexpr double kDecomposeDetTol = 1e-10;

// Rotations with angle below this squeeze are treated as pure rotations.
constexpr double kRotationOnlyTol = 1e-14;

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * M_PI);
  return (x <= -M_PI) ? x + 2.0 * M_PI : x;
}

void require_unit_det(const Mat2& m) {
  if (!(std::abs(m.det() - 1.0) < kDecomposeDetTol)) {
    std::ostringstream os;
    os << "matrix is not unimodular: det = " << m.det();
    throw DomainError(os.str());
  }
}

}  // namespace

Transform4 decoherence4(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
  const double up = std::exp(lambda), down = std::exp(-lambda);
  return Transform4::diagonal(up, up, down, down, lambda == 0.0
                                                      ? Transform4::Kind::lorentz
                                                      : Transform4::Kind::general);
}

StokesVector decohere_channel(const StokesVector& s, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  if (!is_physical(s)) throw DomainError("decoherence channel requires a physical state");
  const double f = std::exp(-2.0 * lambda);
  return {s.s0, s.s1, f * s.s2, f * s.s3};
}

std::pair<SubVectorA, SubVectorB> split_subvectors(const StokesVector& s) {
  return {{s.s1, s.s2}, {s.s0, s.s3}};
}

StokesVector recombine(const SubVectorA& a, const SubVectorB& b) {
  return {b.s0, a.s1, a.s2, b.s3};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

SubVectorA operator*(const Mat2& m, const SubVectorA& v) {
  return {m.a * v.s1 + m.b * v.s2, m.c * v.s1 + m.d * v.s2};
}

double max_abs_diff(const Mat2& x, const Mat2& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                   std::abs(x.d - y.d)});
}

Mat2 d_a(double lambda) { return {std::exp(lambda), 0.0, 0.0, std::exp(-lambda)}; }
Mat2 d_b(double lambda) { return {std::exp(lambda), 0.0, 0.0, std::exp(-lambda)}; }

Mat2 r_a(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

Mat2 shear(double n) { return {1.0, n, 0.0, 1.0}; }

IwasawaFactors iwasawa_decompose(const Mat2& m) {
  require_unit_det(m);
  // QR on columns: the first column fixes the rotation and the scale.
  const double r11 = std::hypot(m.a, m.c);
  const double k = std::atan2(m.c, m.a);
  const double cs = m.a / r11, sn = m.c / r11;
  const double r12 = cs * m.b + sn * m.d;
  return {k, std::log(r11), r12 / r11};
}

double WignerFactors::wigner_angle() const {
  return wrap_angle(axis_angle + residual_rotation);
}

WignerFactors wigner_decompose(const Mat2& m) {
  require_unit_det(m);
  // Split m into a rotation part (e, h) and a reflection-like part (f, g):
  // m = [[e + f, g - h], [g + h, e - f]].
  const double e = 0.5 * (m.a + m.d);
  const double f = 0.5 * (m.a - m.d);
  const double g = 0.5 * (m.c + m.b);
  const double h = 0.5 * (m.c - m.b);
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  if (r <= kRotationOnlyTol * q) return {std::atan2(m.c, m.a), 0.0, 0.0};

  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  double psi = 0.5 * (a2 + a1);
  double omega = 0.5 * (a2 - a1);
  // r_a(psi + pi) d r_a(omega - pi) == r_a(psi) d r_a(omega).
  if (psi > M_PI_2) {
    psi -= M_PI;
    omega += M_PI;
  } else if (psi <= -M_PI_2) {
    psi += M_PI;
    omega -= M_PI;
  }
  return {psi, std::log(q + r), wrap_angle(omega)};
}

}  // namespace interf
