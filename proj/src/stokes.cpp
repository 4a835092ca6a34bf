#include "interf/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace interf {

bool Element2::is_unimodular(double tol) const {
  return std::abs(det() - 1.0) <= tol;
}

Element2 Element2::adjoint() const {
  return {std::conj(alpha), std::conj(gamma), std::conj(beta), std::conj(delta)};
}

Element2 Element2::conjugated() const {
  return {std::conj(alpha), std::conj(beta), std::conj(gamma), std::conj(delta)};
}

Element2 operator*(const Element2& a, const Element2& b) {
  return {a.alpha * b.alpha + a.beta * b.gamma, a.alpha * b.beta + a.beta * b.delta,
          a.gamma * b.alpha + a.delta * b.gamma, a.gamma * b.beta + a.delta * b.delta};
}

double max_abs_diff(const Element2& a, const Element2& b) {
  return std::max({std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta),
                   std::abs(a.gamma - b.gamma), std::abs(a.delta - b.delta)});
}

void require_unimodular(const Element2& g, double tol) {
  if (!g.is_unimodular(tol)) {
    std::ostringstream os;
    os << "element is not unimodular: |det - 1| = " << std::abs(g.det() - 1.0);
    throw DomainError(os.str());
  }
}

double max_abs_diff(const CoherencyMatrix& a, const CoherencyMatrix& b) {
  return std::max({std::abs(a.s11 - b.s11), std::abs(a.s22 - b.s22),
                   std::abs(a.s12 - b.s12)});
}

bool is_physical(const CoherencyMatrix& c, double tol) {
  return std::isfinite(c.s11) && std::isfinite(c.s22) && std::isfinite(c.s12.real()) &&
         std::isfinite(c.s12.imag()) && c.s11 >= -tol && c.s22 >= -tol &&
         c.trace() > 0.0 && c.det() >= -tol;
}

double StokesVector::operator[](int i) const {
  switch (i) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    default: return s3;
  }
}

double& StokesVector::operator[](int i) {
  switch (i) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    default: return s3;
  }
}

double StokesVector::polarized_intensity() const {
  return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

double max_abs_diff(const StokesVector& a, const StokesVector& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool is_physical(const StokesVector& s, double rel_tol) {
  for (int i = 0; i < 4; ++i)
    if (!std::isfinite(s[i])) return false;
  return s.s0 >= 0.0 && minkowski_norm(s) >= -rel_tol * s.s0 * s.s0;
}

Transform4 Transform4::identity() {
  return diagonal(1.0, 1.0, 1.0, 1.0, Kind::lorentz);
}

Transform4 Transform4::diagonal(double d0, double d1, double d2, double d3, Kind kind) {
  Transform4 t;
  t.m[0][0] = d0;
  t.m[1][1] = d1;
  t.m[2][2] = d2;
  t.m[3][3] = d3;
  t.kind = kind;
  return t;
}

Transform4 operator*(const Transform4& a, const Transform4& b) {
  Transform4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a.m[i][k] * b.m[k][j];
      r.m[i][j] = acc;
    }
  r.kind = (a.is_lorentz() && b.is_lorentz()) ? Transform4::Kind::lorentz
                                              : Transform4::Kind::general;
  return r;
}

StokesVector operator*(const Transform4& t, const StokesVector& s) {
  StokesVector r;
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += t.m[i][k] * s[k];
    r[i] = acc;
  }
  return r;
}

double max_abs_diff(const Transform4& a, const Transform4& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a.m[i][j] - b.m[i][j]));
  return d;
}

namespace {

constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

}  // namespace

double metric_defect(const Transform4& t) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += t.m[k][i] * kMetric[k] * t.m[k][j];
      double target = (i == j) ? kMetric[i] : 0.0;
      d = std::max(d, std::abs(acc - target));
    }
  return d;
}

Transform4 lorentz_inverse(const Transform4& t) {
  Transform4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = kMetric[i] * t.m[j][i] * kMetric[j];
  r.kind = t.kind;
  return r;
}

CoherencyMatrix coherency_from_jones(const JonesVector& j) {
  return {std::norm(j.psi1), std::norm(j.psi2), std::conj(j.psi1) * j.psi2};
}

StokesVector stokes_from_coherency(const CoherencyMatrix& c) {
  const Complex s21 = c.s21();
  const Complex s3 = Complex(0.0, -1.0) * (c.s12 - s21);
  return {c.s11 + c.s22, c.s11 - c.s22, (c.s12 + s21).real(), s3.real()};
}

CoherencyMatrix coherency_from_stokes(const StokesVector& s) {
  if (!is_physical(s)) {
    std::ostringstream os;
    os << "non-physical Stokes vector (" << s.s0 << ", " << s.s1 << ", " << s.s2 << ", "
       << s.s3 << "): requires s0 >= 0 and s0^2 >= s1^2 + s2^2 + s3^2";
    throw DomainError(os.str());
  }
  return {0.5 * (s.s0 + s.s1), 0.5 * (s.s0 - s.s1), Complex(0.5 * s.s2, 0.5 * s.s3)};
}

CoherencyMatrix conjugate(const CoherencyMatrix& c, const Element2& g) {
  const Element2 cm{c.s11, c.s12, c.s21(), c.s22};
  const Element2 r = g * cm * g.adjoint();
  // Re-impose Hermiticity: the diagonal of G C G^dagger is real up to rounding.
  return {r.alpha.real(), r.delta.real(), 0.5 * (r.beta + std::conj(r.gamma))};
}

JonesVector act(const Element2& g, const JonesVector& j) {
  const Element2 h = g.conjugated();
  return {h.alpha * j.psi1 + h.beta * j.psi2, h.gamma * j.psi1 + h.delta * j.psi2};
}

namespace {

// Coherency-side basis tau_k with C = (1/2) sum_k S_k tau_k and S_k = tr(tau_k C):
// identity, diag(1,-1), real off-diagonal, and [[0, i], [-i, 0]].
const std::array<Element2, 4>& stokes_basis() {
  static const std::array<Element2, 4> basis{
      Element2{1.0, 0.0, 0.0, 1.0},
      Element2{1.0, 0.0, 0.0, -1.0},
      Element2{0.0, 1.0, 1.0, 0.0},
      Element2{0.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 0.0},
  };
  return basis;
}

Complex trace_of_product(const Element2& a, const Element2& b) {
  return a.alpha * b.alpha + a.beta * b.gamma + a.gamma * b.beta + a.delta * b.delta;
}

}  // namespace

Transform4 lift(const Element2& g) {
  require_unimodular(g);
  const auto& tau = stokes_basis();
  const Element2 gd = g.adjoint();
  Transform4 t;
  t.kind = Transform4::Kind::lorentz;
  for (int j = 0; j < 4; ++j) {
    const Element2 image = g * tau[j] * gd;
    for (int k = 0; k < 4; ++k) t.m[k][j] = 0.5 * trace_of_product(tau[k], image).real();
  }
  return t;
}

PurityReport purity_report(const CoherencyMatrix& c) {
  const double tr = c.trace();
  if (!(tr > 0.0)) throw DomainError("purity report requires a positive trace");
  const double r11 = c.s11 / tr;
  const double r22 = c.s22 / tr;
  const double off = std::norm(c.s12) / (tr * tr);
  const StokesVector s = stokes_from_coherency(c);
  return {tr, r11 * r11 + r22 * r22 + 2.0 * off, r11 * r22 - off,
          s.polarized_intensity() / s.s0};
}

double minkowski_norm(const StokesVector& s) {
  return s.s0 * s.s0 - s.s1 * s.s1 - s.s2 * s.s2 - s.s3 * s.s3;
}

}  // namespace interf
