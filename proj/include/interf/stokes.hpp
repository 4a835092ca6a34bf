/**
 * @file stokes.hpp
 * @brief Two-beam state types and the SL(2,C) -> SO(3,1) lift.
 *
 * A coherent two-beam state is a Jones vector (psi1, psi2). Its coherency
 * matrix C has entries S_ij = <psi_i^* psi_j>, and the four Stokes
 * parameters
 *
 *   S0 = S11 + S22,  S1 = S11 - S22,  S2 = S12 + S21,  S3 = -i (S12 - S21)
 *
 * form a Minkowski four-vector with S0 as the time component. A unimodular
 * 2x2 element G acts on C as C -> G C G^dagger; the induced real 4x4 map on
 * Stokes vectors is a proper orthochronous Lorentz transformation.
 */

#pragma once

#include <array>
#include <complex>

#include "interf/error.hpp"

namespace interf {

using Complex = std::complex<double>;

inline constexpr double kUnimodularTol = 1e-12;  // absolute, on |det - 1|
inline constexpr double kLorentzTol = 1e-10;     // max |M^T g M - g|
inline constexpr double kClassifyTol = 1e-9;     // relative to s0^2

struct JonesVector {
  Complex psi1{};
  Complex psi2{};

  double intensity() const { return std::norm(psi1) + std::norm(psi2); }
};

/// 2x2 complex matrix [[alpha, beta], [gamma, delta]]. Optical elements and
/// chains of them are unimodular; the type itself does not enforce it so
/// that intermediate products can be formed freely.
struct Element2 {
  Complex alpha{1.0};
  Complex beta{};
  Complex gamma{};
  Complex delta{1.0};

  static Element2 identity() { return {}; }

  Complex det() const { return alpha * delta - beta * gamma; }
  bool is_unimodular(double tol = kUnimodularTol) const;
  Element2 adjoint() const;
  Element2 conjugated() const;  // entrywise complex conjugate
  Element2 operator-() const { return {-alpha, -beta, -gamma, -delta}; }
};

Element2 operator*(const Element2& a, const Element2& b);
double max_abs_diff(const Element2& a, const Element2& b);

/// Throws DomainError unless |det(g) - 1| <= tol.
void require_unimodular(const Element2& g, double tol = kUnimodularTol);

/// Hermitian coherency (density) matrix; s21 is conj(s12).
struct CoherencyMatrix {
  double s11 = 0.0;
  double s22 = 0.0;
  Complex s12{};

  Complex s21() const { return std::conj(s12); }
  double trace() const { return s11 + s22; }
  double det() const { return s11 * s22 - std::norm(s12); }
};

double max_abs_diff(const CoherencyMatrix& a, const CoherencyMatrix& b);

/// Positive trace and positive semidefinite within `tol`.
bool is_physical(const CoherencyMatrix& c, double tol = 1e-12);

struct StokesVector {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double operator[](int i) const;
  double& operator[](int i);

  double polarized_intensity() const;  // |(s1, s2, s3)|
};

double max_abs_diff(const StokesVector& a, const StokesVector& b);

/// s0 >= 0 and on or inside the light cone within rel_tol * s0^2.
bool is_physical(const StokesVector& s, double rel_tol = kClassifyTol);

/// Real 4x4 map on Stokes vectors, row-major. `kind` records whether the
/// matrix came from the Lorentz group (a lift or a product of lifts) or is a
/// general map such as the decoherence matrix.
struct Transform4 {
  enum class Kind { lorentz, general };

  std::array<std::array<double, 4>, 4> m{};
  Kind kind = Kind::general;

  static Transform4 identity();
  static Transform4 diagonal(double d0, double d1, double d2, double d3,
                             Kind kind = Kind::general);

  double operator()(int row, int col) const { return m[row][col]; }
  double& operator()(int row, int col) { return m[row][col]; }
  bool is_lorentz() const { return kind == Kind::lorentz; }
};

Transform4 operator*(const Transform4& a, const Transform4& b);
StokesVector operator*(const Transform4& t, const StokesVector& s);
double max_abs_diff(const Transform4& a, const Transform4& b);

/// max |M^T g M - g| with g = diag(1, -1, -1, -1).
double metric_defect(const Transform4& t);

/// g M^T g, the inverse of a Lorentz matrix.
Transform4 lorentz_inverse(const Transform4& t);

CoherencyMatrix coherency_from_jones(const JonesVector& j);
StokesVector stokes_from_coherency(const CoherencyMatrix& c);

/// Inverse of stokes_from_coherency. Throws DomainError for s0 < 0 or a
/// spacelike vector.
CoherencyMatrix coherency_from_stokes(const StokesVector& s);

/// G C G^dagger.
CoherencyMatrix conjugate(const CoherencyMatrix& c, const Element2& g);

/// Jones vector transported so that coherency_from_jones(act(g, j)) equals
/// conjugate(coherency_from_jones(j), g). Because S12 = <psi1^* psi2>, the
/// coherency matrix is the conjugate of psi psi^dagger and the amplitudes
/// move with conj(G). For real elements (rotators, squeezers) this is G psi.
JonesVector act(const Element2& g, const JonesVector& j);

/// The Lorentz matrix M with stokes(G C G^dagger) = M stokes(C). Throws
/// DomainError if g is not unimodular.
Transform4 lift(const Element2& g);

struct PurityReport {
  double trace = 0.0;
  double trace_sq = 0.0;  // tr(rho^2) of the trace-normalized matrix
  double det = 0.0;       // det of the trace-normalized matrix
  double degree_of_polarization = 0.0;
};

/// Throws DomainError if the trace is not positive.
PurityReport purity_report(const CoherencyMatrix& c);

/// s0^2 - s1^2 - s2^2 - s3^2, equal to 4 det(C).
double minkowski_norm(const StokesVector& s);

}  // namespace interf
