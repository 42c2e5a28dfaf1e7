#include "duality/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace duality {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double BlochVector::norm() const { return std::sqrt(norm2()); }

BlochVector operator+(const BlochVector& a, const BlochVector& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

BlochVector operator-(const BlochVector& a, const BlochVector& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

BlochVector operator*(double c, const BlochVector& s) {
  return {c * s.x, c * s.y, c * s.z};
}

Mat2 Mat2::identity() { return Mat2{{cplx(1), cplx(0), cplx(0), cplx(1)}}; }

Mat2 Mat2::adjoint() const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx Mat2::trace() const { return a[0] + a[3]; }

cplx Mat2::det() const { return a[0] * a[3] - a[1] * a[2]; }

bool Mat2::is_finite() const {
  for (const cplx& z : a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool Mat2::is_hermitian(double tol) const {
  if (!is_finite()) return false;
  return std::abs(a[0].imag()) <= tol && std::abs(a[3].imag()) <= tol &&
         std::abs(a[1] - std::conj(a[2])) <= tol;
}

bool Mat2::is_unitary(double tol) const {
  if (!is_finite()) return false;
  return max_abs_diff(adjoint() * (*this), identity()) <= tol;
}

bool Mat2::is_density(double tol) const {
  if (!is_hermitian(tol)) return false;
  if (std::abs(trace() - cplx(1)) > tol) return false;
  return hermitian_eigenvalues(*this)[1] >= -tol;
}

Mat4 Mat4::identity() {
  Mat4 r;
  for (int i = 0; i < 4; ++i) r(i, i) = cplx(1);
  return r;
}

Mat4 Mat4::adjoint() const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx Mat4::trace() const { return a[0] + a[5] + a[10] + a[15]; }

bool Mat4::is_finite() const {
  for (const cplx& z : a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool Mat4::is_hermitian(double tol) const {
  if (!is_finite()) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool Mat4::is_unitary(double tol) const {
  if (!is_finite()) return false;
  return max_abs_diff(adjoint() * (*this), identity()) <= tol;
}

bool Mat4::is_density(double tol) const {
  if (!is_hermitian(tol)) return false;
  if (std::abs(trace() - cplx(1)) > tol) return false;
  return hermitian_eigenvalues(*this)[3] >= -tol;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int k = 0; k < 4; ++k) r.a[k] = a.a[k] + b.a[k];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int k = 0; k < 4; ++k) r.a[k] = a.a[k] - b.a[k];
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

Mat2 operator*(cplx c, const Mat2& m) {
  Mat2 r;
  for (int k = 0; k < 4; ++k) r.a[k] = c * m.a[k];
  return r;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r.a[k] = a.a[k] + b.a[k];
  return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r.a[k] = a.a[k] - b.a[k];
  return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat4 operator*(cplx c, const Mat4& m) {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r.a[k] = c * m.a[k];
  return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0;
  for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(a.a[k] - b.a[k]));
  return m;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double m = 0;
  for (int k = 0; k < 16; ++k) m = std::max(m, std::abs(a.a[k] - b.a[k]));
  return m;
}

Mat2 pauli_x() { return Mat2{{cplx(0), cplx(1), cplx(1), cplx(0)}}; }
Mat2 pauli_y() { return Mat2{{cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)}}; }
Mat2 pauli_z() { return Mat2{{cplx(1), cplx(0), cplx(0), cplx(-1)}}; }

Mat2 bloch_to_density(const BlochVector& s) {
  if (!(s.norm2() <= (1.0 + kAlgebraTol) * (1.0 + kAlgebraTol)))
    throw std::invalid_argument("unphysical Bloch vector: |s| > 1");
  Mat2 rho;
  rho(0, 0) = 0.5 * (1.0 + s.z);
  rho(0, 1) = 0.5 * cplx(s.x, -s.y);
  rho(1, 0) = 0.5 * cplx(s.x, s.y);
  rho(1, 1) = 0.5 * (1.0 - s.z);
  return rho;
}

BlochVector density_to_bloch(const Mat2& rho) {
  if (!rho.is_density())
    throw std::invalid_argument("density_to_bloch: input is not a density matrix");
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

Mat4 tensor(const Mat2& quanton, const Mat2& detector) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = quanton(i, j) * detector(k, l);
  return r;
}

Mat2 partial_trace(const Mat4& rho, Subsystem traced_out) {
  if (!rho.is_density())
    throw std::invalid_argument("partial_trace: input is not a density matrix");
  Mat2 r;
  if (traced_out == Subsystem::detector) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  } else {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        r(k, l) = rho(k, l) + rho(2 + k, 2 + l);
  }
  return r;
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
  if (!m.is_hermitian())
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  const double t = m.trace().real();
  const double d = m.det().real();
  const double disc = std::max(0.0, 0.25 * t * t - d);
  const double r = std::sqrt(disc);
  return {0.5 * t + r, 0.5 * t - r};
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& m) {
  if (!m.is_hermitian())
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  // Cyclic complex Jacobi. Each pivot (p,q) is zeroed by the plane unitary
  //   V(p,p)=c, V(p,q)=s, V(q,p)=-s e^{-i phi}, V(q,q)=c e^{-i phi},
  // phi = arg A(p,q), applied as A <- V^dag A V.
  std::array<std::array<cplx, 4>, 4> A;
  double frob = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      A[i][j] = m(i, j);
      frob += std::norm(m(i, j));
    }
  frob = std::sqrt(frob);
  const double stop = 1e-15 * std::max(1.0, frob);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += std::norm(A[p][q]);
    if (std::sqrt(2.0 * off) < stop) break;

    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const double mag = std::abs(A[p][q]);
        if (mag < 1e-300) continue;
        const cplx phase = A[p][q] / mag;  // e^{i phi}
        const double app = A[p][p].real();
        const double aqq = A[q][q].real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int k = 0; k < 4; ++k) {  // columns: A <- A V
          const cplx akp = A[k][p];
          const cplx akq = A[k][q];
          A[k][p] = c * akp - s * std::conj(phase) * akq;
          A[k][q] = s * akp + c * std::conj(phase) * akq;
        }
        for (int k = 0; k < 4; ++k) {  // rows: A <- V^dag A
          const cplx apk = A[p][k];
          const cplx aqk = A[q][k];
          A[p][k] = c * apk - s * phase * aqk;
          A[q][k] = s * apk + c * phase * aqk;
        }
      }
  }

  std::array<double, 4> ev{A[0][0].real(), A[1][1].real(), A[2][2].real(),
                           A[3][3].real()};
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

double trace_norm(const Mat2& m) {
  const auto ev = hermitian_eigenvalues(m);
  return std::abs(ev[0]) + std::abs(ev[1]);
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Mat2 random_unitary(SeedStream& rng) {
  const double alpha = rng.uniform(0.0, kTwoPi);
  const double beta = rng.uniform(0.0, kTwoPi);
  const double delta = rng.uniform(0.0, kTwoPi);
  const double gamma = std::acos(rng.uniform(-1.0, 1.0));
  const double c = std::cos(0.5 * gamma);
  const double s = std::sin(0.5 * gamma);
  const cplx ph = std::polar(1.0, alpha);
  Mat2 u;
  u(0, 0) = ph * c * std::polar(1.0, -0.5 * (beta + delta));
  u(0, 1) = -ph * s * std::polar(1.0, -0.5 * (beta - delta));
  u(1, 0) = ph * s * std::polar(1.0, 0.5 * (beta - delta));
  u(1, 1) = ph * c * std::polar(1.0, 0.5 * (beta + delta));
  return u;
}

BlochVector random_bloch(SeedStream& rng, bool pure) {
  const double z = rng.uniform(-1.0, 1.0);
  const double azim = rng.uniform(0.0, kTwoPi);
  const double r = pure ? 1.0 : std::cbrt(rng.uniform());
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * rho * std::cos(azim), r * rho * std::sin(azim), r * z};
}

}  // namespace duality
