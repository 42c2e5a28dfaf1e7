// Minimal complex-matrix kernel for two-qubit duality computations:
// 2x2/4x4 matrices, tensor products, partial traces, Hermitian eigenvalues,
// trace norm, Bloch <-> density conversions and seeded random generators.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>

namespace duality {

using cplx = std::complex<double>;

/// Tolerance for single algebraic identities.
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for multi-stage pipelines (matrix evolution vs closed forms).
inline constexpr double kPipelineTol = 1e-9;
/// Allowance below zero on the smallest eigenvalue of a density matrix.
inline constexpr double kPsdTol = 1e-12;

/// Real 3-vector s parameterizing a qubit state, |s| <= 1.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm2() const { return x * x + y * y + z * z; }
  double norm() const;
};

BlochVector operator+(const BlochVector& a, const BlochVector& b);
BlochVector operator-(const BlochVector& a, const BlochVector& b);
BlochVector operator*(double c, const BlochVector& s);

/// 2x2 complex matrix, row-major storage.
struct Mat2 {
  std::array<cplx, 4> a{};

  cplx& operator()(int i, int j) { return a[2 * i + j]; }
  const cplx& operator()(int i, int j) const { return a[2 * i + j]; }

  static Mat2 identity();

  Mat2 adjoint() const;
  cplx trace() const;
  cplx det() const;

  bool is_finite() const;
  bool is_hermitian(double tol = kAlgebraTol) const;
  bool is_unitary(double tol = kAlgebraTol) const;
  /// Hermitian, unit trace and eigenvalues >= -tol.
  bool is_density(double tol = kAlgebraTol) const;
};

/// 4x4 complex matrix, row-major storage.
struct Mat4 {
  std::array<cplx, 16> a{};

  cplx& operator()(int i, int j) { return a[4 * i + j]; }
  const cplx& operator()(int i, int j) const { return a[4 * i + j]; }

  static Mat4 identity();

  Mat4 adjoint() const;
  cplx trace() const;

  bool is_finite() const;
  bool is_hermitian(double tol = kAlgebraTol) const;
  bool is_unitary(double tol = kAlgebraTol) const;
  bool is_density(double tol = kAlgebraTol) const;
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx c, const Mat2& m);
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator*(cplx c, const Mat4& m);

double max_abs_diff(const Mat2& a, const Mat2& b);
double max_abs_diff(const Mat4& a, const Mat4& b);

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// rho = (1 + s.sigma)/2. Rejects |s| > 1 + kAlgebraTol.
Mat2 bloch_to_density(const BlochVector& s);

/// s_k = tr(rho sigma_k). Rejects non-density input.
BlochVector density_to_bloch(const Mat2& rho);

/// Kronecker product with the Quanton as first factor, the Detector as
/// second. This ordering is fixed everywhere in the library.
Mat4 tensor(const Mat2& quanton, const Mat2& detector);

/// The subsystem to trace out of a two-qubit state.
enum class Subsystem { quanton, detector };

/// Reduced state after tracing out `traced_out`. Rejects non-density input.
Mat2 partial_trace(const Mat4& rho, Subsystem traced_out);

/// Eigenvalues of a Hermitian 2x2 matrix by the closed quadratic form,
/// sorted descending. Rejects non-Hermitian input.
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

/// Eigenvalues of a Hermitian 4x4 matrix by cyclic complex Jacobi sweeps,
/// sorted descending. Rejects non-Hermitian input.
std::array<double, 4> hermitian_eigenvalues(const Mat4& m);

/// Sum of absolute eigenvalues of a Hermitian 2x2 matrix.
double trace_norm(const Mat2& m);

/// splitmix64 finalizer, used to key substreams.
std::uint64_t mix64(std::uint64_t z);

/// Deterministic random stream: mt19937_64 keyed by mix64(seed ^ mix64(stream)).
/// Doubles are produced from raw 64-bit draws, so identical (seed, stream)
/// gives identical output on every platform.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix64(seed ^ mix64(stream))) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Haar-consistent random unitary via e^{i a} Rz(b) Ry(g) Rz(d) with
/// cos(g) uniform on [-1, 1] and the other angles uniform on [0, 2pi).
Mat2 random_unitary(SeedStream& rng);

/// Uniform point on the unit sphere (pure) or in the unit ball (mixed).
BlochVector random_bloch(SeedStream& rng, bool pure);

}  // namespace duality
