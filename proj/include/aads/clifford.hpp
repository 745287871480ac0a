#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace aads {

using Complex = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using ComplexMatrix4 = Eigen::Matrix4cd;

/// Gaussian integer a + b·√−1. Products of generator matrices stay in this ring,
/// so the Clifford relations can be checked with zero tolerance.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(GaussInt a, GaussInt b) = default;
  constexpr GaussInt conj() const { return {re, -im}; }
};

class ExactMatrix {
 public:
  ExactMatrix() = default;

  static ExactMatrix identity();
  static ExactMatrix scalar(GaussInt s);

  GaussInt& operator()(int row, int col) { return m_[row][col]; }
  GaussInt operator()(int row, int col) const { return m_[row][col]; }

  ExactMatrix adjoint() const;
  bool is_zero() const;
  ComplexMatrix4 to_complex() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

 private:
  std::array<std::array<GaussInt, 4>, 4> m_{};
};

/// A generator of the fixed Clifford representation together with its frame label.
struct CliffordMatrix {
  ExactMatrix entries;
  int index = 0;
};

/// Generator γ_α for the frame vector ĕ_α, α ∈ {0,...,4}. Throws InvalidIndexError.
CliffordMatrix gamma(int alpha);

/// Minkowski metric diag(−1,1,1,1,1) entry.
int eta(int alpha, int beta);

/// Result of checking γ_α γ_β + γ_β γ_α = −2 η_αβ Id for one ordered pair.
struct AnticommutatorCheck {
  int alpha = 0;
  int beta = 0;
  bool exact = false;
};

/// All 25 ordered pairs, evaluated in exact Gaussian-integer arithmetic.
std::array<AnticommutatorCheck, 25> anticommutator_table();

bool is_hermitian(const ExactMatrix& m);
bool is_anti_hermitian(const ExactMatrix& m);

/// Standard Hermitian product Σ conj(φ_a) ψ_a.
Complex inner(const Spinor& phi, const Spinor& psi);
double norm2(const Spinor& phi);

/// ⟨φ, Aψ⟩.
Complex bilinear(const Spinor& phi, const ComplexMatrix4& a, const Spinor& psi);

/// Frame components T_αβ of the energy-momentum tensor (α, β = 0..4).
class StressEnergy {
 public:
  using Matrix5 = Eigen::Matrix<double, 5, 5>;

  StressEnergy() : t_(Matrix5::Zero()) {}
  /// Throws ContractViolation unless the input is exactly symmetric.
  explicit StressEnergy(const Matrix5& t);

  double operator()(int alpha, int beta) const { return t_(alpha, beta); }
  const Matrix5& matrix() const { return t_; }

 private:
  Matrix5 t_;
};

/// R̂φ = ½(T₀₀ γ₀ + Σᵢ T₀ᵢ γᵢ) γ₀ φ.
Spinor weitzenboeck_endomorphism(const StressEnergy& t, const Spinor& phi);

/// Dominant energy condition: T₀₀ ≥ √(Σᵢ T₀ᵢ²) and T₀₀ ≥ |T_αβ| for all α, β.
bool dec_check(const StressEnergy& t);

}  // namespace aads
