#include "aads/clifford.hpp"

#include <cmath>
#include <string>

#include "aads/errors.hpp"

namespace aads {
namespace {

constexpr GaussInt kZero{0, 0};
constexpr GaussInt kOne{1, 0};
constexpr GaussInt kI{0, 1};

using Block = std::array<std::array<GaussInt, 2>, 2>;

constexpr GaussInt neg(GaussInt a) { return {-a.re, -a.im}; }

// Quaternion units of the representation, as 2×2 complex blocks.
constexpr Block kUnitI{{{kI, kZero}, {kZero, neg(kI)}}};
constexpr Block kUnitJ{{{kZero, kOne}, {neg(kOne), kZero}}};
constexpr Block kUnitK{{{kZero, kI}, {kI, kZero}}};
constexpr Block kIdentity2{{{kOne, kZero}, {kZero, kOne}}};

Block negate(const Block& b) {
  Block out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = neg(b[i][j]);
  return out;
}

ExactMatrix from_blocks(const Block& tl, const Block& tr, const Block& bl, const Block& br) {
  ExactMatrix m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m(i, j) = tl[i][j];
      m(i, j + 2) = tr[i][j];
      m(i + 2, j) = bl[i][j];
      m(i + 2, j + 2) = br[i][j];
    }
  }
  return m;
}

const std::array<ExactMatrix, 5>& generators() {
  static const std::array<ExactMatrix, 5> g = [] {
    const Block zero{};
    return std::array<ExactMatrix, 5>{
        from_blocks(kIdentity2, zero, zero, negate(kIdentity2)),
        from_blocks(zero, kIdentity2, negate(kIdentity2), zero),
        from_blocks(zero, kUnitI, kUnitI, zero),
        from_blocks(zero, kUnitJ, kUnitJ, zero),
        from_blocks(zero, kUnitK, kUnitK, zero),
    };
  }();
  return g;
}

}  // namespace

ExactMatrix ExactMatrix::identity() { return scalar(kOne); }

ExactMatrix ExactMatrix::scalar(GaussInt s) {
  ExactMatrix m;
  for (int i = 0; i < 4; ++i) m(i, i) = s;
  return m;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m_[j][i].conj();
  return out;
}

bool ExactMatrix::is_zero() const { return *this == ExactMatrix{}; }

ComplexMatrix4 ExactMatrix::to_complex() const {
  ComplexMatrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(i, j) = Complex(static_cast<double>(m_[i][j].re), static_cast<double>(m_[i][j].im));
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      GaussInt acc{};
      for (int k = 0; k < 4; ++k) acc = acc + a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

CliffordMatrix gamma(int alpha) {
  if (alpha < 0 || alpha > 4) {
    throw InvalidIndexError("gamma: frame index " + std::to_string(alpha) + " outside 0..4");
  }
  return {generators()[static_cast<std::size_t>(alpha)], alpha};
}

int eta(int alpha, int beta) {
  if (alpha < 0 || alpha > 4 || beta < 0 || beta > 4) {
    throw InvalidIndexError("eta: index outside 0..4");
  }
  if (alpha != beta) return 0;
  return alpha == 0 ? -1 : 1;
}

std::array<AnticommutatorCheck, 25> anticommutator_table() {
  std::array<AnticommutatorCheck, 25> out{};
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const ExactMatrix& ga = gamma(a).entries;
      const ExactMatrix& gb = gamma(b).entries;
      const ExactMatrix expected = ExactMatrix::scalar({-2 * eta(a, b), 0});
      out[static_cast<std::size_t>(5 * a + b)] = {a, b, ga * gb + gb * ga == expected};
    }
  }
  return out;
}

bool is_hermitian(const ExactMatrix& m) { return m.adjoint() == m; }

bool is_anti_hermitian(const ExactMatrix& m) { return (m.adjoint() + m).is_zero(); }

Complex inner(const Spinor& phi, const Spinor& psi) { return phi.dot(psi); }

double norm2(const Spinor& phi) { return phi.squaredNorm(); }

Complex bilinear(const Spinor& phi, const ComplexMatrix4& a, const Spinor& psi) {
  return phi.dot(a * psi);
}

StressEnergy::StressEnergy(const Matrix5& t) : t_(t) {
  if (t != t.transpose()) {
    throw ContractViolation("StressEnergy: T_ab must be symmetric");
  }
}

Spinor weitzenboeck_endomorphism(const StressEnergy& t, const Spinor& phi) {
  ComplexMatrix4 current = t(0, 0) * gamma(0).entries.to_complex();
  for (int i = 1; i <= 4; ++i) current += t(0, i) * gamma(i).entries.to_complex();
  return 0.5 * (current * (gamma(0).entries.to_complex() * phi));
}

bool dec_check(const StressEnergy& t) {
  double flux2 = 0.0;
  for (int i = 1; i <= 4; ++i) flux2 += t(0, i) * t(0, i);
  if (t(0, 0) < std::sqrt(flux2)) return false;
  return t(0, 0) >= t.matrix().cwiseAbs().maxCoeff();
}

}  // namespace aads
