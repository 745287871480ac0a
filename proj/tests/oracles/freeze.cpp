// Prints the reference values frozen into frozen_values.hpp.
#include <cstdio>

#include "oracle.hpp"

int main() {
  const double kappa = 1.0;
  const auto bump = oracle::radial_bump_a(0.1, 4.0, kappa);
  const auto zero = oracle::zero_field();
  const auto e64 = oracle::brute_force_charges(bump, zero, 10.0, kappa, 64);
  const auto e32 = oracle::brute_force_charges(bump, zero, 10.0, kappa, 32);
  const auto e11 = oracle::brute_force_charges(bump, zero, 11.0, kappa, 64);
  std::printf("radial_bump m=0.1 sigma=4 kappa=1, r=10, N=64\n");
  for (int i = 0; i < 15; ++i) std::printf("  [%2d] % .17e\n", i, e64[i]);
  std::printf("E0 r=10 N=32: %.17e\nE0 r=11 N=64: %.17e\n", e32[0], e11[0]);
  const auto off = oracle::offdiag_sin_theta_h(0.1, 2, 4.0, kappa);
  const auto p64 = oracle::brute_force_charges(zero, off, 10.0, kappa, 64);
  const auto p32 = oracle::brute_force_charges(zero, off, 10.0, kappa, 32);
  std::printf("offdiag_momentum q=0.1 axis=2 sin_theta, r=10, N=64 (N=32)\n");
  for (int i = 0; i < 15; ++i) std::printf("  [%2d] % .17e  % .17e\n", i, p64[i], p32[i]);
}
