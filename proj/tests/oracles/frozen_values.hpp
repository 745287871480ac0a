// Values printed by tests/oracles/freeze.cpp (Gauss–Legendre 64 × 64 in θ, ψ; 64 uniform
// in φ; κ = 1). Regenerate with the oracle_freeze target.
#pragma once

namespace frozen {

// radial_bump(m = 0.1, σ = 4), E₀ at r = 10 with N = 64, and the two companions used to
// estimate the oracle's own error.
inline constexpr double kBumpE0 = 3.68155387572087836e-02;
inline constexpr double kBumpE0CoarseN32 = 3.68155387572153131e-02;
inline constexpr double kBumpE0R11 = 3.68155388884333218e-02;

// offdiag_momentum(q = 0.1, axis 2, sinθ, σ = 4): c′₄ is the only nonzero charge.
inline constexpr double kOffdiagCp4 = -3.68155387571911024e-03;
inline constexpr double kOffdiagCp4CoarseN32 = -3.68155387571784606e-03;

// Hand-reduced closed form 15πm/(128κ²) for m = 0.1, κ = 1.
inline constexpr double kBumpE0ClosedForm = 15.0 * 3.14159265358979323846 * 0.1 / 128.0;

}  // namespace frozen
