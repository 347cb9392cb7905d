#pragma once

// Central tolerance table. Every invariant check and property test in the
// library references these values; nothing hard-codes its own tolerance.

namespace qip::tol {

inline constexpr double state = 1e-10;     // normalization, hermiticity, trace
inline constexpr double spectral = 1e-9;   // eigensolver residuals, eigenvalue floor
inline constexpr double grid = 1e-6;       // Riemann-sum normalization on sampled grids
inline constexpr double phase = 1e-12;     // unit-vector / unitarity round trips

}  // namespace qip::tol
