#pragma once

#include <numbers>

namespace paritysim {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// SI defining constants (2019 redefinition).
inline constexpr double planck_h = 6.62607015e-34;       // J s
inline constexpr double hbar = planck_h / two_pi;        // J s
inline constexpr double boltzmann_kb = 1.380649e-23;     // J / K

// Absolute tolerance for operator identities on O(1) nondimensionalized matrices.
inline constexpr double operator_tol = 1e-12;

} // namespace paritysim
