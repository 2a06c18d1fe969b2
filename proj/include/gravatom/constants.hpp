#pragma once

// CODATA 2018 values. The numerical core works in atomic units
// (a0 = hbar = m_e = e = 1, energies in Hartree); these are only used to
// convert at the edges.

namespace gravatom::constants {

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline constexpr double speed_of_light = 299792458.0;               // m/s
inline constexpr double planck = 6.62607015e-34;                    // J s
inline constexpr double hbar = 1.054571817e-34;                     // J s
inline constexpr double elementary_charge = 1.602176634e-19;        // C
inline constexpr double hartree_joule = 4.3597447222071e-18;        // J
inline constexpr double hartree_ev = 27.211386245988;               // eV
inline constexpr double hartree_hz = 6.579683920502e15;             // E_h / h, Hz
inline constexpr double bohr_radius = 5.29177210903e-11;            // m

/// Angular frequency corresponding to one Hartree, E_h / hbar in rad/s.
inline constexpr double hartree_rad_per_s = hartree_joule / hbar;

}  // namespace gravatom::constants
