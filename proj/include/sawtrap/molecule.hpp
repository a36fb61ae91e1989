#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sawtrap/errors.hpp"

namespace sawtrap::molecule {

/// Energy picked up by a 1 Debye dipole in a 1 V/m field, expressed in GHz.
/// (Debye * V/m) / h / 1e9.
constexpr double kDebyeFieldToGhz = 3.33564e-30 / 6.62607015e-34 / 1e9;

/// rad/s -> GHz.
constexpr double kRadPerSecToGhz = 1.0 / (2.0 * 3.14159265358979323846 * 1e9);

/// Two-level Stark model of a polar molecule.
struct MoleculeSpec {
    double dipole = 0.0;              // |mu| [Debye]
    double doublet_split = 0.0;       // bare Lambda-doublet splitting [GHz]
    double rotational_constant = 0.0; // B [GHz]; housed, never evolved
    double j_prime = 1.0;             // J' (integer or half-integer, > 0)
    double m = 1.0;                   // m in {-1, 0, 1}
    double omega_qn = 1.0;            // Omega in {-1, 0, 1}
    int seeker_sign = 1;              // +1 high-field seeking, -1 low-field
    double mass = 1.0;                // [amu]
    double omega1 = 0.0;              // lower level [GHz]
    double omega2 = 0.0;              // upper level [GHz], omega2 - omega1 = doublet_split
    // Conversion applied when forming mu_eff * |E_z| in GHz. SI default;
    // dimensionless model calculations override it with 1.
    double dipole_field_to_energy = kDebyeFieldToGhz;

    double mean_level() const { return 0.5 * (omega1 + omega2); }
    void validate() const;

    /// CO preset (weak dipole, 0.4 GHz doublet).
    static MoleculeSpec co();
    /// OH preset (strong dipole, 1.65 GHz doublet).
    static MoleculeSpec oh();
};

struct StarkLevels {
    double upper = 0.0;  // [GHz]
    double lower = 0.0;  // [GHz]
    double mean = 0.0;   // [GHz]
};

/// mu_eff = sign * |mu| m Omega / (2 J' (J' + 1)) [Debye].
double effective_dipole(const MoleculeSpec& spec);

/// Doppler-shifted doublet splitting E_Lambda = bare - k v, in GHz.
double shifted_splitting(const MoleculeSpec& spec, double wave_number,
                         double velocity);

/// Stark pair mean +- sqrt((E_Lambda/2)^2 + (mu_eff |E_z|)^2).
StarkLevels stark_levels(const MoleculeSpec& spec, double envelope,
                         double e_lambda);

/// Energy of the trapped branch (upper for low-field seekers at the chosen
/// sign convention): mean + seeker_sign-resolved Stark branch.
double trapped_branch(const MoleculeSpec& spec, double envelope, double e_lambda);

/// Post-RWA 2x2 Hamiltonian in the rotating frame, in GHz. Hermitian; its
/// spectrum is independent of x.
Eigen::Matrix2cd rotating_frame_hamiltonian(const MoleculeSpec& spec,
                                            int layer_index, double envelope,
                                            double x, double wave_number,
                                            double wavelength,
                                            double velocity = 0.0);

/// Exact (pre-RWA) off-diagonal of the rotating-frame Hamiltonian at time t,
/// and its kept/dropped split. exact == kept + dropped identically; dropped
/// carries the fast phase exp(-2 i k v t).
std::complex<double> pre_rwa_offdiagonal(const MoleculeSpec& spec,
                                         int layer_index, double envelope,
                                         double x, double wave_number,
                                         double wavelength, double velocity,
                                         double t);
std::complex<double> rwa_kept_offdiagonal(const MoleculeSpec& spec,
                                          int layer_index, double envelope,
                                          double x, double wave_number,
                                          double wavelength);
std::complex<double> rwa_dropped_offdiagonal(const MoleculeSpec& spec,
                                             int layer_index, double envelope,
                                             double x, double wave_number,
                                             double wavelength, double velocity,
                                             double t);

}  // namespace sawtrap::molecule
