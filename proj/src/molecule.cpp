#include "sawtrap/molecule.hpp"

#include <cmath>
#include <stdexcept>

namespace sawtrap::molecule {

namespace {
using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};
}  // namespace

void MoleculeSpec::validate() const {
    if (!(j_prime > 0.0))
        throw std::invalid_argument("MoleculeSpec: J' must be positive");
    if (dipole < 0.0)
        throw std::invalid_argument("MoleculeSpec: |mu| must be >= 0");
    if (std::abs((omega2 - omega1) - doublet_split) > 1e-12)
        throw std::invalid_argument(
            "MoleculeSpec: omega2 - omega1 must equal the doublet splitting");
    if (seeker_sign != 1 && seeker_sign != -1)
        throw std::invalid_argument("MoleculeSpec: seeker_sign must be +-1");
}

MoleculeSpec MoleculeSpec::co() {
    MoleculeSpec s;
    s.dipole = 0.167;
    s.doublet_split = 0.4;
    s.rotational_constant = 57.9;
    s.j_prime = 1.0;
    s.m = 1.0;
    s.omega_qn = 1.0;
    s.seeker_sign = -1;  // low-field seeking a3Pi1 state
    s.mass = 28.0;
    s.omega1 = 0.0;
    s.omega2 = 0.4;
    return s;
}

MoleculeSpec MoleculeSpec::oh() {
    MoleculeSpec s;
    s.dipole = 1.67;
    s.doublet_split = 1.65;
    s.rotational_constant = 555.7;
    s.j_prime = 1.5;
    s.m = 1.0;
    s.omega_qn = 1.0;
    s.seeker_sign = -1;
    s.mass = 17.0;
    s.omega1 = 0.0;
    s.omega2 = 1.65;
    return s;
}

double effective_dipole(const MoleculeSpec& spec) {
    if (!(spec.j_prime > 0.0))
        throw std::invalid_argument("effective_dipole: J' must be positive");
    return spec.seeker_sign * spec.dipole * spec.m * spec.omega_qn /
           (2.0 * spec.j_prime * (spec.j_prime + 1.0));
}

double shifted_splitting(const MoleculeSpec& spec, double wave_number,
                         double velocity) {
    return spec.doublet_split - wave_number * velocity * kRadPerSecToGhz;
}

StarkLevels stark_levels(const MoleculeSpec& spec, double envelope,
                         double e_lambda) {
    if (envelope < 0.0)
        throw std::invalid_argument("stark_levels: envelope must be >= 0");
    const double coupling =
        effective_dipole(spec) * envelope * spec.dipole_field_to_energy;
    const double half_gap =
        std::sqrt(0.25 * e_lambda * e_lambda + coupling * coupling);
    const double mean = spec.mean_level();
    return {mean + half_gap, mean - half_gap, mean};
}

double trapped_branch(const MoleculeSpec& spec, double envelope,
                      double e_lambda) {
    const StarkLevels levels = stark_levels(spec, envelope, e_lambda);
    // Low-field seekers (mu_eff < 0 convention) ride the rising branch.
    return spec.seeker_sign > 0 ? levels.lower : levels.upper;
}

namespace {

// Common factor of the off-diagonal entries: (-1)^j mu_eff E_z-envelope in GHz.
double offdiag_scale(const MoleculeSpec& spec, int layer_index,
                     double envelope) {
    if (envelope < 0.0)
        throw std::invalid_argument("rotating frame: envelope must be >= 0");
    const double sign = (layer_index % 2 == 0) ? 1.0 : -1.0;  // (-1)^j
    return sign * effective_dipole(spec) * envelope *
           spec.dipole_field_to_energy;
}

}  // namespace

Eigen::Matrix2cd rotating_frame_hamiltonian(const MoleculeSpec& spec,
                                            int layer_index, double envelope,
                                            double x, double wave_number,
                                            double wavelength,
                                            double velocity) {
    const double e_lambda = shifted_splitting(spec, wave_number, velocity);
    const Complex kept = rwa_kept_offdiagonal(spec, layer_index, envelope, x,
                                              wave_number, wavelength);
    Eigen::Matrix2cd h;
    h(0, 0) = spec.mean_level() + 0.5 * e_lambda;
    h(1, 1) = spec.mean_level() - 0.5 * e_lambda;
    h(1, 0) = kept;
    h(0, 1) = std::conj(kept);
    return h;
}

Complex pre_rwa_offdiagonal(const MoleculeSpec& spec, int layer_index,
                            double envelope, double x, double wave_number,
                            double wavelength, double velocity, double t) {
    const double theta =
        wave_number * (x - 2.0 * wavelength / 3.0 - velocity * t);
    return 2.0 * offdiag_scale(spec, layer_index, envelope) * std::cos(theta) *
           std::exp(-kI * wave_number * velocity * t);
}

Complex rwa_kept_offdiagonal(const MoleculeSpec& spec, int layer_index,
                             double envelope, double x, double wave_number,
                             double wavelength) {
    return offdiag_scale(spec, layer_index, envelope) *
           std::exp(-kI * wave_number * (x - 2.0 * wavelength / 3.0));
}

Complex rwa_dropped_offdiagonal(const MoleculeSpec& spec, int layer_index,
                                double envelope, double x, double wave_number,
                                double wavelength, double velocity, double t) {
    return offdiag_scale(spec, layer_index, envelope) *
           std::exp(kI * wave_number * (x - 2.0 * wavelength / 3.0)) *
           std::exp(-2.0 * kI * wave_number * velocity * t);
}

}  // namespace sawtrap::molecule
