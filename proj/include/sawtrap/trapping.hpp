#pragma once

#include <functional>
#include <vector>

#include "sawtrap/molecule.hpp"
#include "sawtrap/saw_field.hpp"

namespace sawtrap::trapping {

/// Externally applied field profile E~(z) along the vertical axis, with the
/// small regularizer used when dividing by |E~|.
struct ExternalFieldProfile {
    enum class Kind { PowerLaw, Sinusoidal, Polynomial, Tabulated };
    enum class Envelope { None, Sine, Cosine };

    Kind kind = Kind::PowerLaw;
    double amplitude = 0.0;   // f_E
    double exponent = 1.0;    // n (power-law order or sinusoid frequency)
    std::vector<double> coefficients;  // polynomial c0 + c1 z + c2 z^2 + ...
    Envelope envelope = Envelope::None;
    double envelope_period = 0.02;     // Delta_z of the 1 + sin/cos(pi z / Delta_z)
    double regularizer = 0.01;         // eps~ > 0
    double gain = 1.0;                 // force-unit calibration [amu m/s^2 per ...]
    std::vector<std::pair<double, double>> table;  // (z, E~) for Kind::Tabulated

    double field(double z) const;
    double field_derivative(double z) const;
    void validate() const;
};

struct SawForce {
    double fx = 0.0;  // identically zero for the closed-form layer field
    double fz = 0.0;  // [amu m/s^2], positive pointing away from the layer
    bool degenerate = false;  // E_Lambda and field both vanish
};

enum class Stability { Stable, Unstable };

struct TrapEquilibrium {
    double z_star = 0.0;        // [m]
    Stability stability = Stability::Stable;
    double residual_force = 0.0;
};

/// SAW force magnitude on the molecule at absolute height z_abs. Sign
/// convention: the returned fz pushes away from the generating layer, so the
/// lower layer pushes up and the upper layer pushes down.
SawForce saw_force(const field::IdtLayer& layer,
                   const molecule::MoleculeSpec& spec, double u_bar,
                   double z_abs, double gain = 1.0);

/// Closed-form two-layer equilibrium z0 = ln(exp(kD) u1/u2) / 2k. Throws
/// NoTrapError when u1/u2 leaves (exp(-kD), exp(kD)).
TrapEquilibrium two_layer_equilibrium(double u1, double u2, double wave_number,
                                      double layer_gap);

/// Vertical force exerted by the external profile:
/// gain / (2 (|E~| + eps~)) * d|E~|^2/dz.
double external_force(const ExternalFieldProfile& profile,
                      const molecule::MoleculeSpec& spec, double z);

/// Equilibria of net(z) = saw_force - external_force on [z_lo, z_hi], each
/// classified by the sign change of the combined (upward-positive) force.
std::vector<TrapEquilibrium> find_trap_layers(
    const ExternalFieldProfile& profile, const field::IdtLayer& layer,
    const molecule::MoleculeSpec& spec, double u_bar, double z_lo, double z_hi,
    int scan_points = 2000);

/// Signed force divergence of Eq.-9 form for a potential phi(x, z), second
/// partials by central differences with step h.
double force_divergence(const std::function<double(double, double)>& potential,
                        const molecule::MoleculeSpec& spec, double e_lambda,
                        double x, double z, double h);

}  // namespace sawtrap::trapping
