#include "sawtrap/trapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sawtrap/numerics.hpp"

namespace sawtrap::trapping {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double envelope_factor(const ExternalFieldProfile& p, double z) {
    switch (p.envelope) {
        case ExternalFieldProfile::Envelope::None:
            return 1.0;
        case ExternalFieldProfile::Envelope::Sine:
            return 1.0 + std::sin(kPi * z / p.envelope_period);
        case ExternalFieldProfile::Envelope::Cosine:
            return 1.0 + std::cos(kPi * z / p.envelope_period);
    }
    return 1.0;
}

double envelope_derivative(const ExternalFieldProfile& p, double z) {
    const double w = kPi / p.envelope_period;
    switch (p.envelope) {
        case ExternalFieldProfile::Envelope::None:
            return 0.0;
        case ExternalFieldProfile::Envelope::Sine:
            return w * std::cos(w * z);
        case ExternalFieldProfile::Envelope::Cosine:
            return -w * std::sin(w * z);
    }
    return 0.0;
}

double base_field(const ExternalFieldProfile& p, double z) {
    switch (p.kind) {
        case ExternalFieldProfile::Kind::PowerLaw:
            return p.amplitude * std::pow(z, p.exponent);
        case ExternalFieldProfile::Kind::Sinusoidal:
            return p.amplitude * std::sin(p.exponent * z);
        case ExternalFieldProfile::Kind::Polynomial: {
            double acc = 0.0;
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it)
                acc = acc * z + *it;
            return acc;
        }
        case ExternalFieldProfile::Kind::Tabulated: {
            if (p.table.size() < 3)
                throw std::invalid_argument(
                    "ExternalFieldProfile: tabulated profile needs >= 3 points");
            if (z <= p.table.front().first) return p.table.front().second;
            if (z >= p.table.back().first) return p.table.back().second;
            for (std::size_t i = 1; i < p.table.size(); ++i) {
                if (z <= p.table[i].first) {
                    const auto [z0, e0] = p.table[i - 1];
                    const auto [z1, e1] = p.table[i];
                    return e0 + (e1 - e0) * (z - z0) / (z1 - z0);
                }
            }
            return p.table.back().second;
        }
    }
    return 0.0;
}

double base_derivative(const ExternalFieldProfile& p, double z) {
    switch (p.kind) {
        case ExternalFieldProfile::Kind::PowerLaw:
            if (p.exponent == 0.0) return 0.0;
            return p.amplitude * p.exponent * std::pow(z, p.exponent - 1.0);
        case ExternalFieldProfile::Kind::Sinusoidal:
            return p.amplitude * p.exponent * std::cos(p.exponent * z);
        case ExternalFieldProfile::Kind::Polynomial: {
            double acc = 0.0;
            for (std::size_t i = p.coefficients.size(); i-- > 1;)
                acc = acc * z + static_cast<double>(i) * p.coefficients[i];
            return acc;
        }
        case ExternalFieldProfile::Kind::Tabulated: {
            if (p.table.size() < 3)
                throw std::invalid_argument(
                    "ExternalFieldProfile: tabulated profile needs >= 3 points");
            const double span = p.table.back().first - p.table.front().first;
            const double h = span / (2.0 * static_cast<double>(p.table.size()));
            const double lo = std::max(z - h, p.table.front().first);
            const double hi = std::min(z + h, p.table.back().first);
            return (base_field(p, hi) - base_field(p, lo)) / (hi - lo);
        }
    }
    return 0.0;
}

}  // namespace

void ExternalFieldProfile::validate() const {
    if (!(regularizer > 0.0))
        throw std::invalid_argument("ExternalFieldProfile: regularizer must be > 0");
    if (envelope != Envelope::None && !(envelope_period > 0.0))
        throw std::invalid_argument("ExternalFieldProfile: envelope period must be > 0");
    if (kind == Kind::Tabulated && table.size() < 3)
        throw std::invalid_argument(
            "ExternalFieldProfile: tabulated profile needs >= 3 points");
}

double ExternalFieldProfile::field(double z) const {
    return base_field(*this, z) * envelope_factor(*this, z);
}

double ExternalFieldProfile::field_derivative(double z) const {
    return base_derivative(*this, z) * envelope_factor(*this, z) +
           base_field(*this, z) * envelope_derivative(*this, z);
}

SawForce saw_force(const field::IdtLayer& layer,
                   const molecule::MoleculeSpec& spec, double u_bar,
                   double z_abs, double gain) {
    const double mu_g =
        molecule::effective_dipole(spec) * spec.dipole_field_to_energy;
    const double e_lambda =
        molecule::shifted_splitting(spec, layer.wave_number, layer.velocity);
    const double env = field::field_envelope(layer, std::abs(u_bar), z_abs);
    const double coupling = mu_g * env;
    const double denom =
        std::sqrt(0.25 * e_lambda * e_lambda + coupling * coupling);
    if (denom == 0.0) return {0.0, 0.0, true};
    const double fz = gain * mu_g * mu_g * env * env * layer.wave_number / denom;
    return {0.0, fz, false};
}

TrapEquilibrium two_layer_equilibrium(double u1, double u2, double wave_number,
                                      double layer_gap) {
    if (!(u1 > 0.0) || !(u2 > 0.0))
        throw std::invalid_argument("two_layer_equilibrium: voltages must be > 0");
    if (!(wave_number > 0.0) || !(layer_gap > 0.0))
        throw std::invalid_argument("two_layer_equilibrium: need k > 0 and D > 0");

    const double ratio = u1 / u2;
    const double kd = wave_number * layer_gap;
    if (!(ratio > std::exp(-kd)))
        throw NoTrapError("two_layer_equilibrium: u1/u2 <= exp(-kD), no interior equilibrium");
    if (!(ratio < std::exp(kd)))
        throw NoTrapError("two_layer_equilibrium: u1/u2 >= exp(kD), no interior equilibrium");

    TrapEquilibrium eq;
    eq.z_star = (u1 == u2) ? 0.5 * layer_gap
                           : (kd + std::log(ratio)) / (2.0 * wave_number);
    eq.stability = Stability::Stable;
    eq.residual_force =
        u1 * u1 * std::exp(-2.0 * wave_number * eq.z_star) -
        u2 * u2 * std::exp(-2.0 * wave_number * (layer_gap - eq.z_star));
    return eq;
}

double external_force(const ExternalFieldProfile& profile,
                      const molecule::MoleculeSpec& spec, double z) {
    profile.validate();
    const double mu_g = std::abs(molecule::effective_dipole(spec) *
                                 spec.dipole_field_to_energy);
    const double e = profile.field(z);
    const double de = profile.field_derivative(z);
    return profile.gain * mu_g * e * de / (std::abs(e) + profile.regularizer);
}

std::vector<TrapEquilibrium> find_trap_layers(
    const ExternalFieldProfile& profile, const field::IdtLayer& layer,
    const molecule::MoleculeSpec& spec, double u_bar, double z_lo, double z_hi,
    int scan_points) {
    if (!(z_lo >= 0.0 && z_hi <= layer.layer_gap && z_lo < z_hi))
        throw std::invalid_argument("find_trap_layers: z range outside [0, D]");

    // Upward-positive combined force; the generating layer pushes away from
    // itself and the external field pushes toward it.
    const double direction = layer.layer_index == 1 ? 1.0 : -1.0;
    const auto net = [&](double z) {
        return direction * (saw_force(layer, spec, u_bar, z).fz -
                            external_force(profile, spec, z));
    };

    const auto roots = numerics::find_roots_bracketed(net, z_lo, z_hi,
                                                      scan_points, 1e-9);
    const double delta = 1e-4 * layer.layer_gap;
    std::vector<TrapEquilibrium> out;
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        TrapEquilibrium eq;
        eq.z_star = roots.roots[i].real();
        eq.residual_force = roots.residuals[i];
        const bool restoring =
            net(eq.z_star - delta) > 0.0 && net(eq.z_star + delta) < 0.0;
        eq.stability = restoring ? Stability::Stable : Stability::Unstable;
        out.push_back(eq);
    }
    return out;
}

double force_divergence(const std::function<double(double, double)>& potential,
                        const molecule::MoleculeSpec& spec, double e_lambda,
                        double x, double z, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("force_divergence: h must be > 0");

    const double c = potential(x, z);
    const double xp = potential(x + h, z), xm = potential(x - h, z);
    const double zp = potential(x, z + h), zm = potential(x, z - h);
    const double pp = potential(x + h, z + h), pm = potential(x + h, z - h);
    const double mp = potential(x - h, z + h), mm = potential(x - h, z - h);

    const double h2 = h * h;
    const double phi_xx = (xp - 2.0 * c + xm) / h2;
    const double phi_zz = (zp - 2.0 * c + zm) / h2;
    const double phi_xz = (pp - pm - mp + mm) / (4.0 * h2);
    const double phi_x = (xp - xm) / (2.0 * h);
    const double phi_z = (zp - zm) / (2.0 * h);

    const double scale = std::max({std::abs(c), std::abs(xp), std::abs(xm),
                                   std::abs(zp), std::abs(zm)});
    const double curvature = std::max({std::abs(phi_xx), std::abs(phi_zz),
                                       std::abs(phi_xz)});
    if (curvature > 0.0 && curvature * h2 < 64.0 * kEps * scale)
        throw StencilError(
            "force_divergence: second differences below roundoff; use a larger step");

    const double mu_g =
        molecule::effective_dipole(spec) * spec.dipole_field_to_energy;
    const double field_mag = std::hypot(phi_x, phi_z);
    const double denom = std::sqrt(0.25 * e_lambda * e_lambda +
                                   mu_g * mu_g * field_mag * field_mag);
    if (denom == 0.0)
        return 0.0;  // no Stark coupling at all
    return -mu_g * mu_g *
           (phi_xx * phi_xx + phi_zz * phi_zz + 2.0 * phi_xz * phi_xz) / denom;
}

}  // namespace sawtrap::trapping
