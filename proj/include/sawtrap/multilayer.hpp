#pragma once

#include <functional>
#include <vector>

#include "sawtrap/errors.hpp"

namespace sawtrap::multilayer {

/// Vertical chain of trapped layers with the Gaussian binding model and the
/// width-broadening sensitivity of the inter-layer attraction imbalance.
struct LayerStack {
    std::vector<double> heights;  // [m], strictly increasing, size >= 2
    double mass = 1.0;            // m0 [amu]
    double trap_frequency = 1.0;  // omega [1/s]
    double binding_exponent = 8.0;  // alpha [1/m^2]
    double width_scale = 0.04;      // R0 [m]
    double sensitivity = 0.01;      // xi [m^2]

    std::size_t size() const { return heights.size(); }
    void validate() const;
};

/// E_b = -sum_{q != l} exp(-alpha (z_q - z_l)^2) over ordered pairs.
double binding_energy(const LayerStack& stack);

/// R_l = R0 (1 + xi |sum_{q>l} 1/(z_q-z_l)^2 - sum_{q<l} 1/(z_q-z_l)^2|).
/// l is 1-based. Throws on coincident heights, naming the pair.
double oscillation_width(const LayerStack& stack, std::size_t l);

/// |psi_L|^2 with psi_L = prod_l exp(-|r_l|^2 / 2 R_l^2) / (sqrt(pi) R_l);
/// each squared factor integrates to 1 over its plane.
double variational_density(const LayerStack& stack,
                           const std::vector<double>& widths,
                           const std::vector<double>& radii);

/// H_L = sum_l (P_l^2 / 2 m0 + m0 omega^2 r_l^2 / 2)
///     + 1/2 sum_{q != l} V(|z_q - z_l|).
double chain_energy(const LayerStack& stack, const std::vector<double>& momenta,
                    const std::vector<double>& positions,
                    const std::function<double(double)>& pair_potential);

}  // namespace sawtrap::multilayer
