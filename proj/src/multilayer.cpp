#include "sawtrap/multilayer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sawtrap::multilayer {

void LayerStack::validate() const {
    if (heights.size() < 2)
        throw std::invalid_argument("LayerStack: need at least two layers");
    for (std::size_t i = 1; i < heights.size(); ++i)
        if (!(heights[i] > heights[i - 1]))
            throw std::invalid_argument(
                "LayerStack: heights must be strictly increasing");
    if (!(binding_exponent > 0.0))
        throw std::invalid_argument("LayerStack: alpha must be > 0");
    if (!(width_scale > 0.0))
        throw std::invalid_argument("LayerStack: R0 must be > 0");
}

double binding_energy(const LayerStack& stack) {
    if (stack.size() < 2)
        throw std::invalid_argument("binding_energy: need at least two layers");
    double total = 0.0;
    for (std::size_t l = 0; l < stack.size(); ++l) {
        for (std::size_t q = 0; q < stack.size(); ++q) {
            if (q == l) continue;
            const double dz = stack.heights[q] - stack.heights[l];
            total -= std::exp(-stack.binding_exponent * dz * dz);
        }
    }
    return total;
}

double oscillation_width(const LayerStack& stack, std::size_t l) {
    if (l < 1 || l > stack.size())
        throw std::invalid_argument("oscillation_width: layer index out of range");
    const double zl = stack.heights[l - 1];
    double above = 0.0, below = 0.0;
    for (std::size_t q = 0; q < stack.size(); ++q) {
        if (q == l - 1) continue;
        const double dz = stack.heights[q] - zl;
        if (dz == 0.0)
            throw std::invalid_argument(
                "oscillation_width: coincident heights for layers " +
                std::to_string(l) + " and " + std::to_string(q + 1));
        (dz > 0.0 ? above : below) += 1.0 / (dz * dz);
    }
    return stack.width_scale *
           (1.0 + stack.sensitivity * std::abs(above - below));
}

double variational_density(const LayerStack& stack,
                           const std::vector<double>& widths,
                           const std::vector<double>& radii) {
    if (widths.size() != stack.size() || radii.size() != stack.size())
        throw std::invalid_argument(
            "variational_density: widths and radii must match the stack size");
    double density = 1.0;
    for (std::size_t l = 0; l < widths.size(); ++l) {
        const double r = widths[l];
        if (!(r > 0.0))
            throw std::invalid_argument(
                "variational_density: widths must be positive");
        const double rho2 = radii[l] * radii[l];
        density *= std::exp(-rho2 / (r * r)) / (std::numbers::pi * r * r);
    }
    return density;
}

double chain_energy(const LayerStack& stack, const std::vector<double>& momenta,
                    const std::vector<double>& positions,
                    const std::function<double(double)>& pair_potential) {
    if (momenta.size() != stack.size() || positions.size() != stack.size())
        throw std::invalid_argument(
            "chain_energy: momenta and positions must match the stack size");
    double energy = 0.0;
    for (std::size_t l = 0; l < stack.size(); ++l) {
        energy += momenta[l] * momenta[l] / (2.0 * stack.mass) +
                  0.5 * stack.mass * stack.trap_frequency *
                      stack.trap_frequency * positions[l] * positions[l];
    }
    if (pair_potential) {
        for (std::size_t l = 0; l < stack.size(); ++l)
            for (std::size_t q = 0; q < stack.size(); ++q)
                if (q != l)
                    energy += 0.5 * pair_potential(
                                        std::abs(stack.heights[q] - stack.heights[l]));
    }
    return energy;
}

}  // namespace sawtrap::multilayer
