#include "sawtrap/saw_field.hpp"

#include <cmath>
#include <stdexcept>

namespace sawtrap::field {

namespace {
constexpr double kPi = std::numbers::pi;
}

IdtLayer IdtLayer::from_wavelength(double lambda, int periods, double velocity,
                                   double v0, double v1, double v2, double b0,
                                   int layer_index, double layer_gap) {
    IdtLayer layer;
    layer.wavelength = lambda;
    layer.finger_width = lambda / 6.0;
    layer.wave_number = 2.0 * kPi / lambda;
    layer.periods = periods;
    layer.velocity = velocity;
    layer.v0 = v0;
    layer.v1 = v1;
    layer.v2 = v2;
    layer.b0 = b0;
    layer.layer_index = layer_index;
    layer.layer_gap = layer_gap;
    layer.validate();
    return layer;
}

IdtLayer IdtLayer::from_wave_number(double k, int periods, double velocity,
                                    double v0, double v1, double v2, double b0,
                                    int layer_index, double layer_gap) {
    return from_wavelength(2.0 * kPi / k, periods, velocity, v0, v1, v2, b0,
                           layer_index, layer_gap);
}

void IdtLayer::validate() const {
    if (periods < 1) throw std::invalid_argument("IdtLayer: periods must be >= 1");
    if (!(layer_gap > 0.0))
        throw std::invalid_argument("IdtLayer: layer_gap must be positive");
    if (layer_index != 1 && layer_index != 2)
        throw std::invalid_argument("IdtLayer: layer_index must be 1 or 2");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("IdtLayer: wavelength must be positive");
    if (std::abs(wave_number * wavelength - 2.0 * kPi) > 1e-12)
        throw std::invalid_argument("IdtLayer: k * lambda != 2 pi");
}

double potential_finger_sum(const IdtLayer& layer, double x, double z, double t) {
    if (!(z >= 0.0))
        throw std::domain_error("potential_finger_sum: z must be >= 0");
    const double k = layer.wave_number;
    const double decay = std::exp(-k * z);
    const double voltages[3] = {layer.v0, layer.v1, layer.v2};
    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double shift = j * layer.wavelength / 3.0;
        for (int m = 1; m <= layer.periods; ++m)
            total += voltages[j] * layer.b0 * decay *
                     std::cos(k * (x - shift - layer.velocity * t));
    }
    return total;
}

FieldSample field_closed_form(const IdtLayer& layer, double u_bar, double x,
                              double z_abs, double t) {
    if (z_abs < 0.0 || z_abs > layer.layer_gap)
        throw std::domain_error("field_closed_form: z_abs outside [0, D]");
    const double k = layer.wave_number;
    const double envelope = layer.periods * u_bar * k *
                            std::exp(-k * layer.local_depth(z_abs));
    const double phase =
        k * (x - 2.0 * layer.wavelength / 3.0 - layer.velocity * t);
    const double sign = (layer.layer_index == 1) ? 1.0 : -1.0;  // (-1)^(j-1)
    return {envelope * std::sin(phase), sign * envelope * std::cos(phase)};
}

double field_envelope(const IdtLayer& layer, double u_bar, double z_abs) {
    if (z_abs < 0.0 || z_abs > layer.layer_gap)
        throw std::domain_error("field_envelope: z_abs outside [0, D]");
    return layer.periods * u_bar * layer.wave_number *
           std::exp(-layer.wave_number * layer.local_depth(z_abs));
}

double check_harmonicity(const IdtLayer& layer, const HarmonicityGrid& grid) {
    if (grid.nx < 1 || grid.nz < 1 || !(grid.step > 0.0))
        throw std::invalid_argument("check_harmonicity: bad grid");
    const double h = grid.step;
    double worst = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double x = grid.nx == 1
                             ? grid.x_min
                             : grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1);
        for (int iz = 0; iz < grid.nz; ++iz) {
            const double z = grid.nz == 1
                                 ? grid.z_min
                                 : grid.z_min + (grid.z_max - grid.z_min) * iz / (grid.nz - 1);
            if (z - h <= 0.0)
                throw std::domain_error("check_harmonicity: stencil leaves free space");
            const auto phi = [&](double xx, double zz) {
                return potential_finger_sum(layer, xx, zz, grid.time);
            };
            const double lap = (phi(x + h, z) + phi(x - h, z) + phi(x, z + h) +
                                phi(x, z - h) - 4.0 * phi(x, z)) /
                               (h * h);
            worst = std::max(worst, std::abs(lap));
        }
    }
    return worst;
}

}  // namespace sawtrap::field
