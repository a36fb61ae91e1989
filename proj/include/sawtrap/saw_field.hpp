#pragma once

#include <numbers>

#include "sawtrap/errors.hpp"

namespace sawtrap::field {

/// Geometry and drive of one SAW layer's trapping IDT. A unit cell holds three
/// fingers of width p' at voltages (v0, v1, v2); the cell repeats `periods`
/// times and the acoustic wavelength equals the cell pitch, lambda = 6 p'.
struct IdtLayer {
    int periods = 1;           // M
    double finger_width = 0.0; // p' [m]
    double wavelength = 0.0;   // 6 p' [m]
    double wave_number = 0.0;  // 2 pi / lambda [1/m]
    double velocity = 0.0;     // acoustic velocity [m/s]
    double v0 = 0.0, v1 = 0.0, v2 = 0.0;  // finger voltages [V]
    double b0 = 0.0;           // potential amplitude at z = 0 [V]
    int layer_index = 1;       // 1 = lower, 2 = upper
    double layer_gap = 0.0;    // D, distance between the two layers [m]

    static IdtLayer from_wavelength(double lambda, int periods, double velocity,
                                    double v0, double v1, double v2, double b0,
                                    int layer_index, double layer_gap);
    static IdtLayer from_wave_number(double k, int periods, double velocity,
                                     double v0, double v1, double v2, double b0,
                                     int layer_index, double layer_gap);

    /// Single voltage scale of the layer, identified from the finger model so
    /// that the closed form reproduces -grad of the finger-sum potential.
    double u_bar() const { return (v2 - v0) * b0; }

    /// Distance to this layer's surface: z for the lower layer, D - z for the
    /// upper one.
    double local_depth(double z_abs) const {
        return layer_index == 1 ? z_abs : layer_gap - z_abs;
    }

    void validate() const;
};

struct FieldSample {
    double ex = 0.0;  // [V/m]
    double ez = 0.0;  // [V/m]
};

/// Free-space potential by explicit superposition of all M x 3 fingers.
/// z is measured from the layer surface (z >= 0).
double potential_finger_sum(const IdtLayer& layer, double x, double z, double t);

/// Closed-form field of the layer at absolute height z_abs in [0, D].
FieldSample field_closed_form(const IdtLayer& layer, double u_bar, double x,
                              double z_abs, double t);

/// Field magnitude envelope M u_bar k exp(-k z_tilde).
double field_envelope(const IdtLayer& layer, double u_bar, double z_abs);

struct HarmonicityGrid {
    double x_min, x_max;
    double z_min, z_max;
    int nx, nz;
    double step;  // stencil step h
    double time = 0.0;
};

/// Max |Laplacian| of the finger-sum potential over the grid (5-point stencil).
double check_harmonicity(const IdtLayer& layer, const HarmonicityGrid& grid);

}  // namespace sawtrap::field
