#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "sawtrap/errors.hpp"
#include "sawtrap/numerics.hpp"

namespace sawtrap::acoustics {

struct ElasticMedium {
    double lame_kappa = 0.0;  // [Pa]
    double lame_mu = 0.0;     // [Pa]
    double density = 0.0;     // [kg/m^3]
    // Cubic-crystal constants, carried for residual evaluation only.
    double c11 = 0.0, c12 = 0.0, c44 = 0.0;

    void validate() const;
    double shear_velocity() const;         // sqrt(mu / rho)
    double longitudinal_velocity() const;  // sqrt((kappa + 2 mu) / rho)
};

struct PropagationSpec {
    double angle = 0.0;       // theta, l = cos(theta), m = sin(theta)
    double velocity = 0.0;    // trial v [m/s]
    double wave_number = 1.0;  // k [1/m]

    double l() const { return std::cos(angle); }
    double m() const { return std::sin(angle); }
    void validate() const;
};

struct DecayConstants {
    numerics::RootSet q;           // the three decaying-branch roots
    std::array<double, 4> cubic;   // det P as c[i] (q^2)^i
    bool repeated = false;         // numerically coincident q^2 roots
};

/// S = (grad u + grad u^T) / 2.
Eigen::Matrix3d strain_tensor(const Eigen::Matrix3d& displacement_gradient);

/// T = kappa tr(S) I + 2 mu S. Throws on non-symmetric S.
Eigen::Matrix3d isotropic_stress(const ElasticMedium& medium,
                                 const Eigen::Matrix3d& strain);

/// Secular matrix P(q) of the depth-decay ansatz e^{-k q x3}.
Eigen::Matrix3d secular_matrix(const ElasticMedium& medium,
                               const PropagationSpec& spec, double q);

double secular_det(const ElasticMedium& medium, const PropagationSpec& spec,
                   double q);

/// det P as a cubic in Q = q^2, coefficients low-to-high.
std::array<double, 4> secular_cubic(const ElasticMedium& medium,
                                    const PropagationSpec& spec);

/// The three decay constants with Re(q) >= 0; repeated roots are flagged.
DecayConstants solve_decay_constants(const ElasticMedium& medium,
                                     const PropagationSpec& spec);

/// phi = Re[B4 e^{-kz} e^{ik(x+y)/sqrt(2) - ivkt}], z >= 0.
double free_space_potential(double b4, double k, double v, double x, double y,
                            double z, double t);

}  // namespace sawtrap::acoustics
