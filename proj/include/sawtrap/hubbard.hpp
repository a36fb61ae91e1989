#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sawtrap/errors.hpp"

namespace sawtrap::hubbard {

/// Strip of N lattice sites of spacing W/N at height z above the lower layer.
struct LatticeGeometry {
    int sites = 5;                 // N
    double strip_width = 0.005;    // W [m]
    double height = 0.01;          // z [m]
    double wave_number = 50.0;     // k [1/m]
    double potential_scale = 100.0;  // B~0, same energy unit as U
    double mass = 0.1;             // m0 [amu]
    bool include_kinetic = false;  // keep the (1 - Delta^2)/(2 m0) term

    double spacing() const { return strip_width / sites; }
    void validate() const;
};

enum class Phase { Superfluid, MottInsulator };

struct PhasePoint {
    double z = 0.0;
    int sites = 0;
    double delta_j = 0.0;
    double delta_eps = 0.0;
    double j_over_u = 0.0;
    Phase phase = Phase::MottInsulator;
};

/// Bounds of the uniformly drawn hopping/offset perturbations.
struct PerturbationSpec {
    bool enabled = false;
    double j_bound = 5.0;      // delta_J in [-j_bound, j_bound]
    double eps_bound = 100.0;  // delta_eps in [-eps_bound, eps_bound]
};

/// J = Delta (B~0 e^{-kz} + delta_J) e^{-Delta^2}, plus the kinetic term
/// Delta (1 - Delta^2)/(2 m0) e^{-Delta^2} when include_kinetic is set.
double hopping_j(const LatticeGeometry& geom, double delta_j = 0.0);

/// U = (4 pi / m0) * integral of e^{-2x^2}, by adaptive quadrature.
double onsite_u(double mass);
/// Closed form (4 pi / m0) sqrt(pi / 2).
double onsite_u_analytic(double mass);

/// eps = (B~0 + delta_eps) e^{-kz}, frozen at the cosine peak.
double onsite_eps(const LatticeGeometry& geom, double delta_eps = 0.0);

/// Gaussian-Wannier overlap of -d^2/dx^2 / (2 m0) + B~0 e^{-kz} cos(k(x - vt))
/// between sites mu and nu (0-based), by 1D quadrature.
double wannier_j_general(const LatticeGeometry& geom, int mu, int nu,
                         double time = 0.0, double velocity = 0.0);

/// f_{n0} = n0 + 1/2 - sqrt(n0 (n0 + 1)).
double critical_ratio(int n0);

/// Both branches of eps/U = n0 - 1/2 - J/U +- sqrt((J/U)^2 - (2n0+1)J/U + 1/4),
/// returned as {upper, lower}. Throws NoBoundaryError inside the lobe tip.
std::pair<double, double> phase_boundary_eps(double j_over_u, int n0);

/// J/U where the two boundary branches coalesce; equals critical_ratio(n0).
double boundary_tip(int n0);

/// Label by J/U vs f_{n0}; ties go to the Mott insulator.
PhasePoint classify_phase(const LatticeGeometry& geom, int n0,
                          double delta_j = 0.0, double delta_eps = 0.0);

/// J_T = J e^{-beta Delta_U / U}, exponent given as a multiple of U.
double thermal_hopping(double j, double beta_delta_u_over_u);

/// Grid classification ordered by (z, N); deterministic for a fixed seed.
std::vector<PhasePoint> phase_diagram(const std::vector<double>& z_values,
                                      const std::vector<int>& n_values,
                                      const LatticeGeometry& base, int n0,
                                      const PerturbationSpec& perturb,
                                      std::uint64_t seed,
                                      double beta_delta_u_over_u = 0.0);

}  // namespace sawtrap::hubbard
