#include "sawtrap/hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sawtrap/numerics.hpp"

namespace sawtrap::hubbard {

namespace {
constexpr double kPi = std::numbers::pi;
}

void LatticeGeometry::validate() const {
    if (sites < 2) throw std::invalid_argument("LatticeGeometry: need N >= 2");
    if (!(strip_width > 0.0))
        throw std::invalid_argument("LatticeGeometry: strip width must be > 0");
    if (!(mass > 0.0))
        throw std::invalid_argument("LatticeGeometry: mass must be > 0");
    if (!(wave_number > 0.0))
        throw std::invalid_argument("LatticeGeometry: wave number must be > 0");
    if (height < 0.0)
        throw std::invalid_argument("LatticeGeometry: height must be >= 0");
}

double hopping_j(const LatticeGeometry& geom, double delta_j) {
    geom.validate();
    const double spacing = geom.spacing();
    const double gauss = std::exp(-spacing * spacing);
    double j = spacing *
               (geom.potential_scale * std::exp(-geom.wave_number * geom.height) +
                delta_j) *
               gauss;
    if (geom.include_kinetic)
        j += spacing * (1.0 - spacing * spacing) / (2.0 * geom.mass) * gauss;
    return j;
}

double onsite_u(double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("onsite_u: mass must be > 0");
    const double integral = numerics::quadrature(
        [](double x) { return std::exp(-2.0 * x * x); }, -10.0, 10.0, 1e-13);
    return 4.0 * kPi / mass * integral;
}

double onsite_u_analytic(double mass) {
    if (!(mass > 0.0))
        throw std::invalid_argument("onsite_u_analytic: mass must be > 0");
    return 4.0 * kPi / mass * std::sqrt(kPi / 2.0);
}

double onsite_eps(const LatticeGeometry& geom, double delta_eps) {
    geom.validate();
    return (geom.potential_scale + delta_eps) *
           std::exp(-geom.wave_number * geom.height);
}

double wannier_j_general(const LatticeGeometry& geom, int mu, int nu,
                         double time, double velocity) {
    geom.validate();
    if (mu < 0 || nu < 0 || mu >= geom.sites || nu >= geom.sites)
        throw std::invalid_argument("wannier_j_general: site index out of range");
    const double spacing = geom.spacing();
    const double center = 0.5 * (geom.sites - 1) * spacing;
    const double x_mu = mu * spacing - center;
    const double x_nu = nu * spacing - center;
    const double field_scale =
        geom.potential_scale * std::exp(-geom.wave_number * geom.height);
    const auto integrand = [&](double x) {
        const double dm = x - x_mu;
        const double dn = x - x_nu;
        const double w_mu = std::exp(-0.5 * dm * dm);
        const double w_nu = std::exp(-0.5 * dn * dn);
        const double kinetic = -(dn * dn - 1.0) / (2.0 * geom.mass);
        const double potential =
            field_scale *
            std::cos(geom.wave_number * (x - velocity * time));
        return w_mu * (kinetic + potential) * w_nu;
    };
    const double half_width = 12.0 + std::abs(x_mu) + std::abs(x_nu);
    return numerics::quadrature(integrand, -half_width, half_width, 1e-10);
}

double critical_ratio(int n0) {
    if (n0 < 1) throw std::invalid_argument("critical_ratio: n0 must be >= 1");
    const double n = n0;
    return n + 0.5 - std::sqrt(n * (n + 1.0));
}

std::pair<double, double> phase_boundary_eps(double j_over_u, int n0) {
    if (n0 < 1)
        throw std::invalid_argument("phase_boundary_eps: n0 must be >= 1");
    double disc = j_over_u * j_over_u - (2.0 * n0 + 1.0) * j_over_u + 0.25;
    // Exactly at the lobe tip the discriminant is zero; absorb rounding noise.
    const double scale = std::max(
        {j_over_u * j_over_u, (2.0 * n0 + 1.0) * std::abs(j_over_u), 0.25});
    if (disc < 0.0 && disc > -64.0 * std::numeric_limits<double>::epsilon() * scale)
        disc = 0.0;
    if (disc < 0.0)
        throw NoBoundaryError(
            "phase_boundary_eps: inside the superfluid lobe tip");
    const double mid = n0 - 0.5 - j_over_u;
    const double root = std::sqrt(disc);
    return {mid + root, mid - root};
}

double boundary_tip(int n0) {
    if (n0 < 1) throw std::invalid_argument("boundary_tip: n0 must be >= 1");
    const double b = 2.0 * n0 + 1.0;
    // Smaller root of (J/U)^2 - (2n0+1)(J/U) + 1/4; the 1/(2(b+sqrt)) form
    // avoids the cancellation in (b - sqrt(b^2-1))/2.
    return 0.5 / (b + std::sqrt(b * b - 1.0));
}

PhasePoint classify_phase(const LatticeGeometry& geom, int n0, double delta_j,
                          double delta_eps) {
    PhasePoint point;
    point.z = geom.height;
    point.sites = geom.sites;
    point.delta_j = delta_j;
    point.delta_eps = delta_eps;
    point.j_over_u = hopping_j(geom, delta_j) / onsite_u_analytic(geom.mass);
    point.phase = point.j_over_u > critical_ratio(n0) ? Phase::Superfluid
                                                      : Phase::MottInsulator;
    return point;
}

double thermal_hopping(double j, double beta_delta_u_over_u) {
    return j * std::exp(-beta_delta_u_over_u);
}

std::vector<PhasePoint> phase_diagram(const std::vector<double>& z_values,
                                      const std::vector<int>& n_values,
                                      const LatticeGeometry& base, int n0,
                                      const PerturbationSpec& perturb,
                                      std::uint64_t seed,
                                      double beta_delta_u_over_u) {
    if (z_values.empty() || n_values.empty())
        throw std::invalid_argument("phase_diagram: ranges must be non-empty");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw_j(-perturb.j_bound,
                                                  perturb.j_bound);
    std::uniform_real_distribution<double> draw_eps(-perturb.eps_bound,
                                                    perturb.eps_bound);
    const double f = critical_ratio(n0);
    const double u = onsite_u_analytic(base.mass);

    std::vector<PhasePoint> grid;
    grid.reserve(z_values.size() * n_values.size());
    for (double z : z_values) {
        for (int n : n_values) {
            LatticeGeometry geom = base;
            geom.height = z;
            geom.sites = n;
            PhasePoint point;
            point.z = z;
            point.sites = n;
            if (perturb.enabled) {
                point.delta_j = draw_j(rng);
                point.delta_eps = draw_eps(rng);
            }
            const double j = thermal_hopping(hopping_j(geom, point.delta_j),
                                             beta_delta_u_over_u);
            point.j_over_u = j / u;
            point.phase =
                point.j_over_u > f ? Phase::Superfluid : Phase::MottInsulator;
            grid.push_back(point);
        }
    }
    return grid;
}

}  // namespace sawtrap::hubbard
