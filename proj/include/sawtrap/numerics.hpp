#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "sawtrap/errors.hpp"

namespace sawtrap::numerics {

using Complex = std::complex<double>;

/// Time-ordered solution samples of a complex linear ODE.
struct Trajectory {
    std::vector<double> times;               // strictly increasing, starts at 0
    std::vector<Eigen::VectorXcd> states;    // one state per time

    std::size_t size() const { return times.size(); }
    const Eigen::VectorXcd& front() const { return states.front(); }
    const Eigen::VectorXcd& back() const { return states.back(); }
};

/// Roots together with the residual |f(root)| at each of them.
struct RootSet {
    std::vector<Complex> roots;
    std::vector<double> residuals;
};

/// Integrates dy/dt = G y from 0 to t_end with an adaptive Dormand-Prince 5(4)
/// pair. Accepted steps are recorded in the returned trajectory.
Trajectory integrate_linear_ode(const Eigen::MatrixXcd& generator,
                                const Eigen::VectorXcd& y0, double t_end,
                                double rel_tol = 1e-9);

/// Scans [a, b] on a uniform grid, brackets every sign change and refines each
/// bracket by bisection. An interval without sign changes yields an empty set.
RootSet find_roots_bracketed(const std::function<double(double)>& f, double a,
                             double b, int scan_points = 2000,
                             double tol = 1e-10);

/// Adaptive Simpson quadrature of f over [a, b].
double quadrature(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-10);

/// All three (complex) roots of c3 x^3 + c2 x^2 + c1 x + c0, with multiplicity,
/// sorted by (Re, Im). Cardano plus a Newton polish.
RootSet cubic_roots(double c3, double c2, double c1, double c0);

}  // namespace sawtrap::numerics
