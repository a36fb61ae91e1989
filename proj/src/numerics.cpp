#include "sawtrap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sawtrap::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

}  // namespace

Trajectory integrate_linear_ode(const Eigen::MatrixXcd& generator,
                                const Eigen::VectorXcd& y0, double t_end,
                                double rel_tol) {
    if (generator.rows() != generator.cols())
        throw std::invalid_argument("integrate_linear_ode: generator must be square");
    if (generator.cols() != y0.size())
        throw std::invalid_argument(
            "integrate_linear_ode: generator dimension does not match initial state");
    if (!(t_end > 0.0))
        throw std::invalid_argument("integrate_linear_ode: t_end must be positive");

    const auto deriv = [&](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        return generator * y;
    };

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(y0);

    // Scale the initial step by an operator-norm estimate.
    const double op_norm = generator.cwiseAbs().rowwise().sum().maxCoeff();
    double h = std::min(t_end, 0.1 / (1.0 + op_norm));

    double t = 0.0;
    Eigen::VectorXcd y = y0;
    Eigen::VectorXcd k1 = deriv(y);
    const double atol = rel_tol * std::max(1.0, y0.norm());

    while (t < t_end) {
        if (h < 16.0 * kEps * std::max(t, t_end))
            throw StepUnderflowError(
                t, "integrate_linear_ode: step underflow (stiff system?) at t=" +
                       std::to_string(t));
        h = std::min(h, t_end - t);

        const Eigen::VectorXcd k2 = deriv(y + h * (kA21 * k1));
        const Eigen::VectorXcd k3 = deriv(y + h * (kA31 * k1 + kA32 * k2));
        const Eigen::VectorXcd k4 = deriv(y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        const Eigen::VectorXcd k5 =
            deriv(y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        const Eigen::VectorXcd k6 = deriv(
            y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
        const Eigen::VectorXcd y_new =
            y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        const Eigen::VectorXcd k7 = deriv(y_new);
        const Eigen::VectorXcd err_vec =
            h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale =
                atol + rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double r = std::abs(err_vec[i]) / scale;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(y.size()));

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;  // FSAL
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
        const double factor =
            (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return traj;
}

RootSet find_roots_bracketed(const std::function<double(double)>& f, double a,
                             double b, int scan_points, double tol) {
    if (!(a < b)) throw std::invalid_argument("find_roots_bracketed: need a < b");
    if (scan_points < 2)
        throw std::invalid_argument("find_roots_bracketed: need scan_points >= 2");

    const auto eval = [&](double x) {
        const double v = f(x);
        if (std::isnan(v))
            throw std::runtime_error("find_roots_bracketed: f returned NaN at x=" +
                                     std::to_string(x));
        return v;
    };

    RootSet out;
    const auto push = [&](double root) {
        out.roots.emplace_back(root, 0.0);
        out.residuals.push_back(std::abs(eval(root)));
    };

    double x_prev = a;
    double f_prev = eval(a);
    for (int i = 1; i < scan_points; ++i) {
        const double x =
            a + (b - a) * static_cast<double>(i) / (scan_points - 1);
        const double fx = eval(x);
        if (f_prev == 0.0) {
            push(x_prev);
        } else if (f_prev * fx < 0.0) {
            double lo = x_prev, hi = x, flo = f_prev;
            double mid = 0.5 * (lo + hi), fmid = eval(mid);
            for (int it = 0; it < 200 && std::abs(fmid) > tol; ++it) {
                if (flo * fmid < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
                const double next = 0.5 * (lo + hi);
                if (next == mid) break;  // interval collapsed
                mid = next;
                fmid = eval(mid);
            }
            push(mid);
        }
        x_prev = x;
        f_prev = fx;
    }
    if (f_prev == 0.0) push(b);
    return out;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth, bool& converged) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
        converged = false;
        return left + right + delta / 15.0;
    }
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, converged) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, converged);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b,
                  double tol) {
    if (!(a < b)) throw std::invalid_argument("quadrature: need a < b");
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw std::invalid_argument("quadrature: integrand not finite on [a, b]");
    bool converged = true;
    const double whole = simpson(f, a, fa, b, fb, m, fm);
    const double result = adapt(f, a, fa, b, fb, m, fm, whole, tol, 50, converged);
    if (!converged)
        throw QuadratureError(result,
                              "quadrature: refinement limit reached before tolerance");
    return result;
}

RootSet cubic_roots(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0)
        throw DegenerateDegreeError("cubic_roots: leading coefficient is zero");

    const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    // Depressed form t^3 + p t + q with x = t - a/3.
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    const Complex disc = Complex(q * q / 4.0 + p * p * p / 27.0, 0.0);
    const Complex sq = std::sqrt(disc);
    Complex u_cubed = -q / 2.0 + sq;
    if (std::abs(u_cubed) < std::abs(-q / 2.0 - sq)) u_cubed = -q / 2.0 - sq;

    std::vector<Complex> roots(3);
    if (std::abs(u_cubed) == 0.0) {
        // p and q both vanish: triple root of the depressed cubic.
        const Complex t = std::pow(Complex(-q, 0.0), 1.0 / 3.0);
        roots = {t, t, t};
    } else {
        const Complex u = std::pow(u_cubed, 1.0 / 3.0);
        const Complex w(-0.5, std::sqrt(3.0) / 2.0);
        Complex uk = u;
        for (int k = 0; k < 3; ++k) {
            roots[k] = uk - p / (3.0 * uk);
            uk *= w;
        }
    }

    const auto poly = [&](Complex x) {
        return ((c3 * x + c2) * x + c1) * x + c0;
    };
    const auto dpoly = [&](Complex x) {
        return (3.0 * c3 * x + 2.0 * c2) * x + c1;
    };

    RootSet out;
    for (Complex t : roots) {
        Complex x = t - a / 3.0;
        for (int it = 0; it < 3; ++it) {
            const Complex d = dpoly(x);
            if (std::abs(d) == 0.0) break;
            const Complex step = poly(x) / d;
            if (!std::isfinite(std::abs(step))) break;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(x))) break;  // near-multiple root
            x -= step;
        }
        out.roots.push_back(x);
    }
    std::sort(out.roots.begin(), out.roots.end(), [](Complex l, Complex r) {
        if (l.real() != r.real()) return l.real() < r.real();
        return l.imag() < r.imag();
    });
    for (Complex r : out.roots) out.residuals.push_back(std::abs(poly(r)));
    return out;
}

}  // namespace sawtrap::numerics
