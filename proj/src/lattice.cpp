#include "sawtrap/lattice.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sawtrap::lattice {

namespace {
using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};
}  // namespace

LatticeConfig LatticeConfig::line(const std::vector<double>& xs, double onsite,
                                  double coupling_gain) {
    LatticeConfig cfg;
    cfg.positions.reserve(xs.size());
    for (double x : xs) cfg.positions.emplace_back(x, 0.0);
    cfg.onsite = onsite;
    cfg.coupling_gain = coupling_gain;
    cfg.validate();
    return cfg;
}

LatticeConfig LatticeConfig::uniform_line(int n, double x_lo, double x_hi,
                                          double onsite, double coupling_gain) {
    if (n < 1) throw std::invalid_argument("LatticeConfig: need n >= 1");
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = n == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (n - 1);
    return line(xs, onsite, coupling_gain);
}

void LatticeConfig::validate() const {
    if (positions.empty())
        throw std::invalid_argument("LatticeConfig: need at least one site");
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            if ((positions[i] - positions[j]).norm() == 0.0)
                throw std::invalid_argument(
                    "LatticeConfig: coincident sites give infinite coupling");
}

Eigen::MatrixXd LatticeConfig::hamiltonian() const {
    validate();
    const auto n = static_cast<Eigen::Index>(positions.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        h(i, i) = onsite;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (positions[i] - positions[j]).norm();
            h(i, j) = h(j, i) = coupling_gain / (d * d * d);
        }
    }
    return h;
}

void ShieldingConfig::validate() const {
    if (sites < 2) throw std::invalid_argument("ShieldingConfig: need N >= 2");
}

Eigen::MatrixXd ShieldingConfig::hamiltonian(bool with_long_range) const {
    validate();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(sites, sites);
    for (int n = 0; n < sites; ++n) {
        h(n, n) = onsite;
        if (n + 1 < sites) h(n, n + 1) = h(n + 1, n) = hop;
    }
    if (with_long_range && long_range != LongRange::Off) {
        for (int n = 0; n < sites; ++n) {
            for (int j = 0; j < sites; ++j) {
                if (j == n) continue;
                const double g = long_range == LongRange::Uniform
                                     ? gamma
                                     : hop / std::pow(std::abs(n - j), 3.0);
                h(n, j) += g;
            }
        }
    }
    return h;
}

Eigen::VectorXcd propagate(const Eigen::MatrixXd& hamiltonian,
                           const Eigen::VectorXcd& initial, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("propagate: eigendecomposition failed");
    const Eigen::VectorXcd modes =
        solver.eigenvectors().transpose().cast<Complex>() * initial;
    Eigen::VectorXcd phased(modes.size());
    for (Eigen::Index k = 0; k < modes.size(); ++k)
        phased(k) = modes(k) * std::exp(-kI * solver.eigenvalues()(k) * t);
    return solver.eigenvectors().cast<Complex>() * phased;
}

numerics::Trajectory anderson_evolve(const LatticeConfig& cfg,
                                     const AmplitudeState& initial, double t_end,
                                     int samples) {
    if (samples < 2)
        throw std::invalid_argument("anderson_evolve: need >= 2 samples");
    if (std::abs(initial.amplitudes.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("anderson_evolve: initial state must be normalized");
    const Eigen::MatrixXd h = cfg.hamiltonian();
    numerics::Trajectory traj;
    traj.times.reserve(samples);
    traj.states.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = t_end * i / (samples - 1);
        traj.times.push_back(t);
        traj.states.push_back(propagate(h, initial.amplitudes, t));
    }
    return traj;
}

std::vector<double> time_averaged_probabilities(const Eigen::MatrixXd& hamiltonian,
                                                const Eigen::VectorXcd& initial,
                                                double t_end) {
    if (!(t_end > 0.0))
        throw std::invalid_argument("time_averaged_probabilities: need T > 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("time_averaged_probabilities: eigendecomposition failed");
    const Eigen::MatrixXd& q = solver.eigenvectors();
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const Eigen::VectorXcd modes = q.transpose().cast<Complex>() * initial;

    // p_n(t) = sum_k q_nk a_k e^{-i lambda_k t}; averaging |p_n|^2 over [0, T]
    // turns each cross term into (e^{-i dL T} - 1)/(-i dL T).
    const auto n = initial.size();
    std::vector<double> averages(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index site = 0; site < n; ++site) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index k = 0; k < n; ++k) {
            for (Eigen::Index k2 = 0; k2 < n; ++k2) {
                const Complex w = q(site, k) * modes(k) *
                                  std::conj(q(site, k2) * modes(k2));
                const double dl = lambda(k) - lambda(k2);
                if (std::abs(dl) * t_end < 1e-14) {
                    acc += w;
                } else {
                    acc += w * (std::exp(-kI * dl * t_end) - 1.0) /
                           (-kI * dl * t_end);
                }
            }
        }
        averages[static_cast<std::size_t>(site)] = acc.real();
    }
    return averages;
}

LaplaceCoefficients laplace_coefficients(const LatticeConfig& cfg) {
    if (cfg.size() < 2)
        throw std::invalid_argument("laplace_coefficients: need N >= 2");
    const Eigen::MatrixXd h = cfg.hamiltonian();
    const auto n = h.rows();
    LaplaceCoefficients out;
    for (Eigen::Index j = 1; j < n; ++j) {
        out.alpha += h(0, j) * h(0, j);
        double inner = 0.0;
        for (Eigen::Index j2 = 1; j2 < n; ++j2)
            if (j2 != j) inner += h(j, j2) * h(j2, 0);
        out.beta += h(0, j) * inner;
    }
    const double u0 = cfg.onsite;
    out.discriminant = u0 * u0 * u0 - out.alpha * u0 + out.beta;
    out.predicted_limit_zero = out.discriminant != 0.0;
    return out;
}

std::complex<double> p1_laplace(const LatticeConfig& cfg, std::complex<double> s) {
    const LaplaceCoefficients lc = laplace_coefficients(cfg);
    const Complex w = kI * s - cfg.onsite;
    const Complex denom = w * w * w - lc.alpha * w - lc.beta;
    if (std::abs(denom) < 1e-12 * (1.0 + std::norm(w)))
        throw PoleError(s, "p1_laplace: evaluation at a pole");
    return kI * w * w / denom;
}

std::complex<double> p1_from_laplace_poles(const LatticeConfig& cfg, double t) {
    const LaplaceCoefficients lc = laplace_coefficients(cfg);
    // Poles at is - U0 = w_r with w_r^3 - alpha w_r - beta = 0; the residue of
    // P_1 at each pole is w_r^2 / (3 w_r^2 - alpha).
    const auto roots = numerics::cubic_roots(1.0, 0.0, -lc.alpha, -lc.beta);
    Complex p1{0.0, 0.0};
    for (const Complex& w : roots.roots) {
        const Complex denom = 3.0 * w * w - lc.alpha;
        if (std::abs(denom) < 1e-12)
            throw PoleError(w, "p1_from_laplace_poles: repeated pole");
        p1 += w * w / denom * std::exp(-kI * (w + cfg.onsite) * t);
    }
    return p1;
}

ConvergenceReport continuum_convergence(const std::vector<int>& site_counts,
                                        double x_lo, double x_hi, double onsite,
                                        double coupling_gain, double t_end) {
    if (site_counts.empty())
        throw std::invalid_argument("continuum_convergence: empty site list");
    ConvergenceReport report;
    report.site_counts = site_counts;
    for (int n : site_counts) {
        const LatticeConfig cfg =
            LatticeConfig::uniform_line(n, x_lo, x_hi, onsite, coupling_gain);
        if (n == 1) {
            report.functionals.push_back(1.0);  // isolated site, pure phase
        } else {
            Eigen::VectorXcd p0 = Eigen::VectorXcd::Zero(n);
            p0(0) = 1.0;
            report.functionals.push_back(
                time_averaged_probabilities(cfg.hamiltonian(), p0, t_end)[0]);
        }
    }
    for (std::size_t i = 1; i < report.functionals.size(); ++i)
        report.deviations.push_back(
            std::abs(report.functionals[i] - report.functionals[i - 1]));
    return report;
}

double shielding_deviation(const ShieldingConfig& cfg,
                           const AmplitudeState& initial, double t_end) {
    cfg.validate();
    if (initial.amplitudes.size() != cfg.sites)
        throw std::invalid_argument("shielding_deviation: state size != N");
    if (std::abs(initial.amplitudes.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("shielding_deviation: initial state must be normalized");
    // The printed simulation equation carries +i on every term, i.e. the
    // generator of exp(+iHt); reuse the -iH propagator with t -> -t.
    const double sign = cfg.as_printed ? -1.0 : 1.0;
    const Eigen::VectorXcd with_lr =
        propagate(cfg.hamiltonian(true), initial.amplitudes, sign * t_end);
    const Eigen::VectorXcd without_lr =
        propagate(cfg.hamiltonian(false), initial.amplitudes, sign * t_end);
    double worst = 0.0;
    for (Eigen::Index n = 0; n < with_lr.size(); ++n)
        worst = std::max(worst,
                         std::abs(std::norm(with_lr(n)) - std::norm(without_lr(n))));
    return worst;
}

}  // namespace sawtrap::lattice
