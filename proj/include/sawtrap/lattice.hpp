#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sawtrap/errors.hpp"
#include "sawtrap/numerics.hpp"

namespace sawtrap::lattice {

/// Trap sites coupled by dipolar hopping v_nj = c / |x_n - x_j|^3.
struct LatticeConfig {
    std::vector<Eigen::Vector2d> positions;  // pairwise distinct, [m]
    double onsite = 0.0;                     // U0
    double coupling_gain = 0.0;              // c, [energy * m^3]

    /// Sites on a line at the given x coordinates.
    static LatticeConfig line(const std::vector<double>& xs, double onsite,
                              double coupling_gain);
    /// N equally spaced sites spanning [x_lo, x_hi] on a line.
    static LatticeConfig uniform_line(int n, double x_lo, double x_hi,
                                      double onsite, double coupling_gain);

    std::size_t size() const { return positions.size(); }
    void validate() const;
    /// Hermitian generator U0*I + V with v_nj = c / |x_n - x_j|^3.
    Eigen::MatrixXd hamiltonian() const;
};

/// Nearest-neighbour chain with optional long-range coupling, open boundaries.
struct ShieldingConfig {
    enum class LongRange { Off, Uniform, PowerLaw };

    int sites = 2;          // N
    double hop = 1.0;       // V
    double onsite = 0.0;    // U0
    double gamma = 0.0;     // uniform long-range strength
    LongRange long_range = LongRange::Off;
    // Evolve under +i(V, gamma, U0) exactly as the simulation equation is
    // printed; flipping this uses the Hamiltonian-consistent -iH generator.
    bool as_printed = true;

    void validate() const;
    Eigen::MatrixXd hamiltonian(bool with_long_range) const;
};

struct AmplitudeState {
    Eigen::VectorXcd amplitudes;
    double time = 0.0;
};

struct LaplaceCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double discriminant = 0.0;  // U0^3 - alpha U0 + beta
    bool predicted_limit_zero = true;  // lim_{t->inf} p1 = 0 iff discriminant != 0
};

struct ConvergenceReport {
    std::vector<int> site_counts;
    std::vector<double> functionals;  // time-averaged |p_1|^2 at each N
    std::vector<double> deviations;   // |f(N_i) - f(N_{i-1})|
};

/// exp(-i H t) v for real symmetric H, by eigendecomposition.
Eigen::VectorXcd propagate(const Eigen::MatrixXd& hamiltonian,
                           const Eigen::VectorXcd& initial, double t);

/// Evolve p' = -i (U0 I + V) p and sample the trajectory.
numerics::Trajectory anderson_evolve(const LatticeConfig& cfg,
                                     const AmplitudeState& initial, double t_end,
                                     int samples = 200);

/// Exact time average of |p_n(t)|^2 over [0, T] from the spectral expansion.
std::vector<double> time_averaged_probabilities(const Eigen::MatrixXd& hamiltonian,
                                                const Eigen::VectorXcd& initial,
                                                double t_end);

/// alpha = sum_{j>=2} v_1j^2; beta = sum_{j>=2} v_1j sum_{j'>=2, j'!=j} v_jj' v_j'1.
LaplaceCoefficients laplace_coefficients(const LatticeConfig& cfg);

/// P_1(s) = i (is - U0)^2 / ((is - U0)^3 - alpha (is - U0) - beta).
/// Throws PoleError when s sits on a pole.
std::complex<double> p1_laplace(const LatticeConfig& cfg, std::complex<double> s);

/// p_1(t) by residue summation over the three poles of P_1(s).
std::complex<double> p1_from_laplace_poles(const LatticeConfig& cfg, double t);

/// Time-averaged |p_1|^2 for N sites spanning [x_lo, x_hi], per N in site_counts.
ConvergenceReport continuum_convergence(const std::vector<int>& site_counts,
                                        double x_lo, double x_hi, double onsite,
                                        double coupling_gain, double t_end);

/// max_n | |c_n(T)|^2 (long range on) - |c_n(T)|^2 (long range off) |.
double shielding_deviation(const ShieldingConfig& cfg,
                           const AmplitudeState& initial, double t_end);

}  // namespace sawtrap::lattice
