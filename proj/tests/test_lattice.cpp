#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "sawtrap/lattice.hpp"

using namespace sawtrap;
using Complex = std::complex<double>;

namespace {

lattice::LatticeConfig dipolar_chain(int n, double onsite = 2.0, double c = 0.4) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = 0.1 * (i + 1);
    return lattice::LatticeConfig::line(xs, onsite, c);
}

lattice::AmplitudeState localized(int n) {
    lattice::AmplitudeState state;
    state.amplitudes = Eigen::VectorXcd::Zero(n);
    state.amplitudes(0) = 1.0;
    return state;
}

}  // namespace

TEST_CASE("single site keeps unit probability") {
    const auto cfg = lattice::LatticeConfig::line({0.0}, 2.0, 0.4);
    const auto traj = lattice::anderson_evolve(cfg, localized(1), 5.0, 50);
    for (const auto& state : traj.states)
        CHECK(std::abs(std::norm(state(0)) - 1.0) < 1e-12);
}

TEST_CASE("two sites Rabi-oscillate at the dipolar coupling") {
    const double d = 0.25, c = 0.4;
    const auto cfg = lattice::LatticeConfig::line({0.0, d}, 2.0, c);
    const double rabi = c / (d * d * d);
    const auto traj = lattice::anderson_evolve(cfg, localized(2), 2.0, 80);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double expected = std::cos(rabi * traj.times[i]);
        CHECK(std::abs(std::norm(traj.states[i](0)) - expected * expected) < 1e-10);
    }
}

TEST_CASE("coincident sites are rejected") {
    CHECK_THROWS_AS(lattice::LatticeConfig::line({0.1, 0.1}, 2.0, 0.4),
                    std::invalid_argument);
}

TEST_CASE("norm drift stays below 1e-8 over T = 10") {
    SUBCASE("dipolar chain") {
        const auto cfg = dipolar_chain(5);
        const auto traj = lattice::anderson_evolve(cfg, localized(5), 10.0, 64);
        for (const auto& state : traj.states)
            CHECK(std::abs(state.norm() - 1.0) < 1e-8);
    }
    SUBCASE("shielding chain, both sign conventions") {
        for (bool printed : {true, false}) {
            lattice::ShieldingConfig cfg;
            cfg.sites = 20;
            cfg.hop = 1.0;
            cfg.onsite = 0.1;
            cfg.gamma = 2.0;
            cfg.long_range = lattice::ShieldingConfig::LongRange::Uniform;
            cfg.as_printed = printed;
            lattice::AmplitudeState uniform;
            uniform.amplitudes =
                Eigen::VectorXcd::Constant(20, 1.0 / std::sqrt(20.0));
            const Eigen::VectorXcd evolved = lattice::propagate(
                cfg.hamiltonian(true), uniform.amplitudes, printed ? -10.0 : 10.0);
            CHECK(std::abs(evolved.norm() - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("exact time average matches a dense trajectory average") {
    const auto cfg = dipolar_chain(4);
    const auto h = cfg.hamiltonian();
    const auto exact =
        lattice::time_averaged_probabilities(h, localized(4).amplitudes, 10.0);
    // Riemann average over a fine grid.
    const int steps = 4000;
    std::vector<double> riemann(4, 0.0);
    for (int i = 0; i < steps; ++i) {
        const double t = 10.0 * (i + 0.5) / steps;
        const auto state = lattice::propagate(h, localized(4).amplitudes, t);
        for (int n = 0; n < 4; ++n) riemann[n] += std::norm(state(n)) / steps;
    }
    for (int n = 0; n < 4; ++n)
        CHECK(exact[n] == doctest::Approx(riemann[n]).epsilon(1e-4));
}

TEST_CASE("laplace coefficients") {
    SUBCASE("two sites have no intermediate path") {
        const auto cfg = lattice::LatticeConfig::line({0.0, 0.2}, 2.0, 0.4);
        const auto lc = lattice::laplace_coefficients(cfg);
        const double v = 0.4 / (0.2 * 0.2 * 0.2);
        CHECK(lc.alpha == doctest::Approx(v * v).epsilon(1e-12));
        CHECK(lc.beta == 0.0);
    }
    SUBCASE("three equally spaced sites by hand") {
        const double d = 0.1, c = 0.4;
        const auto cfg = lattice::LatticeConfig::line({0.0, d, 2.0 * d}, 2.0, c);
        const double v1 = c / (d * d * d);           // neighbours
        const double v2 = c / (8.0 * d * d * d);     // next-nearest
        const auto lc = lattice::laplace_coefficients(cfg);
        CHECK(lc.alpha == doctest::Approx(v1 * v1 + v2 * v2).epsilon(1e-12));
        // beta = v12 (v23 v31) + v13 (v32 v21) = 2 v1^2 v2.
        CHECK(lc.beta == doctest::Approx(2.0 * v1 * v1 * v2).epsilon(1e-12));
        CHECK(lc.discriminant ==
              doctest::Approx(8.0 - lc.alpha * 2.0 + lc.beta).epsilon(1e-10));
        CHECK(lc.predicted_limit_zero);
    }
}

TEST_CASE("laplace transform of the single-site limit") {
    const auto cfg = lattice::LatticeConfig::line({0.0, 1e4}, 2.0, 0.4);
    // Couplings ~ 4e-13: effectively alpha = beta = 0.
    const Complex s{0.3, 0.1};
    const Complex expected = Complex(0, 1) / (Complex(0, 1) * s - 2.0);
    CHECK(std::abs(lattice::p1_laplace(cfg, s) - expected) < 1e-9);
    // Large |s| asymptotics: P1 ~ 1/s.
    const Complex big{1e6, 0.0};
    CHECK(std::abs(lattice::p1_laplace(cfg, big) * big - 1.0) < 1e-5);
}

TEST_CASE("pole evaluation is reported with its location") {
    const auto cfg = lattice::LatticeConfig::line({0.0, 1e4}, 2.0, 0.4);
    // is - U0 = 0 at s = -2i up to the negligible coupling.
    CHECK_THROWS_AS(lattice::p1_laplace(cfg, Complex(0.0, -2.0)), PoleError);
}

TEST_CASE("s -> 0 limit of s P1(s) vanishes when the discriminant is nonzero") {
    const auto cfg = dipolar_chain(5);
    const auto lc = lattice::laplace_coefficients(cfg);
    REQUIRE(lc.discriminant != 0.0);
    for (double s : {1e-3, 1e-5, 1e-7}) {
        const Complex val = lattice::p1_laplace(cfg, Complex(s, 0.0));
        CHECK(std::abs(s * val) < 10.0 * s);
    }
}

TEST_CASE("residue inversion tracks the dynamics perturbatively") {
    // c/d^3 = 0.05 << U0 = 2.
    const auto cfg = lattice::LatticeConfig::line({0.0, 1.0, 2.0}, 2.0, 0.05);
    const auto h = cfg.hamiltonian();
    const double horizon = 2.0 * std::numbers::pi / 2.0;
    for (double t : {0.3, 1.0, 2.0, horizon}) {
        const Complex from_poles = lattice::p1_from_laplace_poles(cfg, t);
        const Complex from_ode =
            lattice::propagate(h, localized(3).amplitudes, t)(0);
        CHECK(std::abs(from_poles - from_ode) / std::abs(from_ode) < 0.1);
    }
}

TEST_CASE("continuum functional converges with refinement") {
    const auto report = lattice::continuum_convergence({5, 20, 80, 320}, 0.1,
                                                       2.0, 2.0, 0.4, 10.0);
    REQUIRE(report.functionals.size() == 4);
    REQUIRE(report.deviations.size() == 3);
    CHECK(report.deviations[1] < report.deviations[0]);
    CHECK(report.deviations[2] < report.deviations[1]);
    // Identical refinement level twice: no deviation.
    const auto fixed =
        lattice::continuum_convergence({10, 10}, 0.1, 2.0, 2.0, 0.4, 10.0);
    CHECK(fixed.deviations[0] == 0.0);
}

TEST_CASE("shielding deviation") {
    lattice::ShieldingConfig cfg;
    cfg.sites = 12;
    cfg.hop = 1.0;
    cfg.onsite = 0.1;
    cfg.gamma = 0.0;
    cfg.long_range = lattice::ShieldingConfig::LongRange::Uniform;
    lattice::AmplitudeState uniform;
    uniform.amplitudes = Eigen::VectorXcd::Constant(12, 1.0 / std::sqrt(12.0));
    SUBCASE("gamma = 0 leaves the dynamics untouched") {
        CHECK(lattice::shielding_deviation(cfg, uniform, 10.0) < 1e-14);
    }
    SUBCASE("two-site uniform case matches the analytic phase argument") {
        lattice::ShieldingConfig two = cfg;
        two.sites = 2;
        two.gamma = 2.0;
        lattice::AmplitudeState plus;
        plus.amplitudes = Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0));
        // (1,1)/sqrt(2) is an eigenvector of both generators: populations are
        // stationary, so the long-range term changes nothing measurable.
        CHECK(lattice::shielding_deviation(two, plus, 10.0) < 1e-10);
    }
}
