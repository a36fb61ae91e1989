// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sawtrap/acoustics.hpp"
#include "sawtrap/hubbard.hpp"
#include "sawtrap/lattice.hpp"
#include "sawtrap/molecule.hpp"
#include "sawtrap/multilayer.hpp"
#include "sawtrap/numerics.hpp"
#include "sawtrap/saw_field.hpp"
#include "sawtrap/trapping.hpp"

namespace {

using namespace sawtrap;
namespace fs = std::filesystem;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& label) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
              << label << "\n";
    if (!ok) ++g_failures;
}

bool check_critical_ratios() {
    return std::abs(hubbard::critical_ratio(1) - 0.085786) < 1e-6 &&
           std::abs(hubbard::critical_ratio(4) - 0.027864) < 1e-6 &&
           std::abs(hubbard::critical_ratio(16) - 0.0075775) < 1e-7;
}

bool check_boundary_consistency() {
    for (int n0 = 1; n0 <= 16; ++n0)
        if (std::abs(hubbard::boundary_tip(n0) - hubbard::critical_ratio(n0)) >
            1e-12)
            return false;
    return true;
}

bool check_field_equivalence() {
    const auto layer = field::IdtLayer::from_wave_number(
        50.0, 3, 10.0, 0.3, 0.3, 1.1, 0.8, 1, 0.02);
    const double u_bar = layer.u_bar();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(-0.2, 0.2);
    std::uniform_real_distribution<double> uz(0.0, 0.02);
    std::uniform_real_distribution<double> ut(0.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = ux(rng), z = uz(rng), t = ut(rng);
        const double finger = field::potential_finger_sum(layer, x, z, t);
        const double closed =
            layer.periods * u_bar * std::exp(-50.0 * z) *
            std::cos(50.0 * (x - 2.0 * layer.wavelength / 3.0 - 10.0 * t));
        if (std::abs(finger - closed) > 1e-10 * (1.0 + std::abs(closed)))
            return false;
    }
    field::HarmonicityGrid grid{0.0, layer.wavelength, 0.004, 0.016,
                                6,   6,                1e-4,  0.3};
    const double coarse = field::check_harmonicity(layer, grid);
    grid.step = 5e-5;
    const double fine = field::check_harmonicity(layer, grid);
    return fine < coarse / 3.0;  // ~4x drop expected at second order
}

bool check_rwa_spectrum() {
    auto spec = molecule::MoleculeSpec::co();
    spec.dipole_field_to_energy = 1.0;
    const double k = 50.0, lambda = 2.0 * std::numbers::pi / k;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::uniform_real_distribution<double> ue(0.0, 50.0);
    double reference = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = ux(rng), envelope = ue(rng);
        const auto h =
            molecule::rotating_frame_hamiltonian(spec, 1, envelope, x, k, lambda);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
        const auto levels = molecule::stark_levels(spec, envelope, 0.4);
        if (std::abs(solver.eigenvalues()(0) - levels.lower) > 1e-12) return false;
        if (std::abs(solver.eigenvalues()(1) - levels.upper) > 1e-12) return false;
        // x-invariance at a fixed envelope.
        const auto h2 = molecule::rotating_frame_hamiltonian(spec, 1, 25.0, x, k,
                                                             lambda);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver2(h2);
        if (i == 0) reference = solver2.eigenvalues()(1);
        if (std::abs(solver2.eigenvalues()(1) - reference) > 1e-12) return false;
    }
    return true;
}

bool check_two_layer_trap() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uk(20.0, 120.0);
    std::uniform_real_distribution<double> ud(0.005, 0.05);
    std::uniform_real_distribution<double> uu(0.2, 3.0);
    int checked = 0;
    while (checked < 100) {
        const double k = uk(rng), gap = ud(rng), u1 = uu(rng), u2 = uu(rng);
        const double ratio = u1 / u2;
        if (!(ratio > std::exp(-k * gap) && ratio < std::exp(k * gap))) continue;
        const auto eq = trapping::two_layer_equilibrium(u1, u2, k, gap);
        const auto roots = numerics::find_roots_bracketed(
            [&](double z) {
                return u1 * u1 * std::exp(-2.0 * k * z) -
                       u2 * u2 * std::exp(-2.0 * k * (gap - z));
            },
            0.0, gap, 4000, 1e-15);
        if (roots.roots.size() != 1) return false;
        if (std::abs(eq.z_star - roots.roots[0].real()) > 1e-12) return false;
        ++checked;
    }
    if (trapping::two_layer_equilibrium(1.3, 1.3, 50.0, 0.02).z_star !=
        0.5 * 0.02)
        return false;
    try {
        trapping::two_layer_equilibrium(3.0, 1.0, 50.0, 0.02);  // ratio > e
        return false;
    } catch (const NoTrapError&) {
    }
    try {
        trapping::two_layer_equilibrium(1.0, 3.0, 50.0, 0.02);  // ratio < 1/e
        return false;
    } catch (const NoTrapError&) {
    }
    return true;
}

molecule::MoleculeSpec unit_molecule(double doublet) {
    molecule::MoleculeSpec spec;
    spec.dipole = 4.0;
    spec.j_prime = 1.0;
    spec.m = 1.0;
    spec.omega_qn = 1.0;
    spec.seeker_sign = 1;
    spec.doublet_split = doublet;
    spec.omega1 = 0.0;
    spec.omega2 = doublet;
    spec.dipole_field_to_energy = 1.0;
    return spec;
}

bool check_divergence_negativity() {
    const auto spec = unit_molecule(0.001);
    const auto layer = field::IdtLayer::from_wave_number(50.0, 1, 0.0, 0.0, 0.0,
                                                         1.0, 1.0, 1, 0.1);
    const auto potential = [&](double x, double z) {
        return field::potential_finger_sum(layer, x, z, 0.0);
    };
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ux(0.0, layer.wavelength);
    std::uniform_real_distribution<double> uz(0.01, 0.08);
    for (int i = 0; i < 100; ++i) {
        if (trapping::force_divergence(potential, spec, 0.001, ux(rng), uz(rng),
                                       1e-4) >= 0.0)
            return false;
    }
    return true;
}

bool check_stability_classification() {
    const auto spec = unit_molecule(0.001);
    const auto layer = field::IdtLayer::from_wave_number(50.0, 1, 0.0, 0.0, 0.0,
                                                         1.0, 1.0, 1, 0.1);
    trapping::ExternalFieldProfile profile;
    profile.kind = trapping::ExternalFieldProfile::Kind::Polynomial;
    profile.coefficients = {60.0, 3900.0, -80000.0, 1.6e6 / 3.0};
    profile.regularizer = 0.01;
    const auto equilibria =
        trapping::find_trap_layers(profile, layer, spec, 1.0, 1e-4, 0.1);
    return equilibria.size() == 2 &&
           equilibria[0].stability == trapping::Stability::Unstable &&
           equilibria[1].stability == trapping::Stability::Stable &&
           equilibria[0].z_star < equilibria[1].z_star;
}

bool check_multilayer() {
    multilayer::LayerStack uniform;
    uniform.heights = {0.0, 0.01, 0.02};
    uniform.binding_exponent = 8.0;
    uniform.width_scale = 0.04;
    uniform.sensitivity = 0.01;
    if (multilayer::oscillation_width(uniform, 2) != 0.04) return false;

    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> gap(0.05, 0.4);
    std::uniform_int_distribution<int> pick_size(2, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const int layers = pick_size(rng);
        std::vector<double> heights{0.0};
        for (int l = 1; l < layers; ++l)
            heights.push_back(heights.back() + gap(rng));
        multilayer::LayerStack stack = uniform;
        stack.heights = heights;
        const double before = std::abs(multilayer::binding_energy(stack));
        std::uniform_int_distribution<int> pick_gap(1, layers - 1);
        const int widened = pick_gap(rng);
        for (int l = widened; l < layers; ++l) stack.heights[l] += 0.05;
        if (!(std::abs(multilayer::binding_energy(stack)) < before)) return false;
    }
    return true;
}

bool check_lattice_dynamics() {
    // Norm drift over T = 10 for the dipolar chain and the shielding chain.
    std::vector<double> xs(5);
    for (int i = 0; i < 5; ++i) xs[i] = 0.1 * (i + 1);
    const auto cfg = lattice::LatticeConfig::line(xs, 2.0, 0.4);
    lattice::AmplitudeState localized;
    localized.amplitudes = Eigen::VectorXcd::Zero(5);
    localized.amplitudes(0) = 1.0;
    const auto traj = lattice::anderson_evolve(cfg, localized, 10.0, 64);
    for (const auto& state : traj.states)
        if (std::abs(state.norm() - 1.0) > 1e-8) return false;

    lattice::ShieldingConfig shield;
    shield.hop = 1.0;
    shield.onsite = 0.1;
    shield.gamma = 2.0;
    shield.long_range = lattice::ShieldingConfig::LongRange::Uniform;
    shield.sites = 20;
    {
        const Eigen::VectorXcd uniform =
            Eigen::VectorXcd::Constant(20, 1.0 / std::sqrt(20.0));
        const auto evolved =
            lattice::propagate(shield.hamiltonian(true), uniform, -10.0);
        if (std::abs(evolved.norm() - 1.0) > 1e-8) return false;
    }

    // Continuum spreading: the N = 500 time average is below the N = 5 one.
    const auto averaged = [](int n) {
        std::vector<double> sites(n);
        for (int i = 0; i < n; ++i) sites[i] = 0.1 * (i + 1);
        const auto chain = lattice::LatticeConfig::line(sites, 2.0, 0.4);
        Eigen::VectorXcd p0 = Eigen::VectorXcd::Zero(n);
        p0(0) = 1.0;
        return lattice::time_averaged_probabilities(chain.hamiltonian(), p0,
                                                    10.0)[0];
    };
    if (!(averaged(500) < averaged(5))) return false;

    // Shielding deviation is non-increasing across N.
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {10, 20, 50, 100}) {
        shield.sites = n;
        lattice::AmplitudeState uniform;
        uniform.amplitudes =
            Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n)));
        const double dev = lattice::shielding_deviation(shield, uniform, 10.0);
        if (dev > previous) return false;
        previous = dev;
    }
    return true;
}

bool check_hubbard() {
    if (std::abs(hubbard::onsite_u(0.1) - hubbard::onsite_u_analytic(0.1)) >
        1e-8 * hubbard::onsite_u_analytic(0.1))
        return false;

    hubbard::LatticeGeometry geom;
    geom.strip_width = 0.005;
    geom.wave_number = 50.0;
    geom.potential_scale = 100.0;
    geom.mass = 28.0;
    geom.sites = 10;
    double previous = std::numeric_limits<double>::infinity();
    for (double z = 0.001; z <= 0.02; z += 0.0005) {
        geom.height = z;
        const double ratio =
            hubbard::hopping_j(geom) / hubbard::onsite_u_analytic(geom.mass);
        if (!(ratio < previous)) return false;
        previous = ratio;
    }

    // A superfluid-to-Mott boundary inside z in (0, 0.02], N in [5, 15].
    bool any_superfluid = false, any_mott = false;
    for (int n = 5; n <= 15; ++n) {
        for (double z = 0.001; z <= 0.02; z += 0.001) {
            geom.sites = n;
            geom.height = z;
            const auto point = hubbard::classify_phase(geom, 1);
            (point.phase == hubbard::Phase::Superfluid ? any_superfluid
                                                       : any_mott) = true;
        }
    }
    if (!any_superfluid || !any_mott) return false;

    // Thermal suppression strictly shrinks the superfluid set on a fixed grid.
    auto thermal_geom = geom;
    thermal_geom.mass = 280.0;
    std::vector<double> zs;
    for (double z = 0.001; z <= 0.02; z += 0.001) zs.push_back(z);
    std::vector<int> ns;
    for (int n = 5; n <= 15; ++n) ns.push_back(n);
    const double u = hubbard::onsite_u_analytic(thermal_geom.mass);
    std::vector<std::vector<bool>> superfluid_sets;
    for (double beta : {0.1, 1.0, 2.0}) {
        std::vector<bool> labels;
        for (double z : zs) {
            for (int n : ns) {
                thermal_geom.height = z;
                thermal_geom.sites = n;
                const double j =
                    hubbard::thermal_hopping(hubbard::hopping_j(thermal_geom), beta);
                labels.push_back(j / u > hubbard::critical_ratio(1));
            }
        }
        superfluid_sets.push_back(labels);
    }
    for (std::size_t level = 1; level < superfluid_sets.size(); ++level) {
        int shrunk = 0;
        for (std::size_t i = 0; i < superfluid_sets[level].size(); ++i) {
            if (superfluid_sets[level][i] && !superfluid_sets[level - 1][i])
                return false;  // not nested
            if (!superfluid_sets[level][i] && superfluid_sets[level - 1][i])
                ++shrunk;
        }
        if (shrunk == 0) return false;  // not strictly smaller
    }
    return true;
}

bool check_acoustics() {
    acoustics::ElasticMedium medium;
    medium.lame_kappa = 2.0;
    medium.lame_mu = 1.0;
    medium.density = 1.0;
    acoustics::PropagationSpec spec;
    spec.wave_number = 1.0;
    spec.velocity = medium.shear_velocity();
    if (std::abs(acoustics::secular_det(medium, spec, 0.0)) > 1e-10) return false;
    spec.velocity = medium.longitudinal_velocity();
    if (std::abs(acoustics::secular_det(medium, spec, 0.0)) > 1e-10) return false;

    spec.velocity = 0.9;
    const auto decay = acoustics::solve_decay_constants(medium, spec);
    double norm = 0.0;
    for (double c : decay.cubic) norm = std::max(norm, std::abs(c));
    for (double r : decay.q.residuals)
        if (r > 1e-8 * norm) return false;
    return true;
}

int run_cli(const std::string& args) {
    const std::string command = std::string(SAWTRAP_CLI_PATH) + " " + args +
                                " > /dev/null 2> /dev/null";
    return WEXITSTATUS(std::system(command.c_str()));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool check_reproducibility() {
    const fs::path dir = fs::temp_directory_path() /
                         ("sawtrap_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    nlohmann::json config;
    config["schema_version"] = 1;
    config["subcommand"] = "phase-diagram";
    config["seed"] = 31415;
    config["output"] = (dir / "out").string();
    config["hubbard"] = {{"n", 10},       {"w", 0.005},    {"k", 50.0},
                         {"b0", 100.0},   {"m0", 28.0},    {"z_min", 0.001},
                         {"z_max", 0.02}, {"z_count", 10}, {"n_min", 5},
                         {"n_max", 15},   {"n0", 1},
                         {"perturb", {{"enabled", true}}}};
    const fs::path config_path = dir / "config.json";
    {
        std::ofstream out(config_path);
        out << config.dump(2);
    }

    bool ok = true;
    if (run_cli("--config " + config_path.string()) != 0) ok = false;
    const std::string first = slurp(dir / "out" / "phase-diagram.csv");
    if (run_cli("--config " + config_path.string()) != 0) ok = false;
    const std::string second = slurp(dir / "out" / "phase-diagram.csv");
    if (first.empty() || first != second) ok = false;

    if (run_cli("--config " + config_path.string() + " --seed 2718 --out " +
                (dir / "other").string()) != 0)
        ok = false;
    const std::string reseeded = slurp(dir / "other" / "phase-diagram.csv");
    if (ok) {
        std::istringstream a(first), b(reseeded);
        std::string line_a, line_b;
        bool differs = false;
        while (std::getline(a, line_a) && std::getline(b, line_b)) {
            if (line_a.rfind('#', 0) == 0) continue;
            if (line_a == line_b) continue;
            differs = true;
            const auto zn = [](const std::string& line) {
                const auto first_comma = line.find(',');
                return line.substr(0, line.find(',', first_comma + 1));
            };
            if (zn(line_a) != zn(line_b)) ok = false;  // grid columns moved
        }
        if (!differs) ok = false;
    }
    fs::remove_all(dir);
    return ok;
}

}  // namespace

int main() {
    report(1, check_critical_ratios(), "critical ratios f_n0");
    report(2, check_boundary_consistency(),
           "phase-boundary tip equals the critical ratio");
    report(3, check_field_equivalence(),
           "finger sum matches the closed form; harmonic at second order");
    report(4, check_rwa_spectrum(), "rotating-frame spectrum, x-invariant");
    report(5, check_two_layer_trap(),
           "two-layer equilibrium: closed form, symmetry, no-trap band");
    report(6, check_divergence_negativity(), "force divergence is negative");
    report(7, check_stability_classification(),
           "nonuniform field: two equilibria, unstable below stable");
    report(8, check_multilayer(), "multilayer widths and binding trend");
    report(9, check_lattice_dynamics(),
           "norm conservation, continuum spreading, shielding trend");
    report(10, check_hubbard(),
           "onsite U, J/U monotonicity, phase boundary, thermal nesting");
    report(11, check_acoustics(), "secular roots and residuals");
    report(12, check_reproducibility(), "seeded phase-diagram reproducibility");

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
