#include "sawtrap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "sawtrap/acoustics.hpp"
#include "sawtrap/hubbard.hpp"
#include "sawtrap/lattice.hpp"
#include "sawtrap/molecule.hpp"
#include "sawtrap/multilayer.hpp"
#include "sawtrap/saw_field.hpp"
#include "sawtrap/trapping.hpp"

namespace sawtrap::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kSubcommands = {
    "fields",     "stark",      "trap-map",      "trap-layers", "multilayer",
    "anderson",   "shielding",  "hubbard-params", "phase-diagram", "acoustics"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError(field, "config error at '" + field + "': " + what);
}

const json& block(const json& raw, const std::string& name) {
    if (!raw.contains(name) || !raw.at(name).is_object())
        fail(name, "missing required block");
    return raw.at(name);
}

double num(const json& b, const std::string& block_name, const std::string& key) {
    if (!b.contains(key)) fail(block_name + "." + key, "missing required number");
    if (!b.at(key).is_number())
        fail(block_name + "." + key, "expected a number");
    return b.at(key).get<double>();
}

double num_or(const json& b, const std::string& block_name,
              const std::string& key, double fallback) {
    if (!b.contains(key)) return fallback;
    if (!b.at(key).is_number())
        fail(block_name + "." + key, "expected a number");
    return b.at(key).get<double>();
}

int int_or(const json& b, const std::string& block_name, const std::string& key,
           int fallback) {
    const double v = num_or(b, block_name, key, fallback);
    if (v != std::floor(v)) fail(block_name + "." + key, "expected an integer");
    return static_cast<int>(v);
}

std::string str_or(const json& b, const std::string& block_name,
                   const std::string& key, const std::string& fallback) {
    if (!b.contains(key)) return fallback;
    if (!b.at(key).is_string())
        fail(block_name + "." + key, "expected a string");
    return b.at(key).get<std::string>();
}

bool bool_or(const json& b, const std::string& block_name,
             const std::string& key, bool fallback) {
    if (!b.contains(key)) return fallback;
    if (!b.at(key).is_boolean())
        fail(block_name + "." + key, "expected a boolean");
    return b.at(key).get<bool>();
}

std::vector<double> grid_values(double lo, double hi, int count) {
    std::vector<double> values(count);
    for (int i = 0; i < count; ++i)
        values[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return values;
}

field::IdtLayer parse_layer(const json& raw) {
    const json& b = block(raw, "layer");
    const double gap = num(b, "layer", "D");
    if (!(gap > 0.0)) fail("layer.D", "layer gap must be positive");
    const int periods = int_or(b, "layer", "M", 1);
    if (periods < 1) fail("layer.M", "period count must be >= 1");
    const int index = int_or(b, "layer", "index", 1);
    if (index != 1 && index != 2) fail("layer.index", "layer index must be 1 or 2");
    try {
        if (b.contains("wavelength"))
            return field::IdtLayer::from_wavelength(
                num(b, "layer", "wavelength"), periods,
                num_or(b, "layer", "velocity", 0.0), num_or(b, "layer", "v0", 0.0),
                num_or(b, "layer", "v1", 0.0), num_or(b, "layer", "v2", 1.0),
                num_or(b, "layer", "b0", 1.0), index, gap);
        return field::IdtLayer::from_wave_number(
            num(b, "layer", "k"), periods, num_or(b, "layer", "velocity", 0.0),
            num_or(b, "layer", "v0", 0.0), num_or(b, "layer", "v1", 0.0),
            num_or(b, "layer", "v2", 1.0), num_or(b, "layer", "b0", 1.0), index,
            gap);
    } catch (const std::invalid_argument& e) {
        fail("layer", e.what());
    }
}

molecule::MoleculeSpec parse_molecule(const json& raw) {
    const json& b = block(raw, "molecule");
    molecule::MoleculeSpec spec;
    const std::string preset = str_or(b, "molecule", "preset", "");
    if (preset == "co") {
        spec = molecule::MoleculeSpec::co();
    } else if (preset == "oh") {
        spec = molecule::MoleculeSpec::oh();
    } else if (!preset.empty()) {
        fail("molecule.preset", "unknown preset '" + preset + "'");
    }
    spec.dipole = num_or(b, "molecule", "dipole", spec.dipole);
    spec.doublet_split = num_or(b, "molecule", "doublet", spec.doublet_split);
    spec.j_prime = num_or(b, "molecule", "j_prime", spec.j_prime);
    spec.m = num_or(b, "molecule", "m", spec.m);
    spec.omega_qn = num_or(b, "molecule", "omega", spec.omega_qn);
    spec.seeker_sign = int_or(b, "molecule", "seeker_sign", spec.seeker_sign);
    spec.mass = num_or(b, "molecule", "mass", spec.mass);
    spec.omega1 = num_or(b, "molecule", "omega1", spec.omega1);
    spec.omega2 = spec.omega1 + spec.doublet_split;
    if (bool_or(b, "molecule", "unit_conversion", false))
        spec.dipole_field_to_energy = 1.0;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        fail("molecule", e.what());
    }
    return spec;
}

trapping::ExternalFieldProfile parse_profile(const json& raw) {
    const json& b = block(raw, "profile");
    trapping::ExternalFieldProfile profile;
    const std::string kind = str_or(b, "profile", "kind", "power_law");
    if (kind == "power_law")
        profile.kind = trapping::ExternalFieldProfile::Kind::PowerLaw;
    else if (kind == "sinusoidal")
        profile.kind = trapping::ExternalFieldProfile::Kind::Sinusoidal;
    else if (kind == "polynomial")
        profile.kind = trapping::ExternalFieldProfile::Kind::Polynomial;
    else if (kind == "tabulated")
        profile.kind = trapping::ExternalFieldProfile::Kind::Tabulated;
    else
        fail("profile.kind", "unknown kind '" + kind + "'");
    profile.amplitude = num_or(b, "profile", "amplitude", 0.0);
    profile.exponent = num_or(b, "profile", "exponent", 1.0);
    if (b.contains("coefficients"))
        profile.coefficients = b.at("coefficients").get<std::vector<double>>();
    const std::string env = str_or(b, "profile", "envelope", "none");
    if (env == "none")
        profile.envelope = trapping::ExternalFieldProfile::Envelope::None;
    else if (env == "sine")
        profile.envelope = trapping::ExternalFieldProfile::Envelope::Sine;
    else if (env == "cosine")
        profile.envelope = trapping::ExternalFieldProfile::Envelope::Cosine;
    else
        fail("profile.envelope", "unknown envelope '" + env + "'");
    profile.envelope_period =
        num_or(b, "profile", "envelope_period", profile.envelope_period);
    profile.regularizer = num_or(b, "profile", "regularizer", profile.regularizer);
    profile.gain = num_or(b, "profile", "gain", profile.gain);
    if (b.contains("table"))
        for (const auto& pair : b.at("table"))
            profile.table.emplace_back(pair.at(0).get<double>(),
                                       pair.at(1).get<double>());
    try {
        profile.validate();
    } catch (const std::invalid_argument& e) {
        fail("profile", e.what());
    }
    return profile;
}

multilayer::LayerStack parse_stack(const json& raw) {
    const json& b = block(raw, "stack");
    multilayer::LayerStack stack;
    if (!b.contains("heights")) fail("stack.heights", "missing height list");
    stack.heights = b.at("heights").get<std::vector<double>>();
    stack.mass = num_or(b, "stack", "mass", stack.mass);
    stack.trap_frequency = num_or(b, "stack", "omega", stack.trap_frequency);
    stack.binding_exponent = num_or(b, "stack", "alpha", stack.binding_exponent);
    stack.width_scale = num_or(b, "stack", "r0", stack.width_scale);
    stack.sensitivity = num_or(b, "stack", "xi", stack.sensitivity);
    try {
        stack.validate();
    } catch (const std::invalid_argument& e) {
        fail("stack", e.what());
    }
    return stack;
}

hubbard::LatticeGeometry parse_geometry(const json& b) {
    hubbard::LatticeGeometry geom;
    geom.sites = int_or(b, "hubbard", "n", geom.sites);
    geom.strip_width = num_or(b, "hubbard", "w", geom.strip_width);
    geom.height = num_or(b, "hubbard", "z", geom.height);
    geom.wave_number = num_or(b, "hubbard", "k", geom.wave_number);
    geom.potential_scale = num_or(b, "hubbard", "b0", geom.potential_scale);
    geom.mass = num_or(b, "hubbard", "m0", geom.mass);
    geom.include_kinetic =
        bool_or(b, "hubbard", "include_kinetic", geom.include_kinetic);
    try {
        geom.validate();
    } catch (const std::invalid_argument& e) {
        fail("hubbard", e.what());
    }
    return geom;
}

ResultTable run_fields(const ExperimentConfig& config) {
    const field::IdtLayer layer = parse_layer(config.raw);
    const json& b = block(config.raw, "grid");
    const auto xs = grid_values(num_or(b, "grid", "x_min", 0.0),
                                num_or(b, "grid", "x_max", layer.wavelength),
                                int_or(b, "grid", "nx", 32));
    const auto zs = grid_values(num_or(b, "grid", "z_min", 0.0),
                                num_or(b, "grid", "z_max", layer.layer_gap),
                                int_or(b, "grid", "nz", 32));
    const double t = num_or(b, "grid", "t", 0.0);
    ResultTable table;
    table.name = "fields";
    table.columns = {"x", "z", "ex", "ez"};
    for (double x : xs)
        for (double z : zs) {
            const auto sample = field::field_closed_form(layer, layer.u_bar(), x, z, t);
            table.add_row({format_double(x), format_double(z),
                           format_double(sample.ex), format_double(sample.ez)});
        }
    return table;
}

ResultTable run_stark(const ExperimentConfig& config) {
    const molecule::MoleculeSpec spec = parse_molecule(config.raw);
    const json& b = block(config.raw, "stark");
    const auto envelopes = grid_values(num_or(b, "stark", "e_min", 0.0),
                                       num_or(b, "stark", "e_max", 1000.0),
                                       int_or(b, "stark", "count", 101));
    const double e_lambda = num_or(b, "stark", "e_lambda", spec.doublet_split);
    ResultTable table;
    table.name = "stark";
    table.columns = {"envelope", "lower", "mean", "upper"};
    for (double envelope : envelopes) {
        const auto levels = molecule::stark_levels(spec, envelope, e_lambda);
        table.add_row({format_double(envelope), format_double(levels.lower),
                       format_double(levels.mean), format_double(levels.upper)});
    }
    return table;
}

ResultTable run_trap_map(const ExperimentConfig& config) {
    const json& b = block(config.raw, "trap_map");
    const double k = num(b, "trap_map", "k");
    const double gap = num(b, "trap_map", "D");
    if (!(gap > 0.0)) fail("trap_map.D", "layer gap must be positive");
    const auto u1s = grid_values(num_or(b, "trap_map", "u1_min", 0.1),
                                 num_or(b, "trap_map", "u1_max", 2.0),
                                 int_or(b, "trap_map", "n1", 40));
    const auto u2s = grid_values(num_or(b, "trap_map", "u2_min", 0.1),
                                 num_or(b, "trap_map", "u2_max", 2.0),
                                 int_or(b, "trap_map", "n2", 40));
    ResultTable table;
    table.name = "trap-map";
    table.columns = {"u1", "u2", "z0_over_D", "trapped"};
    for (double u1 : u1s)
        for (double u2 : u2s) {
            std::string z0 = "nan", trapped = "0";
            try {
                const auto eq = trapping::two_layer_equilibrium(u1, u2, k, gap);
                z0 = format_double(eq.z_star / gap);
                trapped = "1";
            } catch (const NoTrapError&) {
            }
            table.add_row({format_double(u1), format_double(u2), z0, trapped});
        }
    return table;
}

ResultTable run_trap_layers(const ExperimentConfig& config) {
    const field::IdtLayer layer = parse_layer(config.raw);
    const molecule::MoleculeSpec spec = parse_molecule(config.raw);
    const trapping::ExternalFieldProfile profile = parse_profile(config.raw);
    const json& b = block(config.raw, "trap_layers");
    const double u_bar = num_or(b, "trap_layers", "u_bar", layer.u_bar());
    const double z_lo = num_or(b, "trap_layers", "z_lo", 1e-4 * layer.layer_gap);
    const double z_hi = num_or(b, "trap_layers", "z_hi", layer.layer_gap);
    const int scan = int_or(b, "trap_layers", "scan_points", 2000);
    const auto equilibria =
        trapping::find_trap_layers(profile, layer, spec, u_bar, z_lo, z_hi, scan);
    ResultTable table;
    table.name = "trap-layers";
    table.columns = {"z_star", "stability", "residual"};
    for (const auto& eq : equilibria)
        table.add_row({format_double(eq.z_star),
                       eq.stability == trapping::Stability::Stable ? "stable"
                                                                   : "unstable",
                       format_double(eq.residual_force)});
    return table;
}

ResultTable run_multilayer(const ExperimentConfig& config) {
    const multilayer::LayerStack stack = parse_stack(config.raw);
    const double binding = multilayer::binding_energy(stack);
    ResultTable table;
    table.name = "multilayer";
    table.columns = {"layer", "height", "width", "binding_energy"};
    for (std::size_t l = 1; l <= stack.size(); ++l)
        table.add_row({std::to_string(l), format_double(stack.heights[l - 1]),
                       format_double(multilayer::oscillation_width(stack, l)),
                       format_double(binding)});
    return table;
}

ResultTable run_anderson(const ExperimentConfig& config) {
    const json& b = block(config.raw, "lattice");
    lattice::LatticeConfig cfg;
    if (b.contains("positions")) {
        cfg = lattice::LatticeConfig::line(
            b.at("positions").get<std::vector<double>>(),
            num_or(b, "lattice", "onsite", 0.0),
            num_or(b, "lattice", "coupling", 0.0));
    } else {
        cfg = lattice::LatticeConfig::uniform_line(
            int_or(b, "lattice", "n", 5), num_or(b, "lattice", "x_lo", 0.0),
            num_or(b, "lattice", "x_hi", 1.0),
            num_or(b, "lattice", "onsite", 0.0),
            num_or(b, "lattice", "coupling", 0.0));
    }
    const double t_end = num_or(b, "lattice", "t_end", 10.0);
    const int samples = int_or(b, "lattice", "samples", 101);
    lattice::AmplitudeState initial;
    initial.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cfg.size()));
    initial.amplitudes(0) = 1.0;
    const auto traj = lattice::anderson_evolve(cfg, initial, t_end, samples);
    ResultTable table;
    table.name = "anderson";
    table.columns = {"t", "site", "probability"};
    for (std::size_t i = 0; i < traj.size(); ++i)
        for (Eigen::Index n = 0; n < traj.states[i].size(); ++n)
            table.add_row({format_double(traj.times[i]),
                           std::to_string(n + 1),
                           format_double(std::norm(traj.states[i](n)))});
    return table;
}

ResultTable run_shielding(const ExperimentConfig& config) {
    const json& b = block(config.raw, "shielding");
    std::vector<int> counts{10, 20, 50, 100};
    if (b.contains("site_counts"))
        counts = b.at("site_counts").get<std::vector<int>>();
    lattice::ShieldingConfig cfg;
    cfg.hop = num_or(b, "shielding", "hop", 1.0);
    cfg.onsite = num_or(b, "shielding", "onsite", 0.1);
    cfg.gamma = num_or(b, "shielding", "gamma", 2.0);
    cfg.as_printed = bool_or(b, "shielding", "as_printed", true);
    const std::string lr = str_or(b, "shielding", "long_range", "uniform");
    if (lr == "uniform")
        cfg.long_range = lattice::ShieldingConfig::LongRange::Uniform;
    else if (lr == "power_law")
        cfg.long_range = lattice::ShieldingConfig::LongRange::PowerLaw;
    else if (lr == "off")
        cfg.long_range = lattice::ShieldingConfig::LongRange::Off;
    else
        fail("shielding.long_range", "unknown mode '" + lr + "'");
    const double t_end = num_or(b, "shielding", "t_end", 10.0);
    ResultTable table;
    table.name = "shielding";
    table.columns = {"N", "deviation"};
    for (int n : counts) {
        cfg.sites = n;
        lattice::AmplitudeState initial;
        initial.amplitudes =
            Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n)));
        table.add_row({std::to_string(n),
                       format_double(lattice::shielding_deviation(cfg, initial,
                                                                  t_end))});
    }
    return table;
}

ResultTable run_hubbard_params(const ExperimentConfig& config) {
    const json& b = block(config.raw, "hubbard");
    hubbard::LatticeGeometry geom = parse_geometry(b);
    const auto zs = grid_values(num_or(b, "hubbard", "z_min", 0.001),
                                num_or(b, "hubbard", "z_max", 0.02),
                                int_or(b, "hubbard", "z_count", 50));
    const double u = hubbard::onsite_u_analytic(geom.mass);
    ResultTable table;
    table.name = "hubbard-params";
    table.columns = {"z", "J", "U", "eps", "J_over_U", "eps_over_U"};
    for (double z : zs) {
        geom.height = z;
        const double j = hubbard::hopping_j(geom);
        const double eps = hubbard::onsite_eps(geom);
        table.add_row({format_double(z), format_double(j), format_double(u),
                       format_double(eps), format_double(j / u),
                       format_double(eps / u)});
    }
    return table;
}

ResultTable run_phase_diagram(const ExperimentConfig& config) {
    const json& b = block(config.raw, "hubbard");
    const hubbard::LatticeGeometry geom = parse_geometry(b);
    const auto zs = grid_values(num_or(b, "hubbard", "z_min", 0.001),
                                num_or(b, "hubbard", "z_max", 0.02),
                                int_or(b, "hubbard", "z_count", 20));
    std::vector<int> ns;
    if (b.contains("n_values")) {
        ns = b.at("n_values").get<std::vector<int>>();
    } else {
        const int n_min = int_or(b, "hubbard", "n_min", 5);
        const int n_max = int_or(b, "hubbard", "n_max", 15);
        for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
    }
    const int n0 = int_or(b, "hubbard", "n0", 1);
    hubbard::PerturbationSpec perturb;
    if (b.contains("perturb")) {
        const json& p = b.at("perturb");
        perturb.enabled = bool_or(p, "hubbard.perturb", "enabled", true);
        perturb.j_bound = num_or(p, "hubbard.perturb", "j_bound", perturb.j_bound);
        perturb.eps_bound =
            num_or(p, "hubbard.perturb", "eps_bound", perturb.eps_bound);
    }
    const double beta = num_or(b, "hubbard", "beta_delta_u", 0.0);
    const auto grid =
        hubbard::phase_diagram(zs, ns, geom, n0, perturb, config.seed, beta);
    ResultTable table;
    table.name = "phase-diagram";
    table.columns = {"z", "N", "delta_j", "delta_eps", "J_over_U", "phase"};
    for (const auto& point : grid)
        table.add_row(
            {format_double(point.z), std::to_string(point.sites),
             format_double(point.delta_j), format_double(point.delta_eps),
             format_double(point.j_over_u),
             point.phase == hubbard::Phase::Superfluid ? "superfluid" : "mott"});
    return table;
}

ResultTable run_acoustics(const ExperimentConfig& config) {
    const json& b = block(config.raw, "acoustics");
    acoustics::ElasticMedium medium;
    medium.lame_kappa = num(b, "acoustics", "kappa");
    medium.lame_mu = num(b, "acoustics", "mu");
    medium.density = num(b, "acoustics", "rho");
    acoustics::PropagationSpec spec;
    spec.angle = num_or(b, "acoustics", "theta", 0.0);
    spec.velocity = num(b, "acoustics", "v");
    spec.wave_number = num_or(b, "acoustics", "k", 1.0);
    try {
        medium.validate();
        spec.validate();
    } catch (const std::invalid_argument& e) {
        fail("acoustics", e.what());
    }
    const auto decay = acoustics::solve_decay_constants(medium, spec);
    ResultTable table;
    table.name = "acoustics";
    table.columns = {"root", "q_re", "q_im", "residual", "repeated"};
    for (std::size_t i = 0; i < decay.q.roots.size(); ++i)
        table.add_row({std::to_string(i + 1),
                       format_double(decay.q.roots[i].real()),
                       format_double(decay.q.roots[i].imag()),
                       format_double(decay.q.residuals[i]),
                       decay.repeated ? "1" : "0"});
    return table;
}

json* navigate(json& root, const std::string& path, std::string* leaf) {
    json* node = &root;
    std::size_t begin = 0;
    while (true) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (key.empty()) return nullptr;
        if (dot == std::string::npos) {
            *leaf = key;
            return node;
        }
        if (!node->contains(key) || !(*node)[key].is_object())
            (*node)[key] = json::object();
        node = &(*node)[key];
        begin = dot + 1;
    }
}

}  // namespace

void ResultTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw std::logic_error("ResultTable: row width mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::uint64_t hash_config(const json& config) {
    const std::string canonical = config.dump();
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    out << "# tool_version: " << kToolVersion << "\n";
    out << "# schema_version: " << kSchemaVersion << "\n";
    out << "# config_hash: " << std::hex << config_hash << std::dec << "\n";
    out << "# seed: " << seed << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            out << row[c] << (c + 1 < row.size() ? "," : "\n");
    return out.str();
}

json ResultTable::to_json() const {
    json out;
    out["metadata"] = {{"tool_version", kToolVersion},
                       {"schema_version", kSchemaVersion},
                       {"config_hash", config_hash},
                       {"seed", seed}};
    out["columns"] = columns;
    out["rows"] = rows;
    return out;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("config", "cannot open '" + path.string() + "'");
    json raw;
    try {
        raw = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("config", std::string("parse failure: ") + e.what());
    }
    return from_json(raw);
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) fail("config", "top level must be an object");
    ExperimentConfig config;
    config.raw = j;
    if (!j.contains("schema_version") ||
        !j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<int>() != kSchemaVersion)
        fail("schema_version", "expected integer schema_version = 1");
    if (!j.contains("subcommand") || !j.at("subcommand").is_string())
        fail("subcommand", "missing subcommand name");
    config.subcommand = j.at("subcommand").get<std::string>();
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer())
            fail("seed", "expected an integer");
        config.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string()) fail("output", "expected a string");
        config.output_dir = j.at("output").get<std::string>();
    }
    if (j.contains("format")) {
        if (!j.at("format").is_string()) fail("format", "expected a string");
        config.format = j.at("format").get<std::string>();
    }
    if (config.format != "csv" && config.format != "json")
        fail("format", "expected 'csv' or 'json'");
    if (j.contains("sweep")) {
        if (!j.at("sweep").is_array()) fail("sweep", "expected an array");
        for (const auto& axis_json : j.at("sweep")) {
            SweepAxis axis;
            if (!axis_json.contains("path") || !axis_json.at("path").is_string())
                fail("sweep.path", "missing axis path");
            axis.path = axis_json.at("path").get<std::string>();
            axis.start = num(axis_json, "sweep", "start");
            axis.stop = num(axis_json, "sweep", "stop");
            axis.count = int_or(axis_json, "sweep", "count", 1);
            if (axis.count < 1) fail("sweep.count", "count must be >= 1");
            config.axes.push_back(axis);
        }
    }
    config.validate();
    return config;
}

void ExperimentConfig::validate() const {
    if (!kSubcommands.count(subcommand))
        fail("subcommand", "unknown subcommand '" + subcommand + "'");
}

ResultTable run(const ExperimentConfig& config) {
    ResultTable table;
    if (config.subcommand == "fields")
        table = run_fields(config);
    else if (config.subcommand == "stark")
        table = run_stark(config);
    else if (config.subcommand == "trap-map")
        table = run_trap_map(config);
    else if (config.subcommand == "trap-layers")
        table = run_trap_layers(config);
    else if (config.subcommand == "multilayer")
        table = run_multilayer(config);
    else if (config.subcommand == "anderson")
        table = run_anderson(config);
    else if (config.subcommand == "shielding")
        table = run_shielding(config);
    else if (config.subcommand == "hubbard-params")
        table = run_hubbard_params(config);
    else if (config.subcommand == "phase-diagram")
        table = run_phase_diagram(config);
    else if (config.subcommand == "acoustics")
        table = run_acoustics(config);
    else
        fail("subcommand", "unknown subcommand '" + config.subcommand + "'");
    table.config_hash = hash_config(config.raw);
    table.seed = config.seed;
    return table;
}

ResultTable sweep(const ExperimentConfig& config) {
    if (config.axes.empty()) return run(config);

    std::vector<std::vector<double>> axis_values;
    for (const auto& axis : config.axes)
        axis_values.push_back(grid_values(axis.start, axis.stop, axis.count));

    ResultTable table;
    table.name = config.subcommand + "-sweep";
    table.config_hash = hash_config(config.raw);
    table.seed = config.seed;

    std::vector<std::size_t> index(config.axes.size(), 0);
    bool first_point = true;
    bool done = false;
    while (!done) {
        json point_raw = config.raw;
        point_raw.erase("sweep");
        for (std::size_t a = 0; a < config.axes.size(); ++a) {
            std::string leaf;
            json* node = navigate(point_raw, config.axes[a].path, &leaf);
            if (!node) fail("sweep.path", "bad path '" + config.axes[a].path + "'");
            (*node)[leaf] = axis_values[a][index[a]];
        }
        ExperimentConfig point_config = ExperimentConfig::from_json(point_raw);
        point_config.seed = config.seed;

        std::vector<std::string> prefix;
        for (std::size_t a = 0; a < config.axes.size(); ++a)
            prefix.push_back(format_double(axis_values[a][index[a]]));

        try {
            const ResultTable point = run(point_config);
            if (first_point) {
                for (const auto& axis : config.axes)
                    table.columns.push_back(axis.path);
                table.columns.insert(table.columns.end(), point.columns.begin(),
                                     point.columns.end());
                table.columns.push_back("error");
                first_point = false;
            }
            for (const auto& row : point.rows) {
                std::vector<std::string> merged = prefix;
                merged.insert(merged.end(), row.begin(), row.end());
                merged.emplace_back();
                // Earlier failed points may have fixed a narrower layout.
                merged.resize(table.columns.size());
                table.add_row(std::move(merged));
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            if (first_point) {
                // No successful point yet; start with the minimal layout.
                for (const auto& axis : config.axes)
                    table.columns.push_back(axis.path);
                table.columns.push_back("error");
                first_point = false;
            }
            std::vector<std::string> merged = prefix;
            merged.resize(table.columns.size() - 1);
            merged.push_back(e.what());
            table.add_row(std::move(merged));
            table.had_errors = true;
        }

        // Advance the mixed-radix sweep counter, last axis fastest.
        for (std::size_t a = config.axes.size(); a-- > 0;) {
            if (++index[a] < axis_values[a].size()) break;
            index[a] = 0;
            if (a == 0) done = true;
        }
    }
    return table;
}

std::filesystem::path run_to_disk(const ExperimentConfig& config) {
    const ResultTable table = config.axes.empty() ? run(config) : sweep(config);
    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path path =
        config.output_dir /
        (config.subcommand + (config.format == "json" ? ".json" : ".csv"));
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("output", "cannot write '" + path.string() + "'");
    if (config.format == "json")
        out << table.to_json().dump(2) << "\n";
    else
        out << table.to_csv();
    if (table.had_errors)
        throw std::runtime_error("sweep completed with per-point errors; see " +
                                 path.string());
    return path;
}

}  // namespace sawtrap::cli
