#include "syk/commands.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "syk/compiler.hpp"
#include "syk/evolution.hpp"
#include "syk/io.hpp"
#include "syk/nmr.hpp"
#include "syk/observables.hpp"
#include "syk/parallel.hpp"
#include "syk/rng.hpp"

namespace syk {

using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw ParameterError("axis needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    }
    return out;
}

std::string pattern_label(const PauliString& p) {
    std::string s = p.letters();
    for (char& c : s) c = c == 'I' ? '0' : static_cast<char>(std::tolower(c));
    return s;
}

// Ordered list of (filename, content); writes them plus manifest.json.
CommandResult finalize(const std::string& command, const json& config,
                       const std::filesystem::path& out_dir,
                       const std::vector<std::pair<std::string, std::string>>& outputs,
                       int exit_code = 0) {
    CommandResult result;
    result.out_dir = out_dir;
    result.exit_code = exit_code;
    json manifest;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["version"] = kVersion;
    manifest["config_sha256"] = sha256_hex(config.dump());
    json hashes = json::object();
    for (const auto& [name, content] : outputs) {
        write_file(out_dir / name, content);
        hashes[name] = sha256_hex(content);
        result.files.push_back(name);
    }
    manifest["outputs"] = hashes;
    write_file(out_dir / "manifest.json", manifest.dump(1) + "\n");
    result.files.push_back("manifest.json");
    return result;
}

EvolutionEngine engine_from_config(const json& cfg) {
    const std::string mode = cfg.value("engine", "exact");
    if (mode == "exact") return EvolutionEngine::exact();
    if (mode == "trotter") return EvolutionEngine::trotter(cfg.value("anchor_steps", 200));
    throw ParameterError("engine must be \"exact\" or \"trotter\", got " + mode);
}

std::vector<double> tau_grid_from_config(const json& cfg) {
    const json grid = cfg.value("tau", json::object());
    return log_time_grid(grid.value("ln_min", -3.0), grid.value("ln_max", 3.0),
                         grid.value("points", 30));
}

}  // namespace

ModelParams model_params_from_json(const json& model, std::uint64_t seed) {
    ModelParams p;
    p.n_majorana = model.value("n_majorana", 8);
    p.mu = model.value("mu", 0.0);
    p.j4 = model.value("j4", 1.0);
    p.j2 = model.value("j2", 1.0);
    p.c_variance = c_variance_from_string(model.value("c_variance", "main_text"));
    p.seed = seed;
    p.validate();
    return p;
}

json coupling_set_to_json(const CouplingSet& sample) {
    const ModelParams& p = sample.params();
    json j;
    j["seed"] = p.seed;
    j["N"] = p.n_majorana;
    j["mu"] = p.mu;
    j["j4"] = p.j4;
    j["j2"] = p.j2;
    j["convention"] = to_string(p.c_variance);
    json quadruples = json::array();
    const auto quads = CouplingSet::quadruples(p.n_majorana);
    for (std::size_t r = 0; r < quads.size(); ++r) {
        const auto& q = quads[r];
        quadruples.push_back({q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1, sample.j_values()[r]});
    }
    j["quadruples"] = quadruples;
    json pairs = json::array();
    const auto prs = CouplingSet::pairs(p.n_majorana);
    for (std::size_t r = 0; r < prs.size(); ++r) {
        pairs.push_back({prs[r][0] + 1, prs[r][1] + 1, sample.c_values()[r]});
    }
    j["pairs"] = pairs;
    return j;
}

CouplingSet coupling_set_from_json(const json& j) {
    ModelParams p;
    p.n_majorana = j.at("N").get<int>();
    p.mu = j.at("mu").get<double>();
    p.j4 = j.value("j4", 1.0);
    p.j2 = j.value("j2", 1.0);
    p.seed = j.at("seed").get<std::uint64_t>();
    p.c_variance = c_variance_from_string(j.at("convention").get<std::string>());
    std::vector<double> j_values;
    for (const auto& row : j.at("quadruples")) j_values.push_back(row.at(4).get<double>());
    std::vector<double> c_values;
    for (const auto& row : j.at("pairs")) c_values.push_back(row.at(2).get<double>());
    return {p, std::move(j_values), std::move(c_values)};
}

json default_config(const std::string& command) {
    json model = {{"n_majorana", 8}, {"mu", 5.0},        {"j4", 1.0},
                  {"j2", 1.0},       {"c_variance", "main_text"}};
    if (command == "couplings") {
        return {{"seed", 1}, {"samples", 8}, {"model", model}};
    }
    if (command == "fidelity-surface") {
        return {{"seed", 1},
                {"model", model},
                {"grid",
                 {{"ln_tau_min", -3.0},
                  {"ln_tau_max", 3.0},
                  {"ln_tau_points", 25},
                  {"log10_n_min", 0.0},
                  {"log10_n_max", 2.5},
                  {"log10_n_points", 51}}}};
    }
    if (command == "correlation") {
        json m = model;
        m.erase("mu");
        return {{"seed", 1},
                {"samples", 8},
                {"betas", {0.0, 1.0, 20.0}},
                {"mus", {-5.0, 0.0, 5.0}},
                {"model", m},
                {"tau", {{"ln_min", -3.0}, {"ln_max", 3.0}, {"points", 30}}},
                {"engine", "exact"},
                {"anchor_steps", 200},
                {"pair_negative_mu_at_beta0", true}};
    }
    if (command == "scaling") {
        json m = model;
        m.erase("mu");
        m.erase("n_majorana");
        return {{"seed", 1},
                {"samples", 8},
                {"n_list", {6, 8, 10, 12}},
                {"mus", {-5.0, 0.0, 5.0}},
                {"beta", 20.0},
                {"model", m},
                {"engine", "exact"},
                {"anchor_steps", 200}};
    }
    if (command == "compile") {
        return {{"seed", 1}, {"model", model}, {"tau", 0.1}, {"epsilon", 0.01}, {"verify", true}};
    }
    if (command == "grape") {
        return {{"seed", 1},
                {"spins", {0, 1}},
                {"target", {{"axis", "zz"}, {"angle", std::numbers::pi / 4.0}}},
                {"slices", 100},
                {"duration_s", 0.015},
                {"rf_scales", {0.95, 1.0, 1.05}},
                {"profile_scales", {0.9, 0.95, 1.0, 1.05, 1.1}},
                {"max_iter", 2000},
                {"goal", 0.99},
                {"init_sigma_hz", 30.0},
                {"max_amplitude_hz", 20000.0}};
    }
    throw ParameterError("unknown command: " + command);
}

namespace {

CommandResult run_couplings(const json& cfg, const std::filesystem::path& out_dir, int threads) {
    (void)threads;
    const std::uint64_t master = cfg.at("seed").get<std::uint64_t>();
    const int samples = cfg.at("samples").get<int>();
    if (samples < 1) throw ParameterError("samples must be >= 1");

    std::vector<std::pair<std::string, std::string>> outputs;
    std::ostringstream csv;
    csv << "sample_index,seed,kind,label,value\n";
    for (int r = 0; r < samples; ++r) {
        const ModelParams p = model_params_from_json(
            cfg.at("model"), child_seed(master, static_cast<std::uint64_t>(r)));
        const CouplingSet sample = generate_couplings(p);
        outputs.emplace_back("couplings_" + std::to_string(r) + ".json",
                             coupling_set_to_json(sample).dump(1) + "\n");
        const auto quads = CouplingSet::quadruples(p.n_majorana);
        for (std::size_t i = 0; i < quads.size(); ++i) {
            csv << r << ',' << p.seed << ",J," << quads[i][0] + 1 << '-' << quads[i][1] + 1 << '-'
                << quads[i][2] + 1 << '-' << quads[i][3] + 1 << ','
                << format_double(sample.j_values()[i]) << '\n';
        }
        const auto prs = CouplingSet::pairs(p.n_majorana);
        for (std::size_t i = 0; i < prs.size(); ++i) {
            csv << r << ',' << p.seed << ",C," << prs[i][0] + 1 << '-' << prs[i][1] + 1 << ','
                << format_double(sample.c_values()[i]) << '\n';
        }
        const PauliSum h = build_hamiltonian(sample);
        for (const auto& term : h.terms()) {
            csv << r << ',' << p.seed << ",a," << pattern_label(term) << ','
                << format_double(term.coefficient().real()) << '\n';
        }
    }
    outputs.emplace_back("coefficients.csv", csv.str());
    return finalize("couplings", cfg, out_dir, outputs);
}

CommandResult run_fidelity_surface(const json& cfg, const std::filesystem::path& out_dir,
                                   int threads) {
    const ModelParams p =
        model_params_from_json(cfg.at("model"), cfg.at("seed").get<std::uint64_t>());
    const json grid = cfg.at("grid");
    const std::vector<double> ln_tau = linspace(grid.at("ln_tau_min").get<double>(),
                                                grid.at("ln_tau_max").get<double>(),
                                                grid.at("ln_tau_points").get<int>());
    const std::vector<double> log_n = linspace(grid.at("log10_n_min").get<double>(),
                                               grid.at("log10_n_max").get<double>(),
                                               grid.at("log10_n_points").get<int>());
    const PauliSum h = build_hamiltonian(generate_couplings(p));
    const UnitaryFidelityGrid surface = fidelity_surface(h, ln_tau, log_n, threads);

    std::ostringstream csv;
    csv << "ln_tau,log10_n,fidelity\n";
    for (std::size_t i = 0; i < surface.ln_tau_axis.size(); ++i) {
        for (std::size_t j = 0; j < surface.log10_n_axis.size(); ++j) {
            csv << format_double(surface.ln_tau_axis[i]) << ','
                << format_double(surface.log10_n_axis[j]) << ','
                << format_double(surface.fidelity(static_cast<Eigen::Index>(i),
                                                  static_cast<Eigen::Index>(j)))
                << '\n';
        }
    }
    return finalize("fidelity-surface", cfg, out_dir, {{"fidelity_surface.csv", csv.str()}});
}

CommandResult run_correlation(const json& cfg, const std::filesystem::path& out_dir, int threads) {
    const std::uint64_t master = cfg.at("seed").get<std::uint64_t>();
    const int samples = cfg.at("samples").get<int>();
    const std::vector<double> betas = cfg.at("betas").get<std::vector<double>>();
    const std::vector<double> mus = cfg.at("mus").get<std::vector<double>>();
    const std::vector<double> tau_grid = tau_grid_from_config(cfg);
    const EvolutionEngine engine = engine_from_config(cfg);
    const bool pair_beta0 = cfg.value("pair_negative_mu_at_beta0", true);

    std::ostringstream per_sample;
    per_sample << "sample_seed,beta,mu,tau,re_D,im_D,abs_D_normalized\n";
    std::ostringstream aggregate;
    aggregate << "beta,mu,tau,avg_abs_D,stderr\n";

    for (const double beta : betas) {
        for (const double mu : mus) {
            std::vector<CouplingSet> sets;
            sets.reserve(static_cast<std::size_t>(samples));
            for (int r = 0; r < samples; ++r) {
                json model = cfg.at("model");
                model["mu"] = mu;
                CouplingSet sample = generate_couplings(model_params_from_json(
                    model, child_seed(master, static_cast<std::uint64_t>(r))));
                // At infinite temperature the mu<0 member of a +/-mu pair is
                // realized as (-J, C, -mu), i.e. H -> -H of its partner, which
                // leaves |D| invariant sample by sample.
                if (pair_beta0 && beta == 0.0 && mu < 0.0) {
                    sample = with_negated_syk(sample);
                }
                sets.push_back(std::move(sample));
            }
            const AveragedCorrelation avg =
                averaged_correlation(sets, beta, tau_grid, engine, threads);
            for (const auto& s : avg.samples) {
                for (std::size_t t = 0; t < tau_grid.size(); ++t) {
                    per_sample << s.seed << ',' << format_double(beta) << ',' << format_double(mu)
                               << ',' << format_double(tau_grid[t]) << ','
                               << format_double(s.values[t].real()) << ','
                               << format_double(s.values[t].imag()) << ','
                               << format_double(s.normalized_abs[t]) << '\n';
                }
            }
            for (std::size_t t = 0; t < tau_grid.size(); ++t) {
                aggregate << format_double(beta) << ',' << format_double(mu) << ','
                          << format_double(tau_grid[t]) << ',' << format_double(avg.avg_abs[t])
                          << ',' << format_double(avg.std_err[t]) << '\n';
            }
        }
    }
    return finalize("correlation", cfg, out_dir,
                    {{"per_sample.csv", per_sample.str()}, {"aggregate.csv", aggregate.str()}});
}

CommandResult run_scaling(const json& cfg, const std::filesystem::path& out_dir, int threads) {
    const std::uint64_t master = cfg.at("seed").get<std::uint64_t>();
    const std::vector<int> n_list = cfg.at("n_list").get<std::vector<int>>();
    const std::vector<double> mus = cfg.at("mus").get<std::vector<double>>();
    const double beta = cfg.at("beta").get<double>();
    const int samples = cfg.at("samples").get<int>();
    json model = cfg.at("model");
    model["n_majorana"] = n_list.empty() ? 8 : n_list.front();
    const ModelParams base = model_params_from_json(model, master);
    const EvolutionEngine engine = engine_from_config(cfg);

    const auto table = scaling_sweep(n_list, mus, beta, samples, master, base, engine, threads);
    std::ostringstream csv;
    csv << "N,mu,avg_abs_D_inf,stderr\n";
    for (const auto& row : table) {
        csv << row.n_majorana << ',' << format_double(row.mu) << ','
            << format_double(row.avg_d_inf) << ',' << format_double(row.std_err) << '\n';
    }
    return finalize("scaling", cfg, out_dir, {{"scaling.csv", csv.str()}});
}

CommandResult run_compile(const json& cfg, const std::filesystem::path& out_dir, int threads) {
    const ModelParams p =
        model_params_from_json(cfg.at("model"), cfg.at("seed").get<std::uint64_t>());
    const double tau = cfg.at("tau").get<double>();
    const double epsilon = cfg.at("epsilon").get<double>();
    const bool verify = cfg.value("verify", true);

    const CouplingSet sample = generate_couplings(p);
    const PauliSum h = build_hamiltonian(sample);

    std::vector<GateSequence> sequences(h.size());
    parallel_for(h.size(), threads, [&](std::size_t i) {
        sequences[i] = decompose_general_pauli(h.terms()[i], tau);
    });

    json seq_json = json::array();
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const auto& term = h.terms()[i];
        const auto& seq = sequences[i];
        json entry;
        entry["order"] = i;
        entry["term"] = pattern_label(term);
        entry["coefficient"] = term.coefficient().real();
        entry["global_phase"] = seq.global_phase;
        json gates = json::array();
        for (std::size_t g = 0; g < seq.gates.size(); ++g) {
            const auto& gate = seq.gates[g];
            json jg;
            json qubits = json::array();
            std::string axis;
            for (int q = 0; q < seq.qubit_count; ++q) {
                const char letter = gate.generator.letter(q);
                if (letter != 'I') {
                    qubits.push_back(q);
                    axis.push_back(static_cast<char>(std::tolower(letter)));
                }
            }
            jg["qubits"] = qubits;
            jg["axis"] = axis;
            jg["angle"] = gate.angle;
            jg["order"] = g;
            gates.push_back(jg);
        }
        entry["gates"] = gates;
        if (verify) {
            entry["fidelity"] = verify_sequence(seq, term, tau);
        }
        seq_json.push_back(entry);
    }

    const ResourceEstimate est = complexity_estimate(p, tau, epsilon);
    std::ostringstream csv;
    csv << "N,m,n,one_body,two_body,total\n";
    csv << p.n_majorana << ',' << est.term_count << ',' << est.trotter_steps << ','
        << est.one_body_count << ',' << est.two_body_count << ',' << est.total_gates << '\n';

    return finalize("compile", cfg, out_dir,
                    {{"sequences.json", seq_json.dump(1) + "\n"}, {"resources.csv", csv.str()}});
}

CommandResult run_grape(const json& cfg, const std::filesystem::path& out_dir, int threads) {
    (void)threads;
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
    const std::vector<int> spins = cfg.at("spins").get<std::vector<int>>();
    const SpinSystemParams full = SpinSystemParams::trans_crotonic_acid();
    const SpinSystemParams params = spins.empty() ? full : full.subsystem(spins);

    const json target_cfg = cfg.at("target");
    const std::string axis = target_cfg.value("axis", "zz");
    const double angle = target_cfg.at("angle").get<double>();
    if (axis != std::string(static_cast<std::size_t>(params.spin_count()), 'z')) {
        throw ParameterError("grape target axis must be a z-chain over the subsystem, e.g. \"zz\"");
    }
    const std::uint64_t zmask = (std::uint64_t{1} << params.spin_count()) - 1;
    const PauliString generator{params.spin_count(), 0, zmask, cx{1.0, 0.0}};
    const DenseOperator target = exp_pauli_term(generator, angle / 2.0);

    GrapeOptions options;
    options.max_iter = cfg.value("max_iter", 2000);
    options.fidelity_goal = cfg.value("goal", 0.99);
    options.rf_scales = cfg.value("rf_scales", std::vector<double>{1.0});

    ControlField init = ControlField::random_init(cfg.at("slices").get<int>(),
                                                  cfg.at("duration_s").get<double>() /
                                                      cfg.at("slices").get<int>(),
                                                  cfg.value("init_sigma_hz", 30.0), seed);
    init.max_amplitude_hz = cfg.value("max_amplitude_hz", 20000.0);

    const GrapeResult result = grape_optimize(target, init, params, options);

    std::ostringstream field_csv;
    field_csv << "slice,amplitude_hz,phase_rad\n";
    for (int j = 0; j < result.field.slices(); ++j) {
        field_csv << j << ',' << format_double(result.field.amplitude_hz[static_cast<std::size_t>(j)])
                  << ',' << format_double(result.field.phase_rad[static_cast<std::size_t>(j)])
                  << '\n';
    }
    json field_json = {{"M", result.field.slices()},
                       {"slice_duration_s", result.field.slice_duration_s},
                       {"reference_note", "single-channel rotating frame at the common reference"},
                       {"objective", result.objective},
                       {"converged", result.converged},
                       {"rf_scales", options.rf_scales}};
    std::ostringstream trace_csv;
    trace_csv << "iter,objective,step_size\n";
    for (const auto& t : result.trace) {
        trace_csv << t.iter << ',' << format_double(t.objective) << ','
                  << format_double(t.step_size) << '\n';
    }
    const std::vector<double> profile_scales =
        cfg.value("profile_scales", std::vector<double>{0.95, 1.0, 1.05});
    std::ostringstream robustness_csv;
    robustness_csv << "scale,fidelity\n";
    for (const auto& point : robustness_profile(result.field, target, params, profile_scales)) {
        robustness_csv << format_double(point.scale) << ',' << format_double(point.fidelity)
                       << '\n';
    }

    return finalize("grape", cfg, out_dir,
                    {{"field.csv", field_csv.str()},
                     {"field.json", field_json.dump(1) + "\n"},
                     {"trace.csv", trace_csv.str()},
                     {"robustness.csv", robustness_csv.str()}},
                    result.converged ? 0 : 4);
}

}  // namespace

CommandResult run_command(const std::string& command, const json& config,
                          const std::filesystem::path& out_dir, int threads) {
    if (command == "couplings") return run_couplings(config, out_dir, threads);
    if (command == "fidelity-surface") return run_fidelity_surface(config, out_dir, threads);
    if (command == "correlation") return run_correlation(config, out_dir, threads);
    if (command == "scaling") return run_scaling(config, out_dir, threads);
    if (command == "compile") return run_compile(config, out_dir, threads);
    if (command == "grape") return run_grape(config, out_dir, threads);
    throw ParameterError("unknown command: " + command);
}

CommandResult rerun_from_manifest(const std::filesystem::path& manifest_path,
                                  const std::filesystem::path& out_dir, int threads) {
    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw IoError("cannot parse manifest: " + std::string(e.what()));
    }
    return run_command(manifest.at("command").get<std::string>(), manifest.at("config"), out_dir,
                       threads);
}

}  // namespace syk
