// lexnet command-line interface: single simulations, epsilon sweeps, energy
// trajectories, convergence-time studies, and differential verification.
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lexnet/automaton.hpp"
#include "lexnet/experiments.hpp"
#include "lexnet/io.hpp"
#include "lexnet/metrics.hpp"
#include "lexnet/oracle.hpp"
#include "lexnet/version.hpp"

namespace {

using namespace lexnet;
namespace exp = lexnet::experiments;

struct TopologyFlags {
    std::string kind = "torus";
    std::uint32_t width = 32;
    std::uint32_t height = 32;
    std::string edges_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--topology", kind, "interaction graph: torus or file")
            ->check(CLI::IsMember({"torus", "file"}))
            ->capture_default_str();
        cmd->add_option("--width", width, "torus width (>= 3)")->capture_default_str();
        cmd->add_option("--height", height, "torus height (>= 3)")->capture_default_str();
        cmd->add_option("--edges", edges_path, "edge-list file (topology=file)");
    }

    exp::TopologySpec spec() const {
        if (kind == "file") {
            if (edges_path.empty())
                throw std::invalid_argument("--topology file requires --edges PATH");
            return exp::TopologySpec{exp::TopologySpec::Kind::file, 0, 0, edges_path};
        }
        return exp::TopologySpec{exp::TopologySpec::Kind::torus, width, height, {}};
    }
};

Rational parse_epsilon(const std::string& text) {
    Rational eps;
    try {
        eps = parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(e.what()) + " (expected NUM/DEN or a decimal)");
    }
    if (!in_unit_interval(eps))
        throw std::invalid_argument("epsilon must be in [0, 1], got " + text);
    return eps;
}

ScheduleKind parse_schedule(const std::string& name) {
    return name == "sequential" ? ScheduleKind::sequential : ScheduleKind::fully_async;
}

PermutationKind parse_permutation(const std::string& name) {
    return name == "random" ? PermutationKind::random : PermutationKind::identity;
}

void emit(const std::string& document, const std::string& out_path) {
    if (out_path.empty())
        std::cout << document;
    else
        io::write_text_file(out_path, document);
}

// Flags shared by every experiment subcommand.
struct CommonFlags {
    std::string schedule = "async";
    std::string permutation = "identity";
    std::uint64_t seed = 0;
    std::uint32_t steps_multiplier = 500;
    std::uint32_t workers = 0;
    bool multiset = false;
    bool timestamp = false;
    std::string out_path;
    std::string format = "csv";

    void attach(CLI::App* cmd) {
        cmd->add_option("--schedule", schedule, "update scheme: async or sequential")
            ->check(CLI::IsMember({"async", "sequential"}))
            ->capture_default_str();
        cmd->add_option("--permutation", permutation,
                        "sequential vertex order: identity or random")
            ->check(CLI::IsMember({"identity", "random"}))
            ->capture_default_str();
        cmd->add_option("--seed", seed, "base RNG seed")
            ->envname("LEXNET_SEED")
            ->capture_default_str();
        cmd->add_option("--steps-multiplier", steps_multiplier,
                        "run horizon in steps per vertex (steps = multiplier * n)")
            ->capture_default_str();
        cmd->add_option("--workers", workers,
                        "worker threads for trials (0 = all cores, 1 = serial)")
            ->capture_default_str();
        cmd->add_flag("--multiset", multiset,
                      "weight collapse draws by how many neighbors convey each word");
        cmd->add_flag("--timestamp", timestamp,
                      "include a generation timestamp in output metadata");
        cmd->add_option("--out", out_path, "output file (stdout when omitted)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    }
};

int cmd_simulate(const TopologyFlags& topo, const CommonFlags& common, const std::string& epsilon,
                 std::uint32_t length, std::uint32_t alphabet, std::uint64_t stride,
                 bool no_early_stop, const std::string& dump_path) {
    const Network net = topo.spec().build();

    SimParams params;
    params.epsilon = parse_epsilon(epsilon);
    params.length = length;
    params.alphabet_size = alphabet;
    params.schedule = parse_schedule(common.schedule);
    params.permutation = parse_permutation(common.permutation);
    params.seed = common.seed;
    params.max_steps = static_cast<std::uint64_t>(common.steps_multiplier) * net.vertex_count();
    params.stop_on_consensus = !no_early_stop;
    params.sample_stride = stride;
    params.weight_by_multiplicity = common.multiset;
    params.validate();

    const RunResult result = run(net, params);
    const ConsensusStats stats = consensus_stats(result.config);

    std::cout << "n=" << net.vertex_count() << " p=" << result.initial_distinct_words
              << " steps=" << result.steps << " final_energy=" << io::format_double(result.final_energy)
              << " converged=" << (result.converged ? "true" : "false");
    if (result.consensus) std::cout << " consensus=" << to_text(*result.consensus);
    std::cout << " distinct_conveyed=" << stats.distinct_conveyed
              << " max_memory=" << stats.max_memory_size << "\n";

    if (!common.out_path.empty()) {
        exp::SeriesDocument doc;
        std::string echo = "simulate topology=" + topo.spec().label();
        echo += " alphabet=" + std::to_string(alphabet);
        echo += " length=" + std::to_string(length);
        echo += " epsilon=" + to_string(params.epsilon);
        echo += " steps-multiplier=" + std::to_string(common.steps_multiplier);
        echo += " schedule=" + std::string(to_string(params.schedule));
        echo += " permutation=" + std::string(to_string(params.permutation));
        echo += " multiset=" + std::to_string(common.multiset ? 1 : 0);
        echo += " seed=" + std::to_string(common.seed);
        doc.spec_echo = echo;
        doc.entries.push_back(exp::SeriesEntry{"0", params.seed, params.epsilon, length, alphabet,
                                               net.vertex_count(), result.energy_series});
        emit(common.format == "json" ? exp::to_json(doc) : exp::to_csv(doc, common.timestamp),
             common.out_path);
    }
    if (!dump_path.empty()) {
        std::ostringstream snapshot;
        dump_snapshot(result.config, snapshot);
        io::write_text_file(dump_path, snapshot.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(tool_name) +
                 " - consensus dynamics of word conventions under phonological confusion"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);
    app.footer(exp::preset_summary());

    // ---- simulate ----
    auto* simulate_cmd = app.add_subcommand("simulate", "run one simulation and print a summary");
    TopologyFlags sim_topo;
    CommonFlags sim_common;
    std::string sim_epsilon = "0";
    std::uint32_t sim_length = 4;
    std::uint32_t sim_alphabet = 10;
    std::uint64_t sim_stride = 0;
    bool sim_no_early_stop = false;
    std::string sim_dump;
    sim_topo.attach(simulate_cmd);
    sim_common.attach(simulate_cmd);
    simulate_cmd->add_option("--epsilon", sim_epsilon, "confusion parameter (NUM/DEN or decimal)")
        ->capture_default_str();
    simulate_cmd->add_option("--length", sim_length, "word length L")->capture_default_str();
    simulate_cmd->add_option("--alphabet", sim_alphabet, "alphabet size s (2..256)")
        ->capture_default_str();
    simulate_cmd->add_option("--stride", sim_stride, "energy sampling stride (0 = n)")
        ->capture_default_str();
    simulate_cmd->add_flag("--no-early-stop", sim_no_early_stop,
                           "run the full horizon even after reaching zero energy");
    simulate_cmd->add_option("--dump", sim_dump, "write a final-state snapshot to this path");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "final energy over an (epsilon, L) grid");
    sweep_cmd->footer(exp::preset_summary());
    TopologyFlags sweep_topo;
    CommonFlags sweep_common;
    std::string sweep_preset_name;
    std::vector<std::string> sweep_epsilons;
    std::vector<std::uint32_t> sweep_lengths;
    std::uint32_t sweep_alphabet = 10;
    std::uint32_t sweep_trials = 10;
    sweep_topo.attach(sweep_cmd);
    sweep_common.attach(sweep_cmd);
    sweep_cmd->add_option("--preset", sweep_preset_name,
                          "named configuration: paper-fig2, fig2-small, smoke");
    sweep_cmd->add_option("--epsilon", sweep_epsilons,
                          "epsilon grid values (default: 0 to 1 in steps of 1/10)");
    sweep_cmd->add_option("--length", sweep_lengths, "word lengths (default: 32)");
    sweep_cmd->add_option("--alphabet", sweep_alphabet, "alphabet size s")->capture_default_str();
    sweep_cmd->add_option("--trials", sweep_trials, "independent runs per grid point")
        ->capture_default_str();

    // ---- trajectory ----
    auto* traj_cmd = app.add_subcommand("trajectory", "averaged E(t) series per epsilon");
    traj_cmd->footer(exp::preset_summary());
    TopologyFlags traj_topo;
    CommonFlags traj_common;
    std::string traj_preset_name;
    std::vector<std::string> traj_epsilons;
    std::uint32_t traj_length = 32;
    std::uint32_t traj_alphabet = 10;
    std::uint32_t traj_trials = 10;
    std::uint64_t traj_stride = 0;
    traj_topo.attach(traj_cmd);
    traj_common.attach(traj_cmd);
    traj_cmd->add_option("--preset", traj_preset_name, "named configuration: paper-fig3, fig3-small");
    traj_cmd->add_option("--epsilon", traj_epsilons,
                         "epsilon values (default: 0, 0.7, 0.8, 0.9, 1)");
    traj_cmd->add_option("--length", traj_length, "word length L")->capture_default_str();
    traj_cmd->add_option("--alphabet", traj_alphabet, "alphabet size s")->capture_default_str();
    traj_cmd->add_option("--trials", traj_trials, "runs to average")->capture_default_str();
    traj_cmd->add_option("--stride", traj_stride, "sampling stride in steps (0 = n)")
        ->capture_default_str();

    // ---- convergence ----
    auto* conv_cmd = app.add_subcommand(
        "convergence", "epsilon = 0 steps-to-fixed-point study against the proof bound");
    CommonFlags conv_common;
    std::string conv_family = "random";
    std::vector<std::string> conv_sizes;
    std::vector<std::string> conv_files;
    std::uint32_t conv_count = 100;
    std::uint32_t conv_min_n = 2;
    std::uint32_t conv_max_n = 30;
    std::uint32_t conv_trials = 1;
    std::uint32_t conv_length = 4;
    std::uint32_t conv_alphabet = 4;
    std::uint64_t conv_cap = 1'000'000;
    std::string conv_schedules = "sequential";
    conv_common.attach(conv_cmd);
    conv_cmd->add_option("--family", conv_family, "graph family: torus, random, file")
        ->check(CLI::IsMember({"torus", "random", "file"}))
        ->capture_default_str();
    conv_cmd->add_option("--sizes", conv_sizes, "torus sizes as WxH (family=torus)");
    conv_cmd->add_option("--edges", conv_files, "edge-list files (family=file)");
    conv_cmd->add_option("--count", conv_count, "number of random graphs")->capture_default_str();
    conv_cmd->add_option("--min-n", conv_min_n, "smallest random graph")->capture_default_str();
    conv_cmd->add_option("--max-n", conv_max_n, "largest random graph")->capture_default_str();
    conv_cmd->add_option("--trials", conv_trials, "runs per instance and schedule")
        ->capture_default_str();
    conv_cmd->add_option("--length", conv_length, "word length L")->capture_default_str();
    conv_cmd->add_option("--alphabet", conv_alphabet, "alphabet size s")->capture_default_str();
    conv_cmd->add_option("--step-cap", conv_cap, "hard cap in steps per vertex")
        ->capture_default_str();
    conv_cmd
        ->add_option("--schedules", conv_schedules, "sequential, async, or both")
        ->check(CLI::IsMember({"sequential", "async", "both"}))
        ->capture_default_str();

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand(
        "verify", "differential tests: optimized rule vs naive and membership references");
    std::uint32_t verify_cases = 10000;
    std::uint32_t verify_full_runs = 50;
    std::uint64_t verify_seed = 1;
    verify_cmd->add_option("--cases", verify_cases, "randomized single-update cases")
        ->capture_default_str();
    verify_cmd->add_option("--full-runs", verify_full_runs, "epsilon = 0 full-run equivalences")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "seed for case generation")
        ->envname("LEXNET_SEED")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (simulate_cmd->parsed())
            return cmd_simulate(sim_topo, sim_common, sim_epsilon, sim_length, sim_alphabet,
                                sim_stride, sim_no_early_stop, sim_dump);

        if (sweep_cmd->parsed()) {
            exp::SweepSpec spec;
            if (!sweep_preset_name.empty()) spec = exp::sweep_preset(sweep_preset_name);
            if (sweep_cmd->count("--topology") || sweep_cmd->count("--width") ||
                sweep_cmd->count("--height") || sweep_cmd->count("--edges"))
                spec.topology = sweep_topo.spec();
            if (!sweep_epsilons.empty()) {
                spec.epsilon_grid.clear();
                for (const std::string& e : sweep_epsilons)
                    spec.epsilon_grid.push_back(parse_epsilon(e));
            }
            if (!sweep_lengths.empty()) spec.lengths = sweep_lengths;
            if (sweep_cmd->count("--alphabet")) spec.alphabet_size = sweep_alphabet;
            if (sweep_cmd->count("--trials")) spec.trials = sweep_trials;
            if (sweep_cmd->count("--steps-multiplier"))
                spec.steps_multiplier = sweep_common.steps_multiplier;
            spec.base_seed = sweep_common.seed;
            spec.schedule = parse_schedule(sweep_common.schedule);
            spec.permutation = parse_permutation(sweep_common.permutation);
            spec.weight_by_multiplicity = sweep_common.multiset;
            spec.workers = sweep_common.workers;

            const exp::SweepResult result = exp::sweep_epsilon(spec);
            emit(sweep_common.format == "json" ? exp::to_json(result)
                                               : exp::to_csv(result, sweep_common.timestamp),
                 sweep_common.out_path);
            return 0;
        }

        if (traj_cmd->parsed()) {
            exp::TrajectorySpec spec;
            if (!traj_preset_name.empty())
                spec = exp::trajectory_preset(traj_preset_name);
            else
                spec.epsilons = {make_rational(0, 1), make_rational(7, 10), make_rational(8, 10),
                                 make_rational(9, 10), make_rational(1, 1)};
            if (traj_cmd->count("--topology") || traj_cmd->count("--width") ||
                traj_cmd->count("--height") || traj_cmd->count("--edges"))
                spec.topology = traj_topo.spec();
            if (!traj_epsilons.empty()) {
                spec.epsilons.clear();
                for (const std::string& e : traj_epsilons) spec.epsilons.push_back(parse_epsilon(e));
            }
            if (traj_cmd->count("--length")) spec.length = traj_length;
            if (traj_cmd->count("--alphabet")) spec.alphabet_size = traj_alphabet;
            if (traj_cmd->count("--trials")) spec.trials = traj_trials;
            if (traj_cmd->count("--stride")) spec.sample_stride = traj_stride;
            if (traj_cmd->count("--steps-multiplier"))
                spec.steps_multiplier = traj_common.steps_multiplier;
            spec.base_seed = traj_common.seed;
            spec.schedule = parse_schedule(traj_common.schedule);
            spec.permutation = parse_permutation(traj_common.permutation);
            spec.weight_by_multiplicity = traj_common.multiset;
            spec.workers = traj_common.workers;

            const exp::TrajectoryResult result = exp::trajectory(spec);
            emit(traj_common.format == "json" ? exp::to_json(result)
                                              : exp::to_csv(result, traj_common.timestamp),
                 traj_common.out_path);
            return 0;
        }

        if (conv_cmd->parsed()) {
            exp::ConvergenceStudySpec spec;
            if (conv_family == "torus") {
                spec.family = exp::ConvergenceStudySpec::Family::torus;
                for (const std::string& size : conv_sizes) {
                    const auto x = size.find('x');
                    if (x == std::string::npos)
                        throw std::invalid_argument("--sizes expects WxH entries, got " + size);
                    spec.torus_sizes.emplace_back(
                        static_cast<std::uint32_t>(std::stoul(size.substr(0, x))),
                        static_cast<std::uint32_t>(std::stoul(size.substr(x + 1))));
                }
            } else if (conv_family == "file") {
                spec.family = exp::ConvergenceStudySpec::Family::file;
                spec.files = conv_files;
            } else {
                spec.family = exp::ConvergenceStudySpec::Family::random;
                spec.random_count = conv_count;
                spec.random_min_n = conv_min_n;
                spec.random_max_n = conv_max_n;
            }
            if (conv_schedules == "both")
                spec.schedules = {ScheduleKind::sequential, ScheduleKind::fully_async};
            else
                spec.schedules = {parse_schedule(conv_schedules)};
            spec.permutation = parse_permutation(conv_common.permutation);
            spec.trials = conv_trials;
            spec.length = conv_length;
            spec.alphabet_size = conv_alphabet;
            spec.base_seed = conv_common.seed;
            spec.step_cap_per_vertex = conv_cap;
            spec.workers = conv_common.workers;

            const exp::ConvergenceResult result = exp::convergence_time_study(spec);
            emit(conv_common.format == "json" ? exp::to_json(result)
                                              : exp::to_csv(result, conv_common.timestamp),
                 conv_common.out_path);
            return 0;
        }

        if (verify_cmd->parsed()) {
            oracle::VerifyOptions options;
            options.cases = verify_cases;
            options.full_runs = verify_full_runs;
            options.seed = verify_seed;
            const oracle::VerifyReport report = oracle::run_verification(options);
            std::cout << "partition cases: " << report.partition_cases
                      << " failures: " << report.partition_failures << "\n";
            std::cout << "update cases: " << report.update_cases
                      << " failures: " << report.update_failures << "\n";
            std::cout << "membership cases: " << report.membership_cases
                      << " failures: " << report.membership_failures << "\n";
            std::cout << "full runs: " << report.full_run_cases
                      << " failures: " << report.full_run_failures << "\n";
            if (!report.ok()) {
                std::cout << "first counterexample:\n" << report.first_counterexample;
                return 1;
            }
            std::cout << "all comparisons agreed\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
