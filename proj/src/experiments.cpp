#include "lexnet/experiments.hpp"

#include <atomic>
#include <cmath>
#include <ctime>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "lexnet/io.hpp"
#include "lexnet/version.hpp"

namespace lexnet::experiments {

namespace {

using ordered_json = nlohmann::ordered_json;

// Stream-separation tags for derive_seed, so graph construction and run
// seeds never collide.
constexpr std::uint64_t seed_tag_run = 0x72756e;      // "run"
constexpr std::uint64_t seed_tag_graph = 0x677261;    // "gra"

void parallel_for(std::size_t count, std::uint32_t workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<std::uint32_t>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string join_u32(const std::vector<std::uint32_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(values[i]);
    }
    return out;
}

std::string join_rationals(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(',');
        out += to_string(values[i]);
    }
    return out;
}

std::string comment_line(const std::string& echo, bool with_timestamp) {
    std::string line = "# ";
    line += tool_name;
    line += ' ';
    line += tool_version;
    line += ' ';
    line += echo;
    line += " rng=";
    line += rng_algorithm;
    if (with_timestamp) {
        const std::time_t now = std::time(nullptr);
        char stamp[32];
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        line += " generated=";
        line += stamp;
    }
    line += '\n';
    return line;
}

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double accum = 0.0;
    for (double v : values) accum += (v - mean) * (v - mean);
    return std::sqrt(accum / static_cast<double>(values.size() - 1));
}

}  // namespace

Network TopologySpec::build() const {
    if (kind == Kind::torus) return Network::torus(width, height);
    return Network::from_edge_list_file(path);
}

std::string TopologySpec::label() const {
    if (kind == Kind::torus)
        return "torus-" + std::to_string(width) + "x" + std::to_string(height);
    return "file:" + path;
}

std::vector<Rational> default_epsilon_grid() {
    std::vector<Rational> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(make_rational(i, 10));
    return grid;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t first_index,
                         std::uint64_t second_index, std::uint64_t trial_index) {
    return derive_seed(base_seed, {seed_tag_run, first_index, second_index, trial_index});
}

std::uint64_t graph_seed(std::uint64_t base_seed, std::uint64_t graph_index) {
    return derive_seed(base_seed, {seed_tag_graph, graph_index});
}

SweepResult sweep_epsilon(const SweepSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    if (spec.lengths.empty()) throw std::invalid_argument("sweep: need at least one word length");
    if (spec.epsilon_grid.empty()) throw std::invalid_argument("sweep: empty epsilon grid");
    for (const Rational& eps : spec.epsilon_grid)
        if (!in_unit_interval(eps)) throw std::invalid_argument("sweep: epsilon outside [0, 1]");

    const Network net = spec.topology.build();
    const std::uint32_t n = net.vertex_count();
    const std::uint64_t max_steps = static_cast<std::uint64_t>(spec.steps_multiplier) * n;

    const std::size_t points = spec.epsilon_grid.size() * spec.lengths.size();
    const std::size_t tasks = points * spec.trials;
    std::vector<double> final_energy(tasks, 0.0);
    std::vector<std::uint8_t> converged(tasks, 0);

    parallel_for(tasks, spec.workers, [&](std::size_t task) {
        const std::size_t trial = task % spec.trials;
        const std::size_t point = task / spec.trials;
        const std::size_t length_idx = point % spec.lengths.size();
        const std::size_t eps_idx = point / spec.lengths.size();

        SimParams params;
        params.epsilon = spec.epsilon_grid[eps_idx];
        params.length = spec.lengths[length_idx];
        params.alphabet_size = spec.alphabet_size;
        params.schedule = spec.schedule;
        params.permutation = spec.permutation;
        params.seed = trial_seed(spec.base_seed, eps_idx, length_idx, trial);
        params.max_steps = max_steps;
        params.stop_on_consensus = true;
        params.record_series = false;
        params.weight_by_multiplicity = spec.weight_by_multiplicity;

        const RunResult result = run(net, params);
        final_energy[task] = result.final_energy;
        converged[task] = result.converged ? 1 : 0;
    });

    SweepResult out{spec, n, {}};
    out.rows.reserve(points);
    std::vector<double> trial_values(spec.trials);
    for (std::size_t eps_idx = 0; eps_idx < spec.epsilon_grid.size(); ++eps_idx)
        for (std::size_t length_idx = 0; length_idx < spec.lengths.size(); ++length_idx) {
            const std::size_t point = eps_idx * spec.lengths.size() + length_idx;
            double sum = 0.0;
            std::uint32_t converged_count = 0;
            for (std::size_t trial = 0; trial < spec.trials; ++trial) {
                const std::size_t task = point * spec.trials + trial;
                trial_values[trial] = final_energy[task];
                sum += final_energy[task];
                converged_count += converged[task];
            }
            SweepRow row;
            row.epsilon = spec.epsilon_grid[eps_idx];
            row.length = spec.lengths[length_idx];
            row.alphabet_size = spec.alphabet_size;
            row.n = n;
            row.trials = spec.trials;
            row.mean_final_energy = sum / static_cast<double>(spec.trials);
            row.std_final_energy = sample_std(trial_values, row.mean_final_energy);
            row.fraction_converged =
                static_cast<double>(converged_count) / static_cast<double>(spec.trials);
            out.rows.push_back(std::move(row));
        }
    return out;
}

EnergySeries average_trajectory(const Network& net, const SimParams& base_params,
                                std::uint32_t trials, std::uint64_t base_seed,
                                std::uint32_t epsilon_index, std::uint32_t workers) {
    if (trials < 1) throw std::invalid_argument("trajectory: trials must be >= 1");
    const std::uint32_t n = net.vertex_count();
    const std::uint64_t stride = base_params.sample_stride != 0 ? base_params.sample_stride : n;

    std::vector<EnergySeries> series(trials);
    parallel_for(trials, workers, [&](std::size_t trial) {
        SimParams params = base_params;
        params.seed = trial_seed(base_seed, epsilon_index, 0, trial);
        params.stop_on_consensus = true;
        params.record_series = true;
        params.sample_stride = stride;
        series[trial] = run(net, params).energy_series;
    });

    // Common sample grid: multiples of the stride up to the horizon. Early
    // stopped trials sit at E = 0 from their stopping step onward.
    EnergySeries mean;
    mean.stride = stride;
    for (std::uint64_t t = 0; t <= base_params.max_steps; t += stride) {
        double sum = 0.0;
        for (const EnergySeries& s : series) {
            double value = 0.0;
            for (const auto& [st, e] : s.samples) {
                if (st == t) {
                    value = e;
                    break;
                }
                if (st > t) break;
            }
            sum += value;
        }
        mean.samples.emplace_back(t, sum / static_cast<double>(trials));
    }
    return mean;
}

TrajectoryResult trajectory(const TrajectorySpec& spec) {
    if (spec.epsilons.empty()) throw std::invalid_argument("trajectory: no epsilon values");
    const Network net = spec.topology.build();
    const std::uint32_t n = net.vertex_count();

    TrajectoryResult out{spec, n, {}};
    for (std::size_t eps_idx = 0; eps_idx < spec.epsilons.size(); ++eps_idx) {
        SimParams params;
        params.epsilon = spec.epsilons[eps_idx];
        params.length = spec.length;
        params.alphabet_size = spec.alphabet_size;
        params.schedule = spec.schedule;
        params.permutation = spec.permutation;
        params.max_steps = static_cast<std::uint64_t>(spec.steps_multiplier) * n;
        params.sample_stride = spec.sample_stride;
        params.weight_by_multiplicity = spec.weight_by_multiplicity;
        out.curves.push_back(TrajectoryCurve{
            spec.epsilons[eps_idx],
            average_trajectory(net, params, spec.trials, spec.base_seed,
                               static_cast<std::uint32_t>(eps_idx), spec.workers)});
    }
    return out;
}

FixedPointRun run_to_fixed_point(const Network& net, const SimParams& params,
                                 std::uint64_t step_cap) {
    params.validate();
    if (params.epsilon.num != 0)
        throw std::invalid_argument("run_to_fixed_point: epsilon must be 0");

    Rng rng(params.seed);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = make_schedule(params, net.vertex_count(), rng);
    EnergyTracker tracker(config, net);

    // At epsilon = 0 a configuration is a fixed point exactly when the energy
    // numerator is zero and every memory is a singleton; both are tracked
    // incrementally, so the loop stays O(1) per step.
    while (!(tracker.numerator() == 0 && config.nonsingleton_count() == 0) &&
           config.step_count() < step_cap) {
        const ActionReport report = step(config, schedule, rng);
        if (report.conveyed_changed())
            tracker.apply_conveyed_change(config, net, report.vertex, report.old_conveyed,
                                          report.new_conveyed);
    }

    FixedPointRun out;
    out.steps = config.step_count();
    out.converged = tracker.numerator() == 0 && config.nonsingleton_count() == 0;
    out.initial_distinct_words = config.distinct_initial_words();
    if (out.converged) {
        if (!is_fixed_point(config))
            throw std::logic_error("run_to_fixed_point: indicator disagrees with exact check");
        out.consensus = config.conveyed_word(0);
    }
    return out;
}

ConvergenceResult convergence_time_study(const ConvergenceStudySpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("convergence: trials must be >= 1");
    if (spec.schedules.empty()) throw std::invalid_argument("convergence: no schedules");
    if (spec.random_min_n < 2 || spec.random_min_n > spec.random_max_n)
        throw std::invalid_argument("convergence: bad random size range");

    struct Instance {
        std::string label;
        Network net;
    };
    std::vector<Instance> instances;
    switch (spec.family) {
        case ConvergenceStudySpec::Family::torus:
            for (const auto& [w, h] : spec.torus_sizes)
                instances.push_back({"torus-" + std::to_string(w) + "x" + std::to_string(h),
                                     Network::torus(w, h)});
            break;
        case ConvergenceStudySpec::Family::random:
            for (std::uint32_t i = 0; i < spec.random_count; ++i) {
                Rng graph_rng(graph_seed(spec.base_seed, i));
                const auto span = spec.random_max_n - spec.random_min_n + 1;
                const auto n = spec.random_min_n +
                               static_cast<std::uint32_t>(bounded(graph_rng, span));
                const auto extra = static_cast<std::uint32_t>(bounded(graph_rng, n));
                instances.push_back({"random-" + std::to_string(i),
                                     Network::random_connected(n, extra, graph_rng)});
            }
            break;
        case ConvergenceStudySpec::Family::file:
            for (const std::string& path : spec.files)
                instances.push_back({"file:" + path, Network::from_edge_list_file(path)});
            break;
    }
    if (instances.empty()) throw std::invalid_argument("convergence: no graph instances");

    const std::size_t tasks = instances.size() * spec.schedules.size() * spec.trials;
    std::vector<ConvergenceRow> rows(tasks);
    parallel_for(tasks, spec.workers, [&](std::size_t task) {
        const std::size_t trial = task % spec.trials;
        const std::size_t rest = task / spec.trials;
        const std::size_t sched_idx = rest % spec.schedules.size();
        const std::size_t inst_idx = rest / spec.schedules.size();
        const Instance& inst = instances[inst_idx];
        const std::uint32_t n = inst.net.vertex_count();

        SimParams params;
        params.epsilon = make_rational(0, 1);
        params.length = spec.length;
        params.alphabet_size = spec.alphabet_size;
        params.schedule = spec.schedules[sched_idx];
        params.permutation = spec.permutation;
        params.seed = trial_seed(spec.base_seed, inst_idx, sched_idx, trial);
        params.record_series = false;

        const std::uint64_t cap = spec.step_cap_per_vertex * n;
        const FixedPointRun fp = run_to_fixed_point(inst.net, params, cap);

        ConvergenceRow row;
        row.graph = inst.label;
        row.n = n;
        row.p = fp.initial_distinct_words;
        row.schedule = spec.schedules[sched_idx];
        row.seed = params.seed;
        row.steps = fp.steps;
        row.diameter = inst.net.diameter();
        row.bound_sequential = static_cast<std::uint64_t>(n) * (row.p - 1) +
                               static_cast<std::uint64_t>(row.diameter) * n * row.p;
        row.coupon_factor = static_cast<double>(n) * std::log(static_cast<double>(n));
        row.converged = fp.converged;
        rows[task] = std::move(row);
    });

    return ConvergenceResult{spec, std::move(rows)};
}

SweepSpec sweep_preset(std::string_view name) {
    SweepSpec spec;
    if (name == "paper-fig2") {
        spec.topology = TopologySpec{TopologySpec::Kind::torus, 128, 128, {}};
        spec.lengths = {2, 4, 8, 16, 32, 64};
        spec.trials = 20;
    } else if (name == "fig2-small") {
        spec.topology = TopologySpec{TopologySpec::Kind::torus, 32, 32, {}};
        spec.lengths = {8, 32};
        spec.trials = 10;
    } else if (name == "smoke") {
        spec.topology = TopologySpec{TopologySpec::Kind::torus, 8, 8, {}};
        spec.lengths = {4};
        spec.trials = 3;
    } else {
        throw std::invalid_argument("unknown sweep preset: " + std::string(name) +
                                    " (available: paper-fig2, fig2-small, smoke)");
    }
    return spec;
}

TrajectorySpec trajectory_preset(std::string_view name) {
    TrajectorySpec spec;
    spec.epsilons = {make_rational(0, 1), make_rational(7, 10), make_rational(8, 10),
                     make_rational(9, 10), make_rational(1, 1)};
    if (name == "paper-fig3") {
        spec.topology = TopologySpec{TopologySpec::Kind::torus, 128, 128, {}};
        spec.trials = 20;
    } else if (name == "fig3-small") {
        spec.topology = TopologySpec{TopologySpec::Kind::torus, 32, 32, {}};
        spec.trials = 10;
    } else {
        throw std::invalid_argument("unknown trajectory preset: " + std::string(name) +
                                    " (available: paper-fig3, fig3-small)");
    }
    return spec;
}

std::string preset_summary() {
    return "presets:\n"
           "  paper-fig2  sweep, 128x128 torus, L in {2,4,8,16,32,64}, s=10, 20 trials, 500n steps (hours)\n"
           "  fig2-small  sweep, 32x32 torus, L in {8,32}, s=10, 10 trials, 500n steps (minutes)\n"
           "  smoke       sweep, 8x8 torus, L=4, s=10, 3 trials, 500n steps (seconds)\n"
           "  paper-fig3  trajectory, 128x128 torus, L=32, eps in {0,0.7,0.8,0.9,1}, 20 trials (hours)\n"
           "  fig3-small  trajectory, 32x32 torus, L=32, eps in {0,0.7,0.8,0.9,1}, 10 trials (minutes)";
}

namespace {

std::string sweep_echo(const SweepSpec& spec) {
    std::string echo = "sweep topology=" + spec.topology.label();
    echo += " alphabet=" + std::to_string(spec.alphabet_size);
    echo += " lengths=" + join_u32(spec.lengths);
    echo += " epsilons=" + join_rationals(spec.epsilon_grid);
    echo += " trials=" + std::to_string(spec.trials);
    echo += " steps-multiplier=" + std::to_string(spec.steps_multiplier);
    echo += " schedule=" + std::string(to_string(spec.schedule));
    echo += " permutation=" + std::string(to_string(spec.permutation));
    echo += " multiset=" + std::to_string(spec.weight_by_multiplicity ? 1 : 0);
    echo += " seed=" + std::to_string(spec.base_seed);
    return echo;
}

std::string trajectory_echo(const TrajectorySpec& spec) {
    std::string echo = "trajectory topology=" + spec.topology.label();
    echo += " alphabet=" + std::to_string(spec.alphabet_size);
    echo += " length=" + std::to_string(spec.length);
    echo += " epsilons=" + join_rationals(spec.epsilons);
    echo += " trials=" + std::to_string(spec.trials);
    echo += " steps-multiplier=" + std::to_string(spec.steps_multiplier);
    echo += " stride=" + std::to_string(spec.sample_stride);
    echo += " schedule=" + std::string(to_string(spec.schedule));
    echo += " permutation=" + std::string(to_string(spec.permutation));
    echo += " multiset=" + std::to_string(spec.weight_by_multiplicity ? 1 : 0);
    echo += " seed=" + std::to_string(spec.base_seed);
    return echo;
}

std::string convergence_echo(const ConvergenceStudySpec& spec) {
    std::string echo = "convergence family=";
    switch (spec.family) {
        case ConvergenceStudySpec::Family::torus: {
            echo += "torus sizes=";
            for (std::size_t i = 0; i < spec.torus_sizes.size(); ++i) {
                if (i) echo.push_back(',');
                echo += std::to_string(spec.torus_sizes[i].first) + "x" +
                        std::to_string(spec.torus_sizes[i].second);
            }
            break;
        }
        case ConvergenceStudySpec::Family::random:
            echo += "random count=" + std::to_string(spec.random_count) + " n=" +
                    std::to_string(spec.random_min_n) + ".." + std::to_string(spec.random_max_n);
            break;
        case ConvergenceStudySpec::Family::file: {
            echo += "file paths=";
            for (std::size_t i = 0; i < spec.files.size(); ++i) {
                if (i) echo.push_back(',');
                echo += spec.files[i];
            }
            break;
        }
    }
    echo += " schedules=";
    for (std::size_t i = 0; i < spec.schedules.size(); ++i) {
        if (i) echo.push_back(',');
        echo += to_string(spec.schedules[i]);
    }
    echo += " permutation=" + std::string(to_string(spec.permutation));
    echo += " trials=" + std::to_string(spec.trials);
    echo += " length=" + std::to_string(spec.length);
    echo += " alphabet=" + std::to_string(spec.alphabet_size);
    echo += " step-cap=" + std::to_string(spec.step_cap_per_vertex) + "n";
    echo += " seed=" + std::to_string(spec.base_seed);
    return echo;
}

ordered_json meta_json(const std::string& echo) {
    ordered_json meta;
    meta["tool"] = tool_name;
    meta["version"] = tool_version;
    meta["rng"] = rng_algorithm;
    meta["spec"] = echo;
    return meta;
}

}  // namespace

std::string to_csv(const SweepResult& result, bool with_timestamp) {
    std::string out = comment_line(sweep_echo(result.spec), with_timestamp);
    out += "epsilon_num,epsilon_den,L,s,n,trials,mean_final_energy,std_final_energy,fraction_converged\n";
    for (const SweepRow& row : result.rows) {
        out += std::to_string(row.epsilon.num) + ',' + std::to_string(row.epsilon.den) + ',';
        out += std::to_string(row.length) + ',' + std::to_string(row.alphabet_size) + ',';
        out += std::to_string(row.n) + ',' + std::to_string(row.trials) + ',';
        out += io::format_double(row.mean_final_energy) + ',';
        out += io::format_double(row.std_final_energy) + ',';
        out += io::format_double(row.fraction_converged) + '\n';
    }
    return out;
}

std::string to_json(const SweepResult& result) {
    ordered_json doc;
    doc["meta"] = meta_json(sweep_echo(result.spec));
    doc["meta"]["n"] = result.n;
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : result.rows) {
        ordered_json r;
        r["epsilon_num"] = row.epsilon.num;
        r["epsilon_den"] = row.epsilon.den;
        r["L"] = row.length;
        r["s"] = row.alphabet_size;
        r["n"] = row.n;
        r["trials"] = row.trials;
        r["mean_final_energy"] = row.mean_final_energy;
        r["std_final_energy"] = row.std_final_energy;
        r["fraction_converged"] = row.fraction_converged;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string to_csv(const TrajectoryResult& result, bool with_timestamp) {
    std::string out = comment_line(trajectory_echo(result.spec), with_timestamp);
    out += "run_id,seed,epsilon_num,epsilon_den,L,s,n,step,energy\n";
    for (const TrajectoryCurve& curve : result.curves)
        for (const auto& [t, e] : curve.mean_series.samples) {
            out += "avg," + std::to_string(result.spec.base_seed) + ',';
            out += std::to_string(curve.epsilon.num) + ',' + std::to_string(curve.epsilon.den) + ',';
            out += std::to_string(result.spec.length) + ',' +
                   std::to_string(result.spec.alphabet_size) + ',';
            out += std::to_string(result.n) + ',' + std::to_string(t) + ',';
            out += io::format_double(e) + '\n';
        }
    return out;
}

std::string to_json(const TrajectoryResult& result) {
    ordered_json doc;
    doc["meta"] = meta_json(trajectory_echo(result.spec));
    doc["meta"]["n"] = result.n;
    ordered_json curves = ordered_json::array();
    for (const TrajectoryCurve& curve : result.curves) {
        ordered_json c;
        c["epsilon_num"] = curve.epsilon.num;
        c["epsilon_den"] = curve.epsilon.den;
        c["stride"] = curve.mean_series.stride;
        ordered_json samples = ordered_json::array();
        for (const auto& [t, e] : curve.mean_series.samples)
            samples.push_back(ordered_json::array({t, e}));
        c["samples"] = std::move(samples);
        curves.push_back(std::move(c));
    }
    doc["curves"] = std::move(curves);
    return doc.dump(2) + "\n";
}

std::string to_csv(const ConvergenceResult& result, bool with_timestamp) {
    std::string out = comment_line(convergence_echo(result.spec), with_timestamp);
    out += "graph,n,p,schedule,seed,steps,bound_sequential,diameter,converged\n";
    for (const ConvergenceRow& row : result.rows) {
        out += row.graph + ',' + std::to_string(row.n) + ',' + std::to_string(row.p) + ',';
        out += std::string(to_string(row.schedule)) + ',' + std::to_string(row.seed) + ',';
        out += std::to_string(row.steps) + ',' + std::to_string(row.bound_sequential) + ',';
        out += std::to_string(row.diameter) + ',';
        out += row.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string to_json(const ConvergenceResult& result) {
    ordered_json doc;
    doc["meta"] = meta_json(convergence_echo(result.spec));
    ordered_json rows = ordered_json::array();
    for (const ConvergenceRow& row : result.rows) {
        ordered_json r;
        r["graph"] = row.graph;
        r["n"] = row.n;
        r["p"] = row.p;
        r["schedule"] = to_string(row.schedule);
        r["seed"] = row.seed;
        r["steps"] = row.steps;
        r["bound_sequential"] = row.bound_sequential;
        r["coupon_factor"] = row.coupon_factor;
        r["diameter"] = row.diameter;
        r["converged"] = row.converged;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string to_csv(const SeriesDocument& doc, bool with_timestamp) {
    std::string out = comment_line(doc.spec_echo, with_timestamp);
    out += "run_id,seed,epsilon_num,epsilon_den,L,s,n,step,energy\n";
    for (const SeriesEntry& entry : doc.entries)
        for (const auto& [t, e] : entry.series.samples) {
            out += entry.run_id + ',' + std::to_string(entry.seed) + ',';
            out += std::to_string(entry.epsilon.num) + ',' + std::to_string(entry.epsilon.den) + ',';
            out += std::to_string(entry.length) + ',' + std::to_string(entry.alphabet_size) + ',';
            out += std::to_string(entry.n) + ',' + std::to_string(t) + ',';
            out += io::format_double(e) + '\n';
        }
    return out;
}

std::string to_json(const SeriesDocument& doc) {
    ordered_json j;
    j["meta"] = meta_json(doc.spec_echo);
    ordered_json entries = ordered_json::array();
    for (const SeriesEntry& entry : doc.entries) {
        ordered_json e;
        e["run_id"] = entry.run_id;
        e["seed"] = entry.seed;
        e["epsilon_num"] = entry.epsilon.num;
        e["epsilon_den"] = entry.epsilon.den;
        e["L"] = entry.length;
        e["s"] = entry.alphabet_size;
        e["n"] = entry.n;
        e["stride"] = entry.series.stride;
        ordered_json samples = ordered_json::array();
        for (const auto& [t, energy] : entry.series.samples)
            samples.push_back(ordered_json::array({t, energy}));
        e["samples"] = std::move(samples);
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

}  // namespace lexnet::experiments
