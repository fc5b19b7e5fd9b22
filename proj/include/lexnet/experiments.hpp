// Multi-trial experiment harnesses: the epsilon sweep, averaged energy
// trajectories, and the epsilon = 0 convergence-time study, plus CSV/JSON
// emission. Every result is a pure function of its spec (base seed
// included); trials run on a worker pool and are merged in index order, so
// the worker count never changes the output bytes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexnet/automaton.hpp"
#include "lexnet/metrics.hpp"
#include "lexnet/network.hpp"
#include "lexnet/rational.hpp"

namespace lexnet::experiments {

struct TopologySpec {
    enum class Kind { torus, file };

    Kind kind = Kind::torus;
    std::uint32_t width = 32;
    std::uint32_t height = 32;
    std::string path;  // file kind only

    Network build() const;
    std::string label() const;
};

// epsilon from 0 to 1 in 10% increments.
std::vector<Rational> default_epsilon_grid();

// The documented trial-seed mixing: a splitmix64 chain over the base seed, a
// "run" stream tag, and the three indices. Sweeps pass (epsilon index, length
// index, trial index); trajectories (epsilon index, 0, trial index); the
// convergence study (instance index, schedule index, trial index).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t first_index,
                         std::uint64_t second_index, std::uint64_t trial_index);

// Seed stream for random graph construction in the convergence study.
std::uint64_t graph_seed(std::uint64_t base_seed, std::uint64_t graph_index);

struct SweepSpec {
    TopologySpec topology;
    std::vector<std::uint32_t> lengths{32};
    std::uint32_t alphabet_size = 10;
    std::vector<Rational> epsilon_grid = default_epsilon_grid();
    std::uint32_t trials = 10;
    std::uint32_t steps_multiplier = 500;  // horizon = multiplier * n steps
    std::uint64_t base_seed = 0;
    ScheduleKind schedule = ScheduleKind::fully_async;
    PermutationKind permutation = PermutationKind::identity;
    bool weight_by_multiplicity = false;
    std::uint32_t workers = 0;  // 0 = available parallelism; never affects output
};

struct SweepRow {
    Rational epsilon;
    std::uint32_t length = 0;
    std::uint32_t alphabet_size = 0;
    std::uint32_t n = 0;
    std::uint32_t trials = 0;
    double mean_final_energy = 0.0;
    double std_final_energy = 0.0;
    double fraction_converged = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::uint32_t n = 0;
    std::vector<SweepRow> rows;  // ordered by (epsilon index, length index)
};

// Runs trials independent runs per (epsilon, L) grid point, each for
// multiplier * n steps or until the energy reaches zero, and aggregates the
// final energies. Per-trial seeds derive from (base seed, epsilon index,
// length index, trial index).
SweepResult sweep_epsilon(const SweepSpec& spec);

struct TrajectorySpec {
    TopologySpec topology;
    std::uint32_t length = 32;
    std::uint32_t alphabet_size = 10;
    std::vector<Rational> epsilons;
    std::uint32_t trials = 10;
    std::uint32_t steps_multiplier = 500;
    std::uint64_t sample_stride = 0;  // 0 means n
    std::uint64_t base_seed = 0;
    ScheduleKind schedule = ScheduleKind::fully_async;
    PermutationKind permutation = PermutationKind::identity;
    bool weight_by_multiplicity = false;
    std::uint32_t workers = 0;
};

struct TrajectoryCurve {
    Rational epsilon;
    EnergySeries mean_series;
};

struct TrajectoryResult {
    TrajectorySpec spec;
    std::uint32_t n = 0;
    std::vector<TrajectoryCurve> curves;
};

// Average of E over trials at matching sample steps; trials that stopped
// early at E = 0 contribute zero from their stopping step onward.
EnergySeries average_trajectory(const Network& net, const SimParams& base_params,
                                std::uint32_t trials, std::uint64_t base_seed,
                                std::uint32_t epsilon_index, std::uint32_t workers);

TrajectoryResult trajectory(const TrajectorySpec& spec);

// Drives a run to an exact fixed point (epsilon = 0 only): zero energy with
// every memory a singleton, cross-checked against is_fixed_point. max_steps
// in params is ignored; step_cap bounds the loop.
struct FixedPointRun {
    std::uint64_t steps = 0;
    bool converged = false;
    std::uint32_t initial_distinct_words = 0;
    std::optional<Word> consensus;
};

FixedPointRun run_to_fixed_point(const Network& net, const SimParams& params,
                                 std::uint64_t step_cap);

struct ConvergenceStudySpec {
    enum class Family { torus, random, file };

    Family family = Family::random;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> torus_sizes;
    std::uint32_t random_count = 100;
    std::uint32_t random_min_n = 2;
    std::uint32_t random_max_n = 30;
    std::vector<std::string> files;
    std::vector<ScheduleKind> schedules{ScheduleKind::sequential};
    PermutationKind permutation = PermutationKind::identity;
    std::uint32_t trials = 1;
    std::uint32_t length = 4;
    std::uint32_t alphabet_size = 4;
    std::uint64_t base_seed = 0;
    std::uint64_t step_cap_per_vertex = 1'000'000;  // hard cap = cap * n steps
    std::uint32_t workers = 0;
};

struct ConvergenceRow {
    std::string graph;
    std::uint32_t n = 0;
    std::uint32_t p = 0;  // measured initial distinct-word count
    ScheduleKind schedule = ScheduleKind::sequential;
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    std::uint64_t bound_sequential = 0;  // n(p-1) + diameter * n * p
    double coupon_factor = 0.0;          // n * ln(n)
    std::uint32_t diameter = 0;
    bool converged = true;
};

struct ConvergenceResult {
    ConvergenceStudySpec spec;
    std::vector<ConvergenceRow> rows;
};

// Runs every instance x schedule x trial to an exact fixed point, recording
// steps against the sequential proof bound n(p-1) + diameter*n*p and the
// coupon-collector factor for the asynchronous expectation.
ConvergenceResult convergence_time_study(const ConvergenceStudySpec& spec);

// Per-run series document in the sampling schema (also used for a single
// simulate run).
struct SeriesEntry {
    std::string run_id;
    std::uint64_t seed = 0;
    Rational epsilon;
    std::uint32_t length = 0;
    std::uint32_t alphabet_size = 0;
    std::uint32_t n = 0;
    EnergySeries series;
};

struct SeriesDocument {
    std::string spec_echo;  // rendered into the leading comment line
    std::vector<SeriesEntry> entries;
};

// Presets. "paper-fig2" is the full-scale sweep (128x128, 20 trials, six
// lengths; hours of compute); "fig2-small" the desk-scale one (32x32, 10
// trials, L in {8,32}; minutes); "smoke" an 8x8 regression sweep (seconds).
SweepSpec sweep_preset(std::string_view name);
// "paper-fig3" and "fig3-small": averaged trajectories for L=32 and epsilon
// in {0, 0.7, 0.8, 0.9, 1}.
TrajectorySpec trajectory_preset(std::string_view name);
std::string preset_summary();  // one line per preset, for --help text

// Documents are byte-identical across invocations with the same inputs;
// with_timestamp appends a generation time to the comment line.
std::string to_csv(const SweepResult& result, bool with_timestamp = false);
std::string to_json(const SweepResult& result);
std::string to_csv(const TrajectoryResult& result, bool with_timestamp = false);
std::string to_json(const TrajectoryResult& result);
std::string to_csv(const ConvergenceResult& result, bool with_timestamp = false);
std::string to_json(const ConvergenceResult& result);
std::string to_csv(const SeriesDocument& doc, bool with_timestamp = false);
std::string to_json(const SeriesDocument& doc);

}  // namespace lexnet::experiments
