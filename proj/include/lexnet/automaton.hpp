// Agent state, the add/collapse local rule with confusion, the dynamics
// loop, and fixed-point detection.
//
// Every word that can ever appear in a memory is one of the initial words
// (the rule only moves words around), so a Configuration interns the
// distinct initial words once, in lexicographic order, and stores word ids
// everywhere. Id comparison is then exactly lexicographic comparison, which
// keeps the hot loop free of symbol-level work except for Hamming tests.
// The oracle module cross-checks this representation against a naive
// value-based implementation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lexnet/lexicon.hpp"
#include "lexnet/metrics.hpp"
#include "lexnet/network.hpp"
#include "lexnet/rational.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {

using WordId = std::uint32_t;

// Distinct words of one run, sorted lexicographically; id == rank. Symbol
// rows are packed contiguously for cache-friendly Hamming loops.
class WordTable {
public:
    WordTable(std::vector<Word> words, std::uint32_t length, std::uint32_t alphabet_size);

    std::uint32_t size() const { return count_; }
    std::uint32_t word_length() const { return length_; }
    std::uint32_t alphabet_size() const { return alphabet_size_; }

    const Symbol* data(WordId id) const { return symbols_.data() + static_cast<std::size_t>(id) * length_; }
    Word word(WordId id) const;
    WordId find(const Word& word) const;  // word must be present

    std::uint32_t hamming(WordId a, WordId b) const {
        const Symbol* x = data(a);
        const Symbol* y = data(b);
        std::uint32_t count = 0;
        for (std::uint32_t k = 0; k < length_; ++k) count += x[k] != y[k];
        return count;
    }

    // Early-exit variant for the threshold test H <= h_max.
    bool hamming_at_most(WordId a, WordId b, std::uint32_t h_max) const {
        const Symbol* x = data(a);
        const Symbol* y = data(b);
        std::uint32_t count = 0;
        for (std::uint32_t k = 0; k < length_; ++k) {
            count += x[k] != y[k];
            if (count > h_max) return false;
        }
        return true;
    }

private:
    std::vector<Symbol> symbols_;
    std::uint32_t count_ = 0;
    std::uint32_t length_ = 0;
    std::uint32_t alphabet_size_ = 0;
};

struct SimParams {
    Rational epsilon;                // confusion parameter, in [0, 1]
    std::uint32_t length = 4;        // word length L
    std::uint32_t alphabet_size = 10;
    ScheduleKind schedule = ScheduleKind::fully_async;
    PermutationKind permutation = PermutationKind::identity;  // sequential only
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 0;
    bool stop_on_consensus = true;   // stop once the energy reaches 0
    std::uint64_t sample_stride = 0; // energy sampling interval; 0 means n
    bool record_series = true;
    // Collapse draws are uniform over distinct candidate words. Setting this
    // weights candidates by how many neighbors convey them instead.
    bool weight_by_multiplicity = false;

    void validate() const;
};

// An agent's memory (sorted distinct word ids, never empty) and the word it
// conveys to its neighbors. conveyed is always a member of memory.
struct AgentState {
    std::vector<WordId> memory;
    WordId conveyed = 0;
};

// Word-level view of one agent, used for fixtures and tests.
struct AgentWords {
    std::vector<Word> memory;
    Word conveyed;
};

enum class ActionKind { added, collapsed };

struct ActionReport {
    ActionKind kind = ActionKind::added;
    std::uint32_t vertex = 0;
    std::uint32_t added_count = 0;   // kind == added
    WordId collapsed_to = 0;         // kind == collapsed
    WordId old_conveyed = 0;
    WordId new_conveyed = 0;

    bool conveyed_changed() const { return old_conveyed != new_conveyed; }
};

// Full population state plus step counter. Holds a pointer to its (immutable,
// longer-lived) network. Copyable, so differential tests can fork twins.
class Configuration {
public:
    // Every vertex starts as ({x}, x) with x an independent uniform word.
    static Configuration initialize(const Network& net, const SimParams& params, Rng& rng);

    // Explicit per-vertex states, for fixtures and golden tests.
    static Configuration from_words(const Network& net, const SimParams& params,
                                    std::span<const AgentWords> states);

    const Network& network() const { return *net_; }
    const SimParams& params() const { return params_; }
    const WordTable& words() const { return table_; }

    std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(states_.size()); }
    std::uint64_t step_count() const { return step_; }
    void advance_step_counter() { ++step_; }

    WordId conveyed(std::uint32_t u) const { return states_[u].conveyed; }
    std::span<const WordId> memory(std::uint32_t u) const { return states_[u].memory; }
    Word conveyed_word(std::uint32_t u) const { return table_.word(states_[u].conveyed); }
    std::vector<Word> memory_words(std::uint32_t u) const;

    // Number of distinct words in the initial configuration (p).
    std::uint32_t distinct_initial_words() const { return table_.size(); }
    // Agents whose memory holds more than one word; 0 together with zero
    // energy is the exact fixed-point test at epsilon = 0.
    std::uint32_t nonsingleton_count() const { return nonsingleton_; }
    // floor(eps * L): largest Hamming distance that still confounds.
    std::uint32_t confusion_threshold() const { return h_max_; }

    // Replace vertex u's state; memory must be sorted, distinct, non-empty
    // and contain conveyed. Used by the oracle implementations.
    void set_state(std::uint32_t u, std::vector<WordId> memory, WordId conveyed);

    ActionReport apply_local_rule(std::uint32_t u, Rng& rng);

private:
    Configuration(const Network& net, const SimParams& params, std::vector<Word> initial_words);

    struct Scratch {
        std::vector<WordId> conveyed;               // distinct conveyed neighbor words
        std::vector<std::uint32_t> multiplicity;    // aligned counts (weighted mode)
        std::vector<WordId> unknown;
        std::vector<WordId> known;
        std::vector<std::uint32_t> known_multiplicity;
        std::vector<WordId> candidates;
        std::vector<std::uint32_t> candidate_multiplicity;
        std::vector<WordId> merged;
    };

    const Network* net_ = nullptr;
    SimParams params_;
    WordTable table_;
    std::vector<AgentState> states_;
    std::uint64_t step_ = 0;
    std::uint32_t nonsingleton_ = 0;
    std::uint32_t h_max_ = 0;
    Scratch scratch_;
};

// The hearer u partitions the distinct words conveyed by its neighbors into
// unknown (N: every memory word is farther than eps*L) and known (B: some
// memory word within eps*L). Both sides are sorted lexicographically.
struct Partition {
    std::vector<Word> unknown;
    std::vector<Word> known;
};

Partition partition_conveyed(std::span<const Word> memory, std::span<const Word> conveyed,
                             const Rational& eps);

// Candidates for a collapse: the words of B within eps*L of min(B). Always
// contains min(B); sorted lexicographically. B must be non-empty.
std::vector<Word> collapse_candidates(std::span<const Word> known, const Rational& eps);

// One application of the local rule at vertex u: add the unknown conveyed
// words (conveyed word unchanged), or collapse to a uniform draw from the
// candidate set when nothing is unknown. Only u's state changes.
inline ActionReport local_update(Configuration& config, std::uint32_t u, Rng& rng) {
    return config.apply_local_rule(u, rng);
}

Configuration init_configuration(const Network& net, const SimParams& params, Rng& rng);

// Select the hearer for step t, apply the local rule, advance the counter.
ActionReport step(Configuration& config, const Schedule& schedule, Rng& rng);

// True iff no application of the local rule, for any vertex and any draw,
// can change the configuration.
bool is_fixed_point(const Configuration& config);

struct RunResult {
    Configuration config;
    EnergySeries energy_series;
    std::uint64_t steps = 0;
    double final_energy = 0.0;
    bool converged = false;               // energy reached 0
    std::optional<Word> consensus;        // the common conveyed word, if any
    std::uint32_t initial_distinct_words = 0;
};

// Builds the schedule a run uses, consuming the run generator for the
// randomized sequential permutation (drawn once, right after the initial
// words).
Schedule make_schedule(const SimParams& params, std::uint32_t n, Rng& rng);

// Drive a full run: params.max_steps hearer updates, or fewer when
// stop_on_consensus is set and the energy hits its global minimum.
// Deterministic given params.seed.
RunResult run(const Network& net, const SimParams& params);

// One line per vertex: "vertex conveyed memory-words..." in text form.
void dump_snapshot(const Configuration& config, std::ostream& out);

}  // namespace lexnet
