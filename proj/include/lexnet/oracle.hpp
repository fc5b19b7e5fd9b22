// Naive reference implementations for differential testing. Everything here
// works on word values with direct set comprehensions: no interning, no
// id-order shortcuts, no early-exit distance tests, no incremental state.
// Collapse randomness is factored identically on both sides (one index draw
// over the lexicographically sorted candidate list), so a differential test
// can feed twin generators and demand bit-identical results.
#pragma once

#include <span>
#include <vector>

#include "lexnet/automaton.hpp"

namespace lexnet::oracle {

// Same contract as local_update, re-derived from the rule's definitions.
ActionReport naive_local_update(Configuration& config, std::uint32_t u, Rng& rng);

// The simplified epsilon = 0 rule: unknown means "not a member of the
// memory", and a collapse lands deterministically on min(B). Rejects
// configurations with epsilon != 0. Consumes no randomness.
ActionReport membership_rule_update(Configuration& config, std::uint32_t u, Rng& rng);

// The rule's two displayed sets both read as universally quantified, which
// leaves some conveyed words in neither ("orphans") once the memory holds
// two words straddling the threshold. The artifact uses the complement
// reading (B = not N); this variant exists to document the difference.
struct LiteralPartition {
    std::vector<Word> unknown;
    std::vector<Word> known;
    std::vector<Word> orphans;
};

LiteralPartition literal_forall_partition(std::span<const Word> memory,
                                          std::span<const Word> conveyed, const Rational& eps);

// Differential-testing driver behind the CLI verify subcommand.
//
// Runs, on randomized instances (random connected graphs, random memories
// drawn from a small word pool, epsilon over the 10% grid):
//   - word-level partition and candidate-set comparisons,
//   - single-update comparisons between local_update and naive_local_update
//     on twin configurations fed twin generators,
//   - epsilon = 0 single-update and full-run comparisons against the
//     membership rule.
struct VerifyOptions {
    std::uint32_t cases = 10000;     // randomized single-update cases
    std::uint32_t full_runs = 50;    // epsilon = 0 trajectory equivalences
    std::uint64_t seed = 1;
};

struct VerifyReport {
    std::uint64_t partition_cases = 0;
    std::uint64_t partition_failures = 0;
    std::uint64_t update_cases = 0;
    std::uint64_t update_failures = 0;
    std::uint64_t membership_cases = 0;
    std::uint64_t membership_failures = 0;
    std::uint64_t full_run_cases = 0;
    std::uint64_t full_run_failures = 0;
    std::string first_counterexample;  // empty when everything agreed

    bool ok() const {
        return partition_failures + update_failures + membership_failures + full_run_failures == 0;
    }
};

VerifyReport run_verification(const VerifyOptions& options);

// True iff both configurations hold identical per-vertex states.
bool same_population(const Configuration& a, const Configuration& b);

}  // namespace lexnet::oracle
