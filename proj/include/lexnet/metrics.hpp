// The energy functional, its incremental tracker, and consensus statistics.
//
// The energy numerator sum_u sum_{v in V_u} H(x_u, x_v) is kept as an exact
// integer (each edge counted twice); division by L * sum(deg) happens only at
// reporting time, so consensus detection is an integer compare against zero.
// On a degree-4 torus the normalization is exactly 1/(4Ln).
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lexnet/lexicon.hpp"

namespace lexnet {

class Configuration;
class Network;

// Sampled energy trajectory; t strictly increasing, every E in [0, 1].
struct EnergySeries {
    std::vector<std::pair<std::uint64_t, double>> samples;
    std::uint64_t stride = 0;
};

std::int64_t energy_numerator(const Configuration& config, const Network& net);
double energy(const Configuration& config, const Network& net);

// Exact integer change of the numerator when vertex u's conveyed word
// switches from old_word to new_word (twice the one-sided neighborhood
// delta: both directions of each incident edge move together).
std::int64_t conveyed_change_delta(const Configuration& config, const Network& net,
                                   std::uint32_t u, std::uint32_t old_word,
                                   std::uint32_t new_word);

// The change in E itself; zero when the conveyed word did not change.
double incremental_energy_update(const Configuration& config, const Network& net,
                                 std::uint32_t u, std::uint32_t old_word,
                                 std::uint32_t new_word);

// Per-run incremental energy state owned by the run loop.
class EnergyTracker {
public:
    EnergyTracker(const Configuration& config, const Network& net);

    void apply_conveyed_change(const Configuration& config, const Network& net,
                               std::uint32_t u, std::uint32_t old_word,
                               std::uint32_t new_word) {
        numerator_ += conveyed_change_delta(config, net, u, old_word, new_word);
    }

    std::int64_t numerator() const { return numerator_; }
    double value() const { return numerator_ == 0 ? 0.0 : static_cast<double>(numerator_) / static_cast<double>(weight_); }

private:
    std::int64_t numerator_ = 0;
    std::int64_t weight_ = 1;  // L * sum(deg)
};

struct ConsensusStats {
    std::uint64_t distinct_conveyed = 0;
    std::size_t max_memory_size = 0;
    double mean_memory_size = 0.0;
    std::optional<Word> consensus;  // set iff all conveyed words are identical
};

ConsensusStats consensus_stats(const Configuration& config);

}  // namespace lexnet
