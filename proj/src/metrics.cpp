#include "lexnet/metrics.hpp"

#include <set>

#include "lexnet/automaton.hpp"

namespace lexnet {

std::int64_t energy_numerator(const Configuration& config, const Network& net) {
    const WordTable& table = config.words();
    std::int64_t total = 0;
    for (std::uint32_t u = 0; u < config.vertex_count(); ++u)
        for (std::uint32_t v : net.neighbors(u))
            total += table.hamming(config.conveyed(u), config.conveyed(v));
    return total;
}

double energy(const Configuration& config, const Network& net) {
    const std::int64_t numerator = energy_numerator(config, net);
    if (numerator == 0) return 0.0;
    const auto weight =
        static_cast<std::int64_t>(config.words().word_length()) * static_cast<std::int64_t>(net.degree_sum());
    return static_cast<double>(numerator) / static_cast<double>(weight);
}

std::int64_t conveyed_change_delta(const Configuration& config, const Network& net,
                                   std::uint32_t u, std::uint32_t old_word,
                                   std::uint32_t new_word) {
    if (old_word == new_word) return 0;
    const WordTable& table = config.words();
    std::int64_t delta = 0;
    for (std::uint32_t v : net.neighbors(u)) {
        const WordId w = config.conveyed(v);
        delta += static_cast<std::int64_t>(table.hamming(new_word, w)) -
                 static_cast<std::int64_t>(table.hamming(old_word, w));
    }
    return 2 * delta;  // both directions of each incident edge
}

double incremental_energy_update(const Configuration& config, const Network& net,
                                 std::uint32_t u, std::uint32_t old_word,
                                 std::uint32_t new_word) {
    const std::int64_t delta = conveyed_change_delta(config, net, u, old_word, new_word);
    if (delta == 0) return 0.0;
    const auto weight =
        static_cast<std::int64_t>(config.words().word_length()) * static_cast<std::int64_t>(net.degree_sum());
    return static_cast<double>(delta) / static_cast<double>(weight);
}

EnergyTracker::EnergyTracker(const Configuration& config, const Network& net)
    : numerator_(energy_numerator(config, net)),
      weight_(static_cast<std::int64_t>(config.words().word_length()) *
              static_cast<std::int64_t>(net.degree_sum())) {}

ConsensusStats consensus_stats(const Configuration& config) {
    ConsensusStats stats;
    std::set<WordId> distinct;
    std::size_t memory_total = 0;
    for (std::uint32_t u = 0; u < config.vertex_count(); ++u) {
        distinct.insert(config.conveyed(u));
        stats.max_memory_size = std::max(stats.max_memory_size, config.memory(u).size());
        memory_total += config.memory(u).size();
    }
    stats.distinct_conveyed = distinct.size();
    stats.mean_memory_size =
        static_cast<double>(memory_total) / static_cast<double>(config.vertex_count());
    if (distinct.size() == 1) stats.consensus = config.conveyed_word(0);
    return stats;
}

}  // namespace lexnet
