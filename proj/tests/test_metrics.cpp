#include "doctest.h"

#include <set>

#include "lexnet/automaton.hpp"
#include "lexnet/metrics.hpp"
#include "test_support.hpp"

using namespace lexnet;
using testsup::w;
using testsup::ws;

namespace {

SimParams params_with(const Rational& eps, std::uint32_t length = 4, std::uint32_t s = 10) {
    SimParams params;
    params.epsilon = eps;
    params.length = length;
    params.alphabet_size = s;
    return params;
}

Configuration uniform_config(const Network& net, const Word& word, std::uint32_t s) {
    std::vector<AgentWords> states(net.vertex_count(), AgentWords{{word}, word});
    return Configuration::from_words(net, params_with(make_rational(0, 1),
                                                      static_cast<std::uint32_t>(word.length()), s),
                                     states);
}

}  // namespace

TEST_CASE("energy is zero exactly at conveyed consensus") {
    const Network net = Network::torus(3, 3);
    const Configuration config = uniform_config(net, w("abca"), 4);
    CHECK(energy(config, net) == 0.0);
    CHECK(energy_numerator(config, net) == 0);
}

TEST_CASE("a single deviant vertex contributes 2h/(9L) on the 3x3 torus") {
    const Network net = Network::torus(3, 3);
    const Word x = w("aaaa");
    const Word y = w("ccaa");  // H(x, y) = 2
    std::vector<AgentWords> states(9, AgentWords{{x}, x});
    states[0] = AgentWords{{y}, y};
    const Configuration config =
        Configuration::from_words(net, params_with(make_rational(0, 1)), states);
    const std::uint32_t h = 2;
    const std::uint32_t L = 4;
    CHECK(energy_numerator(config, net) == 8 * h);  // 4h out of the deviant, h from each neighbor
    CHECK(energy(config, net) == doctest::Approx(2.0 * h / (9.0 * L)).epsilon(1e-12));
}

TEST_CASE("random initial energy sits near 1 - 1/s") {
    const Network net = Network::torus(64, 64);
    SimParams params = params_with(make_rational(0, 1), 32, 10);
    Rng rng(4711);
    const Configuration config = Configuration::initialize(net, params, rng);
    CHECK(std::abs(energy(config, net) - 0.9) < 0.01);
}

TEST_CASE("energy bounds, parity, and the zero criterion on random configurations") {
    Rng rng(88);
    const Alphabet alphabet(4);
    for (int trial = 0; trial < 400; ++trial) {
        const auto n = static_cast<std::uint32_t>(2 + bounded(rng, 10));
        const Network net =
            Network::random_connected(n, static_cast<std::uint32_t>(bounded(rng, n)), rng);
        const bool force_consensus = trial % 10 == 0;
        const Word shared = random_word(alphabet, 3, rng);
        std::vector<AgentWords> states;
        for (std::uint32_t u = 0; u < n; ++u) {
            const Word word = force_consensus ? shared : random_word(alphabet, 3, rng);
            states.push_back(AgentWords{{word}, word});
        }
        const Configuration config =
            Configuration::from_words(net, params_with(make_rational(0, 1), 3, 4), states);

        const std::int64_t numerator = energy_numerator(config, net);
        const double e = energy(config, net);
        CHECK(numerator % 2 == 0);  // each edge counted in both directions
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        std::set<Word> distinct;
        for (std::uint32_t u = 0; u < n; ++u) distinct.insert(config.conveyed_word(u));
        CHECK((e == 0.0) == (distinct.size() == 1));
    }
}

TEST_CASE("incremental tracking equals full recomputation exactly") {
    const Network net = Network::torus(4, 4);
    SimParams params = params_with(make_rational(1, 4), 4, 6);
    params.seed = 12;
    Rng rng(12);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = Schedule::make_async(net.vertex_count());

    EnergyTracker tracker(config, net);
    for (int i = 0; i < 20000; ++i) {
        const ActionReport report = step(config, schedule, rng);
        if (report.conveyed_changed())
            tracker.apply_conveyed_change(config, net, report.vertex, report.old_conveyed,
                                          report.new_conveyed);
        if (i % 500 == 0) CHECK(tracker.numerator() == energy_numerator(config, net));
    }
    CHECK(tracker.numerator() == energy_numerator(config, net));
    CHECK(tracker.value() == energy(config, net));
}

TEST_CASE("incremental delta is zero when the conveyed word is unchanged") {
    const Network net = Network::torus(3, 3);
    SimParams params = params_with(make_rational(0, 1), 4, 4);
    params.seed = 2;
    Rng rng(2);
    Configuration config = Configuration::initialize(net, params, rng);
    CHECK(incremental_energy_update(config, net, 0, config.conveyed(0), config.conveyed(0)) == 0.0);
}

TEST_CASE("incremental delta matches recomputation for a forced change") {
    const Network net = Network::torus(4, 4);
    SimParams params = params_with(make_rational(0, 1), 4, 4);
    params.seed = 31;
    Rng rng(31);
    Configuration config = Configuration::initialize(net, params, rng);
    for (std::uint32_t u = 0; u < net.vertex_count(); ++u) {
        const WordId old_word = config.conveyed(u);
        const WordId new_word = (old_word + 1) % config.words().size();
        const std::int64_t before = energy_numerator(config, net);
        const std::int64_t delta = conveyed_change_delta(config, net, u, old_word, new_word);
        config.set_state(u, {new_word}, new_word);
        CHECK(before + delta == energy_numerator(config, net));
        config.set_state(u, {old_word}, old_word);
    }
}

TEST_CASE("consensus stats") {
    const Network net = Network::torus(3, 3);
    SUBCASE("uniform population") {
        const Configuration config = uniform_config(net, w("feed", 10), 10);
        const ConsensusStats stats = consensus_stats(config);
        CHECK(stats.distinct_conveyed == 1);
        CHECK(stats.max_memory_size == 1);
        CHECK(stats.mean_memory_size == 1.0);
        REQUIRE(stats.consensus.has_value());
        CHECK(*stats.consensus == w("feed", 10));
    }
    SUBCASE("random initial population has no consensus") {
        SimParams params = params_with(make_rational(0, 1), 8, 10);
        Rng rng(55);
        const Configuration config = Configuration::initialize(net, params, rng);
        const ConsensusStats stats = consensus_stats(config);
        CHECK(stats.distinct_conveyed >= 3);
        CHECK_FALSE(stats.consensus.has_value());
    }
    SUBCASE("a contested neighborhood keeps several conveyed words") {
        // the worked addition example dropped into the middle of the torus
        std::vector<AgentWords> states(9, AgentWords{ws({"aaaa"}), w("aaaa")});
        states[4] = AgentWords{ws({"abcd", "bacd"}), w("bacd")};
        states[1] = AgentWords{ws({"bacd"}), w("bacd")};
        states[3] = AgentWords{ws({"cabd"}), w("cabd")};
        states[5] = AgentWords{ws({"dabc"}), w("dabc")};
        const Configuration config =
            Configuration::from_words(net, params_with(make_rational(0, 1), 4, 4), states);
        CHECK(consensus_stats(config).distinct_conveyed >= 3);
    }
    SUBCASE("mixed memories are averaged") {
        std::vector<AgentWords> states(9, AgentWords{ws({"aaaa"}), w("aaaa")});
        states[4] = AgentWords{ws({"aaaa", "bbbb", "cccc"}), w("aaaa")};
        const Configuration config =
            Configuration::from_words(net, params_with(make_rational(0, 1)), states);
        const ConsensusStats stats = consensus_stats(config);
        CHECK(stats.max_memory_size == 3);
        CHECK(stats.mean_memory_size == doctest::Approx((8 + 3) / 9.0));
        CHECK(stats.distinct_conveyed == 1);  // memories differ, conveyed words agree
    }
}

TEST_CASE("energy series from a run is monotone in t and bounded in E") {
    const Network net = Network::torus(4, 4);
    SimParams params = params_with(make_rational(1, 2), 8, 10);
    params.seed = 77;
    params.max_steps = 3000;
    params.sample_stride = 64;
    const RunResult result = run(net, params);
    REQUIRE(result.energy_series.samples.size() > 2);
    CHECK(result.energy_series.stride == 64);
    for (std::size_t i = 0; i < result.energy_series.samples.size(); ++i) {
        const auto& [t, e] = result.energy_series.samples[i];
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        if (i > 0) CHECK(t > result.energy_series.samples[i - 1].first);
    }
    CHECK(result.energy_series.samples.front().first == 0);
    CHECK(result.energy_series.samples.back().first == result.steps);
}
