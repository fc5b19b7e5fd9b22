#include "doctest.h"

#include <set>
#include <sstream>

#include "lexnet/automaton.hpp"
#include "lexnet/metrics.hpp"
#include "lexnet/oracle.hpp"
#include "test_support.hpp"

using namespace lexnet;
using testsup::w;
using testsup::ws;

namespace {

// Hub vertex 0 with three leaves, as in the worked two-action figure.
Network star3() { return Network::from_edge_list("n 4\n0 1\n0 2\n0 3\n"); }

SimParams base_params(const Rational& eps, std::uint32_t length = 4, std::uint32_t s = 4) {
    SimParams params;
    params.epsilon = eps;
    params.length = length;
    params.alphabet_size = s;
    return params;
}

AgentWords singleton(const Word& word) { return AgentWords{{word}, word}; }

// The hub holds `memory` and conveys `conveyed`; the leaves convey the three
// given words.
Configuration hub_config(const Network& net, const SimParams& params, std::vector<Word> memory,
                         const Word& conveyed, const std::vector<Word>& leaf_words) {
    std::vector<AgentWords> states;
    states.push_back(AgentWords{std::move(memory), conveyed});
    for (const Word& leaf : leaf_words) states.push_back(singleton(leaf));
    return Configuration::from_words(net, params, states);
}

}  // namespace

TEST_CASE("partition splits conveyed words into unknown and known") {
    const Rational zero = make_rational(0, 1);
    const auto memory = ws({"abcd", "bacd"});
    const auto conveyed = ws({"bacd", "cabd", "dabc"});
    const Partition p = partition_conveyed(memory, conveyed, zero);
    CHECK(p.unknown == ws({"cabd", "dabc"}));
    CHECK(p.known == ws({"bacd"}));
}

TEST_CASE("partition with nothing unknown") {
    const Rational zero = make_rational(0, 1);
    const Partition p =
        partition_conveyed(ws({"abcd", "bacd", "cabd"}), ws({"bacd", "cabd", "abcd"}), zero);
    CHECK(p.unknown.empty());
    CHECK(p.known == ws({"abcd", "bacd", "cabd"}));
}

TEST_CASE("partition at epsilon=1 confounds everything") {
    const Partition p =
        partition_conveyed(ws({"aaaa"}), ws({"dddd", "abba", "dddd"}), make_rational(1, 1));
    CHECK(p.unknown.empty());
    CHECK(p.known == ws({"abba", "dddd"}));  // distinct, sorted
}

TEST_CASE("partition is a disjoint cover of the distinct conveyed words") {
    Rng rng(41);
    const Alphabet alphabet(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Word> memory;
        for (std::size_t i = 0; i < 1 + bounded(rng, 3); ++i)
            memory.push_back(random_word(alphabet, 4, rng));
        std::vector<Word> conveyed;
        for (std::size_t i = 0; i < 1 + bounded(rng, 4); ++i)
            conveyed.push_back(random_word(alphabet, 4, rng));
        const Rational eps = make_rational(bounded(rng, 11), 10);

        const Partition p = partition_conveyed(memory, conveyed, eps);
        std::vector<Word> distinct = conveyed;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<Word> rebuilt;
        std::merge(p.unknown.begin(), p.unknown.end(), p.known.begin(), p.known.end(),
                   std::back_inserter(rebuilt));
        CHECK(rebuilt == distinct);
        for (const Word& x : p.unknown)
            CHECK(std::find(p.known.begin(), p.known.end(), x) == p.known.end());
    }
}

TEST_CASE("partition at epsilon=0 reduces to memory membership") {
    Rng rng(42);
    const Alphabet alphabet(4);
    const Rational zero = make_rational(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Word> memory;
        for (std::size_t i = 0; i < 1 + bounded(rng, 3); ++i)
            memory.push_back(random_word(alphabet, 3, rng));
        std::vector<Word> conveyed;
        for (std::size_t i = 0; i < 1 + bounded(rng, 4); ++i)
            conveyed.push_back(random_word(alphabet, 3, rng));
        const Partition p = partition_conveyed(memory, conveyed, zero);
        for (const Word& x : p.known)
            CHECK(std::find(memory.begin(), memory.end(), x) != memory.end());
        for (const Word& x : p.unknown)
            CHECK(std::find(memory.begin(), memory.end(), x) == memory.end());
    }
}

TEST_CASE("collapse candidates stay within the threshold of the minimum") {
    CHECK(collapse_candidates(ws({"abcd", "bacd", "cabd"}), make_rational(0, 1)) == ws({"abcd"}));
    const auto all = ws({"abcd", "bacd", "cabd"});
    CHECK(collapse_candidates(all, make_rational(1, 1)) == all);
    // H(aabb, aaaa) = 2 <= 2, H(bbbb, aaaa) = 4 > 2
    CHECK(collapse_candidates(ws({"aaaa", "aabb", "bbbb"}), make_rational(1, 2)) ==
          ws({"aaaa", "aabb"}));
    CHECK_THROWS_AS(collapse_candidates(std::span<const Word>{}, make_rational(0, 1)),
                    std::invalid_argument);
}

TEST_CASE("collapse candidates always contain the minimum") {
    Rng rng(43);
    const Alphabet alphabet(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Word> known;
        for (std::size_t i = 0; i < 1 + bounded(rng, 5); ++i)
            known.push_back(random_word(alphabet, 4, rng));
        const Rational eps = make_rational(bounded(rng, 11), 10);
        const auto candidates = collapse_candidates(known, eps);
        CHECK(!candidates.empty());
        CHECK(std::find(candidates.begin(), candidates.end(), lex_min(known)) != candidates.end());
    }
}

TEST_CASE("local update: addition keeps the conveyed word") {
    const Network net = star3();
    Configuration config = hub_config(net, base_params(make_rational(0, 1)), ws({"abcd", "bacd"}),
                                      w("bacd"), ws({"bacd", "cabd", "dabc"}));
    Rng rng(1);
    const ActionReport report = local_update(config, 0, rng);
    CHECK(report.kind == ActionKind::added);
    CHECK(report.added_count == 2);
    CHECK_FALSE(report.conveyed_changed());
    CHECK(config.conveyed_word(0) == w("bacd"));
    CHECK(config.memory_words(0) == ws({"abcd", "bacd", "cabd", "dabc"}));
}

TEST_CASE("local update: collapse lands on the minimum at epsilon=0") {
    const Network net = star3();
    Configuration config = hub_config(net, base_params(make_rational(0, 1)),
                                      ws({"abcd", "bacd", "cabd"}), w("bacd"),
                                      ws({"bacd", "cabd", "abcd"}));
    Rng rng(1);
    const Rng before = rng;
    const ActionReport report = local_update(config, 0, rng);
    CHECK(report.kind == ActionKind::collapsed);
    CHECK(config.conveyed_word(0) == w("abcd"));
    CHECK(config.memory_words(0) == ws({"abcd"}));
    CHECK((rng == before));  // singleton candidate set consumes no draw
}

TEST_CASE("local consensus is absorbing") {
    const Network net = star3();
    for (int i = 0; i <= 10; ++i) {
        Configuration config = hub_config(net, base_params(make_rational(i, 10)), ws({"abab"}),
                                          w("abab"), ws({"abab", "abab", "abab"}));
        Rng rng(1);
        const ActionReport report = local_update(config, 0, rng);
        CHECK(report.kind == ActionKind::collapsed);
        CHECK_FALSE(report.conveyed_changed());
        CHECK(config.memory_words(0) == ws({"abab"}));
    }
}

TEST_CASE("initial configuration is reproducible singletons") {
    const Network net = Network::torus(4, 4);
    SimParams params = base_params(make_rational(1, 2), 6, 8);
    params.seed = 21;
    Rng a(21);
    Rng b(21);
    const Configuration ca = Configuration::initialize(net, params, a);
    const Configuration cb = Configuration::initialize(net, params, b);
    for (std::uint32_t u = 0; u < net.vertex_count(); ++u) {
        CHECK(ca.memory(u).size() == 1);
        CHECK(ca.memory(u)[0] == ca.conveyed(u));
        CHECK(ca.conveyed_word(u) == cb.conveyed_word(u));
    }
    CHECK(ca.step_count() == 0);
    CHECK(ca.nonsingleton_count() == 0);
}

TEST_CASE("long random words rarely collide: p equals n on the big torus") {
    const Network& net = testsup::torus128();
    SimParams params = base_params(make_rational(0, 1), 32, 10);
    Rng rng(2025);
    const Configuration config = Configuration::initialize(net, params, rng);
    CHECK(config.distinct_initial_words() == net.vertex_count());
}

TEST_CASE("a step changes at most the selected vertex") {
    const Network net = Network::torus(3, 3);
    SimParams params = base_params(make_rational(1, 4));
    params.seed = 5;
    Rng rng(5);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = Schedule::make_async(net.vertex_count());
    for (int i = 0; i < 50; ++i) {
        const Configuration before = config;
        const ActionReport report = step(config, schedule, rng);
        for (std::uint32_t u = 0; u < net.vertex_count(); ++u) {
            if (u == report.vertex) continue;
            CHECK(before.conveyed(u) == config.conveyed(u));
            CHECK(std::vector<WordId>(before.memory(u).begin(), before.memory(u).end()) ==
                  std::vector<WordId>(config.memory(u).begin(), config.memory(u).end()));
        }
    }
}

TEST_CASE("sequential rounds update every vertex exactly once") {
    const Network net = Network::torus(3, 3);
    SimParams params = base_params(make_rational(0, 1));
    params.schedule = ScheduleKind::sequential;
    params.seed = 3;
    Rng rng(3);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = make_schedule(params, net.vertex_count(), rng);
    std::set<std::uint32_t> seen;
    for (std::uint32_t i = 0; i < net.vertex_count(); ++i)
        seen.insert(step(config, schedule, rng).vertex);
    CHECK(seen.size() == net.vertex_count());
}

TEST_CASE("two-vertex hand trace: add, add, collapse, collapse") {
    const Network net = Network::from_edge_list("n 2\n0 1\n");
    SimParams params = base_params(make_rational(0, 1), 2, 4);
    const Word x = w("ab");
    const Word y = w("ba");
    std::vector<AgentWords> states{singleton(x), singleton(y)};
    Configuration config = Configuration::from_words(net, params, states);

    const Schedule schedule = Schedule::make_sequential_identity(2);
    Rng rng(0);
    const ActionReport r1 = step(config, schedule, rng);
    CHECK(r1.kind == ActionKind::added);
    CHECK(config.memory_words(0) == ws({"ab", "ba"}));
    const ActionReport r2 = step(config, schedule, rng);
    CHECK(r2.kind == ActionKind::added);
    CHECK(config.memory_words(1) == ws({"ab", "ba"}));
    const ActionReport r3 = step(config, schedule, rng);
    CHECK(r3.kind == ActionKind::collapsed);
    CHECK(config.conveyed_word(0) == y);  // collapses onto the conveyed word, not the memory min
    const ActionReport r4 = step(config, schedule, rng);
    CHECK(r4.kind == ActionKind::collapsed);
    CHECK(config.conveyed_word(1) == y);
    CHECK(is_fixed_point(config));
    CHECK(config.step_count() == 4);
}

TEST_CASE("fixed point detection") {
    const Network net = star3();
    const Rational zero = make_rational(0, 1);

    SUBCASE("uniform consensus is a fixed point") {
        std::vector<AgentWords> states(4, singleton(w("caca")));
        const Configuration config = Configuration::from_words(net, base_params(zero), states);
        CHECK(is_fixed_point(config));
    }
    SUBCASE("an addition opportunity is not") {
        const Configuration config = hub_config(net, base_params(zero), ws({"abcd", "bacd"}),
                                                w("bacd"), ws({"bacd", "cabd", "dabc"}));
        CHECK_FALSE(is_fixed_point(config));
    }
    SUBCASE("zero energy with a fat memory is not") {
        std::vector<AgentWords> states(4, singleton(w("caca")));
        states[1] = AgentWords{ws({"caca", "dada"}), w("caca")};
        const Configuration config = Configuration::from_words(net, base_params(zero), states);
        CHECK(energy(config, net) == 0.0);
        CHECK_FALSE(is_fixed_point(config));  // the collapse still shrinks that memory
    }
}

TEST_CASE("fixed points absorb every further update") {
    const Network net = Network::torus(3, 3);
    SimParams params = base_params(make_rational(0, 1));
    params.seed = 17;
    Rng rng(17);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = Schedule::make_async(net.vertex_count());
    while (!is_fixed_point(config)) step(config, schedule, rng);

    const Configuration frozen = config;
    for (int i = 0; i < 200; ++i) step(config, schedule, rng);
    CHECK(oracle::same_population(frozen, config));
}

TEST_CASE("state invariants hold along a run") {
    const Network net = Network::torus(4, 4);
    SimParams params = base_params(make_rational(3, 10), 4, 6);
    params.seed = 9;
    Rng rng(9);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = Schedule::make_async(net.vertex_count());

    std::set<Word> initial_words;
    for (std::uint32_t u = 0; u < net.vertex_count(); ++u) initial_words.insert(config.conveyed_word(u));

    for (int i = 0; i < 2000; ++i) {
        const Configuration before = config;
        const ActionReport report = step(config, schedule, rng);
        const auto memory = config.memory(report.vertex);
        // conveyed stays in memory, memory stays sorted and distinct
        CHECK(std::binary_search(memory.begin(), memory.end(), config.conveyed(report.vertex)));
        CHECK(std::is_sorted(memory.begin(), memory.end()));
        if (report.kind == ActionKind::collapsed) {
            CHECK(memory.size() == 1);
        } else {
            // an addition never removes words
            for (WordId id : before.memory(report.vertex))
                CHECK(std::binary_search(memory.begin(), memory.end(), id));
            CHECK(memory.size() == before.memory(report.vertex).size() + report.added_count);
        }
        // no word creation, ever
        for (const Word& word : config.memory_words(report.vertex))
            CHECK(initial_words.count(word) == 1);
    }
}

TEST_CASE("epsilon=1 turns every update into a collapse") {
    const Network net = Network::torus(4, 4);
    SimParams params = base_params(make_rational(1, 1), 4, 10);
    params.schedule = ScheduleKind::sequential;
    params.seed = 13;
    Rng rng(13);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = make_schedule(params, net.vertex_count(), rng);
    for (std::uint32_t i = 0; i < net.vertex_count(); ++i) {
        const ActionReport report = step(config, schedule, rng);
        CHECK(report.kind == ActionKind::collapsed);
    }
    CHECK(config.nonsingleton_count() == 0);  // full coverage leaves only singletons
}

TEST_CASE("multiset weighting biases the collapse draw") {
    const Network net = star3();
    SimParams weighted = base_params(make_rational(1, 1));
    weighted.weight_by_multiplicity = true;
    SimParams uniform = base_params(make_rational(1, 1));

    const auto frequency_of_w1 = [&](const SimParams& params) {
        int hits = 0;
        const int trials = 4000;
        for (int i = 0; i < trials; ++i) {
            Configuration config = hub_config(net, params, ws({"dddd"}), w("dddd"),
                                              ws({"aaaa", "aaaa", "bbbb"}));
            Rng rng(1000 + i);
            local_update(config, 0, rng);
            hits += config.conveyed_word(0) == w("aaaa");
        }
        return static_cast<double>(hits) / trials;
    };

    CHECK(frequency_of_w1(weighted) == doctest::Approx(2.0 / 3).epsilon(0.08));
    CHECK(frequency_of_w1(uniform) == doctest::Approx(0.5).epsilon(0.08));
}

TEST_CASE("run honors max_steps = 0") {
    const Network net = Network::torus(3, 3);
    SimParams params = base_params(make_rational(0, 1));
    params.seed = 4;
    params.max_steps = 0;
    const RunResult result = run(net, params);
    CHECK(result.steps == 0);
    CHECK(result.config.step_count() == 0);
    CHECK(result.energy_series.samples.size() >= 1);
    CHECK(result.energy_series.samples.front().first == 0);
}

TEST_CASE("run converges and reports the consensus word at epsilon=0") {
    const Network net = Network::torus(3, 3);
    SimParams params = base_params(make_rational(0, 1));
    params.schedule = ScheduleKind::sequential;
    params.seed = 7;
    params.max_steps = 100000;
    const RunResult result = run(net, params);
    CHECK(result.converged);
    REQUIRE(result.consensus.has_value());
    for (std::uint32_t u = 0; u < net.vertex_count(); ++u)
        CHECK(result.config.conveyed_word(u) == *result.consensus);

    // the consensus word is one of the initial words
    Rng replay(7);
    std::set<Word> initial;
    const Alphabet alphabet(params.alphabet_size);
    for (std::uint32_t u = 0; u < net.vertex_count(); ++u)
        initial.insert(random_word(alphabet, params.length, replay));
    CHECK(initial.count(*result.consensus) == 1);
}

TEST_CASE("run is deterministic in the seed") {
    const Network net = Network::torus(4, 4);
    SimParams params = base_params(make_rational(1, 2), 8, 10);
    params.seed = 99;
    params.max_steps = 5000;
    const RunResult a = run(net, params);
    const RunResult b = run(net, params);
    CHECK(a.steps == b.steps);
    CHECK(a.final_energy == b.final_energy);
    CHECK(a.energy_series.samples == b.energy_series.samples);
    CHECK(oracle::same_population(a.config, b.config));
}

TEST_CASE("snapshot dump lists vertex, conveyed, then memory") {
    const Network net = Network::from_edge_list("n 2\n0 1\n");
    SimParams params = base_params(make_rational(0, 1), 2, 4);
    std::vector<AgentWords> states{AgentWords{ws({"ab", "ba"}), w("ba")}, singleton(w("ab"))};
    const Configuration config = Configuration::from_words(net, params, states);
    std::ostringstream out;
    dump_snapshot(config, out);
    CHECK(out.str() == "0 ba ab ba\n1 ab ab\n");
}

TEST_CASE("configuration construction validates its inputs") {
    const Network net = Network::from_edge_list("n 2\n0 1\n");
    SimParams params = base_params(make_rational(0, 1), 2, 4);
    std::vector<AgentWords> conveyed_missing{AgentWords{ws({"ab"}), w("ba")}, singleton(w("ab"))};
    CHECK_THROWS_AS(Configuration::from_words(net, params, conveyed_missing),
                    std::invalid_argument);
    std::vector<AgentWords> one_state{singleton(w("ab"))};
    CHECK_THROWS_AS(Configuration::from_words(net, params, one_state), std::invalid_argument);
    std::vector<AgentWords> bad_length{singleton(w("abc")), singleton(w("ab"))};
    CHECK_THROWS_AS(Configuration::from_words(net, params, bad_length), std::invalid_argument);

    SimParams bad = params;
    bad.epsilon = Rational{3, 2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = params;
    bad.alphabet_size = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = params;
    bad.length = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
