#include "lexnet/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lexnet::oracle {

namespace {

std::set<Word> distinct_conveyed_words(const Configuration& config, std::uint32_t u) {
    std::set<Word> conveyed;
    for (std::uint32_t v : config.network().neighbors(u)) conveyed.insert(config.conveyed_word(v));
    return conveyed;
}

bool confounds_exact(const Word& x, const Word& y, const Rational& eps) {
    const std::int64_t h = hamming(x, y);
    return h * eps.den <= eps.num * static_cast<std::int64_t>(x.length());
}

void write_back(Configuration& config, std::uint32_t u, const std::set<Word>& memory,
                const Word& conveyed) {
    std::vector<WordId> ids;
    ids.reserve(memory.size());
    for (const Word& w : memory) ids.push_back(config.words().find(w));
    std::sort(ids.begin(), ids.end());
    config.set_state(u, std::move(ids), config.words().find(conveyed));
}

}  // namespace

ActionReport naive_local_update(Configuration& config, std::uint32_t u, Rng& rng) {
    const Rational eps = config.params().epsilon;
    const std::vector<Word> memory = config.memory_words(u);
    const std::set<Word> conveyed = distinct_conveyed_words(config, u);

    std::vector<Word> unknown;
    std::vector<Word> known;
    for (const Word& x : conveyed) {
        bool far_from_all = true;
        for (const Word& y : memory)
            if (confounds_exact(x, y, eps)) {
                far_from_all = false;
                break;
            }
        (far_from_all ? unknown : known).push_back(x);
    }

    ActionReport report;
    report.vertex = u;
    report.old_conveyed = config.conveyed(u);

    if (!unknown.empty()) {
        std::set<Word> merged(memory.begin(), memory.end());
        merged.insert(unknown.begin(), unknown.end());
        write_back(config, u, merged, config.conveyed_word(u));
        report.kind = ActionKind::added;
        report.added_count = static_cast<std::uint32_t>(unknown.size());
        report.new_conveyed = report.old_conveyed;
        return report;
    }

    const Word& known_min = known.front();  // std::set iteration is lexicographic
    std::vector<Word> candidates;
    for (const Word& x : known)
        if (confounds_exact(x, known_min, eps)) candidates.push_back(x);
    const Word chosen = candidates[bounded(rng, candidates.size())];

    write_back(config, u, {chosen}, chosen);
    report.kind = ActionKind::collapsed;
    report.collapsed_to = config.conveyed(u);
    report.new_conveyed = config.conveyed(u);
    return report;
}

ActionReport membership_rule_update(Configuration& config, std::uint32_t u, Rng& /*rng*/) {
    if (config.params().epsilon.num != 0)
        throw std::invalid_argument("membership rule: requires epsilon = 0");
    const std::vector<Word> memory = config.memory_words(u);
    const std::set<Word> conveyed = distinct_conveyed_words(config, u);

    std::vector<Word> unknown;
    std::vector<Word> known;
    for (const Word& x : conveyed) {
        const bool member = std::find(memory.begin(), memory.end(), x) != memory.end();
        (member ? known : unknown).push_back(x);
    }

    ActionReport report;
    report.vertex = u;
    report.old_conveyed = config.conveyed(u);

    if (!unknown.empty()) {
        std::set<Word> merged(memory.begin(), memory.end());
        merged.insert(unknown.begin(), unknown.end());
        write_back(config, u, merged, config.conveyed_word(u));
        report.kind = ActionKind::added;
        report.added_count = static_cast<std::uint32_t>(unknown.size());
        report.new_conveyed = report.old_conveyed;
        return report;
    }

    const Word& chosen = *std::min_element(known.begin(), known.end());
    write_back(config, u, {chosen}, chosen);
    report.kind = ActionKind::collapsed;
    report.collapsed_to = config.conveyed(u);
    report.new_conveyed = config.conveyed(u);
    return report;
}

bool same_population(const Configuration& a, const Configuration& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    for (std::uint32_t u = 0; u < a.vertex_count(); ++u) {
        if (a.conveyed_word(u) != b.conveyed_word(u)) return false;
        if (a.memory_words(u) != b.memory_words(u)) return false;
    }
    return true;
}

LiteralPartition literal_forall_partition(std::span<const Word> memory,
                                          std::span<const Word> conveyed, const Rational& eps) {
    std::set<Word> distinct(conveyed.begin(), conveyed.end());
    LiteralPartition out;
    for (const Word& x : distinct) {
        bool all_far = true;
        bool all_near = true;
        for (const Word& y : memory) {
            if (confounds_exact(x, y, eps))
                all_far = false;
            else
                all_near = false;
        }
        if (all_far)
            out.unknown.push_back(x);
        else if (all_near)
            out.known.push_back(x);
        else
            out.orphans.push_back(x);
    }
    return out;
}

namespace {

std::string words_text(std::span<const Word> words) {
    std::string out = "{";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ", ";
        out += to_text(words[i]);
    }
    return out + "}";
}

bool same_report(const ActionReport& a, const ActionReport& b) {
    return a.kind == b.kind && a.vertex == b.vertex && a.added_count == b.added_count &&
           a.collapsed_to == b.collapsed_to && a.old_conveyed == b.old_conveyed &&
           a.new_conveyed == b.new_conveyed;
}

struct CaseGenerator {
    Rng rng;
    std::vector<Rational> grid;
    std::uint32_t length;
    std::uint32_t alphabet_size;

    CaseGenerator(std::uint64_t seed, std::uint32_t length, std::uint32_t alphabet_size)
        : rng(seed), length(length), alphabet_size(alphabet_size) {
        for (int i = 0; i <= 10; ++i) grid.push_back(make_rational(i, 10));
    }

    Rational pick_epsilon() { return grid[bounded(rng, grid.size())]; }

    std::vector<Word> pool(std::size_t size) {
        const Alphabet alphabet(alphabet_size);
        std::set<Word> words;
        while (words.size() < size) words.insert(random_word(alphabet, length, rng));
        return {words.begin(), words.end()};
    }

    std::vector<Word> subset(const std::vector<Word>& pool, std::size_t max_size) {
        std::set<Word> picked;
        const std::size_t want = 1 + bounded(rng, max_size);
        while (picked.size() < want) picked.insert(pool[bounded(rng, pool.size())]);
        return {picked.begin(), picked.end()};
    }

    Configuration random_configuration(const Network& net, const std::vector<Word>& pool,
                                       const Rational& eps) {
        std::vector<AgentWords> states(net.vertex_count());
        for (AgentWords& s : states) {
            s.memory = subset(pool, 4);
            s.conveyed = s.memory[bounded(rng, s.memory.size())];
        }
        SimParams params;
        params.epsilon = eps;
        params.length = length;
        params.alphabet_size = alphabet_size;
        return Configuration::from_words(net, params, states);
    }
};

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;
    CaseGenerator gen(options.seed, 4, 6);

    const auto record_failure = [&](const std::string& text) {
        if (report.first_counterexample.empty()) report.first_counterexample = text;
    };

    // Word-level partition and candidate-set comparison against a direct
    // set comprehension over the definitions.
    for (std::uint32_t c = 0; c < options.cases; ++c) {
        const std::vector<Word> pool = gen.pool(20);
        const std::vector<Word> memory = gen.subset(pool, 4);
        const std::vector<Word> conveyed_raw = gen.subset(pool, 5);
        const Rational eps = gen.pick_epsilon();

        std::vector<Word> expected_unknown;
        std::vector<Word> expected_known;
        for (const Word& x : conveyed_raw) {
            bool far_from_all = true;
            for (const Word& y : memory)
                if (static_cast<std::int64_t>(hamming(x, y)) * eps.den <=
                    eps.num * static_cast<std::int64_t>(x.length())) {
                    far_from_all = false;
                    break;
                }
            (far_from_all ? expected_unknown : expected_known).push_back(x);
        }

        const Partition got = partition_conveyed(memory, conveyed_raw, eps);
        ++report.partition_cases;
        bool bad = got.unknown != expected_unknown || got.known != expected_known;
        if (!bad && !expected_known.empty()) {
            const Word& known_min = expected_known.front();
            std::vector<Word> expected_candidates;
            for (const Word& x : expected_known)
                if (static_cast<std::int64_t>(hamming(x, known_min)) * eps.den <=
                    eps.num * static_cast<std::int64_t>(x.length()))
                    expected_candidates.push_back(x);
            bad = collapse_candidates(expected_known, eps) != expected_candidates;
        }
        if (bad) {
            ++report.partition_failures;
            record_failure("partition mismatch: memory=" + words_text(memory) +
                           " conveyed=" + words_text(conveyed_raw) + " epsilon=" + to_string(eps));
        }
    }

    // Single-update differential: optimized rule vs naive rule on twin
    // configurations fed twin generators.
    for (std::uint32_t c = 0; c < options.cases; ++c) {
        const std::uint32_t n = 3 + static_cast<std::uint32_t>(bounded(gen.rng, 8));
        const Network net = Network::random_connected(n, static_cast<std::uint32_t>(bounded(gen.rng, n)), gen.rng);
        const std::vector<Word> pool = gen.pool(20);
        const Rational eps = gen.pick_epsilon();
        Configuration fast = gen.random_configuration(net, pool, eps);
        Configuration naive = fast;
        const auto u = static_cast<std::uint32_t>(bounded(gen.rng, n));

        const std::uint64_t draw_seed = gen.rng();
        Rng fast_rng(draw_seed);
        Rng naive_rng(draw_seed);
        const ActionReport fast_report = local_update(fast, u, fast_rng);
        const ActionReport naive_report = naive_local_update(naive, u, naive_rng);

        ++report.update_cases;
        if (!same_report(fast_report, naive_report) || !same_population(fast, naive) ||
            fast_rng != naive_rng) {
            ++report.update_failures;
            std::ostringstream out;
            out << "update mismatch at vertex " << u << ", epsilon " << to_string(eps) << "\n";
            dump_snapshot(fast, out);
            record_failure(out.str());
        }
    }

    // Epsilon = 0 single updates: general rule vs membership rule.
    for (std::uint32_t c = 0; c < options.cases; ++c) {
        const std::uint32_t n = 3 + static_cast<std::uint32_t>(bounded(gen.rng, 8));
        const Network net = Network::random_connected(n, static_cast<std::uint32_t>(bounded(gen.rng, n)), gen.rng);
        const std::vector<Word> pool = gen.pool(20);
        Configuration general = gen.random_configuration(net, pool, make_rational(0, 1));
        Configuration membership = general;
        const auto u = static_cast<std::uint32_t>(bounded(gen.rng, n));

        const std::uint64_t draw_seed = gen.rng();
        Rng general_rng(draw_seed);
        Rng membership_rng(draw_seed);
        const ActionReport general_report = local_update(general, u, general_rng);
        const ActionReport membership_report = membership_rule_update(membership, u, membership_rng);

        ++report.membership_cases;
        if (!same_report(general_report, membership_report) ||
            !same_population(general, membership) || general_rng != membership_rng) {
            ++report.membership_failures;
            std::ostringstream out;
            out << "membership-rule mismatch at vertex " << u << "\n";
            dump_snapshot(general, out);
            record_failure(out.str());
        }
    }

    // Epsilon = 0 full-run equivalence from shared seeds.
    for (std::uint32_t r = 0; r < options.full_runs; ++r) {
        const std::uint32_t n = 4 + static_cast<std::uint32_t>(bounded(gen.rng, 9));
        const Network net = Network::random_connected(n, static_cast<std::uint32_t>(bounded(gen.rng, n)), gen.rng);
        SimParams params;
        params.epsilon = make_rational(0, 1);
        params.length = 4;
        params.alphabet_size = 4;
        params.schedule = ScheduleKind::fully_async;
        params.seed = gen.rng();

        Rng general_rng(params.seed);
        Rng membership_rng(params.seed);
        Configuration general = Configuration::initialize(net, params, general_rng);
        Configuration membership = Configuration::initialize(net, params, membership_rng);
        const Schedule schedule = make_schedule(params, n, general_rng);
        make_schedule(params, n, membership_rng);

        ++report.full_run_cases;
        bool bad = false;
        const std::uint64_t horizon = static_cast<std::uint64_t>(200) * n;
        for (std::uint64_t t = 0; t < horizon && !bad; ++t) {
            const auto u = next_vertex(schedule, general.step_count(), general_rng);
            const auto v = next_vertex(schedule, membership.step_count(), membership_rng);
            bad = u != v;
            if (!bad) {
                const ActionReport a = local_update(general, u, general_rng);
                const ActionReport b = membership_rule_update(membership, v, membership_rng);
                general.advance_step_counter();
                membership.advance_step_counter();
                bad = !same_report(a, b) || !same_population(general, membership) ||
                      general_rng != membership_rng;
            }
            if (!bad && is_fixed_point(general)) break;
        }
        if (bad) {
            ++report.full_run_failures;
            std::ostringstream out;
            out << "full-run divergence, seed " << params.seed << "\n";
            dump_snapshot(general, out);
            record_failure(out.str());
        }
    }

    return report;
}

}  // namespace lexnet::oracle
