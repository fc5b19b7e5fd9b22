#include "lexnet/automaton.hpp"

#include <algorithm>
#include <cstring>
#include <ostream>

#include "lexnet/metrics.hpp"

namespace lexnet {

WordTable::WordTable(std::vector<Word> words, std::uint32_t length, std::uint32_t alphabet_size)
    : length_(length), alphabet_size_(alphabet_size) {
    if (words.empty()) throw std::invalid_argument("word table: no words");
    for (const Word& w : words) {
        if (w.length() != length)
            throw std::invalid_argument("word table: all words must have length " + std::to_string(length));
        for (Symbol s : w.symbols)
            if (s >= alphabet_size)
                throw std::invalid_argument("word table: symbol outside alphabet");
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    count_ = static_cast<std::uint32_t>(words.size());
    symbols_.resize(static_cast<std::size_t>(count_) * length_);
    for (std::uint32_t id = 0; id < count_; ++id)
        std::copy(words[id].symbols.begin(), words[id].symbols.end(),
                  symbols_.begin() + static_cast<std::size_t>(id) * length_);
}

Word WordTable::word(WordId id) const {
    const Symbol* row = data(id);
    return Word{std::vector<Symbol>(row, row + length_)};
}

WordId WordTable::find(const Word& w) const {
    if (w.length() != length_) throw std::invalid_argument("word table: length mismatch");
    std::uint32_t lo = 0;
    std::uint32_t hi = count_;
    while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        if (std::memcmp(data(mid), w.symbols.data(), length_) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == count_ || std::memcmp(data(lo), w.symbols.data(), length_) != 0)
        throw std::invalid_argument("word table: word not present");
    return lo;
}

void SimParams::validate() const {
    if (epsilon.den <= 0 || !in_unit_interval(epsilon))
        throw std::invalid_argument("epsilon must be a rational in [0, 1]");
    if (length < 1) throw std::invalid_argument("word length must be >= 1");
    if (alphabet_size < 2 || alphabet_size > 256)
        throw std::invalid_argument("alphabet size must be in [2, 256]");
}

Configuration::Configuration(const Network& net, const SimParams& params,
                             std::vector<Word> initial_words)
    : net_(&net),
      params_(params),
      table_(std::move(initial_words), params.length, params.alphabet_size),
      h_max_(confound_threshold(params.epsilon, params.length)) {
    params_.validate();
}

Configuration Configuration::initialize(const Network& net, const SimParams& params, Rng& rng) {
    params.validate();
    const Alphabet alphabet(params.alphabet_size);
    const std::uint32_t n = net.vertex_count();
    std::vector<Word> drawn;
    drawn.reserve(n);
    for (std::uint32_t u = 0; u < n; ++u) drawn.push_back(random_word(alphabet, params.length, rng));

    Configuration config(net, params, drawn);
    config.states_.resize(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        const WordId id = config.table_.find(drawn[u]);
        config.states_[u].memory = {id};
        config.states_[u].conveyed = id;
    }
    return config;
}

Configuration Configuration::from_words(const Network& net, const SimParams& params,
                                        std::span<const AgentWords> states) {
    if (states.size() != net.vertex_count())
        throw std::invalid_argument("configuration: one state per vertex required");
    std::vector<Word> all;
    for (const AgentWords& s : states) {
        if (s.memory.empty()) throw std::invalid_argument("configuration: empty memory");
        if (std::find(s.memory.begin(), s.memory.end(), s.conveyed) == s.memory.end())
            throw std::invalid_argument("configuration: conveyed word must be in memory");
        all.insert(all.end(), s.memory.begin(), s.memory.end());
    }
    Configuration config(net, params, std::move(all));
    config.states_.resize(states.size());
    for (std::uint32_t u = 0; u < states.size(); ++u) {
        std::vector<WordId> ids;
        ids.reserve(states[u].memory.size());
        for (const Word& w : states[u].memory) ids.push_back(config.table_.find(w));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (ids.size() > 1) ++config.nonsingleton_;
        config.states_[u].memory = std::move(ids);
        config.states_[u].conveyed = config.table_.find(states[u].conveyed);
    }
    return config;
}

std::vector<Word> Configuration::memory_words(std::uint32_t u) const {
    std::vector<Word> out;
    out.reserve(states_[u].memory.size());
    for (WordId id : states_[u].memory) out.push_back(table_.word(id));
    return out;
}

void Configuration::set_state(std::uint32_t u, std::vector<WordId> memory, WordId conveyed) {
    if (memory.empty() || !std::is_sorted(memory.begin(), memory.end()) ||
        std::adjacent_find(memory.begin(), memory.end()) != memory.end())
        throw std::invalid_argument("set_state: memory must be sorted, distinct, non-empty");
    if (!std::binary_search(memory.begin(), memory.end(), conveyed))
        throw std::invalid_argument("set_state: conveyed word must be in memory");
    nonsingleton_ -= states_[u].memory.size() > 1;
    nonsingleton_ += memory.size() > 1;
    states_[u].memory = std::move(memory);
    states_[u].conveyed = conveyed;
}

ActionReport Configuration::apply_local_rule(std::uint32_t u, Rng& rng) {
    Scratch& s = scratch_;
    s.conveyed.clear();
    for (std::uint32_t v : net_->neighbors(u)) s.conveyed.push_back(states_[v].conveyed);
    std::sort(s.conveyed.begin(), s.conveyed.end());

    const bool weighted = params_.weight_by_multiplicity;
    if (weighted) {
        s.multiplicity.clear();
        std::size_t out = 0;
        for (std::size_t i = 0; i < s.conveyed.size();) {
            std::size_t j = i;
            while (j < s.conveyed.size() && s.conveyed[j] == s.conveyed[i]) ++j;
            s.conveyed[out++] = s.conveyed[i];
            s.multiplicity.push_back(static_cast<std::uint32_t>(j - i));
            i = j;
        }
        s.conveyed.resize(out);
    } else {
        s.conveyed.erase(std::unique(s.conveyed.begin(), s.conveyed.end()), s.conveyed.end());
    }

    // step 1: split the distinct conveyed words into unknown (no memory word
    // within the confusion threshold) and known (some memory word within it).
    const std::vector<WordId>& memory = states_[u].memory;
    s.unknown.clear();
    s.known.clear();
    s.known_multiplicity.clear();
    for (std::size_t i = 0; i < s.conveyed.size(); ++i) {
        const WordId x = s.conveyed[i];
        bool known;
        if (h_max_ == 0) {
            known = std::binary_search(memory.begin(), memory.end(), x);
        } else {
            known = false;
            for (WordId y : memory)
                if (table_.hamming_at_most(x, y, h_max_)) {
                    known = true;
                    break;
                }
        }
        if (known) {
            s.known.push_back(x);
            if (weighted) s.known_multiplicity.push_back(s.multiplicity[i]);
        } else {
            s.unknown.push_back(x);
        }
    }

    ActionReport report;
    report.vertex = u;
    report.old_conveyed = states_[u].conveyed;

    // step 2: add the unknown words, or collapse onto a candidate near the
    // lexicographic minimum of the known ones.
    if (!s.unknown.empty()) {
        s.merged.clear();
        std::set_union(memory.begin(), memory.end(), s.unknown.begin(), s.unknown.end(),
                       std::back_inserter(s.merged));
        if (states_[u].memory.size() == 1) ++nonsingleton_;
        states_[u].memory.swap(s.merged);
        report.kind = ActionKind::added;
        report.added_count = static_cast<std::uint32_t>(s.unknown.size());
        report.new_conveyed = report.old_conveyed;
        return report;
    }

    const WordId known_min = s.known.front();  // sorted by id == lexicographic order
    s.candidates.clear();
    s.candidate_multiplicity.clear();
    for (std::size_t i = 0; i < s.known.size(); ++i)
        if (table_.hamming_at_most(s.known[i], known_min, h_max_)) {
            s.candidates.push_back(s.known[i]);
            if (weighted) s.candidate_multiplicity.push_back(s.known_multiplicity[i]);
        }

    WordId chosen;
    if (weighted) {
        std::uint64_t total = 0;
        for (std::uint32_t m : s.candidate_multiplicity) total += m;
        std::uint64_t draw = bounded(rng, total);
        std::size_t idx = 0;
        while (draw >= s.candidate_multiplicity[idx]) draw -= s.candidate_multiplicity[idx++];
        chosen = s.candidates[idx];
    } else {
        chosen = s.candidates[bounded(rng, s.candidates.size())];
    }

    if (states_[u].memory.size() > 1) --nonsingleton_;
    states_[u].memory.assign(1, chosen);
    states_[u].conveyed = chosen;
    report.kind = ActionKind::collapsed;
    report.collapsed_to = chosen;
    report.new_conveyed = chosen;
    return report;
}

Partition partition_conveyed(std::span<const Word> memory, std::span<const Word> conveyed,
                             const Rational& eps) {
    if (memory.empty()) throw std::invalid_argument("partition: memory must be non-empty");
    if (conveyed.empty()) throw std::invalid_argument("partition: conveyed must be non-empty");
    const auto length = static_cast<std::uint32_t>(memory.front().length());
    const std::uint32_t h_max = confound_threshold(eps, length);

    std::vector<Word> distinct(conveyed.begin(), conveyed.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    Partition out;
    for (Word& x : distinct) {
        bool known = false;
        for (const Word& y : memory)
            if (hamming(x, y) <= h_max) {
                known = true;
                break;
            }
        (known ? out.known : out.unknown).push_back(std::move(x));
    }
    return out;
}

std::vector<Word> collapse_candidates(std::span<const Word> known, const Rational& eps) {
    if (known.empty()) throw std::invalid_argument("collapse_candidates: empty collection");
    const auto length = static_cast<std::uint32_t>(known.front().length());
    const std::uint32_t h_max = confound_threshold(eps, length);
    const Word& min_word = lex_min(known);
    std::vector<Word> candidates;
    for (const Word& x : known)
        if (hamming(x, min_word) <= h_max) candidates.push_back(x);
    std::sort(candidates.begin(), candidates.end());
    return candidates;
}

Configuration init_configuration(const Network& net, const SimParams& params, Rng& rng) {
    return Configuration::initialize(net, params, rng);
}

ActionReport step(Configuration& config, const Schedule& schedule, Rng& rng) {
    const std::uint32_t u = next_vertex(schedule, config.step_count(), rng);
    ActionReport report = config.apply_local_rule(u, rng);
    config.advance_step_counter();
    return report;
}

bool is_fixed_point(const Configuration& config) {
    const WordTable& table = config.words();
    const std::uint32_t h_max = config.confusion_threshold();
    std::vector<WordId> conveyed;
    for (std::uint32_t u = 0; u < config.vertex_count(); ++u) {
        const auto memory = config.memory(u);
        if (memory.size() != 1) return false;  // a collapse would shrink it
        const WordId self = config.conveyed(u);

        conveyed.clear();
        for (std::uint32_t v : config.network().neighbors(u)) conveyed.push_back(config.conveyed(v));
        std::sort(conveyed.begin(), conveyed.end());
        conveyed.erase(std::unique(conveyed.begin(), conveyed.end()), conveyed.end());

        WordId known_min = 0;
        bool have_known = false;
        for (WordId x : conveyed) {
            if (!table.hamming_at_most(x, memory[0], h_max)) return false;  // unknown word: addition
            if (!have_known) {
                known_min = x;  // ascending order: first known is the minimum
                have_known = true;
            }
        }
        // the collapse draw must be forced to the current state
        for (WordId x : conveyed)
            if (table.hamming_at_most(x, known_min, h_max) && x != self) return false;
    }
    return true;
}

Schedule make_schedule(const SimParams& params, std::uint32_t n, Rng& rng) {
    if (params.schedule == ScheduleKind::sequential)
        return params.permutation == PermutationKind::random ? Schedule::make_sequential_random(n, rng)
                                                             : Schedule::make_sequential_identity(n);
    return Schedule::make_async(n);
}

RunResult run(const Network& net, const SimParams& params) {
    params.validate();
    Rng rng(params.seed);
    Configuration config = Configuration::initialize(net, params, rng);
    const Schedule schedule = make_schedule(params, net.vertex_count(), rng);
    EnergyTracker tracker(config, net);

    const std::uint64_t stride = params.sample_stride != 0 ? params.sample_stride : net.vertex_count();
    EnergySeries series;
    series.stride = stride;
    if (params.record_series) series.samples.emplace_back(0, tracker.value());

    while (config.step_count() < params.max_steps) {
        if (params.stop_on_consensus && tracker.numerator() == 0) break;
        const ActionReport report = step(config, schedule, rng);
        if (report.conveyed_changed())
            tracker.apply_conveyed_change(config, net, report.vertex, report.old_conveyed,
                                          report.new_conveyed);
        if (params.record_series && config.step_count() % stride == 0)
            series.samples.emplace_back(config.step_count(), tracker.value());
    }
    if (params.record_series && series.samples.back().first != config.step_count())
        series.samples.emplace_back(config.step_count(), tracker.value());

    RunResult result{std::move(config), std::move(series), 0, 0.0, false, std::nullopt, 0};
    result.steps = result.config.step_count();
    result.final_energy = tracker.value();
    result.converged = tracker.numerator() == 0;
    if (result.converged) result.consensus = result.config.conveyed_word(0);
    result.initial_distinct_words = result.config.distinct_initial_words();
    return result;
}

void dump_snapshot(const Configuration& config, std::ostream& out) {
    for (std::uint32_t u = 0; u < config.vertex_count(); ++u) {
        out << u << ' ' << to_text(config.conveyed_word(u));
        for (WordId id : config.memory(u)) out << ' ' << to_text(config.words().word(id));
        out << '\n';
    }
}

}  // namespace lexnet
