#include "lexnet/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace lexnet {

std::uint32_t hamming(const Word& x, const Word& y) {
    if (x.length() != y.length())
        throw std::invalid_argument("hamming: words must have the same length");
    std::uint32_t count = 0;
    for (std::size_t k = 0; k < x.symbols.size(); ++k)
        count += x.symbols[k] != y.symbols[k];
    return count;
}

const Word& lex_min(std::span<const Word> words) {
    if (words.empty()) throw std::invalid_argument("lex_min: empty collection");
    return *std::min_element(words.begin(), words.end());
}

bool confounds(const Word& x, const Word& y, const Rational& eps) {
    if (!in_unit_interval(eps)) throw std::invalid_argument("epsilon must be in [0, 1]");
    const std::uint32_t h = hamming(x, y);
    const auto length = static_cast<std::int64_t>(x.length());
    return static_cast<std::int64_t>(h) * eps.den <= eps.num * length;
}

Word random_word(const Alphabet& alphabet, std::uint32_t length, Rng& rng) {
    std::vector<Symbol> symbols(length);
    for (auto& s : symbols) s = static_cast<Symbol>(bounded(rng, alphabet.size));
    return Word{std::move(symbols)};
}

std::string to_text(const Word& word) {
    std::string out;
    bool letters = true;
    for (Symbol s : word.symbols) letters = letters && s < 26;
    if (letters) {
        out.reserve(word.length());
        for (Symbol s : word.symbols) out.push_back(static_cast<char>('a' + s));
    } else {
        for (std::size_t k = 0; k < word.symbols.size(); ++k) {
            if (k > 0) out.push_back('.');
            out += std::to_string(word.symbols[k]);
        }
    }
    return out;
}

Word word_from_text(std::string_view text, const Alphabet& alphabet) {
    std::vector<Symbol> symbols;
    const bool letter_form =
        !text.empty() &&
        text.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string_view::npos;
    if (letter_form) {
        symbols.reserve(text.size());
        for (char c : text) {
            if (static_cast<std::uint32_t>(c - 'a') >= alphabet.size)
                throw std::invalid_argument("word text: symbol out of alphabet range");
            symbols.push_back(static_cast<Symbol>(c - 'a'));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t dot = std::min(text.find('.', pos), text.size());
            unsigned value = 0;
            const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + dot, value);
            if (ec != std::errc{} || ptr != text.data() + dot || value >= alphabet.size)
                throw std::invalid_argument("word text: bad symbol index");
            symbols.push_back(static_cast<Symbol>(value));
            pos = dot + 1;
        }
    }
    return Word{std::move(symbols)};
}

Rational parse_rational(std::string_view text) {
    const auto parse_int = [](std::string_view s) -> std::int64_t {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw std::invalid_argument("rational: cannot parse '" + std::string(s) + "'");
        return value;
    };
    if (const auto slash = text.find('/'); slash != std::string_view::npos)
        return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 6)
            throw std::invalid_argument(
                "rational: decimals must have 1 to 6 fractional digits; use NUM/DEN otherwise");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::string_view whole = text.substr(0, dot);
        const std::int64_t integral = whole.empty() ? 0 : parse_int(whole);
        const std::int64_t fractional = parse_int(frac);
        if (fractional < 0) throw std::invalid_argument("rational: malformed decimal");
        const std::int64_t magnitude = (integral < 0 ? -integral : integral) * den + fractional;
        return make_rational(integral < 0 || whole == "-0" ? -magnitude : magnitude, den);
    }
    return make_rational(parse_int(text), 1);
}

}  // namespace lexnet
