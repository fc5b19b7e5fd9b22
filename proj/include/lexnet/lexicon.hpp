// Words over an ordered alphabet of sounds: Hamming distance, lexicographic
// order, and the epsilon-confusion predicate.
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexnet/rational.hpp"
#include "lexnet/rng.hpp"

namespace lexnet {

using Symbol = std::uint8_t;

// Symbols are abstract indices 0..size-1 ordered by value; no phonetic
// content. Dense byte storage caps the alphabet at 256 sounds.
struct Alphabet {
    std::uint32_t size;

    explicit Alphabet(std::uint32_t s) : size(s) {
        if (s < 2 || s > 256)
            throw std::invalid_argument("alphabet size must be in [2, 256]");
    }
};

// Fixed-length sequence of symbol indices. operator<=> on the symbol vector
// is exactly the lexicographic word order (all words in a run share L).
struct Word {
    std::vector<Symbol> symbols;

    Word() = default;
    explicit Word(std::vector<Symbol> s) : symbols(std::move(s)) {}

    std::size_t length() const { return symbols.size(); }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

// Number of positions in which x and y differ. Words must share a length.
std::uint32_t hamming(const Word& x, const Word& y);

// Lexicographic minimum of a non-empty collection.
const Word& lex_min(std::span<const Word> words);

// True iff the two words are confounded at confusion level eps, i.e.
// H(x,y) <= eps*L, evaluated exactly as H*den <= num*L. False means the
// hearer distinguishes them (H > eps*L). eps must lie in [0, 1].
bool confounds(const Word& x, const Word& y, const Rational& eps);

// Largest Hamming distance that still confounds: floor(num*L/den).
// H <= threshold is equivalent to H*den <= num*L for integer H.
inline std::uint32_t confound_threshold(const Rational& eps, std::uint32_t length) {
    if (!in_unit_interval(eps)) throw std::invalid_argument("epsilon must be in [0, 1]");
    return static_cast<std::uint32_t>(eps.num * length / eps.den);
}

// Each position drawn independently and uniformly from the alphabet.
Word random_word(const Alphabet& alphabet, std::uint32_t length, Rng& rng);

// Text form used in logs, fixtures and snapshots: lowercase letters a.. for
// alphabets up to 26 sounds ("abcd"), dot-separated indices otherwise.
std::string to_text(const Word& word);
Word word_from_text(std::string_view text, const Alphabet& alphabet);

}  // namespace lexnet
