// Finite words over small alphabets, Parikh vectors and morphisms.
//
// Letters are indices into an alphabet of size 2 or 4. The names a,b,c,d
// map to 0..3, and the digits 0,1 alias a,b so Sturmian words can be
// written in their usual {0,1} form.
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace froblang {

inline constexpr std::size_t kMaxAlphabet = 4;

struct Letter {
    std::uint8_t index = 0;

    constexpr auto operator<=>(const Letter&) const = default;
};

/// Per-letter occurrence counts.
struct ParikhVector {
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const;
    ParikhVector operator+(const ParikhVector& other) const;
    auto operator<=>(const ParikhVector&) const = default;
};

class Word {
public:
    explicit Word(std::size_t alphabet_size = 2);
    Word(std::size_t alphabet_size, std::vector<Letter> letters);

    /// Parses letters a..d (or 0,1 for the binary alphabet).
    static Word parse(std::string_view text, std::size_t alphabet_size);

    std::size_t alphabet_size() const { return alphabet_size_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    std::span<const Letter> letters() const { return letters_; }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    void push_back(Letter l);
    void append(const Word& other);
    void truncate(std::size_t n);
    Word substr(std::size_t pos, std::size_t len) const;
    bool starts_with(const Word& prefix) const;

    /// Letter names a,b,c,d.
    std::string str() const;
    /// Digits 0..3; the conventional spelling for Sturmian words.
    std::string digits() const;

    bool operator==(const Word& other) const = default;
    std::strong_ordering operator<=>(const Word& other) const;

private:
    std::size_t alphabet_size_;
    std::vector<Letter> letters_;
};

Word reverse(const Word& w);
ParikhVector parikh(const Word& w);
bool is_palindrome(const Word& w);

class Morphism {
public:
    Morphism(std::size_t alphabet_size, std::vector<Word> images);

    /// Builds from image spellings in letter order, e.g. {"ab", "ba"}.
    static Morphism from_strings(std::size_t alphabet_size,
                                 const std::vector<std::string>& images);

    std::size_t alphabet_size() const { return alphabet_size_; }
    const Word& image(Letter l) const { return images_.at(l.index); }
    const std::vector<Word>& images() const { return images_; }

    /// m(seed) starts with seed and is longer than one letter.
    bool prolongable_on(Letter seed) const;

    /// Incidence matrix: entry [i][j] counts letter i in m(letter j).
    std::vector<std::vector<std::uint64_t>> incidence() const;

    bool operator==(const Morphism&) const = default;

private:
    std::size_t alphabet_size_;
    std::vector<Word> images_;
};

Word apply_morphism(const Morphism& m, const Word& w);

/// Composition (f ∘ g)(x) = f(g(x)).
Morphism compose(const Morphism& f, const Morphism& g);

/// Prefix of length exactly min_len of the fixed point of m starting with seed.
Word fixed_point_prefix(const Morphism& m, Letter seed, std::size_t min_len);

/// m^k(w).
Word iterate(const Morphism& m, const Word& w, unsigned k);

namespace catalog {
Morphism fibonacci();   // 0 -> 01, 1 -> 0
Morphism thue_morse();  // a -> ab, b -> ba
Morphism folding5();    // abcba, bcdcb, cdadc, dabad
Morphism rotation();    // a -> b -> c -> d -> a

/// Looks up "fib", "tm", "folding5" or "rotation".
Morphism by_name(std::string_view name);
}  // namespace catalog

}  // namespace froblang
