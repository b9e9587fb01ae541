// Language engines: factor sets L^n and their Parikh sets for the full
// language, subshifts of finite type, morphic fixed points and Sturmian
// languages.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "froblang/surd.hpp"
#include "froblang/words.hpp"

namespace froblang {

struct FullLanguage {
    bool operator==(const FullLanguage&) const = default;
};

struct ForbiddenFactors {
    std::vector<Word> words;
    bool operator==(const ForbiddenFactors&) const = default;
};

struct MorphicFixedPoint {
    Morphism morphism;
    Letter seed;
    std::string name;
    bool operator==(const MorphicFixedPoint&) const = default;
};

struct SturmianSlope {
    Surd alpha;
    bool operator==(const SturmianSlope&) const = default;
};

class LanguageSpec {
public:
    using Variant = std::variant<FullLanguage, ForbiddenFactors, MorphicFixedPoint, SturmianSlope>;

    static LanguageSpec full();
    static LanguageSpec forbid(std::vector<Word> words);
    static LanguageSpec golden_mean();
    static LanguageSpec morphic(Morphism m, Letter seed, std::string name = "custom");
    static LanguageSpec sturmian(const Surd& alpha);
    static LanguageSpec fibonacci();  // morphic:fib
    static LanguageSpec thue_morse(); // morphic:tm

    /// "full", "forbid:bb[,...]", "morphic:fib|tm|folding5", "sturmian:<surd>".
    static LanguageSpec parse(std::string_view text);

    const Variant& variant() const { return v_; }
    std::size_t alphabet_size() const;
    bool is_sft() const;  // Full or ForbiddenFactors
    std::string str() const;

    bool operator==(const LanguageSpec&) const = default;

private:
    explicit LanguageSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Deterministic automaton whose label sequences are the words avoiding a
/// finite set of forbidden factors. States are follower classes: two contexts
/// share a state iff they admit the same continuations.
class FollowerAutomaton {
public:
    static FollowerAutomaton build(const std::vector<Word>& forbidden, std::size_t alphabet_size = 2);

    std::size_t num_states() const { return next_.size(); }
    std::size_t alphabet_size() const { return alphabet_size_; }
    std::size_t initial() const { return initial_; }
    std::optional<std::size_t> next(std::size_t state, Letter l) const;
    /// Shortest word leading from the initial state to `state`.
    const Word& label(std::size_t state) const { return labels_[state]; }

    bool accepts(const Word& w) const;
    /// Letters allowed after every word of the language.
    std::vector<Letter> absorbing_letters() const;

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t alphabet_size_ = 2;
    std::size_t initial_ = 0;
    std::vector<std::vector<std::size_t>> next_;
    std::vector<Word> labels_;
};

FollowerAutomaton follower_automaton(const LanguageSpec& spec);

/// Sorted length-n factors.
std::vector<Word> factors(const LanguageSpec& spec, std::size_t n);

std::set<ParikhVector> parikh_set(const LanguageSpec& spec, std::size_t n);

/// For two-letter languages: the attainable counts of the second letter
/// (b, or 1) among length-n words, for every n in 1..n_max. Index 0 is empty.
struct ParikhTable {
    std::string provenance;
    std::vector<std::vector<std::uint32_t>> second_letter_counts;

    std::size_t max_length() const { return second_letter_counts.empty() ? 0 : second_letter_counts.size() - 1; }
};

ParikhTable parikh_table(const LanguageSpec& spec, std::size_t n_max);

/// c_alpha(n) = floor((n+2)alpha) - floor((n+1)alpha), n = 0..length-1.
Word characteristic_word(const Surd& alpha, std::size_t length);

enum class MechanicalVariant { Floor, Ceiling };

/// s_{alpha,rho} (floor) or s'_{alpha,rho} (ceiling), n = 0..length-1.
Word mechanical_word(const Surd& alpha, const Surd& rho, std::size_t length,
                     MechanicalVariant variant = MechanicalVariant::Floor);

}  // namespace froblang
