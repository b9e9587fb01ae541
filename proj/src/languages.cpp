#include "froblang/languages.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "froblang/errors.hpp"

namespace froblang {

namespace {

// Stabilization starts at 64n letters and gives up past 2^20 n.
constexpr std::size_t kInitialPrefixFactor = 64;
constexpr std::size_t kPrefixCapFactor = std::size_t{1} << 20;
// Enumerating more words than this is a misuse of factors().
constexpr std::size_t kMaxEnumeratedFactors = std::size_t{1} << 22;

void require_sturmian_slope(const Surd& alpha) {
    if (alpha.is_rational()) throw DomainError("Sturmian slope must be irrational");
    if (floor(alpha) != 0) throw DomainError("Sturmian slope must lie in (0,1)");
}

std::string as_bytes(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (auto l : w.letters()) s.push_back(static_cast<char>(l.index));
    return s;
}

Word from_bytes(std::string_view s, std::size_t alphabet) {
    std::vector<Letter> v;
    v.reserve(s.size());
    for (char c : s) v.push_back(Letter{static_cast<std::uint8_t>(c)});
    return Word(alphabet, std::move(v));
}

}  // namespace

// LanguageSpec ----------------------------------------------------------------

LanguageSpec LanguageSpec::full() { return LanguageSpec(FullLanguage{}); }

LanguageSpec LanguageSpec::forbid(std::vector<Word> words) {
    for (const auto& w : words) {
        if (w.empty()) throw DomainError("forbidden factors must be non-empty");
        if (w.alphabet_size() != 2) throw DomainError("forbidden factors must be over {a,b}");
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return LanguageSpec(ForbiddenFactors{std::move(words)});
}

LanguageSpec LanguageSpec::golden_mean() { return forbid({Word::parse("bb", 2)}); }

LanguageSpec LanguageSpec::morphic(Morphism m, Letter seed, std::string name) {
    if (!m.prolongable_on(seed)) throw DomainError("morphism is not prolongable on the seed");
    return LanguageSpec(MorphicFixedPoint{std::move(m), seed, std::move(name)});
}

LanguageSpec LanguageSpec::sturmian(const Surd& alpha) {
    require_sturmian_slope(alpha);
    return LanguageSpec(SturmianSlope{alpha});
}

LanguageSpec LanguageSpec::fibonacci() { return morphic(catalog::fibonacci(), Letter{0}, "fib"); }
LanguageSpec LanguageSpec::thue_morse() { return morphic(catalog::thue_morse(), Letter{0}, "tm"); }

LanguageSpec LanguageSpec::parse(std::string_view text) {
    auto colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    std::size_t offset = colon == std::string_view::npos ? text.size() : colon + 1;
    if (head == "full" && colon == std::string_view::npos) return full();
    if (head == "forbid") {
        std::vector<Word> words;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            auto item = rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            if (item.empty()) throw ParseError("empty forbidden factor", offset + pos);
            try {
                words.push_back(Word::parse(item, 2));
            } catch (const ParseError& e) {
                throw ParseError("bad forbidden factor '" + std::string(item) + "'", offset + pos + e.position());
            }
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return forbid(std::move(words));
    }
    if (head == "morphic") {
        if (rest == "fib") return fibonacci();
        if (rest == "tm") return thue_morse();
        if (rest == "folding5") return morphic(catalog::folding5(), Letter{0}, "folding5");
        throw ParseError("unknown morphic language '" + std::string(rest) + "'", offset);
    }
    if (head == "sturmian") {
        Surd alpha = Surd::integer(0);
        try {
            alpha = Surd::parse(rest);
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad Sturmian slope: ") + e.detail(), offset + e.position());
        }
        return sturmian(alpha);
    }
    throw ParseError("unknown language '" + std::string(text) + "'", 0);
}

std::size_t LanguageSpec::alphabet_size() const {
    if (auto* m = std::get_if<MorphicFixedPoint>(&v_)) return m->morphism.alphabet_size();
    return 2;
}

bool LanguageSpec::is_sft() const {
    return std::holds_alternative<FullLanguage>(v_) || std::holds_alternative<ForbiddenFactors>(v_);
}

std::string LanguageSpec::str() const {
    struct Visitor {
        std::string operator()(const FullLanguage&) const { return "full"; }
        std::string operator()(const ForbiddenFactors& f) const {
            std::string s = "forbid:";
            for (std::size_t i = 0; i < f.words.size(); ++i) s += (i ? "," : "") + f.words[i].str();
            return s;
        }
        std::string operator()(const MorphicFixedPoint& m) const { return "morphic:" + m.name; }
        std::string operator()(const SturmianSlope& s) const { return "sturmian:" + s.alpha.str(); }
    };
    return std::visit(Visitor{}, v_);
}

// FollowerAutomaton -----------------------------------------------------------

FollowerAutomaton FollowerAutomaton::build(const std::vector<Word>& forbidden, std::size_t alphabet_size) {
    std::size_t context_len = 0;
    for (const auto& f : forbidden) {
        if (f.empty()) throw DomainError("forbidden factors must be non-empty");
        if (f.alphabet_size() != alphabet_size) throw DomainError("forbidden factor alphabet mismatch");
        context_len = std::max(context_len, f.size() - 1);
    }

    // Raw automaton over contexts (the last context_len letters).
    std::map<Word, std::size_t> ids;
    std::vector<Word> contexts;
    std::vector<std::vector<std::size_t>> raw;
    auto intern = [&](const Word& c) {
        auto [it, inserted] = ids.emplace(c, contexts.size());
        if (inserted) {
            contexts.push_back(c);
            raw.emplace_back(alphabet_size, kNone);
        }
        return it->second;
    };
    intern(Word(alphabet_size));
    for (std::size_t s = 0; s < contexts.size(); ++s) {
        for (std::size_t x = 0; x < alphabet_size; ++x) {
            Word w = contexts[s];
            w.push_back(Letter{static_cast<std::uint8_t>(x)});
            bool blocked = std::any_of(forbidden.begin(), forbidden.end(), [&](const Word& f) {
                return f.size() <= w.size() && w.substr(w.size() - f.size(), f.size()) == f;
            });
            if (blocked) continue;
            Word next = w.size() > context_len ? w.substr(w.size() - context_len, context_len) : w;
            std::size_t t = intern(next);
            raw[s][x] = t;
        }
    }
    if (std::all_of(raw[0].begin(), raw[0].end(), [](std::size_t t) { return t == kNone; }))
        throw DomainError("forbidden set blocks every letter: the language is empty");

    // Moore refinement; every state accepts, so classes split only on transitions.
    std::vector<std::size_t> cls(contexts.size(), 0);
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next_cls(contexts.size());
        for (std::size_t s = 0; s < contexts.size(); ++s) {
            std::vector<std::size_t> sig{cls[s]};
            for (auto t : raw[s]) sig.push_back(t == kNone ? kNone : cls[t]);
            next_cls[s] = sig_ids.emplace(sig, sig_ids.size()).first->second;
        }
        bool stable = sig_ids.size() == static_cast<std::size_t>(*std::max_element(cls.begin(), cls.end()) + 1);
        cls = std::move(next_cls);
        if (stable) break;
    }

    // Renumber classes in BFS order from the initial context.
    FollowerAutomaton a;
    a.alphabet_size_ = alphabet_size;
    std::map<std::size_t, std::size_t> order;
    std::vector<std::size_t> reps;
    order[cls[0]] = 0;
    reps.push_back(0);
    a.labels_.push_back(Word(alphabet_size));
    for (std::size_t i = 0; i < reps.size(); ++i) {
        std::size_t s = reps[i];
        a.next_.emplace_back(alphabet_size, kNone);
        for (std::size_t x = 0; x < alphabet_size; ++x) {
            std::size_t t = raw[s][x];
            if (t == kNone) continue;
            auto [it, inserted] = order.emplace(cls[t], reps.size());
            if (inserted) {
                reps.push_back(t);
                Word lab = a.labels_[i];
                lab.push_back(Letter{static_cast<std::uint8_t>(x)});
                a.labels_.push_back(lab);
            }
            a.next_[i][x] = it->second;
        }
    }
    a.initial_ = 0;
    return a;
}

std::optional<std::size_t> FollowerAutomaton::next(std::size_t state, Letter l) const {
    auto t = next_.at(state).at(l.index);
    if (t == kNone) return std::nullopt;
    return t;
}

bool FollowerAutomaton::accepts(const Word& w) const {
    std::size_t s = initial_;
    for (auto l : w.letters()) {
        auto t = next(s, l);
        if (!t) return false;
        s = *t;
    }
    return true;
}

std::vector<Letter> FollowerAutomaton::absorbing_letters() const {
    std::vector<Letter> out;
    for (std::size_t x = 0; x < alphabet_size_; ++x) {
        bool everywhere = std::all_of(next_.begin(), next_.end(),
                                      [&](const auto& row) { return row[x] != kNone; });
        if (everywhere) out.push_back(Letter{static_cast<std::uint8_t>(x)});
    }
    return out;
}

FollowerAutomaton follower_automaton(const LanguageSpec& spec) {
    if (std::holds_alternative<FullLanguage>(spec.variant())) return FollowerAutomaton::build({}, 2);
    if (auto* f = std::get_if<ForbiddenFactors>(&spec.variant())) return FollowerAutomaton::build(f->words, 2);
    throw DomainError("follower automata exist only for full and forbidden-factor languages");
}

// Engines ---------------------------------------------------------------------

namespace {

/// Growing prefix of a fixed point, with running counts of letter 1.
class FixedPointPrefix {
public:
    FixedPointPrefix(const Morphism& m, Letter seed) : m_(m), seed_(seed) {}

    void ensure(std::size_t len) {
        if (bytes_.size() >= len) return;
        std::size_t target = std::max(len, bytes_.size() * 2);
        Word w = fixed_point_prefix(m_, seed_, target);
        bytes_ = as_bytes(w);
        ones_.assign(bytes_.size() + 1, 0);
        for (std::size_t i = 0; i < bytes_.size(); ++i)
            ones_[i + 1] = ones_[i] + (bytes_[i] == 1 ? 1u : 0u);
    }

    std::string_view bytes(std::size_t len) {
        ensure(len);
        return std::string_view(bytes_).substr(0, len);
    }

    /// Min and max count of letter 1 over length-n windows inside [0, len).
    std::pair<std::uint32_t, std::uint32_t> window_range(std::size_t n, std::size_t len) {
        ensure(len);
        const std::uint32_t* p = ones_.data();
        std::uint32_t lo = UINT32_MAX, hi = 0;
        for (std::size_t i = 0; i + n <= len; ++i) {
            std::uint32_t c = p[i + n] - p[i];
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        return {lo, hi};
    }

private:
    const Morphism& m_;
    Letter seed_;
    std::string bytes_;
    std::vector<std::uint32_t> ones_;
};

std::vector<Word> morphic_factors(const MorphicFixedPoint& mf, std::size_t n) {
    FixedPointPrefix prefix(mf.morphism, mf.seed);
    auto windows = [&](std::size_t len) {
        std::unordered_set<std::string_view> set;
        auto s = prefix.bytes(len);
        for (std::size_t i = 0; i + n <= s.size(); ++i) set.insert(s.substr(i, n));
        return set;
    };
    std::size_t len = kInitialPrefixFactor * n;
    prefix.ensure(2 * len);
    auto current = windows(len);
    for (;;) {
        if (2 * len > kPrefixCapFactor * n)
            throw StabilizationError("factor set of length " + std::to_string(n) + " did not stabilize");
        auto doubled = windows(2 * len);
        if (doubled.size() == current.size()) break;  // prefix windows are a subset
        current = std::move(doubled);
        len *= 2;
    }
    std::vector<Word> out;
    for (auto sv : current) out.push_back(from_bytes(sv, mf.morphism.alphabet_size()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Word> sturmian_factors(const SturmianSlope& st, std::size_t n) {
    std::size_t len = 4 * n + 16;
    for (;;) {
        std::string s = as_bytes(characteristic_word(st.alpha, len));
        std::set<std::string> set;
        for (std::size_t i = 0; i + n <= s.size(); ++i) set.insert(s.substr(i, n));
        if (set.size() > n + 1)
            throw StabilizationError("more than n+1 factors: slope is not Sturmian");
        if (set.size() == n + 1) {
            std::vector<Word> out;
            for (const auto& f : set) out.push_back(from_bytes(f, 2));
            return out;
        }
        len *= 2;
        if (len > kPrefixCapFactor * n)
            throw StabilizationError("Sturmian factor set of length " + std::to_string(n) + " incomplete at cap");
    }
}

void sft_paths(const FollowerAutomaton& a, std::size_t state, std::size_t n, Word& cur, std::vector<Word>& out) {
    if (cur.size() == n) {
        if (out.size() >= kMaxEnumeratedFactors) throw DomainError("too many factors to enumerate");
        out.push_back(cur);
        return;
    }
    for (std::size_t x = 0; x < a.alphabet_size(); ++x) {
        Letter l{static_cast<std::uint8_t>(x)};
        if (auto t = a.next(state, l)) {
            cur.push_back(l);
            sft_paths(a, *t, n, cur, out);
            cur.truncate(cur.size() - 1);
        }
    }
}

/// Counts of letter 1 per length for SFTs: bitset DP over automaton states.
std::vector<std::vector<std::uint32_t>> sft_counts(const FollowerAutomaton& a, std::size_t n_max) {
    std::size_t words = (n_max + 64) / 64;
    using Bits = std::vector<std::uint64_t>;
    std::vector<Bits> cur(a.num_states(), Bits(words, 0)), nxt = cur;
    cur[a.initial()][0] = 1;
    std::vector<std::vector<std::uint32_t>> out(n_max + 1);
    for (std::size_t len = 1; len <= n_max; ++len) {
        for (auto& b : nxt) std::fill(b.begin(), b.end(), 0);
        for (std::size_t s = 0; s < a.num_states(); ++s) {
            for (std::size_t x = 0; x < a.alphabet_size(); ++x) {
                auto t = a.next(s, Letter{static_cast<std::uint8_t>(x)});
                if (!t) continue;
                const Bits& src = cur[s];
                Bits& dst = nxt[*t];
                if (x == 0) {
                    for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
                } else {
                    std::uint64_t carry = 0;
                    for (std::size_t i = 0; i < words; ++i) {
                        dst[i] |= (src[i] << 1) | carry;
                        carry = src[i] >> 63;
                    }
                }
            }
        }
        std::swap(cur, nxt);
        Bits any(words, 0);
        for (const auto& b : cur)
            for (std::size_t i = 0; i < words; ++i) any[i] |= b[i];
        for (std::size_t k = 0; k <= len; ++k)
            if (any[k / 64] >> (k % 64) & 1) out[len].push_back(static_cast<std::uint32_t>(k));
    }
    return out;
}

std::vector<std::uint32_t> morphic_counts(FixedPointPrefix& prefix, std::size_t n) {
    std::size_t len = kInitialPrefixFactor * n;
    auto current = prefix.window_range(n, len);
    for (;;) {
        if (2 * len > kPrefixCapFactor * n)
            throw StabilizationError("Parikh set of length " + std::to_string(n) + " did not stabilize");
        auto doubled = prefix.window_range(n, 2 * len);
        if (doubled == current) break;
        current = doubled;
        len *= 2;
    }
    // Sliding a window changes the count by at most one, so the counts form an interval.
    std::vector<std::uint32_t> out;
    for (auto k = current.first; k <= current.second; ++k) out.push_back(k);
    return out;
}

/// Windows of c_alpha: count of 1 in c[i, i+n) is floor((i+n+1)a) - floor((i+1)a).
class SturmianWindows {
public:
    explicit SturmianWindows(const Surd& alpha) : alpha_(alpha) {}

    std::vector<std::uint32_t> counts(std::size_t n) {
        std::int64_t first = F(n + 1) - F(1);
        for (std::size_t i = 1; i <= kPrefixCapFactor * n; ++i) {
            std::int64_t c = F(i + n + 1) - F(i + 1);
            if (c != first) {
                auto lo = static_cast<std::uint32_t>(std::min(c, first));
                auto hi = static_cast<std::uint32_t>(std::max(c, first));
                if (hi != lo + 1) throw StabilizationError("unbalanced windows: slope is not Sturmian");
                return {lo, hi};
            }
        }
        throw StabilizationError("second Parikh vector of length " + std::to_string(n) + " not found at cap");
    }

private:
    std::int64_t F(std::size_t k) {
        while (memo_.size() <= k) memo_.push_back(floor_mul(alpha_, static_cast<std::int64_t>(memo_.size())));
        return memo_[k];
    }

    Surd alpha_;
    std::vector<std::int64_t> memo_;
};

void require_binary(const LanguageSpec& spec) {
    if (spec.alphabet_size() != 2) throw DomainError("Parikh tables need a two-letter language");
}

}  // namespace

std::vector<Word> factors(const LanguageSpec& spec, std::size_t n) {
    if (n == 0) throw DomainError("factor length must be positive");
    if (auto* m = std::get_if<MorphicFixedPoint>(&spec.variant())) return morphic_factors(*m, n);
    if (auto* s = std::get_if<SturmianSlope>(&spec.variant())) return sturmian_factors(*s, n);
    auto a = follower_automaton(spec);
    std::vector<Word> out;
    Word cur(2);
    sft_paths(a, a.initial(), n, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

ParikhTable parikh_table(const LanguageSpec& spec, std::size_t n_max) {
    require_binary(spec);
    ParikhTable t;
    t.second_letter_counts.resize(n_max + 1);
    auto& rows = t.second_letter_counts;
    if (std::holds_alternative<FullLanguage>(spec.variant())) {
        t.provenance = "combinatorial";
        for (std::size_t n = 1; n <= n_max; ++n)
            for (std::uint32_t k = 0; k <= n; ++k) rows[n].push_back(k);
    } else if (std::holds_alternative<ForbiddenFactors>(spec.variant())) {
        t.provenance = "automaton-dp";
        rows = sft_counts(follower_automaton(spec), n_max);
    } else if (auto* m = std::get_if<MorphicFixedPoint>(&spec.variant())) {
        t.provenance = "fixed-point-windows";
        FixedPointPrefix prefix(m->morphism, m->seed);
        prefix.ensure(2 * kInitialPrefixFactor * n_max);
        for (std::size_t n = 1; n <= n_max; ++n) rows[n] = morphic_counts(prefix, n);
    } else {
        t.provenance = "characteristic-word-windows";
        SturmianWindows windows(std::get<SturmianSlope>(spec.variant()).alpha);
        for (std::size_t n = 1; n <= n_max; ++n) rows[n] = windows.counts(n);
    }
    return t;
}

std::set<ParikhVector> parikh_set(const LanguageSpec& spec, std::size_t n) {
    if (n == 0) throw DomainError("factor length must be positive");
    std::set<ParikhVector> out;
    if (spec.alphabet_size() != 2) {
        for (const auto& w : factors(spec, n)) out.insert(parikh(w));
        return out;
    }
    std::vector<std::uint32_t> counts;
    if (auto* m = std::get_if<MorphicFixedPoint>(&spec.variant())) {
        FixedPointPrefix prefix(m->morphism, m->seed);
        counts = morphic_counts(prefix, n);
    } else if (auto* s = std::get_if<SturmianSlope>(&spec.variant())) {
        counts = SturmianWindows(s->alpha).counts(n);
    } else {
        counts = parikh_table(spec, n).second_letter_counts[n];
    }
    for (auto k : counts) out.insert(ParikhVector{{n - k, k}});
    return out;
}

Word mechanical_word(const Surd& alpha, const Surd& rho, std::size_t length, MechanicalVariant variant) {
    require_sturmian_slope(alpha);
    auto at = [&](std::int64_t n) {
        return variant == MechanicalVariant::Floor ? floor_affine(alpha, n, rho) : ceil_affine(alpha, n, rho);
    };
    std::vector<Letter> letters;
    letters.reserve(length);
    std::int64_t prev = at(0);
    for (std::size_t n = 0; n < length; ++n) {
        std::int64_t cur = at(static_cast<std::int64_t>(n) + 1);
        letters.push_back(Letter{static_cast<std::uint8_t>(cur - prev)});
        prev = cur;
    }
    return Word(2, std::move(letters));
}

Word characteristic_word(const Surd& alpha, std::size_t length) {
    return mechanical_word(alpha, alpha, length, MechanicalVariant::Floor);
}

}  // namespace froblang
