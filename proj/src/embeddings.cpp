#include "froblang/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "froblang/closed_forms.hpp"
#include "froblang/errors.hpp"

namespace froblang {

Weighting::Weighting(std::int64_t sa, std::int64_t sb) : a(sa), b(sb) {
    if (sa < 1 || sb < 1) throw DomainError("weights must be positive integers");
}

std::int64_t Weighting::operator()(const Word& w) const {
    std::int64_t total = 0;
    for (auto l : w.letters()) total += of(l);
    return total;
}

std::int64_t Weighting::operator()(const ParikhVector& p) const {
    if (p.counts.size() != 2) throw DomainError("weightings apply to two-letter Parikh vectors");
    return static_cast<std::int64_t>(p.counts[0]) * a + static_cast<std::int64_t>(p.counts[1]) * b;
}

std::string to_string(ImageBackend b) { return b == ImageBackend::SftDp ? "sft-dp" : "parikh-enum"; }

std::string to_string(FrobeniusResult::Kind k) {
    switch (k) {
        case FrobeniusResult::Kind::ComplementEmpty: return "complement-empty";
        case FrobeniusResult::Kind::Certified: return "certified";
        case FrobeniusResult::Kind::InfiniteComplement: return "infinite-complement";
        case FrobeniusResult::Kind::UndeterminedAtBound: return "undetermined-at-bound";
    }
    return "?";
}

// ImageSet --------------------------------------------------------------------

ImageSet::ImageSet(std::uint64_t bound, ImageBackend backend, std::string spec, Weighting weights)
    : bound_(bound), backend_(backend), spec_(std::move(spec)), weights_(weights),
      bits_(bound / 64 + 1, 0) {}

void ImageSet::insert(std::uint64_t m) {
    if (m >= 1 && m <= bound_) bits_[m >> 6] |= std::uint64_t{1} << (m & 63);
}

std::uint64_t ImageSet::count() const {
    std::uint64_t c = 0;
    for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::uint64_t ImageSet::count_in(std::uint64_t lo, std::uint64_t hi) const {
    std::uint64_t c = 0;
    for (auto m = std::max<std::uint64_t>(lo, 1); m <= std::min(hi, bound_); ++m) c += contains(m);
    return c;
}

std::vector<std::uint64_t> ImageSet::members() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= bound_; ++m)
        if (contains(m)) out.push_back(m);
    return out;
}

bool ImageSet::same_members(const ImageSet& other) const {
    return bound_ == other.bound_ && bits_ == other.bits_;
}

// SFT sieve -------------------------------------------------------------------

namespace {

/// reach[s][m]: some word of weight m leads from the initial state to s
/// (m = 0 is the empty word). Grows on demand.
class SftSieve {
public:
    SftSieve(const FollowerAutomaton& a, const Weighting& w) : reach_(a.num_states()) {
        for (std::size_t s = 0; s < a.num_states(); ++s)
            for (std::size_t x = 0; x < a.alphabet_size(); ++x) {
                Letter l{static_cast<std::uint8_t>(x)};
                if (auto t = a.next(s, l)) incoming_.push_back({s, *t, static_cast<std::uint64_t>(w.of(l))});
            }
        for (auto& r : reach_) r.push_back(0);
        reach_[a.initial()][0] = 1;
    }

    std::uint64_t size() const { return reach_[0].size() - 1; }

    void extend_to(std::uint64_t bound) {
        std::uint64_t old = size();
        if (bound <= old) return;
        for (auto& r : reach_) r.resize(bound + 1, 0);
        member_.resize(bound + 1, 0);
        for (std::uint64_t m = old + 1; m <= bound; ++m) {
            for (const auto& e : incoming_) {
                if (e.weight <= m && reach_[e.from][m - e.weight]) reach_[e.to][m] = 1;
            }
            for (const auto& r : reach_)
                if (r[m]) {
                    member_[m] = 1;
                    break;
                }
        }
    }

    bool member(std::uint64_t m) const { return m >= 1 && member_[m]; }

private:
    struct Edge {
        std::size_t from, to;
        std::uint64_t weight;
    };
    std::vector<Edge> incoming_;
    std::vector<std::vector<std::uint8_t>> reach_;
    std::vector<std::uint8_t> member_{0};
};

}  // namespace

ImageSet image_from_parikh(const ParikhTable& table, const std::string& spec, const Weighting& s,
                           std::uint64_t bound) {
    std::uint64_t n_max = bound / static_cast<std::uint64_t>(s.min());
    if (table.max_length() < n_max) throw DomainError("Parikh table too short for this bound");
    ImageSet img(bound, ImageBackend::ParikhEnum, spec, s);
    for (std::uint64_t n = 1; n <= n_max; ++n)
        for (auto k : table.second_letter_counts[n])
            img.insert((n - k) * static_cast<std::uint64_t>(s.a) + k * static_cast<std::uint64_t>(s.b));
    return img;
}

ImageSet image_upto(const LanguageSpec& spec, const Weighting& s, std::uint64_t bound,
                    std::optional<ImageBackend> backend) {
    if (bound < 1) throw DomainError("bound must be positive");
    if (spec.alphabet_size() != 2) throw DomainError("one-dimensional weightings need a two-letter language");
    ImageBackend b = backend.value_or(spec.is_sft() ? ImageBackend::SftDp : ImageBackend::ParikhEnum);
    if (b == ImageBackend::SftDp) {
        if (!spec.is_sft()) throw DomainError("the automaton backend needs a full or forbidden-factor language");
        auto a = follower_automaton(spec);
        SftSieve sieve(a, s);
        sieve.extend_to(bound);
        ImageSet img(bound, b, spec.str(), s);
        for (std::uint64_t m = 1; m <= bound; ++m)
            if (sieve.member(m)) img.insert(m);
        return img;
    }
    auto table = parikh_table(spec, bound / static_cast<std::uint64_t>(s.min()));
    return image_from_parikh(table, spec.str(), s, bound);
}

std::vector<std::uint64_t> complement(const ImageSet& img) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= img.bound(); ++m)
        if (!img.contains(m)) out.push_back(m);
    return out;
}

std::pair<std::int64_t, Weighting> gcd_normalize(const Weighting& s) {
    std::int64_t r = std::gcd(s.a, s.b);
    return {r, Weighting(s.a / r, s.b / r)};
}

std::uint64_t default_frobenius_bound(const LanguageSpec& spec, const Weighting& s) {
    std::uint64_t slack = 2 * static_cast<std::uint64_t>(s.a + s.b) + 64;
    if (std::gcd(s.a, s.b) == 1) {
        if (std::holds_alternative<FullLanguage>(spec.variant())) {
            if (s.a == 1 || s.b == 1) return slack;
            return 4 * static_cast<std::uint64_t>(*sylvester(s.a, s.b)) + slack;
        }
        if (spec == LanguageSpec::golden_mean() && s.a > 1 && s.b > 1)
            return 4 * static_cast<std::uint64_t>(golden_mean_frobenius(s.a, s.b)) + slack;
    }
    return 1'000'000;
}

FrobeniusResult frobenius(const LanguageSpec& spec, const Weighting& s, std::optional<std::uint64_t> max_bound) {
    if (!spec.is_sft())
        throw DomainError("Frobenius certification needs a full or forbidden-factor language");
    FrobeniusResult r;
    if (std::gcd(s.a, s.b) > 1) {
        r.kind = FrobeniusResult::Kind::InfiniteComplement;
        r.reason = "gcd";
        return r;
    }
    auto a = follower_automaton(spec);
    auto absorbing = a.absorbing_letters();
    if (absorbing.empty())
        throw DomainError("no absorbing letter: the image cannot be certified cofinite");
    Letter ell = *std::min_element(absorbing.begin(), absorbing.end(),
                                   [&](Letter x, Letter y) { return s.of(x) < s.of(y); });
    auto need = static_cast<std::uint64_t>(s.of(ell));
    r.absorbing = ell;
    r.run_length = need;

    std::uint64_t limit = max_bound.value_or(default_frobenius_bound(spec, s));
    SftSieve sieve(a, s);
    std::uint64_t run = 0, last_gap = 0;
    std::uint64_t chunk = std::min<std::uint64_t>(limit, 4096);
    for (std::uint64_t m = 1; m <= limit; ++m) {
        if (m > sieve.size()) sieve.extend_to(std::min(limit, std::max(m, 2 * sieve.size() + chunk)));
        if (sieve.member(m)) {
            if (++run == need) {
                // Closed under +S(ell): every integer from here on is a member.
                r.run_start = m - need + 1;
                r.bound = m;
                if (last_gap == 0) {
                    r.kind = FrobeniusResult::Kind::ComplementEmpty;
                } else {
                    r.kind = FrobeniusResult::Kind::Certified;
                    r.frobenius = last_gap;
                }
                return r;
            }
        } else {
            run = 0;
            last_gap = m;
        }
    }
    r.kind = FrobeniusResult::Kind::UndeterminedAtBound;
    r.bound = limit;
    return r;
}

std::uint64_t additive_complexity(const LanguageSpec& spec, const Weighting& s, std::size_t n) {
    std::vector<std::int64_t> sums;
    for (const auto& p : parikh_set(spec, n)) sums.push_back(s(p));
    std::sort(sums.begin(), sums.end());
    return static_cast<std::uint64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
}

Rational empirical_density(const ImageSet& img, std::uint64_t window) {
    if (window == 0 || window > img.bound()) throw DomainError("window must be in 1..bound");
    auto members = static_cast<std::int64_t>(img.count_in(img.bound() - window + 1, img.bound()));
    auto w = static_cast<std::int64_t>(window);
    std::int64_t g = std::gcd(members, w);
    return {members / g, w / g};
}

}  // namespace froblang
