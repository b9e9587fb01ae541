// Homomorphic images S(L) of two-letter languages in N = {1,2,3,...}:
// membership bitmaps up to a bound, complements, certified Frobenius
// numbers, additive complexity and empirical densities.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "froblang/languages.hpp"

namespace froblang {

/// Letter weights S(a), S(b); both at least 1.
struct Weighting {
    std::int64_t a = 1;
    std::int64_t b = 1;

    Weighting() = default;
    Weighting(std::int64_t sa, std::int64_t sb);

    std::int64_t of(Letter l) const { return l.index == 0 ? a : b; }
    std::int64_t min() const { return a < b ? a : b; }
    std::int64_t operator()(const Word& w) const;
    std::int64_t operator()(const ParikhVector& p) const;
    std::string str() const { return std::to_string(a) + "," + std::to_string(b); }

    bool operator==(const Weighting&) const = default;
};

enum class ImageBackend { SftDp, ParikhEnum };

std::string to_string(ImageBackend b);

/// Membership bitmap of S(L) over {1..bound}. Bit 0 is never set.
class ImageSet {
public:
    ImageSet(std::uint64_t bound, ImageBackend backend, std::string spec, Weighting weights);

    std::uint64_t bound() const { return bound_; }
    ImageBackend backend() const { return backend_; }
    const std::string& spec() const { return spec_; }
    const Weighting& weights() const { return weights_; }

    bool contains(std::uint64_t m) const {
        return m >= 1 && m <= bound_ && (bits_[m >> 6] >> (m & 63) & 1);
    }
    void insert(std::uint64_t m);

    std::uint64_t count() const;
    std::uint64_t count_in(std::uint64_t lo, std::uint64_t hi) const;  // members in [lo, hi]
    std::vector<std::uint64_t> members() const;
    bool same_members(const ImageSet& other) const;

private:
    std::uint64_t bound_;
    ImageBackend backend_;
    std::string spec_;
    Weighting weights_;
    std::vector<std::uint64_t> bits_;
};

/// Full and forbidden-factor specs default to the automaton DP, the others to
/// Parikh enumeration. SftDp is rejected for non-SFT specs.
ImageSet image_upto(const LanguageSpec& spec, const Weighting& s, std::uint64_t bound,
                    std::optional<ImageBackend> backend = std::nullopt);

/// Parikh-enumeration image from a precomputed table (which must reach bound / min weight).
ImageSet image_from_parikh(const ParikhTable& table, const std::string& spec, const Weighting& s,
                           std::uint64_t bound);

/// {1..bound} minus the image, ascending.
std::vector<std::uint64_t> complement(const ImageSet& img);

struct FrobeniusResult {
    enum class Kind { ComplementEmpty, Certified, InfiniteComplement, UndeterminedAtBound };

    Kind kind = Kind::UndeterminedAtBound;
    std::uint64_t frobenius = 0;     // Certified only
    std::uint64_t run_start = 0;     // first member of the certifying run
    std::uint64_t run_length = 0;    // S(absorbing letter)
    std::optional<Letter> absorbing;
    std::string reason;              // InfiniteComplement
    std::uint64_t bound = 0;         // how far the sieve went
};

std::string to_string(FrobeniusResult::Kind k);

/// Certified Frobenius number for full and forbidden-factor languages.
/// With no explicit bound, sieves to 4x the closed-form prediction when one
/// exists, else 10^6.
FrobeniusResult frobenius(const LanguageSpec& spec, const Weighting& s,
                          std::optional<std::uint64_t> max_bound = std::nullopt);

/// Default sieve bound used by frobenius().
std::uint64_t default_frobenius_bound(const LanguageSpec& spec, const Weighting& s);

/// (gcd, weights / gcd).
std::pair<std::int64_t, Weighting> gcd_normalize(const Weighting& s);

/// Card { S(w) : w in L^n }.
std::uint64_t additive_complexity(const LanguageSpec& spec, const Weighting& s, std::size_t n);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Fraction of members in (bound - window, bound].
Rational empirical_density(const ImageSet& img, std::uint64_t window);

}  // namespace froblang
