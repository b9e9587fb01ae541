// Beatty, slow Beatty and Wythoff sequences, and partition checks over them.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "froblang/surd.hpp"

namespace froblang {

/// Outcome of an exhaustive check. Violations are capped for reporting,
/// `violation_count` is not.
struct CheckReport {
    bool passed = true;
    std::uint64_t checked = 0;
    std::uint64_t violation_count = 0;
    std::vector<std::string> violations;

    void fail(std::string message);
};

/// Terms floor(n*alpha) for n in [n_from, n_to]; with `slow`, floor((n+1)*alpha)
/// and alpha must lie in (0,1).
std::vector<std::int64_t> beatty(const Surd& alpha, std::int64_t n_from, std::int64_t n_to,
                                 bool slow = false);

std::int64_t lower_wythoff(std::int64_t n);  // A(n) = floor(n*Phi), A(0) = 0
std::int64_t upper_wythoff(std::int64_t n);  // B(n) = floor(n*Phi^2)

/// A(A(n)) = B(n) - 1 and A(B(n)) = A(n) + B(n) = 2A(n) + n for 1 <= n <= n_max.
CheckReport wythoff_identities_check(std::int64_t n_max);

struct BeattyPairReport {
    CheckReport report;
    bool disjoint = true;
    bool covers = true;
};

/// Values <= bound of floor(n*alpha) and floor(n*beta), n >= 1, partition {1..bound}.
BeattyPairReport beatty_pair_check(const Surd& alpha, const Surd& beta, std::int64_t bound);

enum class BaseSequence {
    Id,           // n
    LowerWythoff, // A
    UpperWythoff, // B
    Beatty,       // floor(n*alpha)
    SlowBeatty,   // floor((n+1)*alpha)
};

struct SequenceTerm {
    std::int64_t coef = 1;
    BaseSequence base = BaseSequence::Id;
    std::optional<Surd> alpha;  // Beatty and SlowBeatty only
};

/// Closed-form integer sequence sum(coef * X(n)) + constant for n >= start.
/// Never materialized beyond what a query needs.
struct IntegerSequenceSpec {
    std::vector<SequenceTerm> terms;
    std::int64_t constant = 0;
    std::int64_t start = 1;
    bool empty = false;

    static IntegerSequenceSpec none();

    std::int64_t operator()(std::int64_t n) const;

    /// Asymptotic growth rate; must be positive for enumeration.
    long double slope() const;

    /// All terms with value in [1, bound], in index order.
    std::vector<std::int64_t> values_upto(std::int64_t bound) const;

    /// Paper-style notation, e.g. "2A+Id+1 (n>=0)".
    std::string str() const;
};

/// Pairwise disjoint and jointly covering {1..bound}.
CheckReport complementary_triple_check(const IntegerSequenceSpec& s1,
                                       const IntegerSequenceSpec& s2,
                                       const IntegerSequenceSpec& s3, std::int64_t bound);

}  // namespace froblang
