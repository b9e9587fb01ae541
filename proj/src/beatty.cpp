#include "froblang/beatty.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "froblang/errors.hpp"

namespace froblang {

namespace {

constexpr std::size_t kMaxReportedViolations = 20;

const Surd& phi() {
    static const Surd p = Surd::golden_ratio();
    return p;
}

const Surd& phi_squared() {
    static const Surd p = Surd::golden_ratio_squared();
    return p;
}

void require_positive_irrational(const Surd& alpha) {
    if (alpha.is_rational()) throw DomainError("Beatty sequences need an irrational slope");
    if (floor(alpha) < 0) throw DomainError("Beatty sequences need a positive slope");
}

}  // namespace

void CheckReport::fail(std::string message) {
    passed = false;
    ++violation_count;
    if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(message));
}

std::vector<std::int64_t> beatty(const Surd& alpha, std::int64_t n_from, std::int64_t n_to,
                                 bool slow) {
    require_positive_irrational(alpha);
    if (slow && floor(alpha) != 0) throw DomainError("slow Beatty sequences need 0 < alpha < 1");
    std::vector<std::int64_t> out;
    for (std::int64_t n = n_from; n <= n_to; ++n)
        out.push_back(floor_mul(alpha, slow ? n + 1 : n));
    return out;
}

std::int64_t lower_wythoff(std::int64_t n) { return floor_mul(phi(), n); }
std::int64_t upper_wythoff(std::int64_t n) { return floor_mul(phi_squared(), n); }

CheckReport wythoff_identities_check(std::int64_t n_max) {
    if (n_max < 1) throw DomainError("n_max must be positive");
    CheckReport r;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        ++r.checked;
        std::int64_t a = lower_wythoff(n), b = upper_wythoff(n);
        if (lower_wythoff(a) != b - 1) {
            std::ostringstream os;
            os << "A(A(" << n << ")) = " << lower_wythoff(a) << " but B(" << n << ")-1 = " << b - 1;
            r.fail(os.str());
        }
        std::int64_t ab = lower_wythoff(b);
        if (ab != a + b || a + b != 2 * a + n) {
            std::ostringstream os;
            os << "A(B(" << n << ")) = " << ab << ", A+B = " << a + b << ", 2A+Id = " << 2 * a + n;
            r.fail(os.str());
        }
    }
    return r;
}

BeattyPairReport beatty_pair_check(const Surd& alpha, const Surd& beta, std::int64_t bound) {
    require_positive_irrational(alpha);
    require_positive_irrational(beta);
    BeattyPairReport out;
    std::vector<std::uint8_t> hits(static_cast<std::size_t>(bound) + 1, 0);
    const Surd* seqs[] = {&alpha, &beta};
    for (int i = 0; i < 2; ++i) {
        auto bit = static_cast<std::uint8_t>(1 << i);
        for (std::int64_t n = 1;; ++n) {
            std::int64_t v = floor_mul(*seqs[i], n);
            if (v > bound) break;
            if (v >= 1) hits[static_cast<std::size_t>(v)] |= bit;
        }
    }
    for (std::int64_t m = 1; m <= bound; ++m) {
        ++out.report.checked;
        auto h = hits[static_cast<std::size_t>(m)];
        if (h == 3) {
            out.disjoint = false;
            out.report.fail(std::to_string(m) + " lies in both sequences");
        } else if (h == 0) {
            out.covers = false;
            out.report.fail(std::to_string(m) + " lies in neither sequence");
        }
    }
    return out;
}

IntegerSequenceSpec IntegerSequenceSpec::none() {
    IntegerSequenceSpec s;
    s.empty = true;
    return s;
}

namespace {

std::int64_t base_value(const SequenceTerm& t, std::int64_t n) {
    switch (t.base) {
        case BaseSequence::Id: return n;
        case BaseSequence::LowerWythoff: return lower_wythoff(n);
        case BaseSequence::UpperWythoff: return upper_wythoff(n);
        case BaseSequence::Beatty: return floor_mul(*t.alpha, n);
        case BaseSequence::SlowBeatty: return floor_mul(*t.alpha, n + 1);
    }
    return 0;
}

long double base_slope(const SequenceTerm& t) {
    switch (t.base) {
        case BaseSequence::Id: return 1.0L;
        case BaseSequence::LowerWythoff: return phi().approx();
        case BaseSequence::UpperWythoff: return phi_squared().approx();
        case BaseSequence::Beatty:
        case BaseSequence::SlowBeatty: return t.alpha->approx();
    }
    return 0.0L;
}

std::string base_name(const SequenceTerm& t) {
    switch (t.base) {
        case BaseSequence::Id: return "Id";
        case BaseSequence::LowerWythoff: return "A";
        case BaseSequence::UpperWythoff: return "B";
        case BaseSequence::Beatty: return "[n*" + t.alpha->str() + "]";
        case BaseSequence::SlowBeatty: return "[(n+1)*" + t.alpha->str() + "]";
    }
    return "?";
}

}  // namespace

std::int64_t IntegerSequenceSpec::operator()(std::int64_t n) const {
    if (empty) throw DomainError("the empty sequence has no terms");
    std::int64_t v = constant;
    for (const auto& t : terms) v += t.coef * base_value(t, n);
    return v;
}

long double IntegerSequenceSpec::slope() const {
    long double s = 0;
    for (const auto& t : terms) s += static_cast<long double>(t.coef) * base_slope(t);
    return s;
}

std::vector<std::int64_t> IntegerSequenceSpec::values_upto(std::int64_t bound) const {
    std::vector<std::int64_t> out;
    if (empty) return out;
    for (const auto& t : terms)
        if ((t.base == BaseSequence::Beatty || t.base == BaseSequence::SlowBeatty) && !t.alpha)
            throw DomainError("Beatty term without a slope");
    long double s = slope();
    if (!(s > 0)) throw DomainError("sequence does not grow; cannot enumerate up to a bound");
    // Each floor is within 1 of its real value, so past this index every term exceeds bound.
    long double slack = 1;
    for (const auto& t : terms) slack += std::llabs(t.coef);
    long double last = (static_cast<long double>(bound) - constant + slack) / s + 2;
    for (std::int64_t n = start; static_cast<long double>(n) <= last; ++n) {
        std::int64_t v = (*this)(n);
        if (v >= 1 && v <= bound) out.push_back(v);
    }
    return out;
}

std::string IntegerSequenceSpec::str() const {
    if (empty) return "(empty)";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (t.coef == 0) continue;
        if (t.coef < 0) os << "-";
        else if (!first) os << "+";
        if (std::llabs(t.coef) != 1) os << std::llabs(t.coef);
        os << base_name(t);
        first = false;
    }
    if (constant != 0 || first) os << (constant < 0 ? "-" : (first ? "" : "+")) << std::llabs(constant);
    os << " (n>=" << start << ")";
    return os.str();
}

CheckReport complementary_triple_check(const IntegerSequenceSpec& s1,
                                       const IntegerSequenceSpec& s2,
                                       const IntegerSequenceSpec& s3, std::int64_t bound) {
    if (bound < 1) throw DomainError("bound must be positive");
    std::vector<std::uint8_t> owners(static_cast<std::size_t>(bound) + 1, 0);
    const IntegerSequenceSpec* specs[] = {&s1, &s2, &s3};
    for (int i = 0; i < 3; ++i)
        for (auto v : specs[i]->values_upto(bound))
            owners[static_cast<std::size_t>(v)] |= static_cast<std::uint8_t>(1u << i);
    CheckReport r;
    for (std::int64_t m = 1; m <= bound; ++m) {
        ++r.checked;
        auto o = owners[static_cast<std::size_t>(m)];
        if (o == 0) {
            r.fail(std::to_string(m) + " is in none of the sequences");
        } else if (o & (o - 1)) {
            std::string which;
            for (int i = 0; i < 3; ++i)
                if (o & (1u << i)) which += (which.empty() ? "" : ",") + std::to_string(i + 1);
            r.fail(std::to_string(m) + " is in sequences " + which);
        }
    }
    return r;
}

}  // namespace froblang
