#include "froblang/closed_forms.hpp"

#include <algorithm>
#include <numeric>

#include "froblang/errors.hpp"

namespace froblang {

bool ArithmeticProgression::contains(std::int64_t m) const {
    return m >= first && (m - first) % modulus == 0;
}

std::optional<std::int64_t> sylvester(std::int64_t sa, std::int64_t sb) {
    if (sa < 1 || sb < 1) throw DomainError("weights must be positive");
    if (std::gcd(sa, sb) != 1) throw DomainError("Sylvester's formula needs coprime weights");
    if (sa == 1 || sb == 1) return std::nullopt;
    return sa * sb - sa - sb;
}

std::int64_t golden_mean_frobenius(std::int64_t sa, std::int64_t sb) {
    if (sa < 2 || sb < 2 || std::gcd(sa, sb) != 1)
        throw DomainError("the golden-mean formula needs coprime weights both greater than 1");
    return sa * (sa - 3) + sb * (sa - 1);
}

std::vector<std::int64_t> sb_chain(std::int64_t n, std::int64_t sa, std::int64_t sb) {
    if (n < 0) throw DomainError("chain index must be non-negative");
    std::vector<std::int64_t> c;
    for (std::int64_t k = 1; k <= n + 1; ++k) c.push_back(n * sa + k * sb);
    return c;
}

SequencePair sturmian_image_terms(const Surd& alpha, std::int64_t s0, std::int64_t s1, std::size_t count) {
    if (alpha.is_rational() || floor(alpha) != 0) throw DomainError("slope must be irrational in (0,1)");
    SequencePair out;
    for (std::size_t i = 0; i < count; ++i) {
        auto n = static_cast<std::int64_t>(i);
        std::int64_t q = floor_mul(alpha, n + 1);
        out.first.push_back((s1 - s0) * q + n * s0 + s0);
        out.second.push_back((s1 - s0) * q + n * s0 + s1);
    }
    return out;
}

SequencePair fibonacci_image_terms(std::int64_t s0, std::int64_t s1, std::size_t count) {
    SequencePair out;
    auto specs = fibonacci_image_specs(s0, s1);
    for (std::size_t i = 1; i <= count; ++i) {
        auto n = static_cast<std::int64_t>(i);
        out.first.push_back(specs[0](n));
        out.second.push_back(specs[1](n));
    }
    return out;
}

std::array<IntegerSequenceSpec, 2> fibonacci_image_specs(std::int64_t s0, std::int64_t s1) {
    IntegerSequenceSpec base;
    base.terms = {{s0 - s1, BaseSequence::LowerWythoff, std::nullopt},
                  {2 * s1 - s0, BaseSequence::Id, std::nullopt}};
    base.start = 1;
    IntegerSequenceSpec shifted = base;
    shifted.constant = s0 - s1;
    return {shifted, base};
}

FibClassification fibonacci_classification(std::int64_t s0, std::int64_t s1) {
    if (s0 < 1 || s1 < 1) throw DomainError("weights must be positive");
    FibClassification c;
    c.complement_empty = (s0 == 1 && s1 <= 3) || (s0 == 2 && s1 == 1);
    // 2 / ((S0-S1)Phi + 2S1 - S0) = 4 / ((3S1-S0) + (S0-S1)sqrt5), rationalized.
    std::int64_t x = 3 * s1 - s0, y = s0 - s1;
    c.density = Surd::make(4 * x, -4 * y, 5, x * x - 5 * y * y);
    c.density_approx = static_cast<double>(c.density.approx());
    return c;
}

std::array<ArithmeticProgression, 5> tm_progressions(std::int64_t p, std::int64_t q) {
    if (p < 1 || q < 1) throw DomainError("weights must be positive");
    std::int64_t r = p + q;
    std::array<ArithmeticProgression, 5> out;
    std::int64_t firsts[5] = {r, p, q, 2 * p, 2 * q};
    for (int i = 0; i < 5; ++i) out[i] = ArithmeticProgression{r, firsts[i] % r, firsts[i]};
    return out;
}

bool tm_image_membership(std::int64_t p, std::int64_t q, std::int64_t m) {
    auto prog = tm_progressions(p, q);
    return std::any_of(prog.begin(), prog.end(), [&](const auto& a) { return a.contains(m); });
}

std::string to_string(TmClassification::Kind k) {
    switch (k) {
        case TmClassification::Kind::Empty: return "empty";
        case TmClassification::Kind::Singleton: return "singleton";
        case TmClassification::Kind::Infinite: return "infinite";
    }
    return "?";
}

TmClassification tm_classification(std::int64_t p, std::int64_t q) {
    auto prog = tm_progressions(p, q);
    std::int64_t r = p + q;
    std::vector<bool> covered(static_cast<std::size_t>(r), false);
    std::int64_t last_first = 0;
    for (const auto& a : prog) {
        covered[static_cast<std::size_t>(a.residue)] = true;
        last_first = std::max(last_first, a.first);
    }
    TmClassification c;
    for (std::int64_t s = 0; s < r; ++s)
        if (!covered[static_cast<std::size_t>(s)]) c.missing_residues.push_back(s);
    if (!c.missing_residues.empty()) {
        c.kind = TmClassification::Kind::Infinite;
        return c;
    }
    // Every residue is covered, so nothing beyond the largest first term is missing.
    for (std::int64_t m = 1; m <= last_first; ++m)
        if (!tm_image_membership(p, q, m)) c.finite_complement.push_back(m);
    if (c.finite_complement.size() > 1)
        throw DomainError("Thue-Morse complement with more than one element for p+q < 6");
    c.kind = c.finite_complement.empty() ? TmClassification::Kind::Empty : TmClassification::Kind::Singleton;
    return c;
}

std::array<IntegerSequenceSpec, 3> example_triple(ExampleComplement which) {
    auto seq = [](std::int64_t a_coef, std::int64_t id_coef, std::int64_t constant, std::int64_t start) {
        IntegerSequenceSpec s;
        s.terms = {{a_coef, BaseSequence::LowerWythoff, std::nullopt}, {id_coef, BaseSequence::Id, std::nullopt}};
        s.constant = constant;
        s.start = start;
        return s;
    };
    switch (which) {
        case ExampleComplement::Ex1: return {seq(1, 1, 0, 1), seq(1, 1, 1, 1), seq(2, 1, 1, 0)};
        case ExampleComplement::Ex2: return {seq(2, -1, 0, 1), seq(2, -1, 2, 1), seq(4, 3, 2, 0)};
        case ExampleComplement::Ex1b: break;
    }
    throw DomainError("no closed-form triple is known for the (4,3) example");
}

std::vector<std::int64_t> example_complement_terms(ExampleComplement which, std::size_t count) {
    std::vector<std::int64_t> out;
    if (which != ExampleComplement::Ex1b) {
        auto third = example_triple(which)[2];
        for (std::size_t n = 0; n < count; ++n) out.push_back(third(static_cast<std::int64_t>(n)));
        return out;
    }
    auto specs = fibonacci_image_specs(4, 3);
    for (std::int64_t bound = 64;; bound *= 2) {
        std::vector<bool> hit(static_cast<std::size_t>(bound) + 1, false);
        for (const auto& s : specs)
            for (auto v : s.values_upto(bound)) hit[static_cast<std::size_t>(v)] = true;
        out.clear();
        for (std::int64_t m = 1; m <= bound && out.size() < count; ++m)
            if (!hit[static_cast<std::size_t>(m)]) out.push_back(m);
        if (out.size() == count) return out;
    }
}

}  // namespace froblang
