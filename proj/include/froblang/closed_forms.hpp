// Closed-form evaluators for the Frobenius-type results on the full,
// golden-mean, Sturmian, Fibonacci and Thue-Morse languages. These are the
// formula side of every formula-vs-enumeration check.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "froblang/beatty.hpp"
#include "froblang/surd.hpp"

namespace froblang {

/// R_{r,s} = {s, r+s, 2r+s, ...} restricted to terms >= first.
struct ArithmeticProgression {
    std::int64_t modulus = 1;
    std::int64_t residue = 0;
    std::int64_t first = 1;

    bool contains(std::int64_t m) const;
};

/// Sa*Sb - Sa - Sb for coprime weights; nullopt when a weight is 1 (complement empty).
std::optional<std::int64_t> sylvester(std::int64_t sa, std::int64_t sb);

/// Sa(Sa-3) + Sb(Sa-1); requires gcd 1 and both weights > 1.
std::int64_t golden_mean_frobenius(std::int64_t sa, std::int64_t sb);

/// C(n) = { n*Sa + k*Sb : k = 1..n+1 }.
std::vector<std::int64_t> sb_chain(std::int64_t n, std::int64_t sa, std::int64_t sb);

struct SequencePair {
    std::vector<std::int64_t> first;
    std::vector<std::int64_t> second;
};

/// (S1-S0)q_n + n*S0 + S0 and (S1-S0)q_n + n*S0 + S1, q_n = floor((n+1)alpha), n = 0..count-1.
SequencePair sturmian_image_terms(const Surd& alpha, std::int64_t s0, std::int64_t s1, std::size_t count);

/// (S0-S1)A(n) + (2S1-S0)n + (S0-S1) and (S0-S1)A(n) + (2S1-S0)n, n = 1..count.
SequencePair fibonacci_image_terms(std::int64_t s0, std::int64_t s1, std::size_t count);

/// The same pair as closed-form sequence descriptors, for enumeration up to a bound.
std::array<IntegerSequenceSpec, 2> fibonacci_image_specs(std::int64_t s0, std::int64_t s1);

struct FibClassification {
    bool complement_empty = false;
    Surd density = Surd::integer(1);  // 2 / ((S0-S1)Phi + 2S1 - S0)
    double density_approx = 1.0;
};

/// Complement of S(L_F) is empty iff (S0,S1) in {(1,1),(1,2),(1,3),(2,1)}.
FibClassification fibonacci_classification(std::int64_t s0, std::int64_t s1);

/// The five classes r, p, q, 2p, 2q modulo r = p+q, each starting at its first attained value.
std::array<ArithmeticProgression, 5> tm_progressions(std::int64_t p, std::int64_t q);

bool tm_image_membership(std::int64_t p, std::int64_t q, std::int64_t m);

struct TmClassification {
    enum class Kind { Empty, Singleton, Infinite };
    Kind kind = Kind::Empty;
    std::vector<std::int64_t> finite_complement;  // Empty / Singleton
    std::vector<std::int64_t> missing_residues;   // Infinite
};

std::string to_string(TmClassification::Kind k);

TmClassification tm_classification(std::int64_t p, std::int64_t q);

enum class ExampleComplement { Ex1, Ex1b, Ex2 };

/// Ex1: 2A(n)+n+1, Ex2: 4A(n)+3n+2 (n >= 0); Ex1b: complement of the
/// Fibonacci image at weights (4,3).
std::vector<std::int64_t> example_complement_terms(ExampleComplement which, std::size_t count);

/// The complementary triples of the (3,2) and (3,1) Fibonacci examples.
std::array<IntegerSequenceSpec, 3> example_triple(ExampleComplement which);

}  // namespace froblang
