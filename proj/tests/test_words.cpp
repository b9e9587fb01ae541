#include <random>

#include "doctest.h"
#include "froblang/errors.hpp"
#include "froblang/words.hpp"

using namespace froblang;

namespace {

Word w2(const char* s) { return Word::parse(s, 2); }
Word w4(const char* s) { return Word::parse(s, 4); }

Word random_word(std::mt19937& rng, std::size_t alphabet, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet) - 1);
    Word w(alphabet);
    for (std::size_t i = len(rng); i > 0; --i) w.push_back(Letter{static_cast<std::uint8_t>(letter(rng))});
    return w;
}

}  // namespace

TEST_CASE("parse accepts letters and digits") {
    CHECK(w2("abba").str() == "abba");
    CHECK(w2("0110") == w2("abba"));
    CHECK(w4("abcd").digits() == "0123");
    CHECK(w2("").empty());
}

TEST_CASE("parse reports the offending position") {
    try {
        Word::parse("abxa", 2);
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(Word::parse("abc", 2), ParseError);
}

TEST_CASE("apply_morphism") {
    CHECK(apply_morphism(catalog::thue_morse(), w2("ab")).str() == "abba");
    CHECK(apply_morphism(catalog::thue_morse(), Word(2)).empty());
    CHECK(apply_morphism(catalog::folding5(), w4("a")).str() == "abcba");
    CHECK_THROWS_AS(apply_morphism(catalog::thue_morse(), w4("abcd")), DomainError);
}

TEST_CASE("fixed_point_prefix") {
    CHECK(fixed_point_prefix(catalog::fibonacci(), Letter{0}, 10).digits() == "0100101001");
    CHECK(fixed_point_prefix(catalog::thue_morse(), Letter{0}, 8).str() == "abbabaab");
    auto one = fixed_point_prefix(catalog::thue_morse(), Letter{0}, 1);
    CHECK(one.size() >= 1);
    CHECK(one[0] == Letter{0});
    CHECK_THROWS_AS(fixed_point_prefix(catalog::fibonacci(), Letter{1}, 4), DomainError);
    CHECK_THROWS_AS(fixed_point_prefix(catalog::rotation(), Letter{0}, 4), DomainError);
}

TEST_CASE("fixed point prefixes are nested") {
    auto m = catalog::folding5();
    auto longest = fixed_point_prefix(m, Letter{0}, 4000);
    for (std::size_t n : {1, 7, 25, 126, 999}) CHECK(longest.starts_with(fixed_point_prefix(m, Letter{0}, n)));
    // The fixed point is invariant: m(x) starts with x.
    CHECK(apply_morphism(m, longest).starts_with(longest));
}

TEST_CASE("reverse and palindromes") {
    CHECK(reverse(w4("abcba")) == w4("abcba"));
    CHECK(reverse(w2("ab")) == w2("ba"));
    CHECK(reverse(Word(2)).empty());
    CHECK(is_palindrome(w4("abcba")));
    CHECK_FALSE(is_palindrome(w4("abcb")));
}

TEST_CASE("parikh vectors") {
    CHECK(parikh(w2("abba")).counts == std::vector<std::uint64_t>{2, 2});
    CHECK(parikh(w2("01001")).counts == std::vector<std::uint64_t>{3, 2});
    CHECK(parikh(Word(2)).counts == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("properties on random words") {
    std::mt19937 rng(20240611);
    for (int i = 0; i < 500; ++i) {
        std::size_t alphabet = i % 2 ? 4 : 2;
        auto v = random_word(rng, alphabet, 30), w = random_word(rng, alphabet, 30);
        Word vw = v;
        vw.append(w);
        CHECK(parikh(vw) == parikh(v) + parikh(w));
        CHECK(parikh(vw).total() == vw.size());
        CHECK(reverse(reverse(v)) == v);
    }
}

TEST_CASE("morphism helpers") {
    auto tm = catalog::thue_morse();
    CHECK(tm.prolongable_on(Letter{0}));
    CHECK(tm.prolongable_on(Letter{1}));
    CHECK_FALSE(catalog::fibonacci().prolongable_on(Letter{1}));
    auto inc = catalog::fibonacci().incidence();
    CHECK(inc == std::vector<std::vector<std::uint64_t>>{{1, 1}, {1, 0}});
    CHECK(iterate(tm, w2("a"), 3).str() == "abbabaab");
    // compose(f, g) = f o g
    auto sigma = catalog::rotation();
    auto theta = catalog::folding5();
    CHECK(apply_morphism(compose(sigma, theta), w4("a")) == apply_morphism(sigma, apply_morphism(theta, w4("a"))));
    CHECK_THROWS_AS(Morphism::from_strings(2, {"ab", ""}), DomainError);
    CHECK(catalog::by_name("folding5") == theta);
    CHECK_THROWS_AS(catalog::by_name("dragon"), ParseError);
}
