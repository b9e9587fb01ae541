#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "froblang/beatty.hpp"
#include "froblang/errors.hpp"
#include "froblang/surd.hpp"

using namespace froblang;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

// Independent oracle: 50 significant digits, then floor.
std::int64_t decimal_floor_mul(const Surd& a, std::int64_t n) {
    Dec x = (Dec(a.u()) + Dec(a.v()) * boost::multiprecision::sqrt(Dec(a.d()))) / Dec(a.w());
    return static_cast<std::int64_t>(boost::multiprecision::floor(x * n));
}

const Surd kPhi = Surd::golden_ratio();
const Surd kSlow = Surd::integer(2) - Surd::golden_ratio();  // 2 - Phi

}  // namespace

TEST_CASE("canonical form") {
    CHECK(Surd::make(2, 2, 5, 4) == kPhi);
    CHECK(Surd::make(0, 1, 8, 1) == Surd::make(0, 2, 2, 1));
    CHECK(Surd::make(1, 1, 4, 1) == Surd::integer(3));
    CHECK(Surd::make(3, 0, 7, 6) == Surd::rational(1, 2));
    CHECK(Surd::make(1, 1, 5, -2) == Surd::make(-1, -1, 5, 2));
    CHECK(Surd::rational(4, 6).str() == "2/3");
    CHECK_THROWS_AS(Surd::make(1, 1, 5, 0), DomainError);
    CHECK_THROWS_AS(Surd::make(1, 1, -5, 1), DomainError);
}

TEST_CASE("surd text round trip") {
    CHECK(Surd::parse("(1+1*sqrt(5))/2") == kPhi);
    CHECK(Surd::parse("(3-sqrt(5))/2") == kSlow);
    CHECK(Surd::parse("(3-1*sqrt(5))/2") == kSlow);
    CHECK(Surd::parse("sqrt(2)-1") == Surd::make(-1, 1, 2, 1));
    CHECK(Surd::parse("1/3") == Surd::rational(1, 3));
    CHECK(Surd::parse(kPhi.str()) == kPhi);
    CHECK(Surd::parse(kSlow.str()) == kSlow);
    CHECK(kPhi.decimal(10) == "1.6180339887");
    CHECK((-kPhi).decimal(4) == "-1.6180");
}

TEST_CASE("surd parse errors carry positions") {
    auto pos = [](const char* s) {
        try {
            Surd::parse(s);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    CHECK(pos("(1+sqrt(5)/2") >= 0);
    CHECK(pos("sqrt(x)") == 5);
    CHECK(pos("") == 0);
    CHECK(pos("1+sqrt(5)/2") >= 0);  // ambiguous without parentheses
    CHECK(pos("(1+sqrt(5))/0") >= 0);
}

TEST_CASE("floor_mul examples") {
    CHECK(floor_mul(kPhi, 0) == 0);
    CHECK(floor_mul(kPhi, 3) == 4);
    CHECK(floor_mul(Surd::parse("(3-sqrt(5))/2"), 7) == 2);
    CHECK(floor(Surd::make(-1, -1, 5, 2)) == -2);
    CHECK(ceil(kPhi) == 2);
    CHECK(floor(Surd::make(0, -1, 4, 1)) == -2);
}

TEST_CASE("floor_mul agrees with a 50-digit decimal oracle") {
    std::mt19937_64 rng(77);
    const std::int64_t radicands[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 23, 29, 31, 37, 41, 43, 47, 97};
    std::uniform_int_distribution<std::int64_t> u(-60, 60), v(-25, 25), w(1, 40), n(0, 1'000'000'000);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(radicands) - 1);
    int mismatches = 0;
    for (int i = 0; i < 10'000; ++i) {
        std::int64_t vv = v(rng);
        if (vv == 0) vv = 1;
        Surd a = Surd::make(u(rng), vv, radicands[pick(rng)], w(rng));
        std::int64_t k = i < 100 ? i : n(rng);
        if (floor_mul(a, k) != decimal_floor_mul(a, k)) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("overflow is detected, not wrapped") {
    Surd big = Surd::make(0, INT64_MAX, 2, 1);
    CHECK_THROWS_AS(floor_mul(big, INT64_MAX), OverflowError);
    CHECK_THROWS_AS(Surd::make(INT64_MAX, 1, 2, 1) + Surd::make(INT64_MAX, 1, 2, 1), OverflowError);
    CHECK_NOTHROW(floor_mul(kPhi, 4'000'000'000'000'000'000LL));
}

TEST_CASE("floor_mul is monotone with steps floor(a) or floor(a)+1") {
    for (const auto& a : {kPhi, kSlow, Surd::parse("sqrt(2)"), Surd::parse("(7+3*sqrt(11))/5")}) {
        auto fa = floor(a);
        for (std::int64_t n = 0; n < 3000; ++n) {
            auto step = floor_mul(a, n + 1) - floor_mul(a, n);
            CHECK((step == fa || step == fa + 1));
        }
    }
}

TEST_CASE("floor(n(2-Phi)) = 2n - A(n) - 1") {
    for (std::int64_t n = 1; n <= 10'000; ++n) REQUIRE(floor_mul(kSlow, n) == 2 * n - lower_wythoff(n) - 1);
}

TEST_CASE("beatty sequences") {
    CHECK(beatty(kPhi, 1, 6) == std::vector<std::int64_t>{1, 3, 4, 6, 8, 9});
    CHECK(beatty(Surd::golden_ratio_squared(), 1, 5) == std::vector<std::int64_t>{2, 5, 7, 10, 13});
    CHECK(beatty(kSlow, 0, 4, true) == std::vector<std::int64_t>{0, 0, 1, 1, 1});
    CHECK_THROWS_AS(beatty(Surd::rational(3, 2), 1, 4), DomainError);
    CHECK_THROWS_AS(beatty(kPhi, 0, 4, true), DomainError);
    CHECK_THROWS_AS(beatty(-kPhi, 1, 4), DomainError);
}

TEST_CASE("wythoff identities") {
    CHECK(lower_wythoff(0) == 0);
    CHECK(lower_wythoff(lower_wythoff(1)) == upper_wythoff(1) - 1);
    CHECK(lower_wythoff(upper_wythoff(2)) == 8);
    auto r = wythoff_identities_check(10'000);
    CHECK(r.passed);
    CHECK(r.checked == 10'000);
}

TEST_CASE("beatty pairs") {
    auto good = beatty_pair_check(kPhi, Surd::golden_ratio_squared(), 100);
    CHECK(good.report.passed);
    auto same = beatty_pair_check(kPhi, kPhi, 10);
    CHECK_FALSE(same.disjoint);
    CHECK_FALSE(same.report.passed);
    auto other = beatty_pair_check(kPhi, Surd::parse("sqrt(2)"), 50);
    CHECK_FALSE(other.report.passed);
}

TEST_CASE("complementary triples") {
    auto lin = [](std::int64_t ca, std::int64_t cid, std::int64_t c, std::int64_t start) {
        IntegerSequenceSpec s;
        s.terms = {{ca, BaseSequence::LowerWythoff, std::nullopt}, {cid, BaseSequence::Id, std::nullopt}};
        s.constant = c;
        s.start = start;
        return s;
    };
    CHECK(complementary_triple_check(lin(1, 1, 0, 1), lin(1, 1, 1, 1), lin(2, 1, 1, 0), 10'000).passed);
    CHECK(complementary_triple_check(lin(2, -1, 0, 1), lin(2, -1, 2, 1), lin(4, 3, 2, 0), 10'000).passed);
    IntegerSequenceSpec a, b;
    a.terms = {{1, BaseSequence::LowerWythoff, std::nullopt}};
    b.terms = {{1, BaseSequence::UpperWythoff, std::nullopt}};
    CHECK(complementary_triple_check(a, b, IntegerSequenceSpec::none(), 100).passed);
    auto broken = complementary_triple_check(a, a, b, 100);
    CHECK_FALSE(broken.passed);
    CHECK(broken.violation_count > 0);
}

TEST_CASE("sequence specs with explicit slopes") {
    IntegerSequenceSpec s;
    s.terms = {{3, BaseSequence::SlowBeatty, kSlow}, {1, BaseSequence::Id, std::nullopt}};
    s.start = 0;
    CHECK(s(0) == 0);
    CHECK(s(2) == 3 * 1 + 2);
    auto values = s.values_upto(50);
    for (auto x : values) CHECK(x <= 50);
    CHECK(std::is_sorted(values.begin(), values.end()));
}
