// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "froblang/beatty.hpp"
#include "froblang/closed_forms.hpp"
#include "froblang/embeddings.hpp"
#include "froblang/plane.hpp"

using namespace froblang;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Surd& slow_phi() {
    static const Surd a = Surd::integer(2) - Surd::golden_ratio();
    return a;
}

/// Fibonacci Parikh table from the morphic engine, shared by criteria 3 and 4.
const ParikhTable& fibonacci_table() {
    static const ParikhTable t = parikh_table(LanguageSpec::fibonacci(), 10'000);
    return t;
}

std::set<std::int64_t> members(const ImageSet& img) {
    std::set<std::int64_t> out;
    for (auto m : img.members()) out.insert(static_cast<std::int64_t>(m));
    return out;
}

std::set<std::int64_t> joined(const SequencePair& p, std::int64_t bound) {
    std::set<std::int64_t> out;
    for (const auto* s : {&p.first, &p.second})
        for (auto v : *s)
            if (v >= 1 && v <= bound) out.insert(v);
    return out;
}

Verdict criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto full = frobenius(LanguageSpec::full(), Weighting(100, 3));
    auto gm = frobenius(LanguageSpec::golden_mean(), Weighting(100, 3));
    double t = seconds_since(t0);
    Verdict v;
    v.pass = full.kind == FrobeniusResult::Kind::Certified && full.frobenius == 197 &&
             gm.kind == FrobeniusResult::Kind::Certified && gm.frobenius == 9997 && t < 1.0;
    std::ostringstream os;
    os << "full (100,3) -> " << full.frobenius << ", golden mean (100,3) -> " << gm.frobenius << " in " << t
       << " s (limit 1 s)";
    v.detail = os.str();
    return v;
}

Verdict criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    int pairs = 0, bad = 0;
    std::string first_bad;
    for (std::int64_t a = 2; a <= 30; ++a)
        for (std::int64_t b = 2; b <= 30; ++b) {
            if (std::gcd(a, b) != 1) continue;
            ++pairs;
            auto r = frobenius(LanguageSpec::golden_mean(), Weighting(a, b));
            if (r.kind != FrobeniusResult::Kind::Certified ||
                static_cast<std::int64_t>(r.frobenius) != golden_mean_frobenius(a, b)) {
                if (bad++ == 0) first_bad = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
        }
    double t = seconds_since(t0);
    Verdict v{bad == 0 && t < 30.0, ""};
    std::ostringstream os;
    os << pairs << " coprime pairs, " << bad << " mismatches" << (bad ? " first " + first_bad : "") << " in " << t
       << " s (limit 30 s)";
    v.detail = os.str();
    return v;
}

Verdict criterion3() {
    constexpr std::int64_t kBound = 10'000;
    const std::vector<Weighting> pairs = {{3, 2}, {3, 1}, {4, 3}, {2, 3}, {5, 2}, {2, 7}, {7, 4}, {5, 8}, {9, 2}, {6, 11}};
    const auto& table = fibonacci_table();
    int union_ok = 0, shift_ok = 0;
    for (const auto& s : pairs) {
        auto img = image_from_parikh(table, "morphic:fib", s, kBound);
        auto count = static_cast<std::size_t>(kBound / s.min() + 2);
        auto th3 = fibonacci_image_terms(s.a, s.b, count);
        if (members(img) == joined(th3, kBound)) ++union_ok;
        auto th2 = sturmian_image_terms(slow_phi(), s.a, s.b, count);
        if (th2.first == th3.first && th2.second == th3.second) ++shift_ok;
    }
    // The shared table is what image_upto builds internally; confirm on one pair.
    bool direct = image_upto(LanguageSpec::fibonacci(), Weighting(3, 2), kBound)
                      .same_members(image_from_parikh(table, "morphic:fib", Weighting(3, 2), kBound));
    Verdict v{union_ok == 10 && shift_ok == 10 && direct, ""};
    v.detail = std::to_string(union_ok) + "/10 unions equal the image on 1..10^4, " + std::to_string(shift_ok) +
               "/10 index-shift agreements, direct image_upto " + (direct ? "agrees" : "differs");
    return v;
}

Verdict criterion4() {
    const auto& table = fibonacci_table();
    auto c32 = complement(image_from_parikh(table, "morphic:fib", Weighting(3, 2), 10'000));
    auto c31 = complement(image_from_parikh(table, "morphic:fib", Weighting(3, 1), 10'000));
    bool prefix32 = c32.size() >= 4 && std::vector<std::uint64_t>(c32.begin(), c32.begin() + 4) ==
                                           std::vector<std::uint64_t>{1, 4, 9, 12};
    bool prefix31 = c31.size() >= 6 && std::vector<std::uint64_t>(c31.begin(), c31.begin() + 6) ==
                                           std::vector<std::uint64_t>{2, 9, 20, 27, 38, 49};
    bool triples = true;
    for (auto which : {ExampleComplement::Ex1, ExampleComplement::Ex2}) {
        auto t = example_triple(which);
        triples = triples && complementary_triple_check(t[0], t[1], t[2], 10'000).passed;
    }
    Verdict v{prefix32 && prefix31 && triples, ""};
    v.detail = std::string("(3,2) prefix ") + (prefix32 ? "1,4,9,12" : "wrong") + ", (3,1) prefix " +
               (prefix31 ? "2,9,20,27,38,49" : "wrong") + ", triples " + (triples ? "confirmed" : "broken") +
               " on 1..10^4";
    return v;
}

Verdict criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    constexpr std::uint64_t kBound = 1'000'000, kWindow = 100'000;
    // Fibonacci language computed as the Sturmian language of slope 2 - Phi.
    auto spec = LanguageSpec::sturmian(slow_phi());
    bool same_language = true;
    for (std::size_t n = 1; n <= 60; ++n)
        same_language = same_language && factors(spec, n) == factors(LanguageSpec::fibonacci(), n);
    auto table = parikh_table(spec, kBound);
    int empty_ok = 0;
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 1}}) {
        auto img = image_from_parikh(table, "morphic:fib", Weighting(a, b), kBound);
        if (fibonacci_classification(a, b).complement_empty && img.count() == kBound) ++empty_ok;
    }
    const std::vector<Weighting> others = {{3, 2}, {3, 1}, {4, 3}, {2, 3}, {1, 4}, {1, 5}, {2, 5}, {5, 2}, {3, 4}, {4, 1},
                                           {5, 3}, {3, 5}, {7, 2}, {2, 7}, {6, 5}, {5, 6}, {8, 3}, {3, 8}, {9, 4}, {4, 9}};
    int density_ok = 0;
    double worst = 0;
    for (const auto& s : others) {
        auto cls = fibonacci_classification(s.a, s.b);
        auto img = image_from_parikh(table, "morphic:fib", s, kBound);
        double complement_density = 1 - empirical_density(img, kWindow).value();
        double err = std::abs(complement_density - (1 - cls.density_approx));
        worst = std::max(worst, err);
        if (!cls.complement_empty && err <= 1e-3) ++density_ok;
    }
    double t = seconds_since(t0);
    Verdict v{same_language && empty_ok == 4 && density_ok == 20 && t < 60.0, ""};
    std::ostringstream os;
    os << empty_ok << "/4 E-pairs with empty complement to 10^6, " << density_ok
       << "/20 densities within 1e-3 of 1-delta (worst " << worst << "), engines "
       << (same_language ? "agree" : "DISAGREE") << ", " << t << " s (limit 60 s)";
    v.detail = os.str();
    return v;
}

Verdict criterion6() {
    auto table = parikh_table(LanguageSpec::thue_morse(), 500);
    int membership_ok = 0, boundary_ok = 0, coprime = 0;
    std::vector<std::string> gcd_exceptions;
    for (std::int64_t p = 1; p <= 10; ++p)
        for (std::int64_t q = 1; q <= 10; ++q) {
            auto img = image_from_parikh(table, "morphic:tm", Weighting(p, q), 500);
            bool same = true;
            for (std::int64_t m = 1; m <= 500; ++m)
                same = same && tm_image_membership(p, q, m) == img.contains(static_cast<std::uint64_t>(m));
            membership_ok += same;
            bool infinite = tm_classification(p, q).kind == TmClassification::Kind::Infinite;
            if (std::gcd(p, q) == 1) {
                ++coprime;
                boundary_ok += infinite == (p + q >= 6);
            } else if (p + q < 6 && infinite) {
                gcd_exceptions.push_back("(" + std::to_string(p) + "," + std::to_string(q) + ")");
            }
        }
    bool s23 = tm_classification(2, 3).finite_complement == std::vector<std::int64_t>{1};
    bool s14 = tm_classification(1, 4).finite_complement == std::vector<std::int64_t>{3};
    Verdict v{membership_ok == 100 && boundary_ok == coprime && s23 && s14, ""};
    std::string exceptions;
    for (const auto& e : gcd_exceptions) exceptions += (exceptions.empty() ? "" : " ") + e;
    v.detail = std::to_string(membership_ok) + "/100 membership tables equal on 1..500, boundary p+q=6 holds for " +
               std::to_string(boundary_ok) + "/" + std::to_string(coprime) + " coprime pairs, (2,3)->{1} " +
               (s23 ? "ok" : "wrong") + ", (1,4)->{3} " + (s14 ? "ok" : "wrong") +
               "; infinite below the boundary only through a common factor: " + exceptions;
    return v;
}

Verdict criterion7() {
    const char* slopes[] = {"(3-1*sqrt(5))/2", "sqrt(2)-1", "(sqrt(3)-1)/2"};
    const Weighting weights[] = {{3, 2}, {2, 5}, {7, 4}};
    int ok = 0;
    for (int i = 0; i < 3; ++i) {
        auto spec = LanguageSpec::sturmian(Surd::parse(slopes[i]));
        bool all = true;
        for (std::size_t n = 1; n <= 200; ++n) all = all && additive_complexity(spec, weights[i], n) == 2;
        ok += all;
    }
    return {ok == 3, std::to_string(ok) + "/3 slopes give complexity 2 for n = 1..200"};
}

Verdict criterion8() {
    auto r = wythoff_identities_check(10'000);
    return {r.passed && r.checked == 10'000,
            std::to_string(r.checked) + " indices checked, " + std::to_string(r.violation_count) + " violations"};
}

Verdict criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    auto theta = catalog::folding5();
    auto pf = is_paperfolding(theta);
    auto sym = is_symmetric(theta);
    auto d = drift(theta, PlaneWeighting::standard(), 1e-12);
    bool drift_zero = std::abs(d.x) <= 1e-12 && std::abs(d.y) <= 1e-12 && d.error_bound <= 1e-12;
    auto perfect = perfectness_check(theta, 6, 20);
    auto onto = onto_check(theta, PlaneWeighting::standard(), 10, 6);
    double t = seconds_since(t0);
    Verdict v{pf.paperfolding() && sym.symmetric() && drift_zero &&
                  perfect.status == PerfectnessReport::Status::Perfect && onto.missing.empty() && t < 30.0,
              ""};
    std::ostringstream os;
    os << "paperfolding " << pf.paperfolding() << ", symmetric " << sym.symmetric() << ", drift (" << d.x << ","
       << d.y << "), perfectness k=6 R=20 " << to_string(perfect.status) << ", onto R=10 missing "
       << onto.missing.size() << ", " << t << " s (limit 30 s; box-restricted checks)";
    v.detail = os.str();
    return v;
}

Verdict criterion10() {
    int agree = 0, total = 0;
    for (const auto& spec : {LanguageSpec::golden_mean(), LanguageSpec::full()})
        for (std::int64_t a = 2; a <= 12; ++a)
            for (std::int64_t b = 2; b <= 12; ++b) {
                ++total;
                auto dp = image_upto(spec, Weighting(a, b), 2000, ImageBackend::SftDp);
                auto pe = image_upto(spec, Weighting(a, b), 2000, ImageBackend::ParikhEnum);
                agree += dp.same_members(pe);
            }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " weightings agree bit-for-bit to 2000"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"headline Frobenius numbers", criterion1},
        {"golden-mean formula sweep", criterion2},
        {"slow Beatty / Wythoff forms of the Fibonacci image", criterion3},
        {"example complements and triples", criterion4},
        {"Fibonacci complement law", criterion5},
        {"Thue-Morse images and classification", criterion6},
        {"Sturmian additive complexity", criterion7},
        {"Wythoff identities", criterion8},
        {"plane suite", criterion9},
        {"backend cross-validation", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("AC-%zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
