#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "froblang/beatty.hpp"
#include "froblang/closed_forms.hpp"
#include "froblang/embeddings.hpp"
#include "froblang/errors.hpp"
#include "froblang/languages.hpp"
#include "froblang/plane.hpp"
#include "froblang/surd.hpp"
#include "froblang/words.hpp"

namespace froblang::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kListCap = 10'000;

// Parsing helpers ------------------------------------------------------------

std::int64_t parse_int(std::string_view text, std::size_t offset, std::string_view what) {
    std::size_t pos = 0;
    bool neg = !text.empty() && text[0] == '-';
    if (neg) ++pos;
    if (pos == text.size()) throw ParseError("expected " + std::string(what), offset);
    std::int64_t v = 0;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c < '0' || c > '9') throw ParseError("expected " + std::string(what), offset + pos);
        if (v > (INT64_MAX - 9) / 10) throw ParseError(std::string(what) + " too large", offset);
        v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
}

Weighting parse_weights(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError("weights must look like Sa,Sb", text.size());
    std::int64_t a = parse_int(text.substr(0, comma), 0, "weight");
    std::int64_t b = parse_int(text.substr(comma + 1), comma + 1, "weight");
    if (a < 1) throw ParseError("weights must be positive", 0);
    if (b < 1) throw ParseError("weights must be positive", comma + 1);
    return Weighting(a, b);
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text) {
    auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        auto v = parse_int(text, 0, "integer");
        return {v, v};
    }
    auto lo = parse_int(text.substr(0, dots), 0, "range start");
    auto hi = parse_int(text.substr(dots + 2), dots + 2, "range end");
    if (lo > hi) throw ParseError("empty range", 0);
    return {lo, hi};
}

/// Catalog name, or comma-separated images such as "abc,dcb,cda,bad".
Morphism parse_morphism(const std::string& text) {
    if (text.find(',') == std::string::npos) return catalog::by_name(text);
    std::vector<std::string> images;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) images.push_back(part);
    std::size_t n = images.size() <= 2 ? 2 : 4;
    if (images.size() != n) throw ParseError("a morphism needs 2 or 4 images", 0);
    return Morphism::from_strings(n, images);
}

PlaneWeighting plane_weights_for(const Morphism& m, const std::string& text) {
    if (!text.empty()) return PlaneWeighting::parse(text);
    if (m.alphabet_size() == 4) return PlaneWeighting::standard();
    return PlaneWeighting({{1, 0}, {0, 1}});
}

Point parse_point(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("points look like x:y", text.size());
    return {parse_int(text.substr(0, colon), 0, "coordinate"),
            parse_int(text.substr(colon + 1), colon + 1, "coordinate")};
}

std::optional<std::uint64_t> env_max_bound() {
    const char* v = std::getenv("FROBLANG_MAX_BOUND");
    if (!v || !*v) return std::nullopt;
    auto n = parse_int(v, 0, "FROBLANG_MAX_BOUND");
    if (n < 1) throw ParseError("FROBLANG_MAX_BOUND must be positive", 0);
    return static_cast<std::uint64_t>(n);
}

/// Explicit bounds beyond the environment cap are refused.
std::uint64_t checked_bound(std::int64_t bound) {
    if (bound < 1) throw DomainError("bound must be positive");
    auto cap = env_max_bound();
    if (cap && static_cast<std::uint64_t>(bound) > *cap)
        throw DomainError("bound " + std::to_string(bound) + " exceeds FROBLANG_MAX_BOUND=" + std::to_string(*cap));
    return static_cast<std::uint64_t>(bound);
}

// Output helpers -------------------------------------------------------------

std::string fixed(double x, int digits = 15) {
    if (x == 0) x = 0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

json point_json(Point p) { return json::array({p.x, p.y}); }

template <class T>
json capped_list(const std::vector<T>& v, std::size_t cap = kListCap) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size() && i < cap; ++i) a.push_back(v[i]);
    return a;
}

std::string fnv1a_hex(const std::vector<std::uint64_t>& v) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v)
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Outcome {
    json result;
    int code = kOk;
    std::optional<std::string> raw;  // non-JSON output (csv, text, svg)
};

// Commands ---------------------------------------------------------------------

struct ImageArgs {
    std::string language = "full", weights = "1,1", format = "json";
    std::int64_t bound = 100;
};

Outcome cmd_image(const ImageArgs& a) {
    auto spec = LanguageSpec::parse(a.language);
    auto s = parse_weights(a.weights);
    auto img = image_upto(spec, s, checked_bound(a.bound));
    auto comp = complement(img);
    Outcome o;
    if (a.format == "csv") {
        std::string csv = "m,member\n";
        for (std::uint64_t m = 1; m <= img.bound(); ++m) csv += std::to_string(m) + (img.contains(m) ? ",1\n" : ",0\n");
        o.raw = csv;
        return o;
    }
    o.result["backend"] = to_string(img.backend());
    o.result["members_count"] = img.count();
    o.result["complement_count"] = comp.size();
    o.result["complement"] = capped_list(comp);
    o.result["complement_truncated"] = comp.size() > kListCap;
    o.result["largest_non_member"] = comp.empty() ? json(nullptr) : json(comp.back());
    if (img.bound() <= kListCap) o.result["members"] = img.members();
    else o.result["members_digest"] = fnv1a_hex(img.members());
    if (a.format == "text") {
        std::string t = "complement:";
        for (std::size_t i = 0; i < comp.size() && i < kListCap; ++i) t += " " + std::to_string(comp[i]);
        o.raw = t + "\n";
    }
    return o;
}

struct FrobeniusArgs {
    std::string language = "forbid:bb", weights = "7,3";
    std::int64_t max_bound = 0;
};

Outcome cmd_frobenius(const FrobeniusArgs& a) {
    auto spec = LanguageSpec::parse(a.language);
    auto s = parse_weights(a.weights);
    std::uint64_t limit = a.max_bound > 0 ? checked_bound(a.max_bound) : default_frobenius_bound(spec, s);
    if (auto cap = env_max_bound(); cap && a.max_bound <= 0) limit = std::min(limit, *cap);
    auto r = frobenius(spec, s, limit);

    Outcome o;
    o.result["kind"] = to_string(r.kind);
    if (r.kind == FrobeniusResult::Kind::Certified) o.result["frobenius"] = r.frobenius;
    if (r.kind == FrobeniusResult::Kind::InfiniteComplement) o.result["reason"] = r.reason;
    if (r.absorbing) {
        o.result["certificate"] = {{"absorbing_letter", Word(2, {*r.absorbing}).str()},
                                   {"run_start", r.run_start},
                                   {"run_length", r.run_length}};
    }
    o.result["sieve_bound"] = r.bound;

    // Closed-form cross-check where one applies.
    std::optional<std::int64_t> predicted;
    bool coprime = std::gcd(s.a, s.b) == 1;
    if (coprime && std::holds_alternative<FullLanguage>(spec.variant())) {
        predicted = sylvester(s.a, s.b);
        o.result["closed_form"] = "sylvester";
    } else if (coprime && spec == LanguageSpec::golden_mean() && s.a > 1 && s.b > 1) {
        predicted = golden_mean_frobenius(s.a, s.b);
        o.result["closed_form"] = "golden-mean";
    }
    if (o.result.contains("closed_form")) {
        o.result["predicted"] = predicted ? json(*predicted) : json("complement-empty");
        bool agrees = predicted ? r.kind == FrobeniusResult::Kind::Certified &&
                                      static_cast<std::int64_t>(r.frobenius) == *predicted
                                : r.kind == FrobeniusResult::Kind::ComplementEmpty;
        o.result["agrees"] = agrees;
        if (!agrees && r.kind != FrobeniusResult::Kind::UndeterminedAtBound) o.code = kCheckFailed;
    }
    if (r.kind == FrobeniusResult::Kind::UndeterminedAtBound) o.code = kInconclusive;
    return o;
}

// verify -----------------------------------------------------------------------

struct VerifyArgs {
    std::string id, range, alpha, weights, n;
    std::int64_t bound = 0;
    double tol = 1e-3;
};

class Sweep {
public:
    void add(json params, json expected, json observed, bool pass) {
        instances_.push_back({{"params", std::move(params)},
                              {"expected", std::move(expected)},
                              {"observed", std::move(observed)},
                              {"pass", pass}});
        (pass ? passed_ : failed_)++;
    }
    Outcome finish(json extra = json::object()) {
        Outcome o;
        o.result = std::move(extra);
        o.result["passed"] = passed_;
        o.result["failed"] = failed_;
        o.result["instances"] = std::move(instances_);
        o.code = failed_ == 0 ? kOk : kCheckFailed;
        return o;
    }

private:
    json instances_ = json::array();
    std::uint64_t passed_ = 0, failed_ = 0;
};

std::vector<std::pair<std::int64_t, std::int64_t>> coprime_pairs(std::pair<std::int64_t, std::int64_t> r) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto a = r.first; a <= r.second; ++a)
        for (auto b = r.first; b <= r.second; ++b)
            if (std::gcd(a, b) == 1) out.emplace_back(a, b);
    return out;
}

std::vector<Weighting> weights_or(const std::string& text, std::vector<Weighting> fallback) {
    if (text.empty()) return fallback;
    std::vector<Weighting> out;
    std::size_t start = 0;
    // "3,2;2,5" lists several pairs.
    while (start <= text.size()) {
        auto semi = text.find(';', start);
        out.push_back(parse_weights(std::string_view(text).substr(start, semi - start)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

std::vector<Surd> sample_slopes() {
    return {Surd::integer(2) - Surd::golden_ratio(), Surd::parse("sqrt(2)-1"), Surd::parse("(sqrt(3)-1)/2"),
            Surd::parse("sqrt(5)-2"), Surd::parse("sqrt(7)-2")};
}

std::set<std::int64_t> union_upto(const SequencePair& p, std::int64_t bound) {
    std::set<std::int64_t> u;
    for (const auto* seq : {&p.first, &p.second})
        for (auto v : *seq)
            if (v >= 1 && v <= bound) u.insert(v);
    return u;
}

std::set<std::int64_t> members_set(const ImageSet& img) {
    std::set<std::int64_t> out;
    for (auto m : img.members()) out.insert(static_cast<std::int64_t>(m));
    return out;
}

/// First element in exactly one of the two sets, or nullopt.
std::optional<std::int64_t> first_difference(const std::set<std::int64_t>& x, const std::set<std::int64_t>& y) {
    std::vector<std::int64_t> d;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(d));
    if (d.empty()) return std::nullopt;
    return d.front();
}

Outcome verify_frobenius_sweep(const VerifyArgs& a, bool golden) {
    auto range = parse_range(a.range.empty() ? "2..30" : a.range);
    if (range.first < (golden ? 2 : 1)) throw DomainError("weights in this sweep must be at least 2");
    auto spec = golden ? LanguageSpec::golden_mean() : LanguageSpec::full();
    Sweep sw;
    for (auto [x, y] : coprime_pairs(range)) {
        Weighting s(x, y);
        auto r = frobenius(spec, s);
        json expected, observed;
        bool pass;
        if (golden) {
            auto g = golden_mean_frobenius(x, y);
            expected = g;
            pass = r.kind == FrobeniusResult::Kind::Certified && static_cast<std::int64_t>(r.frobenius) == g;
        } else {
            auto g = sylvester(x, y);
            expected = g ? json(*g) : json("complement-empty");
            pass = g ? r.kind == FrobeniusResult::Kind::Certified && static_cast<std::int64_t>(r.frobenius) == *g
                     : r.kind == FrobeniusResult::Kind::ComplementEmpty;
        }
        observed = r.kind == FrobeniusResult::Kind::Certified ? json(r.frobenius) : json(to_string(r.kind));
        sw.add({{"weights", s.str()}}, expected, observed, pass);
    }
    return sw.finish({{"language", spec.str()}});
}

Outcome verify_th2(const VerifyArgs& a) {
    std::int64_t bound = static_cast<std::int64_t>(checked_bound(a.bound > 0 ? a.bound : 10'000));
    std::vector<Surd> slopes = a.alpha.empty() ? sample_slopes() : std::vector<Surd>{Surd::parse(a.alpha)};
    auto pairs = weights_or(a.weights, {{3, 2}, {2, 5}, {1, 2}, {4, 7}, {5, 3}});
    std::int64_t min_w = INT64_MAX;
    for (const auto& s : pairs) min_w = std::min(min_w, s.min());
    Sweep sw;
    for (const auto& alpha : slopes) {
        auto spec = LanguageSpec::sturmian(alpha);
        auto table = parikh_table(spec, static_cast<std::size_t>(bound / min_w));
        for (const auto& s : pairs) {
            auto img = image_from_parikh(table, spec.str(), s, static_cast<std::uint64_t>(bound));
            auto terms = sturmian_image_terms(alpha, s.a, s.b, static_cast<std::size_t>(bound / s.min() + 2));
            auto diff = first_difference(members_set(img), union_upto(terms, bound));
            sw.add({{"alpha", alpha.str()}, {"weights", s.str()}, {"bound", bound}}, "union equals image",
                   diff ? json("first difference at " + std::to_string(*diff)) : json("equal"), !diff);
        }
    }
    return sw.finish();
}

Outcome verify_th3(const VerifyArgs& a) {
    std::int64_t bound = static_cast<std::int64_t>(checked_bound(a.bound > 0 ? a.bound : 10'000));
    auto pairs = weights_or(a.weights, {{3, 2}, {3, 1}, {4, 3}, {2, 3}, {5, 2}, {2, 7}, {7, 4}, {5, 8}, {9, 2}, {6, 11}});
    std::int64_t min_w = INT64_MAX;
    for (const auto& s : pairs) min_w = std::min(min_w, s.min());
    auto spec = LanguageSpec::fibonacci();
    auto table = parikh_table(spec, static_cast<std::size_t>(bound / min_w));
    auto alpha = Surd::integer(2) - Surd::golden_ratio();
    Sweep sw;
    for (const auto& s : pairs) {
        auto img = image_from_parikh(table, spec.str(), s, static_cast<std::uint64_t>(bound));
        auto count = static_cast<std::size_t>(bound / s.min() + 2);
        auto th3 = fibonacci_image_terms(s.a, s.b, count);
        auto diff = first_difference(members_set(img), union_upto(th3, bound));
        sw.add({{"weights", s.str()}, {"bound", bound}, {"check", "union equals image"}}, "equal",
               diff ? json("first difference at " + std::to_string(*diff)) : json("equal"), !diff);
        // Term m of the slow Beatty form is term m+1 of the Wythoff form.
        auto th2 = sturmian_image_terms(alpha, s.a, s.b, count);
        std::optional<std::size_t> bad;
        for (std::size_t m = 0; m + 1 < count && !bad; ++m)
            if (th2.first[m] != th3.first[m] || th2.second[m] != th3.second[m]) bad = m;
        sw.add({{"weights", s.str()}, {"terms", count - 1}, {"check", "index shift"}}, "equal",
               bad ? json("mismatch at m=" + std::to_string(*bad)) : json("equal"), !bad);
    }
    return sw.finish();
}

Outcome verify_th4(const VerifyArgs& a) {
    std::int64_t bound = static_cast<std::int64_t>(checked_bound(a.bound > 0 ? a.bound : 1'000'000));
    auto window = static_cast<std::uint64_t>(std::max<std::int64_t>(1, bound / 10));
    std::vector<Weighting> pairs = {{1, 1}, {1, 2}, {1, 3}, {2, 1}};
    auto extra = weights_or(a.weights, {{3, 2}, {3, 1}, {4, 3}, {2, 3}, {1, 4}, {1, 5}, {2, 5}, {5, 2},
                                        {3, 4}, {4, 1}, {5, 3}, {3, 5}, {7, 2}, {2, 7}, {6, 5}, {5, 6},
                                        {8, 3}, {3, 8}, {9, 4}, {4, 9}});
    pairs.insert(pairs.end(), extra.begin(), extra.end());
    // The Fibonacci language is the Sturmian language of slope 2 - Phi.
    auto spec = LanguageSpec::sturmian(Surd::integer(2) - Surd::golden_ratio());
    auto table = parikh_table(spec, static_cast<std::size_t>(bound));
    Sweep sw;
    for (const auto& s : pairs) {
        auto cls = fibonacci_classification(s.a, s.b);
        auto img = image_from_parikh(table, "morphic:fib", s, static_cast<std::uint64_t>(bound));
        json params = {{"weights", s.str()}, {"bound", bound}};
        if (cls.complement_empty) {
            auto comp = complement(img);
            sw.add(params, "complement-empty",
                   comp.empty() ? json("complement-empty") : json("first missing " + std::to_string(comp.front())),
                   comp.empty());
        } else {
            auto density = empirical_density(img, window);
            double err = std::abs(density.value() - cls.density_approx);
            params["window"] = window;
            sw.add(params, {{"complement_density", (Surd::integer(1) - cls.density).decimal(6)}},
                   {{"complement_density", fixed(1 - density.value(), 6)}, {"error", fixed(err, 6)}},
                   err <= a.tol);
        }
    }
    return sw.finish({{"tolerance", fixed(a.tol, 6)}});
}

Outcome verify_th5(const VerifyArgs& a) {
    auto range = parse_range(a.range.empty() ? "1..10" : a.range);
    if (range.first < 1) throw DomainError("weights must be positive");
    std::int64_t bound = static_cast<std::int64_t>(checked_bound(a.bound > 0 ? a.bound : 500));
    auto spec = LanguageSpec::thue_morse();
    auto table = parikh_table(spec, static_cast<std::size_t>(bound));
    Sweep sw;
    for (auto p = range.first; p <= range.second; ++p)
        for (auto q = range.first; q <= range.second; ++q) {
            auto img = image_from_parikh(table, spec.str(), Weighting(p, q), static_cast<std::uint64_t>(bound));
            std::optional<std::int64_t> bad;
            for (std::int64_t m = 1; m <= bound && !bad; ++m)
                if (tm_image_membership(p, q, m) != img.contains(static_cast<std::uint64_t>(m))) bad = m;
            sw.add({{"weights", Weighting(p, q).str()}, {"bound", bound}}, "membership equals image",
                   bad ? json("first difference at " + std::to_string(*bad)) : json("equal"), !bad);
        }
    return sw.finish();
}

Outcome verify_th6(const VerifyArgs& a) {
    auto range = parse_range(a.range.empty() ? "1..10" : a.range);
    if (range.first < 1) throw DomainError("weights must be positive");
    std::int64_t bound = static_cast<std::int64_t>(checked_bound(a.bound > 0 ? a.bound : 500));
    auto spec = LanguageSpec::thue_morse();
    auto table = parikh_table(spec, static_cast<std::size_t>(bound));
    Sweep sw;
    for (auto p = range.first; p <= range.second; ++p)
        for (auto q = range.first; q <= range.second; ++q) {
            auto cls = tm_classification(p, q);
            auto img = image_from_parikh(table, spec.str(), Weighting(p, q), static_cast<std::uint64_t>(bound));
            auto comp = complement(img);
            // A common factor > 1 leaves whole residue classes out, whatever p+q is.
            bool infinite_expected = p + q >= 6 || std::gcd(p, q) > 1;
            bool pass = (cls.kind == TmClassification::Kind::Infinite) == infinite_expected;
            json observed = {{"kind", to_string(cls.kind)}};
            if (cls.kind == TmClassification::Kind::Infinite) {
                // Every missing residue class must show up in the enumerated complement near the bound.
                for (auto r : cls.missing_residues) {
                    auto m = bound - ((bound - r) % (p + q) + (p + q)) % (p + q);
                    pass = pass && m >= 1 && !img.contains(static_cast<std::uint64_t>(m));
                }
                observed["missing_residues"] = cls.missing_residues;
            } else {
                std::vector<std::int64_t> enumerated(comp.begin(), comp.end());
                pass = pass && enumerated == cls.finite_complement;
                observed["complement"] = cls.finite_complement;
            }
            json expected = infinite_expected ? "infinite" : "empty-or-singleton";
            if (p + q < 6 && std::gcd(p, q) > 1) expected = "infinite (gcd)";
            sw.add({{"weights", Weighting(p, q).str()}, {"bound", bound}}, expected, observed, pass);
        }
    return sw.finish();
}

Outcome verify_wythoff(const VerifyArgs& a) {
    std::int64_t n_max = a.n.empty() ? (a.bound > 0 ? a.bound : 10'000) : parse_range(a.n).second;
    auto r = wythoff_identities_check(n_max);
    Sweep sw;
    sw.add({{"n_max", n_max}}, "AA=B-1 and AB=2A+Id",
           r.passed ? json("hold") : json(capped_list(r.violations, 20)), r.passed);
    return sw.finish();
}

Outcome verify_triples(const VerifyArgs& a) {
    std::int64_t bound = static_cast<std::int64_t>(checked_bound(a.bound > 0 ? a.bound : 10'000));
    Sweep sw;
    const std::pair<const char*, ExampleComplement> examples[] = {{"ex1", ExampleComplement::Ex1},
                                                                 {"ex2", ExampleComplement::Ex2}};
    for (auto [name, which] : examples) {
        auto t = example_triple(which);
        auto r = complementary_triple_check(t[0], t[1], t[2], bound);
        sw.add({{"example", name}, {"bound", bound}, {"sequences", {t[0].str(), t[1].str(), t[2].str()}}},
               "complementary triple", r.passed ? json("confirmed") : json(capped_list(r.violations, 20)),
               r.passed);
    }
    return sw.finish();
}

Outcome verify_lemma_compl(const VerifyArgs& a) {
    auto alpha = a.alpha.empty() ? Surd::integer(2) - Surd::golden_ratio() : Surd::parse(a.alpha);
    auto s = a.weights.empty() ? Weighting(3, 2) : parse_weights(a.weights);
    auto range = parse_range(a.n.empty() ? "1..200" : a.n);
    if (range.first < 1) throw DomainError("lengths start at 1");
    auto spec = LanguageSpec::sturmian(alpha);
    std::uint64_t expected = s.a == s.b ? 1 : 2;
    Sweep sw;
    for (auto n = range.first; n <= range.second; ++n) {
        auto c = additive_complexity(spec, s, static_cast<std::size_t>(n));
        sw.add({{"n", n}}, expected, c, c == expected);
    }
    return sw.finish({{"alpha", alpha.str()}, {"weights", s.str()}});
}

Outcome cmd_verify(const VerifyArgs& a) {
    static const std::map<std::string, std::function<Outcome(const VerifyArgs&)>> table = {
        {"sylvester", [](const VerifyArgs& x) { return verify_frobenius_sweep(x, false); }},
        {"th1", [](const VerifyArgs& x) { return verify_frobenius_sweep(x, true); }},
        {"th2", verify_th2},
        {"th3", verify_th3},
        {"th4", verify_th4},
        {"th5", verify_th5},
        {"th6", verify_th6},
        {"wythoff", verify_wythoff},
        {"triples", verify_triples},
        {"lemma-compl", verify_lemma_compl},
    };
    auto it = table.find(a.id);
    if (it == table.end()) throw ParseError("unknown check '" + a.id + "'", 0);
    return it->second(a);
}

// chains -----------------------------------------------------------------------

struct ChainsArgs {
    std::string weights = "7,3", format = "text";
    std::int64_t rows = 8, truncate = 0;
};

Outcome cmd_chains(const ChainsArgs& a) {
    auto s = parse_weights(a.weights);
    if (a.rows < 1) throw DomainError("rows must be at least 1");
    std::int64_t width = a.truncate > 0 ? a.truncate : s.a * a.rows;
    // Row n shows the Sa-points and the chain C(n-1); a chain element is "new"
    // when its residue mod Sa has not been reached by an earlier chain.
    std::vector<bool> reached(static_cast<std::size_t>(s.a), false);
    reached[0] = true;
    std::optional<std::int64_t> last_row, last_residue;
    json rows = json::array();
    std::vector<std::string> grid;
    for (std::int64_t n = 1; n <= a.rows; ++n) {
        auto chain = sb_chain(n - 1, s.a, s.b);
        json fresh = json::array();
        std::string line(static_cast<std::size_t>(width + 1), '.');
        for (std::int64_t p = 0; p <= width; p += s.a) line[static_cast<std::size_t>(p)] = 'A';
        for (auto c : chain) {
            auto r = static_cast<std::size_t>(c % s.a);
            bool is_new = !reached[r];
            if (is_new) {
                reached[r] = true;
                fresh.push_back(c);
                last_row = n;
                last_residue = c % s.a;
            }
            if (c <= width) line[static_cast<std::size_t>(c)] = is_new ? '#' : 'o';
        }
        rows.push_back({{"row", n}, {"chain", chain}, {"new_residues", fresh}});
        grid.push_back(line);
    }
    bool complete = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
    Outcome o;
    o.result["weights"] = s.str();
    o.result["truncate"] = width;
    o.result["rows"] = rows;
    o.result["all_residues_reached"] = complete;
    o.result["last_residue_row"] = complete && last_row ? json(*last_row) : json(nullptr);
    o.result["last_residue"] = complete && last_residue ? json(*last_residue) : json(nullptr);
    if (a.format == "text") {
        std::string t;
        for (std::size_t i = 0; i < grid.size(); ++i) t += std::to_string(i + 1) + "\t" + grid[i] + "\n";
        o.raw = t;
    } else if (a.format == "svg") {
        constexpr int kCell = 10;
        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (width + 1) * kCell << "\" height=\""
            << a.rows * kCell << "\">\n";
        for (std::size_t r = 0; r < grid.size(); ++r)
            for (std::size_t c = 0; c < grid[r].size(); ++c) {
                const char* fill = grid[r][c] == 'A' ? "#1f4fd6" : grid[r][c] == '#' ? "#2ca02c"
                                 : grid[r][c] == 'o' ? "#f2c80f" : nullptr;
                if (!fill) continue;
                svg << "<rect x=\"" << c * kCell << "\" y=\"" << r * kCell << "\" width=\"" << kCell - 1
                    << "\" height=\"" << kCell - 1 << "\" fill=\"" << fill << "\"/>\n";
            }
        svg << "</svg>\n";
        o.raw = svg.str();
    }
    return o;
}

// beatty / triple ----------------------------------------------------------------

struct BeattyArgs {
    std::string alpha = "(1+1*sqrt(5))/2", format = "json";
    std::int64_t from = 1, to = 10;
    bool slow = false;
};

Outcome cmd_beatty(const BeattyArgs& a) {
    auto alpha = Surd::parse(a.alpha);
    if (a.to < a.from) throw DomainError("empty index range");
    if (a.to - a.from >= 10'000'000) throw DomainError("index range too long");
    auto terms = beatty(alpha, a.from, a.to, a.slow);
    Outcome o;
    if (a.format == "csv") {
        std::string csv = "n,term\n";
        for (std::size_t i = 0; i < terms.size(); ++i)
            csv += std::to_string(a.from + static_cast<std::int64_t>(i)) + "," + std::to_string(terms[i]) + "\n";
        o.raw = csv;
        return o;
    }
    o.result["alpha"] = alpha.str();
    o.result["alpha_decimal"] = alpha.decimal(15);
    o.result["terms"] = terms;
    return o;
}

struct TripleArgs {
    std::string example = "ex1";
    std::int64_t bound = 10'000, terms = 0;
};

Outcome cmd_triple(const TripleArgs& a) {
    ExampleComplement which;
    if (a.example == "ex1") which = ExampleComplement::Ex1;
    else if (a.example == "ex1b") which = ExampleComplement::Ex1b;
    else if (a.example == "ex2") which = ExampleComplement::Ex2;
    else throw ParseError("unknown example '" + a.example + "'", 0);
    Outcome o;
    if (a.terms > 0) o.result["complement_terms"] = example_complement_terms(which, static_cast<std::size_t>(a.terms));
    if (which != ExampleComplement::Ex1b) {
        auto t = example_triple(which);
        auto r = complementary_triple_check(t[0], t[1], t[2], static_cast<std::int64_t>(checked_bound(a.bound)));
        o.result["sequences"] = {t[0].str(), t[1].str(), t[2].str()};
        o.result["confirmed"] = r.passed;
        o.result["checked"] = r.checked;
        o.result["violations"] = r.violations;
        if (!r.passed) o.code = kCheckFailed;
    }
    return o;
}

// plane ------------------------------------------------------------------------

struct WalkArgs {
    std::string morphism = "folding5", weights, svg, pgm;
    unsigned iter = 4;
};

Outcome cmd_walk(const WalkArgs& a) {
    auto m = parse_morphism(a.morphism);
    auto s = plane_weights_for(m, a.weights);
    if (std::pow(static_cast<double>(m.image(Letter{0}).size()), a.iter) > 5e7) throw DomainError("walk too long");
    auto walks = four_walks(m, a.iter, s);
    VisitMap visits;
    json endpoints = json::array();
    for (const auto& w : walks) {
        visits.add(w);
        endpoints.push_back(point_json(w.back()));
    }
    auto [lo, hi] = visits.bounds();
    Outcome o;
    o.result["steps_per_walk"] = walks[0].size() - 1;
    o.result["endpoints"] = endpoints;
    o.result["bounds"] = {point_json(lo), point_json(hi)};
    o.result["distinct_points"] = visits.distinct();
    o.result["total_visits"] = visits.total();
    if (!a.svg.empty()) {
        write_file_atomic(a.svg, walks_svg({walks.begin(), walks.end()}));
        o.result["svg"] = a.svg;
    }
    if (!a.pgm.empty()) {
        write_file_atomic(a.pgm, visit_map_pgm(visits));
        o.result["pgm"] = a.pgm;
    }
    return o;
}

struct PerfectArgs {
    std::string morphism = "folding5";
    unsigned iter = 6;
    std::int64_t radius = -1;
};

Outcome cmd_perfect(const PerfectArgs& a) {
    auto m = parse_morphism(a.morphism);
    auto radius = a.radius >= 0 ? a.radius : default_perfectness_radius(m, a.iter);
    if (std::pow(static_cast<double>(m.image(Letter{0}).size()), a.iter) > 5e7) throw DomainError("walk too long");
    auto r = perfectness_check(m, a.iter, radius);
    auto listing = [](const auto& v) {
        json out = json::array();
        for (std::size_t i = 0; i < v.size() && i < 100; ++i) out.push_back({point_json(v[i].first), v[i].second});
        return out;
    };
    Outcome o;
    o.result["status"] = to_string(r.status);
    o.result["radius"] = r.radius;
    o.result["safe_radius"] = r.safe_radius;
    o.result["explored_radius"] = fixed(r.explored_radius, 6);
    o.result["total_visits"] = r.total_visits;
    o.result["violation_count"] = r.violations.size();
    o.result["violations"] = listing(r.violations);
    o.result["under_visited_count"] = r.under_visited.size();
    o.result["under_visited"] = listing(r.under_visited);
    o.code = r.status == PerfectnessReport::Status::Perfect      ? kOk
           : r.status == PerfectnessReport::Status::Violations ? kCheckFailed
                                                               : kInconclusive;
    return o;
}

struct DriftArgs {
    std::string morphism = "folding5", weights;
    double tol = 1e-12;
};

Outcome cmd_drift(const DriftArgs& a) {
    auto m = parse_morphism(a.morphism);
    auto s = plane_weights_for(m, a.weights);
    auto f = letter_frequencies(m, a.tol);
    auto d = drift(m, s, a.tol);
    json freq = json::array();
    for (std::size_t i = 0; i < f.freq.size(); ++i) freq.push_back({{"decimal", fixed(f.freq[i])}, {"iterate", f.exact[i]}});
    Outcome o;
    o.result["frequencies"] = freq;
    o.result["drift"] = {fixed(d.x), fixed(d.y)};
    o.result["error_bound"] = fixed(d.error_bound, 18);
    o.result["exact_zero"] = d.exact_zero;
    o.result["complement"] = d.infinite_complement ? "infinite" : "undecided-by-drift";
    return o;
}

struct OntoArgs {
    std::string morphism = "folding5", weights;
    std::int64_t radius = 10;
    unsigned iter = 6, max_iter = 0;
};

Outcome cmd_onto(const OntoArgs& a) {
    auto m = parse_morphism(a.morphism);
    auto s = plane_weights_for(m, a.weights);
    auto r = onto_check(m, s, a.radius, a.iter, a.max_iter);
    json missing = json::array();
    for (std::size_t i = 0; i < r.missing.size() && i < kListCap; ++i) missing.push_back(point_json(r.missing[i]));
    Outcome o;
    o.result["radius"] = r.radius;
    o.result["iterations"] = r.iterations;
    o.result["missing_count"] = r.missing.size();
    o.result["missing"] = missing;
    o.code = r.missing.empty() ? kOk : kCheckFailed;
    return o;
}

struct Classify2dArgs {
    std::string sa = "1:0", sb = "0:1";
    std::int64_t box = 50;
};

/// Box points of [0,box]^2 other than the origin that are not i*Sa + j*Sb.
std::uint64_t nn_missing(Point sa, Point sb, std::int64_t box) {
    auto side = static_cast<std::size_t>(box + 1);
    std::vector<bool> hit(side * side, false);
    hit[0] = true;
    for (std::int64_t y = 0; y <= box; ++y)
        for (std::int64_t x = 0; x <= box; ++x) {
            if (!hit[static_cast<std::size_t>(y) * side + static_cast<std::size_t>(x)]) continue;
            for (Point st : {sa, sb}) {
                Point n{x + st.x, y + st.y};
                if ((st == Point{0, 0}) || n.x > box || n.y > box) continue;
                hit[static_cast<std::size_t>(n.y) * side + static_cast<std::size_t>(n.x)] = true;
            }
        }
    return static_cast<std::uint64_t>(std::count(hit.begin() + 1, hit.end(), false));
}

Outcome cmd_classify2d(const Classify2dArgs& a) {
    auto sa = parse_point(a.sa), sb = parse_point(a.sb);
    auto cls = classify_nn_embedding(sa, sb);
    if (a.box < 4 || a.box > 4000) throw DomainError("box must be in 4..4000");
    json samples = json::array();
    for (auto b : {a.box / 4, a.box / 2, a.box}) samples.push_back({{"box", b}, {"missing", nn_missing(sa, sb, b)}});
    Outcome o;
    o.result["classification"] = to_string(cls);
    o.result["missing_in_box"] = samples;
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"froblang: images of languages under additive weightings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::function<Outcome()> action;
    json params;
    std::string command;
    auto bind = [&](CLI::App* sub, auto& argstruct, auto fn, auto describe) {
        sub->callback([&, sub, fn, describe] {
            command = sub->get_name();
            params = describe();
            action = [&argstruct, fn] { return fn(argstruct); };
        });
    };

    ImageArgs image;
    auto* s_image = app.add_subcommand("image", "image set of a language up to a bound");
    s_image->add_option("--language", image.language, "full | forbid:w1,.. | morphic:fib|tm | sturmian:<surd>");
    s_image->add_option("--weights", image.weights, "Sa,Sb");
    s_image->add_option("--bound", image.bound, "largest integer examined");
    s_image->add_option("--format", image.format)->check(CLI::IsMember({"json", "csv", "text"}));
    bind(s_image, image, cmd_image, [&] {
        return json{{"language", image.language}, {"weights", image.weights}, {"bound", image.bound}, {"format", image.format}};
    });

    FrobeniusArgs frob;
    auto* s_frob = app.add_subcommand("frobenius", "certified Frobenius number of an SFT image");
    s_frob->add_option("--language", frob.language);
    s_frob->add_option("--weights", frob.weights);
    s_frob->add_option("--max-bound", frob.max_bound, "sieve limit (default: derived from the weights)");
    bind(s_frob, frob, cmd_frobenius, [&] {
        return json{{"language", frob.language}, {"weights", frob.weights}, {"max_bound", frob.max_bound}};
    });

    VerifyArgs ver;
    auto* s_ver = app.add_subcommand("verify", "formula-vs-enumeration sweeps");
    s_ver->add_option("id", ver.id, "sylvester th1 th2 th3 th4 th5 th6 wythoff triples lemma-compl")->required();
    s_ver->add_option("--range", ver.range, "weight range lo..hi");
    s_ver->add_option("--alpha", ver.alpha, "slope surd");
    s_ver->add_option("--weights", ver.weights, "Sa,Sb or several separated by ';'");
    s_ver->add_option("--n", ver.n, "length or index range lo..hi");
    s_ver->add_option("--bound", ver.bound);
    s_ver->add_option("--tol", ver.tol, "density tolerance (th4)");
    bind(s_ver, ver, cmd_verify, [&] {
        json p{{"id", ver.id}};
        if (!ver.range.empty()) p["range"] = ver.range;
        if (!ver.alpha.empty()) p["alpha"] = ver.alpha;
        if (!ver.weights.empty()) p["weights"] = ver.weights;
        if (!ver.n.empty()) p["n"] = ver.n;
        if (ver.bound > 0) p["bound"] = ver.bound;
        return p;
    });

    ChainsArgs chains;
    auto* s_chains = app.add_subcommand("chains", "Sa-points and Sb-chains for the golden-mean language");
    s_chains->add_option("--weights", chains.weights);
    s_chains->add_option("--rows", chains.rows);
    s_chains->add_option("--truncate", chains.truncate, "last position drawn (default Sa*rows)");
    s_chains->add_option("--format", chains.format)->check(CLI::IsMember({"json", "text", "svg"}));
    bind(s_chains, chains, cmd_chains, [&] {
        return json{{"weights", chains.weights}, {"rows", chains.rows}, {"truncate", chains.truncate}, {"format", chains.format}};
    });

    BeattyArgs bt;
    auto* s_bt = app.add_subcommand("beatty", "Beatty or slow Beatty terms");
    s_bt->add_option("--alpha", bt.alpha);
    s_bt->add_option("--from", bt.from);
    s_bt->add_option("--to", bt.to);
    s_bt->add_flag("--slow", bt.slow, "q_n = floor((n+1) alpha), 0 < alpha < 1");
    s_bt->add_option("--format", bt.format)->check(CLI::IsMember({"json", "csv"}));
    bind(s_bt, bt, cmd_beatty, [&] {
        return json{{"alpha", bt.alpha}, {"from", bt.from}, {"to", bt.to}, {"slow", bt.slow}, {"format", bt.format}};
    });

    TripleArgs tr;
    auto* s_tr = app.add_subcommand("triple", "complementary triples of the Fibonacci examples");
    s_tr->add_option("--example", tr.example)->check(CLI::IsMember({"ex1", "ex1b", "ex2"}));
    s_tr->add_option("--bound", tr.bound);
    s_tr->add_option("--terms", tr.terms, "also list this many complement terms");
    bind(s_tr, tr, cmd_triple, [&] { return json{{"example", tr.example}, {"bound", tr.bound}, {"terms", tr.terms}}; });

    WalkArgs wk;
    auto* s_wk = app.add_subcommand("walk", "four rotated walks of m^k(a)");
    s_wk->add_option("--morphism", wk.morphism, "fib | tm | folding5 | images like abc,dcb,cda,bad");
    s_wk->add_option("--iter", wk.iter);
    s_wk->add_option("--weights", wk.weights, "x1:y1,x2:y2,...");
    s_wk->add_option("--svg", wk.svg);
    s_wk->add_option("--pgm", wk.pgm);
    bind(s_wk, wk, cmd_walk, [&] {
        return json{{"morphism", wk.morphism}, {"iter", wk.iter}, {"weights", wk.weights}, {"svg", wk.svg}, {"pgm", wk.pgm}};
    });

    PerfectArgs pf;
    auto* s_pf = app.add_subcommand("perfect", "box-restricted perfectness check");
    s_pf->add_option("--morphism", pf.morphism);
    s_pf->add_option("--iter", pf.iter);
    s_pf->add_option("--radius", pf.radius, "box half-width (default: a quarter of the covering radius)");
    bind(s_pf, pf, cmd_perfect, [&] { return json{{"morphism", pf.morphism}, {"iter", pf.iter}, {"radius", pf.radius}}; });

    DriftArgs dr;
    auto* s_dr = app.add_subcommand("drift", "letter frequencies and drift");
    s_dr->add_option("--morphism", dr.morphism);
    s_dr->add_option("--weights", dr.weights);
    s_dr->add_option("--tol", dr.tol);
    bind(s_dr, dr, cmd_drift, [&] { return json{{"morphism", dr.morphism}, {"weights", dr.weights}}; });

    OntoArgs on;
    auto* s_on = app.add_subcommand("onto", "box points attained as factor images");
    s_on->add_option("--morphism", on.morphism);
    s_on->add_option("--weights", on.weights);
    s_on->add_option("--radius", on.radius);
    s_on->add_option("--iter", on.iter);
    s_on->add_option("--max-iter", on.max_iter, "raise k up to this while points are missing");
    bind(s_on, on, cmd_onto, [&] {
        return json{{"morphism", on.morphism}, {"weights", on.weights}, {"radius", on.radius}, {"iter", on.iter}, {"max_iter", on.max_iter}};
    });

    Classify2dArgs c2;
    auto* s_c2 = app.add_subcommand("classify2d", "N x N embeddings of two-letter languages");
    s_c2->add_option("--sa", c2.sa, "x:y");
    s_c2->add_option("--sb", c2.sb, "x:y");
    s_c2->add_option("--box", c2.box);
    bind(s_c2, c2, cmd_classify2d, [&] { return json{{"sa", c2.sa}, {"sb", c2.sb}, {"box", c2.box}}; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = action();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternalError;
    }
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (o.raw) {
        out << *o.raw;
        return o.code;
    }
    json report;
    report["command"] = command;
    report["parameters"] = params;
    report["result"] = o.result;
    report["exit_code"] = o.code;
    report["version"] = kVersion;
    report["timing_ms"] = std::llround(ms);
    out << report.dump(2) << "\n";
    return o.code;
}

}  // namespace froblang::cli
