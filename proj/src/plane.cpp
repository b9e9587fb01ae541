#include "froblang/plane.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "froblang/errors.hpp"

namespace froblang {

namespace mp = boost::multiprecision;

Point Point::rotated(int quarter_turns) const {
    Point p = *this;
    for (int i = 0; i < ((quarter_turns % 4) + 4) % 4; ++i) p = p.rotated();
    return p;
}

PlaneWeighting::PlaneWeighting(std::vector<Point> steps) : steps_(std::move(steps)) {
    if (steps_.empty() || steps_.size() > kMaxAlphabet) throw DomainError("plane weighting needs 1 to 4 letters");
}

PlaneWeighting PlaneWeighting::standard() { return PlaneWeighting({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

PlaneWeighting PlaneWeighting::parse(std::string_view text) {
    std::vector<Point> steps;
    std::size_t pos = 0;
    auto number = [&](std::int64_t& out) {
        std::size_t start = pos;
        bool neg = pos < text.size() && text[pos] == '-';
        if (neg || (pos < text.size() && text[pos] == '+')) ++pos;
        std::int64_t v = 0;
        std::size_t digits = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (v > (INT64_MAX - 9) / 10) throw ParseError("coordinate too large", start);
            v = v * 10 + (text[pos++] - '0');
        }
        if (pos == digits) throw ParseError("expected an integer coordinate", start);
        out = neg ? -v : v;
    };
    for (;;) {
        Point p;
        number(p.x);
        if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':' between coordinates", pos);
        ++pos;
        number(p.y);
        steps.push_back(p);
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError("expected ',' between letter weights", pos);
        ++pos;
    }
    if (steps.size() > kMaxAlphabet) throw ParseError("at most four letter weights", 0);
    return PlaneWeighting(std::move(steps));
}

PlaneWeighting PlaneWeighting::rotated(int quarter_turns) const {
    std::vector<Point> r;
    for (auto p : steps_) r.push_back(p.rotated(quarter_turns));
    return PlaneWeighting(std::move(r));
}

std::string PlaneWeighting::str() const {
    std::string s;
    for (std::size_t i = 0; i < steps_.size(); ++i)
        s += (i ? "," : "") + std::to_string(steps_[i].x) + ":" + std::to_string(steps_[i].y);
    return s;
}

WalkPath walk(const Word& w, const PlaneWeighting& s) {
    if (w.alphabet_size() > s.alphabet_size()) throw DomainError("weighting does not cover the alphabet");
    WalkPath path;
    path.reserve(w.size() + 1);
    path.push_back({0, 0});
    for (auto l : w.letters()) path.push_back(path.back() + s.of(l));
    return path;
}

std::array<WalkPath, 4> four_walks(const Morphism& m, unsigned k, const PlaneWeighting& s) {
    if (!m.prolongable_on(Letter{0})) throw DomainError("morphism is not prolongable on a");
    Word base = iterate(m, Word(m.alphabet_size(), {Letter{0}}), k);
    std::array<WalkPath, 4> out;
    for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(j)] = walk(base, s.rotated(j));
    return out;
}

std::string to_string(PlaneClass c) {
    return c == PlaneClass::FiniteComplement ? "finite-complement" : "infinite-complement";
}

PlaneClass classify_nn_embedding(Point sa, Point sb) {
    if (sa.x < 0 || sa.y < 0 || sb.x < 0 || sb.y < 0)
        throw DomainError("N x N weights need non-negative coordinates");
    Point e1{1, 0}, e2{0, 1};
    bool units = (sa == e1 && sb == e2) || (sa == e2 && sb == e1);
    return units ? PlaneClass::FiniteComplement : PlaneClass::InfiniteComplement;
}

bool is_primitive(const Morphism& m) {
    auto inc = m.incidence();
    std::size_t n = inc.size();
    std::vector<std::vector<bool>> pos(n, std::vector<bool>(n)), cur;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pos[i][j] = inc[i][j] > 0;
    cur = pos;
    // Wielandt: a primitive n x n matrix has a positive power at or below (n-1)^2 + 1.
    for (std::size_t power = 1; power <= (n - 1) * (n - 1) + 1; ++power) {
        bool all = true;
        for (const auto& row : cur)
            for (bool b : row) all = all && b;
        if (all) return true;
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (cur[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (pos[k][j]) next[i][j] = true;
        cur = std::move(next);
    }
    return false;
}

namespace {

struct ExactFrequencies {
    std::vector<mp::cpp_rational> mu;
    double error_bound = 0;
    unsigned iterations = 0;
};

ExactFrequencies power_iteration(const Morphism& m, double tol) {
    if (!is_primitive(m)) throw DomainError("letter frequencies need a primitive morphism");
    auto inc = m.incidence();
    std::size_t n = inc.size();
    std::vector<mp::cpp_int> v(n, 1);
    auto normalize = [&](const std::vector<mp::cpp_int>& x) {
        mp::cpp_int sum = 0;
        for (const auto& e : x) sum += e;
        std::vector<mp::cpp_rational> r;
        for (const auto& e : x) r.emplace_back(e, sum);
        return r;
    };
    ExactFrequencies out;
    out.mu = normalize(v);
    double prev_diff = -1;
    constexpr unsigned kMaxIterations = 4000;
    for (unsigned it = 1; it <= kMaxIterations; ++it) {
        std::vector<mp::cpp_int> next(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) next[i] += inc[i][j] * v[j];
        v = std::move(next);
        auto mu = normalize(v);
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i)
            diff = std::max(diff, std::abs(static_cast<double>(mu[i] - out.mu[i])));
        out.mu = std::move(mu);
        out.iterations = it;
        if (diff == 0) {
            out.error_bound = 0;
            return out;
        }
        // Geometric tail estimate from the observed contraction ratio.
        double ratio = prev_diff > 0 ? std::min(diff / prev_diff, 0.999) : 0.999;
        double bound = diff * ratio / (1 - ratio);
        if (prev_diff > 0 && bound < tol && diff < tol) {
            out.error_bound = bound;
            return out;
        }
        prev_diff = diff;
    }
    throw StabilizationError("power iteration did not reach the requested tolerance");
}

}  // namespace

FrequencyVector letter_frequencies(const Morphism& m, double tol) {
    auto ex = power_iteration(m, tol);
    FrequencyVector f;
    for (const auto& q : ex.mu) {
        f.freq.push_back(static_cast<double>(q));
        f.exact.push_back(mp::numerator(q).str() + "/" + mp::denominator(q).str());
    }
    f.error_bound = ex.error_bound;
    f.iterations = ex.iterations;
    return f;
}

Drift drift(const Morphism& m, const PlaneWeighting& s, double tol) {
    if (s.alphabet_size() < m.alphabet_size()) throw DomainError("weighting does not cover the alphabet");
    auto ex = power_iteration(m, tol);
    mp::cpp_rational dx = 0, dy = 0;
    std::int64_t max_abs = 0;
    for (std::size_t i = 0; i < ex.mu.size(); ++i) {
        Point p = s.of(Letter{static_cast<std::uint8_t>(i)});
        dx += ex.mu[i] * p.x;
        dy += ex.mu[i] * p.y;
        max_abs = std::max({max_abs, std::abs(p.x), std::abs(p.y)});
    }
    Drift d;
    d.x = static_cast<double>(dx);
    d.y = static_cast<double>(dy);
    d.error_bound = ex.error_bound * static_cast<double>(max_abs) * static_cast<double>(ex.mu.size());
    d.exact_zero = dx == 0 && dy == 0 && ex.error_bound == 0;
    d.infinite_complement = std::max(std::abs(d.x), std::abs(d.y)) > d.error_bound;
    return d;
}

PaperfoldingReport is_paperfolding(const Morphism& m) {
    if (m.alphabet_size() != 4) throw DomainError("paperfolding morphisms live on {a,b,c,d}");
    Morphism sigma = catalog::rotation();
    PaperfoldingReport r;
    r.commutation = r.literal = true;
    for (std::uint8_t x = 0; x < 4; ++x) {
        Letter l{x};
        Word lhs = apply_morphism(sigma, reverse(m.image(l)));
        r.commutation = r.commutation && lhs == m.image(sigma.image(l)[0]);
        r.literal = r.literal && lhs == m.image(l);
    }
    const Word& ta = m.image(Letter{0});
    r.alternation = true;
    for (std::size_t i = 1; i < ta.size(); ++i)
        r.alternation = r.alternation && (ta[i].index % 2 != ta[i - 1].index % 2);
    r.folds = ta.size() >= 2;
    return r;
}

SymmetryReport is_symmetric(const Morphism& m) {
    if (m.alphabet_size() != 4) throw DomainError("paperfolding morphisms live on {a,b,c,d}");
    Morphism sigma = catalog::rotation();
    SymmetryReport r;
    r.palindrome = is_palindrome(m.image(Letter{0}));
    r.commutes_with_rotation = compose(sigma, m) == compose(m, sigma);
    r.literal = compose(sigma, m) == m;
    return r;
}

void VisitMap::add(const WalkPath& path) {
    for (auto p : path) ++counts_[p];
    total_ += path.size();
}

std::uint64_t VisitMap::count(Point p) const {
    auto it = counts_.find(p);
    return it == counts_.end() ? 0 : it->second;
}

std::pair<Point, Point> VisitMap::bounds() const {
    if (counts_.empty()) return {{0, 0}, {0, 0}};
    Point lo = counts_.begin()->first, hi = lo;
    for (const auto& [p, c] : counts_) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return {lo, hi};
}

std::vector<std::pair<Point, std::uint64_t>> VisitMap::sorted() const {
    std::vector<std::pair<Point, std::uint64_t>> v(counts_.begin(), counts_.end());
    std::sort(v.begin(), v.end());
    return v;
}

std::string to_string(PerfectnessReport::Status s) {
    switch (s) {
        case PerfectnessReport::Status::Perfect: return "perfect";
        case PerfectnessReport::Status::Violations: return "violations";
        case PerfectnessReport::Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

double ideal_radius(const Morphism& m, unsigned k) {
    double steps = std::pow(static_cast<double>(m.image(Letter{0}).size()), k);
    return std::sqrt(2.0 * steps) / 2.0;
}

}  // namespace

std::int64_t default_perfectness_radius(const Morphism& m, unsigned k) {
    return static_cast<std::int64_t>(std::floor(ideal_radius(m, k) / 2.0));
}

PerfectnessReport perfectness_check(const Morphism& m, unsigned k, std::int64_t radius) {
    if (!is_paperfolding(m).paperfolding()) throw DomainError("perfectness is defined for paperfolding morphisms");
    PerfectnessReport r;
    r.radius = radius;
    r.explored_radius = ideal_radius(m, k);
    VisitMap visits;
    for (const auto& path : four_walks(m, k, PlaneWeighting::standard())) visits.add(path);
    r.total_visits = visits.total();

    auto expected = [](Point p) -> std::uint64_t { return p == Point{0, 0} ? 4 : 2; };
    // Counts only grow with k, so an excess is final; a deficit may just be unexplored.
    for (const auto& [p, c] : visits.sorted())
        if (c > expected(p)) r.violations.emplace_back(p, c);

    std::int64_t scan = std::max(radius, static_cast<std::int64_t>(r.explored_radius));
    std::int64_t first_bad = scan + 1;
    for (std::int64_t y = -scan; y <= scan; ++y)
        for (std::int64_t x = -scan; x <= scan; ++x) {
            Point p{x, y};
            std::uint64_t c = visits.count(p);
            if (c == expected(p)) continue;
            first_bad = std::min(first_bad, std::max(std::abs(x), std::abs(y)));
            if (c < expected(p) && std::abs(x) <= radius && std::abs(y) <= radius)
                r.under_visited.emplace_back(p, c);
        }
    r.safe_radius = first_bad - 1;

    if (!r.violations.empty()) r.status = PerfectnessReport::Status::Violations;
    else if (static_cast<double>(radius) > r.explored_radius || !r.under_visited.empty())
        r.status = PerfectnessReport::Status::Inconclusive;
    else r.status = PerfectnessReport::Status::Perfect;
    return r;
}

OntoReport onto_check(const Morphism& m, const PlaneWeighting& s, std::int64_t radius, unsigned k,
                      unsigned k_cap) {
    if (radius < 0) throw DomainError("radius must be non-negative");
    if (!m.prolongable_on(Letter{0})) throw DomainError("morphism is not prolongable on its first letter");
    k_cap = std::max(k_cap, k);
    constexpr std::size_t kMaxSteps = 400'000;
    std::int64_t side = 2 * radius + 1;
    OntoReport r;
    r.radius = radius;
    for (unsigned it = k;; ++it) {
        WalkPath z = walk(iterate(m, Word(m.alphabet_size(), {Letter{0}}), it), s);
        std::vector<bool> seen(static_cast<std::size_t>(side * side), false);
        std::int64_t missing = side * side;
        for (std::size_t i = 0; i < z.size() && missing > 0; ++i)
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                Point d = z[j] - z[i];
                if (std::abs(d.x) > radius || std::abs(d.y) > radius) continue;
                auto idx = static_cast<std::size_t>((d.y + radius) * side + (d.x + radius));
                if (!seen[idx]) {
                    seen[idx] = true;
                    if (--missing == 0) break;
                }
            }
        r.iterations = it;
        r.missing.clear();
        for (std::int64_t y = -radius; y <= radius; ++y)
            for (std::int64_t x = -radius; x <= radius; ++x)
                if (!seen[static_cast<std::size_t>((y + radius) * side + (x + radius))]) r.missing.push_back({x, y});
        std::sort(r.missing.begin(), r.missing.end());
        if (r.missing.empty() || it >= k_cap || z.size() * m.image(Letter{0}).size() > kMaxSteps) return r;
    }
}

std::string walks_svg(const std::vector<WalkPath>& walks, double unit_px) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};
    std::int64_t minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (const auto& w : walks)
        for (auto p : w) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    double margin = unit_px;
    double width = static_cast<double>(maxx - minx) * unit_px + 2 * margin;
    double height = static_cast<double>(maxy - miny) * unit_px + 2 * margin;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    for (std::size_t i = 0; i < walks.size(); ++i) {
        os << "<path fill=\"none\" stroke=\"" << kColors[i % 4] << "\" stroke-width=\"" << unit_px / 4
           << "\" d=\"";
        for (std::size_t j = 0; j < walks[i].size(); ++j) {
            auto p = walks[i][j];
            // SVG y grows downwards.
            os << (j ? " L" : "M") << static_cast<double>(p.x - minx) * unit_px + margin << " "
               << static_cast<double>(maxy - p.y) * unit_px + margin;
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string visit_map_pgm(const VisitMap& visits) {
    auto [lo, hi] = visits.bounds();
    std::uint64_t maxval = 1;
    for (const auto& [p, c] : visits.sorted()) maxval = std::max(maxval, c);
    std::ostringstream os;
    os << "P2\n" << hi.x - lo.x + 1 << " " << hi.y - lo.y + 1 << "\n" << maxval << "\n";
    for (std::int64_t y = hi.y; y >= lo.y; --y) {
        for (std::int64_t x = lo.x; x <= hi.x; ++x) os << (x > lo.x ? " " : "") << visits.count({x, y});
        os << "\n";
    }
    return os.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace froblang
