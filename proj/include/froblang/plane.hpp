// Two-dimensional embeddings: lattice walks driven by morphic words,
// letter frequencies and drift, paperfolding predicates, and box-restricted
// perfectness / surjectivity checks.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "froblang/words.hpp"

namespace froblang {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    /// Rotation by pi/2.
    Point rotated() const { return {-y, x}; }
    Point rotated(int quarter_turns) const;
    auto operator<=>(const Point&) const = default;
};

struct PointHash {
    std::size_t operator()(Point p) const {
        return std::hash<std::int64_t>{}(p.x * 0x9E3779B97F4A7C15LL ^ p.y);
    }
};

/// Letter -> Z x Z. Integer steps; no further constraints.
class PlaneWeighting {
public:
    explicit PlaneWeighting(std::vector<Point> steps);

    /// a,b,c,d -> (1,0),(0,1),(-1,0),(0,-1).
    static PlaneWeighting standard();
    /// "x1:y1,x2:y2,..."
    static PlaneWeighting parse(std::string_view text);

    std::size_t alphabet_size() const { return steps_.size(); }
    Point of(Letter l) const { return steps_.at(l.index); }
    const std::vector<Point>& steps() const { return steps_; }
    PlaneWeighting rotated(int quarter_turns) const;
    std::string str() const;

private:
    std::vector<Point> steps_;
};

using WalkPath = std::vector<Point>;

/// Z_0 = (0,0), Z_{n+1} = Z_n + S(x_n).
WalkPath walk(const Word& w, const PlaneWeighting& s);

/// Walks of m^k(a) under S rotated by 0, pi/2, pi, 3pi/2.
std::array<WalkPath, 4> four_walks(const Morphism& m, unsigned k, const PlaneWeighting& s);

enum class PlaneClass { FiniteComplement, InfiniteComplement };

std::string to_string(PlaneClass c);

/// N x N embeddings of two-letter languages: finite complement only for the
/// unit-vector pair. Coordinates must be non-negative.
PlaneClass classify_nn_embedding(Point sa, Point sb);

/// Some power of the incidence matrix is strictly positive.
bool is_primitive(const Morphism& m);

struct FrequencyVector {
    std::vector<double> freq;
    std::vector<std::string> exact;  // last iterate as "p/q"
    double error_bound = 0;
    unsigned iterations = 0;
};

/// Perron eigenvector of the incidence matrix, normalized to sum 1, by power
/// iteration on exact integers.
FrequencyVector letter_frequencies(const Morphism& m, double tol = 1e-12);

struct Drift {
    double x = 0;
    double y = 0;
    double error_bound = 0;  // per coordinate
    bool exact_zero = false;
    /// A nonzero drift forces an infinite complement.
    bool infinite_complement = false;
};

Drift drift(const Morphism& m, const PlaneWeighting& s, double tol = 1e-12);

struct PaperfoldingReport {
    bool commutation = false;  // sigma(tau(theta(x))) = theta(sigma(x)) for all x
    bool literal = false;      // sigma(tau(theta(x))) = theta(x) for all x
    bool alternation = false;  // {a,c} and {b,d} alternate in theta(a)
    bool folds = false;        // |theta(a)| >= 2
    bool paperfolding() const { return commutation && alternation && folds; }
};

PaperfoldingReport is_paperfolding(const Morphism& m);

struct SymmetryReport {
    bool palindrome = false;            // theta(a) reads the same backwards
    bool commutes_with_rotation = false; // sigma theta = theta sigma
    bool literal = false;               // sigma theta = theta
    bool symmetric() const { return palindrome; }
};

SymmetryReport is_symmetric(const Morphism& m);

/// Visit counts aggregated over walks.
class VisitMap {
public:
    void add(const WalkPath& path);
    std::uint64_t count(Point p) const;
    std::uint64_t total() const { return total_; }
    std::size_t distinct() const { return counts_.size(); }
    /// (min corner, max corner).
    std::pair<Point, Point> bounds() const;
    /// Entries sorted by point.
    std::vector<std::pair<Point, std::uint64_t>> sorted() const;

private:
    std::unordered_map<Point, std::uint64_t, PointHash> counts_;
    std::uint64_t total_ = 0;
};

struct PerfectnessReport {
    enum class Status { Perfect, Violations, Inconclusive };
    Status status = Status::Inconclusive;
    std::int64_t radius = 0;
    std::int64_t safe_radius = -1;       // largest box with exact counts everywhere
    double explored_radius = 0;          // half-width of a box holding the visits
    std::uint64_t total_visits = 0;
    std::vector<std::pair<Point, std::uint64_t>> violations;     // over-visited, anywhere
    std::vector<std::pair<Point, std::uint64_t>> under_visited;  // inside the box
};

std::string to_string(PerfectnessReport::Status s);

/// floor(sqrt(2 L^k) / 4) for L = |m(a)|: a quarter of the ideal covering radius.
std::int64_t default_perfectness_radius(const Morphism& m, unsigned k);

/// Every point in the box |x|,|y| <= R visited exactly twice (origin four
/// times) by the four walks of m^k(a) under the standard weighting.
PerfectnessReport perfectness_check(const Morphism& m, unsigned k, std::int64_t radius);

struct OntoReport {
    std::vector<Point> missing;  // box points not attained, sorted
    unsigned iterations = 0;     // k actually used
    std::int64_t radius = 0;
};

/// Box points of the form Z_j - Z_i (i < j) over the walk of m^k(a); k is
/// raised until nothing is missing or k_cap is reached.
OntoReport onto_check(const Morphism& m, const PlaneWeighting& s, std::int64_t radius, unsigned k,
                      unsigned k_cap = 0);

/// SVG with one path element per walk, four stroke colors.
std::string walks_svg(const std::vector<WalkPath>& walks, double unit_px = 4.0);

/// Plain PGM of visit counts over the bounding box (row 0 = top = max y).
std::string visit_map_pgm(const VisitMap& visits);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace froblang
