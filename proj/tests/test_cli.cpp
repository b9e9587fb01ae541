#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = froblang::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("image") {
    auto r = run({"image", "--language", "forbid:bb", "--weights", "7,3", "--bound", "60", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = r.report();
    CHECK(j["command"] == "image");
    CHECK(j["result"]["largest_non_member"] == 46);
    CHECK(j["result"]["backend"] == "sft-dp");

    auto tm = run({"image", "--language", "morphic:tm", "--weights", "2,3", "--bound", "100"}).report();
    CHECK(tm["result"]["complement"] == json::array({1}));

    auto full = run({"image", "--language", "full", "--weights", "1,1", "--bound", "10"}).report();
    CHECK(full["result"]["complement"].empty());

    auto csv = run({"image", "--weights", "2,3", "--bound", "3", "--format", "csv"});
    CHECK(csv.out == "m,member\n1,0\n2,1\n3,1\n");
}

TEST_CASE("frobenius") {
    auto gm = run({"frobenius", "--language", "forbid:bb", "--weights", "100,3"});
    CHECK(gm.code == 0);
    CHECK(gm.report()["result"]["frobenius"] == 9997);
    CHECK(gm.report()["result"]["certificate"]["run_start"] == 9998);
    CHECK(run({"frobenius", "--language", "full", "--weights", "100,3"}).report()["result"]["frobenius"] == 197);
    auto gcd = run({"frobenius", "--language", "forbid:bb", "--weights", "6,3"});
    CHECK(gcd.report()["result"]["kind"] == "infinite-complement");
    CHECK(gcd.report()["result"]["reason"] == "gcd");
    auto small = run({"frobenius", "--language", "forbid:bb", "--weights", "100,3", "--max-bound", "500"});
    CHECK(small.code == froblang::cli::kInconclusive);
}

TEST_CASE("exit codes for bad input") {
    auto bad = run({"image", "--language", "sturmian:(3-sqrt(5)", "--weights", "3,2"});
    CHECK(bad.code == froblang::cli::kUsageError);
    CHECK(bad.err.find("position") != std::string::npos);
    CHECK(run({"image", "--weights", "3"}).code == froblang::cli::kUsageError);
    CHECK(run({"image", "--weights", "0,3"}).code == froblang::cli::kUsageError);
    CHECK(run({"frobenius", "--language", "morphic:fib", "--weights", "3,2"}).code == froblang::cli::kUsageError);
    CHECK(run({"nonsense"}).code == froblang::cli::kUsageError);
    CHECK(run({"verify", "th99"}).code == froblang::cli::kUsageError);
    CHECK(run({}).code == froblang::cli::kUsageError);
}

TEST_CASE("verify sweeps") {
    auto th1 = run({"verify", "th1", "--range", "2..30"});
    CHECK(th1.code == 0);
    CHECK(th1.report()["result"]["failed"] == 0);
    CHECK(th1.report()["result"]["passed"].get<int>() > 250);

    auto triples = run({"verify", "triples"});
    CHECK(triples.code == 0);
    CHECK(triples.report()["result"]["passed"] == 2);

    auto lemma = run({"verify", "lemma-compl", "--alpha", "(3-1*sqrt(5))/2", "--weights", "3,2", "--n", "1..200"});
    CHECK(lemma.code == 0);
    CHECK(lemma.report()["result"]["passed"] == 200);

    for (const char* id : {"sylvester", "th5", "th6", "wythoff"}) {
        auto r = run({"verify", id});
        CHECK_MESSAGE(r.code == 0, id);
    }
    CHECK(run({"verify", "th2", "--bound", "2000"}).code == 0);
    CHECK(run({"verify", "th3", "--bound", "1000"}).code == 0);
    CHECK(run({"verify", "th4", "--bound", "100000", "--tol", "0.002"}).code == 0);
}

TEST_CASE("chains") {
    auto text = run({"chains", "--weights", "7,3", "--rows", "8", "--truncate", "56"});
    CHECK(text.code == 0);
    std::istringstream lines(text.out);
    std::string first;
    std::getline(lines, first);
    CHECK(first == "1\tA..#...A......A......A......A......A......A......A......A");
    auto j = run({"chains", "--weights", "7,3", "--rows", "8", "--format", "json"}).report();
    CHECK(j["result"]["last_residue_row"] == 6);
    CHECK(j["result"]["last_residue"] == 4);
    auto one = run({"chains", "--weights", "7,3", "--rows", "1", "--format", "json"}).report();
    CHECK(one["result"]["rows"].size() == 1);
    CHECK(one["result"]["last_residue_row"].is_null());
    auto svg = run({"chains", "--weights", "7,3", "--rows", "8", "--format", "svg"});
    CHECK(svg.out.rfind("<svg", 0) == 0);
}

TEST_CASE("beatty and triple") {
    auto b = run({"beatty", "--alpha", "(1+1*sqrt(5))/2", "--from", "1", "--to", "6"}).report();
    CHECK(b["result"]["terms"] == json::array({1, 3, 4, 6, 8, 9}));
    auto slow = run({"beatty", "--alpha", "(3-sqrt(5))/2", "--from", "0", "--to", "4", "--slow", "--format", "csv"});
    CHECK(slow.out == "n,term\n0,0\n1,0\n2,1\n3,1\n4,1\n");
    auto t = run({"triple", "--example", "ex2", "--terms", "6"}).report();
    CHECK(t["result"]["complement_terms"] == json::array({2, 9, 20, 27, 38, 49}));
    CHECK(t["result"]["confirmed"] == true);
}

TEST_CASE("plane commands") {
    auto svg_path = (std::filesystem::temp_directory_path() / "froblang_fig.svg").string();
    auto w = run({"walk", "--morphism", "folding5", "--iter", "4", "--svg", svg_path});
    CHECK(w.code == 0);
    CHECK(w.report()["result"]["steps_per_walk"] == 625);
    std::ifstream in(svg_path);
    std::string svg((std::istreambuf_iterator<char>(in)), {});
    CHECK(svg.find("</svg>") != std::string::npos);
    std::filesystem::remove(svg_path);

    auto d = run({"drift", "--morphism", "folding5"}).report();
    CHECK(d["result"]["drift"] == json::array({"0.000000000000000", "0.000000000000000"}));
    CHECK(d["result"]["exact_zero"] == true);

    CHECK(run({"perfect", "--morphism", "folding5", "--iter", "6", "--radius", "20"}).code == 0);
    CHECK(run({"perfect", "--morphism", "folding5", "--iter", "2", "--radius", "20"}).code == froblang::cli::kInconclusive);
    CHECK(run({"perfect", "--morphism", "abc,dcb,cda,bad", "--iter", "4"}).code == froblang::cli::kCheckFailed);

    CHECK(run({"onto", "--morphism", "folding5", "--radius", "10", "--iter", "6"}).code == 0);
    auto fib = run({"onto", "--morphism", "fib", "--radius", "3", "--iter", "10"});
    CHECK(fib.code == froblang::cli::kCheckFailed);
    CHECK(fib.report()["result"]["missing_count"].get<int>() > 20);

    auto c = run({"classify2d", "--sa", "0:1", "--sb", "1:0"}).report();
    CHECK(c["result"]["classification"] == "finite-complement");
    auto c2 = run({"classify2d", "--sa", "1:1", "--sb", "1:0", "--box", "40"}).report();
    CHECK(c2["result"]["classification"] == "infinite-complement");
    auto samples = c2["result"]["missing_in_box"];
    CHECK(samples[0]["missing"].get<int>() < samples[1]["missing"].get<int>());
    CHECK(samples[1]["missing"].get<int>() < samples[2]["missing"].get<int>());
}

TEST_CASE("reports are deterministic apart from timing") {
    auto strip = [](json j) {
        j.erase("timing_ms");
        return j.dump();
    };
    for (std::vector<std::string> args : {std::vector<std::string>{"image", "--language", "morphic:fib", "--weights", "3,2", "--bound", "500"},
                                          {"verify", "th5"},
                                          {"drift", "--morphism", "fib"},
                                          {"perfect", "--iter", "4"}}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(strip(a.report()) == strip(b.report()));
    }
}

TEST_CASE("bound cap from the environment") {
    setenv("FROBLANG_MAX_BOUND", "1000", 1);
    CHECK(run({"image", "--bound", "5000"}).code == froblang::cli::kUsageError);
    CHECK(run({"image", "--bound", "500"}).code == 0);
    // The default sieve limit is clamped, so the golden-mean (100,3) case stays open.
    CHECK(run({"frobenius", "--language", "forbid:bb", "--weights", "100,3"}).code == froblang::cli::kInconclusive);
    unsetenv("FROBLANG_MAX_BOUND");
    CHECK(run({"frobenius", "--language", "forbid:bb", "--weights", "100,3"}).code == 0);
}
