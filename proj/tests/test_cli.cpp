#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "caterpack/cli.hpp"

using namespace caterpack;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    return path;
}

} // namespace

TEST_CASE("cli gen") {
    const auto r = run({"gen", "--delta", "4", "--sigma", "4"});
    REQUIRE(r.code == 0);
    const ojson j = ojson::parse(r.out);
    CHECK(j["n"] == 14);
    CHECK(j["spine"].size() == 4);

    const auto center = run({"gen", "--center", "--n", "10", "--h", "3"});
    REQUIRE(center.code == 0);
    const ojson cj = ojson::parse(center.out);
    CHECK(cj["leaves"][0].size() == 6);

    CHECK(run({"gen", "--delta", "1", "--sigma", "3"}).code == 2);
    CHECK(run({"gen"}).code == 2);
}

TEST_CASE("cli pack feeds cli verify") {
    const auto packed = run({"pack", "--scheme", "place", "--delta", "3", "--sigma", "2", "--h", "3"});
    REQUIRE(packed.code == 0);
    const ojson pj = ojson::parse(packed.out);
    CHECK(pj["report"]["k"] == 4);

    const auto path = write_temp("caterpack_cli_layout.json", pj["layout"].dump());
    const auto verified = run({"verify", path.string(), "--against-bounds"});
    REQUIRE(verified.code == 0);
    const ojson vj = ojson::parse(verified.out);
    CHECK(vj["k"] == pj["report"]["k"]);
    CHECK(vj["spanning"] == true);
    CHECK(vj["bounds"]["measured_k"] == 4);
    CHECK(vj["bounds"]["placement_bound"] == 36);

    const auto swept = run({"verify", path.string(), "--method", "sweep"});
    REQUIRE(swept.code == 0);
    CHECK(ojson::parse(swept.out)["k"] == 4);
}

TEST_CASE("cli pack schemes and exit codes") {
    SECTION("the worked 34-point contrast") {
        const auto mixed = run({"pack", "--scheme", "mixed", "--deltas", "17,9,9", "--n", "34"});
        CHECK(mixed.code == 3);
        CHECK(mixed.err.find("sum of ceil(delta_i/2)") != std::string::npos);
        const auto divisible = run({"pack", "--scheme", "divisible", "--deltas", "17,9,9", "--n", "34"});
        CHECK(divisible.code == 0);
        const ojson dj = ojson::parse(divisible.out);
        CHECK(dj["layout"]["drawings"].size() == 3);
        CHECK(dj["report"]["multi_edges"].empty());
    }
    SECTION("three 2-planar copies") {
        const auto ok = run({"pack", "--scheme", "three2planar", "--delta", "5", "--sigma", "3"});
        REQUIRE(ok.code == 0);
        CHECK(ojson::parse(ok.out)["report"]["k"] <= 2);
        CHECK(run({"pack", "--scheme", "three2planar", "--delta", "7", "--sigma", "2"}).code == 3);
        CHECK(run({"pack", "--scheme", "three2planar", "--delta", "7", "--sigma", "8"}).code == 5);
    }
    SECTION("halving") {
        const auto r = run({"pack", "--scheme", "place", "--delta", "4", "--sigma", "4", "--h", "2",
                            "--halve"});
        REQUIRE(r.code == 0);
        const ojson j = ojson::parse(r.out);
        bool saw_outer = false;
        for (const auto& d : j["layout"]["drawings"])
            for (const auto& e : d["edges"])
                if (e[2] == "outer") saw_outer = true;
        CHECK(saw_outer);
    }
    SECTION("infeasible placement names its condition") {
        const auto r = run({"pack", "--scheme", "place", "--delta", "3", "--sigma", "3", "--h", "4"});
        CHECK(r.code == 3);
        CHECK(r.err.find("n >= 2h") != std::string::npos);
    }
    SECTION("usage problems") {
        CHECK(run({"pack", "--scheme", "place"}).code == 2);
        CHECK(run({"pack", "--scheme", "nope", "--delta", "3", "--sigma", "2", "--h", "1"}).code == 2);
    }
}

TEST_CASE("cli verify flags broken layouts") {
    const std::string dup = R"({"n": 6, "drawings": [
        {"n": 6, "start": 0, "edges": [[0, 3, "inner"], [3, 0, "outer"]]}
    ]})";
    const auto path = write_temp("caterpack_cli_dup.json", dup);
    const auto r = run({"verify", path.string()});
    CHECK(r.code == 4);
    CHECK(ojson::parse(r.out)["multi_edges"].size() == 1);

    SECTION("missing file") {
        CHECK(run({"verify", "/nonexistent/caterpack.json"}).code == 2);
    }
    SECTION("non-spanning drawings fail verification") {
        const std::string sparse = R"({"n": 5, "drawings": [
            {"n": 5, "start": 0, "edges": [[0, 2, "inner"]]}
        ]})";
        const auto sp = write_temp("caterpack_cli_sparse.json", sparse);
        const auto rr = run({"verify", sp.string()});
        CHECK(rr.code == 4);
        CHECK(ojson::parse(rr.out)["spanning"] == false);
    }
}

TEST_CASE("cli render") {
    const auto packed = run({"pack", "--scheme", "place", "--delta", "3", "--sigma", "2", "--h", "2"});
    REQUIRE(packed.code == 0);
    const auto path =
        write_temp("caterpack_cli_render.json", ojson::parse(packed.out)["layout"].dump());
    const auto r = run({"render", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("<svg", 0) == 0);
    const auto bad = write_temp("caterpack_cli_bad.json", "{}");
    CHECK(run({"render", bad.string()}).code == 2);
}

TEST_CASE("cli bounds") {
    const auto r = run({"bounds", "--n", "34", "--deltas", "17,9,9"});
    REQUIRE(r.code == 0);
    const ojson j = ojson::parse(r.out);
    CHECK(j["pair_bound"] == 60);
    CHECK(j["mixed_bound"] == 307);
    CHECK(j["small_h_lower_bound"] == 2);
    CHECK(j["lower_bound_trees"]["num"] == 45);

    const auto single = run({"bounds", "--n", "14", "--delta", "5", "--h", "3", "--format", "table"});
    REQUIRE(single.code == 0);
    CHECK(single.out.find("placement_bound") != std::string::npos);
    CHECK(single.out.find("note:") != std::string::npos);

    CHECK(run({"bounds", "--n", "14"}).code == 2);
    CHECK(run({"bounds", "--n", "14", "--deltas", "3,5"}).code == 2);
}

TEST_CASE("cli oracle") {
    const auto missing = run({"oracle", "--delta", "3", "--sigma", "3", "--copies", "4"});
    REQUIRE(missing.code == 0);
    CHECK(ojson::parse(missing.out)["verdict"] == "impossible");

    const auto found = run({"oracle", "--delta", "3", "--sigma", "2", "--copies", "3"});
    REQUIRE(found.code == 0);
    const ojson fj = ojson::parse(found.out);
    CHECK(fj["verdict"] == "exists");
    CHECK(fj["certificate"].size() == 3);

    const auto cut = run({"oracle", "--delta", "4", "--sigma", "4", "--copies", "3", "--budget", "10"});
    CHECK(cut.code == 5);
    CHECK(ojson::parse(cut.out)["verdict"] == "budget-exhausted");

    const auto het = run({"oracle", "--deltas", "5,3", "--n", "14"});
    REQUIRE(het.code == 0);
    CHECK(ojson::parse(het.out)["verdict"] == "exists");

    const auto best = run({"oracle", "--delta", "3", "--sigma", "2", "--copies", "2", "--min-k"});
    REQUIRE(best.code == 0);
    const ojson bj = ojson::parse(best.out);
    CHECK(bj["k"] == 3);
    CHECK(bj["offsets"] == ojson::array({0, 1}));

    CHECK(run({"oracle", "--deltas", "5,3"}).code == 2);
}

TEST_CASE("cli global options") {
    const auto seeded =
        run({"pack", "--scheme", "place", "--delta", "3", "--sigma", "2", "--h", "1", "--seed", "99"});
    REQUIRE(seeded.code == 0);
    CHECK(ojson::parse(seeded.out)["seed"] == 99);

    const auto table = run({"pack", "--scheme", "place", "--delta", "3", "--sigma", "2", "--h", "2",
                            "--format", "table"});
    REQUIRE(table.code == 0);
    CHECK(table.out.find("k = ") != std::string::npos);
    CHECK(table.out.rfind("{", 0) != 0);

    const auto out_path = std::filesystem::temp_directory_path() / "caterpack_cli_out.json";
    std::filesystem::remove(out_path);
    const auto filed = run({"gen", "--delta", "3", "--sigma", "2", "--out", out_path.string()});
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(out_path);
    REQUIRE(f.good());
    ojson j;
    f >> j;
    CHECK(j["n"] == 6);

    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"pack", "--scheme", "place", "--delta", "3", "--sigma", "2", "--h", "2",
               "--format", "yaml"}).code == 2);
}
