#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "percolab/errors.hpp"
#include "percolab/io.hpp"
#include "percolab/verification.hpp"

using namespace percolab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("percolab_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

std::string body(const fs::path& p) { return read_file(p.string()); }

// Column list documented for a file pattern in docs/schemas.md.
std::string documented_columns(const std::string& file) {
    std::istringstream in(read_file(std::string(PERCOLAB_DOCS) + "/schemas.md"));
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("| `" + file + "`", 0) != 0) continue;
        const auto end = line.rfind('`');
        const auto start = line.rfind('`', end - 1);
        return line.substr(start + 1, end - start - 1);
    }
    return "";
}

#ifdef PERCOLAB_CLI
int cli(const std::string& args) {
    const std::string cmd = std::string(PERCOLAB_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("run config round trip and validation") {
    RunConfig c;
    c.alpha = 0.85;
    c.n_grid = {10, 20};
    c.seed = 99;
    const RunConfig back = RunConfig::parse(c.to_text());
    CHECK(back.to_text() == c.to_text());
    CHECK(back.digest() == c.digest());
    RunConfig other = c;
    other.seed = 100;
    CHECK(other.digest() != c.digest());
    CHECK_THROWS_WITH_AS(RunConfig::parse("samples=0\n").validate(), doctest::Contains("samples"), ValidationError);
    CHECK_THROWS_WITH_AS(RunConfig::parse("alpha=0.5\n").validate(), doctest::Contains("alpha"), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("colour=blue\n"), ValidationError);
    CHECK(RunConfig::parse("# comment\n\nseed=5\n").seed == 5);
}

TEST_CASE("tree and path serialization") {
    TwoTypeTree t;
    const auto w = t.add_child(t.add_root());
    t.add_child(w);
    t.add_child(w);
    t.finalize();
    const TwoTypeTree back = parse_tree(serialize_tree(t));
    CHECK(serialize_tree(back) == serialize_tree(t));
    const LatticePath p{{1, 2, 1, -1}, PathKind::peeling};
    CHECK(parse_path(serialize_path(p)).z == p.z);
    CHECK(parse_path(serialize_path(p)).kind == p.kind);
}

TEST_CASE("verification plumbing") {
    CHECK(suite_criteria("oracle") == std::vector<std::string>{"A1", "A2", "A5", "A9"});
    CHECK_THROWS_AS(suite_criteria("nightly"), ValidationError);
    VerifyOptions o;
    o.scale = 0.0;
    CHECK_THROWS_AS(run_criterion("A3", o), DomainError);
    o.scale = 1.0;
    const auto r = run_criterion("A9", o);
    CHECK(r.passed());
    const auto j = nlohmann::json::parse(report_json("unit", {r}));
    CHECK(j["criteria"][0]["id"] == "A9");
    for (const char* key : {"name", "value", "tolerance", "passed"}) CHECK(j["criteria"][0]["checks"][0].contains(key));
}

TEST_CASE("documented schemas") {
    CHECK(documented_columns("excursion_n<N>.csv") == "sample_id,tau,Z_tau,Z_tau_minus_1,gamma_max,n_subexcursions");
    CHECK(documented_columns("clusters_n<N>.csv") == "sample_id,tau,size,diameter,root_loop_size,gamma_max");
    CHECK(documented_columns("walk_n<N>.csv") == "trace_id,t,displacement");
    CHECK(documented_columns("tails_<what>.csv") == "x,empirical_survival");
}

#ifdef PERCOLAB_CLI
TEST_CASE("command line: outputs, determinism and exit codes") {
    const fs::path a = scratch("a"), b = scratch("b"), c = scratch("c");
    const std::string common = " --set n_grid=20,40 --set samples=30 --set window=8 ";
    REQUIRE(cli("--out " + (a / "nested").string() + " --seed 3" + common + "sample --what excursion") == 0);
    REQUIRE(cli("--out " + b.string() + " --seed 3" + common + "sample --what excursion") == 0);
    REQUIRE(cli("--out " + c.string() + " --seed 4" + common + "sample --what excursion") == 0);
    const fs::path fa = a / "nested" / "excursion_n20.csv";
    CHECK(fs::exists(fa));
    CHECK(body(fa) == body(b / "excursion_n20.csv"));
    CHECK(body(fa) != body(c / "excursion_n20.csv"));
    CHECK(first_line(fa) == documented_columns("excursion_n<N>.csv"));
    CHECK(first_line(c / "excursion_n40.csv") == first_line(fa));
    std::ifstream rows(fa);
    std::string line;
    std::getline(rows, line);
    std::getline(rows, line);
    CHECK(line.rfind("3-20-0,", 0) == 0);

    const auto manifest = nlohmann::json::parse(body(b / "manifest.json"));
    CHECK(manifest["exit_code"] == 0);
    CHECK(manifest["tasks"].size() == 2);
    CHECK(manifest["config_digest"] == RunConfig::parse(manifest["config"].get<std::string>()).digest());

    REQUIRE(cli("--out " + a.string() + " --seed 3" + common + "sample --what peeling") == 0);
    CHECK(first_line(a / "peeling_n20.csv") == documented_columns("peeling_n<N>.csv"));
    REQUIRE(cli("--out " + a.string() + " --set samples=20000 tails --what tau --censor 2000") == 0);
    CHECK(first_line(a / "tails_tau.csv") == documented_columns("tails_<what>.csv"));

    CHECK(cli("--out " + a.string() + " verify --suite nightly") == 2);
    CHECK(cli("--out " + a.string() + " verify --suite statistical --scale 0") == 2);
    CHECK(cli("--set alpha=2 constants") == 2);
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("--out " + a.string() + " --set step_cap=5 --set n_grid=1000 --set samples=5 sample --what excursion") == 3);
    const auto capped = nlohmann::json::parse(body(a / "manifest.json"));
    CHECK(capped["tasks"][0]["status"] == "cap_exceeded");
}

TEST_CASE("command line: crt and ghp") {
    const fs::path d = scratch("crt");
    REQUIRE(cli("--out " + d.string() + " --set crt_points=5 --set mesh_divisions=1024 crt --zeta 2") == 0);
    const auto space = parse_space(body(d / "crt.space"));
    CHECK(space.n == 6);
    REQUIRE(cli("--out " + d.string() + " ghp --exact " + (d / "crt.space").string() + " " + (d / "crt.space").string()) == 0);
    const auto j = nlohmann::json::parse(body(d / "ghp.json"));
    CHECK(j["gh_upper"] == 0.0);
    CHECK(j.contains("correspondence_size"));
}
#endif
