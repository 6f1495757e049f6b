#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace opendicke;
using namespace opendicke::cli;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("opendicke_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("command defaults")
{
    const RunConfig c = defaults(Command::fig2);
    CHECK(c.spec.delta == 0.1);
    CHECK(c.spec.gamma_L == 0.1);
    CHECK(c.spec.gamma_R == 0.1);
    CHECK(c.spec.epsilon == 0.0);
    CHECK(c.spec.dicke.omega == 1.0);
    CHECK(c.spec.dicke.omega0 == 1.0);
    CHECK(c.spec.g == 0.1);
    CHECK(c.Ns == std::vector<int>{4, 8, 16, 20, 24});
    CHECK_NOTHROW(c.validate());

    const RunConfig f4 = defaults(Command::fig4);
    CHECK(f4.Ns == std::vector<int>{6});
    CHECK(f4.spec.gamma_b == 0.1);
    CHECK(f4.spec.dicke.lambda == 0.5);
    CHECK(f4.n_max == 13);
    CHECK(defaults(Command::fig3).Ns == std::vector<int>{4, 8, 16, 20, 24, 40, 60});
}

TEST_CASE("invalid configurations name the key")
{
    RunConfig c = defaults(Command::sweep);
    c.grid = {0.5, 0.1, 0.01};
    CHECK_THROWS_WITH(c.validate(), "lambda_grid: min must be < max");

    c = defaults(Command::sweep);
    c.spec.gamma_b = -0.1;
    CHECK_THROWS_WITH(c.validate(), "gamma_b: must be >= 0");

    CHECK_THROWS_WITH(apply_json(defaults(Command::sweep), {{"gama_b", 0.1}}), "gama_b: unknown key");
    CHECK_THROWS_WITH(apply_json(defaults(Command::sweep), {{"tolerances", {{"eigen", 1}}}}),
                      "tolerances.eigen: unknown key");
    CHECK_THROWS_AS(apply_json(defaults(Command::sweep), {{"mode", "quantum"}}), ConfigError);
    CHECK_THROWS_AS(parse_grid("0.1:0.2", "lambda_grid"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0.1:x:0.2", "lambda_grid"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("4,a", "N"), ConfigError);

    c = defaults(Command::sweep);
    c.mode = criticality::SweepMode::normal_phase;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("JSON round trip")
{
    RunConfig c = defaults(Command::fig3);
    c = apply_json(c, {{"N", {4, 8, 16}}, {"gamma_b", 0.013}, {"grid", {{"min", 0.31}, {"max", 0.77}, {"step", 0.003}}},
                       {"tolerances", {{"cutoff_rel_tol", 1e-5}}}, {"n_max", 33}, {"format", "json"}});
    c.validate();
    CHECK(from_json(to_json(c)) == c);
    CHECK(from_json(nlohmann::json::parse(to_json(c).dump())) == c);
}

TEST_CASE("sweep files are deterministic and round-trip")
{
    const fs::path out = scratch("sweep");
    RunConfig c = apply_json(defaults(Command::sweep), {{"N", {2}}, {"n_max", 8},
                                                         {"grid", {{"min", 0.0}, {"max", 0.6}, {"step", 0.1}}},
                                                         {"out", out.string()}});
    std::ostringstream log, err;
    REQUIRE(run(c, log, err) == 0);
    const fs::path file = out / "sweep.csv";
    REQUIRE(fs::exists(file));
    const std::string first = slurp(file);
    CHECK(read_header(file.string()) == c);
    REQUIRE(run(c, log, err) == 0);
    CHECK(slurp(file) == first);

    // 17 significant digits and the decoupled current on the first row.
    CHECK(first.find("0,0,0.030769230769230767,") != std::string::npos);

    c.format = Format::json;
    REQUIRE(run(c, log, err) == 0);
    CHECK(read_header((out / "sweep.json").string()) == c);
    const auto doc = nlohmann::json::parse(slurp(out / "sweep.json"));
    CHECK(doc["rows"].size() == 7);
    fs::remove_all(out);
}

TEST_CASE("fig2 emits current and derivative files per curve")
{
    const fs::path out = scratch("fig2");
    RunConfig c = apply_json(defaults(Command::fig2), {{"N", {2, 3}}, {"inf", true}, {"n_max", 10},
                                                        {"grid", {{"min", 0.0}, {"max", 0.8}, {"step", 0.05}}},
                                                        {"out", out.string()}});
    std::ostringstream log, err;
    REQUIRE(run(c, log, err) == 0);
    for (const char* stem : {"N2", "N3", "Ninf"}) {
        CHECK(fs::exists(out / (std::string("fig2_current_") + stem + ".csv")));
        CHECK(fs::exists(out / (std::string("fig2_derivative_") + stem + ".csv")));
    }
    CHECK(std::distance(fs::directory_iterator(out), fs::directory_iterator()) == 6);
    fs::remove_all(out);
}

TEST_CASE("spectrum command writes spectrum and histogram")
{
    const fs::path out = scratch("spectrum");
    RunConfig c = apply_json(defaults(Command::fig4), {{"N", {2}}, {"n_max", 4}, {"out", out.string()}});
    std::ostringstream log, err;
    REQUIRE(run(c, log, err) == 0);
    CHECK(fs::exists(out / "fig4_spectrum.csv"));
    CHECK(fs::exists(out / "fig4_histogram.csv"));
    CHECK(read_header((out / "fig4_histogram.csv").string()) == c);
    fs::remove_all(out);
}

TEST_CASE("failed runs leave no partial output")
{
    const fs::path out = scratch("fail");
    // The normal-phase curve needs grid points below lambda_c.
    RunConfig c = apply_json(defaults(Command::fig2), {{"N", {2}}, {"inf", true}, {"n_max", 6},
                                                        {"grid", {{"min", 0.6}, {"max", 0.9}, {"step", 0.1}}},
                                                        {"out", out.string()}});
    std::ostringstream log, err;
    CHECK(run(c, log, err) != 0);
    CHECK(!err.str().empty());
    CHECK((!fs::exists(out) || fs::is_empty(out)));

    RunConfig bad = defaults(Command::sweep);
    bad.spec.gamma_b = -1.0;
    std::ostringstream err2;
    CHECK(run(bad, log, err2) == 2);
    CHECK(err2.str().find("gamma_b") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("oracle command")
{
    std::ostringstream log, err;
    CHECK(run(defaults(Command::oracle), log, err) == 0);
    CHECK(log.str().find("FAIL") == std::string::npos);
    CHECK(log.str().find("PASS") != std::string::npos);
}

TEST_CASE("write failure removes files already written")
{
    const fs::path out = scratch("partial");
    RunConfig c = apply_json(defaults(Command::sweep), {{"out", out.string()}});
    const Table ok{"first", nlohmann::json::object(), {"x"}, {{1.0}}};
    const Table broken{"missing_dir/second", nlohmann::json::object(), {"x"}, {{2.0}}};
    CHECK_THROWS(write_tables(c, {ok, broken}));
    CHECK(!fs::exists(out / "first.csv"));
    fs::remove_all(out);
}
