#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "wlab/lab/experiments.hpp"
#include "wlab/lab/problem_io.hpp"
#include "wlab/lab/svg.hpp"
#include "wlab/measure_io.hpp"

using namespace wlab;
using namespace wlab::lab;

TEST_CASE("toml subset parser") {
    auto t = Toml::parse(R"(# experiment configuration
name = "demo"   # trailing comment
count = 12
ratio = 0.5
flag = true
sweep = [2, 4, 8]
words = ["a", "b"]

[thresholds]
slope_lo = -1.1
)");
    CHECK(t.text("name") == "demo");
    CHECK(t.integer("count") == 12);
    CHECK(t.number("ratio") == doctest::Approx(0.5));
    CHECK(t.boolean_or("flag", false));
    CHECK(t.numbers("sweep") == std::vector<double>{2, 4, 8});
    CHECK(t.number("thresholds.slope_lo") == doctest::Approx(-1.1));
    CHECK(t.number_or("missing", 7.0) == doctest::Approx(7.0));
    CHECK_THROWS_AS(t.number("name"), invalid_input);
    CHECK_THROWS_AS(Toml::parse("key"), invalid_input);
    CHECK_THROWS_AS(Toml::parse("key = "), invalid_input);
    CHECK_THROWS_AS(Toml::parse("key = [1, 2"), invalid_input);
    CHECK_THROWS_AS(Toml::parse("key = nonsense"), invalid_input);
}

TEST_CASE("config defaults, overrides and validation") {
    auto c = ExperimentConfig::defaults_for("quantization-rates");
    CHECK(c.dims == std::vector<std::size_t>{1, 2, 3});
    c.validate();

    auto t = Toml::parse("dims = [1]\nsweep_d1 = [2, 4, 8]\natoms_d1 = 64\nseeds = [9]\n"
                         "[thresholds]\nslope_d1_lo = -1.2\n");
    c.apply(t);
    CHECK(c.dims == std::vector<std::size_t>{1});
    CHECK(c.atoms_d1 == 64);
    CHECK(c.seeds == std::vector<std::uint64_t>{9});
    CHECK(c.threshold("slope_d1_lo") == doctest::Approx(-1.2));
    c.validate();

    c.sweep_d1 = {3};  // 64 not divisible by 3
    CHECK_THROWS_AS(c.validate(), config_error);
    c.sweep_d1 = {};
    CHECK_THROWS_AS(c.validate(), config_error);
    c = ExperimentConfig::defaults_for("quantization-rates");
    c.seeds = {};
    CHECK_THROWS_AS(c.validate(), config_error);

    CHECK_THROWS_AS(ExperimentConfig::defaults_for("unknown"), config_error);

    // config echo is parseable and preserves the experiment name
    auto echo = Toml::parse(ExperimentConfig::defaults_for("example-gap").to_toml());
    CHECK(echo.text("experiment") == "example-gap");
}

TEST_CASE("data table round trip") {
    DataTable t;
    t.columns = {"N", "error"};
    t.rows = {{2, 0.5}, {4, 0.25}};
    auto csv = t.to_csv();
    auto back = DataTable::from_csv(csv);
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
    CHECK(back.column("error") == 1);
    CHECK_THROWS_AS(back.column("zzz"), invalid_input);
    CHECK_THROWS_AS(DataTable::from_csv("a,b\n1\n"), invalid_input);
}

TEST_CASE("heat projection experiment: deterministic and exact") {
    auto config = ExperimentConfig::defaults_for("heat-projection");
    config.trials = 40;
    config.mc_samples = 16;
    config.validate();
    auto report = run_heat_projection(config);
    CHECK(report.pass());
    CHECK(report.table.rows.size() == 40);

    auto rerun = run_heat_projection(config);
    CHECK(report.table.to_csv() == rerun.table.to_csv());  // byte-identical rows

    // report json round trip preserves everything the verdicts need
    auto back = ExperimentReport::from_json(report.to_json());
    auto fresh = recompute_verdicts(back.experiment, back.table, back.thresholds);
    REQUIRE(fresh.size() == report.verdicts.size());
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        CHECK(fresh[i].name == report.verdicts[i].name);
        CHECK(fresh[i].pass == report.verdicts[i].pass);
    }
}

TEST_CASE("quantization rates experiment on a reduced grid") {
    auto config = ExperimentConfig::defaults_for("quantization-rates");
    config.dims = {1};
    config.sweep_d1 = {2, 4, 8, 16, 32};
    config.atoms_d1 = 1152;
    config.restarts = 2;
    config.validate();
    auto report = run_quantization_rates(config);
    CHECK(report.pass());
    CHECK(report.table.to_csv() == run_quantization_rates(config).table.to_csv());
    // d=1 errors track the analytic value, so the fitted slope is ~ -1
    bool saw_slope = false;
    for (const auto& v : report.verdicts)
        if (v.name == "slope_d1") {
            saw_slope = true;
            CHECK(v.value == doctest::Approx(-1.0).epsilon(0.05));
        }
    CHECK(saw_slope);
}

TEST_CASE("mfc gap vanishes when N equals the reference count") {
    auto config = ExperimentConfig::defaults_for("mfc-convergence");
    config.sweep_n = {4, 8};
    config.m_ref = 8;
    config.atoms = 16;
    config.steps = 6;
    config.max_opt_iters = 80;
    config.validate();
    auto report = run_mfc_convergence(config);
    // at N = m_ref the replication is the identity, so both solves coincide
    auto gaps = report.table.column_values("gap");
    CHECK(gaps.back() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fd problem definitions load from TOML") {
    auto prob = fd_problem_from_toml(Toml::parse(R"(
hamiltonian = "nonconvex-sin"
sin_amplitude = 0.25
terminal = "constant"
constant_value = 2.0
particles = 2
kappa = 0.1
[grid]
radius = 1.0
spacing = 0.1
)"));
    CHECK(prob.hamiltonian.name == "nonconvex-sin");
    CHECK(prob.terminal.name == "constant");
    CHECK(prob.particles == 2);
    CHECK(prob.grid.spacing == doctest::Approx(0.1));
    auto v = hjb::solve_fd(prob.hamiltonian, prob.terminal, prob.particles, prob.dim, prob.kappa,
                           prob.horizon, prob.grid);
    for (double val : v.slice(v.slices() - 1)) CHECK(val == doctest::Approx(2.0).epsilon(1e-12));
    auto csv = v.to_csv(10);
    CHECK(csv.rfind("t,x0,x1,value\n", 0) == 0);
    CHECK_THROWS_AS(fd_problem_from_toml(Toml::parse("hamiltonian = \"nope\"\n")), invalid_input);
}

TEST_CASE("persist and verify round trip") {
    auto config = ExperimentConfig::defaults_for("heat-projection");
    config.trials = 10;
    config.mc_samples = 8;
    config.plot = false;
    config.out_dir = (std::filesystem::temp_directory_path() / "wlab_test_out").string();
    auto report = run_heat_projection(config);
    auto dir = persist_run(config, report);
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "rows.csv"));
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "config.toml"));
    auto loaded = ExperimentReport::from_json(
        read_text_file((std::filesystem::path(dir) / "report.json").string()));
    CHECK(loaded.pass());
    std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("svg plot emits a document") {
    DataTable t;
    t.columns = {"N", "error"};
    t.rows = {{2, 0.5}, {4, 0.26}, {8, 0.124}};
    auto svg = svg_loglog(t, "N", "error", "demo");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    DataTable bad;
    bad.columns = {"N", "error"};
    bad.rows = {{2, -0.5}};
    CHECK_THROWS_AS(svg_loglog(bad, "N", "error", "demo"), invalid_input);
}

TEST_CASE("verdicts recompute as a pure function of rows") {
    DataTable t;
    t.columns = {"trial", "t", "kappa", "u_value", "vn_value", "abs_diff"};
    t.rows = {{0, 0.5, 0.1, 1.0, 1.0, 0.0}, {1, 0.2, 0.3, 2.0, 2.0, 5e-15}};
    std::map<std::string, double> th{{"max_abs_diff", 1e-14}};
    auto verdicts = recompute_verdicts("heat-projection", t, th);
    REQUIRE(verdicts.size() == 1);
    CHECK(verdicts[0].pass);
    t.rows.push_back({2, 0.1, 0.2, 1.0, 1.5, 0.5});
    CHECK_FALSE(recompute_verdicts("heat-projection", t, th)[0].pass);
    CHECK_THROWS_AS(recompute_verdicts("nope", t, th), invalid_input);
}
