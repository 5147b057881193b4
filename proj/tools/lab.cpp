// Experiment harness for the quantization / particle-HJB laboratory.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 configuration or
// input error.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "wlab/errors.hpp"
#include "wlab/lab/experiments.hpp"
#include "wlab/lab/problem_io.hpp"
#include "wlab/lab/svg.hpp"
#include "wlab/measure_io.hpp"
#include "wlab/prob_io.hpp"
#include "wlab/quantize.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool plot = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "TOML configuration file");
    cmd->add_option("--out", flags.out_dir, "output directory (default: out)");
    auto* seed_opt = cmd->add_option("--seed", flags.seed, "override the seed list with one seed");
    cmd->add_flag("--plot", flags.plot, "emit plot.svg next to rows.csv");
    cmd->callback([seed_opt, &flags] { flags.seed_set = seed_opt->count() > 0; });
}

int run_one(const std::string& experiment, const CommonFlags& flags) {
    auto config = wlab::lab::ExperimentConfig::load(experiment, flags.config_path);
    if (flags.seed_set) config.seeds = {flags.seed};
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (flags.plot) config.plot = true;
    config.validate();

    auto report = wlab::lab::run_experiment(config);
    std::string dir = wlab::lab::persist_run(config, report);

    for (const auto& v : report.verdicts)
        std::printf("[%s] %s = %.6g %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), v.value,
                    v.detail.c_str());
    std::printf("report: %s\n", (dir + "/report.json").c_str());
    return report.pass() ? 0 : 1;
}

int verify(const std::string& path) {
    auto report = wlab::lab::ExperimentReport::from_json(wlab::read_text_file(path));
    auto fresh = wlab::lab::recompute_verdicts(report.experiment, report.table, report.thresholds);
    bool consistent = fresh.size() == report.verdicts.size();
    for (std::size_t i = 0; consistent && i < fresh.size(); ++i)
        consistent = fresh[i].name == report.verdicts[i].name &&
                     fresh[i].pass == report.verdicts[i].pass;
    if (!consistent) {
        std::printf("verify: stored verdicts do not match the stored rows\n");
        return 1;
    }
    bool pass = true;
    for (const auto& v : fresh) {
        std::printf("[%s] %s = %.6g\n", v.pass ? "PASS" : "FAIL", v.name.c_str(), v.value);
        pass = pass && v.pass;
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lab: equal-mass quantization and N-particle HJB experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> experiments = {
        "quantization-rates", "simultaneous-tradeoff", "example-gap", "mfc-convergence",
        "heat-projection"};
    std::map<std::string, CommonFlags> flags;
    for (const auto& name : experiments) {
        auto* cmd = app.add_subcommand(name, "run the " + name + " experiment");
        add_common(cmd, flags[name]);
    }

    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify", "re-derive a report's verdicts from its rows");
    verify_cmd->add_option("report", verify_path, "path to report.json")->required();

    std::string plot_csv, plot_out = "plot.svg", plot_x = "N", plot_y = "error";
    auto* plot_cmd = app.add_subcommand("plot", "render rows.csv as a log-log SVG");
    plot_cmd->add_option("rows", plot_csv, "path to rows.csv")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG path");
    plot_cmd->add_option("--x", plot_x, "x column");
    plot_cmd->add_option("--y", plot_y, "y column");

    std::string template_name;
    auto* template_cmd = app.add_subcommand("template", "print a commented config template");
    template_cmd->add_option("experiment", template_name, "experiment name")->required();

    std::string solve_problem, solve_out = "value_table.csv";
    auto* solve_cmd = app.add_subcommand("solve-fd", "finite-difference solve of a problem file");
    solve_cmd->add_option("--problem", solve_problem, "problem definition TOML")->required();
    solve_cmd->add_option("--out", solve_out, "CSV output path (header: t,x...,value)");

    std::string q_points, q_partition_out;
    std::size_t q_n = 0, q_atoms = 0, q_restarts = 5;
    std::uint64_t q_seed = 1;
    auto* quant_cmd = app.add_subcommand("quantize", "balanced quantization of a point cloud");
    quant_cmd->add_option("--points", q_points, "measure CSV (one point per row)")->required();
    quant_cmd->add_option("--n", q_n, "codebook size")->required();
    quant_cmd->add_option("--atoms", q_atoms, "atom count of the lift (default: point count)");
    quant_cmd->add_option("--restarts", q_restarts, "seeded restarts");
    quant_cmd->add_option("--seed", q_seed, "master seed");
    quant_cmd->add_option("--partition-out", q_partition_out, "dump the partition as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const auto& name : experiments)
            if (app.get_subcommand(name)->parsed()) return run_one(name, flags[name]);
        if (verify_cmd->parsed()) return verify(verify_path);
        if (plot_cmd->parsed()) {
            auto table = wlab::lab::DataTable::from_csv(wlab::read_text_file(plot_csv));
            wlab::write_text_file(plot_out, wlab::lab::svg_loglog(table, plot_x, plot_y, plot_csv));
            std::printf("wrote %s\n", plot_out.c_str());
            return 0;
        }
        if (template_cmd->parsed()) {
            auto config = wlab::lab::ExperimentConfig::defaults_for(template_name);
            std::printf("# defaults for `lab %s`; any key may be removed\n%s",
                        template_name.c_str(), config.to_toml().c_str());
            return 0;
        }
        if (solve_cmd->parsed()) {
            auto prob = wlab::lab::fd_problem_from_toml(wlab::lab::Toml::parse_file(solve_problem));
            auto table = wlab::hjb::solve_fd(prob.hamiltonian, prob.terminal, prob.particles,
                                             prob.dim, prob.kappa, prob.horizon, prob.grid);
            wlab::write_text_file(solve_out, table.to_csv(prob.slice_stride));
            std::printf("solved %zu slices of %zu points (dt=%.6g); wrote %s\n", table.slices(),
                        table.slice(0).size(), table.dt(), solve_out.c_str());
            return 0;
        }
        if (quant_cmd->parsed()) {
            auto m = wlab::measure_from_csv(wlab::read_text_file(q_points));
            std::size_t atoms = q_atoms ? q_atoms : m.size();
            wlab::QuantizeOptions opts;
            opts.restarts = q_restarts;
            opts.seed = q_seed;
            auto est = wlab::e_n_estimate(m, q_n, wlab::AtomSpace(atoms), opts);
            std::printf("rho = %.12g  (N=%zu, atoms=%zu, iterations=%zu, exact=%d)\n", est.value,
                        q_n, atoms, est.detail.iterations, int(est.detail.exact_assignment));
            if (!q_partition_out.empty()) {
                wlab::write_text_file(q_partition_out,
                                      wlab::partition_to_json(est.detail.partition));
                std::printf("partition: %s\n", q_partition_out.c_str());
            }
            return 0;
        }
    } catch (const wlab::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const wlab::invalid_input& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
