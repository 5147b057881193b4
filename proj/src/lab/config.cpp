#include "wlab/lab/config.hpp"

#include <algorithm>

#include "wlab/errors.hpp"
#include "wlab/measure_io.hpp"

namespace wlab::lab {

namespace {

std::vector<std::size_t> to_sizes(const std::vector<double>& xs, const char* what) {
    std::vector<std::size_t> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x < 1.0 || x != std::floor(x))
            throw config_error(std::string(what) + ": entries must be positive integers");
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

void require_divisible(std::size_t atoms, const std::vector<std::size_t>& ns, const char* what) {
    for (auto n : ns)
        if (n == 0 || atoms % n != 0)
            throw config_error(std::string(what) + ": atom count " + std::to_string(atoms) +
                               " not divisible by N=" + std::to_string(n));
}

} // namespace

ExperimentConfig ExperimentConfig::defaults_for(const std::string& experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    c.seeds = {1};
    if (experiment == "quantization-rates") {
        c.dims = {1, 2, 3};
        c.sweep_d1 = {2, 4, 8, 16, 32, 64, 128, 256};
        c.atoms_d1 = 6912;  // 2^8 * 27, divisible by every power of two up to 256
        c.sweep_d2 = {4, 16, 64, 256};
        c.atoms_d2 = 9216;  // 96^2 grid
        c.sweep_d3 = {8, 27, 64, 216, 512};
        c.atoms_d3 = 13824;  // 24^3 grid
        c.restarts = 3;
        c.thresholds = {
            {"slope_d1_lo", -1.1},  {"slope_d1_hi", -0.9},  {"r2_d1_min", 0.95},
            {"slope_d2_lo", -0.70}, {"slope_d2_hi", -0.30}, {"r2_d2_min", 0.90},
            {"slope_d3_lo", -0.45}, {"slope_d3_hi", -0.25}, {"r2_d3_min", 0.95},
            {"d1_analytic_rel_tol", 0.01},
        };
    } else if (experiment == "simultaneous-tradeoff") {
        c.dim = 3;
        c.fixed_n = 512;
        c.atoms = 13824;
        c.alphas = {0.3, 0.5, 0.7};
        c.seeds = {1, 2, 3, 4, 5};
        c.restarts = 2;
        c.thresholds = {{"bound_factor", 8.0}};
    } else if (experiment == "example-gap") {
        c.dim = 3;
        c.sweep_n = {8, 27, 64, 216};
        c.cloud_per_axis = 12;  // 1728 samples, divisible by each N above
        c.restarts = 2;
        c.include_d1_point = true;
        c.thresholds = {
            {"d1_gap_target", 0.2470},  {"d1_gap_rel_tol", 0.02}, {"gap_lower_factor", 0.9},
            {"gap_upper_factor", 3.0},  {"slope_lo", -0.45},      {"slope_hi", -0.20},
        };
    } else if (experiment == "mfc-convergence") {
        c.dim = 1;
        c.sweep_n = {8, 16, 32, 64};
        c.m_ref = 512;
        c.atoms = 512;
        c.steps = 16;
        c.max_opt_iters = 300;
        c.horizon = 1.0;
        c.interaction_strength = 1.0;
        c.thresholds = {{"final_over_initial_max", 0.5}, {"step_growth_max", 1.25}};
    } else if (experiment == "heat-projection") {
        c.dim = 2;
        c.sweep_n = {8};
        c.trials = 1000;
        c.mc_samples = 64;
        c.kappa_max = 0.5;
        c.horizon = 1.0;
        c.thresholds = {{"max_abs_diff", 1e-14}};
    } else {
        throw config_error("unknown experiment: " + experiment);
    }
    return c;
}

void ExperimentConfig::apply(const Toml& file) {
    if (file.has("experiment")) {
        std::string declared = file.text("experiment");
        if (declared != experiment)
            throw config_error("config file is for experiment '" + declared + "', not '" +
                               experiment + "'");
    }
    if (file.has("sweep_n")) sweep_n = to_sizes(file.numbers("sweep_n"), "sweep_n");
    dim = static_cast<std::size_t>(file.integer_or("dim", std::int64_t(dim)));
    atoms = static_cast<std::size_t>(file.integer_or("atoms", std::int64_t(atoms)));
    if (file.has("seeds")) {
        seeds.clear();
        for (double s : file.numbers("seeds")) seeds.push_back(static_cast<std::uint64_t>(s));
    }
    restarts = static_cast<std::size_t>(file.integer_or("restarts", std::int64_t(restarts)));
    out_dir = file.text_or("out_dir", out_dir);
    plot = file.boolean_or("plot", plot);

    if (file.has("sweep_d1")) sweep_d1 = to_sizes(file.numbers("sweep_d1"), "sweep_d1");
    if (file.has("sweep_d2")) sweep_d2 = to_sizes(file.numbers("sweep_d2"), "sweep_d2");
    if (file.has("sweep_d3")) sweep_d3 = to_sizes(file.numbers("sweep_d3"), "sweep_d3");
    if (file.has("dims")) dims = to_sizes(file.numbers("dims"), "dims");
    atoms_d1 = static_cast<std::size_t>(file.integer_or("atoms_d1", std::int64_t(atoms_d1)));
    atoms_d2 = static_cast<std::size_t>(file.integer_or("atoms_d2", std::int64_t(atoms_d2)));
    atoms_d3 = static_cast<std::size_t>(file.integer_or("atoms_d3", std::int64_t(atoms_d3)));

    if (file.has("alphas")) alphas = file.numbers("alphas");
    fixed_n = static_cast<std::size_t>(file.integer_or("fixed_n", std::int64_t(fixed_n)));

    cloud_per_axis =
        static_cast<std::size_t>(file.integer_or("cloud_per_axis", std::int64_t(cloud_per_axis)));
    include_d1_point = file.boolean_or("include_d1_point", include_d1_point);

    m_ref = static_cast<std::size_t>(file.integer_or("m_ref", std::int64_t(m_ref)));
    steps = static_cast<std::size_t>(file.integer_or("steps", std::int64_t(steps)));
    max_opt_iters =
        static_cast<std::size_t>(file.integer_or("max_opt_iters", std::int64_t(max_opt_iters)));
    interaction_strength = file.number_or("interaction_strength", interaction_strength);
    horizon = file.number_or("horizon", horizon);

    trials = static_cast<std::size_t>(file.integer_or("trials", std::int64_t(trials)));
    mc_samples = static_cast<std::size_t>(file.integer_or("mc_samples", std::int64_t(mc_samples)));
    kappa_max = file.number_or("kappa_max", kappa_max);

    for (const auto& key : file.keys())
        if (key.rfind("thresholds.", 0) == 0)
            thresholds[key.substr(std::string("thresholds.").size())] = file.number(key);
}

ExperimentConfig ExperimentConfig::load(const std::string& experiment,
                                        const std::string& toml_path) {
    ExperimentConfig c = defaults_for(experiment);
    if (!toml_path.empty()) c.apply(Toml::parse_file(toml_path));
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw config_error("config: seeds must be nonempty");
    if (experiment == "quantization-rates") {
        if (dims.empty()) throw config_error("config: dims must be nonempty");
        for (auto d : dims) {
            if (d < 1 || d > 3) throw config_error("config: dims entries must be 1, 2 or 3");
            const auto& sweep = d == 1 ? sweep_d1 : d == 2 ? sweep_d2 : sweep_d3;
            std::size_t k = d == 1 ? atoms_d1 : d == 2 ? atoms_d2 : atoms_d3;
            if (sweep.empty()) throw config_error("config: empty sweep for d=" + std::to_string(d));
            if (!std::is_sorted(sweep.begin(), sweep.end()))
                throw config_error("config: sweep must be increasing");
            require_divisible(k, sweep, "config");
        }
    } else if (experiment == "simultaneous-tradeoff") {
        if (alphas.empty()) throw config_error("config: alphas must be nonempty");
        for (double a : alphas)
            if (!(a > 0.0 && a < 1.0)) throw config_error("config: alphas must lie in (0,1)");
        require_divisible(atoms, {fixed_n}, "config");
    } else if (experiment == "example-gap") {
        if (sweep_n.empty()) throw config_error("config: sweep_n must be nonempty");
        std::size_t cloud = 1;
        for (std::size_t q = 0; q < dim; ++q) cloud *= cloud_per_axis;
        require_divisible(cloud, sweep_n, "config");
    } else if (experiment == "mfc-convergence") {
        if (sweep_n.empty()) throw config_error("config: sweep_n must be nonempty");
        if (dim != 1) throw config_error("config: mfc-convergence runs in dimension 1");
        for (auto n : sweep_n)
            if (m_ref % n != 0)
                throw config_error("config: m_ref must be a multiple of every N in the sweep");
        require_divisible(atoms, sweep_n, "config");
        require_divisible(atoms, {m_ref}, "config");
    } else if (experiment == "heat-projection") {
        if (trials == 0) throw config_error("config: trials must be positive");
        if (mc_samples == 0) throw config_error("config: mc_samples must be positive");
    }
}

double ExperimentConfig::threshold(const std::string& key) const {
    auto it = thresholds.find(key);
    if (it == thresholds.end()) throw config_error("config: missing threshold '" + key + "'");
    return it->second;
}

namespace {

void emit_sizes(std::string& out, const char* key, const std::vector<std::size_t>& xs) {
    out += key;
    out += " = [";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    out += "]\n";
}

} // namespace

std::string ExperimentConfig::to_toml() const {
    std::string out;
    out += "experiment = \"" + experiment + "\"\n";
    out += "dim = " + std::to_string(dim) + "\n";
    out += "atoms = " + std::to_string(atoms) + "\n";
    emit_sizes(out, "sweep_n", sweep_n);
    emit_sizes(out, "seeds", std::vector<std::size_t>(seeds.begin(), seeds.end()));
    out += "restarts = " + std::to_string(restarts) + "\n";
    if (experiment == "quantization-rates") {
        emit_sizes(out, "dims", dims);
        emit_sizes(out, "sweep_d1", sweep_d1);
        emit_sizes(out, "sweep_d2", sweep_d2);
        emit_sizes(out, "sweep_d3", sweep_d3);
        out += "atoms_d1 = " + std::to_string(atoms_d1) + "\n";
        out += "atoms_d2 = " + std::to_string(atoms_d2) + "\n";
        out += "atoms_d3 = " + std::to_string(atoms_d3) + "\n";
    }
    if (experiment == "simultaneous-tradeoff") {
        out += "fixed_n = " + std::to_string(fixed_n) + "\n";
        out += "alphas = [";
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (i) out += ", ";
            out += format_double(alphas[i]);
        }
        out += "]\n";
    }
    if (experiment == "example-gap") {
        out += "cloud_per_axis = " + std::to_string(cloud_per_axis) + "\n";
        out += std::string("include_d1_point = ") + (include_d1_point ? "true" : "false") + "\n";
    }
    if (experiment == "mfc-convergence") {
        out += "m_ref = " + std::to_string(m_ref) + "\n";
        out += "steps = " + std::to_string(steps) + "\n";
        out += "max_opt_iters = " + std::to_string(max_opt_iters) + "\n";
        out += "interaction_strength = " + format_double(interaction_strength) + "\n";
        out += "horizon = " + format_double(horizon) + "\n";
    }
    if (experiment == "heat-projection") {
        out += "trials = " + std::to_string(trials) + "\n";
        out += "mc_samples = " + std::to_string(mc_samples) + "\n";
        out += "kappa_max = " + format_double(kappa_max) + "\n";
        out += "horizon = " + format_double(horizon) + "\n";
    }
    out += "\n[thresholds]\n";
    for (const auto& [k, v] : thresholds) out += k + " = " + format_double(v) + "\n";
    return out;
}

} // namespace wlab::lab
