#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wlab/lab/toml.hpp"

namespace wlab::lab {

// A reproducible experiment description. Defaults are per-experiment; a TOML
// file overrides individual keys and command-line flags override both.
struct ExperimentConfig {
    std::string experiment;

    std::vector<std::size_t> sweep_n;   // main N sweep (meaning varies by experiment)
    std::size_t dim = 1;
    std::size_t atoms = 0;              // K, atom count of the discretized sample space
    std::vector<std::uint64_t> seeds;
    std::size_t restarts = 5;
    std::string out_dir = "out";
    bool plot = false;

    // quantization-rates: independent sweeps per dimension
    std::vector<std::size_t> sweep_d1, sweep_d2, sweep_d3;
    std::size_t atoms_d1 = 0, atoms_d2 = 0, atoms_d3 = 0;
    std::vector<std::size_t> dims;

    // simultaneous-tradeoff
    std::vector<double> alphas;
    std::size_t fixed_n = 512;

    // example-gap
    std::size_t cloud_per_axis = 12;    // leb cloud grid resolution
    bool include_d1_point = true;       // also run the N=1, d=1 closed-form check

    // mfc-convergence
    std::size_t m_ref = 512;
    std::size_t steps = 16;
    std::size_t max_opt_iters = 300;
    double interaction_strength = 1.0;
    double horizon = 1.0;

    // heat-projection
    std::size_t trials = 1000;
    std::size_t mc_samples = 64;
    double kappa_max = 0.5;

    // verdict thresholds, overridable per key
    std::map<std::string, double> thresholds;

    static ExperimentConfig defaults_for(const std::string& experiment);
    static ExperimentConfig load(const std::string& experiment, const std::string& toml_path);
    void apply(const Toml& file);
    void validate() const;  // throws config_error on violated invariants
    std::string to_toml() const;
    double threshold(const std::string& key) const;
};

} // namespace wlab::lab
