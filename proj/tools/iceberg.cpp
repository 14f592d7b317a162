// iceberg: skills-based automation-exposure analytics over occupation,
// tool-capability and employment tables.
//
// Subcommands: synth, compute, hhi, validate, plotdata.
// Exit codes: 0 success, 1 input/validation error, 2 internal error.

#include "iceberg/errors.hpp"
#include "iceberg/pipeline.hpp"
#include "iceberg/synth.hpp"
#include "iceberg/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
    std::string config_path;
    std::string data_dir;
    std::string output_dir;
    std::string surface_scope;
    std::string weight_policy;
    std::string reduction;
    std::optional<double> tau;
    std::optional<int> workers;
};

void add_common_options(CLI::App& cmd, CommonOptions& options, bool needs_inputs) {
    auto* config = cmd.add_option("--config", options.config_path,
                                  "JSON run configuration (see README)");
    auto* data = cmd.add_option("--data", options.data_dir,
                                "dataset directory with canonical file names "
                                "(as written by `iceberg synth`)");
    config->excludes(data);
    if (needs_inputs) {
        // one of the two must name the inputs
        cmd.callback([&options, &cmd] {
            if (options.config_path.empty() && options.data_dir.empty()) {
                throw CLI::ValidationError(cmd.get_name(),
                                           "either --config or --data is required");
            }
        });
    }
    cmd.add_option("--output", options.output_dir, "output directory for reports");
    cmd.add_option("--scope", options.surface_scope,
                   "scope name used as the Surface Index numerator");
    cmd.add_option("--weight-policy", options.weight_policy,
                   "skill weight policy (importance_x_level, importance)");
    cmd.add_option("--reduction", options.reduction,
                   "capability reduction policy (max, boolean)");
    cmd.add_option("--tau", options.tau, "confidence threshold for --reduction boolean");
    cmd.add_option("--workers", options.workers, "parallel workers (results are identical)");
}

iceberg::RunConfig build_config(const CommonOptions& options) {
    iceberg::RunConfig config;
    if (!options.config_path.empty()) {
        config = iceberg::RunConfig::from_file(options.config_path);
    } else if (!options.data_dir.empty()) {
        config = iceberg::RunConfig::for_dataset(iceberg::SyntheticDataset::at(options.data_dir));
    }
    // flag overrides win over the config file
    if (!options.output_dir.empty()) {
        config.output_dir = options.output_dir;
    }
    if (!options.surface_scope.empty()) {
        config.surface_scope = options.surface_scope;
    }
    if (!options.weight_policy.empty()) {
        config.weight_policy = options.weight_policy;
    }
    if (!options.reduction.empty()) {
        config.reduction = options.reduction;
    }
    if (options.tau) {
        config.tau = *options.tau;
    }
    if (options.workers) {
        if (*options.workers < 1) {
            throw iceberg::InputError("--workers must be >= 1");
        }
        config.workers = *options.workers;
    }
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iceberg Index engine: skills-based automation exposure analytics"};
    app.set_version_flag("--version", std::string(iceberg::kEngineVersion));
    app.require_subcommand(1);

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    iceberg::SynthConfig synth_config;
    std::string synth_output = "synth_out";
    synth->add_option("--output", synth_output, "dataset directory to create");
    synth->add_option("--seed", synth_config.seed, "PRNG seed (SplitMix64)");
    synth->add_option("--occupations", synth_config.n_occupations, "occupation count");
    synth->add_option("--skills", synth_config.n_skills, "skill count");
    synth->add_option("--tools", synth_config.n_tools, "tool count");
    synth->add_option("--counties", synth_config.n_counties, "county count");
    synth->add_option("--states", synth_config.n_states, "state count");
    synth->add_option("--industries", synth_config.n_industries, "industry count");
    synth->add_option("--wage-min", synth_config.wage_range.lo, "median wage lower bound");
    synth->add_option("--wage-max", synth_config.wage_range.hi, "median wage upper bound");
    synth->add_option("--employment-min", synth_config.employment_range.lo,
                      "cell employment lower bound");
    synth->add_option("--employment-max", synth_config.employment_range.hi,
                      "cell employment upper bound");

    // --- compute / hhi / validate / plotdata ---
    CommonOptions compute_options;
    auto* compute = app.add_subcommand(
        "compute", "per-occupation exposures and county/state/national indices");
    add_common_options(*compute, compute_options, true);

    CommonOptions hhi_options;
    auto* hhi = app.add_subcommand("hhi", "industry concentration (HHI) per state");
    add_common_options(*hhi, hhi_options, true);

    CommonOptions validate_options;
    auto* validate = app.add_subcommand(
        "validate", "similarity recall, tier agreement and metric regressions");
    add_common_options(*validate, validate_options, true);
    std::optional<double> select_threshold;
    std::optional<double> select_percentile;
    auto* threshold_opt = validate->add_option("--select-threshold", select_threshold,
                                               "select pairs with similarity >= value");
    auto* percentile_opt = validate->add_option(
        "--select-top-percentile", select_percentile,
        "select the top fraction of pairs by similarity (e.g. 0.01)");
    threshold_opt->excludes(percentile_opt);
    std::vector<std::size_t> tier_sizes_flag;
    validate->add_option("--tier-sizes", tier_sizes_flag,
                         "leading,emerging,aspiring group sizes (default: external file's)")
        ->delimiter(',')
        ->expected(3);

    CommonOptions plot_options;
    auto* plotdata = app.add_subcommand("plotdata",
                                        "plot-ready CSV tables (choropleth, scatter, tiers)");
    add_common_options(*plotdata, plot_options, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        app.exit(e);
        return 1;
    }

    try {
        if (synth->parsed()) {
            const iceberg::SyntheticDataset dataset =
                iceberg::generate(synth_config, synth_output);
            std::cout << "dataset written to " << dataset.dir.string() << '\n';
            return 0;
        }
        if (compute->parsed()) {
            const iceberg::RunConfig config = build_config(compute_options);
            const iceberg::ComputeResult result = iceberg::run_compute(config);
            const auto path = iceberg::write_compute_report(result, config.output_dir);
            std::cout << "report written to " << path.string() << '\n';
            return 0;
        }
        if (hhi->parsed()) {
            const iceberg::RunConfig config = build_config(hhi_options);
            const iceberg::ConcentrationResult result = iceberg::run_hhi(config);
            const auto path = iceberg::write_concentration_report(result, config.output_dir);
            std::cout << "report written to " << path.string() << '\n';
            return 0;
        }
        if (validate->parsed()) {
            iceberg::RunConfig config = build_config(validate_options);
            if (select_threshold) {
                config.selector = {iceberg::Selector::Kind::Threshold, *select_threshold};
            } else if (select_percentile) {
                config.selector = {iceberg::Selector::Kind::TopPercentile, *select_percentile};
            }
            if (!tier_sizes_flag.empty()) {
                config.tier_sizes = iceberg::TierSizes{tier_sizes_flag[0], tier_sizes_flag[1],
                                                       tier_sizes_flag[2]};
            }
            const iceberg::ValidationResult result = iceberg::run_validate(config);
            const auto path = iceberg::write_validation_report(result, config.output_dir);
            std::cout << "report written to " << path.string() << '\n';
            return 0;
        }
        if (plotdata->parsed()) {
            const iceberg::RunConfig config = build_config(plot_options);
            const auto paths = iceberg::run_plotdata(config);
            for (const auto& path : paths) {
                std::cout << "table written to " << path.string() << '\n';
            }
            return 0;
        }
    } catch (const iceberg::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
