#pragma once

#include "iceberg/capability.hpp"
#include "iceberg/concentration.hpp"
#include "iceberg/econdata.hpp"
#include "iceberg/index.hpp"
#include "iceberg/report.hpp"
#include "iceberg/synth.hpp"
#include "iceberg/taxonomy.hpp"
#include "iceberg/validation.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace iceberg {

struct RunPaths {
    std::filesystem::path taxonomy;
    std::filesystem::path tools;
    std::filesystem::path employment;
    std::filesystem::path geography;
    std::filesystem::path state_metrics;
    std::filesystem::path scopes;
    std::filesystem::path transitions;
    std::filesystem::path external_tiers;
};

/// One reproducible run: input files plus every policy choice.
struct RunConfig {
    RunPaths inputs;
    std::string weight_policy = "importance_x_level";
    std::string reduction = "max";
    double tau = 0.5;
    std::string surface_scope = "surface";
    Selector selector{Selector::Kind::TopPercentile, 0.01};
    std::optional<TierSizes> tier_sizes; // default: sizes of the external assignment
    int workers = 1;
    std::filesystem::path output_dir = "out";

    /// Parses a JSON config file; relative input paths resolve against the
    /// config file's directory. Unknown keys are rejected.
    static RunConfig from_file(const std::filesystem::path& path);
    /// Wires all paths to a generated dataset directory.
    static RunConfig for_dataset(const SyntheticDataset& dataset);
};

struct SurpriseGap {
    RegionScope region;
    double iceberg_index;
    double surface_index;
    double gap; // iceberg - surface, as an index fraction
};

struct ComputeResult {
    RunMetadata metadata;
    ExposureSet exposures;
    /// County, state and national indices for every scope, ordered by
    /// (scope, level, region).
    std::vector<RegionalIndex> regional;
    /// State and national gaps between the "all" scope and the surface scope.
    std::vector<SurpriseGap> surprises;
};

struct StateConcentration {
    HHIScore score;
    IndustryShares shares;
};

struct ConcentrationResult {
    RunMetadata metadata;
    std::vector<StateConcentration> states; // sorted by state code
};

struct RegressionRecord {
    std::string x_name;
    std::string y_name;
    RegressionFit fit;
};

struct ValidationResult {
    RunMetadata metadata;
    SimilarityReport similarity;
    TierAgreement agreement;
    TierAssignment ours;
    TierAssignment external;
    std::vector<RegressionRecord> regressions;
};

ComputeResult run_compute(const RunConfig& config);
ConcentrationResult run_hhi(const RunConfig& config);
ValidationResult run_validate(const RunConfig& config);

/// Writes exposure_report.json into config.output_dir.
std::filesystem::path write_compute_report(const ComputeResult& result,
                                           const std::filesystem::path& output_dir);
/// Writes concentration_report.json.
std::filesystem::path write_concentration_report(const ConcentrationResult& result,
                                                 const std::filesystem::path& output_dir);
/// Writes validation_report.json.
std::filesystem::path write_validation_report(const ValidationResult& result,
                                              const std::filesystem::path& output_dir);

/// Runs compute + concentration and writes plot-ready CSVs
/// (choropleth.csv, scatter.csv, hhi_tiers.csv, surprise.csv).
std::vector<std::filesystem::path> run_plotdata(const RunConfig& config);

} // namespace iceberg
