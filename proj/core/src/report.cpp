#include "iceberg/pipeline.hpp"

#include "iceberg/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace iceberg {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json metadata_json(const RunMetadata& metadata) {
    ordered_json inputs;
    for (const auto& [name, input] : metadata.inputs) {
        inputs[name] = {{"path", input.path}, {"digest", input.digest}};
    }
    ordered_json out{
        {"engine", "iceberg"},
        {"engine_version", metadata.engine_version},
        {"weight_policy", metadata.weight_policy},
        {"reduction_policy", metadata.reduction_policy},
        {"tau", metadata.tau},
        {"surface_scope", metadata.surface_scope},
        {"inputs", inputs},
        {"warnings", metadata.warnings},
    };
    if (!metadata.selector.empty()) {
        out["selector"] = metadata.selector;
    }
    return out;
}

std::filesystem::path write_json(const ordered_json& doc, const std::filesystem::path& dir,
                                 const char* filename) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot open output file: " + path.string());
    }
    out << doc.dump(2) << '\n';
    return path;
}

} // namespace

std::filesystem::path write_compute_report(const ComputeResult& result,
                                           const std::filesystem::path& output_dir) {
    ordered_json doc;
    doc["metadata"] = metadata_json(result.metadata);

    ordered_json exposures = ordered_json::array();
    for (const auto& score : result.exposures.scores()) {
        exposures.push_back({
            {"occupation", score.occupation},
            {"exposure", score.value},
            {"exposure_pct", score.value * 100.0},
        });
    }
    doc["exposures"] = std::move(exposures);

    ordered_json regional = ordered_json::array();
    for (const auto& entry : result.regional) {
        regional.push_back({
            {"level", std::string(entry.region.level_name())},
            {"region", entry.region.key()},
            {"scope", entry.scope},
            {"index", entry.index},
            {"index_pct", entry.index * 100.0},
            {"exposed_wage_value", entry.exposed_wage_value},
            {"wage_base", entry.wage_base},
        });
    }
    doc["regional"] = std::move(regional);

    ordered_json surprises = ordered_json::array();
    for (const auto& gap : result.surprises) {
        surprises.push_back({
            {"level", std::string(gap.region.level_name())},
            {"region", gap.region.key()},
            {"iceberg_index", gap.iceberg_index},
            {"surface_index", gap.surface_index},
            {"gap", gap.gap},
            {"gap_pp", gap.gap * 100.0},
        });
    }
    doc["surprise"] = std::move(surprises);

    return write_json(doc, output_dir, "exposure_report.json");
}

std::filesystem::path write_concentration_report(const ConcentrationResult& result,
                                                 const std::filesystem::path& output_dir) {
    ordered_json doc;
    doc["metadata"] = metadata_json(result.metadata);

    ordered_json states = ordered_json::array();
    for (const auto& state : result.states) {
        ordered_json shares;
        for (const auto& [industry, share] : state.shares.shares) {
            shares[industry] = share;
        }
        states.push_back({
            {"state", state.score.region},
            {"hhi", state.score.value},
            {"tier", std::string(to_string(state.score.tier))},
            {"shares", std::move(shares)},
        });
    }
    doc["states"] = std::move(states);

    return write_json(doc, output_dir, "concentration_report.json");
}

std::filesystem::path write_validation_report(const ValidationResult& result,
                                              const std::filesystem::path& output_dir) {
    ordered_json doc;
    doc["metadata"] = metadata_json(result.metadata);

    doc["similarity"] = {
        {"selector", result.similarity.selector},
        {"selected_count", result.similarity.selected_count},
        {"recall", result.similarity.recall},
        {"precision", result.similarity.precision},
    };

    const auto per_tier = [](const TierAgreement::PerTier& tier) {
        return ordered_json{
            {"matched", tier.matched},
            {"ours", tier.total_ours},
            {"external", tier.total_external},
        };
    };
    doc["agreement"] = {
        {"overall", result.agreement.overall},
        {"per_tier",
         {
             {"leading", per_tier(result.agreement.leading)},
             {"emerging", per_tier(result.agreement.emerging)},
             {"aspiring", per_tier(result.agreement.aspiring)},
         }},
    };

    ordered_json tiers;
    for (const auto& [state, tier] : result.ours.tiers()) {
        tiers[state] = std::string(to_string(tier));
    }
    doc["our_tiers"] = std::move(tiers);

    ordered_json regressions = ordered_json::array();
    for (const auto& record : result.regressions) {
        regressions.push_back({
            {"x_name", record.x_name},
            {"y_name", record.y_name},
            {"slope", record.fit.slope},
            {"intercept", record.fit.intercept},
            {"r2", record.fit.r2},
            {"n", record.fit.n},
        });
    }
    doc["regressions"] = std::move(regressions);

    return write_json(doc, output_dir, "validation_report.json");
}

} // namespace iceberg
