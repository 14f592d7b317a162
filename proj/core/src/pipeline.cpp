#include "iceberg/pipeline.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/digest.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>

namespace iceberg {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
    const std::filesystem::path p(value);
    return p.is_absolute() ? p : base / p;
}

struct LoadedRun {
    SkillRequirementMatrix matrix;
    AutomatabilityMap automatability;
    Geography geography;
    EmploymentTable employment;
    std::map<std::string, ScopeFilter> scopes;
    ExposureSet exposures;
    RunMetadata metadata;
};

void add_input(RunMetadata& metadata, const std::string& name,
               const std::filesystem::path& path) {
    metadata.inputs.emplace(name, RunMetadata::Input{path.string(), file_digest(path)});
}

// Shared front half of compute/hhi/validate: load, reduce, expose.
LoadedRun load_run(const RunConfig& config, bool need_scopes) {
    LoadedRun run;
    run.metadata.engine_version = std::string(kEngineVersion);
    run.metadata.weight_policy = config.weight_policy;
    const ReductionPolicy reduction = ReductionPolicy::parse(config.reduction, config.tau);
    run.metadata.reduction_policy = reduction.name();
    run.metadata.tau = reduction.tau;
    run.metadata.surface_scope = config.surface_scope;

    const WeightPolicy& policy = weight_policy(config.weight_policy);

    run.matrix = load_taxonomy(config.inputs.taxonomy);
    add_input(run.metadata, "taxonomy", config.inputs.taxonomy);

    const ToolCatalog catalog = load_tool_catalog(config.inputs.tools);
    add_input(run.metadata, "tools", config.inputs.tools);
    run.automatability = capability_profile(catalog.edges, reduction);

    run.geography = load_geography(config.inputs.geography);
    add_input(run.metadata, "geography", config.inputs.geography);
    run.employment = load_employment(config.inputs.employment, run.geography);
    add_input(run.metadata, "employment", config.inputs.employment);

    if (need_scopes) {
        run.scopes = load_scopes(config.inputs.scopes);
        add_input(run.metadata, "scopes", config.inputs.scopes);
        if (!run.scopes.contains(config.surface_scope)) {
            throw InputError("surface scope '" + config.surface_scope +
                             "' is not defined in " + config.inputs.scopes.string());
        }
    }

    run.exposures = compute_exposures(run.matrix, run.automatability, policy, config.workers);
    for (const auto& code : run.exposures.zero_weight_occupations()) {
        run.metadata.warnings.push_back("occupation '" + code +
                                        "' has zero total skill weight; exposure set to 0");
    }
    return run;
}

std::vector<RegionalIndex> state_rollup(std::span<const RegionalIndex> counties,
                                        const Geography& geography) {
    std::map<std::string, std::vector<RegionalIndex>> by_state;
    for (const auto& county : counties) {
        by_state[geography.state_of(county.region.id)].push_back(county);
    }
    std::vector<RegionalIndex> states;
    states.reserve(by_state.size());
    for (const auto& [state, children] : by_state) {
        states.push_back(aggregate(children, RegionScope::state(state)));
    }
    return states;
}

} // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("config " + path.string() + ": " + e.what());
    }

    static const std::set<std::string> known_keys = {
        "inputs",        "weight_policy", "reduction",  "tau",    "surface_scope",
        "selector",      "tier_sizes",    "workers",    "output"};
    static const std::set<std::string> known_inputs = {
        "taxonomy",   "tools",  "employment",  "geography",
        "state_metrics", "scopes", "transitions", "external_tiers"};

    RunConfig config;
    const std::filesystem::path base = path.parent_path();
    try {
        for (const auto& [key, value] : doc.items()) {
            if (!known_keys.contains(key)) {
                throw InputError("unknown config key '" + key + "'");
            }
        }
        if (doc.contains("inputs")) {
            for (const auto& [key, value] : doc.at("inputs").items()) {
                if (!known_inputs.contains(key)) {
                    throw InputError("unknown input key '" + key + "'");
                }
                const auto p = resolve(base, value.get<std::string>());
                if (key == "taxonomy") config.inputs.taxonomy = p;
                else if (key == "tools") config.inputs.tools = p;
                else if (key == "employment") config.inputs.employment = p;
                else if (key == "geography") config.inputs.geography = p;
                else if (key == "state_metrics") config.inputs.state_metrics = p;
                else if (key == "scopes") config.inputs.scopes = p;
                else if (key == "transitions") config.inputs.transitions = p;
                else if (key == "external_tiers") config.inputs.external_tiers = p;
            }
        }
        if (doc.contains("weight_policy")) {
            config.weight_policy = doc.at("weight_policy").get<std::string>();
        }
        if (doc.contains("reduction")) {
            config.reduction = doc.at("reduction").get<std::string>();
        }
        if (doc.contains("tau")) {
            config.tau = doc.at("tau").get<double>();
        }
        if (doc.contains("surface_scope")) {
            config.surface_scope = doc.at("surface_scope").get<std::string>();
        }
        if (doc.contains("selector")) {
            const auto& sel = doc.at("selector");
            const auto kind = sel.at("kind").get<std::string>();
            if (kind == "threshold") {
                config.selector.kind = Selector::Kind::Threshold;
            } else if (kind == "percentile") {
                config.selector.kind = Selector::Kind::TopPercentile;
            } else {
                throw InputError("unknown selector kind '" + kind +
                                 "', expected threshold or percentile");
            }
            config.selector.value = sel.at("value").get<double>();
        }
        if (doc.contains("tier_sizes")) {
            const auto sizes = doc.at("tier_sizes").get<std::vector<std::size_t>>();
            if (sizes.size() != 3) {
                throw InputError("tier_sizes must have exactly 3 entries");
            }
            config.tier_sizes = TierSizes{sizes[0], sizes[1], sizes[2]};
        }
        if (doc.contains("workers")) {
            config.workers = doc.at("workers").get<int>();
            if (config.workers < 1) {
                throw InputError("workers must be >= 1");
            }
        }
        if (doc.contains("output")) {
            config.output_dir = resolve(base, doc.at("output").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw InputError("config " + path.string() + ": " + e.what());
    }
    return config;
}

RunConfig RunConfig::for_dataset(const SyntheticDataset& dataset) {
    RunConfig config;
    config.inputs.taxonomy = dataset.taxonomy;
    config.inputs.tools = dataset.tools;
    config.inputs.employment = dataset.employment;
    config.inputs.geography = dataset.geography;
    config.inputs.state_metrics = dataset.state_metrics;
    config.inputs.scopes = dataset.scopes;
    config.inputs.transitions = dataset.transitions;
    config.inputs.external_tiers = dataset.external_tiers;
    return config;
}

ComputeResult run_compute(const RunConfig& config) {
    LoadedRun run = load_run(config, /*need_scopes=*/true);

    ComputeResult result;
    result.metadata = std::move(run.metadata);

    // Per-scope region maps for the surprise pairing below.
    std::map<std::string, std::map<std::string, const RegionalIndex*>> state_by_scope;
    std::map<std::string, const RegionalIndex*> national_by_scope;

    for (const auto& [name, scope] : run.scopes) {
        std::vector<RegionalIndex> counties =
            county_indices(run.exposures, run.employment, scope, config.workers);
        std::vector<RegionalIndex> states = state_rollup(counties, run.geography);
        RegionalIndex national = aggregate(states, RegionScope::national());

        for (auto& county : counties) {
            result.regional.push_back(std::move(county));
        }
        for (auto& state : states) {
            result.regional.push_back(std::move(state));
        }
        result.regional.push_back(std::move(national));
    }

    std::sort(result.regional.begin(), result.regional.end(),
              [](const RegionalIndex& a, const RegionalIndex& b) {
                  return std::tie(a.scope, a.region) < std::tie(b.scope, b.region);
              });
    for (const auto& entry : result.regional) {
        if (entry.region.level == RegionScope::Level::State) {
            state_by_scope[entry.scope].emplace(entry.region.id, &entry);
        } else if (entry.region.level == RegionScope::Level::National) {
            national_by_scope.emplace(entry.scope, &entry);
        }
    }

    const auto& surface_states = state_by_scope["all"];
    for (const auto& [state, iceberg] : surface_states) {
        const RegionalIndex& surface = *state_by_scope[config.surface_scope].at(state);
        result.surprises.push_back(
            {iceberg->region, iceberg->index, surface.index, automation_surprise(surface, *iceberg)});
    }
    const RegionalIndex& national_all = *national_by_scope.at("all");
    const RegionalIndex& national_surface = *national_by_scope.at(config.surface_scope);
    result.surprises.push_back({national_all.region, national_all.index, national_surface.index,
                                automation_surprise(national_surface, national_all)});

    result.exposures = std::move(run.exposures);
    return result;
}

ConcentrationResult run_hhi(const RunConfig& config) {
    LoadedRun run = load_run(config, /*need_scopes=*/false);

    ConcentrationResult result;
    result.metadata = std::move(run.metadata);
    for (const std::string& state : run.geography.states()) {
        const auto by_industry = exposed_value_by_industry(run.exposures, run.employment,
                                                           run.matrix, RegionScope::state(state));
        IndustryShares shares = industry_shares(state, by_industry);
        HHIScore score = hhi(shares);
        result.states.push_back({std::move(score), std::move(shares)});
    }
    return result;
}

ValidationResult run_validate(const RunConfig& config) {
    LoadedRun run = load_run(config, /*need_scopes=*/true);
    const WeightPolicy& policy = weight_policy(config.weight_policy);

    ValidationResult result;
    result.metadata = std::move(run.metadata);
    result.metadata.selector = config.selector.describe();

    // Skill-similarity validation against the transition network.
    std::set<std::string> known_codes;
    for (const auto& occupation : run.matrix.occupations()) {
        known_codes.insert(occupation.code);
    }
    const TransitionNetwork network = load_transitions(config.inputs.transitions, known_codes);
    add_input(result.metadata, "transitions", config.inputs.transitions);

    const std::vector<PairSimilarity> similarities =
        pairwise_similarity(run.matrix, policy, config.workers);
    result.similarity = transition_recall(similarities, network, config.selector);

    // Adoption-tier agreement on the surface index ranking.
    result.external = load_external_tiers(config.inputs.external_tiers);
    add_input(result.metadata, "external_tiers", config.inputs.external_tiers);

    const ScopeFilter& surface = run.scopes.at(config.surface_scope);
    std::map<std::string, double> surface_index;
    std::map<std::string, double> iceberg_index;
    for (const std::string& state : run.geography.states()) {
        const RegionScope region = RegionScope::state(state);
        surface_index[state] =
            regional_index(run.exposures, run.employment, surface, region).index;
        iceberg_index[state] =
            regional_index(run.exposures, run.employment, run.scopes.at("all"), region).index;
    }
    const TierSizes sizes = config.tier_sizes.value_or(
        TierSizes{result.external.count(AdoptionTier::Leading),
                  result.external.count(AdoptionTier::Emerging),
                  result.external.count(AdoptionTier::Aspiring)});
    result.ours = rank_to_tiers(surface_index, sizes);
    result.agreement = tier_agreement(result.ours, result.external);

    // Traditional-metric regressions against both index scopes.
    const std::vector<StateMetrics> metrics = load_state_metrics(config.inputs.state_metrics);
    add_input(result.metadata, "state_metrics", config.inputs.state_metrics);
    std::map<std::string, double> gdp;
    std::map<std::string, double> income;
    std::map<std::string, double> unemployment;
    for (const auto& m : metrics) {
        gdp[m.state] = m.gdp;
        income[m.state] = m.per_capita_income;
        unemployment[m.state] = m.unemployment_rate;
    }
    const std::array<std::pair<std::string, const std::map<std::string, double>*>, 3> xs = {{
        {"gdp", &gdp},
        {"per_capita_income", &income},
        {"unemployment_rate", &unemployment},
    }};
    const std::array<std::pair<std::string, const std::map<std::string, double>*>, 2> ys = {{
        {"surface_index", &surface_index},
        {"iceberg_index", &iceberg_index},
    }};
    for (const auto& [y_name, y] : ys) {
        for (const auto& [x_name, x] : xs) {
            result.regressions.push_back({x_name, y_name, regress(*x, *y)});
        }
    }
    return result;
}

std::vector<std::filesystem::path> run_plotdata(const RunConfig& config) {
    const ComputeResult compute = run_compute(config);
    const ConcentrationResult concentration = run_hhi(config);

    std::filesystem::create_directories(config.output_dir);
    std::vector<std::filesystem::path> written;

    {
        const auto path = config.output_dir / "choropleth.csv";
        static constexpr std::array<std::string_view, 3> header = {"state", "scope", "index_pct"};
        csv::Writer writer(path, header);
        for (const auto& entry : compute.regional) {
            if (entry.region.level != RegionScope::Level::State) {
                continue;
            }
            const std::array<std::string, 3> row = {
                entry.region.id, entry.scope, csv::format_double(entry.index * 100.0)};
            writer.row(row);
        }
        written.push_back(path);
    }

    {
        const auto path = config.output_dir / "surprise.csv";
        static constexpr std::array<std::string_view, 4> header = {
            "state", "iceberg_index_pct", "surface_index_pct", "gap_pp"};
        csv::Writer writer(path, header);
        for (const auto& gap : compute.surprises) {
            if (gap.region.level != RegionScope::Level::State) {
                continue;
            }
            const std::array<std::string, 4> row = {
                gap.region.id, csv::format_double(gap.iceberg_index * 100.0),
                csv::format_double(gap.surface_index * 100.0),
                csv::format_double(gap.gap * 100.0)};
            writer.row(row);
        }
        written.push_back(path);
    }

    {
        // Scatter table: one row per state, traditional metrics against both
        // index scopes.
        const std::vector<StateMetrics> metrics = load_state_metrics(config.inputs.state_metrics);
        std::map<std::string, std::pair<double, double>> index_by_state; // surface, iceberg
        for (const auto& entry : compute.regional) {
            if (entry.region.level != RegionScope::Level::State) {
                continue;
            }
            if (entry.scope == config.surface_scope) {
                index_by_state[entry.region.id].first = entry.index;
            } else if (entry.scope == "all") {
                index_by_state[entry.region.id].second = entry.index;
            }
        }
        const auto path = config.output_dir / "scatter.csv";
        static constexpr std::array<std::string_view, 6> header = {
            "state", "gdp", "per_capita_income", "unemployment_rate",
            "surface_index_pct", "iceberg_index_pct"};
        csv::Writer writer(path, header);
        for (const auto& m : metrics) {
            const auto it = index_by_state.find(m.state);
            if (it == index_by_state.end()) {
                throw InputError("state '" + m.state +
                                 "' has metrics but no employment records");
            }
            const std::array<std::string, 6> row = {
                m.state,
                csv::format_double(m.gdp),
                csv::format_double(m.per_capita_income),
                csv::format_double(m.unemployment_rate),
                csv::format_double(it->second.first * 100.0),
                csv::format_double(it->second.second * 100.0)};
            writer.row(row);
        }
        written.push_back(path);
    }

    {
        const auto path = config.output_dir / "hhi_tiers.csv";
        static constexpr std::array<std::string_view, 3> header = {"state", "hhi", "tier"};
        csv::Writer writer(path, header);
        for (const auto& state : concentration.states) {
            const std::array<std::string, 3> row = {
                state.score.region, csv::format_double(state.score.value),
                std::string(to_string(state.score.tier))};
            writer.row(row);
        }
        written.push_back(path);
    }

    return written;
}

} // namespace iceberg
