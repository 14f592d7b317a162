#include "iceberg/pipeline.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/numeric.hpp"
#include "iceberg/synth.hpp"

#include <doctest.h>

#include <json.hpp>

#include "support.hpp"

#include <fstream>

using namespace iceberg;
using testsupport::TempDir;
using testsupport::read_file;
using testsupport::write_file;

namespace {

nlohmann::json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("run_compute produces every scope at every level plus gaps") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.file("data"));
    RunConfig config = RunConfig::for_dataset(dataset);
    config.output_dir = dir.file("out");

    const auto result = run_compute(config);
    CHECK(result.exposures.scores().size() == 50);

    std::size_t counties = 0;
    std::size_t states = 0;
    std::size_t nationals = 0;
    for (const auto& entry : result.regional) {
        switch (entry.region.level) {
        case RegionScope::Level::County: ++counties; break;
        case RegionScope::Level::State: ++states; break;
        case RegionScope::Level::National: ++nationals; break;
        }
        CHECK(entry.index >= 0.0);
        CHECK(entry.index <= 1.0);
        CHECK(entry.index == entry.exposed_wage_value / entry.wage_base);
    }
    // three scopes: all, surface, admin
    CHECK(counties == 3 * 30);
    CHECK(states == 3 * 5);
    CHECK(nationals == 3);
    CHECK(result.surprises.size() == 5 + 1);
    for (const auto& gap : result.surprises) {
        CHECK(gap.gap == gap.iceberg_index - gap.surface_index);
        CHECK(gap.gap >= 0.0); // surface scope is a subset of all
    }

    SUBCASE("conservation: county -> state -> national") {
        for (const std::string scope : {"all", "surface", "admin"}) {
            CompensatedSum county_exposed;
            CompensatedSum state_exposed;
            double national_exposed = -1.0;
            for (const auto& entry : result.regional) {
                if (entry.scope != scope) {
                    continue;
                }
                switch (entry.region.level) {
                case RegionScope::Level::County: county_exposed.add(entry.exposed_wage_value); break;
                case RegionScope::Level::State: state_exposed.add(entry.exposed_wage_value); break;
                case RegionScope::Level::National: national_exposed = entry.exposed_wage_value; break;
                }
            }
            CHECK(nearly_equal(county_exposed.value(), national_exposed, 1e-9));
            CHECK(nearly_equal(state_exposed.value(), national_exposed, 1e-9));
        }
    }

    SUBCASE("report file carries schema keys and run metadata") {
        const auto path = write_compute_report(result, config.output_dir);
        const auto doc = load_json(path);
        CHECK(doc["metadata"]["engine_version"].is_string());
        CHECK(doc["metadata"]["weight_policy"] == "importance_x_level");
        CHECK(doc["metadata"]["reduction_policy"] == "max");
        CHECK(doc["metadata"]["inputs"]["taxonomy"]["digest"].get<std::string>().size() == 16);
        REQUIRE(doc["exposures"].is_array());
        CHECK(doc["exposures"].size() == 50);
        for (const auto& key : {"level", "region", "scope", "index", "exposed_wage_value",
                                "wage_base"}) {
            CHECK(doc["regional"][0].contains(key));
        }
        CHECK(doc["surprise"].size() == 6);
    }
}

TEST_CASE("missing surface scope is an input error") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.file("data"));
    RunConfig config = RunConfig::for_dataset(dataset);
    config.surface_scope = "not_there";
    CHECK_THROWS_WITH_AS(run_compute(config), doctest::Contains("not_there"), InputError);
}

TEST_CASE("run_hhi aggregates exposed value by the taxonomy industry tag") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.file("data"));
    RunConfig config = RunConfig::for_dataset(dataset);
    config.output_dir = dir.file("out");

    const auto result = run_hhi(config);
    REQUIRE(result.states.size() == 5);
    for (std::size_t i = 1; i < result.states.size(); ++i) {
        CHECK(result.states[i - 1].score.region < result.states[i].score.region);
    }
    for (const auto& state : result.states) {
        CHECK(state.score.value > 0.0);
        CHECK(state.score.value <= 10000.0);
        CompensatedSum share_sum;
        for (const auto& [industry, share] : state.shares.shares) {
            share_sum.add(share);
        }
        CHECK(nearly_equal(share_sum.value(), 1.0, 1e-9));
    }

    const auto path = write_concentration_report(result, config.output_dir);
    const auto doc = load_json(path);
    CHECK(doc["states"].size() == 5);
    for (const auto& key : {"state", "hhi", "tier", "shares"}) {
        CHECK(doc["states"][0].contains(key));
    }
}

TEST_CASE("run_validate ties the pieces together") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.file("data"));
    RunConfig config = RunConfig::for_dataset(dataset);
    config.output_dir = dir.file("out");

    const auto result = run_validate(config);
    CHECK(result.similarity.selected_count > 0);
    CHECK(result.regressions.size() == 6);
    for (const auto& record : result.regressions) {
        CHECK(record.fit.r2 >= 0.0);
        CHECK(record.fit.r2 <= 1.0);
        CHECK(record.fit.n == 5);
    }
    // tier sizes default to the external file's composition
    CHECK(result.ours.count(AdoptionTier::Leading) ==
          result.external.count(AdoptionTier::Leading));

    const auto path = write_validation_report(result, config.output_dir);
    const auto doc = load_json(path);
    for (const auto& key : {"metadata", "similarity", "agreement", "our_tiers", "regressions"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc["similarity"]["recall"].is_number());
    CHECK(doc["similarity"]["precision"].is_number());
    CHECK(doc["agreement"]["per_tier"]["leading"].contains("matched"));
    CHECK(doc["metadata"]["selector"].is_string());
}

TEST_CASE("plotdata tables are consistent with the compute report") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.file("data"));
    RunConfig config = RunConfig::for_dataset(dataset);
    config.output_dir = dir.file("plot");

    const auto tables = run_plotdata(config);
    REQUIRE(tables.size() == 4);

    const auto compute = run_compute(config);
    std::map<std::pair<std::string, std::string>, double> report_pct; // (state, scope)
    for (const auto& entry : compute.regional) {
        if (entry.region.level == RegionScope::Level::State) {
            report_pct[{entry.region.id, entry.scope}] = entry.index * 100.0;
        }
    }

    // choropleth rows equal report values, states x scopes
    std::ifstream in(config.output_dir / "choropleth.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "state,scope,index_pct");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const std::string state = line.substr(0, c1);
        const std::string scope = line.substr(c1 + 1, c2 - c1 - 1);
        const double pct = std::stod(line.substr(c2 + 1));
        CHECK(pct == report_pct.at({state, scope}));
        ++rows;
    }
    CHECK(rows == 15); // 5 states x 3 scopes

    // scatter has one row per state
    std::ifstream scatter(config.output_dir / "scatter.csv");
    std::size_t scatter_rows = 0;
    std::getline(scatter, line);
    while (std::getline(scatter, line)) {
        ++scatter_rows;
    }
    CHECK(scatter_rows == 5);
}

TEST_CASE("config files parse with flag-style overrides and strict keys") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.file("data"));

    const std::string config_json = std::string("{\n") +
        "  \"inputs\": {\n" +
        "    \"taxonomy\": \"data/taxonomy.csv\",\n" +
        "    \"tools\": \"data/tools.csv\",\n" +
        "    \"employment\": \"data/employment.csv\",\n" +
        "    \"geography\": \"data/geography.csv\",\n" +
        "    \"state_metrics\": \"data/state_metrics.csv\",\n" +
        "    \"scopes\": \"data/scopes.csv\",\n" +
        "    \"transitions\": \"data/transitions.csv\",\n" +
        "    \"external_tiers\": \"data/external_tiers.csv\"\n" +
        "  },\n" +
        "  \"reduction\": \"boolean\",\n" +
        "  \"tau\": 0.4,\n" +
        "  \"selector\": {\"kind\": \"threshold\", \"value\": 0.3},\n" +
        "  \"tier_sizes\": [1, 3, 1],\n" +
        "  \"workers\": 2,\n" +
        "  \"output\": \"out\"\n" +
        "}\n";
    const auto path = write_file(dir.file("run.json"), config_json);
    const auto config = RunConfig::from_file(path);
    CHECK(config.reduction == "boolean");
    CHECK(config.tau == 0.4);
    CHECK(config.selector.kind == Selector::Kind::Threshold);
    CHECK(config.selector.value == 0.3);
    REQUIRE(config.tier_sizes.has_value());
    CHECK(config.tier_sizes->leading == 1);
    CHECK(config.workers == 2);
    // relative paths resolve against the config file directory
    CHECK(config.inputs.taxonomy == dir.file("data") / "taxonomy.csv");
    CHECK(config.output_dir == dir.file("out"));

    // the parsed config actually runs
    const auto result = run_validate(config);
    CHECK(result.metadata.reduction_policy == "boolean");
    CHECK(result.metadata.tau == 0.4);

    const auto bad = write_file(dir.file("bad.json"), "{\"reductoin\": \"max\"}");
    CHECK_THROWS_WITH_AS(RunConfig::from_file(bad), doctest::Contains("reductoin"), InputError);
}
