#include "iceberg/synth.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/oracle.hpp"
#include "iceberg/pipeline.hpp"

#include <doctest.h>

#include <json.hpp>

#include "support.hpp"

#include <fstream>
#include <set>

using namespace iceberg;
using testsupport::TempDir;
using testsupport::read_file;

namespace {

nlohmann::json read_manifest(const SyntheticDataset& dataset) {
    std::ifstream in(dataset.manifest);
    return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("generation is byte-identical for the same seed") {
    TempDir dir;
    const auto a = generate(SynthConfig::seed42(), dir.file("a"));
    const auto b = generate(SynthConfig::seed42(), dir.file("b"));
    for (auto member :
         {&SyntheticDataset::taxonomy, &SyntheticDataset::tools, &SyntheticDataset::employment,
          &SyntheticDataset::geography, &SyntheticDataset::state_metrics,
          &SyntheticDataset::transitions, &SyntheticDataset::external_tiers,
          &SyntheticDataset::scopes, &SyntheticDataset::manifest}) {
        CHECK(read_file(a.*member) == read_file(b.*member));
    }

    SynthConfig other = SynthConfig::seed42();
    other.seed = 43;
    const auto c = generate(other, dir.file("c"));
    CHECK(read_file(a.taxonomy) != read_file(c.taxonomy));
}

TEST_CASE("manifest totals match what the loaders see") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.path());
    const auto manifest = read_manifest(dataset);

    const auto matrix = load_taxonomy(dataset.taxonomy);
    CHECK(matrix.occupation_count() == manifest["counts"]["occupations"].get<std::size_t>());
    CHECK(matrix.skill_count() == manifest["counts"]["skills"].get<std::size_t>());
    std::size_t requirements = 0;
    for (std::size_t i = 0; i < matrix.occupation_count(); ++i) {
        requirements += matrix.requirements(i).size();
    }
    CHECK(requirements == manifest["counts"]["requirements"].get<std::size_t>());

    const auto catalog = load_tool_catalog(dataset.tools);
    CHECK(catalog.tools.size() == manifest["counts"]["tools"].get<std::size_t>());
    CHECK(catalog.edges.size() == manifest["counts"]["tool_edges"].get<std::size_t>());

    const auto geography = load_geography(dataset.geography);
    CHECK(geography.counties().size() == manifest["counts"]["counties"].get<std::size_t>());
    CHECK(geography.states().size() == manifest["counts"]["states"].get<std::size_t>());

    const auto table = load_employment(dataset.employment, geography);
    CHECK(table.records().size() ==
          manifest["counts"]["employment_records"].get<std::size_t>());
    CHECK(table.total_employment() == manifest["counts"]["total_employment"].get<std::int64_t>());

    std::set<std::string> codes;
    for (const auto& occupation : matrix.occupations()) {
        codes.insert(occupation.code);
    }
    const auto network = load_transitions(dataset.transitions, codes);
    CHECK(network.size() == manifest["counts"]["transitions"].get<std::size_t>());
}

TEST_CASE("every occupation gets 3 to 15 skills") {
    TempDir dir;
    SynthConfig config;
    config.seed = 77;
    const auto dataset = generate(config, dir.path());
    const auto matrix = load_taxonomy(dataset.taxonomy);
    for (std::size_t i = 0; i < matrix.occupation_count(); ++i) {
        CHECK(matrix.requirements(i).size() >= 3);
        CHECK(matrix.requirements(i).size() <= 15);
    }
}

TEST_CASE("generated files pass all loader validations") {
    TempDir dir;
    SynthConfig config;
    config.seed = 31337;
    config.n_occupations = 25;
    config.n_skills = 40;
    config.n_counties = 12;
    config.n_states = 4;
    const auto dataset = generate(config, dir.path());

    // full validate run exercises every loader and both validation paths
    RunConfig run = RunConfig::for_dataset(dataset);
    run.output_dir = dir.file("out");
    const auto result = run_validate(run);
    CHECK(result.similarity.recall >= 0.0);
    CHECK(result.similarity.recall <= 1.0);
    CHECK(result.similarity.precision >= 0.0);
    CHECK(result.similarity.precision <= 1.0);
    CHECK(result.agreement.overall >= 0.0);
}

TEST_CASE("degenerate configs: single occupation loads but cannot be paired") {
    TempDir dir;
    SynthConfig config;
    config.n_occupations = 1;
    config.n_skills = 12;
    config.n_counties = 2;
    config.n_states = 1;
    const auto dataset = generate(config, dir.path());
    const auto matrix = load_taxonomy(dataset.taxonomy);
    CHECK(matrix.occupation_count() == 1);
    CHECK_THROWS_WITH_AS(pairwise_similarity(matrix, default_weight_policy()),
                         doctest::Contains(">= 2 occupations"), InputError);
}

TEST_CASE("infeasible configs are rejected") {
    SynthConfig config;
    config.n_states = 10;
    config.n_counties = 5;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("more states than counties"),
                         InputError);

    SynthConfig zero;
    zero.n_occupations = 0;
    CHECK_THROWS_AS(zero.validate(), InputError);

    SynthConfig range;
    range.wage_range = {100.0, 50.0};
    CHECK_THROWS_WITH_AS(range.validate(), doctest::Contains("wage_range"), InputError);
}

TEST_CASE("oracle dataset loads and basic identities hold") {
    TempDir dir;
    const auto dataset = generate(SynthConfig::seed42(), dir.path());
    const auto data = oracle::Dataset::load(dataset.dir);
    const oracle::Policies policies;

    // an occupation whose every skill is automatable would be 1.0; at least
    // exposures stay in [0, 1]
    for (const auto& [occupation, requirements] : data.requirements) {
        const double value = oracle::exposure(data, occupation, policies);
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
    }
    // exposed value never exceeds the wage base
    const double index = oracle::regional_index(data, "all", 'n', "", policies);
    CHECK(index >= 0.0);
    CHECK(index <= 1.0);
}
