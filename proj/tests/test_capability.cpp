#include "iceberg/capability.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/rng.hpp"

#include <doctest.h>

#include "support.hpp"

#include <algorithm>
#include <vector>

using namespace iceberg;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

const char* kSmallCatalog =
    "tool_id,tool_name,source,skill_id,confidence\n"
    "TL-01,Code Helper,protocol-implementation,SK-01,0.9\n"
    "TL-01,Code Helper,protocol-implementation,SK-02,0.3\n"
    "TL-02,Flow Bot,workflow-platform,SK-02,0.6\n";

} // namespace

TEST_CASE("load_tool_catalog echoes a well-formed file") {
    TempDir dir;
    const auto catalog = load_tool_catalog(write_file(dir.file("t.csv"), kSmallCatalog));
    CHECK(catalog.tools.size() == 2);
    CHECK(catalog.edges.size() == 3);
    CHECK(catalog.tools[0].source == ToolSource::ProtocolImplementation);
}

TEST_CASE("load_tool_catalog rejects bad confidences, sources and columns") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(
        load_tool_catalog(write_file(dir.file("conf.csv"),
                                     "tool_id,tool_name,source,skill_id,confidence\n"
                                     "TL-01,T,directory,SK-01,1.5\n")),
        doctest::Contains("confidence 1.5 for (TL-01, SK-01)"), InputError);

    CHECK_THROWS_WITH_AS(
        load_tool_catalog(write_file(dir.file("src.csv"),
                                     "tool_id,tool_name,source,skill_id,confidence\n"
                                     "TL-01,T,marketplace,SK-01,0.5\n")),
        doctest::Contains("unknown tool source"), InputError);

    // unknown column in the header is a schema violation
    CHECK_THROWS_WITH_AS(
        load_tool_catalog(write_file(dir.file("cols.csv"),
                                     "tool_id,tool_name,source,skill_id,confidence,extra\n"
                                     "TL-01,T,directory,SK-01,0.5,x\n")),
        doctest::Contains("unexpected header"), InputError);

    CHECK_THROWS_WITH_AS(
        load_tool_catalog(write_file(dir.file("dup.csv"),
                                     "tool_id,tool_name,source,skill_id,confidence\n"
                                     "TL-01,T,directory,SK-01,0.5\n"
                                     "TL-01,T,directory,SK-01,0.7\n")),
        doctest::Contains("duplicate edge"), InputError);
}

TEST_CASE("capability_profile max keeps the strongest confidence") {
    const std::vector<ToolSkillEdge> edges = {
        {"TL-01", "SK-01", 0.3}, {"TL-02", "SK-01", 0.9}, {"TL-03", "SK-02", 0.0}};
    const auto profile = capability_profile(edges, ReductionPolicy::parse("max"));
    CHECK(profile.score("SK-01") == 0.9);
    CHECK(profile.score("SK-02") == 0.0);
    CHECK(profile.score("SK-99") == 0.0); // no edges at all
}

TEST_CASE("capability_profile boolean thresholds then ors") {
    const std::vector<ToolSkillEdge> edges = {{"TL-01", "SK-01", 0.4}, {"TL-02", "SK-01", 0.6}};
    const auto profile = capability_profile(edges, ReductionPolicy::parse("boolean", 0.5));

    // oracle: threshold-then-any over the edge list
    bool any = false;
    for (const auto& edge : edges) {
        any = any || edge.confidence >= 0.5;
    }
    CHECK(profile.score("SK-01") == (any ? 1.0 : 0.0));
    CHECK(profile.score("SK-01") == 1.0);

    const auto strict = capability_profile(edges, ReductionPolicy::parse("boolean", 0.7));
    CHECK(strict.score("SK-01") == 0.0);
}

TEST_CASE("profile is independent of edge order and monotone under new edges") {
    SplitMix64 rng(11);
    std::vector<ToolSkillEdge> edges;
    for (int i = 0; i < 60; ++i) {
        edges.push_back({"TL-" + std::to_string(i % 7), "SK-" + std::to_string(rng.next_below(9)),
                         rng.next_unit()});
    }

    for (const auto policy :
         {ReductionPolicy::parse("max"), ReductionPolicy::parse("boolean", 0.5)}) {
        const auto before = capability_profile(edges, policy);

        auto shuffled = edges;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
        }
        const auto after = capability_profile(shuffled, policy);
        CHECK(before.scores() == after.scores());

        // monotonicity: adding an edge never lowers any score
        auto grown = edges;
        grown.push_back({"TL-NEW", "SK-3", rng.next_unit()});
        const auto bigger = capability_profile(grown, policy);
        for (const auto& [skill, score] : before.scores()) {
            CHECK(bigger.score(skill) >= score);
        }

        // boolean output stays in {0, 1}
        if (policy.kind == ReductionPolicy::Kind::Boolean) {
            for (const auto& [skill, score] : bigger.scores()) {
                CHECK((score == 0.0 || score == 1.0));
            }
        }
    }
}
