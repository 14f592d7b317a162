#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iceberg {

enum class ToolSource { ProtocolImplementation, WorkflowPlatform, Directory };

ToolSource parse_tool_source(std::string_view text);
std::string_view to_string(ToolSource source);

struct Tool {
    std::string id;
    std::string name;
    ToolSource source;

    bool operator==(const Tool&) const = default;
};

struct ToolSkillEdge {
    std::string tool;
    std::string skill;
    double confidence; // [0, 1]

    bool operator==(const ToolSkillEdge&) const = default;
};

struct ToolCatalog {
    std::vector<Tool> tools;          // sorted by id
    std::vector<ToolSkillEdge> edges; // sorted by (tool, skill)
};

/// Loads a tool catalog CSV with header
///   tool_id,tool_name,source,skill_id,confidence
/// Rejects confidences outside [0,1], duplicate (tool, skill) edges and
/// conflicting tool metadata.
ToolCatalog load_tool_catalog(const std::filesystem::path& path);

/// How per-tool confidences collapse into one per-skill automatability
/// score. `max` keeps existence semantics (one capable tool suffices);
/// `boolean` snaps to {0,1} at threshold tau.
struct ReductionPolicy {
    enum class Kind { Max, Boolean };

    Kind kind = Kind::Max;
    double tau = 0.5; // only used by Boolean

    std::string name() const;
    static ReductionPolicy parse(std::string_view name, double tau = 0.5);
};

/// skill id -> automatability score in [0, 1]; absent skills read as 0.
class AutomatabilityMap {
public:
    AutomatabilityMap() = default;
    explicit AutomatabilityMap(std::map<std::string, double> scores)
        : scores_(std::move(scores)) {}

    double score(std::string_view skill) const;
    const std::map<std::string, double>& scores() const { return scores_; }

private:
    std::map<std::string, double> scores_;
};

/// Order-independent reduction of an edge list to per-skill scores.
AutomatabilityMap capability_profile(std::span<const ToolSkillEdge> edges,
                                     const ReductionPolicy& policy);

} // namespace iceberg
