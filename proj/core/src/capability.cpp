#include "iceberg/capability.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace iceberg {

ToolSource parse_tool_source(std::string_view text) {
    if (text == "protocol-implementation") {
        return ToolSource::ProtocolImplementation;
    }
    if (text == "workflow-platform") {
        return ToolSource::WorkflowPlatform;
    }
    if (text == "directory") {
        return ToolSource::Directory;
    }
    throw InputError("unknown tool source '" + std::string(text) +
                     "', expected protocol-implementation, workflow-platform or directory");
}

std::string_view to_string(ToolSource source) {
    switch (source) {
    case ToolSource::ProtocolImplementation: return "protocol-implementation";
    case ToolSource::WorkflowPlatform: return "workflow-platform";
    case ToolSource::Directory: return "directory";
    }
    throw InternalError("invalid ToolSource value");
}

ToolCatalog load_tool_catalog(const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 5> kHeader = {
        "tool_id", "tool_name", "source", "skill_id", "confidence"};

    csv::Reader reader(path, kHeader);

    std::map<std::string, Tool> tools;
    std::map<std::pair<std::string, std::string>, double> edges;

    std::vector<std::string> row;
    while (reader.next(row)) {
        ToolSource source;
        try {
            source = parse_tool_source(row[2]);
        } catch (const InputError& e) {
            reader.fail(e.what());
        }
        Tool tool{row[0], row[1], source};
        if (const auto [it, inserted] = tools.emplace(tool.id, tool); !inserted) {
            if (it->second != tool) {
                reader.fail("tool '" + tool.id +
                            "' redeclared with a different name or source");
            }
        }

        const double confidence = reader.to_double(row[4], "confidence");
        if (confidence < 0.0 || confidence > 1.0) {
            reader.fail("confidence " + row[4] + " for (" + row[0] + ", " + row[3] +
                        ") outside [0, 1]");
        }
        if (!edges.emplace(std::make_pair(row[0], row[3]), confidence).second) {
            reader.fail("duplicate edge for (" + row[0] + ", " + row[3] + ")");
        }
    }

    ToolCatalog catalog;
    catalog.tools.reserve(tools.size());
    for (auto& [id, tool] : tools) {
        catalog.tools.push_back(std::move(tool));
    }
    catalog.edges.reserve(edges.size());
    for (const auto& [key, confidence] : edges) {
        catalog.edges.push_back({key.first, key.second, confidence});
    }
    return catalog;
}

std::string ReductionPolicy::name() const {
    switch (kind) {
    case Kind::Max: return "max";
    case Kind::Boolean: return "boolean";
    }
    throw InternalError("invalid ReductionPolicy kind");
}

ReductionPolicy ReductionPolicy::parse(std::string_view name, double tau) {
    if (name == "max") {
        return {Kind::Max, tau};
    }
    if (name == "boolean") {
        if (tau < 0.0 || tau > 1.0) {
            throw InputError("boolean reduction threshold tau must be in [0, 1]");
        }
        return {Kind::Boolean, tau};
    }
    throw InputError("unknown reduction policy '" + std::string(name) +
                     "' (known: max, boolean)");
}

double AutomatabilityMap::score(std::string_view skill) const {
    const auto it = scores_.find(std::string(skill));
    return it == scores_.end() ? 0.0 : it->second;
}

AutomatabilityMap capability_profile(std::span<const ToolSkillEdge> edges,
                                     const ReductionPolicy& policy) {
    std::map<std::string, double> scores;
    for (const auto& edge : edges) {
        if (edge.confidence < 0.0 || edge.confidence > 1.0) {
            throw InputError("edge (" + edge.tool + ", " + edge.skill +
                             ") has confidence outside [0, 1]");
        }
        double contribution = 0.0;
        switch (policy.kind) {
        case ReductionPolicy::Kind::Max:
            contribution = edge.confidence;
            break;
        case ReductionPolicy::Kind::Boolean:
            contribution = edge.confidence >= policy.tau ? 1.0 : 0.0;
            break;
        }
        auto [it, inserted] = scores.emplace(edge.skill, contribution);
        if (!inserted) {
            it->second = std::max(it->second, contribution);
        }
    }
    return AutomatabilityMap(std::move(scores));
}

} // namespace iceberg
