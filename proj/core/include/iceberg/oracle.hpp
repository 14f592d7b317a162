#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace iceberg::oracle {

/// Naive re-implementations of the engine's core formulas, used as ground
/// truth in the acceptance suite. This translation unit deliberately shares
/// nothing with the engine besides file formats: it has its own CSV
/// splitting, plain-loop accumulation and direct-definition arithmetic.

/// A generated dataset parsed into plain maps (assumes the generator's
/// unquoted CSV output).
struct Dataset {
    struct Requirement {
        std::string skill;
        double importance;
        double level;
    };
    struct Cell {
        std::string occupation;
        std::string county;
        double employment;
        double wage;
    };

    std::map<std::string, std::vector<Requirement>> requirements; // by occupation
    std::map<std::string, std::string> industry_of;               // occupation -> industry
    std::map<std::string, std::vector<double>> tool_confidences;  // skill -> confidences
    std::vector<Cell> cells;                                      // employment file order
    std::map<std::string, std::string> state_of;                  // county -> state
    std::map<std::string, std::vector<std::string>> scopes;       // scope -> entries

    static Dataset load(const std::filesystem::path& dir);
};

struct Policies {
    std::string weight = "importance_x_level"; // or "importance"
    std::string reduction = "max";             // or "boolean"
    double tau = 0.5;
};

double exposure(const Dataset& data, const std::string& occupation, const Policies& policies);

/// level: 'c' county, 's' state, 'n' national. Scope "all" is unrestricted.
double regional_index(const Dataset& data, const std::string& scope, char level,
                      const std::string& region, const Policies& policies);

double exposed_wage_value(const Dataset& data, const std::string& scope, char level,
                          const std::string& region, const Policies& policies);

double hhi(const Dataset& data, const std::string& state, const Policies& policies);

double similarity(const Dataset& data, const std::string& occupation_a,
                  const std::string& occupation_b, const Policies& policies);

} // namespace iceberg::oracle
