#include "iceberg/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iceberg::oracle {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("oracle: cannot open " + path.string());
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (first) { // skip header
            first = false;
            continue;
        }
        if (!line.empty()) {
            rows.push_back(split(line));
        }
    }
    return rows;
}

double weight_of(const Dataset::Requirement& req, const Policies& policies) {
    if (policies.weight == "importance_x_level") {
        return req.importance * req.level;
    }
    if (policies.weight == "importance") {
        return req.importance;
    }
    throw std::runtime_error("oracle: unknown weight policy " + policies.weight);
}

double automatability(const Dataset& data, const std::string& skill, const Policies& policies) {
    const auto it = data.tool_confidences.find(skill);
    if (it == data.tool_confidences.end()) {
        return 0.0;
    }
    if (policies.reduction == "max") {
        double best = 0.0;
        for (double c : it->second) {
            if (c > best) {
                best = c;
            }
        }
        return best;
    }
    if (policies.reduction == "boolean") {
        for (double c : it->second) {
            if (c >= policies.tau) {
                return 1.0;
            }
        }
        return 0.0;
    }
    throw std::runtime_error("oracle: unknown reduction policy " + policies.reduction);
}

bool scope_matches(const Dataset& data, const std::string& scope,
                   const std::string& occupation) {
    if (scope == "all") {
        return true;
    }
    const auto it = data.scopes.find(scope);
    if (it == data.scopes.end()) {
        throw std::runtime_error("oracle: unknown scope " + scope);
    }
    for (const std::string& entry : it->second) {
        if (entry.size() == 2 ? occupation.substr(0, 2) == entry : occupation == entry) {
            return true;
        }
    }
    return false;
}

bool region_matches(const Dataset& data, char level, const std::string& region,
                    const std::string& county) {
    switch (level) {
    case 'c': return county == region;
    case 's': return data.state_of.at(county) == region;
    case 'n': return true;
    default: throw std::runtime_error("oracle: bad region level");
    }
}

} // namespace

Dataset Dataset::load(const std::filesystem::path& dir) {
    Dataset data;
    for (const auto& row : read_rows(dir / "taxonomy.csv")) {
        data.requirements[row[0]].push_back(
            {row[3], std::strtod(row[6].c_str(), nullptr), std::strtod(row[7].c_str(), nullptr)});
        data.industry_of[row[0]] = row[2];
    }
    for (const auto& row : read_rows(dir / "tools.csv")) {
        data.tool_confidences[row[3]].push_back(std::strtod(row[4].c_str(), nullptr));
    }
    for (const auto& row : read_rows(dir / "geography.csv")) {
        data.state_of[row[0]] = row[1];
    }
    for (const auto& row : read_rows(dir / "employment.csv")) {
        data.cells.push_back({row[0], row[1], std::strtod(row[2].c_str(), nullptr),
                              std::strtod(row[3].c_str(), nullptr)});
    }
    for (const auto& row : read_rows(dir / "scopes.csv")) {
        data.scopes[row[0]].push_back(row[1]);
    }
    return data;
}

double exposure(const Dataset& data, const std::string& occupation, const Policies& policies) {
    const auto it = data.requirements.find(occupation);
    if (it == data.requirements.end()) {
        throw std::runtime_error("oracle: unknown occupation " + occupation);
    }
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& req : it->second) {
        const double w = weight_of(req, policies);
        weighted += w * automatability(data, req.skill, policies);
        total += w;
    }
    return total > 0.0 ? weighted / total : 0.0;
}

double exposed_wage_value(const Dataset& data, const std::string& scope, char level,
                          const std::string& region, const Policies& policies) {
    double exposed = 0.0;
    for (const auto& cell : data.cells) {
        if (!region_matches(data, level, region, cell.county)) {
            continue;
        }
        if (scope_matches(data, scope, cell.occupation)) {
            exposed += exposure(data, cell.occupation, policies) * cell.employment * cell.wage;
        }
    }
    return exposed;
}

double regional_index(const Dataset& data, const std::string& scope, char level,
                      const std::string& region, const Policies& policies) {
    double base = 0.0;
    for (const auto& cell : data.cells) {
        if (region_matches(data, level, region, cell.county)) {
            base += cell.employment * cell.wage;
        }
    }
    if (base <= 0.0) {
        throw std::runtime_error("oracle: empty region " + region);
    }
    return exposed_wage_value(data, scope, level, region, policies) / base;
}

double hhi(const Dataset& data, const std::string& state, const Policies& policies) {
    std::map<std::string, double> by_industry;
    for (const auto& cell : data.cells) {
        if (data.state_of.at(cell.county) != state) {
            continue;
        }
        by_industry[data.industry_of.at(cell.occupation)] +=
            exposure(data, cell.occupation, policies) * cell.employment * cell.wage;
    }
    double total = 0.0;
    for (const auto& [industry, value] : by_industry) {
        total += value;
    }
    if (total <= 0.0) {
        throw std::runtime_error("oracle: zero exposed value in state " + state);
    }
    double sum_squares = 0.0;
    for (const auto& [industry, value] : by_industry) {
        const double share = value / total;
        sum_squares += share * share;
    }
    return 10000.0 * sum_squares;
}

double similarity(const Dataset& data, const std::string& occupation_a,
                  const std::string& occupation_b, const Policies& policies) {
    const auto weights = [&](const std::string& occupation) {
        std::map<std::string, double> w;
        for (const auto& req : data.requirements.at(occupation)) {
            w[req.skill] = weight_of(req, policies);
        }
        return w;
    };
    const std::map<std::string, double> wa = weights(occupation_a);
    const std::map<std::string, double> wb = weights(occupation_b);

    double dot = 0.0;
    for (const auto& [skill, w] : wa) {
        const auto it = wb.find(skill);
        if (it != wb.end()) {
            dot += w * it->second;
        }
    }
    double na = 0.0;
    for (const auto& [skill, w] : wa) {
        na += w * w;
    }
    double nb = 0.0;
    for (const auto& [skill, w] : wb) {
        nb += w * w;
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace iceberg::oracle
