#include "iceberg/taxonomy.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace iceberg {

namespace {

bool valid_occupation_code(std::string_view code) {
    if (code.size() != 7 || code[2] != '-') {
        return false;
    }
    for (std::size_t i : {0u, 1u, 3u, 4u, 5u, 6u}) {
        if (!std::isdigit(static_cast<unsigned char>(code[i]))) {
            return false;
        }
    }
    return true;
}

double weight_importance_x_level(double importance, double level) {
    return importance * level;
}

double weight_importance_only(double importance, double /*level*/) {
    return importance;
}

const std::array<WeightPolicy, 2> kWeightPolicies = {{
    {"importance_x_level", weight_importance_x_level},
    {"importance", weight_importance_only},
}};

} // namespace

SkillCategory parse_skill_category(std::string_view text) {
    if (text == "work-activity") {
        return SkillCategory::WorkActivity;
    }
    if (text == "skill") {
        return SkillCategory::Skill;
    }
    if (text == "knowledge") {
        return SkillCategory::Knowledge;
    }
    throw InputError("unknown skill category '" + std::string(text) +
                     "', expected work-activity, skill or knowledge");
}

std::string_view to_string(SkillCategory category) {
    switch (category) {
    case SkillCategory::WorkActivity: return "work-activity";
    case SkillCategory::Skill: return "skill";
    case SkillCategory::Knowledge: return "knowledge";
    }
    throw InternalError("invalid SkillCategory value");
}

const WeightPolicy& weight_policy(std::string_view name) {
    for (const auto& policy : kWeightPolicies) {
        if (policy.name == name) {
            return policy;
        }
    }
    std::string known;
    for (const auto& policy : kWeightPolicies) {
        known += known.empty() ? policy.name : ", " + policy.name;
    }
    throw InputError("unknown weight policy '" + std::string(name) + "' (known: " + known + ")");
}

const WeightPolicy& default_weight_policy() {
    return kWeightPolicies[0];
}

std::vector<std::string> weight_policy_names() {
    std::vector<std::string> names;
    for (const auto& policy : kWeightPolicies) {
        names.push_back(policy.name);
    }
    return names;
}

bool SkillRequirementMatrix::has_occupation(std::string_view code) const {
    return occupation_by_code_.contains(std::string(code));
}

std::size_t SkillRequirementMatrix::occupation_index(std::string_view code) const {
    const auto it = occupation_by_code_.find(std::string(code));
    if (it == occupation_by_code_.end()) {
        throw InputError("unknown occupation '" + std::string(code) + "'");
    }
    return it->second;
}

const Occupation& SkillRequirementMatrix::occupation(std::string_view code) const {
    return occupations_[occupation_index(code)];
}

std::span<const SkillRequirementMatrix::Entry>
SkillRequirementMatrix::requirements(std::size_t occupation_index) const {
    return entries_[occupation_index];
}

std::span<const SkillRequirementMatrix::Entry>
SkillRequirementMatrix::requirements(std::string_view code) const {
    return entries_[occupation_index(code)];
}

bool SkillRequirementMatrix::operator==(const SkillRequirementMatrix& other) const {
    return occupations_ == other.occupations_ && skills_ == other.skills_ &&
           entries_ == other.entries_;
}

SkillRequirementMatrix load_taxonomy(const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 8> kHeader = {
        "occupation_code", "occupation_title", "industry",
        "skill_id",        "skill_name",       "skill_category",
        "importance",      "level"};

    csv::Reader reader(path, kHeader);

    // Keyed containers keep the load independent of row order.
    std::map<std::string, Occupation> occupations;
    std::map<std::string, Skill> skills;
    struct RawEntry {
        double importance;
        double level;
    };
    std::map<std::pair<std::string, std::string>, RawEntry> entries;

    std::vector<std::string> row;
    while (reader.next(row)) {
        const std::string& code = row[0];
        if (!valid_occupation_code(code)) {
            reader.fail("occupation code '" + code + "' does not match NN-NNNN");
        }
        Occupation occ{code, row[1], row[2]};
        if (const auto [it, inserted] = occupations.emplace(code, occ); !inserted) {
            if (it->second != occ) {
                reader.fail("occupation '" + code +
                            "' redeclared with a different title or industry");
            }
        }

        const std::string& skill_id = row[3];
        SkillCategory category;
        try {
            category = parse_skill_category(row[5]);
        } catch (const InputError& e) {
            reader.fail(e.what());
        }
        Skill skill{skill_id, row[4], category};
        if (const auto [it, inserted] = skills.emplace(skill_id, skill); !inserted) {
            if (it->second != skill) {
                reader.fail("skill '" + skill_id +
                            "' redeclared with a different name or category");
            }
        }

        const double importance = reader.to_double(row[6], "importance");
        if (importance < 1.0 || importance > 5.0) {
            reader.fail("importance " + row[6] + " for (" + code + ", " + skill_id +
                        ") outside [1, 5]");
        }
        const double level = reader.to_double(row[7], "level");
        if (level < 0.0 || level > 7.0) {
            reader.fail("level " + row[7] + " for (" + code + ", " + skill_id +
                        ") outside [0, 7]");
        }

        if (!entries.emplace(std::make_pair(code, skill_id), RawEntry{importance, level}).second) {
            reader.fail("duplicate requirement for (" + code + ", " + skill_id + ")");
        }
    }

    if (occupations.empty()) {
        throw InputError(path.string() + ": taxonomy contains no requirement rows");
    }

    SkillRequirementMatrix matrix;
    matrix.occupations_.reserve(occupations.size());
    for (auto& [code, occ] : occupations) {
        matrix.occupation_by_code_.emplace(code, matrix.occupations_.size());
        matrix.occupations_.push_back(std::move(occ));
    }
    std::unordered_map<std::string, std::size_t> skill_index;
    matrix.skills_.reserve(skills.size());
    for (auto& [id, skill] : skills) {
        skill_index.emplace(id, matrix.skills_.size());
        matrix.skills_.push_back(std::move(skill));
    }

    matrix.entries_.resize(matrix.occupations_.size());
    for (const auto& [key, raw] : entries) {
        const std::size_t occ = matrix.occupation_by_code_.at(key.first);
        const std::size_t skill = skill_index.at(key.second);
        matrix.entries_[occ].push_back({skill, raw.importance, raw.level});
    }
    // Map iteration delivers (occupation, skill id) lexicographic order, and
    // skill indices follow id order, so each entry list is already sorted.
    return matrix;
}

std::vector<double> occupation_vector(const SkillRequirementMatrix& matrix,
                                      std::string_view occupation_code,
                                      const WeightPolicy& policy) {
    std::vector<double> vec(matrix.skill_count(), 0.0);
    for (const auto& entry : matrix.requirements(occupation_code)) {
        vec[entry.skill] = policy.weight(entry.importance, entry.level);
    }
    return vec;
}

} // namespace iceberg
