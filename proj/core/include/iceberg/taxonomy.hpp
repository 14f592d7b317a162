#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace iceberg {

enum class SkillCategory { WorkActivity, Skill, Knowledge };

SkillCategory parse_skill_category(std::string_view text);
std::string_view to_string(SkillCategory category);

struct Skill {
    std::string id;
    std::string name;
    SkillCategory category;

    bool operator==(const Skill&) const = default;
};

struct Occupation {
    std::string code;     // SOC-style "NN-NNNN"
    std::string title;
    std::string industry; // sector tag used by the concentration analysis

    std::string major_group() const { return code.substr(0, 2); }

    bool operator==(const Occupation&) const = default;
};

/// How a skill's importance and level ratings combine into its weight
/// within an occupation. Pluggable because the published construction
/// names the ingredients but not the formula.
struct WeightPolicy {
    std::string name;
    double (*weight)(double importance, double level);
};

/// Named policies: "importance_x_level" (default) and "importance".
const WeightPolicy& weight_policy(std::string_view name);
const WeightPolicy& default_weight_policy();
std::vector<std::string> weight_policy_names();

/// Occupation x skill requirement ratings over a shared skill basis.
/// Immutable after load; concurrent reads are safe.
class SkillRequirementMatrix {
public:
    struct Entry {
        std::size_t skill; // index into skills()
        double importance; // [1, 5]
        double level;      // [0, 7]

        bool operator==(const Entry&) const = default;
    };

    const std::vector<Occupation>& occupations() const { return occupations_; }
    const std::vector<Skill>& skills() const { return skills_; }
    std::size_t occupation_count() const { return occupations_.size(); }
    std::size_t skill_count() const { return skills_.size(); }

    bool has_occupation(std::string_view code) const;
    /// Throws InputError when the code is unknown.
    std::size_t occupation_index(std::string_view code) const;
    const Occupation& occupation(std::string_view code) const;

    std::span<const Entry> requirements(std::size_t occupation_index) const;
    std::span<const Entry> requirements(std::string_view code) const;

    bool operator==(const SkillRequirementMatrix& other) const;

private:
    friend SkillRequirementMatrix load_taxonomy(const std::filesystem::path&);

    std::vector<Occupation> occupations_;             // sorted by code
    std::vector<Skill> skills_;                       // sorted by id
    std::vector<std::vector<Entry>> entries_;         // per occupation, sorted by skill index
    std::unordered_map<std::string, std::size_t> occupation_by_code_;
};

/// Loads and validates a taxonomy CSV with header
///   occupation_code,occupation_title,industry,skill_id,skill_name,skill_category,importance,level
/// Occupations and skills are induced from the rows. The result is
/// independent of row order: entities are sorted by their identifiers.
SkillRequirementMatrix load_taxonomy(const std::filesystem::path& path);

/// Dense nonnegative vector over the matrix's full skill basis; component
/// for skill s is policy.weight(importance_s, level_s), 0 where the
/// occupation has no requirement.
std::vector<double> occupation_vector(const SkillRequirementMatrix& matrix,
                                      std::string_view occupation_code,
                                      const WeightPolicy& policy);

} // namespace iceberg
