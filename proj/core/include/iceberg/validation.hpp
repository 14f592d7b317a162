#pragma once

#include "iceberg/taxonomy.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iceberg {

struct PairSimilarity {
    std::string a; // a < b lexicographically
    std::string b;
    double similarity; // cosine, in [-1, 1]
};

/// Cosine similarity for every unordered occupation pair, using the same
/// skill vectors the exposure index weights. Results are ordered by
/// lexicographic pair key regardless of worker count. Errors when any
/// occupation has a zero vector or fewer than two occupations exist.
std::vector<PairSimilarity> pairwise_similarity(const SkillRequirementMatrix& matrix,
                                                const WeightPolicy& policy, int workers = 1);

/// Observed career-mobility ground truth: unordered occupation pairs.
class TransitionNetwork {
public:
    TransitionNetwork() = default;
    explicit TransitionNetwork(std::set<std::pair<std::string, std::string>> edges)
        : edges_(std::move(edges)) {}

    bool contains(std::string_view a, std::string_view b) const;
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }

private:
    std::set<std::pair<std::string, std::string>> edges_; // normalized a < b
};

/// Loads a transition CSV with header `occupation_a,occupation_b`.
/// Self-pairs are rejected; every code must be in `known_codes`.
TransitionNetwork load_transitions(const std::filesystem::path& path,
                                   const std::set<std::string>& known_codes);

/// How the "highly similar" pair set is selected.
struct Selector {
    enum class Kind { Threshold, TopPercentile };

    Kind kind = Kind::TopPercentile;
    double value = 0.01; // similarity cutoff, or fraction of pairs

    std::string describe() const;
};

struct SimilarityReport {
    std::string selector;      // human-readable description of the rule used
    std::size_t selected_count;
    double recall;    // |selected ∩ transitions| / |transitions|
    double precision; // |selected ∩ transitions| / |selected|
};

/// Both recall and precision are reported; selection ties are broken by
/// lexicographic pair key so the result is deterministic.
SimilarityReport transition_recall(std::span<const PairSimilarity> similarities,
                                   const TransitionNetwork& network, const Selector& selector);

enum class AdoptionTier { Leading, Emerging, Aspiring };

AdoptionTier parse_adoption_tier(std::string_view text);
std::string_view to_string(AdoptionTier tier);

class TierAssignment {
public:
    TierAssignment() = default;
    explicit TierAssignment(std::map<std::string, AdoptionTier> tiers)
        : tiers_(std::move(tiers)) {}

    const std::map<std::string, AdoptionTier>& tiers() const { return tiers_; }
    std::size_t count(AdoptionTier tier) const;

private:
    std::map<std::string, AdoptionTier> tiers_;
};

/// Loads an external tier CSV with header `state,tier`
/// (tier in {leading, emerging, aspiring}).
TierAssignment load_external_tiers(const std::filesystem::path& path);

struct TierSizes {
    std::size_t leading;
    std::size_t emerging;
    std::size_t aspiring;
};

/// Ranks states by value descending (ties broken by state code ascending)
/// and cuts the ranking into the given group sizes.
TierAssignment rank_to_tiers(const std::map<std::string, double>& values, const TierSizes& sizes);

struct TierAgreement {
    struct PerTier {
        std::size_t matched;
        std::size_t total_ours;     // states with this tier in the first assignment
        std::size_t total_external; // and in the second
    };

    double overall; // matching states / total states
    PerTier leading;
    PerTier emerging;
    PerTier aspiring;
};

/// Errors when the two assignments cover different state sets, listing the
/// difference.
TierAgreement tier_agreement(const TierAssignment& ours, const TierAssignment& external);

struct RegressionFit {
    double slope;
    double intercept;
    double r2; // squared Pearson correlation, in [0, 1]
    std::size_t n;
};

/// Ordinary least squares of y on x over the common (and required equal)
/// state set. Errors on constant x or mismatched state sets.
RegressionFit regress(const std::map<std::string, double>& x,
                      const std::map<std::string, double>& y);

} // namespace iceberg
