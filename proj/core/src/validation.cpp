#include "iceberg/validation.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/numeric.hpp"
#include "iceberg/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace iceberg {

std::vector<PairSimilarity> pairwise_similarity(const SkillRequirementMatrix& matrix,
                                                const WeightPolicy& policy, int workers) {
    const std::size_t n = matrix.occupation_count();
    if (n < 2) {
        throw InputError("pairwise similarity requires >= 2 occupations, got " +
                         std::to_string(n));
    }

    std::vector<std::vector<double>> vectors(n);
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        vectors[i] = occupation_vector(matrix, matrix.occupations()[i].code, policy);
        double sq = 0.0;
        for (double v : vectors[i]) {
            sq += v * v;
        }
        norms[i] = std::sqrt(sq);
        if (norms[i] == 0.0) {
            throw InputError("occupation '" + matrix.occupations()[i].code +
                             "' has a zero skill vector under policy '" + policy.name + "'");
        }
    }

    // Occupations are stored sorted by code, so pair (i, j) with i < j is
    // already in lexicographic key order.
    std::vector<PairSimilarity> pairs(n * (n - 1) / 2);
    parallel_for(n - 1, workers, [&](std::size_t i) {
        // Row offset of pair block starting at occupation i.
        std::size_t offset = i * (n - 1) - i * (i + 1) / 2 + i;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0.0;
            const auto& vi = vectors[i];
            const auto& vj = vectors[j];
            for (std::size_t k = 0; k < vi.size(); ++k) {
                dot += vi[k] * vj[k];
            }
            pairs[offset + (j - i - 1)] = {matrix.occupations()[i].code,
                                           matrix.occupations()[j].code,
                                           dot / (norms[i] * norms[j])};
        }
    });
    return pairs;
}

bool TransitionNetwork::contains(std::string_view a, std::string_view b) const {
    auto key = a < b ? std::make_pair(std::string(a), std::string(b))
                     : std::make_pair(std::string(b), std::string(a));
    return edges_.contains(key);
}

TransitionNetwork load_transitions(const std::filesystem::path& path,
                                   const std::set<std::string>& known_codes) {
    static constexpr std::array<std::string_view, 2> kHeader = {"occupation_a", "occupation_b"};
    csv::Reader reader(path, kHeader);

    std::set<std::pair<std::string, std::string>> edges;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row[0] == row[1]) {
            reader.fail("self-pair (" + row[0] + ", " + row[1] + ") is not a transition");
        }
        for (int i : {0, 1}) {
            if (!known_codes.contains(row[i])) {
                reader.fail("occupation '" + row[i] + "' is not in the taxonomy");
            }
        }
        auto key = row[0] < row[1] ? std::make_pair(row[0], row[1])
                                   : std::make_pair(row[1], row[0]);
        edges.insert(std::move(key));
    }
    return TransitionNetwork(std::move(edges));
}

std::string Selector::describe() const {
    switch (kind) {
    case Kind::Threshold:
        return "similarity >= " + csv::format_double(value);
    case Kind::TopPercentile:
        return "top " + csv::format_double(value * 100.0) + "% of pairs by similarity";
    }
    throw InternalError("invalid Selector kind");
}

SimilarityReport transition_recall(std::span<const PairSimilarity> similarities,
                                   const TransitionNetwork& network, const Selector& selector) {
    if (network.empty()) {
        throw InputError("transition network is empty");
    }

    std::vector<const PairSimilarity*> selected;
    switch (selector.kind) {
    case Selector::Kind::Threshold:
        for (const auto& pair : similarities) {
            if (pair.similarity >= selector.value) {
                selected.push_back(&pair);
            }
        }
        break;
    case Selector::Kind::TopPercentile: {
        if (selector.value < 0.0 || selector.value > 1.0) {
            throw InputError("top-percentile selector fraction must be in [0, 1]");
        }
        std::vector<const PairSimilarity*> ranked;
        ranked.reserve(similarities.size());
        for (const auto& pair : similarities) {
            ranked.push_back(&pair);
        }
        // Descending similarity, lexicographic pair key on ties.
        std::sort(ranked.begin(), ranked.end(),
                  [](const PairSimilarity* lhs, const PairSimilarity* rhs) {
                      if (lhs->similarity != rhs->similarity) {
                          return lhs->similarity > rhs->similarity;
                      }
                      return std::tie(lhs->a, lhs->b) < std::tie(rhs->a, rhs->b);
                  });
        const auto count = static_cast<std::size_t>(
            std::ceil(selector.value * static_cast<double>(ranked.size())));
        ranked.resize(std::min(count, ranked.size()));
        selected = std::move(ranked);
        break;
    }
    }

    if (selected.empty()) {
        throw InputError("selector (" + selector.describe() + ") selected no pairs");
    }

    std::size_t hits = 0;
    for (const PairSimilarity* pair : selected) {
        if (network.contains(pair->a, pair->b)) {
            ++hits;
        }
    }
    return {selector.describe(), selected.size(),
            static_cast<double>(hits) / static_cast<double>(network.size()),
            static_cast<double>(hits) / static_cast<double>(selected.size())};
}

AdoptionTier parse_adoption_tier(std::string_view text) {
    if (text == "leading") {
        return AdoptionTier::Leading;
    }
    if (text == "emerging") {
        return AdoptionTier::Emerging;
    }
    if (text == "aspiring") {
        return AdoptionTier::Aspiring;
    }
    throw InputError("unknown adoption tier '" + std::string(text) +
                     "', expected leading, emerging or aspiring");
}

std::string_view to_string(AdoptionTier tier) {
    switch (tier) {
    case AdoptionTier::Leading: return "leading";
    case AdoptionTier::Emerging: return "emerging";
    case AdoptionTier::Aspiring: return "aspiring";
    }
    throw InternalError("invalid AdoptionTier value");
}

std::size_t TierAssignment::count(AdoptionTier tier) const {
    std::size_t n = 0;
    for (const auto& [state, t] : tiers_) {
        if (t == tier) {
            ++n;
        }
    }
    return n;
}

TierAssignment load_external_tiers(const std::filesystem::path& path) {
    static constexpr std::array<std::string_view, 2> kHeader = {"state", "tier"};
    csv::Reader reader(path, kHeader);

    std::map<std::string, AdoptionTier> tiers;
    std::vector<std::string> row;
    while (reader.next(row)) {
        AdoptionTier tier;
        try {
            tier = parse_adoption_tier(row[1]);
        } catch (const InputError& e) {
            reader.fail(e.what());
        }
        if (!tiers.emplace(row[0], tier).second) {
            reader.fail("state '" + row[0] + "' assigned more than one tier");
        }
    }
    if (tiers.empty()) {
        throw InputError(path.string() + ": tier file has no states");
    }
    return TierAssignment(std::move(tiers));
}

TierAssignment rank_to_tiers(const std::map<std::string, double>& values,
                             const TierSizes& sizes) {
    const std::size_t total = sizes.leading + sizes.emerging + sizes.aspiring;
    if (total != values.size()) {
        throw InputError("tier sizes sum to " + std::to_string(total) + " but " +
                         std::to_string(values.size()) + " states were ranked");
    }

    std::vector<std::pair<std::string, double>> ranked(values.begin(), values.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& lhs, const auto& rhs) {
        if (lhs.second != rhs.second) {
            return lhs.second > rhs.second;
        }
        return lhs.first < rhs.first;
    });

    std::map<std::string, AdoptionTier> tiers;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        AdoptionTier tier = AdoptionTier::Aspiring;
        if (i < sizes.leading) {
            tier = AdoptionTier::Leading;
        } else if (i < sizes.leading + sizes.emerging) {
            tier = AdoptionTier::Emerging;
        }
        tiers.emplace(ranked[i].first, tier);
    }
    return TierAssignment(std::move(tiers));
}

TierAgreement tier_agreement(const TierAssignment& ours, const TierAssignment& external) {
    std::vector<std::string> only_ours;
    std::vector<std::string> only_external;
    for (const auto& [state, tier] : ours.tiers()) {
        if (!external.tiers().contains(state)) {
            only_ours.push_back(state);
        }
    }
    for (const auto& [state, tier] : external.tiers()) {
        if (!ours.tiers().contains(state)) {
            only_external.push_back(state);
        }
    }
    if (!only_ours.empty() || !only_external.empty()) {
        std::string detail;
        for (const auto& state : only_ours) {
            detail += " +" + state;
        }
        for (const auto& state : only_external) {
            detail += " -" + state;
        }
        throw InputError("tier assignments cover different state sets:" + detail);
    }

    TierAgreement agreement{};
    std::size_t matched = 0;
    for (const auto& [state, tier] : ours.tiers()) {
        const AdoptionTier other = external.tiers().at(state);
        if (tier == other) {
            ++matched;
            switch (tier) {
            case AdoptionTier::Leading: ++agreement.leading.matched; break;
            case AdoptionTier::Emerging: ++agreement.emerging.matched; break;
            case AdoptionTier::Aspiring: ++agreement.aspiring.matched; break;
            }
        }
    }
    agreement.overall =
        static_cast<double>(matched) / static_cast<double>(ours.tiers().size());
    agreement.leading.total_ours = ours.count(AdoptionTier::Leading);
    agreement.emerging.total_ours = ours.count(AdoptionTier::Emerging);
    agreement.aspiring.total_ours = ours.count(AdoptionTier::Aspiring);
    agreement.leading.total_external = external.count(AdoptionTier::Leading);
    agreement.emerging.total_external = external.count(AdoptionTier::Emerging);
    agreement.aspiring.total_external = external.count(AdoptionTier::Aspiring);
    return agreement;
}

RegressionFit regress(const std::map<std::string, double>& x,
                      const std::map<std::string, double>& y) {
    if (x.size() != y.size()) {
        throw InputError("regression inputs have different sizes");
    }
    for (const auto& [state, value] : x) {
        if (!y.contains(state)) {
            throw InputError("regression inputs cover different state sets ('" + state +
                             "' missing from y)");
        }
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw InputError("regression requires >= 2 observations");
    }

    CompensatedSum sx;
    CompensatedSum sy;
    for (const auto& [state, value] : x) {
        sx.add(value);
        sy.add(y.at(state));
    }
    const double mean_x = sx.value() / static_cast<double>(n);
    const double mean_y = sy.value() / static_cast<double>(n);

    CompensatedSum sxx;
    CompensatedSum syy;
    CompensatedSum sxy;
    for (const auto& [state, xv] : x) {
        const double dx = xv - mean_x;
        const double dy = y.at(state) - mean_y;
        sxx.add(dx * dx);
        syy.add(dy * dy);
        sxy.add(dx * dy);
    }
    const double var_x = sxx.value();
    if (var_x == 0.0) {
        throw InputError("regression predictor is constant");
    }
    const double var_y = syy.value();
    const double cov = sxy.value();

    const double slope = cov / var_x;
    const double intercept = mean_y - slope * mean_x;
    // y constant: the fit is exact, the correlation degenerate.
    const double r2 = var_y == 0.0 ? 1.0 : (cov * cov) / (var_x * var_y);
    return {slope, intercept, r2, n};
}

} // namespace iceberg
