#include "iceberg/synth.hpp"

#include "iceberg/csv.hpp"
#include "iceberg/errors.hpp"
#include "iceberg/rng.hpp"
#include "iceberg/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <vector>

namespace iceberg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<const char*, 22> kMajorGroups = {
    "11", "13", "15", "17", "19", "21", "23", "25", "27", "29", "31",
    "33", "35", "37", "39", "41", "43", "45", "47", "49", "51", "53"};

constexpr std::array<const char*, 3> kCategories = {"work-activity", "skill", "knowledge"};
constexpr std::array<const char*, 3> kSources = {"protocol-implementation", "workflow-platform",
                                                 "directory"};

std::string pad(std::size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, value);
    return buf;
}

double round_to(double value, double scale) {
    return std::round(value * scale) / scale;
}

std::string state_code(std::size_t index) {
    std::string code(2, 'A');
    code[0] = static_cast<char>('A' + index / 26);
    code[1] = static_cast<char>('A' + index % 26);
    return code;
}

/// k distinct values in [0, n), in draw order.
std::vector<std::size_t> sample_distinct(SplitMix64& rng, std::size_t k, std::size_t n) {
    std::set<std::size_t> seen;
    std::vector<std::size_t> out;
    out.reserve(k);
    while (out.size() < k) {
        const std::size_t v = rng.next_below(n);
        if (seen.insert(v).second) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace

void SynthConfig::validate() const {
    const auto require = [](bool ok, const std::string& what) {
        if (!ok) {
            throw InputError("infeasible synth config: " + what);
        }
    };
    require(n_occupations >= 1 && n_occupations <= 9000, "n_occupations must be in [1, 9000]");
    require(n_skills >= 3 && n_skills <= 9999, "n_skills must be in [3, 9999]");
    require(n_skills <= 15 * n_occupations,
            "n_skills cannot all be covered with at most 15 skills per occupation");
    require(n_tools >= 1 && n_tools <= 9999, "n_tools must be in [1, 9999]");
    require(n_counties >= 1, "n_counties must be >= 1");
    require(n_states >= 1 && n_states <= 99, "n_states must be in [1, 99]");
    require(n_states <= n_counties, "more states than counties");
    require((n_counties + n_states - 1) / n_states <= 999,
            "counties per state exceed the 3-digit FIPS serial");
    require(n_industries >= 1, "n_industries must be >= 1");
    require(wage_range.lo >= 0.0 && wage_range.lo <= wage_range.hi, "wage_range is empty");
    require(employment_range.lo >= 0.0 && employment_range.lo <= employment_range.hi,
            "employment_range is empty");
}

SynthConfig SynthConfig::seed42() {
    return SynthConfig{};
}

SyntheticDataset SyntheticDataset::at(const std::filesystem::path& dir) {
    SyntheticDataset ds;
    ds.dir = dir;
    ds.taxonomy = dir / "taxonomy.csv";
    ds.tools = dir / "tools.csv";
    ds.employment = dir / "employment.csv";
    ds.geography = dir / "geography.csv";
    ds.state_metrics = dir / "state_metrics.csv";
    ds.transitions = dir / "transitions.csv";
    ds.external_tiers = dir / "external_tiers.csv";
    ds.scopes = dir / "scopes.csv";
    ds.manifest = dir / "manifest.json";
    return ds;
}

SyntheticDataset generate(const SynthConfig& config, const std::filesystem::path& dir) {
    config.validate();
    std::filesystem::create_directories(dir);
    const SyntheticDataset ds = SyntheticDataset::at(dir);

    // One stream, fixed draw order: requirements, tools, employment,
    // state metrics, transitions, external tiers.
    SplitMix64 rng(config.seed);

    // --- entities with deterministic identifiers ---
    struct OccupationSpec {
        std::string code;
        std::string title;
        std::string industry;
        std::vector<std::pair<std::size_t, std::pair<double, double>>> skills; // idx -> (imp, lvl)
    };
    std::vector<OccupationSpec> occupations(config.n_occupations);
    for (std::size_t i = 0; i < config.n_occupations; ++i) {
        auto& occ = occupations[i];
        occ.code = std::string(kMajorGroups[i % kMajorGroups.size()]) + "-" + pad(1000 + i, 4);
        occ.title = "Occupation " + occ.code;
        occ.industry = "IND-" + pad(i % config.n_industries, 2);
    }

    std::vector<std::string> skill_ids(config.n_skills);
    for (std::size_t j = 0; j < config.n_skills; ++j) {
        skill_ids[j] = "SK-" + pad(j, 4);
    }

    // --- skill requirements ---
    // Sizes first: 3..15 per occupation, then topped up round-robin until the
    // slots can absorb every skill (validate() guarantees feasibility).
    std::vector<std::size_t> skills_per_occupation(config.n_occupations);
    std::size_t total_slots = 0;
    for (auto& k : skills_per_occupation) {
        k = std::min<std::size_t>(3 + rng.next_below(13), config.n_skills);
        total_slots += k;
    }
    const std::size_t cap = std::min<std::size_t>(15, config.n_skills);
    for (std::size_t i = 0; total_slots < config.n_skills; i = (i + 1) % config.n_occupations) {
        if (skills_per_occupation[i] < cap) {
            ++skills_per_occupation[i];
            ++total_slots;
        }
    }

    // Deal skills from successive shuffles of the full skill list. The first
    // pass hands every skill to some occupation, so the loaded matrix
    // round-trips the declared skill count.
    std::vector<std::size_t> deck(config.n_skills);
    for (std::size_t j = 0; j < config.n_skills; ++j) {
        deck[j] = j;
    }
    std::size_t cursor = deck.size();
    const auto draw_skill = [&] {
        if (cursor == deck.size()) {
            for (std::size_t j = deck.size(); j > 1; --j) {
                std::swap(deck[j - 1], deck[rng.next_below(j)]);
            }
            cursor = 0;
        }
        return deck[cursor++];
    };

    std::size_t requirement_count = 0;
    for (std::size_t i = 0; i < config.n_occupations; ++i) {
        auto& occ = occupations[i];
        std::set<std::size_t> taken;
        std::vector<std::size_t> dealt;
        while (dealt.size() < skills_per_occupation[i]) {
            const std::size_t idx = draw_skill();
            if (taken.insert(idx).second) {
                dealt.push_back(idx);
            }
        }
        for (std::size_t idx : dealt) {
            const double importance = round_to(rng.next_in(1.0, 5.0), 1000.0);
            const double level = round_to(rng.next_in(0.0, 7.0), 1000.0);
            occ.skills.emplace_back(idx, std::make_pair(importance, level));
        }
        requirement_count += occ.skills.size();
    }

    {
        static constexpr std::array<std::string_view, 8> header = {
            "occupation_code", "occupation_title", "industry", "skill_id",
            "skill_name",      "skill_category",   "importance", "level"};
        csv::Writer writer(ds.taxonomy, header);
        for (const auto& occ : occupations) {
            for (const auto& [idx, rating] : occ.skills) {
                const std::array<std::string, 8> row = {
                    occ.code,
                    occ.title,
                    occ.industry,
                    skill_ids[idx],
                    "Skill " + std::to_string(idx),
                    kCategories[idx % kCategories.size()],
                    csv::format_double(rating.first),
                    csv::format_double(rating.second)};
                writer.row(row);
            }
        }
    }

    // --- tool catalog ---
    std::size_t edge_count = 0;
    {
        static constexpr std::array<std::string_view, 5> header = {
            "tool_id", "tool_name", "source", "skill_id", "confidence"};
        csv::Writer writer(ds.tools, header);
        for (std::size_t t = 0; t < config.n_tools; ++t) {
            const std::string tool_id = "TL-" + pad(t, 4);
            const std::size_t m =
                std::min<std::size_t>(1 + rng.next_below(5), config.n_skills); // 1..5
            for (std::size_t idx : sample_distinct(rng, m, config.n_skills)) {
                const std::array<std::string, 5> row = {
                    tool_id, "Tool " + std::to_string(t), kSources[t % kSources.size()],
                    skill_ids[idx], csv::format_double(round_to(rng.next_unit(), 1000.0))};
                writer.row(row);
                ++edge_count;
            }
        }
    }

    // --- geography: counties round-robin over states ---
    std::vector<std::string> county_fips(config.n_counties);
    std::vector<std::size_t> county_state(config.n_counties);
    {
        static constexpr std::array<std::string_view, 2> header = {"county_fips", "state"};
        csv::Writer writer(ds.geography, header);
        std::vector<std::size_t> serial(config.n_states, 0);
        for (std::size_t c = 0; c < config.n_counties; ++c) {
            const std::size_t s = c % config.n_states;
            county_state[c] = s;
            county_fips[c] = pad(s + 1, 2) + pad(++serial[s], 3);
            const std::array<std::string, 2> row = {county_fips[c], state_code(s)};
            writer.row(row);
        }
    }

    // --- employment: dense occupation x county table ---
    std::int64_t total_employment = 0;
    const std::int64_t emp_lo = std::llround(config.employment_range.lo);
    const std::int64_t emp_hi = std::llround(config.employment_range.hi);
    {
        static constexpr std::array<std::string_view, 4> header = {
            "occupation_code", "county_fips", "employment", "median_wage"};
        csv::Writer writer(ds.employment, header);
        for (const auto& occ : occupations) {
            for (std::size_t c = 0; c < config.n_counties; ++c) {
                const std::int64_t employment = rng.next_int(emp_lo, emp_hi);
                const double wage =
                    round_to(rng.next_in(config.wage_range.lo, config.wage_range.hi), 100.0);
                total_employment += employment;
                const std::array<std::string, 4> row = {occ.code, county_fips[c],
                                                        csv::format_int(employment),
                                                        csv::format_double(wage)};
                writer.row(row);
            }
        }
    }

    // --- state metrics ---
    {
        static constexpr std::array<std::string_view, 4> header = {
            "state", "gdp", "per_capita_income", "unemployment_rate"};
        csv::Writer writer(ds.state_metrics, header);
        for (std::size_t s = 0; s < config.n_states; ++s) {
            const std::array<std::string, 4> row = {
                state_code(s),
                csv::format_double(round_to(rng.next_in(2.0e10, 2.5e12), 0.01)),
                csv::format_double(round_to(rng.next_in(30000.0, 95000.0), 100.0)),
                csv::format_double(round_to(rng.next_in(0.02, 0.12), 10000.0))};
            writer.row(row);
        }
    }

    // --- transitions: preferential sampling from high-similarity pairs ---
    std::size_t transition_count = 0;
    {
        // Sparse weight maps (default policy) for the generator's own
        // similarity ranking.
        struct SparseVec {
            std::vector<std::pair<std::size_t, double>> items; // sorted by skill index
            double norm = 0.0;
        };
        std::vector<SparseVec> vecs(occupations.size());
        for (std::size_t i = 0; i < occupations.size(); ++i) {
            auto items = occupations[i].skills;
            std::sort(items.begin(), items.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double sq = 0.0;
            for (const auto& [idx, rating] : items) {
                const double w = rating.first * rating.second;
                vecs[i].items.emplace_back(idx, w);
                sq += w * w;
            }
            vecs[i].norm = std::sqrt(sq);
        }

        struct Pair {
            std::size_t a;
            std::size_t b;
            double similarity;
        };
        std::vector<Pair> pairs;
        pairs.reserve(occupations.size() * (occupations.size() - 1) / 2);
        for (std::size_t i = 0; i < occupations.size(); ++i) {
            for (std::size_t j = i + 1; j < occupations.size(); ++j) {
                double dot = 0.0;
                const auto& vi = vecs[i].items;
                const auto& vj = vecs[j].items;
                std::size_t p = 0;
                std::size_t q = 0;
                while (p < vi.size() && q < vj.size()) {
                    if (vi[p].first < vj[q].first) {
                        ++p;
                    } else if (vi[p].first > vj[q].first) {
                        ++q;
                    } else {
                        dot += vi[p].second * vj[q].second;
                        ++p;
                        ++q;
                    }
                }
                const double denom = vecs[i].norm * vecs[j].norm;
                pairs.push_back({i, j, denom > 0.0 ? dot / denom : 0.0});
            }
        }

        std::sort(pairs.begin(), pairs.end(), [&](const Pair& lhs, const Pair& rhs) {
            if (lhs.similarity != rhs.similarity) {
                return lhs.similarity > rhs.similarity;
            }
            return std::tie(occupations[lhs.a].code, occupations[lhs.b].code) <
                   std::tie(occupations[rhs.a].code, occupations[rhs.b].code);
        });

        const std::size_t n_pairs = pairs.size();
        const std::size_t target = std::min<std::size_t>(2 * config.n_occupations, n_pairs);
        const std::size_t decile = (n_pairs + 9) / 10;
        const std::size_t want_top = std::min<std::size_t>((target * 7 + 9) / 10, decile);

        std::vector<std::size_t> order(n_pairs);
        for (std::size_t i = 0; i < n_pairs; ++i) {
            order[i] = i;
        }
        std::set<std::size_t> chosen;
        // Partial Fisher-Yates over the decile, then over the remainder.
        for (std::size_t i = 0; i < want_top; ++i) {
            const std::size_t j = i + rng.next_below(decile - i);
            std::swap(order[i], order[j]);
            chosen.insert(order[i]);
        }
        for (std::size_t i = want_top; i < target; ++i) {
            const std::size_t j = i + rng.next_below(n_pairs - i);
            std::swap(order[i], order[j]);
            chosen.insert(order[i]);
        }

        std::vector<std::pair<std::string, std::string>> edges;
        edges.reserve(chosen.size());
        for (std::size_t idx : chosen) {
            const std::string& ca = occupations[pairs[idx].a].code;
            const std::string& cb = occupations[pairs[idx].b].code;
            edges.emplace_back(std::min(ca, cb), std::max(ca, cb));
        }
        std::sort(edges.begin(), edges.end());
        transition_count = edges.size();

        static constexpr std::array<std::string_view, 2> header = {"occupation_a",
                                                                   "occupation_b"};
        csv::Writer writer(ds.transitions, header);
        for (const auto& [a, b] : edges) {
            const std::array<std::string, 2> row = {a, b};
            writer.row(row);
        }
    }

    // --- external adoption tiers: random ranking, quarter/half/quarter ---
    {
        const std::size_t n = config.n_states;
        std::size_t leading = n >= 3 ? std::max<std::size_t>(1, n / 4) : (n == 2 ? 1 : 1);
        std::size_t aspiring = n >= 2 ? leading : 0;
        if (leading + aspiring > n) {
            aspiring = n - leading;
        }
        std::vector<std::pair<double, std::size_t>> ranked(n);
        for (std::size_t s = 0; s < n; ++s) {
            ranked[s] = {rng.next_unit(), s};
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) {
                return a.first > b.first;
            }
            return a.second < b.second;
        });
        std::vector<std::string> tier(n);
        for (std::size_t r = 0; r < n; ++r) {
            const std::size_t s = ranked[r].second;
            tier[s] = r < leading ? "leading" : (r < n - aspiring ? "emerging" : "aspiring");
        }
        static constexpr std::array<std::string_view, 2> header = {"state", "tier"};
        csv::Writer writer(ds.external_tiers, header);
        for (std::size_t s = 0; s < n; ++s) {
            const std::array<std::string, 2> row = {state_code(s), tier[s]};
            writer.row(row);
        }
    }

    // --- scopes ---
    {
        static constexpr std::array<std::string_view, 2> header = {
            "scope_name", "occupation_code_or_prefix"};
        csv::Writer writer(ds.scopes, header);
        const std::array<std::array<std::string, 2>, 3> rows = {{
            {"surface", "15"},
            {"admin", "13"},
            {"admin", "43"},
        }};
        for (const auto& row : rows) {
            writer.row(row);
        }
    }

    // --- manifest ---
    {
        ordered_json manifest;
        manifest["generator"] = "iceberg-synth";
        manifest["engine_version"] = std::string(kEngineVersion);
        manifest["prng"] = "splitmix64";
        manifest["seed"] = config.seed;
        manifest["config"] = {
            {"n_occupations", config.n_occupations},
            {"n_skills", config.n_skills},
            {"n_tools", config.n_tools},
            {"n_counties", config.n_counties},
            {"n_states", config.n_states},
            {"n_industries", config.n_industries},
            {"wage_range", {config.wage_range.lo, config.wage_range.hi}},
            {"employment_range", {config.employment_range.lo, config.employment_range.hi}},
        };
        manifest["counts"] = {
            {"occupations", config.n_occupations},
            {"skills", config.n_skills},
            {"tools", config.n_tools},
            {"counties", config.n_counties},
            {"states", config.n_states},
            {"industries", config.n_industries},
            {"requirements", requirement_count},
            {"tool_edges", edge_count},
            {"employment_records", config.n_occupations * config.n_counties},
            {"total_employment", total_employment},
            {"transitions", transition_count},
        };
        manifest["files"] = {
            {"taxonomy", "taxonomy.csv"},
            {"tools", "tools.csv"},
            {"employment", "employment.csv"},
            {"geography", "geography.csv"},
            {"state_metrics", "state_metrics.csv"},
            {"transitions", "transitions.csv"},
            {"external_tiers", "external_tiers.csv"},
            {"scopes", "scopes.csv"},
        };
        std::ofstream out(ds.manifest, std::ios::binary);
        if (!out) {
            throw InputError("cannot open output file: " + ds.manifest.string());
        }
        out << manifest.dump(2) << '\n';
    }

    return ds;
}

} // namespace iceberg
