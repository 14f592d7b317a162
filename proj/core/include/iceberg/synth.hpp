#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace iceberg {

struct Interval {
    double lo;
    double hi;
};

/// Dimensions and value ranges for a synthetic dataset. All randomness is
/// drawn from one SplitMix64 stream seeded with `seed`, so a config maps to
/// byte-identical files on every platform.
struct SynthConfig {
    std::uint64_t seed = 42;
    std::size_t n_occupations = 50;
    std::size_t n_skills = 120;
    std::size_t n_tools = 40;
    std::size_t n_counties = 30;
    std::size_t n_states = 5;
    std::size_t n_industries = 8;
    Interval wage_range{30000.0, 120000.0};
    Interval employment_range{10.0, 5000.0};

    /// Throws InputError on infeasible combinations (e.g. more states than
    /// counties, or counts that overflow the identifier formats).
    void validate() const;

    /// The desk-scale fixture used throughout the test suites.
    static SynthConfig seed42();
};

/// File layout of a generated dataset directory.
struct SyntheticDataset {
    std::filesystem::path dir;
    std::filesystem::path taxonomy;
    std::filesystem::path tools;
    std::filesystem::path employment;
    std::filesystem::path geography;
    std::filesystem::path state_metrics;
    std::filesystem::path transitions;
    std::filesystem::path external_tiers;
    std::filesystem::path scopes;
    std::filesystem::path manifest;

    static SyntheticDataset at(const std::filesystem::path& dir);
};

/// Generates all input files plus manifest.json under `dir`. Deterministic:
/// the same config yields byte-identical output. Every occupation gets 3-15
/// skills; transition edges are drawn 70% from the top decile of true
/// pairwise similarity and 30% uniformly, so recall validation has signal.
SyntheticDataset generate(const SynthConfig& config, const std::filesystem::path& dir);

} // namespace iceberg
