#pragma once

#include <cstdint>
#include <filesystem>

namespace stnet {

/// Shape of a generated season. Defaults give a full-size course cohort.
struct SyntheticSeason {
    int teams = 10;
    int members = 8;
    int weeks = 30;
    int sprints = 7;
    int messages_per_team = 5000;
    int merge_requests_per_team = 100;
    int channels_per_team = 3;
    int files_per_team = 60;
};

/// Writes config.json plus every input it references under out_dir. Output is a pure
/// function of (season, seed): the generator uses its own integer draws, not the
/// implementation-defined standard distributions. Returns the config path.
std::filesystem::path write_synthetic_season(const SyntheticSeason& season, std::uint64_t seed,
                                             const std::filesystem::path& out_dir);

}  // namespace stnet
