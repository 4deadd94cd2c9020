#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stnet/csv.hpp"
#include "stnet/diagnostics.hpp"
#include "stnet/model.hpp"

namespace stnet {

/// Chat messages that never count as human communication.
struct ExclusionList {
    std::set<std::string> subtypes{"bot_message", "channel_join", "channel_leave", "channel_topic",
                                   "channel_purpose", "channel_name", "channel_archive"};
    std::set<std::string> handles{"USLACKBOT"};

    friend bool operator==(const ExclusionList&, const ExclusionList&) = default;
};

struct AnomalySettings {
    double top_fraction = 0.2;     // width of the "high" rank band
    double bottom_fraction = 0.3;  // width of the "low delivery" rank band

    friend bool operator==(const AnomalySettings&, const AnomalySettings&) = default;
};

struct AnalysisSettings {
    std::vector<TeamId> exclude_teams;  // explicit exclusion for the "excluding anomalies" tables
    AnomalySettings anomaly;
    bool self_dependency = true;  // merge requests depend on themselves

    friend bool operator==(const AnalysisSettings&, const AnalysisSettings&) = default;
};

struct TeamSource {
    Roster roster;
    std::optional<std::filesystem::path> chat_export;
    std::optional<std::filesystem::path> repo_activity;
};

/// Run configuration: calendar, rosters with identity maps, and input locations.
/// Relative paths are resolved against the directory of the config file.
struct Config {
    SprintCalendar calendar;
    ExclusionList exclusions;
    std::vector<TeamSource> teams;
    std::optional<std::filesystem::path> feedback;
    std::optional<std::filesystem::path> outcomes;
    std::optional<std::filesystem::path> work_logs;
    AnalysisSettings analysis;
};

Config load_config(const std::filesystem::path& path);
Config parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir, const std::string& source);

/// Which input classes a run needs; a missing required source is an InputError naming it.
struct InputRequirements {
    bool chat = true;
    bool repo = true;
    bool feedback = true;
    bool outcomes = true;
    bool work_logs = true;
};

Dataset load_dataset(const Config& config, const InputRequirements& needs, Diagnostics& diags);

/// Reads a chat export: one directory per public channel, one JSON array of message
/// objects per day file. Thread replies are linked to their root through thread_ts.
MessageLog parse_chat_export(const std::filesystem::path& export_root, const Roster& roster,
                             const ExclusionList& exclusions, Diagnostics& diags);

RepoActivity parse_repo_activity(const std::filesystem::path& file, const Roster& roster, Diagnostics& diags);
RepoActivity parse_repo_activity(std::istream& in, const std::string& source, const Roster& roster,
                                 Diagnostics& diags);

/// Rows in excluded sprints are dropped. Rosters, when given, are used to reject
/// unknown teams and people (dropped with a warning).
std::vector<FeedbackRecord> parse_feedback(const csv::Table& table, const SprintCalendar& cal,
                                           const std::vector<Roster>& rosters, Diagnostics& diags);
std::vector<OutcomeRecord> parse_outcomes(const csv::Table& table, const SprintCalendar& cal, Diagnostics& diags);
std::vector<WorkLogRecord> parse_work_logs(const csv::Table& table, const SprintCalendar& cal,
                                           const std::vector<Roster>& rosters, Diagnostics& diags);

/// Serialized form of a dataset; dataset_from_json(dataset_to_json(d)) == d.
nlohmann::json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const nlohmann::json& doc);

nlohmann::json calendar_to_json(const SprintCalendar& cal);
SprintCalendar calendar_from_json(const nlohmann::json& doc);

}  // namespace stnet
