#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stnet/csv.hpp"
#include "stnet/diagnostics.hpp"
#include "stnet/ingest.hpp"
#include "stnet/stats.hpp"
#include "stnet/triad.hpp"

namespace stnet {

struct CorrelationCell {
    std::string row;
    std::string column;
    std::size_t n = 0;                        // contributing points
    std::optional<CorrelationResult> result;  // undefined for n < 3 or a constant variable

    std::string stars() const { return result ? significance_stars(result->p_two_tailed) : std::string{}; }

    friend bool operator==(const CorrelationCell&, const CorrelationCell&) = default;
};

struct CorrelationTable {
    std::string name;   // stable file stem
    std::string title;
    std::vector<std::string> rows;
    std::vector<std::string> columns;
    std::vector<CorrelationCell> cells;  // row-major over rows x columns, only filled cells
    std::vector<TeamId> excluded_teams;

    const CorrelationCell* cell(const std::string& row, const std::string& column) const;

    friend bool operator==(const CorrelationTable&, const CorrelationTable&) = default;
};

struct WeeklyStcRow {
    TeamId team;
    WeekId week = 0;
    SprintId sprint = 0;
    std::optional<double> score;

    friend bool operator==(const WeeklyStcRow&, const WeeklyStcRow&) = default;
};

/// Everything measured for one team in one analysed sprint.
struct SprintRow {
    TeamId team;
    SprintId sprint = 0;
    TriadCensus census;               // whole-sprint network
    RelativeTriadCensus relative;     // whole-sprint network
    RelativeTriadCensus mean_weekly;  // mean over the sprint's weekly networks
    std::optional<double> mean_stc;
    std::optional<double> percent_passed;
    std::optional<double> team_score;
    std::optional<double> mean_peer_rating;

    friend bool operator==(const SprintRow&, const SprintRow&) = default;
};

struct TeamSummary {
    TeamId team;
    double pair_programming_hours = 0;
    std::optional<double> mean_stc;
    long stories_passed = 0;
    std::optional<TrendLine> trend;
    std::optional<double> mean_team_score;  // mean of the per-sprint team scores

    friend bool operator==(const TeamSummary&, const TeamSummary&) = default;
};

enum class AnomalyKind { HighStcLowDelivery, LowStcHighPairing };

std::string to_string(AnomalyKind kind);
AnomalyKind anomaly_kind_from_string(const std::string& text);

struct AnomalyFlag {
    TeamId team;
    AnomalyKind kind = AnomalyKind::HighStcLowDelivery;
    int stc_rank = 0;
    int other_rank = 0;  // stories-passed rank or pair-hours rank, by kind

    friend bool operator==(const AnomalyFlag&, const AnomalyFlag&) = default;
};

/// Stories passed by teams whose STC trend rose versus teams whose trend fell.
struct TrendGroupTest {
    std::vector<TeamId> increasing;
    std::vector<TeamId> decreasing;
    std::optional<UTestResult> test;  // needs both groups non-empty

    friend bool operator==(const TrendGroupTest&, const TrendGroupTest&) = default;
};

struct AnalysisReport {
    std::vector<WeeklyStcRow> stc_series;  // team, then week
    std::vector<SprintRow> sprint_rows;    // team, then sprint
    std::vector<TeamSummary> summaries;    // by team
    std::vector<AnomalyFlag> anomalies;
    TrendGroupTest trend_test;
    std::vector<CorrelationTable> tables;  // fixed order, see table names below
    std::vector<TeamId> excluded_teams;    // teams left out of the "excluding anomalies" tables

    const CorrelationTable* table(const std::string& name) const;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

namespace table_names {
inline constexpr const char* kStcOutcomes = "stc_outcome_correlations";
inline constexpr const char* kCensus = "census_correlations";
inline constexpr const char* kMeanWeeklyCensus = "mean_weekly_census_correlations";
inline constexpr const char* kCensusExcluding = "census_correlations_excluding_anomalies";
inline constexpr const char* kMeanWeeklyCensusExcluding = "mean_weekly_census_correlations_excluding_anomalies";
}  // namespace table_names

namespace labels {
inline constexpr const char* kMeanSprintStc = "mean sprint STC";
inline constexpr const char* kPercentPassed = "% story points passed";
inline constexpr const char* kPeerRating = "mean peer communication rating";
inline constexpr const char* kTeamScore = "team score";
inline constexpr const char* kPeerRatingSprintN = "mean peer communication rating (sprint n)";
inline constexpr const char* kPercentPassedNext = "% story points passed (sprint n+1)";
inline constexpr const char* kTriadRows[4] = {"0 edges", "1 edge", "2 edges", "3 edges"};
}  // namespace labels

/// Dense ranks, 1 = largest value; equal values share a rank.
std::vector<int> dense_ranks_descending(std::span<const double> values);

/// Flags teams far from the STC/outcome norm. With T ranked teams:
///   high-stc-low-delivery: stc rank <= ceil(top*T) and stories rank >= T - ceil(bottom*T) + 1
///   low-stc-high-pairing:  stc rank >= T - ceil(top*T) + 1 and pair-hours rank <= ceil(top*T)
/// Teams without a mean STC are not ranked. Fewer than 3 ranked teams yield no flags.
std::vector<AnomalyFlag> detect_anomalies(std::span<const TeamSummary> summaries, const AnomalySettings& settings);

/// Reads a team summary table (team, pair_programming_hours, mean_stc, stories_passed).
std::vector<TeamSummary> parse_team_summaries(const csv::Table& table);

/// The whole analysis on a loaded dataset. Outcome, feedback and work-log inputs may be
/// empty; dependent values are then undefined.
AnalysisReport run_pipeline(const Dataset& dataset, const AnalysisSettings& settings, Diagnostics& diags);

/// Loads every input named by the config, then runs the analysis.
AnalysisReport run_pipeline(const Config& config, Diagnostics& diags);

enum class OutputFormat { Delimited, Structured };

/// Which parts of a report to write.
enum class ReportPart { StcSeries, CensusSeries, StcCorrelations, CensusCorrelations, TeamSummary, TrendTest };

std::vector<ReportPart> all_report_parts();

/// Writes one CSV per table (Delimited) or report.json (Structured) into out_dir, which is
/// created if needed. Returns the written paths in a fixed order. Throws InputError if the
/// directory cannot be written.
std::vector<std::filesystem::path> emit(const AnalysisReport& report, OutputFormat format,
                                        const std::filesystem::path& out_dir,
                                        std::span<const ReportPart> parts = {});

nlohmann::json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& doc);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

}  // namespace stnet
