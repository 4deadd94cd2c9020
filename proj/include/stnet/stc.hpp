#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stnet/calendar.hpp"
#include "stnet/diagnostics.hpp"
#include "stnet/matrix.hpp"
#include "stnet/model.hpp"
#include "stnet/network.hpp"
#include "stnet/stats.hpp"

namespace stnet {

struct StcOptions {
    bool self_dependency = true;  // diagonal of the dependency matrix
};

/// People x merge requests; (p, m) set iff p authored a commit contained in m.
struct AssignmentMatrix {
    std::vector<PersonId> people;
    std::vector<std::string> merge_requests;
    BinaryMatrix matrix;
};

/// Merge requests x merge requests; (m, m') set iff they share a changed file.
struct DependencyMatrix {
    std::vector<std::string> merge_requests;
    BinaryMatrix matrix;
};

struct StcScore {
    PersonId person;
    WeekId week = 0;
    std::optional<double> value;  // undefined when the person has no requirements
    int n_required = 0;
    int n_fulfilled = 0;

    friend bool operator==(const StcScore&, const StcScore&) = default;
};

struct WeekStc {
    WeekId week = 0;
    std::vector<StcScore> members;   // roster order
    std::optional<double> team_score;  // mean of defined member scores
};

struct WeeklyScore {
    WeekId week = 0;
    std::optional<double> score;
};

struct YearSummary {
    std::optional<double> mean;
    std::optional<TrendLine> trend;  // needs at least two defined weeks
};

/// Merge requests attributed to a week: created in it and touching at least one file.
std::vector<std::size_t> week_merge_requests(const RepoActivity& repo, const SprintCalendar& cal, WeekId week);

AssignmentMatrix assignment_matrix(const RepoActivity& repo, const Roster& roster, const SprintCalendar& cal,
                                   WeekId week);

DependencyMatrix dependency_matrix(const RepoActivity& repo, const SprintCalendar& cal, WeekId week,
                                   const StcOptions& options = {});

/// Binarized T_A * T_D * T_A^T with the diagonal cleared.
BinaryMatrix coordination_requirements(const AssignmentMatrix& ta, const DependencyMatrix& td);

/// Per-person share of required pairs that actually communicated; throws
/// std::invalid_argument if matrices are not roster-sized.
WeekStc stc_scores(const BinaryMatrix& required, const CoordinationMatrix& actual, const Roster& roster, WeekId week);

/// All five steps for one team-week.
WeekStc week_stc(const RepoActivity& repo, std::span<const CommEvent> events, const Roster& roster,
                 const SprintCalendar& cal, WeekId week, const StcOptions& options = {});

/// Mean over defined weekly scores and the least-squares trend against week id.
YearSummary year_summary(std::span<const WeeklyScore> weekly);

}  // namespace stnet
