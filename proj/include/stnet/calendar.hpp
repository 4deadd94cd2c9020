#pragma once

#include <optional>
#include <set>
#include <vector>

#include "stnet/time.hpp"

namespace stnet {

using WeekId = int;
using SprintId = int;

struct Week {
    WeekId id = 0;
    UtcTime start;
    UtcTime end;  // exclusive

    friend bool operator==(const Week&, const Week&) = default;
};

struct Sprint {
    SprintId id = 0;
    std::vector<WeekId> weeks;

    friend bool operator==(const Sprint&, const Sprint&) = default;
};

/// Term weeks and the sprints built from them. Weeks are half-open [start, end) intervals in UTC,
/// ordered and non-overlapping; gaps between weeks (breaks) are allowed.
class SprintCalendar {
public:
    SprintCalendar() = default;

    /// Validates all invariants; throws ValidationError on violation.
    SprintCalendar(std::vector<Week> weeks, std::vector<Sprint> sprints, std::set<SprintId> excluded_sprints);

    const std::vector<Week>& weeks() const { return weeks_; }
    const std::vector<Sprint>& sprints() const { return sprints_; }
    const std::set<SprintId>& excluded_sprints() const { return excluded_; }

    std::optional<WeekId> week_of(UtcTime ts) const;
    std::optional<SprintId> sprint_of(WeekId week) const;
    const Week* find_week(WeekId id) const;
    const Sprint* find_sprint(SprintId id) const;

    bool is_excluded(SprintId id) const { return excluded_.count(id) != 0; }

    /// Sprints not excluded from analysis, ascending.
    std::vector<SprintId> analysed_sprints() const;

    /// Weeks belonging to an analysed sprint, ascending.
    std::vector<WeekId> analysed_weeks() const;

    /// Copy with a different excluded set (every id must name a sprint).
    SprintCalendar with_excluded(std::set<SprintId> excluded) const;

    friend bool operator==(const SprintCalendar&, const SprintCalendar&) = default;

private:
    std::vector<Week> weeks_;
    std::vector<Sprint> sprints_;
    std::set<SprintId> excluded_;
};

/// The week whose [start, end) contains ts, if any.
std::optional<WeekId> assign_week(UtcTime ts, const SprintCalendar& cal);

}  // namespace stnet
