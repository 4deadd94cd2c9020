#include "stnet/calendar.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "stnet/error.hpp"

namespace stnet {

SprintCalendar::SprintCalendar(std::vector<Week> weeks, std::vector<Sprint> sprints, std::set<SprintId> excluded)
    : weeks_(std::move(weeks)), sprints_(std::move(sprints)), excluded_(std::move(excluded))
{
    for (std::size_t i = 0; i < weeks_.size(); ++i) {
        const Week& w = weeks_[i];
        if (w.id < 1) throw ValidationError("week id must be >= 1, got " + std::to_string(w.id));
        if (!(w.start < w.end)) throw ValidationError("week " + std::to_string(w.id) + " has an empty interval");
        if (i > 0) {
            const Week& prev = weeks_[i - 1];
            if (w.id <= prev.id) throw ValidationError("week ids must be strictly increasing");
            if (w.start < prev.end) {
                throw ValidationError("week " + std::to_string(w.id) + " overlaps week " + std::to_string(prev.id));
            }
        }
    }

    std::map<WeekId, SprintId> owner;
    for (std::size_t i = 0; i < sprints_.size(); ++i) {
        Sprint& s = sprints_[i];
        if (s.id < 1) throw ValidationError("sprint id must be >= 1, got " + std::to_string(s.id));
        if (i > 0 && s.id <= sprints_[i - 1].id) throw ValidationError("sprint ids must be strictly increasing");
        if (s.weeks.empty()) throw ValidationError("sprint " + std::to_string(s.id) + " has no weeks");
        std::sort(s.weeks.begin(), s.weeks.end());
        for (WeekId w : s.weeks) {
            if (find_week(w) == nullptr) {
                throw ValidationError("sprint " + std::to_string(s.id) + " references unknown week " + std::to_string(w));
            }
            auto [it, inserted] = owner.emplace(w, s.id);
            if (!inserted) {
                throw ValidationError("week " + std::to_string(w) + " belongs to sprints " + std::to_string(it->second) +
                                      " and " + std::to_string(s.id));
            }
        }
    }
    for (SprintId id : excluded_) {
        if (find_sprint(id) == nullptr) throw ValidationError("excluded sprint " + std::to_string(id) + " does not exist");
    }
}

std::optional<WeekId> SprintCalendar::week_of(UtcTime ts) const
{
    // First week whose end is after ts; it contains ts iff its start is not after ts.
    auto it = std::upper_bound(weeks_.begin(), weeks_.end(), ts, [](UtcTime t, const Week& w) { return t < w.end; });
    if (it == weeks_.end() || ts < it->start) return std::nullopt;
    return it->id;
}

std::optional<SprintId> SprintCalendar::sprint_of(WeekId week) const
{
    for (const Sprint& s : sprints_) {
        if (std::binary_search(s.weeks.begin(), s.weeks.end(), week)) return s.id;
    }
    return std::nullopt;
}

const Week* SprintCalendar::find_week(WeekId id) const
{
    auto it = std::lower_bound(weeks_.begin(), weeks_.end(), id, [](const Week& w, WeekId v) { return w.id < v; });
    return (it != weeks_.end() && it->id == id) ? &*it : nullptr;
}

const Sprint* SprintCalendar::find_sprint(SprintId id) const
{
    for (const Sprint& s : sprints_) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::vector<SprintId> SprintCalendar::analysed_sprints() const
{
    std::vector<SprintId> out;
    for (const Sprint& s : sprints_) {
        if (!is_excluded(s.id)) out.push_back(s.id);
    }
    return out;
}

std::vector<WeekId> SprintCalendar::analysed_weeks() const
{
    std::vector<WeekId> out;
    for (const Sprint& s : sprints_) {
        if (!is_excluded(s.id)) out.insert(out.end(), s.weeks.begin(), s.weeks.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

SprintCalendar SprintCalendar::with_excluded(std::set<SprintId> excluded) const
{
    return SprintCalendar(weeks_, sprints_, std::move(excluded));
}

std::optional<WeekId> assign_week(UtcTime ts, const SprintCalendar& cal) { return cal.week_of(ts); }

}  // namespace stnet
