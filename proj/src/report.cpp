#include "stnet/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

#include "stnet/error.hpp"
#include "stnet/network.hpp"
#include "stnet/stc.hpp"

namespace stnet {
namespace {

struct Point {
    double x;
    double y;
};

CorrelationCell correlate(std::string row, std::string column, const std::vector<Point>& points)
{
    CorrelationCell cell{std::move(row), std::move(column), points.size(), std::nullopt};
    if (points.size() < 3) return cell;
    std::vector<double> x, y;
    for (const Point& p : points) {
        x.push_back(p.x);
        y.push_back(p.y);
    }
    try {
        cell.result = pearson(x, y);
    } catch (const std::domain_error&) {
        // constant variable: leave undefined
    }
    return cell;
}

using Getter = std::function<std::optional<double>(const SprintRow&)>;

std::vector<Point> paired(const std::vector<SprintRow>& rows, const std::set<TeamId>& excluded, const Getter& gx,
                          const Getter& gy)
{
    std::vector<Point> out;
    for (const SprintRow& r : rows) {
        if (excluded.count(r.team)) continue;
        const auto x = gx(r);
        const auto y = gy(r);
        if (x && y) out.push_back({*x, *y});
    }
    return out;
}

CorrelationTable census_table(const std::string& name, const std::string& title, const std::vector<SprintRow>& rows,
                              const std::set<TeamId>& excluded, bool mean_weekly)
{
    CorrelationTable t;
    t.name = name;
    t.title = title;
    t.columns = {labels::kPercentPassed, labels::kTeamScore};
    t.excluded_teams.assign(excluded.begin(), excluded.end());
    const Getter outcomes[2] = {[](const SprintRow& r) { return r.percent_passed; },
                                [](const SprintRow& r) { return r.team_score; }};
    for (std::size_t k = 0; k < 4; ++k) {
        t.rows.push_back(labels::kTriadRows[k]);
        const Getter freq = [k, mean_weekly](const SprintRow& r) -> std::optional<double> {
            return mean_weekly ? r.mean_weekly.freqs[k] : r.relative.freqs[k];
        };
        for (std::size_t c = 0; c < 2; ++c) {
            t.cells.push_back(correlate(labels::kTriadRows[k], t.columns[c], paired(rows, excluded, freq, outcomes[c])));
        }
    }
    return t;
}

CorrelationTable stc_table(const std::vector<SprintRow>& rows, const std::vector<SprintId>& sprints)
{
    CorrelationTable t;
    t.name = table_names::kStcOutcomes;
    t.title = "Pearson correlations of sprint STC, peer communication ratings and delivery";
    t.rows = {labels::kPercentPassed, labels::kPeerRating, labels::kPeerRatingSprintN};
    t.columns = {labels::kMeanSprintStc, labels::kPercentPassed, labels::kTeamScore, labels::kPercentPassedNext};
    const std::set<TeamId> none;
    const Getter stc = [](const SprintRow& r) { return r.mean_stc; };
    const Getter pct = [](const SprintRow& r) { return r.percent_passed; };
    const Getter rating = [](const SprintRow& r) { return r.mean_peer_rating; };
    const Getter score = [](const SprintRow& r) { return r.team_score; };

    t.cells.push_back(correlate(labels::kPercentPassed, labels::kMeanSprintStc, paired(rows, none, pct, stc)));
    t.cells.push_back(correlate(labels::kPeerRating, labels::kMeanSprintStc, paired(rows, none, rating, stc)));
    t.cells.push_back(correlate(labels::kPeerRating, labels::kPercentPassed, paired(rows, none, rating, pct)));
    t.cells.push_back(correlate(labels::kPeerRating, labels::kTeamScore, paired(rows, none, rating, score)));

    // Rating in sprint n against delivery in the next analysed sprint of the same team.
    std::map<std::pair<TeamId, SprintId>, const SprintRow*> index;
    for (const SprintRow& r : rows) index[{r.team, r.sprint}] = &r;
    std::vector<Point> next;
    for (const SprintRow& r : rows) {
        auto it = std::find(sprints.begin(), sprints.end(), r.sprint);
        if (it == sprints.end() || std::next(it) == sprints.end()) continue;
        auto nx = index.find({r.team, *std::next(it)});
        if (nx == index.end()) continue;
        if (r.mean_peer_rating && nx->second->percent_passed) next.push_back({*r.mean_peer_rating, *nx->second->percent_passed});
    }
    t.cells.push_back(correlate(labels::kPeerRatingSprintN, labels::kPercentPassedNext, next));
    return t;
}

std::optional<double> mean_of(const std::vector<double>& v)
{
    if (v.empty()) return std::nullopt;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

struct TeamResult {
    std::vector<WeeklyStcRow> series;
    std::vector<SprintRow> sprints;
    TeamSummary summary;
    Diagnostics diags;
};

TeamResult analyse_team(const TeamData& team, const Dataset& ds, const AnalysisSettings& settings)
{
    const SprintCalendar& cal = ds.calendar;
    const TeamId& id = team.roster.team();
    TeamResult out;
    const std::vector<CommEvent> events = derive_comm_events(team.messages, team.roster, cal, &out.diags);
    const StcOptions stc_options{settings.self_dependency};

    std::map<WeekId, std::optional<double>> weekly;
    std::vector<WeeklyScore> year;
    for (WeekId w : cal.analysed_weeks()) {
        const WeekStc ws = week_stc(team.repo, events, team.roster, cal, w, stc_options);
        weekly[w] = ws.team_score;
        year.push_back({w, ws.team_score});
        out.series.push_back({id, w, cal.sprint_of(w).value_or(0), ws.team_score});
    }

    for (SprintId s : cal.analysed_sprints()) {
        SprintRow row;
        row.team = id;
        row.sprint = s;
        const Window window = Window::sprint(cal, s);
        row.census = triad_census(build_network(events, team.roster, window));
        row.relative = relative_census(row.census);
        std::vector<RelativeTriadCensus> per_week;
        std::vector<double> stc_values;
        for (WeekId w : window.weeks) {
            per_week.push_back(relative_census(triad_census(build_network(events, team.roster, Window::week(w)))));
            if (weekly[w]) stc_values.push_back(*weekly[w]);
        }
        row.mean_weekly = mean_weekly_relative_census(per_week);
        row.mean_stc = mean_of(stc_values);

        auto outcome = std::find_if(ds.outcomes.begin(), ds.outcomes.end(),
                                    [&](const OutcomeRecord& o) { return o.team == id && o.sprint == s; });
        if (outcome != ds.outcomes.end()) {
            row.team_score = outcome->team_score;
            row.percent_passed = outcome->percent_passed();
            if (!row.percent_passed) {
                out.diags.count("report.zero_committed_sprints");
                out.diags.warn(id, "sprint " + std::to_string(s) + " committed no story points; dropped from correlations");
            }
        } else if (!ds.outcomes.empty()) {
            out.diags.count("report.missing_outcomes");
        }
        std::vector<double> ratings;
        for (const FeedbackRecord& f : ds.feedback) {
            if (f.team == id && f.sprint == s) ratings.push_back(f.communication_rating);
        }
        row.mean_peer_rating = mean_of(ratings);
        out.sprints.push_back(std::move(row));
    }

    TeamSummary& sum = out.summary;
    sum.team = id;
    for (const WorkLogRecord& w : ds.work_logs) {
        if (w.team == id) sum.pair_programming_hours += w.pair_programming_hours;
    }
    const YearSummary ys = year_summary(year);
    sum.mean_stc = ys.mean;
    sum.trend = ys.trend;
    std::vector<double> scores;
    for (const OutcomeRecord& o : ds.outcomes) {
        if (o.team != id || cal.is_excluded(o.sprint)) continue;
        sum.stories_passed += o.stories_passed;
        scores.push_back(o.team_score);
    }
    sum.mean_team_score = mean_of(scores);
    return out;
}

}  // namespace

const CorrelationCell* CorrelationTable::cell(const std::string& row, const std::string& column) const
{
    for (const CorrelationCell& c : cells) {
        if (c.row == row && c.column == column) return &c;
    }
    return nullptr;
}

const CorrelationTable* AnalysisReport::table(const std::string& name) const
{
    for (const CorrelationTable& t : tables) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

std::string to_string(AnomalyKind kind)
{
    return kind == AnomalyKind::HighStcLowDelivery ? "high-stc-low-delivery" : "low-stc-high-pairing";
}

AnomalyKind anomaly_kind_from_string(const std::string& text)
{
    if (text == "high-stc-low-delivery") return AnomalyKind::HighStcLowDelivery;
    if (text == "low-stc-high-pairing") return AnomalyKind::LowStcHighPairing;
    throw InputError("unknown anomaly kind '" + text + "'");
}

std::vector<int> dense_ranks_descending(std::span<const double> values)
{
    std::vector<double> distinct(values.begin(), values.end());
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> ranks;
    ranks.reserve(values.size());
    for (double v : values) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), v, std::greater<>());
        ranks.push_back(static_cast<int>(it - distinct.begin()) + 1);
    }
    return ranks;
}

std::vector<AnomalyFlag> detect_anomalies(std::span<const TeamSummary> summaries, const AnomalySettings& settings)
{
    std::vector<const TeamSummary*> ranked;
    for (const TeamSummary& s : summaries) {
        if (s.mean_stc) ranked.push_back(&s);
    }
    std::sort(ranked.begin(), ranked.end(), [](auto* a, auto* b) { return a->team < b->team; });
    const int teams = static_cast<int>(ranked.size());
    if (teams < 3) return {};

    std::vector<double> stc, stories, pairing;
    for (const TeamSummary* s : ranked) {
        stc.push_back(*s->mean_stc);
        stories.push_back(static_cast<double>(s->stories_passed));
        pairing.push_back(s->pair_programming_hours);
    }
    const auto stc_rank = dense_ranks_descending(stc);
    const auto stories_rank = dense_ranks_descending(stories);
    const auto pair_rank = dense_ranks_descending(pairing);
    const int top = static_cast<int>(std::ceil(settings.top_fraction * teams - 1e-9));
    const int bottom = static_cast<int>(std::ceil(settings.bottom_fraction * teams - 1e-9));

    std::vector<AnomalyFlag> flags;
    for (int i = 0; i < teams; ++i) {
        if (stc_rank[i] <= top && stories_rank[i] >= teams - bottom + 1) {
            flags.push_back({ranked[i]->team, AnomalyKind::HighStcLowDelivery, stc_rank[i], stories_rank[i]});
        }
        if (stc_rank[i] >= teams - top + 1 && pair_rank[i] <= top) {
            flags.push_back({ranked[i]->team, AnomalyKind::LowStcHighPairing, stc_rank[i], pair_rank[i]});
        }
    }
    return flags;
}

std::vector<TeamSummary> parse_team_summaries(const csv::Table& t)
{
    t.require_columns({"team", "pair_programming_hours", "mean_stc", "stories_passed"});
    std::vector<TeamSummary> out;
    for (std::size_t row = 0; row < t.row_count(); ++row) {
        TeamSummary s;
        s.team = t.at(row, "team");
        s.pair_programming_hours = csv::parse_number(t.at(row, "pair_programming_hours"), t, row, "pair_programming_hours");
        if (!t.at(row, "mean_stc").empty()) s.mean_stc = csv::parse_number(t.at(row, "mean_stc"), t, row, "mean_stc");
        s.stories_passed = csv::parse_integer(t.at(row, "stories_passed"), t, row, "stories_passed");
        out.push_back(std::move(s));
    }
    return out;
}

AnalysisReport run_pipeline(const Dataset& ds, const AnalysisSettings& settings, Diagnostics& diags)
{
    for (const TeamData& t : ds.teams) {
        if (t.roster.size() < 3) {
            throw ValidationError("team " + t.roster.team() + " has fewer than 3 members; triad census undefined");
        }
    }

    // Teams are independent; results are merged in team order so output stays deterministic.
    std::vector<std::future<TeamResult>> jobs;
    for (const TeamData& t : ds.teams) {
        jobs.push_back(std::async(std::launch::async, [&ds, &settings, &t] { return analyse_team(t, ds, settings); }));
    }
    AnalysisReport report;
    for (auto& job : jobs) {
        TeamResult r = job.get();
        report.stc_series.insert(report.stc_series.end(), r.series.begin(), r.series.end());
        report.sprint_rows.insert(report.sprint_rows.end(), r.sprints.begin(), r.sprints.end());
        report.summaries.push_back(std::move(r.summary));
        diags.merge(r.diags);
    }

    report.anomalies = detect_anomalies(report.summaries, settings.anomaly);

    for (const TeamSummary& s : report.summaries) {
        if (!s.trend) continue;
        if (s.trend->slope > 0) report.trend_test.increasing.push_back(s.team);
        if (s.trend->slope < 0) report.trend_test.decreasing.push_back(s.team);
    }
    if (!report.trend_test.increasing.empty() && !report.trend_test.decreasing.empty()) {
        std::vector<double> inc, dec;
        for (const TeamSummary& s : report.summaries) {
            if (!s.trend) continue;
            if (s.trend->slope > 0) inc.push_back(static_cast<double>(s.stories_passed));
            if (s.trend->slope < 0) dec.push_back(static_cast<double>(s.stories_passed));
        }
        report.trend_test.test = mann_whitney_u(inc, dec);
    }

    std::set<TeamId> excluded(settings.exclude_teams.begin(), settings.exclude_teams.end());
    if (excluded.empty()) {
        for (const AnomalyFlag& f : report.anomalies) excluded.insert(f.team);
    }
    report.excluded_teams.assign(excluded.begin(), excluded.end());

    const std::set<TeamId> none;
    const auto sprints = ds.calendar.analysed_sprints();
    report.tables.push_back(stc_table(report.sprint_rows, sprints));
    report.tables.push_back(census_table(table_names::kCensus,
                                         "Relative triad frequencies (sprint networks) vs sprint performance",
                                         report.sprint_rows, none, false));
    report.tables.push_back(census_table(table_names::kMeanWeeklyCensus,
                                         "Mean weekly relative triad frequencies vs sprint performance",
                                         report.sprint_rows, none, true));
    report.tables.push_back(census_table(table_names::kCensusExcluding,
                                         "Relative triad frequencies (sprint networks) vs sprint performance, "
                                         "excluding anomalous teams",
                                         report.sprint_rows, excluded, false));
    report.tables.push_back(census_table(table_names::kMeanWeeklyCensusExcluding,
                                         "Mean weekly relative triad frequencies vs sprint performance, "
                                         "excluding anomalous teams",
                                         report.sprint_rows, excluded, true));
    return report;
}

AnalysisReport run_pipeline(const Config& config, Diagnostics& diags)
{
    const Dataset ds = load_dataset(config, InputRequirements{}, diags);
    return run_pipeline(ds, config.analysis, diags);
}

}  // namespace stnet
