#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "stnet/error.hpp"
#include "stnet/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace stnet {
namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string join(const std::vector<TeamId>& teams, char sep = ';')
{
    std::string out;
    for (std::size_t i = 0; i < teams.size(); ++i) {
        if (i) out.push_back(sep);
        out += teams[i];
    }
    return out;
}

std::string method_name(UTestMethod m) { return m == UTestMethod::Exact ? "exact" : "normal-approximation"; }

UTestMethod method_from(const std::string& s)
{
    if (s == "exact") return UTestMethod::Exact;
    if (s == "normal-approximation") return UTestMethod::NormalApproximation;
    throw InputError("unknown U-test method '" + s + "'");
}

std::string trend_direction(const std::optional<TrendLine>& t)
{
    if (!t) return "";
    if (t->slope > 0) return "increasing";
    if (t->slope < 0) return "decreasing";
    return "flat";
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("failed writing " + path.string());
}

std::string stc_series_csv(const AnalysisReport& r)
{
    std::ostringstream os;
    csv::write_row(os, {"team", "week", "sprint", "stc_score"});
    for (const WeeklyStcRow& row : r.stc_series) {
        csv::write_row(os, {row.team, std::to_string(row.week), std::to_string(row.sprint), opt(row.score)});
    }
    return os.str();
}

std::string census_series_csv(const AnalysisReport& r)
{
    std::ostringstream os;
    csv::write_row(os, {"team", "sprint", "c0", "c1", "c2", "c3", "rel0", "rel1", "rel2", "rel3", "mean_weekly0",
                        "mean_weekly1", "mean_weekly2", "mean_weekly3", "mean_stc", "percent_passed", "team_score",
                        "mean_peer_rating"});
    for (const SprintRow& row : r.sprint_rows) {
        std::vector<std::string> f{row.team, std::to_string(row.sprint)};
        for (auto c : row.census.counts) f.push_back(std::to_string(c));
        for (double v : row.relative.freqs) f.push_back(format_number(v));
        for (double v : row.mean_weekly.freqs) f.push_back(format_number(v));
        f.push_back(opt(row.mean_stc));
        f.push_back(opt(row.percent_passed));
        f.push_back(opt(row.team_score));
        f.push_back(opt(row.mean_peer_rating));
        csv::write_row(os, f);
    }
    return os.str();
}

std::string table_csv(const CorrelationTable& t)
{
    std::ostringstream os;
    csv::write_row(os, {"row", "column", "r", "n", "p", "stars", "excluded_teams"});
    for (const CorrelationCell& c : t.cells) {
        csv::write_row(os, {c.row, c.column, c.result ? format_number(c.result->r) : "", std::to_string(c.n),
                            c.result ? format_number(c.result->p_two_tailed) : "", c.stars(), join(t.excluded_teams)});
    }
    return os.str();
}

std::string summary_csv(const AnalysisReport& r)
{
    std::ostringstream os;
    csv::write_row(os, {"team", "pair_programming_hours", "mean_stc", "stories_passed", "mean_team_score", "trend_slope",
                        "trend_intercept", "trend_points", "trend_direction", "anomaly", "anomaly_stc_rank",
                        "anomaly_other_rank"});
    for (const TeamSummary& s : r.summaries) {
        std::vector<std::string> kinds, stc_ranks, other_ranks;
        for (const AnomalyFlag& f : r.anomalies) {
            if (f.team != s.team) continue;
            kinds.push_back(to_string(f.kind));
            stc_ranks.push_back(std::to_string(f.stc_rank));
            other_ranks.push_back(std::to_string(f.other_rank));
        }
        csv::write_row(os, {s.team, format_number(s.pair_programming_hours), opt(s.mean_stc),
                            std::to_string(s.stories_passed), opt(s.mean_team_score),
                            s.trend ? format_number(s.trend->slope) : "", s.trend ? format_number(s.trend->intercept) : "",
                            s.trend ? std::to_string(s.trend->n_points) : "", trend_direction(s.trend), join(kinds),
                            join(stc_ranks), join(other_ranks)});
    }
    return os.str();
}

std::string trend_test_csv(const AnalysisReport& r)
{
    std::ostringstream os;
    const TrendGroupTest& t = r.trend_test;
    csv::write_row(os, {"outcome", "increasing_teams", "decreasing_teams", "u", "u_increasing", "u_decreasing", "p",
                        "method"});
    if (t.test) {
        csv::write_row(os, {"stories_passed", join(t.increasing), join(t.decreasing), format_number(t.test->u),
                            format_number(t.test->u_a), format_number(t.test->u_b),
                            format_number(t.test->p_two_tailed), method_name(t.test->method)});
    } else {
        csv::write_row(os, {"stories_passed", join(t.increasing), join(t.decreasing), "", "", "", "", ""});
    }
    return os.str();
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json trend_json(const std::optional<TrendLine>& t)
{
    if (!t) return nullptr;
    return {{"slope", t->slope}, {"intercept", t->intercept}, {"n_points", t->n_points}};
}

std::optional<TrendLine> trend_from(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return TrendLine{j.at("slope").get<double>(), j.at("intercept").get<double>(), j.at("n_points").get<std::size_t>()};
}

// JSON has no infinity; t is recomputed from r and n for perfect correlations.
json correlation_json(const CorrelationResult& c)
{
    return {{"r", c.r}, {"n", c.n}, {"t", std::isinf(c.t_stat) ? json(nullptr) : json(c.t_stat)}, {"p", c.p_two_tailed}};
}

CorrelationResult correlation_from(const json& j)
{
    CorrelationResult c;
    c.r = j.at("r").get<double>();
    c.n = j.at("n").get<std::size_t>();
    c.t_stat = j.at("t").is_null() ? std::copysign(std::numeric_limits<double>::infinity(), c.r) : j.at("t").get<double>();
    c.p_two_tailed = j.at("p").get<double>();
    return c;
}

}  // namespace

std::string format_number(double v)
{
    if (v == 0) return "0";  // folds -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<ReportPart> all_report_parts()
{
    return {ReportPart::StcSeries,          ReportPart::CensusSeries, ReportPart::StcCorrelations,
            ReportPart::CensusCorrelations, ReportPart::TeamSummary,  ReportPart::TrendTest};
}

json report_to_json(const AnalysisReport& r)
{
    json series = json::array();
    for (const WeeklyStcRow& row : r.stc_series) {
        series.push_back({{"team", row.team}, {"week", row.week}, {"sprint", row.sprint}, {"score", opt_json(row.score)}});
    }
    json sprints = json::array();
    for (const SprintRow& row : r.sprint_rows) {
        sprints.push_back({{"team", row.team},
                           {"sprint", row.sprint},
                           {"census", row.census.counts},
                           {"relative", row.relative.freqs},
                           {"mean_weekly", row.mean_weekly.freqs},
                           {"mean_stc", opt_json(row.mean_stc)},
                           {"percent_passed", opt_json(row.percent_passed)},
                           {"team_score", opt_json(row.team_score)},
                           {"mean_peer_rating", opt_json(row.mean_peer_rating)}});
    }
    json summaries = json::array();
    for (const TeamSummary& s : r.summaries) {
        summaries.push_back({{"team", s.team},
                             {"pair_programming_hours", s.pair_programming_hours},
                             {"mean_stc", opt_json(s.mean_stc)},
                             {"stories_passed", s.stories_passed},
                             {"trend", trend_json(s.trend)},
                             {"mean_team_score", opt_json(s.mean_team_score)}});
    }
    json anomalies = json::array();
    for (const AnomalyFlag& f : r.anomalies) {
        anomalies.push_back(
            {{"team", f.team}, {"kind", to_string(f.kind)}, {"stc_rank", f.stc_rank}, {"other_rank", f.other_rank}});
    }
    json trend = {{"increasing", r.trend_test.increasing}, {"decreasing", r.trend_test.decreasing}, {"test", nullptr}};
    if (r.trend_test.test) {
        const UTestResult& u = *r.trend_test.test;
        trend["test"] = {{"u", u.u}, {"u_a", u.u_a}, {"u_b", u.u_b}, {"p", u.p_two_tailed}, {"method", method_name(u.method)}};
    }
    json tables = json::array();
    for (const CorrelationTable& t : r.tables) {
        json cells = json::array();
        for (const CorrelationCell& c : t.cells) {
            cells.push_back({{"row", c.row},
                             {"column", c.column},
                             {"n", c.n},
                             {"result", c.result ? correlation_json(*c.result) : json(nullptr)},
                             {"stars", c.stars()}});
        }
        tables.push_back({{"name", t.name},
                          {"title", t.title},
                          {"rows", t.rows},
                          {"columns", t.columns},
                          {"excluded_teams", t.excluded_teams},
                          {"cells", cells}});
    }
    return {{"stc_series", series},     {"sprint_rows", sprints}, {"team_summaries", summaries},
            {"anomalies", anomalies},   {"trend_test", trend},    {"tables", tables},
            {"excluded_teams", r.excluded_teams}};
}

AnalysisReport report_from_json(const json& doc)
{
    try {
        AnalysisReport r;
        for (const json& j : doc.at("stc_series")) {
            r.stc_series.push_back({j.at("team").get<TeamId>(), j.at("week").get<WeekId>(), j.at("sprint").get<SprintId>(),
                                    opt_from(j.at("score"))});
        }
        for (const json& j : doc.at("sprint_rows")) {
            SprintRow row;
            row.team = j.at("team").get<TeamId>();
            row.sprint = j.at("sprint").get<SprintId>();
            row.census.counts = j.at("census").get<std::array<std::uint64_t, 4>>();
            row.relative.freqs = j.at("relative").get<std::array<double, 4>>();
            row.mean_weekly.freqs = j.at("mean_weekly").get<std::array<double, 4>>();
            row.mean_stc = opt_from(j.at("mean_stc"));
            row.percent_passed = opt_from(j.at("percent_passed"));
            row.team_score = opt_from(j.at("team_score"));
            row.mean_peer_rating = opt_from(j.at("mean_peer_rating"));
            r.sprint_rows.push_back(std::move(row));
        }
        for (const json& j : doc.at("team_summaries")) {
            TeamSummary s;
            s.team = j.at("team").get<TeamId>();
            s.pair_programming_hours = j.at("pair_programming_hours").get<double>();
            s.mean_stc = opt_from(j.at("mean_stc"));
            s.stories_passed = j.at("stories_passed").get<long>();
            s.trend = trend_from(j.at("trend"));
            s.mean_team_score = opt_from(j.at("mean_team_score"));
            r.summaries.push_back(std::move(s));
        }
        for (const json& j : doc.at("anomalies")) {
            r.anomalies.push_back({j.at("team").get<TeamId>(), anomaly_kind_from_string(j.at("kind").get<std::string>()),
                                   j.at("stc_rank").get<int>(), j.at("other_rank").get<int>()});
        }
        const json& trend = doc.at("trend_test");
        r.trend_test.increasing = trend.at("increasing").get<std::vector<TeamId>>();
        r.trend_test.decreasing = trend.at("decreasing").get<std::vector<TeamId>>();
        if (!trend.at("test").is_null()) {
            const json& u = trend.at("test");
            r.trend_test.test = UTestResult{u.at("u").get<double>(), u.at("u_a").get<double>(), u.at("u_b").get<double>(),
                                            u.at("p").get<double>(), method_from(u.at("method").get<std::string>())};
        }
        for (const json& j : doc.at("tables")) {
            CorrelationTable t;
            t.name = j.at("name").get<std::string>();
            t.title = j.at("title").get<std::string>();
            t.rows = j.at("rows").get<std::vector<std::string>>();
            t.columns = j.at("columns").get<std::vector<std::string>>();
            t.excluded_teams = j.at("excluded_teams").get<std::vector<TeamId>>();
            for (const json& c : j.at("cells")) {
                CorrelationCell cell;
                cell.row = c.at("row").get<std::string>();
                cell.column = c.at("column").get<std::string>();
                cell.n = c.at("n").get<std::size_t>();
                if (!c.at("result").is_null()) cell.result = correlation_from(c.at("result"));
                t.cells.push_back(std::move(cell));
            }
            r.tables.push_back(std::move(t));
        }
        r.excluded_teams = doc.at("excluded_teams").get<std::vector<TeamId>>();
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("report: ") + e.what());
    }
}

std::vector<fs::path> emit(const AnalysisReport& report, OutputFormat format, const fs::path& out_dir,
                           std::span<const ReportPart> parts)
{
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) throw InputError("cannot create output directory " + out_dir.string());

    std::vector<fs::path> written;
    if (format == OutputFormat::Structured) {
        const fs::path p = out_dir / "report.json";
        write_file(p, report_to_json(report).dump(2) + "\n");
        written.push_back(p);
        return written;
    }

    const std::vector<ReportPart> all = all_report_parts();
    if (parts.empty()) parts = all;
    auto wanted = [&](ReportPart part) { return std::find(parts.begin(), parts.end(), part) != parts.end(); };
    auto put = [&](const std::string& name, const std::string& content) {
        const fs::path p = out_dir / name;
        write_file(p, content);
        written.push_back(p);
    };

    if (wanted(ReportPart::StcSeries)) put("stc_weekly_series.csv", stc_series_csv(report));
    if (wanted(ReportPart::CensusSeries)) put("census_sprint_series.csv", census_series_csv(report));
    for (const CorrelationTable& t : report.tables) {
        const bool is_stc = t.name == table_names::kStcOutcomes;
        if ((is_stc && wanted(ReportPart::StcCorrelations)) || (!is_stc && wanted(ReportPart::CensusCorrelations))) {
            put(t.name + ".csv", table_csv(t));
        }
    }
    if (wanted(ReportPart::TeamSummary)) put("team_summary.csv", summary_csv(report));
    if (wanted(ReportPart::TrendTest)) put("trend_group_test.csv", trend_test_csv(report));
    return written;
}

}  // namespace stnet
