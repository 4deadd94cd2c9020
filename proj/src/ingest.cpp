#include "stnet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "stnet/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace stnet {
namespace {

json read_json_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": byte offset " + std::to_string(e.byte) + ": malformed JSON");
    }
}

const json& require(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw InputError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

// Identifiers may be written as strings or integers.
std::string require_id(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InputError(where + ": field '" + key + "' must be a string or integer");
}

const json& require_array(const json& obj, const char* key, const std::string& where)
{
    const json& v = require(obj, key, where);
    if (!v.is_array()) throw InputError(where + ": field '" + key + "' must be an array");
    return v;
}

UtcTime require_time(const json& obj, const char* key, const std::string& where)
{
    const std::string text = require_string(obj, key, where);
    try {
        return parse_iso8601(text);
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
}

std::vector<std::string> sorted_unique(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

const Roster* find_roster(const std::vector<Roster>& rosters, const TeamId& team)
{
    for (const Roster& r : rosters) {
        if (r.team() == team) return &r;
    }
    return nullptr;
}

std::string at_line(const csv::Table& t, std::size_t row)
{
    return t.source() + ":" + std::to_string(t.line_of(row));
}

SprintId checked_sprint(const csv::Table& t, std::size_t row, const SprintCalendar& cal)
{
    const long sprint = csv::parse_integer(t.at(row, "sprint_id"), t, row, "sprint_id");
    if (cal.find_sprint(static_cast<SprintId>(sprint)) == nullptr) {
        throw ValidationError(at_line(t, row) + ": unknown sprint " + std::to_string(sprint));
    }
    return static_cast<SprintId>(sprint);
}

std::optional<fs::path> optional_path(const json& doc, const char* key, const fs::path& base)
{
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    if (!doc.at(key).is_string()) throw InputError(std::string("config: '") + key + "' must be a path string");
    fs::path p = doc.at(key).get<std::string>();
    return p.is_absolute() ? p : base / p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Calendar / config

json calendar_to_json(const SprintCalendar& cal)
{
    json weeks = json::array();
    for (const Week& w : cal.weeks()) {
        weeks.push_back({{"id", w.id}, {"start", format_iso8601(w.start)}, {"end", format_iso8601(w.end)}});
    }
    json sprints = json::array();
    for (const Sprint& s : cal.sprints()) sprints.push_back({{"id", s.id}, {"weeks", s.weeks}});
    return {{"weeks", weeks}, {"sprints", sprints}, {"excluded_sprints", cal.excluded_sprints()}};
}

SprintCalendar calendar_from_json(const json& doc)
{
    const std::string where = "calendar";
    std::vector<Week> weeks;
    for (const json& w : require_array(doc, "weeks", where)) {
        Week week;
        const json& id = require(w, "id", where + ".weeks");
        if (!id.is_number_integer()) throw InputError(where + ".weeks: 'id' must be an integer");
        week.id = id.get<int>();
        const std::string ctx = where + ".weeks[" + std::to_string(week.id) + "]";
        week.start = require_time(w, "start", ctx);
        week.end = require_time(w, "end", ctx);
        weeks.push_back(week);
    }
    std::vector<Sprint> sprints;
    for (const json& s : require_array(doc, "sprints", where)) {
        Sprint sprint;
        const json& id = require(s, "id", where + ".sprints");
        if (!id.is_number_integer()) throw InputError(where + ".sprints: 'id' must be an integer");
        sprint.id = id.get<int>();
        for (const json& w : require_array(s, "weeks", where + ".sprints")) {
            if (!w.is_number_integer()) throw InputError(where + ".sprints: week ids must be integers");
            sprint.weeks.push_back(w.get<int>());
        }
        sprints.push_back(std::move(sprint));
    }
    std::set<SprintId> excluded;
    if (doc.contains("excluded_sprints")) {
        for (const json& s : doc.at("excluded_sprints")) {
            if (!s.is_number_integer()) throw InputError(where + ": excluded_sprints must hold integers");
            excluded.insert(s.get<int>());
        }
    }
    return SprintCalendar(std::move(weeks), std::move(sprints), std::move(excluded));
}

Config parse_config(const json& doc, const fs::path& base_dir, const std::string& source)
{
    if (!doc.is_object()) throw InputError(source + ": top level must be an object");
    Config cfg;
    try {
        cfg.calendar = calendar_from_json(require(doc, "calendar", source));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }

    if (doc.contains("exclusions")) {
        const json& ex = doc.at("exclusions");
        if (ex.contains("subtypes")) cfg.exclusions.subtypes = ex.at("subtypes").get<std::set<std::string>>();
        if (ex.contains("handles")) cfg.exclusions.handles = ex.at("handles").get<std::set<std::string>>();
    }

    std::set<TeamId> seen;
    std::map<PersonId, TeamId> person_team;
    for (const json& t : require_array(doc, "teams", source)) {
        const std::string ctx = source + ": team";
        TeamId id = require_id(t, "id", ctx);
        if (!seen.insert(id).second) throw ValidationError(source + ": duplicate team id '" + id + "'");
        std::vector<PersonId> members;
        for (const json& m : require_array(t, "members", ctx + " " + id)) {
            if (!m.is_string()) throw InputError(ctx + " " + id + ": members must be strings");
            members.push_back(m.get<std::string>());
        }
        std::map<std::string, PersonId> identity;
        if (t.contains("identity_map")) identity = t.at("identity_map").get<std::map<std::string, PersonId>>();
        TeamSource ts;
        ts.roster = Roster(id, std::move(members), std::move(identity));
        for (const PersonId& p : ts.roster.members()) {
            auto [it, inserted] = person_team.emplace(p, id);
            if (!inserted) {
                throw ValidationError(source + ": person '" + p + "' is in teams " + it->second + " and " + id);
            }
        }
        ts.chat_export = optional_path(t, "chat_export", base_dir);
        ts.repo_activity = optional_path(t, "repo_activity", base_dir);
        cfg.teams.push_back(std::move(ts));
    }
    std::sort(cfg.teams.begin(), cfg.teams.end(),
              [](const TeamSource& a, const TeamSource& b) { return a.roster.team() < b.roster.team(); });

    cfg.feedback = optional_path(doc, "feedback", base_dir);
    cfg.outcomes = optional_path(doc, "outcomes", base_dir);
    cfg.work_logs = optional_path(doc, "work_logs", base_dir);

    if (doc.contains("analysis")) {
        const json& a = doc.at("analysis");
        if (a.contains("exclude_teams")) cfg.analysis.exclude_teams = a.at("exclude_teams").get<std::vector<TeamId>>();
        if (a.contains("anomaly_top_fraction")) cfg.analysis.anomaly.top_fraction = a.at("anomaly_top_fraction").get<double>();
        if (a.contains("anomaly_bottom_fraction")) {
            cfg.analysis.anomaly.bottom_fraction = a.at("anomaly_bottom_fraction").get<double>();
        }
        if (a.contains("self_dependency")) cfg.analysis.self_dependency = a.at("self_dependency").get<bool>();
    }
    for (const TeamId& t : cfg.analysis.exclude_teams) {
        if (!seen.count(t)) throw ValidationError(source + ": analysis.exclude_teams names unknown team '" + t + "'");
    }
    return cfg;
}

Config load_config(const fs::path& path)
{
    const json doc = read_json_file(path);
    try {
        return parse_config(doc, path.parent_path(), path.string());
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Chat export

MessageLog parse_chat_export(const fs::path& export_root, const Roster& roster, const ExclusionList& exclusions,
                             Diagnostics& diags)
{
    if (!fs::is_directory(export_root)) throw InputError("chat export not found: " + export_root.string());

    std::vector<fs::path> channels;
    for (const auto& entry : fs::directory_iterator(export_root)) {
        if (entry.is_directory()) channels.push_back(entry.path());
    }
    std::sort(channels.begin(), channels.end());

    std::set<std::string> warned_handles;
    MessageLog log;
    for (const fs::path& dir : channels) {
        const std::string channel = dir.filename().string();
        std::vector<fs::path> days;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") days.push_back(entry.path());
        }
        std::sort(days.begin(), days.end());

        struct Raw {
            Message msg;
            std::optional<std::string> thread_ts;
        };
        std::vector<Raw> raw;
        std::set<std::string> ids;
        for (const fs::path& file : days) {
            const json doc = read_json_file(file);
            if (!doc.is_array()) throw InputError(file.string() + ": byte offset 0: expected an array of messages");
            for (std::size_t i = 0; i < doc.size(); ++i) {
                const json& m = doc[i];
                const std::string where = file.string() + ": message " + std::to_string(i);
                if (!m.is_object()) throw InputError(where + ": expected an object");
                const UtcTime ts = [&] {
                    try {
                        return parse_decimal_seconds(require_string(m, "ts", where));
                    } catch (const InputError& e) {
                        throw InputError(where + ": " + e.what());
                    }
                }();
                if (m.contains("bot_id") ||
                    (m.contains("subtype") && m.at("subtype").is_string() &&
                     exclusions.subtypes.count(m.at("subtype").get<std::string>()))) {
                    diags.count("chat.excluded_bot_or_event");
                    continue;
                }
                if (!m.contains("user") || !m.at("user").is_string()) {
                    diags.count("chat.missing_user");
                    continue;
                }
                const std::string handle = m.at("user").get<std::string>();
                if (exclusions.handles.count(handle)) {
                    diags.count("chat.excluded_handle");
                    continue;
                }
                const auto person = roster.resolve(handle);
                if (!person) {
                    diags.count("chat.unknown_handle_messages");
                    if (warned_handles.insert(handle).second) {
                        diags.warn(roster.team() + "/" + channel, "unknown handle '" + handle + "'; messages dropped");
                    }
                    continue;
                }
                Raw r;
                r.msg.id = format_decimal_seconds(ts);
                r.msg.channel = channel;
                r.msg.author = *person;
                r.msg.timestamp = ts;
                if (m.contains("thread_ts") && m.at("thread_ts").is_string()) {
                    try {
                        r.thread_ts = format_decimal_seconds(parse_decimal_seconds(m.at("thread_ts").get<std::string>()));
                    } catch (const InputError& e) {
                        throw InputError(where + ": thread_ts: " + e.what());
                    }
                }
                if (!ids.insert(r.msg.id).second) {
                    diags.count("chat.duplicate_ts");
                    diags.warn(where, "duplicate ts " + r.msg.id + " in channel " + channel + "; dropped");
                    continue;
                }
                raw.push_back(std::move(r));
            }
        }

        std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
            return std::tie(a.msg.timestamp, a.msg.id) < std::tie(b.msg.timestamp, b.msg.id);
        });
        std::map<std::string, UtcTime> by_id;
        for (const Raw& r : raw) by_id.emplace(r.msg.id, r.msg.timestamp);

        for (Raw& r : raw) {
            if (r.thread_ts && *r.thread_ts != r.msg.id) {
                auto root = by_id.find(*r.thread_ts);
                if (root == by_id.end()) {
                    diags.count("chat.orphan_replies");
                } else if (r.msg.timestamp < root->second) {
                    diags.count("chat.reply_before_root");
                    diags.warn(roster.team() + "/" + channel, "reply " + r.msg.id + " precedes its thread root");
                } else {
                    r.msg.thread_root = *r.thread_ts;
                }
            }
            if (!r.msg.thread_root) diags.count("chat.non_thread_messages");
            log.messages.push_back(std::move(r.msg));
        }
    }
    diags.count("chat.messages", static_cast<long>(log.messages.size()));
    return log;
}

// ---------------------------------------------------------------------------
// Repository activity

RepoActivity parse_repo_activity(std::istream& in, const std::string& source, const Roster& roster,
                                 Diagnostics& diags)
{
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(source + ": byte offset " + std::to_string(e.byte) + ": malformed JSON");
    }
    if (!doc.is_object()) throw InputError(source + ": top level must be an object");

    RepoActivity repo;
    std::set<std::string> dropped;
    std::set<std::string> warned;
    std::set<std::string> all_shas;
    const json& commits = require_array(doc, "commits", source);
    for (std::size_t i = 0; i < commits.size(); ++i) {
        const std::string where = source + ": commits[" + std::to_string(i) + "]";
        Commit c;
        c.sha = require_string(commits[i], "sha", where);
        const std::string handle = require_string(commits[i], "author", where);
        c.authored_at = require_time(commits[i], "authored_at", where);
        if (!all_shas.insert(c.sha).second) throw ValidationError(source + ": duplicate commit sha " + c.sha);
        const auto person = roster.resolve(handle);
        if (!person) {
            dropped.insert(c.sha);
            diags.count("repo.unknown_author_commits");
            if (warned.insert(handle).second) diags.warn(source, "unknown author '" + handle + "'; commits dropped");
            continue;
        }
        c.author = *person;
        repo.commits.push_back(std::move(c));
    }
    std::sort(repo.commits.begin(), repo.commits.end(), [](const Commit& a, const Commit& b) { return a.sha < b.sha; });

    std::vector<std::string> dangling;
    std::set<std::string> mr_ids;
    const json& mrs = require_array(doc, "merge_requests", source);
    for (std::size_t i = 0; i < mrs.size(); ++i) {
        const std::string where = source + ": merge_requests[" + std::to_string(i) + "]";
        MergeRequest mr;
        mr.id = require_id(mrs[i], "id", where);
        if (!mr_ids.insert(mr.id).second) throw ValidationError(source + ": duplicate merge request id " + mr.id);
        mr.created_at = require_time(mrs[i], "created_at", where);
        std::vector<std::string> missing;
        for (const json& s : require_array(mrs[i], "commits", where)) {
            if (!s.is_string()) throw InputError(where + ": commit shas must be strings");
            const std::string sha = s.get<std::string>();
            if (!all_shas.count(sha)) {
                missing.push_back(sha);
            } else if (dropped.count(sha)) {
                diags.count("repo.mr_commits_by_unknown_author");
            } else {
                mr.commit_shas.push_back(sha);
            }
        }
        if (!missing.empty()) {
            std::string msg = "MR " + mr.id + " references missing commit(s)";
            for (const auto& m : missing) msg += " " + m;
            dangling.push_back(msg);
        }
        for (const json& f : require_array(mrs[i], "files", where)) {
            if (!f.is_string()) throw InputError(where + ": file paths must be strings");
            mr.changed_files.push_back(f.get<std::string>());
        }
        mr.commit_shas = sorted_unique(std::move(mr.commit_shas));
        mr.changed_files = sorted_unique(std::move(mr.changed_files));
        if (mr.changed_files.empty()) {
            diags.count("repo.mrs_without_files");
            diags.warn(source, "MR " + mr.id + " has no changed files; excluded from dependency analysis");
        }
        repo.merge_requests.push_back(std::move(mr));
    }
    if (!dangling.empty()) {
        std::string msg = source + ": dangling commit references:";
        for (const auto& d : dangling) msg += "\n  " + d;
        throw ValidationError(msg);
    }
    diags.count("repo.commits", static_cast<long>(repo.commits.size()));
    diags.count("repo.merge_requests", static_cast<long>(repo.merge_requests.size()));
    return repo;
}

RepoActivity parse_repo_activity(const fs::path& file, const Roster& roster, Diagnostics& diags)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot open " + file.string());
    return parse_repo_activity(in, file.string(), roster, diags);
}

// ---------------------------------------------------------------------------
// Delimited tables

std::vector<FeedbackRecord> parse_feedback(const csv::Table& t, const SprintCalendar& cal,
                                           const std::vector<Roster>& rosters, Diagnostics& diags)
{
    t.require_columns({"team_id", "sprint_id", "rater", "ratee", "communication_rating"});
    std::vector<FeedbackRecord> out;
    for (std::size_t row = 0; row < t.row_count(); ++row) {
        FeedbackRecord r;
        r.team = t.at(row, "team_id");
        r.sprint = checked_sprint(t, row, cal);
        r.rater = t.at(row, "rater");
        r.ratee = t.at(row, "ratee");
        const long rating = csv::parse_integer(t.at(row, "communication_rating"), t, row, "communication_rating");
        if (rating < 1 || rating > 5) {
            throw ValidationError(at_line(t, row) + ": communication_rating " + std::to_string(rating) +
                                  " outside 1..5 (row " + std::to_string(row + 1) + ")");
        }
        r.communication_rating = static_cast<int>(rating);
        if (cal.is_excluded(r.sprint)) {
            diags.count("feedback.excluded_sprint_rows");
            continue;
        }
        if (r.rater == r.ratee) {
            diags.count("feedback.self_ratings");
            continue;
        }
        if (!rosters.empty()) {
            const Roster* roster = find_roster(rosters, r.team);
            if (roster == nullptr || !roster->contains(r.rater) || !roster->contains(r.ratee)) {
                diags.count("feedback.unknown_people");
                diags.warn(at_line(t, row), "unknown team or person; row dropped");
                continue;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<OutcomeRecord> parse_outcomes(const csv::Table& t, const SprintCalendar& cal, Diagnostics& diags)
{
    t.require_columns({"team_id", "sprint_id", "story_points_committed", "story_points_passed", "team_score"});
    std::vector<OutcomeRecord> out;
    std::set<std::pair<TeamId, SprintId>> seen;
    for (std::size_t row = 0; row < t.row_count(); ++row) {
        OutcomeRecord r;
        r.team = t.at(row, "team_id");
        r.sprint = checked_sprint(t, row, cal);
        r.story_points_committed = csv::parse_number(t.at(row, "story_points_committed"), t, row, "story_points_committed");
        r.story_points_passed = csv::parse_number(t.at(row, "story_points_passed"), t, row, "story_points_passed");
        r.team_score = csv::parse_number(t.at(row, "team_score"), t, row, "team_score");
        if (t.has_column("stories_passed")) {
            r.stories_passed = csv::parse_integer(t.at(row, "stories_passed"), t, row, "stories_passed");
        }
        if (r.story_points_committed < 0 || r.story_points_passed < 0 || r.stories_passed < 0) {
            throw ValidationError(at_line(t, row) + ": negative story points");
        }
        if (r.story_points_passed > r.story_points_committed) {
            throw ValidationError(at_line(t, row) + ": story_points_passed exceeds story_points_committed");
        }
        if (!seen.emplace(r.team, r.sprint).second) {
            throw ValidationError(at_line(t, row) + ": duplicate outcome for team " + r.team + " sprint " +
                                  std::to_string(r.sprint));
        }
        if (cal.is_excluded(r.sprint)) {
            diags.count("outcomes.excluded_sprint_rows");
            continue;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<WorkLogRecord> parse_work_logs(const csv::Table& t, const SprintCalendar& cal,
                                           const std::vector<Roster>& rosters, Diagnostics& diags)
{
    t.require_columns({"team_id", "person_id", "sprint_id", "pair_programming_hours"});
    std::vector<WorkLogRecord> out;
    for (std::size_t row = 0; row < t.row_count(); ++row) {
        WorkLogRecord r;
        r.team = t.at(row, "team_id");
        r.person = t.at(row, "person_id");
        r.sprint = checked_sprint(t, row, cal);
        r.pair_programming_hours = csv::parse_number(t.at(row, "pair_programming_hours"), t, row, "pair_programming_hours");
        if (r.pair_programming_hours < 0) throw ValidationError(at_line(t, row) + ": negative pair_programming_hours");
        if (!rosters.empty()) {
            const Roster* roster = find_roster(rosters, r.team);
            if (roster == nullptr || !roster->contains(r.person)) {
                diags.count("work_logs.unknown_people");
                diags.warn(at_line(t, row), "unknown team or person; row dropped");
                continue;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------

Dataset load_dataset(const Config& config, const InputRequirements& needs, Diagnostics& diags)
{
    Dataset ds;
    ds.calendar = config.calendar;
    std::vector<Roster> rosters;
    for (const TeamSource& src : config.teams) rosters.push_back(src.roster);

    for (const TeamSource& src : config.teams) {
        TeamData team;
        team.roster = src.roster;
        const TeamId& id = src.roster.team();
        if (src.chat_export) {
            team.messages = parse_chat_export(*src.chat_export, src.roster, config.exclusions, diags);
        } else if (needs.chat) {
            throw InputError("missing input: chat_export for team " + id);
        }
        if (src.repo_activity) {
            team.repo = parse_repo_activity(*src.repo_activity, src.roster, diags);
        } else if (needs.repo) {
            throw InputError("missing input: repo_activity for team " + id);
        }
        ds.teams.push_back(std::move(team));
    }

    auto table = [&](const std::optional<fs::path>& p, bool needed, const char* name) -> std::optional<csv::Table> {
        if (!p) {
            if (needed) throw InputError(std::string("missing input: ") + name);
            return std::nullopt;
        }
        return csv::Table::read_file(*p);
    };
    if (auto t = table(config.feedback, needs.feedback, "feedback")) {
        ds.feedback = parse_feedback(*t, ds.calendar, rosters, diags);
    }
    if (auto t = table(config.outcomes, needs.outcomes, "outcomes")) {
        ds.outcomes = parse_outcomes(*t, ds.calendar, diags);
    }
    if (auto t = table(config.work_logs, needs.work_logs, "work_logs")) {
        ds.work_logs = parse_work_logs(*t, ds.calendar, rosters, diags);
    }
    return ds;
}

}  // namespace stnet
