#include "stnet/error.hpp"
#include "stnet/ingest.hpp"

using nlohmann::json;

namespace stnet {
namespace {

json roster_to_json(const Roster& r)
{
    return {{"team", r.team()}, {"members", r.members()}, {"identity_map", r.identity_map()}};
}

Roster roster_from_json(const json& j)
{
    return Roster(j.at("team").get<TeamId>(), j.at("members").get<std::vector<PersonId>>(),
                  j.at("identity_map").get<std::map<std::string, PersonId>>());
}

json messages_to_json(const MessageLog& log)
{
    json out = json::array();
    for (const Message& m : log.messages) {
        json j = {{"id", m.id}, {"channel", m.channel}, {"author", m.author}, {"timestamp", format_iso8601(m.timestamp)}};
        if (m.thread_root) j["thread_root"] = *m.thread_root;
        out.push_back(std::move(j));
    }
    return out;
}

MessageLog messages_from_json(const json& j)
{
    MessageLog log;
    for (const json& m : j) {
        Message msg;
        msg.id = m.at("id").get<std::string>();
        msg.channel = m.at("channel").get<std::string>();
        msg.author = m.at("author").get<PersonId>();
        msg.timestamp = parse_iso8601(m.at("timestamp").get<std::string>());
        if (m.contains("thread_root")) msg.thread_root = m.at("thread_root").get<std::string>();
        log.messages.push_back(std::move(msg));
    }
    return log;
}

json repo_to_json(const RepoActivity& repo)
{
    json commits = json::array();
    for (const Commit& c : repo.commits) {
        commits.push_back({{"sha", c.sha}, {"author", c.author}, {"authored_at", format_iso8601(c.authored_at)}});
    }
    json mrs = json::array();
    for (const MergeRequest& mr : repo.merge_requests) {
        mrs.push_back({{"id", mr.id},
                       {"created_at", format_iso8601(mr.created_at)},
                       {"commits", mr.commit_shas},
                       {"files", mr.changed_files}});
    }
    return {{"commits", commits}, {"merge_requests", mrs}};
}

RepoActivity repo_from_json(const json& j)
{
    RepoActivity repo;
    for (const json& c : j.at("commits")) {
        repo.commits.push_back(
            {c.at("sha").get<std::string>(), c.at("author").get<PersonId>(), parse_iso8601(c.at("authored_at").get<std::string>())});
    }
    for (const json& m : j.at("merge_requests")) {
        repo.merge_requests.push_back({m.at("id").get<std::string>(), parse_iso8601(m.at("created_at").get<std::string>()),
                                       m.at("commits").get<std::vector<std::string>>(),
                                       m.at("files").get<std::vector<std::string>>()});
    }
    return repo;
}

}  // namespace

json dataset_to_json(const Dataset& ds)
{
    json teams = json::array();
    for (const TeamData& t : ds.teams) {
        teams.push_back({{"roster", roster_to_json(t.roster)},
                         {"messages", messages_to_json(t.messages)},
                         {"repo", repo_to_json(t.repo)}});
    }
    json feedback = json::array();
    for (const FeedbackRecord& f : ds.feedback) {
        feedback.push_back({{"team_id", f.team},
                            {"sprint_id", f.sprint},
                            {"rater", f.rater},
                            {"ratee", f.ratee},
                            {"communication_rating", f.communication_rating}});
    }
    json outcomes = json::array();
    for (const OutcomeRecord& o : ds.outcomes) {
        outcomes.push_back({{"team_id", o.team},
                            {"sprint_id", o.sprint},
                            {"story_points_committed", o.story_points_committed},
                            {"story_points_passed", o.story_points_passed},
                            {"team_score", o.team_score},
                            {"stories_passed", o.stories_passed}});
    }
    json logs = json::array();
    for (const WorkLogRecord& w : ds.work_logs) {
        logs.push_back({{"team_id", w.team},
                        {"person_id", w.person},
                        {"sprint_id", w.sprint},
                        {"pair_programming_hours", w.pair_programming_hours}});
    }
    return {{"calendar", calendar_to_json(ds.calendar)},
            {"teams", teams},
            {"feedback", feedback},
            {"outcomes", outcomes},
            {"work_logs", logs}};
}

Dataset dataset_from_json(const json& doc)
{
    try {
        Dataset ds;
        ds.calendar = calendar_from_json(doc.at("calendar"));
        for (const json& t : doc.at("teams")) {
            ds.teams.push_back({roster_from_json(t.at("roster")), messages_from_json(t.at("messages")),
                                repo_from_json(t.at("repo"))});
        }
        for (const json& f : doc.at("feedback")) {
            ds.feedback.push_back({f.at("team_id").get<TeamId>(), f.at("sprint_id").get<SprintId>(),
                                   f.at("rater").get<PersonId>(), f.at("ratee").get<PersonId>(),
                                   f.at("communication_rating").get<int>()});
        }
        for (const json& o : doc.at("outcomes")) {
            ds.outcomes.push_back({o.at("team_id").get<TeamId>(), o.at("sprint_id").get<SprintId>(),
                                   o.at("story_points_committed").get<double>(), o.at("story_points_passed").get<double>(),
                                   o.at("team_score").get<double>(), o.at("stories_passed").get<long>()});
        }
        for (const json& w : doc.at("work_logs")) {
            ds.work_logs.push_back({w.at("team_id").get<TeamId>(), w.at("person_id").get<PersonId>(),
                                    w.at("sprint_id").get<SprintId>(), w.at("pair_programming_hours").get<double>()});
        }
        return ds;
    } catch (const json::exception& e) {
        throw InputError(std::string("dataset: ") + e.what());
    }
}

}  // namespace stnet
