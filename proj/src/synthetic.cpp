#include "stnet/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stnet/error.hpp"
#include "stnet/time.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace stnet {
namespace {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kWeek = 7 * kDay;
constexpr std::int64_t kSeasonStart = 1677456000;  // 2023-02-27T00:00:00Z, a Monday
constexpr int kBreakWeeks = 3;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

struct WeekSpan {
    int id;
    std::int64_t start;
};

std::string two_digits(int v)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", v);
    return buf;
}

void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + p.string());
    out << text;
}

}  // namespace

fs::path write_synthetic_season(const SyntheticSeason& season, std::uint64_t seed, const fs::path& out_dir)
{
    if (season.teams < 1 || season.members < 3 || season.weeks < season.sprints || season.sprints < 2) {
        throw InputError("synthetic season: need >= 1 team, >= 3 members, >= 2 sprints and weeks >= sprints");
    }
    Rng rng(seed);
    fs::create_directories(out_dir);

    // Calendar: contiguous weeks with a mid-season break.
    std::vector<WeekSpan> weeks;
    for (int w = 1; w <= season.weeks; ++w) {
        const int gap = w > season.weeks / 2 ? kBreakWeeks : 0;
        weeks.push_back({w, kSeasonStart + (w - 1 + gap) * kWeek});
    }
    json cal_weeks = json::array();
    for (const WeekSpan& w : weeks) {
        cal_weeks.push_back({{"id", w.id},
                             {"start", format_iso8601(UtcTime::from_seconds(w.start))},
                             {"end", format_iso8601(UtcTime::from_seconds(w.start + kWeek))}});
    }
    json cal_sprints = json::array();
    std::vector<std::vector<int>> sprint_weeks(static_cast<std::size_t>(season.sprints));
    {
        int next = 1;
        for (int s = 0; s < season.sprints; ++s) {
            const int len = season.weeks / season.sprints + (s < season.weeks % season.sprints ? 1 : 0);
            for (int i = 0; i < len; ++i) sprint_weeks[static_cast<std::size_t>(s)].push_back(next++);
            cal_sprints.push_back({{"id", s + 1}, {"weeks", sprint_weeks[static_cast<std::size_t>(s)]}});
        }
    }

    json teams = json::array();
    std::string feedback = "team_id,sprint_id,rater,ratee,communication_rating\n";
    std::string outcomes = "team_id,sprint_id,story_points_committed,story_points_passed,team_score,stories_passed\n";
    std::string work_logs = "team_id,person_id,sprint_id,pair_programming_hours\n";

    for (int t = 1; t <= season.teams; ++t) {
        const std::string team = "T" + two_digits(t);
        const double chattiness = 0.3 + 0.7 * rng.unit();
        const double quality = rng.unit();

        std::vector<std::string> members;
        json identity = json::object();
        std::vector<std::string> chat_handles, git_handles;
        for (int m = 1; m <= season.members; ++m) {
            const std::string person = team + "-p" + std::to_string(m);
            members.push_back(person);
            chat_handles.push_back("U" + team + "M" + std::to_string(m));
            git_handles.push_back("t" + two_digits(t) + ".p" + std::to_string(m) + "@example.edu");
            identity[chat_handles.back()] = person;
            identity[git_handles.back()] = person;
        }

        // Replies mostly go to a fixed set of partners so sprint networks stay sparse.
        std::vector<std::vector<std::size_t>> partners(members.size());
        for (std::size_t m = 0; m < members.size(); ++m) {
            partners[m].push_back((m + 1) % members.size());
            partners[m].push_back((m + members.size() - 1) % members.size());
            if (rng.chance(chattiness)) partners[m].push_back(rng.below(members.size()));
        }
        const double leak = 0.004 * chattiness;

        // Chat export.
        const fs::path chat_root = out_dir / "chat" / team;
        std::map<std::pair<std::string, std::string>, json> day_files;  // (channel, date) -> messages
        const int roots = std::max(1, season.messages_per_team * 35 / 100);
        std::vector<std::pair<std::int64_t, std::string>> root_ts;  // seconds, ts text
        std::vector<std::string> root_channel;
        std::vector<std::size_t> root_author;
        long counter = 0;
        auto make_ts = [&](std::int64_t secs) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%lld.%06ld", static_cast<long long>(secs), ++counter % 1000000);
            return std::string(buf);
        };
        auto place = [&](const std::string& channel, std::int64_t secs, json msg) {
            const std::string date = format_iso8601(UtcTime::from_seconds(secs)).substr(0, 10);
            json& arr = day_files[{channel, date}];
            if (arr.is_null()) arr = json::array();
            arr.push_back(std::move(msg));
        };
        for (int i = 0; i < season.messages_per_team; ++i) {
            const bool is_root = i < roots;
            if (is_root) {
                const std::string channel = "channel-" + std::to_string(rng.between(1, season.channels_per_team));
                const WeekSpan& w = weeks[rng.below(weeks.size())];
                const std::int64_t secs = w.start + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(kWeek)));
                const std::string ts = make_ts(secs);
                const std::size_t who = rng.below(chat_handles.size());
                json msg = {{"type", "message"},
                            {"user", chat_handles[who]},
                            {"ts", ts},
                            {"text", "update"}};
                // Every root advertises its thread; replies reference it.
                msg["thread_ts"] = ts;
                root_ts.emplace_back(secs, ts);
                root_channel.push_back(channel);
                root_author.push_back(who);
                place(channel, secs, std::move(msg));
                continue;
            }
            const std::size_t r = rng.below(root_ts.size());
            const std::int64_t secs = root_ts[r].first + 60 + static_cast<std::int64_t>(rng.below(2 * kDay));
            const auto& near = partners[root_author[r]];
            const std::string author = rng.chance(leak) ? chat_handles[rng.below(chat_handles.size())]
                                                        : chat_handles[near[rng.below(near.size())]];
            json msg = {{"type", "message"}, {"user", author}, {"ts", make_ts(secs)}, {"text", "reply"}};
            if (rng.chance(0.9)) msg["thread_ts"] = root_ts[r].second;
            place(root_channel[r], secs, std::move(msg));
        }
        // Noise the parser must drop.
        for (int i = 0; i < 5; ++i) {
            const std::int64_t secs = weeks[rng.below(weeks.size())].start + 3600;
            place("channel-1", secs, {{"type", "message"}, {"subtype", "bot_message"}, {"bot_id", "B1"}, {"ts", make_ts(secs)}});
            place("channel-1", secs, {{"type", "message"}, {"user", "UINSTRUCTOR"}, {"ts", make_ts(secs)}});
        }
        for (const auto& [key, arr] : day_files) {
            const fs::path dir = chat_root / key.first;
            fs::create_directories(dir);
            write_text(dir / (key.second + ".json"), arr.dump() + "\n");
        }

        // Repository activity.
        json commits = json::array();
        json mrs = json::array();
        long sha_counter = 0;
        const int hot_files = std::max(2, season.files_per_team / 10);
        for (int i = 0; i < season.merge_requests_per_team; ++i) {
            const WeekSpan& w = weeks[rng.below(weeks.size())];
            const std::int64_t created = w.start + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(kWeek)));
            const int n_commits = rng.between(1, 6);
            const int n_authors = rng.between(1, 3);
            std::vector<std::size_t> authors;
            for (int a = 0; a < n_authors; ++a) authors.push_back(rng.below(git_handles.size()));
            json shas = json::array();
            for (int c = 0; c < n_commits; ++c) {
                char sha[48];
                std::snprintf(sha, sizeof sha, "%08x%032lx", static_cast<unsigned>(t), ++sha_counter);
                const std::int64_t at = created - static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(kWeek)));
                commits.push_back({{"sha", sha},
                                   {"author", git_handles[authors[rng.below(authors.size())]]},
                                   {"authored_at", format_iso8601(UtcTime::from_seconds(at))}});
                shas.push_back(sha);
            }
            std::set<std::string> files;
            const int n_files = rng.between(1, 5);
            for (int f = 0; f < n_files; ++f) {
                const int idx = rng.chance(0.5) ? rng.between(1, hot_files) : rng.between(1, season.files_per_team);
                files.insert("src/module" + std::to_string(idx) + ".java");
            }
            mrs.push_back({{"id", i + 1},
                           {"created_at", format_iso8601(UtcTime::from_seconds(created))},
                           {"commits", shas},
                           {"files", files}});
        }
        fs::create_directories(out_dir / "repo");
        write_text(out_dir / "repo" / (team + ".json"), json{{"commits", commits}, {"merge_requests", mrs}}.dump(1) + "\n");

        // Tables.
        for (int s = 1; s <= season.sprints; ++s) {
            const int committed = rng.between(20, 45);
            const int passed = static_cast<int>(committed * (0.4 + 0.6 * (0.5 * quality + 0.5 * rng.unit())));
            const int score = 50 + static_cast<int>(50 * (0.5 * quality + 0.5 * rng.unit()));
            outcomes += team + "," + std::to_string(s) + "," + std::to_string(committed) + "," + std::to_string(passed) +
                        "," + std::to_string(score) + "," + std::to_string(rng.between(2, 12)) + "\n";
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = 0; b < members.size(); ++b) {
                    if (a == b) continue;
                    const int rating = std::clamp(static_cast<int>(2 + 3 * quality + rng.between(-1, 1)), 1, 5);
                    feedback += team + "," + std::to_string(s) + "," + members[a] + "," + members[b] + "," +
                                std::to_string(rating) + "\n";
                }
                work_logs += team + "," + members[a] + "," + std::to_string(s) + "," + std::to_string(rng.between(0, 12)) +
                             "\n";
            }
        }

        teams.push_back({{"id", team},
                         {"members", members},
                         {"identity_map", identity},
                         {"chat_export", "chat/" + team},
                         {"repo_activity", "repo/" + team + ".json"}});
    }

    write_text(out_dir / "feedback.csv", feedback);
    write_text(out_dir / "outcomes.csv", outcomes);
    write_text(out_dir / "work_logs.csv", work_logs);

    const json config = {{"calendar", {{"weeks", cal_weeks}, {"sprints", cal_sprints}, {"excluded_sprints", {1}}}},
                         {"teams", teams},
                         {"feedback", "feedback.csv"},
                         {"outcomes", "outcomes.csv"},
                         {"work_logs", "work_logs.csv"}};
    const fs::path config_path = out_dir / "config.json";
    write_text(config_path, config.dump(2) + "\n");
    return config_path;
}

}  // namespace stnet
