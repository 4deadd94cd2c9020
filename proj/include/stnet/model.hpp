#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stnet/calendar.hpp"
#include "stnet/time.hpp"

namespace stnet {

using PersonId = std::string;
using TeamId = std::string;

/// A team's members and the mapping from raw platform handles (chat user ids, VCS
/// author names or emails) to person ids. Members are kept sorted; their position is
/// the row/column index used by every roster-indexed matrix.
class Roster {
public:
    Roster() = default;

    /// Throws ValidationError on duplicate members or identity entries naming non-members.
    Roster(TeamId team, std::vector<PersonId> members, std::map<std::string, PersonId> identity_map = {});

    const TeamId& team() const { return team_; }
    const std::vector<PersonId>& members() const { return members_; }
    const std::map<std::string, PersonId>& identity_map() const { return identity_; }
    std::size_t size() const { return members_.size(); }

    /// Maps a raw handle to a member. A member id is accepted as its own handle.
    std::optional<PersonId> resolve(const std::string& handle) const;

    std::optional<std::size_t> index_of(const PersonId& person) const;
    bool contains(const PersonId& person) const { return index_of(person).has_value(); }

    friend bool operator==(const Roster&, const Roster&) = default;

private:
    TeamId team_;
    std::vector<PersonId> members_;
    std::map<std::string, PersonId> identity_;
};

struct Message {
    std::string id;       // chat timestamp string; unique within its channel
    std::string channel;
    PersonId author;
    UtcTime timestamp;
    std::optional<std::string> thread_root;  // id of the root message in the same channel

    friend bool operator==(const Message&, const Message&) = default;
};

/// Retained human messages from public channels, ordered by (channel, timestamp, id).
struct MessageLog {
    std::vector<Message> messages;

    const Message* find(const std::string& channel, const std::string& id) const;

    friend bool operator==(const MessageLog&, const MessageLog&) = default;
};

struct Commit {
    std::string sha;
    PersonId author;
    UtcTime authored_at;

    friend bool operator==(const Commit&, const Commit&) = default;
};

struct MergeRequest {
    std::string id;
    UtcTime created_at;
    std::vector<std::string> commit_shas;    // sorted, unique
    std::vector<std::string> changed_files;  // sorted, unique

    friend bool operator==(const MergeRequest&, const MergeRequest&) = default;
};

struct RepoActivity {
    std::vector<Commit> commits;               // sorted by sha
    std::vector<MergeRequest> merge_requests;  // in file order

    const Commit* find_commit(const std::string& sha) const;

    friend bool operator==(const RepoActivity&, const RepoActivity&) = default;
};

struct FeedbackRecord {
    TeamId team;
    SprintId sprint = 0;
    PersonId rater;
    PersonId ratee;
    int communication_rating = 0;  // Likert, 1..5

    friend bool operator==(const FeedbackRecord&, const FeedbackRecord&) = default;
};

/// Sprint-level delivery outcome for one team. Percentages are derived on demand.
struct OutcomeRecord {
    TeamId team;
    SprintId sprint = 0;
    double story_points_committed = 0;
    double story_points_passed = 0;
    double team_score = 0;
    long stories_passed = 0;

    std::optional<double> percent_passed() const;

    friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

struct WorkLogRecord {
    TeamId team;
    PersonId person;
    SprintId sprint = 0;
    double pair_programming_hours = 0;

    friend bool operator==(const WorkLogRecord&, const WorkLogRecord&) = default;
};

struct TeamData {
    Roster roster;
    MessageLog messages;
    RepoActivity repo;

    friend bool operator==(const TeamData&, const TeamData&) = default;
};

/// The validated, immutable input of one analysis run.
struct Dataset {
    SprintCalendar calendar;
    std::vector<TeamData> teams;  // sorted by team id
    std::vector<FeedbackRecord> feedback;
    std::vector<OutcomeRecord> outcomes;
    std::vector<WorkLogRecord> work_logs;

    const TeamData* find_team(const TeamId& id) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

}  // namespace stnet
