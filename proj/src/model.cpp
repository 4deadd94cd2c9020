#include "stnet/model.hpp"

#include <algorithm>

#include "stnet/error.hpp"

namespace stnet {

Roster::Roster(TeamId team, std::vector<PersonId> members, std::map<std::string, PersonId> identity_map)
    : team_(std::move(team)), members_(std::move(members)), identity_(std::move(identity_map))
{
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw ValidationError("team " + team_ + ": duplicate member ids");
    }
    for (const PersonId& m : members_) {
        if (m.empty()) throw ValidationError("team " + team_ + ": empty member id");
    }
    for (const auto& [handle, person] : identity_) {
        if (!contains(person)) {
            throw ValidationError("team " + team_ + ": handle '" + handle + "' maps to non-member '" + person + "'");
        }
        // A handle spelled like a member id must not redirect to a different member.
        if (contains(handle) && handle != person) {
            throw ValidationError("team " + team_ + ": handle '" + handle + "' is a member id but maps to '" + person +
                                  "'");
        }
    }
}

std::optional<PersonId> Roster::resolve(const std::string& handle) const
{
    if (auto it = identity_.find(handle); it != identity_.end()) return it->second;
    if (contains(handle)) return handle;
    return std::nullopt;
}

std::optional<std::size_t> Roster::index_of(const PersonId& person) const
{
    auto it = std::lower_bound(members_.begin(), members_.end(), person);
    if (it == members_.end() || *it != person) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

const Message* MessageLog::find(const std::string& channel, const std::string& id) const
{
    for (const Message& m : messages) {
        if (m.channel == channel && m.id == id) return &m;
    }
    return nullptr;
}

const Commit* RepoActivity::find_commit(const std::string& sha) const
{
    auto it = std::lower_bound(commits.begin(), commits.end(), sha,
                               [](const Commit& c, const std::string& s) { return c.sha < s; });
    return (it != commits.end() && it->sha == sha) ? &*it : nullptr;
}

std::optional<double> OutcomeRecord::percent_passed() const
{
    if (story_points_committed <= 0) return std::nullopt;
    return 100.0 * story_points_passed / story_points_committed;
}

const TeamData* Dataset::find_team(const TeamId& id) const
{
    for (const TeamData& t : teams) {
        if (t.roster.team() == id) return &t;
    }
    return nullptr;
}

}  // namespace stnet
