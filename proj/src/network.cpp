#include "stnet/network.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stnet {

Window Window::sprint(const SprintCalendar& cal, SprintId id)
{
    const Sprint* s = cal.find_sprint(id);
    if (s == nullptr) throw std::invalid_argument("unknown sprint " + std::to_string(id));
    return {Kind::Sprint, id, s->weeks};
}

bool Window::contains(WeekId w) const { return std::binary_search(weeks.begin(), weeks.end(), w); }

CommunicationNetwork::CommunicationNetwork(std::vector<PersonId> nodes, Window window)
    : nodes_(std::move(nodes)), window_(std::move(window)), adjacency_(nodes_.size(), nodes_.size())
{
}

CommunicationNetwork CommunicationNetwork::from_edges(std::size_t n,
                                                      std::span<const std::pair<std::size_t, std::size_t>> edges)
{
    std::vector<PersonId> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    CommunicationNetwork net(std::move(names), Window{});
    for (auto [a, b] : edges) net.add_edge(a, b);
    return net;
}

void CommunicationNetwork::add_edge(std::size_t i, std::size_t j)
{
    if (i >= nodes_.size() || j >= nodes_.size()) throw std::out_of_range("add_edge: node index out of range");
    if (i == j) return;
    adjacency_.set(i, j);
    adjacency_.set(j, i);
}

std::size_t CommunicationNetwork::degree(std::size_t i) const
{
    std::size_t d = 0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) d += adjacency_.at(i, j) ? 1 : 0;
    return d;
}

std::vector<std::pair<std::size_t, std::size_t>> CommunicationNetwork::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
            if (adjacency_.at(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<CommEvent> derive_comm_events(const MessageLog& log, const Roster& roster, const SprintCalendar& cal,
                                          Diagnostics* diags)
{
    // Roots are looked up per channel by id.
    std::map<std::pair<std::string, std::string>, const Message*> by_id;
    for (const Message& m : log.messages) by_id.emplace(std::make_pair(m.channel, m.id), &m);

    std::vector<CommEvent> events;
    for (const Message& m : log.messages) {
        if (!m.thread_root) continue;
        auto it = by_id.find({m.channel, *m.thread_root});
        if (it == by_id.end()) continue;
        const Message& root = *it->second;
        if (root.author == m.author) {
            if (diags) diags->count("events.self_replies");
            continue;
        }
        if (!roster.contains(m.author) || !roster.contains(root.author)) {
            if (diags) diags->count("events.non_roster");
            continue;
        }
        const auto week = cal.week_of(m.timestamp);
        if (!week) {
            if (diags) diags->count("events.outside_calendar");
            continue;
        }
        events.push_back({m.author, root.author, m.timestamp, *week});
    }
    if (diags) diags->count("events.derived", static_cast<long>(events.size()));
    return events;
}

CommunicationNetwork build_network(std::span<const CommEvent> events, const Roster& roster, const Window& window)
{
    CommunicationNetwork net(roster.members(), window);
    for (const CommEvent& e : events) {
        if (!window.contains(e.week)) continue;
        const auto a = roster.index_of(e.from);
        const auto b = roster.index_of(e.to);
        if (a && b) net.add_edge(*a, *b);
    }
    return net;
}

CoordinationMatrix actual_coordination(std::span<const CommEvent> events, const Roster& roster, WeekId week)
{
    return build_network(events, roster, Window::week(week)).adjacency();
}

void write_edge_list(std::ostream& os, const CommunicationNetwork& net)
{
    std::vector<std::pair<std::string, std::string>> lines;
    for (auto [i, j] : net.edges()) {
        const auto& a = net.nodes()[i];
        const auto& b = net.nodes()[j];
        lines.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [a, b] : lines) os << a << '\t' << b << '\n';
}

}  // namespace stnet
