#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stnet/calendar.hpp"
#include "stnet/diagnostics.hpp"
#include "stnet/matrix.hpp"
#include "stnet/model.hpp"

namespace stnet {

/// "from" wrote in a thread started by "to".
struct CommEvent {
    PersonId from;
    PersonId to;
    UtcTime timestamp;
    WeekId week = 0;

    friend bool operator==(const CommEvent&, const CommEvent&) = default;
};

/// A week or a sprint, resolved to the set of weeks it covers.
struct Window {
    enum class Kind { Week, Sprint };

    Kind kind = Kind::Week;
    int id = 0;
    std::vector<WeekId> weeks;  // sorted

    static Window week(WeekId id) { return {Kind::Week, id, {id}}; }
    /// Throws std::invalid_argument if the sprint is not in the calendar.
    static Window sprint(const SprintCalendar& cal, SprintId id);

    bool contains(WeekId w) const;

    friend bool operator==(const Window&, const Window&) = default;
};

/// Undirected, unweighted communication graph over a full team roster. Every roster
/// member is a node whether or not they communicated.
class CommunicationNetwork {
public:
    CommunicationNetwork() = default;
    CommunicationNetwork(std::vector<PersonId> nodes, Window window);

    /// Graph with nodes 0..n-1 named "0", "1", ... and the given edges (used for synthetic graphs).
    static CommunicationNetwork from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

    const std::vector<PersonId>& nodes() const { return nodes_; }
    const Window& window() const { return window_; }
    std::size_t node_count() const { return nodes_.size(); }

    /// Adds the undirected edge {i, j}; self-loops are ignored.
    void add_edge(std::size_t i, std::size_t j);
    bool has_edge(std::size_t i, std::size_t j) const { return adjacency_.at(i, j); }
    std::size_t edge_count() const { return adjacency_.count_ones() / 2; }
    std::size_t degree(std::size_t i) const;

    /// Edges as index pairs (i < j), lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    const BinaryMatrix& adjacency() const { return adjacency_; }

    friend bool operator==(const CommunicationNetwork&, const CommunicationNetwork&) = default;

private:
    std::vector<PersonId> nodes_;
    Window window_;
    BinaryMatrix adjacency_;
};

/// Actual coordination: roster-indexed, symmetric, zero diagonal.
using CoordinationMatrix = BinaryMatrix;

/// One event per thread reply whose author differs from the thread root's author.
/// Replies outside every calendar week are dropped and counted in diags when given.
std::vector<CommEvent> derive_comm_events(const MessageLog& log, const Roster& roster, const SprintCalendar& cal,
                                          Diagnostics* diags = nullptr);

/// Edge {x, y} iff at least one event between x and y (either direction) falls in the window.
CommunicationNetwork build_network(std::span<const CommEvent> events, const Roster& roster, const Window& window);

CoordinationMatrix actual_coordination(std::span<const CommEvent> events, const Roster& roster, WeekId week);

/// One "person_a<TAB>person_b" line per edge, person_a < person_b, lines sorted.
void write_edge_list(std::ostream& os, const CommunicationNetwork& net);

}  // namespace stnet
