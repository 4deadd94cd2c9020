#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "stnet/network.hpp"

namespace stnet {

/// Undirected triad census: counts[k] is the number of node triples with exactly k edges.
struct TriadCensus {
    std::array<std::uint64_t, 4> counts{};

    std::uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }

    friend bool operator==(const TriadCensus&, const TriadCensus&) = default;
};

struct RelativeTriadCensus {
    std::array<double, 4> freqs{};

    friend bool operator==(const RelativeTriadCensus&, const RelativeTriadCensus&) = default;
};

std::uint64_t choose3(std::uint64_t n);

/// Reference census by enumerating all C(n,3) triples. Throws std::domain_error if n < 3.
TriadCensus triad_census(const CommunicationNetwork& net);

/// Census from edge, wedge and triangle counts:
///   c3 = triangles, c2 = wedges - 3 c3, c1 = m (n-2) - 2 c2 - 3 c3, c0 = C(n,3) - c1 - c2 - c3.
TriadCensus census_closed_form(const CommunicationNetwork& net);

/// Each count divided by the census total. Throws std::domain_error if the total is zero.
RelativeTriadCensus relative_census(const TriadCensus& census);

/// Component-wise mean. Throws std::domain_error on an empty list.
RelativeTriadCensus mean_weekly_relative_census(std::span<const RelativeTriadCensus> weekly);

}  // namespace stnet
