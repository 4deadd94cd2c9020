#include "stnet/triad.hpp"

#include <stdexcept>

namespace stnet {
namespace {

void require_triads(const CommunicationNetwork& net)
{
    if (net.node_count() < 3) {
        throw std::domain_error("triad census undefined for " + std::to_string(net.node_count()) + " nodes");
    }
}

}  // namespace

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

TriadCensus triad_census(const CommunicationNetwork& net)
{
    require_triads(net);
    const std::size_t n = net.node_count();
    TriadCensus census;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const int ab = net.has_edge(a, b) ? 1 : 0;
            for (std::size_t c = b + 1; c < n; ++c) {
                const int k = ab + (net.has_edge(a, c) ? 1 : 0) + (net.has_edge(b, c) ? 1 : 0);
                ++census.counts[static_cast<std::size_t>(k)];
            }
        }
    }
    return census;
}

TriadCensus census_closed_form(const CommunicationNetwork& net)
{
    require_triads(net);
    const std::uint64_t n = net.node_count();
    const std::uint64_t m = net.edge_count();

    std::uint64_t wedges = 0;
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t d = net.degree(v);
        if (d > 1) wedges += d * (d - 1) / 2;
    }

    // Each triangle is found once from its lowest edge (i < j < k).
    std::uint64_t triangles = 0;
    for (auto [i, j] : net.edges()) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (net.has_edge(i, k) && net.has_edge(j, k)) ++triangles;
        }
    }

    TriadCensus census;
    census.counts[3] = triangles;
    census.counts[2] = wedges - 3 * triangles;
    census.counts[1] = m * (n - 2) - 2 * census.counts[2] - 3 * census.counts[3];
    census.counts[0] = choose3(n) - census.counts[1] - census.counts[2] - census.counts[3];
    return census;
}

RelativeTriadCensus relative_census(const TriadCensus& census)
{
    const std::uint64_t total = census.total();
    if (total == 0) throw std::domain_error("relative census of an empty census");
    RelativeTriadCensus rel;
    // Integer counts below 2^53 are exact doubles, so each quotient is correctly rounded.
    for (std::size_t k = 0; k < 4; ++k) {
        rel.freqs[k] = static_cast<double>(census.counts[k]) / static_cast<double>(total);
    }
    return rel;
}

RelativeTriadCensus mean_weekly_relative_census(std::span<const RelativeTriadCensus> weekly)
{
    if (weekly.empty()) throw std::domain_error("mean of an empty list of censuses");
    RelativeTriadCensus mean;
    for (const RelativeTriadCensus& w : weekly) {
        for (std::size_t k = 0; k < 4; ++k) mean.freqs[k] += w.freqs[k];
    }
    for (double& f : mean.freqs) f /= static_cast<double>(weekly.size());
    return mean;
}

}  // namespace stnet
