#include <algorithm>
#include <numeric>
#include <random>

#include <doctest.h>

#include "stnet/ingest.hpp"
#include "stnet/triad.hpp"
#include "support.hpp"

using namespace stnet;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

namespace {

TriadCensus census_of(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2, std::uint64_t c3)
{
    return TriadCensus{{c0, c1, c2, c3}};
}

CommunicationNetwork complement(const CommunicationNetwork& g)
{
    Edges e;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (std::size_t j = i + 1; j < g.node_count(); ++j) {
            if (!g.has_edge(i, j)) e.emplace_back(i, j);
        }
    }
    return CommunicationNetwork::from_edges(g.node_count(), e);
}

}  // namespace

TEST_SUITE("triad")
{
    TEST_CASE("four-node example network")
    {
        // Nodes A, B, C, D = 0..3; edges A-C, A-D, C-D, B-D.
        const Edges e{{0, 2}, {0, 3}, {2, 3}, {1, 3}};
        const auto g = CommunicationNetwork::from_edges(4, e);
        CHECK(triad_census(g) == census_of(0, 1, 2, 1));
        CHECK(census_closed_form(g) == census_of(0, 1, 2, 1));
        const RelativeTriadCensus rel = relative_census(triad_census(g));
        CHECK(rel.freqs == std::array<double, 4>{0, 0.25, 0.5, 0.25});
    }

    TEST_CASE("empty, complete and star graphs")
    {
        CHECK(triad_census(CommunicationNetwork::from_edges(4, Edges{})) == census_of(4, 0, 0, 0));
        Edges k5;
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
        }
        const auto complete = CommunicationNetwork::from_edges(5, k5);
        CHECK(triad_census(complete) == census_of(0, 0, 0, 10));
        CHECK(census_closed_form(complete) == census_of(0, 0, 0, 10));

        const auto star = CommunicationNetwork::from_edges(5, Edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
        const TriadCensus s = triad_census(star);
        CHECK(s.counts[3] == 0);
        CHECK(s.counts[2] == 6);
        CHECK(census_closed_form(star) == s);
    }

    TEST_CASE("undefined inputs")
    {
        CHECK_THROWS_AS(triad_census(CommunicationNetwork::from_edges(2, Edges{{0, 1}})), std::domain_error);
        CHECK_THROWS_AS(census_closed_form(CommunicationNetwork::from_edges(0, Edges{})), std::domain_error);
        CHECK_THROWS_AS(relative_census(TriadCensus{}), std::domain_error);
        CHECK_THROWS_AS(mean_weekly_relative_census({}), std::domain_error);
    }

    TEST_CASE("relative census examples")
    {
        CHECK(relative_census(census_of(4, 0, 0, 0)).freqs == std::array<double, 4>{1, 0, 0, 0});
        CHECK(relative_census(census_of(0, 0, 0, 10)).freqs == std::array<double, 4>{0, 0, 0, 1});
        const std::vector<RelativeTriadCensus> one{{{1, 0, 0, 0}}};
        CHECK(mean_weekly_relative_census(one).freqs == std::array<double, 4>{1, 0, 0, 0});
        const std::vector<RelativeTriadCensus> two{{{1, 0, 0, 0}}, {{0, 0, 0, 1}}};
        CHECK(mean_weekly_relative_census(two).freqs == std::array<double, 4>{0.5, 0, 0, 0.5});
    }

    TEST_CASE("mean of three fixture weeks")
    {
        const auto manifest = testing::load_json("chat/manifest.json");
        const Config cfg = load_config(testing::fixture("chat/config.json"));
        Diagnostics diags;
        const Dataset ds = load_dataset(cfg, InputRequirements{true, false, false, false, false}, diags);
        const auto events = derive_comm_events(ds.teams[0].messages, ds.teams[0].roster, ds.calendar);
        std::vector<RelativeTriadCensus> weekly;
        for (WeekId w : {2, 3, 4}) {
            const TriadCensus c = triad_census(build_network(events, ds.teams[0].roster, Window::week(w)));
            const auto expected = manifest["weekly_census"][std::to_string(w)].get<std::vector<std::uint64_t>>();
            CHECK(std::vector<std::uint64_t>(c.counts.begin(), c.counts.end()) == expected);
            weekly.push_back(relative_census(c));
        }
        const RelativeTriadCensus mean = mean_weekly_relative_census(weekly);
        const auto expected = manifest["mean_weekly_relative_census_2_4"].get<std::vector<double>>();
        for (std::size_t k = 0; k < 4; ++k) CHECK(mean.freqs[k] == doctest::Approx(expected[k]).epsilon(1e-12));
        CHECK(std::accumulate(mean.freqs.begin(), mean.freqs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("random graphs: closed form, totals, relabeling, complement")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
            const double p = std::uniform_real_distribution<double>(0, 1)(rng);
            const auto g = testing::random_graph(rng, n, p);
            const TriadCensus c = triad_census(g);
            CHECK(c == census_closed_form(g));
            CHECK(c.total() == choose3(n));
            const auto rel = relative_census(c);
            CHECK(std::accumulate(rel.freqs.begin(), rel.freqs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            Edges relabeled;
            for (const auto& [i, j] : g.edges()) relabeled.emplace_back(perm[i], perm[j]);
            CHECK(triad_census(CommunicationNetwork::from_edges(n, relabeled)) == c);

            const TriadCensus cc = triad_census(complement(g));
            CHECK(cc == census_of(c.counts[3], c.counts[2], c.counts[1], c.counts[0]));
        }
    }
}
