#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stnet/network.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(STNET_FIXTURE_DIR) / rel; }

inline nlohmann::json load_json(const std::string& rel)
{
    std::ifstream in(fixture(rel));
    if (!in) throw std::runtime_error("missing fixture " + rel);
    return nlohmann::json::parse(in);
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Erdos-Renyi G(n, p) over nodes "0".."n-1".
inline stnet::CommunicationNetwork random_graph(std::mt19937_64& rng, std::size_t n, double p)
{
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng)) edges.emplace_back(i, j);
        }
    }
    return stnet::CommunicationNetwork::from_edges(n, edges);
}

/// Scratch directory under the system temp dir, emptied on creation.
inline std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("stnet_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testing
