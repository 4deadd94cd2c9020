#include "stnet/diagnostics.hpp"

#include <algorithm>

namespace stnet {

void Diagnostics::warn(std::string source, std::string message)
{
    entries_.push_back({Severity::Warning, std::move(source), std::move(message)});
}

void Diagnostics::info(std::string source, std::string message)
{
    entries_.push_back({Severity::Info, std::move(source), std::move(message)});
}

void Diagnostics::count(const std::string& key, long delta) { counters_[key] += delta; }

long Diagnostics::counter(const std::string& key) const
{
    auto it = counters_.find(key);
    return it == counters_.end() ? 0 : it->second;
}

std::size_t Diagnostics::warning_count() const
{
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                  [](const Diagnostic& d) { return d.severity == Severity::Warning; }));
}

void Diagnostics::merge(const Diagnostics& other)
{
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    for (const auto& [k, v] : other.counters_) counters_[k] += v;
}

void Diagnostics::print(std::ostream& os, std::size_t max_entries) const
{
    for (const auto& [k, v] : counters_) os << "  " << k << ": " << v << '\n';
    std::size_t shown = 0;
    for (const Diagnostic& d : entries_) {
        if (shown++ == max_entries) {
            os << "  ... " << (entries_.size() - max_entries) << " more\n";
            break;
        }
        os << "  " << (d.severity == Severity::Warning ? "warning" : "info") << ": " << d.source << ": " << d.message
           << '\n';
    }
}

}  // namespace stnet
