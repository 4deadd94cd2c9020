#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace stnet {

enum class Severity { Info, Warning };

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string source;   // file or component the diagnostic refers to
    std::string message;
};

/// Non-fatal findings collected while parsing and deriving. Counters aggregate
/// repetitive events (dropped messages, unknown handles) so summaries stay short.
class Diagnostics {
public:
    void warn(std::string source, std::string message);
    void info(std::string source, std::string message);
    void count(const std::string& key, long delta = 1);

    long counter(const std::string& key) const;
    const std::map<std::string, long>& counters() const { return counters_; }
    const std::vector<Diagnostic>& entries() const { return entries_; }
    std::size_t warning_count() const;

    void merge(const Diagnostics& other);

    /// Human-readable summary: counters first, then at most max_entries entries.
    void print(std::ostream& os, std::size_t max_entries = 50) const;

private:
    std::vector<Diagnostic> entries_;
    std::map<std::string, long> counters_;
};

}  // namespace stnet
