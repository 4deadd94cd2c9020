// Command-line front end: validate inputs, compute STC and triad censuses, correlate
// them with sprint outcomes, and write report tables.
//
// Exit codes: 0 success, 1 validation failure, 2 input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stnet/error.hpp"
#include "stnet/ingest.hpp"
#include "stnet/network.hpp"
#include "stnet/report.hpp"
#include "stnet/synthetic.hpp"

namespace fs = std::filesystem;
using namespace stnet;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;

struct CommonOptions {
    std::string config;
    std::string out = "out";
    std::string format = "csv";
    std::string exclude_teams;
    std::string exclude_sprints;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Config load_with_overrides(const CommonOptions& opt)
{
    Config cfg = load_config(opt.config);
    if (!opt.exclude_teams.empty()) {
        cfg.analysis.exclude_teams = split_list(opt.exclude_teams);
        for (const TeamId& t : cfg.analysis.exclude_teams) {
            const bool known = std::any_of(cfg.teams.begin(), cfg.teams.end(),
                                           [&](const TeamSource& s) { return s.roster.team() == t; });
            if (!known) throw InputError("--exclude-teams: unknown team '" + t + "'");
        }
    }
    if (!opt.exclude_sprints.empty()) {
        std::set<SprintId> ids;
        for (const std::string& s : split_list(opt.exclude_sprints)) {
            try {
                ids.insert(std::stoi(s));
            } catch (const std::exception&) {
                throw InputError("--exclude-sprints: '" + s + "' is not a sprint id");
            }
        }
        cfg.calendar = cfg.calendar.with_excluded(std::move(ids));
    }
    return cfg;
}

OutputFormat parse_format(const std::string& f)
{
    if (f == "csv" || f == "delimited") return OutputFormat::Delimited;
    if (f == "json" || f == "structured") return OutputFormat::Structured;
    throw InputError("--format must be csv or json");
}

void print_diagnostics(const Diagnostics& diags)
{
    if (diags.counters().empty() && diags.entries().empty()) return;
    std::cerr << "diagnostics:\n";
    diags.print(std::cerr);
}

int run_analysis(const CommonOptions& opt, const InputRequirements& needs, const std::vector<ReportPart>& parts)
{
    const Config cfg = load_with_overrides(opt);
    const OutputFormat format = parse_format(opt.format);
    Diagnostics diags;
    const Dataset ds = load_dataset(cfg, needs, diags);
    const AnalysisReport report = run_pipeline(ds, cfg.analysis, diags);
    print_diagnostics(diags);
    for (const fs::path& p : emit(report, format, opt.out, parts)) std::cout << p.string() << '\n';
    return 0;
}

int run_validate(const CommonOptions& opt)
{
    const Config cfg = load_with_overrides(opt);
    Diagnostics diags;
    const Dataset ds = load_dataset(cfg, InputRequirements{false, false, false, false, false}, diags);
    std::cout << "calendar: " << ds.calendar.weeks().size() << " weeks, " << ds.calendar.sprints().size()
              << " sprints, excluded sprints:";
    for (SprintId s : ds.calendar.excluded_sprints()) std::cout << ' ' << s;
    std::cout << '\n';
    for (const TeamData& t : ds.teams) {
        Diagnostics local;
        const auto events = derive_comm_events(t.messages, t.roster, ds.calendar, &local);
        std::size_t threads = 0;
        std::set<std::pair<std::string, std::string>> roots;
        for (const Message& m : t.messages.messages) {
            if (m.thread_root) roots.emplace(m.channel, *m.thread_root);
        }
        threads = roots.size();
        std::cout << "team " << t.roster.team() << ": " << t.roster.size() << " members, " << t.messages.messages.size()
                  << " messages, " << threads << " threads, " << events.size() << " reply events, "
                  << t.repo.commits.size() << " commits, " << t.repo.merge_requests.size() << " merge requests\n";
        diags.merge(local);
    }
    std::cout << "feedback rows: " << ds.feedback.size() << ", outcome rows: " << ds.outcomes.size()
              << ", work log rows: " << ds.work_logs.size() << '\n';
    print_diagnostics(diags);
    std::cout << "ok\n";
    return 0;
}

int run_edges(const CommonOptions& opt, const std::string& team, int week, int sprint)
{
    const Config cfg = load_with_overrides(opt);
    Diagnostics diags;
    const Dataset ds = load_dataset(cfg, InputRequirements{true, false, false, false, false}, diags);
    const TeamData* t = ds.find_team(team);
    if (t == nullptr) throw InputError("unknown team '" + team + "'");
    if ((week > 0) == (sprint > 0)) throw InputError("give exactly one of --week or --sprint");
    Window window;
    if (week > 0) {
        if (ds.calendar.find_week(week) == nullptr) throw InputError("unknown week " + std::to_string(week));
        window = Window::week(week);
    } else {
        if (ds.calendar.find_sprint(sprint) == nullptr) throw InputError("unknown sprint " + std::to_string(sprint));
        window = Window::sprint(ds.calendar, sprint);
    }
    const auto events = derive_comm_events(t->messages, t->roster, ds.calendar);
    const CommunicationNetwork net = build_network(events, t->roster, window);
    if (opt.out == "-") {
        write_edge_list(std::cout, net);
    } else {
        std::ofstream out(opt.out);
        if (!out) throw InputError("cannot write " + opt.out);
        write_edge_list(out, net);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Socio-technical congruence and triad census analysis of team communication"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto add_common = [&](CLI::App* sub, bool with_output) {
        sub->add_option("--config", opt.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--exclude-teams", opt.exclude_teams, "Comma-separated teams left out of the exclusion tables");
        sub->add_option("--exclude-sprints", opt.exclude_sprints, "Comma-separated sprints excluded from analysis");
        if (with_output) {
            sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
            sub->add_option("--format", opt.format, "csv or json")->capture_default_str();
        }
    };

    auto* validate = app.add_subcommand("validate", "Parse all inputs and print an integrity report");
    add_common(validate, false);
    auto* stc = app.add_subcommand("stc", "Weekly STC series and team summaries");
    add_common(stc, true);
    auto* census = app.add_subcommand("census", "Sprint triad censuses and census correlation tables");
    add_common(census, true);
    auto* correlate = app.add_subcommand("correlate", "All correlation tables and the trend-group test");
    add_common(correlate, true);
    auto* report = app.add_subcommand("report", "Full pipeline: every table and series");
    add_common(report, true);

    std::string team;
    int week = 0;
    int sprint = 0;
    auto* edges = app.add_subcommand("edges", "Write one team's communication network as a TAB edge list");
    add_common(edges, false);
    edges->add_option("--team", team, "Team id")->required();
    edges->add_option("--week", week, "Week id");
    edges->add_option("--sprint", sprint, "Sprint id");
    edges->add_option("--out", opt.out, "Output file, '-' for stdout")->capture_default_str();

    std::uint64_t seed = 1;
    std::string synth_out = "synthetic";
    SyntheticSeason season;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic season (config and inputs)");
    synth->add_option("--seed", seed, "Random seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output directory")->capture_default_str();
    synth->add_option("--teams", season.teams)->capture_default_str();
    synth->add_option("--members", season.members)->capture_default_str();
    synth->add_option("--weeks", season.weeks)->capture_default_str();
    synth->add_option("--sprints", season.sprints)->capture_default_str();
    synth->add_option("--messages", season.messages_per_team, "Messages per team")->capture_default_str();
    synth->add_option("--merge-requests", season.merge_requests_per_team, "Merge requests per team")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*validate) return run_validate(opt);
        if (*stc) {
            return run_analysis(opt, {true, true, false, false, false}, {ReportPart::StcSeries, ReportPart::TeamSummary});
        }
        if (*census) {
            return run_analysis(opt, {true, false, false, true, false},
                                {ReportPart::CensusSeries, ReportPart::CensusCorrelations});
        }
        if (*correlate) {
            return run_analysis(opt, {}, {ReportPart::StcCorrelations, ReportPart::CensusCorrelations, ReportPart::TrendTest});
        }
        if (*report) return run_analysis(opt, {}, all_report_parts());
        if (*edges) return run_edges(opt, team, week, sprint);
        if (*synth) {
            std::cout << write_synthetic_season(season, seed, synth_out).string() << '\n';
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
