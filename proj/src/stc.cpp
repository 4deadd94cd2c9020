#include "stnet/stc.hpp"

#include <algorithm>
#include <stdexcept>

namespace stnet {
namespace {

bool share_file(const MergeRequest& a, const MergeRequest& b)
{
    auto i = a.changed_files.begin();
    auto j = b.changed_files.begin();
    while (i != a.changed_files.end() && j != b.changed_files.end()) {
        if (*i == *j) return true;
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

}  // namespace

std::vector<std::size_t> week_merge_requests(const RepoActivity& repo, const SprintCalendar& cal, WeekId week)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < repo.merge_requests.size(); ++i) {
        const MergeRequest& mr = repo.merge_requests[i];
        if (mr.changed_files.empty()) continue;
        const auto w = cal.week_of(mr.created_at);
        if (w && *w == week) out.push_back(i);
    }
    return out;
}

AssignmentMatrix assignment_matrix(const RepoActivity& repo, const Roster& roster, const SprintCalendar& cal,
                                   WeekId week)
{
    const auto mrs = week_merge_requests(repo, cal, week);
    AssignmentMatrix ta;
    ta.people = roster.members();
    ta.matrix = BinaryMatrix(roster.size(), mrs.size());
    for (std::size_t col = 0; col < mrs.size(); ++col) {
        const MergeRequest& mr = repo.merge_requests[mrs[col]];
        ta.merge_requests.push_back(mr.id);
        // Commit dates are irrelevant: the MR's creation week owns all of its commits.
        for (const std::string& sha : mr.commit_shas) {
            const Commit* c = repo.find_commit(sha);
            if (c == nullptr) continue;
            if (auto row = roster.index_of(c->author)) ta.matrix.set(*row, col);
        }
    }
    return ta;
}

DependencyMatrix dependency_matrix(const RepoActivity& repo, const SprintCalendar& cal, WeekId week,
                                   const StcOptions& options)
{
    const auto mrs = week_merge_requests(repo, cal, week);
    DependencyMatrix td;
    td.matrix = BinaryMatrix(mrs.size(), mrs.size());
    for (std::size_t i = 0; i < mrs.size(); ++i) {
        td.merge_requests.push_back(repo.merge_requests[mrs[i]].id);
        if (options.self_dependency) td.matrix.set(i, i);
        for (std::size_t j = i + 1; j < mrs.size(); ++j) {
            if (share_file(repo.merge_requests[mrs[i]], repo.merge_requests[mrs[j]])) {
                td.matrix.set(i, j);
                td.matrix.set(j, i);
            }
        }
    }
    return td;
}

BinaryMatrix coordination_requirements(const AssignmentMatrix& ta, const DependencyMatrix& td)
{
    if (ta.matrix.cols() != td.matrix.rows() || td.matrix.rows() != td.matrix.cols()) {
        throw std::invalid_argument("coordination_requirements: assignment and dependency matrices disagree");
    }
    BinaryMatrix cr = boolean_product(boolean_product(ta.matrix, td.matrix), ta.matrix.transposed());
    for (std::size_t i = 0; i < cr.rows(); ++i) cr.set(i, i, false);
    return cr;
}

WeekStc stc_scores(const BinaryMatrix& required, const CoordinationMatrix& actual, const Roster& roster, WeekId week)
{
    const std::size_t n = roster.size();
    if (required.rows() != n || required.cols() != n || actual.rows() != n || actual.cols() != n) {
        throw std::invalid_argument("stc_scores: matrices must be roster-sized");
    }
    WeekStc out;
    out.week = week;
    double sum = 0;
    int defined = 0;
    for (std::size_t p = 0; p < n; ++p) {
        StcScore s;
        s.person = roster.members()[p];
        s.week = week;
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q || !required.at(p, q)) continue;
            ++s.n_required;
            if (actual.at(p, q) || actual.at(q, p)) ++s.n_fulfilled;
        }
        if (s.n_required > 0) {
            s.value = static_cast<double>(s.n_fulfilled) / s.n_required;
            sum += *s.value;
            ++defined;
        }
        out.members.push_back(std::move(s));
    }
    if (defined > 0) out.team_score = sum / defined;
    return out;
}

WeekStc week_stc(const RepoActivity& repo, std::span<const CommEvent> events, const Roster& roster,
                 const SprintCalendar& cal, WeekId week, const StcOptions& options)
{
    const AssignmentMatrix ta = assignment_matrix(repo, roster, cal, week);
    const DependencyMatrix td = dependency_matrix(repo, cal, week, options);
    return stc_scores(coordination_requirements(ta, td), actual_coordination(events, roster, week), roster, week);
}

YearSummary year_summary(std::span<const WeeklyScore> weekly)
{
    std::vector<double> x;
    std::vector<double> y;
    for (const WeeklyScore& w : weekly) {
        if (!w.score) continue;
        x.push_back(w.week);
        y.push_back(*w.score);
    }
    YearSummary out;
    if (y.empty()) return out;
    double sum = 0;
    for (double v : y) sum += v;
    out.mean = sum / static_cast<double>(y.size());
    if (y.size() >= 2) out.trend = ols(x, y);
    return out;
}

}  // namespace stnet
