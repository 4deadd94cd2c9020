"""Two-team season: 4 sprints of 2 weeks (sprint 1 excluded) with a one-week break.
Writes every input plus expected.json, computed here from first principles:
chain-enumeration STC, triple-enumeration censuses, scipy correlations and U test."""
import itertools
import json
import os
import random

import numpy as np
from scipy import stats

from common import DAY, WEEK, calendar_doc, fresh_dir, iso, slack_ts, week_of, week_starts, write_chat_export, write_json

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures", "season")
START = 1675036800  # 2023-01-30T00:00:00Z
SPRINTS = [[1, 2], [3, 4], [5, 6], [7, 8]]
TEAMS = {"north": ["ann", "ben", "cat", "dan"], "south": ["eve", "fay", "gus", "hal", "ida"]}

SEED = int(os.environ.get("SEASON_SEED", "9"))
rng = random.Random(SEED)
micro = itertools.count(1)


def gen_team(team, members, starts, talkative):
    handles = {"U_%s" % p.upper(): p for p in members}
    by_person = {p: h for h, p in handles.items()}
    emails = {"%s@%s.example" % (p, team): p for p in members}
    by_email = {p: e for e, p in emails.items()}

    messages = []
    for w, s in starts.items():
        for _ in range(rng.randrange(1, 4)):
            root_p = rng.choice(members)
            t0 = s + rng.randrange(0, WEEK - DAY)
            ts = slack_ts(t0, next(micro))
            channel = rng.choice(["general", "dev"])
            messages.append({"channel": channel, "secs": t0, "type": "message", "user": by_person[root_p],
                             "ts": ts, "thread_ts": ts})
            for k in range(rng.randrange(0, 4 if talkative else 2)):
                who = rng.choice(members)
                messages.append({"channel": channel, "secs": t0 + 120 * (k + 1), "type": "message",
                                 "user": by_person[who], "ts": slack_ts(t0 + 120 * (k + 1), next(micro)),
                                 "thread_ts": ts})
        t1 = s + rng.randrange(0, WEEK)
        messages.append({"channel": "general", "secs": t1, "type": "message",
                         "user": by_person[rng.choice(members)], "ts": slack_ts(t1, next(micro))})

    commits, mrs = [], []
    n = 0
    for w, s in starts.items():
        for _ in range(rng.randrange(1, 5)):
            n += 1
            created = s + rng.randrange(DAY, WEEK - 60)
            authors = rng.sample(members, rng.choice([1, 1, 2]))
            shas = []
            for j in range(rng.randrange(1, 4)):
                sha = "%s%04d%02d" % (team[0], n, j)
                commits.append({"sha": sha, "author": by_email[authors[j % len(authors)]],
                                "authored_at": iso(created - rng.randrange(60, 2 * DAY))})
                shas.append(sha)
            files = sorted({"lib/m%d.rb" % rng.randrange(1, 6) for _ in range(rng.randrange(1, 3))})
            mrs.append({"id": n, "created_at": iso(created), "commits": shas, "files": files})
    return handles, emails, messages, {"commits": commits, "merge_requests": mrs}


# ---------------------------------------------------------------------------
# Oracle

def comm_events(messages, handles, starts):
    roots = {(m["channel"], m["ts"]): m for m in messages if m.get("thread_ts") == m["ts"]}
    out = []
    for m in messages:
        t = m.get("thread_ts")
        if not t or t == m["ts"]:
            continue
        a = handles[m["user"]]
        b = handles[roots[(m["channel"], t)]["user"]]
        w = week_of(m["secs"], starts)
        if a != b and w is not None:
            out.append((a, b, w))
    return out


def week_stc(members, repo, emails, events, week, starts):
    author = {c["sha"]: emails[c["author"]] for c in repo["commits"]}
    mrs = [m for m in repo["merge_requests"]
           if m["files"] and week_of(parse_iso(m["created_at"]), starts) == week]
    people_on = {m["id"]: {author[s] for s in m["commits"]} for m in mrs}
    talked = {frozenset((a, b)) for a, b, w in events if w == week}
    scores = {}
    for x in members:
        req = ful = 0
        for y in members:
            if x == y:
                continue
            # chain x -> m1 -> m2 -> y
            need = any(x in people_on[m1["id"]] and y in people_on[m2["id"]] and
                       (m1["id"] == m2["id"] or set(m1["files"]) & set(m2["files"]))
                       for m1 in mrs for m2 in mrs)
            if need:
                req += 1
                ful += frozenset((x, y)) in talked
        scores[x] = ful / req if req else None
    defined = [v for v in scores.values() if v is not None]
    return scores, (sum(defined) / len(defined) if defined else None)


def parse_iso(text):
    import datetime as dt
    return int(dt.datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=dt.timezone.utc).timestamp())


def census(members, edges):
    c = [0, 0, 0, 0]
    for a, b, d in itertools.combinations(members, 3):
        c[sum(frozenset(p) in edges for p in ((a, b), (a, d), (b, d)))] += 1
    return c


def relative(c):
    total = sum(c)
    return [x / total for x in c]


def pearson_cell(xs, ys):
    n = len(xs)
    if n < 3 or len(set(xs)) < 2 or len(set(ys)) < 2:
        return {"n": n, "r": None, "p": None}
    r, p = stats.pearsonr(xs, ys)
    return {"n": n, "r": float(r), "p": float(p)}


def main():
    fresh_dir(OUT)
    cal = calendar_doc(START, 8, SPRINTS, [1], gaps=(4,))
    starts = week_starts(cal)
    analysed_sprints = [2, 3, 4]
    sprint_weeks = {i + 1: s for i, s in enumerate(SPRINTS)}

    teams_cfg, feedback, outcomes, work_logs = [], [], [], []
    data = {}
    for ti, (team, members) in enumerate(sorted(TEAMS.items())):
        handles, emails, messages, repo = gen_team(team, members, starts, talkative=(ti == 0))
        write_chat_export(os.path.join(OUT, "chat", team), messages)
        write_json(os.path.join(OUT, "repo", team + ".json"), repo)
        identity = dict(handles)
        identity.update(emails)
        teams_cfg.append({"id": team, "members": members, "identity_map": identity,
                          "chat_export": "chat/" + team, "repo_activity": "repo/%s.json" % team})
        for s in range(1, 5):
            committed = rng.randrange(10, 30)
            passed = rng.randrange(0, committed + 1)
            outcomes.append((team, s, committed, passed, rng.randrange(50, 100), rng.randrange(1, 8)))
            for a in members:
                for b in members:
                    if a != b:
                        feedback.append((team, s, a, b, rng.randrange(1, 6)))
                work_logs.append((team, a, s, rng.choice([0, 1.5, 2, 4])))
        data[team] = (members, emails, handles, messages, repo)

    with open(os.path.join(OUT, "feedback.csv"), "w", newline="\n") as f:
        f.write("team_id,sprint_id,rater,ratee,communication_rating\n")
        f.writelines("%s,%d,%s,%s,%d\n" % r for r in feedback)
    with open(os.path.join(OUT, "outcomes.csv"), "w", newline="\n") as f:
        f.write("team_id,sprint_id,story_points_committed,story_points_passed,team_score,stories_passed\n")
        f.writelines("%s,%d,%d,%d,%d,%d\n" % r for r in outcomes)
    with open(os.path.join(OUT, "work_logs.csv"), "w", newline="\n") as f:
        f.write("team_id,person_id,sprint_id,pair_programming_hours\n")
        f.writelines("%s,%s,%d,%s\n" % r for r in work_logs)
    write_json(os.path.join(OUT, "config.json"), {
        "calendar": cal, "teams": teams_cfg, "feedback": "feedback.csv", "outcomes": "outcomes.csv",
        "work_logs": "work_logs.csv"}, indent=2)

    # Expected values.
    expected = {"weekly": [], "sprints": [], "summaries": []}
    rows = []
    for team, (members, emails, handles, messages, repo) in sorted(data.items()):
        events = comm_events(messages, handles, starts)
        weekly = {}
        for s in analysed_sprints:
            for w in sprint_weeks[s]:
                person, team_score = week_stc(members, repo, emails, events, w, starts)
                weekly[w] = team_score
                expected["weekly"].append({"team": team, "week": w, "sprint": s, "score": team_score,
                                           "members": [person[p] for p in sorted(members)]})
        for s in analysed_sprints:
            sprint_edges = {frozenset((a, b)) for a, b, w in events if w in sprint_weeks[s]}
            c = census(members, sprint_edges)
            weekly_rel = [relative(census(members, {frozenset((a, b)) for a, b, ww in events if ww == w}))
                          for w in sprint_weeks[s]]
            mean_weekly = [float(np.mean([r[k] for r in weekly_rel])) for k in range(4)]
            stc_vals = [weekly[w] for w in sprint_weeks[s] if weekly[w] is not None]
            o = next(o for o in outcomes if o[0] == team and o[1] == s)
            ratings = [f[4] for f in feedback if f[0] == team and f[1] == s]
            row = {"team": team, "sprint": s, "census": c, "relative": relative(c), "mean_weekly": mean_weekly,
                   "mean_stc": sum(stc_vals) / len(stc_vals) if stc_vals else None,
                   "percent_passed": 100.0 * o[3] / o[2], "team_score": float(o[4]),
                   "mean_peer_rating": sum(ratings) / len(ratings)}
            rows.append(row)
            expected["sprints"].append(row)
        defined = [(w, v) for w, v in sorted(weekly.items()) if v is not None]
        slope = intercept = None
        if len(defined) >= 2:
            slope, intercept = (float(v) for v in np.polyfit([w for w, _ in defined], [v for _, v in defined], 1))
        expected["summaries"].append({
            "team": team,
            "pair_programming_hours": sum(r[3] for r in work_logs if r[0] == team),
            "mean_stc": sum(v for _, v in defined) / len(defined) if defined else None,
            "stories_passed": sum(o[5] for o in outcomes if o[0] == team and o[1] in analysed_sprints),
            "trend_slope": slope, "trend_intercept": intercept, "trend_points": len(defined),
            "mean_team_score": float(np.mean([o[4] for o in outcomes if o[0] == team and o[1] in analysed_sprints])),
        })

    def cell(fx, fy, subset=rows):
        pts = [(fx(r), fy(r)) for r in subset if fx(r) is not None and fy(r) is not None]
        return pearson_cell([p[0] for p in pts], [p[1] for p in pts])

    tables = {}
    tables["stc"] = {
        "pct_vs_stc": cell(lambda r: r["percent_passed"], lambda r: r["mean_stc"]),
        "rating_vs_stc": cell(lambda r: r["mean_peer_rating"], lambda r: r["mean_stc"]),
        "rating_vs_pct": cell(lambda r: r["mean_peer_rating"], lambda r: r["percent_passed"]),
        "rating_vs_score": cell(lambda r: r["mean_peer_rating"], lambda r: r["team_score"]),
    }
    nxt = []
    for r in rows:
        later = [q for q in rows if q["team"] == r["team"] and q["sprint"] == r["sprint"] + 1]
        if later:
            nxt.append((r["mean_peer_rating"], later[0]["percent_passed"]))
    tables["stc"]["rating_vs_next_pct"] = pearson_cell([a for a, _ in nxt], [b for _, b in nxt])
    for key, field in (("census", "relative"), ("mean_weekly", "mean_weekly")):
        tables[key] = [[cell(lambda r, k=k: r[field][k], lambda r: r["percent_passed"]),
                        cell(lambda r, k=k: r[field][k], lambda r: r["team_score"])] for k in range(4)]
    # Same tables with team "south" left out, for the exclusion plumbing.
    north = [r for r in rows if r["team"] == "north"]
    tables["census_without_south"] = [[cell(lambda r, k=k: r["relative"][k], lambda r: r["percent_passed"], north),
                                       cell(lambda r, k=k: r["relative"][k], lambda r: r["team_score"], north)]
                                      for k in range(4)]
    expected["tables"] = tables

    inc = [s for s in expected["summaries"] if s["trend_slope"] is not None and s["trend_slope"] > 0]
    dec = [s for s in expected["summaries"] if s["trend_slope"] is not None and s["trend_slope"] < 0]
    expected["trend_test"] = {"increasing": [s["team"] for s in inc], "decreasing": [s["team"] for s in dec]}
    if inc and dec:
        res = stats.mannwhitneyu([s["stories_passed"] for s in inc], [s["stories_passed"] for s in dec],
                                 alternative="two-sided", method="exact")
        expected["trend_test"].update({"u_increasing": float(res.statistic), "p": float(res.pvalue)})
    write_json(os.path.join(OUT, "expected.json"), expected, indent=1)


if __name__ == "__main__":
    main()
