"""Chat export fixture: 3 channels, 120 retained messages, 14 threads, 37 cross-person
replies, plus noise the parser must drop. The manifest is counted by re-reading the
written files, independently of how they were generated."""
import glob
import itertools
import json
import os
import random

from common import WEEK, calendar_doc, fresh_dir, slack_ts, week_of, week_starts, write_chat_export, write_json

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures", "chat")
START = 1678060800  # 2023-03-06T00:00:00Z, a Monday
MEMBERS = ["p1", "p2", "p3", "p4", "p5", "p6", "p7"]
HANDLES = {"U0%d" % (i + 1): p for i, p in enumerate(MEMBERS)}
BY_PERSON = {p: h for h, p in HANDLES.items()}
CHANNELS = ["dev", "general", "random"]

rng = random.Random(20230306)
counter = itertools.count(1)


def msg(channel, secs, person, thread_ts=None):
    ts = slack_ts(secs, next(counter))
    m = {"channel": channel, "secs": secs, "type": "message", "user": BY_PERSON[person], "ts": ts, "text": "x"}
    if thread_ts:
        m["thread_ts"] = thread_ts
    return m


def main():
    fresh_dir(OUT)
    cal = calendar_doc(START, 4, [[1, 2], [3, 4]], [])
    messages = []

    # 14 threads. The two week-1 threads only involve p1, p2, p3 and touch all three pairs.
    thread_plan = [(1, "p1", ["p2", "p2", "p1"]), (1, "p3", ["p1", "p2", "p3"])]
    cross = sum(1 for _, root, rs in thread_plan for r in rs if r != root)
    self_replies = sum(1 for _, root, rs in thread_plan for r in rs if r == root)
    for _ in range(12):
        week = rng.choice([2, 3, 4])
        root = rng.choice(MEMBERS)
        thread_plan.append((week, root, []))
    # Spread the remaining replies so totals are exact: 37 cross-person, 9 self.
    open_threads = list(range(2, 14))
    while cross < 37:
        t = rng.choice(open_threads)
        who = rng.choice([p for p in MEMBERS if p != thread_plan[t][1]])
        thread_plan[t][2].append(who)
        cross += 1
    while self_replies < 9:
        t = rng.choice(open_threads)
        thread_plan[t][2].append(thread_plan[t][1])
        self_replies += 1

    starts = week_starts(cal)
    for week, root, replies in thread_plan:
        channel = rng.choice(CHANNELS)
        t0 = starts[week] + rng.randrange(0, WEEK - 2 * 86400)
        r = msg(channel, t0, root)
        r["thread_ts"] = r["ts"]  # roots advertise their own thread
        messages.append(r)
        for k, who in enumerate(replies):
            messages.append(msg(channel, t0 + 60 * (k + 1), who, r["ts"]))

    # Top-level messages outside threads, none in week 1.
    while len(messages) < 120:
        week = rng.choice([2, 3, 4])
        messages.append(msg(rng.choice(CHANNELS), starts[week] + rng.randrange(0, WEEK), rng.choice(MEMBERS)))

    # Noise: bots, join events, a handle outside the roster.
    for i in range(3):
        secs = starts[2] + 1000 * (i + 1)
        messages.append({"channel": "general", "secs": secs, "type": "message", "subtype": "bot_message",
                         "bot_id": "B01", "ts": slack_ts(secs, next(counter)), "text": "build ok"})
    for i in range(2):
        secs = starts[3] + 500 * (i + 1)
        messages.append({"channel": "random", "secs": secs, "type": "message", "subtype": "channel_join",
                         "user": "U01", "ts": slack_ts(secs, next(counter))})
        messages.append({"channel": "dev", "secs": secs, "type": "message", "user": "UINSTR",
                         "ts": slack_ts(secs, next(counter)), "text": "reminder"})

    write_chat_export(os.path.join(OUT, "export"), messages)
    config = {
        "calendar": cal,
        "teams": [{"id": "alpha", "members": MEMBERS, "identity_map": HANDLES, "chat_export": "export"}],
    }
    write_json(os.path.join(OUT, "config.json"), config, indent=2)
    write_json(os.path.join(OUT, "manifest.json"), count(os.path.join(OUT, "export"), starts), indent=2)


def count(root, starts):
    """Independent count over the written files."""
    kept = []
    raw_total = 0
    for path in sorted(glob.glob(os.path.join(root, "*", "*.json"))):
        channel = os.path.basename(os.path.dirname(path))
        for m in json.load(open(path)):
            raw_total += 1
            if "bot_id" in m or m.get("subtype") in ("bot_message", "channel_join"):
                continue
            if m.get("user") not in HANDLES:
                continue
            kept.append((channel, m))
    by_id = {(c, m["ts"]): m for c, m in kept}
    roots = set()
    events = []
    for c, m in kept:
        tts = m.get("thread_ts")
        if tts and tts != m["ts"] and (c, tts) in by_id:
            roots.add((c, tts))
            a, b = HANDLES[m["user"]], HANDLES[by_id[(c, tts)]["user"]]
            if a != b:
                events.append((a, b, week_of(float(m["ts"]), starts)))
    pairs = {}
    for a, b, w in events:
        pairs.setdefault(w, set()).add(tuple(sorted((a, b))))
    weekly = {}
    for w in (2, 3, 4):
        edges = {frozenset(p) for p in pairs[w]}
        c = [0, 0, 0, 0]
        for a, b, d in itertools.combinations(MEMBERS, 3):
            c[sum(frozenset(q) in edges for q in ((a, b), (a, d), (b, d)))] += 1
        weekly[str(w)] = c
    rel = [[x / sum(c) for x in c] for c in weekly.values()]
    return {
        "raw_entries": raw_total,
        "weekly_census": weekly,
        "mean_weekly_relative_census_2_4": [sum(r[k] for r in rel) / len(rel) for k in range(4)],
        "messages": len(kept),
        "channels": len({c for c, _ in kept}),
        "threads": len(roots),
        "thread_replies": sum(1 for c, m in kept if m.get("thread_ts") and m["thread_ts"] != m["ts"]),
        "events": len(events),
        "events_per_week": {str(w): sum(1 for e in events if e[2] == w) for w in sorted(pairs)},
        "pairs_per_week": {str(w): sorted(list(p) for p in ps) for w, ps in sorted(pairs.items())},
    }


if __name__ == "__main__":
    main()
