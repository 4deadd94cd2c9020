"""Shared helpers for fixture generators: timestamps and on-disk layouts only.

Expected values are computed in each generator with plain Python, never by calling
the library under test.
"""
import datetime as dt
import json
import os
import shutil

DAY = 86400
WEEK = 7 * DAY


def iso(secs):
    return dt.datetime.fromtimestamp(secs, dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def date_of(secs):
    return dt.datetime.fromtimestamp(secs, dt.timezone.utc).strftime("%Y-%m-%d")


def slack_ts(secs, micros):
    return "%d.%06d" % (secs, micros)


def fresh_dir(path):
    if os.path.isdir(path):
        shutil.rmtree(path)
    os.makedirs(path)


def write_json(path, doc, indent=1):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        json.dump(doc, f, indent=indent, sort_keys=False)
        f.write("\n")


def write_chat_export(root, messages):
    """messages: dicts with channel, secs plus the raw message fields. One file per
    channel and UTC day, entries in timestamp order."""
    files = {}
    for m in messages:
        raw = {k: v for k, v in m.items() if k not in ("channel", "secs")}
        files.setdefault((m["channel"], date_of(m["secs"])), []).append((m["secs"], raw["ts"], raw))
    for (channel, day), items in sorted(files.items()):
        items.sort(key=lambda t: (t[0], t[1]))
        write_json(os.path.join(root, channel, day + ".json"), [raw for _, _, raw in items])


def calendar_doc(start, n_weeks, sprints, excluded, gaps=()):
    """Contiguous weeks from start, with a one-week hole after each week id in gaps."""
    weeks = []
    t = start
    for w in range(1, n_weeks + 1):
        weeks.append({"id": w, "start": iso(t), "end": iso(t + WEEK)})
        t += WEEK
        if w in gaps:
            t += WEEK
    return {
        "weeks": weeks,
        "sprints": [{"id": i + 1, "weeks": s} for i, s in enumerate(sprints)],
        "excluded_sprints": list(excluded),
    }


def week_starts(cal):
    return {w["id"]: int(dt.datetime.strptime(w["start"], "%Y-%m-%dT%H:%M:%SZ")
                         .replace(tzinfo=dt.timezone.utc).timestamp()) for w in cal["weeks"]}


def week_of(secs, starts):
    for w, s in starts.items():
        if s <= secs < s + WEEK:
            return w
    return None
