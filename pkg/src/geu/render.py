"""Deterministic text rendering of service responses for the CLI."""
from __future__ import annotations


def _table(rows) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip()
                     for row in rows)


def render_eval(data: dict) -> str:
    acts = data["acts"]
    lines = [f"rule: {data['rule']}", ""]
    lines.append(_table([["act", "value"]] + [[a, data["values"][a]] for a in acts]))
    lines += ["", "matrix (row <= col):"]
    rows = [[""] + acts]
    for a, row in zip(acts, data["matrix"]):
        rows.append([a] + ["1" if cell else "." for cell in row])
    lines.append(_table(rows))
    if data["pairs"]:
        lines += ["", "pairs:"]
        for p in data["pairs"]:
            lines.append(f"{p['left']} {p['relation']} {p['right']}")
    return "\n".join(lines)


def render_represent(data: dict) -> str:
    lines = [f"rule: {data['rule']}  mode: {data['mode']}"]
    if data.get("error"):
        e = data["error"]
        lines.append(f"result: FAILED ({e['category']})")
        lines.append(f"reason: {e['message']}")
        if e.get("witness"):
            lines.append(f"witness: {e['witness']}")
        return "\n".join(lines)
    lines.append(f"congruent: {data['congruent']}")
    lines.append(f"similar: {data['similar']}")
    lines.append(f"relation_equal: {data['relation_equal']}")
    lines.append(f"axioms: {data['axioms']}")
    if data.get("values"):
        lines.append("geu values:")
        for act in sorted(data["values"]):
            lines.append(f"  {act}: {data['values'][act]}")
    lines.append(f"result: {'OK' if data['ok'] else 'FAILED'}")
    return "\n".join(lines)


def render_check(data: dict) -> str:
    lines = [f"property: {data['property']}  rule: {data['rule']}",
             f"verdict: {data['verdict']}"]
    if data.get("witness"):
        lines.append(f"witness: {data['witness']}")
    return "\n".join(lines)


def render_induce(data: dict) -> str:
    lines = []
    for name in sorted(data["lotteries"]):
        lot = data["lotteries"][name]
        lines.append(f"lottery {name}: support {{{', '.join(lot['support'])}}}")
        for key in sorted(lot["table"]):
            shown = key if key else "{}"
            lines.append(f"  {shown}: {lot['table'][key]}")
    lines.append("act -> lottery:")
    for act in sorted(data["act_to_lottery"]):
        lines.append(f"  {act}: {data['act_to_lottery'][act]}")
    return "\n".join(lines)


def render_construct(data: dict) -> str:
    sit = data["situation"]
    lines = [f"construction: {'standard (interval partition)' if data['standard'] else 'general'}",
             f"states ({len(sit['states'])}): {', '.join(sit['states'])}"]
    for act in sorted(sit["acts"]):
        mapping = sit["acts"][act]
        body = ", ".join(f"{s}->{mapping[s]}" for s in sit["states"])
        lines.append(f"act {act}: {body}")
    lines.append("measure:")
    for key in sorted(sit["measure"]):
        shown = key if key else "{}"
        lines.append(f"  {shown}: {sit['measure'][key]}")
    lines.append(f"roundtrip: {data['roundtrip']}")
    return "\n".join(lines)


def render_flatten(data: dict) -> str:
    lines = [f"states: {', '.join(data['states'])}",
             f"consequences (lotteries): {', '.join(data['consequences'])}",
             "extended utilities:"]
    for c in sorted(data["utility"]):
        lines.append(f"  {c}: {data['utility'][c]}")
    for act in sorted(data["acts"]):
        mapping = data["acts"][act]
        body = ", ".join(f"{s}->{mapping[s]}" for s in data["states"])
        lines.append(f"act {act}: {body}")
    lines.append(f"two-level equivalence: {data['equivalent']}")
    return "\n".join(lines)


def render_fuzz(data: dict) -> str:
    rows = [["suite", "cases", "pass", "fail"]]
    for s in data["suites"]:
        rows.append([s["name"], s["cases"], s["passed"], s["failed"]])
    lines = [_table(rows)]
    for s in data["suites"]:
        if s.get("note"):
            lines.append(f"{s['name']}: {s['note']}")
    failures = [s for s in data["suites"] if s["failed"]]
    if failures:
        first = failures[0]["first_failure"]
        lines.append(f"first failure: suite={failures[0]['name']} case={first['case']} "
                     f"seed={first['seed']}")
        lines.append(f"  {first['message']}")
    elif not data["suites"] or all(s["cases"] == 0 for s in data["suites"]):
        lines.append("no cases run")
    else:
        lines.append("all suites passed")
    return "\n".join(lines)
