"""
Rendering of harness reports and revise/contract comparisons.

- table: fixed-width text, one line per (operator, postulate)
- matrix: postulates down, operators across, verdict marks in the cells
- json: schema-stable list of report objects
- Discord: a summary embed posted to DISCORD_WEBHOOK_URL (check --notify)
"""

import datetime
import json
from datetime import timezone
from typing import Any, Dict, List, Optional, Sequence, Tuple

import requests

import config
from postulates import FAILS, HOLDS, SKIPPED, POSTULATES, PostulateReport

MARKS = {HOLDS: "✓", FAILS: "✗", SKIPPED: "-"}


def now_utc() -> datetime.datetime:
    return datetime.datetime.now(tz=timezone.utc)


# -----------------------
# Text / JSON
# -----------------------
def _witness_text(r: PostulateReport) -> str:
    w = r.witness
    if w is None:
        return ""
    parts = [f"P={{{w.p.key}}}", f"Q={{{w.q.key}}}"]
    if w.r is not None:
        parts.append(f"R={{{w.r.key}}}")
    return " ".join(parts)


def _grid(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_table(reports: Sequence[PostulateReport]) -> str:
    rows = []
    for r in reports:
        note = r.note if not r.witness else _witness_text(r)
        if r.witness and r.note:
            note = f"{note}  ({r.note})"
        rows.append([r.operator, r.label, r.verdict, str(r.checked), note])
    return _grid(["operator", "postulate", "verdict", "checked", "witness / note"], rows)


def render_matrix(reports: Sequence[PostulateReport]) -> str:
    """Verdict matrix for postulate reports; other checks fall back to the table."""
    operators: List[str] = []
    cells: Dict[Tuple[str, str], str] = {}
    order: List[str] = []
    for r in reports:
        if r.postulate not in POSTULATES:
            continue
        if r.operator not in operators:
            operators.append(r.operator)
        if r.postulate not in order:
            order.append(r.postulate)
        cells[(r.postulate, r.operator)] = MARKS.get(r.verdict, "?")
    if not order:
        return render_table(reports)
    rows = [[POSTULATES[p].label] + [cells.get((p, o), "") for o in operators] for p in order]
    return _grid(["postulate"] + operators, rows)


def render_json(reports: Sequence[PostulateReport]) -> str:
    return json.dumps([r.to_json() for r in reports], ensure_ascii=False, indent=2) + "\n"


def render_reports(reports: Sequence[PostulateReport], fmt: str = "table") -> str:
    if fmt == "json":
        return render_json(reports)
    if fmt == "table":
        return render_matrix(reports)
    return render_table(reports)


def summary(reports: Sequence[PostulateReport]) -> Dict[str, int]:
    out = {HOLDS: 0, FAILS: 0, SKIPPED: 0}
    for r in reports:
        out[r.verdict] = out.get(r.verdict, 0) + 1
    return out


# -----------------------
# Compare table
# -----------------------
def render_compare(rows: Sequence[Tuple[str, List[str]]], fmt: str = "table") -> str:
    """rows: (method, outcome lines). Methods side by side, one column each."""
    if fmt == "json":
        return json.dumps({m: lines for m, lines in rows}, ensure_ascii=False, indent=2) + "\n"
    height = max((len(lines) for _, lines in rows), default=0)
    body = []
    for i in range(height):
        body.append([lines[i] if i < len(lines) else "" for _, lines in rows])
    return _grid([m for m, _ in rows], body)


# -----------------------
# Discord formatting & post
# -----------------------
def build_discord_embed(reports: Sequence[PostulateReport], title: str = "Postulate check",
                        corpus: Optional[str] = None) -> Dict[str, Any]:
    counts = summary(reports)
    color = 0x2ecc71 if counts[FAILS] == 0 else 0xe67e22

    by_operator: Dict[str, List[PostulateReport]] = {}
    for r in reports:
        by_operator.setdefault(r.operator, []).append(r)

    fields = []
    for op, rs in by_operator.items():
        held = [r.label for r in rs if r.verdict == HOLDS]
        failed = [r.label for r in rs if r.verdict == FAILS]
        value = (
            f"**Holds**: `{len(held)}`  •  **Fails**: `{len(failed)}`\n"
            f"{' '.join(failed) if failed else 'no violations'}"
        )
        fields.append({"name": f"[{op}]", "value": value[:1024], "inline": False})

    return {
        "title": f"🧮 {title}",
        "description": corpus or f"UTC {now_utc().strftime('%Y-%m-%d %H:%M')}",
        "color": color,
        "fields": fields[:25],
        "footer": {"text": f"holds {counts[HOLDS]} • fails {counts[FAILS]} • skipped {counts[SKIPPED]}"},
        "timestamp": now_utc().isoformat(),
    }


def post_discord(embed: Dict[str, Any], url: Optional[str] = None) -> bool:
    """Returns False when no webhook is configured."""
    url = url or config.DISCORD_WEBHOOK_URL
    if not url:
        return False
    r = requests.post(url, json={"embeds": [embed]}, timeout=8)
    if r.status_code >= 300:
        raise RuntimeError(f"Discord webhook failed: {r.status_code} {r.text}")
    return True
