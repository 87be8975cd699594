"""Report records and their JSON, CSV and Markdown renderings.

Exact rationals are written as ``"p/q"`` strings; integers stay integers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class Report:
    command: str
    inputs: dict
    results: object
    notes: list[str] = field(default_factory=list)


def plain(x):
    """Convert to JSON-ready data with fractions as ``p/q`` strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if hasattr(x, "as_dict"):
        return plain(x.as_dict())
    if hasattr(x, "__int__"):
        return int(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def to_json(rep: Report) -> str:
    data = {"command": rep.command, "inputs": plain(rep.inputs), "results": plain(rep.results), "notes": rep.notes}
    return json.dumps(data, indent=2) + "\n"


def _cell(v) -> str:
    v = plain(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _rows(results):
    """Tabulate results as ``(header, rows)``."""
    if isinstance(results, list) and results and all(isinstance(r, dict) for r in results):
        header = []
        for r in results:
            for k in r:
                if k not in header:
                    header.append(k)
        return header, [[_cell(r.get(k)) for k in header] for r in results]
    if isinstance(results, dict):
        return ["key", "value"], [[str(k), _cell(v)] for k, v in results.items()]
    return ["value"], [[_cell(results)]]


def to_csv(rep: Report) -> str:
    header, rows = _rows(plain(rep.results))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def to_markdown(rep: Report) -> str:
    out = [f"# {rep.command}", ""]
    if rep.inputs:
        out.append("Inputs: " + ", ".join(f"{k} = {_cell(v)}" for k, v in rep.inputs.items()))
        out.append("")
    results = plain(rep.results)
    if isinstance(results, dict) and any(isinstance(v, list) and v and isinstance(v[0], dict) for v in results.values()):
        scalars = {k: v for k, v in results.items() if not (isinstance(v, list) and v and isinstance(v[0], dict))}
        if scalars:
            out += _md_table(*_rows(scalars)) + [""]
        for k, v in results.items():
            if k not in scalars:
                out += [f"## {k}", ""] + _md_table(*_rows(v)) + [""]
    else:
        out += _md_table(*_rows(results)) + [""]
    for n in rep.notes:
        out.append(f"- {n}")
    return "\n".join(out).rstrip("\n") + "\n"


def _md_table(header, rows):
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return lines


def render(rep: Report, fmt: str) -> str:
    return {"json": to_json, "csv": to_csv, "md": to_markdown}[fmt](rep)
