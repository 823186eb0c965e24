"""Circuit JSON round-tripping and CSV output."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from .circuit import Circuit, Gate


def gate_to_dict(g: Gate) -> dict:
    if not g.controls:
        out = {"kind": g.kind, "targets": [g.target], "controls": []}
    elif g.kind == "x" and len(g.controls) == 1 and g.controls[0][1] == 1:
        out = {"kind": "cx", "targets": [g.target], "controls": [list(g.controls[0])]}
    else:
        out = {"kind": "ctrl", "op": g.kind, "targets": [g.target], "controls": [list(c) for c in g.controls]}
    if g.kind == "p":
        out["angle"] = g.angle
    return out


def gate_from_dict(d: dict) -> Gate:
    kind = d["kind"]
    (target,) = d["targets"]
    controls = tuple((int(q), int(p)) for q, p in d.get("controls", []))
    if kind == "cx":
        return Gate("x", int(target), 0.0, controls)
    if kind == "ctrl":
        kind = d["op"]
    return Gate(kind, int(target), float(d.get("angle", 0.0)), controls)


def circuit_to_json(circuit: Circuit, indent: int | None = None) -> str:
    # json writes floats with repr, the shortest string that round-trips
    return json.dumps({"n": circuit.num_qubits, "gates": [gate_to_dict(g) for g in circuit.gates]}, indent=indent)


def circuit_from_json(text: str) -> Circuit:
    data = json.loads(text)
    return Circuit(int(data["n"]), tuple(gate_from_dict(g) for g in data["gates"]))


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit_csv(rows: Iterable[dict], path: str | Path, columns: Sequence[str] | None = None) -> Path:
    """Header plus one line per row; floats carry 17 significant digits."""
    rows = list(rows)
    if columns is None:
        if not rows:
            raise ValueError("column names are needed when there are no rows")
        columns = list(rows[0])
    for r in rows:
        if list(r) != list(columns):
            raise ValueError("rows must all have the same columns")
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in columns])
    return path


def read_csv(path: str | Path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))
