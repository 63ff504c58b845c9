"""Basis reports from either engine, and their JSON, CSV and text renderings."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import lattice, walks
from .binomial import Binomial
from .budget import Budget
from .graph import Graph

SCHEMA_VERSION = 1
BASIS_KINDS = ("circuits", "markov", "ugb", "graver")
ENGINES = ("graph", "oracle")


@dataclass(frozen=True)
class BasisReport:
    basis_kind: str
    engine: str
    elements: tuple[Binomial, ...]
    truncated: bool = False
    agreement: bool | None = None  # set when both engines ran and neither truncated
    timing: float = field(default=0.0, compare=False)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def max_degree(self) -> int:
        return max((b.degree for b in self.elements), default=0)

    def as_dict(self, include_timing: bool = False) -> dict:
        out = {
            "basis_kind": self.basis_kind,
            "engine": self.engine,
            "size": self.size,
            "max_degree": self.max_degree,
            "truncated": self.truncated,
            "agreement": self.agreement,
            "elements": [dict(b.to_json(), degree=b.degree) for b in self.elements],
        }
        if include_timing:
            out["timing"] = round(self.timing, 6)
        return out


def _graph_engine(g: Graph, kind: str, cap: int | None, budget: Budget | None):
    if kind == "circuits":
        basis = walks.enumerate_circuit_walks(g)
    elif kind == "graver":
        basis = walks.enumerate_graver_walks(g, cap, budget)
    elif kind == "ugb":
        basis = walks.enumerate_ugb_walks(g, cap, budget)
    else:
        basis = walks.enumerate_markov_walks(g, cap, budget)
    return basis.elements, basis.truncated


def _oracle(A: lattice.VectorConfig, kind: str, cap: int | None, budget: Budget | None):
    if kind == "circuits":
        basis = lattice.circuits(A)
    elif kind == "graver":
        basis = lattice.graver(A, cap, budget)
    elif kind == "ugb":
        basis = lattice.ugb(A, cap, budget)
    else:
        if not lattice.is_pointed(A):
            raise lattice.NotPointedError(
                "configuration is not pointed, so fibers are infinite and markov_by_fibers does not apply; "
                "use the nonpointed module (the `nonpointed` subcommand) for the (1, -1) construction"
            )
        basis = lattice.markov_by_fibers(A, budget)
        return tuple(v.to_binomial() for v in basis.elements), False
    return basis.binomials(), basis.truncated


def compute_bases(source: Graph | lattice.VectorConfig, kinds: Sequence[str] = BASIS_KINDS,
                  engine: str = "both", cap: int | None = None,
                  budget: Budget | None = None) -> list[BasisReport]:
    """Compute the requested bases; graph inputs may use both engines, matrices only the oracle.

    With two engines, each oracle report carries ``agreement``: whether its set equals
    the graph engine's, or ``None`` when either side was truncated.
    """
    for k in kinds:
        if k not in BASIS_KINDS:
            raise ValueError(f"unknown basis kind {k!r}; expected one of {', '.join(BASIS_KINDS)}")
    if engine not in ENGINES + ("both",):
        raise ValueError(f"unknown engine {engine!r}")
    if isinstance(source, Graph):
        config = lattice.VectorConfig.from_graph(source)
        engines = ENGINES if engine == "both" else (engine,)
    else:
        if engine == "graph":
            raise ValueError("matrix input is only accepted by the oracle engine")
        config = source
        engines = ("oracle",)
    reports = []
    for kind in kinds:
        results = {}
        for eng in engines:
            start = time.perf_counter()
            if eng == "graph":
                elements, truncated = _graph_engine(source, kind, cap, budget)
            else:
                elements, truncated = _oracle(config, kind, cap, budget)
            results[eng] = (tuple(sorted(elements, key=Binomial.sort_key)), truncated, time.perf_counter() - start)
        agreement = None
        if len(results) == 2 and not any(r[1] for r in results.values()):
            agreement = set(results["graph"][0]) == set(results["oracle"][0])
        for eng in engines:
            elements, truncated, spent = results[eng]
            reports.append(BasisReport(kind, eng, elements, truncated, agreement, spent))
    return reports


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def emit(items, fmt: str = "json", include_timing: bool = False, header: dict | None = None) -> str:
    """Render basis reports or experiment verdicts; output is byte-stable for fixed input.

    ``items`` is a sequence of ``BasisReport`` or of ``ExperimentVerdict``. CSV has
    one row per basis for reports and the verdict's table for verdicts.
    """
    from .experiments import ExperimentVerdict

    items = list(items)
    verdicts = bool(items) and isinstance(items[0], ExperimentVerdict)
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION}
        if header:
            doc.update(header)
        if verdicts:
            doc["experiments"] = [v.as_dict() for v in items]
        else:
            doc["reports"] = [r.as_dict(include_timing) for r in items]
        return _dumps(doc)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if verdicts:
            for v in items:
                writer.writerow(["experiment"] + list(v.columns))
                for row in v.rows:
                    writer.writerow([v.experiment] + list(row))
        else:
            cols = ["basis_kind", "engine", "size", "max_degree", "truncated", "agreement"]
            writer.writerow(cols + (["timing"] if include_timing else []))
            for r in items:
                row = [r.basis_kind, r.engine, r.size, r.max_degree, r.truncated, r.agreement]
                writer.writerow(row + ([f"{r.timing:.6f}"] if include_timing else []))
        return buf.getvalue()
    if fmt == "text":
        return "".join(v.text() for v in items) if verdicts else "".join(_report_text(r, include_timing) for r in items)
    raise ValueError(f"unknown format {fmt!r}")


def _report_text(r: BasisReport, include_timing: bool) -> str:
    head = f"{r.basis_kind} [{r.engine}] size={r.size} max_degree={r.max_degree}"
    if r.truncated:
        head += " TRUNCATED"
    if r.agreement is not None:
        head += f" agreement={'yes' if r.agreement else 'NO'}"
    if include_timing:
        head += f" time={r.timing:.3f}s"
    return head + "\n" + "".join(f"  {b.text()}\n" for b in r.elements)
