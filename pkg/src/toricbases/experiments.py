"""Named experiments comparing computed bases against the closed forms in ``families``.

Each experiment runs a desk-scale instance set. Instances run under a wall-clock
budget; an instance that runs out is reported as "skipped (budget)" and none of its
partial checks are kept, so verdicts never depend on how far a run got.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import prod
from typing import Callable

from . import families, lattice, walks
from .budget import Budget, BudgetExceeded
from .graph import Graph, euler_trail
from .nonpointed import bases_of_line_config, markov_from_coprimes, verify_markov
from .report import compute_bases

PASS, FAIL, SKIPPED = "pass", "fail", "skipped (budget)"
DEFAULT_BUDGET_SECS = 600.0
FIRST_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    computed: object
    source: str  # where the expected value comes from
    status: str

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected), "computed": _plain(self.computed),
                "source": self.source, "status": self.status}


@dataclass(frozen=True)
class ExperimentVerdict:
    experiment: str
    title: str
    checks: tuple[Check, ...]
    columns: tuple[str, ...] = ()
    rows: tuple[tuple, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def skipped(self) -> int:
        return sum(c.status == SKIPPED for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "title": self.title,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "columns": list(self.columns),
            "rows": [_plain(r) for r in self.rows],
        }

    def text(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.experiment}: {self.title}"]
        for c in self.checks:
            lines.append(f"  {c.status:<16} {c.name}: expected {c.expected}, got {c.computed}  ({c.source})")
        if self.columns:
            lines.append("  " + "\t".join(self.columns))
            lines.extend("  " + "\t".join(str(x) for x in row) for row in self.rows)
        return "\n".join(lines) + "\n"


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    return x


class _Recorder:
    def __init__(self, budget_secs: float | None):
        self.budget_secs = budget_secs
        self.checks: list[Check] = []
        self.rows: list[tuple] = []
        self._pending: list[Check] | None = None

    def expect(self, name: str, expected, computed, source: str):
        check = Check(name, expected, computed, source, PASS if expected == computed else FAIL)
        (self._pending if self._pending is not None else self.checks).append(check)

    def instance(self, label: str, body: Callable[[Budget], tuple | None]):
        """Run one instance; its checks and table row are kept only if it finishes."""
        self._pending = []
        try:
            budget = Budget.from_env(self.budget_secs)
            budget.check()
            row = body(budget)
        except BudgetExceeded as exc:
            self.checks.append(Check(label, None, None, str(exc), SKIPPED))
        else:
            self.checks.extend(self._pending)
            if row is not None:
                self.rows.append(row)
        finally:
            self._pending = None


def _sizes(reports, engine: str = "graph") -> dict[str, int]:
    return {r.basis_kind: r.size for r in reports if r.engine == engine}


def _sets(reports, engine: str = "graph") -> dict[str, frozenset]:
    return {r.basis_kind: frozenset(r.elements) for r in reports if r.engine == engine}


def _ladder(budget_secs):
    rec = _Recorder(budget_secs)
    for n in range(1, 5):
        def body(budget, n=n):
            g = families.ladder_graph(n)
            reports = compute_bases(g, engine="both" if n <= 2 else "graph", cap=g.edge_count, budget=budget)
            got = _sizes(reports)
            markov, common = families.expected_ladder_sizes(n)
            rec.expect(f"n={n} |M|", markov, got["markov"], "expected_ladder_sizes: 2n+1")
            for kind in ("circuits", "ugb", "graver"):
                rec.expect(f"n={n} |{kind}|", common, got[kind], "expected_ladder_sizes: 2n+4^n")
            rec.expect(f"n={n} graph set has no truncation", False, any(r.truncated for r in reports), "exhaustive run")
            if n <= 2:
                for r in reports:
                    if r.engine == "oracle":
                        rec.expect(f"n={n} {r.basis_kind} engines agree", True, r.agreement, "lattice oracle")
            return (n, got["markov"], got["circuits"], got["ugb"], got["graver"])
        rec.instance(f"ladder n={n}", body)
    return "ladder basis sizes", rec, ("n", "|M|", "|C|", "|U|", "|Gr|")


def _line_sweep(rec: _Recorder, focus: str):
    line = bases_of_line_config()
    rec.expect("line config pointed", False, line.pointed, "(1, -1) spans a line through 0")
    rec.expect("circuits = UGB = Graver", True, line.all_equal, "rank-one kernel")
    rec.expect("|Graver|", 1, len(line.graver), "rank-one kernel")
    rec.expect("Graver degree", 2, line.graver[0].degree, "generator xy - 1")
    previous = 0
    for s in range(2, len(FIRST_PRIMES) + 1):
        q = FIRST_PRIMES[:s]
        basis = markov_from_coprimes(q)
        cert = verify_markov(basis)
        size, degree = families.expected_line_markov(q)
        rec.expect(f"s={s} verify_markov", True, cert.ok, "gcd certificate")
        if focus == "size":
            rec.expect(f"s={s} |M|", size, len(basis), "expected_line_markov: s")
        rec.expect(f"s={s} max Markov degree", degree, basis.max_degree, "expected_line_markov: 2Q/min q")
        rec.expect(f"s={s} Markov degree grows", True, basis.max_degree > previous, "monotone in s")
        previous = basis.max_degree
        rec.rows.append((s, prod(q), len(basis), basis.max_degree, len(line.graver),
                         line.graver[0].degree))


def _size2(budget_secs):
    rec = _Recorder(budget_secs)
    _line_sweep(rec, "size")
    return "Markov size unbounded for (1, -1)", rec, ("s", "Q", "|M|", "max_deg_M", "|Gr|", "max_deg_Gr")


def _tm4(budget_secs):
    rec = _Recorder(budget_secs)
    _line_sweep(rec, "degree")
    return "Markov degree unbounded for (1, -1)", rec, ("s", "Q", "|M|", "max_deg_M", "|Gr|", "max_deg_Gr")


def _mu(budget_secs):
    rec = _Recorder(budget_secs)
    for r in (1, 2):
        def body(budget, r=r):
            g = families.triangle_tree(3, r)
            reports = compute_bases(g, engine="both" if r == 1 else "graph", cap=g.edge_count, budget=budget)
            sets = _sets(reports)
            rec.expect(f"r={r} M strictly inside C", True, sets["markov"] < sets["circuits"],
                       "circuits with bridge chords are not minimal")
            rec.expect(f"r={r} C = U", True, sets["circuits"] == sets["ugb"], "every circuit walk is mixed")
            rec.expect(f"r={r} U strictly inside Gr", True, sets["ugb"] < sets["graver"], "Euler binomial is not mixed")
            if r == 1:
                for rep in reports:
                    if rep.engine == "oracle":
                        rec.expect(f"r=1 {rep.basis_kind} engines agree", True, rep.agreement, "lattice oracle")
            return (r, len(sets["markov"]), len(sets["circuits"]), len(sets["ugb"]), len(sets["graver"]))
        rec.instance(f"G_{r}^3", body)
    return "triangle trees separate M from C", rec, ("r", "|M|", "|C|", "|U|", "|Gr|")


def _euler_checks(rec: _Recorder, g: Graph, label: str, expected: int, source: str):
    w = euler_trail(g)
    b = walks.binomial_of_walk(w)
    rec.expect(f"{label} Euler binomial degree", expected, b.degree, source)
    rec.expect(f"{label} Euler binomial reduced", False, b.unreduced, "trail uses each edge once")
    rec.expect(f"{label} Euler subgraph primitive", True, walks.is_primitive_subgraph(g, w.edge_set), "shape test")
    return w


def _tm1(budget_secs):
    rec = _Recorder(budget_secs)
    for r in (1, 2):
        def body(budget, r=r):
            g = families.triangle_tree(3, r)
            euler = families.expected_euler_degree(3, r)
            bound = families.expected_max_circuit_degree(3, r)
            w = _euler_checks(rec, g, f"r={r}", euler, "expected_euler_degree: 9*2^(r-1)-3")
            if r == 1:
                rec.expect("r=1 Euler walk primitive", True, walks.is_primitive_walk(g, w), "shape test")
                reports = compute_bases(g, ("circuits",), engine="both")
                rec.expect("r=1 circuits engines agree", True, reports[-1].agreement, "lattice oracle")
            circuits = walks.enumerate_circuit_walks(g)
            budget.check()
            rec.expect(f"r={r} max circuit degree", bound, circuits.max_degree, "expected_max_circuit_degree: 4r+1")
            return (r, euler, circuits.max_degree)
        rec.instance(f"G_{r}^3", body)
    return "triangle tree degrees", rec, ("r", "euler_degree", "max_circuit_degree")


def _bowtie() -> Graph:
    return Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def _robust(budget_secs):
    rec = _Recorder(budget_secs)

    def body(budget):
        g = families.subdivide(_bowtie(), 3)
        A = lattice.VectorConfig.from_graph(g)
        graver = frozenset(lattice.graver(A, budget=budget).binomials())
        ugb = frozenset(lattice.ugb(A, budget=budget).binomials())
        markov = lattice.markov_by_fibers(A, budget)
        m_set = frozenset(v.to_binomial() for v in markov.elements)
        circuits = frozenset(lattice.circuits(A).binomials())
        degree = families.expected_subdivided_trail_degree(6, 3)
        rec.expect("M = U", True, m_set == ugb, "subdivisions are strongly robust")
        rec.expect("U = Gr", True, ugb == graver, "subdivisions are strongly robust")
        rec.expect("|Gr|", 1, len(graver), "rank-one kernel of S_3(bowtie)")
        rec.expect("degree", degree, max(b.degree for b in graver), "expected_subdivided_trail_degree: k|E|/2")
        rec.expect("element is a circuit", True, graver <= circuits, "two odd cycles sharing a vertex")
        rec.expect("element indispensable", True, len(markov.indispensable) == len(markov.elements), "fiber of size 2")
        graph_side = compute_bases(g, engine="graph", cap=g.edge_count, budget=budget)
        rec.expect("graph engine Graver matches oracle", True, _sets(graph_side)["graver"] == graver, "lattice oracle")
        return ("S_3(bowtie)", len(m_set), len(ugb), len(graver), degree)

    rec.instance("S_3(bowtie)", body)
    return "subdivision of two triangles sharing a vertex", rec, ("graph", "|M|", "|U|", "|Gr|", "degree")


def _tm2(budget_secs):
    rec = _Recorder(budget_secs)

    def body(budget):
        k = 3
        g = families.subdivide(families.triangle_tree(3, 1), k)
        euler = families.expected_euler_degree(3, 1, k)
        bound = families.expected_max_circuit_degree(3, 1, k)
        w = _euler_checks(rec, g, "S_3(G_1^3)", euler, "expected_euler_degree: (k/2)(n+n^2((n-1)^r-1)/(n-2))")
        rec.expect("Euler walk minimal", True, walks.is_minimal_walk(g, w), "chord conditions")
        rec.expect("Euler walk indispensable", True, walks.is_indispensable_walk(g, w), "chord conditions")
        rec.expect("Euler walk mixed", True, walks.is_mixed(w), "no pure cyclic block")
        budget.check()
        circuits = walks.enumerate_circuit_walks(g)
        rec.expect("circuit degrees within bound", True, circuits.max_degree <= bound,
                   "expected_max_circuit_degree: kn+(2r-1)k(n-1)")
        return (k, euler, circuits.max_degree, bound)

    rec.instance("S_3(G_1^3)", body)
    return "subdivided triangle tree degrees", rec, ("k", "euler_degree", "max_circuit_degree", "bound")


def _tm3(budget_secs):
    rec = _Recorder(budget_secs)
    for n in (4, 5, 6):
        def body(budget, n=n):
            g = families.complete_graph(n)
            graver_max, markov_max = families.expected_kn_degrees(n)
            reports = compute_bases(g, engine="both" if n <= 5 else "graph", cap=g.edge_count, budget=budget)
            got = {(r.basis_kind, r.engine): r for r in reports}
            engine = "oracle" if n <= 5 else "graph"
            gr, mk, ci = got["graver", engine], got["markov", engine], got["circuits", engine]
            rec.expect(f"K_{n} Graver max degree", graver_max, gr.max_degree, "expected_kn_degrees: n-2")
            rec.expect(f"K_{n} max attained by a circuit", graver_max, ci.max_degree, "expected_kn_degrees: n-2")
            rec.expect(f"K_{n} Markov max degree", markov_max, mk.max_degree, "expected_kn_degrees: 2")
            if n <= 5:
                for r in reports:
                    if r.engine == "oracle":
                        rec.expect(f"K_{n} {r.basis_kind} engines agree", True, r.agreement, "lattice oracle")
            return (n, gr.max_degree, mk.max_degree)
        rec.instance(f"K_{n}", body)
    return "complete graph degrees", rec, ("n", "graver_max", "markov_max")


EXPERIMENTS: dict[str, Callable] = {
    "size1": _ladder,
    "size2": _size2,
    "MU": _mu,
    "TM1": _tm1,
    "robust": _robust,
    "TM2": _tm2,
    "TM3": _tm3,
    "TM4": _tm4,
}
ALIASES = {"UM": "TM2", "UM/TM2": "TM2"}


def resolve(experiment: str) -> str:
    key = ALIASES.get(experiment, experiment)
    if key not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {experiment!r}; known: {', '.join(EXPERIMENTS)}")
    return key


def reproduce(experiment: str, budget_secs: float | None = DEFAULT_BUDGET_SECS) -> ExperimentVerdict:
    key = resolve(experiment)
    title, rec, columns = EXPERIMENTS[key](budget_secs)
    return ExperimentVerdict(key, title, tuple(rec.checks), columns, tuple(rec.rows))


def reproduce_many(experiments, threads: int = 1,
                   budget_secs: float | None = DEFAULT_BUDGET_SECS) -> list[ExperimentVerdict]:
    """Run experiments, concurrently if asked; results come back in the order requested."""
    keys = [resolve(e) for e in experiments]
    if threads <= 1:
        return [reproduce(k, budget_secs) for k in keys]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda k: reproduce(k, budget_secs), keys))
