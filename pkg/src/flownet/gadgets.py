"""
Instance generators: SAT and linkage reductions, the arc-connectivity
counterexample family, and seeded random networks.

Every generator returns a GadgetOutput whose labels name the vertices of the
construction ("s", "t", "u_1", "y_2,1", "q_3", ...), so tests and witness
builders can address them without knowing vertex numbering.
"""

import json
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union, TextIO

from .errors import InputError, PreconditionError
from .netcore import ArcId, Digraph, Flow, Network, VertexId, is_acyclic
from .psplit import hardness_bounds

logger = logging.getLogger(__name__)

Literal = int


# === CNF formulas ===

@dataclass(frozen=True)
class CnfFormula:
    """Clauses of exactly three literals; literal +i / -i is variable i (1-based) plain / negated."""
    variable_count: int
    clauses: Tuple[Tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if self.variable_count < 1:
            raise InputError(f"formula needs at least one variable, got {self.variable_count}")
        clauses = tuple(tuple(c) for c in self.clauses)
        for j, clause in enumerate(clauses, start=1):
            if len(clause) != 3:
                raise InputError(f"clause {j} has {len(clause)} literals; exactly 3 are required")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise InputError(f"clause {j}: literal {lit} outside ±1..{self.variable_count}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in clause) for clause in self.clauses)

    def occurrences(self, variable: int, positive: bool) -> List[Tuple[int, int]]:
        """(clause index, literal position) of each occurrence, in clause order."""
        target = variable if positive else -variable
        return [(j, r) for j, clause in enumerate(self.clauses) for r, lit in enumerate(clause) if lit == target]

    def padded(self) -> "CnfFormula":
        """Appends (x, ¬x, x) for each variable missing a polarity; satisfiability is unchanged."""
        extra = [
            (i, -i, i) for i in range(1, self.variable_count + 1)
            if not self.occurrences(i, True) or not self.occurrences(i, False)
        ]
        if not extra:
            return self
        logger.debug(f"padding formula with {len(extra)} dummy clauses")
        return CnfFormula(self.variable_count, self.clauses + tuple(extra))

    def is_b2(self) -> bool:
        return all(
            len(self.occurrences(i, True)) == 2 and len(self.occurrences(i, False)) == 2
            for i in range(1, self.variable_count + 1)
        )

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.variable_count} {self.clause_count}"]
        lines += [" ".join(str(l) for l in clause) + " 0" for clause in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: Union[str, TextIO]) -> CnfFormula:
    """DIMACS CNF: 'c' comments, one 'p cnf <n> <m>' header, clauses terminated by 0."""
    raw = text if isinstance(text, str) else text.read()
    header: Optional[Tuple[int, int]] = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            tokens = line.split()
            if header is not None or len(tokens) != 4 or tokens[1] != "cnf":
                raise InputError("bad 'p cnf <n> <m>' header", lineno)
            try:
                header = (int(tokens[2]), int(tokens[3]))
            except ValueError:
                raise InputError("non-integer sizes in header", lineno) from None
            continue
        if header is None:
            raise InputError("clause before the 'p cnf' header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise InputError(f"expected a literal, got {token!r}", lineno) from None
            if lit == 0:
                if len(current) != 3:
                    raise InputError(f"clause with {len(current)} literals; exactly 3 are required", lineno)
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise InputError("missing 'p cnf' header")
    if current:
        raise InputError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise InputError(f"declared {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def canonical_b2sat_formula() -> CnfFormula:
    """Satisfiable formula on 3 variables, each occurring exactly twice in each polarity."""
    return CnfFormula(3, ((1, 2, 3), (1, -2, -3), (-1, 2, -3), (-1, -2, 3)))


def sample_formula() -> CnfFormula:
    return CnfFormula(3, ((1, 2, -3), (-1, 2, 3), (-1, -2, -3)))


# === Generator plumbing ===

@dataclass(frozen=True)
class GadgetOutput:
    network: Network
    target: Dict[str, Any]
    labels: Dict[str, VertexId]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def vertex(self, label: str) -> VertexId:
        try:
            return self.labels[label]
        except KeyError:
            raise InputError(f"no vertex labelled {label!r}") from None

    def arc(self, tail: str, head: str) -> ArcId:
        """The first arc (by ArcId) between two labelled vertices."""
        u, v = self.vertex(tail), self.vertex(head)
        for arc in self.network.digraph.out_arcs(u):
            if arc.head == v:
                return arc.id
        raise InputError(f"no arc {tail} -> {head}")

    def labels_json(self) -> str:
        return json.dumps({name: v + 1 for name, v in self.labels.items()}, indent=2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": self.network.vertex_count,
            "arcs": self.network.digraph.arc_count,
            "target": self.target,
            "metadata": self.metadata,
            "labels": {name: v + 1 for name, v in self.labels.items()},
        }


class _Builder:
    """Collects labelled vertices and (tail, head, capacity) arcs in insertion order."""

    def __init__(self):
        self.labels: Dict[str, VertexId] = {}
        self.arcs: List[Tuple[VertexId, VertexId, int]] = []

    def vertex(self, label: str) -> VertexId:
        if label not in self.labels:
            self.labels[label] = len(self.labels)
        return self.labels[label]

    def arc(self, tail: str, head: str, cap: int) -> None:
        self.arcs.append((self.vertex(tail), self.vertex(head), cap))

    def path(self, labels: Sequence[str], cap: int) -> None:
        for tail, head in zip(labels, labels[1:]):
            self.arc(tail, head, cap)

    def build(self, target: Dict[str, Any], metadata: Optional[Dict[str, Any]] = None) -> GadgetOutput:
        net = Network.build(len(self.labels), self.arcs, self.labels["s"], self.labels["t"])
        return GadgetOutput(net, target, dict(self.labels), metadata or {})


def _flow_from_paths(gadget: GadgetOutput, paths: Iterable[Tuple[Sequence[str], int]]) -> Flow:
    x: Dict[ArcId, int] = {}
    for labels, value in paths:
        for tail, head in zip(labels, labels[1:]):
            arc_id = gadget.arc(tail, head)
            x[arc_id] = x.get(arc_id, 0) + value
    return Flow(gadget.network, x)


def _chain(kind: str, variable: int, length: int) -> List[str]:
    return [f"{kind}_{variable},{r}" for r in range(1, length + 1)]


def _occurrence_label(f: CnfFormula, clause: int, position: int) -> str:
    """Chain vertex standing for literal `position` of `clause`."""
    lit = f.clauses[clause][position]
    variable = abs(lit)
    r = f.occurrences(variable, lit > 0).index((clause, position)) + 1
    return f"{'y' if lit > 0 else 'z'}_{variable},{r}"


def _variable_chains(b: _Builder, f: CnfFormula, cap: int) -> None:
    """u_i → y_{i,1..p_i} → u_{i+1} and u_i → z_{i,1..q_i} → u_{i+1}."""
    for i in range(1, f.variable_count + 1):
        ys = _chain("y", i, len(f.occurrences(i, True)))
        zs = _chain("z", i, len(f.occurrences(i, False)))
        b.path([f"u_{i}"] + ys + [f"u_{i + 1}"], cap)
        b.path([f"u_{i}"] + zs + [f"u_{i + 1}"], cap)


def _true_literal(f: CnfFormula, clause: int, assignment: Sequence[bool]) -> int:
    for r, lit in enumerate(f.clauses[clause]):
        if assignment[abs(lit) - 1] == (lit > 0):
            return r
    raise PreconditionError(f"assignment does not satisfy clause {clause + 1}")


# === Degree-constrained flow reduction ===

def gen_sat_deg_network(f: CnfFormula, k: int = 2) -> GadgetOutput:
    """
    3-SAT to (Δ⁺≤k)-flow: the formula is satisfiable iff a flow of value
    m + (k−1)(2m+1) with out-degree ≤ k exists. The chain vertex y_{i,r}
    (z_{i,r}) is the r-th plain (negated) occurrence of variable i; clause j
    is the vertex y_j. Acyclic.
    """
    if k < 2:
        raise PreconditionError(f"the degree reduction needs k >= 2, got {k}")
    f = f.padded()
    n, m = f.variable_count, f.clause_count
    heavy = 2 * m + 1
    b = _Builder()
    b.vertex("s")
    b.vertex("t")
    b.arc("s", "u_1", m + (k - 1) * heavy)
    _variable_chains(b, f, m)
    for i in range(1, n + 1):
        if k == 2:
            b.arc(f"u_{i}", f"u_{i + 1}", heavy)
        else:
            for h in range(1, k):
                b.path([f"u_{i}", f"r_{i},{h}", f"u_{i + 1}"], heavy)
    for j in range(m):
        for r in range(3):
            b.arc(_occurrence_label(f, j, r), f"y_{j + 1}", 1)
        b.arc(f"y_{j + 1}", "t", 1)
    b.arc(f"u_{n + 1}", "t", (k - 1) * heavy)
    gadget = b.build(
        {"value": m + (k - 1) * heavy, "max_out_degree": k},
        {"kind": "sat_deg", "k": k, "variables": n, "clauses": m, "formula": [list(c) for c in f.clauses]},
    )
    logger.info(f"sat_deg gadget: {gadget.network.vertex_count} vertices, {gadget.network.digraph.arc_count} arcs")
    return gadget


def sat_deg_witness(gadget: GadgetOutput, assignment: Sequence[bool]) -> Flow:
    """
    The flow of the forward direction: (k−1)(2m+1) on the heavy spine, and m
    units entering the chain of true literals, one leaving at each clause
    through its first true literal.
    """
    f = CnfFormula(gadget.metadata["variables"], tuple(tuple(c) for c in gadget.metadata["formula"]))
    k, n, m = gadget.metadata["k"], f.variable_count, f.clause_count
    heavy = 2 * m + 1
    paths: List[Tuple[List[str], int]] = []
    for i in range(1, n + 1):
        if k == 2:
            paths.append(([f"u_{i}", f"u_{i + 1}"], heavy))
        else:
            paths += [([f"u_{i}", f"r_{i},{h}", f"u_{i + 1}"], heavy) for h in range(1, k)]
    paths.append((["s", "u_1"], (k - 1) * heavy))
    paths.append(([f"u_{n + 1}", "t"], (k - 1) * heavy))

    route = ["s"]
    for i in range(1, n + 1):
        kind = "y" if assignment[i - 1] else "z"
        route += [f"u_{i}"] + _chain(kind, i, len(f.occurrences(i, assignment[i - 1])))
    route.append(f"u_{n + 1}")
    exits = {_occurrence_label(f, j, _true_literal(f, j, assignment)): j for j in range(m)}
    carried = m
    for tail, head in zip(route, route[1:]):
        if carried == 0:
            break
        paths.append(([tail, head], carried))
        if head in exits:
            j = exits[head]
            paths.append(([head, f"y_{j + 1}", "t"], 1))
            carried -= 1
    return _flow_from_paths(gadget, paths)


def gen_inout_tail(gadget: GadgetOutput) -> GadgetOutput:
    """
    Replaces the clause arcs y_j→t of a k=2 degree gadget by the in-branching
    y_j→t_j (1), t_j→t_{j+1} (j), t_m→t (m), so every (Δ⁺≤2)-flow also has
    in-degree ≤ 2.
    """
    if gadget.metadata.get("kind") != "sat_deg" or gadget.metadata.get("k") != 2:
        raise PreconditionError("gen_inout_tail needs the k=2 output of gen_sat_deg_network")
    m = gadget.metadata["clauses"]
    names = {v: name for name, v in gadget.labels.items()}
    clause_vertices = {gadget.vertex(f"y_{j}") for j in range(1, m + 1)}
    t = gadget.network.sink
    b = _Builder()
    for name in gadget.labels:
        b.vertex(name)
    for arc in sorted(gadget.network.arcs):
        if arc.head == t and arc.tail in clause_vertices:
            continue
        b.arc(names[arc.tail], names[arc.head], gadget.network.cap(arc.id))
    for j in range(1, m + 1):
        b.arc(f"y_{j}", f"t_{j}", 1)
        b.arc(f"t_{j}", f"t_{j + 1}" if j < m else "t", j if j < m else m)
    return b.build(
        {**gadget.target, "max_in_degree": 2},
        {**gadget.metadata, "kind": "sat_deg_inout"},
    )


# === Value-9 reduction from (3,B2)-SAT ===

_W_HEAVY = [("u", "y1"), ("u", "z1"), ("u", "v"), ("y1", "y2"), ("y4", "y5"), ("y7", "v"), ("z1", "z2"), ("z4", "z5"), ("z7", "v")]
_W_LIGHT = [("y2", "y3"), ("y3", "y4"), ("y2", "y4"), ("y5", "y6"), ("y6", "y7"), ("y5", "y7"),
            ("z2", "z3"), ("z3", "z4"), ("z2", "z4"), ("z5", "z6"), ("z6", "z7"), ("z5", "z7")]


def gen_b2sat_value9_network(f: CnfFormula) -> GadgetOutput:
    """
    (3,B2)-SAT to '(Δ⁺≤2)-flow of value 9'. Variable i gets a copy W^i of the
    16-vertex gadget (labels 'u^i', 'y3^i', ...); clause j gets q_j and r_j.
    """
    if not f.is_b2():
        raise PreconditionError("every variable must occur exactly twice in each polarity")
    n, m = f.variable_count, f.clause_count
    b = _Builder()
    b.vertex("s")
    b.vertex("t")
    for i in range(1, n + 1):
        for tail, head in _W_HEAVY:
            b.arc(f"{tail}^{i}", f"{head}^{i}", 4)
        for tail, head in _W_LIGHT:
            b.arc(f"{tail}^{i}", f"{head}^{i}", 2)
    for i in range(1, n):
        b.arc(f"v^{i}", f"u^{i + 1}", 8)
    for j in range(1, m):
        b.arc(f"r_{j}", f"q_{j + 1}", 1)
    for h in range(1, n + 1):
        (i, _), (j, _) = f.occurrences(h, True)
        (k, _), (l, _) = f.occurrences(h, False)
        for clause, entry, leave in ((i, "y4", "y5"), (j, "y1", "y2"), (k, "z4", "z5"), (l, "z1", "z2")):
            b.arc(f"q_{clause + 1}", f"{entry}^{h}", 1)
            b.arc(f"{leave}^{h}", f"r_{clause + 1}", 1)
    b.arc("s", "u^1", 8)
    b.arc(f"v^{n}", "t", 8)
    b.arc("s", "q_1", 1)
    b.arc(f"r_{m}", "t", 1)
    return b.build(
        {"value": 9, "max_out_degree": 2},
        {"kind": "b2sat_value9", "variables": n, "clauses": m, "formula": [list(c) for c in f.clauses]},
    )


def b2sat_value9_witness(gadget: GadgetOutput, assignment: Sequence[bool]) -> Flow:
    """
    8 units along the spine, using the z side of true variables and the y side
    of false ones, plus one unit visiting q_1, r_1, ..., q_m, r_m through an
    unused side.
    """
    f = CnfFormula(gadget.metadata["variables"], tuple(tuple(c) for c in gadget.metadata["formula"]))
    n, m = f.variable_count, f.clause_count
    paths: List[Tuple[List[str], int]] = [(["s", "u^1"], 8), ([f"v^{n}", "t"], 8)]
    paths += [([f"v^{i}", f"u^{i + 1}"], 8) for i in range(1, n)]
    for i in range(1, n + 1):
        side = "z" if assignment[i - 1] else "y"
        w = lambda name: f"{side}{name}^{i}"
        paths.append(([f"u^{i}", f"v^{i}"], 4))
        paths.append(([f"u^{i}", w(1), w(2)], 4))
        paths.append(([w(4), w(5)], 4))
        paths.append(([w(7), f"v^{i}"], 4))
        for a, c in (((2, 3, 4), 2), ((2, 4), 2), ((5, 6, 7), 2), ((5, 7), 2)):
            paths.append(([w(x) for x in a], c))

    route = ["s"]
    for j in range(m):
        r = _true_literal(f, j, assignment)
        lit = f.clauses[j][r]
        h = abs(lit)
        occurrences = f.occurrences(h, lit > 0)
        first = occurrences[0][0] == j
        side = "y" if lit > 0 else "z"
        entry, leave = (4, 5) if first else (1, 2)
        route += [f"q_{j + 1}", f"{side}{entry}^{h}", f"{side}{leave}^{h}", f"r_{j + 1}"]
    route.append("t")
    paths.append((route, 1))
    return _flow_from_paths(gadget, paths)


# === Arc-connectivity counterexample ===

def gen_lambda_counterexample(lam: int) -> GadgetOutput:
    """
    λ_D(s,t) = λ, yet every maximum flow (value 2λ−2) has a support with
    arc-connectivity 2: paths s u_i v_i t, s y t, s z t, arcs u_i y and z v_i;
    c(sz) = c(yt) = λ−1, all other capacities 1.
    """
    if lam < 3:
        raise PreconditionError(f"the counterexample family starts at λ = 3, got {lam}")
    b = _Builder()
    b.vertex("s")
    b.vertex("t")
    for i in range(1, lam - 1):
        b.path(["s", f"u_{i}", f"v_{i}", "t"], 1)
    b.arc("s", "y", 1)
    b.arc("y", "t", lam - 1)
    b.arc("s", "z", lam - 1)
    b.arc("z", "t", 1)
    for i in range(1, lam - 1):
        b.arc(f"u_{i}", "y", 1)
        b.arc("z", f"v_{i}", 1)
    return b.build(
        {"max_flow": 2 * lam - 2, "lambda": lam, "support_lambda": 2},
        {"kind": "lambda", "lambda": lam},
    )


# === p-split inapproximability ===

@dataclass(frozen=True)
class LinkageInstance:
    """Weak 2-linkage: are there arc-disjoint s1→t1 and s2→t2 paths? Vertex names are labels."""
    name: str
    vertices: Tuple[str, ...]
    arcs: Tuple[Tuple[str, str], ...]
    positive: bool

    def digraph(self) -> Digraph:
        index = {v: i for i, v in enumerate(self.vertices)}
        return Digraph.from_pairs(len(self.vertices), [(index[a], index[b]) for a, b in self.arcs])


LINKAGE_POSITIVE = LinkageInstance("positive", ("s1", "s2", "t1", "t2"), (("s1", "t1"), ("s2", "t2")), True)
LINKAGE_NEGATIVE = LinkageInstance("negative", ("s1", "s2", "t1", "t2"), (("s1", "t2"), ("s2", "t1"), ("s2", "t2")), False)


def gen_psplit_hard(p: int, linkage: LinkageInstance = LINKAGE_POSITIVE, family: str = "rho1") -> GadgetOutput:
    """
    Copies of the linkage digraph joined to s and t. rho1: capacity 2 with
    s→s1 and t1→t of capacity 1, 2q copies (p ≡ 0,1 mod 4) or 2q+1 copies
    (p ≡ 2,3). rho2: ⌊p/2⌋ copies, capacity 3 with s→s1 and t1→t of
    capacity 2. An s→t arc of capacity 1 is added when p is odd.
    """
    d = linkage.digraph()
    index = {v: i for i, v in enumerate(linkage.vertices)}
    if not d.has_path(index["s2"], index["t2"]):
        raise PreconditionError("the linkage instance needs an s2→t2 path")
    high, low = hardness_bounds(p, family)
    if family == "rho1":
        q, r = divmod(p, 4)
        copies, cap, light = (2 * q if r in (0, 1) else 2 * q + 1), 2, 1
    else:
        copies, cap, light = p // 2, 3, 2
    b = _Builder()
    b.vertex("s")
    b.vertex("t")
    for c in range(1, copies + 1):
        b.arc("s", f"s1^{c}", light)
        b.arc("s", f"s2^{c}", cap)
        for tail, head in linkage.arcs:
            b.arc(f"{tail}^{c}", f"{head}^{c}", cap)
        b.arc(f"t1^{c}", "t", light)
        b.arc(f"t2^{c}", "t", cap)
    if p % 2 == 1:
        b.arc("s", "t", 1)
    return b.build(
        {"positive_value": high, "negative_value": low},
        {"kind": "psplit_hard", "p": p, "family": family, "linkage": linkage.name, "copies": copies},
    )


# === Vertex-disjoint and separable reductions ===

def gen_vertex_disjoint_hard(f: CnfFormula) -> GadgetOutput:
    """
    3-SAT to p-vertex-decomposable flow with capacities 1 and 2: a value of
    2m+1 in m+1 vertex-disjoint path-flows exists iff f is satisfiable.
    Clause j is the three paths y'_j → a → y_j through its literal vertices.
    """
    f = f.padded()
    n, m = f.variable_count, f.clause_count
    b = _Builder()
    b.vertex("s")
    b.vertex("t")
    b.arc("s", "u_1", 1)
    _variable_chains(b, f, 1)
    b.arc(f"u_{n + 1}", "t", 1)
    for j in range(m):
        b.arc("s", f"y'_{j + 1}", 2)
        for r in range(3):
            b.arc(f"y'_{j + 1}", _occurrence_label(f, j, r), 2)
            b.arc(_occurrence_label(f, j, r), f"y_{j + 1}", 2)
        b.arc(f"y_{j + 1}", "t", 2)
    return b.build(
        {"value": 2 * m + 1, "paths": m + 1},
        {"kind": "vertex_disjoint", "variables": n, "clauses": m, "formula": [list(c) for c in f.clauses]},
    )


def vertex_disjoint_witness(gadget: GadgetOutput, assignment: Sequence[bool]) -> Flow:
    """One unit along the chains of false literals; 2 units through each clause's first true literal."""
    f = CnfFormula(gadget.metadata["variables"], tuple(tuple(c) for c in gadget.metadata["formula"]))
    n, m = f.variable_count, f.clause_count
    route = ["s"]
    for i in range(1, n + 1):
        kind = "z" if assignment[i - 1] else "y"
        route += [f"u_{i}"] + _chain(kind, i, len(f.occurrences(i, kind == "y")))
    route += [f"u_{n + 1}", "t"]
    paths: List[Tuple[List[str], int]] = [(route, 1)]
    for j in range(m):
        a = _occurrence_label(f, j, _true_literal(f, j, assignment))
        paths.append((["s", f"y'_{j + 1}", a, f"y_{j + 1}", "t"], 2))
    return _flow_from_paths(gadget, paths)


def gen_separable_hard(net: Network, q: int) -> GadgetOutput:
    """
    For each internal vertex v and i < q adds v_i⁻, v_i⁺ and the path
    s v_i⁻ v v_i⁺ t of capacity 2; the q-separable optimum of the result is
    the vertex-disjoint optimum of the input plus 2n(q−1).
    """
    if q < 1:
        raise PreconditionError(f"q must be at least 1, got {q}")
    ok, _ = is_acyclic(net.digraph)
    if not ok:
        raise PreconditionError("the separable reduction needs an acyclic network")
    if any(c not in (1, 2) for c in net.capacity.values()):
        raise PreconditionError("the separable reduction needs capacities in {1, 2}")
    s, t = net.source, net.sink
    b = _Builder()
    name = lambda v: "s" if v == s else "t" if v == t else f"v{v + 1}"
    for v in range(net.vertex_count):
        b.vertex(name(v))
    for arc in sorted(net.arcs):
        b.arc(name(arc.tail), name(arc.head), net.cap(arc.id))
    internal = [v for v in range(net.vertex_count) if v not in (s, t)]
    for v in internal:
        for i in range(1, q):
            b.path(["s", f"{name(v)}-{i}", name(v), f"{name(v)}+{i}", "t"], 2)
    offset = 2 * len(internal) * (q - 1)
    return b.build({"offset": offset}, {"kind": "separable", "q": q, "internal_vertices": len(internal)})


# === Random instances ===

def gen_random_network(
    seed: int,
    vertices: int = 6,
    arcs: int = 10,
    max_cap: int = 4,
    acyclic: bool = False,
    unit: bool = False,
) -> GadgetOutput:
    """Seeded random multigraph network; s is vertex 0 and t the last vertex."""
    if vertices < 2 or arcs < 0 or max_cap < 1:
        raise PreconditionError("random networks need >= 2 vertices, >= 0 arcs and max_cap >= 1")
    rng = random.Random(seed)
    triples: List[Tuple[VertexId, VertexId, int]] = []
    while len(triples) < arcs:
        u, v = rng.randrange(vertices), rng.randrange(vertices)
        if u == v:
            continue
        if acyclic and u > v:
            u, v = v, u
        triples.append((u, v, 1 if unit else rng.randint(1, max_cap)))
    net = Network.build(vertices, triples, 0, vertices - 1)
    labels = {"s": 0, "t": vertices - 1}
    labels.update({f"v{v + 1}": v for v in range(1, vertices - 1)})
    return GadgetOutput(net, {}, labels, {"kind": "random", "seed": seed, "acyclic": acyclic, "unit": unit})
