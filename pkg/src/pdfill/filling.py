"""Truncated Cayley 2-complexes and minimal-support filling search.

The complex is the radius-r window of the universal cover of a
presentation 2-complex: vertices are group elements of the ball, there is
one directed edge per (vertex, generator) whose endpoint stays in the
ball, and one 2-cell per (vertex, relator) whose whole attaching path
stays in the ball.  Boundary matrices are integer sparse matrices with
the usual signed incidence.

``minimal_filling`` finds a 2-chain of minimal support with a prescribed
boundary, by exhaustive branch and bound over face coefficients in
[-bound, bound] when the face count is small, and by a greedy residual
cover (flagged non-optimal) otherwise.  All searches are deterministic:
faces and edges are ordered by construction and ties break by index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import sparse

from .errors import (
    InvariantError,
    NoFillingError,
    NotACycleError,
    OutOfWindowError,
    SpecParseError,
)
from .groups import DEFAULT_BALL_BUDGET, GroupOracle, ball
from .rings import INTEGERS, Ring, frac_str
from .words import word_to_string

DEFAULT_EXACT_FACE_BUDGET = 64


@dataclass
class CayleyBallComplex:
    """A finite window of the Cayley 2-complex of a presentation."""

    group: GroupOracle
    ring: Ring
    radius: int
    vertices: list
    distances: list
    edges: list          # (source index, generator index, target index)
    faces: list          # (base vertex index, relator index)
    boundary1: sparse.csr_matrix   # edges x vertices
    boundary2: sparse.csr_matrix   # faces x edges
    face_edges: list     # per face: ordered list of (edge index, +-1 step)
    max_face_length: int

    def __post_init__(self):
        self.vertex_index = {g: i for i, g in enumerate(self.vertices)}
        self.edge_index = {(s, g): i for i, (s, g, _) in enumerate(self.edges)}
        edge_faces: dict = {}
        for f, steps in enumerate(self.face_edges):
            coeffs: dict = {}
            for e, step in steps:
                coeffs[e] = coeffs.get(e, 0) + step
            for e, c in coeffs.items():
                if c:
                    edge_faces.setdefault(e, []).append((f, c))
        self.edge_faces = edge_faces
        self.neighbors = [[] for _ in self.vertices]
        for s, g, t in self.edges:
            self.neighbors[s].append((g, t))
            self.neighbors[t].append((-g, s))
        for lst in self.neighbors:
            lst.sort(key=lambda pair: (abs(pair[0]), pair[0] < 0))

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def face_count(self):
        return len(self.faces)

    def center_index(self) -> int:
        return self.vertex_index[self.group.identity()]


def build_ball_complex(
    group: GroupOracle,
    radius: int,
    ring: Ring = INTEGERS,
    budget: int = DEFAULT_BALL_BUDGET,
) -> CayleyBallComplex:
    presentation = group.presentation
    if presentation is None:
        raise SpecParseError(f"group {group.name} has no presentation")
    elements = ball(group, radius, budget=budget)
    vertices = [g for g, _ in elements]
    distances = [d for _, d in elements]
    vertex_index = {g: i for i, g in enumerate(vertices)}

    edges = []
    edge_index = {}
    for i, g in enumerate(vertices):
        for gen in range(1, group.generator_count + 1):
            target = group.multiply(g, group.letter(gen))
            j = vertex_index.get(target)
            if j is not None:
                edge_index[(i, gen)] = len(edges)
                edges.append((i, gen, j))

    rows, cols, vals = [], [], []
    for e, (s, _, t) in enumerate(edges):
        if s == t:
            continue
        rows.extend([e, e])
        cols.extend([t, s])
        vals.extend([1, -1])
    boundary1 = sparse.csr_matrix(
        (vals, (rows, cols)), shape=(len(edges), len(vertices)), dtype=np.int64
    )

    faces = []
    face_edges = []
    for i in range(len(vertices)):
        for r, relator in enumerate(presentation.relators):
            steps = _trace_attaching_path(group, vertices, vertex_index, edge_index, i, relator)
            if steps is not None:
                faces.append((i, r))
                face_edges.append(steps)

    rows, cols, vals = [], [], []
    for f, steps in enumerate(face_edges):
        coeffs: dict = {}
        for e, step in steps:
            coeffs[e] = coeffs.get(e, 0) + step
        for e, c in sorted(coeffs.items()):
            if c:
                rows.append(f)
                cols.append(e)
                vals.append(c)
    boundary2 = sparse.csr_matrix(
        (vals, (rows, cols)), shape=(len(faces), len(edges)), dtype=np.int64
    )

    composite = boundary2 @ boundary1
    if composite.count_nonzero():
        raise InvariantError("face boundaries are not cycles: d1 o d2 != 0")

    max_face_length = max((len(rel) for rel in presentation.relators), default=0)
    return CayleyBallComplex(
        group=group,
        ring=ring,
        radius=radius,
        vertices=vertices,
        distances=distances,
        edges=edges,
        faces=faces,
        boundary1=boundary1,
        boundary2=boundary2,
        face_edges=face_edges,
        max_face_length=max_face_length,
    )


def _trace_attaching_path(group, vertices, vertex_index, edge_index, start, relator):
    """Signed edge steps of a relator read from a base vertex, or None if it leaves."""
    steps = []
    current = start
    for letter in relator:
        gen = abs(letter)
        if letter > 0:
            e = edge_index.get((current, gen))
            if e is None:
                return None
            steps.append((e, 1))
            current = vertex_index[group.multiply(vertices[current], group.letter(gen))]
        else:
            previous = group.multiply(vertices[current], group.letter(letter))
            p = vertex_index.get(previous)
            if p is None:
                return None
            e = edge_index.get((p, gen))
            if e is None:
                return None
            steps.append((e, -1))
            current = p
    if current != start:
        raise InvariantError("attaching path of a relator did not close up")
    return steps


@dataclass
class OneCycle:
    """An integer 1-chain in the kernel of the edge boundary."""

    complex: CayleyBallComplex
    coefficients: dict

    def __post_init__(self):
        self.coefficients = {e: c for e, c in self.coefficients.items() if c}
        if not self.is_cycle():
            raise NotACycleError("chain is not in the kernel of the boundary")

    def is_cycle(self) -> bool:
        vec = self.to_vector()
        return not (vec @ self.complex.boundary1).any()

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(self.complex.edge_count, dtype=np.int64)
        for e, c in self.coefficients.items():
            vec[e] = c
        return vec

    def support_norm(self) -> int:
        return len(self.coefficients)

    def key(self):
        return tuple(sorted(self.coefficients.items()))


def word_cycle(complex_: CayleyBallComplex, word) -> OneCycle:
    """The signed edge-indicator of a closed word traced from the identity."""
    group = complex_.group
    current = complex_.center_index()
    coefficients: dict = {}
    for letter in word:
        gen = abs(letter)
        if letter > 0:
            e = complex_.edge_index.get((current, gen))
            if e is None:
                raise OutOfWindowError(
                    f"path leaves the radius-{complex_.radius} window"
                )
            coefficients[e] = coefficients.get(e, 0) + 1
            current = complex_.vertex_index[
                group.multiply(complex_.vertices[current], group.letter(gen))
            ]
        else:
            previous = group.multiply(
                complex_.vertices[current], group.letter(letter)
            )
            p = complex_.vertex_index.get(previous)
            if p is None:
                raise OutOfWindowError(
                    f"path leaves the radius-{complex_.radius} window"
                )
            e = complex_.edge_index.get((p, gen))
            if e is None:
                raise OutOfWindowError(
                    f"path leaves the radius-{complex_.radius} window"
                )
            coefficients[e] = coefficients.get(e, 0) - 1
            current = p
    if current != complex_.center_index():
        raise NotACycleError("word does not evaluate to the identity")
    return OneCycle(complex_, coefficients)


@dataclass
class FillingResult:
    cycle: OneCycle
    filler: dict
    cycle_norm: int
    filler_norm: int
    ratio: Fraction
    nodes_explored: int
    optimal: bool
    coefficient_bound: int

    def to_json_dict(self) -> dict:
        return {
            "cycle_norm": self.cycle_norm,
            "filler_norm": self.filler_norm,
            "ratio": frac_str(self.ratio),
            "nodes_explored": self.nodes_explored,
            "optimal": self.optimal,
            "coefficient_bound": self.coefficient_bound,
        }


def minimal_filling(
    complex_: CayleyBallComplex,
    cycle: OneCycle,
    coefficient_bound: int = 1,
    exact_face_budget: int = DEFAULT_EXACT_FACE_BUDGET,
) -> FillingResult:
    """A minimal-support 2-chain whose boundary is the given cycle.

    Exhaustive over face coefficients in [-bound, bound] when the window
    has at most ``exact_face_budget`` faces; greedy (and flagged
    non-optimal) otherwise.  Raises ``NoFillingError`` when nothing in the
    window at this bound has the right boundary; that never distinguishes
    a small window from a non-bounding cycle.
    """
    if coefficient_bound < 1:
        raise SpecParseError("coefficient bound must be >= 1")
    if not cycle.coefficients:
        return FillingResult(
            cycle, {}, 0, 0, Fraction(0), 0, True, coefficient_bound
        )
    if complex_.face_count == 0:
        raise NoFillingError(
            "no faces in the window: cycle does not bound here "
            "(window may be too small)"
        )
    if complex_.face_count <= exact_face_budget:
        filler, nodes = _exact_search(complex_, cycle, coefficient_bound)
        optimal = True
    else:
        filler, nodes = _greedy_cover(complex_, cycle, coefficient_bound)
        optimal = False
    _verify_filler(complex_, cycle, filler)
    filler_norm = len(filler)
    cycle_norm = cycle.support_norm()
    return FillingResult(
        cycle,
        filler,
        cycle_norm,
        filler_norm,
        Fraction(filler_norm, cycle_norm),
        nodes,
        optimal,
        coefficient_bound,
    )


def _verify_filler(complex_, cycle, filler):
    vec = np.zeros(complex_.face_count, dtype=np.int64)
    for f, c in filler.items():
        vec[f] = c
    boundary = vec @ complex_.boundary2
    if not np.array_equal(boundary, cycle.to_vector()):
        raise InvariantError("filler boundary does not match the cycle")


def _exact_search(complex_, cycle, bound):
    """Depth-first branch and bound over face coefficients.

    A residual edge with the fewest unassigned incident faces is chosen;
    one of those faces must be nonzero, and branching on which face is the
    first nonzero one partitions the space.  The lower bound is
    ceil(residual support / max face length).
    """
    n_faces = complex_.face_count
    max_len = max(complex_.max_face_length, 1)
    edge_faces = complex_.edge_faces
    face_boundaries = []
    for steps in complex_.face_edges:
        coeffs: dict = {}
        for e, step in steps:
            coeffs[e] = coeffs.get(e, 0) + step
        face_boundaries.append({e: c for e, c in coeffs.items() if c})

    residual = dict(cycle.coefficients)
    assigned = [None] * n_faces
    best: dict = {"support": math.inf, "filler": None}
    nodes = 0
    values = [v for k in range(1, bound + 1) for v in (k, -k)]

    def apply(face, value):
        for e, c in face_boundaries[face].items():
            new = residual.get(e, 0) - value * c
            if new:
                residual[e] = new
            else:
                residual.pop(e, None)

    def choose_edge():
        best_edge, best_free = None, None
        for e in residual:
            free = 0
            for f, _ in edge_faces.get(e, ()):
                if assigned[f] is None:
                    free += 1
            if best_free is None or free < best_free or (
                free == best_free and e < best_edge
            ):
                best_edge, best_free = e, free
                if free == 0:
                    break
        return best_edge, best_free

    def recurse(nonzero_count):
        nonlocal nodes
        nodes += 1
        if not residual:
            if nonzero_count < best["support"]:
                best["support"] = nonzero_count
                best["filler"] = {
                    f: v for f, v in enumerate(assigned) if v
                }
            return
        lower = nonzero_count + math.ceil(len(residual) / max_len)
        if lower >= best["support"]:
            return
        edge, free = choose_edge()
        if free == 0:
            return
        candidates = [f for f, _ in edge_faces[edge] if assigned[f] is None]
        candidates.sort()
        for pos, face in enumerate(candidates):
            # faces before position pos stay zero on this branch
            for earlier in candidates[:pos]:
                assigned[earlier] = 0
            ordered = sorted(
                values,
                key=lambda v: (
                    _support_after(residual, face_boundaries[face], v),
                    v < 0,
                    abs(v),
                ),
            )
            for value in ordered:
                assigned[face] = value
                apply(face, value)
                recurse(nonzero_count + 1)
                apply(face, -value)
                assigned[face] = None
            for earlier in candidates[:pos]:
                assigned[earlier] = None

    recurse(0)
    if best["filler"] is None:
        raise NoFillingError(
            f"no filling in the window with coefficients in [-{bound}, {bound}] "
            "(window may be too small)"
        )
    return best["filler"], nodes


def _support_after(residual, boundary, value):
    support = len(residual)
    for e, c in boundary.items():
        old = residual.get(e, 0)
        new = old - value * c
        if old and not new:
            support -= 1
        elif not old and new:
            support += 1
    return support


def _greedy_cover(complex_, cycle, bound):
    """Repeatedly add the unused face cancelling the most residual edges.

    Cancelled means the edge's residual coefficient drops to zero; the
    choice may introduce new residual edges elsewhere (ties prefer fewer),
    so progress is measured against the face supply, not the support size.
    """
    residual = dict(cycle.coefficients)
    face_boundaries: dict = {}
    filler: dict = {}
    nodes = 0
    while residual:
        nodes += 1
        candidates = set()
        for e in residual:
            for f, _ in complex_.edge_faces.get(e, ()):
                if f not in filler:
                    candidates.add(f)
        best_choice = None
        for f in sorted(candidates):
            if f not in face_boundaries:
                coeffs: dict = {}
                for e, step in complex_.face_edges[f]:
                    coeffs[e] = coeffs.get(e, 0) + step
                face_boundaries[f] = {e: c for e, c in coeffs.items() if c}
            for value in [v for k in range(1, bound + 1) for v in (k, -k)]:
                cancelled = 0
                introduced = 0
                for e, c in face_boundaries[f].items():
                    old = residual.get(e, 0)
                    new = old - value * c
                    if old and not new:
                        cancelled += 1
                    elif not old and new:
                        introduced += 1
                key = (-cancelled, introduced, f, value < 0, abs(value))
                if best_choice is None or key < best_choice[0]:
                    best_choice = (key, f, value)
        if best_choice is None or best_choice[0][0] == 0:
            raise NoFillingError(
                "greedy search stalled: no unused face cancels a residual edge "
                "(window may be too small)"
            )
        _, face, value = best_choice
        filler[face] = value
        for e, c in face_boundaries[face].items():
            new = residual.get(e, 0) - value * c
            if new:
                residual[e] = new
            else:
                residual.pop(e, None)
    return filler, nodes


@dataclass
class SweepReport:
    group: str
    radius: int
    word_length_cap: int
    coefficient_bound: int
    corpus_size: int
    filled: int
    unfilled: int
    max_ratio: Fraction
    kappa_hat: Fraction
    per_cycle: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "radius": self.radius,
            "max_word": self.word_length_cap,
            "coeff_bound": self.coefficient_bound,
            "corpus_size": self.corpus_size,
            "filled": self.filled,
            "unfilled": self.unfilled,
            "max_ratio": frac_str(self.max_ratio),
            "kappa_hat": frac_str(self.kappa_hat),
            "per_cycle": self.per_cycle,
        }

    def csv_rows(self):
        yield ("word", "word_length", "cycle_norm", "filler_norm", "ratio", "optimal")
        for entry in self.per_cycle:
            yield (
                entry["word"],
                entry["word_length"],
                entry["cycle_norm"],
                entry.get("filler_norm", ""),
                entry.get("ratio", ""),
                entry.get("optimal", ""),
            )


def isoperimetric_sweep(
    group: GroupOracle,
    radius: int,
    word_length_cap: int,
    coefficient_bound: int = 1,
    exact_face_budget: int = DEFAULT_EXACT_FACE_BUDGET,
    budget: int = DEFAULT_BALL_BUDGET,
    complex_: CayleyBallComplex | None = None,
) -> SweepReport:
    """Fill every null-homotopic word up to the cap whose path fits the window.

    Closed words are enumerated as non-backtracking walks from the center
    vertex (a walk is null-homotopic exactly when it returns to the
    center), deduplicated by their signed edge vectors, and each distinct
    nonzero cycle is filled.  Cycles with no filling at the coefficient
    bound are reported and excluded from the ratio statistics.
    """
    if complex_ is None:
        complex_ = build_ball_complex(group, radius, budget=budget)
    cycles = _closed_cycles(complex_, word_length_cap)
    per_cycle = []
    max_ratio = Fraction(0)
    filled = 0
    unfilled = 0
    for word, cycle in cycles:
        entry = {
            "word": word_to_string(word),
            "word_length": len(word),
            "cycle_norm": cycle.support_norm(),
        }
        try:
            result = minimal_filling(
                complex_, cycle, coefficient_bound, exact_face_budget
            )
        except NoFillingError as err:
            entry["status"] = "unfilled"
            entry["reason"] = str(err)
            unfilled += 1
        else:
            entry["status"] = "filled"
            entry["filler_norm"] = result.filler_norm
            entry["ratio"] = frac_str(result.ratio)
            entry["optimal"] = result.optimal
            filled += 1
            if result.ratio > max_ratio:
                max_ratio = result.ratio
        per_cycle.append(entry)
    return SweepReport(
        group=group.name,
        radius=radius,
        word_length_cap=word_length_cap,
        coefficient_bound=coefficient_bound,
        corpus_size=len(per_cycle),
        filled=filled,
        unfilled=unfilled,
        max_ratio=max_ratio,
        kappa_hat=max_ratio,
        per_cycle=per_cycle,
    )


def _closed_cycles(complex_, cap):
    """Distinct nonzero cycles of closed non-backtracking walks at the center.

    Depth-first over the window's adjacency, moves ordered by generator
    index then sign, so discovery order is deterministic.
    """
    center = complex_.center_index()
    found: dict = {}
    order: list = []
    walk: list = []

    def visit(vertex, last_move):
        if walk and vertex == center:
            word = tuple(walk)
            try:
                cycle = word_cycle(complex_, word)
            except (NotACycleError, OutOfWindowError):
                cycle = None
            if cycle is not None and cycle.coefficients:
                key = cycle.key()
                if key not in found:
                    found[key] = (word, cycle)
                    order.append(key)
        if len(walk) == cap:
            return
        for move, target in complex_.neighbors[vertex]:
            if last_move is not None and move == -last_move:
                continue
            walk.append(move)
            visit(target, move)
            walk.pop()

    visit(center, None)
    return [found[key] for key in order]


def transfer_constant(kappa, norm_x: int, norm_z: int, norm_h: int) -> Fraction:
    """The filling-constant bound carried across a pair of chain maps.

    With chain maps of norms ``norm_x`` and ``norm_z`` translating between
    two complexes and a homotopy of norm ``norm_h``, a filling constant
    kappa for one complex yields kappa*|X|*|Z| + |H| for the other.
    """
    kappa = Fraction(kappa)
    if kappa < 0 or norm_x < 0 or norm_z < 0 or norm_h < 0:
        raise SpecParseError("transfer constant inputs must be non-negative")
    return kappa * norm_x * norm_z + norm_h
