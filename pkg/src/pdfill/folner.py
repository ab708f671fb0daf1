"""Boundary ratios of finite sets: the amenability side of the dichotomy.

The boundary of a finite set F is the set of g in F with g s_i^-1 outside
F for some generator s_i.  Small boundary-to-size ratios along a family of
sets witness amenability; a uniform positive lower bound epsilon over all
finite sets gives the filling constant 1/epsilon for the one-step
differential (1 - r_i s_i).

Verdicts are family-relative only: ``ratio-vanishing`` when the examined
family drops below a threshold, ``ratio-bounded-below`` when an exhaustive
family has a positive minimum, ``inconclusive`` otherwise.  Nothing here
claims amenability or non-amenability of the group itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetError, SpecParseError
from .group_ring import GroupRingElement
from .groups import DEFAULT_BALL_BUDGET, FreeAbelianOracle, GroupOracle, ball
from .rings import Ring, frac_str

DEFAULT_VANISHING_THRESHOLD = Fraction(1, 10)
MAX_EXHAUSTIVE_SIZE = 12


def folner_boundary(oracle: GroupOracle, subset) -> set:
    """Elements g of the set with g s_i^-1 outside it for some generator."""
    members = set(subset)
    boundary = set()
    for g in members:
        for i in range(1, oracle.generator_count + 1):
            if oracle.multiply(g, oracle.letter(-i)) not in members:
                boundary.add(g)
                break
    return boundary


@dataclass
class FolnerReport:
    group: str
    family: str
    sets_examined: int
    best_set_size: int
    best_ratio: Fraction
    epsilon_hat: Fraction
    kappa_hat: Fraction | None
    verdict: str
    series: list = field(default_factory=list)   # (set size, ratio) pairs

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "family": self.family,
            "sets_examined": self.sets_examined,
            "best_set_size": self.best_set_size,
            "best_ratio": frac_str(self.best_ratio),
            "epsilon_hat": frac_str(self.epsilon_hat),
            "kappa_hat": frac_str(self.kappa_hat) if self.kappa_hat is not None else None,
            "verdict": self.verdict,
            "series": [[size, frac_str(ratio)] for size, ratio in self.series],
        }

    def csv_rows(self):
        yield ("set_size", "ratio")
        for size, ratio in self.series:
            yield (size, frac_str(ratio))


def parse_family(spec: str):
    """Parse ``"balls:6"``, ``"boxes:20"`` or ``"connected:10"``."""
    name, _, arg = spec.partition(":")
    name = name.strip()
    if name not in ("balls", "boxes", "connected"):
        raise SpecParseError(f"unknown family {spec!r}")
    try:
        limit = int(arg)
    except ValueError:
        raise SpecParseError(f"family {spec!r} needs an integer limit") from None
    if limit < 1:
        raise SpecParseError(f"family limit must be >= 1 in {spec!r}")
    return name, limit


def folner_sweep(
    oracle: GroupOracle,
    family: str,
    threshold: Fraction = DEFAULT_VANISHING_THRESHOLD,
    budget: int = DEFAULT_BALL_BUDGET,
) -> FolnerReport:
    name, limit = parse_family(family)
    if name == "balls":
        series, sets_examined = _ball_series(oracle, limit, budget)
        exhaustive = False
    elif name == "boxes":
        if not isinstance(oracle, FreeAbelianOracle):
            raise SpecParseError("the box family is defined for free abelian groups")
        series, sets_examined = _box_series(oracle, limit)
        exhaustive = False
    else:
        if limit > MAX_EXHAUSTIVE_SIZE:
            raise BudgetError(
                f"exhaustive connected family capped at size {MAX_EXHAUSTIVE_SIZE}",
            )
        series, sets_examined = _connected_series(oracle, limit, budget)
        exhaustive = True

    best_size, best_ratio = min(series, key=lambda item: (item[1], item[0]))
    epsilon_hat = best_ratio
    kappa_hat = 1 / epsilon_hat if epsilon_hat > 0 else None
    if exhaustive:
        verdict = "ratio-bounded-below" if epsilon_hat > 0 else "ratio-vanishing"
    elif epsilon_hat < threshold:
        verdict = "ratio-vanishing"
    else:
        verdict = "inconclusive"
    return FolnerReport(
        group=oracle.name,
        family=family,
        sets_examined=sets_examined,
        best_set_size=best_size,
        best_ratio=best_ratio,
        epsilon_hat=epsilon_hat,
        kappa_hat=kappa_hat,
        verdict=verdict,
        series=series,
    )


def _ball_series(oracle, radius_max, budget):
    elements = ball(oracle, radius_max, budget=budget)
    series = []
    for r in range(radius_max + 1):
        members = [g for g, d in elements if d <= r]
        boundary = folner_boundary(oracle, members)
        series.append((len(members), Fraction(len(boundary), len(members))))
    return series, radius_max + 1


def _box_series(oracle, n_max):
    rank = oracle.generator_count
    series = []
    for n in range(1, n_max + 1):
        members = set(_box_elements(rank, n))
        boundary = folner_boundary(oracle, members)
        series.append((len(members), Fraction(len(boundary), len(members))))
    return series, n_max


def _box_elements(rank, n):
    if rank == 1:
        return [(c,) for c in range(n)]
    tails = _box_elements(rank - 1, n)
    return [(c,) + t for c in range(n) for t in tails]


def _connected_series(oracle, size_max, budget):
    """Exhaustive minimum boundary ratio over connected sets containing 1.

    Boundary ratios are invariant under left translation, so every
    connected set is represented by a translate through the identity.
    Enumeration uses the exclusive-neighbor scheme: a connected set is
    grown one Cayley-neighbor at a time, and each extension may only add
    vertices that were not already eligible, so every connected set
    appears exactly once.  The boundary count is maintained incrementally.
    """
    if size_max < 1:
        raise SpecParseError("size_max must be >= 1")
    elements = ball(oracle, size_max - 1, budget=budget)
    index_of = {g: i for i, (g, _) in enumerate(elements)}
    n = len(elements)
    m = oracle.generator_count

    # graph adjacency (both directions) and one-directional boundary tests
    neighbors = [[] for _ in range(n)]
    test_nbrs = [[] for _ in range(n)]      # indices of g s_i^-1, -1 if outside
    rev_test = [[] for _ in range(n)]       # vertices whose test points here
    for i, (g, _) in enumerate(elements):
        for gen in range(1, m + 1):
            for letter in (gen, -gen):
                h = oracle.multiply(g, oracle.letter(letter))
                j = index_of.get(h)
                if j is not None and j != i:
                    neighbors[i].append(j)
            inv = index_of.get(oracle.multiply(g, oracle.letter(-gen)), -1)
            test_nbrs[i].append(inv)
            if inv >= 0 and inv != i:
                rev_test[inv].append(i)
    neighbors = [sorted(set(ns)) for ns in neighbors]

    in_set = [False] * n
    missing = [0] * n        # per member: how many of its test points are absent
    state = {"interior": 0, "count": 0}
    best_boundary_by_size: dict = {}

    def add(v):
        in_set[v] = True
        miss = 0
        for t in test_nbrs[v]:
            if t == -1 or not in_set[t]:
                miss += 1
        missing[v] = miss
        if miss == 0:
            state["interior"] += 1
        for w in rev_test[v]:
            if in_set[w]:
                missing[w] -= 1
                if missing[w] == 0:
                    state["interior"] += 1

    def remove(v):
        if missing[v] == 0:
            state["interior"] -= 1
        for w in rev_test[v]:
            if in_set[w]:
                if missing[w] == 0:
                    state["interior"] -= 1
                missing[w] += 1
        in_set[v] = False

    current: list = []

    def emit():
        state["count"] += 1
        size = len(current)
        boundary = size - state["interior"]
        if size not in best_boundary_by_size or boundary < best_boundary_by_size[size]:
            best_boundary_by_size[size] = boundary

    def extend(extension):
        emit()
        if len(current) == size_max:
            return
        ext = list(extension)
        while ext:
            v = ext.pop()
            exclusive = [
                u
                for u in neighbors[v]
                if not in_set[u]
                and u != v
                and not any(in_set[w] for w in neighbors[u])
            ]
            current.append(v)
            add(v)
            extend(ext + [u for u in exclusive if u not in ext])
            remove(v)
            current.pop()

    root = index_of[oracle.identity()]
    current.append(root)
    add(root)
    extend(sorted(neighbors[root], reverse=True))
    remove(root)
    current.pop()

    series = [
        (size, Fraction(best_boundary_by_size[size], size))
        for size in sorted(best_boundary_by_size)
    ]
    return series, state["count"]


def boundary_differential(
    element: GroupRingElement, coefficients=None
) -> list:
    """The entries (d - d r_i s_i) of the one-step differential applied to d."""
    ring = element.ring
    group = element.group
    if coefficients is None:
        coefficients = [ring.one] * group.generator_count
    entries = []
    for i in range(1, group.generator_count + 1):
        shift = GroupRingElement.monomial(
            ring, group, group.generator(i), coefficients[i - 1]
        )
        entries.append(element - element * shift)
    return entries


def verify_filling_bound(
    oracle: GroupOracle,
    ring: Ring,
    samples: int,
    support_radius: int,
    epsilon_hat: Fraction,
    rng,
    coefficients=None,
    max_support_size: int = 12,
    budget: int = DEFAULT_BALL_BUDGET,
) -> dict:
    """Sample chains d and test |d| <= (1/epsilon)|boundary(d)|.

    Also checks the support-inclusion step the bound rests on: every
    boundary element of supp(d) appears in the support of some entry of
    the differential.  A norm violation refutes epsilon for this family of
    supports, not the inclusion property, so both counts are reported.
    """
    elements = [g for g, _ in ball(oracle, support_radius, budget=budget)]
    norm_violations = []
    inclusion_failures = []
    for trial in range(samples):
        size = rng.randint(0, min(len(elements), max_support_size))
        support = rng.sample(elements, size)
        d = GroupRingElement(
            ring,
            oracle,
            [(g, ring.sample(rng, nonzero=True)) for g in support],
        )
        entries = boundary_differential(d, coefficients)
        gamma_norm = sum(entry.support_norm() for entry in entries)
        boundary = folner_boundary(oracle, d.support())
        covered = set()
        for entry in entries:
            covered |= entry.support()
        if not boundary <= covered:
            inclusion_failures.append(trial)
        if epsilon_hat * d.support_norm() > gamma_norm:
            norm_violations.append(trial)
    return {
        "samples": samples,
        "support_radius": support_radius,
        "epsilon_hat": frac_str(epsilon_hat),
        "norm_violations": norm_violations,
        "inclusion_failures": inclusion_failures,
    }
