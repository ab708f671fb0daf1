"""Finitely generated groups behind a uniform oracle.

Every oracle keeps its elements in a canonical (hashable, totally ordered)
form, so equality is ``==`` and deduplication is dict membership:

* free groups: freely reduced words,
* free abelian groups: integer exponent vectors,
* the two flat one-relator groups (``Klein`` and ``T11b:2``): pairs (m, n)
  in the twisted-pair normal form a^m b^n with b a b^-1 = a^-1,
* hyperbolic surface-type one-relator presentations: the shortlex-least
  geodesic word, reached by Dehn reduction followed by a closure over
  length-preserving half-relator swaps,
* finite groups: the row index of an explicit multiplication table.

Dehn reduction is valid for the presentations we instantiate it on: one
relator whose cyclic conjugates (and their inverses) overlap in single
letters only, of length at least 6, so every nontrivial word representing
the identity contains more than half of a relator conjugate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BudgetError, GroupMismatchError, SpecParseError
from .words import (
    Word,
    commutator_word,
    free_reduce,
    gen_name,
    invert_word,
    shortlex_key,
    word_from_string,
    word_to_string,
)

DEFAULT_BALL_BUDGET = 200_000


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator count plus freely reduced relators."""

    generator_count: int
    relators: tuple

    def __post_init__(self):
        if self.generator_count < 1:
            raise SpecParseError("need at least one generator")
        for rel in self.relators:
            if not rel:
                raise SpecParseError("relators must be nonempty")
            if free_reduce(rel) != tuple(rel):
                raise SpecParseError(f"relator {rel!r} is not freely reduced")
            for letter in rel:
                if not 1 <= abs(letter) <= self.generator_count:
                    raise SpecParseError(f"letter {letter} out of range in {rel!r}")

    def relator_strings(self):
        return [word_to_string(rel) for rel in self.relators]


class GroupOracle:
    """Multiply / invert / identity-test bundle for one group.

    Elements are canonical hashable values specific to the subclass; two
    elements are equal in the group iff their representations are ``==``.
    """

    name: str
    generator_count: int
    presentation: Presentation | None

    def identity(self):
        raise NotImplementedError

    def generator(self, index: int):
        """The image of the index-th generator (1-based)."""
        return self.letter(index)

    def letter(self, letter: int):
        """The image of a signed letter: ``-i`` gives the inverse generator."""
        raise NotImplementedError

    def multiply(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def is_identity(self, g) -> bool:
        return g == self.identity()

    def equal(self, g, h) -> bool:
        return g == h

    def as_word(self, g) -> Word:
        """Some word in the generators evaluating to g."""
        raise NotImplementedError

    def word_length(self, g) -> int:
        """Distance from the identity in the word metric of the generators."""
        return len(self.as_word(g))

    def evaluate(self, word) -> object:
        out = self.identity()
        for letter in word:
            out = self.multiply(out, self.letter(letter))
        return out

    def sort_key(self, g):
        return g

    def element_string(self, g) -> str:
        return word_to_string(self.as_word(g))

    def check_same(self, other: "GroupOracle"):
        if other is not self:
            raise GroupMismatchError(
                f"elements of {self.name} combined with {getattr(other, 'name', other)!r}"
            )

    def distance(self, g, h) -> int:
        return self.word_length(self.multiply(self.invert(g), h))

    def __repr__(self):
        return f"<group {self.name}>"


class FreeGroupOracle(GroupOracle):
    def __init__(self, rank: int, name: str | None = None):
        if rank < 1:
            raise SpecParseError("free group rank must be >= 1")
        self.generator_count = rank
        self.name = name or f"F{rank}"
        self.presentation = Presentation(rank, ())

    def identity(self):
        return ()

    def letter(self, letter):
        if not 1 <= abs(letter) <= self.generator_count:
            raise SpecParseError(f"letter {letter} out of range")
        return (letter,)

    def multiply(self, g, h):
        return free_reduce(g + h)

    def invert(self, g):
        return invert_word(g)

    def as_word(self, g):
        return g

    def word_length(self, g):
        return len(g)

    def sort_key(self, g):
        return shortlex_key(g)


class FreeAbelianOracle(GroupOracle):
    def __init__(self, rank: int, name: str | None = None,
                 presentation: Presentation | None = None):
        if rank < 1:
            raise SpecParseError("free abelian rank must be >= 1")
        self.generator_count = rank
        self.name = name or f"Z^{rank}"
        if presentation is None:
            relators = tuple(
                commutator_word(i, j)
                for i in range(1, rank + 1)
                for j in range(i + 1, rank + 1)
            )
            presentation = Presentation(rank, relators)
        self.presentation = presentation

    def identity(self):
        return (0,) * self.generator_count

    def letter(self, letter):
        index = abs(letter)
        if not 1 <= index <= self.generator_count:
            raise SpecParseError(f"letter {letter} out of range")
        vec = [0] * self.generator_count
        vec[index - 1] = 1 if letter > 0 else -1
        return tuple(vec)

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def as_word(self, g):
        letters = []
        for index, exponent in enumerate(g, start=1):
            sign = 1 if exponent > 0 else -1
            letters.extend([sign * index] * abs(exponent))
        return tuple(letters)

    def word_length(self, g):
        return sum(abs(a) for a in g)


class TwistedPairOracle(GroupOracle):
    """The group with normal form a^m b^n and b a b^-1 = a^-1.

    Elements are pairs (m, n) with product
    ``(m1, n1) (m2, n2) = (m1 + (-1)^n1 m2, n1 + n2)``.  Generators of the
    hosted presentation are given as explicit pairs, so the same model
    serves both the ``a b a b^-1`` and the ``a^2 b^2`` presentations of
    the flat non-orientable group.
    """

    def __init__(self, name, presentation, generator_images):
        self.name = name
        self.presentation = presentation
        self.generator_count = presentation.generator_count
        self._images = tuple(generator_images)
        for rel in presentation.relators:
            if not self.is_identity(self.evaluate(rel)):
                raise SpecParseError(f"generator images break relator {rel!r}")

    def identity(self):
        return (0, 0)

    def letter(self, letter):
        image = self._images[abs(letter) - 1]
        return image if letter > 0 else self.invert(image)

    def multiply(self, g, h):
        m1, n1 = g
        m2, n2 = h
        sign = 1 if n1 % 2 == 0 else -1
        return (m1 + sign * m2, n1 + n2)

    def invert(self, g):
        m, n = g
        sign = 1 if n % 2 == 0 else -1
        return (-sign * m, -n)

    def _pair_word(self, g) -> Word:
        # a^m b^n in the normal-form generators a = (1,0), b = (0,1)
        m, n = g
        word = [(1 if m > 0 else -1)] * abs(m) + [(2 if n > 0 else -2)] * abs(n)
        return tuple(word)

    def as_word(self, g):
        return self._pair_word(g)

    def word_length(self, g):
        return abs(g[0]) + abs(g[1])


class SquaresPairOracle(TwistedPairOracle):
    """Same model, presented as <g1, g2 | g1^2 g2^2> via g1 = ab, g2 = b^-1."""

    def __init__(self, name, presentation, generator_images):
        super().__init__(name, presentation, generator_images)
        self._dist = {self.identity(): 0}
        self._dist_frontier = [self.identity()]
        self._dist_radius = 0

    def as_word(self, g):
        m, n = g
        word = []
        word.extend([1, 2] * m if m >= 0 else [-2, -1] * (-m))
        word.extend([-2] * n if n >= 0 else [2] * (-n))
        return tuple(word)

    def word_length(self, g):
        # the squares generators couple the two coordinates, so the metric
        # is not |m| + |n|; grow a breadth-first distance table on demand
        while g not in self._dist:
            self._dist_radius += 1
            nxt = []
            for h in self._dist_frontier:
                for index in (1, 2):
                    for letter in (index, -index):
                        product = self.multiply(h, self.letter(letter))
                        if product not in self._dist:
                            self._dist[product] = self._dist_radius
                            nxt.append(product)
            self._dist_frontier = nxt
        return self._dist[g]


class DehnOracle(GroupOracle):
    """Word problem by Dehn reduction, canonical form by half-swap closure.

    Elements are geodesic words in shortlex-least form.  Reduction replaces
    any subword that covers more than half of a relator conjugate with the
    shorter complement; the closure then walks all length-preserving
    half-for-half swaps and keeps the shortlex-least geodesic.
    """

    def __init__(self, name, presentation):
        self.name = name
        self.presentation = presentation
        self.generator_count = presentation.generator_count
        for rel in presentation.relators:
            if len(rel) < 6 or len(rel) % 2:
                raise SpecParseError(
                    f"Dehn oracle needs even relator length >= 6, got {rel!r}"
                )
        # all cyclic conjugates of every relator and its inverse
        rotations = []
        for rel in presentation.relators:
            for base in (tuple(rel), invert_word(rel)):
                for shift in range(len(base)):
                    rotations.append(base[shift:] + base[:shift])
        self._rotations = tuple(dict.fromkeys(rotations))
        self._half = {rot: len(rot) // 2 for rot in self._rotations}
        # probe tables: a subword of length half (or half+1) pins down the
        # rotations it can start, so reduction scans are dict lookups
        self._shorten_probe: dict = {}
        self._swap_probe: dict = {}
        self._shorten_lengths = sorted({h + 1 for h in self._half.values()})
        self._swap_lengths = sorted(set(self._half.values()))
        for rot in self._rotations:
            half = self._half[rot]
            self._shorten_probe.setdefault(rot[: half + 1], []).append(rot)
            self._swap_probe.setdefault(rot[:half], []).append(rot)
        self._canonical_cache: dict = {}

    def identity(self):
        return ()

    def letter(self, letter):
        if not 1 <= abs(letter) <= self.generator_count:
            raise SpecParseError(f"letter {letter} out of range")
        return (letter,)

    def multiply(self, g, h):
        return self.canonical(g + h)

    def invert(self, g):
        return self.canonical(invert_word(g))

    def is_identity(self, g):
        return g == ()

    def as_word(self, g):
        return g

    def word_length(self, g):
        return len(g)

    def sort_key(self, g):
        return shortlex_key(g)

    def _match_length(self, word, start, rotation):
        length = 0
        limit = min(len(word) - start, len(rotation))
        while length < limit and word[start + length] == rotation[length]:
            length += 1
        return length

    def _find_shortening(self, word):
        """A (start, rotation, matched) triple covering more than half, or None."""
        n = len(word)
        for start in range(n):
            for probe_len in self._shorten_lengths:
                if start + probe_len > n:
                    continue
                for rotation in self._shorten_probe.get(
                    word[start : start + probe_len], ()
                ):
                    matched = self._match_length(word, start, rotation)
                    if matched > self._half[rotation]:
                        return start, rotation, matched
        return None

    def _dehn_reduce(self, word):
        word = free_reduce(word)
        while True:
            hit = self._find_shortening(word)
            if hit is None:
                return word
            start, rotation, matched = hit
            complement = invert_word(rotation[matched:])
            word = free_reduce(word[:start] + complement + word[start + matched:])

    def canonical(self, word) -> Word:
        word = free_reduce(word)
        cached = self._canonical_cache.get(word)
        if cached is not None:
            return cached
        geodesic = self._dehn_reduce(word)
        seen = {geodesic}
        queue = [geodesic]
        while queue:
            current = queue.pop()
            n = len(current)
            for start in range(n):
                for half in self._swap_lengths:
                    if start + half > n:
                        continue
                    for rotation in self._swap_probe.get(
                        current[start : start + half], ()
                    ):
                        swapped = free_reduce(
                            current[:start]
                            + invert_word(rotation[half:])
                            + current[start + half:]
                        )
                        if len(swapped) < len(current):
                            # the geodesic assumption failed; restart shorter
                            result = self.canonical(swapped)
                            self._canonical_cache[word] = result
                            return result
                        if swapped not in seen:
                            seen.add(swapped)
                            queue.append(swapped)
        result = min(seen, key=shortlex_key)
        for member in seen:
            self._canonical_cache[member] = result
        self._canonical_cache[word] = result
        return result


class FiniteTableOracle(GroupOracle):
    """A finite group given by its full multiplication table."""

    def __init__(self, table, generators=None, name: str | None = None):
        order = len(table)
        for row in table:
            if len(row) != order or sorted(row) != list(range(order)):
                raise SpecParseError("multiplication table rows must be permutations")
        identity = None
        for e in range(order):
            if all(table[e][x] == x and table[x][e] == x for x in range(order)):
                identity = e
                break
        if identity is None:
            raise SpecParseError("table has no identity element")
        inverses = [None] * order
        for g in range(order):
            for h in range(order):
                if table[g][h] == identity:
                    inverses[g] = h
            if inverses[g] is None or table[inverses[g]][g] != identity:
                raise SpecParseError("table has a non-invertible element")
        for g in range(order):
            for h in range(order):
                for k in range(order):
                    if table[table[g][h]][k] != table[g][table[h][k]]:
                        raise SpecParseError("table is not associative")
        self._table = [tuple(row) for row in table]
        self._identity = identity
        self._inverses = inverses
        if generators is None:
            generators = [g for g in range(order) if g != identity]
        self._generators = list(generators)
        self.generator_count = len(self._generators)
        self.name = name or f"table{order}"
        self.presentation = None
        self._words: dict[int, Word] | None = None

    def identity(self):
        return self._identity

    def letter(self, letter):
        g = self._generators[abs(letter) - 1]
        return g if letter > 0 else self._inverses[g]

    def multiply(self, g, h):
        return self._table[g][h]

    def invert(self, g):
        return self._inverses[g]

    def as_word(self, g):
        if self._words is None:
            words = {self._identity: ()}
            frontier = [self._identity]
            while frontier:
                nxt = []
                for h in frontier:
                    for index in range(1, self.generator_count + 1):
                        for letter in (index, -index):
                            product = self.multiply(h, self.letter(letter))
                            if product not in words:
                                words[product] = words[h] + (letter,)
                                nxt.append(product)
                frontier = nxt
            self._words = words
        if g not in self._words:
            raise GroupMismatchError("element not generated by the chosen generators")
        return self._words[g]

    def word_length(self, g):
        return len(self.as_word(g))


def ball(oracle: GroupOracle, radius: int, budget: int = DEFAULT_BALL_BUDGET):
    """All elements of word length <= radius, as (element, distance) pairs.

    Spheres are sorted by the oracle's canonical key, so the output order
    is deterministic.  Raises ``BudgetError`` naming the last completed
    radius if the ball outgrows the budget.
    """
    if radius < 0:
        raise SpecParseError("radius must be >= 0")
    seen = {oracle.identity(): 0}
    out = [(oracle.identity(), 0)]
    sphere = [oracle.identity()]
    for r in range(1, radius + 1):
        nxt = []
        for g in sphere:
            for index in range(1, oracle.generator_count + 1):
                for letter in (index, -index):
                    h = oracle.multiply(g, oracle.letter(letter))
                    if h not in seen:
                        seen[h] = r
                        nxt.append(h)
                        if len(seen) > budget:
                            raise BudgetError(
                                f"ball of {oracle.name} exceeded budget {budget} "
                                f"at radius {r} (previous radius {r - 1} complete)",
                                attained_radius=r - 1,
                            )
        nxt.sort(key=oracle.sort_key)
        out.extend((g, r) for g in nxt)
        sphere = nxt
    return out


def surface_relator(genus: int) -> Word:
    word = []
    for i in range(genus):
        word.extend(commutator_word(2 * i + 1, 2 * i + 2))
    return tuple(word)


def nonorientable_relator(genus: int) -> Word:
    word = []
    for i in range(1, genus + 1):
        word.extend([i, i])
    return tuple(word)


def free_group(rank: int) -> GroupOracle:
    return FreeGroupOracle(rank)


def free_abelian(rank: int) -> GroupOracle:
    return FreeAbelianOracle(rank)


def surface_group(genus: int) -> GroupOracle:
    """Closed orientable surface group; genus >= 2 (use Z^2 or Klein when flat)."""
    if genus < 2:
        raise SpecParseError(
            "surface(genus) needs genus >= 2; use free_abelian(2) or "
            "klein_bottle() for the flat cases"
        )
    presentation = Presentation(2 * genus, (surface_relator(genus),))
    return DehnOracle(f"Sigma{genus}", presentation)


def klein_bottle() -> GroupOracle:
    presentation = Presentation(2, (word_from_string("a*b*a*b^-1"),))
    return TwistedPairOracle("Klein", presentation, [(1, 0), (0, 1)])


def orientable_type(genus: int) -> GroupOracle:
    """<g1..g2n | prod [g(2i-1), g(2i)]> for n >= 1."""
    if genus < 1:
        raise SpecParseError("orientable type needs genus >= 1")
    presentation = Presentation(2 * genus, (surface_relator(genus),))
    if genus == 1:
        return FreeAbelianOracle(2, name="T11a:1", presentation=presentation)
    oracle = DehnOracle(f"T11a:{genus}", presentation)
    return oracle


def nonorientable_type(genus: int) -> GroupOracle:
    """<g1..gn | g1^2 ... gn^2> for n >= 2."""
    if genus < 2:
        raise SpecParseError("non-orientable type needs genus >= 2")
    presentation = Presentation(genus, (nonorientable_relator(genus),))
    if genus == 2:
        # flat case: embed into the twisted-pair model via g1 = ab, g2 = b^-1
        return SquaresPairOracle("T11b:2", presentation, [(1, 1), (0, -1)])
    return DehnOracle(f"T11b:{genus}", presentation)


def finite_table(table, generators=None, name=None) -> GroupOracle:
    return FiniteTableOracle(table, generators, name)


def cyclic_table(order: int):
    return [[(i + j) % order for j in range(order)] for i in range(order)]


_GROUP_PATTERNS = (
    (re.compile(r"F(\d+)"), lambda m: free_group(int(m.group(1)))),
    (re.compile(r"Z\^(\d+)"), lambda m: free_abelian(int(m.group(1)))),
    (re.compile(r"Sigma(\d+)"), lambda m: surface_group(int(m.group(1)))),
    (re.compile(r"Klein"), lambda m: klein_bottle()),
    (re.compile(r"T11a:(\d+)"), lambda m: orientable_type(int(m.group(1)))),
    (re.compile(r"T11b:(\d+)"), lambda m: nonorientable_type(int(m.group(1)))),
)


def make_group(spec: str) -> GroupOracle:
    """Parse a group spec string: F2, Z^2, Sigma2, Klein, T11a:3, T11b:2."""
    spec = spec.strip()
    for pattern, builder in _GROUP_PATTERNS:
        m = pattern.fullmatch(spec)
        if m:
            return builder(m)
    raise SpecParseError(f"unknown group spec {spec!r}")


def builtin_group_specs():
    """The group specs exercised across the test-suite and the CLI docs."""
    return ["F2", "Z^2", "Sigma2", "Klein", "T11a:1", "T11a:2", "T11a:3",
            "T11b:2", "T11b:3", "T11b:4"]
