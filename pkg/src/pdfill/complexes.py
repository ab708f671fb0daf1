"""Finite free chain complexes over a group ring.

A complex stores the ranks of its levels and one matrix per differential,
with the double-boundary identity checked on construction.  The built-in
construction is the two-step complex of a presentation: level ranks
(1, generators, relators), first differential the column (1 - s_i),
second differential the Jacobian of free derivatives of the relators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, NotAFieldError, SpecParseError
from .group_ring import Character, GroupRingElement, GroupRingMatrix
from .groups import GroupOracle
from .rings import Ring, RingValue


@dataclass
class ChainComplex:
    """ranks[k] is the rank of level k; differentials[k-1] maps level k to k-1."""

    ring: Ring
    group: GroupOracle
    ranks: tuple
    differentials: tuple

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise SpecParseError("need one differential per adjacent pair of levels")
        for k, diff in enumerate(self.differentials, start=1):
            if diff.rows != self.ranks[k] or diff.cols != self.ranks[k - 1]:
                raise SpecParseError(
                    f"differential {k} has shape {diff.rows}x{diff.cols}, "
                    f"expected {self.ranks[k]}x{self.ranks[k - 1]}"
                )
        self.check_boundary_squares_to_zero()

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def differential(self, k: int) -> GroupRingMatrix:
        """The map from level k to level k-1."""
        return self.differentials[k - 1]

    def check_boundary_squares_to_zero(self):
        for k in range(2, self.top + 1):
            composite = self.differential(k) @ self.differential(k - 1)
            if not composite.is_zero():
                raise InvariantError(
                    f"double boundary is nonzero between levels {k} and {k - 2}"
                )

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def dualize(self) -> "ChainComplex":
        """Reverse the complex, conjugate-transposing every differential."""
        ranks = tuple(reversed(self.ranks))
        differentials = tuple(
            self.differential(self.top - j + 1).conjugate_transpose()
            for j in range(1, self.top + 1)
        )
        return ChainComplex(self.ring, self.group, ranks, differentials)

    def twist(self, character: Character) -> "ChainComplex":
        differentials = tuple(d.twist(character) for d in self.differentials)
        return ChainComplex(self.ring, self.group, self.ranks, differentials)

    def homology_dimensions(self, field: Ring) -> list:
        """Dimensions of homology after augmenting all entries to the field.

        Augmentation sends every group element to 1, so entries become
        field scalars; ranks are computed by exact elimination.
        """
        matrices = [
            _augmented_matrix(self.differential(k), field)
            for k in range(1, self.top + 1)
        ]
        boundary_rank = [0] * (self.top + 2)
        for k, matrix in enumerate(matrices, start=1):
            boundary_rank[k] = _exact_rank(matrix, field)
        dims = []
        for k in range(self.top + 1):
            kernel_dim = self.ranks[k] - boundary_rank[k]
            dims.append(kernel_dim - boundary_rank[k + 1])
        return dims

    def to_json_dict(self) -> dict:
        return {
            "group": self.group.name,
            "ring": self.ring.name,
            "ranks": list(self.ranks),
            "differentials": [d.format() for d in self.differentials],
        }


def fox_derivative(
    ring: Ring, group: GroupOracle, word, generator: int
) -> GroupRingElement:
    """The free derivative of a word with respect to one generator.

    Follows the product rule d(uv) = du + u.dv with d(s)/d(s) = 1 and
    d(s^-1)/d(s) = -s^-1, the prefixes evaluated in the group.
    """
    if not 1 <= generator <= group.generator_count:
        raise SpecParseError(f"generator {generator} out of range")
    terms = []
    prefix = group.identity()
    one = ring.one
    for letter in word:
        if abs(letter) > group.generator_count:
            raise SpecParseError(f"letter {letter} out of range in {word!r}")
        if letter > 0:
            if letter == generator:
                terms.append((prefix, one))
            prefix = group.multiply(prefix, group.letter(letter))
        else:
            prefix = group.multiply(prefix, group.letter(letter))
            if -letter == generator:
                terms.append((prefix, -one))
    return GroupRingElement(ring, group, terms)


def fox_derivatives_all(ring: Ring, group: GroupOracle, word) -> list:
    """All free derivatives of a word in one prefix walk, one per generator."""
    terms = [[] for _ in range(group.generator_count)]
    prefix = group.identity()
    one = ring.one
    for letter in word:
        if abs(letter) > group.generator_count:
            raise SpecParseError(f"letter {letter} out of range in {word!r}")
        if letter > 0:
            terms[letter - 1].append((prefix, one))
            prefix = group.multiply(prefix, group.letter(letter))
        else:
            prefix = group.multiply(prefix, group.letter(letter))
            terms[-letter - 1].append((prefix, -one))
    return [GroupRingElement(ring, group, t) for t in terms]


def fox_jacobian(ring: Ring, group: GroupOracle) -> GroupRingMatrix:
    """The relators-by-generators matrix of free derivatives."""
    presentation = group.presentation
    if presentation is None:
        raise SpecParseError(f"group {group.name} has no presentation")
    rows = [
        fox_derivatives_all(ring, group, relator)
        for relator in presentation.relators
    ]
    matrix = GroupRingMatrix.zero(
        ring, group, len(presentation.relators), presentation.generator_count
    )
    if rows:
        matrix = GroupRingMatrix(ring, group, rows)
    return matrix


def presentation_complex(group: GroupOracle, ring: Ring) -> ChainComplex:
    """Levels (1, generators, relators) with the standard differentials."""
    presentation = group.presentation
    if presentation is None:
        raise SpecParseError(f"group {group.name} has no presentation")
    m = presentation.generator_count
    one = GroupRingElement.one(ring, group)
    column = GroupRingMatrix.column(
        [
            one - GroupRingElement.monomial(ring, group, group.generator(i))
            for i in range(1, m + 1)
        ]
    )
    jacobian = fox_jacobian(ring, group)
    return ChainComplex(
        ring,
        group,
        (1, m, len(presentation.relators)),
        (column, jacobian),
    )


def _augment_to_field(value: RingValue, field: Ring) -> RingValue:
    src = value.ring
    if src == field:
        return value
    if src.kind == "Z":
        if field.kind == "Q":
            return field.value(Fraction(value.payload))
        if field.kind == "Zmod":
            return field.value(value.payload % field.modulus)
    if src.kind == "Q" and field.kind == "Q":
        return value
    if src.kind == "Zmod" and field.kind == "Zmod" and src.modulus == field.modulus:
        return value
    raise NotAFieldError(
        f"cannot view {src.name} coefficients inside the field {field.name}"
    )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_field(field: Ring):
    if field.kind == "Q":
        return
    if field.kind == "Zmod" and _is_prime(field.modulus):
        return
    raise NotAFieldError(f"{field.name} is not a supported field")


def _augmented_matrix(matrix: GroupRingMatrix, field: Ring):
    _check_field(field)
    return [
        [_augment_to_field(e.augmentation(), field) for e in row]
        for row in matrix.entries
    ]


def _exact_rank(rows, field: Ring) -> int:
    """Gaussian elimination over Q or a prime field, exactly."""
    if not rows or not rows[0]:
        return 0
    matrix = [[v.payload for v in row] for row in rows]
    n_rows, n_cols = len(matrix), len(matrix[0])
    modulus = field.modulus if field.kind == "Zmod" else None
    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row, n_rows):
            if matrix[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        inv = (
            pow(matrix[row][col], -1, modulus)
            if modulus
            else 1 / Fraction(matrix[row][col])
        )
        for r in range(row + 1, n_rows):
            factor = matrix[r][col]
            if factor == 0:
                continue
            if modulus:
                scale = (factor * inv) % modulus
                matrix[r] = [
                    (a - scale * b) % modulus
                    for a, b in zip(matrix[r], matrix[row])
                ]
            else:
                scale = factor * inv
                matrix[r] = [a - scale * b for a, b in zip(matrix[r], matrix[row])]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank
