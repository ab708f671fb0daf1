"""Coefficient rings with involution, and the group ring RG.

Walks through the four exact rings, the star involution, support norms,
and matrix norms over the group ring of a free group.
"""

from pdfill import (
    INTEGERS,
    QUATERNIONS,
    GroupRingElement,
    GroupRingMatrix,
    free_group,
    residue_ring,
)


def main():
    print("== exact rings ==")
    z4 = residue_ring(4)
    print("in Z/4:  3 + 3 =", (z4.value(3) + z4.value(3)).format())
    print("in Z/4:  2 * 2 =", (z4.value(2) * z4.value(2)).format())

    i = QUATERNIONS.value((0, 1, 0, 0))
    j = QUATERNIONS.value((0, 0, 1, 0))
    print("quaternions:  i*j =", (i * j).format(), "  j*i =", (j * i).format())
    print("conjugation:  (1+i)* =", QUATERNIONS.value((1, 1, 0, 0)).star().format())

    print()
    print("== the group ring of the free group F2 ==")
    f2 = free_group(2)
    one = GroupRingElement.one(INTEGERS, f2)
    a = GroupRingElement.monomial(INTEGERS, f2, f2.generator(1))
    b = GroupRingElement.monomial(INTEGERS, f2, f2.generator(2))

    x = (one - a) * (one + a)
    print("(1 - a)(1 + a) =", x.format())
    print("support norm of 1 + a + 2b:", (one + a + b.scale(INTEGERS.value(2))).support_norm())

    y = one - a
    print("star of 1 - a:", y.involute().format())
    print("star twice returns the element:", y.involute().involute() == y)

    print()
    print("== matrices over RG ==")
    column = GroupRingMatrix.column([one - a, one - b])
    print("norm of the column (1-a, 1-b):", column.support_norm())
    row = column.conjugate_transpose()
    print("conjugate transpose:", row.format())
    print("dagger twice returns the matrix:", row.conjugate_transpose() == column)


if __name__ == "__main__":
    main()
