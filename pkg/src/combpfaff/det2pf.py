"""Turning a determinant relation into a Pfaffian relation.

A :class:`MinorFamily` is a table ``C1[a, b]`` over an index set A and a
finite ordered set B.  Its k-point function ``ctilde_k(a, b)`` is *defined*
as the determinant of the selected k x k minor, and
``rtilde_k(a) = sum of ctilde_k(a, b) over b_1 < ... < b_k in B``.
For even k, ``rtilde_k(a)`` equals the Pfaffian of the k x k skew matrix with
entries ``rtilde_2(a_i, a_j)``; ``pfaffian_principle_check`` verifies it.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import IndexOutOfFamily
from .linalg import RingMatrix, SkewMatrix, determinant, pfaffian_matchings, pfaffian_recursive
from .report import SubCheck, VerificationReport, sub_check, timed
from .ring import RationalFunction, as_ratfun


class MinorFamily:
    def __init__(self, a_index, b_index, table):
        self.a_index = list(a_index)
        self.b_index = list(b_index)
        if len(set(self.b_index)) != len(self.b_index):
            raise ValueError("B must not contain duplicates")
        self._bpos = {b: i for i, b in enumerate(self.b_index)}
        self.table = {}
        for a in self.a_index:
            for b in self.b_index:
                self.table[a, b] = as_ratfun(table.get((a, b), 0))

    @classmethod
    def from_rows(cls, rows, a_index=None, b_index=None):
        a_index = list(a_index) if a_index is not None else list(range(len(rows)))
        b_index = list(b_index) if b_index is not None else list(range(len(rows[0]) if rows else 0))
        table = {(a, b): rows[i][j] for i, a in enumerate(a_index) for j, b in enumerate(b_index)}
        return cls(a_index, b_index, table)

    def c1(self, a, b):
        try:
            return self.table[a, b]
        except KeyError:
            raise IndexOutOfFamily(f"({a!r}, {b!r}) is not in the family") from None

    def matrix(self, a, b):
        return RingMatrix([[self.c1(x, y) for y in b] for x in a], list(a), list(b))

    def __repr__(self):
        return f"MinorFamily({len(self.a_index)}x{len(self.b_index)})"


def ctilde_k(fam, a, b):
    """Determinant of the minor with rows a and columns b (1 when k = 0)."""
    if len(a) != len(b):
        raise ValueError("tuples differ in length")
    return determinant(fam.matrix(a, b))


def rtilde_k(fam, a):
    """Sum of ctilde_k(a, b) over strictly increasing b in B; 0 when k > |B|."""
    k = len(a)
    for x in a:
        if x not in fam.a_index:
            raise IndexOutOfFamily(f"{x!r} is not in the family's A index")
    total = RationalFunction.zero()
    for bt in combinations(fam.b_index, k):
        total = total + ctilde_k(fam, a, bt)
    return total


def rtilde2_matrix(fam, a):
    k = len(a)
    return SkewMatrix(k, {(i, j): rtilde_k(fam, (a[i], a[j])) for i in range(k) for j in range(i + 1, k)})


def pfaffian_principle_check(fam, a):
    a = tuple(a)
    if len(a) % 2:
        raise ValueError("the Pfaffian relation is stated for even k only")
    with timed() as t:
        lhs = rtilde_k(fam, a)
        rhs = pfaffian_matchings(rtilde2_matrix(fam, a))
    return VerificationReport.compare("det2pf", {"a": list(a), "B": fam.b_index}, lhs, rhs,
                                      seconds=t["seconds"])


def order_matrix(n):
    """Skew matrix with +1 above the diagonal and -1 below."""
    return SkewMatrix.all_ones(n)


def dmd_construction(fam, a):
    """D M D^T with D[i, b] = C1(a_i, b) and M the order sign matrix on B."""
    a = tuple(a)
    k = len(a)
    B = fam.b_index
    D = fam.matrix(a, B)
    if not B:
        zero = RationalFunction.zero()
        return RingMatrix([[zero] * k for _ in range(k)], list(range(k)), list(range(k)))
    M = order_matrix(len(B)).to_matrix()
    M = RingMatrix(M.entries, B, B)
    out = D @ M @ D.transpose()
    return RingMatrix(out.entries, list(range(k)), list(range(k)))


def minor_summation_check(d, m):
    """Pf(D M D^T) against the sum over column subsets J of Pf(M_J) det(D_J)."""
    rows = d.entries if isinstance(d, RingMatrix) else [[as_ratfun(x) for x in r] for r in d]
    k = len(rows)
    if k % 2:
        raise ValueError("row count of D must be even")
    if not isinstance(m, SkewMatrix):
        m = SkewMatrix.from_matrix(m)
    mm = m.n
    if k > mm:
        raise ValueError("D has more rows than M has columns")
    with timed() as t:
        D = RingMatrix(rows)
        prod = D @ m.to_matrix() @ D.transpose()
        lhs = pfaffian_recursive(prod.entries)
        rhs = RationalFunction.zero()
        for J in combinations(range(mm), k):
            pf_j = pfaffian_matchings(m.principal(J))
            if not pf_j:
                continue
            rhs = rhs + pf_j * determinant([[rows[i][j] for j in J] for i in range(k)])
    return VerificationReport.compare("minor-summation", {"k": k, "m": mm}, lhs, rhs,
                                      seconds=t["seconds"])


def allones_pfaffian(n):
    return pfaffian_recursive(SkewMatrix.all_ones(n))


def dmd_check(fam, a):
    """Entries of D M D^T are rtilde_2 and its Pfaffian is rtilde_k."""
    a = tuple(a)
    with timed() as t:
        dmd = dmd_construction(fam, a)
        k = len(a)
        details = []
        for i in range(k):
            for j in range(i + 1, k):
                details.append(sub_check(f"(DMD^T)[{i},{j}] = rtilde_2", dmd.entries[i][j],
                                         rtilde_k(fam, (a[i], a[j]))))
        skew_ok = all((dmd.entries[i][j] + dmd.entries[j][i]) == 0 for i in range(k) for j in range(k))
        details.append(SubCheck("skew-symmetric", str(skew_ok), "True", skew_ok))
        lhs = pfaffian_matchings(dmd.entries)
        rhs = rtilde_k(fam, a)
    return VerificationReport.compare("dmd", {"a": list(a)}, lhs, rhs, details, seconds=t["seconds"])


def random_integer_family(rng, n_a, n_b, bound=9):
    """Integer table with entries in [-bound, bound] drawn from a numpy Generator."""
    vals = rng.integers(-bound, bound + 1, size=(n_a, n_b))
    return MinorFamily.from_rows([[int(v) for v in row] for row in vals])


def random_skew(rng, m, bound=9):
    vals = rng.integers(-bound, bound + 1, size=m * (m - 1) // 2)
    return SkewMatrix.from_upper_list(m, [int(v) for v in vals])


def random_integer_matrix(rng, k, m, bound=9):
    return [[int(v) for v in row] for row in rng.integers(-bound, bound + 1, size=(k, m))]


def det2pf_random_check(seed, rows=4, cols=6, k=4):
    """Seeded instance: a random rows x cols table and a = the first k row indices."""
    rng = np.random.default_rng(seed)
    fam = random_integer_family(rng, rows, cols)
    report = pfaffian_principle_check(fam, tuple(range(k)))
    report.inputs.update({"seed": seed, "rows": rows, "cols": cols, "k": k})
    return report
