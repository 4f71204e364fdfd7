"""Small dense matrices over the rational-function field.

Determinants use Laplace expansion memoised on column subsets, which costs
O(n 2^n) ring multiplications and never divides.  Pfaffians come in two
independent flavours: a sum over perfect matchings signed by crossing
parity, and the first-row recursive expansion.
"""

from __future__ import annotations

from itertools import permutations as _itertools_permutations

from .errors import MatrixTooLarge, NotSquare, Singular
from .ring import RationalFunction, as_ratfun

MAX_DET_SIZE = 12


def permutation_sign(perm):
    """(-1) ** (number of inversions) of a sequence of comparable items."""
    perm = list(perm)
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def permutations_with_sign(k):
    """Yield ``(sigma, sign)`` for every permutation of ``range(k)``."""
    for sigma in _itertools_permutations(range(k)):
        yield sigma, permutation_sign(sigma)


class RingMatrix:
    """Rectangular matrix with labelled rows and columns."""

    def __init__(self, entries, rows=None, cols=None):
        entries = [[as_ratfun(x) for x in row] for row in entries]
        nrows = len(entries)
        ncols = len(entries[0]) if entries else (len(cols) if cols is not None else 0)
        if any(len(r) != ncols for r in entries):
            raise ValueError("ragged matrix")
        self.rows = list(rows) if rows is not None else list(range(nrows))
        self.cols = list(cols) if cols is not None else list(range(ncols))
        if len(self.rows) != nrows or len(self.cols) != ncols:
            raise ValueError("label count does not match shape")
        self.entries = entries
        self._rpos = {r: i for i, r in enumerate(self.rows)}
        self._cpos = {c: j for j, c in enumerate(self.cols)}

    @classmethod
    def identity(cls, n, labels=None):
        one, zero = RationalFunction.one(), RationalFunction.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], labels, labels)

    @classmethod
    def from_function(cls, rows, cols, fn):
        return cls([[fn(r, c) for c in cols] for r in rows], rows, cols)

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def __getitem__(self, key):
        r, c = key
        return self.entries[self._rpos[r]][self._cpos[c]]

    def submatrix(self, rows, cols):
        return RingMatrix([[self[r, c] for c in cols] for r in rows], rows, cols)

    def transpose(self):
        return RingMatrix([list(col) for col in zip(*self.entries)] if self.entries else [],
                          self.cols, self.rows)

    def __matmul__(self, other):
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = RationalFunction.zero()
                for t in range(k):
                    a = self.entries[i][t]
                    if a:
                        b = other.entries[t][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RingMatrix(out, self.rows, other.cols)

    def __sub__(self, other):
        return RingMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
                          self.rows, self.cols)

    def __neg__(self):
        return RingMatrix([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def equals(self, other):
        if self.shape != other.shape:
            return False
        return all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    def is_symmetric(self):
        n, m = self.shape
        return n == m and all(self.entries[i][j] == self.entries[j][i]
                              for i in range(n) for j in range(i + 1, n))

    def __repr__(self):
        return f"RingMatrix({self.shape[0]}x{self.shape[1]})"


class SkewMatrix:
    """Skew-symmetric matrix stored by its strictly upper entries."""

    def __init__(self, n, upper, labels=None):
        self.n = n
        self.upper = {(i, j): as_ratfun(v) for (i, j), v in upper.items() if i < j}
        self.labels = list(labels) if labels is not None else list(range(n))

    @classmethod
    def from_upper_list(cls, n, values):
        """Upper entries listed row by row: (0,1), (0,2), ..., (1,2), ..."""
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if len(values) != len(pairs):
            raise ValueError(f"expected {len(pairs)} upper entries")
        return cls(n, dict(zip(pairs, values)))

    @classmethod
    def from_matrix(cls, m):
        rows = _rows(m)
        n = len(rows)
        for i in range(n):
            if rows[i][i]:
                raise ValueError("nonzero diagonal in skew matrix")
            for j in range(i + 1, n):
                if not (rows[i][j] + rows[j][i]) == 0:
                    raise ValueError("matrix is not skew-symmetric")
        return cls(n, {(i, j): rows[i][j] for i in range(n) for j in range(i + 1, n)})

    @classmethod
    def all_ones(cls, n):
        return cls(n, {(i, j): 1 for i in range(n) for j in range(i + 1, n)})

    def entry(self, i, j):
        if i == j:
            return RationalFunction.zero()
        if i < j:
            return self.upper.get((i, j), RationalFunction.zero())
        return -self.upper.get((j, i), RationalFunction.zero())

    def principal(self, idx):
        idx = list(idx)
        return SkewMatrix(len(idx), {(a, b): self.entry(idx[a], idx[b])
                                     for a in range(len(idx)) for b in range(a + 1, len(idx))})

    def to_matrix(self):
        return RingMatrix([[self.entry(i, j) for j in range(self.n)] for i in range(self.n)],
                          self.labels, self.labels)


def _rows(m):
    if isinstance(m, RingMatrix):
        return m.entries
    if isinstance(m, SkewMatrix):
        return m.to_matrix().entries
    return [list(r) for r in m]


def determinant(m, one=None):
    """Determinant by cofactor expansion memoised over column subsets."""
    rows = _rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"matrix is {n}x{len(rows[0]) if rows else 0}")
    if n > MAX_DET_SIZE:
        raise MatrixTooLarge(f"determinant limited to n <= {MAX_DET_SIZE}, got {n}")
    if n == 0:
        return RationalFunction.one() if one is None else one
    # table[S] = det of rows 0..|S|-1 restricted to the column set S (bitmask)
    table = {0: RationalFunction.one() if one is None else one}
    frontier = [0]
    for r in range(n):
        row = rows[r]
        nxt = {}
        for S in frontier:
            base = table[S]
            if not base:
                continue
            # expanding along the last row of the (r+1)x(r+1) minor
            for j in range(n):
                bit = 1 << j
                if S & bit or not row[j]:
                    continue
                T = S | bit
                above = bin(T >> (j + 1)).count("1")
                term = row[j] * base
                if above % 2:
                    term = -term
                nxt[T] = nxt[T] + term if T in nxt else term
        table = nxt
        frontier = list(nxt)
    full = (1 << n) - 1
    if full in table:
        return table[full]
    return RationalFunction.zero() if one is None else one * 0


def leibniz_determinant(m):
    """Sum over all permutations; an independent oracle for small n."""
    rows = _rows(m)
    n = len(rows)
    total = RationalFunction.zero()
    for sigma, sign in permutations_with_sign(n):
        term = RationalFunction.one()
        for i in range(n):
            term = term * rows[i][sigma[i]]
            if not term:
                break
        if term:
            total = total + term if sign > 0 else total - term
    return total


def matrix_inverse(m):
    """Inverse via the adjugate; raises Singular on a zero determinant."""
    rows = _rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare("inverse of a non-square matrix")
    d = determinant(rows)
    if not d:
        raise Singular("matrix has zero determinant")
    inv_d = as_ratfun(d).inverse()
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = determinant(minor)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * inv_d
    labels_r = m.cols if isinstance(m, RingMatrix) else None
    labels_c = m.rows if isinstance(m, RingMatrix) else None
    return RingMatrix(out, labels_r, labels_c)


def perfect_matchings(n):
    """Yield ``(pairs, crossings)`` for every perfect matching of ``range(n)``."""
    if n % 2:
        return

    def rec(remaining):
        if not remaining:
            yield []
            return
        first = remaining[0]
        for idx in range(1, len(remaining)):
            partner = remaining[idx]
            rest = remaining[1:idx] + remaining[idx + 1:]
            for tail in rec(rest):
                yield [(first, partner)] + tail

    for pairs in rec(list(range(n))):
        yield pairs, matching_crossings(pairs)


def matching_crossings(pairs):
    """Number of pairs {i,j}, {k,l} with i < k < j < l."""
    count = 0
    norm = [tuple(sorted(p)) for p in pairs]
    for x in range(len(norm)):
        i, j = norm[x]
        for y in range(len(norm)):
            k, l = norm[y]
            if i < k < j < l:
                count += 1
    return count


def _skew_entry_fn(a):
    if isinstance(a, SkewMatrix):
        return a.n, a.entry
    rows = _rows(a)
    return len(rows), lambda i, j: rows[i][j]


def pfaffian_matchings(a, one=None):
    """Signed sum over perfect matchings of the products of matched entries."""
    n, entry = _skew_entry_fn(a)
    unit = RationalFunction.one() if one is None else one
    if n % 2:
        return unit * 0
    total = unit * 0
    for pairs, crossings in perfect_matchings(n):
        term = unit
        for i, j in pairs:
            term = term * entry(i, j)
            if not term:
                break
        if term:
            total = total - term if crossings % 2 else total + term
    return total


def pfaffian_recursive(a, one=None):
    """Expansion along the first remaining index, memoised on index subsets."""
    n, entry = _skew_entry_fn(a)
    unit = RationalFunction.one() if one is None else one
    if n % 2:
        return unit * 0
    memo = {}

    def pf(idx):
        if not idx:
            return unit
        if idx in memo:
            return memo[idx]
        first = idx[0]
        total = unit * 0
        # position p (0-based) in idx carries sign (-1)^(p+1): j=2 in 1-based is +
        for p in range(1, len(idx)):
            x = entry(first, idx[p])
            if not x:
                continue
            rest = idx[1:p] + idx[p + 1:]
            sub = pf(rest)
            if not sub:
                continue
            term = x * sub
            total = total - term if p % 2 == 0 else total + term
        memo[idx] = total
        return total

    return pf(tuple(range(n)))
