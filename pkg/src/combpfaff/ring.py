"""Exact sparse multivariate polynomials and rational functions over Q.

Monomials are packed into Python ints: field 0 holds the total degree and
field ``i + 1`` holds the exponent of the ``i``-th variable of the ring, each
field ``BITS`` wide.  Multiplying monomials is then integer addition, and
truncation by total degree is a mask.  The top bit of every field is a guard
bit used for the divisibility test, so exponents must stay below
``2 ** (BITS - 1)``.

Rational functions are kept as a numerator over a *factored* denominator
(a multiset of primitive polynomials).  No multivariate gcd is ever taken;
equality is decided by cross-multiplication.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, NonUnitConstantTerm

BITS = 16
FIELD = (1 << BITS) - 1
_GUARD = 1 << (BITS - 1)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _scalar(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Fraction)):
        return _norm(x)
    return None


class Ring:
    """An ordered set of variable names fixing the monomial packing."""

    __slots__ = ("names", "index", "guard")

    def __init__(self, names=()):
        self.names = tuple(sorted({str(n) for n in names}))
        self.index = {n: i for i, n in enumerate(self.names)}
        g = 0
        for i in range(len(self.names) + 1):
            g |= _GUARD << (BITS * i)
        self.guard = g

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def __len__(self):
        return len(self.names)

    def monomial(self, exps) -> int:
        """Pack a mapping name -> exponent."""
        m = 0
        for name, e in dict(exps).items():
            if e < 0 or e >= _GUARD:
                raise ValueError(f"exponent {e} out of range")
            if e:
                m += e << (BITS * (self.index[name] + 1))
                m += e
        return m

    def exponents(self, m):
        """Unpack a monomial into a tuple of (name, exponent) pairs."""
        out = []
        m >>= BITS
        i = 0
        while m:
            e = m & FIELD
            if e:
                out.append((self.names[i], e))
            m >>= BITS
            i += 1
        return tuple(out)

    def union(self, other):
        if self == other:
            return self
        return Ring(self.names + other.names)

    def repack(self, m, target):
        if target is self or not m:
            return m
        out = m & FIELD
        for name, e in self.exponents(m):
            out += e << (BITS * (target.index[name] + 1))
        return out


EMPTY_RING = Ring()


def degree_of(m):
    return m & FIELD


def _render_key(ring, m):
    key = []
    for name, e in ring.exponents(m):
        key.extend([name] * e)
    return tuple(key)


def _render_monomial(ring, m):
    parts = []
    for name, e in ring.exponents(m):
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> coefficient."""

    __slots__ = ("ring", "terms", "_hash", "_str")

    def __init__(self, terms=None, ring=EMPTY_RING):
        self.ring = ring
        self.terms = terms if terms is not None else {}
        self._hash = None
        self._str = None

    # construction
    @classmethod
    def constant(cls, c, ring=EMPTY_RING):
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls({0: c} if c else {}, ring)

    @classmethod
    def variable(cls, name, ring=None):
        ring = ring if ring is not None else Ring([name])
        return cls({ring.monomial({name: 1}): 1}, ring)

    @classmethod
    def from_terms(cls, pairs, ring=None):
        """Build from ``[(exponent mapping, coeff), ...]``."""
        pairs = [(dict(e), c) for e, c in pairs]
        if ring is None:
            ring = Ring({n for e, _ in pairs for n in e})
        terms = {}
        for e, c in pairs:
            m = ring.monomial(e)
            terms[m] = terms.get(m, 0) + c
        return cls._clean(terms, ring)

    @classmethod
    def parse(cls, text, ring=None):
        """Parse a sum of products such as ``"a*b^2 - 3/2*c + 1"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sg + body for sg, body in pieces) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pairs = []
        for sign, body in pieces:
            coeff = Fraction(1)
            exps = {}
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                name, _, power = factor.partition("^")
                if not re.fullmatch(r"[A-Za-z_][\w.]*", name):
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                exps[name] = exps.get(name, 0) + (int(power) if power else 1)
            pairs.append((exps, _norm(-coeff if sign == "-" else coeff)))
        if ring is None:
            ring = Ring({n for e, _ in pairs for n in e})
        return cls.from_terms(pairs, ring)

    @staticmethod
    def _clean(terms, ring):
        return Polynomial({m: _norm(c) for m, c in terms.items() if c}, ring)

    # structure
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((m & FIELD for m in self.terms), default=-1)

    def min_degree(self):
        return min((m & FIELD for m in self.terms), default=-1)

    def items(self):
        """Yield ``(((name, exp), ...), coeff)`` in canonical rendering order."""
        ring = self.ring
        keyed = sorted(self.terms.items(), key=lambda mc: _render_key(ring, mc[0]))
        for m, c in keyed:
            yield ring.exponents(m), c

    def variables(self):
        found = set()
        for m in self.terms:
            found.update(n for n, _ in self.ring.exponents(m))
        return found

    def with_ring(self, ring):
        if ring is self.ring:
            return self
        src = self.ring
        return Polynomial({src.repack(m, ring): c for m, c in self.terms.items()}, ring)

    def truncate(self, d):
        return Polynomial({m: c for m, c in self.terms.items() if (m & FIELD) <= d}, self.ring)

    def canonical_key(self):
        ring = self.ring
        return frozenset((ring.exponents(m), c) for m, c in self.terms.items())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.canonical_key())
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            a, b = _unify(self, other)
            return a.terms == b.terms
        c = _scalar(other)
        if c is None:
            return NotImplemented
        return self.terms == ({0: c} if c else {})

    # arithmetic
    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.ring)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            c = _scalar(other)
            if c is None:
                return NotImplemented
            other = Polynomial.constant(c, self.ring)
        a, b = _unify(self, other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out = dict(a.terms)
        for m, c in b.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return Polynomial(out, a.ring)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            c = _scalar(other)
            if c is None:
                return NotImplemented
            other = Polynomial.constant(c, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _norm(c)
        if not c:
            return Polynomial({}, self.ring)
        if c == 1:
            return self
        return Polynomial({m: _norm(v * c) for m, v in self.terms.items()}, self.ring)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _scalar(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        return self.mul_trunc(other, None)

    __rmul__ = __mul__

    def mul_trunc(self, other, d=None):
        """Product, dropping every term of total degree above ``d``."""
        a, b = _unify(self, other)
        if (d is None or d >= _GUARD) and a.terms and b.terms and a.degree() + b.degree() >= _GUARD:
            raise OverflowError(f"total degree would exceed {_GUARD - 1}")
        if len(a.terms) < len(b.terms):
            a, b = b, a
        if len(b.terms) == 1:
            (m2, c2), = b.terms.items()
            out = {m + m2: c * c2 for m, c in a.terms.items()
                   if d is None or (m & FIELD) + (m2 & FIELD) <= d}
            return Polynomial._clean(out, a.ring) if c2 != 1 else Polynomial(out, a.ring)
        out = {}
        get = out.get
        at = list(a.terms.items())
        for m2, c2 in b.terms.items():
            if d is None:
                for m1, c1 in at:
                    k = m1 + m2
                    out[k] = get(k, 0) + c1 * c2
            else:
                room = d - (m2 & FIELD)
                for m1, c1 in at:
                    if (m1 & FIELD) <= room:
                        k = m1 + m2
                        out[k] = get(k, 0) + c1 * c2
        return Polynomial._clean(out, a.ring)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("power must be a non-negative int")
        result = Polynomial.constant(1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divexact(self, other):
        """Return ``self / other`` if the division is exact, else None."""
        a, b = _unify(self, other)
        if not b:
            raise DivisionByZero("division by the zero polynomial")
        if not a:
            return Polynomial({}, a.ring)
        if len(b.terms) == 1:
            (mb, cb), = b.terms.items()
            guard = a.ring.guard
            out = {}
            for m, c in a.terms.items():
                if ((m | guard) - mb) & guard != guard:
                    return None
                out[m - mb] = _norm(Fraction(c) / cb)
            return Polynomial(out, a.ring)
        if a.degree() < b.degree():
            return None
        guard = a.ring.guard
        lm_b = max(b.terms)
        lc_b = b.terms[lm_b]
        b_items = list(b.terms.items())
        rem = dict(a.terms)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quot = {}
        while rem:
            m = -heapq.heappop(heap)
            c = rem.get(m)
            if c is None:
                continue
            if ((m | guard) - lm_b) & guard != guard:
                return None
            qm = m - lm_b
            qc = _norm(Fraction(c) / lc_b)
            quot[qm] = qc
            for mb, cb in b_items:
                k = qm + mb
                v = rem.get(k, 0) - qc * cb
                if v:
                    if k not in rem:
                        heapq.heappush(heap, -k)
                    rem[k] = _norm(v)
                else:
                    rem.pop(k, None)
        return Polynomial(quot, a.ring)

    def primitive(self):
        """Split into ``(scalar, p)`` with p integral, content 1, first rendered term positive."""
        if not self.terms:
            return 0, self
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        first = min(self.terms, key=lambda m: _render_key(self.ring, m))
        sign = -1 if self.terms[first] < 0 else 1
        scalar = _norm(Fraction(sign * g, den))
        prim = {m: _norm(c * den) // (sign * g) for m, c in self.terms.items()}
        return scalar, Polynomial(prim, self.ring)

    def substitute(self, values):
        """Evaluate variables named in ``values`` at exact scalars."""
        out = Polynomial({}, self.ring)
        for exps, c in self.items():
            term = Polynomial.constant(c, self.ring)
            for name, e in exps:
                if name in values:
                    term = term * (Fraction(values[name]) ** e)
                else:
                    term = term * Polynomial.variable(name, self.ring) ** e
            out = out + term
        return out

    # rendering
    def __str__(self):
        if self._str is None:
            self._str = self._render()
        return self._str

    def _render(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, (exps, c) in enumerate(self.items()):
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in exps)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _unify(p, q):
    if p.ring is q.ring or p.ring == q.ring:
        return p, q
    if not p.ring.names:
        return Polynomial(p.terms, q.ring), q
    if not q.ring.names:
        return p, Polynomial(q.terms, p.ring)
    ring = p.ring.union(q.ring)
    return p.with_ring(ring), q.with_ring(ring)


def series_truncate(p, d):
    """Drop every term of total degree greater than ``d``."""
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    return p.truncate(d)


def series_inverse(p, d):
    """Power-series inverse of ``p`` modulo terms of total degree > d."""
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    c0 = p.constant_term()
    if not c0:
        raise NonUnitConstantTerm(f"constant term of {p} is not a unit")
    inv_c0 = _norm(Fraction(1) / c0)
    # p = c0 (1 + r), so p^-1 = c0^-1 * sum (-r)^i
    r = (p - c0).scale(inv_c0).truncate(d)
    one = Polynomial.constant(1, p.ring)
    result = one
    power = one
    for _ in range(d):
        power = -power.mul_trunc(r, d)
        if not power:
            break
        result = result + power
    return result.scale(inv_c0)


def as_polynomial(x, ring=EMPTY_RING):
    if isinstance(x, Polynomial):
        return x
    c = _scalar(x)
    if c is None:
        raise TypeError(f"cannot treat {x!r} as a polynomial")
    return Polynomial.constant(c, ring)


class RationalFunction:
    """Numerator over a factored denominator ``((factor, exponent), ...)``.

    Each factor is a primitive, non-constant polynomial whose first term in
    rendering order is positive; factors are sorted by their rendering.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = as_polynomial(num)
        if isinstance(den, RationalFunction):
            raise TypeError("use division for RationalFunction denominators")
        den = as_polynomial(den, num.ring)
        if not den:
            raise DivisionByZero("zero denominator")
        scalar, prim = den.primitive()
        factors = {} if prim.is_constant else {prim: 1}
        if prim.is_constant:
            scalar = _norm(scalar * prim.constant_term())
        num = num.scale(_norm(Fraction(1) / scalar))
        self.num, self.den = _finish(num, factors)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def _build(cls, num, factors):
        return cls._raw(*_finish(num, factors))

    @classmethod
    def zero(cls):
        return cls._raw(Polynomial(), ())

    @classmethod
    def one(cls):
        return cls._raw(Polynomial.constant(1), ())

    @classmethod
    def parse(cls, num, den="1", ring=None):
        n = Polynomial.parse(num, ring)
        d = Polynomial.parse(den, ring)
        return cls(n, d)

    @property
    def denominator(self):
        out = Polynomial.constant(1, self.num.ring)
        for f, e in self.den:
            out = out * f ** e
        return out

    @property
    def numerator(self):
        return self.num

    def is_polynomial(self):
        return not self.den

    def __bool__(self):
        return bool(self.num)

    # arithmetic
    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RationalFunction._raw(self.num + other.num, self.den)
        lcm, a_mult, b_mult = _lcm(self.den, other.den)
        num = self.num * a_mult + other.num * b_mult
        return RationalFunction._build(num, lcm)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunction.zero()
        num = self.num * other.num
        if not other.den:
            return RationalFunction._raw(num, self.den) if num else RationalFunction.zero()
        if not self.den:
            return RationalFunction._raw(num, other.den)
        factors = dict(self.den)
        for f, e in other.den:
            factors[f] = factors.get(f, 0) + e
        return RationalFunction._build(num, factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by the zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        if not self.num:
            raise DivisionByZero("zero has no inverse")
        num = Polynomial.constant(1, self.num.ring)
        for f, e in self.den:
            num = num * f ** e
        scalar, prim = self.num.primitive()
        num = num.scale(_norm(Fraction(1) / scalar))
        factors = {} if prim.is_constant else {prim: 1}
        return RationalFunction._build(num, factors)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("power must be a non-negative int")
        result = RationalFunction.one()
        for _ in range(n):
            result = result * self
        return result

    # equality
    def __eq__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return ratfun_eq(self, other)

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable; equality is by cross-multiplication")

    def reduced(self):
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.num
        factors = {}
        for f, e in self.den:
            while e:
                q = num.divexact(f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                factors[f] = e
        return RationalFunction._build(num, factors)

    def series(self, d):
        """Expand as a power series truncated above total degree ``d``."""
        out = self.num.truncate(d)
        for f, e in self.den:
            inv = series_inverse(f, d)
            for _ in range(e):
                out = out.mul_trunc(inv, d)
        return out

    def substitute(self, values):
        num = RationalFunction(self.num.substitute(values))
        den = RationalFunction(self.denominator.substitute(values))
        return num / den

    # rendering
    def __str__(self):
        r = self.reduced()
        if not r.den:
            return str(r.num)
        return f"({r.num})/({r.denominator})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def _finish(num, factors):
    if not num:
        return Polynomial({}, num.ring), ()
    den = tuple(sorted(((f, e) for f, e in factors.items() if e), key=lambda fe: str(fe[0])))
    return num, den


def _lcm(da, db):
    fa, fb = dict(da), dict(db)
    lcm = dict(fa)
    for f, e in fb.items():
        lcm[f] = max(lcm.get(f, 0), e)
    a_mult = Polynomial.constant(1)
    b_mult = Polynomial.constant(1)
    for f, e in lcm.items():
        if e - fa.get(f, 0):
            a_mult = a_mult * f ** (e - fa.get(f, 0))
        if e - fb.get(f, 0):
            b_mult = b_mult * f ** (e - fb.get(f, 0))
    return lcm, a_mult, b_mult


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction._raw(x, ())
    c = _scalar(x)
    if c is None:
        return None
    return RationalFunction._raw(Polynomial.constant(c), ())


def as_ratfun(x):
    rf = _as_rf(x)
    if rf is None:
        raise TypeError(f"cannot treat {x!r} as a rational function")
    return rf


def ratfun_eq(f, g):
    """True iff f and g agree after clearing denominators."""
    f, g = as_ratfun(f), as_ratfun(g)
    if f.den == g.den:
        return f.num == g.num
    _, a_mult, b_mult = _lcm(f.den, g.den)
    return f.num * a_mult == g.num * b_mult


def var(name):
    """Shorthand: the polynomial consisting of a single variable."""
    return Polynomial.variable(name)
