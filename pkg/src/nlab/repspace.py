"""Representation-space oracles for the quantized necklace algebra.

Coordinates on Rep_l(double quiver) are (M_e)_{ij} with the row index
running over the head vertex and the column over the tail, 1-based.  For a
base edge e the reversed coordinate is quantized as

    Y_{e,ij}  :=  -h d/d(M_e)_{ji}

and D_Q is the algebra they generate, kept in normal order (all coordinate
factors left of all Y factors).  Three independent computations live here:

  * trace_rep        -- the trace of a necklace word as a commutative polynomial,
  * moyal_star_classical -- the flat Moyal product m . e^{(h/2) pi} on those
                        polynomials, with pi pairing (M_e)_{ij} with (M_{e*})_{ji},
  * weyl_symmetrize / rho / phi_w_realized -- normal-ordered operators, the
    representation of height words (factors composed with height 1 leftmost),
    and the average over all height assignments.

Monomial letters are var keys ("M", e, i, j) or ("Y", e, i, j); a monomial
is a sorted tuple of (var, exponent) pairs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

from .necklace import Necklace, NecklaceAlgebra, SymElement
from .quiver import QuiverError
from .rational import QPoly


# -- monomial helpers -------------------------------------------------------

def mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_diff(m, var, order=1):
    """(coefficient, reduced monomial) of d^order/d var^order, or None."""
    d = dict(m)
    e = d.get(var, 0)
    if e < order:
        return None
    coeff = 1
    for t in range(order):
        coeff *= (e - t)
    if e == order:
        del d[var]
    else:
        d[var] = e - order
    return coeff, tuple(sorted(d.items()))


class RepPolynomial:
    """Exact commutative polynomial in matrix coordinates, Q[h] coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, QPoly):
                    c = QPoly.const(c)
                if not c.is_zero():
                    self.terms[m] = c

    @staticmethod
    def zero():
        return RepPolynomial()

    @staticmethod
    def const(c):
        c = c if isinstance(c, QPoly) else QPoly.const(c)
        return RepPolynomial({(): c}) if not c.is_zero() else RepPolynomial()

    @staticmethod
    def var(v):
        return RepPolynomial({((v, 1),): QPoly.one()})

    def _add(self, m, c):
        cur = self.terms.get(m)
        self.terms[m] = c if cur is None else cur + c

    def _clean(self):
        self.terms = {m: c for m, c in self.terms.items() if not c.is_zero()}
        return self

    def __add__(self, other):
        out = RepPolynomial(dict(self.terms))
        for m, c in other.terms.items():
            out._add(m, c)
        return out._clean()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, v):
        out = RepPolynomial()
        for m, c in self.terms.items():
            out.terms[m] = c.scale(v)
        return out._clean()

    def mul_qpoly(self, q: QPoly):
        out = RepPolynomial()
        for m, c in self.terms.items():
            out._add(m, c * q)
        return out._clean()

    def __mul__(self, other):
        out = RepPolynomial()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add(mono_mul(m1, m2), c1 * c2)
        return out._clean()

    def diff(self, var):
        out = RepPolynomial()
        for m, c in self.terms.items():
            r = mono_diff(m, var)
            if r:
                out._add(r[1], c.scale(r[0]))
        return out._clean()

    def h_shift(self, k, scalar=1):
        out = RepPolynomial()
        q = QPoly({k: Fraction(scalar)})
        for m, c in self.terms.items():
            out.terms[m] = c * q
        return out._clean()

    def variables(self):
        vs = set()
        for m in self.terms:
            vs.update(v for v, _ in m)
        return vs

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, RepPolynomial) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join("%s[%s][%d][%d]%s" % (v[0], v[1], v[2], v[3],
                                                  "" if e == 1 else "^%d" % e)
                            for v, e in m) or "1"
            bits.append("(%s) %s" % (c.str(), mono))
        return " + ".join(bits)


class DiffOperator:
    """Normal-ordered element of D_Q: coordinate monomial times Y monomial."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, QPoly):
                    c = QPoly.const(c)
                if not c.is_zero():
                    self.terms[m] = c

    @staticmethod
    def const(c):
        c = c if isinstance(c, QPoly) else QPoly.const(c)
        return DiffOperator({((), ()): c}) if not c.is_zero() else DiffOperator()

    @staticmethod
    def generator(v):
        if v[0] == "M":
            return DiffOperator({(((v, 1),), ()): QPoly.one()})
        return DiffOperator({((), ((v, 1),)): QPoly.one()})

    def _add(self, m, c):
        cur = self.terms.get(m)
        self.terms[m] = c if cur is None else cur + c

    def _clean(self):
        self.terms = {m: c for m, c in self.terms.items() if not c.is_zero()}
        return self

    def __add__(self, other):
        out = DiffOperator(dict(self.terms))
        for m, c in other.terms.items():
            out._add(m, c)
        return out._clean()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, v):
        out = DiffOperator()
        for m, c in self.terms.items():
            out.terms[m] = c.scale(v)
        return out._clean()

    def __mul__(self, other):
        """Algebra product: self written to the left, other applied first."""
        out = DiffOperator()
        for (c1, y1), k1 in self.terms.items():
            for (c2, y2), k2 in other.terms.items():
                base = k1 * k2
                for cm, ym, coeff, hpow in _reorder(y1, c2):
                    key = (mono_mul(c1, cm), mono_mul(ym, y2))
                    out._add(key, base * QPoly({hpow: coeff}))
        return out._clean()

    def mul_qpoly(self, q: QPoly):
        out = DiffOperator()
        for m, c in self.terms.items():
            out._add(m, c * q)
        return out._clean()

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            cm, ym = m
            mono = "*".join("%s[%s][%d][%d]%s" % (v[0], v[1], v[2], v[3],
                                                  "" if e == 1 else "^%d" % e)
                            for v, e in cm + ym) or "1"
            bits.append("(%s) %s" % (c.str(), mono))
        return " + ".join(bits)


def _reorder(ymono, cmono):
    """Move a Y monomial left past a coordinate monomial.

    Y_{e,ij} acts as -h d/d(M_e)_{ji}; the multi-variable Leibniz rule gives

        Y^a . m = sum_b  prod C(a_v, b_v) (-h)^{|b|} (d^b m) Y^{a-b}.

    Yields (coordinate monomial, Y monomial, rational coefficient, h power).
    """
    if not ymono or not cmono:
        yield (cmono, ymono, Fraction(1), 0)
        return
    cdict = dict(cmono)
    alpha = list(ymono)
    ranges = []
    for (v, a) in alpha:
        tv = ("M", v[1], v[3], v[2])
        cap = min(a, cdict.get(tv, 0))
        ranges.append(range(cap + 1))
    for beta in product(*ranges):
        coeff = Fraction(1)
        m = cmono
        ok = True
        total = 0
        for (v, a), b in zip(alpha, beta):
            if not b:
                continue
            total += b
            coeff *= comb(a, b)
            tv = ("M", v[1], v[3], v[2])
            r = mono_diff(m, tv, b)
            if r is None:
                ok = False
                break
            coeff *= r[0]
            m = r[1]
        if not ok:
            continue
        rest = tuple((v, a - b) for (v, a), b in zip(alpha, beta) if a - b)
        sign = Fraction(-1) ** total
        yield (m, rest, coeff * sign, total)


# -- the oracles -------------------------------------------------------------

class RepSpace:
    """Oracles over one quiver at one dimension vector l: I -> Z_{>=0}."""

    def __init__(self, alg: NecklaceAlgebra, dims):
        self.alg = alg
        self.dq = alg.dq
        self.dims = dict(dims)
        for v in self.dq.vertices:
            if v not in self.dims:
                raise QuiverError("dimension vector misses vertex %r" % v)
        self._phi_memo = {}

    # trace representation --------------------------------------------------

    def trace_necklace(self, n: Necklace) -> RepPolynomial:
        if n.is_idempotent():
            return RepPolynomial.const(self.dims[n.vertex])
        word = n.word
        m = len(word)
        ranges = [range(1, self.dims[self.dq.tail[e]] + 1) for e in word]
        out = RepPolynomial()
        for idx in product(*ranges):
            mono = ()
            for r, e in enumerate(word):
                row = idx[(r + 1) % m]
                col = idx[r]
                mono = mono_mul(mono, ((("M", e, row, col), 1),))
            out._add(mono, QPoly.one())
        return out._clean()

    def trace_rep(self, P: SymElement) -> RepPolynomial:
        out = RepPolynomial()
        for ms, c in P.terms.items():
            poly = RepPolynomial.const(1)
            for n in ms:
                poly = poly * self.trace_necklace(n)
            out = out + poly.mul_qpoly(c)
        return out

    # classical Moyal product ------------------------------------------------

    def canonical_pairs(self):
        """(x, y) coordinate pairs carrying the bivector: x = (M_e)_{ij},
        y = (M_{e*})_{ji} for base edges e."""
        pairs = []
        for e in self.dq.base_edges:
            lh = self.dims[self.dq.head[e]]
            lt = self.dims[self.dq.tail[e]]
            for i in range(1, lh + 1):
                for j in range(1, lt + 1):
                    pairs.append((("M", e, i, j), ("M", e + "*", j, i)))
        return pairs

    def _pi(self, pair_terms, pairs):
        """Apply the bivector to an element of k[Rep] (x) k[Rep]."""
        out = {}
        for (m1, m2), c in pair_terms.items():
            for x, y in pairs:
                for (u, v, s) in ((x, y, 1), (y, x, -1)):
                    r1 = mono_diff(m1, u)
                    if not r1:
                        continue
                    r2 = mono_diff(m2, v)
                    if not r2:
                        continue
                    key = (r1[1], r2[1])
                    add = c.scale(s * r1[0] * r2[0])
                    cur = out.get(key)
                    out[key] = add if cur is None else cur + add
        return {k: v for k, v in out.items() if not v.is_zero()}

    def moyal_star_classical(self, f: RepPolynomial, g: RepPolynomial) -> RepPolynomial:
        pairs = self.canonical_pairs()
        cur = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                key = (m1, m2)
                c = c1 * c2
                old = cur.get(key)
                cur[key] = c if old is None else old + c
        out = RepPolynomial()
        d = 0
        while cur:
            scalar = QPoly({d: Fraction(1, 2 ** d * factorial(d))})
            for (m1, m2), c in cur.items():
                out._add(mono_mul(m1, m2), c * scalar)
            cur = self._pi(cur, pairs)
            d += 1
        return out._clean()

    def poisson_classical(self, f: RepPolynomial, g: RepPolynomial) -> RepPolynomial:
        out = RepPolynomial()
        for x, y in self.canonical_pairs():
            out = out + f.diff(x) * g.diff(y) - f.diff(y) * g.diff(x)
        return out

    # Weyl symmetrization ------------------------------------------------------

    @staticmethod
    def _to_generator(v):
        # coordinate of a reversed edge becomes the Y generator: ("M", e*, i, j) -> Y_{e,ij}
        if v[0] == "M" and v[1].endswith("*"):
            return ("Y", v[1][:-1], v[2], v[3])
        return v

    def _average(self, letters):
        """Average of the letters' compositions over all orderings.

        Recursion on the letter multiset: orderings ending with letter t
        contribute Av(rest) * t with weight mult(t)/n.
        """
        key = tuple(sorted(letters))
        hit = self._phi_memo.get(key)
        if hit is not None:
            return hit
        if not letters:
            res = DiffOperator.const(1)
        else:
            n = len(letters)
            res = DiffOperator()
            seen = set()
            for i, t in enumerate(letters):
                if t in seen:
                    continue
                seen.add(t)
                mult = letters.count(t)
                rest = list(letters)
                rest.remove(t)
                res = res + (self._average(rest) * DiffOperator.generator(t)).scale(
                    Fraction(mult, n))
        self._phi_memo[key] = res
        return res

    def weyl_symmetrize(self, f: RepPolynomial) -> DiffOperator:
        out = DiffOperator()
        for m, c in f.terms.items():
            letters = []
            for v, e in m:
                letters.extend([self._to_generator(v)] * e)
            out = out + self._average(letters).mul_qpoly(c)
        return out

    def weyl_unsymmetrize(self, D: DiffOperator) -> RepPolynomial:
        """Inverse of weyl_symmetrize; degree-descending elimination."""
        f = RepPolynomial()
        rem = D
        guard = 0
        while not rem.is_zero():
            guard += 1
            if guard > 10000:
                raise RuntimeError("weyl_unsymmetrize failed to terminate")
            deg = max(mono_degree(cm) + mono_degree(ym) for (cm, ym) in rem.terms)
            top = RepPolynomial()
            for (cm, ym), c in rem.terms.items():
                if mono_degree(cm) + mono_degree(ym) == deg:
                    mono = cm
                    for v, e in ym:
                        mono = mono_mul(mono, ((("M", v[1] + "*", v[2], v[3]), e),))
                    top._add(mono, c)
            top._clean()
            f = f + top
            rem = rem - self.weyl_symmetrize(top)
        return f

    # height words ---------------------------------------------------------------

    def rho(self, ms, heights) -> DiffOperator:
        """Representation of a height word.

        ms: a necklace multiset; heights: bijection {(i, j): 1..N} over its
        abstract edges.  Factors compose in increasing height order, height 1
        leftmost (the convention pinned by the Hopf-homomorphism calibration).
        """
        positions = [(i, j) for i, n in enumerate(ms) for j in range(len(n.word))]
        if sorted(heights.values()) != list(range(1, len(positions) + 1)):
            raise QuiverError("heights must be a bijection onto 1..N")
        scalar = 1
        for n in ms:
            if n.is_idempotent():
                scalar *= self.dims[n.vertex]
        out = DiffOperator()
        for letters_by_pos in self._index_expansions(ms):
            ordered = sorted(letters_by_pos, key=lambda t: heights[t[0]])
            term = DiffOperator.const(1)
            for _, gen in ordered:
                term = term * DiffOperator.generator(gen)
            out = out + term
        return out.scale(scalar)

    def _index_expansions(self, ms):
        """Yield, per joint index tuple, the list of ((i,j), generator) letters."""
        necklaces = [n for n in ms if not n.is_idempotent()]
        per = []
        for n in necklaces:
            word = n.word
            m = len(word)
            ranges = [range(1, self.dims[self.dq.tail[e]] + 1) for e in word]
            opts = []
            for idx in product(*ranges):
                letters = []
                for r, e in enumerate(word):
                    row, col = idx[(r + 1) % m], idx[r]
                    if self.dq.is_base(e):
                        gen = ("M", e, row, col)
                    else:
                        gen = ("Y", e[:-1], row, col)
                    letters.append((r, gen))
                opts.append(letters)
            per.append(opts)
        pos_of = {}
        k = 0
        for i, n in enumerate(ms):
            if not n.is_idempotent():
                pos_of[k] = i
                k += 1
        for combo in product(*per) if per else [()]:
            letters = []
            for which, lst in enumerate(combo):
                i = pos_of[which]
                for r, gen in lst:
                    letters.append(((i, r), gen))
            yield letters

    def phi_w_realized(self, P) -> DiffOperator:
        """(1/N!) sum over height assignments of rho, per multiset term.

        Computed by expanding index tuples and averaging each concrete letter
        multiset over orderings (exactly the N! sum, grouped and memoized).
        """
        if isinstance(P, SymElement):
            out = DiffOperator()
            for ms, c in P.terms.items():
                out = out + self._phi_ms(ms).mul_qpoly(c)
            return out
        return self._phi_ms(P)

    def _phi_ms(self, ms) -> DiffOperator:
        scalar = 1
        for n in ms:
            if n.is_idempotent():
                scalar *= self.dims[n.vertex]
        out = DiffOperator()
        for letters_by_pos in self._index_expansions(ms):
            out = out + self._average([gen for _, gen in letters_by_pos])
        return out.scale(scalar)
