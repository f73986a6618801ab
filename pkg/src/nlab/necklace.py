"""Path algebra of a double quiver, necklaces, and the Lie bialgebra.

A path is a composable word of edges of the double quiver (or a vertex
idempotent 1_v).  A necklace is a closed path up to rotation, stored as its
minimal rotation under the fixed edge order; vertex idempotents are genuine
degree-0 necklaces.  Elements of Sym L are finite Q[h]-combinations of
multisets of necklaces.

The bracket is

    {f, g} = pr( sum_{e in Q} df/de dg/de* - df/de* dg/de )

with the cyclic derivative d(a_1...a_n)/de = sum_{a_r = e}
a_{r+1}...a_n a_1...a_{r-1}, and the cobracket

    delta(f) = (pr (x) pr)( sum_{e in Q} D_e(df/de*) - D_{e*}(df/de) )

with D_e the double derivation cutting at occurrences of e.
"""

from __future__ import annotations

from fractions import Fraction

from .quiver import DoubleQuiver, QuiverError
from .rational import QPoly


class Path:
    """A composable edge word, or the idempotent 1_v when the word is empty."""

    __slots__ = ("word", "tail", "head")

    def __init__(self, dq: DoubleQuiver, word, vertex=None):
        word = tuple(word)
        if word:
            for e in word:
                if not dq.is_edge(e):
                    raise QuiverError("unknown edge %r" % (e,))
            for a, b in zip(word, word[1:]):
                if dq.head[a] != dq.tail[b]:
                    raise QuiverError("non-composable word %r" % (word,))
            self.tail = dq.tail[word[0]]
            self.head = dq.head[word[-1]]
        else:
            if vertex is None:
                raise QuiverError("idempotent path needs a vertex")
            dq.check_vertex(vertex)
            self.tail = self.head = vertex
        self.word = word

    def is_idempotent(self):
        return not self.word

    def is_closed(self):
        return self.tail == self.head

    def key(self):
        return (self.word, self.tail)

    def __eq__(self, other):
        return isinstance(other, Path) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.word:
            return "Path(%s)" % " ".join(self.word)
        return "Path(1_%s)" % self.tail


class Necklace:
    """A cyclic edge word in minimal rotation, or a vertex idempotent."""

    __slots__ = ("word", "vertex", "_key")

    def __init__(self, word, vertex, key):
        self.word = word
        self.vertex = vertex
        self._key = key

    def is_idempotent(self):
        return not self.word

    def __len__(self):
        return len(self.word)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Necklace) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.word:
            return "(%s)" % " ".join(self.word)
        return "I(%s)" % self.vertex


class NecklaceAlgebra:
    """Factory and operations for necklaces and Sym L elements over one quiver."""

    def __init__(self, dq: DoubleQuiver):
        self.dq = dq

    # -- construction -------------------------------------------------

    def path(self, word, vertex=None) -> Path:
        return Path(self.dq, word, vertex)

    def idempotent(self, v) -> Necklace:
        self.dq.check_vertex(v)
        return Necklace((), v, (0, (), v))

    def necklace(self, word) -> Necklace:
        """Canonical necklace of a closed word (minimal rotation)."""
        p = self.path(word, vertex=None) if word else None
        if p is None:
            raise QuiverError("necklace of an empty word needs idempotent()")
        if not p.is_closed():
            raise QuiverError("word %r is not closed" % (word,))
        return self._canonical(tuple(word))

    def _canonical(self, word) -> Necklace:
        idx = self.dq.order_index
        n = len(word)
        best = None
        for r in range(n):
            rot = word[r:] + word[:r]
            k = tuple(idx[e] for e in rot)
            if best is None or k < best[0]:
                best = (k, rot)
        rot = best[1]
        return Necklace(rot, self.dq.tail[rot[0]], (len(rot), best[0], ""))

    def pr(self, p: Path) -> Necklace:
        """Projection P -> L = P/[P,P]; errors on non-closed paths."""
        if not p.is_closed():
            raise QuiverError("pr_L of a non-closed path %r" % (p,))
        if p.is_idempotent():
            return self.idempotent(p.tail)
        return self._canonical(p.word)

    def multiset(self, necklaces) -> tuple:
        return tuple(sorted(necklaces, key=Necklace.key))

    def element(self, terms=None) -> "SymElement":
        return SymElement(self, terms)

    def single(self, necklaces, coeff=None) -> "SymElement":
        ms = self.multiset(necklaces)
        return SymElement(self, {ms: coeff if coeff is not None else QPoly.one()})

    def unit(self) -> "SymElement":
        return self.single([])

    def tensor(self, arity, terms=None) -> "TensorElement":
        return TensorElement(self, arity, terms)

    # -- derivatives ---------------------------------------------------

    def cyclic_derivative(self, f: Necklace, e: str):
        """d f / d e as a list of Paths (one per occurrence of e)."""
        if not self.dq.is_edge(e):
            raise QuiverError("unknown edge %r" % e)
        out = []
        w = f.word
        n = len(w)
        for r in range(n):
            if w[r] == e:
                rest = w[r + 1:] + w[:r]
                out.append(self.path(rest, vertex=self.dq.head[e]))
        return out

    def double_derivation(self, p: Path, e: str):
        """D_e(p) as a list of (left Path, right Path) pairs."""
        if not self.dq.is_edge(e):
            raise QuiverError("unknown edge %r" % e)
        out = []
        w = p.word
        for r in range(len(w)):
            if w[r] == e:
                left = self.path(w[:r], vertex=self.dq.tail[e])
                right = self.path(w[r + 1:], vertex=self.dq.head[e])
                out.append((left, right))
        return out

    # -- Lie bialgebra --------------------------------------------------

    def bracket(self, f: Necklace, g: Necklace) -> "SymElement":
        """Necklace bracket {f, g}, an h-degree-0 element supported on single necklaces."""
        acc = {}
        for e in self.dq.base_edges:
            es = e + "*"
            for (u, v, s) in ((e, es, 1), (es, e, -1)):
                for pf in self.cyclic_derivative(f, u):
                    for pg in self.cyclic_derivative(g, v):
                        w = pf.word + pg.word
                        if w:
                            n = self._canonical(w)
                        else:
                            n = self.idempotent(pf.tail)
                        acc[n] = acc.get(n, 0) + s
        terms = {}
        for n, c in acc.items():
            if c:
                terms[(n,)] = QPoly.const(c)
        return SymElement(self, terms)

    def cobracket(self, f: Necklace) -> "TensorElement":
        """delta(f) in L (x) L, before antisymmetrization.

        The L wedge L class is represented as x(x)y - y(x)x; this map returns
        the plain tensor whose antisymmetry is a property, not a convention.
        """
        acc = {}
        for e in self.dq.base_edges:
            es = e + "*"
            for (u, v, s) in ((e, es, 1), (es, e, -1)):
                # D_u applied to df/dv per Eq. (delta) ordering: D_e(df/de*) - D_{e*}(df/de)
                for p in self.cyclic_derivative(f, v):
                    for (a, b) in self.double_derivation(p, u):
                        key = (self._ms_of_path(a), self._ms_of_path(b))
                        acc[key] = acc.get(key, 0) + s
        terms = {k: QPoly.const(c) for k, c in acc.items() if c}
        return TensorElement(self, 2, terms)

    def _ms_of_path(self, p: Path) -> tuple:
        return (self.pr(p),)

    def hamiltonian_action(self, f: Necklace, p: Path):
        """The derivation e -> -df/de*, e* -> df/de applied to p.

        Returns a dict {Path: Fraction}.
        """
        out = {}
        w = p.word
        for r, a in enumerate(w):
            rev = self.dq.reverse(a)
            if self.dq.is_base(a):
                repls = [(q, -1) for q in self.cyclic_derivative(f, rev)]
            else:
                repls = [(q, 1) for q in self.cyclic_derivative(f, rev)]
            for q, s in repls:
                if q.word:
                    word = w[:r] + q.word + w[r + 1:]
                    new = self.path(word)
                else:
                    # idempotent replacement: drop the letter
                    word = w[:r] + w[r + 1:]
                    new = self.path(word, vertex=q.tail)
                out[new] = out.get(new, Fraction(0)) + s
        return {k: v for k, v in out.items() if v}

    def symplectic_form(self, e: str, f: str) -> int:
        if not self.dq.is_edge(e) or not self.dq.is_edge(f):
            raise QuiverError("unknown edge")
        if self.dq.is_base(e) and f == e + "*":
            return 1
        if self.dq.is_base(f) and e == f + "*":
            return -1
        return 0

    # -- Leibniz extensions to Sym L -------------------------------------

    def bracket_sym(self, P: "SymElement", R: "SymElement") -> "SymElement":
        """{P, R} extended to Sym L by the Leibniz rule in both arguments."""
        if P.alg is not self or R.alg is not self:
            raise QuiverError("mismatched quivers")
        out = self.element()
        for msP, cP in P.terms.items():
            for msR, cR in R.terms.items():
                c = cP * cR
                for i, ni in enumerate(msP):
                    rest_i = msP[:i] + msP[i + 1:]
                    for j, nj in enumerate(msR):
                        rest_j = msR[:j] + msR[j + 1:]
                        br = self.bracket(ni, nj)
                        for msB, cB in br.terms.items():
                            ms = self.multiset(msB + rest_i + rest_j)
                            out._add(ms, cB * c)
        return out._clean()

    def cobracket_sym(self, P: "SymElement") -> "TensorElement":
        """delta extended to Sym L: cut one necklace, distribute the rest.

        delta_Sym(N_1 & ... & N_m) = sum_i sum_{A + B = rest}
        (delta(N_i)_1 & A) (x) (delta(N_i)_2 & B).
        """
        out = self.tensor(2)
        for ms, c in P.terms.items():
            for i, ni in enumerate(ms):
                rest = ms[:i] + ms[i + 1:]
                d = self.cobracket(ni)
                if not d.terms:
                    continue
                for split in _subsets(rest):
                    a_part, b_part = split
                    for (msa, msb), cd in d.terms.items():
                        key = (self.multiset(msa + a_part), self.multiset(msb + b_part))
                        out._add(key, cd * c)
        return out._clean()


def _subsets(ms):
    """All ways to split a multiset tuple into an ordered pair of tuples."""
    n = len(ms)
    for mask in range(1 << n):
        a = tuple(ms[i] for i in range(n) if mask >> i & 1)
        b = tuple(ms[i] for i in range(n) if not mask >> i & 1)
        yield (a, b)


class SymElement:
    """A Q[h]-linear combination of multisets of necklaces (element of Sym L[h])."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: NecklaceAlgebra, terms=None):
        self.alg = alg
        self.terms = {}
        if terms:
            for ms, c in terms.items():
                if not isinstance(c, QPoly):
                    c = QPoly.const(c)
                if not c.is_zero():
                    self.terms[ms] = c

    def _add(self, ms, c):
        cur = self.terms.get(ms)
        self.terms[ms] = c if cur is None else cur + c

    def _clean(self):
        self.terms = {k: v for k, v in self.terms.items() if not v.is_zero()}
        return self

    def __add__(self, other):
        out = SymElement(self.alg, dict(self.terms))
        for ms, c in other.terms.items():
            out._add(ms, c)
        return out._clean()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, v) -> "SymElement":
        out = SymElement(self.alg)
        for ms, c in self.terms.items():
            out.terms[ms] = c.scale(v)
        return out._clean()

    def mul_qpoly(self, q: QPoly) -> "SymElement":
        out = SymElement(self.alg)
        for ms, c in self.terms.items():
            out._add(ms, c * q)
        return out._clean()

    def sym_product(self, other: "SymElement") -> "SymElement":
        """The plain symmetric product (h^0 part of the star product)."""
        out = SymElement(self.alg)
        for ms1, c1 in self.terms.items():
            for ms2, c2 in other.terms.items():
                out._add(self.alg.multiset(ms1 + ms2), c1 * c2)
        return out._clean()

    def h_coefficient(self, k) -> "SymElement":
        """The Sym L element multiplying h^k."""
        out = SymElement(self.alg)
        for ms, c in self.terms.items():
            v = c.coeff(k)
            if v:
                out.terms[ms] = QPoly.const(v)
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, SymElement) and self.terms == other.terms

    def __repr__(self):
        from .grammar import format_element
        return format_element(self)


class TensorElement:
    """Q[h]-combinations of pairs (or triples) of necklace multisets."""

    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg: NecklaceAlgebra, arity: int, terms=None):
        self.alg = alg
        self.arity = arity
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, QPoly):
                    c = QPoly.const(c)
                if not c.is_zero():
                    self.terms[key] = c

    def _add(self, key, c):
        cur = self.terms.get(key)
        self.terms[key] = c if cur is None else cur + c

    def _clean(self):
        self.terms = {k: v for k, v in self.terms.items() if not v.is_zero()}
        return self

    def __add__(self, other):
        out = TensorElement(self.alg, self.arity, dict(self.terms))
        for key, c in other.terms.items():
            out._add(key, c)
        return out._clean()

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, v) -> "TensorElement":
        out = TensorElement(self.alg, self.arity)
        for key, c in self.terms.items():
            out.terms[key] = c.scale(v)
        return out._clean()

    def flip(self) -> "TensorElement":
        """Swap the two tensor factors (arity 2 only)."""
        assert self.arity == 2
        out = TensorElement(self.alg, 2)
        for (a, b), c in self.terms.items():
            out._add((b, a), c)
        return out._clean()

    def h_coefficient(self, k) -> "TensorElement":
        out = TensorElement(self.alg, self.arity)
        for key, c in self.terms.items():
            v = c.coeff(k)
            if v:
                out.terms[key] = QPoly.const(v)
        return out

    def slot(self, i) -> "SymElement":
        """Apply the counit to every factor except slot i."""
        out = SymElement(self.alg)
        for key, c in self.terms.items():
            if all(len(key[j]) == 0 for j in range(self.arity) if j != i):
                out._add(key[i], c)
        return out._clean()

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.arity == other.arity
                and self.terms == other.terms)

    def __repr__(self):
        from .grammar import format_tensor
        return format_tensor(self)
