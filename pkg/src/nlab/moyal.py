"""The quantized Hopf structure on Sym L[h].

Both the star product and the coproduct are driven by the same cut-and-glue
engine.  An abstract edge of a necklace multiset is an occurrence (i, j) of
an edge: necklace index i, letter index j.  A cut specification pairs
abstract edges with reverse-labeled partners; gluing deletes the cut edges
and reads off the orbits of the next-edge map

    f(z) = succ(z)          if z is not cut,
    f(z) = succ(pair(z))    if z is cut,

where succ is the cyclic successor inside a necklace word.  Every f-cycle
containing an uncut edge yields one necklace; an f-cycle consisting
entirely of cut edges yields one vertex idempotent at the common tail
vertex of its members.

    P *_h R   = sum over (I_X, I_Y, phi) of (h/2)^{#I_X} s(I_X, I_Y, phi)
                times the glued multiset, with s = (-1)^{#(I_Y cut at base edges)}.
    Delta_h P = sum over self-pairings (I, phi) of (h/2)^{#I/2} times the sum
                over component assignments c with the comparison sign of the
                start/target components of each cut base edge.

The antipode is diagonal: (-1)^m on a multiset of m necklaces.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from .necklace import NecklaceAlgebra, SymElement, TensorElement
from .quiver import QuiverError
from .rational import QPoly


def _positions(ms):
    """Abstract edges of a multiset: (necklace index, letter index)."""
    out = []
    for i, n in enumerate(ms):
        for j in range(len(n.word)):
            out.append((i, j))
    return out


def _succ(ms, pos):
    i, j = pos
    return (i, (j + 1) % len(ms[i].word))


def _label(ms, pos):
    i, j = pos
    return ms[i].word[j]


def _fiber_pairings(xs, ys):
    """All ways to pick equal-size subsets of xs, ys with a bijection."""
    out = [()]
    for k in range(1, min(len(xs), len(ys)) + 1):
        for sub_x in combinations(xs, k):
            for sub_y in combinations(ys, k):
                for perm in permutations(sub_y):
                    out.append(tuple(zip(sub_x, perm)))
    return out


class MoyalHopf:
    """Star product, coproduct, counit and antipode on Sym L[h]."""

    def __init__(self, alg: NecklaceAlgebra):
        self.alg = alg
        self._star_cache = {}
        self._coproduct_cache = {}

    # -- gluing ---------------------------------------------------------

    def _glue(self, sides, cut_pairs):
        """Cut-and-glue a family of multisets.

        sides: list of multisets; positions are (side, i, j).
        cut_pairs: list of ((s,i,j), (s',i',j')) with reverse labels.
        Returns (pieces, orbit_of) where pieces is a list of Necklace and
        orbit_of maps every position to its piece index.  Spectator
        idempotents of the inputs are appended after the glued pieces.
        """
        alg = self.alg
        dq = alg.dq
        pair = {}
        for a, b in cut_pairs:
            if a in pair or b in pair or a == b:
                raise QuiverError("overlapping cut indices")
            la = sides[a[0]][a[1]].word[a[2]]
            lb = sides[b[0]][b[1]].word[b[2]]
            if dq.reverse(la) != lb:
                raise QuiverError("cut pair is not reverse-labeled")
            pair[a] = b
            pair[b] = a

        def succ(pos):
            s, i, j = pos
            return (s, i, (j + 1) % len(sides[s][i].word))

        def f(pos):
            if pos in pair:
                return succ(pair[pos])
            return succ(pos)

        all_pos = []
        for s, ms in enumerate(sides):
            for i, n in enumerate(ms):
                for j in range(len(n.word)):
                    all_pos.append((s, i, j))

        orbit_of = {}
        pieces = []
        seen = set()
        for start in all_pos:
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            cur = f(start)
            while cur != start:
                cycle.append(cur)
                seen.add(cur)
                cur = f(cur)
            idx = len(pieces)
            for pos in cycle:
                orbit_of[pos] = idx
            uncut = [p for p in cycle if p not in pair]
            if uncut:
                word = tuple(sides[p[0]][p[1]].word[p[2]] for p in uncut)
                pieces.append(alg._canonical(word))
            else:
                v = dq.tail[sides[start[0]][start[1]].word[start[2]]]
                pieces.append(alg.idempotent(v))
        # spectator idempotents keep their own components
        for s, ms in enumerate(sides):
            for i, n in enumerate(ms):
                if n.is_idempotent():
                    orbit_of[(s, i, None)] = len(pieces)
                    pieces.append(n)
        return pieces, orbit_of

    def cut_and_glue(self, msP, msR, pairs):
        """Cut-and-glue two multisets along paired abstract edges.

        pairs: list of ((i, j), (i', j')) matching a position of msP with a
        reverse-labeled position of msR.  Returns the glued multiset.
        """
        cut = [(((0,) + tuple(x)), ((1,) + tuple(y))) for (x, y) in pairs]
        pieces, _ = self._glue([msP, msR], cut)
        return self.alg.multiset(pieces)

    # -- star product -----------------------------------------------------

    def star_ms(self, msP, msR):
        """Star product of two necklace multisets: dict {multiset: QPoly}."""
        key = (msP, msR)
        hit = self._star_cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        dq = alg.dq
        xs = _positions(msP)
        ys = _positions(msR)
        by_label_x = {}
        for p in xs:
            by_label_x.setdefault(_label(msP, p), []).append(p)
        by_label_y = {}
        for p in ys:
            by_label_y.setdefault(_label(msR, p), []).append(p)

        per_label = []
        for e in dq.edge_order:
            a = by_label_x.get(e)
            b = by_label_y.get(dq.reverse(e))
            if a and b:
                per_label.append(_fiber_pairings(a, b))
        out = {}
        for combo in product(*per_label) if per_label else [()]:
            pairs = [pq for group in combo for pq in group]
            k = len(pairs)
            sign = 1
            for (x, _y) in pairs:
                if not dq.is_base(_label(msP, x)):
                    sign = -sign
            cut = [(((0,) + x), ((1,) + y)) for (x, y) in pairs]
            pieces, _ = self._glue([msP, msR], cut)
            ms = alg.multiset(pieces)
            coeff = QPoly({k: Fraction(sign, 2 ** k)})
            cur = out.get(ms)
            out[ms] = coeff if cur is None else cur + coeff
        out = {ms: c for ms, c in out.items() if not c.is_zero()}
        self._star_cache[key] = out
        return out

    def star(self, P: SymElement, R: SymElement) -> SymElement:
        if P.alg is not self.alg or R.alg is not self.alg:
            raise QuiverError("mismatched quivers")
        out = self.alg.element()
        for msP, cP in P.terms.items():
            for msR, cR in R.terms.items():
                c = cP * cR
                for ms, ck in self.star_ms(msP, msR).items():
                    out._add(ms, ck * c)
        return out._clean()

    # -- coproduct ----------------------------------------------------------

    def _self_pairings(self, ms):
        """All (I, phi) for Delta: disjoint pairs (base-edge pos, starred pos)."""
        dq = self.alg.dq
        by_label = {}
        for p in _positions(ms):
            by_label.setdefault(_label(ms, p), []).append(p)
        per_edge = []
        for e in dq.base_edges:
            a = by_label.get(e)
            b = by_label.get(e + "*")
            if a and b:
                per_edge.append(_fiber_pairings(a, b))
        for combo in product(*per_edge) if per_edge else [()]:
            yield [pq for group in combo for pq in group]

    def coproduct_ms(self, ms, slots=2):
        """Delta_h of one multiset: dict {(ms_1,..,ms_slots): QPoly}."""
        key = (ms, slots)
        hit = self._coproduct_cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        out = {}
        for pairs in self._self_pairings(ms):
            k = len(pairs)
            cut = [(((0,) + x), ((0,) + y)) for (x, y) in pairs]
            pieces, orbit_of = self._glue([ms], cut)
            m = len(pieces)
            starts = [orbit_of[(0,) + x] for (x, _y) in pairs]
            targets = [orbit_of[(0,) + _succ(ms, x)] for (x, _y) in pairs]
            base = Fraction(1, 2 ** k)
            for c in product(range(slots), repeat=m):
                sign = 1
                for a, b in zip(starts, targets):
                    if c[a] == c[b]:
                        sign = 0
                        break
                    if c[a] > c[b]:
                        sign = -sign
                if not sign:
                    continue
                placed = [[] for _ in range(slots)]
                for idx, piece in enumerate(pieces):
                    placed[c[idx]].append(piece)
                tkey = tuple(alg.multiset(p) for p in placed)
                coeff = QPoly({k: base * sign})
                cur = out.get(tkey)
                out[tkey] = coeff if cur is None else cur + coeff
        out = {t: c for t, c in out.items() if not c.is_zero()}
        self._coproduct_cache[key] = out
        return out

    def coproduct(self, P: SymElement, slots=2) -> TensorElement:
        out = self.alg.tensor(slots)
        for ms, c in P.terms.items():
            for tkey, ck in self.coproduct_ms(ms, slots).items():
                out._add(tkey, ck * c)
        return out._clean()

    def counit(self, P: SymElement) -> QPoly:
        """The algebra map killing every necklace; coefficient of the unit."""
        return P.terms.get((), QPoly.zero())

    def antipode(self, P: SymElement) -> SymElement:
        out = self.alg.element()
        for ms, c in P.terms.items():
            out._add(ms, c if len(ms) % 2 == 0 else c.scale(-1))
        return out._clean()

    # -- composites used by the axiom suites --------------------------------

    def coproduct_slot(self, T: TensorElement, which: int) -> TensorElement:
        """Apply Delta_h to one slot of a 2-tensor, yielding a 3-tensor."""
        out = self.alg.tensor(3)
        for (a, b), c in T.terms.items():
            inner = self.coproduct_ms(a if which == 0 else b)
            for (u, w), ck in inner.items():
                key = (u, w, b) if which == 0 else (a, u, w)
                out._add(key, ck * c)
        return out._clean()

    def coassoc_probe(self, P: SymElement):
        """Return ((Delta x 1)Delta, (1 x Delta)Delta, single-pass 3-component)."""
        d = self.coproduct(P)
        lhs = self.coproduct_slot(d, 0)
        rhs = self.coproduct_slot(d, 1)
        single = self.coproduct(P, slots=3)
        return lhs, rhs, single

    def star_tensor(self, T1: TensorElement, T2: TensorElement) -> TensorElement:
        """Componentwise star product on 2-tensors."""
        out = self.alg.tensor(2)
        for (a1, b1), c1 in T1.terms.items():
            for (a2, b2), c2 in T2.terms.items():
                c = c1 * c2
                left = self.star_ms(a1, a2)
                right = self.star_ms(b1, b2)
                for msl, cl in left.items():
                    for msr, cr in right.items():
                        out._add((msl, msr), cl * cr * c)
        return out._clean()

    def mul_tensor(self, T: TensorElement) -> SymElement:
        """Multiply the two slots of a 2-tensor with the star product."""
        out = self.alg.element()
        for (a, b), c in T.terms.items():
            for ms, ck in self.star_ms(a, b).items():
                out._add(ms, ck * c)
        return out._clean()

    def antipode_slot(self, T: TensorElement, which: int) -> TensorElement:
        out = self.alg.tensor(2)
        for key, c in T.terms.items():
            m = len(key[which])
            out._add(key, c if m % 2 == 0 else c.scale(-1))
        return out._clean()
