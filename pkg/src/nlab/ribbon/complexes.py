"""Chain complexes of oriented (labeled) ribbon graph classes.

Degree = edge count.  The basis in each degree consists of the orientable
iso classes, each stored with its reference EF orientation (edges and
faces in index order).  The differential contracts non-loop edges:

    d(Gamma, or) = sum_e (Gamma/e, or_e),

where or_e is obtained by contracting the dual vector of e against the
edge wedge, i.e. a sign (-1)^{position of e}; transporting to the
canonical representative of the target contributes the sign of the
induced edge and face permutations.  Contraction preserves faces, genus
and connectivity, and can only raise valences, so the enumeration is
closed under it; this is asserted during construction.
"""

from __future__ import annotations

import hashlib
import json
import os

from ..linalg import perm_sign, rank
from .census import LabeledRibbonGraph, labeled_classes, unlabeled_as_classes
from .graph import RibbonGraph, RibbonError
from .orientation import is_orientable

CACHE_VERSION = 1


def top_degree(g, m, min_valence):
    if min_valence >= 3:
        return 6 * g - 6 + 3 * m
    return None


def bottom_degree(g, m):
    return 2 * g - 1 + m


class RibbonComplex:
    """Bases and boundary matrices for one (g, m [, G, X]) family."""

    SIZE_GUARD = 50000  # total basis elements; raise it explicitly if needed

    def __init__(self, genus, faces, min_valence, G=None, X=None,
                 max_edges=None, cache_dir=None, progress=None, jobs=1,
                 size_guard=None):
        if faces < 1:
            raise RibbonError("need at least one face")
        if min_valence >= 3 and 2 - 2 * genus - faces >= 0:
            raise RibbonError("unstable (g, m): no valence>=3 complex")
        self.genus = genus
        self.faces = faces
        self.min_valence = min_valence
        self.G = G
        self.X = tuple(sorted(X)) if X is not None else None
        if (G is None) != (X is None):
            raise RibbonError("labeled complexes need both G and X")
        if X is not None and len(self.X) != faces:
            raise RibbonError("label multiset size must equal the face count")
        top = top_degree(genus, faces, min_valence)
        if top is None:
            if max_edges is None:
                raise RibbonError("valence-2 complexes need max_edges")
            top = max_edges
        elif max_edges is not None:
            top = min(top, max_edges)
        self.kmax = top
        self.kmin = bottom_degree(genus, faces)
        self.basis = {}       # degree -> list of LabeledRibbonGraph (orientable)
        self.index = {}       # degree -> {code: position}
        self.matrices = {}    # degree k -> boundary C_k -> C_{k-1} (row-major)
        if progress is None and cache_dir:
            # stamp the candidate counter every 10^5 pairings so a watcher
            # can see where a long enumeration is; chunk caches make the
            # enumeration itself restartable at partition granularity
            stamp = os.path.join(cache_dir, "enum-progress.txt")

            def progress(count, _path=stamp, _dir=cache_dir):
                os.makedirs(_dir, exist_ok=True)
                with open(_path, "w") as f:
                    f.write("%d\n" % count)
        self._progress = progress
        self._cache_dir = cache_dir
        self._jobs = jobs
        self._size_guard = size_guard or self.SIZE_GUARD
        if not self._load(cache_dir):
            self._build()
            self._store(cache_dir)

    # -- construction -----------------------------------------------------------

    def _classes(self, k):
        if self.genus == 0 and self.faces == 2 and self.min_valence == 2:
            # the polygon family: one underlying graph per edge count
            from .census import polygon_classes
            return polygon_classes(k, self.G, self.X)
        if self.G is not None:
            return labeled_classes(k, self.min_valence, self.G, self.X,
                                   genus=self.genus, progress=self._progress,
                                   cache_dir=self._cache_dir, jobs=self._jobs)
        return unlabeled_as_classes(k, self.min_valence, genus=self.genus,
                                    faces=self.faces, progress=self._progress,
                                    cache_dir=self._cache_dir, jobs=self._jobs)

    def _build(self):
        total = 0
        for k in range(self.kmin, self.kmax + 1):
            basis = [lg for lg in self._classes(k) if lg.is_orientable()]
            total += len(basis)
            if total > self._size_guard:
                raise RibbonError("size guard exceeded (%d basis elements); "
                                  "pass size_guard to raise it" % total)
            self.basis[k] = basis
            self.index[k] = {lg.code: i for i, lg in enumerate(basis)}
        for k in range(self.kmin + 1, self.kmax + 1):
            self.matrices[k] = self._boundary(k)

    def dims(self):
        return {k: len(self.basis.get(k, ())) for k in range(self.kmin, self.kmax + 1)}

    def _boundary(self, k):
        rows = len(self.basis.get(k - 1, ()))
        cols = len(self.basis.get(k, ()))
        mat = [[0] * cols for _ in range(rows)]
        if not cols:
            return mat
        label_key = None
        if self.G is not None:
            label_key = {v: i + 1 for i, v in enumerate(sorted(set(self.G.vertices)))}
        for col, lg in enumerate(self.basis[k]):
            for target, coeff in self._contractions(lg, k, label_key):
                mat[target][col] += coeff
        return mat

    def _contractions(self, lg: LabeledRibbonGraph, k, label_key):
        g = lg.graph
        for i in range(g.num_edges):
            if g.is_loop(i):
                continue
            contracted, dart_map = g.contract(i)
            # faces correspond through surviving darts; collect transport sign
            face_img = []
            for cyc in g.faces:
                d = next(d for d in cyc if d in dart_map)
                face_img.append(contracted.face_of(dart_map[d]))
            face_sign = perm_sign(face_img)
            if self.G is not None:
                labels = [None] * contracted.num_faces
                for old_f, new_f in enumerate(face_img):
                    labels[new_f] = lg.face_labels[old_f]
                dart_labels = [label_key[labels[contracted.face_of(d)]]
                               for d in range(contracted.n)]
            else:
                dart_labels = [0] * contracted.n
            code, perms = contracted.canonical(dart_labels)
            cg = RibbonGraph.from_code(code)
            p0 = perms[0]
            inv0 = [0] * contracted.n
            for d, img in enumerate(p0):
                inv0[img] = d
            auts = [tuple(p[inv0[d]] for d in range(contracted.n)) for p in perms]
            pos = self.index[k - 1].get(code)
            if pos is None:
                if is_orientable(cg, auts):
                    raise RibbonError("boundary left the enumerated basis")
                continue
            # sign of the canonical relabeling on edges and faces
            edge_img = [cg.edge_of(p0[a]) for (a, b) in contracted.edges]
            f2_img = [cg.face_of(p0[cyc[0]]) for cyc in contracted.faces]
            relabel_sign = perm_sign(edge_img) * perm_sign(f2_img)
            sign = (-1) ** i * face_sign * relabel_sign
            yield pos, sign

    # -- exact homology ------------------------------------------------------------

    def betti(self):
        """degree -> (dim, betti) with fraction-free exact ranks."""
        out = {}
        ranks = {}
        for k in range(self.kmin, self.kmax + 1):
            mat = self.matrices.get(k)
            ranks[k] = rank(mat) if mat else 0
        for k in range(self.kmin, self.kmax + 1):
            dim = len(self.basis.get(k, ()))
            rk = ranks.get(k, 0)
            rk1 = ranks.get(k + 1, 0)
            out[k] = (dim, dim - rk - rk1)
        return out

    def euler_characteristic(self):
        return sum((-1) ** k * len(b) for k, b in self.basis.items())

    def check_d_squared(self):
        for k in range(self.kmin + 2, self.kmax + 1):
            a = self.matrices[k - 1]
            b = self.matrices[k]
            if not a or not b:
                continue
            rows, mid, cols = len(a), len(b), len(b[0]) if b else 0
            for i in range(rows):
                for j in range(cols):
                    s = 0
                    for t in range(mid):
                        if a[i][t] and b[t][j]:
                            s += a[i][t] * b[t][j]
                    if s:
                        raise RibbonError("d^2 != 0 at degree %d" % k)
        return True

    # -- cache ---------------------------------------------------------------------

    def _cache_key(self):
        ident = {
            "v": CACHE_VERSION,
            "genus": self.genus,
            "faces": self.faces,
            "min_valence": self.min_valence,
            "kmax": self.kmax,
            "G": None if self.G is None else self.G.key(),
            "X": self.X,
        }
        blob = json.dumps(ident, sort_keys=True, default=list)
        return hashlib.sha256(blob.encode()).hexdigest()[:24]

    def _cache_path(self, cache_dir):
        return os.path.join(cache_dir, "complex-%s.json" % self._cache_key())

    def _load(self, cache_dir):
        if not cache_dir:
            return False
        path = self._cache_path(cache_dir)
        if not os.path.exists(path):
            return False
        with open(path) as f:
            data = json.load(f)
        if data.get("version") != CACHE_VERSION:
            return False
        label_pool = None
        for k_str, items in data["basis"].items():
            k = int(k_str)
            basis = []
            for item in items:
                code = (tuple(item["gamma"]), tuple(item["iota"]), tuple(item["lab"]))
                cg = RibbonGraph.from_code(code)
                auts = [tuple(p) for p in item["auts"]]
                labels = tuple(item["face_labels"]) if self.G is not None \
                    else (None,) * cg.num_faces
                basis.append(LabeledRibbonGraph(cg, labels, code, auts))
            self.basis[k] = basis
            self.index[k] = {lg.code: i for i, lg in enumerate(basis)}
        self.matrices = {int(k): v for k, v in data["matrices"].items()}
        return True

    def _store(self, cache_dir):
        if not cache_dir:
            return
        os.makedirs(cache_dir, exist_ok=True)
        basis = {}
        for k, items in self.basis.items():
            basis[k] = [{
                "gamma": list(lg.code[0]),
                "iota": list(lg.code[1]),
                "lab": list(lg.code[2]),
                "auts": [list(p) for p in lg.auts],
                "face_labels": list(lg.face_labels),
            } for lg in items]
        data = {
            "version": CACHE_VERSION,
            "basis": basis,
            "matrices": {str(k): v for k, v in self.matrices.items()},
        }
        tmp = self._cache_path(cache_dir) + ".tmp"
        with open(tmp, "w") as f:
            json.dump(data, f)
        os.replace(tmp, self._cache_path(cache_dir))
