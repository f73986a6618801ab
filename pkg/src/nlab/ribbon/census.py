"""Enumeration of ribbon graph isomorphism classes, unlabeled and labeled.

Unlabeled classes with prescribed vertex valences come from the kernel
pairing scan (fixed gamma per valence partition, all pairings, canonical
dedupe).  Face labelings by vertices of an adjacency graph G are layered
on top: every edge must separate faces whose labels are adjacent in G,
the label multiset is fixed, and labeled classes are deduplicated by the
label-aware canonical form.
"""

from __future__ import annotations

from itertools import permutations

from .. import kernels
from ..quiver import AdjacencyGraph
from .graph import RibbonGraph, polygon
from .orientation import is_orientable


def partitions(total, min_part):
    """Partitions of `total` into parts >= min_part, weakly decreasing."""
    out = []

    def rec(rest, maxp, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        p = min(rest, maxp)
        while p >= min_part:
            if rest - p == 0 or rest - p >= min_part:
                acc.append(p)
                rec(rest - p, p, acc)
                acc.pop()
            p -= 1

    rec(total, total, [])
    return out


def iso_classes(num_edges, min_valence, genus=None, faces=None, progress=None,
                cache_dir=None, jobs=1):
    """All connected iso classes with the given edge count and valence bound.

    The pairing scan runs one valence partition at a time; with a cache
    directory each completed partition is checkpointed to disk, so a
    restarted enumeration resumes at the first unfinished chunk.  jobs > 1
    spreads partitions over a process pool (deterministic merge).
    """
    n = 2 * num_edges
    want_g = -1 if genus is None else genus
    want_f = -1 if faces is None else faces
    parts = partitions(n, min_valence)
    codes = set()
    pending = []
    for valences in parts:
        cached = _load_scan(cache_dir, valences, want_g, want_f)
        if cached is not None:
            codes.update(cached)
        else:
            pending.append(valences)
    if jobs > 1 and len(pending) > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            results = pool.starmap(
                _scan_chunk, [(list(v), want_g, want_f) for v in pending])
        for valences, found in zip(pending, results):
            _store_scan(cache_dir, valences, want_g, want_f, found)
            codes.update(found)
    else:
        for valences in pending:
            found = kernels.scan_pairings(list(valences), want_g, want_f,
                                          progress)
            _store_scan(cache_dir, valences, want_g, want_f, found)
            codes.update(found)
    return [RibbonGraph.from_code(c) for c in sorted(codes)]


def _scan_chunk(valences, want_g, want_f):
    return kernels.scan_pairings(valences, want_g, want_f, None)


def _scan_path(cache_dir, valences, want_g, want_f):
    import hashlib
    import os
    tag = hashlib.sha256(repr((tuple(valences), want_g, want_f)).encode()) \
        .hexdigest()[:20]
    return os.path.join(cache_dir, "scan-%s.json" % tag)


def _load_scan(cache_dir, valences, want_g, want_f):
    import json
    import os
    if not cache_dir:
        return None
    path = _scan_path(cache_dir, valences, want_g, want_f)
    if not os.path.exists(path):
        return None
    with open(path) as f:
        data = json.load(f)
    return [tuple(tuple(part) for part in code) for code in data]


def _store_scan(cache_dir, valences, want_g, want_f, found):
    import json
    import os
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = _scan_path(cache_dir, valences, want_g, want_f)
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        json.dump([[list(part) for part in code] for code in found], f)
    os.replace(tmp, path)


class LabeledRibbonGraph:
    """A ribbon graph with face labels, stored in label-aware canonical form."""

    __slots__ = ("graph", "face_labels", "code", "auts")

    def __init__(self, graph: RibbonGraph, face_labels, code, auts):
        self.graph = graph
        self.face_labels = tuple(face_labels)
        self.code = code
        self.auts = auts

    def is_orientable(self):
        return is_orientable(self.graph, self.auts)

    def __repr__(self):
        return "Labeled(%r, labels=%s)" % (self.graph, list(self.face_labels))


def canonical_labeled(graph: RibbonGraph, face_labels, label_key) -> LabeledRibbonGraph:
    """Rebuild a labeled graph in its canonical form.

    label_key: label -> int, a fixed injection used inside the code.
    """
    dart_labels = [label_key[face_labels[graph.face_of(d)]] for d in range(graph.n)]
    code, perms = graph.canonical(dart_labels)
    cg = RibbonGraph.from_code(code)
    key_to_label = {v: k for k, v in label_key.items()}
    lab = [key_to_label[code[2][cyc[0]]] for cyc in cg.faces]
    # automorphisms of the canonical labeled graph
    p0 = perms[0]
    inv0 = [0] * graph.n
    for d, img in enumerate(p0):
        inv0[img] = d
    auts = []
    for p in perms:
        auts.append(tuple(p[inv0[d]] for d in range(graph.n)))
    return LabeledRibbonGraph(cg, lab, code, auts)


def label_assignments(graph: RibbonGraph, G: AdjacencyGraph, X):
    """All face labelings with multiset X respecting G-adjacency, not deduped."""
    m = graph.num_faces
    if len(X) != m:
        return
    side_pairs = set()
    for (a, b) in graph.edges:
        side_pairs.add((graph.face_of(a), graph.face_of(b)))
    seen = set()
    for perm in permutations(X):
        if perm in seen:
            continue
        seen.add(perm)
        ok = True
        for fa, fb in side_pairs:
            if not G.adjacent(perm[fa], perm[fb]):
                ok = False
                break
        if ok:
            yield perm


def labeled_classes(num_edges, min_valence, G: AdjacencyGraph, X,
                    genus=None, progress=None, cache_dir=None, jobs=1):
    """Labeled iso classes: X an unordered label tuple, one label per face."""
    X = tuple(sorted(X))
    label_key = {v: i + 1 for i, v in enumerate(sorted(set(G.vertices)))}
    out = {}
    for graph in iso_classes(num_edges, min_valence, genus=genus,
                             faces=len(X), progress=progress,
                             cache_dir=cache_dir, jobs=jobs):
        for lab in label_assignments(graph, G, X):
            lg = canonical_labeled(graph, lab, label_key)
            out.setdefault(lg.code, lg)
    return [out[c] for c in sorted(out)]


def unlabeled_as_classes(num_edges, min_valence, genus=None, faces=None,
                         progress=None, cache_dir=None, jobs=1):
    """Unlabeled classes wrapped with trivial labels (single-label complexes)."""
    out = []
    for graph in iso_classes(num_edges, min_valence, genus=genus, faces=faces,
                             progress=progress, cache_dir=cache_dir, jobs=jobs):
        code, perms = graph.canonical()
        cg = RibbonGraph.from_code(code)
        p0 = perms[0]
        inv0 = [0] * graph.n
        for d, img in enumerate(p0):
            inv0[img] = d
        auts = [tuple(p[inv0[d]] for d in range(graph.n)) for p in perms]
        out.append(LabeledRibbonGraph(cg, (None,) * cg.num_faces, code, auts))
    return out


def polygon_class(k, face_labels=(None, None)):
    """The k-gon as a (possibly labeled) class; its own fast path."""
    g = polygon(k)
    if face_labels == (None, None):
        code, perms = g.canonical()
    else:
        key = {v: i + 1 for i, v in enumerate(sorted(set(face_labels)))}
        return canonical_labeled(g, face_labels, key)
    cg = RibbonGraph.from_code(code)
    p0 = perms[0]
    inv0 = [0] * g.n
    for d, img in enumerate(p0):
        inv0[img] = d
    auts = [tuple(p[inv0[d]] for d in range(g.n)) for p in perms]
    return LabeledRibbonGraph(cg, (None,) * cg.num_faces, code, auts)


def polygon_classes(k, G=None, X=None):
    """All (labeled) classes of the genus-0 two-face valence-2 family.

    With valences all >= 2 and |E| = |V| the only connected graphs are the
    polygons, one per edge count, so the pairing scan is bypassed.
    """
    if G is None:
        return [polygon_class(k)]
    X = tuple(sorted(X))
    out = {}
    g = polygon(k)
    for lab in label_assignments(g, G, X):
        key = {v: i + 1 for i, v in enumerate(sorted(set(G.vertices)))}
        lg = canonical_labeled(g, lab, key)
        out.setdefault(lg.code, lg)
    return [out[c] for c in sorted(out)]
