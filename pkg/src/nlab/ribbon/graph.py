"""Ribbon graphs as permutation pairs on darts.

A ribbon graph is (iota, gamma) on darts 0..n-1: iota a fixed-point-free
involution whose orbits are the edges, gamma a permutation whose orbits
are the vertices (cyclic counterclockwise order of darts).  Faces are the
orbits of gamma o iota; the genus comes from the Euler formula.  Lists of
vertices, edges and faces are sorted by their minimal dart, each orbit
written starting from its minimal dart; the reference orientation of edge
i is the dart pair (min dart, its iota partner).
"""

from __future__ import annotations

import json

from .. import kernels


class RibbonError(ValueError):
    pass


def _orbits(perm):
    n = len(perm)
    seen = [False] * n
    out = []
    for d in range(n):
        if seen[d]:
            continue
        cyc = []
        cur = d
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = perm[cur]
        out.append(tuple(cyc))
    return out


class RibbonGraph:
    __slots__ = ("iota", "gamma", "n", "_vertices", "_edges", "_faces",
                 "_face_of", "_vertex_of", "_edge_of")

    def __init__(self, iota, gamma, check=True):
        self.iota = tuple(iota)
        self.gamma = tuple(gamma)
        self.n = len(self.iota)
        if check:
            n = self.n
            if sorted(self.gamma) != list(range(n)) or sorted(self.iota) != list(range(n)):
                raise RibbonError("iota and gamma must be permutations of 0..n-1")
            for d in range(n):
                if self.iota[d] == d or self.iota[self.iota[d]] != d:
                    raise RibbonError("iota must be a fixed-point-free involution")
        self._vertices = None
        self._edges = None
        self._faces = None
        self._face_of = None
        self._vertex_of = None
        self._edge_of = None

    # -- derived structure -------------------------------------------------

    @property
    def vertices(self):
        if self._vertices is None:
            self._vertices = _orbits(self.gamma)
            self._vertex_of = {}
            for i, cyc in enumerate(self._vertices):
                for d in cyc:
                    self._vertex_of[d] = i
        return self._vertices

    @property
    def edges(self):
        if self._edges is None:
            self._edges = [(d, self.iota[d]) for d in range(self.n) if d < self.iota[d]]
            self._edge_of = {}
            for i, (a, b) in enumerate(self._edges):
                self._edge_of[a] = i
                self._edge_of[b] = i
        return self._edges

    @property
    def faces(self):
        if self._faces is None:
            fperm = [self.gamma[self.iota[d]] for d in range(self.n)]
            self._faces = _orbits(fperm)
            self._face_of = {}
            for i, cyc in enumerate(self._faces):
                for d in cyc:
                    self._face_of[d] = i
        return self._faces

    def vertex_of(self, d):
        self.vertices
        return self._vertex_of[d]

    def edge_of(self, d):
        self.edges
        return self._edge_of[d]

    def face_of(self, d):
        self.faces
        return self._face_of[d]

    @property
    def num_edges(self):
        return self.n // 2

    @property
    def num_faces(self):
        return len(self.faces)

    @property
    def num_vertices(self):
        return len(self.vertices)

    def genus(self):
        if not self.is_connected():
            raise RibbonError("disconnected ribbon graph")
        chi = self.num_vertices - self.num_edges + self.num_faces
        if chi % 2:
            raise RibbonError("odd Euler characteristic; corrupt map")
        g = (2 - chi) // 2
        if g < 0:
            raise RibbonError("negative genus; corrupt map")
        return g

    def valences(self):
        return tuple(sorted(len(v) for v in self.vertices))

    def is_connected(self):
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        k = 1
        while stack:
            d = stack.pop()
            for nb in (self.gamma[d], self.iota[d]):
                if not seen[nb]:
                    seen[nb] = True
                    k += 1
                    stack.append(nb)
        return k == self.n

    def is_loop(self, edge_index):
        a, b = self.edges[edge_index]
        return self.vertex_of(a) == self.vertex_of(b)

    # -- canonical form ------------------------------------------------------

    def canonical(self, labels=None):
        """(code, perms) of the minimal relabeling; labels are per-dart ints."""
        if labels is None:
            labels = [0] * self.n
        return kernels.canonical_data(list(self.iota), list(self.gamma), list(labels))

    @staticmethod
    def from_code(code):
        g2, i2, _ = code
        return RibbonGraph(i2, g2, check=False)

    def relabel(self, perm):
        """Image under an old->new dart bijection."""
        n = self.n
        g2 = [0] * n
        i2 = [0] * n
        for d in range(n):
            g2[perm[d]] = perm[self.gamma[d]]
            i2[perm[d]] = perm[self.iota[d]]
        return RibbonGraph(i2, g2, check=False)

    # -- contraction -----------------------------------------------------------

    def contract(self, edge_index):
        """Contract a non-loop edge.

        Returns (graph, dart_map) with dart_map the order-preserving map
        from surviving old darts to new darts.
        """
        a, b = self.edges[edge_index]
        if self.vertex_of(a) == self.vertex_of(b):
            raise RibbonError("cannot contract a loop")
        gam = list(self.gamma)

        cyc_a = self._cycle_through(a)
        cyc_b = self._cycle_through(b)
        merged = cyc_a[1:] + cyc_b[1:]  # both start at the dead dart
        if merged:
            for i, d in enumerate(merged):
                gam[d] = merged[(i + 1) % len(merged)]
        dead = {a, b}
        dart_map = {}
        k = 0
        for d in range(self.n):
            if d not in dead:
                dart_map[d] = k
                k += 1
        g2 = [0] * k
        i2 = [0] * k
        for d in range(self.n):
            if d in dead:
                continue
            g2[dart_map[d]] = dart_map[gam[d]]
            i2[dart_map[d]] = dart_map[self.iota[d]]
        return RibbonGraph(i2, g2, check=False), dart_map

    def _cycle_through(self, d):
        cyc = [d]
        cur = self.gamma[d]
        while cur != d:
            cyc.append(cur)
            cur = self.gamma[cur]
        return cyc

    # -- serialization ------------------------------------------------------------

    def to_json(self, face_labels=None) -> str:
        data = {
            "half_edges": list(range(self.n)),
            "iota": [list(e) for e in self.edges],
            "gamma": [list(v) for v in self.vertices],
        }
        if face_labels is not None:
            data["labels"] = {"face%d" % i: lab for i, lab in enumerate(face_labels)}
        return json.dumps(data)

    @staticmethod
    def from_json(text):
        """Returns (graph, face_labels or None); faces are indexed by min dart order."""
        data = json.loads(text)
        darts = list(data["half_edges"])
        index = {d: i for i, d in enumerate(darts)}
        n = len(darts)
        iota = [-1] * n
        for a, b in data["iota"]:
            iota[index[a]] = index[b]
            iota[index[b]] = index[a]
        gamma = [-1] * n
        for cyc in data["gamma"]:
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                gamma[index[x]] = index[y]
        if -1 in iota or -1 in gamma:
            raise RibbonError("iota/gamma do not cover all half-edges")
        g = RibbonGraph(iota, gamma)
        labels = None
        if "labels" in data:
            labels = [None] * g.num_faces
            for key, lab in data["labels"].items():
                if not key.startswith("face"):
                    raise RibbonError("bad face key %r" % key)
                labels[int(key[4:])] = lab
            if None in labels:
                raise RibbonError("missing face label")
        return g, labels

    def __repr__(self):
        return "RibbonGraph(V=%d, E=%d, F=%d, g=%d)" % (
            self.num_vertices, self.num_edges, self.num_faces, self.genus())


def polygon(k) -> RibbonGraph:
    """The k-gon: k bivalent vertices in a single cycle (genus 0, 2 faces).

    Vertex j carries darts 2j, 2j+1 with gamma swapping them; dart 2j+1 is
    glued to dart 2(j+1) of the next vertex.
    """
    if k < 1:
        raise RibbonError("polygon needs k >= 1")
    n = 2 * k
    gamma = [0] * n
    iota = [0] * n
    for j in range(k):
        gamma[2 * j] = 2 * j + 1
        gamma[2 * j + 1] = 2 * j
        iota[2 * j + 1] = (2 * j + 2) % n
        iota[(2 * j + 2) % n] = 2 * j + 1
    return RibbonGraph(iota, gamma)
