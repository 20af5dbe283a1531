"""The boundary manifold as a plumbed 3-manifold.

Blowing up every intersection point (double points included) turns the line
arrangement into a plumbing configuration whose graph is the line-point
incidence graph: a line through r points gets Euler number 1 - r, every
exceptional curve gets -1, and all vertices have genus 0.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import (DegenerateArrangement, LineConfiguration, l2_flats)
from .presentation import GroupPresentation, Word, commutator, evaluate
from .snf import AbelianGroupDesc, solve_mod


class Infeasible(ValueError):
    pass


class NotSurjective(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    kind: str  # "line" | "point"
    lines: Tuple[int, ...]
    weight: int
    genus: int = 0

    @property
    def name(self) -> str:
        if self.kind == "line":
            return f"L{self.lines[0]}"
        return "P" + ",".join(map(str, self.lines))


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Tuple[int, int], ...]  # (line vertex, point vertex), sorted

    def neighbors(self, v: int) -> List[int]:
        out = [b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v]
        return sorted(out)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def betti1(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return len(self._bfs_order(0)) == len(self.vertices)

    def _bfs_order(self, root: int) -> List[int]:
        seen = {root}
        order = [root]
        q = deque([root])
        while q:
            v = q.popleft()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    q.append(w)
        return order

    def spanning_tree(self, root: int = 0, method: str = "bfs") -> Tuple[Tuple[int, int], ...]:
        """Edges of a spanning tree, as (line vertex, point vertex) pairs."""
        tree = []
        seen = {root}
        if method == "bfs":
            q = deque([root])
            while q:
                v = q.popleft()
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        tree.append((min(v, w), max(v, w)))
                        q.append(w)
        elif method == "dfs":
            stack = [(root, iter(self.neighbors(root)))]
            while stack:
                v, it = stack[-1]
                w = next(it, None)
                if w is None:
                    stack.pop()
                elif w not in seen:
                    seen.add(w)
                    tree.append((min(v, w), max(v, w)))
                    stack.append((w, iter(self.neighbors(w))))
        else:
            raise ValueError(method)
        return tuple(sorted(tree))

    def summary(self) -> dict:
        return {
            "line_nodes": sum(1 for v in self.vertices if v.kind == "line"),
            "point_nodes": sum(1 for v in self.vertices if v.kind == "point"),
            "edges": len(self.edges),
            "graph_b1": self.betti1,
        }


def plumbing_graph(config: LineConfiguration) -> PlumbingGraph:
    if config.n <= 2:
        raise DegenerateArrangement(f"need at least 3 lines, got n={config.n}")
    pts = l2_flats(config)
    r = [0] * (config.n + 1)
    for p in pts:
        for i in p.lines:
            r[i] += 1
    verts = [Vertex("line", (i,), 1 - r[i]) for i in range(1, config.n + 1)]
    verts += [Vertex("point", p.lines, -1) for p in pts]
    edges = []
    for k, p in enumerate(pts):
        for i in p.lines:
            edges.append((i - 1, config.n + k))
    return PlumbingGraph(tuple(verts), tuple(sorted(edges)))


def _fiber(v: Vertex) -> str:
    return f"g[{v.name}]"


def _boundary(v: Vertex, w: Vertex) -> str:
    return f"d[{v.name};{w.name}]"


def _stable(v: Vertex, w: Vertex) -> str:
    return f"y[{v.name};{w.name}]"


def pi1_presentation(graph: PlumbingGraph,
                     tree: Optional[Sequence[Tuple[int, int]]] = None) -> GroupPresentation:
    """Presentation of pi_1 of the plumbed manifold.

    Generators: a fiber g[v] per vertex, a boundary curve d[v;w] of the chosen
    section per incidence, a stable letter y[v;w] per edge off the spanning
    tree.  Conjugation by y[v;w] carries the torus of w onto the torus of v,
    swapping fiber and section curve.
    """
    if not graph.is_connected():
        raise ValueError("plumbing graph is not connected")
    tree_set = set(graph.spanning_tree() if tree is None else tree)
    V = graph.vertices
    gens: List[str] = [_fiber(v) for v in V]
    inc: List[Tuple[int, int]] = []
    for v in range(len(V)):
        for w in graph.neighbors(v):
            inc.append((v, w))
    gens += [_boundary(V[v], V[w]) for v, w in inc]
    off_tree = [e for e in graph.edges if e not in tree_set]
    gens += [_stable(V[a], V[b]) for a, b in off_tree]
    idx = {g: i + 1 for i, g in enumerate(gens)}
    fib = lambda v: idx[_fiber(V[v])]
    bd = lambda v, w: idx[_boundary(V[v], V[w])]

    rels: List[Word] = []
    for v in range(len(V)):
        nbrs = graph.neighbors(v)
        for w in nbrs:
            rels.append(commutator(fib(v), bd(v, w)))
        w_v = V[v].weight
        g = fib(v)
        power = (-g,) * w_v if w_v > 0 else (g,) * (-w_v)
        rels.append(tuple(bd(v, w) for w in nbrs) + power)
    for a, b in graph.edges:
        if (a, b) in tree_set:
            rels.append((bd(a, b), -fib(b)))
            rels.append((bd(b, a), -fib(a)))
        else:
            y = idx[_stable(V[a], V[b])]
            # d[a;b] = y g[b] y^-1  and  g[a] = y d[b;a] y^-1
            rels.append((bd(a, b), y, -fib(b), -y))
            rels.append((fib(a), y, -bd(b, a), -y))
    return GroupPresentation(tuple(gens), tuple(rels))


@dataclass(frozen=True)
class CharacterMap:
    modulus: int
    values: Tuple[int, ...]  # aligned with the presentation's generators

    def reduce(self, d: int) -> "CharacterMap":
        if d < 1 or self.modulus % d:
            raise ValueError(f"{d} does not divide {self.modulus}")
        return CharacterMap(d, tuple(v % d for v in self.values))

    def value_of(self, pres: GroupPresentation, label: str) -> int:
        return self.values[pres.index(label) - 1]

    def restrict(self, full: GroupPresentation, sub: GroupPresentation) -> "CharacterMap":
        """Values on the generators of ``sub``, a Tietze simplification of ``full``."""
        return CharacterMap(self.modulus,
                            tuple(self.value_of(full, g) for g in sub.generators))

    def kills_relators(self, pres: GroupPresentation) -> bool:
        return all(evaluate(r, self.values, self.modulus) == 0 for r in pres.relators)

    def is_surjective(self) -> bool:
        g = self.modulus
        for v in self.values:
            g = math.gcd(g, v)
        return g == 1


def default_pins(pres: GroupPresentation) -> Dict[str, int]:
    """Line fibers (meridians) go to 1, stable letters to 0."""
    pins = {}
    for g in pres.generators:
        if g.startswith("g[L"):
            pins[g] = 1
        elif g.startswith("y["):
            pins[g] = 0
    return pins


def solve_character(pres: GroupPresentation, n: int,
                    pins: Optional[Dict[str, int]] = None) -> CharacterMap:
    """A homomorphism to Z_n with prescribed values on ``pins`` (default: meridians 1, cycles 0)."""
    pins = default_pins(pres) if pins is None else pins
    free = [i for i, g in enumerate(pres.generators) if g not in pins]
    col = {i: k for k, i in enumerate(free)}
    rows, rhs = [], []
    for r, row in zip(pres.relators, pres.relation_matrix()):
        eq: Dict[int, int] = {}
        c = 0
        for j, v in row.items():
            g = pres.generators[j]
            if g in pins:
                c -= v * pins[g]
            else:
                eq[col[j]] = v
        rows.append(eq)
        rhs.append(c)
    sol = solve_mod(rows, rhs, len(free), n)
    if sol is None:
        raise Infeasible(f"no homomorphism to Z_{n} with the prescribed values")
    values = [0] * pres.ngens
    for i, g in enumerate(pres.generators):
        values[i] = pins[g] % n if g in pins else sol[col[i]]
    chi = CharacterMap(n, tuple(values))
    if not chi.kills_relators(pres):  # pragma: no cover - solve_mod is exact
        raise Infeasible("solution does not kill all relators")
    if not chi.is_surjective():
        raise NotSurjective(f"character is not onto Z_{n}")
    return chi


def h1(pres: GroupPresentation) -> AbelianGroupDesc:
    """Abelianization of a finitely presented group."""
    return pres.abelianization()


@dataclass(frozen=True)
class BoundaryData:
    graph: PlumbingGraph
    presentation: GroupPresentation  # full presentation
    character: CharacterMap
    simplified: GroupPresentation
    simplified_character: CharacterMap


def boundary_manifold(config: LineConfiguration, tree_method: str = "bfs") -> BoundaryData:
    """Plumbing graph, presentation, character and a simplified presentation for covers."""
    graph = plumbing_graph(config)
    tree = graph.spanning_tree(method=tree_method)
    pres = pi1_presentation(graph, tree)
    chi = solve_character(pres, config.n)
    protected = [g for g in pres.generators if g.startswith("g[L") or g.startswith("y[")]
    simple, _ = pres.simplify(protected=protected)
    return BoundaryData(graph, pres, chi, simple, chi.restrict(pres, simple))
