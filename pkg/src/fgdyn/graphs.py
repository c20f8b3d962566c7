"""Dynamics graphs: isoglossy classes of limit points and labeled edges.

A vertex is an isoglossy class (orbit of a limit point under left
translation by the fixed subgroup); an edge labeled ``g`` runs from the
class of the backward limit of ``g`` to the class of its forward limit.
A loop certifies a parabolic orbit.

The graph built from a finite seed set is an under-approximation of the
full dynamics graph and is flagged as such.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .automorphisms import AutoPair
from .dynamics import (
    Boundary,
    DEFAULT_CONFIG,
    IterationConfig,
    LimitPoint,
    PrefixApprox,
    Rational,
    RationalPoint,
    omega_limit,
    prefix_of,
)
from .subgroups import (
    StallingsGraph,
    build_core_graph,
    coset_power_membership,
    enumerate_elements,
)
from .words import Alphabet, Word, common_prefix_length, format_word

COMPLETENESS_FLAG = "sample-based under-approximation"


def verify_fixed_generators(phi: AutoPair, gens: Sequence[Word]) -> bool:
    """True iff every generator is fixed by the forward map."""
    return all(phi.apply(g) == g for g in gens)


def first_unfixed_generator(phi: AutoPair, gens: Sequence[Word]) -> Optional[Word]:
    for g in gens:
        if phi.apply(g) != g:
            return g
    return None


def _rotations(w: Word) -> list[tuple[int, Word]]:
    letters = list(w.letters())
    out = []
    for i in range(len(letters)):
        rotated = letters[i:] + letters[:i]
        out.append((i, Word.from_letters(w.alphabet, rotated)))
    return out


def isogloss(
    H: StallingsGraph,
    x: LimitPoint | RationalPoint,
    y: LimitPoint | RationalPoint,
    search_bound: int = 8,
) -> bool:
    """Whether some element of H translates ``y`` onto ``x``.

    Rational against rational is decided exactly: the periods must agree
    up to cyclic rotation (the head absorbs the phase shift) and a
    coset-power query finds the translating element.  Comparisons that
    involve a prefix approximation fall back to a bounded search over H
    and are heuristic.
    """
    x = _as_point(x)
    y = _as_point(y)
    if isinstance(x, RationalPoint) and isinstance(y, RationalPoint):
        if len(x.period) != len(y.period):
            return False
        for i, rotated in _rotations(y.period):
            if rotated != x.period:
                continue
            # X = head_x . rotated^inf = (head_x . tail of y-period) . y-period^inf
            tail = Word.from_letters(y.period.alphabet, list(y.period.letters())[i:])
            head = x.head * tail
            k = coset_power_membership(H, head, y.period, y.head.inverse())
            return k is not None
        return False
    wx, nx = _point_prefix(x, search_bound)
    wy, ny = _point_prefix(y, search_bound)
    floor = max(1, min(nx, ny) - search_bound)
    wy_first = None if wy.is_identity() else wy.first_letter()
    for h in _elements(H, search_bound):
        if not h.is_identity() and h.last_letter() != -(wy_first or 0):
            # no cancellation at the junction, so h itself must prefix wx
            if common_prefix_length(wx, h) != min(len(h), len(wx)):
                continue
        t = h * wy
        overlap = min(len(wx), len(t))
        if overlap >= floor and common_prefix_length(wx, t) == overlap:
            return True
    return False


_element_cache: dict = {}


def _elements(H: StallingsGraph, bound: int) -> list[Word]:
    key = (H, bound)
    if key not in _element_cache:
        _element_cache[key] = enumerate_elements(H, bound)
    return _element_cache[key]


def _as_point(p):
    if isinstance(p, Rational):
        return p.point
    return p


def _point_prefix(p, search_bound: int) -> tuple[Word, int]:
    if isinstance(p, RationalPoint):
        n = DEFAULT_CONFIG.target_prefix + search_bound + 4
        return prefix_of(p, n), n
    return p.prefix, p.certified_length


@dataclass
class IsoglossyClass:
    representative: LimitPoint
    members: list[LimitPoint] = field(default_factory=list)
    approximate: bool = False

    def text(self) -> str:
        return self.representative.text()


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    labels: tuple[Word, ...]

    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass
class DynamicsGraph:
    alphabet: Alphabet
    vertices: list[IsoglossyClass]
    edges: list[Edge]
    completeness: str = COMPLETENESS_FLAG
    diagnostics: dict = field(default_factory=dict)

    def n_components(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for e in self.edges:
            a, b = find(e.source), find(e.target)
            if a != b:
                parent[a] = b
        return len({find(i) for i in range(len(self.vertices))})


def default_seeds(alphabet: Alphabet) -> list[Word]:
    """All reduced words of length at most 2, in deterministic order."""
    letters = sorted(
        (x for g in range(1, alphabet.rank + 1) for x in (g, -g)),
        key=lambda x: (abs(x), 0 if x > 0 else 1),
    )
    seeds = [Word.from_letters(alphabet, [x]) for x in letters]
    for x, y in itertools.product(letters, repeat=2):
        if y != -x:
            seeds.append(Word.from_letters(alphabet, [x, y]))
    return seeds


def build_graph(
    phi: AutoPair,
    fix_generators: Sequence[Word],
    seeds: Optional[Sequence[Word]] = None,
    cfg: IterationConfig = DEFAULT_CONFIG,
    search_bound: int = 8,
) -> DynamicsGraph:
    """Sample the dynamics graph of ``phi`` over a seed set.

    Every seed with both limits certified contributes one edge from the
    class of its backward limit to the class of its forward limit; edges
    with equal endpoints are merged and keep all labels.  Seeds fixed by
    ``phi`` carry no dynamics and are skipped; seeds whose limits fail to
    certify are reported in the diagnostics.
    """
    bad = first_unfixed_generator(phi, fix_generators)
    if bad is not None:
        raise ValueError(f"claimed fixed generator is not fixed: {format_word(bad)}")
    H = build_core_graph(phi.alphabet, list(fix_generators))
    seeds = default_seeds(phi.alphabet) if seeds is None else list(seeds)

    classes: list[IsoglossyClass] = []
    edge_labels: dict[tuple[int, int], list[Word]] = {}
    skipped_fixed: list[str] = []
    unresolved: list[dict] = []

    def classify(point: LimitPoint) -> int:
        for i, cls in enumerate(classes):
            if isogloss(H, cls.representative, point, search_bound):
                cls.members.append(point)
                if isinstance(point, PrefixApprox) or isinstance(
                    cls.representative, PrefixApprox
                ):
                    cls.approximate = True
                return i
        classes.append(IsoglossyClass(point, [point]))
        return len(classes) - 1

    for seed in seeds:
        if phi.apply(seed) == seed:
            skipped_fixed.append(format_word(seed))
            continue
        forward = omega_limit(phi, seed, cfg)
        backward = omega_limit(phi.inverse(), seed, cfg)
        if not isinstance(forward, Boundary) or not isinstance(backward, Boundary):
            unresolved.append(
                {
                    "seed": format_word(seed),
                    "forward": forward.to_json(),
                    "backward": backward.to_json(),
                }
            )
            continue
        source = classify(backward.point)
        target = classify(forward.point)
        edge_labels.setdefault((source, target), []).append(seed)

    edges = [
        Edge(s, t, tuple(sorted(labels, key=format_word)))
        for (s, t), labels in sorted(edge_labels.items())
    ]
    diagnostics = {"seeds": len(seeds), "fixed_seeds": skipped_fixed}
    if unresolved:
        diagnostics["unresolved"] = unresolved
    return DynamicsGraph(phi.alphabet, classes, edges, COMPLETENESS_FLAG, diagnostics)


def has_parabolic_loop(graph: DynamicsGraph) -> Optional[tuple[IsoglossyClass, tuple[Word, ...]]]:
    """The first loop edge with its vertex and labels, if any."""
    for edge in graph.edges:
        if edge.is_loop():
            return graph.vertices[edge.source], edge.labels
    return None


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(graph: DynamicsGraph) -> str:
    """Deterministic DOT rendering; node names are canonical point texts."""
    names = [cls.text() for cls in graph.vertices]
    lines = ["digraph dynamics {", "  rankdir=LR;", "  node [shape=ellipse];"]
    for name in sorted(names):
        idx = names.index(name)
        style = " [style=dashed]" if isinstance(graph.vertices[idx].representative, PrefixApprox) else ""
        lines.append(f"  {_dot_quote(name)}{style};")
    rendered = sorted(
        (names[e.source], names[e.target], ", ".join(format_word(w) for w in e.labels))
        for e in graph.edges
    )
    for src, dst, label in rendered:
        lines.append(f"  {_dot_quote(src)} -> {_dot_quote(dst)} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: DynamicsGraph) -> dict:
    vertices = []
    for cls in graph.vertices:
        rep = cls.representative
        if isinstance(rep, Rational):
            desc = {
                "type": "rational",
                "head": format_word(rep.point.head),
                "period": format_word(rep.point.period),
            }
        else:
            desc = {
                "type": "prefix",
                "prefix": format_word(rep.prefix),
                "certified_length": rep.certified_length,
            }
        vertices.append(
            {
                "text": cls.text(),
                "point": desc,
                "members": len(cls.members),
                "approximate": cls.approximate,
            }
        )
    return {
        "vertices": vertices,
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "labels": [format_word(w) for w in e.labels],
            }
            for e in graph.edges
        ],
        "components": graph.n_components(),
        "completeness": graph.completeness,
        "diagnostics": graph.diagnostics,
    }


@dataclass(frozen=True)
class GraphTemplate:
    """Expected shape of a dynamics graph, for comparisons against builds."""

    n_vertices: int
    n_edges: int
    n_components: int
    loops: tuple[tuple[str, str], ...] = ()  # (vertex text, one expected label)
    vertex_texts: Optional[tuple[str, ...]] = None
    edge_texts: Optional[tuple[tuple[str, str], ...]] = None

    def matches(self, graph: DynamicsGraph) -> bool:
        return not self.mismatches(graph)

    def mismatches(self, graph: DynamicsGraph) -> list[str]:
        problems = []
        if len(graph.vertices) != self.n_vertices:
            problems.append(f"vertices: {len(graph.vertices)} != {self.n_vertices}")
        if len(graph.edges) != self.n_edges:
            problems.append(f"edges: {len(graph.edges)} != {self.n_edges}")
        if graph.n_components() != self.n_components:
            problems.append(f"components: {graph.n_components()} != {self.n_components}")
        loops = [e for e in graph.edges if e.is_loop()]
        if len(loops) != len(self.loops):
            problems.append(f"loops: {len(loops)} != {len(self.loops)}")
        else:
            got = {
                (graph.vertices[e.source].text(), tuple(format_word(w) for w in e.labels))
                for e in loops
            }
            for vertex_text, label in self.loops:
                if not any(v == vertex_text and label in labels for v, labels in got):
                    problems.append(f"missing loop at {vertex_text} labeled {label}")
        if self.vertex_texts is not None:
            got_texts = sorted(cls.text() for cls in graph.vertices)
            if got_texts != sorted(self.vertex_texts):
                problems.append(f"vertex texts: {got_texts} != {sorted(self.vertex_texts)}")
        if self.edge_texts is not None:
            got_edges = sorted(
                (graph.vertices[e.source].text(), graph.vertices[e.target].text())
                for e in graph.edges
            )
            if got_edges != sorted(self.edge_texts):
                problems.append(f"edge endpoints: {got_edges} != {sorted(self.edge_texts)}")
        return problems
