"""Directed graphs, the edge-list format, and the s-t vertex split."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Arc = tuple[int, int]


class GraphFormatError(ValueError):
    """Raised for malformed or invalid edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class DirectedGraph:
    """Simple digraph on vertices ``0..vertex_count-1``.

    Self-loops and duplicate arcs are rejected at construction.
    """

    vertex_count: int
    arcs: tuple[Arc, ...]
    out_neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, vertex_count: int, arcs: Iterable[Sequence[int]]):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        arcs = tuple((int(a), int(b)) for a, b in arcs)
        seen = set()
        for a, b in arcs:
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise ValueError(f"arc {a}->{b} has a vertex outside [0, {vertex_count})")
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if (a, b) in seen:
                raise ValueError(f"duplicate arc {a}->{b}")
            seen.add((a, b))
        outs: list[list[int]] = [[] for _ in range(vertex_count)]
        ins: list[list[int]] = [[] for _ in range(vertex_count)]
        for a, b in arcs:
            outs[a].append(b)
            ins[b].append(a)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_neighbors", tuple(map(tuple, outs)))
        object.__setattr__(self, "in_neighbors", tuple(map(tuple, ins)))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def has_arc(self, tail: int, head: int) -> bool:
        return head in self.out_neighbors[tail]


@dataclass(frozen=True)
class SplitGraph:
    """Vertex ``split_source`` of an n-vertex graph replaced by a source and a sink.

    The source ``s`` keeps the id of the split vertex and its out-arcs; the
    sink ``t`` is the new vertex ``n`` and receives the in-arcs.  Hamiltonian
    s-t paths here correspond one-to-one with Hamiltonian cycles of the input.
    """

    base: DirectedGraph
    s: int
    t: int
    split_source: int

    @property
    def n(self) -> int:
        """Vertex count of the unsplit graph; also the number of y-variables."""
        return self.base.vertex_count - 1

    @property
    def non_source(self) -> tuple[int, ...]:
        """Row/column order of the Laplacian punctured at s."""
        return tuple(v for v in range(self.base.vertex_count) if v != self.s)


def parse_graph(text: str) -> DirectedGraph:
    """Parse the ``n m`` header + ``tail head`` lines format.

    Blank lines and lines starting with ``#`` are skipped.  Errors carry the
    1-based line number of the offending line.
    """
    header = None
    arcs: list[Arc] = []
    seen: dict[Arc, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("vertex and arc counts must be non-negative", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex id out of range [0, {n})", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        if (a, b) in seen:
            raise GraphFormatError(f"duplicate arc {a} {b} (first on line {seen[a, b]})", lineno)
        seen[a, b] = lineno
        arcs.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header line")
    if len(arcs) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} arcs but {len(arcs)} were given")
    return DirectedGraph(header[0], arcs)


def format_graph(g: DirectedGraph) -> str:
    lines = [f"{g.vertex_count} {g.arc_count}"]
    lines.extend(f"{a} {b}" for a, b in g.arcs)
    return "\n".join(lines) + "\n"


def split_vertex(g: DirectedGraph, u: int = 0) -> SplitGraph:
    if g.vertex_count < 2:
        raise ValueError("splitting needs at least two vertices")
    if not 0 <= u < g.vertex_count:
        raise ValueError(f"split vertex {u} out of range [0, {g.vertex_count})")
    t = g.vertex_count
    arcs = [(a, t if b == u else b) for a, b in g.arcs]
    return SplitGraph(DirectedGraph(g.vertex_count + 1, arcs), s=u, t=t, split_source=u)


def average_outdegree(g: DirectedGraph) -> Fraction:
    if g.vertex_count < 1:
        raise ValueError("average outdegree of the empty graph is undefined")
    return Fraction(g.arc_count, g.vertex_count)


def has_degenerate_vertex(g: DirectedGraph) -> bool:
    """True if some vertex has no in-arcs or no out-arcs (so no Hamiltonian cycle)."""
    return any(not outs or not ins for outs, ins in zip(g.out_neighbors, g.in_neighbors))
