"""Immutable bitset graphs and brute-force regularity engines.

Graphs store one Python integer per vertex as an adjacency bitset, so
common-neighbour counting is a word-parallel AND plus popcount.  On top of
that sit exhaustive verifiers: strong regularity (every vertex pair is
checked), BFS distance computation, distance-i graphs, complements, and
full distance-regularity checking with intersection-array extraction.
Failures carry a witness (the first offending vertex or pair) rather than
a bare boolean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

__all__ = [
    "Graph",
    "IntersectionArray",
    "RegularityFailure",
    "SrgParams",
    "bits",
    "build_graph",
    "check_drg",
    "check_srg",
    "complement",
    "distance_graph",
    "distance_masks",
    "from_edgelist",
    "from_graph6",
    "to_edgelist",
    "to_graph6",
]


def bits(x: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class SrgParams:
    """Parameters (v, k, lambda, mu) of a strongly regular graph.

    The standard feasibility identity k(k - lambda - 1) = (v - k - 1) mu is
    asserted on construction, so an SrgParams value is always feasible.
    """

    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self) -> None:
        if min(self.v, self.k, self.lam, self.mu) < 0:
            raise ValueError("parameters must be nonnegative")
        if self.k * (self.k - self.lam - 1) != (self.v - self.k - 1) * self.mu:
            raise ValueError(
                f"infeasible parameter set {self.as_tuple()}: "
                "k(k-lam-1) != (v-k-1)mu"
            )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def complement_params(self) -> "SrgParams":
        v, k, lam, mu = self.as_tuple()
        return SrgParams(v, v - k - 1, v - 2 - 2 * k + mu, v - 2 * k + lam)

    def __str__(self) -> str:
        return f"({self.v}, {self.k}, {self.lam}, {self.mu})"


@dataclass(frozen=True)
class IntersectionArray:
    """Intersection array {b_0,...,b_{l-1}; c_1,...,c_l} of a distance-regular
    graph of diameter l.

    Construction validates b_i > 0, c_1 = 1, a_i = k - b_i - c_i >= 0 (with
    b_l = 0, c_0 = 0), and integrality of the valencies
    k_{i+1} = k_i b_i / c_{i+1}.
    """

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        b, c = tuple(self.b), tuple(self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if len(b) != len(c) or not b:
            raise ValueError("need equal-length, nonempty b and c sequences")
        if c[0] != 1:
            raise ValueError("c_1 must equal 1")
        if any(x <= 0 for x in b) or any(x <= 0 for x in c):
            raise ValueError("b_i and c_i must be positive")
        for i in range(self.diameter + 1):
            if self.a(i) < 0:
                raise ValueError(f"a_{i} = {self.a(i)} is negative")
        self.valencies()  # raises if some k_i is not a nonnegative integer

    @property
    def diameter(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def a(self, i: int) -> int:
        """a_i = k - b_i - c_i with the conventions b_l = 0, c_0 = 0."""
        l = self.diameter
        bi = self.b[i] if i < l else 0
        ci = self.c[i - 1] if i >= 1 else 0
        return self.k - bi - ci

    def valencies(self) -> tuple[int, ...]:
        """(k_0, ..., k_l) with k_{i+1} = k_i b_i / c_{i+1}."""
        ks = [1]
        for i in range(self.diameter):
            num = ks[-1] * self.b[i]
            den = self.c[i]
            if num % den:
                raise ValueError(f"k_{i + 1} = {num}/{den} is not an integer")
            ks.append(num // den)
        return tuple(ks)

    @property
    def v(self) -> int:
        return sum(self.valencies())

    @classmethod
    def parse(cls, text: str) -> "IntersectionArray":
        """Parse "b0,b1,...;c1,c2,..." (optional braces/spaces)."""
        body = text.strip().strip("{}")
        try:
            b_part, c_part = body.split(";")
            b = tuple(int(x) for x in b_part.split(","))
            c = tuple(int(x) for x in c_part.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse intersection array {text!r}") from exc
        return cls(b, c)

    def __str__(self) -> str:
        return "{%s; %s}" % (
            ",".join(map(str, self.b)),
            ",".join(map(str, self.c)),
        )


@dataclass(frozen=True)
class RegularityFailure:
    """A verification failure with the first offending witness."""

    reason: str
    witness: tuple | None = None
    expected: int | None = None
    found: int | None = None

    def __str__(self) -> str:
        parts = [self.reason]
        if self.witness is not None:
            parts.append(f"at {self.witness}")
        if self.expected is not None:
            parts.append(f"(expected {self.expected}, found {self.found})")
        return " ".join(parts)


class Graph:
    """An immutable simple graph: bitset adjacency rows plus vertex labels."""

    __slots__ = ("n", "rows", "labels")

    def __init__(
        self,
        rows: Sequence[int],
        labels: Sequence[str] | None = None,
        validate: bool = True,
    ):
        object.__setattr__(self, "n", len(rows))
        object.__setattr__(self, "rows", tuple(rows))
        if labels is None:
            labels = tuple(str(i) for i in range(self.n))
        else:
            labels = tuple(str(x) for x in labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.n:
            raise ValueError("label count differs from vertex count")
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def _validate(self) -> None:
        n = self.n
        full = (1 << n) - 1
        for u, row in enumerate(self.rows):
            if row >> n:
                raise ValueError(f"row {u} has bits beyond the vertex range")
            if (row >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
            if row & full != row:
                raise ValueError(f"row {u} out of range")
        for u in range(n):
            ru = self.rows[u]
            for v in bits(ru):
                if v > u:
                    break
                if not (self.rows[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency at ({u}, {v})")
        # Symmetry for v > u is implied once every edge's lower endpoint
        # has been cross-checked; verify the mirror direction too.
        for u in range(n):
            for v in bits(self.rows[u]):
                if v <= u:
                    continue
                if not (self.rows[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency at ({u}, {v})")

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def neighbors(self, u: int) -> list[int]:
        return list(bits(self.rows[u]))

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            row = self.rows[u] >> (u + 1)
            for off in bits(row):
                yield (u, u + 1 + off)

    def relabel(self, labels: Sequence[str]) -> "Graph":
        return Graph(self.rows, labels, validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def build_graph(
    vertices: Sequence,
    adjacent: Callable,
    labels: Callable | None = None,
) -> Graph:
    """Build a graph from a vertex list and a symmetric, irreflexive
    adjacency predicate.

    The predicate is evaluated on unordered pairs (u < v in list order);
    irreflexivity is checked on every vertex and symmetry is spot-checked
    on a deterministic sample of pairs.
    """
    n = len(vertices)
    rows = [0] * n
    for i in range(n):
        vi = vertices[i]
        if adjacent(vi, vi):
            raise ValueError(f"predicate is reflexive at vertex {i}")
        for j in range(i + 1, n):
            if adjacent(vi, vertices[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    step = max(1, n // 16)
    for i in range(0, n, step):
        for j in range(i + 1, n, step):
            if adjacent(vertices[j], vertices[i]) != bool((rows[i] >> j) & 1):
                raise ValueError(f"predicate is asymmetric at ({i}, {j})")
    label_strings = (
        [labels(v) for v in vertices] if labels else [str(v) for v in vertices]
    )
    return Graph(rows, label_strings, validate=False)


def _basic_failure(g: Graph) -> RegularityFailure | None:
    """Shared preconditions: nonempty, regular, connected, non-complete."""
    n = g.n
    if n == 0:
        return RegularityFailure("empty graph")
    k = g.degree(0)
    for u in range(1, n):
        du = g.degree(u)
        if du != k:
            return RegularityFailure(
                "not regular", witness=(0, u), expected=k, found=du
            )
    if k == n - 1:
        return RegularityFailure("complete graph")
    seen = _reachable(g, 0)
    if seen.bit_count() != n:
        unreachable = next(bits(~seen & ((1 << n) - 1)))
        return RegularityFailure("disconnected", witness=(0, unreachable))
    return None


def _reachable(g: Graph, root: int) -> int:
    seen = frontier = 1 << root
    while frontier:
        grow = 0
        for u in bits(frontier):
            grow |= g.rows[u]
        frontier = grow & ~seen
        seen |= frontier
    return seen


def distance_masks(g: Graph, root: int) -> list[int]:
    """Bitsets of the distance classes from root: masks[d] = vertices at
    BFS distance exactly d.  Unreachable vertices are not represented."""
    seen = frontier = 1 << root
    masks = [frontier]
    while True:
        grow = 0
        for u in bits(frontier):
            grow |= g.rows[u]
        frontier = grow & ~seen
        if not frontier:
            return masks
        masks.append(frontier)
        seen |= frontier


def check_srg(g: Graph) -> SrgParams | RegularityFailure:
    """Verify strong regularity by counting common neighbours of every
    vertex pair.  Returns the parameters, or the first violating pair."""
    basic = _basic_failure(g)
    if basic is not None:
        return basic
    n, rows = g.n, g.rows
    k = g.degree(0)
    lam = mu = -1
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            common = (ru & rows[v]).bit_count()
            if (ru >> v) & 1:
                if lam < 0:
                    lam = common
                elif common != lam:
                    return RegularityFailure(
                        "adjacent pairs disagree on common neighbours",
                        witness=(u, v),
                        expected=lam,
                        found=common,
                    )
            else:
                if mu < 0:
                    mu = common
                elif common != mu:
                    return RegularityFailure(
                        "non-adjacent pairs disagree on common neighbours",
                        witness=(u, v),
                        expected=mu,
                        found=common,
                    )
    return SrgParams(n, k, lam, mu)


def check_drg(g: Graph) -> IntersectionArray | RegularityFailure:
    """Verify distance regularity from every root vertex and extract the
    intersection array, or return the first violating pair."""
    basic = _basic_failure(g)
    if basic is not None:
        return basic
    n, rows = g.n, g.rows
    k = g.degree(0)
    diameter = None
    b: list[int] = []
    c: list[int] = []
    for root in range(n):
        masks = distance_masks(g, root)
        l = len(masks) - 1
        if diameter is None:
            diameter = l
            b = [-1] * (l + 1)
            c = [-1] * (l + 1)
            b[0] = k
        elif l != diameter:
            return RegularityFailure(
                "eccentricity varies", witness=(0, root), expected=diameter, found=l
            )
        for d in range(1, l + 1):
            below = masks[d - 1]
            above = masks[d + 1] if d < l else 0
            for v in bits(masks[d]):
                rv = rows[v]
                cd = (rv & below).bit_count()
                bd = (rv & above).bit_count()
                if c[d] < 0:
                    c[d] = cd
                elif cd != c[d]:
                    return RegularityFailure(
                        f"c_{d} not constant",
                        witness=(root, v),
                        expected=c[d],
                        found=cd,
                    )
                if d < l:
                    if b[d] < 0:
                        b[d] = bd
                    elif bd != b[d]:
                        return RegularityFailure(
                            f"b_{d} not constant",
                            witness=(root, v),
                            expected=b[d],
                            found=bd,
                        )
    return IntersectionArray(tuple(b[:diameter]), tuple(c[1:]))


def distance_graph(g: Graph, i: int) -> Graph:
    """The graph on the same vertices joining pairs at BFS distance
    exactly i (empty edge set when i exceeds the diameter)."""
    if i < 1:
        raise ValueError("distance must be >= 1")
    if g.n and _reachable(g, 0).bit_count() != g.n:
        raise ValueError("distance_graph requires a connected graph")
    rows = []
    for root in range(g.n):
        masks = distance_masks(g, root)
        rows.append(masks[i] if i < len(masks) else 0)
    return Graph(rows, g.labels, validate=False)


def complement(g: Graph) -> Graph:
    """Edge iff non-edge (no loops)."""
    full = (1 << g.n) - 1
    rows = [full & ~row & ~(1 << u) for u, row in enumerate(g.rows)]
    return Graph(rows, g.labels, validate=False)


# ---------------------------------------------------------------------------
# Serialization: graph6 (header-free) and plain edge lists
# ---------------------------------------------------------------------------


def _graph6_size(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(
            chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0)
        )
    raise ValueError("graph too large for this graph6 writer")


def to_graph6(g: Graph) -> str:
    """Standard graph6 encoding (no ">>graph6<<" header)."""
    out = [_graph6_size(g.n)]
    buf = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.rows[j]
        for i in range(j):
            buf = (buf << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(buf + 63))
                buf = nbits = 0
    if nbits:
        out.append(chr((buf << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    """Decode a graph6 string (tolerates the optional standard header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ValueError("empty graph6 string")
    if s[0] == "~":
        if len(s) < 4:
            raise ValueError("truncated graph6 size")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n < 0:
        raise ValueError("invalid graph6 size")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need}")
    bitstream = []
    for ch in body:
        value = ord(ch) - 63
        if not 0 <= value < 64:
            raise ValueError(f"invalid graph6 character {ch!r}")
        bitstream.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return Graph(rows, validate=False)


def to_edgelist(g: Graph) -> str:
    """One "u v" pair per line (0-indexed, u < v, sorted), with a leading
    "# vertices N" line so isolated vertices survive a round trip."""
    lines = [f"# vertices {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    """Parse the edge-list format emitted by :func:`to_edgelist`."""
    n = None
    pairs: list[tuple[int, int]] = []
    top = 0
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            tokens = line[1:].split()
            if len(tokens) == 2 and tokens[0] == "vertices":
                n = int(tokens[1])
            continue
        a, b = line.split()
        u, v = int(a), int(b)
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        pairs.append((u, v))
        top = max(top, u, v)
    if n is None:
        n = top + 1 if pairs else 0
    rows = [0] * n
    for u, v in pairs:
        if u >= n or v >= n:
            raise ValueError(f"edge ({u}, {v}) exceeds vertex count {n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(rows, validate=False)
