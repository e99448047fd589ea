"""Constructors for the graph families, with exact closed-form parameters.

Each family is built from first principles on top of :mod:`srgkit.geometry`
(formed spaces, point and subspace enumeration) or plain combinatorics, and
is returned as a :class:`srgkit.graphcore.Graph` ready for brute-force
verification.  Families whose strongly-regular parameters have a closed form
get an exact big-integer evaluator (:func:`params_closed_form`), so tests can
compare a constructed graph against an independently evaluated formula.

The pair-classification builders (:func:`build_unitary_orbitals`,
:func:`build_orthogonal_orbitals`, :func:`build_flag_orbitals`,
:func:`hamming_classification`) partition the ordered vertex pairs by an
algebraic invariant, return one graph per class, and compute the full
intersection-number tensor of the partition by direct counting.  Where a
small matrix-group action is available (flags of a projective plane) the
set-theoretic classes are cross-checked against genuine group orbitals.

Every constructor predicts its vertex count from a formula first and
refuses to enumerate past a configurable budget (:class:`ScaleGuardError`),
so a typo in parameters fails fast instead of grinding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from math import comb
from typing import Mapping

from .geometry import (
    FormedSpace,
    ProjectivePoint,
    enumerate_flags,
    enumerate_max_isotropic,
    enumerate_points,
    enumerate_subspaces,
    line_tangency_count,
    perp_type,
    projective_reps,
)
from .gf import FieldElement, field_of_order, norm, quadratic_character
from .graphcore import Graph, IntersectionArray, SrgParams, build_graph, complement, distance_graph
from .orbitals import OrbitalPartition, PermGroupAction, compute_orbitals
from .schemes import IntersectionTensor, tensor_from_orbital_partition

__all__ = [
    "DEFAULT_MAX_V",
    "FamilyId",
    "OrbitalClassification",
    "ScaleGuardError",
    "build_NO",
    "build_NU",
    "build_dual_polar_sp6",
    "build_dual_polar_sp6_dist3",
    "build_family",
    "build_flag_orbitals",
    "build_grassmann",
    "build_hamming_orbital",
    "build_johnson",
    "build_orthogonal_orbitals",
    "build_polar_complement",
    "build_unitary_orbitals",
    "flag_M",
    "flag_action",
    "gaussian_binomial",
    "grassmann_intersection_array",
    "hamming_M",
    "hamming_classification",
    "hamming_srg_criterion",
    "params_closed_form",
    "parse_family_spec",
]

# Constructions refuse to enumerate more vertices than this unless the
# caller raises the budget explicitly.
DEFAULT_MAX_V = 2000


class ScaleGuardError(ValueError):
    """A construction would exceed the configured vertex budget."""

    def __init__(self, family: str, predicted_v: int, max_v: int):
        super().__init__(
            f"{family} has {predicted_v} vertices, over the budget of "
            f"{max_v}; pass a larger max_v to build it anyway"
        )
        self.family = family
        self.predicted_v = predicted_v
        self.max_v = max_v


def _guard(family: str, predicted_v: int, max_v: int) -> None:
    if predicted_v > max_v:
        raise ScaleGuardError(family, predicted_v, max_v)


def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise AssertionError(f"{num} is not divisible by {den}")
    return num // den


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """The Gaussian binomial [n choose k]_q: the number of k-dimensional
    subspaces of F_q^n, as an exact integer."""
    if k < 0 or k > n:
        return 0
    value = 1
    for i in range(k):
        value = _exact_div(value * (q ** (n - i) - 1), q ** (i + 1) - 1)
    return value


# ---------------------------------------------------------------------------
# Family identifiers
# ---------------------------------------------------------------------------

# tag -> required parameter names
_TAG_PARAMS: dict[str, tuple[str, ...]] = {
    "NU": ("n", "q"),
    "NO": ("eps", "m", "q"),
    "polar-complement-O7": ("q",),
    "polar-complement-O8+": ("q",),
    "dual-polar-sp6": ("q",),
    "dual-polar-sp6-dist3": ("q",),
    "grassmann": ("n", "q"),
    "johnson": ("i", "n"),
    "hamming-orbital": ("d", "i"),
    "flag-orbital": ("i", "q"),
    "unitary-orbital": ("n", "q"),
    "orthogonal-orbital": ("eps", "m", "q"),
}


@dataclass(frozen=True)
class FamilyId:
    """A graph family tag plus its parameters, normalized and validated."""

    tag: str
    params: tuple[tuple[str, int | str], ...]

    def __post_init__(self):
        if self.tag not in _TAG_PARAMS:
            raise ValueError(f"unknown family tag {self.tag!r}")
        names = tuple(name for name, _ in self.params)
        if names != _TAG_PARAMS[self.tag]:
            raise ValueError(
                f"{self.tag} takes parameters {_TAG_PARAMS[self.tag]}, "
                f"got {names}"
            )
        p = dict(self.params)
        if "q" in p and (not isinstance(p["q"], int) or p["q"] < 2):
            raise ValueError("q must be an integer >= 2")
        if "eps" in p and p["eps"] not in ("+", "-"):
            raise ValueError("eps must be '+' or '-'")
        if self.tag in ("NU", "unitary-orbital") and p["n"] < 3:
            raise ValueError(f"{self.tag} needs n >= 3")
        if self.tag in ("NO", "orthogonal-orbital"):
            if p["m"] < 1:
                raise ValueError(f"{self.tag} needs m >= 1")
            if p["q"] % 2 == 0:
                raise ValueError(f"{self.tag} needs odd q")
        if self.tag == "grassmann" and p["n"] < 6:
            raise ValueError("grassmann needs n >= 6")
        if self.tag == "johnson":
            if p["n"] < 7:
                raise ValueError("johnson needs n >= 7")
            if p["i"] not in (0, 1, 2):
                raise ValueError("johnson needs i in {0, 1, 2}")
        if self.tag == "hamming-orbital":
            if p["d"] < 2:
                raise ValueError("hamming-orbital needs d >= 2")
            if p["i"] not in (1, 2, 3):
                raise ValueError("hamming-orbital needs i in {1, 2, 3}")
        if self.tag == "flag-orbital" and p["i"] not in (1, 2, 3):
            raise ValueError("flag-orbital needs i in {1, 2, 3}")

    @classmethod
    def make(cls, tag: str, **params) -> "FamilyId":
        return cls(tag, tuple(sorted(params.items())))

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.tag}({inner})"


# CLI-style family strings: "<head>:<k>=<v>,...".  polarC carries its kind
# as a bare first token ("polarC:O8+,q=2").
_SPEC_HEADS = {
    "nu": "NU",
    "no": "NO",
    "sp6": "dual-polar-sp6",
    "sp6d3": "dual-polar-sp6-dist3",
    "johnson": "johnson",
    "hamming": "hamming-orbital",
    "flags": "flag-orbital",
    "grassmann": "grassmann",
}


def parse_family_spec(text: str) -> FamilyId:
    """Parse a family selection string such as ``nu:n=3,q=3`` or
    ``polarC:O8+,q=2`` into a validated :class:`FamilyId`."""
    head, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"family spec {text!r} needs '<family>:<params>'")
    items = [s.strip() for s in rest.split(",") if s.strip()]
    if head == "polarC":
        if not items or "=" in items[0]:
            raise ValueError(
                "polarC needs its kind first, e.g. 'polarC:O8+,q=2'"
            )
        kind = items.pop(0).replace("_", "")
        if kind not in ("O7", "O8+"):
            raise ValueError(f"unknown polar-complement kind {kind!r}")
        tag = f"polar-complement-{kind}"
    elif head in _SPEC_HEADS:
        tag = _SPEC_HEADS[head]
    else:
        raise ValueError(f"unknown family {head!r}")
    params: dict[str, int | str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"malformed parameter {item!r} (expected k=v)")
        key = key.strip()
        value = value.strip()
        if key == "eps":
            params[key] = value
        else:
            try:
                params[key] = int(value)
            except ValueError:
                raise ValueError(f"parameter {key} needs an integer, got {value!r}")
    if tag == "flag-orbital":
        params.setdefault("i", 2)
    expected = set(_TAG_PARAMS[tag])
    if set(params) != expected:
        raise ValueError(
            f"{head} needs parameters {sorted(expected)}, got {sorted(params)}"
        )
    return FamilyId.make(tag, **params)


# ---------------------------------------------------------------------------
# Closed-form parameters
# ---------------------------------------------------------------------------


def params_closed_form(fid: FamilyId) -> SrgParams:
    """Exact big-integer evaluation of the family's closed-form strongly
    regular parameters.  Raises ValueError for families without one."""
    p = dict(fid.params)
    if fid.tag in ("NU", "unitary-orbital"):
        n, q = p["n"], p["q"]
        s = (-1) ** n
        return SrgParams(
            _exact_div(q ** (n - 1) * (q**n - s), q + 1),
            (q ** (n - 1) + s) * (q ** (n - 2) - s),
            q ** (2 * n - 5) * (q + 1) - s * q ** (n - 2) * (q - 1) - 2,
            q ** (n - 3) * (q + 1) * (q ** (n - 2) - s),
        )
    if fid.tag in ("NO", "orthogonal-orbital"):
        m, q = p["m"], p["q"]
        e = 1 if p["eps"] == "+" else -1
        return SrgParams(
            _exact_div(q**m * (q**m + e), 2),
            (q ** (m - 1) + e) * (q**m - e),
            2 * (q ** (2 * m - 2) - 1) + e * q ** (m - 1) * (q - 1),
            2 * q ** (m - 1) * (q ** (m - 1) + e),
        )
    if fid.tag in ("polar-complement-O8+", "dual-polar-sp6-dist3"):
        q = p["q"]
        return SrgParams(
            (q**3 + 1) * (q**2 + 1) * (q + 1),
            q**6,
            q**2 * (q - 1) * (q**3 - 1),
            q**5 * (q - 1),
        )
    if fid.tag == "polar-complement-O7":
        q = p["q"]
        return SrgParams(
            _exact_div(q**6 - 1, q - 1),
            q**5,
            q**4 * (q - 1),
            q**4 * (q - 1),
        )
    raise ValueError(f"{fid.tag} has no closed-form parameters")


# ---------------------------------------------------------------------------
# Pair classifications (a partition of ordered vertex pairs by an invariant)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitalClassification:
    """A partition of the ordered vertex pairs of a graph family into
    symmetric classes, with one graph per class and the full
    intersection-number tensor computed by direct counting.

    ``labels`` lists the non-diagonal class labels in ascending order;
    partition class ``c >= 1`` carries label ``labels[c - 1]`` and the
    diagonal is class 0.
    """

    points: tuple
    labels: tuple[int, ...]
    partition: OrbitalPartition
    graphs: Mapping[int, Graph]
    suborbit_lengths: Mapping[int, int]
    tensor: IntersectionTensor
    eps: str | None = None

    def class_index(self, label: int) -> int:
        """Partition class index of a non-diagonal label."""
        return 1 + self.labels.index(label)


def _classify_pairs(
    points, pair_label, vertex_label, eps: str | None = None
) -> OrbitalClassification:
    """Build an :class:`OrbitalClassification` from a symmetric pair
    invariant ``pair_label(i, j) -> int`` on index pairs ``i != j``."""
    n = len(points)
    raw = [0] * (n * n)
    labels_present: set[int] = set()
    for i in range(n):
        base = i * n
        for j in range(n):
            if i == j:
                raw[base + j] = -1
            else:
                lab = pair_label(i, j)
                raw[base + j] = lab
                labels_present.add(lab)
    labels = tuple(sorted(labels_present))
    to_class = {lab: c + 1 for c, lab in enumerate(labels)}
    to_class[-1] = 0
    class_of = tuple(to_class[r] for r in raw)
    rank = 1 + len(labels)
    for i in range(n):
        base = i * n
        for j in range(i + 1, n):
            if class_of[base + j] != class_of[j * n + i]:
                raise AssertionError(
                    f"pair invariant is asymmetric at ({i}, {j})"
                )
    reps = [(0, 0)]
    for lab in labels:
        c = to_class[lab]
        y = next((y for y in range(n) if class_of[y] == c), None)
        if y is None:
            raise AssertionError(
                f"pair class {lab} has no representative in the base row"
            )
        reps.append((0, y))
    lengths = [0] * rank
    for y in range(n):
        lengths[class_of[y]] += 1
    partition = OrbitalPartition(
        degree=n,
        rank=rank,
        class_of=class_of,
        paired=tuple(range(rank)),
        reps=tuple(reps),
        suborbit_lengths=tuple(lengths),
    )
    rows_by_class = [[0] * n for _ in range(rank)]
    for i in range(n):
        base = i * n
        for j in range(n):
            if j != i:
                rows_by_class[class_of[base + j]][i] |= 1 << j
    names = [vertex_label(p) for p in points]
    graphs = {
        lab: Graph(rows_by_class[to_class[lab]], names, validate=False)
        for lab in labels
    }
    return OrbitalClassification(
        points=tuple(points),
        labels=labels,
        partition=partition,
        graphs=graphs,
        suborbit_lengths={lab: lengths[to_class[lab]] for lab in labels},
        tensor=tensor_from_orbital_partition(partition),
        eps=eps,
    )


# ---------------------------------------------------------------------------
# Nonisotropic unitary graphs
# ---------------------------------------------------------------------------


def _hermitian_space(n: int, q: int) -> FormedSpace:
    return FormedSpace("hermitian", field_of_order(q * q), n)


def build_NU(n: int, q: int, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Graph on the nonsingular points of the n-dimensional hermitian space
    over F_{q^2}, two points adjacent exactly when the line joining them is
    tangent to the hermitian variety (contains exactly one singular point)."""
    predicted = params_closed_form(FamilyId.make("NU", n=n, q=q)).v
    _guard(f"NU_{n}({q})", predicted, max_v)
    space = _hermitian_space(n, q)
    points = enumerate_points(space, "nonsingular")
    if len(points) != predicted:
        raise AssertionError(
            f"enumerated {len(points)} nonsingular points, expected {predicted}"
        )
    return build_graph(
        points,
        lambda a, b: a.rep != b.rep and line_tangency_count(space, a, b) == 1,
        labels=str,
    )


def build_unitary_orbitals(
    n: int, q: int, max_v: int = DEFAULT_MAX_V
) -> OrbitalClassification:
    """Partition of the ordered pairs of nonsingular hermitian points by the
    relative norm of the inner product h(x, y) of unit representatives.

    Labels are indices in the norm's value field: 0 for perpendicular
    pairs, 1 for the tangency class, and one label per further norm value.
    The labeling is representative-independent because rescaling unit
    vectors multiplies h(x, y) by an element of norm 1.
    """
    predicted = params_closed_form(FamilyId.make("NU", n=n, q=q)).v
    _guard(f"NU_{n}({q}) pair classes", predicted, max_v)
    space = _hermitian_space(n, q)
    field = space.field
    points = enumerate_points(space, "nonsingular")
    if len(points) != predicted:
        raise AssertionError(
            f"enumerated {len(points)} nonsingular points, expected {predicted}"
        )
    norm_index = [norm(FieldElement(field, a)).index for a in range(field.q)]
    reps = [p.rep for p in points]
    inner = space.inner

    def pair_label(i: int, j: int) -> int:
        return norm_index[inner(reps[i], reps[j])]

    return _classify_pairs(points, pair_label, str)


# ---------------------------------------------------------------------------
# Nonisotropic orthogonal graphs (odd dimension, odd q)
# ---------------------------------------------------------------------------


def _least_nonsquare(field) -> int:
    """Index of the least non-square element of an odd-order field."""
    return next(
        s
        for s in range(2, field.q)
        if quadratic_character(FieldElement(field, s)) == -1
    )


def _orthogonal_point_classes(m: int, q: int):
    """The two square-classes of nonsingular points of the (2m+1)-dimensional
    quadratic space over F_q, each tagged with its perpendicular-space type.

    Returns (space, {eps: (points, form_value_index)}).
    """
    space = FormedSpace("quadratic-odd", field_of_order(q), 2 * m + 1)
    zeta = _least_nonsquare(space.field)
    by_eps = {}
    for value in (1, zeta):
        points = enumerate_points(space, "norm-class", value)
        eps_samples = {perp_type(space, p) for p in points[:3]}
        if len(eps_samples) != 1:
            raise AssertionError("mixed perpendicular types in a square class")
        eps = eps_samples.pop()
        expected = params_closed_form(
            FamilyId.make("NO", m=m, q=q, eps=eps)
        ).v
        if len(points) != expected:
            raise AssertionError(
                f"square class has {len(points)} points, expected {expected} "
                f"for type {eps}"
            )
        by_eps[eps] = (points, value)
    if set(by_eps) != {"+", "-"}:
        raise AssertionError("the two square classes share a type")
    return space, by_eps


def build_NO(m: int, q: int, eps: str, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Graph on the nonsingular points of the (2m+1)-dimensional quadratic
    space over odd F_q whose perpendicular space has type ``eps``, two
    points adjacent exactly when the line joining them is tangent to the
    quadric."""
    fid = FamilyId.make("NO", m=m, q=q, eps=eps)
    _guard(f"NO_{2 * m + 1}^{eps}({q})", params_closed_form(fid).v, max_v)
    space, by_eps = _orthogonal_point_classes(m, q)
    points, _ = by_eps[eps]
    return build_graph(
        points,
        lambda a, b: a.rep != b.rep and line_tangency_count(space, a, b) == 1,
        labels=str,
    )


def build_orthogonal_orbitals(
    m: int, q: int, eps: str | None = None, max_v: int = DEFAULT_MAX_V
) -> OrbitalClassification:
    """Partition of the ordered pairs of one square-class of nonsingular
    points by the halved bilinear form of the representatives, divided by
    the class's common form value and read up to sign.

    Labels are 0 (perpendicular), 1 (the tangency class), and one label per
    further plus-minus pair of field values.  ``eps`` selects the vertex
    class by perpendicular-space type; the default takes the class whose
    representatives have form value 1.
    """
    space, by_eps = _orthogonal_point_classes(m, q)
    if eps is None:
        eps = next(e for e, (_, value) in by_eps.items() if value == 1)
    points, c_value = by_eps[eps]
    fid = FamilyId.make("NO", m=m, q=q, eps=eps)
    _guard(
        f"NO_{2 * m + 1}^{eps}({q}) pair classes",
        params_closed_form(fid).v,
        max_v,
    )
    field = space.field
    mul, neg = field.mul_table, field.neg_table
    inv_c = field.inv_table[c_value]
    reps = [p.rep for p in points]
    half_inner = space.half_inner

    def pair_label(i: int, j: int) -> int:
        t = mul[half_inner(reps[i], reps[j])][inv_c]
        return min(t, neg[t])

    return _classify_pairs(points, pair_label, str, eps=eps)


# ---------------------------------------------------------------------------
# Polar-graph complements
# ---------------------------------------------------------------------------


def build_polar_complement(
    kind: str, q: int, max_v: int = DEFAULT_MAX_V
) -> Graph:
    """Complement of the perpendicularity graph on the singular points of a
    quadratic space: ``kind`` is "O7" (dimension 7) or "O8+" (dimension 8,
    plus type)."""
    kind = kind.replace("_", "")
    if kind == "O7":
        fid = FamilyId.make("polar-complement-O7", q=q)
        space = FormedSpace("quadratic-odd", field_of_order(q), 7)
    elif kind == "O8+":
        fid = FamilyId.make("polar-complement-O8+", q=q)
        space = FormedSpace("quadratic-plus", field_of_order(q), 8)
    else:
        raise ValueError(f"unknown polar-complement kind {kind!r}")
    predicted = params_closed_form(fid).v
    _guard(f"polar complement {kind}({q})", predicted, max_v)
    points = enumerate_points(space, "singular")
    if len(points) != predicted:
        raise AssertionError(
            f"enumerated {len(points)} singular points, expected {predicted}"
        )
    inner = space.inner
    polar = build_graph(
        points,
        lambda a, b: a.rep != b.rep and inner(a.rep, b.rep) == 0,
        labels=str,
    )
    return complement(polar)


# ---------------------------------------------------------------------------
# Dual polar graph of the 6-dimensional symplectic space
# ---------------------------------------------------------------------------


def build_dual_polar_sp6(q: int, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Graph on the maximal (3-dimensional) totally isotropic subspaces of
    the 6-dimensional symplectic space over F_q, two subspaces adjacent
    exactly when they meet in a 2-space (q+1 common projective points)."""
    predicted = (q**3 + 1) * (q**2 + 1) * (q + 1)
    _guard(f"dual polar Sp6({q})", predicted, max_v)
    field = field_of_order(q)
    space = FormedSpace("symplectic", field, 6)
    subspaces = enumerate_max_isotropic(space)
    point_index = {
        rep: i for i, rep in enumerate(projective_reps(field, 6))
    }
    points_per_space = q * q + q + 1
    masks = []
    for s in subspaces:
        point_reps = s.point_reps(field)
        if len(point_reps) != points_per_space:
            raise AssertionError(
                f"a maximal isotropic 3-space has {len(point_reps)} points"
            )
        mask = 0
        for rep in point_reps:
            mask |= 1 << point_index[rep]
        masks.append(mask)
    n = len(subspaces)
    meet_in_line = q + 1
    rows = [0] * n
    for i in range(n):
        mi = masks[i]
        acc = rows[i]
        for j in range(i + 1, n):
            if (mi & masks[j]).bit_count() == meet_in_line:
                acc |= 1 << j
                rows[j] |= 1 << i
        rows[i] = acc
    return Graph(rows, [str(s) for s in subspaces], validate=False)


def build_dual_polar_sp6_dist3(q: int, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Distance-3 graph of :func:`build_dual_polar_sp6`."""
    return distance_graph(build_dual_polar_sp6(q, max_v), 3)


# ---------------------------------------------------------------------------
# Generalized Johnson graphs J(n, 3, i)
# ---------------------------------------------------------------------------


def build_johnson(n: int, i: int, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Graph on the 3-element subsets of {1..n}, two subsets adjacent
    exactly when their intersection has size ``i``."""
    FamilyId.make("johnson", n=n, i=i)
    predicted = comb(n, 3)
    _guard(f"J({n},3,{i})", predicted, max_v)
    vertices = [frozenset(c) for c in itertools.combinations(range(1, n + 1), 3)]
    return build_graph(
        vertices,
        lambda a, b: a is not b and len(a & b) == i,
        labels=lambda s: "{" + ",".join(map(str, sorted(s))) + "}",
    )


# ---------------------------------------------------------------------------
# Hamming-style orbitals: words of length 3, classified by disagreements
# ---------------------------------------------------------------------------


def hamming_M(d: int) -> tuple[tuple[int, ...], ...]:
    """The 3x3 matrix with entry (i, j) equal to the intersection number
    p^i_{jj} of the distance classification of length-3 words over a
    d-letter alphabet (rows and columns indexed by distances 1..3).

    Off-diagonal entries use the closed forms 2(d-1)(d-2), (d-2)(d-1)^2, 2,
    (d-1)(d-2)^2, 0, 6(d-2); diagonal entries follow from the row-sum
    identity sum_h k_h p^h_{jj} = k_j^2.
    """
    if d < 2:
        raise ValueError("need an alphabet of at least two letters")
    k = (3 * (d - 1), 3 * (d - 1) ** 2, (d - 1) ** 3)
    m = [
        [0, 2 * (d - 1) * (d - 2), (d - 2) * (d - 1) ** 2],
        [2, 0, (d - 1) * (d - 2) ** 2],
        [0, 6 * (d - 2), 0],
    ]
    for j in range(3):
        off = sum(k[h] * m[h][j] for h in range(3) if h != j)
        m[j][j] = _exact_div(k[j] ** 2 - k[j] - off, k[j])
    return tuple(tuple(row) for row in m)


def hamming_srg_criterion(d: int) -> bool:
    """Whether the two non-adjacent pair classes of the distance-2 word
    graph see equally many common distance-2 neighbours (p^1_{22} equals
    p^3_{22}) — for d >= 3 exactly the condition for that graph to be
    strongly regular."""
    m = hamming_M(d)
    return m[0][1] == m[2][1]


def _words(d: int) -> list[tuple[int, int, int]]:
    return list(itertools.product(range(d), repeat=3))


def build_hamming_orbital(d: int, i: int, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Graph on the length-3 words over a d-letter alphabet, two words
    adjacent exactly when they disagree in ``i`` coordinates."""
    FamilyId.make("hamming-orbital", d=d, i=i)
    _guard(f"H(3,{d}) class {i}", d**3, max_v)
    return build_graph(
        _words(d),
        lambda a, b: sum(1 for x, y in zip(a, b) if x != y) == i,
        labels=str,
    )


def hamming_classification(
    d: int, max_v: int = DEFAULT_MAX_V
) -> OrbitalClassification:
    """Partition of ordered pairs of length-3 words by the number of
    disagreeing coordinates (labels 1..3), with its direct-count tensor."""
    if d < 2:
        raise ValueError("need an alphabet of at least two letters")
    _guard(f"H(3,{d}) pair classes", d**3, max_v)
    words = _words(d)

    def pair_label(i: int, j: int) -> int:
        return sum(1 for x, y in zip(words[i], words[j]) if x != y)

    return _classify_pairs(words, pair_label, str)


# ---------------------------------------------------------------------------
# Flag orbitals of the projective plane PG(2, q)
# ---------------------------------------------------------------------------


def flag_M(q: int) -> tuple[tuple[int, ...], ...]:
    """The 3x3 matrix with entry (i, j) equal to the intersection number
    p^i_{jj} of the flag pair classification of PG(2, q) (rows and columns
    indexed by the non-diagonal classes 1..3).

    Off-diagonal entries use the closed forms q(q-1), q^2(q-1), 1,
    q(q-1)^2, 0, 4(q-1); diagonal entries follow from the row-sum identity
    sum_h k_h p^h_{jj} = k_j^2.
    """
    k = (2 * q, 2 * q * q, q**3)
    m = [
        [0, q * (q - 1), q * q * (q - 1)],
        [1, 0, q * (q - 1) ** 2],
        [0, 4 * (q - 1), 0],
    ]
    for j in range(3):
        off = sum(k[h] * m[h][j] for h in range(3) if h != j)
        m[j][j] = _exact_div(k[j] ** 2 - k[j] - off, k[j])
    return tuple(tuple(row) for row in m)


def _matrix_inverse3(field, a):
    """Inverse of a 3x3 matrix of field-element indices, by adjugate."""
    add, mul, neg, inv = (
        field.add_table,
        field.mul_table,
        field.neg_table,
        field.inv_table,
    )

    def minor(i: int, j: int) -> int:
        r = [x for x in range(3) if x != i]
        c = [x for x in range(3) if x != j]
        return add[mul[a[r[0]][c[0]]][a[r[1]][c[1]]]][
            neg[mul[a[r[0]][c[1]]][a[r[1]][c[0]]]]
        ]

    cof = [
        [minor(i, j) if (i + j) % 2 == 0 else neg[minor(i, j)] for j in range(3)]
        for i in range(3)
    ]
    det = 0
    for j in range(3):
        det = add[det][mul[a[0][j]][cof[0][j]]]
    if det == 0:
        raise ValueError("singular matrix")
    dinv = inv[det]
    return [[mul[cof[j][i]][dinv] for j in range(3)] for i in range(3)]


def _apply_row(field, vec, a):
    add, mul = field.add_table, field.mul_table
    out = []
    for j in range(3):
        acc = 0
        for i in range(3):
            acc = add[acc][mul[vec[i]][a[i][j]]]
        out.append(acc)
    return tuple(out)


def _canon_point(field, vec):
    lead = next(c for c in vec if c)
    s = field.inv_table[lead]
    return tuple(field.mul_table[s][c] for c in vec)


def flag_action(q: int) -> PermGroupAction:
    """The projective linear group of PG(2, q), extended by the
    point-line duality, acting on the flags of :func:`enumerate_flags`.

    Matrix generators: a diagonal scaling by a primitive element, one
    transvection, and the coordinate 3-cycle; points transform by the
    matrix and lines by its inverse transpose, so incidence is preserved.
    The duality swaps a flag's point and line coordinates.
    """
    field = field_of_order(q)
    flags = enumerate_flags(q)
    index = {f: i for i, f in enumerate(flags)}
    primitive = 1 if q == 2 else next(
        s
        for s in range(2, q)
        if all(field.pow_index(s, e) != 1 for e in range(1, q - 1))
    )
    mats = [
        [[primitive, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    ]
    generators = []
    for a in mats:
        b = [list(row) for row in zip(*_matrix_inverse3(field, a))]
        perm = []
        for point, line in flags:
            image = (
                _canon_point(field, _apply_row(field, point, a)),
                _canon_point(field, _apply_row(field, line, b)),
            )
            perm.append(index[image])
        generators.append(tuple(perm))
    generators.append(tuple(index[(line, point)] for point, line in flags))
    return PermGroupAction(len(flags), tuple(generators))


def build_flag_orbitals(
    q: int, max_v: int = DEFAULT_MAX_V
) -> OrbitalClassification:
    """Partition of the ordered pairs of flags of PG(2, q) into the
    diagonal and three classes: sharing a point or a line (label 1),
    exactly one cross-incidence between one flag's point and the other's
    line (label 2), and no relation at all (label 3).

    The classes are cross-checked against the orbitals of the flag action
    of the extended projective group, and the direct-count tensor against
    the closed-form matrix :func:`flag_M`.
    """
    predicted = (q * q + q + 1) * (q + 1)
    _guard(f"flags of PG(2,{q})", predicted, max_v)
    field = field_of_order(q)
    flags = enumerate_flags(q)
    add, mul = field.add_table, field.mul_table

    def incident(point, line) -> bool:
        acc = 0
        for a, b in zip(point, line):
            acc = add[acc][mul[a][b]]
        return acc == 0

    def pair_label(i: int, j: int) -> int:
        point, line = flags[i]
        other_point, other_line = flags[j]
        if point == other_point or line == other_line:
            return 1
        first = incident(point, other_line)
        second = incident(other_point, line)
        if first and second:
            raise AssertionError(
                "two flags in general position share both cross-incidences"
            )
        return 2 if first or second else 3

    classification = _classify_pairs(
        flags, pair_label, lambda f: f"{':'.join(map(str, f.point))}|"
        f"{':'.join(map(str, f.line))}"
    )
    lengths = classification.suborbit_lengths
    if (lengths[1], lengths[2], lengths[3]) != (2 * q, 2 * q * q, q**3):
        raise AssertionError(f"unexpected suborbit lengths {lengths}")
    m = flag_M(q)
    counted = [
        [int(classification.tensor.p[i][j][j]) for j in (1, 2, 3)]
        for i in (1, 2, 3)
    ]
    if tuple(tuple(row) for row in counted) != m:
        raise AssertionError(
            f"direct-count matrix {counted} differs from closed form {m}"
        )
    group = compute_orbitals(flag_action(q))
    if group.rank != classification.partition.rank:
        raise AssertionError(
            f"group action has rank {group.rank}, classes give "
            f"{classification.partition.rank}"
        )
    n = len(flags)
    relabel = {}
    for c, (x, y) in enumerate(group.reps):
        relabel[c] = classification.partition.class_of[x * n + y]
    if sorted(relabel.values()) != list(range(group.rank)):
        raise AssertionError("group orbitals do not map onto the classes")
    for p in range(n * n):
        if relabel[group.class_of[p]] != classification.partition.class_of[p]:
            raise AssertionError(
                "group orbitals differ from the set-theoretic classes"
            )
    return classification


# ---------------------------------------------------------------------------
# Grassmann graphs of 3-subspaces
# ---------------------------------------------------------------------------


def grassmann_intersection_array(n: int, q: int) -> IntersectionArray:
    """The intersection array of the Grassmann graph of 3-subspaces of
    F_q^n: b_i = q^(2i+1) [3-i]_q [n-3-i]_q and c_i = ([i]_q)^2, where
    [j]_q is the Gaussian [j choose 1]_q."""
    if n < 6:
        raise ValueError("the 3-subspace Grassmann graph needs n >= 6")

    def gauss1(j: int) -> int:
        return gaussian_binomial(j, 1, q)

    b = tuple(
        q ** (2 * i + 1) * gauss1(3 - i) * gauss1(n - 3 - i) for i in range(3)
    )
    c = tuple(gauss1(i) ** 2 for i in range(1, 4))
    return IntersectionArray(b, c)


def build_grassmann(n: int, q: int, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Graph on the 3-dimensional subspaces of F_q^n, two subspaces
    adjacent exactly when they meet in a 2-space."""
    FamilyId.make("grassmann", n=n, q=q)
    predicted = gaussian_binomial(n, 3, q)
    _guard(f"Grassmann 3-spaces of F_{q}^{n}", predicted, max_v)
    field = field_of_order(q)
    subspaces = enumerate_subspaces(field, n, 3)
    point_index = {rep: i for i, rep in enumerate(projective_reps(field, n))}
    points_per_space = q * q + q + 1
    masks = []
    for s in subspaces:
        reps = s.point_reps(field)
        if len(reps) != points_per_space:
            raise AssertionError(f"a 3-space has {len(reps)} points")
        mask = 0
        for rep in reps:
            mask |= 1 << point_index[rep]
        masks.append(mask)
    size = len(subspaces)
    meet_in_line = q + 1
    rows = [0] * size
    for i in range(size):
        mi = masks[i]
        acc = rows[i]
        for j in range(i + 1, size):
            if (mi & masks[j]).bit_count() == meet_in_line:
                acc |= 1 << j
                rows[j] |= 1 << i
        rows[i] = acc
    return Graph(rows, [str(s) for s in subspaces], validate=False)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def build_family(fid: FamilyId, max_v: int = DEFAULT_MAX_V) -> Graph:
    """Build the graph selected by a :class:`FamilyId`.

    The pair-classification tags (unitary-orbital, orthogonal-orbital)
    describe partitions rather than single graphs; use their dedicated
    builders instead.
    """
    p = dict(fid.params)
    if fid.tag == "NU":
        return build_NU(p["n"], p["q"], max_v)
    if fid.tag == "NO":
        return build_NO(p["m"], p["q"], p["eps"], max_v)
    if fid.tag == "polar-complement-O7":
        return build_polar_complement("O7", p["q"], max_v)
    if fid.tag == "polar-complement-O8+":
        return build_polar_complement("O8+", p["q"], max_v)
    if fid.tag == "dual-polar-sp6":
        return build_dual_polar_sp6(p["q"], max_v)
    if fid.tag == "dual-polar-sp6-dist3":
        return build_dual_polar_sp6_dist3(p["q"], max_v)
    if fid.tag == "grassmann":
        return build_grassmann(p["n"], p["q"], max_v)
    if fid.tag == "johnson":
        return build_johnson(p["n"], p["i"], max_v)
    if fid.tag == "hamming-orbital":
        return build_hamming_orbital(p["d"], p["i"], max_v)
    if fid.tag == "flag-orbital":
        return build_flag_orbitals(p["q"], max_v).graphs[p["i"]]
    raise ValueError(
        f"{fid.tag} describes a pair classification, not a single graph; "
        f"use its dedicated builder"
    )
