"""Exact intersection-number calculus.

Three layers:

* exact scalar arithmetic — univariate polynomials over Q (:class:`RatPoly`),
  their quotients (:class:`RatFunc`), and polynomials in a second variable X
  with RatFunc coefficients (:class:`XPoly`);
* the recursion that rebuilds the full tensor p_ij^h from an intersection
  array, generic over those scalars (:func:`tensor_from_array` and friends);
* the three symbolic verifications: the G_2-type array, the rank-3 dual
  polar arrays with parameter e, and the Grassmann J(n,3) difference
  f_2 = p_22^1 - p_22^3 as a quadratic in X = q^n.

No floating point is used anywhere; every identity is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphcore import Graph, IntersectionArray, distance_masks

__all__ = [
    "DualPolarSymbolic",
    "G2Symbolic",
    "GrassmannF2",
    "InfeasibleArrayError",
    "IntersectionTensor",
    "RatFunc",
    "RatPoly",
    "XPoly",
    "dual_polar_symbolic",
    "fraction_json",
    "g2_symbolic",
    "grassmann_f2",
    "instantiate_tensor",
    "poly_str",
    "ratfunc_str",
    "srg_union_criterion",
    "tensor_from_array",
    "tensor_from_graph",
    "tensor_from_orbital_partition",
    "tensor_to_json",
]


class InfeasibleArrayError(ValueError):
    """A computed tensor violates one of the defining relations."""

    def __init__(self, relation: str, detail: str = ""):
        self.relation = relation
        message = f"infeasible array: relation {relation} violated"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


# ---------------------------------------------------------------------------
# Univariate polynomials over Q
# ---------------------------------------------------------------------------


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


class RatPoly:
    """Dense univariate polynomial with Fraction coefficients, normalized
    so the coefficient list never ends in zero (the zero polynomial is
    the empty list)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls((_as_fraction(c),))

    @classmethod
    def gen(cls) -> "RatPoly":
        """The polynomial equal to the indeterminate."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerced(self, other) -> "RatPoly | None":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = RatPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dn, 0)
        for i in range(len(rem) - dn - 1, -1, -1):
            factor = rem[i + dn] / lead
            if factor:
                quot[i] = factor
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= factor * c
        return RatPoly(quot), RatPoly(rem)

    def evaluate(self, value: Fraction | int) -> Fraction:
        value = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return RatPoly([c / lead for c in self.coeffs])

    def __eq__(self, other) -> bool:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({poly_str(self)})"


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def poly_str(p: RatPoly, var: str = "q") -> str:
    """Human-readable form, highest power first: "q^4 - 2*q + 1/2"."""
    if p.is_zero():
        return "0"
    parts = []
    for power in range(p.degree, -1, -1):
        c = p.coeffs[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            x = var if power == 1 else f"{var}^{power}"
            body = x if mag == 1 else f"{mag}*{x}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# Rational functions in one variable
# ---------------------------------------------------------------------------


class RatFunc:
    """Quotient of RatPolys, held reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, RatPoly) else RatPoly.const(num)
        if den is None:
            den = RatPoly.const(1)
        elif not isinstance(den, RatPoly):
            den = RatPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = RatPoly.const(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.coeffs[-1]
            if lead != 1:
                num = num * RatPoly.const(Fraction(1) / lead)
                den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def gen(cls) -> "RatFunc":
        return cls(RatPoly.gen())

    def _coerced(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, RatPoly)):
            return RatFunc(other)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> RatPoly:
        if not self.is_polynomial:
            raise ValueError(f"{self!r} is not a polynomial")
        return self.num

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den**-n, self.num**-n)
        return RatFunc(self.num**n, self.den**n)

    def evaluate(self, value: Fraction | int) -> Fraction:
        bottom = self.den.evaluate(value)
        if bottom == 0:
            raise ZeroDivisionError(f"denominator vanishes at {value}")
        return self.num.evaluate(value) / bottom

    def __eq__(self, other) -> bool:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({ratfunc_str(self)})"


def ratfunc_str(f: RatFunc, var: str = "q") -> str:
    if f.is_polynomial:
        return poly_str(f.num, var)
    return f"({poly_str(f.num, var)}) / ({poly_str(f.den, var)})"


# ---------------------------------------------------------------------------
# Polynomials in X over rational functions of q
# ---------------------------------------------------------------------------


class XPoly:
    """Dense polynomial in a second indeterminate X whose coefficients are
    RatFuncs in q.  Division is only defined by X-free values."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [c if isinstance(c, RatFunc) else RatFunc(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @classmethod
    def gen(cls) -> "XPoly":
        return cls((RatFunc(0), RatFunc(1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, i: int) -> RatFunc:
        return self.coeffs[i] if i <= self.degree else RatFunc(0)

    def _coerced(self, other) -> "XPoly | None":
        if isinstance(other, XPoly):
            return other
        if isinstance(other, (int, Fraction, RatPoly, RatFunc)):
            return XPoly((other,))
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return XPoly()
        out = [RatFunc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, XPoly):
            if other.degree > 0:
                raise ValueError("XPoly division only by X-free values")
            other = other.coefficient(0)
        if isinstance(other, (int, Fraction, RatPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return XPoly([c / other for c in self.coeffs])

    def substitute_x(self, value: RatFunc) -> RatFunc:
        acc = RatFunc(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def evaluate(self, q0: Fraction | int, x0: Fraction | int) -> Fraction:
        x0 = _as_fraction(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c.evaluate(q0)
        return acc

    def __eq__(self, other) -> bool:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "XPoly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficient(i)
            if c.is_zero():
                continue
            xpart = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            terms.append(
                f"({ratfunc_str(c)}){'*' if xpart else ''}{xpart}"
            )
        return "XPoly(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# The tensor and its relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionTensor:
    """Full intersection-number tensor p[h][i][j] with valencies k and
    degree v = sum of valencies.  Entries may be Fractions (numeric) or
    symbolic scalars; ``realizable`` is True when every entry is a
    nonnegative integer, and None for symbolic tensors."""

    k: tuple
    p: tuple
    v: object
    realizable: bool | None

    @property
    def rank(self) -> int:
        return len(self.k)

    def validate(self) -> None:
        """Assert the seven defining relations; raise InfeasibleArrayError
        naming the first violated one."""
        r = self.rank
        k, p = self.k, self.p
        one = k[0]
        zero = one - one
        for h in range(r):
            for j in range(r):
                want = one if j == h else zero
                if p[h][0][j] != want:
                    raise InfeasibleArrayError("p_0j^h = delta_jh", f"h={h} j={j}")
        for i in range(r):
            for j in range(r):
                want = k[j] if i == j else zero
                if p[0][i][j] != want:
                    raise InfeasibleArrayError("p_ij^0 = delta_ij k_j", f"i={i} j={j}")
        for h in range(r):
            for i in range(r):
                for j in range(r):
                    if p[h][i][j] != p[h][j][i]:
                        raise InfeasibleArrayError(
                            "p_ij^h = p_ji^h", f"h={h} i={i} j={j}"
                        )
        for h in range(r):
            for j in range(r):
                total = zero
                for i in range(r):
                    total = total + p[h][i][j]
                if total != k[j]:
                    raise InfeasibleArrayError("sum_i p_ij^h = k_j", f"h={h} j={j}")
        total = zero
        for kj in k:
            total = total + kj
        if total != self.v:
            raise InfeasibleArrayError("sum_j k_j = v")
        for h in range(r):
            for i in range(r):
                for j in range(r):
                    if p[h][i][j] * k[h] != p[j][i][h] * k[j]:
                        raise InfeasibleArrayError(
                            "p_ij^h k_h = p_ih^j k_j", f"h={h} i={i} j={j}"
                        )
        for i in range(r):
            for j in range(r):
                for h in range(r):
                    for m in range(r):
                        lhs = zero
                        rhs = zero
                        for l in range(r):
                            lhs = lhs + p[l][i][j] * p[m][h][l]
                            rhs = rhs + p[l][h][j] * p[m][i][l]
                        if lhs != rhs:
                            raise InfeasibleArrayError(
                                "sum_l p_ij^l p_hl^m = sum_l p_hj^l p_il^m",
                                f"i={i} j={j} h={h} m={m}",
                            )


def _is_nonneg_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


def _realizability(k, p) -> bool:
    return all(_is_nonneg_integer(kj) for kj in k) and all(
        _is_nonneg_integer(p[h][i][j])
        for h in range(len(k))
        for i in range(len(k))
        for j in range(len(k))
    )


def _tensor_recursion(b: list, c: list, one):
    """Rebuild valencies and the full tensor from array entries b_0..b_{d-1}
    and c_1..c_d over any exact scalar domain containing ``one``.

    Out-of-range indices contribute zero.  For a pair at distance h, the
    neighbours of the first vertex split into c_h at distance h-1 from the
    second vertex, a_h at h, and b_h at h+1 — that seeds level 1; level
    i+1 then follows from levels i and i-1 by the linear recursion obtained
    by counting neighbours of intermediate vertices two ways.
    """
    d = len(b)
    zero = one - one
    b_full = list(b) + [zero]  # b_d = 0
    c_full = [zero] + list(c)  # c_0 = 0
    k = [one]
    for j in range(d):
        k.append(k[-1] * b[j] / c[j])
    a = [b[0] - b_full[j] - c_full[j] for j in range(d + 1)]

    p = []
    for h in range(d + 1):
        table = [[zero] * (d + 1) for _ in range(d + 1)]
        table[0][h] = one
        if d >= 1:
            if h >= 1:
                table[1][h - 1] = c_full[h]
            table[1][h] = a[h]
            if h + 1 <= d:
                table[1][h + 1] = b_full[h]
        for i in range(1, d):
            for j in range(d + 1):
                term = table[i][j] * (a[j] - a[i])
                if j >= 1:
                    term = term + table[i][j - 1] * b_full[j - 1]
                if j + 1 <= d:
                    term = term + table[i][j + 1] * c_full[j + 1]
                term = term - table[i - 1][j] * b_full[i - 1]
                table[i + 1][j] = term / c_full[i + 1]
        p.append(tuple(tuple(row) for row in table))
    v = zero
    for kj in k:
        v = v + kj
    return tuple(k), tuple(p), v


def tensor_from_array(array: IntersectionArray) -> IntersectionTensor:
    """Numeric tensor from an intersection array, validated against every
    relation; ``realizable`` records whether all entries are nonnegative
    integers."""
    b = [Fraction(x) for x in array.b]
    c = [Fraction(x) for x in array.c]
    k, p, v = _tensor_recursion(b, c, Fraction(1))
    tensor = IntersectionTensor(k=k, p=p, v=v, realizable=_realizability(k, p))
    tensor.validate()
    return tensor


def symbolic_tensor_from_array(b: list, c: list, one) -> IntersectionTensor:
    """Tensor over symbolic scalars (RatFunc or XPoly); realizable is None."""
    k, p, v = _tensor_recursion(b, c, one)
    tensor = IntersectionTensor(k=k, p=p, v=v, realizable=None)
    tensor.validate()
    return tensor


def tensor_from_graph(g: Graph) -> IntersectionTensor:
    """Direct pair-counting tensor of a graph's distance partition.

    Counts p_ij^h at a representative pair for each h from two different
    roots and insists the answers agree — a cheap well-definedness check;
    the relation audit then guards the rest.  Intended for graphs already
    certified distance-regular.
    """

    def tensor_at(root: int):
        base = distance_masks(g, root)
        d = len(base) - 1
        p = []
        for h in range(d + 1):
            y = (base[h] & -base[h]).bit_length() - 1
            other = distance_masks(g, y)
            if len(other) != d + 1:
                raise ValueError("eccentricities differ: not distance-regular")
            p.append(
                tuple(
                    tuple(
                        Fraction((base[i] & other[j]).bit_count())
                        for j in range(d + 1)
                    )
                    for i in range(d + 1)
                )
            )
        k = tuple(Fraction(m.bit_count()) for m in base)
        return k, tuple(p)

    k, p = tensor_at(0)
    k2, p2 = tensor_at(g.n - 1)
    if k != k2 or p != p2:
        raise ValueError("tensor differs between roots: not distance-regular")
    tensor = IntersectionTensor(
        k=k, p=p, v=Fraction(g.n), realizable=_realizability(k, p)
    )
    tensor.validate()
    return tensor


def tensor_from_orbital_partition(partition) -> IntersectionTensor:
    """Tensor of a symmetric orbital partition by direct counting."""
    from .orbitals import intersection_number_direct

    r = partition.rank
    if any(partition.paired[c] != c for c in range(r)):
        raise ValueError("partition has non-self-paired classes")
    p = tuple(
        tuple(
            tuple(
                Fraction(intersection_number_direct(partition, h, i, j))
                for j in range(r)
            )
            for i in range(r)
        )
        for h in range(r)
    )
    k = tuple(Fraction(x) for x in partition.suborbit_lengths)
    tensor = IntersectionTensor(
        k=k, p=p, v=Fraction(partition.degree), realizable=True
    )
    tensor.validate()
    return tensor


def instantiate_tensor(tensor: IntersectionTensor, value) -> IntersectionTensor:
    """Evaluate a symbolic tensor at a numeric point."""
    value = _as_fraction(value)
    k = tuple(x.evaluate(value) for x in tensor.k)
    p = tuple(
        tuple(tuple(x.evaluate(value) for x in row) for row in table)
        for table in tensor.p
    )
    out = IntersectionTensor(
        k=k, p=p, v=tensor.v.evaluate(value), realizable=_realizability(k, p)
    )
    out.validate()
    return out


def srg_union_criterion(tensor: IntersectionTensor, i: int):
    """For a rank-4 tensor: whether p_ii^h takes one constant value over
    every non-diagonal h (h = 1, 2, 3 — including h = i).  Returns the
    verdict and the three values (p_ii^1, p_ii^2, p_ii^3)."""
    if tensor.rank != 4:
        raise ValueError("the union criterion applies to rank-4 tensors only")
    if i not in (1, 2, 3):
        raise ValueError("class must be 1, 2 or 3")
    values = tuple(tensor.p[h][i][i] for h in (1, 2, 3))
    return values[0] == values[1] == values[2], values


# ---------------------------------------------------------------------------
# JSON forms
# ---------------------------------------------------------------------------


def fraction_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def tensor_to_json(tensor: IntersectionTensor) -> dict:
    if tensor.realizable is None:
        raise ValueError("only numeric tensors serialize to JSON")
    return {
        "rank": tensor.rank,
        "v": fraction_json(tensor.v),
        "k": [fraction_json(x) for x in tensor.k],
        "p": [
            [[fraction_json(x) for x in row] for row in table]
            for table in tensor.p
        ],
        "realizable": tensor.realizable,
    }


# ---------------------------------------------------------------------------
# Symbolic jobs
# ---------------------------------------------------------------------------


def _gaussian_1(q: RatFunc, i: int) -> RatFunc:
    """[i]_q = (q^i - 1)/(q - 1) as a rational function (a polynomial)."""
    out = q**i - 1
    return out / (q - 1) if i else RatFunc(0)


@dataclass(frozen=True)
class G2Symbolic:
    """Report of the symbolic computation on {q(q+1), q^2, q^2; 1, 1, q+1}."""

    tensor: IntersectionTensor
    params: tuple  # (v, k, lambda, mu) polynomials for the distance-3 graph
    p33: tuple  # (p_33^1, p_33^2, p_33^3)
    p22: tuple  # (p_22^1, p_22^3)
    gamma3_criterion: tuple  # (bool, values)
    gamma2_criterion: tuple
    instantiated_qs: tuple


def g2_symbolic() -> G2Symbolic:
    """Symbolic tensor of the array {q(q+1), q^2, q^2; 1, 1, q+1} and the
    induced parameters of its distance-3 graph, cross-checked numerically
    at q in {2, 3, 4, 5}."""
    q = RatFunc.gen()
    one = RatFunc(1)
    b = [q * (q + 1), q**2, q**2]
    c = [one, one, q + 1]
    tensor = symbolic_tensor_from_array(b, c, one)
    p = tensor.p

    expected_mu = q**4 * (q - 1)
    if p[1][3][3] != expected_mu or p[2][3][3] != expected_mu:
        raise AssertionError("p_33^1 = q^4(q-1) = p_33^2 fails")
    if p[1][2][2] != q**2 * (q - 1):
        raise AssertionError("p_22^1 = q^2(q-1) fails")
    if p[3][2][2] != (q + 1) * (q**2 - 1):
        raise AssertionError("p_22^3 = (q+1)(q^2-1) fails")
    v = (q**6 - 1) / (q - 1)
    if tensor.v != v:
        raise AssertionError("sum of valencies differs from (q^6-1)/(q-1)")
    params = (v, q**5, p[3][3][3], p[1][3][3])
    if params[1] != tensor.k[3]:
        raise AssertionError("k_3 differs from q^5")
    if params[2] != expected_mu:
        raise AssertionError("p_33^3 differs from q^4(q-1)")

    gamma3 = srg_union_criterion(tensor, 3)
    gamma2 = srg_union_criterion(tensor, 2)
    if not gamma3[0] or gamma2[0]:
        raise AssertionError("union criterion verdicts are wrong way round")

    qs = (2, 3, 4, 5)
    for q0 in qs:
        numeric = tensor_from_array(
            IntersectionArray(
                b=(q0 * (q0 + 1), q0**2, q0**2), c=(1, 1, q0 + 1)
            )
        )
        if instantiate_tensor(tensor, q0) != numeric:
            raise AssertionError(f"instantiation at q={q0} disagrees")
        if numeric.v != sum(numeric.k):
            raise AssertionError("v is not the sum of valencies")
    return G2Symbolic(
        tensor=tensor,
        params=params,
        p33=(p[1][3][3], p[2][3][3], p[3][3][3]),
        p22=(p[1][2][2], p[3][2][2]),
        gamma3_criterion=gamma3,
        gamma2_criterion=gamma2,
        instantiated_qs=qs,
    )


@dataclass(frozen=True)
class DualPolarSymbolic:
    """Report for the rank-3 dual polar array with parameter e."""

    e: Fraction
    tensor: IntersectionTensor
    displayed: dict  # the four displayed polynomials, reproduced exactly
    p33_equal: bool
    p22_difference_values: tuple  # (r0, value) pairs, all nonzero
    graph_checked_qs: tuple


def dual_polar_symbolic(e, graph_qs: tuple[int, ...] = ()) -> DualPolarSymbolic:
    """Tensor of the array b_i = q^(i+e) [3-i]_q, c_i = [i]_q, symbolically.

    For 2e odd everything is computed in a variable r with q = r^2, so
    q^e is a genuine polynomial; for e = 1 the variable is q itself.
    The four displayed intersection-number polynomials must be reproduced
    exactly; p_33^1 = p_33^2 identically iff e = 1.  For e = 1 the tensor
    can additionally be validated against brute-force tensors of the
    constructed symplectic dual polar graphs at the given q values.
    """
    e = Fraction(e)
    if e not in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
        raise ValueError("e must be 1/2, 1 or 3/2")
    r = RatFunc.gen()
    if e.denominator == 2:
        q = r**2
        qe = r ** int(2 * e)
    else:
        q = r
        qe = r

    b = [q**i * qe * _gaussian_1(q, 3 - i) for i in range(3)]
    c = [_gaussian_1(q, i) for i in (1, 2, 3)]
    tensor = symbolic_tensor_from_array(b, c, RatFunc(1))
    p = tensor.p

    displayed = {
        "p22_1": qe * q * (q + 1) * (qe - 1),
        "p22_3": ((q**2 + q + 1) / (q + 1))
        * (
            (q**2 + q + 1) * (qe - 1)
            + (q + 1) * (qe * q - 1)
            - qe * q**2
            + 1
        ),
        "p33_1": qe**2 * q**3 * (qe - 1),
        "p33_2": (qe * q**2 / (q + 1))
        * (qe * (q**2 - 1) + (qe - 1) * (qe * q**2 + qe * q - q**2 - q)),
    }
    found = {
        "p22_1": p[1][2][2],
        "p22_3": p[3][2][2],
        "p33_1": p[1][3][3],
        "p33_2": p[2][3][3],
    }
    for name, want in displayed.items():
        if found[name] != want:
            raise AssertionError(f"computed {name} differs from the display")

    p33_equal = displayed["p33_1"] == displayed["p33_2"]
    if p33_equal != (e == 1):
        raise AssertionError("p_33^1 = p_33^2 must hold exactly when e = 1")

    difference = displayed["p22_1"] - displayed["p22_3"]
    cert = []
    for r0 in (2, 3, 4, 5):
        value = difference.evaluate(r0)
        if value == 0:
            raise AssertionError(f"p_22^1 - p_22^3 vanishes at r={r0}")
        cert.append((r0, value))

    checked = []
    for q0 in graph_qs:
        if e != 1:
            raise ValueError("graph validation is defined for e = 1 only")
        from .families import build_dual_polar_sp6
        from .graphcore import check_drg

        graph = build_dual_polar_sp6(q0)
        array = check_drg(graph)
        if not isinstance(array, IntersectionArray):
            raise AssertionError(f"Sp_6({q0}) dual polar graph is not a DRG")
        if instantiate_tensor(tensor, q0) != tensor_from_graph(graph):
            raise AssertionError(
                f"symbolic tensor at q={q0} differs from the built graph"
            )
        checked.append(q0)
    return DualPolarSymbolic(
        e=e,
        tensor=tensor,
        displayed=displayed,
        p33_equal=p33_equal,
        p22_difference_values=tuple(cert),
        graph_checked_qs=tuple(checked),
    )


@dataclass(frozen=True)
class GrassmannF2:
    """Report for f_2 = p_22^1 - p_22^3 on J(n, 3) as a quadratic in
    X = q^n."""

    alphas: tuple  # the three X-coefficients of b_0, b_1, b_2
    betas: tuple
    A: RatFunc
    B: RatFunc
    C: RatFunc
    f2: XPoly
    tensor: IntersectionTensor
    scan_qs: tuple
    scan_ns: tuple
    scan_all_nonzero: bool
    positivity: dict  # per q: (A > 0, vertex <= q^6, f2(q^6) > 0)


_PRIME_POWERS_16 = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def grassmann_f2(
    max_q: int = 16, n_range: tuple[int, int] = (6, 12)
) -> GrassmannF2:
    """Symbolic f_2 for the Grassmann array b_i = q^(2i+1) [3-i]_q [n-3-i]_q,
    c_i = [i]_q^2, in the ring of polynomials in X = q^n over rational
    functions of q.

    Matches the three displayed coefficients A, B, C exactly, then
    certifies f_2 != 0 on a finite scan plus a positivity argument: A > 0,
    the parabola's vertex lies at or below X = q^6, and f_2(q^6) > 0 —
    hence f_2 > 0 for all X >= q^6 at each scanned q.
    """
    q = RatFunc.gen()
    x = XPoly.gen()
    alphas = []
    betas = []
    b = []
    for i in range(3):
        # [n-3-i]_q = (X - q^(3+i)) / (q^(3+i) (q-1)) with X = q^n
        alpha = q ** (2 * i + 1) * _gaussian_1(q, 3 - i) / (
            q ** (3 + i) * (q - 1)
        )
        beta = -alpha * q ** (3 + i)
        alphas.append(alpha)
        betas.append(beta)
        b.append(alpha * x + beta)
    displayed_alphas = (
        (q**2 + q + 1) / (q**2 * (q - 1)),
        (q + 1) / (q * (q - 1)),
        1 / (q - 1),
    )
    displayed_betas = (
        -(q**3 + q**2 + q) / (q - 1),
        -(q**4 + q**3) / (q - 1),
        -(q**5) / (q - 1),
    )
    for i in range(3):
        if alphas[i] != displayed_alphas[i] or betas[i] != displayed_betas[i]:
            raise AssertionError(f"alpha_{i}/beta_{i} differ from the display")

    c = [XPoly((_gaussian_1(q, i) ** 2,)) for i in (1, 2, 3)]
    tensor = symbolic_tensor_from_array(b, c, XPoly((RatFunc(1),)))
    f2 = tensor.p[1][2][2] - tensor.p[3][2][2]
    if f2.degree != 2:
        raise AssertionError("f_2 is not quadratic in X")
    A, B, C = f2.coefficient(2), f2.coefficient(1), f2.coefficient(0)

    displayed_A = 1 / (q**3 * (q - 1) ** 2)
    displayed_B = RatFunc(
        RatPoly((1, 4, 5, -1, -8, -7, -2))
    ) / ((q**2) * (q - 1) ** 2 * (q + 1) ** 2)
    displayed_C = RatFunc(
        RatPoly((1, 3, 2, -5, -11, -6, 5, 9, 5, 1))
    ) / ((q - 1) ** 2 * (q + 1) ** 2)
    if A != displayed_A:
        raise AssertionError("A(q) differs from the display")
    if B != displayed_B:
        raise AssertionError("B(q) differs from the display")
    if C != displayed_C:
        raise AssertionError("C(q) differs from the display")

    qs = tuple(p for p in _PRIME_POWERS_16 if p <= max_q)
    ns = tuple(range(n_range[0], n_range[1] + 1))
    all_nonzero = True
    positivity = {}
    for q0 in qs:
        for n0 in ns:
            if f2.evaluate(q0, Fraction(q0) ** n0) == 0:
                all_nonzero = False
        a0 = A.evaluate(q0)
        b0 = B.evaluate(q0)
        x6 = Fraction(q0) ** 6
        positivity[q0] = (
            a0 > 0,
            2 * a0 * x6 + b0 >= 0,
            f2.evaluate(q0, x6) > 0,
        )
    if not all_nonzero:
        raise AssertionError("f_2 vanished inside the certified range")
    if not all(all(flags) for flags in positivity.values()):
        raise AssertionError("positivity certificate failed")
    return GrassmannF2(
        alphas=tuple(alphas),
        betas=tuple(betas),
        A=A,
        B=B,
        C=C,
        f2=f2,
        tensor=tensor,
        scan_qs=qs,
        scan_ns=ns,
        scan_all_nonzero=all_nonzero,
        positivity=positivity,
    )
