"""Exact arithmetic in small finite fields, plus exact counting utilities.

Fields F_{p^k} use a polynomial basis modulo a deterministic irreducible:
the lexicographically least monic irreducible of degree k over F_p, where
coefficient tuples are compared constant term first.  Every element has an
integer index in [0, p^k) via ``index = sum(c_i * p**i)``, which allows
dense index-based arithmetic tables; :class:`FieldElement` wraps an index
for ergonomic exact arithmetic.

Beyond field arithmetic, the module provides the relative norm and absolute
trace, the quadratic character, and exact solution counts for hermitian
norm equations and hyperbolic bilinear equations, together with the root
character sums used by the orthogonal tangency constructions.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

__all__ = [
    "CharacterValue",
    "Field",
    "FieldElement",
    "char_sum_c",
    "count_hermitian_norm_solutions",
    "count_hyperbolic_solutions",
    "field_of_order",
    "hermitian_count_closed",
    "hyperbolic_count_closed",
    "make_field",
    "norm",
    "quadratic_character",
    "trace_to_prime",
]

# A quadratic-character or trace-indicator value: one of -1, 0, +1.
CharacterValue = int

# Largest field order for which dense multiplication tables are built.
_TABLE_CAP = 1024


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Dense polynomial arithmetic over F_p (coefficient lists, constant first).
# ---------------------------------------------------------------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] + ai * bj) % p
    return _poly_trim(r)


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo a monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for i in range(dm):
                a[off + i] = (a[off + i] - c * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _poly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [
        (x - y) % p for x, y in itertools.zip_longest(a, b, fillvalue=0)
    ]
    return _poly_trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Irreducibility test for a monic polynomial over F_p.

    Degree <= 3 reduces to root absence; higher degrees use the
    gcd-with-Frobenius criterion (x^(p^(k/d)) - x coprime to f for every
    prime d | k, and x^(p^k) = x mod f).
    """
    k = len(modulus) - 1
    if k == 1:
        return True
    for r in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    if k <= 3:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**k, modulus, p), x, p):
        return False
    for d in _prime_divisors(k):
        diff = _poly_sub(_poly_powmod(x, p ** (k // d), modulus, p), x, p)
        if len(_poly_gcd(modulus, diff, p)) - 1 >= 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Field and FieldElement
# ---------------------------------------------------------------------------


class Field:
    """The finite field F_{p^k} with dense index-based arithmetic tables.

    Element ``i`` has the base-p digits of ``i`` as its coefficient vector
    (constant term first).  Do not instantiate directly: use
    :func:`make_field`, which caches one canonical instance per (p, k) so
    that element equality can compare fields by identity.

    Public index tables (lists indexed by element index) are exposed for
    bulk consumers: ``add_table``, ``mul_table``, ``neg_table``,
    ``inv_table`` (0 maps to 0), and ``frob_table`` (x -> x^p).
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        if self.q > _TABLE_CAP:
            raise NotImplementedError(
                f"field order {self.q} exceeds the desk-scale cap {_TABLE_CAP}"
            )
        self._build_tables()
        self._subfields: dict[int, tuple[Field, list[int]]] = {}
        if len(self.mul_table) != self.q:
            raise AssertionError("element count does not equal p^k")

    # -- construction of the index tables ----------------------------------

    def coeffs_of(self, index: int) -> list[int]:
        """Base-p digits of an element index, constant term first."""
        out = []
        for _ in range(self.k):
            index, r = divmod(index, self.p)
            out.append(r)
        return out

    def index_of(self, coeffs: list[int]) -> int:
        """Inverse of :meth:`coeffs_of`; accepts short coefficient lists."""
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + (c % self.p)
        return idx

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        coeffs = [self.coeffs_of(i) for i in range(q)]
        mod = list(self.modulus)
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = coeffs[a]
            row_add = add[a]
            row_mul = mul[a]
            for b in range(a, q):
                cb = coeffs[b]
                s = self.index_of([(x + y) % p for x, y in zip(ca, cb)])
                row_add[b] = s
                add[b][a] = s
                m = self.index_of(_poly_mod(_poly_mul(ca, cb, p), mod, p))
                row_mul[b] = m
                mul[b][a] = m
        self.add_table = add
        self.mul_table = mul
        self.neg_table = [
            self.index_of([(-c) % p for c in coeffs[a]]) for a in range(q)
        ]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.pow_index(a, q - 2, mul)
        self.inv_table = inv
        self.frob_table = [self.pow_index(a, p, mul) for a in range(q)]

    def pow_index(self, a: int, e: int, _mul=None) -> int:
        """a**e on element indices (e may be negative for nonzero a)."""
        mul = _mul if _mul is not None else self.mul_table
        if e < 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero field element")
            a, e = self.inv_table[a], -e
        r = 1
        while e:
            if e & 1:
                r = mul[r][a]
            a = mul[a][a]
            e >>= 1
        return r

    # -- element construction ----------------------------------------------

    def from_index(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for GF({self.q})")
        return FieldElement(self, index)

    def __call__(self, value) -> FieldElement:
        """Build an element from an int (a prime-subfield constant, reduced
        mod p), a coefficient list (constant term first), or pass through an
        element of this field."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValueError("coefficient list longer than the field degree")
        return FieldElement(self, self.index_of(coeffs))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        """All field elements in index order (deterministic)."""
        return [FieldElement(self, i) for i in range(self.q)]

    # -- subfields -----------------------------------------------------------

    def subfield(self, k_sub: int) -> tuple[Field, list[int]]:
        """The canonical copy of F_{p^k_sub} inside this field.

        Returns ``(S, embed)`` where ``embed[i]`` is the index in this field
        of the image of ``S.from_index(i)``.  The embedding sends the
        polynomial generator of S to the least root (in index order) of
        S.modulus in this field; the result is cached.
        """
        if self.k % k_sub:
            raise ValueError(f"{k_sub} does not divide the field degree {self.k}")
        cached = self._subfields.get(k_sub)
        if cached is not None:
            return cached
        sub = make_field(self.p, k_sub)
        root = next(
            a for a in range(self.q) if self._eval_prime_poly(sub.modulus, a) == 0
        )
        add, mul = self.add_table, self.mul_table
        embed = []
        for i in range(sub.q):
            acc = 0
            for c in reversed(sub.coeffs_of(i)):
                acc = add[mul[acc][root]][c]
            embed.append(acc)
        if len(set(embed)) != sub.q:
            raise AssertionError("subfield embedding is not injective")
        self._subfields[k_sub] = (sub, embed)
        return sub, embed

    def _eval_prime_poly(self, coeffs: tuple[int, ...], a: int) -> int:
        """Evaluate a prime-field polynomial at element index a (Horner)."""
        add, mul = self.add_table, self.mul_table
        acc = 0
        for c in reversed(coeffs):
            acc = add[mul[acc][a]][c % self.p]
        return acc

    def __repr__(self) -> str:
        return f"GF({self.q})"


class FieldElement:
    """An element of a :class:`Field`, identified by its index."""

    __slots__ = ("field", "index")

    def __init__(self, field: Field, index: int):
        self.field = field
        self.index = index

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs_of(self.index)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, other % self.field.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_table[self.index][o.index])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_table[self.index])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        neg = self.field.neg_table[o.index]
        return FieldElement(self.field, self.field.add_table[self.index][neg])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_table[self.index][o.index])

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.index == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return FieldElement(self.field, self.field.inv_table[self.index])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_index(self.index, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == other % self.field.p and self.index < self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}t" if i == 1 else f"{head}t^{i}")
        poly = " + ".join(terms) if terms else "0"
        return f"GF({self.field.q})({poly})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> Field:
    """F_{p^k} with the lexicographically least monic irreducible modulus.

    Coefficient tuples are compared constant term first, so the scan order
    is itertools.product over the k lower coefficients.  The result is
    cached: repeated calls return the identical Field object.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    for lower in itertools.product(range(p), repeat=k):
        modulus = (*lower, 1)
        if _is_irreducible(list(modulus), p):
            return Field(p, k, modulus)
    raise RuntimeError(
        f"no irreducible of degree {k} over F_{p} (impossible for prime p)"
    )


@lru_cache(maxsize=None)
def field_of_order(q: int) -> Field:
    """F_q for a prime power q = p^k (canonical modulus, cached)."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return make_field(p, k)


# ---------------------------------------------------------------------------
# Norm, trace, character
# ---------------------------------------------------------------------------


def norm(a: FieldElement) -> FieldElement:
    """Relative norm to the index-2 subfield: a -> a * a_bar = a^(q0+1).

    Requires a field of square order q0^2; the result is checked to be
    fixed by x -> x^q0 and returned as an element of the subfield.
    """
    field = a.field
    if field.k % 2:
        raise ValueError("norm requires a field of square order")
    q0 = field.p ** (field.k // 2)
    sub, embed = field.subfield(field.k // 2)
    b = field.pow_index(a.index, q0 + 1)
    if field.pow_index(b, q0) != b:
        raise AssertionError("norm image is not fixed by the subfield Frobenius")
    return sub.from_index(embed.index(b))


def trace_to_prime(a: FieldElement) -> int:
    """Absolute trace sum(a^(2^i)) -> F_2, as an int in {0, 1} (char 2 only)."""
    field = a.field
    if field.p != 2:
        raise ValueError("trace_to_prime requires characteristic 2")
    acc, t = 0, a.index
    for _ in range(field.k):
        acc = field.add_table[acc][t]
        t = field.frob_table[t]
    if acc not in (0, 1):
        raise AssertionError("trace landed outside the prime subfield")
    return acc


def quadratic_character(a: FieldElement) -> CharacterValue:
    """chi(a) = a^((q-1)/2) read in {-1, 0, +1}; chi(0) = 0.  Odd q only."""
    field = a.field
    if field.p == 2:
        raise ValueError("quadratic character requires odd q")
    if a.index == 0:
        return 0
    return 1 if field.pow_index(a.index, (field.q - 1) // 2) == 1 else -1


# ---------------------------------------------------------------------------
# Exact counting (dynamic programming over value distributions)
# ---------------------------------------------------------------------------


def _convolve_counts(dist: list[int], single: list[int], field: Field) -> list[int]:
    """Additive convolution of two index-aligned value-count vectors."""
    out = [0] * field.q
    add = field.add_table
    for i, ci in enumerate(dist):
        if ci:
            row = add[i]
            for j, cj in enumerate(single):
                if cj:
                    out[row[j]] += ci * cj
    return out


def hermitian_count_closed(n: int, q: int, zero: bool) -> int:
    """Closed form for :func:`count_hermitian_norm_solutions` (c=0 vs c!=0)."""
    if n == 0:
        return 1 if zero else 0
    s = (-1) ** n
    if zero:
        return q ** (2 * n - 1) + s * (q - 1) * q ** (n - 1)
    return q ** (2 * n - 1) - s * q ** (n - 1)


def count_hermitian_norm_solutions(n: int, q: int, c=0) -> int:
    """#{(a_1..a_n) in (F_{q^2})^n : sum of a_i^(q+1) = c}.

    Dynamic programming over norm-value distributions: one coordinate
    contributes norm 0 once and each nonzero norm value q+1 times.  The
    count depends only on whether c = 0, with validated closed forms
    (n >= 1):

        c = 0:   q^(2n-1) + (-1)^n (q-1) q^(n-1)
        c != 0:  q^(2n-1) - (-1)^n q^(n-1)

    ``c`` may be a FieldElement of F_q or an element index (0 = zero).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    field = field_of_order(q)
    c_index = c.index if isinstance(c, FieldElement) else int(c)
    if not 0 <= c_index < q:
        raise ValueError(f"c index {c_index} out of range for GF({q})")
    single = [q + 1] * q
    single[0] = 1
    dist = [0] * q
    dist[0] = 1
    for _ in range(n):
        dist = _convolve_counts(dist, single, field)
    if dist[0] != hermitian_count_closed(n, q, zero=True):
        raise AssertionError("hermitian count disagrees with its closed form")
    if n and set(dist[1:]) != {hermitian_count_closed(n, q, zero=False)}:
        raise AssertionError("hermitian count not constant on nonzero targets")
    return dist[c_index]


def hyperbolic_count_closed(k: int, q: int, zero: bool) -> int:
    """Closed form for :func:`count_hyperbolic_solutions` (c=0 vs c!=0)."""
    if k == 0:
        return 1 if zero else 0
    if zero:
        return q ** (2 * k - 1) + q**k - q ** (k - 1)
    return q ** (2 * k - 1) - q ** (k - 1)


def count_hyperbolic_solutions(k: int, q: int, zero_target: bool) -> int:
    """#{(a_1,b_1,..,a_k,b_k) in F_q^(2k) : sum of a_i b_i = c}.

    ``zero_target`` selects c = 0; otherwise any fixed c != 0 (the count is
    independent of the choice, which is asserted).  One hyperbolic pair
    realises 0 in 2q-1 ways and each nonzero value in q-1 ways; the k-pair
    distribution is the k-fold additive convolution.  Validated closed
    forms (k >= 1, including the all-zero vector in the c = 0 count):

        c = 0:   q^(2k-1) + q^k - q^(k-1)
        c != 0:  q^(2k-1) - q^(k-1)
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    field = field_of_order(q)
    single = [q - 1] * q
    single[0] = 2 * q - 1
    dist = [0] * q
    dist[0] = 1
    for _ in range(k):
        dist = _convolve_counts(dist, single, field)
    if dist[0] != hyperbolic_count_closed(k, q, zero=True):
        raise AssertionError("hyperbolic count disagrees with its closed form")
    if k and set(dist[1:]) != {hyperbolic_count_closed(k, q, zero=False)}:
        raise AssertionError("hyperbolic count not constant on nonzero targets")
    return dist[0] if zero_target else dist[1 % q]


def char_sum_c(gamma1, gamma2, lam, q: int | None = None) -> int:
    """sum over x in F_q of the number of roots of
    T^2 - (gamma2 - lam*x) T + m(x), where m(x) = 1 - x*gamma1 + x^2.

    Odd q counts roots of a monic quadratic as 1 + chi(discriminant).  Even
    q writes the quadratic as T^2 + k T + m with k = gamma2 + lam*x: exactly
    one root when k = 0 (squaring is bijective), otherwise two roots exactly
    when the absolute trace of m / k^2 vanishes.

    Arguments may be FieldElements of one field, or element indices together
    with an explicit prime power ``q``.
    """
    if q is not None:
        field = field_of_order(q)
        gamma1, gamma2, lam = (
            x if isinstance(x, FieldElement) else field.from_index(int(x))
            for x in (gamma1, gamma2, lam)
        )
    field = gamma1.field
    if gamma2.field is not field or lam.field is not field:
        raise ValueError("gamma1, gamma2, lam must lie in one field")
    one = field.one
    total = 0
    for xi in range(field.q):
        x = field.from_index(xi)
        m = one - x * gamma1 + x * x
        kx = gamma2 - lam * x
        if field.p == 2:
            if not kx:
                total += 1
            elif trace_to_prime(m * (kx * kx).inverse()) == 0:
                total += 2
        else:
            disc = kx * kx - 4 * m
            total += 1 + quadratic_character(disc)
    return total
