"""Table-driven arithmetic in GF(q^2) with its subfield GF(q), q = p^e odd.

Elements are integer labels: the label of ``c_0 + c_1 x + ... + c_{n-1} x^{n-1}``
(coefficients in GF(p), ``n = 2e``) is ``sum c_i p^i``.  So 0 and 1 are the
labels of zero and one, and the prime field sits at labels ``0 .. p-1``.

Multiplication goes through discrete-log tables, addition through a Zech
logarithm table.  For small fields dense ``ADD``/``MUL`` tables are also built
so that vectorised kernels reduce to a single fancy index.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

TABLE_CAP = 1 << 20
DENSE_CAP = 1024


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low degree first
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
    return a


def _polymulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, f, p)


def _polypowmod(a, n, f, p):
    result = [1]
    base = _polymod(a, f, p)
    while n:
        if n & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        n >>= 1
    return result


def _polygcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_polymod(a, b, p))
    return a


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    factors = _prime_factors(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = factors[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    if _trim(_polypowmod(x, p ** n, f, p)) != _trim(_polymod(x, f, p)):
        return False
    for r in _prime_factors(n):
        h = _polypowmod(x, p ** (n // r), f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_polygcd(f, h, p)) > 1:
            return False
    return True


def least_irreducible(p: int, n: int) -> list[int]:
    """Least monic irreducible of degree n, ordered by the label encoding.

    Comparing ``sum c_i p^i`` compares coefficient vectors from the leading
    term down, i.e. lexicographic order on the polynomial.
    """
    for code in range(p ** n):
        coeffs = [(code // p ** i) % p for i in range(n)] + [1]
        if coeffs[0] and is_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    p: int
    e: int
    irreducible: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def order(self) -> int:
        return self.q * self.q

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "irreducible": list(self.irreducible)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldParams":
        return cls(int(data["p"]), int(data["e"]), tuple(int(c) for c in data["irreducible"]))


class GF:
    """GF(q^2) for odd q, with the distinguished subfield GF(q).

    Scalar methods take and return integer labels.  The ``v*`` methods are the
    numpy-vectorised counterparts used by the bulk kernels.
    """

    def __init__(self, p: int, e: int = 1, irreducible: Sequence[int] | None = None):
        if not is_prime(p) or p == 2:
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if e < 1:
            raise FieldError("exponent must be positive")
        n = 2 * e
        if p ** n > TABLE_CAP:
            raise FieldError(f"GF({p}^{n}) exceeds the table cap of {TABLE_CAP} elements")
        if irreducible is None:
            irreducible = least_irreducible(p, n)
        irreducible = [int(c) % p for c in irreducible]
        if len(irreducible) != n + 1 or irreducible[-1] != 1:
            raise FieldError("defining polynomial must be monic of degree 2e")
        if not is_irreducible(irreducible, p):
            raise FieldError(f"{irreducible} is reducible over GF({p})")

        self.params = FieldParams(p, e, tuple(irreducible))
        self.p, self.e, self.n = p, e, n
        self.q = p ** e
        self.order = self.q * self.q
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _label(self, coeffs) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(coeffs))

    def _coeffs(self, label: int) -> list[int]:
        return [(label // self.p ** i) % self.p for i in range(self.n)]

    def _build_tables(self):
        p, f, Q = self.p, list(self.params.irreducible), self.order
        m = Q - 1
        # primitive element: least label whose order is Q-1
        ords = [m // r for r in _prime_factors(m)]
        for g in range(2, Q):
            gc = self._coeffs(g)
            if all(_trim(_polypowmod(gc, k, f, p)) != [1] for k in ords):
                break
        else:  # pragma: no cover - GF(p^n)* is cyclic
            raise FieldError("no primitive element")
        self.generator = g

        # exp table by repeated multiplication with g, as a linear map on
        # coefficient vectors
        gc = self._coeffs(g)
        mult = np.zeros((self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            basis = [0] * i + [1]
            col = _polymulmod(basis, gc, f, p)
            col = col + [0] * (self.n - len(col))
            mult[i] = col
        weights = p ** np.arange(self.n, dtype=np.int64)
        exp = np.empty(m, dtype=np.int64)
        vec = np.zeros(self.n, dtype=np.int64)
        vec[0] = 1
        for k in range(m):
            exp[k] = int(vec @ weights)
            vec = (vec @ mult) % p
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(m)
        if (log[1:] < 0).any():  # pragma: no cover
            raise FieldError("generator does not generate the multiplicative group")

        # Zech logarithm: g^zech[k] = 1 + g^k, -1 where 1 + g^k = 0
        c0 = exp % p
        one_plus = exp - c0 + (c0 + 1) % p
        zech = log[one_plus]

        self.EXP = exp
        self.EXP2 = np.concatenate([exp, exp])
        self.LOG = log
        self.ZECH = zech
        self._exp = exp.tolist() * 2
        self._log = log.tolist()
        self._zech = zech.tolist()
        self._m = m

        labels = np.arange(Q, dtype=np.int64)
        self.NEG = self._vneg_coeffwise(labels)
        nz = labels != 0
        inv = np.zeros(Q, dtype=np.int64)
        inv[nz] = exp[(-log[nz]) % m]
        self.INV = inv
        self.FROB = self.vpow(labels, self.q)
        self.FROB_P = self.vpow(labels, p)
        self.NORM = self.vpow(labels, self.q + 1)
        self.TRACE = self.vadd(labels, self.FROB)
        self.SUBFIELD = np.flatnonzero(self.FROB == labels)
        self.IN_SUB = self.FROB == labels

        self._neg = self.NEG.tolist()
        self._inv = inv.tolist()
        self._frob = self.FROB.tolist()
        self._frob_p = self.FROB_P.tolist()
        self._norm = self.NORM.tolist()
        self._trace = self.TRACE.tolist()

        if Q <= DENSE_CAP:
            a = labels[:, None]
            b = labels[None, :]
            self.ADD = self._vadd_zech(np.broadcast_to(a, (Q, Q)), np.broadcast_to(b, (Q, Q)))
            self.MUL = self._vmul_log(np.broadcast_to(a, (Q, Q)), np.broadcast_to(b, (Q, Q)))
        else:
            self.ADD = self.MUL = None

    def _vneg_coeffwise(self, a):
        out = np.zeros_like(a)
        for i in range(self.n):
            w = self.p ** i
            c = (a // w) % self.p
            out += ((-c) % self.p) * w
        return out

    # -- identity ----------------------------------------------------------

    def __repr__(self):
        return f"GF({self.q}^2)"

    def __eq__(self, other):
        return isinstance(other, GF) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    # -- scalar arithmetic on labels --------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._m]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * k) % self._m]

    def frob(self, a: int) -> int:
        """x -> x^q."""
        return self._frob[a]

    def frob_p(self, a: int, k: int = 1) -> int:
        """x -> x^(p^k)."""
        for _ in range(k % self.n):
            a = self._frob_p[a]
        return a

    def trace(self, a: int) -> int:
        return self._trace[a]

    def norm(self, a: int) -> int:
        return self._norm[a]

    def in_subfield(self, a: int) -> bool:
        return self._frob[a] == a

    def const(self, k: int) -> int:
        """Label of the integer k read in the prime field."""
        return k % self.p

    def sum(self, items: Iterable[int]) -> int:
        s = 0
        for x in items:
            s = self.add(s, x)
        return s

    def prod(self, items: Iterable[int]) -> int:
        s = 1
        for x in items:
            s = self.mul(s, x)
        return s

    def is_square_in_subfield(self, a: int) -> bool:
        if not self.in_subfield(a):
            raise FieldError(f"{self.format(a)} is not in the subfield GF({self.q})")
        if a == 0:
            return True
        # GF(q)* is generated by g^(q+1)
        return (self._log[a] // (self.q + 1)) % 2 == 0

    def is_square(self, a: int) -> bool:
        return a == 0 or self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int:
        """Least-label square root in GF(q^2)."""
        if a == 0:
            return 0
        if not self.is_square(a):
            raise FieldError(f"{self.format(a)} is not a square")
        roots = np.flatnonzero(self.vmul(np.arange(self.order), np.arange(self.order)) == a)
        return int(roots[0])

    def solve_norm(self, a: int) -> int:
        """Least-label x with x^(q+1) = a, for a nonzero subfield element a."""
        if a == 0 or not self.in_subfield(a):
            raise FieldError(f"norm equation needs a nonzero subfield value, got {self.format(a)}")
        return int(np.argmax(self.NORM == a))

    def elements(self, predicate: Callable[[int], bool] | None = None) -> list[int]:
        if predicate is None:
            return list(range(self.order))
        return [x for x in range(self.order) if predicate(x)]

    def subfield(self) -> list[int]:
        return self.SUBFIELD.tolist()

    @functools.cached_property
    def omega(self) -> int:
        """Least-label element with norm -1."""
        return self.solve_norm(self.neg(1))

    @functools.cached_property
    def trace_zero_unit(self) -> int:
        """Least nonzero label with trace 0, so {1, w} is a subfield basis."""
        return int(np.flatnonzero(self.TRACE == 0)[1])

    # -- vectorised kernels ------------------------------------------------

    def _vmul_log(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.EXP2[self.LOG[a] + self.LOG[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def _vadd_zech(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        la = self.LOG[a]
        z = self.ZECH[(self.LOG[b] - la) % self._m]
        out = np.where(z < 0, 0, self.EXP[(la + z) % self._m])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vmul(self, a, b):
        if self.MUL is not None:
            return self.MUL[a, b]
        return self._vmul_log(*np.broadcast_arrays(a, b))

    def vadd(self, a, b):
        if getattr(self, "ADD", None) is not None:
            return self.ADD[a, b]
        return self._vadd_zech(*np.broadcast_arrays(a, b))

    def vsub(self, a, b):
        return self.vadd(a, self.NEG[b])

    def vpow(self, a, k: int):
        a = np.asarray(a)
        out = self.EXP[(self.LOG[a] * k) % self._m]
        return np.where(a == 0, 1 if k == 0 else 0, out)

    # -- conversion ---------------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        return self._coeffs(a)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.n or any(not 0 <= int(c) < self.p for c in coeffs):
            raise FieldError(f"expected {self.n} coefficients in [0, {self.p})")
        return self._label(coeffs)

    def element(self, a: int) -> "FieldElement":
        return FieldElement(self, a)

    def format(self, a: int) -> str:
        if a < self.p:
            return str(a)
        terms = []
        for i, c in enumerate(self._coeffs(a)):
            if c:
                terms.append(str(c) if i == 0 else (f"{c if c > 1 else ''}x" + (f"^{i}" if i > 1 else "")))
        return "+".join(terms)

    def to_json(self) -> str:
        return json.dumps(self.params.to_json())


@functools.lru_cache(maxsize=None)
def field_for_q(q: int) -> GF:
    """The canonical GF(q^2) for an odd prime power q."""
    p, e = prime_power(q)
    if p == 2:
        raise FieldError("q must be odd")
    return GF(p, e)


def field_from_json(data: dict | str) -> GF:
    if isinstance(data, str):
        data = json.loads(data)
    params = FieldParams.from_json(data)
    return GF(params.p, params.e, params.irreducible)


class FieldElement:
    """An element of a :class:`GF` with operator syntax.

    Bulk code works on raw labels; this wrapper is for readable call sites.
    """

    __slots__ = ("field", "index")

    def __init__(self, field: GF, index: int):
        if not 0 <= index < field.order:
            raise FieldError(f"label {index} out of range for {field!r}")
        self.field = field
        self.index = int(index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field!r} and {other.field!r}")
            return other.index
        if isinstance(other, int):
            return self.field.const(other)
        return NotImplemented

    def _wrap(self, index):
        return FieldElement(self.field, index)

    def __add__(self, other):
        b = self._other(other)
        return self._wrap(self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.index))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.index, self._other(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._other(other), self.index))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.index, k))

    def inv(self):
        return self._wrap(self.field.inv(self.index))

    def frob(self):
        return self._wrap(self.field.frob(self.index))

    def trace(self):
        return self._wrap(self.field.trace(self.index))

    def norm(self):
        return self._wrap(self.field.norm(self.index))

    def in_subfield(self) -> bool:
        return self.field.in_subfield(self.index)

    def is_square_in_subfield(self) -> bool:
        return self.field.is_square_in_subfield(self.index)

    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.index)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == self.field.const(other) and 0 <= other < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.params, self.index))

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"<{self.field.format(self.index)} in {self.field!r}>"
