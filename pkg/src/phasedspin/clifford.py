"""Dense multivector arithmetic for small real Clifford algebras Cl(p, q).

Blades are bitmasks: bit ``i`` set means generator ``i`` is present, and
the canonical blade lists its generators in ascending index order.  The
full ``2**dim x 2**dim`` blade/sign table is built once per algebra.

Coefficients are either a ``float64`` array (fast path, a single matmul per
product) or an ``object`` array whose entries are any commutative scalar
ring supporting ``+``, ``*`` and unary ``-`` (here: :class:`TrigPoly`).
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .phase import PhaseVar, TrigPoly

TOL = 1e-12


class SignatureMismatch(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Signature:
    metric: tuple[int, ...]

    def __post_init__(self):
        if any(m not in (1, -1) for m in self.metric):
            raise ValueError(f"metric entries must be +1 or -1, got {self.metric}")

    @property
    def dim(self) -> int:
        return len(self.metric)

    @property
    def pq(self) -> tuple[int, int]:
        return self.metric.count(1), self.metric.count(-1)


def _reorder_sign(a: int, b: int) -> int:
    """Sign from moving the generators of ``b`` past those of ``a``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _is_zero(x, tol: float) -> bool:
    if isinstance(x, TrigPoly):
        return x.is_zero(tol)
    return abs(x) <= tol


class Algebra:
    """A real Clifford algebra with an orthonormal generator basis."""

    def __init__(self, metric: Sequence[int], names: Sequence[str] | None = None):
        self.signature = Signature(tuple(int(m) for m in metric))
        self.dim = self.signature.dim
        self.size = 1 << self.dim
        self.names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(self.dim))
        if len(self.names) != self.dim:
            raise ValueError("one name per generator")

        n = self.size
        self.grades = np.array([bin(b).count("1") for b in range(n)])
        sign = np.empty((n, n), dtype=np.int8)
        for a in range(n):
            for b in range(n):
                s = _reorder_sign(a, b)
                common = a & b
                i = 0
                while common:
                    if common & 1:
                        s *= self.signature.metric[i]
                    common >>= 1
                    i += 1
                sign[a, b] = s
        self.sign_table = sign
        self.blade_table = np.bitwise_xor.outer(np.arange(n), np.arange(n))
        # (n*n, n) matrix so that vec(outer(a, b)) @ gp_matrix == a*b
        gp = np.zeros((n * n, n))
        gp[np.arange(n * n), self.blade_table.ravel()] = sign.ravel()
        self._gp_matrix = gp
        self._reverse_signs = np.array([(-1) ** (g * (g - 1) // 2) for g in self.grades], dtype=float)

    def __repr__(self) -> str:
        p, q = self.signature.pq
        return f"Algebra(Cl({p},{q}), {'/'.join(self.names)})"

    # -- blade naming -------------------------------------------------------

    def blade_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "".join(self.names[i] for i in range(self.dim) if mask >> i & 1)

    def mask_of(self, names: str | Sequence[str]) -> int:
        """Bitmask for a canonical blade given as a generator name list.

        Generators must appear in ascending index order; use products of
        :meth:`blade` objects for anything else.
        """
        if isinstance(names, str):
            names = [names]
        idx = [self.names.index(nm) for nm in names]
        if idx != sorted(idx) or len(set(idx)) != len(idx):
            raise ValueError(f"{names} is not a canonical blade")
        return sum(1 << i for i in idx)

    # -- constructors -------------------------------------------------------

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.size))

    def scalar(self, c) -> "Multivector":
        coeffs = np.zeros(self.size, dtype=object if isinstance(c, TrigPoly) else float)
        coeffs[0] = c
        return Multivector(self, coeffs)

    def blade(self, mask: int, coeff: float = 1.0) -> "Multivector":
        coeffs = np.zeros(self.size)
        coeffs[mask] = coeff
        return Multivector(self, coeffs)

    def gen(self, i: int) -> "Multivector":
        return self.blade(1 << i)

    def vector(self, coords: Sequence) -> "Multivector":
        if len(coords) != self.dim:
            raise ValueError(f"need {self.dim} vector components")
        dtype = object if any(isinstance(c, TrigPoly) for c in coords) else float
        coeffs = np.zeros(self.size, dtype=dtype)
        for i, c in enumerate(coords):
            coeffs[1 << i] = c
        return Multivector(self, coeffs)

    @cached_property
    def pseudoscalar(self) -> "Multivector":
        return self.blade(self.size - 1)

    def basis(self) -> list["Multivector"]:
        return [self.blade(b) for b in range(self.size)]

    def random(self, rng: np.random.Generator, grades: Iterable[int] | None = None) -> "Multivector":
        coeffs = rng.uniform(-1.0, 1.0, self.size)
        if grades is not None:
            coeffs[~np.isin(self.grades, list(grades))] = 0.0
        return Multivector(self, coeffs)

    # -- batched kernels (float only) --------------------------------------

    def gp_batch(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Geometric product of coefficient arrays of shape (..., size)."""
        outer = a[..., :, None] * b[..., None, :]
        return outer.reshape(*outer.shape[:-2], self.size * self.size) @ self._gp_matrix

    def reverse_batch(self, a: np.ndarray) -> np.ndarray:
        return a * self._reverse_signs


class Multivector:
    """An immutable element of an :class:`Algebra`."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs)
        if coeffs.shape != (algebra.size,):
            raise ValueError(f"expected {algebra.size} coefficients, got shape {coeffs.shape}")
        if coeffs.dtype != object:
            coeffs = coeffs.astype(float)
        coeffs.flags.writeable = False
        self.algebra = algebra
        self.coeffs = coeffs

    @property
    def sig(self) -> Signature:
        return self.algebra.signature

    @property
    def is_symbolic(self) -> bool:
        return self.coeffs.dtype == object

    def _check(self, other: "Multivector") -> None:
        if other.algebra.signature != self.algebra.signature:
            raise SignatureMismatch(f"{self.algebra} vs {other.algebra}")

    def _objects(self) -> np.ndarray:
        return self.coeffs if self.is_symbolic else self.coeffs.astype(object)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            if self.is_symbolic or other.is_symbolic:
                return Multivector(self.algebra, self._objects() + other._objects())
            return Multivector(self.algebra, self.coeffs + other.coeffs)
        if isinstance(other, (numbers.Real, TrigPoly)):
            return self + self.algebra.scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        if self.is_symbolic:
            return Multivector(self.algebra, np.array([-c for c in self.coeffs], dtype=object))
        return Multivector(self.algebra, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (Multivector, numbers.Real, TrigPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, s) -> "Multivector":
        if isinstance(s, TrigPoly) or self.is_symbolic:
            return Multivector(self.algebra, np.array([c * s for c in self._objects()], dtype=object))
        return Multivector(self.algebra, self.coeffs * float(s))

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (numbers.Real, TrigPoly)):
            return self._scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (numbers.Real, TrigPoly)):
            return self._scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return self._scale(1.0 / float(other))
        return NotImplemented

    def __invert__(self):
        return reverse(self)

    # -- access -------------------------------------------------------------

    def __getitem__(self, key: int | str):
        if isinstance(key, str):
            key = self.algebra.mask_of(list(_split_names(key, self.algebra.names)))
        return self.coeffs[key]

    @property
    def scalar(self):
        return self.coeffs[0]

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def grades_present(self, tol: float = TOL) -> set[int]:
        return {int(self.algebra.grades[b]) for b, c in enumerate(self.coeffs) if not _is_zero(c, tol)}

    def vector_part(self) -> np.ndarray:
        """Grade-1 coefficients as a length-``dim`` float array."""
        mv = self.real()
        return np.array([mv.coeffs[1 << i] for i in range(self.algebra.dim)])

    def is_zero(self, tol: float = TOL) -> bool:
        return all(_is_zero(c, tol) for c in self.coeffs)

    def allclose(self, other: "Multivector", tol: float = TOL) -> bool:
        return (self - other).is_zero(tol)

    def max_abs(self) -> float:
        if self.is_symbolic:
            return max((c.max_abs_coeff() if isinstance(c, TrigPoly) else abs(c)) for c in self.coeffs)
        return float(np.max(np.abs(self.coeffs)))

    # -- scalar-ring plumbing -----------------------------------------------

    def map(self, fn: Callable) -> "Multivector":
        vals = [fn(c) for c in self.coeffs]
        if any(isinstance(v, TrigPoly) for v in vals):
            return Multivector(self.algebra, np.array(vals, dtype=object))
        return Multivector(self.algebra, np.array(vals, dtype=float))

    def real(self, tol: float = TOL) -> "Multivector":
        """Float copy; fails if any coefficient still depends on a phase."""
        if not self.is_symbolic:
            return self
        out = np.zeros(self.algebra.size)
        for b, c in enumerate(self.coeffs):
            if isinstance(c, TrigPoly):
                if not c.is_constant(tol):
                    raise TypeError(f"coefficient of {self.algebra.blade_name(b)} depends on a phase")
                c = c.constant
            out[b] = c
        return Multivector(self.algebra, out)

    def expect(self, variables: Iterable[PhaseVar]) -> "Multivector":
        """Coefficient-wise uniform phase average over ``variables``."""
        variables = list(variables)
        out = self.map(lambda c: c.expect(variables) if isinstance(c, TrigPoly) else c)
        try:
            return out.real()
        except TypeError:
            return out

    def phases(self) -> frozenset[PhaseVar]:
        found: set[PhaseVar] = set()
        for c in self.coeffs:
            if isinstance(c, TrigPoly):
                found |= c.variables
        return frozenset(found)

    def eval(self, assignment: Mapping[PhaseVar, float]) -> "Multivector":
        return self.map(lambda c: c.eval(assignment) if isinstance(c, TrigPoly) else float(c))

    def __repr__(self) -> str:
        parts = []
        for b, c in enumerate(self.coeffs):
            if _is_zero(c, 0.0):
                continue
            name = self.algebra.blade_name(b)
            if isinstance(c, TrigPoly):
                parts.append(f"({c!r})" + ("" if b == 0 else f"·{name}"))
            else:
                parts.append(f"{c:+.6g}" + ("" if b == 0 else f"·{name}"))
        return "Multivector(" + (" ".join(parts) or "0") + ")"


def _split_names(key: str, names: Sequence[str]) -> list[str]:
    out, rest = [], key
    while rest:
        for nm in sorted(names, key=len, reverse=True):
            if rest.startswith(nm):
                out.append(nm)
                rest = rest[len(nm):]
                break
        else:
            raise KeyError(key)
    return out


# -- core operations --------------------------------------------------------


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    alg = a.algebra
    if not (a.is_symbolic or b.is_symbolic):
        return Multivector(alg, np.outer(a.coeffs, b.coeffs).ravel() @ alg._gp_matrix)
    out = np.array([0.0] * alg.size, dtype=object)
    nz_a = [(i, c) for i, c in enumerate(a.coeffs) if not _is_zero(c, 0.0)]
    nz_b = [(j, c) for j, c in enumerate(b.coeffs) if not _is_zero(c, 0.0)]
    table, signs = alg.blade_table, alg.sign_table
    for i, ca in nz_a:
        for j, cb in nz_b:
            prod = ca * cb
            k = table[i, j]
            out[k] = out[k] + prod if signs[i, j] > 0 else out[k] - prod
    return Multivector(alg, out)


def bracket(a: Multivector, b: Multivector, kind: str = "commutator") -> Multivector:
    """``ab - ba`` (commutator) or ``ab + ba`` (anticommutator)."""
    if kind == "commutator":
        return a * b - b * a
    if kind == "anticommutator":
        return a * b + b * a
    raise ValueError(f"unknown bracket kind {kind!r}")


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.algebra.dim:
        raise ValueError(f"grade {k} outside 0..{a.algebra.dim}")
    keep = a.algebra.grades == k
    if a.is_symbolic:
        coeffs = np.array([c if keep[b] else 0.0 for b, c in enumerate(a.coeffs)], dtype=object)
    else:
        coeffs = np.where(keep, a.coeffs, 0.0)
    return Multivector(a.algebra, coeffs)


def scalar_part(a: Multivector):
    return a.coeffs[0]


def reverse(a: Multivector) -> Multivector:
    signs = a.algebra._reverse_signs
    if a.is_symbolic:
        return Multivector(a.algebra, np.array([c if s > 0 else -c for c, s in zip(a.coeffs, signs)], dtype=object))
    return Multivector(a.algebra, a.coeffs * signs)


def dot(u: Multivector, v: Multivector):
    """Scalar product of two vectors, as the grade-0 part of ``uv``."""
    return scalar_part(u * v)


def norm_squared(a: Multivector):
    """Scalar ``a * reverse(a)``; raises if the product is not a pure scalar."""
    n = a * reverse(a)
    if not grade_project(n, 0).allclose(n):
        raise NotInvertible("a * reverse(a) is not a scalar")
    return n.scalar


def versor_inverse(v: Multivector) -> Multivector:
    n = norm_squared(v)
    if _is_zero(n, TOL):
        raise NotInvertible("non-invertible: a * reverse(a) is zero")
    if isinstance(n, TrigPoly):
        n = float(n)
    return reverse(v) / n


# -- Euclidean 3D (Σ) helpers -----------------------------------------------


def _require_unit_vector(u: Multivector, tol: float = 1e-9) -> None:
    if u.is_symbolic or u.grades_present(0.0) - {1}:
        raise ValueError("expected a real grade-1 vector")
    n2 = dot(u, u)
    if abs(n2 - 1.0) > tol:
        raise ValueError(f"vector is not unit length (|u|^2 = {n2:.12g})")


def rotor(axis: Multivector, angle: float) -> Multivector:
    """``cos(angle/2) - I axis sin(angle/2)``: right-handed turn about ``axis``."""
    alg = axis.algebra
    if alg.signature.metric != (1, 1, 1):
        raise ValueError("rotors are only provided for Euclidean Cl(3,0)")
    _require_unit_vector(axis)
    return math.cos(angle / 2) - (alg.pseudoscalar * axis) * math.sin(angle / 2)


def reflector(mu: int, algebra: Algebra) -> Multivector:
    """``I sigma_mu`` with ``sigma_0 = 1``: inversion (0) or a frame-plane reflection."""
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"mu must be 0..3, got {mu}")
    sigma = algebra.scalar(1.0) if mu == 0 else algebra.gen(mu - 1)
    return algebra.pseudoscalar * sigma


def sandwich(v: Multivector, a: Multivector, improper: bool = False) -> Multivector:
    """Two-sided action ``v a reverse(v)``, or ``v a v`` for a reflector ``I sigma_mu``."""
    v._check(a)
    if improper:
        return v * a * v
    return v * a * reverse(v)


def orientation(v1: Multivector, v2: Multivector, v3: Multivector, tol: float = TOL) -> int:
    """Sign of the pseudoscalar coefficient of ``v1 ^ v2 ^ v3`` (0 if coplanar)."""
    alg = v1.algebra
    if alg.dim != 3:
        raise ValueError("orientation is defined for 3D vectors")
    # grade-3 part of a product of three vectors is their wedge
    vol = (v1 * v2 * v3).coeffs[alg.size - 1]
    if isinstance(vol, TrigPoly):
        if not vol.is_constant(tol):
            raise ValueError("orientation depends on the phase")
        vol = vol.constant
    if abs(vol) <= tol:
        return 0
    return 1 if vol > 0 else -1


SIGMA = Algebra((1, 1, 1), names=("σ1", "σ2", "σ3"))
STR = Algebra((1, -1, -1, -1, 1), names=("e0", "e1", "e2", "e3", "e5"))

sigma1, sigma2, sigma3 = (SIGMA.gen(i) for i in range(3))
I3 = SIGMA.pseudoscalar


def sigma_vector(x: Sequence[float]) -> Multivector:
    """Vector ``x[0] σ1 + x[1] σ2 + x[2] σ3`` in Σ."""
    return SIGMA.vector([float(c) for c in x])


def identity_suite(alg: Algebra, rng: np.random.Generator, cases: int = 10_000) -> dict[str, float]:
    """Max abs errors of the basic algebra identities over random float multivectors.

    Each identity is checked on ``cases`` random elements: triples for
    ``associativity``, pairs for ``reverse``, vectors for ``metric`` (plus
    every generator square), and for ``centrality`` (odd dimension only,
    where the pseudoscalar is central) every blade plus random elements.
    """
    n = alg.size
    a, b, c = (rng.uniform(-1.0, 1.0, (cases, n)) for _ in range(3))
    gp = alg.gp_batch
    out = {
        "associativity": float(np.max(np.abs(gp(gp(a, b), c) - gp(a, gp(b, c))))),
        "reverse": float(np.max(np.abs(alg.reverse_batch(gp(a, b)) - gp(alg.reverse_batch(b), alg.reverse_batch(a))))),
    }
    # random vectors square to their quadratic form
    metric = np.array(alg.signature.metric, dtype=float)
    vecs = np.zeros((cases, n))
    coords = rng.uniform(-1.0, 1.0, (cases, alg.dim))
    vecs[:, [1 << i for i in range(alg.dim)]] = coords
    want = np.zeros((cases, n))
    want[:, 0] = coords**2 @ metric
    err = float(np.max(np.abs(gp(vecs, vecs) - want)))
    for i, m in enumerate(alg.signature.metric):
        e = alg.gen(i)
        err = max(err, (e * e - alg.scalar(float(m))).max_abs())
    out["metric"] = err
    if alg.dim % 2:
        ps = alg.pseudoscalar
        blades = max((ps * x - x * ps).max_abs() for x in alg.basis())
        p = np.broadcast_to(ps.coeffs, a.shape)
        rand = float(np.max(np.abs(gp(p, a) - gp(a, p))))
        out["centrality"] = max(blades, rand)
    return out
