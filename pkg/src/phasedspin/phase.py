"""Real trigonometric polynomials in named gauge-phase variables.

A :class:`TrigPoly` is a finite sum of monomials, each a product over
distinct phase variables of ``cos(k x)`` or ``sin(k x)`` with ``k >= 1``.
Products are expanded with the product-to-sum identities so every value
stays exact in the cos/sin basis.  Averaging a variable uniformly over the
circle drops every monomial that contains it.
"""

from __future__ import annotations

import itertools
import math
import numbers
import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping

PRUNE_TOL = 1e-15
DEFAULT_CAP = 8

COS = "cos"
SIN = "sin"


class HarmonicCapError(ValueError):
    """A product would exceed the harmonic cap for some variable."""


class MissingPhaseError(KeyError):
    """Numeric evaluation was asked for without a value for some variable."""


_uid_lock = threading.Lock()
_uid_counter = itertools.count(1)


@dataclass(frozen=True, order=True)
class PhaseVar:
    """An opaque gauge-phase variable.

    Identity is the integer ``uid``; ``name`` is only a label for printing,
    so two variables both called "φ" are still distinct.
    """

    uid: int
    name: str = field(default="φ", compare=False)

    def __repr__(self) -> str:
        return f"PhaseVar({self.name}#{self.uid})"

    def __str__(self) -> str:
        return self.name


def fresh_phase(name: str = "φ") -> PhaseVar:
    """Return a phase variable that has never been handed out before."""
    with _uid_lock:
        uid = next(_uid_counter)
    return PhaseVar(uid, name)


# A factor is (var, harmonic, parity); a monomial is a tuple of factors
# sorted by variable, with at most one factor per variable.
Factor = tuple
Monomial = tuple


def _factor_product(var: PhaseVar, f: tuple, g: tuple, cap: int) -> list[tuple[float, tuple | None]]:
    """Expand f(k1 x) * g(k2 x) into [(coef, factor-or-None)]."""
    k1, p1 = f
    k2, p2 = g
    if k1 + k2 > cap:
        raise HarmonicCapError(
            f"harmonic {k1 + k2} of variable {var.name!r} exceeds cap {cap}"
        )
    diff = k1 - k2
    if p1 == COS and p2 == COS:
        raw = [(0.5, COS, diff), (0.5, COS, k1 + k2)]
    elif p1 == SIN and p2 == SIN:
        raw = [(0.5, COS, diff), (-0.5, COS, k1 + k2)]
    elif p1 == SIN and p2 == COS:
        raw = [(0.5, SIN, k1 + k2), (0.5, SIN, diff)]
    else:
        raw = [(0.5, SIN, k1 + k2), (-0.5, SIN, diff)]
    out = []
    for c, parity, k in raw:
        if k < 0:
            k = -k
            if parity == SIN:
                c = -c
        if k == 0:
            if parity == SIN:
                continue
            out.append((c, None))
        else:
            out.append((c, (k, parity)))
    return out


def _monomial_product(a: Monomial, b: Monomial, cap: int) -> list[tuple[float, Monomial]]:
    da = {v: (k, p) for v, k, p in a}
    db = {v: (k, p) for v, k, p in b}
    partial: list[tuple[float, list]] = [(1.0, [])]
    for var in sorted(set(da) | set(db)):
        if var in da and var in db:
            options = _factor_product(var, da[var], db[var], cap)
        else:
            options = [(1.0, da.get(var) or db.get(var))]
        nxt = []
        for c0, facs in partial:
            for c1, fac in options:
                nxt.append((c0 * c1, facs if fac is None else facs + [(var, *fac)]))
        partial = nxt
    return [(c, tuple(f)) for c, f in partial]


class TrigPoly:
    """Real trigonometric polynomial over :class:`PhaseVar` variables.

    Instances are immutable.  Mixed arithmetic with ``int``/``float`` is
    supported so a TrigPoly can sit inside a numpy object array.
    """

    __slots__ = ("_terms", "cap")

    def __init__(self, terms: Mapping[Monomial, float] | None = None, cap: int = DEFAULT_CAP):
        clean = {}
        for mono, c in (terms or {}).items():
            if abs(c) >= PRUNE_TOL:
                clean[mono] = float(c)
        self._terms: dict[Monomial, float] = clean
        self.cap = cap

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: float) -> "TrigPoly":
        return cls({(): c})

    @classmethod
    def cos(cls, var: PhaseVar, k: int = 1, offset: float = 0.0) -> "TrigPoly":
        """``cos(k*var + offset)``, expanded in the cos/sin basis of ``var``."""
        return cls._harmonic(var, k, offset, COS)

    @classmethod
    def sin(cls, var: PhaseVar, k: int = 1, offset: float = 0.0) -> "TrigPoly":
        """``sin(k*var + offset)``."""
        return cls._harmonic(var, k, offset, SIN)

    @classmethod
    def _harmonic(cls, var: PhaseVar, k: int, offset: float, parity: str) -> "TrigPoly":
        if k == 0:
            val = math.cos(offset) if parity == COS else math.sin(offset)
            return cls.const(val)
        sign = 1.0
        if k < 0:
            # cos(-kx + d) = cos(kx - d); sin(-kx + d) = -sin(kx - d)
            k, offset = -k, -offset
            if parity == SIN:
                sign = -1.0
        co, so = math.cos(offset), math.sin(offset)
        if parity == COS:
            terms = {((var, k, COS),): co, ((var, k, SIN),): -so}
        else:
            terms = {((var, k, SIN),): co, ((var, k, COS),): so}
        return cls({m: sign * c for m, c in terms.items()})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, float]:
        return dict(self._terms)

    @property
    def constant(self) -> float:
        return self._terms.get((), 0.0)

    @property
    def variables(self) -> frozenset[PhaseVar]:
        return frozenset(v for mono in self._terms for v, _, _ in mono)

    def is_constant(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for m, c in self._terms.items() if m)

    def is_zero(self, tol: float = 1e-12) -> bool:
        return all(abs(c) <= tol for c in self._terms.values())

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def degree(self, var: PhaseVar) -> int:
        return max((k for mono in self._terms for v, k, _ in mono if v == var), default=0)

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _lift(x) -> "TrigPoly":
        if isinstance(x, TrigPoly):
            return x
        if isinstance(x, numbers.Real):
            return TrigPoly.const(float(x))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0.0) + c
        return TrigPoly(terms, min(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly({m: -c for m, c in self._terms.items()}, self.cap)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return TrigPoly({m: c * float(other) for m, c in self._terms.items()}, self.cap)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        cap = min(self.cap, other.cap)
        terms: dict[Monomial, float] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if not ma or not mb:
                    m = ma or mb
                    terms[m] = terms.get(m, 0.0) + ca * cb
                    continue
                for c, m in _monomial_product(ma, mb, cap):
                    terms[m] = terms.get(m, 0.0) + ca * cb * c
        return TrigPoly(terms, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return self * (1.0 / float(other))
        return NotImplemented

    def __abs__(self):
        # lets numpy's allclose-style helpers work on constant polynomials
        return self.max_abs_coeff()

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return (self - other).is_zero(1e-12)

    __hash__ = None

    def __float__(self) -> float:
        if not self.is_constant(1e-12):
            raise TypeError(f"TrigPoly depends on {sorted(self.variables)}; not a constant")
        return self.constant

    # -- phase operations ---------------------------------------------------

    def expect(self, variables: Iterable[PhaseVar]) -> "TrigPoly":
        """Uniform average over the circle of each listed variable."""
        drop = set(variables)
        return TrigPoly(
            {m: c for m, c in self._terms.items() if not any(v in drop for v, _, _ in m)},
            self.cap,
        )

    def eval(self, assignment: Mapping[PhaseVar, float]) -> float:
        missing = self.variables - set(assignment)
        if missing:
            raise MissingPhaseError(f"no value for {sorted(missing)}")
        total = 0.0
        for mono, c in self._terms.items():
            val = c
            for v, k, p in mono:
                x = k * assignment[v]
                val *= math.cos(x) if p == COS else math.sin(x)
            total += val
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return "TrigPoly(0)"
        parts = []
        for mono, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = "·".join(f"{p}({k if k != 1 else ''}{v.name})" for v, k, p in mono)
            parts.append(f"{c:+.6g}{'·' + body if body else ''}")
        return "TrigPoly(" + " ".join(parts) + ")"


def expect(a, variables: Iterable[PhaseVar]):
    """Phase expectation that also accepts plain reals (returned unchanged)."""
    if isinstance(a, TrigPoly):
        return a.expect(variables)
    return a


def tp_mul(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    return TrigPoly._lift(a) * b


def evaluate(a, assignment: Mapping[PhaseVar, float]) -> float:
    if isinstance(a, TrigPoly):
        return a.eval(assignment)
    return float(a)
