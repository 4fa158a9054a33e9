"""Intervals over the extended reals, n-ary operations, arity classes,
and the registry of built-in operations and generators.

Everything here is immutable after construction and evaluation is pure,
so values can be shared freely across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import DomainEscapeError, RegistryError

__all__ = [
    "ExtendedReal",
    "NEG_INF",
    "POS_INF",
    "Interval",
    "interval_contains",
    "NaryOp",
    "ArityClass",
    "arity_member",
    "lattice",
    "builtin_lookup",
    "BUILTIN_NAMES",
]


@dataclass(frozen=True, order=True)
class ExtendedReal:
    """A real number or one of the two symbolic infinities.

    ``sign`` is -1 for -inf, 0 for finite, +1 for +inf; ``value`` is only
    meaningful when finite. The derived ordering (sign, value) is the
    standard total order on the extended line.
    """

    sign: int
    value: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0, or +1")
        if self.sign == 0 and not math.isfinite(self.value):
            raise ValueError("finite ExtendedReal needs a finite value")
        if self.sign != 0 and self.value != 0.0:
            raise ValueError("infinite ExtendedReal carries no value")

    @classmethod
    def of(cls, x: float) -> "ExtendedReal":
        if math.isinf(x):
            return POS_INF if x > 0 else NEG_INF
        return cls(0, float(x) + 0.0)  # normalizes -0.0

    @property
    def finite(self) -> bool:
        return self.sign == 0

    def to_float(self) -> float:
        if self.sign > 0:
            return math.inf
        if self.sign < 0:
            return -math.inf
        return self.value

    def __repr__(self) -> str:
        if self.sign > 0:
            return "+inf"
        if self.sign < 0:
            return "-inf"
        return repr(self.value)


NEG_INF = ExtendedReal(-1)
POS_INF = ExtendedReal(1)


@dataclass(frozen=True)
class Interval:
    """A nontrivial real interval with independent open/closed endpoints.

    Infinite endpoints are forced open; ``lo < hi`` so the interval is
    neither empty nor a singleton.
    """

    lo: ExtendedReal
    hi: ExtendedReal
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("interval needs lo < hi")
        if not self.lo.finite and not self.lo_open:
            raise ValueError("infinite endpoint must be open")
        if not self.hi.finite and not self.hi_open:
            raise ValueError("infinite endpoint must be open")

    @classmethod
    def make(
        cls, lo: float, hi: float, lo_open: bool = True, hi_open: bool = True
    ) -> "Interval":
        lo_e = ExtendedReal.of(lo)
        hi_e = ExtendedReal.of(hi)
        return cls(
            lo_e,
            hi_e,
            lo_open or not lo_e.finite,
            hi_open or not hi_e.finite,
        )

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(NEG_INF, POS_INF, True, True)

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse ``(a,b)``, ``[a,b)``, ``(-inf,b]`` and friends."""
        s = text.strip()
        if len(s) < 5 or s[0] not in "([" or s[-1] not in ")]":
            raise ValueError(f"malformed interval {text!r}")
        body = s[1:-1]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed interval {text!r}")

        def endpoint(token: str) -> float:
            t = token.strip().lower()
            if t in ("inf", "+inf", "infinity"):
                return math.inf
            if t == "-inf":
                return -math.inf
            try:
                return float(t)
            except ValueError:
                raise ValueError(f"bad interval endpoint {token!r}") from None

        lo, hi = endpoint(parts[0]), endpoint(parts[1])
        if not lo < hi:
            raise ValueError(f"interval {text!r} needs lo < hi")
        return cls.make(lo, hi, s[0] == "(", s[-1] == ")")

    def contains(self, x: float) -> bool:
        return interval_contains(self, x)

    def render(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo},{self.hi}{right}"

    def clamp_window(self, window: float) -> tuple[float, float]:
        """Finite bounds of the interval intersected with [-window, window]."""
        lo = max(self.lo.to_float(), -window)
        hi = min(self.hi.to_float(), window)
        if not lo < hi:
            raise ValueError(
                f"interval {self.render()} does not meet window [-{window}, {window}]"
            )
        return lo, hi


def interval_contains(iv: Interval, x: float) -> bool:
    """True iff x lies in iv, respecting open and closed endpoints."""
    if math.isnan(x):
        return False
    xe = ExtendedReal.of(x)
    if iv.lo_open:
        if not iv.lo < xe:
            return False
    elif not iv.lo <= xe:
        return False
    if iv.hi_open:
        if not xe < iv.hi:
            return False
    elif not xe <= iv.hi:
        return False
    return True


def lattice(iv: Interval, window: float = 10.0, step: float = 0.125) -> tuple[int, int, float]:
    """Dyadic sampling lattice for an interval: indices j with j*step inside
    ``iv`` intersected with ``[-window, window]``.

    Returns (j_min, j_max, step). Lattice points are exact binary floats, so
    operations built from +, -, * stay exact on samples and associativity
    residuals of exact ops are identically zero. The step is halved until the
    window holds at least 16 points.

    Raises ValueError when the interval is too thin to sample (degenerate).
    """
    lo, hi = iv.clamp_window(window)
    h = step
    while (hi - lo) / h < 16.0 and h > 2.0**-40:
        h /= 2.0
    j_min = math.ceil(lo / h)
    if j_min * h == lo and iv.lo_open and lo == iv.lo.to_float():
        j_min += 1
    j_max = math.floor(hi / h)
    if j_max * h == hi and iv.hi_open and hi == iv.hi.to_float():
        j_max -= 1
    if j_min > j_max:
        raise ValueError(f"interval {iv.render()} too thin to sample")
    return j_min, j_max, h


@dataclass(frozen=True)
class NaryOp:
    """An arity-n operation on an interval, evaluable as a pure function.

    ``eval`` must be deterministic and map domain tuples back into the
    domain; the registry entries are sample-checked for that closure.
    """

    arity: int
    domain: Interval
    eval: Callable[..., float] = field(compare=False)
    label: str = ""

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be at least 2")

    def __call__(self, *xs: float) -> float:
        if len(xs) != self.arity:
            raise TypeError(f"{self.label or 'op'} expects {self.arity} arguments")
        return self.eval(*xs)

    def checked(self, *xs: float) -> float:
        """Evaluate and verify the result stayed finite and in the domain."""
        y = self.eval(*xs)
        if not math.isfinite(y):
            raise DomainEscapeError(f"{self.label or 'op'} produced non-finite {y!r}")
        if not self.domain.contains(y):
            raise DomainEscapeError(
                f"{self.label or 'op'} escaped domain {self.domain.render()}: {y!r}"
            )
        return y


@dataclass(frozen=True)
class ArityClass:
    """String lengths reachable by composing an arity-n operation: the
    positive integers congruent to 1 modulo n-1."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("arity class needs n >= 2")

    def member(self, m: int) -> bool:
        return m >= 1 and (m - 1) % (self.n - 1) == 0

    def step(self) -> int:
        return self.n - 1

    def floor(self, m: int) -> int:
        """Largest class member <= m (m must be >= 1)."""
        return 1 + ((m - 1) // (self.n - 1)) * (self.n - 1)

    def ceil(self, m: int) -> int:
        """Smallest class member >= max(m, 1)."""
        if m <= 1:
            return 1
        return 1 + -((1 - m) // (self.n - 1)) * (self.n - 1)


def arity_member(m: int, n: int) -> bool:
    """True iff a string of length m is evaluable by an arity-n operation."""
    return ArityClass(n).member(m)


# --- Built-in gallery -------------------------------------------------------

BUILTIN_NAMES = (
    "sum",
    "translated_sum",
    "product",
    "bounded_product",
    "alternating",
    "identity_generator",
    "log_generator",
)


def builtin_lookup(name: str, n: int = 2):
    """Instantiate a registry entry at arity n.

    Operation names return :class:`NaryOp`; generator names return a
    :class:`naryops.generator.GeneratorSpec`. ``alternating`` requires an
    odd arity n >= 3.
    """
    from .generator import GeneratorSpec  # local import avoids a cycle

    if name not in BUILTIN_NAMES:
        raise RegistryError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    if name in ("identity_generator", "log_generator"):
        if name == "identity_generator":
            return GeneratorSpec(
                phi=lambda x: x,
                phi_inverse=lambda y: y,
                domain=Interval.real_line(),
                codomain=Interval.real_line(),
                label="identity_generator",
            )
        return GeneratorSpec(
            phi=math.log,
            phi_inverse=math.exp,
            domain=Interval.make(0.0, math.inf),
            codomain=Interval.real_line(),
            label="log_generator",
        )

    if n < 2:
        raise RegistryError(f"builtin {name!r} needs arity n >= 2, got {n}")
    if name == "sum":
        return NaryOp(n, Interval.real_line(), lambda *xs: math.fsum(xs), f"sum/{n}")
    if name == "translated_sum":
        # phi(x) = x + 1/(n-1), so f = sum + 1 and the neutral point is -1/(n-1)
        return NaryOp(
            n, Interval.real_line(), lambda *xs: math.fsum(xs) + 1.0, f"translated_sum/{n}"
        )
    if name == "product":
        return NaryOp(n, Interval.make(0.0, math.inf), lambda *xs: math.prod(xs), f"product/{n}")
    if name == "bounded_product":
        return NaryOp(
            n, Interval.make(0.0, 1.0), lambda *xs: math.prod(xs), f"bounded_product/{n}"
        )
    if name == "alternating":
        if n < 3 or n % 2 == 0:
            raise RegistryError(f"alternating requires an odd arity n >= 3, got {n}")
        return NaryOp(
            n,
            Interval.real_line(),
            lambda *xs: math.fsum(x if i % 2 == 0 else -x for i, x in enumerate(xs)),
            f"alternating/{n}",
        )
    raise AssertionError("unreachable")
