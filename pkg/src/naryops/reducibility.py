"""Reduction of generated n-ary operations to binary ones and adjunction
of an n-ary neutral element.

Every generated operation is the n-fold iteration of the binary operation
with the same generator. The neutral element is the preimage of zero; when
zero is outside the codomain the neutral point does not exist inside the
interval and is adjoined as a tagged extra point whose generator value
is zero.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence, Union

from .axioms import AxiomReport, Witness, lattice_sampler, scaled_tolerance
from .core import Interval, NaryOp, interval_contains
from .errors import DomainEscapeError
from .generator import GeneratorSpec

__all__ = [
    "AdjoinedNeutral",
    "ADJOINED_NEUTRAL",
    "AdjoinedStructure",
    "derive_binary",
    "verify_reduction",
    "adjoin_neutral",
]


class AdjoinedNeutral:
    """Tagged point adjoined outside the interval; its generator value is
    zero. Represented as an object, not a float sentinel, because it may
    have no numeric home in an open interval."""

    def __repr__(self) -> str:
        return "e*"


ADJOINED_NEUTRAL = AdjoinedNeutral()

Point = Union[float, AdjoinedNeutral]


def derive_binary(spec: GeneratorSpec, inversion_tol: float | None = None) -> NaryOp:
    """The binary operation with the same generator: invert the pairwise
    sum of generator values.

    For admissible codomains pairwise sums stay inside, so the operation
    is total on the interval; a sum landing exactly at zero outside the
    codomain means the result is the adjoined neutral element, reported
    as an error naming it.
    """
    phi = spec.phi
    J = spec.codomain

    def eval_fn(x: float, y: float) -> float:
        s = phi(x) + phi(y)
        if not interval_contains(J, s):
            if s == 0.0:
                raise DomainEscapeError(
                    "pairwise sum hits the adjoined neutral element e* "
                    f"outside codomain {J.render()}"
                )
            raise DomainEscapeError(
                f"pairwise generator sum {s!r} escapes codomain {J.render()}"
            )
        return spec.inverse(s, inversion_tol)

    return NaryOp(2, spec.domain, eval_fn, f"derived[{spec.label or 'phi'}]")


def verify_reduction(
    f: NaryOp,
    diamond: NaryOp,
    samples: int = 500,
    seed: int = 0,
    tol: float = 1e-9,
    window: float = 10.0,
) -> AxiomReport:
    """Compare f on sampled tuples against the left fold of the binary
    candidate. Folding left matches the extension convention; other fold
    orders are covered by associativity of the candidate."""
    if diamond.arity != 2:
        raise ValueError("the reduction candidate must be binary")
    n = f.arity
    rng = random.Random(seed)
    draw = lattice_sampler(f.domain, window, rng)
    max_residual = 0.0
    witness = None
    worst = -math.inf
    for _ in range(samples):
        xs = tuple(draw() for _ in range(n))
        lhs = f.eval(*xs)
        acc = xs[0]
        for v in xs[1:]:
            acc = diamond.eval(acc, v)
        residual = abs(lhs - acc)
        max_residual = max(max_residual, residual)
        margin = residual - scaled_tolerance(tol, lhs, acc)
        if margin > 0.0 and margin > worst:
            worst = margin
            witness = Witness(kind="reduction", inputs=(xs,), residual=residual)
    return AxiomReport(
        axiom="identity",
        passed=witness is None,
        max_residual=max_residual,
        witness=witness,
        samples_used=samples,
        seed=seed,
        tolerance=tol,
        label=f"reduction[{f.label} vs {diamond.label}]",
    )


@dataclass(frozen=True)
class AdjoinedStructure:
    """The interval together with an n-ary neutral element.

    When zero lies in the codomain the neutral element is an interior
    point; otherwise it is the tagged :data:`ADJOINED_NEUTRAL` and tuples
    containing it are evaluated through extended generator sums.
    """

    base_interval: Interval
    neutral: Point
    generator: GeneratorSpec
    arity: int

    @property
    def neutral_is_adjoined(self) -> bool:
        return isinstance(self.neutral, AdjoinedNeutral)

    def phi_prime(self, v: Point) -> float:
        if isinstance(v, AdjoinedNeutral):
            return 0.0
        return self.generator.phi(v)

    def eval(self, xs: Sequence[Point]) -> Point:
        """Evaluate an n-tuple that may contain the adjoined point."""
        if len(xs) != self.arity:
            raise ValueError(f"expected {self.arity} points")
        s = math.fsum(self.phi_prime(v) for v in xs)
        if interval_contains(self.generator.codomain, s):
            return self.generator.inverse(s)
        if s == 0.0:
            return self.neutral
        raise DomainEscapeError(
            f"extended generator sum {s!r} escapes "
            f"{self.generator.codomain.render()} and is not the neutral sum"
        )

    def max_neutrality_residual(self, xs: Sequence[float]) -> float:
        """Worst |f'(e^{n-1} with x at one position) - x| over the sample,
        trying the non-neutral point at every position."""
        worst = 0.0
        for x in xs:
            for pos in range(self.arity):
                tup: list[Point] = [self.neutral] * self.arity
                tup[pos] = x
                y = self.eval(tup)
                if isinstance(y, AdjoinedNeutral):
                    raise DomainEscapeError(
                        f"neutrality evaluation collapsed to the adjoined point at x={x!r}"
                    )
                worst = max(worst, abs(y - x))
        return worst


def adjoin_neutral(
    spec: GeneratorSpec, n: int, probe_points: Sequence[float] | None = None
) -> AdjoinedStructure:
    """Attach the n-ary neutral element to a generated operation.

    Verifies neutrality at every position on a few probe points before
    returning; a gross failure raises :class:`DomainEscapeError`.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if interval_contains(spec.codomain, 0.0):
        neutral: Point = spec.inverse(0.0)
    else:
        neutral = ADJOINED_NEUTRAL
    structure = AdjoinedStructure(
        base_interval=spec.domain, neutral=neutral, generator=spec, arity=n
    )
    if probe_points is None:
        lo, hi = spec.domain.clamp_window(4.0)
        width = hi - lo
        probe_points = [lo + width * t for t in (0.25, 0.5, 0.75)]
    residual = structure.max_neutrality_residual(probe_points)
    scale = 1.0 + max(abs(v) for v in probe_points)
    if residual > 1e-6 * scale:
        raise DomainEscapeError(
            f"adjoined neutral fails neutrality: residual {residual!r} on probes"
        )
    return structure
