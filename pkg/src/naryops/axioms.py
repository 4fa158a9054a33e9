"""Sampling-based falsification checks: associativity, symmetry,
cancellativity, and idempotent search.

These checks can falsify an axiom with a concrete, replayable witness;
they cannot certify it. Samples are drawn from a dyadic lattice inside
the domain window so that operations built from +, -, * are evaluated
exactly and residuals of genuinely associative ops are identically zero.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Interval, NaryOp, lattice

__all__ = [
    "Witness",
    "AxiomReport",
    "AllSampledIdempotent",
    "ALL_SAMPLED_IDEMPOTENT",
    "check_associativity",
    "check_symmetry",
    "check_cancellativity",
    "find_idempotents",
    "scaled_tolerance",
]


def scaled_tolerance(tol: float, lhs: float, rhs: float) -> float:
    """Relative tolerance: tol * (1 + |lhs| + |rhs|)."""
    return tol * (1.0 + abs(lhs) + abs(rhs))


@dataclass(frozen=True)
class Witness:
    """A replayable counterexample: stored inputs reproduce the stored
    residual when re-evaluated on the same operation."""

    kind: str
    inputs: tuple[tuple[float, ...], ...]
    residual: float
    equation_index: int | None = None
    permutation: tuple[int, ...] | None = None
    coordinate: int | None = None

    def replay(self, op, helper=None) -> float:
        """Recompute the residual from the stored inputs.

        ``op`` is the NaryOp (or ExtendedOp for the identity kinds);
        ``helper`` carries the second operation for reduction witnesses.
        """
        if self.kind == "associativity":
            xs = self.inputs[0]
            i = self.equation_index
            return abs(_nesting(op, xs, i - 1) - _nesting(op, xs, i))
        if self.kind == "symmetry":
            xs = self.inputs[0]
            permuted = tuple(xs[j] for j in self.permutation)
            return abs(op.eval(*xs) - op.eval(*permuted))
        if self.kind == "cancellativity":
            a, b = self.inputs
            return op.eval(*b) - op.eval(*a)
        if self.kind == "nested_identity":
            x, y, z = self.inputs
            inner = op.eval(y)
            return abs(op.eval(x + (inner,) + z) - op.eval(x + y + z))
        if self.kind == "split_identity":
            blocks = self.inputs
            heads = tuple(op.eval(b) for b in blocks)
            flat = tuple(itertools.chain.from_iterable(blocks))
            return abs(op.eval(heads) - op.eval(flat))
        if self.kind == "reduction":
            xs = self.inputs[0]
            acc = xs[0]
            for v in xs[1:]:
                acc = helper.eval(acc, v)
            return abs(op.eval(*xs) - acc)
        if self.kind == "additivity":
            raise ValueError("additivity witnesses replay through the extracted generator")
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": [list(t) for t in self.inputs],
            "residual": self.residual,
            "equation_index": self.equation_index,
            "permutation": list(self.permutation) if self.permutation else None,
            "coordinate": self.coordinate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        return cls(
            kind=d["kind"],
            inputs=tuple(tuple(t) for t in d["inputs"]),
            residual=d["residual"],
            equation_index=d.get("equation_index"),
            permutation=tuple(d["permutation"]) if d.get("permutation") else None,
            coordinate=d.get("coordinate"),
        )


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one check: pass/fail, the worst residual seen, and a
    witness when the check failed. Deterministic given (op, seed, samples)."""

    axiom: str  # associativity | symmetry | cancellativity | identity
    passed: bool
    max_residual: float
    witness: Witness | None
    samples_used: int
    seed: int
    tolerance: float
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "pass": self.passed,
            "max_residual": self.max_residual,
            "witness": self.witness.to_dict() if self.witness else None,
            "samples_used": self.samples_used,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "label": self.label,
        }


class AllSampledIdempotent:
    """Marker: every grid point satisfied f(x,...,x) = x to tolerance, so
    the idempotent set is (as far as sampling can tell) the whole grid."""

    def __repr__(self) -> str:
        return "AllSampledIdempotent"


ALL_SAMPLED_IDEMPOTENT = AllSampledIdempotent()


def lattice_sampler(
    iv: Interval, window: float, rng: random.Random
) -> Callable[[], float]:
    """Draw exact dyadic points from iv clamped to [-window, window]."""
    j_min, j_max, h = lattice(iv, window)
    return lambda: rng.randint(j_min, j_max) * h


def _nesting(f: NaryOp, xs: Sequence[float], i: int) -> float:
    """Evaluate the (2n-1)-tuple with the inner application at offset i."""
    n = f.arity
    inner = f.checked(*xs[i : i + n])
    outer = tuple(xs[:i]) + (inner,) + tuple(xs[i + n :])
    return f.eval(*outer)


def check_associativity(
    f: NaryOp,
    samples: int = 500,
    seed: int = 0,
    tol: float = 1e-9,
    window: float = 10.0,
) -> AxiomReport:
    """Compare all adjacent nestings of sampled (2n-1)-tuples.

    Equation index i (1-based, i in [1, n-1]) relates the nesting at
    offset i to the nesting at offset i+1.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = f.arity
    rng = random.Random(seed)
    draw = lattice_sampler(f.domain, window, rng)
    max_residual = 0.0
    witness = None
    worst_violation = -math.inf
    for _ in range(samples):
        xs = tuple(draw() for _ in range(2 * n - 1))
        values = [_nesting(f, xs, i) for i in range(n)]
        for i in range(n - 1):
            lhs, rhs = values[i], values[i + 1]
            residual = abs(lhs - rhs)
            max_residual = max(max_residual, residual)
            margin = residual - scaled_tolerance(tol, lhs, rhs)
            if margin > 0.0 and margin > worst_violation:
                worst_violation = margin
                witness = Witness(
                    kind="associativity",
                    inputs=(xs,),
                    residual=residual,
                    equation_index=i + 1,
                )
    return AxiomReport(
        axiom="associativity",
        passed=witness is None,
        max_residual=max_residual,
        witness=witness,
        samples_used=samples,
        seed=seed,
        tolerance=tol,
        label=f.label,
    )


def _permutations_for(n: int, rng: random.Random, cap: int = 8):
    if math.factorial(n) <= 24:
        return [p for p in itertools.permutations(range(n)) if p != tuple(range(n))]
    perms = []
    for _ in range(cap):
        p = list(range(n))
        rng.shuffle(p)
        if p != list(range(n)):
            perms.append(tuple(p))
    return perms


def check_symmetry(
    f: NaryOp,
    samples: int = 500,
    seed: int = 0,
    tol: float = 1e-9,
    window: float = 10.0,
) -> AxiomReport:
    """Compare f against itself under permutations of each sampled tuple.

    All n! permutations are tried for n <= 4, a seeded sample otherwise.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = f.arity
    rng = random.Random(seed)
    draw = lattice_sampler(f.domain, window, rng)
    max_residual = 0.0
    witness = None
    worst_violation = -math.inf
    for _ in range(samples):
        xs = tuple(draw() for _ in range(n))
        base = f.eval(*xs)
        for perm in _permutations_for(n, rng):
            other = f.eval(*(xs[j] for j in perm))
            residual = abs(base - other)
            max_residual = max(max_residual, residual)
            margin = residual - scaled_tolerance(tol, base, other)
            if margin > 0.0 and margin > worst_violation:
                worst_violation = margin
                witness = Witness(
                    kind="symmetry",
                    inputs=(xs,),
                    residual=residual,
                    permutation=perm,
                )
    return AxiomReport(
        axiom="symmetry",
        passed=witness is None,
        max_residual=max_residual,
        witness=witness,
        samples_used=samples,
        seed=seed,
        tolerance=tol,
        label=f.label,
    )


def check_cancellativity(
    f: NaryOp,
    lines: int = 100,
    points_per_line: int = 9,
    seed: int = 0,
    window: float = 10.0,
    strict_tol: float = 1e-12,
) -> AxiomReport:
    """Check that every sampled one-variable section is strictly monotone.

    For continuous f this falsifies injectivity-per-variable; it cannot
    certify it. The first line per coordinate freezes the other variables
    at the lattice point nearest zero so annihilator-style failures
    (a constant section) are found deterministically.
    """
    if points_per_line < 3:
        raise ValueError("points_per_line must be >= 3")
    n = f.arity
    rng = random.Random(seed)
    j_min, j_max, h = lattice(f.domain, window)
    anchor_j = min(max(0, j_min), j_max)
    max_residual = 0.0
    witness = None
    sections = 0
    for coord in range(n):
        for line in range(lines):
            if line == 0:
                frozen = tuple(anchor_j * h for _ in range(n - 1))
            else:
                frozen = tuple(rng.randint(j_min, j_max) * h for _ in range(n - 1))
            span = j_max - j_min + 1
            if span <= points_per_line:
                js = list(range(j_min, j_max + 1))
            else:
                js = sorted(rng.sample(range(j_min, j_max + 1), points_per_line))
            grid = [j * h for j in js]
            tuples = [
                frozen[:coord] + (x,) + frozen[coord:] for x in grid
            ]
            values = [f.eval(*t) for t in tuples]
            sections += 1
            scale = 1.0 + max(abs(v) for v in values)
            thr = strict_tol * scale
            signs = []
            for t in range(len(values) - 1):
                d = values[t + 1] - values[t]
                if d > thr:
                    signs.append(1)
                elif d < -thr:
                    signs.append(-1)
                else:
                    signs.append(0)
            bad = None
            if 0 in signs:
                bad = signs.index(0)
            elif len(set(signs)) > 1:
                first = signs[0]
                bad = next(t for t, s in enumerate(signs) if s != first)
            if bad is not None and witness is None:
                d = values[bad + 1] - values[bad]
                max_residual = max(max_residual, abs(d))
                witness = Witness(
                    kind="cancellativity",
                    inputs=(tuples[bad], tuples[bad + 1]),
                    residual=d,
                    coordinate=coord,
                )
    return AxiomReport(
        axiom="cancellativity",
        passed=witness is None,
        max_residual=max_residual,
        witness=witness,
        samples_used=sections,
        seed=seed,
        tolerance=strict_tol,
        label=f.label,
    )


def find_idempotents(
    f: NaryOp, grid: Sequence[float], refine_tol: float = 1e-9
):
    """Roots of f(x,...,x) - x over the grid, bisection-refined.

    Returns the :data:`ALL_SAMPLED_IDEMPOTENT` marker when the residual is
    within refine_tol at every grid point.
    """
    pts = list(grid)
    if pts != sorted(pts):
        raise ValueError("grid must be sorted")
    for x in pts:
        if not f.domain.contains(x):
            raise ValueError(f"grid point {x!r} outside {f.domain.render()}")
    n = f.arity

    def h(x: float) -> float:
        return f.eval(*([x] * n)) - x

    values = [h(x) for x in pts]
    if all(abs(v) <= refine_tol for v in values):
        return ALL_SAMPLED_IDEMPOTENT

    roots: list[float] = []
    for x, v in zip(pts, values):
        if v == 0.0:
            roots.append(x)
    for (a, va), (b, vb) in zip(zip(pts, values), zip(pts[1:], values[1:])):
        if va * vb < 0.0:
            lo, hi, vlo = a, b, va
            while hi - lo > refine_tol:
                mid = 0.5 * (lo + hi)
                vm = h(mid)
                if vm == 0.0:
                    lo = hi = mid
                    break
                if (vm > 0.0) == (vlo > 0.0):
                    lo, vlo = mid, vm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > 2.0 * refine_tol:
            merged.append(r)
    return merged
