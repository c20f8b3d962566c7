"""Iteration of automorphisms on elements and boundary points.

The engine certifies limits by prefix stabilization: it tracks the common
prefix of consecutive iterates and declares a boundary limit once that
prefix is long enough (``target_prefix``) and has grown monotonically for
a window of steps.  A certified prefix is then tested for an eventually
periodic shape; a recognized rational candidate is only accepted if it is
exactly fixed by the automorphism, so phantom periods in a short prefix
cannot leak into results.

Limits of elements and of rational boundary points agree (the orbit of
``g`` and of ``g^infinity`` converge together), which is what
:func:`omega_limit_rational` exploits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .automorphisms import AutoPair, Endomorphism, power
from .words import (
    EmptyWordError,
    Word,
    common_prefix_length,
    cyclic_reduce,
    format_word,
    primitive_root,
)


class GrowthOverflowError(RuntimeError):
    """Word length exceeded the configured budget during iteration."""

    def __init__(self, iteration: int, length: int, budget: int):
        self.iteration = iteration
        self.length = length
        self.budget = budget
        super().__init__(
            f"word grew to {length} letters (budget {budget}) at iteration {iteration}"
        )


@dataclass(frozen=True)
class IterationConfig:
    max_iterations: int = 300
    target_prefix: int = 200
    stability_window: int = 5
    max_word_length: int = 10**6
    min_repeats: int = 3
    period_bound: int = 6

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_CONFIG = IterationConfig()


# ---------------------------------------------------------------------------
# Rational boundary points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalPoint:
    """Canonical form ``head . period^infinity`` of a rational boundary point.

    The period is primitive and cyclically reduced, the junction does not
    cancel, and the head is minimal (it does not end with the last letter
    of the period).  Build instances through :func:`rational_point`; the
    canonical form makes equality of points plain field equality.
    """

    head: Word
    period: Word

    def text(self) -> str:
        if self.head.is_identity():
            return f"({format_word(self.period)})^∞"
        return f"{format_word(self.head)} ({format_word(self.period)})^∞"

    def __str__(self) -> str:
        return self.text()


def rational_point(head: Word, period: Word) -> RationalPoint:
    """Canonicalize ``head . period^infinity``."""
    if period.is_identity():
        raise EmptyWordError("period must be nonempty")
    conj, core = cyclic_reduce(period)
    root, _ = primitive_root(core)
    h = list((head * conj).letters())
    c = list(root.letters())
    # absorb cancellation of the head into the power block
    while h and h[-1] == -c[0]:
        h.pop()
        c = c[1:] + c[:1]
    # minimal head: pull whole trailing periods and partial rotations back
    while h and h[-1] == c[-1]:
        h.pop()
        c = c[-1:] + c[:-1]
    alphabet = period.alphabet
    return RationalPoint(
        Word.from_letters(alphabet, h), Word.from_letters(alphabet, c)
    )


def rational_from_element(u: Word) -> RationalPoint:
    """The limit ``u^infinity`` of the powers of a nontrivial element."""
    if u.is_identity():
        raise EmptyWordError("identity has no boundary limit")
    conj, core = cyclic_reduce(u)
    root, _ = primitive_root(core)
    return rational_point(conj, root)


def element_of(point: RationalPoint) -> Word:
    """The canonical element ``[head period head^-1]`` with ``point = u^inf``."""
    return point.head * point.period * point.head.inverse()


def prefix_of(point: RationalPoint, n: int) -> Word:
    """The first ``n`` letters of the infinite word."""
    if n <= len(point.head):
        return point.head.prefix(n)
    reps = -(-(n - len(point.head)) // len(point.period))
    return (point.head * point.period**reps).prefix(n)


def translate(g: Word, point: RationalPoint) -> RationalPoint:
    """The left translate ``g . point``, canonicalized."""
    return rational_point(g * point.head, point.period)


def apply_rational(e: Endomorphism, point: RationalPoint) -> RationalPoint:
    """The image of a rational point under the boundary map of ``e``."""
    return rational_point(e.apply(point.head), e.apply(point.period))


# ---------------------------------------------------------------------------
# Limit results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rational:
    point: RationalPoint

    def text(self) -> str:
        return self.point.text()


@dataclass(frozen=True)
class PrefixApprox:
    """A certified finite prefix of a limit point not recognized as rational."""

    prefix: Word
    certified_length: int

    def __post_init__(self):
        if len(self.prefix) < self.certified_length:
            raise ValueError("prefix shorter than its certified length")

    def text(self) -> str:
        return format_word(self.prefix.prefix(12)) + " …"


LimitPoint = Union[Rational, PrefixApprox]


@dataclass(frozen=True)
class FixedElement:
    word: Word

    def to_json(self) -> dict:
        return {"kind": "fixed", "word": format_word(self.word)}


@dataclass(frozen=True)
class Boundary:
    point: LimitPoint
    iterations_used: int
    certified_length: int

    def to_json(self) -> dict:
        if isinstance(self.point, Rational):
            point = {
                "type": "rational",
                "head": format_word(self.point.point.head),
                "period": format_word(self.point.point.period),
            }
        else:
            point = {
                "type": "prefix",
                "prefix": format_word(self.point.prefix),
                "certified_length": self.point.certified_length,
            }
        return {
            "kind": "boundary",
            "point": point,
            "iterations": self.iterations_used,
            "certified_length": self.certified_length,
        }


@dataclass(frozen=True)
class NotConverged:
    best_prefix: Word
    certified_length: int
    diagnostics: dict = field(compare=False)

    def to_json(self) -> dict:
        return {
            "kind": "not-converged",
            "best_prefix": format_word(self.best_prefix),
            "certified_length": self.certified_length,
            "diagnostics": self.diagnostics,
        }


LimitResult = Union[FixedElement, Boundary, NotConverged]


# ---------------------------------------------------------------------------
# Iteration
# ---------------------------------------------------------------------------


def iterate(phi: AutoPair, g: Word, p: int, cfg: IterationConfig = DEFAULT_CONFIG) -> Word:
    """The exact iterate ``[phi^p(g)]``; negative ``p`` uses the inverse."""
    e = phi.forward if p >= 0 else phi.backward
    current = g
    for step in range(1, abs(p) + 1):
        current = e.apply(current)
        if len(current) > cfg.max_word_length:
            raise GrowthOverflowError(step, len(current), cfg.max_word_length)
    return current


def recognize_rational(prefix: Word, cfg: IterationConfig = DEFAULT_CONFIG) -> Optional[RationalPoint]:
    """Eventually periodic decomposition of a certified prefix, if any.

    Scans period lengths in increasing order; for each, the minimal head
    is found by one backward pass.  The period must repeat at least
    ``min_repeats`` times and cover the prefix to its end.
    """
    letters = list(prefix.letters())
    n = len(letters)
    for d in range(1, n // cfg.min_repeats + 1):
        start = n - d
        for j in range(n - d - 1, -1, -1):
            if letters[j] == letters[j + d]:
                start = j
            else:
                break
        if n - start >= cfg.min_repeats * d:
            head = Word.from_letters(prefix.alphabet, letters[:start])
            period = Word.from_letters(prefix.alphabet, letters[start : start + d])
            return rational_point(head, period)
    return None


def omega_limit(phi: AutoPair, g: Word, cfg: IterationConfig = DEFAULT_CONFIG) -> LimitResult:
    """Limit of the forward orbit of ``g`` in the compactification.

    Fixed elements are reported as such; otherwise the orbit is followed
    until the common prefix of consecutive iterates certifies a boundary
    point, or budgets run out.
    """
    forward = phi.forward
    nxt = forward.apply(g)
    if nxt == g:
        return FixedElement(g)
    prev = g
    prev_cp: Optional[int] = None
    streak = 0
    best_cp = 0
    best_word = g
    iterations = 0
    while iterations < cfg.max_iterations:
        iterations += 1
        if len(nxt) > cfg.max_word_length:
            return NotConverged(
                best_word.prefix(best_cp),
                best_cp,
                {
                    "reason": "growth-overflow",
                    "iterations": iterations,
                    "length": len(nxt),
                    "budget": cfg.max_word_length,
                },
            )
        cp = common_prefix_length(prev, nxt)
        streak = streak + 1 if (prev_cp is None or cp > prev_cp) else 0
        if cp >= best_cp:
            best_cp = cp
            best_word = nxt
        if cp >= cfg.target_prefix and streak >= cfg.stability_window:
            certified = nxt.prefix(cp)
            candidate = recognize_rational(certified, cfg)
            if candidate is not None and apply_rational(forward, candidate) == candidate:
                point: LimitPoint = Rational(candidate)
            else:
                point = PrefixApprox(certified, cp)
            return Boundary(point, iterations, cp)
        prev_cp = cp
        prev = nxt
        nxt = forward.apply(prev)
    return NotConverged(
        best_word.prefix(best_cp),
        best_cp,
        {"reason": "max-iterations", "iterations": iterations},
    )


def omega_limit_rational(
    phi: AutoPair, point: RationalPoint, cfg: IterationConfig = DEFAULT_CONFIG
) -> LimitResult:
    """Limit of the forward orbit of a rational boundary point.

    If the defining element is fixed, the point itself is a fixed
    singular point and is returned exactly; otherwise the orbit of the
    element has the same limit as the orbit of the point.
    """
    u = element_of(point)
    if phi.apply(u) == u:
        return Boundary(Rational(point), 0, cfg.target_prefix)
    return omega_limit(phi, u, cfg)


# ---------------------------------------------------------------------------
# Parabolic detection
# ---------------------------------------------------------------------------

PARABOLIC = "parabolic"
NOT_PARABOLIC = "not-parabolic"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ParabolicReport:
    seed: Word
    forward: LimitResult
    backward: LimitResult
    verdict: str
    point: Optional[RationalPoint] = None
    certification: Optional[str] = None  # "exact" or "prefix"
    reason: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "seed": format_word(self.seed),
            "verdict": self.verdict,
            "point": None
            if self.point is None
            else {
                "head": format_word(self.point.head),
                "period": format_word(self.point.period),
            },
            "certification": self.certification,
            "reason": self.reason,
            "forward": _limit_json(self.forward),
            "backward": _limit_json(self.backward),
        }


def _limit_json(result: LimitResult) -> dict:
    return result.to_json()


def _certified_prefix(result: Boundary, n: int) -> Word:
    if isinstance(result.point, Rational):
        return prefix_of(result.point.point, n)
    return result.point.prefix


def detect_parabolic(
    phi: AutoPair, seed: Word, cfg: IterationConfig = DEFAULT_CONFIG
) -> ParabolicReport:
    """Check whether forward and backward orbits of ``seed`` share a limit.

    The verdict is ``parabolic`` with certification "exact" when both
    limits are recognized rational points with equal canonical forms.  If
    one side is only prefix-certified, agreement of the certified prefixes
    to at least ``target_prefix`` letters yields a parabolic verdict of
    certification grade "prefix"; with both sides unrecognized the report
    stays inconclusive.
    """
    if seed.is_identity():
        raise EmptyWordError("seed must be nontrivial")
    if phi.apply(seed) == seed:
        half = omega_limit(phi, seed, cfg)
        return ParabolicReport(
            seed, half, half, NOT_PARABOLIC, reason="seed is fixed by the automorphism"
        )
    forward = omega_limit(phi, seed, cfg)
    backward = omega_limit(phi.inverse(), seed, cfg)
    if not isinstance(forward, Boundary) or not isinstance(backward, Boundary):
        return ParabolicReport(
            seed,
            forward,
            backward,
            INCONCLUSIVE,
            reason="orbit limit did not certify within budgets",
        )
    fp, bp = forward.point, backward.point
    if isinstance(fp, Rational) and isinstance(bp, Rational):
        if fp.point == bp.point:
            return ParabolicReport(
                seed, forward, backward, PARABOLIC, point=fp.point, certification="exact"
            )
        return ParabolicReport(
            seed,
            forward,
            backward,
            NOT_PARABOLIC,
            reason=f"forward limit {fp.text()} differs from backward limit {bp.text()}",
        )
    length = min(
        cfg.target_prefix,
        forward.certified_length,
        backward.certified_length,
    )
    wf = _certified_prefix(forward, length).prefix(length)
    wb = _certified_prefix(backward, length).prefix(length)
    if common_prefix_length(wf, wb) >= cfg.target_prefix:
        rational = fp.point if isinstance(fp, Rational) else (
            bp.point if isinstance(bp, Rational) else None
        )
        if rational is not None:
            return ParabolicReport(
                seed, forward, backward, PARABOLIC, point=rational, certification="prefix"
            )
        return ParabolicReport(
            seed,
            forward,
            backward,
            INCONCLUSIVE,
            certification="prefix",
            reason="certified prefixes agree but neither limit is recognized rational",
        )
    return ParabolicReport(
        seed,
        forward,
        backward,
        NOT_PARABOLIC,
        reason="certified prefixes of forward and backward limits diverge",
    )


# ---------------------------------------------------------------------------
# Growth classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthClass:
    kind: str  # "bounded" | "polynomial" | "exponential"
    degree: Optional[float] = None
    rate: Optional[float] = None
    residuals: dict = field(default_factory=dict, compare=False)
    samples: int = 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "rate": self.rate,
            "residuals": self.residuals,
            "samples": self.samples,
        }


def growth_classify(
    phi: AutoPair, g: Word, p_max: int, cfg: IterationConfig = DEFAULT_CONFIG
) -> GrowthClass:
    """Classify the growth of ``|phi^p(g)|`` from sampled lengths.

    Fits are taken on the tail half of the samples to skip transients; a
    growth overflow truncates sampling and the classification proceeds on
    the available points.
    """
    if p_max < 8:
        raise ValueError("p_max must be at least 8")
    lengths = []
    current = g
    for _ in range(p_max):
        current = phi.apply(current)
        if len(current) > cfg.max_word_length:
            break
        lengths.append(len(current))
    if not lengths or lengths[-1] == 0:
        return GrowthClass("bounded", samples=len(lengths))
    tail_start = len(lengths) // 2
    ps = np.arange(1, len(lengths) + 1, dtype=float)[tail_start:]
    ls = np.array(lengths, dtype=float)[tail_start:]
    if ls.max() == ls.min():
        return GrowthClass("bounded", samples=len(lengths))
    logl = np.log(ls)
    poly_fit, poly_res = _linear_fit(np.log(ps), logl)
    exp_fit, exp_res = _linear_fit(ps, logl)
    residuals = {"polynomial": poly_res, "exponential": exp_res}
    if poly_res <= exp_res:
        return GrowthClass(
            "polynomial", degree=round(poly_fit, 2), residuals=residuals, samples=len(lengths)
        )
    return GrowthClass(
        "exponential", rate=exp_fit, residuals=residuals, samples=len(lengths)
    )


def _linear_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    return float(slope), float(np.sum((y - fitted) ** 2))


# ---------------------------------------------------------------------------
# Splittings and boundary periodicity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingCertificate:
    holds: bool
    p_max: int
    witness: Optional[tuple[int, int]] = None  # (iterate p, 1-based left brick)

    def __bool__(self) -> bool:
        return self.holds


def verify_splitting(
    phi: AutoPair, bricks: Sequence[Word], p_max: int
) -> SplittingCertificate:
    """Bounded-p certificate that adjacent brick images never cancel.

    Checks ``|phi^p(g_i)| + |phi^p(g_i+1)| = |phi^p(g_i g_i+1)|`` for all
    ``p <= p_max``.  This certifies the splitting up to the bound only.
    """
    bricks = list(bricks)
    if len(bricks) < 2:
        raise ValueError("a splitting needs at least two bricks")
    if any(b.is_identity() for b in bricks):
        raise ValueError("bricks must be nontrivial")
    images = bricks
    for p in range(p_max + 1):
        if p > 0:
            images = [phi.apply(w) for w in images]
        for i in range(len(images) - 1):
            u, v = images[i], images[i + 1]
            if len(u * v) != len(u) + len(v):
                return SplittingCertificate(False, p_max, (p, i + 1))
    return SplittingCertificate(True, p_max)


def detect_boundary_period(
    phi: AutoPair,
    seed: Word,
    bound: Optional[int] = None,
    cfg: IterationConfig = DEFAULT_CONFIG,
) -> Optional[int]:
    """Heuristic probe for short boundary-periodic behavior.

    Looks for the smallest q <= bound such that the orbit of ``seed``
    under ``phi^q`` converges while the limit itself moves on a
    ``phi``-orbit of period q > 1.  Absence of a finding is not a proof
    of rotationlessness.
    """
    if bound is None:
        bound = cfg.period_bound
    for q in range(2, bound + 1):
        result = omega_limit(power(phi, q), seed, cfg)
        orbit_period = None
        if isinstance(result, FixedElement):
            w = result.word
            current = w
            for r in range(1, bound + 1):
                current = phi.apply(current)
                if current == w:
                    orbit_period = r
                    break
        elif isinstance(result, Boundary) and isinstance(result.point, Rational):
            x = result.point.point
            current = x
            for r in range(1, bound + 1):
                current = apply_rational(phi.forward, current)
                if current == x:
                    orbit_period = r
                    break
        if orbit_period is not None and orbit_period > 1:
            return orbit_period
    return None
