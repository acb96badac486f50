"""Lower previsions on finite domains.

An assessment is a finite list of (gamble, lower bound) pairs: supremum
acceptable buying prices for finitely many gambles.  Its credal set is the
polytope of probability mass functions that honour every bound.  Avoiding
sure loss is non-emptiness of that polytope, the natural extension of a
gamble is the polytope's lower envelope at that gamble, and coherence is
the fixed-point property that every assessed bound is reproduced by the
natural extension.

The desirability side works with finite sets of accepted gambles and the
cone they span together with the non-negative orthant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Gamble, Space, _check_same_space
from .errors import CapExceededError, SureLossError
from .rationals import frac
from .solver import (
    ONE,
    ZERO,
    Constraint,
    SimplexLP,
    enumerate_vertices,
    satisfies,
    solve_min,
    solve_standard,
    VERTEX_CAP,
)


@dataclass(frozen=True)
class Assessment:
    """Finitely many lower-prevision judgements on one space.

    Duplicate gambles are allowed; the credal constraints then enforce the
    strongest bound automatically.
    """

    space: Space
    items: tuple[tuple[Gamble, Fraction], ...]

    def __post_init__(self):
        norm = []
        for f, b in self.items:
            if f.space != self.space:
                raise ValueError("all assessed gambles must live on the assessment space")
            norm.append((f, frac(b)))
        object.__setattr__(self, "items", tuple(norm))

    @classmethod
    def vacuous(cls, space: Space) -> "Assessment":
        return cls(space, ())

    @classmethod
    def from_prevision(cls, space: Space, masses: Sequence) -> "Assessment":
        """The precise prevision with the given probability masses.

        Encoded as one pair of bounds per outcome indicator, which pins the
        credal set to the single point.
        """
        p = [frac(v) for v in masses]
        if len(p) != space.size or any(v < 0 for v in p) or sum(p) != 1:
            raise ValueError("masses must be a probability vector over the space")
        items = []
        for i in range(space.size):
            ind = Gamble(space, tuple(ONE if j == i else ZERO for j in range(space.size)))
            items.append((ind, p[i]))
            items.append((-ind, -p[i]))
        return cls(space, tuple(items))

    def bound(self, f: Gamble) -> Fraction | None:
        """The strongest assessed bound for a gamble, None if unassessed."""
        bounds = [b for g, b in self.items if g == f]
        return max(bounds) if bounds else None

    def domain(self) -> set[Gamble]:
        return {g for g, _ in self.items}


class CredalSet:
    """The polytope of dominating probability mass functions.

    Constraint rows are preprocessed: duplicate rows keep the strongest
    bound, and opposite pairs (g, b), (-g, -b) are merged into equalities,
    which keeps vertex enumeration in the right dimension.
    """

    def __init__(self, assessment: Assessment):
        self.assessment = assessment
        self.space = assessment.space
        n = self.space.size
        by_coeffs: dict[tuple, Fraction] = {}
        for g, b in assessment.items:
            key = g.values
            if key not in by_coeffs or b > by_coeffs[key]:
                by_coeffs[key] = b
        rows = []
        done = set()
        for coeffs, b in by_coeffs.items():
            if coeffs in done:
                continue
            neg = tuple(-v for v in coeffs)
            if neg in by_coeffs and by_coeffs[neg] == -b and neg != coeffs:
                rows.append(Constraint(coeffs, "==", b))
                done.add(coeffs)
                done.add(neg)
            else:
                rows.append(Constraint(coeffs, ">=", b))
                done.add(coeffs)
        self.lp = SimplexLP(n, None, tuple(rows))

    def is_empty(self) -> bool:
        return solve_min(self.lp).status == "infeasible"

    def contains(self, point: Sequence[Fraction]) -> bool:
        return satisfies(self.lp, point)

    def minimise(self, f: Gamble):
        return solve_min(self.lp.with_objective(f.values))

    def vertices(self, cap: int = VERTEX_CAP) -> frozenset:
        return enumerate_vertices(self.lp, cap)


def avoids_sure_loss(assessment: Assessment) -> bool:
    """True iff some probability mass function dominates every bound."""
    return not CredalSet(assessment).is_empty()


def natural_extension(assessment: Assessment, g: Gamble) -> Fraction:
    """The lower envelope of the credal set at ``g``.

    This is the supremum buying price for ``g`` implied by the assessment
    and coherence alone.  Raises :class:`SureLossError` when the credal
    set is empty.
    """
    _check_same_space(assessment, g)
    result = CredalSet(assessment).minimise(g)
    if result.status == "infeasible":
        raise SureLossError("assessment incurs sure loss; no extension exists")
    return result.value


def upper_extension(assessment: Assessment, g: Gamble) -> Fraction:
    """Conjugate upper value: -E(-g)."""
    return -natural_extension(assessment, -g)


def natural_extension_witness(assessment: Assessment, g: Gamble):
    """Value together with a minimising probability mass function."""
    result = CredalSet(assessment).minimise(g)
    if result.status == "infeasible":
        raise SureLossError("assessment incurs sure loss; no extension exists")
    return result.value, result.witness


def is_coherent(assessment: Assessment) -> bool:
    """Avoiding sure loss plus reproduction of every assessed bound."""
    credal = CredalSet(assessment)
    if credal.is_empty():
        return False
    for f, b in assessment.items:
        if credal.minimise(f).value != b:
            return False
    return True


def coherent_version(assessment: Assessment) -> Assessment:
    """Replace every bound by its natural extension value.

    The result is the coherent assessment with the same credal set.
    """
    credal = CredalSet(assessment)
    if credal.is_empty():
        raise SureLossError("assessment incurs sure loss")
    items = tuple((f, credal.minimise(f).value) for f, _ in assessment.items)
    return Assessment(assessment.space, items)


def credal_vertices(assessment: Assessment, cap: int = VERTEX_CAP) -> frozenset:
    """Extreme points of the credal set, exactly.

    Raises :class:`SureLossError` on an empty credal set and
    :class:`CapExceededError` past the dimension cap.
    """
    if assessment.space.size > cap:
        raise CapExceededError(
            f"credal vertex enumeration capped at {cap} outcomes"
        )
    vertices = CredalSet(assessment).vertices(cap)
    if not vertices:
        raise SureLossError("assessment incurs sure loss; credal set is empty")
    return vertices


# ---------------------------------------------------------------------------
# really desirable gambles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DesirableSet:
    """A finite set of gambles a subject accepts outright."""

    space: Space
    gambles: tuple[Gamble, ...]

    def __post_init__(self):
        for g in self.gambles:
            if g.space != self.space:
                raise ValueError("all gambles must live on the same space")


def desirable_cone_contains(desirable: DesirableSet, g: Gamble) -> bool:
    """Membership of ``g`` in the cone spanned by the set and the orthant.

    True iff g >= sum_k lambda_k f_k pointwise for some lambda >= 0,
    decided as exact LP feasibility with slack variables.
    """
    _check_same_space(desirable, g)
    n = desirable.space.size
    k = len(desirable.gambles)
    # lambda . f_k(x) + s_x = g(x), all variables >= 0
    rows = []
    for x in range(n):
        rows.append(
            [desirable.gambles[j].values[x] for j in range(k)]
            + [ONE if y == x else ZERO for y in range(n)]
        )
    rhs = [g.values[x] for x in range(n)]
    status, _, _ = solve_standard(rows, rhs, [ZERO] * (k + n))
    return status == "optimal"


def avoids_partial_loss(desirable: DesirableSet) -> bool:
    """No non-negative combination is everywhere <= 0 and somewhere < 0.

    Strictness is decided by a second objective: push each coordinate's
    deficit up to a unit and test whether any deficit is attainable.
    """
    n = desirable.space.size
    k = len(desirable.gambles)
    if k == 0:
        return True
    # sum_k lambda_k f_k(x) + t_x + s_x' ... encode:
    #   sum_k lambda_k f_k(x) <= -t_x   and  0 <= t_x <= 1
    # maximise sum(t); partial loss incurred iff the optimum is > 0
    nvars = k + n + n + n  # lambdas, t, slack for <=, slack for t<=1
    rows, rhs = [], []
    for x in range(n):
        row = [ZERO] * nvars
        for j in range(k):
            row[j] = desirable.gambles[j].values[x]
        row[k + x] = ONE  # + t_x
        row[k + n + x] = ONE  # + slack
        rows.append(row)
        rhs.append(ZERO)
    for x in range(n):
        row = [ZERO] * nvars
        row[k + x] = ONE
        row[k + n + n + x] = ONE
        rows.append(row)
        rhs.append(ONE)
    cost = [ZERO] * nvars
    for x in range(n):
        cost[k + x] = -ONE
    status, value, _ = solve_standard(rows, rhs, cost)
    if status != "optimal":
        raise AssertionError(f"partial-loss program reported {status}")
    return value == 0


# ---------------------------------------------------------------------------
# preference relations induced by an assessment
# ---------------------------------------------------------------------------

def almost_prefers(assessment: Assessment, f: Gamble, g: Gamble) -> bool:
    """f is almost-preferred to g iff E(f - g) >= 0."""
    return natural_extension(assessment, f - g) >= 0


def indifferent(assessment: Assessment, f: Gamble, g: Gamble) -> bool:
    return almost_prefers(assessment, f, g) and almost_prefers(assessment, g, f)


def incomparable(assessment: Assessment, f: Gamble, g: Gamble) -> bool:
    return not almost_prefers(assessment, f, g) and not almost_prefers(assessment, g, f)
