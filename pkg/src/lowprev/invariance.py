"""Weak and strong invariance of lower previsions under monoids.

Weak invariance is symmetry *of* the model: the credal set is mapped into
itself by every transformation.  Strong invariance models a belief *of*
symmetry: every dominating prevision is fixed by every transformation.
On a finite space both reduce to exact checks on the credal polytope's
vertices, and the smallest strongly invariant dominating model (when it
exists) is one linear programme: minimise over the credal set intersected
with the fixed-point polytope of the pushforward maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Gamble, Space, Transformation, lift
from .errors import (
    NoInvariantDominatorError,
    NotAGroupError,
    NotStronglyInvariantError,
    SureLossError,
)
from .previsions import Assessment, CredalSet, credal_vertices, natural_extension
from .solver import (
    ONE,
    ZERO,
    Constraint,
    SimplexLP,
    extreme_points,
    polytope_inequalities,
    solve_min,
    solve_standard,
)
from .transforms import TransformationMonoid, classify, invariant_atoms, pushforward
from .transforms import InvariantAtoms


# ---------------------------------------------------------------------------
# invariance checks
# ---------------------------------------------------------------------------

def assessment_weakly_invariant(assessment: Assessment, m: TransformationMonoid) -> bool:
    """Domain closed under lifting, with bounds that never drop.

    Checking the generators suffices: lifted constraints compose.
    """
    domain = assessment.domain()
    for f in domain:
        b = assessment.bound(f)
        for t in m.generators:
            lifted = lift(t, f)
            lifted_bound = assessment.bound(lifted)
            if lifted_bound is None or lifted_bound < b:
                return False
    return True


def _sorted_vertices(assessment: Assessment):
    return sorted(credal_vertices(assessment))


def _weak_credal_witness(assessment: Assessment, m: TransformationMonoid):
    """First (vertex, generator) whose pushforward leaves the credal set."""
    credal = CredalSet(assessment)
    for vertex in _sorted_vertices(assessment):
        for t in m.generators:
            if not credal.contains(pushforward(t, vertex)):
                return vertex, t
    return None


def _strong_witness(assessment: Assessment, m: TransformationMonoid):
    """First (vertex, generator) with pushforward(T, v) != v."""
    for vertex in _sorted_vertices(assessment):
        for t in m.generators:
            if pushforward(t, vertex) != vertex:
                return vertex, t
    return None


def credal_weakly_invariant(assessment: Assessment, m: TransformationMonoid) -> bool:
    """T M(A) inside M(A) for every generator T, checked on vertices.

    Pushforward is linear and the credal set convex, so mapping every
    vertex back into the set is equivalent to mapping the whole set into
    itself.
    """
    return _weak_credal_witness(assessment, m) is None


def strongly_invariant(assessment: Assessment, m: TransformationMonoid) -> bool:
    """Every dominating prevision is fixed by every transformation.

    A linear equality holds on a polytope iff it holds on the vertices, so
    vertex fixedness under every generator settles it.
    """
    return _strong_witness(assessment, m) is None


@dataclass(frozen=True)
class InvarianceReport:
    """Joint result of the three invariance checks.

    The credal-level fields are None when the assessment incurs sure loss:
    there is no credal set to speak about, and only the assessment-level
    check is reported.
    """

    weak_assessment_level: bool
    weak_credal_level: bool | None
    strong: bool | None
    witnesses: dict


def invariance_report(assessment: Assessment, m: TransformationMonoid) -> InvarianceReport:
    weak_domain = assessment_weakly_invariant(assessment, m)
    witnesses: dict = {}
    try:
        weak_witness = _weak_credal_witness(assessment, m)
        strong_witness = _strong_witness(assessment, m)
    except SureLossError:
        return InvarianceReport(weak_domain, None, None, {"sure_loss": True})
    if weak_witness is not None:
        witnesses["weak"] = weak_witness
    if strong_witness is not None:
        witnesses["strong"] = strong_witness
    return InvarianceReport(
        weak_domain, weak_witness is None, strong_witness is None, witnesses
    )


def weakly_invariant_closure(
    assessment: Assessment, m: TransformationMonoid, cap: int = 512
) -> Assessment:
    """Close the item list under generator lifting, carrying bounds along.

    Every lifted gamble inherits the strongest bound of its sources, so
    the result is weakly invariant at the assessment level, and so is its
    natural extension.
    """
    from .errors import CapExceededError

    bounds: dict[Gamble, Fraction] = {}
    for f, b in assessment.items:
        if f not in bounds or bounds[f] < b:
            bounds[f] = b
    queue = list(bounds)
    while queue:
        f = queue.pop()
        b = bounds[f]
        for t in m.generators:
            lifted = lift(t, f)
            if lifted not in bounds or bounds[lifted] < b:
                bounds[lifted] = max(bounds.get(lifted, b), b)
                queue.append(lifted)
                if len(bounds) > cap:
                    raise CapExceededError("lifting closure exceeded the cap")
    return Assessment(assessment.space, tuple(bounds.items()))


# ---------------------------------------------------------------------------
# invariant previsions and the strongly invariant natural extension
# ---------------------------------------------------------------------------

def _invariance_rows(m: TransformationMonoid) -> tuple[Constraint, ...]:
    """Equality rows pinning pushforward(T, p) == p for each generator."""
    n = m.space.size
    rows = []
    for t in m.generators:
        preimages: list[list[int]] = [[] for _ in range(n)]
        for i, j in enumerate(t.image):
            preimages[j].append(i)
        for j in range(n):
            coeffs = [ZERO] * n
            for i in preimages[j]:
                coeffs[i] += ONE
            coeffs[j] -= ONE
            if any(v != 0 for v in coeffs):
                rows.append(Constraint(tuple(coeffs), "==", ZERO))
    return tuple(rows)


def invariant_previsions_exist(m: TransformationMonoid) -> bool:
    """Is some probability mass function fixed by every generator?"""
    lp = SimplexLP(m.space.size, None, _invariance_rows(m))
    return solve_min(lp).status == "optimal"


def invariant_polytope_vertices(m: TransformationMonoid) -> frozenset:
    """Extreme points of the polytope of invariant previsions."""
    from .solver import enumerate_vertices

    lp = SimplexLP(m.space.size, None, _invariance_rows(m))
    return enumerate_vertices(lp)


def strongly_invariant_natex(
    assessment: Assessment, m: TransformationMonoid, g: Gamble
) -> Fraction:
    """Lower envelope of the invariant previsions dominating the assessment.

    This is the most conservative coherent model that both honours the
    assessed bounds and treats every gamble as indifferent to its
    transforms.  Raises :class:`NoInvariantDominatorError` when no
    dominating invariant prevision exists, and :class:`SureLossError`
    when even the credal set is empty.
    """
    credal = CredalSet(assessment)
    if credal.is_empty():
        raise SureLossError("assessment incurs sure loss")
    lp = SimplexLP(
        assessment.space.size,
        g.values,
        credal.lp.constraints + _invariance_rows(m),
    )
    result = solve_min(lp)
    if result.status == "infeasible":
        raise NoInvariantDominatorError(
            "no invariant coherent prevision dominates the assessment"
        )
    return result.value


# ---------------------------------------------------------------------------
# mixture lower previsions
# ---------------------------------------------------------------------------

def words_up_to(m: TransformationMonoid, depth: int) -> list[Transformation]:
    """Distinct compositions of at most ``depth`` generators, identity first."""
    from .core import identity

    ident = identity(m.space)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    for _ in range(depth):
        nxt = []
        for t in frontier:
            for gen in m.generators:
                w = gen.compose(t)
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    return order


def mixture_lower_prevision(
    assessment: Assessment, m: TransformationMonoid, g: Gamble, depth: int
) -> Fraction:
    """Best lower bound achievable by averaging transformed copies of ``g``.

    Computes sup over convex mixtures rho of words w (length <= depth) of
    E(sum_w rho_w lift(w, g)): a matrix game between the mixture weights
    and the credal vertices, solved as one exact LP.  Uniform averages
    with repetition realise every rational mixture, so this is their
    supremum too.  Monotone non-decreasing in ``depth``.
    """
    words = words_up_to(m, depth)
    lifted = [lift(w, g) for w in words]
    vertices = sorted(credal_vertices(assessment))
    payoff = [
        [sum(p * v for p, v in zip(vertex, h.values)) for h in lifted]
        for vertex in vertices
    ]
    # max z st sum_w rho_w payoff[v][w] >= z, rho in simplex; z = zp - zm
    k = len(words)
    nv = len(vertices)
    nvars = k + 2 + nv  # rho, zp, zm, one slack per vertex row
    rows, rhs = [], []
    for vi in range(nv):
        row = [ZERO] * nvars
        for wi in range(k):
            row[wi] = payoff[vi][wi]
        row[k] = -ONE
        row[k + 1] = ONE
        row[k + 2 + vi] = -ONE
        rows.append(row)
        rhs.append(ZERO)
    row = [ZERO] * nvars
    for wi in range(k):
        row[wi] = ONE
    rows.append(row)
    rhs.append(ONE)
    cost = [ZERO] * nvars
    cost[k] = -ONE
    cost[k + 1] = ONE
    status, value, _ = solve_standard(rows, rhs, cost)
    if status != "optimal":
        raise AssertionError(f"mixture game reported {status}")
    return -value


# ---------------------------------------------------------------------------
# finite groups: symmetrisation and the atomic representation
# ---------------------------------------------------------------------------

def _require_group(m: TransformationMonoid):
    if not classify(m).group:
        raise NotAGroupError("operation requires a finite group of permutations")


def symmetrize(assessment: Assessment, group: TransformationMonoid, g: Gamble) -> Fraction:
    """Uniform average of E(lift(pi, g)) over the whole group.

    The resulting functional of g is weakly invariant under the group, and
    weakly invariant models are exactly its fixed points.
    """
    _require_group(group)
    elems = sorted(group.closure, key=lambda t: t.image)
    total = sum(natural_extension(assessment, lift(t, g)) for t in elems)
    return total / len(elems)


@dataclass(frozen=True)
class AtomLowerPrevision:
    """A lower prevision on the quotient space of invariant atoms."""

    atoms: InvariantAtoms
    assessment: Assessment  # on the quotient space, one outcome per atom

    @property
    def quotient_space(self) -> Space:
        return self.assessment.space


def quotient_space(atoms: InvariantAtoms) -> Space:
    return Space(tuple(",".join(block) for block in atoms.partition))


def atom_representation(quotient: AtomLowerPrevision, g: Gamble) -> Fraction:
    """Evaluate the two-stage model: quotient prevision of atom means."""
    means = tuple(
        sum(g(x) for x in block) / len(block) for block in quotient.atoms.partition
    )
    return natural_extension(quotient.assessment, Gamble(quotient.quotient_space, means))


def extract_atom_lowprev(assessment: Assessment, group: TransformationMonoid) -> AtomLowerPrevision:
    """Recover the quotient model of a strongly invariant assessment.

    Marginalises every credal vertex onto the invariant atoms and rebuilds
    an exact H-representation of the marginal polytope; the result
    reproduces the original model through :func:`atom_representation`.
    """
    _require_group(group)
    if not strongly_invariant(assessment, group):
        raise NotStronglyInvariantError(
            "quotient extraction needs a strongly invariant assessment"
        )
    atoms = invariant_atoms(group)
    space = assessment.space
    blocks_idx = [
        tuple(space.index(x) for x in block) for block in atoms.partition
    ]
    marginals = set()
    for vertex in credal_vertices(assessment):
        marginals.add(tuple(sum(vertex[i] for i in idxs) for idxs in blocks_idx))
    points = extreme_points(marginals)
    equalities, inequalities = polytope_inequalities(points)
    qspace = quotient_space(atoms)
    items = []
    for coeffs, rhs in inequalities:
        items.append((Gamble(qspace, coeffs), rhs))
    for coeffs, rhs in equalities:
        gam = Gamble(qspace, coeffs)
        items.append((gam, rhs))
        items.append((-gam, -rhs))
    # drop rows implied by the simplex itself (all-equal coefficients)
    cleaned = []
    for gam, rhs in items:
        if len(set(gam.values)) == 1:
            continue
        cleaned.append((gam, rhs))
    return AtomLowerPrevision(atoms, Assessment(qspace, tuple(cleaned)))
