"""Exact rational linear programming over the probability simplex.

A small two-phase simplex tableau with Bland's pivoting rule, run entirely
on :class:`fractions.Fraction`.  Bland's rule guarantees termination, and
exact arithmetic makes optimality and feasibility decisions sharp, so
callers can assert equalities rather than tolerances.

On top of the raw solver sit the three operations the rest of the library
uses: minimising a linear objective over a polytope inside the simplex,
enumerating the polytope's extreme points, and minimising a ratio of two
linear functionals via the Charnes-Cooper change of variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Literal, Sequence

from .errors import CapExceededError, PositivityError
from .rationals import frac

ZERO = Fraction(0)
ONE = Fraction(1)

Relation = Literal[">=", "=="]

VERTEX_CAP = 8


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction


@dataclass(frozen=True)
class SimplexLP:
    """min/feasibility data for a polytope inside the probability simplex.

    Variables are a probability mass function p over ``n`` outcomes; the
    constraints ``p >= 0`` and ``sum(p) == 1`` are implicit.
    """

    n: int
    objective: tuple[Fraction, ...] = field(default=None)  # type: ignore[assignment]
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        obj = self.objective
        if obj is None:
            obj = (ZERO,) * self.n
        obj = tuple(frac(c) for c in obj)
        if len(obj) != self.n:
            raise ValueError("objective length differs from variable count")
        rows = []
        for c in self.constraints:
            coeffs = tuple(frac(v) for v in c.coeffs)
            if len(coeffs) != self.n:
                raise ValueError("constraint row length differs from variable count")
            if c.relation not in (">=", "=="):
                raise ValueError(f"unsupported relation {c.relation!r}")
            rows.append(Constraint(coeffs, c.relation, frac(c.rhs)))
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(rows))

    def with_objective(self, objective: Sequence) -> "SimplexLP":
        return SimplexLP(self.n, tuple(frac(c) for c in objective), self.constraints)


@dataclass(frozen=True)
class LPResult:
    status: Literal["optimal", "infeasible"]
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None


# ---------------------------------------------------------------------------
# standard-form core: min c.x  s.t.  A.x = b, x >= 0
# ---------------------------------------------------------------------------

def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            prow = tableau[row]
            tableau[i] = [v - f * w for v, w in zip(r, prow)]
    basis[row] = col


def _bland_min(tableau, basis, costs, ncols):
    """Run primal simplex to optimality on a min problem.

    ``tableau`` holds m basic rows plus nothing else; ``costs`` is the full
    cost vector.  Returns 'optimal' or 'unbounded'.  Reduced costs are
    recomputed each round; sizes here are tiny and Fractions dominate the
    cost anyway.
    """
    m = len(tableau)
    while True:
        # reduced costs: c_j - c_B . B^-1 A_j
        cb = [costs[basis[i]] for i in range(m)]
        entering = -1
        for j in range(ncols):
            red = costs[j] - sum(cb[i] * tableau[i][j] for i in range(m))
            if red < 0:
                entering = j
                break  # Bland: first negative index
        if entering < 0:
            return "optimal"
        leaving, best = -1, None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best, leaving = ratio, i
        if leaving < 0:
            return "unbounded"
        _pivot(tableau, basis, leaving, entering)


def solve_standard(a_rows, b, c):
    """Exact two-phase simplex for min c.x s.t. A.x = b, x >= 0.

    Returns (status, value, x) with status one of 'optimal', 'infeasible',
    'unbounded'.
    """
    m = len(a_rows)
    n = len(c)
    # phase 1 with one artificial per row, rhs made non-negative
    tableau = []
    for i in range(m):
        row = list(a_rows[i]) + [ZERO] * m + [b[i]]
        if b[i] < 0:
            row = [-v for v in row]
        row[n + i] = ONE
        tableau.append(row)
    basis = [n + i for i in range(m)]
    phase1_costs = [ZERO] * n + [ONE] * m
    _bland_min(tableau, basis, phase1_costs, n + m)
    infeas = sum(tableau[i][-1] for i in range(m) if basis[i] >= n)
    if infeas != 0:
        return "infeasible", None, None
    # drive leftover artificials out of the basis (degenerate at 0)
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)
    # drop redundant rows still pinned to an artificial
    keep = [i for i in range(m) if basis[i] < n]
    tableau = [tableau[i][:n] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    status = _bland_min(tableau, basis, list(c), n)
    if status == "unbounded":
        return "unbounded", None, None
    x = [ZERO] * n
    for i, bi in enumerate(basis):
        x[bi] = tableau[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return "optimal", value, tuple(x)


# ---------------------------------------------------------------------------
# simplex-polytope layer
# ---------------------------------------------------------------------------

def _standard_form(lp: SimplexLP, objective):
    """Rewrite a SimplexLP as (A, b, c) in equality standard form.

    Slack variables are appended for the >= rows; the simplex equation
    sum(p) == 1 is the first row.
    """
    n = lp.n
    ges = [c for c in lp.constraints if c.relation == ">="]
    eqs = [c for c in lp.constraints if c.relation == "=="]
    nvars = n + len(ges)
    rows, rhs = [], []
    rows.append([ONE] * n + [ZERO] * len(ges))
    rhs.append(ONE)
    for c in eqs:
        rows.append(list(c.coeffs) + [ZERO] * len(ges))
        rhs.append(c.rhs)
    for k, c in enumerate(ges):
        row = list(c.coeffs) + [ZERO] * len(ges)
        row[n + k] = -ONE
        rows.append(row)
        rhs.append(c.rhs)
    cost = list(objective) + [ZERO] * len(ges)
    return rows, rhs, cost, nvars


def solve_min(lp: SimplexLP) -> LPResult:
    """Exact minimum of the objective over the feasible polytope."""
    rows, rhs, cost, _ = _standard_form(lp, lp.objective)
    status, value, x = solve_standard(rows, rhs, cost)
    if status == "infeasible":
        return LPResult("infeasible")
    if status == "unbounded":  # impossible: the simplex is bounded
        raise AssertionError("bounded LP reported unbounded")
    return LPResult("optimal", value, tuple(x[: lp.n]))


def feasible(lp: SimplexLP) -> bool:
    return solve_min(SimplexLP(lp.n, None, lp.constraints)).status == "optimal"


def satisfies(lp: SimplexLP, point: Sequence[Fraction]) -> bool:
    """Exact membership of a probability point in the feasible polytope."""
    p = [frac(v) for v in point]
    if len(p) != lp.n or any(v < 0 for v in p) or sum(p) != 1:
        return False
    for c in lp.constraints:
        lhs = sum(a * v for a, v in zip(c.coeffs, p))
        if c.relation == ">=" and lhs < c.rhs:
            return False
        if c.relation == "==" and lhs != c.rhs:
            return False
    return True


# --- exact linear algebra helpers -----------------------------------------

def _gauss_solve(matrix, rhs):
    """Solve a square system exactly; None when singular."""
    n = len(matrix)
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pivval = aug[col][col]
        aug[col] = [v / pivval for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][-1] for r in range(n)]


def _row_reduce(rows):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivval = rows[r][col]
        rows[r] = [v / pivval for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _solve_affine(eq_rows, eq_rhs, n):
    """Particular solution and nullspace basis of E.x = e.

    Returns (x0, basis) or None when inconsistent; basis is a list of
    n-vectors spanning the solution space's direction.
    """
    aug = [list(row) + [r] for row, r in zip(eq_rows, eq_rhs)]
    rref, pivots = _row_reduce(aug) if aug else ([], [])
    if n in pivots:  # pivot in the rhs column: inconsistent
        return None
    pivots = [p for p in pivots if p < n]
    free = [j for j in range(n) if j not in pivots]
    x0 = [ZERO] * n
    for row, p in zip(rref, pivots):
        x0[p] = row[-1]
    basis = []
    for j in free:
        vec = [ZERO] * n
        vec[j] = ONE
        for row, p in zip(rref, pivots):
            vec[p] = -row[j]
        basis.append(vec)
    return x0, basis


def _primitive(coeffs):
    """Scale a rational row by a positive factor to coprime integers."""
    denom_lcm = 1
    for v in coeffs:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints)


def enumerate_vertices(lp: SimplexLP, cap: int = VERTEX_CAP) -> frozenset:
    """All extreme points of the feasible polytope, exactly.

    Works by reducing modulo the equality constraints (including the
    simplex equation) and enumerating simultaneous-activity bases of the
    remaining inequalities.  Intended as a brute-force oracle at desk
    scale; ``cap`` bounds the ambient dimension.
    """
    n = lp.n
    if n > cap:
        raise CapExceededError(f"vertex enumeration capped at {cap} variables, got {n}")
    eq_rows = [[ONE] * n]
    eq_rhs = [ONE]
    ineq_rows, ineq_rhs = [], []
    for c in lp.constraints:
        if c.relation == "==":
            eq_rows.append(list(c.coeffs))
            eq_rhs.append(c.rhs)
        else:
            ineq_rows.append(list(c.coeffs))
            ineq_rhs.append(c.rhs)
    for i in range(n):  # p_i >= 0
        row = [ZERO] * n
        row[i] = ONE
        ineq_rows.append(row)
        ineq_rhs.append(ZERO)

    solved = _solve_affine(eq_rows, eq_rhs, n)
    if solved is None:
        return frozenset()
    x0, basis = solved
    d = len(basis)

    # inequalities in reduced coordinates y: G.(x0 + B.y) >= h
    red_rows, red_rhs = [], []
    for row, h in zip(ineq_rows, ineq_rhs):
        const = sum(a * b for a, b in zip(row, x0))
        coeffs = tuple(sum(row[i] * basis[k][i] for i in range(n)) for k in range(d))
        rhs_red = h - const
        if all(v == 0 for v in coeffs):
            if rhs_red > 0:
                return frozenset()
            continue
        red_rows.append(coeffs)
        red_rhs.append(rhs_red)

    # dedupe rows equal up to positive scale, keeping the tightest rhs
    seen: dict[tuple, tuple] = {}
    for coeffs, h in zip(red_rows, red_rhs):
        key = _primitive(coeffs)
        scale = next(c / k for c, k in zip(coeffs, key) if k != 0)
        h_norm = h / scale
        if key not in seen or h_norm > seen[key][1]:
            seen[key] = (key, h_norm)
    rows = list(seen.values())

    if d == 0:
        point = tuple(x0)
        return frozenset([point]) if satisfies(lp, point) else frozenset()

    vertices = set()
    for combo in itertools.combinations(range(len(rows)), d):
        system = [rows[i][0] for i in combo]
        rhs = [rows[i][1] for i in combo]
        y = _gauss_solve(system, rhs)
        if y is None:
            continue
        if any(
            sum(a * yv for a, yv in zip(coeffs, y)) < h for coeffs, h in rows
        ):
            continue
        point = tuple(
            x0[i] + sum(basis[k][i] * y[k] for k in range(d)) for i in range(n)
        )
        vertices.add(point)
    return frozenset(vertices)


def solve_fractional_min(numerator, denominator, lp: SimplexLP) -> LPResult:
    """Exact infimum of (num.p)/(den.p) over the feasible polytope.

    Uses the Charnes-Cooper substitution y = p/(den.p), t = 1/(den.p),
    which keeps everything linear and exact.  The caller must guarantee
    den.p > 0 on the feasible set; violations are reported as
    :class:`PositivityError`.
    """
    num = [frac(v) for v in numerator]
    den = [frac(v) for v in denominator]
    if len(num) != lp.n or len(den) != lp.n:
        raise ValueError("objective vectors must match the variable count")
    check = solve_min(lp.with_objective(den))
    if check.status == "infeasible":
        return LPResult("infeasible")
    if check.value <= 0:
        raise PositivityError(
            f"denominator reaches {check.value} on the feasible set"
        )
    # variables (y_0..y_{n-1}, t, slacks): rows in equality form
    n = lp.n
    ges = [c for c in lp.constraints if c.relation == ">="]
    eqs = [c for c in lp.constraints if c.relation == "=="]
    nvars = n + 1 + len(ges)
    rows, rhs = [], []

    def fresh_row():
        return [ZERO] * nvars

    row = fresh_row()  # sum(y) - t = 0
    for i in range(n):
        row[i] = ONE
    row[n] = -ONE
    rows.append(row)
    rhs.append(ZERO)
    row = fresh_row()  # den.y = 1
    for i in range(n):
        row[i] = den[i]
    rows.append(row)
    rhs.append(ONE)
    for c in eqs:
        row = fresh_row()
        for i in range(n):
            row[i] = c.coeffs[i]
        row[n] = -c.rhs
        rows.append(row)
        rhs.append(ZERO)
    for k, c in enumerate(ges):
        row = fresh_row()
        for i in range(n):
            row[i] = c.coeffs[i]
        row[n] = -c.rhs
        row[n + 1 + k] = -ONE
        rows.append(row)
        rhs.append(ZERO)
    cost = list(num) + [ZERO] * (1 + len(ges))
    status, value, x = solve_standard(rows, rhs, cost)
    if status != "optimal":
        raise AssertionError(f"Charnes-Cooper program reported {status}")
    t = x[n]
    witness = tuple(x[i] / t for i in range(n))
    return LPResult("optimal", value, witness)


# ---------------------------------------------------------------------------
# polytope geometry from a vertex list (used by quotient extraction)
# ---------------------------------------------------------------------------

def extreme_points(points) -> list:
    """Filter a finite point set down to the extreme points of its hull."""
    pts = [tuple(frac(v) for v in p) for p in points]
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        # p extreme iff p is not a convex combination of the others
        n = len(p)
        rows = [[frac(q[k]) for q in others] for k in range(n)]
        rows.append([ONE] * len(others))
        rhs = list(p) + [ONE]
        status, _, _ = solve_standard(rows, rhs, [ZERO] * len(others))
        if status == "infeasible":
            out.append(p)
    return out


def polytope_inequalities(points):
    """H-representation of the convex hull of finitely many points.

    Returns (equalities, inequalities), each a list of (coeffs, rhs)
    meaning coeffs.x == rhs respectively coeffs.x >= rhs.  Equalities cut
    out the affine hull; inequalities are the facets within it.
    """
    pts = [tuple(frac(v) for v in p) for p in points]
    pts = sorted(set(pts))
    if not pts:
        raise ValueError("need at least one point")
    n = len(pts[0])
    x0 = pts[0]
    diffs = [[p[i] - x0[i] for i in range(n)] for p in pts[1:]]
    rref, pivots = _row_reduce(diffs) if diffs else ([], [])
    basis = rref  # orthonormality is irrelevant; rref rows span the hull
    d = len(basis)

    # affine-hull equalities: for each non-pivot coordinate j, x_j is an
    # affine function of the pivot coordinates
    equalities = []
    free = [j for j in range(n) if j not in pivots]
    for j in free:
        coeffs = [ZERO] * n
        coeffs[j] = ONE
        for row, p in zip(basis, pivots):
            coeffs[p] = -row[j]
        rhs = sum(c * v for c, v in zip(coeffs, x0))
        equalities.append((tuple(coeffs), rhs))

    if d == 0:
        return equalities, []

    # coordinates of each point in the hull basis: y such that y.B = p - x0,
    # read off at the pivot columns since B is in rref
    coords = []
    for p in pts:
        coords.append(tuple(p[piv] - x0[piv] for piv in pivots))

    inequalities = []
    seen = set()
    for combo in itertools.combinations(range(len(coords)), d):
        # hyperplane through d points in d-space: normal a with a.y = c
        mat = [
            [coords[combo[k]][j] - coords[combo[0]][j] for j in range(d)]
            for k in range(1, d)
        ]
        rrefm, pivs = _row_reduce(mat) if mat else ([], [])
        if len(pivs) != d - 1:
            continue  # degenerate choice
        freej = next(j for j in range(d) if j not in pivs)
        normal = [ZERO] * d
        normal[freej] = ONE
        for row, p in zip(rrefm, pivs):
            normal[p] = -row[freej]
        c0 = sum(a * y for a, y in zip(normal, coords[combo[0]]))
        sides = [sum(a * y for a, y in zip(normal, q)) - c0 for q in coords]
        if all(s >= 0 for s in sides):
            pass
        elif all(s <= 0 for s in sides):
            normal = [-a for a in normal]
            c0 = -c0
        else:
            continue
        key = _primitive(tuple(normal) + (c0,))
        if key in seen:
            continue
        seen.add(key)
        # back to ambient coordinates: y_j = x_{pivot_j} - x0_{pivot_j}
        coeffs = [ZERO] * n
        for j, piv in enumerate(pivots):
            coeffs[piv] += normal[j]
        rhs = c0 + sum(normal[j] * x0[pivots[j]] for j in range(d))
        inequalities.append((tuple(coeffs), rhs))
    return equalities, inequalities
