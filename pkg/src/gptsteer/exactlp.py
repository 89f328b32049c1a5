"""Exact rational linear programming and polytope vertex enumeration.

Feasibility and optimization run a two-phase primal simplex over exact
rationals with Bland's smallest-index pivot rule, so every run
terminates and identical inputs give identical answers. Infeasible
systems always come back with a Farkas certificate that re-verifies by
substitution; feasible ones carry an exact witness point.

A ``LinearSystem`` holds equality rows (coeffs . x == rhs) and
inequality rows (coeffs . x >= rhs) over free variables. Certificates
are multiplier tuples aligned with the rows in that order (equalities
first): inequality multipliers are nonnegative, the combined coefficient
vector is zero, and the combined right-hand side is strictly positive,
i.e. the rows combine to the contradiction 0 >= positive.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .errors import UnboundedRegionError
from .ratio import ONE, ZERO, Rational, as_ratio
from .vecs import dot, qvec, solve_unique, vzero

log = logging.getLogger(__name__)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"

Row = tuple[tuple[Rational, ...], Rational]


@dataclass(frozen=True)
class LinearSystem:
    """Equalities (coeffs . x == rhs) and inequalities (coeffs . x >= rhs)."""

    variable_count: int
    equalities: tuple[Row, ...] = ()
    inequalities: tuple[Row, ...] = ()

    def __post_init__(self):
        if self.variable_count < 1:
            raise ValueError("variable_count must be positive")
        for coeffs, _ in self.equalities + self.inequalities:
            if len(coeffs) != self.variable_count:
                raise ValueError(
                    f"row length {len(coeffs)} != variable_count {self.variable_count}")

    @classmethod
    def build(cls, variable_count: int, equalities=(), inequalities=()) -> "LinearSystem":
        """Construct with coercion of all entries to exact rationals."""
        eq = tuple((qvec(c), as_ratio(b)) for c, b in equalities)
        ineq = tuple((qvec(c), as_ratio(b)) for c, b in inequalities)
        return cls(variable_count, eq, ineq)

    @property
    def row_count(self) -> int:
        return len(self.equalities) + len(self.inequalities)


@dataclass(frozen=True)
class FeasibilityResult:
    status: str  # FEASIBLE | INFEASIBLE
    witness: tuple[Rational, ...] | None = None
    certificate: tuple[Rational, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


@dataclass(frozen=True)
class OptimizationResult:
    status: str  # OPTIMAL | UNBOUNDED | INFEASIBLE
    value: Rational | None = None
    point: tuple[Rational, ...] | None = None
    certificate: tuple[Rational, ...] | None = None


def satisfies(system: LinearSystem, point) -> bool:
    """Exact substitution check of a candidate point."""
    p = qvec(point)
    if len(p) != system.variable_count:
        return False
    return all(dot(c, p) == b for c, b in system.equalities) and \
        all(dot(c, p) >= b for c, b in system.inequalities)


def refutes(system: LinearSystem, certificate) -> bool:
    """Exact substitution check of a Farkas certificate.

    Multipliers follow row order (equalities then inequalities); the
    inequality part must be nonnegative, the combined coefficient vector
    must vanish and the combined right-hand side must be positive.
    """
    mults = qvec(certificate)
    rows = system.equalities + system.inequalities
    if len(mults) != len(rows):
        return False
    n_eq = len(system.equalities)
    if any(m < 0 for m in mults[n_eq:]):
        return False
    combined = list(vzero(system.variable_count))
    total = ZERO
    for m, (coeffs, rhs) in zip(mults, rows):
        if m:
            for i, c in enumerate(coeffs):
                combined[i] += m * c
            total += m * rhs
    return all(c == 0 for c in combined) and total > 0


# ---------------------------------------------------------------------------
# Simplex core. Standard form: free variables are split x = xp - xm, every
# inequality gets a slack, rows are flipped to nonnegative rhs, and rows that
# still lack a basic column get an artificial variable for phase one.


class _Tableau:
    def __init__(self, system: LinearSystem):
        n = system.variable_count
        n_ineq = len(system.inequalities)
        self.system = system
        self.n = n
        self.struct_cols = 2 * n + n_ineq
        self.rows: list[list[Rational]] = []
        self.rhs: list[Rational] = []
        self.flip: list[Rational] = []
        self.basis: list[int] = []
        self.art_col: list[int | None] = []   # per row
        self.slack_col: list[int | None] = [] # per row
        pending_art: list[int] = []

        all_rows = [(c, b, None) for c, b in system.equalities]
        all_rows += [(c, b, i) for i, (c, b) in enumerate(system.inequalities)]
        for coeffs, b, ineq_index in all_rows:
            row = [ZERO] * self.struct_cols
            for j, c in enumerate(coeffs):
                if c:
                    row[j] = c
                    row[n + j] = -c
            slack = None
            if ineq_index is not None:
                slack = 2 * n + ineq_index
                row[slack] = -ONE
            # Flip to nonnegative rhs; flipping an inequality row turns its
            # slack coefficient to +1, making the slack a ready-made basis
            # column, so flip on b == 0 too.
            if b < 0 or (b == 0 and slack is not None):
                row = [-x for x in row]
                b = -b
                sign = -ONE
            else:
                sign = ONE
            r = len(self.rows)
            self.rows.append(row)
            self.rhs.append(b)
            self.flip.append(sign)
            self.slack_col.append(slack)
            if slack is not None and row[slack] == ONE:
                self.basis.append(slack)
                self.art_col.append(None)
            else:
                self.basis.append(-1)  # placeholder, artificial assigned below
                self.art_col.append(-1)
                pending_art.append(r)

        self.total_cols = self.struct_cols + len(pending_art)
        for k, r in enumerate(pending_art):
            col = self.struct_cols + k
            self.art_col[r] = col
            self.basis[r] = col
        for r, row in enumerate(self.rows):
            row.extend([ZERO] * (self.total_cols - self.struct_cols))
            if self.art_col[r] is not None:
                row[self.art_col[r]] = ONE

    # -- pivoting ----------------------------------------------------------

    def pivot(self, objrow: list[Rational], r: int, c: int):
        prow = self.rows[r]
        piv = prow[c]
        if piv != ONE:
            inv = ONE / piv
            self.rows[r] = prow = [x * inv for x in prow]
            self.rhs[r] *= inv
        pr_rhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    self.rows[i] = [a - f * b for a, b in zip(row, prow)]
                    self.rhs[i] -= f * pr_rhs
        f = objrow[c]
        if f:
            objrow[:] = [a - f * b for a, b in zip(objrow, prow)]
        self.basis[r] = c

    def run_bland(self, objrow: list[Rational], allowed_cols: int) -> str:
        """Minimize until no negative reduced cost; returns OPTIMAL|UNBOUNDED."""
        while True:
            enter = next((j for j in range(allowed_cols) if objrow[j] < 0), None)
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    t = self.rhs[i] / a
                    if best is None or t < best or (t == best and self.basis[i] < self.basis[leave]):
                        best = t
                        leave = i
            if leave is None:
                return UNBOUNDED
            self.pivot(objrow, leave, enter)

    # -- phases ------------------------------------------------------------

    def phase_one(self):
        """Returns (True, None) when feasible, else (False, certificate)."""
        art_rows = [r for r, col in enumerate(self.art_col) if col is not None]
        objrow = [ZERO] * self.total_cols
        for r in art_rows:
            row = self.rows[r]
            objrow = [a - b for a, b in zip(objrow, row)]
        for r in art_rows:
            objrow[self.art_col[r]] += ONE
        status = self.run_bland(objrow, self.total_cols)
        assert status == OPTIMAL, "phase one objective is bounded below by zero"
        infeasibility = ZERO
        for r in range(len(self.rows)):
            if self.basis[r] >= self.struct_cols:
                infeasibility += self.rhs[r]
        if infeasibility > 0:
            # Simplex multipliers, read off through reduced costs: the
            # artificial column of row r is the unit vector e_r with cost 1,
            # the flipped slack column is e_r with cost 0.
            mults = []
            for r in range(len(self.rows)):
                if self.art_col[r] is not None:
                    y = ONE - objrow[self.art_col[r]]
                else:
                    y = -objrow[self.slack_col[r]]
                mults.append(self.flip[r] * y)
            return False, tuple(mults)
        self._drive_out_artificials(objrow)
        return True, None

    def _drive_out_artificials(self, objrow: list[Rational]):
        drop: list[int] = []
        for r in range(len(self.rows)):
            if self.basis[r] < self.struct_cols:
                continue
            col = next((j for j in range(self.struct_cols) if self.rows[r][j] != 0), None)
            if col is None:
                drop.append(r)  # redundant row
            else:
                self.pivot(objrow, r, col)
        for r in reversed(drop):
            del self.rows[r], self.rhs[r], self.basis[r]
            del self.flip[r], self.art_col[r], self.slack_col[r]
        for row in self.rows:
            del row[self.struct_cols:]
        self.total_cols = self.struct_cols

    def phase_two(self, objective) -> tuple[str, Rational | None]:
        """Minimize objective (over original free variables) after phase one."""
        n = self.n
        cost = [ZERO] * self.struct_cols
        for j, c in enumerate(objective):
            cost[j] = c
            cost[n + j] = -c
        objrow = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                objrow = [a - cb * x for a, x in zip(objrow, row)]
        status = self.run_bland(objrow, self.struct_cols)
        if status == UNBOUNDED:
            return UNBOUNDED, None
        value = ZERO
        for r, b in enumerate(self.basis):
            if cost[b]:
                value += cost[b] * self.rhs[r]
        return OPTIMAL, value

    def extract_point(self) -> tuple[Rational, ...]:
        values = [ZERO] * self.struct_cols
        for r, b in enumerate(self.basis):
            values[b] = self.rhs[r]
        n = self.n
        return tuple(values[j] - values[n + j] for j in range(n))


def lp_feasible(system: LinearSystem) -> FeasibilityResult:
    """Decide feasibility; the result always carries its own evidence."""
    tableau = _Tableau(system)
    ok, certificate = tableau.phase_one()
    if not ok:
        assert refutes(system, certificate), "internal error: bad Farkas certificate"
        return FeasibilityResult(INFEASIBLE, certificate=certificate)
    point = tableau.extract_point()
    assert satisfies(system, point), "internal error: witness fails substitution"
    return FeasibilityResult(FEASIBLE, witness=point)


def lp_optimize(objective, system: LinearSystem, sense: str = "max") -> OptimizationResult:
    """Exact optimum of a linear objective over the system.

    sense is "max" or "min"; unbounded and infeasible outcomes are kept
    apart, and an infeasible outcome carries a Farkas certificate.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"sense must be 'max' or 'min', got {sense!r}")
    obj = qvec(objective)
    if len(obj) != system.variable_count:
        raise ValueError("objective length does not match variable count")
    tableau = _Tableau(system)
    ok, certificate = tableau.phase_one()
    if not ok:
        return OptimizationResult(INFEASIBLE, certificate=certificate)
    internal = tuple(-c for c in obj) if sense == "max" else obj
    status, value = tableau.phase_two(internal)
    if status == UNBOUNDED:
        return OptimizationResult(UNBOUNDED)
    point = tableau.extract_point()
    assert satisfies(system, point), "internal error: optimizer left the feasible set"
    if sense == "max":
        value = -value
    assert dot(obj, point) == value
    return OptimizationResult(OPTIMAL, value=value, point=point)


# ---------------------------------------------------------------------------
# Polytopes and membership.


def vertex_enumerate(system: LinearSystem) -> tuple[tuple[Rational, ...], ...]:
    """All vertices of the polytope described by the system.

    Equality rows are accepted and treated as opposing inequality pairs,
    so lower-dimensional polytopes work. Exhaustive active-set search:
    every size-n subset of constraints with a unique common solution is
    a candidate, kept when it satisfies the whole system. The region
    must be bounded (UnboundedRegionError otherwise); an empty region
    has no vertices. Output is sorted, making it deterministic.
    """
    n = system.variable_count
    halfspaces: list[Row] = list(system.inequalities)
    for coeffs, b in system.equalities:
        halfspaces.append((coeffs, b))
        halfspaces.append((tuple(-c for c in coeffs), -b))
    if not halfspaces:
        raise UnboundedRegionError("no constraints: region is all of space")
    probe_system = LinearSystem(n, (), tuple(halfspaces))
    if not lp_feasible(probe_system).feasible:
        return ()
    for axis in range(n):
        direction = [ZERO] * n
        direction[axis] = ONE
        for sense in ("max", "min"):
            if lp_optimize(direction, probe_system, sense).status == UNBOUNDED:
                raise UnboundedRegionError(f"region is unbounded along axis {axis}")
    found: set[tuple[Rational, ...]] = set()
    for subset in itertools.combinations(range(len(halfspaces)), n):
        matrix = [halfspaces[i][0] for i in subset]
        rhs = [halfspaces[i][1] for i in subset]
        point = solve_unique(matrix, rhs)
        if point is not None and all(dot(c, point) >= b for c, b in halfspaces):
            found.add(point)
    log.debug("vertex_enumerate: %d candidates -> %d vertices", len(halfspaces), len(found))
    return tuple(sorted(found))


def cone_member(point, generators) -> FeasibilityResult:
    """Nonnegative-combination membership of point in the generator cone.

    Feasible results carry the coefficients as witness; infeasible ones a
    Farkas certificate for the membership system (coordinate equalities
    first, then the coefficient nonnegativity rows).
    """
    target = qvec(point)
    gens = [qvec(g) for g in generators]
    for g in gens:
        if len(g) != len(target):
            raise ValueError("generator dimension does not match point")
    if not gens:
        if all(x == 0 for x in target):
            return FeasibilityResult(FEASIBLE, witness=())
        j = next(i for i, x in enumerate(target) if x != 0)
        cert = [ZERO] * len(target)
        cert[j] = ONE if target[j] > 0 else -ONE
        return FeasibilityResult(INFEASIBLE, certificate=tuple(cert))
    system = _membership_system(target, gens, convex=False)
    return lp_feasible(system)


def convex_member(point, vertices) -> FeasibilityResult:
    """Convex-combination membership; like cone_member plus weight sum one."""
    target = qvec(point)
    gens = [qvec(g) for g in vertices]
    if not gens:
        raise ValueError("need at least one vertex")
    for g in gens:
        if len(g) != len(target):
            raise ValueError("vertex dimension does not match point")
    system = _membership_system(target, gens, convex=True)
    return lp_feasible(system)


def _membership_system(target, gens, convex: bool) -> LinearSystem:
    k = len(gens)
    equalities = []
    for coord in range(len(target)):
        equalities.append((tuple(g[coord] for g in gens), target[coord]))
    if convex:
        equalities.append(((ONE,) * k, ONE))
    inequalities = []
    for i in range(k):
        row = [ZERO] * k
        row[i] = ONE
        inequalities.append((tuple(row), ZERO))
    return LinearSystem(k, tuple(equalities), tuple(inequalities))
