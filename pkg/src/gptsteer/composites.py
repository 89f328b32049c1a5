"""Bipartite states under local tomography.

A bipartite state is the rational matrix of a bilinear form on effect
pairs: value(e_A, e_B) = e_A^T M e_B, with M[0][0] = 1 when normalized.
Membership in the maximal tensor product is nonnegativity on all
extremal effect pairs; separability (the minimal tensor product) asks
for a convex combination of vertex pairs and is a rational LP whose
infeasibility certificate doubles as an entanglement witness. Marginals
contract with the partner's unit effect and conditionals with an
arbitrary effect, exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .errors import NullConditioningError, UnsupportedModelError
from .exactlp import INFEASIBLE, LinearSystem, lp_feasible, refutes
from .kernel import (Effect, State, StateSpace, barycenter, extremal_effects,
                     is_square_model, is_valid_state)
from .ratio import ONE, ZERO, Rational, as_ratio
from .vecs import (dot, invert, matrix_times_col, outer, qmat, qvec,
                   row_times_matrix, transpose, vadd, vscale, vzero)

log = logging.getLogger(__name__)

SEPARABLE = "separable"
ENTANGLED = "entangled"


@dataclass(frozen=True)
class BipartiteState:
    """Bilinear form matrix over effect coefficient pairs of two spaces.

    Normalization (matrix[0][0] == 1) and maximal-tensor membership are
    checked properties, not construction invariants, so that the
    checking functions have something to reject.
    """

    space_a: StateSpace
    space_b: StateSpace
    matrix: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", qmat(self.matrix))
        if len(self.matrix) != self.space_a.ambient_dim:
            raise ValueError("matrix row count does not match first space")
        for row in self.matrix:
            if len(row) != self.space_b.ambient_dim:
                raise ValueError("matrix column count does not match second space")

    @property
    def is_normalized(self) -> bool:
        return self.matrix[0][0] == 1


def joint_probability(state: BipartiteState, effect_a: Effect, effect_b: Effect) -> Rational:
    """value(e_A, e_B) = e_A^T M e_B, exactly."""
    ea = effect_a.coeffs if isinstance(effect_a, Effect) else qvec(effect_a)
    eb = effect_b.coeffs if isinstance(effect_b, Effect) else qvec(effect_b)
    return dot(row_times_matrix(ea, state.matrix), eb)


def product_state(space_a: StateSpace, state_a: State,
                  space_b: StateSpace, state_b: State) -> BipartiteState:
    """Outer product of two valid normalized states."""
    for state, space, side in ((state_a, space_a, "A"), (state_b, space_b, "B")):
        if state.coords[0] != 1 or not is_valid_state(state, space):
            raise ValueError(f"side {side} factor is not a valid normalized state")
    return BipartiteState(space_a, space_b, outer(state_a.coords, state_b.coords))


def mix_bipartite_states(states: Sequence[BipartiteState], weights) -> BipartiteState:
    w = qvec(weights)
    if len(w) != len(states) or not states:
        raise ValueError("weights and states differ in length")
    if any(x < 0 for x in w) or sum(w) != 1:
        raise ValueError("weights must be nonnegative and sum to one")
    first = states[0]
    for s in states[1:]:
        if s.space_a != first.space_a or s.space_b != first.space_b:
            raise ValueError("mixing requires a common pair of spaces")
    rows = []
    for i in range(first.space_a.ambient_dim):
        row = vzero(first.space_b.ambient_dim)
        for weight, s in zip(w, states):
            row = vadd(row, vscale(weight, s.matrix[i]))
        rows.append(row)
    return BipartiteState(first.space_a, first.space_b, tuple(rows))


def in_max_tensor(state: BipartiteState) -> bool:
    """Normalized and nonnegative on every pair of extremal effects.

    Nonnegativity on the extreme points of both effect polytopes extends
    to all valid effect pairs by bilinearity and convexity.
    """
    if not state.is_normalized:
        return False
    for ea in extremal_effects(state.space_a):
        partial = row_times_matrix(ea.coeffs, state.matrix)
        for eb in extremal_effects(state.space_b):
            if dot(partial, eb.coeffs) < 0:
                return False
    return True


def max_tensor_violation(state: BipartiteState) -> tuple[Effect, Effect] | None:
    """A witnessing extremal effect pair with negative value, if any."""
    if not state.is_normalized:
        return None
    for ea in extremal_effects(state.space_a):
        partial = row_times_matrix(ea.coeffs, state.matrix)
        for eb in extremal_effects(state.space_b):
            if dot(partial, eb.coeffs) < 0:
                return (ea, eb)
    return None


@dataclass(frozen=True)
class SeparableDecomposition:
    """Convex combination of vertex product states reproducing a matrix."""

    weights: tuple[Rational, ...]
    pairs: tuple[tuple[State, State], ...]


@dataclass(frozen=True)
class SeparabilityResult:
    status: str  # SEPARABLE | ENTANGLED
    decomposition: SeparableDecomposition | None = None
    certificate: tuple[Rational, ...] | None = None

    @property
    def separable(self) -> bool:
        return self.status == SEPARABLE


def separability_system(state: BipartiteState) -> LinearSystem:
    """LP over vertex-pair weights, row order documented for certificates.

    Variables: one weight per (vertex_A, vertex_B) pair, A-major.
    Equalities: matrix entries row-major, then the weight sum. All
    weight nonnegativity rows follow as inequalities.
    """
    va, vb = state.space_a.vertices, state.space_b.vertices
    nvars = len(va) * len(vb)
    equalities = []
    for i in range(state.space_a.ambient_dim):
        for j in range(state.space_b.ambient_dim):
            row = tuple(va[p][i] * vb[q][j] for p in range(len(va)) for q in range(len(vb)))
            equalities.append((row, state.matrix[i][j]))
    equalities.append(((ONE,) * nvars, ONE))
    inequalities = []
    for k in range(nvars):
        row = [ZERO] * nvars
        row[k] = ONE
        inequalities.append((tuple(row), ZERO))
    return LinearSystem(nvars, tuple(equalities), tuple(inequalities))


def is_separable(state: BipartiteState) -> SeparabilityResult:
    """Decide membership in the minimal tensor product.

    Requires the state to sit in the maximal tensor product first (a
    ValueError otherwise). Separable verdicts carry an exact
    decomposition into vertex pairs; entangled verdicts a Farkas
    certificate that acts as an entanglement witness.
    """
    if not in_max_tensor(state):
        raise ValueError("state is not in the maximal tensor product")
    system = separability_system(state)
    outcome = lp_feasible(system)
    if outcome.status == INFEASIBLE:
        return SeparabilityResult(ENTANGLED, certificate=outcome.certificate)
    va, vb = state.space_a.vertices, state.space_b.vertices
    weights = []
    pairs = []
    for p in range(len(va)):
        for q in range(len(vb)):
            w = outcome.witness[p * len(vb) + q]
            if w != 0:
                weights.append(w)
                pairs.append((State(va[p]), State(vb[q])))
    decomposition = SeparableDecomposition(tuple(weights), tuple(pairs))
    _check_decomposition(state, decomposition)
    return SeparabilityResult(SEPARABLE, decomposition=decomposition)


def _check_decomposition(state: BipartiteState, decomposition: SeparableDecomposition):
    total = [vzero(state.space_b.ambient_dim) for _ in range(state.space_a.ambient_dim)]
    for w, (sa, sb) in zip(decomposition.weights, decomposition.pairs):
        block = outer(sa.coords, sb.coords)
        for i in range(len(total)):
            total[i] = vadd(total[i], vscale(w, block[i]))
    assert tuple(total) == state.matrix, "internal error: decomposition does not reproduce state"


def verify_entanglement_certificate(state: BipartiteState, certificate) -> bool:
    return refutes(separability_system(state), certificate)


def marginal(state: BipartiteState, side: str) -> State:
    """Contract one side with the partner's unit effect.

    With coordinate 0 carrying normalization this is the first column
    (side A) or first row (side B) of the matrix.
    """
    if not state.is_normalized:
        raise ValueError("marginals are defined for normalized states")
    if side == "A":
        return State(tuple(row[0] for row in state.matrix))
    if side == "B":
        return State(state.matrix[0])
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def subnormalized_conditional(state: BipartiteState, effect: Effect,
                              side: str) -> tuple[Rational, ...]:
    """Apply an effect on one side; the unnormalized update of the other.

    The first coordinate of the result is the outcome probability, so no
    division happens here and zero-probability effects are fine.
    """
    coeffs = effect.coeffs if isinstance(effect, Effect) else qvec(effect)
    if side == "A":
        if len(coeffs) != state.space_a.ambient_dim:
            raise ValueError("effect dimension does not match side A")
        return row_times_matrix(coeffs, state.matrix)
    if side == "B":
        if len(coeffs) != state.space_b.ambient_dim:
            raise ValueError("effect dimension does not match side B")
        return matrix_times_col(state.matrix, coeffs)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def conditional_state(state: BipartiteState, effect: Effect,
                      side: str) -> tuple[Rational, State]:
    """Outcome probability and the normalized conditional on the other side.

    Requires a maximal-tensor-product state so the conditional is again
    a state; conditioning on a zero-probability effect raises
    NullConditioningError (use subnormalized_conditional to avoid the
    division).
    """
    if not in_max_tensor(state):
        raise ValueError("state is not in the maximal tensor product")
    vec = subnormalized_conditional(state, effect, side)
    p = vec[0]
    if p == 0:
        raise NullConditioningError("conditioning effect has probability zero")
    return p, State(vscale(ONE / p, vec))


def effect_to_state_isomorphism(space: StateSpace) -> tuple[tuple[Rational, ...], ...]:
    """Linear map J sending the effect cone onto the state cone, unit to
    the barycenter.

    Supported spaces: simplices (vertex count equals ambient dimension),
    where the indicator effect of each vertex maps to that vertex over
    the vertex count, and the square, where coordinate 0 is fixed and
    (b, c) maps to (b - c, b + c). Anything else raises
    UnsupportedModelError.
    """
    if is_square_model(space):
        return qmat(((1, 0, 0), (0, 1, -1), (0, 1, 1)))
    if len(space.vertices) == space.ambient_dim:
        # J = V V^T / n with vertices as the columns of V, so the
        # indicator effect of vertex k maps to vertex_k / n.
        n = as_ratio(len(space.vertices))
        j_matrix = tuple(
            tuple(sum((v[i] * v[j] for v in space.vertices), ZERO) / n
                  for j in range(space.ambient_dim))
            for i in range(space.ambient_dim))
        if invert(j_matrix) is None:
            raise UnsupportedModelError("degenerate simplex embedding")
        return j_matrix
    raise UnsupportedModelError(
        f"no canonical effect-to-state isomorphism for {space.label!r}")


def canonical_max_entangled(space: StateSpace) -> BipartiteState:
    """The maximally entangled state of a space paired with itself.

    Built from the effect-to-state isomorphism J via
    value(e_A, e_B) = e_B(J(e_A)); by construction it sits in the
    maximal tensor product, both marginals are the maximally mixed
    state, and conditioning on an extremal-ray effect of side A steers
    side B onto the matching vertex ray.
    """
    j_matrix = effect_to_state_isomorphism(space)
    state = BipartiteState(space, space, transpose(j_matrix))
    assert state.is_normalized
    assert in_max_tensor(state), "internal error: canonical state left the maximal cone"
    center = barycenter(space).coords
    assert marginal(state, "A").coords == center
    assert marginal(state, "B").coords == center
    return state
