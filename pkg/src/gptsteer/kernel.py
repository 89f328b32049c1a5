"""Single-system objects: polytopic state spaces, states, effects,
observables, the model zoo and depolarizing noise.

Coordinate convention. A system whose state polytope has dimension d
lives in ambient dimension d+1; coordinate 0 carries normalization.
Every vertex has first coordinate exactly 1, the unit effect is
(1, 0, ..., 0), and an outcome probability is the plain dot product of
an effect coefficient vector with a state coordinate vector. Effects
are valid when they evaluate inside [0, 1] on every vertex, which by
convexity covers every state.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactlp import LinearSystem, cone_member, convex_member, vertex_enumerate
from .ratio import ONE, ZERO, Rational, as_ratio, format_ratio
from .vecs import affine_rank, dot, qvec, vadd, vscale, vzero


@dataclass(frozen=True)
class State:
    """State coordinates; sub-normalized states have coords[0] in [0, 1]."""

    coords: tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", qvec(self.coords))

    @property
    def weight(self) -> Rational:
        return self.coords[0]


@dataclass(frozen=True)
class Effect:
    """Affine functional given by its coefficient vector."""

    coeffs: tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", qvec(self.coeffs))

    def __add__(self, other: "Effect") -> "Effect":
        return Effect(vadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Effect") -> "Effect":
        return Effect(tuple(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __rmul__(self, factor) -> "Effect":
        return Effect(vscale(factor, self.coeffs))


def unit_effect(ambient_dim: int) -> Effect:
    return Effect((ONE,) + vzero(ambient_dim - 1))


def zero_effect(ambient_dim: int) -> Effect:
    return Effect(vzero(ambient_dim))


@dataclass(frozen=True)
class StateSpace:
    """Polytopic state space given by its extreme points.

    Construction validates the coordinate convention (first coordinate 1
    everywhere), that the vertices affinely span the normalization slice
    (so effect coefficient vectors are uniquely determined by their
    values on states), and that no listed vertex is a convex combination
    of the others.
    """

    label: str
    ambient_dim: int
    vertices: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(qvec(v) for v in self.vertices))
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")
        if not self.vertices:
            raise ValueError("a state space needs at least one vertex")
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise ValueError(f"vertex {v} does not have length {self.ambient_dim}")
            if v[0] != 1:
                raise ValueError(f"vertex {v} must have first coordinate 1")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")
        if affine_rank(self.vertices) != self.ambient_dim - 1:
            raise ValueError("vertices do not affinely span the normalization slice")
        for i, v in enumerate(self.vertices):
            others = self.vertices[:i] + self.vertices[i + 1:]
            if others and convex_member(v, others).feasible:
                raise ValueError(f"vertex {v} is a convex combination of the others")

    @property
    def unit(self) -> Effect:
        return unit_effect(self.ambient_dim)


def barycenter(space: StateSpace) -> State:
    """The maximally mixed state: uniform mixture of the vertices."""
    total = vzero(space.ambient_dim)
    for v in space.vertices:
        total = vadd(total, v)
    return State(vscale(as_ratio(1, len(space.vertices)), total))


def probability(effect: Effect, state: State) -> Rational:
    """Exact outcome probability; effect and state must share a space."""
    coeffs = effect.coeffs if isinstance(effect, Effect) else qvec(effect)
    coords = state.coords if isinstance(state, State) else qvec(state)
    if len(coeffs) != len(coords):
        raise ValueError("effect and state dimensions differ")
    return dot(coeffs, coords)


def _coeffs(effect) -> tuple[Rational, ...]:
    return effect.coeffs if isinstance(effect, Effect) else qvec(effect)


def _coords(state) -> tuple[Rational, ...]:
    return state.coords if isinstance(state, State) else qvec(state)


def is_valid_effect(effect, space: StateSpace) -> bool:
    """True iff the functional lies in [0, 1] on every vertex."""
    coeffs = _coeffs(effect)
    if len(coeffs) != space.ambient_dim:
        raise ValueError("effect dimension does not match space")
    return all(0 <= dot(coeffs, v) <= 1 for v in space.vertices)


def is_valid_state(state, space: StateSpace) -> bool:
    """True iff the coordinates are a convex combination of the vertices.

    Decided by exact LP membership; the equivalent facet test is
    ``in_state_cone`` plus first coordinate 1.
    """
    coords = _coords(state)
    if len(coords) != space.ambient_dim:
        raise ValueError("state dimension does not match space")
    return convex_member(coords, space.vertices).feasible


@lru_cache(maxsize=None)
def extremal_effects(space: StateSpace) -> tuple[Effect, ...]:
    """Extreme points of the effect polytope, in sorted coefficient order.

    The effect polytope is cut out by 0 <= e(v) <= 1 over the vertices;
    its extreme points are enumerated exactly and cached per space.
    """
    inequalities = []
    for v in space.vertices:
        inequalities.append((v, ZERO))
        inequalities.append((tuple(-c for c in v), -ONE))
    system = LinearSystem(space.ambient_dim, (), tuple(inequalities))
    return tuple(Effect(point) for point in vertex_enumerate(system))


@lru_cache(maxsize=None)
def state_cone_facets(space: StateSpace) -> tuple[tuple[Rational, ...], ...]:
    """Generators of the extreme rays of the effect cone.

    These are exactly the facet functionals of the state cone, so
    membership of a vector in the cone over the vertices is equivalent
    to nonnegative dot products with all of them (used as the fast path
    for sub-normalized state checks).
    """
    candidates = [e.coeffs for e in extremal_effects(space) if any(c != 0 for c in e.coeffs)]
    rays = []
    for i, cand in enumerate(candidates):
        others = candidates[:i] + candidates[i + 1:]
        if not cone_member(cand, others).feasible:
            rays.append(cand)
    return tuple(rays)


def in_state_cone(coords, space: StateSpace) -> bool:
    vec = _coords(coords)
    if len(vec) != space.ambient_dim:
        raise ValueError("vector dimension does not match space")
    return all(dot(f, vec) >= 0 for f in state_cone_facets(space))


@dataclass(frozen=True)
class Observable:
    """Finite-outcome measurement: labeled effects that sum to the unit."""

    label: str
    space: StateSpace
    outcomes: tuple[str, ...]
    effects: tuple[Effect, ...]

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(str(o) for o in self.outcomes))
        object.__setattr__(self, "effects",
                           tuple(e if isinstance(e, Effect) else Effect(e) for e in self.effects))
        if not self.outcomes:
            raise ValueError("observable needs at least one outcome")
        if len(self.outcomes) != len(self.effects):
            raise ValueError("outcomes and effects differ in length")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise ValueError("duplicate outcome labels")
        for e in self.effects:
            if len(e.coeffs) != self.space.ambient_dim:
                raise ValueError("effect dimension does not match space")

    def effect(self, outcome: str) -> Effect:
        return self.effects[self.outcomes.index(outcome)]

    def items(self):
        return zip(self.outcomes, self.effects)


def is_valid_observable(obs: Observable) -> bool:
    """Every effect valid and the exact sum equal to the unit effect."""
    total = vzero(obs.space.ambient_dim)
    for e in obs.effects:
        if not is_valid_effect(e, obs.space):
            return False
        total = vadd(total, e.coeffs)
    return total == obs.space.unit.coeffs


def mix_states(states: Sequence[State], weights) -> State:
    return State(_mix([_coords(s) for s in states], weights))


def mix_effects(effects: Sequence[Effect], weights) -> Effect:
    return Effect(_mix([_coeffs(e) for e in effects], weights))


def _mix(vectors, weights) -> tuple[Rational, ...]:
    w = qvec(weights)
    if len(w) != len(vectors) or not vectors:
        raise ValueError("weights and vectors differ in length")
    if any(x < 0 for x in w) or sum(w) != 1:
        raise ValueError("weights must be nonnegative and sum to one")
    total = vzero(len(vectors[0]))
    for weight, vec in zip(w, vectors):
        total = vadd(total, vscale(weight, vec))
    return total


def depolarize_observable(obs: Observable, visibility) -> Observable:
    """Shrink each effect toward its barycenter value times the unit.

    At visibility 1 the observable is unchanged; at 0 every effect is
    replaced by its mean value on the maximally mixed state times the
    unit, i.e. pure noise.
    """
    level = as_ratio(visibility)
    if not 0 <= level <= 1:
        raise ValueError(f"visibility must lie in [0, 1], got {level}")
    center = barycenter(obs.space)
    unit = obs.space.unit
    noisy = tuple(level * e + ((1 - level) * probability(e, center)) * unit
                  for e in obs.effects)
    label = f"depol({obs.label},{format_ratio(level)})"
    return Observable(label, obs.space, obs.outcomes, noisy)


def dichotomic_observable(label: str, space: StateSpace, effect: Effect,
                          outcomes: tuple[str, str] = ("+", "-")) -> Observable:
    """Two-outcome observable from one effect and its complement."""
    e = effect if isinstance(effect, Effect) else Effect(effect)
    if not is_valid_effect(e, space):
        raise ValueError("effect is not valid on this space")
    return Observable(label, space, outcomes, (e, space.unit - e))


def trivial_observable(space: StateSpace) -> Observable:
    return Observable("trivial", space, ("*",), (space.unit,))


# ---------------------------------------------------------------------------
# Model zoo.


def zoo_classical(n: int) -> StateSpace:
    """Classical n-outcome system: an (n-1)-simplex in ambient dimension n.

    Vertex i is the point distribution on outcome i; the last outcome's
    probability is implicit (one minus the rest), which keeps the
    polytope full-dimensional in its slice.
    """
    if n < 2:
        raise ValueError("classical systems need at least 2 outcomes")
    vertices = []
    for i in range(n):
        coords = [ONE] + [ZERO] * (n - 1)
        if i > 0:
            coords[i] = ONE
        vertices.append(tuple(coords))
    return StateSpace(f"classical-{n}", n, tuple(vertices))


_SQUARE_VERTICES = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1))


def zoo_gbit() -> StateSpace:
    """The square model: four vertices (1, ±1, ±1) in ambient dimension 3."""
    return StateSpace("gbit", 3, _SQUARE_VERTICES)


def is_square_model(space: StateSpace) -> bool:
    return space.ambient_dim == 3 and set(space.vertices) == {qvec(v) for v in _SQUARE_VERTICES}


def zoo_polygon(n: int) -> StateSpace:
    """Regular-polygon-like model with n rational vertices on the unit circle.

    n = 4 is exactly the square; n = 3 a fixed rational triangle (an
    equilateral one has no rational embedding, and every triangle is
    equivalent to the classical trit). Other n use the tangent
    half-angle parameterization to round each textbook angle to a
    nearby rational circle point; floats only pick the vertex here,
    everything downstream is exact. The result is a valid polytopic
    model even though it is not the perfectly regular polygon.
    """
    if n < 3:
        raise ValueError("polygons need at least 3 vertices")
    if n == 3:
        vertices = ((ONE, ONE, ZERO), (ONE, -ONE, ONE), (ONE, -ONE, -ONE))
    elif n == 4:
        vertices = tuple(qvec(v) for v in _SQUARE_VERTICES)
    else:
        vertices = _rational_circle_points(n)
    return StateSpace(f"polygon-{n}", 3, vertices)


def _rational_circle_points(n: int) -> tuple[tuple[Rational, ...], ...]:
    denominator = 64
    while True:
        points = []
        for k in range(n):
            if 2 * k == n:
                points.append((ONE, -ONE, ZERO))
                continue
            angle = 2 * math.pi * k / n
            if angle > math.pi:
                angle -= 2 * math.pi
            t = as_ratio(round(math.tan(angle / 2) * denominator), denominator)
            d = 1 + t * t
            points.append((ONE, (1 - t * t) / d, 2 * t / d))
        if len(set(points)) == n:
            return tuple(points)
        denominator *= 2  # collision at small n never happens in practice


def square_fiducials(space: StateSpace) -> tuple[Observable, Observable]:
    """The two sharp dichotomic observables reading off the square's axes.

    X distinguishes the vertices by their second coordinate, Y by their
    third; each is sharp (extremal effects) and together they are the
    canonical incompatible pair of this model.
    """
    if not is_square_model(space):
        raise ValueError("sharp fiducials are defined for the square model")
    half = as_ratio(1, 2)
    x_plus = Effect((half, half, ZERO))
    y_plus = Effect((half, ZERO, half))
    return (dichotomic_observable("X", space, x_plus),
            dichotomic_observable("Y", space, y_plus))


def zoo_by_name(name: str) -> StateSpace:
    """Resolve a zoo model name: gbit, classical-N (N>=2), polygon-N (N>=3)."""
    if name == "gbit":
        return zoo_gbit()
    for prefix, builder, minimum in (("classical-", zoo_classical, 2),
                                     ("polygon-", zoo_polygon, 3)):
        if name.startswith(prefix):
            suffix = name[len(prefix):]
            if suffix.isdigit() and int(suffix) >= minimum:
                return builder(int(suffix))
    raise ValueError(f"unknown model {name!r} "
                     "(expected gbit, classical-N with N>=2, or polygon-N with N>=3)")


def zoo_names() -> tuple[str, ...]:
    """Representative concrete names; classical-N and polygon-N scale with N."""
    return ("gbit", "classical-2", "classical-3", "polygon-3", "polygon-5")


def mother_outcome_tuples(observables: Sequence[Observable]) -> tuple[tuple[str, ...], ...]:
    """Cartesian product of outcome labels, in axis-major order."""
    return tuple(itertools.product(*(obs.outcomes for obs in observables)))
