"""Steering assemblages, local-hidden-state models, and the equivalence check.

An assemblage records, for every measurement setting x and outcome k,
the subnormalized state Bob holds after Alice announces k; it is
unsteerable when some ensemble of hidden states lambda with response
probabilities p(k|x,lambda) reproduces every element. Deciding that is
a linear feasibility problem once a convexification lemma is applied:
any response table is a mixture of deterministic ones (pick, for each
setting independently, one outcome per hidden state), so it suffices to
search over hidden states labelled by deterministic strategies, and
within each label the state may be any cone combination of vertices.
The LP variables are those vertex weights; infeasibility yields Farkas
multipliers that read directly as a linear steering functional:
positive on the assemblage, nonpositive on everything any local model
can produce.

The two constructive directions of the compatibility correspondence
live here too: a mother observable on Alice's side turns into a local
model for the assemblage it steers, and a local model for the canonical
maximally entangled state's assemblage turns back into a mother
observable by remotely preparing each hidden state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .compatibility import JmResult, MotherObservable, check_joint_measurability
from .composites import (BipartiteState, canonical_max_entangled, in_max_tensor,
                         marginal, subnormalized_conditional)
from .errors import ConstructionError, NotRemotelyPreparableError
from .exactlp import LinearSystem, lp_feasible, refutes
from .kernel import (Effect, Observable, State, StateSpace, depolarize_observable,
                     in_state_cone, is_valid_state, mother_outcome_tuples,
                     unit_effect)
from .ratio import ONE, ZERO, Rational, as_ratio
from .sampler import SamplerConfig, make_rng, random_max_tensor_state, random_observable_set
from .vecs import dot, qvec

UNSTEERABLE = "unsteerable"
STEERABLE = "steerable"


def _unique_labels(labels) -> tuple[str, ...]:
    seen = {}
    out = []
    for label in labels:
        n = seen.get(label, 0)
        seen[label] = n + 1
        out.append(label if n == 0 else f"{label}#{n}")
    return tuple(out)


@dataclass(frozen=True)
class Assemblage:
    """Subnormalized conditional states, indexed by setting then outcome.

    elements[x][k] is a coordinate vector in Bob's ambient space whose
    first coordinate is the probability of outcome k under setting x.
    """

    space: StateSpace
    settings: tuple[str, ...]
    outcomes: tuple[tuple[str, ...], ...]
    elements: tuple[tuple[tuple[Rational, ...], ...], ...]

    def __post_init__(self):
        settings = tuple(str(s) for s in self.settings)
        outcomes = tuple(tuple(str(k) for k in row) for row in self.outcomes)
        elements = tuple(tuple(qvec(e) for e in row) for row in self.elements)
        object.__setattr__(self, "settings", settings)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "elements", elements)
        if not settings:
            raise ValueError("assemblage needs at least one setting")
        if len(set(settings)) != len(settings):
            raise ValueError("duplicate setting labels")
        if not (len(settings) == len(outcomes) == len(elements)):
            raise ValueError("settings, outcomes and elements must align")
        dim = self.space.ambient_dim
        for row, outs in zip(elements, outcomes):
            if not outs or len(set(outs)) != len(outs):
                raise ValueError("each setting needs distinct outcome labels")
            if len(row) != len(outs):
                raise ValueError("one element per outcome required")
            for e in row:
                if len(e) != dim:
                    raise ValueError("element dimension mismatch")

    def element(self, x: int, k: int) -> tuple[Rational, ...]:
        return self.elements[x][k]

    def validate(self) -> None:
        """Raise ValueError unless this is a physical, no-signaling assemblage."""
        totals = []
        for x, row in enumerate(self.elements):
            for k, e in enumerate(row):
                if not ZERO <= e[0] <= ONE:
                    raise ValueError(f"element ({x},{k}) has weight outside [0,1]")
                if not in_state_cone(e, self.space):
                    raise ValueError(f"element ({x},{k}) leaves the state cone")
            total = tuple(sum(col, ZERO) for col in zip(*row))
            totals.append(total)
        if any(t != totals[0] for t in totals[1:]):
            raise ValueError("setting totals disagree (signaling assemblage)")
        if totals[0][0] != ONE:
            raise ValueError("assemblage total is not normalized")

    def reduced_state(self) -> State:
        """The common per-setting total, as a normalized state."""
        self.validate()
        return State(tuple(sum(col, ZERO) for col in zip(*self.elements[0])))


def assemblage_from(state: BipartiteState,
                    observables: tuple[Observable, ...]) -> Assemblage:
    """The assemblage Alice's observables steer out of a bipartite state."""
    if not observables:
        raise ValueError("need at least one observable")
    if not in_max_tensor(state):
        raise ValueError("state must lie in the maximal tensor product")
    for obs in observables:
        if obs.space is not state.space_a and obs.space != state.space_a:
            raise ValueError("observables must act on the A side of the state")
    elements = tuple(
        tuple(subnormalized_conditional(state, eff, "A")
              for eff in obs.effects)
        for obs in observables)
    return Assemblage(space=state.space_b,
                      settings=_unique_labels(o.label for o in observables),
                      outcomes=tuple(o.outcomes for o in observables),
                      elements=elements)


@dataclass(frozen=True)
class LhsLambda:
    """One hidden state: its total weight, the state, and response rows.

    responses[x][k] is p(outcome k | setting x, this hidden state); each
    row sums to one. Deterministic rows are the 0/1 special case.
    """

    weight: Rational
    state: State
    responses: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", as_ratio(self.weight))
        object.__setattr__(self, "responses",
                           tuple(tuple(as_ratio(p) for p in row)
                                 for row in self.responses))
        if self.weight < ZERO:
            raise ValueError("hidden-state weight must be nonnegative")
        for row in self.responses:
            if any(p < ZERO for p in row):
                raise ValueError("response probabilities must be nonnegative")
            if sum(row, ZERO) != ONE:
                raise ValueError("response rows must sum to one")


@dataclass(frozen=True)
class LhsModel:
    """A local-hidden-state model for an assemblage shape."""

    space: StateSpace
    settings: tuple[str, ...]
    outcomes: tuple[tuple[str, ...], ...]
    lambdas: tuple[LhsLambda, ...]

    def validate(self) -> None:
        if not self.lambdas:
            raise ValueError("a model needs at least one hidden state")
        if sum((lam.weight for lam in self.lambdas), ZERO) != ONE:
            raise ValueError("hidden-state weights must sum to one")
        for lam in self.lambdas:
            if not is_valid_state(lam.state.coords, self.space):
                raise ValueError("hidden state outside the state space")
            if len(lam.responses) != len(self.settings):
                raise ValueError("one response row per setting required")
            for row, outs in zip(lam.responses, self.outcomes):
                if len(row) != len(outs):
                    raise ValueError("response row length mismatch")


def reconstruct_assemblage(model: LhsModel) -> Assemblage:
    """The assemblage a local model produces."""
    dim = model.space.ambient_dim
    elements = []
    for x in range(len(model.settings)):
        row = []
        for k in range(len(model.outcomes[x])):
            vec = [ZERO] * dim
            for lam in model.lambdas:
                scale = lam.weight * lam.responses[x][k]
                if scale != ZERO:
                    vec = [c + scale * s for c, s in zip(vec, lam.state.coords)]
            row.append(tuple(vec))
        elements.append(tuple(row))
    return Assemblage(space=model.space, settings=model.settings,
                      outcomes=model.outcomes, elements=tuple(elements))


@dataclass(frozen=True)
class LhsResult:
    """Outcome of the unsteerability decision.

    Exactly one of model / certificate is set. The certificate doubles
    as a steering functional: functional[x][k] is a covector whose total
    pairing with the assemblage is positive while its pairing with
    every deterministic-strategy cone generator is nonpositive.
    """

    status: str
    model: LhsModel | None = None
    certificate: tuple[Rational, ...] | None = None
    functional: tuple[tuple[tuple[Rational, ...], ...], ...] | None = None

    @property
    def unsteerable(self) -> bool:
        return self.status == UNSTEERABLE


def _strategies(outcomes: tuple[tuple[str, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """All deterministic strategies, as tuples of outcome indices per setting."""
    return tuple(itertools.product(*(range(len(row)) for row in outcomes)))


def lhs_linear_system(assemblage: Assemblage) -> LinearSystem:
    """Feasibility system for a local model of the assemblage.

    Variables are cone weights c[strategy][vertex], strategy-major in
    the order of _strategies, vertices in space order. Equality rows run
    over (setting, outcome, coordinate) in that nesting; inequality rows
    are the nonnegativity constraints in variable order.
    """
    space = assemblage.space
    strategies = _strategies(assemblage.outcomes)
    vertices = space.vertices
    n_vars = len(strategies) * len(vertices)

    def var(s: int, v: int) -> int:
        return s * len(vertices) + v

    equalities = []
    for x, row in enumerate(assemblage.elements):
        for k, element in enumerate(row):
            for coord in range(space.ambient_dim):
                coeffs = [ZERO] * n_vars
                for s, strat in enumerate(strategies):
                    if strat[x] != k:
                        continue
                    for v, vertex in enumerate(vertices):
                        coeffs[var(s, v)] = vertex[coord]
                equalities.append((tuple(coeffs), element[coord]))
    inequalities = []
    for i in range(n_vars):
        coeffs = [ZERO] * n_vars
        coeffs[i] = ONE
        inequalities.append((tuple(coeffs), ZERO))
    return LinearSystem.build(n_vars, equalities, inequalities)


def _functional_from_certificate(assemblage: Assemblage,
                                 certificate) -> tuple:
    """Reshape the equality multipliers into per-(setting, outcome) covectors."""
    dim = assemblage.space.ambient_dim
    it = iter(certificate)
    functional = []
    for row in assemblage.elements:
        functional.append(tuple(tuple(next(it) for _ in range(dim))
                                for _ in row))
    return tuple(functional)


def functional_value(functional, assemblage: Assemblage) -> Rational:
    """Total pairing of a steering functional with an assemblage."""
    return sum((dot(f, e)
                for frow, erow in zip(functional, assemblage.elements)
                for f, e in zip(frow, erow)), ZERO)


def functional_strategy_bound(functional, space: StateSpace,
                              outcomes: tuple[tuple[str, ...], ...]) -> Rational:
    """Largest pairing any deterministic strategy and vertex can reach."""
    best = None
    for strat in _strategies(outcomes):
        for vertex in space.vertices:
            value = sum((dot(functional[x][strat[x]], vertex)
                         for x in range(len(outcomes))), ZERO)
            if best is None or value > best:
                best = value
    return best


def check_lhs(assemblage: Assemblage) -> LhsResult:
    """Decide unsteerability of an assemblage, with model or certificate."""
    assemblage.validate()
    system = lhs_linear_system(assemblage)
    outcome = lp_feasible(system)
    space = assemblage.space
    if outcome.feasible:
        strategies = _strategies(assemblage.outcomes)
        vertices = space.vertices
        lambdas = []
        for s, strat in enumerate(strategies):
            weights = outcome.witness[s * len(vertices):(s + 1) * len(vertices)]
            coords = [ZERO] * space.ambient_dim
            for w, vertex in zip(weights, vertices):
                if w != ZERO:
                    coords = [c + w * v for c, v in zip(coords, vertex)]
            gamma = coords[0]
            if gamma == ZERO:
                continue
            state = State(tuple(c / gamma for c in coords))
            responses = tuple(
                tuple(ONE if strat[x] == k else ZERO
                      for k in range(len(assemblage.outcomes[x])))
                for x in range(len(assemblage.settings)))
            lambdas.append(LhsLambda(gamma, state, responses))
        model = LhsModel(space=space, settings=assemblage.settings,
                         outcomes=assemblage.outcomes, lambdas=tuple(lambdas))
        model.validate()
        if reconstruct_assemblage(model).elements != assemblage.elements:
            raise AssertionError("local model fails to reproduce the assemblage")
        return LhsResult(status=UNSTEERABLE, model=model)
    certificate = outcome.certificate
    assert refutes(system, certificate)
    functional = _functional_from_certificate(assemblage, certificate)
    assert functional_value(functional, assemblage) > ZERO
    assert functional_strategy_bound(functional, space,
                                     assemblage.outcomes) <= ZERO
    return LhsResult(status=STEERABLE, certificate=certificate,
                     functional=functional)


def jm_to_lhs(mother: MotherObservable, state: BipartiteState) -> LhsModel:
    """Turn a mother observable into a local model for the steered assemblage.

    Hidden states are labelled by the mother's outcome tuples: lambda's
    weight is the probability of that tuple against the state's A
    marginal, its state is the conditional on Bob's side, and its
    responses are deterministic, announcing the tuple's component.
    Zero-weight tuples are dropped.
    """
    if mother.space != state.space_a:
        raise ValueError("mother observable must act on the A side")
    if not in_max_tensor(state):
        raise ValueError("state must lie in the maximal tensor product")
    settings = _unique_labels(axis.label for axis in mother.axes)
    outcomes = tuple(axis.outcomes for axis in mother.axes)
    lambdas = []
    for combo, effect in mother.items():
        vec = subnormalized_conditional(state, effect, "A")
        weight = vec[0]
        if weight == ZERO:
            continue
        hidden = State(tuple(c / weight for c in vec))
        responses = tuple(
            tuple(ONE if axis.outcomes[k] == combo[x] else ZERO
                  for k in range(len(axis.outcomes)))
            for x, axis in enumerate(mother.axes))
        lambdas.append(LhsLambda(weight, hidden, responses))
    model = LhsModel(space=state.space_b, settings=settings,
                     outcomes=outcomes, lambdas=tuple(lambdas))
    model.validate()
    produced = reconstruct_assemblage(model)
    target = assemblage_from(state, mother.axes)
    if produced.elements != target.elements:
        raise ConstructionError("mother-derived model misses the assemblage")
    return model


def conditioning_system(state: BipartiteState,
                        target: tuple[Rational, ...]) -> LinearSystem:
    """Feasibility system for an A-side effect steering state onto target.

    Variables are the effect's coefficients (free). Equality rows ask,
    coordinate by B coordinate, that conditioning reproduce the target;
    inequality rows are effect validity on A's vertices, all the
    0 <= e(v) rows first, then the e(v) <= 1 rows.
    """
    dim_a = state.space_a.ambient_dim
    dim_b = state.space_b.ambient_dim
    target = qvec(target)
    if len(target) != dim_b:
        raise ValueError("target dimension mismatch")
    equalities = []
    for j in range(dim_b):
        column = tuple(state.matrix[i][j] for i in range(dim_a))
        equalities.append((column, target[j]))
    inequalities = []
    for vertex in state.space_a.vertices:
        inequalities.append((vertex, ZERO))
    for vertex in state.space_a.vertices:
        inequalities.append((tuple(-c for c in vertex), -ONE))
    return LinearSystem.build(dim_a, equalities, inequalities)


def find_conditioning_effect(state: BipartiteState,
                             target: tuple[Rational, ...]) -> Effect:
    """A-side effect whose conditioning on state yields the target vector.

    Raises NotRemotelyPreparableError, carrying a Farkas certificate
    for the constraint system, when no valid effect works.
    """
    target = qvec(target)
    if not in_state_cone(target, state.space_b):
        raise ValueError("target must lie in Bob's state cone")
    if not ZERO <= target[0] <= ONE:
        raise ValueError("target weight must lie in [0,1]")
    system = conditioning_system(state, target)
    outcome = lp_feasible(system)
    if not outcome.feasible:
        assert refutes(system, outcome.certificate)
        raise NotRemotelyPreparableError(
            "no valid effect conditions the state onto the target",
            outcome.certificate)
    effect = Effect(outcome.witness)
    if subnormalized_conditional(state, effect, "A") != target:
        raise AssertionError("conditioning witness fails to reproduce target")
    return effect


def lhs_to_mother(model: LhsModel, state: BipartiteState) -> MotherObservable:
    """Turn a local model for the state's assemblage into a mother observable.

    Each hidden state is remotely prepared: an A-side effect e_lam is
    found whose conditioning yields weight * hidden state, and the
    mother effect for outcome tuple kvec is the response-weighted sum
    sum_lam e_lam * prod_x p(kvec_x | x, lam). Fails with
    NotRemotelyPreparableError if some hidden state cannot be prepared,
    or ConstructionError if the pieces do not close into an observable.
    """
    model.validate()
    if model.space != state.space_b:
        raise ValueError("model must live on the B side of the state")
    prepared = []
    for i, lam in enumerate(model.lambdas):
        target = tuple(lam.weight * c for c in lam.state.coords)
        try:
            prepared.append(find_conditioning_effect(state, target))
        except NotRemotelyPreparableError as err:
            raise NotRemotelyPreparableError(
                f"hidden state {i} is not remotely preparable: {err}",
                err.certificate) from err
    space_a = state.space_a
    combos = tuple(itertools.product(*(range(len(row)) for row in model.outcomes)))
    effects = []
    for combo in combos:
        coeffs = [ZERO] * space_a.ambient_dim
        for lam, e_lam in zip(model.lambdas, prepared):
            scale = ONE
            for x, k in enumerate(combo):
                scale = scale * lam.responses[x][k]
            if scale != ZERO:
                coeffs = [c + scale * ec for c, ec in zip(coeffs, e_lam.coeffs)]
        effects.append(Effect(tuple(coeffs)))
    total = effects[0]
    for eff in effects[1:]:
        total = total + eff
    if total.coeffs != unit_effect(space_a.ambient_dim).coeffs:
        raise ConstructionError("prepared effects do not sum to the unit")
    axes = []
    for x, label in enumerate(model.settings):
        axis_effects = []
        for k in range(len(model.outcomes[x])):
            coeffs = [ZERO] * space_a.ambient_dim
            for combo, eff in zip(combos, effects):
                if combo[x] == k:
                    coeffs = [c + ec for c, ec in zip(coeffs, eff.coeffs)]
            axis_effects.append(Effect(tuple(coeffs)))
        axes.append(Observable(label=label, space=space_a,
                               outcomes=model.outcomes[x],
                               effects=tuple(axis_effects)))
    tuples = mother_outcome_tuples(tuple(axes))
    mother = MotherObservable(axes=tuple(axes), outcome_tuples=tuples,
                              effects=tuple(effects))
    mother.validate()
    steered = assemblage_from(state, mother.axes)
    if steered.elements != reconstruct_assemblage(model).elements:
        raise ConstructionError("mother observable steers to a different assemblage")
    return mother


def is_steerable_state(state: BipartiteState,
                       observables: tuple[Observable, ...]) -> LhsResult:
    """Unsteerability of the assemblage the observables steer from the state.

    A model found here is a local model for the given settings; if the
    family is the full set of observables one cares about, unsteerable
    verdicts extend to every coarse-graining and mixture of them, since
    responses may be stochastic.
    """
    return check_lhs(assemblage_from(state, observables))


@dataclass(frozen=True)
class PreparationReport:
    """Remote-preparability of one decomposition of Bob's marginal."""

    prepared: bool
    effects: tuple[Effect, ...] = ()
    failed_component: int | None = None
    certificate: tuple[Rational, ...] | None = None


def is_strongly_steerable_for(state: BipartiteState,
                              decompositions) -> tuple[bool, tuple[PreparationReport, ...]]:
    """Check remote preparability of finite decompositions of the B marginal.

    Each decomposition is a sequence of (weight, State) pairs with
    positive weights summing to one whose mixture is the state's B
    marginal. Returns (strongly_steerable, per-decomposition reports):
    the state is strongly steerable for the family when some
    decomposition has a component no valid effect can prepare.
    """
    mu = marginal(state, "B")
    reports = []
    strongly = False
    for decomposition in decompositions:
        pairs = tuple((as_ratio(w), s) for w, s in decomposition)
        if not pairs or any(w <= ZERO for w, _ in pairs):
            raise ValueError("decomposition weights must be positive")
        if sum((w for w, _ in pairs), ZERO) != ONE:
            raise ValueError("decomposition weights must sum to one")
        mixed = [ZERO] * state.space_b.ambient_dim
        for w, s in pairs:
            if not is_valid_state(s.coords, state.space_b):
                raise ValueError("decomposition component outside the state space")
            mixed = [m + w * c for m, c in zip(mixed, s.coords)]
        if tuple(mixed) != mu.coords:
            raise ValueError("decomposition does not mix to the B marginal")
        effects = []
        report = None
        for i, (w, s) in enumerate(pairs):
            target = tuple(w * c for c in s.coords)
            try:
                effects.append(find_conditioning_effect(state, target))
            except NotRemotelyPreparableError as err:
                report = PreparationReport(prepared=False, failed_component=i,
                                           certificate=err.certificate)
                strongly = True
                break
        if report is None:
            report = PreparationReport(prepared=True, effects=tuple(effects))
        reports.append(report)
    return strongly, tuple(reports)


def lhs_noise_threshold(observables: tuple[Observable, ...],
                        state: BipartiteState,
                        precision: Rational) -> tuple[Rational, Rational]:
    """Bracket the critical depolarizing level for unsteerability.

    Same bisection contract as the joint-measurability threshold: the
    returned (lo, hi) satisfy hi - lo <= precision, the assemblage at
    lo is unsteerable and the one at hi is steerable, except that a
    family unsteerable at full visibility reports (1, 1). Level 0 is
    never probed; fully depolarized observables steer nothing.
    """
    precision = as_ratio(precision)
    if precision <= ZERO:
        raise ValueError("precision must be positive")

    def unsteerable_at(level: Rational) -> bool:
        noisy = tuple(depolarize_observable(o, level) for o in observables)
        return check_lhs(assemblage_from(state, noisy)).unsteerable

    if unsteerable_at(ONE):
        return ONE, ONE
    lo, hi = ZERO, ONE
    while hi - lo > precision:
        mid = (lo + hi) / as_ratio(2)
        if unsteerable_at(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


@dataclass(frozen=True)
class TheoremTrial:
    """One observable family run through both sides of the equivalence."""

    index: int
    observables: tuple[Observable, ...]
    jm: JmResult
    lhs: LhsResult
    agree: bool
    extra_states: int = 0
    extra_all_unsteerable: bool | None = None
    extra_all_reconstructed: bool | None = None


@dataclass(frozen=True)
class TheoremReport:
    """Aggregate of equivalence trials on one model's canonical state."""

    space_label: str
    seed: int
    trials: tuple[TheoremTrial, ...] = field(repr=False)
    disagreements: int
    extra_failures: int

    @property
    def all_agree(self) -> bool:
        return self.disagreements == 0 and self.extra_failures == 0


def theorem_verify(space: StateSpace, n_trials: int, config: SamplerConfig,
                   extra_states_per_jm_trial: int = 0,
                   fixed_sets: tuple[tuple[Observable, ...], ...] = ()) -> TheoremReport:
    """Test joint measurability against unsteerability of the canonical state.

    Runs the fixed observable families first, then n_trials seeded
    random ones, deciding for each family both joint measurability and
    unsteerability of the assemblage it steers out of the canonical
    maximally entangled state, and recording whether the verdicts
    agree. For jointly measurable families, extra_states_per_jm_trial
    further product-or-mixture states are drawn and checked to be
    unsteerable too, with the mother-derived local model verified to
    reproduce each extra assemblage.
    """
    if n_trials < 0:
        raise ValueError("trial count must be nonnegative")
    state = canonical_max_entangled(space)
    rng = make_rng(config)
    families = list(fixed_sets)
    families += [random_observable_set(space, rng, config) for _ in range(n_trials)]
    trials = []
    disagreements = 0
    extra_failures = 0
    for index, observables in enumerate(families):
        jm = check_joint_measurability(observables, space)
        lhs = check_lhs(assemblage_from(state, observables))
        agree = jm.jointly_measurable == lhs.unsteerable
        if not agree:
            disagreements += 1
        extra_unsteerable = None
        extra_reconstructed = None
        extras = extra_states_per_jm_trial if jm.jointly_measurable else 0
        if extras:
            extra_unsteerable = True
            extra_reconstructed = True
            for _ in range(extras):
                other = random_max_tensor_state(space, space, rng,
                                                config.denominator)
                if not check_lhs(assemblage_from(other, observables)).unsteerable:
                    extra_unsteerable = False
                try:
                    jm_to_lhs(jm.mother, other)
                except ConstructionError:
                    extra_reconstructed = False
            if not (extra_unsteerable and extra_reconstructed):
                extra_failures += 1
        trials.append(TheoremTrial(index=index, observables=tuple(observables),
                                   jm=jm, lhs=lhs, agree=agree,
                                   extra_states=extras,
                                   extra_all_unsteerable=extra_unsteerable,
                                   extra_all_reconstructed=extra_reconstructed))
    return TheoremReport(space_label=space.label, seed=config.seed,
                         trials=tuple(trials), disagreements=disagreements,
                         extra_failures=extra_failures)
