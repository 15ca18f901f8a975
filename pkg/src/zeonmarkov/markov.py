"""Markov chain analysis: classical Perron-Frobenius oracles and the
degree-2 determinant criterion for ergodicity.

The classical route decides ergodicity structurally: strongly connected
state diagram (irreducible), unit gcd of cycle lengths (aperiodic), or
equivalently some strictly positive power (quasi-positive). The new
route computes det(I - Psi2(A)) exactly: for chains whose classes are all
closed, the determinant is nonzero exactly when the chain is ergodic, and
when it vanishes an explicit nonnegative fixed vector of Psi2(A) is
produced as a certificate (a cross-class indicator for reducible chains,
a cyclic-distance indicator for periodic ones).

States are labelled 1..n everywhere in this module's reports.
"""

from __future__ import annotations

import enum
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .degree2 import DegreeTwoVector, right_action
from .linalg import Matrix, Scalar, exact_div, scalar_str, wielandt_bound
from .zeon import zeon_power


class NotStochasticError(ValueError):
    """Input matrix is not row-stochastic; message carries exact details."""


@dataclass(frozen=True)
class StochasticMatrix:
    """A validated row-stochastic matrix: nonnegative, rows sum to 1."""

    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if not m.is_square:
            raise NotStochasticError(f"matrix is {m.rows}x{m.cols}, not square")
        for i in range(m.rows):
            for j, e in enumerate(m.row(i)):
                if e < 0:
                    raise NotStochasticError(
                        f"entry ({i + 1},{j + 1}) is negative: {scalar_str(e)}"
                    )
        for i, s in enumerate(m.row_sums()):
            if s != 1:
                raise NotStochasticError(f"row {i + 1} sums to {scalar_str(s)}, expected 1")

    @property
    def n(self) -> int:
        return self.matrix.rows


def validate_stochastic(m: Matrix) -> StochasticMatrix:
    """Wrap a matrix after checking exact row-stochasticity."""
    return StochasticMatrix(m)


@dataclass(frozen=True)
class ChainStructure:
    """Communicating classes of the state transition diagram.

    ``classes`` partitions {1..n} into strongly connected components,
    ordered by smallest member. A class is closed when no edge leaves it;
    states outside closed classes are transient. ``periods[c]`` is the
    gcd of cycle lengths inside class c (None when the class has no
    cycle), and ``cyclic_classes[c]`` splits a closed class of period p
    into its p cyclic classes, consecutive under the chain's step.
    """

    n: int
    classes: tuple
    closed: tuple
    periods: tuple
    cyclic_classes: tuple

    @property
    def closed_classes(self) -> tuple:
        return tuple(c for c, flag in zip(self.classes, self.closed) if flag)

    @property
    def transient_states(self) -> tuple:
        return tuple(sorted(s for c, flag in zip(self.classes, self.closed)
                            if not flag for s in c))

    @property
    def is_irreducible(self) -> bool:
        return len(self.classes) == 1

    @property
    def all_closed(self) -> bool:
        return all(self.closed)

    @property
    def period(self) -> int:
        """Period of the chain: lcm of the closed classes' periods."""
        return math.lcm(*(p for p, flag in zip(self.periods, self.closed) if flag))

    @property
    def is_aperiodic(self) -> bool:
        return self.period == 1

    def class_of(self, state: int) -> int:
        for idx, c in enumerate(self.classes):
            if state in c:
                return idx
        raise ValueError(f"state {state} out of range 1..{self.n}")


def _strongly_connected_components(adjacency: Sequence[Sequence[int]]) -> list:
    """Tarjan's algorithm, iterative; components as lists of 0-based nodes."""
    n = len(adjacency)
    index: list = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list = []
    components = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, next_child = work[-1]
            if next_child == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            neighbours = adjacency[v]
            for i in range(next_child, len(neighbours)):
                w = neighbours[i]
                if index[w] is None:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return components


def chain_structure(a: StochasticMatrix) -> ChainStructure:
    """Classes, closedness, periods and cyclic classes of the diagram."""
    m = a.matrix
    n = a.n
    adjacency = [[j for j in range(n) if m[i, j] > 0] for i in range(n)]
    components = _strongly_connected_components(adjacency)
    components.sort(key=min)

    classes = []
    closed_flags = []
    periods = []
    cyclics = []
    for component in components:
        members = set(component)
        closed = all(w in members for v in component for w in adjacency[v])
        period, levels = _period_and_levels(sorted(component), adjacency, members)
        cyclic = None
        if closed:
            p = period if period is not None else 1
            groups = [[] for _ in range(p)]
            for v in sorted(members):
                groups[levels[v] % p].append(v + 1)
            cyclic = tuple(tuple(g) for g in groups)
        classes.append(tuple(sorted(v + 1 for v in component)))
        closed_flags.append(closed)
        periods.append(period)
        cyclics.append(cyclic)
    return ChainStructure(
        n=n,
        classes=tuple(classes),
        closed=tuple(closed_flags),
        periods=tuple(periods),
        cyclic_classes=tuple(cyclics),
    )


def _period_and_levels(component: list, adjacency, members: set) -> tuple:
    """Period of one strongly connected class via breadth-first levels.

    The gcd of (level(u) + 1 - level(v)) over internal edges u -> v equals
    the gcd of all cycle lengths, without enumerating cycles. Classes with
    no internal edge (a transient singleton) have no cycle: period None.
    """
    start = component[0]
    levels = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w in members and w not in levels:
                levels[w] = levels[u] + 1
                queue.append(w)
    g = 0
    has_edge = False
    for u in component:
        for w in adjacency[u]:
            if w in members:
                has_edge = True
                g = math.gcd(g, levels[u] + 1 - levels[w])
    return (g if has_edge else None), levels


def is_quasi_positive(a: StochasticMatrix) -> Optional[int]:
    """Smallest m with A^m entrywise positive, searched to the Wielandt
    bound n^2 - 2n + 2; None is a proof that no such power exists."""
    pattern = a.matrix.pattern()
    return pattern.first_positive_power(wielandt_bound(a.n))


@dataclass(frozen=True)
class InvariantVectors:
    """Left fixed vectors of the chain: exact basis of {v : v A = v}.

    ``has_positive`` says whether some member of the span is strictly
    positive, decided structurally: true exactly when every class is
    closed. ``distribution`` is the normalized invariant distribution
    when it is unique (single closed class), else None.
    """

    basis: tuple
    has_positive: bool
    distribution: Optional[Matrix]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def invariant_distributions(a: StochasticMatrix) -> InvariantVectors:
    m = a.matrix
    basis = (m - Matrix.identity(a.n)).left_null_space()
    structure = chain_structure(a)
    has_positive = structure.all_closed
    distribution = None
    if len(basis) == 1:
        row = basis[0]
        total = sum(row.data)
        distribution = row * exact_div(1, total)
    return InvariantVectors(tuple(basis), has_positive, distribution)


def _restrict(m: Matrix, states: Sequence[int]) -> Matrix:
    """Submatrix on the given 1-based states (rows and columns)."""
    return Matrix(len(states), len(states),
                  [m[i - 1, j - 1] for i in states for j in states])


def _class_distribution(m: Matrix, states: Sequence[int]) -> dict:
    """Stationary distribution of one closed class, as {state: mass}."""
    sub = _restrict(m, states)
    basis = (sub - Matrix.identity(len(states))).left_null_space()
    if len(basis) != 1:
        raise RuntimeError("closed class must carry a unique invariant vector")
    row = basis[0]
    total = sum(row.data)
    return {s: exact_div(v, total) for s, v in zip(states, row.data)}


def ergodic_limit(a: StochasticMatrix) -> Optional[Matrix]:
    """Exact limit of A^m when it exists, None otherwise.

    The limit exists exactly when every closed class is aperiodic. It is
    assembled algebraically, never by iterating powers: each recurrent row
    is the stationary distribution of its class; each transient row mixes
    those distributions with absorption probabilities obtained by solving
    (I - Q) H = B exactly on the transient block. For an irreducible
    aperiodic chain this reduces to the rank-one matrix with every row
    equal to the invariant distribution.
    """
    structure = chain_structure(a)
    for period, flag in zip(structure.periods, structure.closed):
        if flag and period != 1:
            return None
    m = a.matrix
    n = a.n
    closed = structure.closed_classes
    pis = [_class_distribution(m, c) for c in closed]

    rows = [[0] * n for _ in range(n)]
    for c, pi in zip(closed, pis):
        for i in c:
            for j, mass in pi.items():
                rows[i - 1][j - 1] = mass
    transients = structure.transient_states
    if transients:
        t = len(transients)
        q = Matrix(t, t, [m[i - 1, j - 1] for i in transients for j in transients])
        b = Matrix(t, len(closed),
                   [sum(m[i - 1, j - 1] for j in c) for i in transients for c in closed])
        h = (Matrix.identity(t) - q).solve_right(b)
        for r, i in enumerate(transients):
            for ci, pi in enumerate(pis):
                weight = h[r, ci]
                if weight != 0:
                    for j, mass in pi.items():
                        rows[i - 1][j - 1] += weight * mass
    return Matrix.from_rows(rows)


class Verdict(enum.Enum):
    """Outcome of the determinant criterion."""

    ERGODIC = "ergodic"
    NOT_ERGODIC = "not-ergodic"
    INAPPLICABLE = "criterion-inapplicable"


@dataclass(frozen=True)
class ErgodicityReport:
    """Everything the analyzer knows about one chain.

    The verdicts are mutually consistent by construction: with a strictly
    positive invariant vector available (no transient states), a nonzero
    determinant, quasi-positivity and irreducible+aperiodic all coincide.
    With transient states the determinant carries no verdict and the
    report says so, while still publishing the classical analysis.
    """

    is_irreducible: bool
    is_aperiodic: bool
    quasi_positive_exponent: Optional[int]
    has_positive_invariant: bool
    det_value: Scalar
    criterion_verdict: Verdict
    witness: Optional[DegreeTwoVector]
    invariant_distribution: Optional[Matrix]
    limit_matrix: Optional[Matrix]


def criterion_determinant(a: StochasticMatrix) -> Scalar:
    """det(I - Psi2(A)), computed exactly."""
    psi = zeon_power(a.matrix, 2)
    return (Matrix.identity(psi.rows) - psi).det()


def _nonnegative_fixed_vector(a: StochasticMatrix) -> Optional[DegreeTwoVector]:
    """Scan the fixed space of Psi2(A) for a nonnegative nonzero vector."""
    psi = zeon_power(a.matrix, 2)
    for col in (psi - Matrix.identity(psi.rows)).right_null_space():
        vec = DegreeTwoVector.from_column(col, a.n)
        if vec.is_zero():
            continue
        if vec.is_nonnegative():
            return vec
        negated = -1 * vec
        if negated.is_nonnegative():
            return negated
    return None


def zeon_criterion(a: StochasticMatrix) -> ErgodicityReport:
    """Full analysis: classical oracles plus the determinant criterion.

    Verdict: ergodic when det(I - Psi2(A)) != 0 and a strictly positive
    invariant vector exists; not-ergodic when the determinant vanishes in
    that same situation (with a nonnegative fixed-vector witness
    attached); criterion-inapplicable when transient states preclude a
    positive invariant vector -- the determinant is still reported, but it
    decides nothing there.
    """
    structure = chain_structure(a)
    invariants = invariant_distributions(a)
    det_value = criterion_determinant(a)
    quasi = is_quasi_positive(a)
    limit = ergodic_limit(a)

    witness = None
    if not invariants.has_positive:
        verdict = Verdict.INAPPLICABLE
        if det_value == 0:
            witness = _nonnegative_fixed_vector(a)
    elif det_value != 0:
        verdict = Verdict.ERGODIC
    else:
        verdict = Verdict.NOT_ERGODIC
        if len(structure.classes) >= 2:
            witness = witness_reducible(structure)
        else:
            witness = witness_periodic(structure)
        if right_action(a.matrix, witness) != witness:
            raise RuntimeError("constructed witness is not fixed by the compound")

    return ErgodicityReport(
        is_irreducible=structure.is_irreducible,
        is_aperiodic=structure.is_aperiodic,
        quasi_positive_exponent=quasi,
        has_positive_invariant=invariants.has_positive,
        det_value=det_value,
        criterion_verdict=verdict,
        witness=witness,
        invariant_distribution=invariants.distribution,
        limit_matrix=limit,
    )


def witness_reducible(structure: ChainStructure) -> DegreeTwoVector:
    """Cross-class indicator: x_ij = 1 when i and j lie in different
    classes, 0 inside a class. For a reducible chain with all classes
    closed this is an exact fixed vector of Psi2(A)."""
    if len(structure.classes) < 2:
        raise ValueError("need at least two classes for a cross-class witness")
    if not structure.all_closed:
        raise ValueError("cross-class witness needs every class closed")
    owner = {}
    for idx, c in enumerate(structure.classes):
        for s in c:
            owner[s] = idx
    values = {}
    for i in range(1, structure.n + 1):
        for j in range(i + 1, structure.n + 1):
            if owner[i] != owner[j]:
                values[(i, j)] = 1
    return DegreeTwoVector.from_pairs(structure.n, values)


def witness_periodic(structure: ChainStructure, delta: int = 1) -> DegreeTwoVector:
    """Cyclic-distance indicator for an irreducible periodic chain:
    x_ij = 1 when the cyclic classes of i and j are delta apart (distance
    measured around the cycle of the p cyclic classes). Fixed by Psi2(A)
    for every delta between 1 and floor(p/2)."""
    if not structure.is_irreducible:
        raise ValueError("periodic witness needs an irreducible chain")
    period = structure.periods[0]
    if period is None or period < 2:
        raise ValueError("chain is aperiodic: no periodic witness exists")
    if not 1 <= delta <= period // 2:
        raise ValueError(f"delta must be between 1 and {period // 2} for period {period}")
    cyclic = structure.cyclic_classes[0]
    phase = {}
    for k, group in enumerate(cyclic):
        for s in group:
            phase[s] = k
    values = {}
    for i in range(1, structure.n + 1):
        for j in range(i + 1, structure.n + 1):
            diff = abs(phase[i] - phase[j])
            if min(diff, period - diff) == delta:
                values[(i, j)] = 1
    return DegreeTwoVector.from_pairs(structure.n, values)


# -- equivalence harness ----------------------------------------------


@dataclass(frozen=True)
class EquivalenceCheck:
    """One matrix, three routes to the same dichotomy."""

    matrix: Matrix
    all_closed: bool
    det_value: Scalar
    quasi_positive_exponent: Optional[int]
    is_irreducible: bool
    is_aperiodic: bool

    @property
    def classical_ergodic(self) -> bool:
        return self.is_irreducible and self.is_aperiodic

    @property
    def classical_routes_consistent(self) -> bool:
        """Quasi-positivity against irreducible + aperiodic (always applies)."""
        return (self.quasi_positive_exponent is not None) == self.classical_ergodic

    @property
    def determinant_consistent(self) -> bool:
        """Determinant against the classical verdict; only meaningful with
        all classes closed, vacuously true otherwise."""
        if not self.all_closed:
            return True
        return (self.det_value != 0) == self.classical_ergodic

    @property
    def consistent(self) -> bool:
        return self.classical_routes_consistent and self.determinant_consistent


def check_equivalence(a: StochasticMatrix) -> EquivalenceCheck:
    structure = chain_structure(a)
    return EquivalenceCheck(
        matrix=a.matrix,
        all_closed=structure.all_closed,
        det_value=criterion_determinant(a),
        quasi_positive_exponent=is_quasi_positive(a),
        is_irreducible=structure.is_irreducible,
        is_aperiodic=structure.is_aperiodic,
    )


@dataclass(frozen=True)
class HarnessReport:
    """Aggregate of an equivalence sweep; counterexamples expected empty."""

    n: int
    samples: int
    seed: int
    checked: int
    ergodic_count: int
    periodic_count: int
    reducible_count: int
    counterexamples: tuple

    @property
    def all_consistent(self) -> bool:
        return not self.counterexamples


def random_stochastic(rng: random.Random, n: int, density: float = 0.75) -> StochasticMatrix:
    """Random rational stochastic matrix with tame denominators: entries
    are small nonnegative integers normalized by the row sum."""
    rows = []
    for _ in range(n):
        row = [rng.randint(1, 6) if rng.random() < density else 0 for _ in range(n)]
        if not any(row):
            row[rng.randrange(n)] = rng.randint(1, 6)
        total = sum(row)
        rows.append([Fraction(e, total) for e in row])
    return StochasticMatrix(Matrix.from_rows(rows))


def random_recurrent_stochastic(rng: random.Random, n: int,
                                max_tries: int = 1000) -> StochasticMatrix:
    """Random stochastic matrix whose classes are all closed (no
    transient states), by rejection sampling over varying densities."""
    for _ in range(max_tries):
        density = rng.uniform(0.2, 0.9)
        a = random_stochastic(rng, n, density)
        if chain_structure(a).all_closed:
            return a
    raise RuntimeError("failed to sample a recurrent-only matrix")


def equivalence_harness(n: int, samples: int, seed: int) -> HarnessReport:
    """Sample recurrent-only chains and check the three-way equivalence

        det(I - Psi2(A)) != 0  <=>  quasi-positive  <=>  irreducible and aperiodic

    on each. Deterministic for a given seed; a counterexample is recorded
    in the report, not raised.
    """
    if not 2 <= n <= 8:
        raise ValueError("harness supports 2 <= n <= 8")
    rng = random.Random(seed)
    ergodic = periodic = reducible = 0
    counterexamples = []
    for _ in range(samples):
        a = random_recurrent_stochastic(rng, n)
        chk = check_equivalence(a)
        if chk.classical_ergodic:
            ergodic += 1
        elif chk.is_irreducible:
            periodic += 1
        else:
            reducible += 1
        if not chk.consistent:
            counterexamples.append(chk)
    return HarnessReport(
        n=n,
        samples=samples,
        seed=seed,
        checked=samples,
        ergodic_count=ergodic,
        periodic_count=periodic,
        reducible_count=reducible,
        counterexamples=tuple(counterexamples),
    )
