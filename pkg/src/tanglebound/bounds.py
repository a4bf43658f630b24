"""Upper bounds on the three-tangle of a three-qubit reduced state.

Three constructions are provided, all driven by one invariant set:

* ``bound_quartic_A4``: rotate the traced qubit; zero one endpoint invariant
  by solving a quartic, evaluate the other endpoint at each root, take the min.
* ``bound_unitary_3q``: same idea on the orthogonal three-qubit branch pair,
  with probability-weighted coefficients.
* ``bound_grid``: direct minimization of the two-endpoint average over the
  Riemann sphere of rotation parameters.

A six-way zero-pattern classifier routes sparse invariant sets to closed
formulas, and the universal cap 4 sqrt(N48 - 2|I48|) tops everything.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProbability, WrongCase
from .invariants import (
    TRACE_PERMS,
    CorrelationSummary,
    ThreeQubitInvariantSet,
    endpoint_moduli,
    invariant_set,
    n48_i48,
    traced_qubit_of,
    transform_endpoints,
)
from .qstate import PureState4, branch_vectors, permute_qubits
from .quartic import PolyDeg4, roots

PROB_FLOOR = 1e-12
EQUAL_PROB_TOL = 1e-9
ZERO_PATTERN_TOL = 1e-10

GROUP_CASES = ("i", "ii", "iii", "iv", "v", "vi", "generic")


@dataclass(frozen=True)
class BoundWitness:
    """One bound value with the parameter that realizes it."""

    method: str
    value: float
    witness_x: complex | None = None
    roots_used: tuple[complex, ...] = ()
    group_case: str | None = None


@dataclass(frozen=True)
class BoundReport:
    """All method values for one triple; best is their minimum."""

    triple: str
    methods: tuple[BoundWitness, ...]
    best: float
    tightness_f: float


# ---------------------------------------------------------------------------
# quartic bound on the traced qubit
# ---------------------------------------------------------------------------

def _family_roots(coeffs, conjugate_back: bool) -> list[complex]:
    """Roots of one endpoint quartic, mapped back to the rotation parameter x."""
    ws = roots(PolyDeg4(*coeffs))
    return [w.conjugate() if conjugate_back else w for w in ws]


def quartic_root_candidates(inv: ThreeQubitInvariantSet) -> list[tuple[float, complex]]:
    """(value, x) pairs: 4 |complementary endpoint| at every root of both families."""
    c40 = (inv.i40, -4.0 * inv.i31, 6.0 * inv.i22, -4.0 * inv.i13, inv.i04)  # in w = conj(x)
    c04 = (inv.i04, 4.0 * inv.i13, 6.0 * inv.i22, 4.0 * inv.i31, inv.i40)    # in w = x
    cands = []
    for x in _family_roots(c40, conjugate_back=True):
        _, i04x = transform_endpoints(inv, x)
        cands.append((4.0 * abs(i04x), x))
    for x in _family_roots(c04, conjugate_back=False):
        i40x, _ = transform_endpoints(inv, x)
        cands.append((4.0 * abs(i40x), x))
    return cands


def bound_quartic_A4(inv: ThreeQubitInvariantSet) -> BoundWitness:
    """Zero one endpoint invariant exactly, read off the other: 4 min over roots.

    Both root families are scanned (multiple roots exist even though a single
    witness suffices in principle). A set with no three- or four-way content
    yields zero directly.
    """
    if inv.scale() == 0.0:
        return BoundWitness("quartic_A4", 0.0, None, (), None)
    cands = quartic_root_candidates(inv)
    cands.sort(key=_candidate_key)
    value, x = cands[0]
    return BoundWitness("quartic_A4", value, x, tuple(x for _, x in cands), None)


def _candidate_key(cand):
    v, x = cand
    return (v, abs(x), cmath.phase(x))


# ---------------------------------------------------------------------------
# unitary on the three-qubit branch pair
# ---------------------------------------------------------------------------

def branch_form_coefficients(inv: ThreeQubitInvariantSet, p0: float, p1: float) -> np.ndarray:
    """Invariants of the orthonormal branch pair: entry m is I^{4-m,m} scaled by
    1 / (p0^{(4-m)/2} p1^{m/2})."""
    return np.array(
        [
            inv.i40 / p0 ** 2,
            inv.i31 / math.sqrt(p0 ** 3 * p1),
            inv.i22 / (p0 * p1),
            inv.i13 / math.sqrt(p0 * p1 ** 3),
            inv.i04 / p1 ** 2,
        ]
    )


def _branch_endpoints(g: np.ndarray, y: complex) -> tuple[complex, complex]:
    """Probability-weighted endpoint forms at rotation parameter y."""
    yc = y.conjugate()
    den = (1.0 + abs(y) ** 2) ** 2
    f40 = (g[0] + 4.0 * y * g[1] + 6.0 * y ** 2 * g[2] + 4.0 * y ** 3 * g[3] + y ** 4 * g[4]) / den
    f04 = (g[4] - 4.0 * yc * g[3] + 6.0 * yc ** 2 * g[2] - 4.0 * yc ** 3 * g[1] + yc ** 4 * g[0]) / den
    return f40, f04


def bound_unitary_3q(inv: ThreeQubitInvariantSet, p0: float, p1: float) -> BoundWitness:
    """Endpoint-zeroing bound on the branch decomposition with probabilities p0, p1.

    The two endpoint forms carry coefficients i40/p0^2, 4 i31/sqrt(p0^3 p1),
    6 i22/(p0 p1), 4 i13/sqrt(p0 p1^3), i04/p1^2. Each family is zeroed and the
    complementary endpoint evaluated; the value is
    min(4 p0^2 |f04(y1)|, 4 p1^2 |f40(y2)|) over all roots. Requires both
    probabilities strictly positive; coincides with bound_quartic_A4 when
    p0 = p1.
    """
    if p0 < PROB_FLOOR or p1 < PROB_FLOOR:
        raise DegenerateProbability(
            f"branch probabilities ({p0!r}, {p1!r}): reduced state is pure; "
            "use three_tangle_pure on the surviving branch"
        )
    if inv.scale() == 0.0:
        return BoundWitness("unitary_3q", 0.0, None, (), None)
    g = branch_form_coefficients(inv, p0, p1)
    cands = []
    # family A zeroes f40 (quartic in y); candidate weight is p0^2
    for y in _family_roots((g[0], 4.0 * g[1], 6.0 * g[2], 4.0 * g[3], g[4]), conjugate_back=False):
        _, f04 = _branch_endpoints(g, y)
        cands.append((4.0 * p0 ** 2 * abs(f04), y))
    # family B zeroes f04 (quartic in conj(y)); candidate weight is p1^2
    for y in _family_roots((g[4], -4.0 * g[3], 6.0 * g[2], -4.0 * g[1], g[0]), conjugate_back=True):
        f40, _ = _branch_endpoints(g, y)
        cands.append((4.0 * p1 ** 2 * abs(f40), y))
    cands.sort(key=_candidate_key)
    value, y = cands[0]
    return BoundWitness("unitary_3q", value, y, tuple(y for _, y in cands), None)


# ---------------------------------------------------------------------------
# grid minimization over the Riemann sphere
# ---------------------------------------------------------------------------

def _sum_sqrt(inv: ThreeQubitInvariantSet, xs) -> np.ndarray:
    a40, a04 = endpoint_moduli(inv, np.asarray(xs, dtype=complex))
    return 2.0 * (np.sqrt(a40) + np.sqrt(a04))


def bound_grid(
    inv: ThreeQubitInvariantSet,
    n_theta: int = 256,
    n_phi: int = 256,
    refine_iters: int = 50,
) -> BoundWitness:
    """Minimize f(x) = 2 (sqrt|I40(x)| + sqrt|I04(x)|) over the sphere; value = min^2.

    x = tan(theta/2) e^{i phi} covers theta in (0, pi); the pole x -> infinity
    swaps the endpoint roles and evaluates to the same f as x = 0, so both ends
    are covered explicitly. The best grid point is refined by coordinate
    descent with shrinking steps. Quartic endpoint roots are seeded into the
    candidate set, which makes this a minimum over a superset of the
    quartic-bound witnesses.
    """
    if inv.scale() == 0.0:
        return BoundWitness("grid", 0.0, None, (), None)
    theta = np.pi * (np.arange(n_theta) + 0.5) / n_theta
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    tg, pg = np.meshgrid(theta, phi, indexing="ij")
    xs = np.tan(tg / 2.0) * np.exp(1j * pg)
    vals = _sum_sqrt(inv, xs)
    k = int(np.argmin(vals))
    best_theta = float(tg.flat[k])
    best_phi = float(pg.flat[k])
    best = float(vals.flat[k])

    # endpoints of the theta range: x = 0 and the pole give the same f value
    pole = 2.0 * (math.sqrt(abs(inv.i04)) + math.sqrt(abs(inv.i40)))
    if pole < best:
        best, best_theta, best_phi = pole, 0.0, 0.0

    # exact quartic witnesses are feasible points; seed them in
    for value, x in quartic_root_candidates(inv):
        fx = 2.0 * math.sqrt(value / 4.0)
        if fx < best:
            best = fx
            best_theta = 2.0 * math.atan(abs(x))
            best_phi = cmath.phase(x) % (2.0 * math.pi)

    dt = np.pi / n_theta
    dp = 2.0 * np.pi / n_phi
    for _ in range(refine_iters):
        moved = False
        for t2, p2 in (
            (best_theta + dt, best_phi),
            (best_theta - dt, best_phi),
            (best_theta, best_phi + dp),
            (best_theta, best_phi - dp),
        ):
            t2 = min(max(t2, 0.0), np.pi * (1.0 - 1e-12))
            x2 = math.tan(t2 / 2.0) * cmath.exp(1j * p2)
            v2 = float(_sum_sqrt(inv, [x2])[0])
            if v2 < best:
                best, best_theta, best_phi = v2, t2, p2 % (2.0 * math.pi)
                moved = True
        if not moved:
            dt /= 2.0
            dp /= 2.0
    witness = math.tan(best_theta / 2.0) * cmath.exp(1j * best_phi)
    return BoundWitness("grid", best ** 2, witness, (), None)


# ---------------------------------------------------------------------------
# zero-pattern classifier and closed forms
# ---------------------------------------------------------------------------

def classify_group(
    inv: ThreeQubitInvariantSet,
    three_way: float,
    rel_tol: float = ZERO_PATTERN_TOL,
) -> str:
    """Assign one of the six sparse groups, or "generic".

    An invariant counts as zero when its modulus is below rel_tol times the
    largest modulus in the set (scale-free). Vanishing three-way correlation
    short-circuits to case "i".
    """
    scale = inv.scale()
    if scale == 0.0 or three_way < rel_tol * 16.0 * scale ** 2:
        return "i"
    nz = _nonzero_pattern(inv, rel_tol)
    return {
        frozenset({"40"}): "ii",
        frozenset({"04"}): "iii",
        frozenset({"40", "22"}): "iv",
        frozenset({"04", "22"}): "v",
        frozenset({"04", "13"}): "vi",
    }.get(nz, "generic")


def _nonzero_pattern(inv: ThreeQubitInvariantSet, rel_tol: float) -> frozenset:
    scale = inv.scale()
    labels = ("40", "31", "22", "13", "04")
    return frozenset(
        lab for lab, z in zip(labels, inv.as_array()) if abs(z) >= rel_tol * scale
    )


#: case -> invariants allowed to be nonzero
_CASE_SUPPORT = {
    "i": frozenset({"40", "31", "22", "13", "04"}),
    "ii": frozenset({"40"}),
    "iii": frozenset({"04"}),
    "iv": frozenset({"40", "22"}),
    "v": frozenset({"04", "22"}),
    "vi": frozenset({"04", "13"}),
}


def bound_closed_form(inv: ThreeQubitInvariantSet, case: str) -> BoundWitness:
    """Closed-form bound for one of the six sparse groups.

    (i) 0, (ii) 4|i40|, (iii) 4|i04|,
    (iv) 4|i40| ||6 i22| - |i40|| / (|6 i22| + |i40|),
    (v)  4|i04| ||6 i22| - |i04|| / (|6 i22| + |i04|),
    (vi) 4|i04|^3 / (|4 i13|^2 + |i04|^2).
    """
    if case not in _CASE_SUPPORT:
        raise WrongCase(f"unknown case {case!r}")
    if case != "i" and not _nonzero_pattern(inv, ZERO_PATTERN_TOL) <= _CASE_SUPPORT[case]:
        raise WrongCase(
            f"case {case!r} incompatible with nonzero pattern "
            f"{sorted(_nonzero_pattern(inv, ZERO_PATTERN_TOL))}"
        )
    a40, a22, a13, a04 = abs(inv.i40), abs(6.0 * inv.i22), abs(4.0 * inv.i13), abs(inv.i04)
    if case == "i":
        value = 0.0
    elif case == "ii":
        value = 4.0 * a40
    elif case == "iii":
        value = 4.0 * a04
    elif case == "iv":
        value = 4.0 * a40 * abs(a22 - a40) / (a22 + a40) if a22 + a40 > 0.0 else 0.0
    elif case == "v":
        value = 4.0 * a04 * abs(a22 - a04) / (a22 + a04) if a22 + a04 > 0.0 else 0.0
    else:  # vi
        value = 4.0 * a04 ** 3 / (a13 ** 2 + a04 ** 2) if a13 + a04 > 0.0 else 0.0
    return BoundWitness("closed_form", value, None, (), case)


def bound_cap(summary: CorrelationSummary) -> BoundWitness:
    """Universal cap 4 sqrt(N48 - 2|I48|); every other bound sits below it."""
    value = 4.0 * math.sqrt(max(0.0, summary.n48 - 2.0 * abs(summary.i48)))
    return BoundWitness("cap", value, None, (), None)


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------

def best_bound(
    state: PureState4,
    triple: str,
    n_theta: int = 256,
    n_phi: int = 256,
    refine_iters: int = 50,
    zero_tol: float = ZERO_PATTERN_TOL,
) -> BoundReport:
    """Run every applicable method for one triple and report the minimum.

    Methods: cap, classifier + closed form (sparse patterns only), the quartic
    bound, the branch-pair bound, and the grid minimization. The branch-pair
    method enters the comparison only when the traced qubit's branch
    probabilities are equal: that is its regime of validity (it then coincides
    with the quartic bound), whereas at unequal probabilities its
    probability-weighted value can drop below what any decomposition of the
    reduced state realizes.
    """
    traced = traced_qubit_of(triple)
    inv = invariant_set(state, traced)
    n48, i48 = n48_i48(inv)
    summary = CorrelationSummary(
        triple, n48, i48, 16.0 * abs(12.0 * i48), 16.0 * (n48 - 2.0 * abs(i48))
    )
    methods = [bound_cap(summary)]
    case = classify_group(inv, summary.three_way, zero_tol)
    if case != "generic":
        methods.append(bound_closed_form(inv, case))
    methods.append(bound_quartic_A4(inv))
    phi0, phi1 = branch_vectors(permute_qubits(state, TRACE_PERMS[traced]))
    p0 = float(np.sum(np.abs(phi0) ** 2))
    p1 = float(np.sum(np.abs(phi1) ** 2))
    if min(p0, p1) >= PROB_FLOOR and abs(p0 - p1) <= EQUAL_PROB_TOL:
        methods.append(bound_unitary_3q(inv, p0, p1))
    methods.append(bound_grid(inv, n_theta, n_phi, refine_iters))
    best = min(m.value for m in methods)
    cap = methods[0].value
    tightness = best / cap if cap > 0.0 else 0.0
    return BoundReport(triple, tuple(methods), best, tightness)


def report_to_json(report: BoundReport) -> dict:
    return {
        "triple": report.triple,
        "methods": [
            {
                "method": m.method,
                "value": m.value,
                "x": None if m.witness_x is None
                else [float(m.witness_x.real), float(m.witness_x.imag)],
                **({"case": m.group_case} if m.group_case is not None else {}),
            }
            for m in report.methods
        ],
        "best": report.best,
        "F": report.tightness_f,
    }
