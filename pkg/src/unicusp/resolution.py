"""Embedded resolution of rational curve singularities by blowing up.

The resolver follows one unibranch germ through a tower of point blowups
in exact local coordinates, recording the multiplicity at every center,
maintaining the weighted dual graph of exceptional curves, and stopping at
the first moment the total transform is simple normal crossings: the
strict transform is smooth, meets exactly one exceptional curve, and meets
it transversally away from corners.

Multibranch germs (nodes, tacnodes, ...) raise NotUnibranchError; the
delta invariant and genus are still available for them through the
general infinitely-near-point recursion used by genus_of.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import uniroots
from .curves import (
    CurveError,
    PlaneCurve,
    ProjPoint,
    SingularLocus,
    chart_of,
    find_rational_singular_points,
    germ_at,
    intersection_cycle,
    tangent_line_at,
)
from .dualgraph import WeightedDualGraph
from .poly import ONE, Poly, X, Y, exact_divide, normalized, to_univariate

STEP_BUDGET = 100


class NotUnibranchError(CurveError):
    """The germ is not a single analytic branch; carries the tangent cone."""

    def __init__(self, message: str, cone: Poly):
        super().__init__(message)
        self.cone = cone


class ResolutionIncompleteError(CurveError):
    """A caller-imposed step limit ran out before normal crossings."""

    def __init__(self, steps_done: int):
        super().__init__(f"normal crossings not reached within {steps_done} blowups")
        self.steps_done = steps_done


@dataclass(frozen=True)
class BlowupRecord:
    index: int
    multiplicity: int
    label: str
    center_on: tuple[str, ...]


@dataclass
class ResolutionResult:
    """Minimal embedded resolution of one singular point."""

    point: ProjPoint
    degree: int
    records: list[BlowupRecord]
    multiplicity_sequence: tuple[int, ...]
    full_sequence: tuple[int, ...]
    delta: int
    graph: WeightedDualGraph
    d0: str
    strict_self_intersection: int

    @property
    def exceptional_labels(self) -> list[str]:
        return [r.label for r in self.records]

    def as_json(self) -> dict:
        return {
            "point": self.point.as_json(),
            "degree": self.degree,
            "multiplicity_sequence": list(self.multiplicity_sequence),
            "full_sequence": list(self.full_sequence),
            "delta": self.delta,
            "strict_self_intersection": self.strict_self_intersection,
            "d0": self.d0,
            "graph": self.graph.to_json(),
            "blowups": [
                {
                    "index": r.index,
                    "multiplicity": r.multiplicity,
                    "label": r.label,
                    "center_on": list(r.center_on),
                }
                for r in self.records
            ],
        }


def _mult(g: Poly) -> int:
    return min(a + b + c for (a, b, c) in g.terms)


def _cone_direction(g: Poly, m: int) -> Fraction | None:
    """The unique tangent direction of a unibranch germ.

    Returns r when the cone is a scalar times (v - r*u)^m, None when it is
    a scalar times u^m (the vertical direction), and raises otherwise.
    """
    cone = g.homogeneous_part(m)
    coeffs = [Fraction(0)] * (m + 1)
    for (a, b, _), c in cone.terms.items():
        coeffs[b] += c
    t = max(k for k, c in enumerate(coeffs) if c)
    if t == 0:
        return None
    if t < m:
        raise NotUnibranchError(
            "tangent cone has several directions; the germ is not one branch", cone
        )
    r = -coeffs[m - 1] / (m * coeffs[m])
    expect = coeffs[m] * (Y - r * X) ** m
    if expect != cone:
        raise NotUnibranchError(
            "tangent cone is not the power of a single line; the germ splits", cone
        )
    return r


def blow_up_once(g: Poly) -> tuple[int, Poly, Poly, Fraction | None]:
    """One blowup of a unibranch germ at the origin.

    Returns (multiplicity, strict transform in the chart containing the
    next center, linear germ of the new exceptional curve, direction).
    The strict transform is again centered at the origin.
    """
    if g.is_zero() or g.terms.get((0, 0, 0)):
        raise CurveError("germ must be nonzero and vanish at the origin")
    m = _mult(g)
    r = _cone_direction(g, m)
    if r is None:
        moved = g.substitute((X * Y, Y, ONE))
    else:
        moved = g.substitute((X, X * (Y + r), ONE))
    exc_var = Y if r is None else X
    strict = exact_divide(moved, exc_var ** m)
    assert strict is not None, "total transform must be divisible by the m-th power"
    return m, strict, exc_var, r


def _transform_old_exceptional(lin: Poly, r: Fraction | None) -> Poly | None:
    """Strict transform germ of an old exceptional line through the blown-up
    point; None when it no longer passes through the new center."""
    a = lin.terms.get((1, 0, 0), Fraction(0))
    b = lin.terms.get((0, 1, 0), Fraction(0))
    if r is None:
        # new chart (u, v) -> (uv, v); through the origin iff lin ~ u
        return X if b == 0 else None
    # new chart (u, v) -> (u, u(v + r)); through the origin iff a + b*r = 0
    return Y if a + b * r == 0 else None


def minimal_embedded_resolution(
    curve: PlaneCurve, point: ProjPoint, step_limit: int | None = None
) -> ResolutionResult:
    """Resolve one singular point of a curve by iterated point blowups
    until the total transform is simple normal crossings.

    `step_limit` caps the number of blowups; running out raises
    ResolutionIncompleteError, which certifies that no shorter blowup
    sequence reaches normal crossings.
    """
    g = germ_at(curve.poly, point)
    if g.is_zero():
        raise CurveError("the defining polynomial vanishes identically at the chart")
    if g.terms.get((0, 0, 0)):
        raise CurveError("point does not lie on the curve")
    if _mult(g) < 2:
        raise CurveError("point is a smooth point; nothing to resolve")

    graph = WeightedDualGraph()
    records: list[BlowupRecord] = []
    seq: list[int] = []
    exc: list[tuple[str, Poly]] = []

    while True:
        m = _mult(g)
        if m == 1 and len(exc) == 1 and _is_transverse(g, exc[0][1]):
            break
        if step_limit is not None and len(records) >= step_limit:
            raise ResolutionIncompleteError(len(records))
        if len(records) >= STEP_BUDGET:
            raise CurveError(f"resolution exceeded {STEP_BUDGET} blowups")
        index = len(records) + 1
        label = f"E{index}"
        m, strict, exc_var, r = blow_up_once(g)
        graph.add_vertex(label, -1)
        centers = tuple(lab for lab, _ in exc)
        for lab, _ in exc:
            graph.bump_weight(lab, -1)
            graph.add_edge(label, lab)
        if len(exc) == 2:
            graph.remove_edge(exc[0][0], exc[1][0])
        new_exc: list[tuple[str, Poly]] = [(label, exc_var)]
        for lab, lin in exc:
            t = _transform_old_exceptional(lin, r)
            if t is not None:
                new_exc.append((lab, t))
        if len(new_exc) > 2:
            raise CurveError("more than two exceptional curves through a center")
        records.append(BlowupRecord(index, m, label, centers))
        seq.append(m)
        g = strict
        exc = new_exc

    d0 = exc[0][0]
    sq = curve.degree ** 2 - sum(k * k for k in seq)
    graph.add_vertex("C'", sq)
    graph.add_edge("C'", d0)
    delta = sum(k * (k - 1) // 2 for k in seq)
    return ResolutionResult(
        point=point,
        degree=curve.degree,
        records=records,
        multiplicity_sequence=tuple(k for k in seq if k >= 2),
        full_sequence=tuple(seq),
        delta=delta,
        graph=graph,
        d0=d0,
        strict_self_intersection=sq,
    )


def _is_transverse(g: Poly, exc_lin: Poly) -> bool:
    lin = g.homogeneous_part(1)
    a1 = lin.terms.get((1, 0, 0), Fraction(0))
    b1 = lin.terms.get((0, 1, 0), Fraction(0))
    a2 = exc_lin.terms.get((1, 0, 0), Fraction(0))
    b2 = exc_lin.terms.get((0, 1, 0), Fraction(0))
    return a1 * b2 - a2 * b1 != 0


# -- delta invariant and genus ---------------------------------------------


def delta_invariant(g: Poly) -> int:
    """Delta invariant of a germ at the origin via infinitely near points.

    Works for any (possibly multibranch) germ whose repeated tangent
    directions stay rational all the way down; raises CurveError when a
    repeated direction leaves Q, since the contribution of its conjugates
    could not be followed exactly.
    """
    m = _mult(g)
    if m <= 1:
        return 0
    total = m * (m - 1) // 2
    cone = g.homogeneous_part(m)
    coeffs = [Fraction(0)] * (m + 1)
    for (a, b, _), c in cone.terms.items():
        coeffs[b] += c
    t = max(k for k, c in enumerate(coeffs) if c)
    # vertical direction u = 0 with multiplicity m - t
    if m - t >= 2:
        child = exact_divide(g.substitute((X * Y, Y, ONE)), Y ** m)
        assert child is not None
        total += delta_invariant(child)
    ints = uniroots.clear_denominators(coeffs[: t + 1])
    roots, leftover = uniroots.rational_roots_int(ints)
    for r, mu in roots.items():
        if mu < 2:
            continue
        child = exact_divide(g.substitute((X, X * (Y + r), ONE)), X ** m)
        assert child is not None
        total += delta_invariant(child)
    if uniroots.deg(leftover) > 0:
        sq = uniroots.squarefree_part_int(leftover)
        if uniroots.deg(sq) != uniroots.deg(leftover):
            raise CurveError(
                "repeated tangent direction outside Q; delta invariant "
                "not computable exactly"
            )
    return total


def genus_of(curve: PlaneCurve) -> int:
    """Geometric genus of an irreducible curve: the arithmetic genus minus
    the delta invariants of all singular points.

    Requires the full singular locus to be rational; raises otherwise.
    """
    locus = find_rational_singular_points(curve).require_rational()
    d = curve.degree
    g = (d - 1) * (d - 2) // 2
    for point, _ in locus.points:
        g -= delta_invariant(germ_at(curve.poly, point))
    if g < 0:
        raise CurveError(
            "negative genus: the curve is reducible or the locus is wrong"
        )
    return g


# -- classification -----------------------------------------------------------


VERDICT_AMS = "AMS"
VERDICT_NON_AMS_MAX = "NON_AMS_MAX"
VERDICT_NON_AMS = "NON_AMS"
VERDICT_OUT_OF_SCOPE = "OUT_OF_SCOPE"
VERDICT_ALARM = "ALARM"


@dataclass
class ClassificationReport:
    """Full dossier for the unicuspidal-genus-one classification."""

    degree: int
    genus: int
    singular_points: list[tuple[ProjPoint, int]]
    unicuspidal: bool
    cusp: ProjPoint | None = None
    multiplicity_sequence: tuple[int, ...] | None = None
    full_sequence: tuple[int, ...] | None = None
    strict_self_intersection: int | None = None
    tangent_contact_only: bool | None = None
    verdict: str = VERDICT_OUT_OF_SCOPE
    notes: list[str] = field(default_factory=list)
    resolution: ResolutionResult | None = None

    def as_json(self) -> dict:
        return {
            "degree": self.degree,
            "genus": self.genus,
            "singular_points": [
                {"P": p.as_json(), "multiplicity": m} for p, m in self.singular_points
            ],
            "unicuspidal": self.unicuspidal,
            "cusp": self.cusp.as_json() if self.cusp else None,
            "multiplicity_sequence": list(self.multiplicity_sequence)
            if self.multiplicity_sequence is not None
            else None,
            "full_sequence": list(self.full_sequence)
            if self.full_sequence is not None
            else None,
            "strict_self_intersection": self.strict_self_intersection,
            "tangent_contact_only": self.tangent_contact_only,
            "verdict": self.verdict,
            "notes": self.notes,
        }


def classify(curve: PlaneCurve, locus: SingularLocus | None = None) -> ClassificationReport:
    """Decide where a curve sits relative to the sharp bounds for
    unicuspidal curves of genus one.

    Verdicts: AMS when the strict transform has square 6 and the cusp
    tangent meets the curve only at the cusp; NON_AMS_MAX at the sharp
    value 3; NON_AMS below it; OUT_OF_SCOPE for everything that is not
    unicuspidal of genus one; ALARM when computed invariants land in a
    combination the bounds exclude (a would-be counterexample, worth
    rechecking by hand).

    Pass a precomputed singular locus to skip the search.
    """
    if locus is None:
        locus = find_rational_singular_points(curve)
    locus = locus.require_rational()
    d = curve.degree
    genus = (d - 1) * (d - 2) // 2
    for point, _ in locus.points:
        genus -= delta_invariant(germ_at(curve.poly, point))

    report = ClassificationReport(
        degree=d,
        genus=genus,
        singular_points=list(locus.points),
        unicuspidal=False,
    )
    if len(locus.points) != 1:
        report.notes.append(
            "needs exactly one singular point; found "
            f"{len(locus.points)}"
        )
        return report

    point, _ = locus.points[0]
    try:
        res = minimal_embedded_resolution(curve, point)
    except NotUnibranchError:
        report.notes.append("the singular point is not a cusp (several branches)")
        return report

    report.unicuspidal = True
    report.cusp = point
    report.multiplicity_sequence = res.multiplicity_sequence
    report.full_sequence = res.full_sequence
    report.strict_self_intersection = res.strict_self_intersection
    report.resolution = res

    tangent = tangent_line_at(curve, point)
    cycle = intersection_cycle(curve, tangent)
    contact_only = cycle.multiplicity_of(point) == d
    report.tangent_contact_only = contact_only

    if genus != 1:
        report.verdict = VERDICT_OUT_OF_SCOPE
        report.notes.append(f"genus {genus} is out of scope (need 1)")
        return report

    sq = res.strict_self_intersection
    if sq > 6 or sq in (4, 5):
        report.verdict = VERDICT_ALARM
        report.notes.append(
            f"self-intersection {sq} contradicts the sharp bounds (only <=3 or exactly 6 occur)"
        )
    elif sq == 6 and contact_only:
        report.verdict = VERDICT_AMS
    elif sq == 6:
        report.verdict = VERDICT_ALARM
        report.notes.append(
            "square 6 without full tangent contact contradicts the equality case"
        )
    elif contact_only:
        report.verdict = VERDICT_ALARM
        report.notes.append(
            f"full tangent contact forces square 6, but the square is {sq}"
        )
    elif sq == 3:
        report.verdict = VERDICT_NON_AMS_MAX
    else:
        report.verdict = VERDICT_NON_AMS
    return report
