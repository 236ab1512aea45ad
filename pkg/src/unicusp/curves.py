"""Projective plane curves over Q: singular loci and intersection theory.

Curves are squarefree homogeneous polynomials in x, y, z up to scalar.
Points are exact rational projective points.  The singular-locus search is
certified: eliminating y from pairs of partial derivatives yields binary
forms in (x, z) whose rational common roots give all candidate lines;
candidates that cannot be excluded over Q are either separated by a
deterministic sequence of unimodular coordinate shears or reported as
structured blockers naming the offending irreducible factor, never
silently dropped.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import uniroots
from .poly import (
    ONE,
    Poly,
    X,
    Y,
    exact_divide,
    gcd,
    normalized,
    squarefree_witness,
    to_univariate,
)


class CurveError(ValueError):
    """Invalid curve input or operation precondition."""


class IrrationalLocusError(CurveError):
    """An operation needed the full singular locus but part of it lives in
    an extension field; carries the blocking factors."""

    def __init__(self, message: str, blockers: "list[ExtensionFieldSingularity]"):
        super().__init__(message)
        self.blockers = blockers


def _fr_json(v: Fraction):
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class ProjPoint:
    """Rational projective point, normalized so its last nonzero
    coordinate equals 1."""

    x: Fraction
    y: Fraction
    z: Fraction

    @staticmethod
    def of(x, y, z) -> "ProjPoint":
        coords = [Fraction(x), Fraction(y), Fraction(z)]
        last = next((i for i in (2, 1, 0) if coords[i] != 0), None)
        if last is None:
            raise CurveError("(0 : 0 : 0) is not a projective point")
        s = coords[last]
        return ProjPoint(coords[0] / s, coords[1] / s, coords[2] / s)

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def as_json(self) -> list:
        return [_fr_json(c) for c in self.coords()]

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords()) + ")"


@dataclass(frozen=True)
class PlaneCurve:
    """Reduced projective plane curve, stored in normalized form."""

    poly: Poly
    degree: int

    def __str__(self) -> str:
        return str(self.poly)


def make_curve(p: Poly) -> PlaneCurve:
    """Validate and wrap a defining polynomial.

    Requires a nonzero homogeneous squarefree polynomial of degree >= 1;
    failures raise CurveError, and the squarefree failure names a repeated
    factor as a witness.
    """
    if p.is_zero():
        raise CurveError("the zero polynomial defines no curve")
    if not p.is_homogeneous():
        raise CurveError("defining polynomial must be homogeneous")
    d = p.total_degree()
    if d < 1:
        raise CurveError("a curve must have degree at least 1")
    witness = repeated_factor(p)
    if witness is not None:
        raise CurveError(f"polynomial is not squarefree; repeated part divides {witness}")
    return PlaneCurve(normalized(p), d)


def repeated_factor(p: Poly) -> Poly | None:
    """None when p is squarefree, otherwise a nonconstant witness dividing
    the repeated part.  Fast certified check by evaluation; the exact gcd
    witness is only computed once a repeat is already certain.
    """
    work = p
    for i in range(3):
        k = min(e[i] for e in work.terms)
        if k >= 2:
            return Poly.variable(i)
        if k == 1:
            q = exact_divide(work, Poly.variable(i))
            assert q is not None
            work = q
    # Now no variable divides work; dehomogenize z -> 1 (harmless: the z
    # factor, if any, was stripped above, so distinct factors stay distinct).
    q = work.substitute((X, Y, ONE))
    if q.is_constant():
        return None
    dx = q.degree_in(0)
    if dx == 0:
        coeffs = uniroots.clear_denominators(to_univariate(q, 1))
        der = uniroots.derivative(coeffs)
        if uniroots.deg(uniroots.gcd_int(coeffs, der)) > 0:
            return normalized(squarefree_witness(p))
        return None
    cont_terms = list(q.coeffs_wrt(0).values())
    cont = cont_terms[0]
    for extra in cont_terms[1:]:
        cont = gcd(cont, extra)
        if cont == ONE:
            break
    if not cont.is_constant():
        cs = uniroots.clear_denominators(to_univariate(cont, 1))
        if uniroots.deg(uniroots.gcd_int(cs, uniroots.derivative(cs))) > 0:
            return normalized(squarefree_witness(p))
        pq = exact_divide(q, cont)
        assert pq is not None
        q = pq
    qx = q.partial(0)
    # Res_x(q, qx) is identically zero iff q has a repeated factor of
    # positive x-degree; certify by evaluating y until the verdict is sure.
    lead = q.coeffs_wrt(0)[q.degree_in(0)]
    dy = max(v.degree_in(1) for v in q.coeffs_wrt(0).values())
    bound = (2 * q.degree_in(0) - 1) * dy + 1
    zeros = 0
    t = 0
    while zeros <= bound:
        for cand in ((t, -t) if t else (0,)):
            if lead.evaluate((0, cand, 0)) == 0:
                continue
            a = [Fraction(c) for c in _eval_y(q, cand)]
            b = [Fraction(c) for c in _eval_y(qx, cand)]
            if uniroots.resultant_q(a, b) != 0:
                return None
            zeros += 1
            if zeros > bound:
                break
        t += 1
    return normalized(squarefree_witness(p))


def _eval_y(q: Poly, t: int) -> list[Fraction]:
    """Coefficient list in x of a bivariate (x, y) polynomial at y = t."""
    out = [Fraction(0)] * (q.degree_in(0) + 1)
    for e, c in q.terms.items():
        out[e[0]] += c * Fraction(t) ** e[1]
    return out


# -- local charts and germs ----------------------------------------------


def chart_of(point: ProjPoint) -> tuple[int, int]:
    """Indices of the two affine coordinates in the standard chart at the
    point (the chart of its normalization coordinate)."""
    if point.z == 1:
        return (0, 1)
    if point.y == 1:
        return (0, 2)
    return (1, 2)


def germ_at(p: Poly, point: ProjPoint) -> Poly:
    """Bivariate local equation at the point, centered at the origin.

    Slot 0 carries the first chart variable, slot 1 the second (see
    chart_of); slot 2 is unused.
    """
    i, j = chart_of(point)
    coords = point.coords()
    imgs: list[Poly] = [ONE, ONE, ONE]
    imgs[i] = X + coords[i]
    imgs[j] = Y + coords[j]
    imgs[3 - i - j] = ONE
    return p.substitute((imgs[0], imgs[1], imgs[2]))


def multiplicity_at(curve: PlaneCurve, point: ProjPoint) -> int:
    """Multiplicity of the curve at the point (0 when off the curve)."""
    g = germ_at(curve.poly, point)
    if g.is_zero():
        raise CurveError("zero germ: the input is not a reduced curve")
    return min(a + b + c for (a, b, c) in g.terms)


def tangent_cone_at(curve: PlaneCurve, point: ProjPoint) -> Poly:
    """Lowest-degree part of the local equation, written in the two chart
    variables of the point (normalized)."""
    g = germ_at(curve.poly, point)
    m = min(a + b + c for (a, b, c) in g.terms)
    if m == 0:
        raise CurveError("point does not lie on the curve")
    cone = g.homogeneous_part(m)
    i, j = chart_of(point)
    return normalized(cone.substitute((Poly.variable(i), Poly.variable(j), ONE)))


def tangent_line_at(curve: PlaneCurve, point: ProjPoint) -> PlaneCurve:
    """The unique tangent line at a point whose tangent cone is a power of
    one line (smooth points and cusp-like points); errors otherwise."""
    g = germ_at(curve.poly, point)
    m = min(a + b + c for (a, b, c) in g.terms)
    if m == 0:
        raise CurveError("point does not lie on the curve")
    cone = g.homogeneous_part(m)
    w = squarefree_witness(cone)
    line = cone if w.is_constant() else exact_divide(cone, w)
    assert line is not None
    if line.total_degree() != 1:
        raise CurveError("tangent cone is not a power of a single line")
    if m >= 2 and not (line ** m) * cone.lead_coeff() == cone * (line ** m).lead_coeff():
        raise CurveError("tangent cone is not a power of a single line")
    # lift the affine linear form a*u + b*v to a line in the plane
    i, j = chart_of(point)
    a = line.terms.get((1, 0, 0), Fraction(0))
    b = line.terms.get((0, 1, 0), Fraction(0))
    coords = point.coords()
    vi, vj, vk = Poly.variable(i), Poly.variable(j), Poly.variable(3 - i - j)
    form = a * (vi - coords[i] * vk) + b * (vj - coords[j] * vk)
    return make_curve(form)


# -- singular locus -------------------------------------------------------


@dataclass(frozen=True)
class ExtensionFieldSingularity:
    """A potential singular locus component that is not rational: the
    irreducible obstruction factor and where it arose."""

    factor: Poly
    context: str

    def as_json(self) -> dict:
        return {"factor": str(self.factor), "context": self.context}


@dataclass
class SingularLocus:
    """Result of the rational singular point search: certified points with
    multiplicities, plus blockers for any part of the locus that could not
    be decided over Q."""

    points: list[tuple[ProjPoint, int]]
    blockers: list[ExtensionFieldSingularity]

    def require_rational(self) -> "SingularLocus":
        if self.blockers:
            raise IrrationalLocusError(
                "singular locus has components outside Q: "
                + "; ".join(str(b.factor) for b in self.blockers),
                self.blockers,
            )
        return self


_SHEARS: list[tuple[tuple[int, int, int], ...]] = [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 1, 0), (0, 1, 0), (0, 1, 1)),
    ((1, -1, 0), (0, 1, 0), (0, 1, 1)),
    ((1, 2, 0), (0, 1, 0), (0, -1, 1)),
    ((1, 0, 1), (1, 1, 0), (0, 0, 1)),
    ((1, 3, 0), (0, 1, 0), (0, 2, 1)),
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
]


def _apply_matrix(p: Poly, m: tuple[tuple[int, int, int], ...]) -> Poly:
    imgs = tuple(
        Poly({(1, 0, 0): Fraction(row[0]), (0, 1, 0): Fraction(row[1]), (0, 0, 1): Fraction(row[2])})
        for row in m
    )
    return p.substitute(imgs)  # type: ignore[arg-type]


def _map_point(m: tuple[tuple[int, int, int], ...], q: ProjPoint) -> ProjPoint:
    c = q.coords()
    img = [sum(Fraction(m[r][k]) * c[k] for k in range(3)) for r in range(3)]
    return ProjPoint.of(*img)


def find_rational_singular_points(curve: PlaneCurve) -> SingularLocus:
    """All rational singular points with multiplicities.

    Works projectively: rational roots of the gcd of two (x, z)-eliminants
    of the partial derivatives give candidate lines, candidates are decided
    by exact univariate gcds in y, and undecided factors trigger a retry in
    sheared coordinates.  Whatever survives every shear is reported as a
    blocker rather than ignored.
    """
    if curve.degree == 1:
        return SingularLocus([], [])
    best: SingularLocus | None = None
    for m in _SHEARS:
        g = _apply_matrix(curve.poly, m)
        raw = _singular_search(g)
        mapped = SingularLocus(
            [(_map_point(m, q), k) for q, k in raw.points], raw.blockers
        )
        if not raw.blockers:
            return mapped
        if best is None:
            best = mapped
    assert best is not None
    return best


def _singular_search(f: Poly) -> SingularLocus:
    partials = [f.partial(i) for i in range(3)]
    live = [p for p in partials if not p.is_zero()]
    if len(live) < 2:
        # f uses a single variable; squarefree => a line, handled earlier.
        raise CurveError("degenerate curve: fewer than two nonzero partials")

    elims: list[Poly] = []
    for a, b in ((live[0], live[1]), (live[0], live[-1]), (live[1], live[-1])):
        if a is b:
            continue
        e = _eliminant_y(a, b)
        if e is not None and not e.is_zero():
            elims.append(e)
        if len(elims) == 2:
            break
    if not elims:
        raise CurveError("partial derivatives are pairwise degenerate; cannot certify locus")

    blockers: list[ExtensionFieldSingularity] = []
    # common rational (x : z) directions of all eliminants
    cands: list[tuple[Fraction, Fraction]] = []
    glist = [uniroots.clear_denominators(_binary_to_uni(e)) for e in elims]
    gg = glist[0]
    for extra in glist[1:]:
        gg = uniroots.gcd_int(gg, extra)
    if uniroots.deg(gg) > 0 or all(_infinity_root(e) for e in elims):
        roots, leftover = uniroots.rational_roots_int(gg)
        for r in roots:
            cands.append((r, Fraction(1)))
        if all(_infinity_root(e) for e in elims):
            cands.append((Fraction(1), Fraction(0)))
        if uniroots.deg(leftover) > 0:
            blockers.append(
                ExtensionFieldSingularity(
                    _uni_to_binary(leftover), "common eliminant factor without rational roots"
                )
            )

    points: list[tuple[ProjPoint, int]] = []
    for x0, z0 in cands:
        found, blk = _points_on_line(f, live, x0, z0)
        points.extend(found)
        blockers.extend(blk)
    # the single point not covered by (x : z) candidates
    if all(p.evaluate((0, 1, 0)) == 0 for p in live):
        points.append(((ProjPoint.of(0, 1, 0)), 0))

    out = []
    for q, _ in points:
        m = _mult_of_poly_at(f, q)
        if m >= 2:
            out.append((q, m))
    out.sort(key=lambda t: t[0].coords())
    return SingularLocus(out, blockers)


def _eliminant_y(a: Poly, b: Poly) -> Poly | None:
    from .poly import resultant_wrt

    if a.degree_in(1) == 0:
        return a
    if b.degree_in(1) == 0:
        return b
    r = resultant_wrt(a, b, 1)
    return None if r.is_zero() else r


def _binary_to_uni(e: Poly) -> list[Fraction]:
    """Coefficients of e(t, 1) for a binary form in (x, z)."""
    if e.degree_in(1) != 0:
        raise CurveError("internal: eliminant involves y")
    out = [Fraction(0)] * (e.degree_in(0) + 1)
    for (a, _, _), c in e.terms.items():
        out[a] += c
    return out


def _infinity_root(e: Poly) -> bool:
    """True when (1 : 0) is a root of the binary form e(x, z)."""
    d = e.total_degree()
    return e.terms.get((d, 0, 0), Fraction(0)) == 0


def _uni_to_binary(coeffs: list[int]) -> Poly:
    d = uniroots.deg(coeffs)
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            terms[(i, 0, d - i)] = Fraction(c)
    return normalized(Poly(terms))


def _points_on_line(
    f: Poly, live: list[Poly], x0: Fraction, z0: Fraction
) -> tuple[list[tuple[ProjPoint, int]], list[ExtensionFieldSingularity]]:
    """Rational singular points on the line of all (x0 : y : z0)."""
    evals = []
    for p in live:
        h = _restrict_to_pencil_line(p, x0, z0)
        if any(c != 0 for c in h):
            evals.append(h)
    if not evals:
        raise CurveError("a whole line of singular points: input cannot be squarefree")
    g = uniroots.clear_denominators(evals[0])
    for extra in evals[1:]:
        g = uniroots.gcd_int(g, uniroots.clear_denominators(extra))
        if uniroots.deg(g) == 0:
            break
    if uniroots.deg(g) == 0:
        return [], []
    roots, leftover = uniroots.rational_roots_int(g)
    points = [(ProjPoint.of(x0, y0, z0), 0) for y0 in roots]
    blockers = []
    if uniroots.deg(leftover) > 0:
        blockers.append(
            ExtensionFieldSingularity(
                uniroots_poly_in_y(leftover),
                f"irrational singular y-locus on the line (x : z) = ({x0} : {z0})",
            )
        )
    return points, blockers


def uniroots_poly_in_y(coeffs: list[int]) -> Poly:
    from .poly import from_univariate

    return normalized(from_univariate([Fraction(c) for c in coeffs], 1))


def _restrict_to_pencil_line(p: Poly, x0: Fraction, z0: Fraction) -> list[Fraction]:
    """Coefficient list in y of p(x0, y, z0)."""
    out = [Fraction(0)] * (p.degree_in(1) + 1)
    for (a, b, c), k in p.terms.items():
        out[b] += k * x0 ** a * z0 ** c
    return out


def _mult_of_poly_at(f: Poly, q: ProjPoint) -> int:
    g = germ_at(f, q)
    if g.is_zero():
        return -1
    return min(a + b + c for (a, b, c) in g.terms)


def is_smooth(curve: PlaneCurve) -> bool:
    """True when the curve has no singular points over any extension of Q.

    Raises IrrationalLocusError when part of the locus cannot be decided
    rationally even after shearing.
    """
    locus = find_rational_singular_points(curve)
    if locus.points:
        return False
    if locus.blockers:
        raise IrrationalLocusError(
            "cannot certify smoothness: undecided locus "
            + "; ".join(str(b.factor) for b in locus.blockers),
            locus.blockers,
        )
    return True


# -- intersection theory --------------------------------------------------


def intersection_multiplicity(c1: PlaneCurve, c2: PlaneCurve, point: ProjPoint) -> int:
    """Local intersection number of two curves without a common component
    at a rational point (0 when the point is not a common point)."""
    if not gcd(c1.poly, c2.poly).is_constant():
        raise CurveError("curves share a component; intersection numbers are undefined")
    f = germ_at(c1.poly, point)
    g = germ_at(c2.poly, point)
    return _fulton(f, g)


def _fulton(f: Poly, g: Poly) -> int:
    """Local intersection number at the origin of two coprime bivariate
    germs, by the classical reduction: trade y-divisible parts for orders
    along y = 0 and shrink degrees with exact row reductions."""
    total = 0
    while True:
        if f.terms.get((0, 0, 0)) or g.terms.get((0, 0, 0)):
            return total
        if f.is_zero() or g.is_zero():
            raise CurveError("intersection number with a zero germ")
        a = _on_axis(f)
        b = _on_axis(g)
        if not a and not b:
            raise CurveError("germs share the component y = 0")
        if not a:
            q = exact_divide(f, Y)
            assert q is not None
            f = q
            total += min(e[0] for e in g.terms if e[1] == 0)
            continue
        if not b:
            q = exact_divide(g, Y)
            assert q is not None
            g = q
            total += min(e[0] for e in f.terms if e[1] == 0)
            continue
        da, db = uniroots.deg(a), uniroots.deg(b)
        if da > db:
            f, g = g, f
            a, b = b, a
            da, db = db, da
        shift = Poly.monomial((db - da, 0, 0))
        g = g * a[da] - f * b[db] * shift


def _on_axis(p: Poly) -> list[Fraction]:
    """Coefficient list of p(x, 0)."""
    d = p.degree_in(0)
    out = [Fraction(0)] * (d + 1)
    for (a, b, _), c in p.terms.items():
        if b == 0:
            out[a] += c
    return uniroots.trim(out)


@dataclass
class IntersectionCycle:
    """Rational part of an intersection cycle: located points with local
    numbers, the full Bezout total, and the unlocated residual."""

    points: list[tuple[ProjPoint, int]]
    residual: int
    bezout: int

    def as_json(self) -> dict:
        return {
            "points": [{"P": p.as_json(), "m": m} for p, m in self.points],
            "residual": self.residual,
            "bezout": self.bezout,
        }

    def multiplicity_of(self, point: ProjPoint) -> int:
        for p, m in self.points:
            if p == point:
                return m
        return 0


def intersection_cycle(c1: PlaneCurve, c2: PlaneCurve) -> IntersectionCycle:
    """Locate all rational intersection points with local multiplicities.

    The sum of located numbers never exceeds the Bezout total; whatever
    lives in extension fields stays in the residual.
    """
    f, g = c1.poly, c2.poly
    if not gcd(f, g).is_constant():
        raise CurveError("curves share a component; the intersection cycle is not finite")
    bez = c1.degree * c2.degree
    e = _eliminant_y(f, g)
    assert e is not None, "coprime curves must have a nonzero eliminant"
    coeffs = uniroots.clear_denominators(_binary_to_uni(e))
    roots, _ = uniroots.rational_roots_int(coeffs)
    cands = [(r, Fraction(1)) for r in roots]
    if _infinity_root(e):
        cands.append((Fraction(1), Fraction(0)))
    points: list[tuple[ProjPoint, int]] = []
    for x0, z0 in cands:
        h1 = _restrict_to_pencil_line(f, x0, z0)
        h2 = _restrict_to_pencil_line(g, x0, z0)
        z1 = all(c == 0 for c in h1)
        z2 = all(c == 0 for c in h2)
        if z1 and z2:
            raise CurveError("curves share the line of a candidate direction")
        if z1 or z2:
            base = uniroots.clear_denominators(h2 if z1 else h1)
            ys = list(uniroots.rational_roots_int(base)[0])
        else:
            g_y = uniroots.gcd_int(
                uniroots.clear_denominators(h1), uniroots.clear_denominators(h2)
            )
            ys = list(uniroots.rational_roots_int(g_y)[0]) if uniroots.deg(g_y) > 0 else []
        for y0 in ys:
            points.append((ProjPoint.of(x0, y0, z0), 0))
    if f.evaluate((0, 1, 0)) == 0 and g.evaluate((0, 1, 0)) == 0:
        points.append((ProjPoint.of(0, 1, 0), 0))
    located = []
    for q, _ in points:
        m = _fulton(germ_at(f, q), germ_at(g, q))
        if m > 0:
            located.append((q, m))
    located.sort(key=lambda t: t[0].coords())
    total = sum(m for _, m in located)
    if total > bez:
        raise CurveError("located intersection mass exceeds the Bezout bound")
    return IntersectionCycle(located, bez - total, bez)
