"""Birational self-maps of the projective plane.

A map is a triple of coprime homogeneous polynomials of one degree.  The
module provides pullback and strict transform of curves, composition with
removal of the shared factor, involution testing, extension of (factored)
affine-plane automorphisms to maps fixing the line z = 0, a parameterization
checker, and the degree-five involution attached to the conic pencil that
the curve corpus is built from.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import PlaneCurve, make_curve, repeated_factor
from .poly import (
    ONE,
    Poly,
    X,
    Y,
    Z,
    exact_divide,
    gcd,
    poly_to_text,
    proportional,
    radical,
)

logger = logging.getLogger(__name__)


class CremonaError(ValueError):
    pass


@dataclass(frozen=True)
class CremonaMap:
    components: tuple[Poly, Poly, Poly]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def degree(self) -> int:
        return max(p.total_degree() for p in self.components if not p.is_zero())

    def apply(self, point: tuple[Fraction, Fraction, Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(p.evaluate(point) for p in self.components)

    def as_json(self) -> dict:
        return {
            "components": [poly_to_text(p) for p in self.components],
            "degree": self.degree,
            "warnings": list(self.warnings),
        }

    def __str__(self) -> str:
        return "(" + ", ".join(poly_to_text(p) for p in self.components) + ")"


def make_map(p1: Poly, p2: Poly, p3: Poly) -> CremonaMap:
    """Validate a component triple, dividing out any common factor."""
    comps = (p1, p2, p3)
    nonzero = [p for p in comps if not p.is_zero()]
    if not nonzero:
        raise CremonaError("all map components are zero")
    for p in nonzero:
        if not p.is_homogeneous():
            raise CremonaError(f"map component {poly_to_text(p)} is not homogeneous")
    warnings: list[str] = []
    g = nonzero[0]
    for p in nonzero[1:]:
        g = gcd(g, p)
    if g.total_degree() > 0:
        comps = tuple(
            Poly.zero() if p.is_zero() else exact_divide(p, g) for p in comps
        )
        warnings.append(f"divided out common factor {poly_to_text(g)}")
        nonzero = [p for p in comps if not p.is_zero()]
    degrees = {p.total_degree() for p in nonzero}
    if len(degrees) != 1:
        raise CremonaError(f"map components have different degrees {sorted(degrees)}")
    if len(nonzero) == 1 or all(proportional(nonzero[0], p) for p in nonzero[1:]):
        raise CremonaError("map components are proportional: the image is a point")
    return CremonaMap(comps, tuple(warnings))


def identity_map() -> CremonaMap:
    return CremonaMap((X, Y, Z))


def pullback(m: CremonaMap, curve: PlaneCurve) -> Poly:
    """Total transform: the curve equation composed with the map components."""
    return curve.poly.substitute(m.components)


def strict_transform(
    m: CremonaMap, curve: PlaneCurve, exceptional: list[PlaneCurve]
) -> PlaneCurve:
    """Pullback with every power of the declared exceptional curves removed.

    Any residual repeated factor (a missed exceptional curve) is dropped via
    the radical, with a logged warning.
    """
    total = pullback(m, curve)
    if total.is_zero():
        raise CremonaError("pullback vanished identically")
    for exc in exceptional:
        e = exc.poly
        while True:
            q = exact_divide(total, e)
            if q is None:
                break
            total = q
    if total.is_constant():
        raise CremonaError("curve is exceptional for the map: nothing remains")
    witness = repeated_factor(total)
    if witness is not None:
        logger.warning(
            "strict transform has a repeated factor dividing %s; taking the radical",
            poly_to_text(witness),
        )
        total = radical(total)
    return make_curve(total)


def compose_reduce(outer: CremonaMap, inner: CremonaMap) -> CremonaMap:
    """Componentwise composition with the shared factor divided out."""
    comps = tuple(p.substitute(inner.components) for p in outer.components)
    nonzero = [p for p in comps if not p.is_zero()]
    if not nonzero:
        raise CremonaError("composition degenerates: all components vanish")
    g = nonzero[0]
    for p in nonzero[1:]:
        g = gcd(g, p)
    if g.total_degree() > 0:
        comps = tuple(
            Poly.zero() if p.is_zero() else exact_divide(p, g) for p in comps
        )
    try:
        return make_map(*comps)
    except CremonaError as err:
        raise CremonaError(f"composition degenerates: {err}") from err


def is_involution(m: CremonaMap) -> bool:
    """True iff m composed with itself is the identity up to a scalar."""
    try:
        c = compose_reduce(m, m)
    except CremonaError:
        return False
    if c.degree != 1:
        return False
    p1, p2, p3 = c.components
    return p1 * Y == p2 * X and p2 * Z == p3 * Y and p1 * Z == p3 * X


def base_conic() -> Poly:
    """The conic xz - y^2 all corpus constructions are adapted to."""
    return X * Z - Y**2


def base_cubic(c) -> Poly:
    """The one-parameter nodal cubic (cx + y)(xz - y^2) + x^3."""
    c = Fraction(c)
    return (Poly.const(c) * X + Y) * base_conic() + X**3


def base_quintic(c) -> Poly:
    """The rational quintic with tenfold conic contact at (0 : 0 : 1)."""
    c = Fraction(c)
    f2 = base_conic()
    inner = Poly.const(2) * X**2 * (Poly.const(c) * X + Y) + (
        Poly.const(c * c) * X + Poly.const(2 * c) * Y + Z
    ) * f2
    return inner * f2 + X**5


def quintic_involution(c) -> CremonaMap:
    """The degree-five involution (x*f2^2, -f3*f2, f5) built on the conic.

    The constructor certifies that the conic pulls back to its own fifth
    power, i.e. the map restricts to an automorphism of the conic
    complement; a certificate failure raises ArithmeticError.
    """
    f2 = base_conic()
    f3 = base_cubic(c)
    f5 = base_quintic(c)
    m = make_map(X * f2**2, -f3 * f2, f5)
    if f2.substitute(m.components) != f2**5:
        raise ArithmeticError("involution certificate failed: conic is not preserved")
    return m


def _homogenize_affine(p: Poly, degree: int) -> Poly:
    out = Poly.zero()
    for (ex, ey, ez), coeff in p.terms.items():
        if ez:
            raise CremonaError("affine component unexpectedly mentions z")
        out = out + Poly.monomial((ex, ey, degree - ex - ey), coeff)
    return out


def extend_affine_automorphism(steps) -> CremonaMap:
    """Extend a factored affine-plane automorphism to a map fixing z = 0.

    Each step is a tuple:
      ("swap",)                     exchange the coordinates
      ("affine", a, b, c, d, e, f)  (x, y) -> (ax + by + e, cx + dy + f)
      ("shear", p)                  (x, y) -> (x, y + p(x)), p a Poly in x

    Steps compose in the order given.  The factored form certifies that the
    map is invertible; a non-invertible linear part or a shear in the wrong
    variable is rejected.
    """
    cx, cy = X, Y
    for step in steps:
        if not step:
            raise CremonaError("empty automorphism step")
        tag = step[0]
        if tag == "swap":
            if len(step) != 1:
                raise CremonaError("swap step takes no arguments")
            cx, cy = cy, cx
        elif tag == "affine":
            if len(step) != 7:
                raise CremonaError("affine step needs six coefficients")
            a, b, c, d, e, f = (Fraction(v) for v in step[1:])
            if a * d - b * c == 0:
                raise CremonaError("affine step is not invertible")
            cx, cy = (
                Poly.const(a) * cx + Poly.const(b) * cy + Poly.const(e),
                Poly.const(c) * cx + Poly.const(d) * cy + Poly.const(f),
            )
        elif tag == "shear":
            if len(step) != 2 or not isinstance(step[1], Poly):
                raise CremonaError("shear step needs one polynomial argument")
            p = step[1]
            if not p.variables() <= {0}:
                raise CremonaError("shear polynomial must depend on x only")
            cy = cy + p.substitute((cx, Y, Z))
            # cx unchanged
        else:
            raise CremonaError(f"unknown automorphism step {tag!r}")
    degree = max(cx.total_degree(), cy.total_degree(), 1)
    return make_map(
        _homogenize_affine(cx, degree),
        _homogenize_affine(cy, degree),
        Z**degree,
    )


def check_parameterization(curve: PlaneCurve, param: tuple[Poly, Poly, Poly]) -> bool:
    """True iff the (s, t)-parameterization lies on the curve identically.

    The three parameterizing forms live in the first two variable slots
    (s, t) and must be homogeneous of one shared degree.
    """
    if len(param) != 3:
        raise CremonaError("parameterization needs exactly three forms")
    degrees = set()
    for p in param:
        if p.is_zero():
            continue
        if not p.variables() <= {0, 1}:
            raise CremonaError("parameterizing forms must use the two variables s, t only")
        if not p.is_homogeneous():
            raise CremonaError(f"parameterizing form {poly_to_text(p)} is not homogeneous")
        degrees.add(p.total_degree())
    if len(degrees) != 1:
        raise CremonaError(f"parameterizing forms have mismatched degrees {sorted(degrees)}")
    return curve.poly.substitute(tuple(param)).is_zero()
