"""Exact sparse polynomial arithmetic over the rationals in x, y, z.

A polynomial is a map from exponent triples (a, b, c) to nonzero Fraction
coefficients, standing for  sum coeff * x^a * y^b * z^c.  Values are
immutable by convention: no operation mutates its arguments, so results can
be shared freely.  The term order used for leading terms, canonical signs
and printing is graded lexicographic with x > y > z.
"""

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping

Exponents = tuple[int, int, int]

VAR_NAMES = ("x", "y", "z")


def _grlex_key(e: Exponents) -> tuple[int, int, int]:
    # Two triples with equal total degree, equal x and equal y exponents are
    # identical, so this key is a complete graded-lex comparison key.
    return (e[0] + e[1] + e[2], e[0], e[1])


class Poly:
    """Sparse exact polynomial in Q[x, y, z]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, Fraction | int] | None = None):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != 3 or any((not isinstance(k, int)) or k < 0 for k in e):
                    raise ValueError(f"bad exponent triple {e!r}")
                c = Fraction(c)
                if c:
                    clean[(e[0], e[1], e[2])] = c
        self._terms = clean
        self._hash: int | None = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(c: Fraction | int) -> "Poly":
        return Poly({(0, 0, 0): Fraction(c)})

    @staticmethod
    def variable(i: int) -> "Poly":
        e = [0, 0, 0]
        e[i] = 1
        return Poly({(e[0], e[1], e[2]): Fraction(1)})

    @staticmethod
    def monomial(e: Exponents, c: Fraction | int = 1) -> "Poly":
        return Poly({e: Fraction(c)})

    # -- basic queries -------------------------------------------------

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0, 0)}

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms[(0, 0, 0)]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(a + b + c for (a, b, c) in self._terms)

    def degree_in(self, i: int) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def variables(self) -> set[int]:
        used = set()
        for e in self._terms:
            for i in range(3):
                if e[i]:
                    used.add(i)
        return used

    def is_homogeneous(self) -> bool:
        if not self._terms:
            return True
        degs = {a + b + c for (a, b, c) in self._terms}
        return len(degs) == 1

    def lead_exponents(self) -> Exponents:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=_grlex_key)

    def lead_coeff(self) -> Fraction:
        return self._terms[self.lead_exponents()]

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- equality / hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(v: "Poly | Fraction | int") -> "Poly":
        if isinstance(v, Poly):
            return v
        return Poly.const(v)

    def __add__(self, other: "Poly | Fraction | int") -> "Poly":
        other = Poly._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Poly.__new__(Poly)
        p._terms = out
        p._hash = None
        return p

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p._terms = {e: -c for e, c in self._terms.items()}
        p._hash = None
        return p

    def __sub__(self, other: "Poly | Fraction | int") -> "Poly":
        return self + (-Poly._coerce(other))

    def __rsub__(self, other: "Poly | Fraction | int") -> "Poly":
        return Poly._coerce(other) + (-self)

    def __mul__(self, other: "Poly | Fraction | int") -> "Poly":
        if isinstance(other, (int, Fraction)):
            c0 = Fraction(other)
            if not c0:
                return Poly.zero()
            p = Poly.__new__(Poly)
            p._terms = {e: c * c0 for e, c in self._terms.items()}
            p._hash = None
            return p
        out: dict[Exponents, Fraction] = {}
        for (a1, b1, c1), k1 in self._terms.items():
            for (a2, b2, c2), k2 in other._terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                s = out.get(e, Fraction(0)) + k1 * k2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        p = Poly.__new__(Poly)
        p._terms = out
        p._hash = None
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and evaluation --------------------------------------

    def partial(self, i: int) -> "Poly":
        out: dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[(ne[0], ne[1], ne[2])] = c * e[i]
        p = Poly.__new__(Poly)
        p._terms = out
        p._hash = None
        return p

    def substitute(self, images: "tuple[Poly, Poly, Poly]") -> "Poly":
        """Evaluate at a triple of polynomials (ring homomorphism)."""
        pows: list[list[Poly]] = [[Poly.const(1)], [Poly.const(1)], [Poly.const(1)]]
        for i in range(3):
            d = self.degree_in(i)
            for _ in range(d):
                pows[i].append(pows[i][-1] * images[i])
        acc = Poly.zero()
        for (a, b, c), k in self._terms.items():
            acc = acc + pows[0][a] * pows[1][b] * pows[2][c] * k
        return acc

    def evaluate(self, point: Iterable[Fraction | int]) -> Fraction:
        xs = [Fraction(v) for v in point]
        total = Fraction(0)
        for (a, b, c), k in self._terms.items():
            total += k * xs[0] ** a * xs[1] ** b * xs[2] ** c
        return total

    def homogeneous_part(self, d: int) -> "Poly":
        p = Poly.__new__(Poly)
        p._terms = {e: c for e, c in self._terms.items() if e[0] + e[1] + e[2] == d}
        p._hash = None
        return p

    def coeffs_wrt(self, i: int) -> dict[int, "Poly"]:
        """Coefficients as polynomials in the other two variables."""
        out: dict[int, dict[Exponents, Fraction]] = {}
        for e, c in self._terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[(ne[0], ne[1], ne[2])] = c
        result = {}
        for k, terms in out.items():
            p = Poly.__new__(Poly)
            p._terms = terms
            p._hash = None
            result[k] = p
        return result

    def __str__(self) -> str:
        return poly_to_text(self)

    def __repr__(self) -> str:
        return f"Poly({poly_to_text(self)})"


X = Poly.variable(0)
Y = Poly.variable(1)
Z = Poly.variable(2)
ONE = Poly.const(1)


# -- printing ----------------------------------------------------------


def _monomial_text(e: Exponents) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(VAR_NAMES[i])
        elif k > 1:
            parts.append(f"{VAR_NAMES[i]}^{k}")
    return "*".join(parts)


def poly_to_text(p: Poly) -> str:
    """Canonical text: descending graded-lex, explicit '*' and '^'.

    The output always re-parses to the same polynomial; a negative leading
    coefficient is written as an explicit rational factor (e.g. "-1*x")
    because the grammar has no unary minus.
    """
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_text(e)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            if c < 0:
                body = f"-{mag}*{mono}" if mono else f"-{mag}"
            pieces.append(body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


# -- content, normalization, divisibility ------------------------------


def content(p: Poly) -> Fraction:
    """Positive rational c such that p/c has coprime integer coefficients."""
    if p.is_zero():
        return Fraction(0)
    num = 0
    den = 1
    for c in p.terms.values():
        num = _int_gcd(num, abs(c.numerator))
        den = den * c.denominator // _int_gcd(den, c.denominator)
    return Fraction(num, den)


def normalized(p: Poly) -> Poly:
    """Scale to content 1 with positive graded-lex leading coefficient."""
    if p.is_zero():
        return p
    c = content(p)
    if p.lead_coeff() < 0:
        c = -c
    return p * (1 / c)


def proportional(p: Poly, q: Poly) -> bool:
    """True iff p = c*q for some nonzero rational c (or both are zero)."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    ep, eq = p.lead_exponents(), q.lead_exponents()
    if ep != eq:
        return False
    return p * q.lead_coeff() == q * p.lead_coeff()


def exact_divide(p: Poly, q: Poly) -> Poly | None:
    """Return r with q*r = p exactly, or None when q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return Poly.zero()
    if q.is_constant():
        return p * (1 / q.constant_value())
    qe = q.lead_exponents()
    qc = q.terms[qe]
    rem = dict(p.terms)
    quot: dict[Exponents, Fraction] = {}
    while rem:
        e = max(rem, key=_grlex_key)
        if e[0] < qe[0] or e[1] < qe[1] or e[2] < qe[2]:
            return None
        me = (e[0] - qe[0], e[1] - qe[1], e[2] - qe[2])
        mc = rem[e] / qc
        quot[me] = mc
        for (a, b, c), k in q.terms.items():
            t = (a + me[0], b + me[1], c + me[2])
            s = rem.get(t, Fraction(0)) - k * mc
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    out = Poly.__new__(Poly)
    out._terms = quot
    out._hash = None
    return out


def _lc_wrt(p: Poly, v: int) -> Poly:
    d = p.degree_in(v)
    return p.coeffs_wrt(v).get(d, Poly.zero())


def prem(p: Poly, q: Poly, v: int) -> Poly:
    """Pseudo-remainder of p by q with respect to variable v.

    Returns lc_v(q)^(deg_v p - deg_v q + 1) * p  mod  q, computed without
    fractions in the coefficient ring.
    """
    dp, dq = p.degree_in(v), q.degree_in(v)
    if dq < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if dp < dq:
        return p
    lcq = _lc_wrt(q, v)
    e = dp - dq + 1
    r = p
    while not r.is_zero() and r.degree_in(v) >= dq:
        dr = r.degree_in(v)
        lcr = _lc_wrt(r, v)
        shift = Poly.monomial(tuple(dr - dq if i == v else 0 for i in range(3)))  # type: ignore[arg-type]
        r = r * lcq - lcr * shift * q
        e -= 1
    if e > 0:
        r = r * lcq ** e
    return r


def gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor in Q[x,y,z], normalized (content 1,
    positive graded-lex leading coefficient).

    Contents are split off recursively and the primitive parts run through
    a subresultant pseudo-remainder sequence on the variable of highest
    degree.
    """
    if p.is_zero():
        return normalized(q)
    if q.is_zero():
        return normalized(p)
    if p.is_constant() or q.is_constant():
        return ONE
    used = p.variables() | q.variables()
    main = max(used, key=lambda i: (max(p.degree_in(i), q.degree_in(i)), -i))
    if p.degree_in(main) < q.degree_in(main):
        p, q = q, p
    cont_p, pp_p = _content_and_primitive(p, main)
    cont_q, pp_q = _content_and_primitive(q, main)
    cont = gcd(cont_p, cont_q)
    return normalized(cont * _prs_gcd(pp_p, pp_q, main))


def _content_and_primitive(p: Poly, v: int) -> tuple[Poly, Poly]:
    coeffs = list(p.coeffs_wrt(v).values())
    c = coeffs[0]
    for extra in coeffs[1:]:
        c = gcd(c, extra)
        if c == ONE:
            break
    pp = exact_divide(p, c)
    assert pp is not None
    return c, pp


def _prs_gcd(a: Poly, b: Poly, v: int) -> Poly:
    """Subresultant PRS gcd of primitive inputs, deg_v(a) >= deg_v(b)."""
    if b.degree_in(v) == 0:
        return ONE
    g = ONE
    h = ONE
    while True:
        d = a.degree_in(v) - b.degree_in(v)
        r = prem(a, b, v)
        if r.is_zero():
            break
        if r.degree_in(v) == 0:
            return ONE
        denom = g * h ** d
        nxt = exact_divide(r, denom)
        assert nxt is not None, "subresultant division must be exact"
        a, b = b, nxt
        g = _lc_wrt(a, v)
        if d > 0:
            hd = exact_divide(g ** d, h ** (d - 1))
            assert hd is not None
            h = hd
    _, pp = _content_and_primitive(b, v)
    return pp


def squarefree_witness(p: Poly) -> Poly:
    """gcd(p, all partial derivatives): constant iff p is squarefree."""
    w = p
    for i in range(3):
        d = p.partial(i)
        if not d.is_zero():
            w = gcd(w, d)
            if w == ONE:
                break
    return w


def radical(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of p."""
    w = squarefree_witness(p)
    if w.is_constant():
        return normalized(p)
    r = exact_divide(p, w)
    assert r is not None
    return normalized(r)


# -- degree report ------------------------------------------------------


def degree_info(p: Poly) -> dict:
    """Total and per-variable degrees plus homogeneity; errors on zero."""
    if p.is_zero():
        raise ValueError("degree of the zero polynomial is undefined")
    return {
        "total": p.total_degree(),
        "x": p.degree_in(0),
        "y": p.degree_in(1),
        "z": p.degree_in(2),
        "homogeneous": p.is_homogeneous(),
    }


# -- univariate conversions ---------------------------------------------


def to_univariate(p: Poly, v: int) -> list[Fraction]:
    """Coefficient list (low to high) of a polynomial using only variable v."""
    extra = p.variables() - {v}
    if extra:
        raise ValueError(f"polynomial involves {[VAR_NAMES[i] for i in sorted(extra)]}")
    out = [Fraction(0)] * (max(p.degree_in(v), 0) + 1)
    for e, c in p.terms.items():
        out[e[v]] = c
    return out


def from_univariate(coeffs: Iterable[Fraction | int], v: int) -> Poly:
    terms: dict[Exponents, Fraction] = {}
    for k, c in enumerate(coeffs):
        c = Fraction(c)
        if c:
            e = [0, 0, 0]
            e[v] = k
            terms[(e[0], e[1], e[2])] = c
    return Poly(terms)


# -- resultants ---------------------------------------------------------


def _sylvester(p: Poly, q: Poly, v: int) -> list[list[Poly]]:
    m, n = p.degree_in(v), q.degree_in(v)
    pc = p.coeffs_wrt(v)
    qc = q.coeffs_wrt(v)
    size = m + n
    rows = []
    for i in range(n):
        row = [Poly.zero()] * size
        for k in range(m + 1):
            row[i + k] = pc.get(m - k, Poly.zero())
        rows.append(row)
    for i in range(m):
        row = [Poly.zero()] * size
        for k in range(n + 1):
            row[i + k] = qc.get(n - k, Poly.zero())
        rows.append(row)
    return rows


def _bareiss_det(mat: list[list[Poly]]) -> Poly:
    """Fraction-free determinant of a matrix of polynomials."""
    n = len(mat)
    if n == 0:
        return ONE
    m = [row[:] for row in mat]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot_row is None:
                return Poly.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = exact_divide(num, prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = Poly.zero()
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def resultant_wrt(p: Poly, q: Poly, v: int) -> Poly:
    """Sylvester resultant of p and q with respect to variable v.

    Sign convention: the determinant of the Sylvester matrix with the rows
    of p first.  Large eliminations of bivariate or homogeneous inputs are
    computed by evaluation and interpolation; small ones directly.
    """
    if p.is_zero() or q.is_zero():
        return Poly.zero()
    m, n = p.degree_in(v), q.degree_in(v)
    if m == 0 and n == 0:
        return ONE
    if n == 0:
        return q ** m
    if m == 0:
        return p ** n
    if m + n <= 8:
        return _bareiss_det(_sylvester(p, q, v))
    other = sorted(({0, 1, 2} - {v}))
    used = (p.variables() | q.variables()) - {v}
    if len(used) <= 1:
        w = used.pop() if used else other[0]
        return _resultant_interp(p, q, v, w, None)
    if p.is_homogeneous() and q.is_homogeneous():
        return _resultant_homogeneous(p, q, v, other[0], other[1])
    return _bareiss_det(_sylvester(p, q, v))


def _resultant_interp(p: Poly, q: Poly, v: int, w: int, bound: int | None) -> Poly:
    """Resultant in v of polynomials in {v, w}: evaluate w, interpolate."""
    from . import uniroots

    m, n = p.degree_in(v), q.degree_in(v)
    if bound is None:
        bound = n * max(p.degree_in(w), 0) + m * max(q.degree_in(w), 0)
    pc = p.coeffs_wrt(v)
    qc = q.coeffs_wrt(v)

    def coeff_list(cmap: dict[int, Poly], deg: int) -> list[list[Fraction]]:
        return [to_univariate(cmap.get(k, Poly.zero()), w) for k in range(deg + 1)]

    pl = coeff_list(pc, m)
    ql = coeff_list(qc, n)
    lead_p, lead_q = pl[m], ql[n]
    xs: list[int] = []
    ys: list[Fraction] = []
    t = 0
    while len(xs) <= bound:
        for cand in ((t, -t) if t else (0,)):
            if len(xs) > bound:
                break
            lp = uniroots.eval_uni(lead_p, Fraction(cand))
            lq = uniroots.eval_uni(lead_q, Fraction(cand))
            if lp == 0 or lq == 0:
                continue
            a = [uniroots.eval_uni(cs, Fraction(cand)) for cs in pl]
            b = [uniroots.eval_uni(cs, Fraction(cand)) for cs in ql]
            xs.append(cand)
            ys.append(uniroots.resultant_q(a, b))
        t += 1
    coeffs = uniroots.newton_interpolate(xs, ys)
    return from_univariate(coeffs, w)


def _resultant_homogeneous(p: Poly, q: Poly, v: int, wa: int, wb: int) -> Poly:
    """Resultant in v of homogeneous p, q: a binary form in (wa, wb)."""
    m, n = p.degree_in(v), q.degree_in(v)
    total = n * p.total_degree() + m * q.total_degree() - m * n
    pd = p.substitute(_unit_sub(wb))
    qd = q.substitute(_unit_sub(wb))
    r = _resultant_interp(pd, qd, v, wa, total)
    if r.is_zero():
        return r
    # Re-homogenize to the known total degree using wb.
    terms: dict[Exponents, Fraction] = {}
    for e, c in r.terms.items():
        d = e[wa]
        ne = [0, 0, 0]
        ne[wa] = d
        ne[wb] = total - d
        terms[(ne[0], ne[1], ne[2])] = c
    return Poly(terms)


def _unit_sub(i: int) -> tuple[Poly, Poly, Poly]:
    imgs = [X, Y, Z]
    imgs[i] = ONE
    return (imgs[0], imgs[1], imgs[2])
