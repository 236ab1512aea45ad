"""Univariate helpers over Z and Q: exact root finding and gcds.

Polynomials here are plain coefficient lists, low degree first.  Rational
root extraction avoids integer factorization entirely: roots are found
modulo a prime, lifted quadratically, recognized by rational
reconstruction and then verified exactly, so the answers are certificates
rather than heuristics.  Gcds of integer polynomials run modulo several
primes with an exact trial-division check at the end.
"""

from fractions import Fraction
from math import gcd as _gcd, isqrt

# -- basic list-polynomial operations ------------------------------------


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list) -> int:
    return len(a) - 1


def eval_uni(a: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def eval_uni_int(a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def derivative(a: list) -> list:
    return trim([i * a[i] for i in range(1, len(a))])


def mul_uni(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return trim(out)


def divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db, lb = deg(b), b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        f = r[-1] / lb
        q[k] = f
        for i in range(db + 1):
            r[k + i] -= f * b[i]
        r.pop()
        trim(r)
    return trim(q), r


def divide_exact_int(a: list[int], b: list[int]) -> list[int] | None:
    """Exact quotient in Z[x] or None when b does not divide a."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    db, lb = deg(b), b[-1]
    while r and len(r) - 1 >= db:
        c, rem = divmod(r[-1], lb)
        if rem:
            return None
        k = len(r) - 1 - db
        q[k] = c
        for i in range(db + 1):
            r[k + i] -= c * b[i]
        trim(r)
    return None if r else q


def content_int(a: list[int]) -> int:
    g = 0
    for c in a:
        g = _gcd(g, abs(c))
    return g


def primitive_int(a: list[int]) -> list[int]:
    a = trim(list(a))
    if not a:
        return a
    g = content_int(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def clear_denominators(a: list[Fraction]) -> list[int]:
    lcm = 1
    for c in a:
        d = Fraction(c).denominator
        lcm = lcm * d // _gcd(lcm, d)
    return [int(Fraction(c) * lcm) for c in a]


# -- arithmetic modulo a prime -------------------------------------------


def _mod_reduce(a: list[int], p: int) -> list[int]:
    return trim([c % p for c in a])


def _mod_monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _mod_rem(a: list[int], b: list[int], p: int) -> list[int]:
    r = list(a)
    db = deg(b)
    inv = pow(b[-1], -1, p)
    while r and deg(r) >= db:
        f = r[-1] * inv % p
        k = deg(r) - db
        for i in range(db + 1):
            r[k + i] = (r[k + i] - f * b[i]) % p
        trim(r)
    return r


def gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _mod_reduce(a, p), _mod_reduce(b, p)
    while b:
        a, b = b, _mod_rem(a, b, p)
    return _mod_monic(a, p) if a else []


def _primes_from(start: int):
    n = max(start, 3) | 1
    while True:
        if all(n % q for q in range(3, isqrt(n) + 1, 2)) and n % 2:
            yield n
        n += 2


# -- gcd in Q[x] via modular images ---------------------------------------


def gcd_int(a: list[int], b: list[int]) -> list[int]:
    """Gcd of a and b as polynomials over Q, returned primitive in Z[x]
    with positive leading coefficient.  Certified by exact trial division.
    """
    a, b = primitive_int(a), primitive_int(b)
    if not a:
        return b
    if not b:
        return a
    if deg(a) == 0 or deg(b) == 0:
        return [1]
    lead = _gcd(a[-1], b[-1])
    best_deg: int | None = None
    residues: list[int] = []
    modulus = 1
    tried = 0
    for p in _primes_from(2 ** 29):
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        tried += 1
        if tried > 120:
            break
        g = gcd_mod_p(a, b, p)
        d = deg(g)
        if d == 0:
            return [1]
        scaled = [c * lead % p for c in g]
        if best_deg is None or d < best_deg:
            best_deg, residues, modulus = d, scaled, p
        elif d == best_deg:
            merged = []
            inv = pow(modulus, -1, p)
            for c_old, c_new in zip(residues, scaled):
                t = (c_new - c_old) * inv % p
                merged.append(c_old + modulus * t)
            residues, modulus = merged, modulus * p
        else:
            continue
        half = modulus // 2
        cand = primitive_int([c - modulus if c > half else c for c in residues])
        if divide_exact_int(a, cand) is not None and divide_exact_int(b, cand) is not None:
            return cand
    raise ArithmeticError("modular gcd failed to stabilize")


def gcd_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd in Q[x]."""
    g = gcd_int(clear_denominators(a), clear_denominators(b))
    if not g:
        return []
    lc = Fraction(g[-1])
    return [Fraction(c) / lc for c in g]


def squarefree_part_int(a: list[int]) -> list[int]:
    a = primitive_int(a)
    if deg(a) <= 0:
        return a
    d = trim([i * a[i] for i in range(1, len(a))])
    g = gcd_int(a, d)
    if deg(g) == 0:
        return a
    q = divide_exact_int(a, g)
    assert q is not None
    return primitive_int(q)


# -- rational roots via Hensel lifting ------------------------------------


def _rational_reconstruct(r: int, m: int) -> tuple[int, int] | None:
    """u/w with r*w = u (mod m), |u|,w <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, r % m
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if _gcd(abs(r1), t1) != 1:
        return None
    return r1, t1


def rational_roots_int(f: list[int]) -> tuple[dict[Fraction, int], list[int]]:
    """All rational roots of f with multiplicities, plus the primitive
    cofactor of f once every rational linear factor is divided out.

    Roots are found modulo a prime with squarefree reduction, lifted to a
    large prime power, recognized by rational reconstruction and verified
    by exact evaluation, so the root set is provably complete.
    """
    f = primitive_int(f)
    if deg(f) <= 0:
        return {}, (f or [0])
    roots: dict[Fraction, int] = {}
    # split off x^k
    k = 0
    while f[0] == 0:
        f = f[1:]
        k += 1
    if k:
        roots[Fraction(0)] = k
    if deg(f) == 0:
        return roots, f
    if deg(f) == 1:
        roots[Fraction(-f[0], f[1])] = roots.get(Fraction(-f[0], f[1]), 0) + 1
        return roots, [1]
    fs = squarefree_part_int(f)
    lc, height = abs(fs[-1]), max(abs(c) for c in fs)
    bound = max(lc, lc + height)
    target = 2 * bound * bound + 1
    candidates: list[Fraction] = []
    for p in _primes_from(10007):
        if fs[-1] % p == 0:
            continue
        dfs = trim([i * fs[i] for i in range(1, len(fs))])
        if deg(gcd_mod_p(fs, dfs, p)) != 0:
            continue
        base_roots = [r for r in range(p) if eval_uni_int(fs, r) % p == 0]
        for r in base_roots:
            m = p
            while m < target:
                m2 = m * m
                fr = eval_uni_int(fs, r) % m2
                dfr = eval_uni_int(dfs, r)
                inv = pow(dfr % m2, -1, m2)
                r = (r - fr * inv) % m2
                m = m2
            rec = _rational_reconstruct(r, m)
            if rec is None:
                continue
            u, w = rec
            candidates.append(Fraction(u, w))
        break
    leftover = f
    for root in sorted(set(candidates)):
        val = eval_uni(list(map(Fraction, f)), root)
        if val != 0:
            continue
        lin = [-root.numerator, root.denominator]
        mult = 0
        while True:
            q = divide_exact_int(leftover, lin)
            if q is None:
                break
            leftover = q
            mult += 1
        if mult:
            roots[root] = roots.get(root, 0) + mult
    return roots, primitive_int(leftover or [1])


def rational_roots_q(a: list[Fraction]) -> tuple[dict[Fraction, int], list[int]]:
    return rational_roots_int(clear_denominators(a))


# -- exact resultants and interpolation ------------------------------------


def resultant_q(a: list[Fraction], b: list[Fraction]) -> Fraction:
    """Sylvester resultant of two univariate polynomials over Q."""
    a = trim([Fraction(c) for c in a])
    b = trim([Fraction(c) for c in b])
    if not a or not b:
        return Fraction(0)
    ma, mb = deg(a), deg(b)
    if ma == 0:
        return a[0] ** mb
    if mb == 0:
        return b[0] ** ma
    acc = Fraction(1)
    sign = 1
    while True:
        _, r = divmod_q(a, b)
        if not r:
            return Fraction(0)
        if (deg(a) * deg(b)) % 2:
            sign = -sign
        acc *= b[-1] ** (deg(a) - deg(r))
        a, b = b, r
        if deg(b) == 0:
            return sign * acc * b[0] ** deg(a)


def newton_interpolate(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly: list[Fraction] = []
    for i in range(n - 1, -1, -1):
        poly = _mul_linear_add(poly, xs[i], coef[i])
    return trim(poly)


def _mul_linear_add(p: list[Fraction], root: int, add: Fraction) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] += c
        out[i] -= c * root
    out[0] += add
    return trim(out)
