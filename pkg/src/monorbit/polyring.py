"""Dense univariate polynomial arithmetic over the rationals.

A polynomial c_0 + c_1 x + ... + c_n x^n is a tuple (c_0, ..., c_n) of
Fractions with no trailing zeros; the zero polynomial is the empty tuple.
Everything here is exact.  Integer-coefficient fast paths are provided for
the cyclotomic divisibility search, where Fraction overhead matters.
"""

from fractions import Fraction


def normalize(coeffs):
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p):
    return len(p) - 1


def is_zero(p):
    return len(p) == 0


def add(p, q):
    n = max(len(p), len(q))
    return normalize(
        [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    )


def sub(p, q):
    n = max(len(p), len(q))
    return normalize(
        [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    )


def scale(p, c):
    c = Fraction(c)
    if c == 0:
        return ()
    return tuple(x * c for x in p)


def mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def divmod_poly(p, q):
    """Exact division with remainder over Q; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = degree(q)
    lead = q[-1]
    quot = [Fraction(0)] * max(0, len(p) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        if rem[i] == 0:
            continue
        c = rem[i] / lead
        quot[i - dq] = c
        for j in range(dq + 1):
            rem[i - dq + j] -= c * q[j]
    return normalize(quot), normalize(rem)


def poly_mod(p, q):
    return divmod_poly(p, q)[1]


def divides(q, p):
    """True when q divides p exactly over Q."""
    return is_zero(poly_mod(p, q))


def monic(p):
    if not p:
        return ()
    return tuple(c / p[-1] for c in p)


def gcd(p, q):
    a, b = p, q
    while b:
        a, b = b, poly_mod(a, b)
    return monic(a)


def xgcd(p, q):
    """Extended gcd: returns (g, s, t) with s*p + t*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        quo, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return (), s0, t0
    lead = r0[-1]
    inv = 1 / lead
    return monic(r0), scale(s0, inv), scale(t0, inv)


def derivative(p):
    return normalize([p[i] * i for i in range(1, len(p))])


def squarefree_part(p):
    """p / gcd(p, p'), monic."""
    if degree(p) < 1:
        return monic(p)
    g = gcd(p, derivative(p))
    q, r = divmod_poly(p, g)
    assert is_zero(r)
    return monic(q)


def squarefree_decomposition(p):
    """Yun's algorithm: list of (monic factor, multiplicity) with
    p = lc * prod factor_i^mult_i and the factors pairwise coprime squarefree.
    Constant factors are omitted."""
    p = monic(p)
    if degree(p) < 1:
        return []
    out = []
    g = gcd(p, derivative(p))
    c, _ = divmod_poly(p, g)
    w, _ = divmod_poly(derivative(p), g)
    y = sub(w, derivative(c))
    i = 1
    while degree(c) >= 1:
        f = gcd(c, y)
        if degree(f) >= 1:
            out.append((monic(f), i))
        c, _ = divmod_poly(c, f)
        w, _ = divmod_poly(y, f)
        y = sub(w, derivative(c))
        i += 1
    return out


def poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def lagrange_interpolate(points):
    """Exact interpolation through (x_i, y_i) pairs with distinct x_i."""
    result = ()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = (Fraction(yi),)
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = mul(num, (Fraction(-xj), Fraction(1)))
            den *= xi - xj
        result = add(result, scale(num, Fraction(1, 1) / den))
    return result


def determinant(rows):
    """Exact determinant of a square matrix of Fractions."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] * inv
            for k in range(col, n):
                a[r][k] -= factor * a[col][k]
    return det


def matrix_rank(rows):
    """Exact rank of a rational matrix."""
    if not rows:
        return 0
    a = [[Fraction(x) for x in row] for row in rows]
    n, m = len(a), len(a[0])
    rank = 0
    for col in range(m):
        piv = None
        for r in range(rank, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        for r in range(rank + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] * inv
            for k in range(col, m):
                a[r][k] -= factor * a[rank][k]
        rank += 1
        if rank == n:
            break
    return rank


def sylvester_resultant(p, q):
    """Res(p, q) via the Sylvester matrix; both nonzero."""
    if not p or not q:
        raise ValueError("resultant of the zero polynomial is undefined")
    m, n = degree(p), degree(q)
    if m == 0:
        return Fraction(p[0]) ** n
    if n == 0:
        return Fraction(q[0]) ** m
    size = m + n
    rows = []
    pd = list(reversed(p))
    qd = list(reversed(q))
    for i in range(n):
        rows.append([Fraction(0)] * i + pd + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qd + [Fraction(0)] * (size - n - 1 - i))
    return determinant(rows)


def companion_matrix(p):
    """Companion matrix of a monic polynomial of degree >= 1."""
    n = degree(p)
    if n < 1 or p[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        mat[i][i - 1] = Fraction(1)
    for i in range(n):
        mat[i][n - 1] = -p[i]
    return [tuple(row) for row in mat]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    ]


def mat_pow(a, e):
    n = len(a)
    result = [
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    ]
    base = [tuple(Fraction(x) for x in row) for row in a]
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def charpoly(mat):
    """Monic characteristic polynomial via Faddeev-LeVerrier."""
    n = len(mat)
    coeffs = [Fraction(1)]  # descending: x^n + c1 x^(n-1) + ... + cn
    m_k = [tuple(Fraction(x) for x in row) for row in mat]
    ident = [
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    ]
    mk = None
    for k in range(1, n + 1):
        if k == 1:
            mk = m_k
        else:
            shifted = [
                tuple(mk[i][j] + (coeffs[-1] if i == j else 0) for j in range(n))
                for i in range(n)
            ]
            mk = mat_mul(m_k, shifted)
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
    return normalize(list(reversed(coeffs)))


def int_poly_divmod(p, q):
    """Division for integer tuples where q is monic; stays in Z."""
    rem = list(p)
    dq = len(q) - 1
    quot = [0] * max(0, len(p) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - dq] = c
        for j in range(dq + 1):
            rem[i - dq + j] -= c * q[j]
    while rem and rem[-1] == 0:
        rem.pop()
    while quot and quot[-1] == 0:
        quot.pop()
    return tuple(quot), tuple(rem)


def int_poly_divides(q, p):
    """True when monic integer q divides integer p."""
    return int_poly_divmod(p, q)[1] == ()


def clear_denominators(p):
    """Primitive integer polynomial proportional to p (positive leading
    coefficient)."""
    if not p:
        return ()
    from math import gcd as igcd, lcm

    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, abs(c))
    if g:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)
