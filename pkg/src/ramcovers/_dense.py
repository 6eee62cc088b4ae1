"""Dense univariate polynomial arithmetic over a finite field.

Polynomials are lists of field codes, lowest degree first, with no trailing
zeros; the zero polynomial is ``[]``. Every function takes the field first.
These are the hot-path primitives shared by the field, poly and moduli layers.
"""

import random


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return list(a[:n])


def deg(a):
    """Degree, with -1 for the zero polynomial."""
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    fadd = F.add
    for i, c in enumerate(b):
        if c:
            out[i] = fadd(out[i], c)
    return trim(out)


def neg(F, a):
    fneg = F.neg
    return [fneg(c) for c in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == 0:
        return []
    if c == 1:
        return list(a)
    fmul = F.mul
    return trim([fmul(x, c) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    fadd, fmul = F.add, F.mul
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def monic(F, a):
    if not a or a[-1] == 1:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    inv_lc = F.inv(b[-1])
    q = [0] * (len(a) - db)
    fadd, fmul, fneg = F.add, F.mul, F.neg
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        c = fmul(c, inv_lc)
        q[i - db] = c
        nc = fneg(c)
        for j in range(db + 1):
            if b[j]:
                a[i - db + j] = fadd(a[i - db + j], fmul(nc, b[j]))
    return trim(q), trim(a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def exact_div(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd(F, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def derivative(F, a):
    fmul, p = F.mul, F.p
    return trim([fmul(j % p, a[j]) for j in range(1, len(a))])


def evaluate(F, a, x):
    acc = 0
    fadd, fmul = F.add, F.mul
    for c in reversed(a):
        acc = fadd(fmul(acc, x), c)
    return acc


def taylor_shift(F, a, c):
    """Coefficients of a(c + s) as a polynomial in s (repeated synthetic division)."""
    b = list(a)
    n = len(b)
    if c == 0 or n == 0:
        return b
    fadd, fmul = F.add, F.mul
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            b[j] = fadd(b[j], fmul(c, b[j + 1]))
    return trim(b)


def reverse(a, n):
    """s^n * a(1/s) for n >= deg a."""
    out = [0] * (n + 1)
    for i, c in enumerate(a):
        out[n - i] = c
    return trim(out)


def valuation(a):
    """Order of vanishing at 0; None for the zero polynomial."""
    for i, c in enumerate(a):
        if c:
            return i
    return None


def order_at(F, a, c):
    """Multiplicity of c as a root of a (None for the zero polynomial)."""
    if not a:
        return None
    return valuation(taylor_shift(F, a, c))


def powmod(F, a, n, m):
    result = [1]
    base = mod(F, a, m)
    while n:
        if n & 1:
            result = mod(F, mul(F, result, base), m)
        n >>= 1
        if n:
            base = mod(F, mul(F, base, base), m)
    return result


def mulmod(F, a, b, m):
    return mod(F, mul(F, a, b), m)


def from_monomials(F, terms):
    """Build a polynomial from {exponent: code}."""
    if not terms:
        return []
    out = [0] * (max(terms) + 1)
    for e, c in terms.items():
        out[e] = F.add(out[e], c)
    return trim(out)


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f):
    """Rabin's test for a polynomial of degree >= 1 over F."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(F, f)
    Q = F.order
    x = [0, 1]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = powmod(F, h, Q, f)
        return h

    if trim(sub(F, frob_iter(n), x)):
        return False
    for r in _prime_factors(n):
        h = frob_iter(n // r)
        if len(gcd(F, f, sub(F, h, x))) > 1:
            return False
    return True


def monic_polys(F, n):
    """All monic polynomials of degree n, in lexicographic order of (c_{n-1}, ..., c_0)."""
    Q = F.order
    for idx in range(Q ** n):
        coeffs = []
        for _ in range(n):
            idx, r = divmod(idx, Q)
            coeffs.append(r)
        yield coeffs + [1]


def smallest_irreducible(F, n):
    for f in monic_polys(F, n):
        if is_irreducible(F, f):
            return f
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


# -- factorization ---------------------------------------------------------


def pth_root(F, a):
    """Inverse of Frobenius on a polynomial whose exponents are all multiples of p."""
    p = F.p
    e = F.order // p
    return trim([F.pow(a[i], e) for i in range(0, len(a), p)])


def squarefree_decomposition(F, f):
    """List of (g, multiplicity) with f = lc * prod g^multiplicity, each g squarefree monic."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    out = []
    df = derivative(F, f)
    c = gcd(F, f, df)
    w = exact_div(F, f, c)
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        fac = exact_div(F, w, y)
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = exact_div(F, c, y)
        i += 1
    if len(c) > 1:
        for g, j in squarefree_decomposition(F, pth_root(F, c)):
            out.append((g, j * F.p))
    return out


def distinct_degree(F, f):
    """Split a squarefree monic f into (product of its degree-k irreducible factors, k)."""
    out = []
    Q = F.order
    fs = list(f)
    h = [0, 1]
    k = 1
    while len(fs) - 1 >= 2 * k:
        h = powmod(F, h, Q, fs)
        g = gcd(F, fs, sub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((g, k))
            fs = exact_div(F, fs, g)
            h = mod(F, h, fs)
        k += 1
    if len(fs) > 1:
        out.append((fs, len(fs) - 1))
    return out


def equal_degree(F, f, k, rng):
    """Cantor-Zassenhaus splitting of a product of distinct degree-k irreducibles."""
    n = len(f) - 1
    if n == k:
        return [f]
    Q = F.order
    while True:
        a = trim([rng.randrange(Q) for _ in range(n)])
        if len(a) < 2:
            continue
        if Q % 2:
            b = powmod(F, a, (Q ** k - 1) // 2, f)
            b = sub(F, b, [1])
        else:
            # absolute trace map into F_2
            b, t = [], mod(F, a, f)
            for _ in range(k * (Q.bit_length() - 1)):
                b = add(F, b, t)
                t = mulmod(F, t, t, f)
        u = gcd(F, f, b)
        if 1 < len(u) < len(f):
            v = exact_div(F, f, u)
            return equal_degree(F, u, k, rng) + equal_degree(F, v, k, rng)


def irreducible_factors(F, f, seed=0):
    """Distinct monic irreducible factors of f with multiplicities, in canonical order."""
    rng = random.Random(seed)
    out = []
    for g, mult in squarefree_decomposition(F, f):
        for h, k in distinct_degree(F, g):
            for pi in equal_degree(F, h, k, rng):
                out.append((pi, mult))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1]))
    return out
