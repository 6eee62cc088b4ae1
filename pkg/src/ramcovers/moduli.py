"""Counting maps with prescribed ramification over F_q, F_{q^2}, ... and dimension estimates.

At fixed branch values the condition "f ramified to order >= e at P with f(P) = c"
is linear in the coefficients of (num, den): (num - c*den) vanishes to order e at
P. Counting with free branch values runs over PGL_2-orbit representatives of the
branch tuple and gauge-fixes the residual stabilizer, so each PGL_2-orbit of maps
is visited once; the exhaustive loop over all tuples is kept for cross-checks.
"""

import itertools
import math
import multiprocessing
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import _dense
from .deform import brill_noether_dims
from .errors import BudgetExceeded
from .fields import level_field
from .linalg import nullspace
from .poly import PointP1, RatMap, common_field, wronskian

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class BranchCondition:
    point: PointP1
    value: PointP1
    e: int


@dataclass(frozen=True)
class Filters:
    require_separable: bool = True
    require_exact_ram: bool = True
    require_unramified_elsewhere: bool = False
    require_degree_d: bool = True


def pgl2_order(q):
    return q**3 - q


def _local_rows(F, d, point, value, js):
    """Rows giving the s^j coefficients (j in js) of the local numerator at (point, value).

    The local numerator is num - c*den for finite c and den for c = infinity, in the
    coordinate s = x - P (or s = 1/x at infinity, on degree-d reversals).
    """
    rows = []
    for j in js:
        mono = [0] * (d + 1)
        for k in range(d + 1):
            if point.is_infinity:
                mono[k] = 1 if k == d - j else 0
            elif k >= j:
                binom = math.comb(k, j) % F.p
                if binom:
                    mono[k] = F.mul(binom, F.pow(point.value, k - j))
        if value.is_infinity:
            rows.append([0] * (d + 1) + mono)
        else:
            c = value.value
            rows.append(mono + [F.neg(F.mul(c, m)) for m in mono])
    return rows


def branch_rows(F, d, conds):
    rows = []
    for bc in conds:
        rows.extend(_local_rows(F, d, bc.point, bc.value, range(bc.e)))
    return rows


@dataclass(frozen=True)
class SearchSpace:
    field: object
    degree: int
    basis: tuple
    conditions: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def projective_size(self):
        q = self.field.order
        return (q**self.dim - 1) // (q - 1)


def _as_branch(c):
    return c if isinstance(c, BranchCondition) else BranchCondition(*c)


def linear_system_fixed_branch(field, d, conds):
    conds = tuple(_as_branch(c) for c in conds)
    F = common_field(field, *(c.point.field for c in conds), *(c.value.field for c in conds))
    conds = tuple(BranchCondition(c.point.to(F), c.value.to(F), c.e) for c in conds)
    rows = branch_rows(F, d, conds)
    basis = nullspace(F, rows, 2 * d + 2)
    return SearchSpace(F, d, tuple(tuple(v) for v in basis), conds)


def projective_points(F, basis):
    """Each point of the projectivized span once (first nonzero coordinate equal to 1)."""
    r = len(basis)
    if r == 0:
        return
    L = len(basis[0])
    fadd, fmul = F.add, F.mul
    scaled = [[[fmul(c, x) for x in b] for c in range(F.order)] for b in basis]
    for lead in range(r):
        head = basis[lead]
        tail = range(lead + 1, r)
        for coeffs in itertools.product(range(F.order), repeat=r - 1 - lead):
            v = list(head)
            for j, c in zip(tail, coeffs):
                if c:
                    sv = scaled[j][c]
                    for t in range(L):
                        if sv[t]:
                            v[t] = fadd(v[t], sv[t])
            yield v


class _Checker:
    """Fast filters on a coefficient vector (num | den) against a condition list."""

    def __init__(self, F, d, conds, filters):
        self.F, self.d, self.filters = F, d, filters
        self.conds = conds
        self.exact_rows = [_local_rows(F, d, c.point, c.value, [c.e])[0] for c in conds]
        self.finite_points = [c.point.value for c in conds if not c.point.is_infinity]
        self.has_inf = any(c.point.is_infinity for c in conds)

    def split(self, v):
        d = self.d
        return _dense.trim(v[: d + 1]), _dense.trim(v[d + 1 :])

    def classify(self, v):
        """0 invalid, 1 valid map, 2 separable, 3 passes the exact-ramification filters."""
        F, d = self.F, self.d
        num, den = self.split(v)
        if not num or not den:
            return 0
        if self.filters.require_degree_d and max(len(num), len(den)) - 1 != d:
            return 0
        if len(_dense.gcd(F, num, den)) > 1:
            return 0
        W = wronskian(F, num, den)
        if not W:
            return 1 if self.filters.require_separable else self._exact(v, num, den, W, 1)
        return self._exact(v, num, den, W, 2)

    def _exact(self, v, num, den, W, level):
        F = self.F
        if self.filters.require_exact_ram:
            for row in self.exact_rows:
                acc = 0
                for a, b in zip(row, v):
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                if acc == 0:
                    return level
        if self.filters.require_unramified_elsewhere:
            if not W:
                return level
            if not self.has_inf and len(W) - 1 != 2 * self.d - 2:
                return level
            rest = W
            for P in self.finite_points:
                while True:
                    q, r = _dense.divmod_(F, rest, [F.neg(P), 1])
                    if r:
                        break
                    rest = q
            if len(rest) > 1:
                return level
        return 3


@dataclass
class CountRow:
    level: int
    q: int
    raw_count: int
    valid_count: int
    separable_count: int
    exact_ram_count: int
    mod_pgl2: Fraction = dc_field(default=None)
    integral: bool = True

    def as_dict(self):
        return {
            "level": self.level,
            "q": self.q,
            "raw_count": self.raw_count,
            "valid_count": self.valid_count,
            "separable_count": self.separable_count,
            "exact_ram_count": self.exact_ram_count,
            "mod_pgl2": None if self.mod_pgl2 is None else str(self.mod_pgl2),
            "mod_pgl2_integral": self.integral,
        }


@dataclass
class Enumeration:
    maps: list
    row: CountRow


def enumerate_maps(space, filters=Filters(), budget=DEFAULT_BUDGET, level=1, collect=True):
    """Walk the projectivized solution space; return the surviving maps and a count row."""
    F, d = space.field, space.degree
    if space.projective_size > budget:
        raise BudgetExceeded(f"{space.projective_size} candidates exceed the budget {budget}")
    checker = _Checker(F, d, space.conditions, filters)
    counts = [0, 0, 0, 0]
    maps = []
    for v in projective_points(F, space.basis):
        counts[0] += 1
        k = checker.classify(v)
        if k >= 1:
            counts[1] += 1
        if k >= 2:
            counts[2] += 1
        if k >= 3:
            counts[3] += 1
            if collect:
                num, den = checker.split(v)
                c = F.inv(den[-1])
                maps.append(RatMap(F, tuple(_dense.scale(F, num, c)), tuple(_dense.scale(F, den, c))))
    row = CountRow(level, F.order, counts[0], counts[1], counts[2], counts[3])
    return Enumeration(maps, row)


def count_mod_pgl2(rows):
    """Attach count / |PGL_2(F_q)| to each row, flagging (never rounding) non-integral quotients."""
    for row in rows:
        g = pgl2_order(row.q)
        row.mod_pgl2 = Fraction(row.exact_ram_count, g)
        row.integral = row.mod_pgl2.denominator == 1
    return rows


# -- free branch values ------------------------------------------------------


def _set_partitions(n):
    """Restricted growth strings: block labels in order of first appearance."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            yield from rec(prefix + [b], max(top, b))

    yield from rec([], -1)


def branch_representatives(K, n):
    """(values, orbit size) for one representative per PGL_2(K)-orbit of tuples in P^1(K)^n."""
    Q = K.order
    inf = PointP1(K, None)
    fixed = [inf, PointP1(K, 0), PointP1(K, 1)]
    for labels in _set_partitions(n):
        nb = max(labels) + 1 if labels else 0
        if nb <= 3:
            orbit = [1, Q + 1, (Q + 1) * Q, pgl2_order(Q)][nb]
            yield tuple(fixed[b] for b in labels), orbit
            continue
        for extra in itertools.permutations(range(2, Q), nb - 3):
            vals = fixed + [PointP1(K, c) for c in extra]
            yield tuple(vals[b] for b in labels), pgl2_order(Q)


def representative_count(Q, n):
    """Number of tuples branch_representatives(K, n) yields for |K| = Q."""
    total = 0
    for labels in _set_partitions(n):
        nb = max(labels) + 1 if labels else 0
        total += math.perm(Q - 2, nb - 3) if nb > 3 else 1
    return total


def _gauge_spaces(K, d, conds, values):
    """Candidate vectors meeting one representative of each stabilizer orbit."""
    distinct = set(v.value for v in values)
    bconds = [BranchCondition(c.point, v, c.e) for c, v in zip(conds, values)]
    L = d + 1
    if len(distinct) >= 3 or not conds:
        basis = nullspace(K, branch_rows(K, d, bconds), 2 * L)
        return bconds, ("projective", basis)
    den_rows = [r[L:] for c in bconds if c.value.is_infinity for r in _local_rows(K, d, c.point, c.value, range(c.e))]
    den_basis = nullspace(K, den_rows, L)
    if len(distinct) == 1:
        return bconds, ("affine", den_basis)
    num_rows = [r[:L] for c in bconds if not c.value.is_infinity for r in _local_rows(K, d, c.point, c.value, range(c.e))]
    num_basis = nullspace(K, num_rows, L)
    return bconds, ("product", num_basis, den_basis)


def _gauge_size(K, d, gauge):
    q = K.order
    kind = gauge[0]

    def proj(r):
        return (q**r - 1) // (q - 1)

    if kind == "projective":
        return proj(len(gauge[1]))
    if kind == "product":
        return proj(len(gauge[1])) * proj(len(gauge[2]))
    # numerator modulo the denominator direction
    return proj(len(gauge[1])) * proj(d) if gauge[1] else 0


def _gauge_vectors(K, d, gauge):
    L = d + 1
    kind = gauge[0]
    if kind == "projective":
        yield from projective_points(K, gauge[1])
    elif kind == "product":
        dens = list(projective_points(K, gauge[2]))
        for num in projective_points(K, gauge[1]):
            for den in dens:
                yield list(num) + list(den)
    else:
        # stabilizer y -> a*y + b: fix num's coefficient at den's leading index to 0
        for den in projective_points(K, gauge[1]):
            j = next(i for i, c in enumerate(den) if c)
            others = [i for i in range(L) if i != j]
            unit = [[1 if i == o else 0 for i in range(L)] for o in others]
            for num in projective_points(K, unit):
                yield list(num) + list(den)


@dataclass
class FreeBranchCount:
    level: int
    q: int
    raw_count: int
    valid_count: int
    separable_count: int
    exact_ram_count: int
    orbits: int
    candidates: int

    def row(self):
        r = CountRow(self.level, self.q, self.raw_count, self.valid_count, self.separable_count, self.exact_ram_count)
        r.mod_pgl2 = Fraction(self.exact_ram_count, pgl2_order(self.q))
        r.integral = r.mod_pgl2.denominator == 1
        return r


def _as_ram(c):
    from .deform import RamCondition

    return c if isinstance(c, RamCondition) else RamCondition(*c)


def _count_rep(K, d, bconds, gauge, filters):
    checker = _Checker(K, d, bconds, filters)
    tally = [0, 0, 0]
    n = 0
    for v in _gauge_vectors(K, d, gauge):
        n += 1
        k = checker.classify(v)
        if k >= 1:
            tally[0] += 1
            if k >= 2:
                tally[1] += 1
                if k >= 3:
                    tally[2] += 1
    return tally, n


_WORK = {}


def _worker(i):
    K, d, filters, prepared = _WORK["args"]
    bconds, gauge = prepared[i]
    return _count_rep(K, d, bconds, gauge, filters)


def free_branch_count(field, d, ram_conds, level=1, filters=Filters(), budget=DEFAULT_BUDGET, workers=1):
    """Maps of degree d over F_{q^level} ramified to order >= e_i at P_i, any branch values."""
    conds = [_as_ram(c) for c in ram_conds]
    conds = [c for c in conds if c.e >= 1]
    base = common_field(field, *(c.point.field for c in conds))
    K = level_field(base, level)
    conds = [type(c)(c.point.to(K), c.e) for c in conds]
    Q = K.order
    G = pgl2_order(Q)
    if not conds:
        return _free_no_conditions(K, d, filters, budget, level)
    n_reps = representative_count(Q, len(conds))
    if n_reps > budget:
        raise BudgetExceeded(f"{n_reps} branch representatives exceed the budget {budget}")
    prepared = []
    total_candidates = n_reps
    raw = 0
    for values, orbit in branch_representatives(K, len(conds)):
        bconds, gauge = _gauge_spaces(K, d, conds, values)
        total_candidates += _gauge_size(K, d, gauge)
        full = nullspace(K, branch_rows(K, d, bconds), 2 * d + 2)
        raw += orbit * ((Q ** len(full) - 1) // (Q - 1))
        if _gauge_size(K, d, gauge):
            prepared.append((bconds, gauge))
    if total_candidates > budget:
        raise BudgetExceeded(f"{total_candidates} candidates exceed the budget {budget}")
    if workers > 1 and len(prepared) > 1:
        _WORK["args"] = (K, d, filters, prepared)
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            results = pool.map(_worker, range(len(prepared)))
        _WORK.clear()
    else:
        results = [_count_rep(K, d, bconds, gauge, filters) for bconds, gauge in prepared]
    tally = [sum(r[0][i] for r in results) for i in range(3)]
    return FreeBranchCount(level, Q, raw, G * tally[0], G * tally[1], G * tally[2], tally[2], total_candidates)


def _free_no_conditions(K, d, filters, budget, level):
    Q = K.order
    L = 2 * d + 2
    size = (Q**L - 1) // (Q - 1)
    if size > budget:
        raise BudgetExceeded(f"{size} candidates exceed the budget {budget}")
    unit = [[1 if i == j else 0 for i in range(L)] for j in range(L)]
    checker = _Checker(K, d, [], filters)
    tally = [0, 0, 0]
    for v in projective_points(K, unit):
        k = checker.classify(v)
        for i in range(3):
            if k >= i + 1:
                tally[i] += 1
    G = pgl2_order(Q)
    orbits = Fraction(tally[2], G)
    return FreeBranchCount(level, Q, size, tally[0], tally[1], tally[2], orbits, size)


def free_branch_count_exhaustive(field, d, ram_conds, level=1, filters=Filters(), budget=DEFAULT_BUDGET):
    """Literal loop over every branch tuple in P^1(F_{q^level})^n (small cases only)."""
    conds = [_as_ram(c) for c in ram_conds]
    base = common_field(field, *(c.point.field for c in conds))
    K = level_field(base, level)
    pts = [PointP1(K, None)] + [PointP1(K, a) for a in range(K.order)]
    tally = [0, 0, 0, 0]
    spent = 0
    for values in itertools.product(pts, repeat=len(conds)):
        bconds = [BranchCondition(c.point.to(K), v, c.e) for c, v in zip(conds, values)]
        space = linear_system_fixed_branch(K, d, bconds)
        spent += space.projective_size
        if spent > budget:
            raise BudgetExceeded(f"more than {budget} candidates")
        row = enumerate_maps(space, filters, collect=False).row
        for i, v in enumerate((row.raw_count, row.valid_count, row.separable_count, row.exact_ram_count)):
            tally[i] += v
    return FreeBranchCount(level, K.order, tally[0], tally[1], tally[2], tally[3], Fraction(tally[3], pgl2_order(K.order)), spent)


# -- dimension estimates -----------------------------------------------------


@dataclass(frozen=True)
class DimensionEstimate:
    estimate: "int | None"
    levels: tuple
    stable: bool
    pair_estimates: tuple = ()
    empty: bool = False

    def as_dict(self):
        return {
            "estimate": "empty" if self.empty else self.estimate,
            "levels": list(self.levels),
            "stable": self.stable,
            "pair_estimates": list(self.pair_estimates),
        }


def estimate_dimension(counts, q):
    """Round log_q of count ratios between consecutive positive levels, per unit level gap."""
    counts = sorted((m, N) for m, N in counts)
    positive = [(m, N) for m, N in counts if N > 0]
    if not positive:
        return DimensionEstimate(None, tuple(m for m, _ in counts), False, (), empty=True)
    if len(positive) < 2:
        return DimensionEstimate(None, tuple(m for m, _ in positive), False)
    pairs = []
    for (m1, n1), (m2, n2) in zip(positive, positive[1:]):
        ratio = math.log(Fraction(n2) / Fraction(n1)) if not isinstance(n1, int) else math.log(n2 / n1)
        pairs.append(round(ratio / math.log(q) / (m2 - m1)))
    stable = len(set(pairs)) == 1
    return DimensionEstimate(pairs[-1], tuple(m for m, _ in positive), stable, tuple(pairs))


@dataclass
class CountReport:
    degree: int
    conditions: list
    rows: list
    estimate: DimensionEstimate
    prediction: object
    filters: Filters
    seed: "int | None" = None
    warnings: list = dc_field(default_factory=list)

    def counts_mod_pgl2(self):
        return [(r.level, r.mod_pgl2) for r in self.rows]


def count_moduli(field, d, ram_conds, levels=(1, 2), filters=Filters(), budget=DEFAULT_BUDGET, workers=1, seed=None):
    """Free-branch counts per level, mod-PGL_2 quotients, dimension estimate and predictions."""
    conds = [_as_ram(c) for c in ram_conds]
    rows = []
    spent = 0
    for m in levels:
        res = free_branch_count(field, d, conds, m, filters, budget - spent, workers)
        spent += res.candidates
        rows.append(res.row())
    q = common_field(field, *(c.point.field for c in conds)).order
    est = estimate_dimension([(r.level, r.mod_pgl2) for r in rows], q)
    p = field.p
    e_list = [c.e for c in conds if c.e >= 1]
    wild = sum(1 for e in e_list if e % p == 0)
    pred = brill_noether_dims(d, 0, e_list, wild)
    warnings = []
    for r in rows:
        if not r.integral:
            warnings.append({"code": "NonIntegralQuotient", "level": r.level, "value": str(r.mod_pgl2)})
    if not est.stable and not est.empty:
        warnings.append({"code": "UnstableEstimate", "pairs": list(est.pair_estimates)})
    return CountReport(d, conds, rows, est, pred, filters, seed, warnings)


def random_points(field, n, seed, exclude=()):
    """n distinct points of P^1(field) (affine or infinity) drawn with a recorded seed."""
    rng = random.Random(seed)
    chosen = []
    excl = set(exclude)
    while len(chosen) < n:
        c = rng.randrange(field.order + 1)
        pt = PointP1(field, None if c == field.order else c)
        if pt in chosen or pt.value in excl:
            continue
        chosen.append(pt)
    return chosen
