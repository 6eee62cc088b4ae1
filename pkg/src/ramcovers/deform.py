"""First-order deformations of maps P^1 -> P^1 with prescribed ramification.

The solver works in the unknowns (A_0..A_d, B_0..B_d, x_1..x_n): the perturbed
map is (num + eps*A) / (den + eps*B) and the i-th marked point moves to
P_i + eps*x_i. In local coordinates s at P_i and t at f(P_i), with
t o f = sum a_j s^j and the perturbation h = sum h_j s^j, ramification of order
at least e_i at the moved point with f(P_i) held fixed is

    h_j + (j + 1) a_{j+1} x_i = 0        for j = 0 .. e_i - 1.

The closed-form side predicts the solution dimension from the degree, the
indices and the 0/1 delta indicators.
"""

from dataclasses import dataclass

from . import _dense
from .errors import ConditionViolated, InseparableMap
from .linalg import complement, in_span, nullspace
from .poly import PointP1, common_field, local_polys, local_target_series, series_div
from .ramify import is_separable, ramification_index


@dataclass(frozen=True)
class RamCondition:
    point: PointP1
    e: int


@dataclass(frozen=True)
class GenusParams:
    g_C: int = 0
    g_D: int = 0


def _conds(conds):
    out = []
    for c in conds:
        out.append(c if isinstance(c, RamCondition) else RamCondition(*c))
    pts = [c.point for c in out]
    for i in range(len(pts)):
        for j in range(i):
            if pts[i] == pts[j]:
                raise ValueError("condition points must be pairwise distinct")
    return out


def delta_indicator(f, cond):
    """1 in the tame, exactly-ramified case; 0 if p | e or the actual index exceeds e."""
    point, e = (cond.point, cond.e) if isinstance(cond, RamCondition) else cond
    if e == 0:
        return 0
    actual = ramification_index(f, point)
    if actual < e:
        raise ConditionViolated(f"map has index {actual} < {e} at {point}")
    if e % f.field.p == 0 or actual > e:
        return 0
    return 1


def expected_dim_fixed_target(d, conds, g_C=0):
    """Dimension of H^0(C, f^*T(-sum (e_i - delta_i) P_i)) + sum (1 - delta_i) for target P^1.

    Exact for g_C = 0. For g_C >= 1 the Riemann-Roch value is returned when the
    twist is non-special (degree >= 2 g_C - 1) or of negative degree; otherwise None.
    """
    conds = list(conds)
    twist = 2 * d - sum(e - delta for e, delta in conds)
    free = sum(1 - delta for _, delta in conds)
    if g_C == 0:
        return max(0, twist + 1) + free
    if twist < 0:
        return free
    if twist >= 2 * g_C - 1:
        return twist + 1 - g_C + free
    return None


def expected_dim_varying_source(d, genus, e_list):
    if not isinstance(genus, GenusParams):
        genus = GenusParams(*genus)
    return d * (2 - 2 * genus.g_D) - (2 - 2 * genus.g_C) - sum(e - 1 for e in e_list)


def epsilon_g(g):
    """Dimension of infinitesimal automorphisms of a genus-g curve."""
    return 3 if g == 0 else (1 if g == 1 else 0)


@dataclass(frozen=True)
class BrillNoetherDims:
    maps_dim: int
    branch_fiber_dim: int
    wild_dim: "int | None"

    @property
    def wild_applicable(self):
        return self.wild_dim is not None


def brill_noether_dims(d, g, e_list, wild_count=0):
    """Predicted dimensions: maps mod Aut(P^1); branch-fiber; wild count when 2d-2 = m + sum(e-1)."""
    excess = sum(e - 1 for e in e_list)
    maps = 2 * d - 2 - g - excess
    fiber = 2 * d - 2 + 2 * g - excess + epsilon_g(g)
    wild = wild_count if 2 * d - 2 == wild_count + excess else None
    return BrillNoetherDims(maps, fiber, wild)


@dataclass(frozen=True)
class DeformationReport:
    solver_dim: int
    formula_dim: int
    deltas: tuple
    basis: tuple  # of (A coeffs, B coeffs, x motions)
    degree: int
    conditions: tuple

    @property
    def point_motions(self):
        return [b[2] for b in self.basis]

    @property
    def agrees(self):
        return self.solver_dim == self.formula_dim


def _local_frame(f, point):
    """Local data at P: target series a, perturbation pieces, and the swap flag."""
    F, N, D, c = local_polys(f, point)
    if c is None:
        # target coordinate 1/y: roles of (num, den) and (A, B) swap
        return F, N, D, c, True
    return F, N, D, c, False


def _source_basis(F, point, k, d):
    """The monomial x^k written in the local source coordinate at P."""
    if point.is_infinity:
        out = [0] * (d - k + 1)
        out[d - k] = 1
        return out
    return _dense.taylor_shift(F, [0] * k + [1], point.value)


def condition_rows(f, cond, index, n_points):
    """Linear equations for one condition, as rows over the unknown vector."""
    point, e = cond.point, cond.e
    d = f.degree
    ncols = 2 * (d + 1) + n_points
    if e == 0:
        return []
    F, N, D, c, swapped = _local_frame(f, point)
    a = local_target_series(F, N, D, c, e + 1)
    U, V = (D, N) if swapped else (N, D)
    inv_V = series_div(F, [1], V, e)
    U_over_V2 = series_div(F, _dense.mul(F, U, inv_V), V, e)
    rows = [[0] * ncols for _ in range(e)]
    for k in range(d + 1):
        basis = _source_basis(F, point, k, d)
        plus = _dense.mul(F, basis, inv_V)  # contribution of the numerator-side unknown
        minus = _dense.mul(F, basis, U_over_V2)  # contribution of the denominator-side unknown
        col_plus = (d + 1) + k if swapped else k
        col_minus = k if swapped else (d + 1) + k
        for j in range(e):
            if j < len(plus) and plus[j]:
                rows[j][col_plus] = F.add(rows[j][col_plus], plus[j])
            if j < len(minus) and minus[j]:
                rows[j][col_minus] = F.sub(rows[j][col_minus], minus[j])
    xcol = 2 * (d + 1) + index
    for j in range(e):
        rows[j][xcol] = F.mul((j + 1) % F.p, a[j + 1])
    return rows


def first_order_system(f, conds):
    conds = _conds(conds)
    F = common_field(f.field, *(c.point.field for c in conds))
    f = f.over(F)
    rows = []
    for i, cond in enumerate(conds):
        rows.extend(condition_rows(f, cond, i, len(conds)))
    return F, f, conds, rows


def solve_first_order(f, conds):
    if not is_separable(f):
        raise InseparableMap("first-order solver needs a separable map")
    F, f, conds, rows = first_order_system(f, conds)
    deltas = tuple(delta_indicator(f, c) for c in conds)
    d = f.degree
    n = len(conds)
    ncols = 2 * (d + 1) + n
    kernel = nullspace(F, rows, ncols)
    trivial = list(f.num) + [0] * (d + 1 - len(f.num)) + list(f.den) + [0] * (d + 1 - len(f.den)) + [0] * n
    if not in_span(F, kernel, trivial, ncols):
        raise ArithmeticError("rescaling direction missing from the solution space")
    basis = complement(F, kernel, [trivial], ncols)
    split = tuple(
        (tuple(v[: d + 1]), tuple(v[d + 1 : 2 * d + 2]), tuple(v[2 * d + 2 :])) for v in basis
    )
    formula = expected_dim_fixed_target(d, [(c.e, dl) for c, dl in zip(conds, deltas)])
    return DeformationReport(
        solver_dim=len(kernel) - 1,
        formula_dim=formula,
        deltas=deltas,
        basis=split,
        degree=d,
        conditions=tuple(conds),
    )
