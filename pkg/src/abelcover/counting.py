"""Character-sum point counting for cover tuples.

For a tuple (c, (f_alpha)) and each index pair (s, omega) the derived
polynomial is

    F_(s)^(omega) = c_(s)^(omega) * prod_alpha f_alpha^(e_alpha),
    e_alpha = sum_j (ell/s_j) omega_j alpha_j  reduced to [0, ell),

and the number of points of the cover above x in P^1(F_q) is the sum over all
pairs of chi_ell(F_(s)^(omega)(x)).  That sum is evaluated here through the
A_beta dichotomy: at a point whose vanishing pattern has class beta the count
is |A_beta| when every surviving value is 1 and 0 otherwise.  An exact
cyclotomic-integer cross-check confirms the dichotomy against the literal
root-of-unity sum, and a brute-force y-search oracle confirms it at
unramified points.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import (
    BudgetExceeded,
    InternalInconsistency,
    MultipleVanishing,
    RamifiedPoint,
)
from .field import CharValue, FieldCtx, character
from .groupcomb import GroupSpec, IndexPair, a_beta, enumerate_index_pairs
from .moduli import (
    CoverTuple,
    DegreeVector,
    component_degree_maps,
    space_budget,
    space_size_bound,
)
from .polyring import Polynomial, enumerate_coprime_tuples

INFINITY = "inf"


@dataclass(frozen=True)
class DerivedPolynomial:
    pair: IndexPair
    constant: int  # element of F_q^*
    exponents: tuple[tuple[tuple[int, ...], int], ...]  # (alpha, e_alpha)
    poly: Polynomial  # the monic product, constant excluded


@dataclass
class PointEvaluation:
    x: object  # int in F_q, or INFINITY
    beta: tuple[int, ...]
    pattern: dict  # IndexPair -> CharValue
    count: int


@dataclass
class PointCountReport:
    points: list[PointEvaluation]
    total: int
    trace: int  # Tr(Frob_q) = q + 1 - total

    def to_json_dict(self) -> dict:
        return {
            "total": self.total,
            "trace": self.trace,
            "points": [
                {
                    "x": pt.x,
                    "beta": list(pt.beta),
                    "count": pt.count,
                    "pattern": [
                        {
                            "s": list(pair.s),
                            "omega": list(pair.omega),
                            "order": val.order,
                            "exponent": val.exponent,
                        }
                        for pair, val in sorted(
                            pt.pattern.items(), key=lambda kv: (kv[0].s, kv[0].omega)
                        )
                    ],
                }
                for pt in self.points
            ],
        }


def pair_exponents(G: GroupSpec, pair: IndexPair) -> dict[tuple[int, ...], int]:
    """e_alpha for every nonzero alpha, reduced to the least non-negative
    residue mod ell(s)."""
    ell = pair.ell
    return {
        alpha: sum(
            ell // sj * wj * aj for sj, wj, aj in zip(pair.s, pair.omega, alpha)
        )
        % ell
        for alpha in G.nonzero_vectors()
    }


def derived_polys(ctx: FieldCtx, G: GroupSpec, t: CoverTuple) -> list[DerivedPolynomial]:
    """One DerivedPolynomial per index pair; exactly |G| of them."""
    out = []
    polys = t.polys()
    for pair in enumerate_index_pairs(G):
        ell = pair.ell
        exps = pair_exponents(G, pair)
        prod = Polynomial.one(ctx)
        for alpha in sorted(exps):
            e = exps[alpha]
            if e:
                prod = prod * polys[alpha] ** e
        const = 1
        for cj, sj, wj in zip(t.c, pair.s, pair.omega):
            const = ctx.mul(const, ctx.pow(cj, ell // sj * wj % ell))
        out.append(
            DerivedPolynomial(pair, const, tuple(sorted(exps.items())), prod)
        )
    return out


def _cyclotomic_poly(n: int) -> list[int]:
    """Coefficients (low first) of the n-th cyclotomic polynomial over Z."""
    # x^n - 1 divided by the product of Phi_d for proper divisors d.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = _cyclotomic_poly(d)
            poly = _exact_div_z(poly, phi_d)
    return poly


def _exact_div_z(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quo = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            assert den[-1] == 1
            quo[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] -= c * b
    assert not any(num), "non-exact cyclotomic division"
    return quo


def _cyclotomic_consistent(values, count: int, r_n: int) -> bool:
    """Whether the exact sum of the root-of-unity values equals count, i.e.
    sum zeta^(e_i) - count = 0 in Z[zeta_{r_n}]."""
    vec = [0] * r_n
    for v in values:
        if not v.is_zero:
            vec[v.exponent * (r_n // v.order) % r_n] += 1
    vec[0] -= count
    if not any(vec):
        return True
    phi = _cyclotomic_poly(r_n)
    dd = len(phi) - 1
    rem = list(vec)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            for j, b in enumerate(phi):
                rem[i - dd + j] -= c * b
    return not any(rem[:dd])


def eval_at(
    ctx: FieldCtx,
    G: GroupSpec,
    t: CoverTuple,
    x,
    derived: Optional[list[DerivedPolynomial]] = None,
    check: bool = True,
) -> PointEvaluation:
    """Value pattern and point count of the cover above x (finite or INFINITY).

    With check=True the A_beta dichotomy is cross-checked against the exact
    cyclotomic sum of the pattern values.
    """
    if derived is None:
        derived = derived_polys(ctx, G, t)
    polys = t.polys()
    if x == INFINITY:
        d_vec = t.d_vec(G)
        beta = tuple(-dj % rj for dj, rj in zip(d_vec, G.r))
        pattern = {}
        for dp in derived:
            ell = dp.pair.ell
            cond = (
                sum(
                    ell // sj * wj * dj
                    for sj, wj, dj in zip(dp.pair.s, dp.pair.omega, d_vec)
                )
                % ell
            )
            if cond:
                pattern[dp.pair] = CharValue.zero(ell)
            else:
                pattern[dp.pair] = character(ctx, ell, dp.constant)
    else:
        vanishing = [alpha for alpha, f in polys.items() if f.evaluate(x) == 0]
        if len(vanishing) > 1:
            raise MultipleVanishing(f"{len(vanishing)} polynomials vanish at {x}")
        beta = vanishing[0] if vanishing else (0,) * G.n
        values = {alpha: f.evaluate(x) for alpha, f in polys.items()}
        pattern = {}
        for dp in derived:
            ell = dp.pair.ell
            v = dp.constant
            for alpha, e in dp.exponents:
                if e:
                    v = ctx.mul(v, ctx.pow(values[alpha], e))
            pattern[dp.pair] = character(ctx, ell, v)

    surviving = a_beta(G, beta)
    zero_support = {pair for pair, val in pattern.items() if val.is_zero}
    if zero_support != set(p.pair for p in derived) - surviving:
        raise InternalInconsistency(
            f"vanishing pattern at x={x} is not [beta]-admissible"
        )
    count = (
        len(surviving)
        if all(pattern[pair].is_one for pair in surviving)
        else 0
    )
    if check and not _cyclotomic_consistent(
        pattern.values(), count, G.exponent
    ):
        raise InternalInconsistency(
            f"cyclotomic sum disagrees with dichotomy count at x={x}"
        )
    return PointEvaluation(x, beta, pattern, count)


def count_points(
    ctx: FieldCtx, G: GroupSpec, t: CoverTuple, check: bool = True
) -> PointCountReport:
    """Point count over every x in P^1(F_q) plus the total and Tr(Frob_q)."""
    derived = derived_polys(ctx, G, t)
    points = [
        eval_at(ctx, G, t, x, derived=derived, check=check)
        for x in [*range(ctx.q), INFINITY]
    ]
    total = sum(pt.count for pt in points)
    return PointCountReport(points, total, ctx.q + 1 - total)


def oracle_count(ctx: FieldCtx, G: GroupSpec, t: CoverTuple, x: int) -> int:
    """Brute-force count above a finite unramified x: the number of solutions
    (y_1,...,y_n) of y_j^{r_j} = F_j(x), found by exhaustive search."""
    polys = t.polys()
    if any(f.evaluate(x) == 0 for f in polys.values()):
        raise RamifiedPoint(f"some f_alpha vanishes at x = {x}")
    out = 1
    for j, rj in enumerate(G.r):
        target = t.c[j]
        for alpha, f in polys.items():
            target = ctx.mul(target, ctx.pow(f.evaluate(x), alpha[j]))
        out *= sum(1 for y in range(ctx.q) if ctx.pow(y, rj) == target)
    return out


# -- bulk harnesses -----------------------------------------------------

def _component_point_data(ctx, G, pairs, pair_exps, polys, degmap):
    """Per-x data for one polynomial tuple, independent of the leading
    coefficients: (beta_x, {pair: dlog-exponent or None}) for each of the
    q+1 points.  The exponent omits the c-part."""
    q = ctx.q
    data = []
    values = {alpha: [polys[alpha].evaluate(x) for x in range(q)] for alpha in polys}
    for x in range(q):
        vanishing = [alpha for alpha in polys if values[alpha][x] == 0]
        if len(vanishing) > 1:
            raise MultipleVanishing(f"{len(vanishing)} polynomials vanish at {x}")
        beta = vanishing[0] if vanishing else (0,) * G.n
        exps = {}
        for pair in pairs:
            ell = pair.ell
            acc = 0
            dead = False
            for alpha, e in pair_exps[pair]:
                if e:
                    v = values[alpha][x]
                    if v == 0:
                        dead = True
                        break
                    acc += e * ctx.dlog(v)
            exps[pair] = None if dead else acc % ell
        data.append((beta, exps))
    d_vec = [0] * G.n
    for alpha, d in degmap.items():
        for j, aj in enumerate(alpha):
            d_vec[j] += aj * d
    beta_inf = tuple(-dj % rj for dj, rj in zip(d_vec, G.r))
    exps = {}
    for pair in pairs:
        ell = pair.ell
        cond = (
            sum(ell // sj * wj * dj for sj, wj, dj in zip(pair.s, pair.omega, d_vec))
            % ell
        )
        exps[pair] = None if cond else 0
    data.append((beta_inf, exps))
    return data


def _c_part_exponents(ctx, G, pairs):
    """dlog-exponent of c_(s)^(omega) mod ell for every unit vector c."""
    out = {}
    for c in itertools.product(range(1, ctx.q), repeat=G.n):
        per_pair = {}
        for pair in pairs:
            ell = pair.ell
            per_pair[pair] = (
                sum(
                    (ell // sj * wj % ell) * ctx.dlog(cj)
                    for sj, wj, cj in zip(pair.s, pair.omega, c)
                )
                % ell
            )
        out[c] = per_pair
    return out


def space_count_histogram(
    ctx: FieldCtx,
    G: GroupSpec,
    dv: DegreeVector,
    budget: Optional[int] = None,
) -> Counter:
    """Histogram of #C(P^1(F_q)) over the full space.

    Equivalent to running count_points on every enumerated tuple, but the
    polynomial evaluations are shared across the leading-coefficient block.
    """
    budget = space_budget() if budget is None else budget
    bound = space_size_bound(ctx, G, dv)
    if bound > budget:
        raise BudgetExceeded(bound, budget)
    pairs = enumerate_index_pairs(G)
    pair_exps = {
        pair: tuple(sorted(pair_exponents(G, pair).items())) for pair in pairs
    }
    c_exps = _c_part_exponents(ctx, G, pairs)
    a_sets = {
        beta: sorted(a_beta(G, beta), key=lambda p: (p.s, p.omega))
        for beta in G.all_vectors()
    }
    hist: Counter = Counter()
    for tag, degmap in component_degree_maps(G, dv):
        for polys in enumerate_coprime_tuples(ctx, degmap):
            data = _component_point_data(ctx, G, pairs, pair_exps, polys, degmap)
            for c, b in c_exps.items():
                total = 0
                for beta, exps in data:
                    surviving = a_sets[beta]
                    for pair in surviving:
                        a = exps[pair]
                        if a is None or (a + b[pair]) % pair.ell:
                            break
                    else:
                        total += len(surviving)
                hist[total] += 1
    return hist


def space_pattern_histogram(
    ctx: FieldCtx,
    G: GroupSpec,
    dv: DegreeVector,
    x,
    budget: Optional[int] = None,
) -> Counter:
    """Histogram, over the full space, of the value pattern at a fixed x,
    keyed by (class representative of beta, all-surviving-values-are-one)."""
    from .groupcomb import class_of

    budget = space_budget() if budget is None else budget
    bound = space_size_bound(ctx, G, dv)
    if bound > budget:
        raise BudgetExceeded(bound, budget)
    pairs = enumerate_index_pairs(G)
    pair_exps = {
        pair: tuple(sorted(pair_exponents(G, pair).items())) for pair in pairs
    }
    c_exps = _c_part_exponents(ctx, G, pairs)
    a_sets = {
        beta: sorted(a_beta(G, beta), key=lambda p: (p.s, p.omega))
        for beta in G.all_vectors()
    }
    reps = {beta: class_of(G, beta).representative for beta in G.all_vectors()}
    hist: Counter = Counter()
    idx = ctx.q if x == INFINITY else x
    for tag, degmap in component_degree_maps(G, dv):
        for polys in enumerate_coprime_tuples(ctx, degmap):
            data = _component_point_data(ctx, G, pairs, pair_exps, polys, degmap)
            beta, exps = data[idx]
            surviving = a_sets[beta]
            for c, b in c_exps.items():
                all_one = all(
                    exps[pair] is not None and (exps[pair] + b[pair]) % pair.ell == 0
                    for pair in surviving
                )
                hist[(reps[beta], all_one)] += 1
    return hist
