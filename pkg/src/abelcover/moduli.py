"""Degree vectors, the congruence constraints d_j = 0 mod r_j, the genus
formula, and enumeration / sampling of the cover-tuple spaces.

A space is a union of components: the plain component with the prescribed
degrees, plus one "dropped" component per nonzero exponent vector beta with
d(beta) >= 1, in which the beta-coordinate degree is lowered by one and the
point at infinity ramifies instead.  All components carry the same genus.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .errors import (
    BudgetExceeded,
    CongruenceViolation,
    DimensionMismatch,
    MultipleVanishing,
    NegativeGenus,
    NonIntegralGenus,
    RejectionStall,
)
from .field import FieldCtx
from .groupcomb import GroupSpec, ram_exponent
from .polyring import (
    Polynomial,
    enumerate_coprime_tuples,
    is_squarefree,
    poly_gcd,
)

DEFAULT_BUDGET = 10_000_000


def space_budget() -> int:
    return int(os.environ.get("ABCOVER_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class DegreeVector:
    """Non-negative degrees d(alpha), one per nonzero exponent vector, with
    every derived d_j = sum_alpha alpha_j d(alpha) divisible by r_j."""

    group: GroupSpec
    degrees: tuple[tuple[tuple[int, ...], int], ...]  # sorted (alpha, d) pairs

    def degree_of(self, alpha) -> int:
        return dict(self.degrees)[tuple(alpha)]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.degrees)

    @property
    def d_vec(self) -> tuple[int, ...]:
        out = [0] * self.group.n
        for alpha, d in self.degrees:
            for j, aj in enumerate(alpha):
                out[j] += aj * d
        return tuple(out)

    @property
    def total(self) -> int:
        return sum(d for _, d in self.degrees)

    @property
    def min_degree(self) -> int:
        return min(d for _, d in self.degrees)

    def to_json(self) -> str:
        return json.dumps(
            {",".join(map(str, a)): d for a, d in self.degrees}, sort_keys=True
        )


def _parse_alpha(key, n: int) -> tuple[int, ...]:
    if isinstance(key, str):
        parts = tuple(int(x) for x in key.split(","))
    else:
        parts = tuple(key)
    if len(parts) != n:
        raise DimensionMismatch(f"alpha key {key!r} has wrong length for n = {n}")
    return parts


def normalize_degrees(G: GroupSpec, raw: Mapping) -> DegreeVector:
    """Validate a raw degree assignment and fill unmentioned alphas with 0.

    Keys may be tuples or comma-joined strings (the JSON wire form).
    Raises CongruenceViolation naming the first offending coordinate j.
    """
    degrees = {alpha: 0 for alpha in G.nonzero_vectors()}
    for key, d in raw.items():
        alpha = _parse_alpha(key, G.n)
        if alpha not in degrees:
            raise DimensionMismatch(f"{alpha} is not a nonzero exponent vector")
        if d < 0:
            raise CongruenceViolation(0, d, 1)
        degrees[alpha] = int(d)
    dv = DegreeVector(G, tuple(sorted(degrees.items())))
    for j, (dj, rj) in enumerate(zip(dv.d_vec, G.r), start=1):
        if dj % rj:
            raise CongruenceViolation(j, dj, rj)
    return dv


def degrees_from_json(G: GroupSpec, data) -> DegreeVector:
    """Accept either a JSON string or an already-decoded mapping."""
    if isinstance(data, str):
        data = json.loads(data)
    return normalize_degrees(G, data)


def genus_contributions(G: GroupSpec, dv: DegreeVector) -> dict:
    """Per-alpha terms (|G| - |G|/e(alpha)) * d(alpha) of the genus display."""
    size = G.size
    return {
        alpha: (size - size // ram_exponent(G, alpha)) * d
        for alpha, d in dv.degrees
    }


def _degrees_span_group(G: GroupSpec, dv: DegreeVector) -> bool:
    """Whether the branched alpha generate all of Z/r_1 x ... x Z/r_n."""
    span = {(0,) * G.n}
    for alpha, d in dv.degrees:
        if d == 0:
            continue
        frontier = set(span)
        while frontier:
            nxt = {
                tuple((v + a) % r for v, a, r in zip(vec, alpha, G.r))
                for vec in frontier
            } - span
            span |= nxt
            frontier = nxt
    return len(span) == G.size


def genus(G: GroupSpec, dv: DegreeVector) -> int:
    """g with 2g + 2|G| - 2 = sum_alpha (|G| - |G|/e(alpha)) d(alpha).

    The all-zero degree vector describes the trivial cover, a disjoint union
    of lines; its curve side is a genus-0 line, so g = 0 by convention there.
    When the branched alpha fail to generate the group the cover is
    geometrically disconnected and the Euler-characteristic bookkeeping can
    legitimately be negative; NegativeGenus is reserved for spanning data.
    """
    if all(d == 0 for _, d in dv.degrees):
        return 0
    rhs = sum(genus_contributions(G, dv).values())
    twice = rhs + 2 - 2 * G.size
    if twice % 2:
        raise NonIntegralGenus(f"2g = {twice} is odd for degrees {dv.degrees}")
    g = twice // 2
    if g < 0 and _degrees_span_group(G, dv):
        raise NegativeGenus(f"g = {g} for degrees {dv.degrees}")
    return g


def component_degree_maps(
    G: GroupSpec, dv: DegreeVector
) -> list[tuple[Optional[tuple[int, ...]], dict]]:
    """(tag, {alpha: degree}) per component: tag None for the plain component,
    beta for a dropped component (present only when d(beta) >= 1)."""
    base = dv.as_dict()
    out = [(None, dict(base))]
    for beta in G.nonzero_vectors():
        if base[beta] >= 1:
            dropped = dict(base)
            dropped[beta] -= 1
            out.append((beta, dropped))
    return out


def genus_invariance_check(G: GroupSpec, dv: DegreeVector) -> bool:
    """Recompute the genus of every component, infinity term included, and
    confirm all agree with genus(G, dv)."""
    size = G.size
    expected = genus(G, dv)
    for tag, degmap in component_degree_maps(G, dv):
        d_vec = [0] * G.n
        for alpha, d in degmap.items():
            for j, aj in enumerate(alpha):
                d_vec[j] += aj * d
        rhs = sum(
            (size - size // ram_exponent(G, alpha)) * d
            for alpha, d in degmap.items()
        )
        rhs += size - size // ram_exponent(G, tuple(d_vec))
        if all(d == 0 for d in degmap.values()):
            g = 0
        else:
            if (rhs + 2 - 2 * size) % 2:
                return False
            g = (rhs + 2 - 2 * size) // 2
        if g != expected:
            return False
    return True


@dataclass(frozen=True)
class CoverTuple:
    """One element (c, (f_alpha)) of the hatted space: leading coefficients
    c_j in F_q^* plus the squarefree pairwise-coprime polynomial tuple.
    tag records the component: None = plain, beta = dropped."""

    c: tuple[int, ...]
    f: tuple[tuple[tuple[int, ...], Polynomial], ...]  # sorted (alpha, poly)
    tag: Optional[tuple[int, ...]] = None

    def poly(self, alpha) -> Polynomial:
        return dict(self.f)[tuple(alpha)]

    def polys(self) -> dict[tuple[int, ...], Polynomial]:
        return dict(self.f)

    def d_vec(self, G: GroupSpec) -> tuple[int, ...]:
        out = [0] * G.n
        for alpha, f in self.f:
            for j, aj in enumerate(alpha):
                out[j] += aj * max(f.degree, 0)
        return tuple(out)

    def validate(self, ctx: FieldCtx, G: GroupSpec) -> None:
        if len(self.c) != G.n or any(not 1 <= cj < ctx.q for cj in self.c):
            raise DimensionMismatch("leading-coefficient vector invalid")
        polys = [f for _, f in self.f if f.degree >= 1]
        for f in polys:
            if not (f.is_monic and is_squarefree(f)):
                raise MultipleVanishing(f"{f!r} is not monic squarefree")
        for i, f in enumerate(polys):
            for g in polys[:i]:
                if poly_gcd(f, g).degree > 0:
                    raise MultipleVanishing(f"{f!r} and {g!r} share a factor")


def make_cover_tuple(c, polys: Mapping, tag=None) -> CoverTuple:
    return CoverTuple(
        tuple(c),
        tuple(sorted((tuple(a), f) for a, f in polys.items())),
        None if tag is None else tuple(tag),
    )


def _component_size_bound(ctx: FieldCtx, degmap: dict) -> int:
    out = 1
    for d in degmap.values():
        out *= ctx.q**d
    return out


def space_size_bound(ctx: FieldCtx, G: GroupSpec, dv: DegreeVector) -> int:
    """Cheap upper bound on |space|, used for budget gating."""
    units = (ctx.q - 1) ** G.n
    return units * sum(
        _component_size_bound(ctx, degmap)
        for _, degmap in component_degree_maps(G, dv)
    )


def component_sizes(ctx: FieldCtx, G: GroupSpec, dv: DegreeVector) -> dict:
    """Exact component cardinalities (leading coefficients included), by
    counting the coprime-tuple streams."""
    units = (ctx.q - 1) ** G.n
    return {
        tag: units * sum(1 for _ in enumerate_coprime_tuples(ctx, degmap))
        for tag, degmap in component_degree_maps(G, dv)
    }


def enumerate_space(
    ctx: FieldCtx,
    G: GroupSpec,
    dv: DegreeVector,
    budget: Optional[int] = None,
) -> Iterator[CoverTuple]:
    """Every (c, (f_alpha)) of the space exactly once: plain component first,
    then the dropped components in beta order."""
    budget = space_budget() if budget is None else budget
    bound = space_size_bound(ctx, G, dv)
    if bound > budget:
        raise BudgetExceeded(bound, budget)
    units = list(range(1, ctx.q))
    for tag, degmap in component_degree_maps(G, dv):
        for polys in enumerate_coprime_tuples(ctx, degmap):
            f = tuple(sorted(polys.items()))
            for c in itertools.product(units, repeat=G.n):
                yield CoverTuple(c, f, tag)


@dataclass
class SampleWeights:
    sizes: dict
    exact: bool
    stderr: Optional[dict] = None


def _estimate_component_sizes(
    ctx: FieldCtx, G: GroupSpec, dv: DegreeVector, rng: random.Random, trials: int
) -> SampleWeights:
    units = (ctx.q - 1) ** G.n
    sizes = {}
    stderr = {}
    for tag, degmap in component_degree_maps(G, dv):
        bound = _component_size_bound(ctx, degmap)
        hits = 0
        for _ in range(trials):
            if _accept(_random_polys(ctx, degmap, rng)):
                hits += 1
        rate = hits / trials
        sizes[tag] = units * bound * rate
        stderr[tag] = units * bound * (rate * (1 - rate) / trials) ** 0.5
    return SampleWeights(sizes, exact=False, stderr=stderr)


def _random_polys(ctx: FieldCtx, degmap: dict, rng: random.Random) -> dict:
    out = {}
    for alpha in sorted(degmap):
        d = degmap[alpha]
        coeffs = [rng.randrange(ctx.q) for _ in range(d)] + [1]
        out[alpha] = Polynomial(ctx, coeffs)
    return out


def _accept(polys: dict) -> bool:
    fs = [f for f in polys.values() if f.degree >= 1]
    if any(not is_squarefree(f) for f in fs):
        return False
    for i, f in enumerate(fs):
        for g in fs[:i]:
            if poly_gcd(f, g).degree > 0:
                return False
    return True


def sample_space(
    ctx: FieldCtx,
    G: GroupSpec,
    dv: DegreeVector,
    count: int,
    seed: int,
    exact_budget: int = 200_000,
    stall_limit: int = 20_000,
) -> Iterator[CoverTuple]:
    """count i.i.d. uniform draws from the space, deterministic under seed.

    Components are weighted by exact sizes when the space is small enough to
    count, otherwise by rejection-rate estimates; polynomials are then
    rejection-sampled until squarefree and pairwise coprime.
    """
    rng = random.Random(seed)
    if space_size_bound(ctx, G, dv) <= exact_budget:
        weights = SampleWeights(component_sizes(ctx, G, dv), exact=True)
    else:
        weights = _estimate_component_sizes(ctx, G, dv, rng, trials=2000)
    tags = sorted(weights.sizes, key=lambda t: (t is not None, t))
    totals = [weights.sizes[t] for t in tags]
    degmaps = dict(component_degree_maps(G, dv))
    for _ in range(count):
        tag = rng.choices(tags, weights=totals)[0]
        degmap = degmaps[tag]
        for attempt in range(stall_limit):
            polys = _random_polys(ctx, degmap, rng)
            if _accept(polys):
                break
        else:
            raise RejectionStall(
                f"no acceptance in {stall_limit} draws for component {tag}"
            )
        c = tuple(rng.randrange(1, ctx.q) for _ in range(G.n))
        yield CoverTuple(c, tuple(sorted(polys.items())), tag)
