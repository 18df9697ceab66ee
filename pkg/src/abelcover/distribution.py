"""The theoretical distribution of point counts and its comparison with
empirical histograms.

Each of the q+1 points of P^1(F_q) contributes an i.i.d. variable taking the
value |G|/s with probability s*phi_G(s) / (|G|(q+|G|-1)) for s | exp(G),
s != 1, the value |G| with probability q / (|G|(q+|G|-1)), and 0 with the
remaining mass.  The total-count law is the exact (q+1)-fold convolution.
All probabilities are exact rationals; floats appear only in reporting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .errors import BadField, BadMultiplicity, EmptyHistogram, InternalInconsistency
from .groupcomb import GroupSpec, beta_classes, divisors, euler_phi, phi_G


@dataclass(frozen=True)
class Pmf:
    """Exact probability mass function on non-negative integers."""

    probs: tuple[tuple[int, Fraction], ...]  # sorted (value, probability)

    def __post_init__(self):
        total = sum(p for _, p in self.probs)
        if total != 1 or any(p < 0 for _, p in self.probs):
            raise InternalInconsistency(f"pmf does not normalize: sum = {total}")

    @classmethod
    def from_dict(cls, d: Mapping[int, Fraction]) -> "Pmf":
        return cls(tuple(sorted((v, p) for v, p in d.items() if p != 0)))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.probs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.probs)

    def prob(self, value: int) -> Fraction:
        return dict(self.probs).get(value, Fraction(0))

    def mean(self) -> Fraction:
        return sum((Fraction(v) * p for v, p in self.probs), Fraction(0))

    def convolve(self, other: "Pmf") -> "Pmf":
        out: dict[int, Fraction] = {}
        for v, p in self.probs:
            for w, q in other.probs:
                out[v + w] = out.get(v + w, Fraction(0)) + p * q
        return Pmf.from_dict(out)

    def convolve_power(self, k: int) -> "Pmf":
        out = Pmf.from_dict({0: Fraction(1)})
        base = self
        while k:
            if k & 1:
                out = out.convolve(base)
            base = base.convolve(base)
            k >>= 1
        return out

    def csv_rows(self) -> list[tuple]:
        return [
            (v, p.numerator, p.denominator, float(p)) for v, p in self.probs
        ]

    def to_json(self) -> str:
        return json.dumps(
            {str(v): [p.numerator, p.denominator] for v, p in self.probs}
        )


def _check_field(G: GroupSpec, q: int) -> None:
    if q < 2 or (q - 1) % G.exponent:
        raise BadField(f"q = {q} is not 1 mod exp(G) = {G.exponent}")


def point_denominator(G: GroupSpec, q: int) -> int:
    return G.size * (q + G.size - 1)


def single_point_law(G: GroupSpec, q: int) -> Pmf:
    """The law of the number of points above one x in the large-degree limit."""
    _check_field(G, q)
    size = G.size
    denom = point_denominator(G, q)
    probs: dict[int, Fraction] = {}
    for s in divisors(G.exponent):
        if s == 1:
            probs[size] = Fraction(q, denom)
        else:
            probs[size // s] = probs.get(size // s, Fraction(0)) + Fraction(
                s * phi_G(G, s), denom
            )
    zero_mass = Fraction(
        (size - 1) * (q + size)
        - sum(s * phi_G(G, s) for s in divisors(G.exponent))
        + 1,
        denom,
    )
    probs[0] = probs.get(0, Fraction(0)) + zero_mass
    return Pmf.from_dict(probs)


def total_law(G: GroupSpec, q: int) -> Pmf:
    """Exact (q+1)-fold convolution of single_point_law."""
    return single_point_law(G, q).convolve_power(q + 1)


def pattern_probability(G: GroupSpec, q: int, multiplicities: Mapping) -> Fraction:
    """Limiting probability that the value patterns at q+1 fixed points
    realize a prescribed multiplicity of admissibility classes.

    Keys of ``multiplicities`` are class representatives (the zero vector for
    the unramified class); values must be non-negative and sum to q+1.  The
    per-class coefficient is e(beta)*phi(e(beta)), the number of (member,
    surviving-value) choices, which equals phi(e(beta)^2) identically.
    """
    _check_field(G, q)
    classes = {c.representative: c for c in beta_classes(G)}
    m = {}
    for key, mult in multiplicities.items():
        rep = tuple(key)
        if rep not in classes or mult < 0:
            raise BadMultiplicity(f"bad class/multiplicity {key!r}: {mult}")
        m[rep] = int(mult)
    if sum(m.values()) != q + 1:
        raise BadMultiplicity(f"multiplicities sum to {sum(m.values())}, not q+1")
    denom = point_denominator(G, q)
    zero = (0,) * G.n
    out = Fraction(1)
    for rep, mult in m.items():
        if rep == zero:
            out *= Fraction(q, denom) ** mult
        else:
            e = classes[rep].e
            coeff = e * euler_phi(e)
            if coeff != euler_phi(e * e):
                raise InternalInconsistency(
                    f"e*phi(e) != phi(e^2) for e = {e}"
                )
            out *= Fraction(coeff, denom) ** mult
    return out


# -- Euler product and size asymptotics ---------------------------------

def _moebius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def count_irreducibles(q: int, m: int) -> int:
    """Number of monic irreducibles of degree m over F_q (Moebius necklace
    count)."""
    return sum(_moebius(d) * q ** (m // d) for d in divisors(m)) // m


def euler_L(q: int, n: int, truncation_degree: int) -> tuple[Fraction, Fraction]:
    """Rigorous rational interval [lo, hi] for
    L_n = prod_{j<=n} prod_P (1 - j / ((|P|-1)(|P|+j))).

    The partial product over deg(P) <= D is exact; the tail over deg(P) > D is
    bounded below via prod(1-x_i) >= 1 - sum x_i with pi_q(m) <= q^m and
    (q^m-1)^2 >= q^(2m)/4.
    """
    if n == 0:
        return Fraction(1), Fraction(1)

    # The exact partial product has astronomically long numerators, so the
    # interval is maintained with directed rounding at fixed precision.
    bits = 192
    scale = 1 << bits

    def down(x: Fraction) -> Fraction:
        return Fraction(x.numerator * scale // x.denominator, scale)

    def up(x: Fraction) -> Fraction:
        return Fraction(-((-x.numerator * scale) // x.denominator), scale)

    def power(base: Fraction, e: int) -> tuple[Fraction, Fraction]:
        lo, hi = Fraction(1), Fraction(1)
        b_lo, b_hi = base, base
        while e:
            if e & 1:
                lo, hi = down(lo * b_lo), up(hi * b_hi)
            b_lo, b_hi = down(b_lo * b_lo), up(b_hi * b_hi)
            e >>= 1
        return lo, hi

    partial_lo, partial_hi = Fraction(1), Fraction(1)
    for m in range(1, truncation_degree + 1):
        size = q**m
        pi = count_irreducibles(q, m)
        for j in range(1, n + 1):
            f_lo, f_hi = power(1 - Fraction(j, (size - 1) * (size + j)), pi)
            partial_lo = down(partial_lo * f_lo)
            partial_hi = up(partial_hi * f_hi)
    tail = Fraction(2 * n * (n + 1), q**truncation_degree * (q - 1))
    lo = partial_lo * (1 - tail) if tail < 1 else Fraction(0)
    return lo, partial_hi


def zeta_q(q: int, s: int = 2) -> Fraction:
    """Zeta function of F_q[X]: prod_P (1 - |P|^-s)^-1 = 1/(1 - q^(1-s))."""
    return 1 / (1 - Fraction(q) ** (1 - s))


def size_main_term(
    G: GroupSpec, q: int, sum_degrees: int, truncation_degree: int = 8
) -> tuple[Fraction, Fraction]:
    """Interval for the predicted |space|:
    (q-1)^n (q+|G|-1)/q * L_{|G|-2} q^(sum d) / zeta_q(2)^(|G|-1)."""
    _check_field(G, q)
    lo, hi = euler_L(q, G.size - 2, truncation_degree)
    front = (
        Fraction((q - 1) ** G.n * (q + G.size - 1), q)
        * Fraction(q) ** sum_degrees
        / zeta_q(q, 2) ** (G.size - 1)
    )
    return front * lo, front * hi


# -- empirical comparison ------------------------------------------------

@dataclass
class ComparisonReport:
    draws: int
    tv: Fraction
    tv_float: float
    residuals: dict[int, Fraction]  # empirical - theoretical per value
    stderr: Optional[dict[int, float]] = None  # Monte-Carlo, sampled data only

    def csv_rows(self, theoretical: Pmf, empirical: Mapping[int, int]):
        values = sorted(set(theoretical.support) | set(empirical))
        rows = []
        for v in values:
            emp = Fraction(empirical.get(v, 0), self.draws)
            th = theoretical.prob(v)
            rows.append(
                (v, emp.numerator, emp.denominator, th.numerator, th.denominator)
            )
        return rows


def compare(
    empirical: Mapping[int, int],
    theoretical: Pmf,
    sampled: bool = False,
) -> ComparisonReport:
    """Total-variation distance and per-value residuals between an empirical
    histogram (integer counts) and an exact Pmf."""
    draws = sum(empirical.values())
    if draws == 0:
        raise EmptyHistogram("empirical histogram has no mass")
    values = sorted(set(theoretical.support) | set(empirical))
    residuals = {}
    tv = Fraction(0)
    stderr = {} if sampled else None
    for v in values:
        emp = Fraction(empirical.get(v, 0), draws)
        th = theoretical.prob(v)
        residuals[v] = emp - th
        tv += abs(emp - th)
        if sampled:
            p = float(emp)
            stderr[v] = (p * (1 - p) / draws) ** 0.5
    tv /= 2
    return ComparisonReport(draws, tv, float(tv), residuals, stderr)
