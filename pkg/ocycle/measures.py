"""Random partitions R_(u,q), R^e, R^o: exact masses, normalization brackets and samplers.

All masses are exact rationals. The infinite prefactor Π_{i>=1}(1 - u²/q^{2i-1})
is replaced by its first PRODUCT_TERMS factors, which is an upper bound;
`prefactor_bracket` gives the matching lower bound.

Sampling draws the first column from `initial_column_dist` and then walks the
column chain, alternating K1 (odd steps) and K2 (even steps) until it hits 0.
Every categorical draw compares one 64-bit integer from numpy's generator with
exact integer thresholds ceil(cum · 2^64), so a seed always yields the same
partition.

Usage:
    from fractions import Fraction
    from ocycle.measures import MeasureParams, r_mass, sample
    params = MeasureParams(Fraction(1, 2), 2)
    r_mass(make_partition([1, 1]), params)
    sample(params, "R", seed=7)
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_settings
from .cycleindex import cycle_index_series
from .errors import ChainStepLimit, InputError, InvalidParameters, NormalizationFailure
from .partitions import EMPTY, Partition, from_columns, iter_partitions, odd_parts_even_mult
from .qpoly import check_orthogonal_q
from .weights import z_minus_1_indicator

VARIANTS = ("R", "Re", "Ro")
SCALE = 1 << 64


@dataclass(frozen=True)
class MeasureParams:
    u: Fraction
    q: int
    truncation: int = 40

    def __post_init__(self) -> None:
        u = Fraction(self.u)
        object.__setattr__(self, "u", u)
        if u <= 0 or u * u >= self.q:
            raise InvalidParameters(f"need 0 < u < sqrt(q); got u={u}, q={self.q}")
        if self.truncation < 0:
            raise InvalidParameters(f"truncation must be >= 0, got {self.truncation}")
        check_orthogonal_q(self.q)

    @property
    def u2(self) -> Fraction:
        return self.u * self.u


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise InputError(f"unknown measure variant {variant!r}; expected one of {VARIANTS}")


# --- prefactor ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _truncated_product(u2: Fraction, q: int, terms: int) -> Fraction:
    value = Fraction(1)
    for i in range(1, terms + 1):
        value *= 1 - u2 / q ** (2 * i - 1)
    return value


def prefactor(params: MeasureParams) -> Fraction:
    return _truncated_product(params.u2, params.q, get_settings().product_terms)


def prefactor_bracket(params: MeasureParams) -> Tuple[Fraction, Fraction]:
    """(lower, upper) bounds on Π_{i>=1}(1 - u²/q^{2i-1})."""
    terms = get_settings().product_terms
    upper = _truncated_product(params.u2, params.q, terms)
    q = params.q
    rest = params.u2 / Fraction(q) ** (2 * terms + 1) * Fraction(q * q, q * q - 1)
    return upper * (1 - rest), upper


# --- masses -------------------------------------------------------------------------------


def _core_mass(lam: Partition, params: MeasureParams) -> Fraction:
    """q^l u^|λ| / (q^{n + |λ|/2 + o/2} Π_i Π_{j<=m_i/2} (1 - q^{-2j}))."""
    q = params.q
    denom = Fraction(q) ** (lam.n + (lam.size + lam.o) // 2)
    for mi in lam.multiplicities.values():
        for j in range(1, mi // 2 + 1):
            denom *= 1 - Fraction(1, q ** (2 * j))
    return Fraction(q) ** lam.l * params.u**lam.size / denom


def _variant_scale(variant: str, params: MeasureParams) -> Fraction:
    if variant == "R":
        return 1 / (1 + params.u2)
    if variant == "Re":
        return Fraction(1)
    return 1 / params.u2


def _in_support(lam: Partition, variant: str) -> bool:
    if not odd_parts_even_mult(lam):
        return False
    if variant == "Re":
        return lam.l % 2 == 0
    if variant == "Ro":
        return lam.l % 2 == 1
    return True


def mass(lam: Partition, params: MeasureParams, variant: str = "R") -> Fraction:
    _check_variant(variant)
    if not _in_support(lam, variant):
        return Fraction(0)
    return prefactor(params) * _variant_scale(variant, params) * _core_mass(lam, params)


def r_mass(lam: Partition, params: MeasureParams) -> Fraction:
    return mass(lam, params, "R")


def re_mass(lam: Partition, params: MeasureParams) -> Fraction:
    return mass(lam, params, "Re")


def ro_mass(lam: Partition, params: MeasureParams) -> Fraction:
    return mass(lam, params, "Ro")


def _c_q(q: int) -> Fraction:
    # 1/Π_{i>=1}(1 - q^{-2i}) <= 1/(1 - Σ q^{-2i})
    return Fraction(q * q - 1, q * q - 2)


def _geometric_tail(params: MeasureParams, variant: str, first: int) -> Fraction:
    x = params.u2 / params.q
    return _c_q(params.q) * (1 + params.q) * _variant_scale(variant, params) * x**first / (1 - x)


def mass_tail_bound(params: MeasureParams, variant: str, truncation: int) -> Fraction:
    """Upper bound on the total mass of partitions with |λ| > truncation."""
    return _geometric_tail(params, variant, truncation // 2 + 1)


def iter_support(variant: str, max_size: int) -> Iterator[Partition]:
    for size in range(0, max_size + 1, 2):
        for lam in iter_partitions(size, odd_parts_even_mult):
            if _in_support(lam, variant):
                yield lam


@dataclass(frozen=True)
class MassBracket:
    partial: Fraction
    tail: Fraction
    lower: Fraction

    def contains(self, value: Fraction) -> bool:
        return self.lower <= value <= self.partial + self.tail


def _bracket(partial: Fraction, tail: Fraction, params: MeasureParams) -> MassBracket:
    lo, hi = prefactor_bracket(params)
    return MassBracket(partial, tail, partial * lo / hi)


def mass_bracket(params: MeasureParams, variant: str = "R", truncation: Optional[int] = None) -> MassBracket:
    """Σ_{|λ|<=T} mass(λ) with a rigorous tail bound; raises if 1 falls outside."""
    _check_variant(variant)
    T = params.truncation if truncation is None else truncation
    core = sum((_core_mass(lam, params) for lam in iter_support(variant, T)), Fraction(0))
    partial = prefactor(params) * _variant_scale(variant, params) * core
    bracket = _bracket(partial, mass_tail_bound(params, variant, T), params)
    if not bracket.contains(Fraction(1)):
        raise NormalizationFailure(
            f"{variant} mass to |λ|<={T}: [{float(bracket.lower)}, {float(bracket.partial + bracket.tail)}] excludes 1"
        )
    return bracket


# --- column chain -------------------------------------------------------------------------


def _d_factor(a: int, params: MeasureParams) -> Fraction:
    """(1 - u²/q)(1 - 1/q²)(1 - u²/q³)... with `a` factors."""
    q, u2 = params.q, params.u2
    value = Fraction(1)
    for i in range(1, a + 1):
        value *= (1 - u2 / q**i) if i % 2 else (1 - Fraction(1, q**i))
    return value


def pprime_sp(a: int, params: MeasureParams) -> Fraction:
    if a < 0:
        raise InputError(f"column height must be >= 0, got {a}")
    q, u = params.q, params.u
    k, odd = divmod(a, 2)
    if odd:
        return u ** (2 * k + 2) / (Fraction(q) ** (2 * k * k + 3 * k + 1) * _d_factor(a, params))
    return u ** (2 * k) / (Fraction(q) ** (2 * k * k + k) * _d_factor(a, params))


def pprime_o(a: int, params: MeasureParams) -> Fraction:
    if a < 0:
        raise InputError(f"column height must be >= 0, got {a}")
    q, u = params.q, params.u
    k, odd = divmod(a, 2)
    if odd:
        return u ** (2 * k + 1) / (Fraction(q) ** (2 * k * k + k) * _d_factor(a, params))
    return u ** (2 * k) / (Fraction(q) ** (2 * k * k - k) * _d_factor(a, params))


def _even_chain(q: int, top: int) -> int:
    # (q^top - 1)(q^{top-2} - 1)...(q^2 - 1) for even top
    value = 1
    for t in range(2, top + 1, 2):
        value *= q**t - 1
    return value


def k1(a: int, b: int, params: MeasureParams) -> Fraction:
    if a < 0 or b < 0 or b > a or (a - b) % 2:
        return Fraction(0)
    q = params.q
    exponent = Fraction(a * a - b * b + 2 * (a + 1) * b, 4)
    num = params.u**a * pprime_o(b, params)
    return num / (pprime_sp(a, params) * Fraction(q) ** int(exponent) * _even_chain(q, a - b))


def k2(a: int, b: int, params: MeasureParams) -> Fraction:
    if a < 0 or b < 0 or b > a:
        return Fraction(0)
    q = params.q
    num = params.u**a * pprime_sp(b, params)
    if (a - b) % 2 == 0:
        num *= Fraction(q) ** ((a - b) ** 2 // 4)
        exponent = Fraction(a * a + b, 2) - a
        return num / (pprime_o(a, params) * Fraction(q) ** int(exponent) * _even_chain(q, a - b))
    num *= Fraction(q) ** (((a - b) ** 2 - 1) // 4)
    return num / (pprime_o(a, params) * Fraction(q) ** ((a * a - a) // 2) * _even_chain(q, a - b - 1))


def initial_mass(a: int, params: MeasureParams, variant: str = "R") -> Fraction:
    """Probability that the first column λ'_1 equals a."""
    _check_variant(variant)
    if a < 0:
        return Fraction(0)
    pref = prefactor(params)
    if a % 2 == 0:
        if variant == "Ro":
            return Fraction(0)
        scale = 1 / (1 + params.u2) if variant == "R" else Fraction(1)
        return pref * scale * pprime_o(a, params)
    if variant == "Re":
        return Fraction(0)
    if variant == "R":
        return pref / (1 + params.u2) * params.u * pprime_o(a, params)
    return pref * pprime_o(a, params) / params.u


@dataclass
class InitialColumnDist:
    """Lazily tabulated law of λ'_1."""

    params: MeasureParams
    variant: str
    masses: List[Fraction] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def extend_to(self, a: int) -> None:
        with self._lock:
            while len(self.masses) <= a:
                self.masses.append(initial_mass(len(self.masses), self.params, self.variant))

    def mass(self, a: int) -> Fraction:
        self.extend_to(a)
        return self.masses[a]

    def partial_sum(self, upto: int) -> Fraction:
        self.extend_to(upto)
        return sum(self.masses[: upto + 1], Fraction(0))

    def tail_bound(self, upto: int) -> Fraction:
        """Upper bound on P(λ'_1 > upto)."""
        return _geometric_tail(self.params, self.variant, (upto + 1) // 2)

    def bracket(self, upto: int) -> MassBracket:
        b = _bracket(self.partial_sum(upto), self.tail_bound(upto), self.params)
        if not b.contains(Fraction(1)):
            raise NormalizationFailure(f"initial column law to {upto} does not bracket 1")
        return b


def initial_column_dist(params: MeasureParams, variant: str = "R") -> InitialColumnDist:
    _check_variant(variant)
    return InitialColumnDist(params, variant)


# --- sampling -----------------------------------------------------------------------------

_THRESHOLDS: Dict[Tuple[MeasureParams, int, int], Tuple[int, ...]] = {}
_THRESHOLD_LOCK = threading.Lock()


def _row_thresholds(params: MeasureParams, kernel: int, a: int) -> Tuple[int, ...]:
    key = (params, kernel, a)
    with _THRESHOLD_LOCK:
        cached = _THRESHOLDS.get(key)
    if cached is not None:
        return cached
    fn = k1 if kernel == 1 else k2
    cum = Fraction(0)
    out = []
    for b in range(a + 1):
        cum += fn(a, b, params)
        out.append(ceil(cum * SCALE))
    row = tuple(out)
    with _THRESHOLD_LOCK:
        _THRESHOLDS[key] = row
    return row


def _draw(rng: np.random.Generator) -> int:
    return int(rng.integers(0, np.iinfo(np.uint64).max, dtype=np.uint64, endpoint=True))


@dataclass
class ChainState:
    a: int
    step: int = 1
    columns: List[int] = field(default_factory=list)

    @property
    def done(self) -> bool:
        return self.a == 0


def _pick(thresholds: Tuple[int, ...], draw: int) -> int:
    for idx, t in enumerate(thresholds):
        if draw < t:
            return idx
    return len(thresholds) - 1


def advance(state: ChainState, params: MeasureParams, draw: int) -> ChainState:
    """One transition: K1 after an odd column, K2 after an even one."""
    kernel = 1 if state.step % 2 else 2
    b = _pick(_row_thresholds(params, kernel, state.a), draw)
    state.columns.append(b)
    state.a = b
    state.step += 1
    return state


def _first_column(dist: InitialColumnDist, draw: int, cap: int) -> int:
    cum = Fraction(0)
    for a in range(cap + 1):
        cum += dist.mass(a)
        if draw < ceil(cum * SCALE):
            return a
    raise ChainStepLimit(f"initial column law did not cover the draw within {cap} values")


def _sample_one(params: MeasureParams, dist: InitialColumnDist, rng: np.random.Generator, cap: int) -> Partition:
    first = _first_column(dist, _draw(rng), cap)
    state = ChainState(first, 1, [first])
    while not state.done:
        if state.step > cap:
            raise ChainStepLimit(f"column chain did not reach 0 within {cap} steps")
        advance(state, params, _draw(rng))
    lam = from_columns(state.columns)
    if not odd_parts_even_mult(lam):
        raise NormalizationFailure(f"sampled {lam} lies outside the support")
    return lam


def sample_many(params: MeasureParams, variant: str, seed: int, n: int) -> List[Partition]:
    """n draws from one generator stream."""
    _check_variant(variant)
    rng = np.random.default_rng(seed)
    dist = initial_column_dist(params, variant)
    cap = get_settings().chain_step_cap
    return [_sample_one(params, dist, rng, cap) for _ in range(n)]


def sample(params: MeasureParams, variant: str = "R", seed: int = 0) -> Partition:
    return sample_many(params, variant, seed, 1)[0]


@dataclass(frozen=True)
class TvReport:
    tv_distance: float
    n_samples: int
    truncation: int


def empirical_tv(params: MeasureParams, variant: str, n: int, seed: int, truncation: int = 20) -> TvReport:
    """Total-variation distance between n samples and the exact masses on |λ| <= truncation."""
    counts = Counter(sample_many(params, variant, seed, n))
    total = 0.0
    for lam in iter_support(variant, truncation):
        total += abs(counts.get(lam, 0) / n - float(mass(lam, params, variant)))
    return TvReport(total / 2, n, truncation)


# --- mixture identities ---------------------------------------------------------------


def mixture_mass(lam: Partition, params: MeasureParams, variant: str = "R", max_dim: int = 16) -> MassBracket:
    """The mass of λ rebuilt from finite groups with a random dimension.

    R mixes O⁺/O⁻, R^e mixes Ω⁺/Ω⁻ and R^o their non-trivial cosets; each group
    contributes the probability that λ_(z-1) = λ. Needs u < 1.
    """
    _check_variant(variant)
    u2 = params.u2
    if u2 >= 1:
        raise InvalidParameters("the dimension mixture needs u < 1")
    series_variant = "omega-sum" if variant == "Re" else "sum"
    series = cycle_index_series(params.q, z_minus_1_indicator(lam), max_dim, series_variant)
    total = Fraction(0)
    for n in range(0, max_dim // 2 + 1):
        coeff = series.coeff(2 * n)
        if variant == "R":
            weight = (1 - u2) / (1 + u2) if n == 0 else 2 * (1 - u2) * u2**n / (1 + u2)
            total += weight * (coeff if n == 0 else coeff / 2)
        elif variant == "Re":
            total += (1 - u2) * u2**n * coeff
        elif n >= 1:
            if lam.l % 2:
                total += (1 - u2) * u2 ** (n - 1) * coeff
    top = max_dim // 2 + 1
    if variant == "R":
        tail = 2 * u2**top / (1 + u2)
    elif variant == "Re":
        tail = u2**top
    else:
        tail = u2 ** (top - 1)
    return MassBracket(total, tail, total)


# --- large-dimension limits -----------------------------------------------------------


def finite_group_masses(lam: Partition, q: int, dims: Sequence[int], variant: str = "R") -> List[Fraction]:
    """P(λ_(z-1)(g) = λ) in the finite groups behind `variant`, one value per dimension.

    R averages O⁺ and O⁻, R^e averages Ω⁺ and Ω⁻, R^o their non-trivial cosets.
    As the dimension grows the values tend to mass(λ, MeasureParams(1, q), variant).
    """
    _check_variant(variant)
    if not dims or any(d < 2 or d % 2 for d in dims):
        raise InputError(f"dimensions must be even and >= 2, got {list(dims)}")
    series_variant = "omega-sum" if variant == "Re" else "sum"
    series = cycle_index_series(q, z_minus_1_indicator(lam), max(dims), series_variant)
    out = []
    for d in dims:
        c = series.coeff(d)
        if variant == "R":
            out.append(c / 2)
        elif variant == "Re" or lam.l % 2:
            out.append(c)
        else:
            out.append(Fraction(0))
    return out


def _euler_term(q: int, j: int) -> Fraction:
    """|[x^j] Π_{i>=1}(1 - x/q^{2i-1})| = q^{-j²} / Π_{i<=j}(1 - q^{-2i})."""
    value = Fraction(1, q ** (j * j))
    for i in range(1, j + 1):
        value /= 1 - Fraction(1, q ** (2 * i))
    return value


def limit_error_bound(lam: Partition, q: int, dim: int, variant: str = "R") -> Fraction:
    """Bound on |finite_group_masses(λ, q, [dim], variant)[0] - limiting mass|.

    The finite value is a partial sum of x^{|λ|/2}·Π(1 - x/q^{2i-1}) at x = 1,
    an alternating series with shrinking terms, so the next term bounds the error.
    """
    _check_variant(variant)
    if not _in_support(lam, variant):
        return Fraction(0)
    params = MeasureParams(Fraction(1), q)
    j = dim // 2 - lam.size // 2
    if j < 0:
        return prefactor(params) * _variant_scale(variant, params) * _core_mass(lam, params)
    return _variant_scale(variant, params) * _core_mass(lam, params) * _euler_term(q, j + 1)


def column_marginal(a: int, params: MeasureParams, truncation: int) -> MassBracket:
    """Σ_{l(λ)=a, |λ|<=T} r_mass(λ), bracketed by the partition tail."""
    core = sum(
        (_core_mass(lam, params) for lam in iter_support("R", truncation) if lam.l == a),
        Fraction(0),
    )
    partial = prefactor(params) * _variant_scale("R", params) * core
    return _bracket(partial, mass_tail_bound(params, "R", truncation), params)


def empty_mass(params: MeasureParams) -> Fraction:
    return r_mass(EMPTY, params)
