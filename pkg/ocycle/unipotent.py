"""Unipotent classes of Sp_2n(q) and O±_2n(q) for even q.

A unipotent element is described by a canonical decomposition

    V = Σ W(m_i)^{a_i}  ⊕  Σ V(2k_j)^{b_j}

where W(m) carries two Jordan blocks J_m and V(2k) carries one block J_2k.
The invariants s, t, δ of a decomposition give the number of classes in the
finite group; the classes themselves are labelled by sign sequences.

Usage:
    from ocycle.unipotent import enum_decomps, sp_invariants, class_labels, weil_diff_value
    for d in enum_decomps(4):
        print(d, sp_invariants(d).class_count)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import log
from .cycleindex import RcfData, data_violations
from .errors import BadDimension, InputError, InvalidData
from .orders import gl_unip_centralizer, o_order, sign_symbol, sp_order
from .partitions import Partition, iter_partitions, make_partition, odd_parts_even_mult
from .pool import parallel_map
from .qpoly import z_minus_1

CONTEXTS = ("Sp", "Oplus", "Ominus")
Signs = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class CanonicalDecomposition:
    """W-terms (m, a) and V-terms (k, b), each sorted by their first entry."""

    w_terms: Tuple[Tuple[int, int], ...] = ()
    v_terms: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        ms = [m for m, _ in self.w_terms]
        ks = [k for k, _ in self.v_terms]
        if ms != sorted(set(ms)) or ks != sorted(set(ks)):
            raise InvalidData(f"decomposition terms must be strictly increasing: {self.w_terms} {self.v_terms}")
        if any(m < 1 or a < 1 for m, a in self.w_terms):
            raise InvalidData(f"W terms need m >= 1 and a >= 1: {self.w_terms}")
        if any(k < 1 or b not in (1, 2) for k, b in self.v_terms):
            raise InvalidData(f"V terms need k >= 1 and b in {{1, 2}}: {self.v_terms}")

    @property
    def dimension(self) -> int:
        return sum(2 * m * a for m, a in self.w_terms) + sum(2 * k * b for k, b in self.v_terms)

    @property
    def r(self) -> int:
        return len(self.v_terms)

    @property
    def jordan_type(self) -> Partition:
        parts: List[int] = []
        for m, a in self.w_terms:
            parts += [m] * (2 * a)
        for k, b in self.v_terms:
            parts += [2 * k] * b
        return make_partition(parts)

    def multiplicity_of_w(self, m: int) -> int:
        return dict(self.w_terms).get(m, 0)

    def is_exceptional(self) -> bool:
        return not self.v_terms and all(m % 2 == 0 for m, _ in self.w_terms)

    def __str__(self) -> str:
        pieces = [f"W({m})^{a}" for m, a in self.w_terms] + [f"V({2 * k})^{b}" for k, b in self.v_terms]
        return "+".join(pieces) if pieces else "0"


def jordan_type(d: CanonicalDecomposition) -> Partition:
    return d.jordan_type


# --- enumeration ------------------------------------------------------------------------


def decompositions_of_type(lam: Partition) -> List[CanonicalDecomposition]:
    """Every canonical decomposition whose Jordan type is λ (empty if λ is not symplectic)."""
    if not odd_parts_even_mult(lam):
        return []
    options: List[List[Tuple[Optional[Tuple[int, int]], Optional[Tuple[int, int]]]]] = []
    for m, c in sorted(lam.multiplicities.items()):
        if m % 2:
            options.append([((m, c // 2), None)])
            continue
        choices = []
        for b in (0, 1, 2):
            if b > c or (c - b) % 2:
                continue
            a = (c - b) // 2
            choices.append(((m, a) if a else None, (m // 2, b) if b else None))
        options.append(choices)
    out = []
    for combo in product(*options):
        w = tuple(term for term, _ in combo if term is not None)
        v = tuple(sorted(term for _, term in combo if term is not None))
        out.append(CanonicalDecomposition(w, v))
    return sorted(out)


def enum_decomps(dim: int) -> List[CanonicalDecomposition]:
    """All canonical decompositions of a 2n-dimensional symplectic space."""
    if dim < 2 or dim % 2:
        raise BadDimension(f"dimension must be even and >= 2, got {dim}")
    types = list(iter_partitions(dim, odd_parts_even_mult))
    groups = parallel_map(decompositions_of_type, types)
    return [d for group in groups for d in group]


# --- invariants ------------------------------------------------------------------------


@dataclass(frozen=True)
class Invariants:
    s: int
    t: int
    delta: int
    index_set: Tuple[int, ...]
    intervals: Tuple[Tuple[int, ...], ...]
    class_count: int


def k_intervals(ks: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Split sorted k-values into runs of consecutive integers (gap >= 2 cuts)."""
    runs: List[List[int]] = []
    for k in ks:
        if runs and k - runs[-1][-1] < 2:
            runs[-1].append(k)
        else:
            runs.append([k])
    return tuple(tuple(run) for run in runs)


def _is_linked(m: int, ks: Sequence[int]) -> bool:
    return any(2 * k == m + 1 or 2 * k == m - 1 for k in ks)


def linked_interval(m: int, intervals: Sequence[Tuple[int, ...]]) -> Optional[int]:
    """Index of the interval an odd m is linked to, or None."""
    for idx, run in enumerate(intervals):
        if _is_linked(m, run):
            return idx
    return None


def _index_set(d: CanonicalDecomposition, allow_one: bool) -> Tuple[int, ...]:
    ks = [k for k, _ in d.v_terms]
    floor = 1 if allow_one else 3
    return tuple(m for m, _ in d.w_terms if m % 2 and m >= floor and not _is_linked(m, ks))


def _t(ks: Sequence[int]) -> int:
    return sum(1 for a, b in zip(ks, ks[1:]) if b - a >= 2)


def sp_invariants(d: CanonicalDecomposition) -> Invariants:
    ks = [k for k, _ in d.v_terms]
    index_set = _index_set(d, allow_one=False)
    t = _t(ks)
    delta = 1 if ks and ks[0] > 1 else 0
    s = len(index_set)
    return Invariants(s, t, delta, index_set, k_intervals(ks), 2 ** (s + t + delta))


def o_invariants(d: CanonicalDecomposition) -> Invariants:
    ks = [k for k, _ in d.v_terms]
    index_set = _index_set(d, allow_one=True)
    t = _t(ks)
    delta = 1 if ks else 0
    s = len(index_set)
    count = 1 if d.is_exceptional() else 2 ** (s + t + delta - 1)
    return Invariants(s, t, delta, index_set, k_intervals(ks), count)


@dataclass(frozen=True)
class OClassData:
    exists: bool
    h_class_count: int
    k_splitting: int


def o_class_data(d: CanonicalDecomposition, eps: int) -> OClassData:
    """Existence in O^ε, number of O^ε-classes, and how each splits in Ω^ε."""
    if d.is_exceptional():
        if eps < 0:
            return OClassData(False, 0, 0)
        return OClassData(True, 1, 2)
    return OClassData(True, o_invariants(d).class_count, 1)


# --- labels -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassLabel:
    decomposition: CanonicalDecomposition
    context: str
    signs: Signs

    @property
    def alphas(self) -> Signs:
        inv = sp_invariants(self.decomposition) if self.context == "Sp" else o_invariants(self.decomposition)
        return self.signs[: inv.s]

    @property
    def betas(self) -> Signs:
        inv = sp_invariants(self.decomposition) if self.context == "Sp" else o_invariants(self.decomposition)
        return self.signs[inv.s :]

    @property
    def sign(self) -> int:
        out = 1
        for e in self.signs:
            out *= e
        return out

    def __str__(self) -> str:
        body = "".join(sign_symbol(e) for e in self.signs)
        return f"{self.context}:{self.decomposition}({body})"


def _sign_sequences(length: int) -> List[Signs]:
    # + sorts before -
    return [tuple(seq) for seq in product((1, -1), repeat=length)]


def class_labels(d: CanonicalDecomposition, context: str) -> List[ClassLabel]:
    if context not in CONTEXTS:
        raise InputError(f"unknown context {context!r}; expected one of {CONTEXTS}")
    if context == "Sp":
        inv = sp_invariants(d)
        return [ClassLabel(d, context, seq) for seq in _sign_sequences(inv.s + inv.t + inv.delta)]
    eps = 1 if context == "Oplus" else -1
    if d.is_exceptional():
        return [ClassLabel(d, context, ())] if eps > 0 else []
    inv = o_invariants(d)
    out = []
    for seq in _sign_sequences(inv.s + inv.t + inv.delta):
        label = ClassLabel(d, context, seq)
        if label.sign == eps:
            out.append(label)
    return out


@dataclass(frozen=True)
class ClassTableRow:
    jordan_type: Partition
    context: str
    count: int
    sign_sequences: Tuple[str, ...]


def class_table(dim: int, context: str) -> List[ClassTableRow]:
    """Number of classes per Jordan type, with their labels, in one group."""
    by_type: Dict[Partition, List[ClassLabel]] = {}
    for d in enum_decomps(dim):
        by_type.setdefault(d.jordan_type, []).extend(class_labels(d, context))
    rows = []
    for lam in sorted(by_type, reverse=True):
        labels = by_type[lam]
        if not labels:
            continue
        seqs = tuple(f"{lab.decomposition}({''.join('+' if e > 0 else '-' for e in lab.signs)})" for lab in labels)
        rows.append(ClassTableRow(lam, context, len(labels), seqs))
    return rows


# --- character values -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _warn_missing_w1(d: CanonicalDecomposition) -> None:
    log.warn(f"{d} has no W(1) term; taking a_1 = 0 in the W_0 block value", tag="unipotent")


def weil_diff_value(label: ClassLabel, q: int) -> int:
    """(# invariant plus-type forms) - (# invariant minus-type forms) on the labelled class."""
    if label.context != "Sp":
        raise InputError(f"weil_diff_value needs a symplectic label, got {label.context}")
    d = label.decomposition
    if d.v_terms and d.v_terms[0][0] == 1:
        return 0
    a1 = d.multiplicity_of_w(1)
    if a1 == 0:
        _warn_missing_w1(d)
    exponent = a1 + 2 * sum(a for m, a in d.w_terms if m > 1) + sum(b for _, b in d.v_terms)
    return label.sign * q**exponent


def _jordan_mults(lam: Partition) -> Dict[int, int]:
    return dict(lam.multiplicities)


def d_exponent(lam: Partition) -> Fraction:
    """Dimension of the unipotent radical of the algebraic centralizer."""
    c = sorted(_jordan_mults(lam).items())
    total = Fraction(0)
    for idx, (i, ci) in enumerate(c):
        for j, cj in c[idx + 1 :]:
            total += i * ci * cj
        total += Fraction((i - 1) * ci * ci, 2)
        if i % 2 == 0:
            total += Fraction(ci, 2)
        elif i > 1:
            total += ci
    return total


def w_centralizer_order(d: CanonicalDecomposition, signs: Signs, q: int) -> int:
    """|C_Sp(g)| for a W-only decomposition; `signs` are the α's along the index set."""
    if d.v_terms:
        raise InvalidData(f"centralizer order is only available for W-only decompositions, got {d}")
    inv = sp_invariants(d)
    if len(signs) != inv.s:
        raise InvalidData(f"{d} needs {inv.s} signs, got {len(signs)}")
    exponent = d_exponent(d.jordan_type)
    value = q ** int(exponent)
    alpha = dict(zip(inv.index_set, signs))
    for m, a in d.w_terms:
        if m in alpha:
            value *= o_order(alpha[m], 2 * a, q)
        else:
            value *= sp_order(2 * a, q)
    return value


def induced_weil(lam: Partition, q: int) -> Fraction:
    """Value at a unipotent of type λ of the Weil difference induced from Sp to GL."""
    if lam.size % 2:
        raise BadDimension(f"Jordan type must have even size, got {lam}")
    c = sorted(_jordan_mults(lam).items())
    if any(ci % 2 for _, ci in c):
        return Fraction(0)
    exponent = Fraction(sum(ci for _, ci in c), 2)
    for idx, (i, ci) in enumerate(c):
        for j, cj in c[idx + 1 :]:
            exponent -= i * ci * cj
        exponent -= Fraction((i - 1) * ci * ci, 2)
    value = Fraction(q) ** int(exponent) * gl_unip_centralizer(lam, q)
    for _, ci in c:
        value /= sp_order(ci, q)
    return value


def jordan_lift_odd_dim(data: RcfData) -> RcfData:
    """Class data in O_{2n+1} of an element of Sp_2n: one extra J_1(1) block."""
    problems = data_violations(data)
    if problems:
        raise InvalidData("; ".join(problems))
    mapping = data.as_dict()
    phi = z_minus_1(data.q)
    lam = mapping.get(phi)
    mapping[phi] = make_partition(list(lam.parts if lam else ()) + [1])
    return RcfData.from_mapping(data.q, mapping)
