"""Brute-force ground truth: explicit Sp, O±, Ω± and odd-dimensional O over F_q (q even).

Groups are enumerated by breadth-first closure of transvection generators.
Matrices are numpy uint8 arrays of field elements (galois integer encoding)
acting on column vectors; every matrix packs into one uint64 key, and the
enumerated group is kept as a sorted key array plus the unpacked elements.

Usage:
    from ocycle.oracle import build_group, empirical_class_table
    group = build_group("Ominus", 4, 2)      # 120 elements
    table = empirical_class_table(group)     # RcfData -> proportion
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import log
from .config import get_settings
from .cycleindex import RcfData
from .errors import BadDimension, BudgetExceeded, InputError, VerificationFailure
from .orders import GroupKind, gl_unip_centralizer, group_order
from .partitions import Partition, from_columns
from .pool import parallel_map
from .qpoly import PolyOverFq, check_orthogonal_q, irreducibles, z_minus_1

FAMILY_ALIASES = {
    "sp": "Sp",
    "o+": "Oplus",
    "oplus": "Oplus",
    "o-": "Ominus",
    "ominus": "Ominus",
    "omega+": "OmegaPlus",
    "omegaplus": "OmegaPlus",
    "omega-": "OmegaMinus",
    "omegaminus": "OmegaMinus",
    "o": "Oodd",
    "oodd": "Oodd",
}


def parse_family(text: str) -> str:
    family = FAMILY_ALIASES.get(str(text).strip().lower())
    if family is None:
        raise InputError(f"unknown group kind {text!r}; expected one of {sorted(set(FAMILY_ALIASES.values()))}")
    return family


# --- field tables and batched arithmetic --------------------------------------------------


@dataclass(frozen=True)
class _Tables:
    q: int
    mul: np.ndarray
    inv: np.ndarray
    sqrt: np.ndarray
    trace: np.ndarray
    primitive: int


@lru_cache(maxsize=None)
def _tables(q: int) -> _Tables:
    field = check_orthogonal_q(q)
    mul = field.mul_table.astype(np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    sqrt = np.zeros(q, dtype=np.uint8)
    trace = np.zeros(q, dtype=np.uint8)
    for a in range(q):
        if a:
            inv[a] = field.inv(a)
        sqrt[a] = field.sqrt(a)
        trace[a] = field.absolute_trace(a)
    return _Tables(q, mul, inv, sqrt, trace, field.primitive)


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.uint8)


def matmul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Batched product over F_q with numpy broadcasting on the leading axes."""
    if q == 2:
        return (a @ b) & np.uint8(1)
    mul = _tables(q).mul
    return np.bitwise_xor.reduce(mul[a[..., :, :, None], b[..., None, :, :]], axis=-2)


def scale(c: int, a: np.ndarray, q: int) -> np.ndarray:
    return _tables(q).mul[c, a]


def batch_rank(mats: np.ndarray, q: int) -> np.ndarray:
    """Ranks of a stack of matrices by vectorised Gaussian elimination."""
    t = _tables(q)
    a = np.array(mats, dtype=np.uint8, copy=True)
    if a.ndim == 2:
        a = a[None]
    n, r, c = a.shape
    rank = np.zeros(n, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        eligible = (a[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        piv = np.argmax(eligible[sel], axis=1)
        tgt = rank[sel]
        piv_rows = a[sel, piv].copy()
        a[sel, piv] = a[sel, tgt]
        a[sel, tgt] = t.mul[t.inv[piv_rows[:, col]][:, None], piv_rows]
        factors = a[sel, :, col].copy()
        factors[np.arange(len(sel)), tgt] = 0
        a[sel] ^= t.mul[factors[:, :, None], a[sel, tgt][:, None, :]]
        rank[sel] += 1
    return rank


def pack(mats: np.ndarray, q: int) -> np.ndarray:
    """One uint64 key per matrix; entries take log2(q) bits each, row-major."""
    d = mats.shape[-1]
    bits = q.bit_length() - 1
    if bits * d * d > 64:
        raise BudgetExceeded(f"{d}x{d} matrices over F_{q} need {bits * d * d} bits; keys hold 64")
    flat = mats.reshape(-1, d * d).astype(np.uint64)
    shifts = np.arange(d * d, dtype=np.uint64) * np.uint64(bits)
    return np.bitwise_or.reduce(flat << shifts, axis=1)


def unpack(keys: np.ndarray, d: int, q: int) -> np.ndarray:
    bits = q.bit_length() - 1
    shifts = np.arange(d * d, dtype=np.uint64) * np.uint64(bits)
    flat = (keys[:, None] >> shifts[None, :]) & np.uint64(q - 1)
    return flat.astype(np.uint8).reshape(-1, d, d)


def all_vectors(d: int, q: int) -> np.ndarray:
    return np.array(list(product(range(q), repeat=d)), dtype=np.uint8).reshape(-1, d)


@dataclass(frozen=True)
class MatrixFq:
    """A single square matrix over F_q, row-major."""

    q: int
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_array(cls, q: int, arr: np.ndarray) -> "MatrixFq":
        return cls(q, tuple(tuple(int(x) for x in row) for row in np.asarray(arr)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.uint8)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        return MatrixFq.from_array(self.q, matmul(self.array, other.array, self.q))

    def rank(self) -> int:
        return int(batch_rank(self.array, self.q)[0])

    def nullity(self) -> int:
        return self.dim - self.rank()

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.rows) + "]"


# --- quadratic forms -------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticFormQ:
    """Q(x) = Σ_{i<=j} c_ij x_i x_j with an upper-triangular coefficient matrix."""

    q: int
    coeffs: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.uint8)

    def polarization(self) -> np.ndarray:
        c = self.matrix
        return c ^ c.T

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Q on a stack of vectors (..., d)."""
        mul = _tables(self.q).mul
        pairs = mul[x[..., :, None], x[..., None, :]]
        terms = mul[self.matrix, pairs]
        return np.bitwise_xor.reduce(terms.reshape(*terms.shape[:-2], -1), axis=-1)

    def with_square(self, ell: np.ndarray) -> "QuadraticFormQ":
        """Q + (Σ ell_i x_i)²; in characteristic 2 only the diagonal changes."""
        c = self.matrix.copy()
        sq = _tables(self.q).mul[ell, ell]
        c[np.diag_indices(self.dim)] ^= sq
        return QuadraticFormQ(self.q, tuple(tuple(int(x) for x in row) for row in c))


def _pair_coeffs(d: int) -> np.ndarray:
    c = np.zeros((d, d), dtype=np.uint8)
    for i in range(0, d - 1, 2):
        c[i, i + 1] = 1
    return c


def anisotropic_constant(q: int) -> int:
    """Smallest a with z²+z+a irreducible over F_q, i.e. absolute trace 1."""
    t = _tables(q)
    for a in range(1, q):
        if t.trace[a]:
            return a
    raise VerificationFailure(f"no trace-one element in F_{q}")


def standard_form(eps: int, dim: int, q: int) -> QuadraticFormQ:
    """Σ x_{2i-1} x_{2i}, plus x_{2n-1}² + a·x_{2n}² on the last pair for ε = -."""
    if dim < 2 or dim % 2:
        raise BadDimension(f"standard_form needs an even dimension >= 2, got {dim}")
    c = _pair_coeffs(dim)
    if eps < 0:
        c[dim - 2, dim - 2] = 1
        c[dim - 1, dim - 1] = anisotropic_constant(q)
    return QuadraticFormQ(q, tuple(tuple(int(x) for x in row) for row in c))


def odd_form(dim: int, q: int) -> QuadraticFormQ:
    """Σ x_{2i-1} x_{2i} + x_{2n+1}²; the polarization has radical e_{2n+1}."""
    if dim < 1 or dim % 2 == 0:
        raise BadDimension(f"odd_form needs an odd dimension, got {dim}")
    c = _pair_coeffs(dim)
    c[dim - 1, dim - 1] = 1
    return QuadraticFormQ(q, tuple(tuple(int(x) for x in row) for row in c))


def singular_count(form: QuadraticFormQ) -> int:
    """Number of nonzero vectors with Q(x) = 0."""
    values = form.evaluate(all_vectors(form.dim, form.q))
    return int(np.count_nonzero(values == 0)) - 1


def expected_singular(eps: int, dim: int, q: int) -> int:
    n = dim // 2
    if eps > 0:
        return (q**n - 1) * (q ** (n - 1) + 1)
    return (q**n + 1) * (q ** (n - 1) - 1)


def form_type(form: QuadraticFormQ) -> int:
    count = singular_count(form)
    for eps in (1, -1):
        if count == expected_singular(eps, form.dim, form.q):
            return eps
    raise VerificationFailure(f"{count} singular vectors fits neither type in dimension {form.dim}")


def symplectic_pairing(dim: int) -> np.ndarray:
    c = _pair_coeffs(dim)
    return c ^ c.T


# --- generators ---------------------------------------------------------------------------


def _transvection(v: np.ndarray, coeff: int, pairing: np.ndarray, q: int) -> np.ndarray:
    """x ↦ x + coeff·(x, v)·v as a matrix: I + coeff·v·(vᵀJ)."""
    d = len(v)
    vj = matmul(v[None, :], pairing, q)[0]
    outer = _tables(q).mul[v[:, None], vj[None, :]]
    return identity(d) ^ scale(coeff, outer, q)


def orthogonal_transvections(form: QuadraticFormQ) -> np.ndarray:
    q, d = form.q, form.dim
    pairing = form.polarization()
    vectors = all_vectors(d, q)
    values = form.evaluate(vectors)
    radical = matmul(vectors, pairing, q).any(axis=1) == 0
    gens = [
        _transvection(v, int(_tables(q).inv[val]), pairing, q)
        for v, val, rad in zip(vectors, values, radical)
        if val != 0 and not rad
    ]
    return _dedupe(np.array(gens, dtype=np.uint8), q)


def symplectic_transvections(dim: int, q: int) -> np.ndarray:
    pairing = symplectic_pairing(dim)
    n = dim // 2
    vectors: List[np.ndarray] = []
    for i in range(n):
        for offset in (0, 1):
            e = np.zeros(dim, dtype=np.uint8)
            e[2 * i + offset] = 1
            vectors.append(e)
            if i + 1 < n:
                f = e.copy()
                f[2 * (i + 1) + offset] = 1
                vectors.append(f)
    t = _tables(q)
    scalars = [1] if q == 2 else [1, t.primitive]
    gens = [_transvection(scale(a, v, q), 1, pairing, q) for v in vectors for a in scalars]
    return _dedupe(np.array(gens, dtype=np.uint8), q)


def _dedupe(gens: np.ndarray, q: int) -> np.ndarray:
    _, idx = np.unique(pack(gens, q), return_index=True)
    return gens[np.sort(idx)]


def _inverse(g: np.ndarray, q: int) -> np.ndarray:
    d = g.shape[-1]
    ident = identity(d)
    power = g
    prev = ident
    while not np.array_equal(power, ident):
        prev = power
        power = matmul(power, g, q)
    return prev


# --- closure --------------------------------------------------------------------------------


def closure(gens: np.ndarray, q: int, cap: Optional[int] = None) -> np.ndarray:
    """Sorted keys of the group generated by `gens` (breadth-first over frontier chunks)."""
    settings = get_settings()
    cap = cap or settings.element_cap
    d = gens.shape[-1]
    known = pack(identity(d)[None], q)
    frontier = identity(d)[None]
    rounds = 0

    def expand(block: np.ndarray) -> np.ndarray:
        prods = matmul(block[:, None], gens[None], q).reshape(-1, d, d)
        return np.unique(pack(prods, q))

    while len(frontier):
        chunks = [frontier[i : i + settings.chunk_size] for i in range(0, len(frontier), settings.chunk_size)]
        cand = np.unique(np.concatenate(parallel_map(expand, chunks)))
        pos = np.minimum(np.searchsorted(known, cand), len(known) - 1)
        fresh = cand[known[pos] != cand]
        if not len(fresh):
            break
        known = np.union1d(known, fresh)
        if len(known) > cap:
            raise BudgetExceeded(f"closure passed the element cap of {cap}")
        frontier = unpack(fresh, d, q)
        rounds += 1
    log.info(f"closure reached {len(known)} elements in {rounds} rounds", tag="oracle")
    return known


@dataclass(frozen=True)
class EnumeratedGroup:
    kind: GroupKind
    form: Optional[QuadraticFormQ]
    pairing: np.ndarray
    generators: np.ndarray
    keys: np.ndarray
    elements: np.ndarray

    @property
    def q(self) -> int:
        return self.kind.q

    @property
    def dim(self) -> int:
        return self.kind.dimension

    @property
    def order(self) -> int:
        return len(self.keys)

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        keys = pack(mats, self.q)
        pos = np.minimum(np.searchsorted(self.keys, keys), len(self.keys) - 1)
        if np.any(self.keys[pos] != keys):
            raise InputError("matrix is not an element of the group")
        return pos

    def element(self, idx: int) -> MatrixFq:
        return MatrixFq.from_array(self.q, self.elements[idx])


def _pair_swap(dim: int) -> np.ndarray:
    """x_1 ↔ x_4, x_2 ↔ x_3 on the first two hyperbolic pairs.

    It preserves Σ x_{2i-1}x_{2i} and lies in Ω⁺. O⁺_4(2) is the one case where
    the orthogonal transvections only reach an index-2 subgroup.
    """
    g = identity(dim)
    g[:4, :4] = np.eye(4, dtype=np.uint8)[[3, 2, 1, 0]]
    return g


def _omega_generators(o_gens: np.ndarray, q: int) -> np.ndarray:
    # even words in the transvections: t_0·t_w for every generator w
    first = o_gens[0]
    return _dedupe(matmul(first[None], o_gens, q), q)


@lru_cache(maxsize=None)
def build_group(kind: str, dim: int, q: int) -> EnumeratedGroup:
    """Enumerate Sp, O±, Ω± (even dim) or O (odd dim) over F_q, q = 2^k."""
    family = parse_family(kind)
    if family == "Oodd" and dim % 2 == 0:
        raise BadDimension(f"odd-dimensional O needs an odd dimension, got {dim}")
    group_kind = GroupKind(family, dim, q)
    check_orthogonal_q(q)
    settings = get_settings()
    if dim > settings.dimension_cap:
        raise BudgetExceeded(f"dimension {dim} exceeds the cap of {settings.dimension_cap}")
    expected = group_order(group_kind)
    if expected > settings.element_cap:
        raise BudgetExceeded(f"{family}_{dim}({q}) has {expected} elements; cap is {settings.element_cap}")

    form: Optional[QuadraticFormQ] = None
    if family == "Sp":
        pairing = symplectic_pairing(dim)
        gens = symplectic_transvections(dim, q)
    elif family == "Oodd":
        form = odd_form(dim, q)
        pairing = form.polarization()
        gens = orthogonal_transvections(form)
    else:
        eps = 1 if family in {"Oplus", "OmegaPlus"} else -1
        form = standard_form(eps, dim, q)
        pairing = form.polarization()
        gens = orthogonal_transvections(form)
        if family.startswith("Omega"):
            gens = _omega_generators(gens, q)
        if eps > 0 and dim >= 4:
            gens = _dedupe(np.concatenate([gens, _pair_swap(dim)[None]]), q)

    keys = closure(gens, q)
    if len(keys) != expected:
        raise VerificationFailure(f"{family}_{dim}({q}) closure has {len(keys)} elements, expected {expected}")
    elements = unpack(keys, dim, q)
    for arr in (keys, elements, gens, pairing):
        arr.setflags(write=False)
    log.info(f"built {family}_{dim}({q}) with {len(keys)} elements", tag="oracle")
    return EnumeratedGroup(group_kind, form, pairing, gens, keys, elements)


# --- element tests ----------------------------------------------------------------------------


def preserves_pairing(mats: np.ndarray, pairing: np.ndarray, q: int) -> np.ndarray:
    gt = np.swapaxes(mats, -1, -2)
    return np.all(matmul(matmul(gt, pairing, q), mats, q) == pairing, axis=(-2, -1))


def preserves_form(mats: np.ndarray, form: QuadraticFormQ) -> np.ndarray:
    """Q(g e_i) = Q(e_i) for every i, and g preserves the polarization."""
    cols = np.swapaxes(mats, -1, -2)
    diag = np.diag(form.matrix)
    ok_diag = np.all(form.evaluate(cols) == diag, axis=-1)
    return ok_diag & preserves_pairing(mats, form.polarization(), form.q)


def _chunked(fn: Callable[[np.ndarray], np.ndarray], mats: np.ndarray) -> np.ndarray:
    size = get_settings().chunk_size
    if len(mats) <= size:
        return fn(mats)
    blocks = [mats[i : i + size] for i in range(0, len(mats), size)]
    return np.concatenate(parallel_map(fn, blocks))


def fixed_dims(mats: np.ndarray, q: int) -> np.ndarray:
    d = mats.shape[-1]
    return _chunked(lambda block: d - batch_rank(block ^ identity(d), q), mats)


def unipotent_mask(mats: np.ndarray, q: int) -> np.ndarray:
    """g^(2^r) = I with 2^r >= dim."""
    d = mats.shape[-1]

    def test(block: np.ndarray) -> np.ndarray:
        power = block
        span = 1
        while span < d:
            power = matmul(power, power, q)
            span *= 2
        return np.all(power == identity(d), axis=(-2, -1))

    return _chunked(test, mats)


# --- rational canonical form ----------------------------------------------------------------


def poly_at(phi: PolyOverFq, mats: np.ndarray, q: int) -> np.ndarray:
    d = mats.shape[-1]
    ident = identity(d)
    out = np.broadcast_to(ident, mats.shape).copy()
    for c in phi.coeffs[1:]:
        out = matmul(out, mats, q) ^ scale(c, ident, q)
    return out


def _candidates(q: int, d: int) -> List[PolyOverFq]:
    return [phi for deg in range(1, d + 1) for phi in irreducibles(q, deg) if not phi.is_z()]


def _columns(phi: PolyOverFq, mats: np.ndarray, q: int) -> np.ndarray:
    """λ'_{φ,j} for j = 1..d/deg φ, one row per matrix."""
    d = mats.shape[-1]
    steps = d // phi.degree
    out = np.zeros((len(mats), steps), dtype=np.int16)
    base = poly_at(phi, mats, q)
    null = d - batch_rank(base, q)
    active = np.nonzero(null > 0)[0]
    if not len(active):
        return out
    out[active, 0] = null[active] // phi.degree
    power = base[active]
    prev = null[active]
    for j in range(1, steps):
        power = matmul(power, base[active], q)
        cur = d - batch_rank(power, q)
        out[active, j] = (cur - prev) // phi.degree
        prev = cur
    return out


@dataclass(frozen=True)
class RcfBatch:
    data: Tuple[RcfData, ...]
    index: np.ndarray
    counts: np.ndarray


def _rcf_block(polys: Sequence[PolyOverFq], q: int) -> Callable[[np.ndarray], np.ndarray]:
    def run(block: np.ndarray) -> np.ndarray:
        return np.concatenate([_columns(phi, block, q) for phi in polys], axis=1)

    return run


def rcf_batch(mats: np.ndarray, q: int, polys: Optional[Sequence[PolyOverFq]] = None) -> RcfBatch:
    """Class data of every matrix, grouped into distinct RcfData values."""
    d = mats.shape[-1]
    polys = list(polys) if polys is not None else _candidates(q, d)
    sig = _chunked(_rcf_block(polys, q), mats)
    uniq, inverse, counts = np.unique(sig, axis=0, return_inverse=True, return_counts=True)
    widths = [d // phi.degree for phi in polys]
    data: List[RcfData] = []
    full = polys == _candidates(q, d)
    for row in uniq:
        mapping: Dict[PolyOverFq, Partition] = {}
        start = 0
        for phi, width in zip(polys, widths):
            lam = from_columns([int(x) for x in row[start : start + width]])
            if lam:
                mapping[phi] = lam
            start += width
        rcf = RcfData.from_mapping(q, mapping)
        if full and rcf.dimension != d:
            raise VerificationFailure(f"class data {rcf} covers {rcf.dimension} of {d} dimensions")
        data.append(rcf)
    return RcfBatch(tuple(data), np.asarray(inverse).reshape(-1), counts)


def rcf_extract(g: MatrixFq) -> RcfData:
    return rcf_batch(g.array[None], g.q).data[0]


def jordan_types(mats: np.ndarray, q: int) -> List[Partition]:
    """Partition of z-1 for each matrix (its Jordan type when unipotent)."""
    batch = rcf_batch(mats, q, [z_minus_1(q)])
    return [batch.data[i].z_minus_1_partition for i in batch.index]


def empirical_class_table(group: EnumeratedGroup) -> Dict[RcfData, Fraction]:
    """Proportion of the group carrying each class data."""
    batch = rcf_batch(group.elements, group.q)
    return {rcf: Fraction(int(c), group.order) for rcf, c in zip(batch.data, batch.counts)}


def empirical_proportion(table: Dict[RcfData, Fraction], predicate: Callable[[RcfData], bool]) -> Fraction:
    return sum((p for rcf, p in table.items() if predicate(rcf)), Fraction(0))


# --- conjugacy classes ------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    representative: MatrixFq
    size: int
    index: int


def conjugacy_classes(group: EnumeratedGroup, subset: Optional[np.ndarray] = None) -> List[ConjugacyClass]:
    """Orbits under conjugation, optionally restricted to a conjugation-closed subset mask."""
    q, d = group.q, group.dim
    members = np.arange(group.order) if subset is None else np.nonzero(subset)[0]
    keys = group.keys[members]
    mats = group.elements[members]
    perms = []
    for g in group.generators:
        ginv = _inverse(g, q)
        imgs = _chunked(lambda block: pack(matmul(matmul(g, block, q), ginv, q), q), mats)
        pos = np.minimum(np.searchsorted(keys, imgs), len(keys) - 1)
        if np.any(keys[pos] != imgs):
            raise InputError("subset is not closed under conjugation")
        perms.append(pos)
    labels = np.arange(len(members))
    while True:
        before = labels.copy()
        for perm in perms:
            np.minimum(labels, labels[perm], out=labels)
        labels = labels[labels]
        if np.array_equal(labels, before):
            break
    reps, sizes = np.unique(labels, return_counts=True)
    log.info(f"{len(reps)} classes over {len(members)} elements of {group.kind.family}_{d}({q})", tag="oracle")
    return [ConjugacyClass(group.element(int(members[r])), int(s), int(members[r])) for r, s in zip(reps, sizes)]


def unipotent_class_counts(group: EnumeratedGroup) -> Counter:
    """Jordan type -> number of conjugacy classes of unipotent elements with that type."""
    mask = unipotent_mask(group.elements, group.q)
    classes = conjugacy_classes(group, mask)
    reps = np.array([c.representative.array for c in classes], dtype=np.uint8)
    return Counter(jordan_types(reps, group.q))


# --- invariant quadratic forms ------------------------------------------------------------------


def fixed_form_counts(mats: np.ndarray, q: int) -> Tuple[np.ndarray, np.ndarray]:
    """(plus, minus) counts of g-invariant forms Q₀ + (·, y)², g symplectic."""
    d = mats.shape[-1]
    t = _tables(q)
    base = standard_form(1, d, q)
    pairing = base.polarization()
    ys = all_vectors(d, q)
    plus_y = t.trace[base.evaluate(ys)] == 0
    ident = identity(d)

    def count(block: np.ndarray) -> np.ndarray:
        cols = np.swapaxes(block, -1, -2)
        w = t.sqrt[base.evaluate(cols)]
        c = matmul(pairing, w[..., None], q)
        rhs = matmul(block, c, q)[..., 0]
        lhs = matmul(block ^ ident, ys.T, q)
        solves = np.all(lhs == rhs[..., None], axis=1)
        return np.stack([(solves & plus_y).sum(axis=1), (solves & ~plus_y).sum(axis=1)], axis=1)

    both = _chunked(count, mats)
    return both[:, 0], both[:, 1]


def fixed_forms_by_type(g: MatrixFq) -> Tuple[int, int]:
    plus, minus = fixed_form_counts(g.array[None], g.q)
    return int(plus[0]), int(minus[0])


def fixed_forms_brute(g: MatrixFq) -> Tuple[int, int]:
    """Same counts by testing every polarized form directly; small dimensions only."""
    q, d = g.q, g.dim
    base = standard_form(1, d, q)
    pairing = base.polarization()
    xs = all_vectors(d, q)
    gx = matmul(xs, g.array.T, q)
    plus = minus = 0
    for y in all_vectors(d, q):
        ell = matmul(pairing, y[:, None], q)[:, 0]
        form = base.with_square(ell)
        if np.array_equal(form.evaluate(gx), form.evaluate(xs)):
            if form_type(form) > 0:
                plus += 1
            else:
                minus += 1
    return plus, minus


def oracle_induced_weil(group: EnumeratedGroup, lam: Partition) -> Fraction:
    """|C_GL(λ)|/|Sp| times the summed form difference over unipotents of Jordan type λ."""
    if group.kind.family != "Sp":
        raise InputError("induced values need an enumerated symplectic group")
    q = group.q
    mask = unipotent_mask(group.elements, q)
    unip = group.elements[mask]
    types = jordan_types(unip, q)
    picked = np.array([t == lam for t in types], dtype=bool)
    if not picked.any():
        return Fraction(0)
    plus, minus = fixed_form_counts(unip[picked], q)
    total = int(plus.sum()) - int(minus.sum())
    return Fraction(gl_unip_centralizer(lam, q) * total, group.order)


# --- odd dimension -------------------------------------------------------------------------------


def quotient_action(g: MatrixFq) -> MatrixFq:
    """Induced map on V/rad for O_{2n+1}; the radical is the last coordinate axis."""
    arr = g.array
    d = g.dim
    if d % 2 == 0:
        raise BadDimension("quotient action needs an odd-dimensional matrix")
    if arr[d - 1, d - 1] != 1 or np.any(arr[: d - 1, d - 1]):
        raise InputError("matrix does not fix the radical vector")
    return MatrixFq.from_array(g.q, arr[: d - 1, : d - 1])
