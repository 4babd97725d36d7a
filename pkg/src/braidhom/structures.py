"""Constructors of structural pre-braidings from concrete algebraic input.

Each constructor linearizes one algebraic structure into a pre-braiding on a
based space, installing whatever companion data the structure provides for
free (characters, comultiplications, units, inverse braidings). The check_*
functions are total: they return structured reports and never raise on a
mere axiom failure, so a front end can present every violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exactlin import ExactError, Ring, SparseLinearMap, ZZ
from .braiding import PreBraidedSpace, make_flip


# ---------------------------------------------------------------------------
# Shelves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShelfTable:
    """A binary operation table on {0..m-1}; table[a][b] = a <| b."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.table)
        for row in self.table:
            if len(row) != m or any(not 0 <= x < m for x in row):
                raise ExactError("shelf table must be square with entries in range")

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]


def dihedral_shelf(m: int) -> ShelfTable:
    """a <| b = 2b - a mod m (a quandle for every m)."""
    return ShelfTable(tuple(tuple((2 * b - a) % m for b in range(m)) for a in range(m)))


def trivial_shelf(m: int) -> ShelfTable:
    """a <| b = a."""
    return ShelfTable(tuple(tuple(a for _ in range(m)) for a in range(m)))


def cyclic_shelf(m: int) -> ShelfTable:
    """a <| b = a + 1 mod m; a rack without idempotents for m > 1."""
    return ShelfTable(tuple(tuple((a + 1) % m for _ in range(m)) for a in range(m)))


@dataclass
class ShelfReport:
    self_distributive: bool
    rack: bool
    quandle: bool
    spindle: bool
    sd_witness: Optional[tuple] = None
    rack_witness: Optional[int] = None
    idem_witness: Optional[int] = None


def check_shelf(t: ShelfTable) -> ShelfReport:
    m = t.size
    sd_witness = None
    for a in range(m):
        for b in range(m):
            ab = t.op(a, b)
            for c in range(m):
                if t.op(ab, c) != t.op(t.op(a, c), t.op(b, c)):
                    sd_witness = (a, b, c)
                    break
            if sd_witness:
                break
        if sd_witness:
            break
    rack_witness = None
    for b in range(m):
        if len({t.op(a, b) for a in range(m)}) != m:
            rack_witness = b
            break
    idem_witness = None
    for a in range(m):
        if t.op(a, a) != a:
            idem_witness = a
            break
    sd = sd_witness is None
    rack = sd and rack_witness is None
    idem = idem_witness is None
    return ShelfReport(sd, rack, rack and idem, sd and idem,
                       sd_witness, rack_witness, idem_witness)


def shelf_braiding(t: ShelfTable, ring: Ring = ZZ) -> PreBraidedSpace:
    """Linearization of (a, b) -> (b, a <| b), with the all-ones character
    and the diagonal comultiplication installed."""
    m = t.size
    one = ring.one
    entries = []
    for a in range(m):
        for b in range(m):
            c = t.op(a, b)
            entries.append((b * m + c, a * m + b, one))
    sigma = SparseLinearMap.from_entries(m * m, m * m, entries, ring)
    delta = SparseLinearMap.from_entries(
        m * m, m, [(a * m + a, a, one) for a in range(m)], ring)
    space = PreBraidedSpace(m, ring, sigma, comultiplication=delta, payload=t)
    space.add_character("ones", [one] * m)
    return space


def dirac_character(t: ShelfTable, a: int, ring: Ring = ZZ) -> SparseLinearMap:
    """The covector dual to element a. Requires a idempotent with b <| a != a
    for every b != a (automatic on quandles)."""
    if not 0 <= a < t.size:
        raise ExactError(f"element {a} outside shelf of size {t.size}")
    if t.op(a, a) != a:
        raise ExactError(f"element {a} is not idempotent")
    for b in range(t.size):
        if b != a and t.op(b, a) == a:
            raise ExactError(f"element {b} satisfies {b} <| {a} = {a}; covector is not braided")
    return SparseLinearMap.from_entries(1, t.size, [(0, a, ring.one)], ring)


def twist_character(value, size: int, ring: Ring) -> SparseLinearMap:
    """The constant covector a -> value; value must be invertible."""
    v = ring.coerce(value)
    if not ring.is_unit(v):
        raise ExactError(f"twist value {value!r} is not a unit in {ring.name}")
    return SparseLinearMap.from_entries(1, size, [(0, j, v) for j in range(size)], ring)


def shelf_orbit_character(t: ShelfTable, values, ring: Ring = ZZ) -> SparseLinearMap:
    """Linearize a map constant on <|-orbits (a shelf morphism to the trivial
    shelf). Raises if values is not orbit-constant."""
    for a in range(t.size):
        for b in range(t.size):
            if values[t.op(a, b)] != values[a]:
                raise ExactError(f"values not constant along {a} <| {b}")
    return SparseLinearMap.from_entries(
        1, t.size, [(0, j, values[j]) for j in range(t.size)], ring)


# ---------------------------------------------------------------------------
# Algebras, Leibniz algebras, coalgebras: structure-constant data
# ---------------------------------------------------------------------------

@dataclass
class AlgebraData:
    """Structure constants for an associative algebra, a Leibniz bracket, or
    a coalgebra. The binary operation is a d x d^2 map for algebra kinds and
    a d^2 x d map for coalgebras. Units are distinguished basis positions."""

    kind: str                       # "associative" | "leibniz" | "coalgebra"
    dim: int
    ring: Ring
    operation: SparseLinearMap
    unit_index: Optional[int] = None
    counit: Optional[SparseLinearMap] = None
    grading: Optional[list[int]] = None
    characters: dict = field(default_factory=dict)

    def __post_init__(self):
        d = self.dim
        want = (d * d, d) if self.kind == "coalgebra" else (d, d * d)
        if (self.operation.rows, self.operation.cols) != want:
            raise ExactError(f"{self.kind} operation must be {want[0]}x{want[1]}")
        if self.unit_index is not None and not 0 <= self.unit_index < d:
            raise ExactError("unit index out of range")


def algebra_from_constants(kind: str, dim: int, triples, ring: Ring, *,
                           unit_index: Optional[int] = None,
                           grading=None) -> AlgebraData:
    """Build from (i, j, k, value) meaning op(e_i (x) e_j) has coefficient
    value on e_k (algebra kinds) or delta(e_k) has coefficient value on
    e_i (x) e_j (coalgebras)."""
    if kind not in ("associative", "leibniz", "coalgebra"):
        raise ExactError(f"unknown structure kind {kind!r}")
    entries = []
    for i, j, k, v in triples:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ExactError(f"structure constant ({i},{j},{k}) out of range")
        if kind == "coalgebra":
            entries.append((i * dim + j, k, v))
        else:
            entries.append((k, i * dim + j, v))
    shape = (dim * dim, dim) if kind == "coalgebra" else (dim, dim * dim)
    op = SparseLinearMap.from_entries(shape[0], shape[1], entries, ring)
    return AlgebraData(kind, dim, ring, op, unit_index=unit_index,
                       grading=list(grading) if grading is not None else None)


def _unit_column(a: AlgebraData) -> SparseLinearMap:
    if a.unit_index is None:
        raise ExactError("structure has no distinguished unit")
    return SparseLinearMap.from_entries(a.dim, 1, [(a.unit_index, 0, a.ring.one)], a.ring)


@dataclass
class AlgebraReport:
    associative: bool
    right_unital: Optional[bool]
    left_unital: Optional[bool]
    witness: Optional[tuple] = None


@dataclass
class LeibnizReport:
    leibniz: bool
    unit_central: Optional[bool]
    witness: Optional[tuple] = None


@dataclass
class CovectorReport:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def _mul_basis(a: AlgebraData, i: int, j: int) -> dict:
    return a.operation.column(i * a.dim + j)


def _mul_vec(a: AlgebraData, vec: dict, j: int, on_left: bool) -> dict:
    """Multiply a sparse vector by basis vector e_j (on the stated side)."""
    ring = a.ring
    out: dict[int, object] = {}
    for i, v in vec.items():
        col = _mul_basis(a, i, j) if on_left is False else _mul_basis(a, j, i)
        for k, w in col.items():
            s = ring.add(out[k], ring.mul(v, w)) if k in out else ring.mul(v, w)
            if ring.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
    return out


def check_assoc(a: AlgebraData) -> AlgebraReport:
    """Associativity on basis triples, plus unit laws when a unit is given."""
    if a.kind != "associative":
        raise ExactError("check_assoc expects associative structure data")
    d = a.dim
    witness = None
    for i in range(d):
        for j in range(d):
            ij = _mul_basis(a, i, j)
            for k in range(d):
                lhs = _mul_vec(a, ij, k, on_left=False)
                rhs = _mul_vec(a, _mul_basis(a, j, k), i, on_left=True)
                if lhs != rhs:
                    witness = (i, j, k)
                    break
            if witness:
                break
        if witness:
            break
    right_unital = left_unital = None
    if a.unit_index is not None:
        u = a.unit_index
        one = a.ring.one
        right_unital = all(_mul_basis(a, i, u) == {i: one} for i in range(d))
        left_unital = all(_mul_basis(a, u, i) == {i: one} for i in range(d))
    return AlgebraReport(witness is None, right_unital, left_unital, witness)


def check_leibniz(a: AlgebraData) -> LeibnizReport:
    """[v,[w,u]] = [[v,w],u] - [[v,u],w] on basis triples; unit centrality
    when a unit is given."""
    if a.kind != "leibniz":
        raise ExactError("check_leibniz expects leibniz structure data")
    d = a.dim
    ring = a.ring
    witness = None
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = _mul_vec(a, _mul_basis(a, j, k), i, on_left=True)
                t1 = _mul_vec(a, _mul_basis(a, i, j), k, on_left=False)
                t2 = _mul_vec(a, _mul_basis(a, i, k), j, on_left=False)
                rhs = dict(t1)
                for m, v in t2.items():
                    s = ring.sub(rhs.get(m, ring.zero), v)
                    if ring.is_zero(s):
                        rhs.pop(m, None)
                    else:
                        rhs[m] = s
                if lhs != rhs:
                    witness = (i, j, k)
                    break
            if witness:
                break
        if witness:
            break
    central = None
    if a.unit_index is not None:
        u = a.unit_index
        central = all(not _mul_basis(a, u, i) and not _mul_basis(a, i, u) for i in range(d))
    return LeibnizReport(witness is None, central, witness)


def algebra_character_check(a: AlgebraData, covector: SparseLinearMap) -> CovectorReport:
    """eps(vw) = eps(v)eps(w) on basis pairs and eps(1) = 1."""
    ring = a.ring
    eps = [covector.entry(0, j) for j in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            val = ring.zero
            for k, v in _mul_basis(a, i, j).items():
                val = ring.add(val, ring.mul(v, eps[k]))
            if val != ring.mul(eps[i], eps[j]):
                return CovectorReport(False, (i, j))
    if a.unit_index is not None and eps[a.unit_index] != ring.one:
        return CovectorReport(False, ("unit",))
    return CovectorReport(True)


def lie_character_check(a: AlgebraData, covector: SparseLinearMap) -> CovectorReport:
    """eps kills every bracket and sends the unit to 1."""
    ring = a.ring
    eps = [covector.entry(0, j) for j in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            val = ring.zero
            for k, v in _mul_basis(a, i, j).items():
                val = ring.add(val, ring.mul(v, eps[k]))
            if not ring.is_zero(val):
                return CovectorReport(False, (i, j))
    if a.unit_index is not None and eps[a.unit_index] != ring.one:
        return CovectorReport(False, ("unit",))
    return CovectorReport(True)


def adjoin_unit(a: AlgebraData) -> AlgebraData:
    """Extend by a formal unit as the last basis vector: two-sided unit for
    associative data, central element for brackets. Installs the covector
    vanishing on the old space with value 1 on the unit."""
    if a.kind not in ("associative", "leibniz"):
        raise ExactError("adjoin_unit expects associative or leibniz data")
    if a.unit_index is not None:
        raise ExactError("structure already has a unit")
    d = a.dim
    nd = d + 1
    u = d
    ring = a.ring
    entries = []
    for r, c, v in a.operation.entries():
        i, j = divmod(c, d)
        entries.append((r, i * nd + j, v))
    if a.kind == "associative":
        for i in range(nd):
            entries.append((i, u * nd + i, ring.one))
        for i in range(d):
            entries.append((i, i * nd + u, ring.one))
    op = SparseLinearMap.from_entries(nd, nd * nd, entries, ring)
    counit = SparseLinearMap.from_entries(1, nd, [(0, u, ring.one)], ring)
    grading = a.grading + [0] if a.grading is not None else None
    return AlgebraData(a.kind, nd, ring, op, unit_index=u, counit=counit, grading=grading)


def coalgebra_extend(a: AlgebraData) -> AlgebraData:
    """Adjoin a formal group-like counital element to a coalgebra:
    Delta(v) = delta(v) + 1 (x) v + v (x) 1 and Delta(1) = 1 (x) 1."""
    if a.kind != "coalgebra":
        raise ExactError("coalgebra_extend expects coalgebra data")
    if a.counit is not None or a.unit_index is not None:
        raise ExactError("coalgebra already has a counit")
    d = a.dim
    nd = d + 1
    u = d
    ring = a.ring
    entries = []
    for r, c, v in a.operation.entries():
        i, j = divmod(r, d)
        entries.append((i * nd + j, c, v))
    for v in range(d):
        entries.append((u * nd + v, v, ring.one))
        entries.append((v * nd + u, v, ring.one))
    entries.append((u * nd + u, u, ring.one))
    op = SparseLinearMap.from_entries(nd * nd, nd, entries, ring)
    counit = SparseLinearMap.from_entries(1, nd, [(0, u, ring.one)], ring)
    return AlgebraData("coalgebra", nd, ring, op, unit_index=u, counit=counit)


# ---------------------------------------------------------------------------
# Braiding constructors
# ---------------------------------------------------------------------------

def flip_braiding(d: int, ring: Ring = ZZ) -> PreBraidedSpace:
    space = PreBraidedSpace(d, ring, make_flip(d, ring))
    space.braiding_inverse = space.braiding
    return space


def signed_flip_braiding(d: int, ring: Ring = ZZ) -> PreBraidedSpace:
    sigma = make_flip(d, ring).neg()
    space = PreBraidedSpace(d, ring, sigma)
    space.braiding_inverse = sigma
    return space


def koszul_braiding(grading: list[int], ring: Ring = ZZ) -> PreBraidedSpace:
    """Graded flip with sign (-1)^(deg a * deg b)."""
    d = len(grading)
    one = ring.one
    entries = []
    for a in range(d):
        for b in range(d):
            v = one if (grading[a] * grading[b]) % 2 == 0 else ring.neg(one)
            entries.append((b * d + a, a * d + b, v))
    sigma = SparseLinearMap.from_entries(d * d, d * d, entries, ring)
    space = PreBraidedSpace(d, ring, sigma, grading=grading)
    space.braiding_inverse = sigma
    return space


def q_flip_braiding(q, ring: Ring) -> PreBraidedSpace:
    """One-dimensional braiding x (x) x -> q * x (x) x, q nonzero."""
    qv = ring.coerce(q)
    if ring.is_zero(qv):
        raise ExactError("q must be nonzero")
    sigma = SparseLinearMap.from_entries(1, 1, [(0, 0, qv)], ring)
    space = PreBraidedSpace(1, ring, sigma)
    if ring.is_unit(qv):
        space.braiding_inverse = SparseLinearMap.from_entries(1, 1, [(0, 0, ring.inv(qv))], ring)
    space.add_character("ones", [ring.one])
    return space


def assoc_braiding(a: AlgebraData) -> PreBraidedSpace:
    """v (x) w -> 1 (x) vw for a right-unital associative structure, with the
    comultiplication v -> 1 (x) v installed."""
    if a.kind != "associative":
        raise ExactError("assoc_braiding expects associative data")
    rep = check_assoc(a)
    if a.unit_index is None:
        raise ExactError("assoc_braiding needs a distinguished unit (adjoin one first)")
    if rep.right_unital is False:
        raise ExactError("distinguished element is not a right unit")
    d = a.dim
    u = a.unit_index
    ring = a.ring
    sigma = SparseLinearMap.from_entries(
        d * d, d * d,
        [(u * d + r, c, v) for r, c, v in a.operation.entries()],
        ring)
    delta = SparseLinearMap.from_entries(
        d * d, d, [(u * d + v, v, ring.one) for v in range(d)], ring)
    space = PreBraidedSpace(d, ring, sigma, unit_index=u,
                            comultiplication=delta, payload=a, grading=a.grading)
    if a.counit is not None:
        space.add_character("counit", a.counit)
    for name, cov in a.characters.items():
        space.add_character(name, cov)
    return space


def leibniz_braiding(a: AlgebraData) -> PreBraidedSpace:
    """v (x) w -> w (x) v + 1 (x) [v,w] for a bracket with central unit; the
    closed-form inverse w (x) v -> v (x) w - [w,v] (x) 1 and the primitive
    comultiplication are installed."""
    if a.kind != "leibniz":
        raise ExactError("leibniz_braiding expects leibniz data")
    if a.unit_index is None:
        raise ExactError("leibniz_braiding needs a distinguished unit (adjoin one first)")
    rep = check_leibniz(a)
    if rep.unit_central is False:
        raise ExactError("distinguished element is not central for the bracket")
    d = a.dim
    u = a.unit_index
    ring = a.ring
    entries = []
    inv_entries = []
    for i in range(d):
        for j in range(d):
            entries.append((j * d + i, i * d + j, ring.one))
            inv_entries.append((j * d + i, i * d + j, ring.one))
            for k, v in _mul_basis(a, i, j).items():
                entries.append((u * d + k, i * d + j, v))
            for k, v in _mul_basis(a, j, i).items():
                inv_entries.append((k * d + u, i * d + j, ring.neg(v)))
    sigma = SparseLinearMap.from_entries(d * d, d * d, entries, ring)
    delta_entries = [(u * d + u, u, ring.one)]
    for v in range(d):
        if v != u:
            delta_entries.append((u * d + v, v, ring.one))
            delta_entries.append((v * d + u, v, ring.one))
    delta = SparseLinearMap.from_entries(d * d, d, delta_entries, ring)
    space = PreBraidedSpace(d, ring, sigma, unit_index=u,
                            comultiplication=delta, payload=a, grading=a.grading)
    space.braiding_inverse = SparseLinearMap.from_entries(d * d, d * d, inv_entries, ring)
    if a.counit is not None:
        space.add_character("counit", a.counit)
    for name, cov in a.characters.items():
        space.add_character(name, cov)
    return space


def graded_leibniz_braiding(a: AlgebraData) -> PreBraidedSpace:
    """Koszul-signed variant: v (x) w -> (-1)^(deg v deg w) w (x) v
    + 1 (x) [v,w]. Degrees come from the structure's grading; the unit must
    sit in degree zero."""
    if a.kind != "leibniz":
        raise ExactError("graded_leibniz_braiding expects leibniz data")
    if a.unit_index is None or a.grading is None:
        raise ExactError("graded braiding needs a unit and a grading")
    if a.grading[a.unit_index] % 2 != 0:
        raise ExactError("unit must have even degree")
    d = a.dim
    u = a.unit_index
    ring = a.ring
    entries = []
    for i in range(d):
        for j in range(d):
            s = ring.one if (a.grading[i] * a.grading[j]) % 2 == 0 else ring.neg(ring.one)
            entries.append((j * d + i, i * d + j, s))
            for k, v in _mul_basis(a, i, j).items():
                entries.append((u * d + k, i * d + j, v))
    sigma = SparseLinearMap.from_entries(d * d, d * d, entries, ring)
    space = PreBraidedSpace(d, ring, sigma, unit_index=u, payload=a, grading=a.grading)
    if a.counit is not None:
        space.add_character("counit", a.counit)
    for name, cov in a.characters.items():
        space.add_character(name, cov)
    return space


def coassoc_braiding(a: AlgebraData) -> PreBraidedSpace:
    """sigma = counit (x) Delta for a counital coalgebra: v (x) w ->
    eps(v) * Delta(w). The group-like unit is installed as a cocharacter."""
    if a.kind != "coalgebra":
        raise ExactError("coassoc_braiding expects coalgebra data")
    if a.counit is None:
        raise ExactError("coassoc_braiding needs a counit (extend the coalgebra first)")
    d = a.dim
    ring = a.ring
    eps = [a.counit.entry(0, j) for j in range(d)]
    entries = []
    for v in range(d):
        if ring.is_zero(eps[v]):
            continue
        for r, c, val in a.operation.entries():
            entries.append((r, v * d + c, ring.mul(eps[v], val)))
    sigma = SparseLinearMap.from_entries(d * d, d * d, entries, ring)
    space = PreBraidedSpace(d, ring, sigma, unit_index=a.unit_index, payload=a)
    space.add_character("counit", a.counit)
    if a.unit_index is not None:
        space.add_cocharacter("unit", [ring.one if j == a.unit_index else ring.zero
                                       for j in range(d)])
    return space


def dual_coalgebra(a: AlgebraData) -> AlgebraData:
    """The coalgebra on the dual basis of a unital algebra: the coproduct is
    the transpose of the product, the counit is evaluation at the unit."""
    if a.kind != "associative" or a.unit_index is None:
        raise ExactError("dual_coalgebra expects unital associative data")
    op = a.operation.transpose()
    counit = SparseLinearMap.from_entries(1, a.dim, [(0, a.unit_index, a.ring.one)], a.ring)
    return AlgebraData("coalgebra", a.dim, a.ring, op, unit_index=None, counit=counit)
