"""Exact coefficient rings and sparse linear maps on tensor-power index spaces.

All arithmetic is exact: integers are arbitrary precision, rationals are
`fractions.Fraction`, prime-field elements are reduced residues stored as
plain ints. Floating point is never used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional


class ExactError(ValueError):
    """Ring or matrix misuse: bad modulus, shape mismatch, non-unit division."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Ring:
    """One of Z, Q, F_p. Scalars are plain int / Fraction / int residues;
    the ring object supplies arithmetic, parsing and formatting."""

    name: str = "?"
    is_field: bool = False
    characteristic: int = 0
    zero = 0
    one = 1

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def parse(self, text) -> object:
        """Accept ints and 'p/q' strings (reduced on input)."""
        if isinstance(text, str):
            return self.coerce(Fraction(text))
        return self.coerce(text)

    def fmt(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"

    def coerce(self, x):
        if isinstance(x, bool):
            raise ExactError("booleans are not ring scalars")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ExactError(f"{x} is not an integer")
            return x.numerator
        raise ExactError(f"cannot coerce {x!r} into Z")

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ExactError(f"{a} is not a unit in Z")


class RationalField(Ring):
    name = "Q"
    is_field = True

    def coerce(self, x):
        if isinstance(x, bool):
            raise ExactError("booleans are not ring scalars")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise ExactError(f"cannot coerce {x!r} into Q")

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ExactError("division by zero in Q")
        return 1 / Fraction(a)

    def fmt(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ExactError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def coerce(self, x):
        if isinstance(x, bool):
            raise ExactError("booleans are not ring scalars")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ExactError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise ExactError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def inv(self, a):
        if a % self.p == 0:
            raise ExactError(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


ZZ = IntegerRing()
QQ = RationalField()


def ring_from_name(name: str) -> Ring:
    """Resolve a ring selector: ``z``, ``q`` or ``fp:<prime>``."""
    low = name.strip().lower()
    if low == "z":
        return ZZ
    if low == "q":
        return QQ
    if low.startswith("fp:"):
        try:
            p = int(low[3:])
        except ValueError:
            raise ExactError(f"bad prime in ring selector {name!r}")
        return PrimeField(p)
    raise ExactError(f"unknown ring selector {name!r} (use z, q, or fp:<p>)")


# ---------------------------------------------------------------------------
# Tensor indexing. Convention: the leftmost tensor factor is the most
# significant digit, so for V^(x)n with dim(V)=d the basis vector
# e_{a_1} (x) ... (x) e_{a_n} has flat index sum(a_i * d^(n-i)).
# ---------------------------------------------------------------------------

def flat_index(digits: Iterable[int], dims: Iterable[int]) -> int:
    flat = 0
    for a, d in zip(digits, dims):
        if not 0 <= a < d:
            raise ExactError(f"digit {a} out of range for dimension {d}")
        flat = flat * d + a
    return flat


def digits_of(flat: int, dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(dims)
    out = [0] * len(dims)
    for i in range(len(dims) - 1, -1, -1):
        flat, out[i] = divmod(flat, dims[i])
    if flat:
        raise ExactError("flat index out of range")
    return tuple(out)


@dataclass(frozen=True)
class TensorIndex:
    """A basis vector of a tensor product, both as digits and flat index."""

    dims: tuple[int, ...]
    flat: int

    @staticmethod
    def from_digits(digits: Iterable[int], dims: Iterable[int]) -> "TensorIndex":
        dims = tuple(dims)
        return TensorIndex(dims, flat_index(digits, dims))

    @property
    def digits(self) -> tuple[int, ...]:
        return digits_of(self.flat, self.dims)


# ---------------------------------------------------------------------------
# Sparse linear maps
# ---------------------------------------------------------------------------

class SparseLinearMap:
    """A linear map k^cols -> k^rows over an exact ring, stored column-major.

    Invariants: no explicit zeros, no empty column dicts, indices in range.
    Instances are value-like; never mutate one after creation.
    """

    __slots__ = ("rows", "cols", "ring", "_cols")

    def __init__(self, rows: int, cols: int, ring: Ring, _cols: Optional[dict] = None):
        if rows < 0 or cols < 0:
            raise ExactError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self._cols = _cols if _cols is not None else {}

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_entries(rows: int, cols: int, entries: Iterable, ring: Ring) -> "SparseLinearMap":
        """Build from (row, col, value) triples; duplicates accumulate."""
        data: dict[int, dict] = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ExactError(f"entry ({r},{c}) outside {rows}x{cols}")
            v = ring.coerce(v)
            col = data.setdefault(c, {})
            v = ring.add(col[r], v) if r in col else v
            if ring.is_zero(v):
                col.pop(r, None)
                if not col:
                    del data[c]
            else:
                col[r] = v
        return SparseLinearMap(rows, cols, ring, data)

    @staticmethod
    def identity(n: int, ring: Ring) -> "SparseLinearMap":
        one = ring.one
        return SparseLinearMap(n, n, ring, {j: {j: one} for j in range(n)})

    @staticmethod
    def zero(rows: int, cols: int, ring: Ring) -> "SparseLinearMap":
        return SparseLinearMap(rows, cols, ring, {})

    # -- inspection ----------------------------------------------------------

    def entries(self) -> Iterator[tuple[int, int, object]]:
        """All nonzero entries, sorted by (row, col) for determinism."""
        triples = []
        for c, col in self._cols.items():
            for r, v in col.items():
                triples.append((r, c, v))
        triples.sort(key=lambda t: (t[0], t[1]))
        return iter(triples)

    def entry(self, r: int, c: int):
        return self._cols.get(c, {}).get(r, self.ring.zero)

    def column(self, j: int) -> dict:
        return dict(self._cols.get(j, {}))

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    def is_zero(self) -> bool:
        return not self._cols

    def __eq__(self, other):
        if not isinstance(other, SparseLinearMap):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.ring == other.ring and self._cols == other._cols)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries())))

    def __repr__(self):
        return f"SparseLinearMap({self.rows}x{self.cols} over {self.ring}, nnz={self.nnz})"

    def to_dense(self) -> list[list]:
        z = self.ring.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    # -- algebra ------------------------------------------------------------

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse column vector {index: scalar}."""
        ring = self.ring
        acc: dict[int, object] = {}
        for j, v in vec.items():
            col = self._cols.get(j)
            if col is None:
                continue
            for r, w in col.items():
                s = ring.add(acc[r], ring.mul(w, v)) if r in acc else ring.mul(w, v)
                if ring.is_zero(s):
                    acc.pop(r, None)
                else:
                    acc[r] = s
        return acc

    def compose(self, other: "SparseLinearMap") -> "SparseLinearMap":
        """self o other (other is applied first)."""
        if self.ring != other.ring:
            raise ExactError("ring mismatch in compose")
        if self.cols != other.rows:
            raise ExactError(f"compose shape mismatch: {self.rows}x{self.cols} o {other.rows}x{other.cols}")
        ring = self.ring
        mul, add, is_zero = ring.mul, ring.add, ring.is_zero
        mine = self._cols
        out: dict[int, dict] = {}
        for j, col in other._cols.items():
            acc: dict[int, object] = {}
            for r, v in col.items():
                fc = mine.get(r)
                if fc is None:
                    continue
                for rr, w in fc.items():
                    s = add(acc[rr], mul(w, v)) if rr in acc else mul(w, v)
                    if is_zero(s):
                        acc.pop(rr, None)
                    else:
                        acc[rr] = s
            if acc:
                out[j] = acc
        return SparseLinearMap(self.rows, other.cols, ring, out)

    def tensor(self, other: "SparseLinearMap") -> "SparseLinearMap":
        """Kronecker product; the left factor is the most significant block."""
        if self.ring != other.ring:
            raise ExactError("ring mismatch in tensor")
        ring = self.ring
        mul = ring.mul
        orows, ocols = other.rows, other.cols
        out: dict[int, dict] = {}
        for jf, colf in self._cols.items():
            for jg, colg in other._cols.items():
                col: dict[int, object] = {}
                for rf, vf in colf.items():
                    base = rf * orows
                    for rg, vg in colg.items():
                        col[base + rg] = mul(vf, vg)
                out[jf * ocols + jg] = col
        return SparseLinearMap(self.rows * orows, self.cols * ocols, ring, out)

    def add_map(self, other: "SparseLinearMap") -> "SparseLinearMap":
        if (self.rows, self.cols) != (other.rows, other.cols) or self.ring != other.ring:
            raise ExactError("shape or ring mismatch in add")
        ring = self.ring
        out = {j: dict(col) for j, col in self._cols.items()}
        for j, col in other._cols.items():
            mine = out.setdefault(j, {})
            for r, v in col.items():
                s = ring.add(mine[r], v) if r in mine else v
                if ring.is_zero(s):
                    mine.pop(r, None)
                else:
                    mine[r] = s
            if not mine:
                del out[j]
        return SparseLinearMap(self.rows, self.cols, ring, out)

    def sub_map(self, other: "SparseLinearMap") -> "SparseLinearMap":
        return self.add_map(other.scale(self.ring.neg(self.ring.one)))

    def scale(self, s) -> "SparseLinearMap":
        ring = self.ring
        s = ring.coerce(s)
        if ring.is_zero(s):
            return SparseLinearMap.zero(self.rows, self.cols, ring)
        if s == ring.one:
            return self
        out = {j: {r: ring.mul(s, v) for r, v in col.items()} for j, col in self._cols.items()}
        return SparseLinearMap(self.rows, self.cols, ring, out)

    def neg(self) -> "SparseLinearMap":
        return self.scale(self.ring.neg(self.ring.one))

    def transpose(self) -> "SparseLinearMap":
        out: dict[int, dict] = {}
        for j, col in self._cols.items():
            for r, v in col.items():
                out.setdefault(r, {})[j] = v
        return SparseLinearMap(self.cols, self.rows, self.ring, out)

    def with_ring(self, ring: Ring) -> "SparseLinearMap":
        """Re-coerce every entry into another ring (e.g. Z -> Q, Z -> F_p)."""
        if ring == self.ring:
            return self
        out: dict[int, dict] = {}
        for j, col in self._cols.items():
            newcol = {}
            for r, v in col.items():
                w = ring.coerce(v if not isinstance(v, Fraction) else Fraction(v))
                if not ring.is_zero(w):
                    newcol[r] = w
            if newcol:
                out[j] = newcol
        return SparseLinearMap(self.rows, self.cols, ring, out)

    def submatrix(self, row_keep: list[int], col_keep: list[int]) -> "SparseLinearMap":
        """Reindexed restriction to the given rows/columns (order preserved)."""
        rpos = {r: i for i, r in enumerate(row_keep)}
        out: dict[int, dict] = {}
        for newj, j in enumerate(col_keep):
            col = self._cols.get(j)
            if not col:
                continue
            newcol = {rpos[r]: v for r, v in col.items() if r in rpos}
            if newcol:
                out[newj] = newcol
        return SparseLinearMap(len(row_keep), len(col_keep), self.ring, out)


def compose(f: SparseLinearMap, g: SparseLinearMap) -> SparseLinearMap:
    """f o g (g applied first)."""
    return f.compose(g)


def tensor(f: SparseLinearMap, g: SparseLinearMap) -> SparseLinearMap:
    return f.tensor(g)


def compose_chain(maps: list[SparseLinearMap]) -> SparseLinearMap:
    """Compose maps[0] o maps[1] o ... (last applied first)."""
    out = maps[0]
    for m in maps[1:]:
        out = out.compose(m)
    return out


# ---------------------------------------------------------------------------
# Rank / kernel over a field. Integer input is promoted to Q. The rational
# path clears denominators and eliminates fraction-free, stripping row
# contents (gcds) to keep intermediate integers small.
# ---------------------------------------------------------------------------

def _strip_content(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _integer_rows(m: SparseLinearMap) -> list[dict]:
    rows: dict[int, dict] = {}
    for r, c, v in m.entries():
        rows.setdefault(r, {})[c] = v
    out = []
    for row in rows.values():
        if any(isinstance(v, Fraction) for v in row.values()):
            denlcm = 1
            for v in row.values():
                denlcm = denlcm * Fraction(v).denominator // math.gcd(denlcm, Fraction(v).denominator)
            row = {c: int(Fraction(v) * denlcm) for c, v in row.items()}
        out.append(_strip_content(row))
    return out


def _rank_fraction_free(rows: list[dict]) -> int:
    colrows: dict[int, set[int]] = {}
    alive = set(range(len(rows)))
    for i, row in enumerate(rows):
        for c in row:
            colrows.setdefault(c, set()).add(i)
    rank = 0
    while alive:
        best = None
        for i in alive:
            row = rows[i]
            lr = len(row) - 1
            for c, v in row.items():
                key = (lr * (len(colrows[c]) - 1), abs(v))
                if best is None or key < best[0]:
                    best = (key, i, c)
                    if key[0] == 0 and key[1] == 1:
                        break
            else:
                continue
            break
        _, pi, pc = best
        prow = rows[pi]
        pv = prow[pc]
        rank += 1
        alive.discard(pi)
        for c in prow:
            colrows[c].discard(pi)
        for i in list(colrows.get(pc, ())):
            if i not in alive:
                continue
            row = rows[i]
            b = row[pc]
            new: dict[int, int] = {}
            for c in row.keys() | prow.keys():
                val = pv * row.get(c, 0) - b * prow.get(c, 0)
                if val:
                    new[c] = val
            new = _strip_content(new)
            for c in row:
                colrows[c].discard(i)
            rows[i] = new
            if not new:
                alive.discard(i)
            else:
                for c in new:
                    colrows.setdefault(c, set()).add(i)
    return rank


def _rank_mod_p(m: SparseLinearMap, p: int) -> int:
    rows_map: dict[int, dict] = {}
    for r, c, v in m.entries():
        w = v % p
        if w:
            rows_map.setdefault(r, {})[c] = w
    rows = list(rows_map.values())
    colrows: dict[int, set[int]] = {}
    alive = set(range(len(rows)))
    for i, row in enumerate(rows):
        for c in row:
            colrows.setdefault(c, set()).add(i)
    rank = 0
    while alive:
        best = None
        for i in alive:
            row = rows[i]
            lr = len(row) - 1
            for c in row:
                key = lr * (len(colrows[c]) - 1)
                if best is None or key < best[0]:
                    best = (key, i, c)
                if key == 0:
                    break
            if best[0] == 0:
                break
        _, pi, pc = best
        prow = rows[pi]
        pinv = pow(prow[pc], -1, p)
        rank += 1
        alive.discard(pi)
        for c in prow:
            colrows[c].discard(pi)
        for i in list(colrows.get(pc, ())):
            if i not in alive:
                continue
            row = rows[i]
            factor = row[pc] * pinv % p
            new = {}
            for c in row.keys() | prow.keys():
                val = (row.get(c, 0) - factor * prow.get(c, 0)) % p
                if val:
                    new[c] = val
            for c in row:
                colrows[c].discard(i)
            rows[i] = new
            if not new:
                alive.discard(i)
            else:
                for c in new:
                    colrows.setdefault(c, set()).add(i)
    return rank


def rank(m: SparseLinearMap) -> int:
    """Rank over the fraction field of the coefficient ring."""
    if m.is_zero():
        return 0
    if isinstance(m.ring, PrimeField):
        return _rank_mod_p(m, m.ring.p)
    return _rank_fraction_free(_integer_rows(m))


def kernel_dimension(m: SparseLinearMap) -> int:
    return m.cols - rank(m)


# ---------------------------------------------------------------------------
# Smith normal form over Z.
# ---------------------------------------------------------------------------

def _int_rows_checked(m: SparseLinearMap) -> dict[int, dict]:
    rows: dict[int, dict] = {}
    for r, c, v in m.entries():
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ExactError("Smith normal form needs integer entries")
            v = v.numerator
        rows.setdefault(r, {})[c] = v
    return rows


def smith_normal_form(m: SparseLinearMap) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... | d_r of an integer matrix.

    Elimination picks pivots of minimal absolute value (then minimal fill),
    clears the pivot column by row operations and the pivot row by column
    operations, switching to any smaller remainder it produces. Divisibility
    of the collected pivots is normalized at the end via gcd/lcm exchanges,
    which realize diag(a, b) ~ diag(gcd(a,b), lcm(a,b)).
    """
    rows = _int_rows_checked(m)
    colrows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)

    def row_addmul(dst: int, src: int, q: int):
        """rows[dst] += q * rows[src], maintaining the column index."""
        drow = rows[dst]
        for c, v in rows[src].items():
            s = drow.get(c, 0) + q * v
            if s:
                if c not in drow:
                    colrows.setdefault(c, set()).add(dst)
                drow[c] = s
            else:
                if c in drow:
                    del drow[c]
                    colrows[c].discard(dst)

    pivots: list[int] = []
    while True:
        best = None
        for r, row in rows.items():
            if not row:
                continue
            lr = len(row) - 1
            for c, v in row.items():
                key = (abs(v), lr * (len(colrows[c]) - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
            if best is not None and best[0][0] == 1 and best[0][1] == 0:
                break
        if best is None:
            break
        _, pr, pc = best
        while True:
            pv = rows[pr][pc]
            if pv < 0:
                rows[pr] = {c: -v for c, v in rows[pr].items()}
                pv = -pv
            switched = False
            for r2 in list(colrows[pc]):
                if r2 == pr:
                    continue
                q, rem = divmod(rows[r2][pc], pv)
                row_addmul(r2, pr, -q)
                if rem:
                    pr = r2
                    switched = True
                    break
            if switched:
                continue
            # Column is clear; clear the pivot row by column operations.
            # Since column pc now meets only row pr, each operation just
            # reduces an entry of row pr modulo the pivot.
            prow = rows[pr]
            switched = False
            for c2 in list(prow):
                if c2 == pc:
                    continue
                q, rem = divmod(prow[c2], pv)
                if rem:
                    prow[c2] = rem
                    pc = c2
                    switched = True
                    break
                del prow[c2]
                colrows[c2].discard(pr)
            if switched:
                continue
            break
        pivots.append(rows[pr][pc])
        del rows[pr]
        colrows[pc].discard(pr)

    # Normalize to a divisibility chain.
    changed = True
    while changed:
        changed = False
        for i in range(len(pivots)):
            for j in range(i + 1, len(pivots)):
                if pivots[j] % pivots[i]:
                    g = math.gcd(pivots[i], pivots[j])
                    pivots[i], pivots[j] = g, pivots[i] * pivots[j] // g
                    changed = True
    pivots.sort()
    return pivots


# ---------------------------------------------------------------------------
# Dense exact inverse (used for small braiding matrices only).
# ---------------------------------------------------------------------------

def try_inverse(m: SparseLinearMap) -> Optional[SparseLinearMap]:
    """Exact inverse, or None when the map is not invertible over its ring.

    Over Z the inverse must itself be integral (unimodularity); otherwise
    None is returned even if the matrix is invertible over Q.
    """
    if m.rows != m.cols:
        return None
    n = m.rows
    if n == 0:
        return SparseLinearMap.zero(0, 0, m.ring)
    field = m.ring if m.ring.is_field else QQ
    work = m.with_ring(field)
    a = work.to_dense()
    inv = SparseLinearMap.identity(n, field).to_dense()
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not field.is_zero(a[r][col]):
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pv = field.inv(a[col][col])
        a[col] = [field.mul(pv, x) for x in a[col]]
        inv[col] = [field.mul(pv, x) for x in inv[col]]
        for r in range(n):
            if r == col or field.is_zero(a[r][col]):
                continue
            f = a[r][col]
            a[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[r], a[col])]
            inv[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(inv[r], inv[col])]
    entries = [(r, c, inv[r][c]) for r in range(n) for c in range(n) if not field.is_zero(inv[r][c])]
    out = SparseLinearMap.from_entries(n, n, entries, field)
    if m.ring is ZZ:
        if any(Fraction(v).denominator != 1 for _, _, v in out.entries()):
            return None
        return out.with_ring(ZZ)
    return out
