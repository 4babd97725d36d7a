"""Chain complex assembly, homology over fields and over the integers, and
acyclicity certification.

Square-zero verification is mandatory at assembly: it is cheap relative to
any rank computation and converts silent mathematical errors upstream into
located failures.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .exactlin import (
    ExactError,
    QQ,
    Ring,
    SparseLinearMap,
    rank,
    smith_normal_form,
)

DEFAULT_BASIS_CAP = 200_000


class SquareZeroError(ExactError):
    """Two consecutive boundaries do not compose to zero."""

    def __init__(self, degree, entry):
        r, c, v = entry
        super().__init__(
            f"boundary composition out of degree {degree} is nonzero at "
            f"entry ({r},{c}) = {v}")
        self.degree = degree
        self.entry = entry


class SpanStabilityError(ExactError):
    """A requested sub/quotient span is not boundary-stable."""

    def __init__(self, degree, source_index, escaping_index):
        super().__init__(
            f"span is not boundary-stable: basis tensor {source_index} in "
            f"degree {degree} maps onto excluded index {escaping_index}")
        self.degree = degree
        self.source_index = source_index
        self.escaping_index = escaping_index


class ResourceCapError(ExactError):
    """A degree would exceed the configured basis ceiling."""


def ensure_cap(dims: list[int], cap: Optional[int] = None):
    cap = DEFAULT_BASIS_CAP if cap is None else cap
    worst = max(dims) if dims else 0
    if worst > cap:
        raise ResourceCapError(
            f"a degree would hold {worst} basis elements, over the cap of {cap}; "
            "lower the maximum degree or raise the cap")


@dataclass
class ChainComplex:
    """Degrees 0..n_max with one boundary per degree. step is the boundary
    degree: -1 for chain complexes, +1 for cochain ones, -k for higher
    boundary families."""

    ring: Ring
    dims: list[int]
    diffs: dict[int, SparseLinearMap]
    step: int = -1
    builder: str = ""

    @property
    def n_max(self) -> int:
        return len(self.dims) - 1

    def diff(self, n: int) -> Optional[SparseLinearMap]:
        return self.diffs.get(n)

    def boundary(self, n: int) -> SparseLinearMap:
        """The boundary out of degree n, materializing zeros inside range."""
        got = self.diffs.get(n)
        if got is not None:
            return got
        target = n + self.step
        if 0 <= n <= self.n_max and 0 <= target <= self.n_max:
            return SparseLinearMap.zero(self.dims[target], self.dims[n], self.ring)
        raise ExactError(f"no boundary out of degree {n}")


def build_chain_complex(ring: Ring, dims: list[int], diffs: dict[int, SparseLinearMap],
                        step: int, builder: str, *,
                        basis_cap: Optional[int] = None) -> ChainComplex:
    """Validate shapes, verify square-zero on every composable pair, and
    freeze the result."""
    ensure_cap(dims, basis_cap)
    n_max = len(dims) - 1
    for n, m in diffs.items():
        target = n + step
        if not (0 <= n <= n_max and 0 <= target <= n_max):
            raise ExactError(f"boundary at degree {n} leaves the declared range")
        if (m.rows, m.cols) != (dims[target], dims[n]):
            raise ExactError(
                f"boundary at degree {n} has shape {m.rows}x{m.cols}, "
                f"expected {dims[target]}x{dims[n]}")
        if m.ring != ring:
            raise ExactError("boundary ring mismatch")
    for n, m in diffs.items():
        nxt = diffs.get(n + step)
        if nxt is not None:
            square = nxt.compose(m)
            if not square.is_zero():
                raise SquareZeroError(n, next(square.entries()))
    return ChainComplex(ring, list(dims), dict(diffs), step, builder)


def assemble(space, spec, n_max: int, *, allow_unverified: bool = False,
             basis_cap: Optional[int] = None) -> ChainComplex:
    """Build the complex described by a DifferentialSpec degree by degree,
    with the square-zero check of build_chain_complex."""
    from . import complexes as cx

    if spec.kind == "named":
        params = dict(spec.params)
        if basis_cap is not None:
            params["basis_cap"] = basis_cap
        return cx.named_complex(space, spec.name, n_max, params)
    dims = cx.spec_dims(space, spec, n_max)
    ensure_cap(dims, basis_cap)
    step = cx.spec_step(spec)
    diffs = {}
    for n in range(1, n_max + 1):
        if n + step < 0:
            continue
        diffs[n] = cx.build_spec_diff(space, spec, n, allow_unverified=allow_unverified)
    return build_chain_complex(space.ring, dims, diffs, step, spec.describe(),
                               basis_cap=basis_cap)


# ---------------------------------------------------------------------------
# Homology reports
# ---------------------------------------------------------------------------

@dataclass
class DegreeHomology:
    degree: int
    space_dim: int
    free_rank: int
    torsion: list[int] = field(default_factory=list)
    boundary_shape: Optional[tuple[int, int]] = None
    boundary_nnz: int = 0


@dataclass
class HomologyReport:
    ring_name: str
    builder: str
    degrees: dict[int, DegreeHomology]
    square_zero_verified: bool = True
    seconds: float = 0.0

    def free_ranks(self) -> dict[int, int]:
        return {n: h.free_rank for n, h in sorted(self.degrees.items())}


def betti(c: ChainComplex, coefficients: Optional[Ring] = None) -> HomologyReport:
    """Free ranks over a field: dim - rank(out) - rank(in) per degree, with
    boundaries beyond the stored range treated as zero."""
    t0 = time.monotonic()
    if coefficients is None:
        coefficients = c.ring if c.ring.is_field else QQ
    if not coefficients.is_field:
        raise ExactError("betti numbers need field coefficients (use q or fp:<p>)")
    ranks: dict[int, int] = {}
    for n, m in c.diffs.items():
        ranks[n] = rank(m.with_ring(coefficients))
    degrees = {}
    for n in range(c.n_max + 1):
        out_rank = ranks.get(n, 0)
        in_rank = ranks.get(n - c.step, 0)
        m = c.diffs.get(n)
        degrees[n] = DegreeHomology(
            n, c.dims[n], c.dims[n] - out_rank - in_rank, [],
            (m.rows, m.cols) if m is not None else None,
            m.nnz if m is not None else 0)
    return HomologyReport(coefficients.name, c.builder, degrees,
                          seconds=time.monotonic() - t0)


def integral_homology(c: ChainComplex) -> HomologyReport:
    """Free rank and torsion per degree from the Smith normal forms of the
    outgoing and incoming boundaries; no basis alignment is needed for the
    invariant factors."""
    t0 = time.monotonic()
    factors: dict[int, list[int]] = {}
    for n, m in c.diffs.items():
        factors[n] = smith_normal_form(m)
    degrees = {}
    for n in range(c.n_max + 1):
        out_rank = len(factors.get(n, []))
        incoming = factors.get(n - c.step, [])
        torsion = sorted(f for f in incoming if f > 1)
        m = c.diffs.get(n)
        degrees[n] = DegreeHomology(
            n, c.dims[n], c.dims[n] - out_rank - len(incoming), torsion,
            (m.rows, m.cols) if m is not None else None,
            m.nnz if m is not None else 0)
    return HomologyReport("Z", c.builder, degrees, seconds=time.monotonic() - t0)


@dataclass
class AcyclicityReport:
    certified: dict[int, bool]
    ok: bool

    def __bool__(self):
        return self.ok


def certify_acyclic(c: ChainComplex, homotopy: dict[int, SparseLinearMap]) -> AcyclicityReport:
    """Verify h d + d h = Id entrywise on every degree the homotopy covers.

    This certificate is independent of any rank computation. For a chain
    complex, degree n needs h_n, the boundary out of degree n+1 and (when
    n > 0) h_{n-1}; degree 0 only needs the incoming composite."""
    certified: dict[int, bool] = {}
    for n, h in homotopy.items():
        up = n - c.step
        if not 0 <= up <= c.n_max:
            raise ExactError(f"homotopy at degree {n} has no incoming boundary inside range")
        if (h.rows, h.cols) != (c.dims[up], c.dims[n]):
            raise ExactError(
                f"homotopy at degree {n} has shape {h.rows}x{h.cols}, "
                f"expected {c.dims[up]}x{c.dims[n]}")
        total = c.boundary(up).compose(h)
        prev = n + c.step
        if 0 <= prev <= c.n_max:
            hn_prev = homotopy.get(prev)
            if hn_prev is not None and n in c.diffs:
                total = total.add_map(hn_prev.compose(c.diffs[n]))
        certified[n] = total == SparseLinearMap.identity(c.dims[n], c.ring)
    return AcyclicityReport(certified, all(certified.values()))


def subquotient(c: ChainComplex, predicate: Callable[[int, int], bool]
                ) -> tuple[ChainComplex, ChainComplex]:
    """Split along a basis-index predicate (True = inside the span).

    Verifies that the span is boundary-stable (an escaping basis tensor is
    an error naming it), then returns the restricted complex on the span and
    the quotient complex on the complement, with induced boundaries."""
    span_idx: dict[int, list[int]] = {}
    comp_idx: dict[int, list[int]] = {}
    in_span: dict[int, set[int]] = {}
    for n in range(c.n_max + 1):
        sel = [j for j in range(c.dims[n]) if predicate(n, j)]
        span_idx[n] = sel
        in_span[n] = set(sel)
        comp_idx[n] = [j for j in range(c.dims[n]) if j not in in_span[n]]
    sub_diffs = {}
    quot_diffs = {}
    for n, m in c.diffs.items():
        target = n + c.step
        tgt_span = in_span[target]
        for j in span_idx[n]:
            for r in m.column(j):
                if r not in tgt_span:
                    raise SpanStabilityError(n, j, r)
        sub_diffs[n] = m.submatrix(span_idx[target], span_idx[n])
        quot_diffs[n] = m.submatrix(comp_idx[target], comp_idx[n])
    sub = build_chain_complex(c.ring, [len(span_idx[n]) for n in range(c.n_max + 1)],
                              sub_diffs, c.step, c.builder + ":sub")
    quot = build_chain_complex(c.ring, [len(comp_idx[n]) for n in range(c.n_max + 1)],
                               quot_diffs, c.step, c.builder + ":quot")
    return sub, quot
