"""Builders of braided differentials, faces, degeneracies, hyper-boundaries,
homotopies, coefficient differentials and the classical named complexes.

All maps are plain sparse matrices between tensor-power index spaces. Left
differentials evaluate a character on the first strand after pulling each
strand leftward through the (negated) braiding; right differentials are the
mirror image with an alternating global sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .exactlin import ExactError, SparseLinearMap, tensor
from .braiding import (
    PreBraidedSpace,
    block_flip,
    braid_lift,
    extended_braiding,
    moving_permutation,
    shuffle_coproduct,
    shuffle_product,
)
from . import homology
from .homology import ChainComplex, build_chain_complex, subquotient
from . import structures as st


# ---------------------------------------------------------------------------
# Differentials from characters
# ---------------------------------------------------------------------------

def left_diff(space: PreBraidedSpace, char: str, n: int, *,
              allow_unverified: bool = False) -> SparseLinearMap:
    """Character on strand 1 composed with the degree-(1, n-1) part of the
    negated-braiding coshuffle: a map V^(x)n -> V^(x)(n-1)."""
    if n < 1:
        raise ExactError("left differential needs degree >= 1")
    eps = space.require_character(char, allow_unverified)
    cosh = shuffle_coproduct(space, 1, n - 1, sign=-1, allow_unverified=allow_unverified)
    eps1 = tensor(eps, space.identity_power(n - 1))
    return eps1.compose(cosh)


def right_diff(space: PreBraidedSpace, char: str, n: int, *,
               allow_unverified: bool = False) -> SparseLinearMap:
    """Mirror differential: character on the last strand, coshuffle degree
    (n-1, 1), global sign (-1)^(n-1)."""
    if n < 1:
        raise ExactError("right differential needs degree >= 1")
    zeta = space.require_character(char, allow_unverified)
    cosh = shuffle_coproduct(space, n - 1, 1, sign=-1, allow_unverified=allow_unverified)
    zn = tensor(space.identity_power(n - 1), zeta)
    out = zn.compose(cosh)
    return out.neg() if (n - 1) % 2 == 1 else out


def combined_diff(space: PreBraidedSpace, left_char: str, right_char: str, n: int, *,
                  allow_unverified: bool = False) -> SparseLinearMap:
    """left - right; a differential for any two braided characters."""
    return left_diff(space, left_char, n, allow_unverified=allow_unverified).sub_map(
        right_diff(space, right_char, n, allow_unverified=allow_unverified))


def face(space: PreBraidedSpace, char: str, n: int, i: int, side: str = "left", *,
         allow_unverified: bool = False) -> SparseLinearMap:
    """The i-th face map: pull strand i to the boundary (leftmost for the
    left family, rightmost for the right one) and evaluate the character."""
    if not 1 <= i <= n:
        raise ExactError(f"face index {i} out of 1..{n}")
    eps = space.require_character(char, allow_unverified)
    if side == "left":
        lift = braid_lift(space, moving_permutation(i, n, to_left=True), n,
                          allow_unverified=allow_unverified)
        return tensor(eps, space.identity_power(n - 1)).compose(lift)
    if side == "right":
        lift = braid_lift(space, moving_permutation(i, n, to_left=False), n,
                          allow_unverified=allow_unverified)
        return tensor(space.identity_power(n - 1), eps).compose(lift)
    raise ExactError("side must be 'left' or 'right'")


def degeneracy(space: PreBraidedSpace, n: int, i: int) -> SparseLinearMap:
    """Comultiplication applied to strand i: V^(x)n -> V^(x)(n+1)."""
    if space.comultiplication is None:
        raise ExactError("space has no comultiplication")
    if not 1 <= i <= n:
        raise ExactError(f"degeneracy index {i} out of 1..{n}")
    d = space.dim
    return tensor(SparseLinearMap.identity(d ** (i - 1), space.ring),
                  tensor(space.comultiplication,
                         SparseLinearMap.identity(d ** (n - i), space.ring)))


def face_sum(space: PreBraidedSpace, char: str, n: int, side: str = "left", *,
             allow_unverified: bool = False) -> SparseLinearMap:
    """Alternating sum of faces; equals the corresponding differential."""
    out = SparseLinearMap.zero(space.dim ** (n - 1), space.dim ** n, space.ring)
    for i in range(1, n + 1):
        f = face(space, char, n, i, side, allow_unverified=allow_unverified)
        out = out.add_map(f.neg() if (i - 1) % 2 == 1 else f)
    return out


# ---------------------------------------------------------------------------
# Hyper-boundaries
# ---------------------------------------------------------------------------

def signed_binomial(m: int, k: int) -> int:
    """0 when m*k is odd, else binom(floor((m+k)/2), floor(k/2)). Governs
    compositions of hyper-boundaries."""
    if m < 0 or k < 0:
        raise ExactError("signed binomial needs nonnegative arguments")
    if (m * k) % 2 == 1:
        return 0
    return math.comb((m + k) // 2, k // 2)


def _char_power(space: PreBraidedSpace, eps: SparseLinearMap, k: int) -> SparseLinearMap:
    out = SparseLinearMap.identity(1, space.ring)
    for _ in range(k):
        out = tensor(out, eps)
    return out


def hyper_boundary(space: PreBraidedSpace, char: str, k: int, n: int,
                   side: str = "left", *, allow_unverified: bool = False) -> SparseLinearMap:
    """Degree -k boundary: evaluate the character on k strands pulled to the
    boundary through the negated braiding. k=1 recovers the differentials;
    k=0 is the identity."""
    if not 0 <= k <= n:
        raise ExactError(f"hyper order {k} out of 0..{n}")
    eps = space.require_character(char, allow_unverified)
    if side == "left":
        cosh = shuffle_coproduct(space, k, n - k, sign=-1, allow_unverified=allow_unverified)
        head = tensor(_char_power(space, eps, k), space.identity_power(n - k))
        return head.compose(cosh)
    if side == "right":
        cosh = shuffle_coproduct(space, n - k, k, sign=-1, allow_unverified=allow_unverified)
        tail = tensor(space.identity_power(n - k), _char_power(space, eps, k))
        out = tail.compose(cosh)
        exponent = k * n - k * (k + 1) // 2
        return out.neg() if exponent % 2 == 1 else out
    raise ExactError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# Element operations: crossing actions, concatenation homotopies, naturality
# ---------------------------------------------------------------------------

def _as_column(space: PreBraidedSpace, w) -> SparseLinearMap:
    if isinstance(w, SparseLinearMap):
        if (w.rows, w.cols) != (space.dim, 1):
            raise ExactError(f"element must be a {space.dim}x1 column")
        return w
    return SparseLinearMap.from_entries(
        space.dim, 1, [(j, 0, v) for j, v in enumerate(w)], space.ring)


def adjoint_action(space: PreBraidedSpace, char: str, n: int, *,
                   allow_unverified: bool = False) -> SparseLinearMap:
    """The action V^(x)n (x) V -> V^(x)n crossing the last factor over all
    strands and evaluating the character on it."""
    eps = space.require_character(char, allow_unverified)
    ext = extended_braiding(space, 1, n, allow_unverified=allow_unverified)
    return tensor(eps, space.identity_power(n)).compose(ext)


def crossing_action(space: PreBraidedSpace, char: str, w, n: int, *,
                    allow_unverified: bool = False) -> SparseLinearMap:
    """The endomorphism of V^(x)n obtained by feeding the fixed element w to
    the adjoint action. Diagonal translation for shelves, peripheral
    multiplication for algebras, adjoint action for brackets."""
    col = _as_column(space, w)
    act = adjoint_action(space, char, n, allow_unverified=allow_unverified)
    return act.compose(tensor(space.identity_power(n), col))


def concat_homotopy(space: PreBraidedSpace, w, n: int) -> SparseLinearMap:
    """v -> (-1)^n v (x) w, the candidate contracting homotopy."""
    col = _as_column(space, w)
    out = tensor(space.identity_power(n), col)
    return out.neg() if n % 2 == 1 else out


def rack_contraction(space: PreBraidedSpace, b: int, n: int) -> SparseLinearMap:
    """Contracting homotopy for the left shelf complex when right
    translation by b is bijective: undo the diagonal translation, then
    append b with the alternating sign."""
    t = space.payload
    if not isinstance(t, st.ShelfTable):
        raise ExactError("rack contraction needs a shelf payload")
    m = t.size
    back = [0] * m
    seen = set()
    for a in range(m):
        back[t.op(a, b)] = a
        seen.add(t.op(a, b))
    if len(seen) != m:
        raise ExactError(f"right translation by {b} is not bijective")
    one = space.ring.one
    undo1 = SparseLinearMap.from_entries(m, m, [(back[a], a, one) for a in range(m)], space.ring)
    undo = space.identity_power(0)
    for _ in range(n):
        undo = tensor(undo, undo1)
    col = SparseLinearMap.from_entries(m, 1, [(b, 0, one)], space.ring)
    out = tensor(space.identity_power(n), col).compose(undo)
    return out.neg() if n % 2 == 1 else out


@dataclass
class NaturalityReport:
    left: bool          # sigma(w (x) v) = v (x) w for all v
    right: bool         # sigma(v (x) w) = w (x) v for all v
    char_compat: dict   # per character: (Id (x) psi) o sigma o (. (x) w) = psi(.) w

    @property
    def classification(self) -> str:
        if self.left and self.right:
            return "natural"
        if self.left:
            return "semi-natural"
        if self.right:
            return "demi-natural"
        return "none"


def check_naturality(space: PreBraidedSpace, w) -> NaturalityReport:
    col = _as_column(space, w)
    d = space.dim
    idv = SparseLinearMap.identity(d, space.ring)
    left = space.braiding.compose(tensor(col, idv)) == tensor(idv, col)
    right = space.braiding.compose(tensor(idv, col)) == tensor(col, idv)
    compat = {}
    for name, psi in space.characters.items():
        lhs = tensor(idv, psi).compose(space.braiding).compose(tensor(idv, col))
        compat[name] = lhs == col.compose(psi)
    return NaturalityReport(left, right, compat)


# ---------------------------------------------------------------------------
# Braided modules and differentials with coefficients
# ---------------------------------------------------------------------------

@dataclass
class BraidedModule:
    """A space with a braided action. side='right' means rho: M (x) V -> M,
    side='left' means lam: V (x) M -> M."""
    dim: int
    action: SparseLinearMap
    side: str = "right"
    name: str = ""
    verified: bool = False

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ExactError("module side must be 'right' or 'left'")


@dataclass
class Bimodule:
    dim: int
    right_action: SparseLinearMap   # M (x) V -> M
    left_action: SparseLinearMap    # V (x) M -> M
    name: str = ""
    verified: bool = False


@dataclass
class ModuleReport:
    ok: bool
    braided_ok: bool
    compat_ok: Optional[bool] = None      # bimodules only
    classical_ok: Optional[bool] = None   # structural cross-check
    normalized: Optional[bool] = None

    def __bool__(self):
        return self.ok


def trivial_module(space: PreBraidedSpace, side: str = "right") -> BraidedModule:
    action = SparseLinearMap.zero(1, space.dim, space.ring)
    return BraidedModule(1, action, side, name="trivial", verified=True)


def character_module(space: PreBraidedSpace, char: str, side: str = "right") -> BraidedModule:
    """The ground ring acted on through a braided character."""
    eps = space.character(char)
    return BraidedModule(1, eps, side, name=f"char:{char}")


def _check_right_module(space: PreBraidedSpace, M: BraidedModule) -> bool:
    rho = M.action
    d = space.dim
    idv = SparseLinearMap.identity(d, space.ring)
    idm = SparseLinearMap.identity(M.dim, space.ring)
    lhs = rho.compose(tensor(rho, idv))
    rhs = lhs.compose(tensor(idm, space.braiding))
    return lhs == rhs


def _check_left_module(space: PreBraidedSpace, M: BraidedModule) -> bool:
    lam = M.action
    d = space.dim
    idv = SparseLinearMap.identity(d, space.ring)
    idm = SparseLinearMap.identity(M.dim, space.ring)
    lhs = lam.compose(tensor(idv, lam))
    rhs = lhs.compose(tensor(space.braiding, idm))
    return lhs == rhs


def _classical_module_check(space: PreBraidedSpace, M: BraidedModule) -> Optional[bool]:
    """For structural payloads, compare against the classical module axiom
    (meaningful for normalized actions)."""
    payload = space.payload
    if M.side != "right" or payload is None:
        return None
    rho = M.action
    d = space.dim
    idv = SparseLinearMap.identity(d, space.ring)
    idm = SparseLinearMap.identity(M.dim, space.ring)
    two_step = rho.compose(tensor(rho, idv))
    if isinstance(payload, st.ShelfTable):
        return two_step == two_step.compose(tensor(idm, space.braiding))
    if isinstance(payload, st.AlgebraData) and payload.kind == "associative":
        return two_step == rho.compose(tensor(idm, payload.operation))
    if isinstance(payload, st.AlgebraData) and payload.kind == "leibniz":
        d2 = space.dim ** 2
        flip = block_flip(space.ring, d, d)
        rhs = two_step.compose(tensor(idm, flip)).add_map(
            rho.compose(tensor(idm, payload.operation)))
        return two_step == rhs
    return None


def check_braided_module(space: PreBraidedSpace, M: BraidedModule) -> ModuleReport:
    """Entrywise verification of the braided module axiom on M(x)V(x)V (or
    its left mirror), with the classical axiom cross-checked for structural
    braidings and normalized actions."""
    if M.side == "right":
        braided_ok = _check_right_module(space, M)
    else:
        braided_ok = _check_left_module(space, M)
    normalized = None
    if space.unit_index is not None:
        u = SparseLinearMap.from_entries(space.dim, 1, [(space.unit_index, 0, space.ring.one)],
                                         space.ring)
        idm = SparseLinearMap.identity(M.dim, space.ring)
        if M.side == "right":
            normalized = M.action.compose(tensor(idm, u)) == idm
        else:
            normalized = M.action.compose(tensor(u, idm)) == idm
    classical_ok = _classical_module_check(space, M) if normalized else None
    M.verified = braided_ok
    return ModuleReport(braided_ok, braided_ok, None, classical_ok, normalized)


def check_bimodule(space: PreBraidedSpace, B: Bimodule) -> ModuleReport:
    right = BraidedModule(B.dim, B.right_action, "right")
    left = BraidedModule(B.dim, B.left_action, "left")
    r_ok = _check_right_module(space, right)
    l_ok = _check_left_module(space, left)
    d = space.dim
    idv = SparseLinearMap.identity(d, space.ring)
    compat = (B.right_action.compose(tensor(B.left_action, idv))
              == B.left_action.compose(tensor(idv, B.right_action)))
    ok = r_ok and l_ok and compat
    B.verified = ok
    return ModuleReport(ok, r_ok and l_ok, compat)


def adjoint_module(space: PreBraidedSpace, char: str, n: int, *,
                   allow_unverified: bool = False) -> BraidedModule:
    """V^(x)n as a right braided module through the crossing action."""
    act = adjoint_action(space, char, n, allow_unverified=allow_unverified)
    M = BraidedModule(space.dim ** n, act, "right", name=f"adjoint:{char}:{n}")
    rep = check_braided_module(space, M)
    if not rep.braided_ok:
        raise ExactError("adjoint action failed the braided module axiom")
    return M


def regular_bimodule(space: PreBraidedSpace) -> Bimodule:
    """A unital associative payload acting on itself on both sides."""
    payload = space.payload
    if not (isinstance(payload, st.AlgebraData) and payload.kind == "associative"):
        raise ExactError("regular bimodule needs an associative payload")
    mu = payload.operation
    return Bimodule(space.dim, mu, mu, name="regular")


def rackset_module(space: PreBraidedSpace) -> BraidedModule:
    """A shelf acting on itself by its own operation."""
    t = space.payload
    if not isinstance(t, st.ShelfTable):
        raise ExactError("rack-set module needs a shelf payload")
    m = t.size
    one = space.ring.one
    entries = [(t.op(a, b), a * m + b, one) for a in range(m) for b in range(m)]
    action = SparseLinearMap.from_entries(m, m * m, entries, space.ring)
    return BraidedModule(m, action, "right", name="self")


def coeff_diff(space: PreBraidedSpace, M: Optional[BraidedModule],
               N: Optional[BraidedModule], n: int, side: str = "left", *,
               allow_unverified: bool = False) -> SparseLinearMap:
    """Differential on M (x) V^(x)n (x) N. The left one feeds the first
    strand to the right action of M, the right one feeds the last strand to
    the left action of N (sign (-1)^(n-1)). A missing module is the trivial
    rank-one module with zero action."""
    if M is None:
        M = trivial_module(space, "right")
    if N is None:
        N = trivial_module(space, "left")
    if M.side != "right" or N.side != "left":
        raise ExactError("coefficients need a right module M and a left module N")
    if not (M.verified and N.verified) and not allow_unverified:
        from .braiding import UnverifiedError
        raise UnverifiedError(
            f"modules {M.name!r}/{N.name!r} not verified; run check_braided_module first")
    ring = space.ring
    idn = SparseLinearMap.identity(N.dim, ring)
    idm = SparseLinearMap.identity(M.dim, ring)
    if side == "left":
        cosh = shuffle_coproduct(space, 1, n - 1, sign=-1, allow_unverified=allow_unverified)
        out = tensor(M.action, tensor(space.identity_power(n - 1), idn)).compose(
            tensor(idm, tensor(cosh, idn)))
        return out
    if side == "right":
        cosh = shuffle_coproduct(space, n - 1, 1, sign=-1, allow_unverified=allow_unverified)
        out = tensor(idm, tensor(space.identity_power(n - 1), N.action)).compose(
            tensor(idm, tensor(cosh, idn)))
        return out.neg() if (n - 1) % 2 == 1 else out
    raise ExactError("side must be 'left' or 'right'")


def bimodule_diff(space: PreBraidedSpace, B: Bimodule, n: int, *,
                  allow_unverified: bool = False) -> tuple[SparseLinearMap, SparseLinearMap]:
    """The two differentials on M (x) V^(x)n for a bimodule: the right
    action eats the strand pulled leftmost; the left action eats the strand
    pulled rightmost after cycling M around (the ambient symmetry is the
    plain block flip)."""
    if not B.verified and not allow_unverified:
        from .braiding import UnverifiedError
        raise UnverifiedError(f"bimodule {B.name!r} not verified; run check_bimodule first")
    ring = space.ring
    d = space.dim
    m = B.dim
    idm = SparseLinearMap.identity(m, ring)
    cosh_l = shuffle_coproduct(space, 1, n - 1, sign=-1, allow_unverified=allow_unverified)
    left = tensor(B.right_action, space.identity_power(n - 1)).compose(tensor(idm, cosh_l))
    cosh_r = shuffle_coproduct(space, n - 1, 1, sign=-1, allow_unverified=allow_unverified)
    fwd = block_flip(ring, m, d ** n)
    back = block_flip(ring, d ** (n - 1), m)
    mid = tensor(space.identity_power(n - 1), B.left_action).compose(tensor(cosh_r, idm))
    right = back.compose(mid).compose(fwd)
    if (n - 1) % 2 == 1:
        right = right.neg()
    return left, right


# ---------------------------------------------------------------------------
# Co-differentials (degree +1) from cocharacters and comodules
# ---------------------------------------------------------------------------

def left_codiff(space: PreBraidedSpace, cochar: str, n: int, *,
                allow_unverified: bool = False) -> SparseLinearMap:
    """Insert the cocharacter in front and shuffle it in: V^(x)n -> V^(x)(n+1)."""
    e = space.require_cocharacter(cochar, allow_unverified)
    sh = shuffle_product(space, 1, n, sign=-1, allow_unverified=allow_unverified)
    return sh.compose(tensor(e, space.identity_power(n)))


def right_codiff(space: PreBraidedSpace, cochar: str, n: int, *,
                 allow_unverified: bool = False) -> SparseLinearMap:
    """Mirror: insert at the end, shuffle, sign (-1)^n."""
    e = space.require_cocharacter(cochar, allow_unverified)
    sh = shuffle_product(space, n, 1, sign=-1, allow_unverified=allow_unverified)
    out = sh.compose(tensor(space.identity_power(n), e))
    return out.neg() if n % 2 == 1 else out


@dataclass
class Bicomodule:
    """Coactions rho: M -> M (x) V and lam: M -> V (x) M."""
    dim: int
    right_coaction: SparseLinearMap
    left_coaction: SparseLinearMap
    name: str = ""
    verified: bool = False


def check_bicomodule(space: PreBraidedSpace, B: Bicomodule) -> ModuleReport:
    """Transpose-dual of the bimodule axioms."""
    rho, lam = B.right_coaction, B.left_coaction
    d = space.dim
    idv = SparseLinearMap.identity(d, space.ring)
    idm = SparseLinearMap.identity(B.dim, space.ring)
    lhs_r = tensor(rho, idv).compose(rho)
    r_ok = lhs_r == tensor(idm, space.braiding).compose(lhs_r)
    lhs_l = tensor(idv, lam).compose(lam)
    l_ok = lhs_l == tensor(space.braiding, idm).compose(lhs_l)
    compat = tensor(lam, idv).compose(rho) == tensor(idv, rho).compose(lam)
    ok = r_ok and l_ok and compat
    B.verified = ok
    return ModuleReport(ok, r_ok and l_ok, compat)


def bicomodule_codiff(space: PreBraidedSpace, B: Bicomodule, n: int, *,
                      allow_unverified: bool = False) -> tuple[SparseLinearMap, SparseLinearMap]:
    """Degree +1 pair on M (x) V^(x)n, the transpose-dual of the bimodule
    differentials."""
    if not B.verified and not allow_unverified:
        from .braiding import UnverifiedError
        raise UnverifiedError(f"bicomodule {B.name!r} not verified; run check_bicomodule first")
    ring = space.ring
    d = space.dim
    m = B.dim
    idm = SparseLinearMap.identity(m, ring)
    sh_l = shuffle_product(space, 1, n, sign=-1, allow_unverified=allow_unverified)
    left = tensor(idm, sh_l).compose(tensor(B.right_coaction, space.identity_power(n)))
    sh_r = shuffle_product(space, n, 1, sign=-1, allow_unverified=allow_unverified)
    fwd = block_flip(ring, m, d ** n)
    back = block_flip(ring, d ** (n + 1), m)
    mid = tensor(sh_r, idm).compose(tensor(space.identity_power(n), B.left_coaction))
    right = back.compose(mid).compose(fwd)
    if n % 2 == 1:
        right = right.neg()
    return left, right


def coalgebra_self_bicomodule(space: PreBraidedSpace) -> Bicomodule:
    """A counital coalgebra payload coacting on itself on both sides."""
    payload = space.payload
    if not (isinstance(payload, st.AlgebraData) and payload.kind == "coalgebra"):
        raise ExactError("self bicomodule needs a coalgebra payload")
    delta = payload.operation
    return Bicomodule(space.dim, delta, delta, name="self")


# ---------------------------------------------------------------------------
# Simplicial structure checks
# ---------------------------------------------------------------------------

@dataclass
class SimplicialReport:
    left_level: str
    right_level: str
    pre_bisimplicial: bool
    bisimplicial_level: str
    failures: list = field(default_factory=list)


_LEVELS = ["none", "presimplicial", "very weakly simplicial",
           "weakly simplicial", "simplicial"]


def _face_family(space, char, side, n_max, allow_unverified):
    return {(n, i): face(space, char, n, i, side, allow_unverified=allow_unverified)
            for n in range(1, n_max + 1) for i in range(1, n + 1)}


def _presimplicial(dmaps, n_max, failures, tag):
    ok = True
    for n in range(2, n_max + 1):
        for j in range(2, n + 1):
            for i in range(1, j):
                if dmaps[(n - 1, i)].compose(dmaps[(n, j)]) != \
                        dmaps[(n - 1, j - 1)].compose(dmaps[(n, i)]):
                    failures.append((tag, "dd", n, i, j))
                    ok = False
    return ok


def _mixed_presimplicial(dl, dr, n_max, failures):
    ok = True
    for n in range(2, n_max + 1):
        for j in range(2, n + 1):
            for i in range(1, j):
                if dl[(n - 1, i)].compose(dr[(n, j)]) != dr[(n - 1, j - 1)].compose(dl[(n, i)]):
                    failures.append(("mixed", "dd'", n, i, j))
                    ok = False
                if dr[(n - 1, i)].compose(dl[(n, j)]) != dl[(n - 1, j - 1)].compose(dr[(n, i)]):
                    failures.append(("mixed", "d'd", n, i, j))
                    ok = False
    return ok


def _degeneracy_level(space, dmaps, smaps, n_max, failures, tag):
    """Climb the ladder: very weak (ss, ds disjoint), weak (ds equal),
    simplicial (ds identity)."""
    very = True
    for n in range(1, n_max - 1):
        for j in range(1, n + 1):
            for i in range(1, j + 1):
                if smaps[(n + 1, i)].compose(smaps[(n, j)]) != \
                        smaps[(n + 1, j + 1)].compose(smaps[(n, i)]):
                    failures.append((tag, "ss", n, i, j))
                    very = False
    for n in range(1, n_max):
        for j in range(1, n + 1):
            for i in range(1, j):
                if dmaps[(n + 1, i)].compose(smaps[(n, j)]) != \
                        smaps[(n - 1, j - 1)].compose(dmaps[(n, i)]):
                    failures.append((tag, "ds<", n, i, j))
                    very = False
            for i in range(j + 2, n + 2):
                if dmaps[(n + 1, i)].compose(smaps[(n, j)]) != \
                        smaps[(n - 1, j)].compose(dmaps[(n, i - 1)]):
                    failures.append((tag, "ds>", n, i, j))
                    very = False
    if not very:
        return "presimplicial"
    weak = True
    ident = True
    idn = {n: space.identity_power(n) for n in range(1, n_max)}
    for n in range(1, n_max):
        for i in range(1, n + 1):
            di_si = dmaps[(n + 1, i)].compose(smaps[(n, i)])
            if di_si != dmaps[(n + 1, i + 1)].compose(smaps[(n, i)]):
                failures.append((tag, "dsi", n, i))
                weak = False
            if di_si != idn[n]:
                ident = False
    if not weak:
        return "very weakly simplicial"
    return "simplicial" if ident else "weakly simplicial"


def check_simplicial(space: PreBraidedSpace, left_char: str, right_char: str,
                     n_max: int = 5, *, allow_unverified: bool = False) -> SimplicialReport:
    """Verify the face/degeneracy identities up to n_max and report the
    achieved level for the left and right families and their mixture."""
    failures: list = []
    dl = _face_family(space, left_char, "left", n_max, allow_unverified)
    dr = _face_family(space, right_char, "right", n_max, allow_unverified)
    left_pre = _presimplicial(dl, n_max, failures, "left")
    right_pre = _presimplicial(dr, n_max, failures, "right")
    mixed = _mixed_presimplicial(dl, dr, n_max, failures)
    left_level = "presimplicial" if left_pre else "none"
    right_level = "presimplicial" if right_pre else "none"
    if space.comultiplication is not None:
        smaps = {(n, i): degeneracy(space, n, i)
                 for n in range(1, n_max) for i in range(1, n + 1)}
        if left_pre:
            left_level = _degeneracy_level(space, dl, smaps, n_max, failures, "left")
        if right_pre:
            right_level = _degeneracy_level(space, dr, smaps, n_max, failures, "right")
    pre_bi = left_pre and right_pre and mixed
    if not pre_bi:
        bi = "none"
    else:
        bi = _LEVELS[min(_LEVELS.index(left_level), _LEVELS.index(right_level))]
        bi = {"presimplicial": "pre-bisimplicial",
              "very weakly simplicial": "very weakly bisimplicial",
              "weakly simplicial": "weakly bisimplicial",
              "simplicial": "bisimplicial"}.get(bi, "none")
    return SimplicialReport(left_level, right_level, pre_bi, bi, failures)


# ---------------------------------------------------------------------------
# Spans for quotient / restricted complexes
# ---------------------------------------------------------------------------

def repeated_neighbor_span(d: int, n: int) -> Callable[[int], bool]:
    """Basis tensors with some equal adjacent pair of digits (the image of
    the diagonal degeneracies)."""
    from .exactlin import digits_of

    def pred(flat: int) -> bool:
        digs = digits_of(flat, (d,) * n)
        return any(digs[i] == digs[i + 1] for i in range(n - 1))
    return pred


def unit_factor_span(d: int, n: int, unit_index: int,
                     lead_dim: int = 1) -> Callable[[int], bool]:
    """Basis tensors with the unit index in some tensor slot; an optional
    leading coefficient block is ignored."""
    from .exactlin import digits_of
    dims = ((lead_dim,) if lead_dim > 1 else ()) + (d,) * n
    skip = 1 if lead_dim > 1 else 0

    def pred(flat: int) -> bool:
        digs = digits_of(flat, dims)
        return unit_index in digs[skip:]
    return pred


# ---------------------------------------------------------------------------
# Named classical complexes
# ---------------------------------------------------------------------------

def _simple_complex(space, n_max, builder, diff_fn, step=-1, dims=None, cap=None) -> ChainComplex:
    d = space.dim
    dims = dims or [d ** n for n in range(n_max + 1)]
    homology.ensure_cap(dims, cap)
    diffs = {}
    if step == -1:
        for n in range(1, n_max + 1):
            diffs[n] = diff_fn(n)
    else:
        for n in range(0, n_max):
            diffs[n] = diff_fn(n)
    return build_chain_complex(space.ring, dims, diffs, step, builder)


def _require_payload(space, kind):
    payload = space.payload
    if kind == "shelf":
        if not isinstance(payload, st.ShelfTable):
            raise ExactError("this complex needs a shelf payload")
    else:
        if not (isinstance(payload, st.AlgebraData) and payload.kind == kind):
            raise ExactError(f"this complex needs a {kind} payload")
    return payload


def _ensure_verified_char(space, name):
    if name not in space.verified_characters:
        from .braiding import check_braided_character
        rep = check_braided_character(space, name)
        if not rep.ok:
            raise ExactError(f"character {name!r} is not a braided character")


def _ensure_ybe(space):
    if not space.ybe_checked:
        from .braiding import check_ybe
        rep = check_ybe(space)
        if not rep.ok:
            raise ExactError("braiding fails the Yang-Baxter equation")


def named_complex(space: PreBraidedSpace, name: str, n_max: int,
                  params: Optional[dict] = None) -> ChainComplex:
    """Assemble one of the classical complexes. Quotient constructions
    (quandle, bar, group, hochschild, cobar, cartier) project onto the
    canonical basis complement; restrictions (leibniz) verify stability."""
    params = dict(params or {})
    builders = {
        "koszul": _named_koszul,
        "shelf": _named_shelf,
        "rack": _named_rack,
        "quandle": _named_quandle,
        "twisted-rack": _named_twisted_rack,
        "partial-derivative": _named_partial_derivative,
        "bar": _named_bar,
        "group": _named_group,
        "hochschild": _named_hochschild,
        "leibniz": _named_leibniz,
        "graded-leibniz": _named_graded_leibniz,
        "cobar": _named_cobar,
        "cartier": _named_cartier,
    }
    if name not in builders:
        raise ExactError(f"unknown named complex {name!r}")
    return builders[name](space, n_max, params)


def _named_koszul(space, n_max, params):
    char = params.get("character")
    if char is None:
        if len(space.characters) != 1:
            raise ExactError("koszul complex needs a character parameter")
        char = next(iter(space.characters))
    _ensure_ybe(space)
    _ensure_verified_char(space, char)
    return _simple_complex(space, n_max, f"koszul[{char}]",
                           lambda n: left_diff(space, char, n),
                           cap=params.get("basis_cap"))


def _named_shelf(space, n_max, params):
    _require_payload(space, "shelf")
    _ensure_ybe(space)
    _ensure_verified_char(space, "ones")
    return _simple_complex(space, n_max, "shelf",
                           lambda n: left_diff(space, "ones", n),
                           cap=params.get("basis_cap"))


def _named_rack(space, n_max, params):
    _require_payload(space, "shelf")
    _ensure_ybe(space)
    _ensure_verified_char(space, "ones")
    return _simple_complex(space, n_max, "rack",
                           lambda n: combined_diff(space, "ones", "ones", n),
                           cap=params.get("basis_cap"))


def _named_quandle(space, n_max, params):
    t = _require_payload(space, "shelf")
    rep = st.check_shelf(t)
    if not rep.spindle:
        raise ExactError("quandle complex needs an idempotent self-distributive table")
    rack = _named_rack(space, n_max, params)
    pred = {n: repeated_neighbor_span(space.dim, n) for n in range(n_max + 1)}
    _, quot = subquotient(rack, lambda n, flat: pred[n](flat))
    quot.builder = "quandle"
    return quot


def _named_twisted_rack(space, n_max, params):
    _require_payload(space, "shelf")
    _ensure_ybe(space)
    _ensure_verified_char(space, "ones")
    twist = params.get("twist")
    if twist is None:
        raise ExactError("twisted rack complex needs a twist parameter")
    name = f"twist:{twist}"
    if name not in space.characters:
        space.add_character(name, st.twist_character(twist, space.dim, space.ring))
    _ensure_verified_char(space, name)
    return _simple_complex(
        space, n_max, f"twisted-rack[{twist}]",
        lambda n: left_diff(space, "ones", n).sub_map(right_diff(space, name, n)),
        cap=params.get("basis_cap"))


def _named_partial_derivative(space, n_max, params):
    t = _require_payload(space, "shelf")
    _ensure_ybe(space)
    a = params.get("element")
    if a is None:
        raise ExactError("partial derivative complex needs an element parameter")
    name = f"dirac:{a}"
    if name not in space.characters:
        space.add_character(name, st.dirac_character(t, int(a), space.ring))
    _ensure_verified_char(space, name)
    return _simple_complex(space, n_max, f"partial-derivative[{a}]",
                           lambda n: left_diff(space, name, n),
                           cap=params.get("basis_cap"))


def _unitalized(space):
    """Return (space2, original_dim): the braided space of the payload with
    a unit adjoined when absent."""
    payload = space.payload
    if payload.unit_index is not None:
        return space, None
    data = st.adjoin_unit(payload)
    if payload.kind == "associative":
        space2 = st.assoc_braiding(data)
    else:
        space2 = st.leibniz_braiding(data)
    _ensure_ybe(space2)
    return space2, payload.dim


def _quotient_by_unit(space2, n_max, diff_fn, builder, lead_dim=1, cap=None):
    base = space2.dim
    dims = [lead_dim * base ** n for n in range(n_max + 1)]
    homology.ensure_cap(dims, cap)
    diffs = {n: diff_fn(n) for n in range(1, n_max + 1)}
    amb = build_chain_complex(space2.ring, dims, diffs, -1, builder + ":ambient")
    preds = {n: unit_factor_span(base, n, space2.unit_index, lead_dim)
             for n in range(n_max + 1)}
    _, quot = subquotient(amb, lambda n, flat: preds[n](flat))
    quot.builder = builder
    return quot


def _named_bar(space, n_max, params):
    payload = _require_payload(space, "associative")
    space2, _ = _unitalized(space)
    _ensure_ybe(space2)
    if "counit" not in space2.characters:
        raise ExactError("bar complex needs the counit character (vanishing off the unit)")
    _ensure_verified_char(space2, "counit")
    return _quotient_by_unit(
        space2, n_max,
        lambda n: combined_diff(space2, "counit", "counit", n), "bar",
        cap=params.get("basis_cap"))


def _named_group(space, n_max, params):
    _require_payload(space, "associative")
    space2, _ = _unitalized(space)
    _ensure_ybe(space2)
    lc = params.get("left_char", "counit")
    rc = params.get("right_char", lc)
    _ensure_verified_char(space2, lc)
    _ensure_verified_char(space2, rc)
    return _quotient_by_unit(
        space2, n_max,
        lambda n: combined_diff(space2, lc, rc, n), f"group[{lc},{rc}]",
        cap=params.get("basis_cap"))


def _named_hochschild(space, n_max, params):
    _require_payload(space, "associative")
    space2, _ = _unitalized(space)
    _ensure_ybe(space2)
    bim = params.get("bimodule")
    if bim is None:
        bim = regular_bimodule(space2)
    if not bim.verified:
        rep = check_bimodule(space2, bim)
        if not rep.ok:
            raise ExactError("bimodule fails its axioms")

    def diff_fn(n):
        left, right = bimodule_diff(space2, bim, n)
        return left.sub_map(right)

    return _quotient_by_unit(space2, n_max, diff_fn, "hochschild",
                             lead_dim=bim.dim, cap=params.get("basis_cap"))


def _restrict_to_unit_free(space2, n_max, diff_fn, builder, cap=None):
    base = space2.dim
    dims = [base ** n for n in range(n_max + 1)]
    homology.ensure_cap(dims, cap)
    diffs = {n: diff_fn(n) for n in range(1, n_max + 1)}
    amb = build_chain_complex(space2.ring, dims, diffs, -1, builder + ":ambient")
    preds = {n: unit_factor_span(base, n, space2.unit_index) for n in range(n_max + 1)}
    sub, _ = subquotient(amb, lambda n, flat: not preds[n](flat))
    sub.builder = builder
    return sub


def _named_leibniz(space, n_max, params):
    _require_payload(space, "leibniz")
    space2, _ = _unitalized(space)
    _ensure_ybe(space2)
    char = params.get("character", "counit")
    if char not in space2.characters:
        raise ExactError("leibniz complex needs the counit character")
    _ensure_verified_char(space2, char)
    return _restrict_to_unit_free(
        space2, n_max, lambda n: left_diff(space2, char, n), "leibniz",
        cap=params.get("basis_cap"))


def _named_graded_leibniz(space, n_max, params):
    payload = _require_payload(space, "leibniz")
    if payload.unit_index is None:
        data = st.adjoin_unit(payload)
    else:
        data = payload
    if data.grading is None:
        raise ExactError("graded complex needs a grading")
    space2 = st.graded_leibniz_braiding(data)
    _ensure_ybe(space2)
    char = params.get("character", "counit")
    if char not in space2.characters:
        raise ExactError("graded leibniz complex needs the counit character")
    _ensure_verified_char(space2, char)
    return _restrict_to_unit_free(
        space2, n_max, lambda n: left_diff(space2, char, n), "graded-leibniz",
        cap=params.get("basis_cap"))


def _extended_coalgebra_space(space):
    """Counital carrier for the reduced coalgebra complexes: extend a raw
    coalgebra by a formal group-like, or reuse an already-extended one whose
    group-like is a distinguished basis vector."""
    payload = space.payload
    if payload.counit is None:
        data = st.coalgebra_extend(payload)
    elif payload.unit_index is not None:
        data = payload
    else:
        raise ExactError(
            "reduced coalgebra complexes need either a counit-free coalgebra "
            "or a distinguished group-like basis vector")
    space2 = st.coassoc_braiding(data)
    _ensure_ybe(space2)
    from .braiding import check_braided_cocharacter
    rep = check_braided_cocharacter(space2, "unit")
    if not rep.ok:
        raise ExactError("extension unit is not group-like")
    return space2


def _named_cobar(space, n_max, params):
    _require_payload(space, "coalgebra")
    space2 = _extended_coalgebra_space(space)
    base = space2.dim
    dims = [base ** n for n in range(n_max + 1)]
    homology.ensure_cap(dims, params.get("basis_cap"))
    diffs = {n: left_codiff(space2, "unit", n) for n in range(0, n_max)}
    amb = build_chain_complex(space2.ring, dims, diffs, +1, "cobar:ambient")
    preds = {n: unit_factor_span(base, n, space2.unit_index) for n in range(n_max + 1)}
    _, quot = subquotient(amb, lambda n, flat: preds[n](flat))
    quot.builder = "cobar"
    return quot


def _named_cartier(space, n_max, params):
    _require_payload(space, "coalgebra")
    space2 = _extended_coalgebra_space(space)
    bic = params.get("bicomodule")
    if bic is None:
        bic = coalgebra_self_bicomodule(space2)
    if not bic.verified:
        rep = check_bicomodule(space2, bic)
        if not rep.ok:
            raise ExactError("bicomodule fails its axioms")
    base = space2.dim
    dims = [bic.dim * base ** n for n in range(n_max + 1)]
    homology.ensure_cap(dims, params.get("basis_cap"))

    def diff_fn(n):
        left, right = bicomodule_codiff(space2, bic, n)
        return left.sub_map(right)

    diffs = {n: diff_fn(n) for n in range(0, n_max)}
    amb = build_chain_complex(space2.ring, dims, diffs, +1, "cartier:ambient")
    # dual to the unit quotient on the algebra side: here the unit-free
    # tensors span a stable subcomplex (the coactions may shed the unit)
    preds = {n: unit_factor_span(base, n, space2.unit_index, lead_dim=bic.dim)
             for n in range(n_max + 1)}
    sub, _ = subquotient(amb, lambda n, flat: not preds[n](flat))
    sub.builder = "cartier"
    return sub


# ---------------------------------------------------------------------------
# DifferentialSpec: declarative description of a complex for the assembler
# ---------------------------------------------------------------------------

@dataclass
class DifferentialSpec:
    kind: str                       # left | right | combined | face | hyper-left |
    #                                 hyper-right | coeff | bimodule | named
    left_char: Optional[str] = None
    right_char: Optional[str] = None
    hyper_order: int = 1
    module: Optional[BraidedModule] = None
    comodule: Optional[BraidedModule] = None
    bimodule: Optional[Bimodule] = None
    name: Optional[str] = None      # for kind == "named"
    params: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.kind == "named":
            return f"named[{self.name}]"
        parts = [self.kind]
        if self.left_char:
            parts.append(f"left={self.left_char}")
        if self.right_char:
            parts.append(f"right={self.right_char}")
        if self.kind.startswith("hyper"):
            parts.append(f"k={self.hyper_order}")
        return ",".join(parts)


def build_spec_diff(space: PreBraidedSpace, spec: DifferentialSpec, n: int, *,
                    allow_unverified: bool = False) -> SparseLinearMap:
    """One boundary matrix of the described complex at degree n."""
    kind = spec.kind
    if kind == "left":
        return left_diff(space, spec.left_char, n, allow_unverified=allow_unverified)
    if kind == "right":
        return right_diff(space, spec.right_char, n, allow_unverified=allow_unverified)
    if kind == "combined":
        return combined_diff(space, spec.left_char, spec.right_char or spec.left_char,
                             n, allow_unverified=allow_unverified)
    if kind == "face":
        return face_sum(space, spec.left_char, n, "left", allow_unverified=allow_unverified)
    if kind == "hyper-left":
        return hyper_boundary(space, spec.left_char, spec.hyper_order, n, "left",
                              allow_unverified=allow_unverified)
    if kind == "hyper-right":
        return hyper_boundary(space, spec.right_char or spec.left_char, spec.hyper_order,
                              n, "right", allow_unverified=allow_unverified)
    if kind == "coeff":
        return coeff_diff(space, spec.module, spec.comodule, n, "left",
                          allow_unverified=allow_unverified)
    if kind == "bimodule":
        left, right = bimodule_diff(space, spec.bimodule, n,
                                    allow_unverified=allow_unverified)
        return left.sub_map(right)
    raise ExactError(f"unknown differential kind {spec.kind!r}")


def spec_dims(space: PreBraidedSpace, spec: DifferentialSpec, n_max: int) -> list[int]:
    d = space.dim
    lead = 1
    if spec.kind == "coeff":
        lead = (spec.module.dim if spec.module else 1) * (spec.comodule.dim if spec.comodule else 1)
    if spec.kind == "bimodule":
        lead = spec.bimodule.dim
    return [lead * d ** n for n in range(n_max + 1)]


def spec_step(spec: DifferentialSpec) -> int:
    if spec.kind.startswith("hyper"):
        return -spec.hyper_order
    return -1
