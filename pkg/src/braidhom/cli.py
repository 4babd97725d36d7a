"""Command-line front end: check, complex, homology, verify.

Exit codes: 0 ok, 1 a requested check failed, 2 input error, 3 resource cap.
Machine-readable output (--json) contains every number of the human report;
identical inputs and flags produce byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .exactlin import ExactError, QQ, Ring, ZZ, ring_from_name
from .braiding import (
    UnverifiedError,
    check_braided_character,
    check_braided_cocharacter,
    check_braided_coalgebra,
    check_character_compat,
    check_shuffle_associativity,
    check_antipode_axiom,
    check_coshuffle_coassociativity,
    check_hopf_compatibility,
    check_sigma_commutativity,
    check_ybe,
    invert_braiding,
)
from . import structures as st
from .complexes import (
    DifferentialSpec,
    check_bimodule,
    check_braided_module,
    check_naturality,
    check_simplicial,
    concat_homotopy,
    face_sum,
    hyper_boundary,
    left_diff,
    rack_contraction,
    repeated_neighbor_span,
    right_diff,
    signed_binomial,
    unit_factor_span,
)
from .homology import (
    ResourceCapError,
    SquareZeroError,
    SpanStabilityError,
    assemble,
    betti,
    certify_acyclic,
    integral_homology,
    subquotient,
)
from . import scenario as sc_mod
from .scenario import Scenario, ScenarioError


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_CAP = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="braidhom",
        description="homology of algebraic structures via matrix pre-braidings")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="scenario JSON file")
    common.add_argument("--ring", help="coefficient ring: z, q or fp:<p>")
    common.add_argument("--max-degree", type=int, help="top tensor degree")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--allow-unverified", action="store_true",
                        help="skip the YBE / character verification gates")
    common.add_argument("--basis-cap", type=int, help="per-degree basis ceiling")

    sub.add_parser("check", parents=[common], help="run all axiom checks")

    for name in ("complex", "homology"):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("--named", help="named complex (rack, bar, leibniz, ...)")
        q.add_argument("--diff", help="left | right | combined | hyper:<k>")
        q.add_argument("--left-char")
        q.add_argument("--right-char")
        q.add_argument("--module", help="coefficient module name (diff complexes)")
        q.add_argument("--bimodule", help="bimodule name (hochschild-style complexes)")
        q.add_argument("--normalized", action="store_true",
                       help="quotient by the degenerate span")
        q.add_argument("--twist", help="twist scalar for the twisted rack complex")
        q.add_argument("--element", type=int, help="shelf element for partial derivatives")
        if name == "complex":
            q.add_argument("--dump-matrices", help="directory for per-degree matrix files")

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("--suite", required=True,
                   choices=["simplicial", "hyper", "hopf", "homotopy", "duality"])
    v.add_argument("--left-char")
    v.add_argument("--right-char")
    return p


def _apply_computation_defaults(args, scenario: Scenario):
    for comp in scenario.computations:
        if comp.get("command") != args.command:
            continue
        for key, value in comp.items():
            if key == "command":
                continue
            attr = key.replace("-", "_")
            if getattr(args, attr, None) in (None, False):
                setattr(args, attr, value)
        break


def _ring_for(args, scenario: Scenario) -> Ring:
    if getattr(args, "ring", None):
        return ring_from_name(args.ring)
    return scenario.ring


def _fmt_scalar(ring: Ring, v) -> str:
    return ring.fmt(v)


def _verify_space(space, report, allow_unverified):
    """YBE and character gates; populates report['verification']."""
    ver = {}
    ybe = check_ybe(space)
    ver["ybe"] = {"ok": ybe.ok}
    if not ybe.ok and ybe.violation:
        r, c, lhs, rhs = ybe.violation
        ver["ybe"]["first_violation"] = {
            "row": r, "col": c,
            "lhs": _fmt_scalar(space.ring, lhs), "rhs": _fmt_scalar(space.ring, rhs)}
    chars = {}
    for name in sorted(space.characters):
        rep = check_braided_character(space, name)
        chars[name] = {"braided": rep.ok}
    ver["characters"] = chars
    cochars = {}
    for name in sorted(space.cocharacters):
        rep = check_braided_cocharacter(space, name)
        cochars[name] = {"braided": rep.ok}
    if cochars:
        ver["cocharacters"] = cochars
    report["verification"] = ver
    ok = ybe.ok and all(c["braided"] for c in chars.values())
    if not ok and not allow_unverified:
        raise UnverifiedError(
            "the braiding or a character failed verification "
            "(run `check` for details, or pass --allow-unverified)")
    return ok


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _run_check(space, args, report) -> bool:
    ring = space.ring
    ok = True
    ybe = check_ybe(space)
    entry = {"ok": ybe.ok}
    if ybe.violation:
        r, c, lhs, rhs = ybe.violation
        entry["first_violation"] = {"row": r, "col": c,
                                    "lhs": ring.fmt(lhs), "rhs": ring.fmt(rhs)}
    report["ybe"] = entry
    ok &= ybe.ok

    payload = space.payload
    if isinstance(payload, st.ShelfTable):
        rep = st.check_shelf(payload)
        entry = {"self_distributive": rep.self_distributive, "rack": rep.rack,
                 "quandle": rep.quandle, "spindle": rep.spindle}
        if rep.sd_witness:
            entry["sd_violation_triple"] = list(rep.sd_witness)
        report["shelf"] = entry
        ok &= rep.self_distributive
    elif isinstance(payload, st.AlgebraData) and payload.kind == "associative":
        rep = st.check_assoc(payload)
        entry = {"associative": rep.associative,
                 "right_unital": rep.right_unital, "left_unital": rep.left_unital}
        if rep.witness:
            entry["violation_triple"] = list(rep.witness)
        report["associative"] = entry
        ok &= rep.associative
    elif isinstance(payload, st.AlgebraData) and payload.kind == "leibniz":
        rep = st.check_leibniz(payload)
        entry = {"leibniz": rep.leibniz, "unit_central": rep.unit_central}
        if rep.witness:
            entry["violation_triple"] = list(rep.witness)
        report["leibniz"] = entry
        ok &= rep.leibniz

    chars = {}
    names = sorted(space.characters)
    for name in names:
        rep = check_braided_character(space, name)
        one = {"braided": rep.ok}
        if isinstance(payload, st.AlgebraData):
            cov = space.characters[name]
            if payload.kind == "associative":
                one["algebra_character"] = bool(st.algebra_character_check(payload, cov))
            elif payload.kind == "leibniz":
                one["bracket_character"] = bool(st.lie_character_check(payload, cov))
        chars[name] = one
        ok &= rep.ok
    report["characters"] = chars
    compat = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            compat[f"{a},{b}"] = bool(check_character_compat(space, a, b))
    if compat:
        report["character_compatibility"] = compat

    for name in sorted(space.cocharacters):
        rep = check_braided_cocharacter(space, name)
        report.setdefault("cocharacters", {})[name] = {"braided": rep.ok}
        ok &= rep.ok

    if space.comultiplication is not None:
        rep = check_braided_coalgebra(space)
        report["coalgebra"] = {
            "coassociative": rep.coassociative,
            "braiding_compatible_left": rep.compat_left,
            "braiding_compatible_right": rep.compat_right,
            "cocommutative": rep.cocommutative,
            "classification": rep.classification,
        }

    if space.unit_index is not None:
        w = [1 if j == space.unit_index else 0 for j in range(space.dim)]
        rep = check_naturality(space, w)
        report["unit_naturality"] = {
            "classification": rep.classification,
            "character_compatibility": {k: v for k, v in sorted(rep.char_compat.items())},
        }

    inv = invert_braiding(space)
    report["braiding_invertible"] = inv is not None

    mods = {}
    for name in sorted(space.modules):
        rep = check_braided_module(space, space.modules[name])
        mods[name] = {"braided": rep.braided_ok}
        if rep.normalized is not None:
            mods[name]["normalized"] = rep.normalized
        if rep.classical_ok is not None:
            mods[name]["classical_axiom"] = rep.classical_ok
        ok &= rep.braided_ok
    for name in sorted(space.bimodules):
        rep = check_bimodule(space, space.bimodules[name])
        mods[name] = {"braided": rep.braided_ok, "compatibility": rep.compat_ok}
        ok &= rep.ok
    if mods:
        report["modules"] = mods
    return ok


# ---------------------------------------------------------------------------
# complex / homology
# ---------------------------------------------------------------------------

def _spec_from_args(space, args) -> DifferentialSpec:
    named = getattr(args, "named", None)
    if named:
        params = {}
        if getattr(args, "twist", None) is not None:
            params["twist"] = space.ring.parse(args.twist)
        if getattr(args, "element", None) is not None:
            params["element"] = args.element
        if getattr(args, "left_char", None):
            params["left_char"] = args.left_char
            params["character"] = args.left_char
        if getattr(args, "right_char", None):
            params["right_char"] = args.right_char
        if getattr(args, "bimodule", None):
            params["bimodule"] = space.bimodules[args.bimodule]
        return DifferentialSpec(kind="named", name=named, params=params)
    diff = getattr(args, "diff", None) or "combined"
    hyper_order = 1
    if diff.startswith("hyper:"):
        hyper_order = int(diff.split(":", 1)[1])
        diff = "hyper-left"
    lc = getattr(args, "left_char", None)
    rc = getattr(args, "right_char", None)
    if lc is None and len(space.characters) == 1:
        lc = next(iter(space.characters))
    if rc is None:
        rc = lc
    if getattr(args, "twist", None) is not None:
        tw = space.ring.parse(args.twist)
        name = f"twist:{args.twist}"
        if name not in space.characters:
            space.add_character(name, st.twist_character(tw, space.dim, space.ring))
        rc = name
    spec = DifferentialSpec(kind=diff, left_char=lc, right_char=rc,
                            hyper_order=hyper_order)
    if getattr(args, "module", None):
        spec = DifferentialSpec(kind="coeff", left_char=lc, right_char=rc,
                                module=space.modules[args.module])
        check_braided_module(space, spec.module)
    if getattr(args, "bimodule", None):
        spec = DifferentialSpec(kind="bimodule", bimodule=space.bimodules[args.bimodule])
        check_bimodule(space, spec.bimodule)
    return spec


def _normalize_complex(space, complex_):
    payload = space.payload
    if isinstance(payload, st.ShelfTable):
        preds = {n: repeated_neighbor_span(space.dim, n)
                 for n in range(complex_.n_max + 1)}
    elif isinstance(payload, st.AlgebraData) and space.unit_index is not None:
        lead = complex_.dims[0]
        preds = {n: unit_factor_span(space.dim, n, space.unit_index, lead_dim=lead)
                 for n in range(complex_.n_max + 1)}
    else:
        raise ExactError("--normalized needs a shelf payload or a distinguished unit")
    _, quot = subquotient(complex_, lambda n, f: preds[n](f))
    quot.builder = complex_.builder + ":normalized"
    return quot


def _complex_report(space, complex_) -> dict:
    degrees = {}
    for n in range(complex_.n_max + 1):
        entry = {"dim": complex_.dims[n]}
        m = complex_.diffs.get(n)
        if m is not None:
            entry["boundary_rows"] = m.rows
            entry["boundary_cols"] = m.cols
            entry["boundary_nnz"] = m.nnz
        degrees[str(n)] = entry
    return {"builder": complex_.builder, "step": complex_.step,
            "square_zero_verified": True, "degrees": degrees}


def _dump_matrices(space, complex_, outdir):
    """One file per degree: header 'rows cols nnz', then 'row col value'
    lines with reduced fractions."""
    path = Path(outdir)
    path.mkdir(parents=True, exist_ok=True)
    ring = complex_.ring
    written = []
    for n in sorted(complex_.diffs):
        m = complex_.diffs[n]
        lines = [f"{m.rows} {m.cols} {m.nnz}"]
        for r, c, v in m.entries():
            lines.append(f"{r} {c} {ring.fmt(v)}")
        fname = path / f"boundary_{n}.txt"
        fname.write_text("\n".join(lines) + "\n")
        written.append(fname.name)
    return written


def _run_complex(space, args, report) -> bool:
    spec = _spec_from_args(space, args)
    n_max = args.max_degree if args.max_degree is not None else 4
    c = assemble(space, spec, n_max, allow_unverified=args.allow_unverified,
                 basis_cap=args.basis_cap)
    if getattr(args, "normalized", False) and spec.kind != "named":
        c = _normalize_complex(space, c)
    report["complex"] = _complex_report(space, c)
    if getattr(args, "dump_matrices", None):
        report["dumped"] = _dump_matrices(space, c, args.dump_matrices)
    return True


def _run_homology(space, args, report) -> bool:
    spec = _spec_from_args(space, args)
    n_max = args.max_degree if args.max_degree is not None else 4
    c = assemble(space, spec, n_max, allow_unverified=args.allow_unverified,
                 basis_cap=args.basis_cap)
    if getattr(args, "normalized", False) and spec.kind != "named":
        c = _normalize_complex(space, c)
    report["complex"] = _complex_report(space, c)
    if space.ring is ZZ:
        hom = integral_homology(c)
    else:
        hom = betti(c, space.ring if space.ring.is_field else QQ)
    degrees = {}
    for n, h in sorted(hom.degrees.items()):
        entry = {"dim": h.space_dim, "free_rank": h.free_rank}
        if hom.ring_name == "Z":
            entry["torsion"] = h.torsion
        degrees[str(n)] = entry
    # timing stays on the HomologyReport object; the CLI report must be
    # byte-identical across runs
    report["homology"] = {"ring": hom.ring_name, "degrees": degrees}
    return True


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------

def _default_chars(space, args):
    lc = getattr(args, "left_char", None)
    rc = getattr(args, "right_char", None)
    if lc is None:
        if "ones" in space.characters:
            lc = "ones"
        elif "counit" in space.characters:
            lc = "counit"
        elif len(space.characters) >= 1:
            lc = sorted(space.characters)[0]
    if rc is None:
        rc = lc
    return lc, rc


def _suite_simplicial(space, args, report) -> bool:
    lc, rc = _default_chars(space, args)
    n_max = args.max_degree if args.max_degree is not None else 5
    rep = check_simplicial(space, lc, rc, n_max)
    report["simplicial"] = {
        "left_level": rep.left_level, "right_level": rep.right_level,
        "pre_bisimplicial": rep.pre_bisimplicial,
        "bisimplicial_level": rep.bisimplicial_level,
        "failures": len(rep.failures),
    }
    face_ok = True
    for n in range(1, n_max + 1):
        face_ok &= face_sum(space, lc, n, "left") == left_diff(space, lc, n)
        face_ok &= face_sum(space, rc, n, "right") == right_diff(space, rc, n)
    report["simplicial"]["face_sums_match_differentials"] = face_ok
    return rep.left_level != "none" and rep.right_level != "none" \
        and rep.pre_bisimplicial and face_ok


def _suite_hyper(space, args, report) -> bool:
    lc, _ = _default_chars(space, args)
    n_max = args.max_degree if args.max_degree is not None else 6
    ok = True
    checked = 0
    for n in range(1, n_max + 1):
        for k in range(0, min(4, n) + 1):
            for m in range(0, 5 - k):
                if k + m > n:
                    continue
                for side in ("left", "right"):
                    lhs = hyper_boundary(space, lc, m, n - k, side).compose(
                        hyper_boundary(space, lc, k, n, side))
                    rhs = hyper_boundary(space, lc, m + k, n, side).scale(
                        signed_binomial(m, k))
                    ok &= lhs == rhs
                    checked += 1
    report["hyper"] = {"ok": ok, "identities_checked": checked, "max_degree": n_max}
    return ok


def _suite_hopf(space, args, report) -> bool:
    n_max = args.max_degree if args.max_degree is not None else 4
    entry = {}
    entry["associativity"] = bool(check_shuffle_associativity(space, n_max))
    entry["coassociativity"] = bool(check_coshuffle_coassociativity(space, n_max))
    entry["compatibility"] = bool(check_hopf_compatibility(space, n_max))
    entry["antipode"] = bool(check_antipode_axiom(space, n_max))
    involutive = space.braiding.compose(space.braiding) == space.identity_power(2)
    entry["involutive"] = involutive
    if involutive:
        entry["commutativity"] = bool(check_sigma_commutativity(space, n_max))
    report["hopf"] = entry
    return all(v for k, v in entry.items() if k != "involutive")


def _suite_homotopy(space, args, report) -> bool:
    n_max = args.max_degree if args.max_degree is not None else 5
    lc, rc = _default_chars(space, args)
    results = {}
    payload = space.payload
    if isinstance(payload, st.ShelfTable):
        spec = DifferentialSpec(kind="right", right_char=rc)
        c = assemble(space, spec, n_max)
        h = {n: concat_homotopy(space, [1] + [0] * (space.dim - 1), n)
             for n in range(n_max)}
        results["right_complex_concatenation"] = bool(certify_acyclic(c, h))
        if st.check_shelf(payload).rack:
            spec = DifferentialSpec(kind="left", left_char=lc)
            c = assemble(space, spec, n_max)
            h = {n: rack_contraction(space, 0, n) for n in range(n_max)}
            results["left_complex_inverse_translation"] = bool(certify_acyclic(c, h))
    elif isinstance(payload, st.AlgebraData) and space.unit_index is not None:
        w = [1 if j == space.unit_index else 0 for j in range(space.dim)]
        spec = DifferentialSpec(kind="left", left_char=lc)
        c = assemble(space, spec, n_max)
        h = {n: concat_homotopy(space, w, n) for n in range(n_max)}
        results["left_complex_unit_concatenation"] = bool(certify_acyclic(c, h))
    else:
        # flip-like space: use any basis element the character sends to one
        eps = space.characters.get(lc)
        w = None
        if eps is not None:
            for j in range(space.dim):
                if eps.entry(0, j) == space.ring.one:
                    w = [1 if i == j else 0 for i in range(space.dim)]
                    break
        if w is None:
            report["homotopy"] = {"skipped": "no normalized pair available"}
            return True
        for kind, key in (("left", "left_complex_concatenation"),
                          ("right", "right_complex_concatenation")):
            spec = DifferentialSpec(kind=kind, left_char=lc, right_char=rc)
            c = assemble(space, spec, n_max)
            h = {n: concat_homotopy(space, w, n) for n in range(n_max)}
            results[key] = bool(certify_acyclic(c, h))
    report["homotopy"] = results
    return all(results.values())


def _suite_duality(space, args, report) -> bool:
    payload = space.payload
    if not (isinstance(payload, st.AlgebraData) and payload.kind == "associative"):
        raise ExactError("the duality suite needs an associative payload")
    n_max = args.max_degree if args.max_degree is not None else 4
    lc, _ = _default_chars(space, args)
    eps = space.characters[lc]
    co = st.dual_coalgebra(payload)
    cospace = st.coassoc_braiding(co)
    ok = cospace.braiding == space.braiding.transpose()
    transposed_ok = ok
    check_ybe(cospace)
    cospace.add_cocharacter("dual", eps.transpose())
    check_braided_cocharacter(cospace, "dual")
    from .complexes import left_codiff
    degreewise = True
    for n in range(0, n_max):
        up = left_codiff(cospace, "dual", n)
        down = left_diff(space, lc, n + 1)
        degreewise &= up == down.transpose()
    report["duality"] = {"braiding_transposed": transposed_ok,
                         "codifferentials_are_transposes": degreewise,
                         "max_degree": n_max}
    return transposed_ok and degreewise


_SUITES = {
    "simplicial": _suite_simplicial,
    "hyper": _suite_hyper,
    "hopf": _suite_hopf,
    "homotopy": _suite_homotopy,
    "duality": _suite_duality,
}


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def run(command: str, scenario: Scenario, args) -> tuple[int, dict]:
    report: dict = {"command": command, "ring": None}
    try:
        ring = _ring_for(args, scenario)
        report["ring"] = ring.name
        space = sc_mod.build_space(scenario, ring)
        if command == "check":
            ok = _run_check(space, args, report)
        else:
            _verify_space(space, report, args.allow_unverified)
            if command == "complex":
                ok = _run_complex(space, args, report)
            elif command == "homology":
                ok = _run_homology(space, args, report)
            elif command == "verify":
                ok = _SUITES[args.suite](space, args, report)
            else:  # pragma: no cover
                raise ExactError(f"unknown command {command!r}")
    except ResourceCapError as e:
        report["error"] = str(e)
        return EXIT_RESOURCE_CAP, report
    except (SquareZeroError, SpanStabilityError, UnverifiedError) as e:
        report["error"] = str(e)
        report["ok"] = False
        return EXIT_CHECK_FAILED, report
    except (ScenarioError, ExactError, KeyError) as e:
        report["error"] = str(e)
        return EXIT_INPUT_ERROR, report
    report["ok"] = bool(ok)
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), report


def _render_human(report, indent=0):
    pad = "  " * indent
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_human(value, indent + 1))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {value}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        scenario = sc_mod.parse(args.scenario)
    except ScenarioError as e:
        payload = {"command": args.command, "error": "invalid scenario",
                   "details": e.errors}
        if args.json:
            print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        else:
            print("invalid scenario:", file=sys.stderr)
            for msg in e.errors:
                print(f"  {msg}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"cannot read scenario: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    _apply_computation_defaults(args, scenario)
    code, report = run(args.command, scenario, args)
    if args.json:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        print("\n".join(_render_human(report)))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
