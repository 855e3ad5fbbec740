"""Command line front end.

Commands read JSON description files, run one operation, and print a result
envelope to standard output; diagnostics go to standard error.  Exit code 0
means the operation ran, 1 means invalid input, 2 means a verification
suite found a violation (the envelope then carries a certificate).
"""

import argparse
import json
import os
import random
import sys

from .cech import equalizer_check, gmlog_complex, splitting_check
from .errors import InputError, LogMonoidError, NotKummerError
from .files import (
    envelope,
    hom_from_dict,
    hom_to_dict,
    monoid_from_dict,
    monoid_to_dict,
    canonical_digest,
    read_json,
    structure_to_dict,
)
from .fscat import (
    kummer_base_change,
    kummer_root,
    pushout_fs,
    pushout_int,
    root_by_section,
    self_product_check,
)
from .invariants import (
    GroupSchemeDescriptor,
    bundle_class,
    h1_kummer,
    is_classical,
    pi1_log,
    r1_eps_fiber,
)
from .monoid import free_monoid, hilbert_basis
from .morphism import gp_cokernel, is_kummer
from .samples import random_change_map, random_kummer_instance


def _parse_vector(text: str, rank: int, where: str) -> tuple:
    try:
        vec = tuple(int(p.strip()) for p in text.split(",")) if text.strip() else ()
    except ValueError:
        raise InputError(f"{where}: not a comma-separated integer vector") from None
    if len(vec) != rank:
        raise InputError(f"{where}: length {len(vec)}, expected {rank}")
    return vec


def _parse_rows(text: str, rank: int, where: str) -> tuple:
    rows = [r for r in (part.strip() for part in text.split(";")) if r]
    return tuple(_parse_vector(r, rank, f"{where} row {i}") for i, r in enumerate(rows))


def _default_degree() -> int:
    raw = os.environ.get("LOGMONOID_MAX_DEGREE", "6")
    try:
        return int(raw)
    except ValueError:
        raise InputError("LOGMONOID_MAX_DEGREE must be an integer") from None


def _matrix_rows(matrix) -> list:
    return [list(r) for r in matrix.entries]


def _load_monoid_arg(path: str):
    raw = read_json(path)
    return raw, monoid_from_dict(raw, where=path)


def _load_hom_arg(path: str):
    raw = read_json(path)
    return raw, hom_from_dict(raw, os.path.dirname(path) or ".", where=path)


def _kummer_payload(check) -> dict:
    return {
        "is_kummer": check.is_kummer,
        "reason": check.reason,
        "entries": [
            {
                "generator": list(e.generator),
                "multiple": e.multiple,
                "base": list(e.base),
                "ok": e.ok,
            }
            for e in check.entries
        ],
    }


def _report_payload(report) -> dict:
    out = {
        "ok": report.ok,
        "checked": report.checked,
        "checks": [[label, flag] for label, flag in report.checks],
    }
    if report.h0_dimension is not None:
        out["h0"] = report.h0_dimension
        out["h1"] = report.h1_dimension
    return out


def cmd_saturate(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    sat = monoid.saturation()
    payload = {
        "generators": sorted(list(g.coords) for g in sat.generators),
        "gp_structure": structure_to_dict(monoid.gp().structure()),
    }
    return [raw], payload, None, "ok", 0


def cmd_gp(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    gp = monoid.gp()
    payload = {
        "structure": structure_to_dict(gp.structure()),
        "presentation": {
            "rank": gp.group.rank,
            "relations": _matrix_rows(gp.group.relations),
        },
    }
    return [raw], payload, None, "ok", 0


def cmd_contains(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    vec = _parse_vector(args.element, monoid.ambient.rank, "--element")
    payload = {"element": list(vec), "contains": monoid.contains(vec)}
    return [raw, {"element": list(vec)}], payload, None, "ok", 0


def cmd_hilbert(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    gens = [g.coords for g in monoid.generators]
    rows = None
    params = {}
    if args.sublattice is not None:
        rows = _parse_rows(args.sublattice, monoid.ambient.rank, "--sublattice")
        params["sublattice"] = [list(r) for r in rows]
    basis = hilbert_basis(gens, rows)
    payload = {"basis": sorted(list(b) for b in basis)}
    return [raw, params], payload, None, "ok", 0


def cmd_kummer(args):
    raw, hom = _load_hom_arg(args.hom)
    return [raw], _kummer_payload(is_kummer(hom)), None, "ok", 0


def cmd_pushout(args):
    raw1, left = _load_hom_arg(args.left)
    raw2, right = _load_hom_arg(args.right)
    if args.fine_only:
        fine = pushout_int(left, right)
        payload = {
            "fine": monoid_to_dict(fine),
            "gp_structure": structure_to_dict(fine.gp().structure()),
        }
    else:
        po = pushout_fs(left, right)
        payload = {
            "result": monoid_to_dict(po.result),
            "gp_structure": structure_to_dict(po.result.gp().structure()),
            "legs": {
                "left": _matrix_rows(po.leg1.matrix),
                "right": _matrix_rows(po.leg2.matrix),
            },
            "fine": monoid_to_dict(po.fine_result),
        }
    return [raw1, raw2, {"fine_only": bool(args.fine_only)}], payload, None, "ok", 0


def cmd_root(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    root, hom = kummer_root(monoid, args.index)
    payload = {
        "root": monoid_to_dict(root),
        "ambient_map": _matrix_rows(hom.matrix),
        "cokernel": structure_to_dict(gp_cokernel(hom).group.structure()),
    }
    return [raw, {"index": args.index}], payload, None, "ok", 0


def cmd_root_section(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    vec = _parse_vector(args.element, monoid.ambient.rank, "--element")
    section = root_by_section(monoid, vec, args.index)
    payload = {
        "result": monoid_to_dict(section.result),
        "root": list(section.root.coords),
        "index": section.index,
        "ambient_map": _matrix_rows(section.hom.matrix),
        "source_presentation": monoid_to_dict(section.source_copy.monoid),
    }
    return [raw, {"element": list(vec), "index": args.index}], payload, None, "ok", 0


def cmd_invariants(args):
    raw, monoid = _load_monoid_arg(args.monoid)
    what = args.what
    p = args.residue_char
    params = {"what": what, "residue_char": p}
    if what == "pi1":
        d = pi1_log(monoid, p)
        payload = {
            "what": what,
            "free_rank": d.free_rank,
            "finite_factors": list(d.finite_factors),
            "excluded_prime": d.excluded_prime,
            "display": str(d),
        }
    elif what.startswith("h1:mu:"):
        try:
            m = int(what.split(":", 2)[2])
        except ValueError:
            raise InputError(f"--what {what}: the order must be an integer") from None
        st = h1_kummer(monoid, m)
        payload = {"what": what, "modulus": m, "structure": structure_to_dict(st)}
    elif what == "h1:gm":
        res = r1_eps_fiber(monoid, GroupSchemeDescriptor.torus())
        payload = {
            "what": what,
            "finite": structure_to_dict(res.finite),
            "divisible_rank": res.divisible_rank,
            "display": str(res),
        }
    elif what == "bundle":
        comps = []
        for i, spec_text in enumerate(args.component or []):
            if ":" not in spec_text:
                raise InputError(f"--component {spec_text!r}: expected 'v1,..,vk:m'")
            vec_text, m_text = spec_text.rsplit(":", 1)
            vec = _parse_vector(vec_text, monoid.ambient.rank, f"--component {i}")
            try:
                m = int(m_text)
            except ValueError:
                raise InputError(f"--component {i}: denominator must be an integer") from None
            comps.append((vec, m))
        cls = bundle_class(monoid, comps)
        payload = {
            "what": what,
            "rank": cls.rank,
            "components": [[f for f in c.fractions] for c in cls.components],
            "classical": is_classical(cls),
            "display": str(cls),
        }
        params["components"] = [[list(v), m] for v, m in comps]
    else:
        raise InputError(f"unknown invariant: {what}")
    return [raw, params], payload, None, "ok", 0


def _verify_instances(args, rng):
    """The homs a hom-based suite runs over, with their descriptions."""
    if args.hom is not None:
        raw, hom = _load_hom_arg(args.hom)
        return [raw], [hom]
    homs = [random_kummer_instance(rng) for _ in range(args.count)]
    return [], homs


def cmd_verify(args):
    degree = args.max_degree if args.max_degree is not None else _default_degree()
    if degree < 0:
        raise InputError("--max-degree must be nonnegative")
    if args.count < 1:
        raise InputError("--count must be at least 1")
    rng = random.Random(args.seed)
    params = {
        "suite": args.suite,
        "seed": args.seed,
        "count": args.count,
        "max_degree": degree,
        "coeff_modulus": args.coeff_modulus,
        "nprime": args.nprime,
        "corrupt_iota": bool(args.corrupt_iota),
    }
    raws = [params]
    failures = []
    summaries = []
    checked = 0

    if args.suite in ("descent", "equalizer", "selfprod", "basechange"):
        file_raws, homs = _verify_instances(args, rng)
        raws.extend(file_raws)
        for i, hom in enumerate(homs):
            decision = is_kummer(hom)
            if not decision:
                failures.append(
                    {
                        "instance": i,
                        "hom": hom_to_dict(hom),
                        "kummer": _kummer_payload(decision),
                    }
                )
                summaries.append({"instance": i, "ok": False})
                continue
            if args.suite == "descent":
                report = splitting_check(
                    hom, args.coeff_modulus, degree, corrupt_iota=args.corrupt_iota
                )
            elif args.suite == "equalizer":
                report = equalizer_check(hom, degree)
            elif args.suite == "selfprod":
                report = self_product_check(hom)
                report = _selfprod_as_report(report)
            else:
                change = random_change_map(rng, hom.source)
                base_report = kummer_base_change(hom, change)
                report = _basechange_as_report(base_report)
            checked += report.checked
            summaries.append(
                {"instance": i, "ok": report.ok, "checked": report.checked}
            )
            if not report.ok:
                failures.append(
                    {
                        "instance": i,
                        "hom": hom_to_dict(hom),
                        "counterexample": report.counterexample,
                    }
                )
    elif args.suite == "gmlog":
        if args.monoid is not None:
            raw, monoid = _load_monoid_arg(args.monoid)
            raws.append(raw)
            cases = [(monoid, args.nprime)]
        else:
            cases = [
                (free_monoid(r), np) for r in (1, 2, 3) for np in (1, 2, 3, 4)
            ]
        for i, (monoid, np) in enumerate(cases):
            report = gmlog_complex(monoid, np, np)
            checked += report.checked
            summaries.append(
                {
                    "instance": i,
                    "ok": report.ok,
                    "h0": report.h0_dimension,
                    "h1": report.h1_dimension,
                }
            )
            if not report.ok:
                failures.append(
                    {"instance": i, "monoid": monoid_to_dict(monoid), "report": _report_payload(report)}
                )
    else:
        raise InputError(f"unknown suite: {args.suite}")

    payload = {
        "suite": args.suite,
        "instances": len(summaries),
        "all_ok": not failures,
        "checked": checked,
        "reports": summaries,
    }
    if failures:
        return raws, payload, {"failures": failures}, "violated", 2
    return raws, payload, None, "ok", 0


class _WrappedReport:
    __slots__ = ("ok", "checked", "counterexample")

    def __init__(self, ok, checked, counterexample):
        self.ok = ok
        self.checked = checked
        self.counterexample = counterexample


def _selfprod_as_report(report) -> _WrappedReport:
    counterexample = None
    if not report.ok:
        counterexample = {
            "gp_bijective": report.gp_bijective,
            "forward_failures": [list(f) for f in report.forward_failures],
            "backward_failures": [list(f) for f in report.backward_failures],
        }
    return _WrappedReport(report.ok, 1, counterexample)


def _basechange_as_report(report) -> _WrappedReport:
    counterexample = None
    if not report.ok:
        counterexample = {
            "torsion_failures": [list(t) for t in report.torsion_failures],
            "injective_mod_torsion": report.injective_mod_torsion,
            "witnesses": [
                [list(a), n] if n is not None else [list(a), None]
                for a, n in report.witnesses
            ],
        }
    return _WrappedReport(report.ok, 1, counterexample)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logmonoid",
        description="Exact computations on finitely generated monoids",
    )
    parser.add_argument("-o", "--output", help="write the result envelope to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("saturate", help="saturation and hull structure")
    p.add_argument("monoid")
    p.set_defaults(handler=cmd_saturate)

    p = sub.add_parser("gp", help="group hull presentation and structure")
    p.add_argument("monoid")
    p.set_defaults(handler=cmd_gp)

    p = sub.add_parser("contains", help="membership of an ambient element")
    p.add_argument("monoid")
    p.add_argument("--element", required=True, help="comma-separated coordinates")
    p.set_defaults(handler=cmd_contains)

    p = sub.add_parser("hilbert", help="Hilbert basis of the generated cone")
    p.add_argument("monoid")
    p.add_argument("--sublattice", help="lattice rows, ';'-separated")
    p.set_defaults(handler=cmd_hilbert)

    p = sub.add_parser("kummer", help="decide Kummer type with a certificate")
    p.add_argument("hom")
    p.set_defaults(handler=cmd_kummer)

    p = sub.add_parser("pushout", help="pushout of two homs out of one source")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--fine-only", action="store_true")
    p.set_defaults(handler=cmd_pushout)

    p = sub.add_parser("root", help="root cover of a saturated monoid")
    p.add_argument("monoid")
    p.add_argument("-n", "--index", type=int, required=True)
    p.set_defaults(handler=cmd_root)

    p = sub.add_parser("root-section", help="adjoin a root of one element")
    p.add_argument("monoid")
    p.add_argument("--element", required=True)
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(handler=cmd_root_section)

    p = sub.add_parser("invariants", help="closed-form invariants of a chart")
    p.add_argument("monoid")
    p.add_argument("--residue-char", type=int, default=0)
    p.add_argument("--what", required=True, help="pi1 | h1:mu:m | h1:gm | bundle")
    p.add_argument("--component", action="append", help="bundle component 'v1,..,vk:m'")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=("descent", "equalizer", "gmlog", "selfprod", "basechange"),
    )
    p.add_argument("--monoid", help="monoid file (gmlog)")
    p.add_argument("--hom", help="hom file replacing generated instances")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--coeff-modulus", type=int, default=0)
    p.add_argument("--nprime", type=int, default=2)
    p.add_argument("--corrupt-iota", action="store_true")
    p.set_defaults(handler=cmd_verify)

    return parser


def _emit(result: dict, output) -> None:
    text = json.dumps(result, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        raws, payload, certificate, status, code = args.handler(args)
    except NotKummerError as exc:
        # a hom-based suite fed a non-Kummer map: that is the violation itself
        print(f"error: {exc}", file=sys.stderr)
        _emit(
            envelope(args.command, "", "violated", {}, {"error": str(exc)}),
            args.output,
        )
        return 2
    except (InputError, LogMonoidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(
            envelope(args.command, "", "error", {"error": str(exc)}), args.output
        )
        return 1
    digest = canonical_digest(*raws)
    _emit(envelope(args.command, digest, status, payload, certificate), args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
