"""Command-line interface: ``ver4 {lie,dist,tangent,verify,info} GROUP [m n]``.

Exit codes: 0 for PASS, 1 for FAIL, 2 for ERROR.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable

from .dist_lie import (DistAlgebra, RestrictedLie, lie_of_group, verify_dist_identities,
                       verify_lie_axioms, verify_restricted_axioms, verify_universality)
from .f2 import BitMatrix, bits
from .hopf import HopfData, build, omega_filtration_check, verify_filtrations, verify_hopf
from .objects import Ver4Object
from .report import Report
from .tangent import enumerate_tangent_oracle, tangent_object, ORACLE_LIMIT

MAX_SIZE = 400
MAX_TRUNC = 8
SUITES = ("hopf", "filtration", "dist", "lie", "restricted", "universality", "omega", "all")
EXIT = {"PASS": 0, "FAIL": 1, "ERROR": 2}
# payload lists that are not F2 combinations
PLAIN_LISTS = {"basis", "generators", "lie_basis", "layer_dims"}


class UsageError(ValueError):
    pass


def _threads() -> int:
    raw = os.environ.get("VER4_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"VER4_THREADS must be a positive integer, got {raw!r}") from None
    if k < 1:
        raise UsageError("VER4_THREADS must be a positive integer")
    return k


def _group(args: argparse.Namespace) -> HopfData:
    g, m, n, N = args.group, args.m, args.n, args.trunc
    if m < 0 or n < 0:
        raise UsageError("m and n must be non-negative")
    if g == "gl":
        if m + n == 0:
            raise UsageError("GL needs m + n >= 1")
        if (m + n) ** 2 + n ** 2 > MAX_SIZE:
            raise UsageError(f"resource bound: (m+n)^2 + n^2 = {(m + n) ** 2 + n ** 2} > {MAX_SIZE}")
    if N > MAX_TRUNC:
        raise UsageError(f"resource bound: trunc {N} > {MAX_TRUNC}")
    if N < 1:
        raise UsageError("trunc must be at least 1")
    return build(g, m, n, N, args.antipode)


def _labels(names, v: int) -> list[str]:
    return [names[i] for i in bits(v)]


def _d_entry(names, v: int):
    lst = _labels(names, v)
    if not lst:
        return None
    return lst[0] if len(lst) == 1 else lst


def lie_payload(L: RestrictedLie) -> dict[str, Any]:
    lab = L.labels
    closed = {x: v for x, v in L.square.items()}
    square: dict[str, Any] = {}
    for i in range(L.dim):
        if L.d(1 << i):
            square[lab[i]] = "undefined"
    for x, v in closed.items():
        square[L.format(x)] = _labels(lab, v)
    return {
        "basis": list(lab),
        "decomposition": {"k": L.obj.mK, "P": L.obj.nP},
        "d": {lab[i]: _d_entry(lab, L.d(1 << i)) for i in range(L.dim)},
        "bracket": {f"[{lab[i]},{lab[j]}]": _labels(lab, L.br(1 << i, 1 << j))
                    for i in range(L.dim) for j in range(L.dim)},
        "square": square,
    }


def lie_from_payload(data: dict[str, Any]) -> RestrictedLie:
    """Rebuild a restricted Lie algebra from the JSON table."""
    lab = data["basis"]
    idx = {l: k for k, l in enumerate(lab)}

    def vec(entry) -> int:
        if entry is None:
            return 0
        if isinstance(entry, str):
            entry = [entry]
        v = 0
        for l in entry:
            v ^= 1 << idx[l]
        return v

    cols = [vec(data["d"][l]) for l in lab]
    obj = Ver4Object(tuple(lab), BitMatrix.from_columns(cols, len(lab)))
    bracket = {}
    for i, a in enumerate(lab):
        for j, b in enumerate(lab):
            bracket[(i, j)] = vec(data["bracket"].get(f"[{a},{b}]"))
    square = {}
    for key, val in data["square"].items():
        if val == "undefined":
            continue
        square[vec(key.split("+"))] = vec(val)
    return RestrictedLie(obj, bracket, square)


def cmd_lie(args, H: HopfData) -> tuple[str, dict, list]:
    if H.N < 3:
        raise UsageError("lie needs --trunc >= 3")
    L = lie_of_group(H)
    return "PASS", lie_payload(L), []


def cmd_info(args, H: HopfData) -> tuple[str, dict, list]:
    O = H.algebra
    payload: dict[str, Any] = {
        "name": H.name,
        "generators": [O.labels[i] for i in O.cotangent_basis()],
        "tangent_dim": len(O.cotangent_basis()),
        "algebra_dim": O.dim,
        "truncation": H.N,
    }
    if H.N >= 2:
        T = tangent_object(H)
        payload["lie_basis"] = list(T.labels)
        payload["lie_decomposition"] = {"k": T.mK, "P": T.nP}
    return "PASS", payload, []


def cmd_tangent(args, H: HopfData) -> tuple[str, dict, list]:
    if H.N < 2:
        raise UsageError("tangent needs --trunc >= 2")
    T = tangent_object(H)
    payload: dict[str, Any] = {
        "basis": list(T.labels),
        "d": {T.labels[i]: _d_entry(T.labels, T.diff(1 << i)) for i in range(T.dim)},
        "decomposition": {"k": T.mK, "P": T.nP},
    }
    status = "PASS"
    if T.dim <= ORACLE_LIMIT:
        count, _ = enumerate_tangent_oracle(H)
        payload["oracle_homs"] = count
        payload["expected_homs"] = 2 ** T.dim
        if count != 2 ** T.dim:
            status = "FAIL"
    else:
        payload["oracle_homs"] = "skipped: oracle too large"
    return status, payload, []


def cmd_dist(args, H: HopfData) -> tuple[str, dict, list]:
    k = H.N - 1 if args.max_order is None else args.max_order
    D = DistAlgebra(H, k)
    O = H.algebra
    names = [f"<{O.labels[i]}>" for i in range(O.dim)]
    comm = {}
    for r in D.basis:
        for s in D.basis:
            if O.degrees[r] + O.degrees[s] <= k and O.degrees[r] and O.degrees[s]:
                v = D.beta_basis(r, s)
                if v:
                    comm[f"[{names[r]},{names[s]}]"] = _labels(names, v)
    rep = verify_dist_identities(D)
    payload = {
        "max_order": k,
        "layer_dims": [len(D.layer_basis(i)) for i in range(k + 1)],
        "basis": [names[i] for i in D.basis],
        "commutator": comm,
        "identities": rep.as_dict(),
    }
    return rep.status, payload, rep.counterexamples


def run_suite(suite: str, H: HopfData, max_order: int | None = None) -> Report:
    if suite == "hopf":
        return verify_hopf(H)
    if suite == "filtration":
        return verify_filtrations(H, arities=())
    if suite == "omega":
        rep = Report("omega")
        for n in (2, 3):
            for j in range(1, H.N - n + 2):
                rep.absorb(omega_filtration_check(H, n, j))
        return rep
    if suite == "dist":
        k = H.N - 1 if max_order is None else max_order
        return verify_dist_identities(DistAlgebra(H, k))
    if suite in ("lie", "restricted"):
        if H.N < 3:
            raise UsageError(f"{suite} needs --trunc >= 3")
        L = lie_of_group(H)
        return verify_lie_axioms(L) if suite == "lie" else verify_restricted_axioms(L)
    if suite == "universality":
        if H.N < 3:
            raise UsageError("universality needs --trunc >= 3")
        return verify_universality(H)
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args, H: HopfData) -> tuple[str, dict, list]:
    suites = SUITES[:-1] if args.suite == "all" else (args.suite,)
    total = Report(args.suite)
    parts = {}
    for s in suites:
        if s in ("lie", "restricted", "universality") and H.N < 3 and args.suite == "all":
            parts[s] = "skipped: needs trunc >= 3"
            continue
        rep = run_suite(s, H, args.max_order)
        parts[s] = {"status": rep.status, "checked": rep.checked, "failures": rep.failures}
        total.absorb(rep)
    return total.status, {"suites": parts, "checked": total.checked}, total.counterexamples


COMMANDS: dict[str, Callable] = {
    "lie": cmd_lie, "dist": cmd_dist, "tangent": cmd_tangent, "verify": cmd_verify, "info": cmd_info,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ver4", description="Group schemes and Lie algebras in Ver4+.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("group", choices=("ga", "gm", "gl"))
        sp.add_argument("m", nargs="?", type=int, default=0)
        sp.add_argument("n", nargs="?", type=int, default=1)
        sp.add_argument("--trunc", type=int, default=4)
        sp.add_argument("--antipode", choices=("closed", "series"), default="closed",
                        help="GL antipode: Adj.u.X.Adj.u or the exact series inverse")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
        sp.set_defaults(fmt="text", max_order=None)

    for name in ("lie", "tangent", "info"):
        common(sub.add_parser(name))
    d = sub.add_parser("dist")
    common(d)
    d.add_argument("--max-order", type=int, default=None)
    v = sub.add_parser("verify")
    v.add_argument("suite", choices=SUITES)
    common(v)
    v.add_argument("--max-order", type=int, default=None)
    return p


def _text(report: dict[str, Any]) -> str:
    lines = [f"{report['command']}: {report['status']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")

    def emit(key: str, val: Any, indent: str = "") -> None:
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            for k, v in val.items():
                emit(k, v, indent + "  ")
        else:
            if isinstance(val, list):
                sep = ", " if key in PLAIN_LISTS else " + "
                val = sep.join(map(str, val)) if val else "0"
            elif val is None:
                val = "0"
            lines.append(f"{indent}{key}: {val}")

    for k, v in report.get("payload", {}).items():
        emit(k, v)
    for c in report.get("counterexamples", []):
        lines.append("counterexample: " + ", ".join(f"{k}={v}" for k, v in c.items()))
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = parser().parse_args(argv)
    report: dict[str, Any] = {
        "command": " ".join(["ver4", *argv]),
        "parameters": {"group": args.group, "m": args.m, "n": args.n, "trunc": args.trunc},
    }
    try:
        report["parameters"]["threads"] = _threads()
        H = _group(args)
        status, payload, counterexamples = COMMANDS[args.command](args, H)
        report.update(status=status, payload=payload, counterexamples=counterexamples)
    except (ValueError, AssertionError) as exc:
        report.update(status="ERROR", error=str(exc), payload={}, counterexamples=[])
    out = json.dumps(report, indent=2) if args.fmt == "json" else _text(report)
    sys.stdout.write(out + "\n")
    return EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
