"""Command-line entry points.

Exit codes: 0 success, 1 domain or input error, 2 usage error; ``verify``
additionally returns 3 for a refuted relation and 4 when opaque blocks leave the
question open.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import serialize as ser
from .dsl import parse_word
from .errors import SteinfillError
from .families import build_factorization
from .lefschetz import excised_euler_identity, excised_euler_oracle, family_invariants
from .plumbing import build_generalized, build_Y, first_homology
from .spinal import spinal_tap, tap_inverse
from .surface import standard_model
from .words import Indeterminate, Refuted, Verified, certify_relation

EXIT_REFUTED = 3
EXIT_INDETERMINATE = 4


def _family_doc(g: int, h: int, n: int, m: int) -> dict:
    report = family_invariants(g, h, n, m)
    fact = build_factorization(g, h, n, m)
    excised = excised_euler_identity(report.euler, g, h)
    assert excised == excised_euler_oracle(report.euler, g, h)
    return {
        "schema": "steinfill/family/1",
        "parameters": {"g": g, "h": h, "n": n, "m": m},
        "invariants": ser.report_to_json(report),
        "factorization": ser.factorization_to_json(fact),
        "excised_euler": ser.enc_int(excised),
    }


def _table_rows(g: int, h: int, n: int, m_min: int, m_max: int) -> list[dict]:
    rows = []
    for m in range(m_min, m_max + 1):
        r = family_invariants(g, h, n, m)
        rows.append({"m": m, "M": r.M, "e": r.euler, "signature": r.signature,
                     "c1_squared": r.c1_squared,
                     "excised_euler": excised_euler_identity(r.euler, g, h)})
    for a, b in zip(rows, rows[1:]):
        if not (b["M"] > a["M"] and b["e"] > a["e"]):
            raise AssertionError(f"M(m) not increasing at m={b['m']}")
        if a["signature"] is not None and not b["signature"] < a["signature"]:
            raise AssertionError(f"signature not decreasing at m={b['m']}")
    return rows


def _fmt(x: object) -> str:
    return "-" if x is None else str(x)


def cmd_family(args: argparse.Namespace) -> int:
    doc = _family_doc(args.g, args.h, args.n, args.m)
    if args.json:
        sys.stdout.write(ser.dumps(doc))
        return 0
    inv, fact = doc["invariants"], doc["factorization"]
    lines = [
        f"X_{{{args.g},{args.h},{args.n}}}({args.m})",
        f"M={inv['M']}",
        f"e={inv['euler']}",
        f"signature={_fmt(inv['signature'])}",
        f"c1^2={_fmt(inv['c1_squared'])}",
        f"c2={_fmt(inv['c2'])}",
        f"excised_e={doc['excised_euler']}",
        f"boundary_twist_power={fact['boundary_twist_power']}",
        f"commutators={len(fact['commutator_blocks'])}",
        f"word={fact['word']}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    rows = _table_rows(args.g, args.h, args.n, args.m_min, args.m_max)
    if args.json:
        sys.stdout.write(ser.dumps({
            "schema": "steinfill/family-table/1",
            "parameters": {"g": args.g, "h": args.h, "n": args.n},
            "rows": [{k: ser.enc_int(v) for k, v in r.items()} for r in rows],
        }))
        return 0
    header = ("m", "M", "e", "sigma", "c1^2", "e_excised")
    keys = ("m", "M", "e", "signature", "c1_squared", "excised_euler")
    cells = [header] + [tuple(_fmt(r[k]) for k in keys) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    for c in cells:
        sys.stdout.write("  ".join(s.rjust(w) for s, w in zip(c, widths)) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    lhs = parse_word(Path(args.lhs).read_text())
    rhs = parse_word(Path(args.rhs).read_text())
    verdict = certify_relation(lhs, rhs, standard_model(args.genus))
    if args.json:
        sys.stdout.write(ser.dumps(ser.verdict_to_json(verdict)))
    elif isinstance(verdict, Verified):
        sys.stdout.write("verified\n")
    elif isinstance(verdict, Refuted):
        sys.stdout.write(f"refuted: witness {list(verdict.witness)} maps to "
                         f"{list(verdict.lhs_image)} vs {list(verdict.rhs_image)}\n")
    else:
        sys.stdout.write("indeterminate: opaque " + ", ".join(verdict.labels) + "\n")
    if isinstance(verdict, Refuted):
        return EXIT_REFUTED
    if isinstance(verdict, Indeterminate):
        return EXIT_INDETERMINATE
    return 0


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SteinfillError(f"{path}: invalid JSON ({exc})") from None


def cmd_tap(args: argparse.Namespace) -> int:
    book = ser.book_from_json(_load_json(args.book))
    spec = ser.tapspec_from_json(_load_json(args.spec))
    inverse = tap_inverse(book, spec)
    new_book, account = spinal_tap(book, spec)
    sys.stdout.write(ser.dumps({
        "schema": "steinfill/tap-result/1",
        "book": ser.book_to_json(new_book),
        "account": ser.account_to_json(account),
        "fold": ser.foldspec_to_json(inverse),
    }))
    return 0


def cmd_plumbing(args: argparse.Namespace) -> int:
    if args.k is None and args.l is None and args.framings is None:
        graph = build_Y(args.g, args.h, args.n)
    else:
        k = 1 if args.k is None else args.k
        l = 1 if args.l is None else args.l
        framings = args.framings if args.framings is not None else [args.n] * l
        graph = build_generalized(k, l, args.g, args.h, framings)
    result = first_homology(graph)
    sys.stdout.write(ser.dumps({
        "schema": "steinfill/plumbing-result/1",
        "graph": ser.plumbing_graph_to_json(graph),
        "homology": ser.homology_to_json(result),
        "homology_text": str(result),
    }))
    return 0


def _framings(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"framings must be comma-separated integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steinfill", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def ghnm(sp: argparse.ArgumentParser, with_m: bool) -> None:
        sp.add_argument("--g", type=int, required=True, help="fiber genus (>= 2)")
        sp.add_argument("--h", type=int, required=True, help="base genus (>= 1)")
        sp.add_argument("--n", type=int, required=True, help="section self-intersection")
        if with_m:
            sp.add_argument("--m", type=int, required=True, help="family index (>= 0)")

    sp = sub.add_parser("family", help="invariants and factorization of X_{g,h,n}(m)")
    ghnm(sp, True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("table", help="invariants for a range of m")
    ghnm(sp, False)
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("--m-min", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="certify lhs = rhs in the symplectic representation")
    sp.add_argument("--lhs", required=True, help="file holding a twist word")
    sp.add_argument("--rhs", required=True, help="file holding a twist word")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tap", help="apply a spinal tap to a book")
    sp.add_argument("--book", required=True, help="spinal open book JSON")
    sp.add_argument("--spec", required=True, help="tap spec JSON")
    sp.set_defaults(func=cmd_tap)

    sp = sub.add_parser("plumbing", help="plumbing graph Y_{g,h,n} and its first homology")
    ghnm(sp, False)
    sp.add_argument("--k", type=int, help="number of genus-g vertices")
    sp.add_argument("--l", type=int, help="number of genus-h vertices")
    sp.add_argument("--framings", type=_framings, help="comma-separated euler numbers of the genus-h vertices")
    sp.set_defaults(func=cmd_plumbing)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "m_max", None) is not None and args.m_max < args.m_min:
        build_parser().error("--m-max must be at least --m-min")
    try:
        return args.func(args)
    except (SteinfillError, OSError) as exc:
        sys.stderr.write(f"steinfill: error: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
