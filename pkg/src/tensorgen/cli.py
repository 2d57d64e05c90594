"""Command line front end.

    tensorgen partition  --p 5 --m 2 --n 3
    tensorgen generators --p 3 --m 4 --n 5 --format json
    tensorgen verify     --p 3,5,7 --max-sum 24 --checks theorem,dets
    tensorgen enumerate  --p 2 --max-sum 12 --format csv
    tensorgen valuations --p 3 --m 3 --n 3

The payload goes to stdout, diagnostics to stderr.  Exit status is 0 on
success, 1 for validation errors, internal errors or failed checks, and 2
when ``generators`` is asked for a pair whose Jordan partition is not
standard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable

from .arith import carry_count, is_prime
from .errors import NonStandardError, ValidationError
from .exact_linalg import det_int
from .generators import (
    check_d_recurrence,
    check_valuation_identity,
    d_formula,
    decompose,
    verify_theorem1,
)
from .partitions import (
    classify_standard,
    enumerate_standard,
    is_standard,
    jordan_partition,
    oracle_budget,
    standard_parts,
)
from .tensor_space import ModuleShape, build_A

SCHEMA_VERSION = "1"
CHECKS = ("theorem", "dets", "recurrence", "valuations", "decompose", "classifier-vs-oracle")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NONSTANDARD = 2


def _record(command: str, inputs: dict, result: dict, **extra) -> dict:
    rec = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "result": result}
    rec.update(extra)
    return rec


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"not a prime: {p}")
    return p


def _prime_list(text: str) -> list[int]:
    out = sorted({_prime(part.strip()) for part in text.split(",") if part.strip()})
    if not out:
        raise argparse.ArgumentTypeError("empty prime list")
    return out


def _check_list(text: str) -> list[str]:
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return [c for c in CHECKS if c in names]


def _triples(v, as_text: bool) -> list[list]:
    return [[i, j, str(c) if as_text else c] for i, j, c in v.terms()]


def _pairs(max_sum: int):
    for m in range(2, max_sum // 2 + 1):
        for n in range(m, max_sum - m + 1):
            yield m, n


def _nonstandard_reason(m: int, n: int, p: int) -> str:
    if p == 2:
        return (f"(m, n) = ({m}, {n}) is not standard for p = 2: needs (2, n) with n >= 3 odd "
                f"or (3, 6 + 4r)")
    return (f"(m, n) = ({m}, {n}) is not standard for p = {p}: it lies in no stratum S_t "
            f"(S'_0 translates by r*p, or (T1 minus T2) union T3 translates by r*p^(t+1))")


# -- commands ---------------------------------------------------------------

def cmd_partition(p: int, m: int, n: int) -> tuple[dict, int]:
    shape = ModuleShape(m, n, p)
    part = jordan_partition(m, n, p)
    result = {
        "alpha": shape.alpha,
        "q": shape.q,
        "parts": list(part),
        "standard": is_standard(part, m, n),
        "standard_parts": list(standard_parts(m, n)),
    }
    return _record("partition", {"p": p, "m": m, "n": n}, result), EXIT_OK


def cmd_generators(p: int, m: int, n: int) -> tuple[dict, int]:
    shape = ModuleShape(m, n, p)
    witness = classify_standard(m, n, p)
    if witness is None:
        raise NonStandardError(_nonstandard_reason(m, n, p))
    cert = decompose(shape)
    summands = []
    for g in cert.generators:
        summands.append({
            "k": g.k,
            "summand_dim": g.summand_dim,
            "detA": str(g.detA),
            "detA_mod_p": g.detA % p,
            "B": [str(b) for b in g.B],
            "y": _triples(g.y, as_text=True),
            "y_mod_p": _triples(g.y.reduce(p), as_text=False),
            "theorem_holds": g.theorem_holds,
            "det_unit_mod_p": g.det_unit_mod_p,
        })
    result = {
        "alpha": shape.alpha,
        "q": shape.q,
        "witness": witness.as_row(),
        "summands": summands,
        "orbit_dims": cert.orbit_dims,
        "spanning_rank": cert.spanning_rank,
        "dim": shape.dim,
    }
    rec = _record("generators", {"p": p, "m": m, "n": n}, result, certified=cert.certified)
    return rec, EXIT_OK if cert.certified else EXIT_ERROR


def _valuation_rows(shape: ModuleShape) -> list[dict]:
    m, n, p = shape.m, shape.n, shape.p
    rows = []
    for k in range(m):
        left = carry_count(k, m + n - 2 * k - 1, p)
        right = carry_count(m - k - 1, n - k - 1, p)
        rows.append({"k": k, "left": left, "right": right, "equal": check_valuation_identity(shape, k)})
    return rows


def cmd_verify(primes: list[int], max_sum: int, checks: list[str]) -> tuple[dict, int]:
    budget = oracle_budget()
    counts: dict[str, dict[str, int]] = {}
    violations: list[dict] = []
    nonmember_failures: list[dict] = []
    skipped: dict[str, str] = {}

    def bump(check: str, key: str, by: int = 1):
        counts.setdefault(check, {}).setdefault(key, 0)
        counts[check][key] += by

    integer_checks = [c for c in ("theorem", "dets", "recurrence") if c in checks]
    if integer_checks:
        # p-independent identities over the integers; shape needs some prime
        p0 = primes[0]
        for m, n in _pairs(max_sum):
            shape = ModuleShape(m, n, p0)
            for k in range(1, m + 1):
                if "theorem" in checks:
                    bump("theorem", "Z")
                    if not verify_theorem1(shape, k).theorem_holds:
                        violations.append({"check": "theorem", "m": m, "n": n, "k": k})
                if "dets" in checks:
                    bump("dets", "Z")
                    if d_formula(shape, k) != det_int(build_A(shape, k)):
                        violations.append({"check": "dets", "m": m, "n": n, "k": k})
            if "recurrence" in checks:
                for k in range(m):
                    bump("recurrence", "Z")
                    if not check_d_recurrence(shape, k):
                        violations.append({"check": "recurrence", "m": m, "n": n, "k": k})

    for p in primes:
        key = str(p)
        for m, n in _pairs(max_sum):
            shape = ModuleShape(m, n, p)
            member = classify_standard(m, n, p) is not None
            if "valuations" in checks and p != 2:
                for row in _valuation_rows(shape):
                    if member:
                        bump("valuations", key)
                        if not row["equal"]:
                            violations.append({"check": "valuations", "p": p, "m": m, "n": n, "k": row["k"]})
                    elif not row["equal"]:
                        nonmember_failures.append({"p": p, "m": m, "n": n, "k": row["k"],
                                                   "left": row["left"], "right": row["right"]})
            if m * n > budget:
                continue
            if "classifier-vs-oracle" in checks:
                bump("classifier-vs-oracle", key)
                std = is_standard(jordan_partition(m, n, p, budget=budget), m, n)
                if std != member:
                    violations.append({"check": "classifier-vs-oracle", "p": p, "m": m, "n": n,
                                       "oracle_standard": std, "classified": member})
            if "decompose" in checks and member:
                bump("decompose", key)
                cert = decompose(shape)
                if not cert.certified:
                    violations.append({"check": "decompose", "p": p, "m": m, "n": n,
                                       "spanning_rank": cert.spanning_rank})
    if "valuations" in checks and 2 in primes:
        skipped["valuations"] = "p = 2 is exempt; the valuation identity is stated for odd p"
    result = {"counts": counts, "budget": budget}
    if skipped:
        result["skipped"] = skipped
    if "valuations" in checks:
        result["nonmember_failures"] = nonmember_failures
    inputs = {"p": primes, "max_sum": max_sum, "checks": checks}
    rec = _record("verify", inputs, result, violations=violations)
    return rec, EXIT_OK if not violations else EXIT_ERROR


def cmd_valuations(p: int, m: int, n: int) -> tuple[dict, int]:
    shape = ModuleShape(m, n, p)
    member = classify_standard(m, n, p) is not None
    rows = _valuation_rows(shape)
    violations = []
    nonmember_failures = []
    for row in rows:
        if row["equal"]:
            continue
        item = {"p": p, "m": m, "n": n, "k": row["k"]}
        (violations if member and p != 2 else nonmember_failures).append(item)
    result = {"member": member, "rows": rows, "nonmember_failures": nonmember_failures}
    rec = _record("valuations", {"p": p, "m": m, "n": n}, result, violations=violations)
    return rec, EXIT_OK if not violations else EXIT_ERROR


def cmd_enumerate(p: int, max_sum: int) -> tuple[dict, int]:
    rows = [w.as_row() for w in enumerate_standard(p, max_sum)]
    return _record("enumerate", {"p": p, "max_sum": max_sum}, {"pairs": rows}), EXIT_OK


# -- rendering --------------------------------------------------------------

def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if x is None else x for x in row])
    return buf.getvalue()


def _fmt_triples(triples) -> str:
    return " ".join(f"{i}:{j}:{c}" for i, j, c in triples)


def _tabular(rec: dict) -> tuple[list[str], list[list]]:
    cmd = rec["command"]
    res = rec["result"]
    inp = rec["inputs"]
    if cmd == "partition":
        return (["p", "m", "n", "alpha", "parts", "standard"],
                [[inp["p"], inp["m"], inp["n"], res["alpha"], " ".join(map(str, res["parts"])),
                  str(res["standard"]).lower()]])
    if cmd == "generators":
        return (["k", "summand_dim", "detA", "theorem_holds", "det_unit_mod_p", "B", "y", "y_mod_p"],
                [[s["k"], s["summand_dim"], s["detA"], str(s["theorem_holds"]).lower(),
                  str(s["det_unit_mod_p"]).lower(), " ".join(s["B"]), _fmt_triples(s["y"]),
                  _fmt_triples(s["y_mod_p"])] for s in res["summands"]])
    if cmd == "enumerate":
        cols = ["m", "n", "stratum", "t", "i", "j", "r"]
        return cols, [[row[c] for c in cols] for row in res["pairs"]]
    if cmd == "verify":
        per = {}
        for v in rec["violations"]:
            key = (v["check"], str(v.get("p", "Z")))
            per[key] = per.get(key, 0) + 1
        rows = []
        for check, by_p in res["counts"].items():
            for key, count in by_p.items():
                rows.append([check, key, count, per.get((check, key), 0)])
        return ["check", "p", "instances", "violations"], rows
    if cmd == "valuations":
        return (["k", "left", "right", "equal"],
                [[r["k"], r["left"], r["right"], str(r["equal"]).lower()] for r in res["rows"]])
    raise ValueError(cmd)


def _plain(rec: dict) -> str:
    header, rows = _tabular(rec)
    lines = [f"{rec['command']}: " + ", ".join(f"{k}={v}" for k, v in rec["inputs"].items())]
    cells = [header] + [[str(x) if x is not None else "-" for x in row] for row in rows]
    widths = [max(len(r[c]) for r in cells) for c in range(len(header))]
    for r in cells:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    res = rec["result"]
    if rec["command"] == "generators":
        lines.append(f"spanning_rank={res['spanning_rank']} dim={res['dim']} certified={str(rec['certified']).lower()}")
    if "nonmember_failures" in res:
        lines.append(f"nonmember_failures={len(res['nonmember_failures'])}")
    if "violations" in rec:
        lines.append(f"violations={len(rec['violations'])}")
    return "\n".join(lines) + "\n"


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, indent=2) + "\n"
    if fmt == "csv":
        return _csv(*_tabular(rec))
    return _plain(rec)


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensorgen",
                                     description="Generators and certificates for V_m (x) V_n over cyclic p-groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    def pair(sp):
        sp.add_argument("--p", type=_prime, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        common(sp)

    pair(sub.add_parser("partition", help="Jordan partition from GF(p) rank profiles"))
    pair(sub.add_parser("generators", help="generators y_k and the decomposition certificate"))
    pair(sub.add_parser("valuations", help="valuation identity for one pair, k = 0..m-1"))

    sp = sub.add_parser("verify", help="sweep identities over all pairs with m + n <= max-sum")
    sp.add_argument("--p", type=_prime_list, required=True, help="comma-separated primes")
    sp.add_argument("--max-sum", type=int, required=True)
    sp.add_argument("--checks", type=_check_list, default=list(CHECKS), help=",".join(CHECKS))
    common(sp)

    sp = sub.add_parser("enumerate", help="table of standard pairs with their strata")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--max-sum", type=int, required=True)
    common(sp)
    return parser


def _dispatch(args) -> tuple[dict, int]:
    handlers: dict[str, Callable[[], tuple[dict, int]]] = {
        "partition": lambda: cmd_partition(args.p, args.m, args.n),
        "generators": lambda: cmd_generators(args.p, args.m, args.n),
        "valuations": lambda: cmd_valuations(args.p, args.m, args.n),
        "verify": lambda: cmd_verify(args.p, args.max_sum, args.checks),
        "enumerate": lambda: cmd_enumerate(args.p, args.max_sum),
    }
    return handlers[args.command]()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for non-standard refusals
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        rec, code = _dispatch(args)
    except NonStandardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONSTANDARD
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(render(rec, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
