"""Command-line front end: ``qhsd classify | inspect | equiv | known | extend22``.

Exit codes: 0 success, 1 argument/I-O/parse errors, 2 mass check failed,
3 codes inequivalent or not comparable.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import classify as cl
from .code import (Code, ParseError, coset_weight_distribution, dual, format_code, is_self_dual,
                   min_weight, parse_code, parse_codes, weight_enumerator)
from .equiv import aut_order, equivalence_witness, weak_equivalence_witness

log = logging.getLogger("qhsd")

EXIT_OK, EXIT_ERROR, EXIT_MASS, EXIT_INEQUIVALENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    length: int | None = None
    max_length: int | None = None
    out: Path | None = None
    data_dir: Path = field(default_factory=lambda: default_data_dir())
    jobs: int = 1
    verbosity: int = 0

    def __post_init__(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        for v in (self.length, self.max_length):
            if v is not None and (v < 2 or v % 2):
                raise UsageError(f"length must be even and >= 2, got {v}")
        if self.length and self.max_length and self.max_length < self.length:
            raise UsageError("--max-length is smaller than --length")


def default_data_dir() -> Path:
    return Path(os.environ.get("QHSD_DATA_DIR", "qhsd-data"))


def database_path(data_dir: Path, n: int) -> Path:
    return data_dir / f"length-{n}.db"


# ---------------------------------------------------------------------------
# formatting


def format_enumerator(we) -> str:
    terms = []
    for j, a in enumerate(we):
        if a:
            terms.append(str(a) if j == 0 else f"{'' if a == 1 else a}y^{j}")
    return " + ".join(terms)


def format_summary(res: cl.ClassificationResult) -> str:
    lines = [f"n={res.n} total {len(res.classes)}"]
    for (indec, d), cnt in res.summary().items():
        lines.append(f"  {'indecomposable' if indec else 'decomposable'} d={d}: {cnt}")
    lines.append(f"  mass check: {'PASS' if res.certified else 'FAIL'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def load_result(path: Path) -> cl.ClassificationResult | None:
    if not path.exists():
        return None
    return cl.parse_database(path.read_text())


def ensure_length(n: int, cfg: RunConfig, say) -> cl.ClassificationResult:
    """Certified classification of length n, from disk or built from n - 2."""
    path = database_path(cfg.data_dir, n)
    res = load_result(path)
    if res is not None and res.certified and res.n == n:
        return res
    prev = ensure_length(n - 2, cfg, say) if n > 2 else None
    res = cl.classify_length(n, prev, progress=lambda m: log.info(m), jobs=cfg.jobs,
                             checkpoint_dir=cfg.data_dir)
    cfg.data_dir.mkdir(parents=True, exist_ok=True)
    path.write_text(cl.format_database(res))
    if n < (cfg.length or n):
        say(format_summary(res))
    if not res.certified:
        raise cl.MassError(f"mass check failed at length {n}")
    return res


def cmd_classify(cfg: RunConfig) -> int:
    top = cfg.max_length or cfg.length
    status = EXIT_OK
    for n in range(cfg.length, top + 1, 2):
        try:
            res = ensure_length(n, cfg, print)
        except cl.MassError as exc:
            print(f"mass check failed: {exc}", file=sys.stderr)
            return EXIT_MASS
        print(format_summary(res))
        if not res.certified:
            status = EXIT_MASS
        if cfg.out is not None and n == top:
            cfg.out.parent.mkdir(parents=True, exist_ok=True)
            cfg.out.write_text(cl.format_database(res))
    return status


def read_codes(path: Path) -> list[Code]:
    """Codes from a code-text file or a classification database."""
    text = path.read_text()
    try:
        if any(len(ln.split()) == 5 for ln in text.splitlines() if not ln.startswith("#")):
            return [c.code for c in cl.parse_database(text).classes]
        return parse_codes(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def read_code(path: Path) -> Code:
    try:
        return parse_code(path.read_text())
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def cmd_inspect(args) -> int:
    codes = read_codes(Path(args.file))
    for i, c in enumerate(codes, 1):
        sd = "self-dual" if is_self_dual(c) else "not self-dual"
        print(f"code {i}: n={c.n} k={c.k} {sd}")
        if args.weights:
            print(f"  W(y) = {format_enumerator(weight_enumerator(c))}")
        parts = []
        if args.minweight:
            parts.append(f"d={min_weight(c)}")
        if args.aut:
            parts.append(f"aut={aut_order(c)}")
        if parts:
            print("  " + " ".join(parts))
        if args.cosets:
            print("  B: " + " ".join(str(b) for b in coset_weight_distribution(c)))
        if args.dual:
            print("  dual:")
            for row in format_code(dual(c)).splitlines():
                print("    " + row)
    return EXIT_OK


def cmd_equiv(args) -> int:
    a, b = read_code(Path(args.a)), read_code(Path(args.b))
    if (a.n, a.k) != (b.n, b.k):
        print(f"inequivalent: length/dimension mismatch [{a.n},{a.k}] vs [{b.n},{b.k}]")
        return EXIT_INEQUIVALENT
    m = weak_equivalence_witness(a, b) if args.weak else equivalence_witness(a, b)
    if m is None:
        print("inequivalent")
        return EXIT_INEQUIVALENT
    print("weakly equivalent" if args.weak else "equivalent")
    print(f"witness: {m.describe()}")
    return EXIT_OK


def cmd_known(args) -> int:
    if args.name not in cl.KNOWN_CODES:
        print(f"unknown code {args.name!r}; choose from {', '.join(cl.KNOWN_CODES)}", file=sys.stderr)
        return EXIT_ERROR
    c = cl.known_code(args.name)
    d = min_weight(c)
    aut = aut_order(c)
    print(f"{args.name} [{c.n},{c.k},{d}] aut={aut}")
    if not is_self_dual(c):
        print("not self-dual")
    elif d >= 4:
        print(f"self-dual d>=4 aut={aut}")
    else:
        print(f"self-dual d={d} aut={aut}")
    if args.out:
        Path(args.out).write_text(f"# {args.name}\n" + format_code(c))
    return EXIT_OK


def cmd_extend22(args, cfg: RunConfig) -> int:
    seeds = read_codes(Path(args.seeds))
    for i, s in enumerate(seeds):
        if s.n != 20 or not is_self_dual(s) or min_weight(s) != 6:
            print(f"seed {i + 1} is not a self-dual [20,10,6] code", file=sys.stderr)
            return EXIT_ERROR
    out = Path(args.out)
    ck = cl.Checkpoint(out.with_name(out.name + ".ckpt"))
    done, old = ck.load(22)
    found = {c.key: c for c in old}
    for si in range(done, len(seeds)):
        try:
            sc = cl.admissible_columns(seeds[si])
        except ValueError as exc:
            print(f"seed {si + 1}: {exc}", file=sys.stderr)
            return EXIT_ERROR
        cols = sc.columns if args.max_reps is None else sc.columns[:args.max_reps]
        log.info("seed %d: %d admissible columns, using %d", si + 1, len(sc.columns), len(cols))
        for key, aut in cl.extend_columns(sc.based, cols, jobs=cfg.jobs):
            if key not in found:
                found[key] = cl.CodeClass._from_canonical(Code(22, key, cl._pivots(key)), aut)
        ck.save(22, si + 1, [found[k] for k in sorted(found)])
    classes = [found[k] for k in sorted(found)]
    lines = [f"# extremal [22,11,8] classes from {len(seeds)} seeds: {len(classes)}"]
    if args.max_reps is not None:
        lines.append(f"# partial run: at most {args.max_reps} columns per seed")
    for c in classes:
        B = coset_weight_distribution(c.code)
        lines.append("# B: " + " ".join(map(str, B)))
        lines.append(cl._record(c))
    out.write_text("\n".join(lines) + "\n")
    ck.clear()
    print(f"{len(classes)} extremal classes written to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qhsd", description="Hermitian self-dual codes over GF(4)")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify self-dual codes of a given length")
    c.add_argument("--length", type=int, required=True)
    c.add_argument("--max-length", type=int)
    c.add_argument("--out")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--data-dir")

    i = sub.add_parser("inspect", help="report invariants of codes in a file")
    i.add_argument("file")
    for flag in ("weights", "minweight", "dual", "cosets", "aut"):
        i.add_argument(f"--{flag}", action="store_true")

    e = sub.add_parser("equiv", help="decide equivalence of two codes")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--weak", action="store_true", help="also allow conjugation")

    k = sub.add_parser("known", help="write one of the built-in codes")
    k.add_argument("--name", required=True)
    k.add_argument("--out")

    x = sub.add_parser("extend22", help="extremal length-22 codes from [20,10,6] seeds")
    x.add_argument("--seeds", required=True)
    x.add_argument("--out", required=True)
    x.add_argument("--jobs", type=int, default=1)
    x.add_argument("--max-reps", type=int, help="columns per seed (partial run)")
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.command,
                        length=getattr(args, "length", None),
                        max_length=getattr(args, "max_length", None),
                        out=Path(args.out) if getattr(args, "out", None) else None,
                        jobs=getattr(args, "jobs", 1),
                        verbosity=args.verbose)
        if getattr(args, "data_dir", None):
            cfg.data_dir = Path(args.data_dir)
    except UsageError as exc:
        print(f"qhsd: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    logging.basicConfig(level=logging.INFO if cfg.verbosity else logging.WARNING,
                        format="%(message)s")
    try:
        if args.command == "classify":
            return cmd_classify(cfg)
        if args.command == "inspect":
            return cmd_inspect(args)
        if args.command == "equiv":
            return cmd_equiv(args)
        if args.command == "known":
            return cmd_known(args)
        return cmd_extend22(args, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
