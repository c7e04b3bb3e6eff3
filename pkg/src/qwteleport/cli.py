"""Command-line front end.

Exit codes: 0 member / success, 1 non-member or failed outcome,
2 theorem-oracle disagreement, 3 invalid config or usage.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import criteria as cr
from . import teleport as tp
from . import walk as qw
from .algebra import CLASSIFY_TOL, KET_L, KET_R, NAMED_GATES
from .config import ConfigError, load_config

EXIT_MEMBER, EXIT_NONMEMBER, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _fmt_c(z, digits=6):
    z = complex(z)
    re = 0.0 if abs(z.real) < 0.5 * 10 ** -digits else z.real
    im = 0.0 if abs(z.imag) < 0.5 * 10 ** -digits else z.imag
    return f"{re:+.{digits}f}{im:+.{digits}f}j"


def _fmt_vec(v):
    return "[" + ", ".join(_fmt_c(z) for z in v) + "]"


def _fmt_mat(m):
    return "[" + "; ".join(", ".join(_fmt_c(z) for z in row) for row in m) + "]"


def _parse_phi(text):
    try:
        re0, im0, re1, im1 = (float(s) for s in text.split(","))
    except ValueError:
        raise UsageError(f"--phi expects re,im,re,im; got {text!r}") from None
    phi = np.array([re0 + 1j * im0, re1 + 1j * im1])
    if abs(np.linalg.norm(phi) - 1) > 1e-9:
        raise UsageError(f"--phi is not normalized (norm {np.linalg.norm(phi):.6g})")
    return phi


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _load(path, out):
    try:
        return load_config(path)
    except ConfigError as exc:
        print(f"invalid config {path}: {exc}", file=out)
        raise SystemExit(EXIT_INVALID) from None
    except OSError as exc:
        print(f"cannot read config {path}: {exc}", file=out)
        raise SystemExit(EXIT_INVALID) from None


def cmd_check(args, out):
    proc, _ = _load(args.config, out)
    v = cr.verdict(proc, args.tol)
    for name in ("cond_I", "cond_II", "cond_III_i", "cond_III_ii"):
        print(f"{name:<12} {getattr(v, name)}", file=out)
    print(f"{'theorem':<12} {v.theorem_member}", file=out)
    print(f"{'oracle':<12} {v.oracle_member}", file=out)
    print(f"{'agree':<12} {v.agree}", file=out)
    if not v.agree:
        return EXIT_DISAGREE
    return EXIT_MEMBER if v.theorem_member else EXIT_NONMEMBER


CSV_HEADER = ["j", "eps"] + [f"{m}{r}{c}{part}" for m in "VU" for r in "01" for c in "01"
                             for part in ("re", "im")] + ["prob"]


def cmd_table(args, out):
    proc, _ = _load(args.config, out)
    table = tp.outcome_table(proc, args.tol)
    failing = [a.outcome for a in table if a.kappa is None]
    if failing:
        print("not a member: V~ is not proportional to a unitary for outcomes "
              + " ".join(str(o) for o in failing), file=out)
        return EXIT_NONMEMBER
    print(f"{'(j,eps)':<9} {'V (normalized)':<62} {'U':<62} prob", file=out)
    rows = []
    for a in table:
        v, u = a.v_normalized, a.correction
        print(f"{str(a.outcome):<9} {_fmt_mat(v):<62} {_fmt_mat(u):<62} {a.probability:.10f}",
              file=out)
        row = [a.outcome.j, a.outcome.eps]
        for m in (v, u):
            for z in m.ravel():
                row += [repr(float(z.real)), repr(float(z.imag))]
        rows.append(row + [repr(a.probability)])
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            writer.writerows(rows)
    return EXIT_MEMBER


def cmd_simulate(args, out):
    proc, config_phi = _load(args.config, out)
    phi = _parse_phi(args.phi) if args.phi else config_phi
    if phi is None:
        phi = KET_R
    probs = np.array([tp.outcome_probability(proc, phi, o) for o in tp.OUTCOMES])
    if args.outcome:
        try:
            outcome = tp.parse_outcome(args.outcome)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        rng = np.random.default_rng(args.seed)
        outcome = tp.OUTCOMES[rng.choice(len(tp.OUTCOMES), p=probs / probs.sum())]
    analysis = tp.analyze_outcome(proc, outcome, args.tol)
    prob = analysis.probability_for(phi)
    print(f"target phi    {_fmt_vec(phi)}", file=out)
    print(f"outcome       {outcome}" + ("" if args.outcome else f"  (sampled, seed {args.seed})"),
          file=out)
    print(f"probability   {prob:.10f}", file=out)
    try:
        bob, fidelity = tp.teleport_round(proc, phi, outcome, args.tol)
    except tp.ZeroProbabilityError as exc:
        print(f"error: {exc}", file=out)
        return EXIT_NONMEMBER
    collapsed = analysis.v_tilde @ phi
    print(f"bob before    {_fmt_vec(collapsed / np.linalg.norm(collapsed))}", file=out)
    if analysis.correction is None:
        print("correction    none (V~ not proportional to a unitary)", file=out)
    else:
        print(f"correction    {_fmt_mat(analysis.correction)}", file=out)
    print(f"bob after     {_fmt_vec(bob)}", file=out)
    print(f"fidelity      {fidelity:.12f}", file=out)
    return EXIT_MEMBER if fidelity >= 1 - 1e-9 else EXIT_NONMEMBER


def cmd_verify(args, out):
    families = tuple(f.strip() for f in args.families.split(",")) if args.families else cr.FAMILIES
    unknown = [f for f in families if f not in cr.FAMILIES]
    if unknown:
        raise UsageError(f"unknown families: {', '.join(unknown)}")
    report = cr.equivalence_harness(args.trials, args.seed, args.tol, families)
    print(report.to_text(), file=out)
    for rec in report.disagreements:
        print("reproducer:", rec["family"], "seed", rec["rng_seed"], file=out)
        print(json.dumps(rec["procedure"]), file=out)
    return EXIT_MEMBER if report.passed else EXIT_DISAGREE


def _parse_coin_vectors(text, m):
    if text is None:
        return [KET_R] * m
    labels = [s.strip().upper() for s in text.split(",")]
    if len(labels) != m or any(lab not in ("R", "L") for lab in labels):
        raise UsageError(f"--init expects {m} comma-separated R/L labels")
    return [KET_R if lab == "R" else KET_L for lab in labels]


def cmd_walk(args, out):
    if args.config:
        proc, phi = _load(args.config, out)
        coins = [proc.c1, proc.c2]
        vectors = [KET_R if phi is None else phi, proc.psi]
    elif args.coins:
        names = [s.strip().upper() for s in args.coins.split(",")]
        bad = [n for n in names if n not in NAMED_GATES]
        if bad:
            raise UsageError(f"unknown coin names {bad}; choose from {sorted(NAMED_GATES)}")
        if len(names) > qw.MAX_COINS:
            raise UsageError(f"at most {qw.MAX_COINS} coins")
        coins = [NAMED_GATES[n] for n in names]
        vectors = _parse_coin_vectors(args.init, len(coins))
    else:
        raise UsageError("walk needs a config file or --coins")
    walk = qw.WalkConfig(coins)
    steps = walk.m if args.steps is None else args.steps
    if steps > walk.m:
        raise UsageError(f"--steps {steps} exceeds coin count {walk.m} (one coin per step)")
    state = qw.evolve(qw.initial_state(0, vectors), walk, steps)
    dist = qw.position_distribution(state)
    print(f"m={walk.m} steps={steps}", file=out)
    for x in sorted(dist, reverse=True):
        print(f"{x:>4}  {dist[x]:.10f}", file=out)
    return EXIT_MEMBER


def build_parser():
    parser = _Parser(prog="qwteleport", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_tol(p):
        p.add_argument("--tol", type=float, default=CLASSIFY_TOL,
                       help="classification tolerance (default %(default)g)")

    p = sub.add_parser("check", help="theorem and oracle membership verdict")
    p.add_argument("config")
    add_tol(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", help="normalized V and correction U for all six outcomes")
    p.add_argument("config")
    p.add_argument("--csv", metavar="PATH")
    add_tol(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="teleport one target for one outcome")
    p.add_argument("config")
    p.add_argument("--phi", metavar="RE,IM,RE,IM")
    p.add_argument("--outcome", metavar="J,EPS", help="e.g. 0,R; write negative j as --outcome=-2,L")
    p.add_argument("--seed", type=int, default=0)
    add_tol(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="theorem vs oracle equivalence harness")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--families", metavar="CSV")
    add_tol(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("walk", help="position distribution of an m-coin walk")
    p.add_argument("config", nargs="?")
    p.add_argument("--coins", metavar="NAMES", help="comma-separated coins from I,X,Y,Z,H")
    p.add_argument("--steps", type=_positive_int)
    p.add_argument("--init", metavar="LABELS", help="initial coin labels, e.g. R,L")
    p.set_defaults(func=cmd_walk)
    return parser


def main(argv=None, out=None):
    """Run the CLI and return its exit code."""
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"qwteleport {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
