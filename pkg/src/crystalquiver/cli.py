"""Command-line front end.

Every command writes a single report (JSON by default) to stdout or ``--out``.
Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 an internal
verification failure.  Failures also print a JSON diagnostic on stderr.
"""

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cartan as cartan_mod
from .binfinity import IotaSequence, generate_blambda, top_element
from .cartan import CartanError, WeightVector, weyl_kac_character
from .crystal import (DepthError, check_axioms, connected_components, highest_weight_elements,
                      tensor_graph, verify_highest_weight_characterization)
from .quiver import (ADHMDatum, GradedDims, QuiverError, SamplingError, VerificationError,
                     build_doubled_quiver, dimension_identity, eps_profile, free_action_checks,
                     is_mu_zero, is_nilpotent, is_stable, sample_lagrangian_point, weight_pairing)

COMMANDS = ("character", "crystal", "verify", "tensor", "quiver-sample", "quiver-check", "dim-identity")
SEED_ENV = "CRYSTALQUIVER_SEED"

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    cartan: object
    lams: list = field(default_factory=list)
    dims: object = None
    depth: int = 12
    bound: int = None
    seed: int = 0
    fmt: str = "json"
    iota: object = None
    count: int = 1
    datum: object = None
    max_dim: int = 3
    orientation_seed: int = None
    out: str = None


# --------------------------------------------------------------------------
# parsing helpers


def parse_int_list(text, what):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_dims(text):
    """``v=1,0;w=0,2`` -> :class:`GradedDims`."""
    parts = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        name, sep, val = chunk.partition("=")
        name = name.strip().lower()
        if not sep or name not in ("v", "w") or name in parts:
            raise InputError(f"dims must look like 'v=...;w=...', got {text!r}")
        parts[name] = parse_int_list(val, name)
    if set(parts) != {"v", "w"}:
        raise InputError(f"dims must give both v and w, got {text!r}")
    try:
        return GradedDims(parts["v"], parts["w"])
    except QuiverError as exc:
        raise InputError(str(exc)) from None


def parse_seed(value):
    try:
        seed = int(value)
    except (TypeError, ValueError):
        raise InputError(f"seed must be an integer, got {value!r}") from None
    if not 0 <= seed < 2**64:
        raise InputError("seed must fit in 64 bits (0 <= seed < 2^64)")
    return seed


def load_cartan(args):
    if args.matrix:
        try:
            return cartan_mod.from_json(Path(args.matrix).read_text())
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise InputError(f"cannot read Cartan matrix file {args.matrix!r}: {exc}") from None
    return cartan_mod.preset(args.type)


def _weight(c, coeffs):
    if len(coeffs) != c.n:
        raise InputError(f"--lam has {len(coeffs)} coefficients, rank is {c.n}")
    lam = WeightVector.fundamental(coeffs)
    if not lam.is_dominant_integral():
        raise InputError(f"--lam {list(coeffs)} is not dominant")
    return lam


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as JSON diagnostics (exit 2) like every other failure."""

    def error(self, message):
        self.exit(EXIT_PARSE, _diagnostic(EXIT_PARSE, "UsageError", message, usage=self.format_usage().strip()) + "\n")


def build_parser():
    p = _Parser(prog="crystalquiver", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json",)):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--type", help="preset Cartan type: A<n>, D<n>, E6-E8, A1~")
        g.add_argument("--matrix", help="JSON file with {'rank': n, 'matrix': [[...]]}")
        sp.add_argument("--format", dest="fmt", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", default=None, help=f"64-bit seed (default 0, or ${SEED_ENV})")

    sp = sub.add_parser("character", help="weight multiplicities of an irreducible module")
    common(sp, ("json", "csv"))
    sp.add_argument("--lam", required=True)
    sp.add_argument("--bound", type=int, default=10, help="height bound below the highest weight")

    sp = sub.add_parser("crystal", help="generate B(lambda) as a crystal graph")
    common(sp, ("json", "dot", "csv"))
    sp.add_argument("--lam", required=True)
    sp.add_argument("--depth", type=int, default=12)
    sp.add_argument("--iota", help="color cycle of the string model, e.g. 0,1,2")

    sp = sub.add_parser("verify", help="axioms, characterization and character census of B(lambda)")
    common(sp)
    sp.add_argument("--lam", required=True)
    sp.add_argument("--depth", type=int, default=12)
    sp.add_argument("--iota")
    sp.add_argument("--bound", type=int, default=None, help="character height bound (default: depth)")

    sp = sub.add_parser("tensor", help="components of a tensor product of B(lambda)'s")
    common(sp)
    sp.add_argument("--lam", required=True, action="append", help="repeat once per factor")
    sp.add_argument("--depth", type=int, default=12)

    sp = sub.add_parser("quiver-sample", help="sample stable points of the Lagrangian locus")
    common(sp)
    sp.add_argument("--dims", required=True, help="v=...;w=...")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--orientation-seed", type=int, default=None)

    sp = sub.add_parser("quiver-check", help="invariant suite on a datum (from file or sampled)")
    common(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--datum", help="JSON datum file as written by quiver-sample")
    g.add_argument("--dims", help="sample a point with these dims instead")
    sp.add_argument("--orientation-seed", type=int, default=None)

    sp = sub.add_parser("dim-identity", help="sweep the quiver dimension identity")
    common(sp, ("json", "csv"))
    sp.add_argument("--dims", help="a single case instead of a sweep")
    sp.add_argument("--max-dim", type=int, default=3, help="sweep all v_i, w_i in 0..max-dim")
    return p


def config_from_args(args):
    c = load_cartan(args)
    seed = args.seed if args.seed is not None else os.environ.get(SEED_ENV, 0)
    cfg = RunConfig(command=args.command, cartan=c, fmt=args.fmt, out=args.out, seed=parse_seed(seed))
    lam = getattr(args, "lam", None)
    if lam is not None:
        lams = lam if isinstance(lam, list) else [lam]
        cfg.lams = [_weight(c, parse_int_list(x, "--lam")) for x in lams]
    if getattr(args, "depth", None) is not None:
        if args.depth < 0:
            raise InputError("--depth must be nonnegative")
        cfg.depth = args.depth
    if getattr(args, "bound", None) is not None:
        if args.bound < 0:
            raise InputError("--bound must be nonnegative")
        cfg.bound = args.bound
    if getattr(args, "iota", None):
        try:
            cfg.iota = IotaSequence(parse_int_list(args.iota, "--iota")).validate(c.n)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if getattr(args, "dims", None):
        cfg.dims = parse_dims(args.dims)
        if len(cfg.dims.v) != c.n:
            raise InputError(f"dims have {len(cfg.dims.v)} entries, rank is {c.n}")
    if getattr(args, "count", None) is not None:
        if args.count < 1:
            raise InputError("--count must be positive")
        cfg.count = args.count
    if getattr(args, "max_dim", None) is not None:
        if args.max_dim < 0:
            raise InputError("--max-dim must be nonnegative")
        cfg.max_dim = args.max_dim
    cfg.orientation_seed = getattr(args, "orientation_seed", None)
    if getattr(args, "datum", None):
        try:
            cfg.datum = json.loads(Path(args.datum).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read datum file {args.datum!r}: {exc}") from None
    return cfg


# --------------------------------------------------------------------------
# commands; each returns (ok, report, text or None)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_character(cfg):
    lam = cfg.lams[0]
    bound = 10 if cfg.bound is None else cfg.bound
    table = weyl_kac_character(cfg.cartan, lam, bound)
    report = table.to_json()
    report["total"] = table.total()
    text = None
    if cfg.fmt == "csv":
        text = _csv(["nu", "mult"], [[" ".join(map(str, r["nu"])), r["mult"]] for r in table.rows()])
    return True, report, text


def cmd_crystal(cfg):
    g = generate_blambda(cfg.cartan, cfg.lams[0], cfg.depth, iota=cfg.iota)
    if cfg.fmt == "dot":
        return True, None, g.to_dot()
    if cfg.fmt == "csv":
        rows = [[k, " ".join(map(str, g.wt[k].nu)), " ".join(map(str, g.eps[k])),
                 " ".join(map(str, g.phi[k]))] for k in g.elements]
        return True, None, _csv(["key", "nu", "eps", "phi"], rows)
    return True, g.to_json(), None


def cmd_verify(cfg):
    lam = cfg.lams[0]
    g = generate_blambda(cfg.cartan, lam, cfg.depth, iota=cfg.iota)
    checks = []
    ax = check_axioms(g)
    checks.append(ax.to_json())
    if g.truncated:
        checks.append({"check": "complete", "ok": False,
                       "violations": [{"invariant": "depth", "detail": f"graph truncated at depth {cfg.depth}"}],
                       "info": {}})
    else:
        char = verify_highest_weight_characterization(g, top_element(g), lam, iota=cfg.iota)
        checks.append(char.to_json())
        if cfg.cartan.is_finite:
            bound = cfg.depth if cfg.bound is None else cfg.bound
            table = weyl_kac_character(cfg.cartan, lam, bound)
            census = g.weight_census()
            diffs = []
            for nu in sorted(set(census) | set(table.entries)):
                if -sum(nu) <= bound and census.get(nu, 0) != table.mult(nu):
                    diffs.append({"nu": list(nu), "crystal": census.get(nu, 0), "character": table.mult(nu)})
            checks.append({"check": "character_census", "ok": not diffs, "violations": diffs,
                           "info": {"elements": len(g), "character_total": table.total(), "bound": bound}})
    ok = all(ch["ok"] for ch in checks)
    return ok, {"lam": list(lam.lam), "depth": cfg.depth, "ok": ok, "checks": checks}, None


def cmd_tensor(cfg):
    graphs = [generate_blambda(cfg.cartan, lam, cfg.depth) for lam in cfg.lams]
    if any(g.truncated for g in graphs):
        raise InputError(f"a factor is truncated at depth {cfg.depth}; raise --depth")
    prod = graphs[0]
    for g in graphs[1:]:
        prod = tensor_graph(prod, g)
    comps = []
    for comp in connected_components(prod):
        tops = highest_weight_elements(comp)
        comps.append({"size": len(comp),
                      "highest_weights": [list(cfg.cartan.pairings(comp.wt[k])) for k in tops]})
    ax = check_axioms(prod)
    report = {"factors": [list(l.lam) for l in cfg.lams], "size": len(prod),
              "components": comps, "sizes": sorted((c["size"] for c in comps), reverse=True),
              "axioms": ax.to_json()}
    return ax.ok, report, None


def cmd_quiver_sample(cfg):
    q = build_doubled_quiver(cfg.cartan, cfg.orientation_seed)
    rng = random.Random(cfg.seed)
    points = [sample_lagrangian_point(q, cfg.dims, rng).to_json() for _ in range(cfg.count)]
    return True, {"quiver": q.to_json(), "seed": cfg.seed, "points": points}, None


def quiver_suite(c, q, d):
    """Invariant checks on one point; returns a report dict."""
    checks = []

    def add(name, ok, **info):
        checks.append({"check": name, "ok": bool(ok), **info})

    add("mu_zero", is_mu_zero(q, d))
    add("stable", is_stable(q, d))
    add("nilpotent", is_nilpotent(q, d))
    eps = eps_profile(q, d)
    pair = [weight_pairing(q, d.dims, i) for i in range(q.n)]
    bad = [i for i in range(q.n) if eps[i] + pair[i] < 0]
    add("eps_bound", not bad, eps=list(eps), pairing=pair, witness=bad)
    if checks[0]["ok"] and checks[1]["ok"]:
        fa = free_action_checks(q, d)
        info = fa.to_json()
        del info["ok"]
        add("free_action", fa.ok, **info)
    lhs, rhs, eq = dimension_identity(c, q, d.dims)
    add("dimension_identity", eq, lhs=lhs, rhs=str(rhs))
    return {"dims": d.dims.to_json(), "ok": all(ch["ok"] for ch in checks), "checks": checks}


def cmd_quiver_check(cfg):
    q = build_doubled_quiver(cfg.cartan, cfg.orientation_seed)
    if cfg.datum is not None:
        data = cfg.datum.get("points", [cfg.datum])
        try:
            points = [ADHMDatum.from_json(q, x) for x in data]
        except (QuiverError, KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad datum: {exc}") from None
    else:
        points = [sample_lagrangian_point(q, cfg.dims, random.Random(cfg.seed))]
    results = [quiver_suite(cfg.cartan, q, d) for d in points]
    ok = all(r["ok"] for r in results)
    return ok, {"ok": ok, "results": results}, None


def cmd_dim_identity(cfg):
    c = cfg.cartan
    q = build_doubled_quiver(c, cfg.orientation_seed)
    if cfg.dims is not None:
        cases = [cfg.dims]
    else:
        rng = range(cfg.max_dim + 1)
        cases = [GradedDims(v, w) for w in _grid(rng, c.n) for v in _grid(rng, c.n)]
    rows = []
    for dims in cases:
        lhs, rhs, eq = dimension_identity(c, q, dims)
        rows.append({"v": list(dims.v), "w": list(dims.w), "lhs": lhs, "rhs": str(rhs), "equal": eq})
    ok = all(r["equal"] for r in rows)
    text = None
    if cfg.fmt == "csv":
        text = _csv(["v", "w", "lhs", "rhs", "equal"],
                    [[" ".join(map(str, r["v"])), " ".join(map(str, r["w"])), r["lhs"], r["rhs"], r["equal"]]
                     for r in rows])
    failures = [r for r in rows if not r["equal"]]
    return ok, {"ok": ok, "cases": len(rows), "failures": failures, "rows": rows}, text


def _grid(values, n):
    if n == 0:
        yield ()
        return
    for head in values:
        for tail in _grid(values, n - 1):
            yield (head,) + tail


DISPATCH = {
    "character": cmd_character,
    "crystal": cmd_crystal,
    "verify": cmd_verify,
    "tensor": cmd_tensor,
    "quiver-sample": cmd_quiver_sample,
    "quiver-check": cmd_quiver_check,
    "dim-identity": cmd_dim_identity,
}


def _diagnostic(code, kind, message, **extra):
    return json.dumps({"exit": code, "error": kind, "message": message, **extra}, sort_keys=True)


def run(cfg, stdout=None, stderr=None):
    """Execute one configured command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ok, report, text = DISPATCH[cfg.command](cfg)
    except (InputError, CartanError, QuiverError, DepthError) as exc:
        print(_diagnostic(EXIT_PARSE, type(exc).__name__, str(exc)), file=stderr)
        return EXIT_PARSE
    except SamplingError as exc:
        print(_diagnostic(EXIT_FAIL, "SamplingError", str(exc), invariant="stability"), file=stderr)
        return EXIT_FAIL
    except VerificationError as exc:
        print(_diagnostic(EXIT_INTERNAL, "VerificationError", str(exc)), file=stderr)
        return EXIT_INTERNAL
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        # anything else escaping a pipeline is an internal inconsistency
        print(_diagnostic(EXIT_INTERNAL, type(exc).__name__, str(exc)), file=stderr)
        return EXIT_INTERNAL
    if text is None:
        text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)
    if not ok:
        failed = [ch for ch in _iter_checks(report) if not ch.get("ok", True)]
        print(_diagnostic(EXIT_FAIL, "CheckFailed", f"{cfg.command}: check failed", failed=failed[:5]),
              file=stderr)
        return EXIT_FAIL
    return EXIT_OK


def _iter_checks(report):
    if not isinstance(report, dict):
        return
    for ch in report.get("checks", []):
        yield ch
    for r in report.get("results", []):
        yield from _iter_checks(r)
    for r in report.get("failures", []):
        yield {"check": "dimension_identity", "ok": False, **r}
    if "axioms" in report:
        yield report["axioms"]


def main(argv=None, stdout=None, stderr=None):
    stderr = stderr or sys.stderr
    parser = build_parser()
    real_stderr = sys.stderr
    sys.stderr = stderr  # argparse writes usage errors to sys.stderr
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    finally:
        sys.stderr = real_stderr
    try:
        cfg = config_from_args(args)
    except (InputError, CartanError) as exc:
        print(_diagnostic(EXIT_PARSE, type(exc).__name__, str(exc)), file=stderr)
        return EXIT_PARSE
    return run(cfg, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
