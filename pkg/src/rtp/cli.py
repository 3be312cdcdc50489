"""Command-line driver.

Exit status: 0 all checks pass, 1 some check failed (report still written),
2 parse error, 3 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from rtp import catalog, contfrac, conv
from rtp.arith import Poly, cofactor_det, format_rational, is_nonneg, parse_rational, to_json_value
from rtp.expr import ExprError, parse_series
from rtp.positivity import (Certificate, RingMatrix, check_tp, hankel, is_k_log_convex,
                            toeplitz, window_sweep)
from rtp.riordan import ExpRiordan, production_matrix, triangle, verify_production
from rtp.series import SeriesError

SCHEMA = "rtp-report/1"
EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


class JobError(ValueError):
    """Malformed job file or task (exit 2)."""


DOMAIN_ERRORS = (catalog.DomainError, SeriesError, contfrac.ContFracError, ZeroDivisionError)


# values ---------------------------------------------------------------------

def parse_value(text):
    """``sym``, a comma list of rationals, a rational, or a bare word."""
    text = text.strip()
    if text == catalog.SYM:
        return text
    if "," in text:
        return [parse_rational(x) for x in text.split(",") if x.strip()]
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        return text


def parse_binds(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise JobError(f"--bind expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_value(v)
    return out


def _json_param(v):
    if isinstance(v, list):
        return [_json_param(x) for x in v]
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        if isinstance(v, float):
            raise JobError("floats are not accepted; write rationals as strings like \"1/2\"")
        return Fraction(v)
    if isinstance(v, str):
        return parse_value(v)
    return v


def _subs(x, bindings):
    if isinstance(x, Poly) and bindings:
        present = {k: v for k, v in bindings.items() if k in x.vars}
        if present:
            return x.subs(present)
    return x


def _subs_matrix(M, bindings):
    if not bindings:
        return M
    return M.map(lambda x: _subs(x, bindings))


def _num_bindings(bindings):
    out = {}
    for k, v in (bindings or {}).items():
        out[k] = parse_rational(v) if isinstance(v, str) else Fraction(v)
    return out


def _fmt(x):
    if isinstance(x, Poly):
        return repr(x)
    return format_rational(x) if x.denominator != 1 else str(x.numerator)


# targets ----------------------------------------------------------------------

class Target:
    def __init__(self, kind, desc, matrix=None, sequence=None, era=None, schedule=None,
                 family=None):
        self.kind = kind
        self.desc = desc
        self.matrix = matrix
        self.sequence = sequence
        self.era = era
        self.schedule = schedule
        self.family = family

    def seq(self, source=None):
        if self.sequence is not None and source in (None, "sequence"):
            return list(self.sequence)
        if self.matrix is None:
            raise JobError(f"target {self.kind} has no sequence")
        if source in (None, "rowpolys"):
            from rtp.riordan import matrix_row_polys
            return matrix_row_polys(self.matrix, "q")
        if source == "column0":
            return [self.matrix[n, 0] for n in range(self.matrix.shape[0])]
        if source == "diagonal":
            return [self.matrix[n, n] for n in range(self.matrix.shape[0])]
        raise JobError(f"unknown sequence source {source!r}")


FAMILY_KEYS = ("a", "b", "c", "d", "lambda", "gamma", "alpha", "m", "n", "which", "bare",
               "xs", "signed")


def build_target(task):
    N = task.get("N", 10)
    if not isinstance(N, int) or N < 0:
        raise JobError("N must be a nonnegative integer")
    if "family" in task:
        name = task["family"]
        params = {k: _json_param(task[k]) for k in FAMILY_KEYS if k in task}
        if name in ("logarithmic", "fractional"):
            f = parse_series(task["f"], N, task.get("bindings"))
            T = (catalog.logarithmic_triangle if name == "logarithmic"
                 else catalog.fractional_triangle)(f, N)
        else:
            T = catalog.build_family(name, N, params, mode=task.get("mode"))
        return Target("family", T.family.to_json(), matrix=T.entries, family=(name, params))
    if "era" in task:
        era = task["era"]
        if not isinstance(era, dict) or "g" not in era or "f" not in era:
            raise JobError("era target needs {\"g\": ..., \"f\": ...}")
        binds = task.get("bindings")
        g = parse_series(era["g"], N + 1, binds)
        f = parse_series(era["f"], N + 1, binds)
        ring = g.ring or f.ring
        if g.ring and f.ring and g.ring != f.ring:
            names = tuple(sorted(set(g.ring) | set(f.ring)))
            g = parse_series(era["g"], N + 1, binds, names)
            f = parse_series(era["f"], N + 1, binds, names)
        R = ExpRiordan(g, f)
        desc = {"era": {"g": era["g"], "f": era["f"]}, "N": N}
        return Target("era", desc, matrix=triangle(R, N), era=R)
    if "sequence" in task:
        seq = task["sequence"]
        if not isinstance(seq, list) or not seq:
            raise JobError("sequence must be a nonempty list")
        vals = [_json_param(x) for x in seq]
        if any(not isinstance(v, Fraction) for v in vals):
            raise JobError("sequence entries must be rationals")
        return Target("sequence", {"sequence": [_fmt(v) for v in vals]}, sequence=vals)
    if "series" in task:
        s = parse_series(task["series"], N, task.get("bindings"))
        vals = s.egf_coeffs() if task.get("egf") else list(s.coeffs)
        return Target("series", {"series": task["series"], "egf": bool(task.get("egf")), "N": N},
                      sequence=vals)
    if "matrix" in task:
        rows = [[_json_param(x) for x in r] for r in task["matrix"]]
        return Target("matrix", {"matrix": [[_fmt(x) for x in r] for r in rows]},
                      matrix=RingMatrix(rows))
    if "schedule" in task:
        sch = _schedule_from(task["schedule"])
        return Target("schedule", {"schedule": task["schedule"], "N": N}, schedule=sch)
    raise JobError("task needs one of family, era, sequence, series, matrix, schedule")


def _schedule_from(spec):
    if isinstance(spec, list):
        raise JobError("inline schedules need {\"m\": ..., \"alpha\": [...]}")
    if "alpha" in spec:
        return contfrac.Schedule(int(spec.get("m", 1)),
                                 values=[_json_param(x) for x in spec["alpha"]])
    name = spec.get("name")
    if name not in contfrac.NAMED_SCHEDULES:
        raise JobError(f"unknown schedule {name!r}; known: {sorted(contfrac.NAMED_SCHEDULES)}")
    args = {k: _json_param(v) for k, v in spec.items() if k != "name"}
    if name in ("sheffer", "sheffer_star"):
        return contfrac.NAMED_SCHEDULES[name](args.get("lambda", 0), args.get("q", "sym"),
                                              args["xs"])
    if name in ("lah", "lah_star"):
        return contfrac.NAMED_SCHEDULES[name](int(args.get("a", 1)), args.get("b", 1),
                                              args.get("c", 1), args.get("lambda", 0),
                                              args.get("q", "sym"))
    return contfrac.schedule_hankel(args.get("nu", "sym"), args.get("b", 0), args["xs"])


# checks -----------------------------------------------------------------------

CHECK_KINDS = ("tp", "coeffwise-tp", "sm", "hankel", "coeffwise-hankel", "hankel-window",
               "pf", "toeplitz", "klogconvex", "production", "realroots", "cross",
               "sm-preservation", "hadamard", "cf-equivalence")


def _simple(prop, verdict, witness=None, size=(), r=0, bindings=None, checked=0, note=None):
    c = Certificate(prop, tuple(size), r, verdict, witness, dict(bindings or {}), checked)
    if note:
        c.note = note
    return c


def _need_r(check):
    r = check.get("r")
    if not isinstance(r, int) or r < 1:
        raise JobError(f"check {check.get('kind')!r} needs an integer r >= 1")
    return r


def run_check(target, check):
    """Returns (certificates, matrix checked or None)."""
    kind = check.get("kind")
    if kind not in CHECK_KINDS:
        raise JobError(f"unknown check kind {kind!r}")
    binds = _num_bindings(check.get("bindings"))
    if kind in ("tp", "coeffwise-tp"):
        if target.matrix is None:
            raise JobError("tp needs a triangle or matrix target")
        M = _subs_matrix(target.matrix, binds)
        if "N" in check:
            M = M.block(check["N"] + 1, check["N"] + 1)
        prop = "coeffwise-TP_r" if kind == "coeffwise-tp" or M.is_symbolic() else "TP_r"
        return [check_tp(M, _need_r(check), prop, binds)], M
    if kind in ("sm", "hankel", "coeffwise-hankel", "pf", "toeplitz", "hankel-window",
                "klogconvex"):
        seq = [_subs(x, binds) for x in target.seq(check.get("source"))]
        if kind == "klogconvex":
            k = check.get("k", check.get("r"))
            if not isinstance(k, int) or k < 1:
                raise JobError("klogconvex needs an integer k >= 1")
            return [is_k_log_convex(seq, k, binds)], None
        if kind in ("pf", "toeplitz"):
            Nh = check.get("N", len(seq) - 1)
            M = toeplitz(seq, Nh)
            return [check_tp(M, _need_r(check), "PF_r", binds)], M
        Nh = check.get("N", (len(seq) - 1) // 2)
        M = hankel(seq, Nh)
        if kind == "hankel-window":
            size = check.get("window", Nh)
            return window_sweep(M, size, _need_r(check)), M
        prop = "coeffwise-SM_r" if kind == "coeffwise-hankel" or M.is_symbolic() else "SM_r"
        return [check_tp(M, _need_r(check), prop, binds)], M
    if kind == "production":
        if target.era is None:
            raise JobError("production check needs an era target")
        N = check.get("N", target.era.order - 1)
        ok = verify_production(target.era, N) and verify_production(target.era, N, scaled=True)
        return [_simple("production-identity", "pass" if ok else "fail",
                        None if ok else {"N": N}, (N + 1, N + 1), note="exact")], None
    if kind == "realroots":
        if target.matrix is None:
            raise JobError("realroots needs a triangle target")
        lam = binds.get("lambda", Fraction(0))
        return [catalog.real_roots_check(_subs_matrix(target.matrix, binds), lam)], None
    if kind == "cross":
        if target.family is None:
            raise JobError("cross check needs a family target")
        name, params = target.family
        N = target.matrix.shape[0] - 1
        try:
            catalog.cross_check(name, N, params)
            return [_simple("cross-realization", "pass", size=(N + 1, N + 1), note="exact")], None
        except catalog.RealizationMismatch as exc:
            return [_simple("cross-realization", "fail", {"message": str(exc)},
                            (N + 1, N + 1), note="exact")], None
    if kind == "sm-preservation":
        if target.matrix is None:
            raise JobError("sm-preservation needs a triangle target")
        Nh = check.get("N", conv.DEFAULT_N)
        names = check.get("library")
        certs = conv.sm_preservation_probe(_subs_matrix(target.matrix, binds),
                                           conv.library_samples(names), Nh, _need_r(check),
                                           name=json.dumps(target.desc, sort_keys=True))
        for c in certs:
            c.bindings.pop("triangle", None)
        return certs, None
    if kind == "hadamard":
        return conv.hadamard_probe(conv.library_samples(check.get("library")),
                                   check.get("N", conv.DEFAULT_N), _need_r(check)), None
    if kind == "cf-equivalence":
        if target.schedule is None:
            raise JobError("cf-equivalence needs a schedule target")
        N = check.get("N", 8)
        a = contfrac.schedule_series(target.schedule, N, "recursive")
        b = contfrac.schedule_series(target.schedule, N, "production")
        ok = a == b
        w = None
        if not ok:
            n = next(i for i in range(N + 1) if a[i] != b[i])
            w = {"n": n, "recursive": to_json_value(a[n]), "production": to_json_value(b[n])}
        return [_simple("cf-equivalence", "pass" if ok else "fail", w, (N + 1,), note="exact")], None
    raise JobError(f"unhandled check {kind!r}")  # pragma: no cover


def revalidate_witness(cert, M):
    """Independent recomputation of a failing minor by cofactor expansion."""
    w = cert.witness or {}
    if M is None or "rows" not in w:
        return None
    sub = M.submatrix(w["rows"], w["cols"])
    v = cofactor_det([list(r) for r in sub.rows])
    return not is_nonneg(v)


# jobs -------------------------------------------------------------------------

def load_job(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise JobError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise JobError(f"{path}: {exc}") from exc
    return normalize_job(data)


def normalize_job(data):
    if isinstance(data, dict) and "tasks" in data:
        tasks = data["tasks"]
    elif isinstance(data, list):
        tasks = data
    elif isinstance(data, dict):
        tasks = [data]
    else:
        raise JobError("job must be a task object, a list of tasks, or {\"tasks\": [...]}")
    if not all(isinstance(t, dict) for t in tasks):
        raise JobError("every task must be an object")
    out = []
    for t in tasks:
        out.extend(_expand_sweep(t))
    return out


def _expand_sweep(task):
    sweep = task.get("sweep")
    if not sweep:
        return [task]
    combos = [{}]
    for name in sorted(sweep):
        vals = sweep[name]
        vals = list(catalog.SAMPLE_GRID) if vals == "grid" else [_json_param(v) for v in vals]
        combos = [dict(c, **{name: v}) for c in combos for v in vals]
    out = []
    for c in combos:
        t = {k: v for k, v in task.items() if k != "sweep"}
        t.update({k: format_rational(v) for k, v in c.items()})
        t["_sweep"] = {k: format_rational(v) for k, v in c.items()}
        out.append(t)
    return out


def run_job(tasks, revalidate=False):
    """Run tasks in order; returns (report dict, exit status)."""
    records = []
    status = EXIT_PASS
    n_checks = n_pass = 0
    for i, task in enumerate(tasks):
        rec = {"index": i}
        if "_sweep" in task:
            rec["sweep"] = task["_sweep"]
        try:
            target = build_target(task)
            rec["target"] = target.desc
            results = []
            for check in task.get("checks", []):
                certs, M = run_check(target, check)
                for c in certs:
                    out = c.to_json()
                    out["kind"] = check["kind"]
                    if revalidate and not c.passed:
                        out["revalidated"] = revalidate_witness(c, M)
                    results.append(out)
                    n_checks += 1
                    n_pass += c.passed
                    if not c.passed:
                        status = max(status, EXIT_FAIL)
            rec["checks"] = results
            rec["status"] = "pass" if all(r["verdict"] == "pass" for r in results) else "fail"
        except (JobError, ExprError, KeyError, TypeError) as exc:
            rec["status"] = "error"
            rec["error"] = f"parse: {exc}"
            status = EXIT_PARSE if status != EXIT_DOMAIN else status
        except DOMAIN_ERRORS + (ValueError,) as exc:
            rec["status"] = "error"
            rec["error"] = f"domain: {exc}"
            status = EXIT_DOMAIN if status in (EXIT_PASS, EXIT_FAIL) else status
        records.append(rec)
    report = {
        "schema": SCHEMA,
        "tasks": records,
        "summary": {"checks": n_checks, "passed": n_pass, "failed": n_checks - n_pass,
                    "status": {0: "pass", 1: "fail", 2: "parse-error", 3: "domain-error"}[status]},
    }
    return report, status


def dump_report(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# human-readable output ----------------------------------------------------------

def format_matrix(M):
    cells = [[_fmt(x) for x in r] for r in M.rows]
    width = max((len(c) for r in cells for c in r), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def format_cert(c):
    line = f"{c.property} size={'x'.join(map(str, c.size))} r={c.r}"
    if c.bindings:
        line += " [" + ", ".join(f"{k}={v}" for k, v in c.to_json()["bindings"].items()) + "]"
    line += f": {c.verdict.upper()}"
    if c.witness:
        line += f"\n  witness: {json.dumps(c.witness, sort_keys=True)}"
    return line


# argument parsing -----------------------------------------------------------------

def _common(p, order=True, r=False):
    if order:
        p.add_argument("--order", "-N", type=int, default=8, help="truncation order N")
    if r:
        p.add_argument("--minor-order", "-r", type=int, default=2, help="minor order r")
    p.add_argument("--bind", action="append", metavar="NAME=VALUE",
                   help="bind a parameter (repeatable); VALUE may be 'sym'")
    p.add_argument("--json", action="store_true", help="emit the JSON report")


def _target_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--family", help="catalog family name")
    g.add_argument("--era", nargs=2, metavar=("G", "F"), help="exponential Riordan array g f")
    g.add_argument("--seq", help="comma-separated rational sequence")
    g.add_argument("--series", help="series expression; its coefficients form the sequence")
    p.add_argument("--egf", action="store_true", help="with --series, use n! [t^n]")
    p.add_argument("--source", choices=["rowpolys", "column0", "diagonal"],
                   help="sequence taken from a triangle target")
    p.add_argument("--mode", help="family realization (recurrence, era, formula, ...)")


def _task_from_args(args, N):
    binds = parse_binds(args.bind)
    task = {"N": N}
    if args.family:
        task["family"] = args.family
        for k, v in binds.items():
            task[k] = _to_json_param(v)
        if args.mode:
            task["mode"] = args.mode
    elif args.era:
        task["era"] = {"g": args.era[0], "f": args.era[1]}
        task["bindings"] = {k: format_rational(v) for k, v in binds.items()
                            if isinstance(v, Fraction)}
    elif args.seq:
        task["sequence"] = [format_rational(parse_rational(x)) for x in args.seq.split(",")]
    else:
        task["series"] = args.series
        task["egf"] = args.egf
        task["bindings"] = {k: format_rational(v) for k, v in binds.items()
                            if isinstance(v, Fraction)}
    return task


def _to_json_param(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, list):
        return [format_rational(x) for x in v]
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="rtp", description="Total-positivity checks for "
                                 "exponential Riordan arrays and combinatorial triangles.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("triangle", help="print a family triangle")
    p.add_argument("family")
    _common(p)
    p.add_argument("--mode", help="realization mode")
    p.add_argument("--verify", action="store_true", help="cross-check all realizations")
    p.add_argument("--rows", action="store_true", help="print row polynomials")

    p = sub.add_parser("tpcheck", help="TP_r of a triangle (coefficientwise if symbolic)")
    _target_args(p)
    _common(p, r=True)
    p.add_argument("--revalidate", action="store_true")

    for name, kind in (("hankel", "hankel"), ("toeplitz", "toeplitz")):
        p = sub.add_parser(name, help=f"{'SM' if kind == 'hankel' else 'PF'}_r of a sequence")
        _target_args(p)
        _common(p, r=True)
        p.add_argument("--size", type=int, help="matrix dimension minus one")
        p.add_argument("--revalidate", action="store_true")

    p = sub.add_parser("prodmat", help="production matrix of an exponential Riordan array")
    p.add_argument("g")
    p.add_argument("f")
    _common(p)
    p.add_argument("--scaled", action="store_true", help="drop the i!/j! factors")
    p.add_argument("--verify", action="store_true", help="check Rbar = R P exactly")

    p = sub.add_parser("cf", help="branched continued fraction expansion")
    p.add_argument("schedule", help="named schedule (sheffer, sheffer_star, lah, lah_star, "
                                    "hankel) or a comma list of alphas")
    p.add_argument("--m", type=int, default=1, help="branch count for inline schedules")
    _common(p)
    p.add_argument("--method", choices=["recursive", "production", "both"], default="both")

    p = sub.add_parser("conv", help="SM-preservation probe of a triangle")
    p.add_argument("--family", required=True)
    _common(p, r=True)
    p.add_argument("--library", help="comma-separated sample names (default: all)")

    p = sub.add_parser("verify", help="run a JSON job file")
    p.add_argument("job")
    p.add_argument("--out", help="write the report here as well")
    p.add_argument("--revalidate", action="store_true",
                   help="recompute every failing witness minor independently")
    p.add_argument("--json", action="store_true", help="print the report (default)")
    return ap


def _emit(report, status, args, lines=None):
    if getattr(args, "json", False) or lines is None:
        sys.stdout.write(dump_report(report))
    else:
        print("\n".join(lines))
    return status


def _report_lines(report):
    lines = []
    for rec in report["tasks"]:
        if rec.get("error"):
            lines.append(f"task {rec['index']}: ERROR {rec['error']}")
            continue
        for c in rec["checks"]:
            cert = Certificate(c["property"], tuple(c["size"]), c["r"], c["verdict"],
                               c["witness"], c["bindings"], c["checked"], c["note"])
            line = format_cert(cert)
            if "revalidated" in c:
                line += f"\n  revalidated: {c['revalidated']}"
            lines.append(line)
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['checks']} checks passed ({s['status']})")
    return lines


def cmd_triangle(args):
    binds = parse_binds(args.bind)
    T = catalog.build_family(args.family, args.order, binds, mode=args.mode, verify=args.verify)
    if args.json:
        out = {"schema": SCHEMA, "family": T.family.to_json(), "entries": T.entries.to_json(),
               "row_polys": [to_json_value(p) for p in T.row_polys]}
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    elif args.rows:
        for n, p in enumerate(T.row_polys):
            print(f"{n}: {p!r}")
    else:
        print(format_matrix(T.entries))
    return EXIT_PASS


def _single(args, kind):
    N = args.order
    task = _task_from_args(args, N)
    check = {"kind": kind, "r": args.minor_order}
    if getattr(args, "source", None):
        check["source"] = args.source
    if getattr(args, "size", None) is not None:
        check["N"] = args.size
    task["checks"] = [check]
    report, status = run_job([task], revalidate=getattr(args, "revalidate", False))
    return _emit(report, status, args, _report_lines(report))


def cmd_prodmat(args):
    binds = {k: v for k, v in parse_binds(args.bind).items() if isinstance(v, Fraction)}
    N = args.order
    g = parse_series(args.g, N + 1, binds)
    f = parse_series(args.f, N + 1, binds)
    R = ExpRiordan(g, f)
    P = production_matrix(R, N, scaled=args.scaled)
    ok = None
    if args.verify:
        ok = verify_production(R, N, scaled=args.scaled)
    if args.json:
        out = {"schema": SCHEMA, "production": P.to_json(),
               "z": [to_json_value(x) for x in P.z_seq[: N + 1]],
               "a": [to_json_value(x) for x in P.a_seq[: N + 1]]}
        if ok is not None:
            out["identity"] = "pass" if ok else "fail"
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        print(format_matrix(P))
        if ok is not None:
            print(f"Rbar = R P: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok in (None, True) else EXIT_FAIL


def cmd_cf(args):
    binds = parse_binds(args.bind)
    N = args.order
    if args.schedule in contfrac.NAMED_SCHEDULES:
        spec = {"name": args.schedule}
        spec.update({k: _to_json_param(v) for k, v in binds.items()})
        sch = _schedule_from(spec)
    else:
        sch = contfrac.Schedule(args.m, values=[parse_rational(x) for x in args.schedule.split(",")])
    results = {}
    methods = ["recursive", "production"] if args.method == "both" else [args.method]
    for m in methods:
        if m == "production" and not sch.periodic:
            if args.method == "both":
                continue
        results[m] = contfrac.schedule_series(sch, N, m)
    agree = len(set(map(lambda s: tuple(map(repr, s.coeffs)), results.values()))) == 1
    if args.json:
        out = {"schema": SCHEMA, "N": N, "agree": agree,
               "series": {k: v.to_json() for k, v in sorted(results.items())}}
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        first = next(iter(results.values()))
        for n, c in enumerate(first.coeffs):
            print(f"t^{n}: {_fmt(c)}")
        if len(results) > 1:
            print(f"recursive == production: {'PASS' if agree else 'FAIL'}")
    return EXIT_PASS if agree else EXIT_FAIL


def cmd_conv(args):
    binds = parse_binds(args.bind)
    task = {"family": args.family, "N": 2 * args.order}
    task.update({k: _to_json_param(v) for k, v in binds.items()})
    check = {"kind": "sm-preservation", "r": args.minor_order, "N": args.order}
    if args.library:
        check["library"] = [x.strip() for x in args.library.split(",")]
    task["checks"] = [check]
    report, status = run_job([task])
    return _emit(report, status, args, _report_lines(report))


def cmd_verify(args):
    tasks = load_job(args.job)
    report, status = run_job(tasks, revalidate=args.revalidate)
    text = dump_report(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return status


COMMANDS = {
    "triangle": cmd_triangle,
    "tpcheck": lambda a: _single(a, "tp"),
    "hankel": lambda a: _single(a, "hankel"),
    "toeplitz": lambda a: _single(a, "toeplitz"),
    "prodmat": cmd_prodmat,
    "cf": cmd_cf,
    "conv": cmd_conv,
    "verify": cmd_verify,
}


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_PASS
    try:
        return COMMANDS[args.cmd](args)
    except (JobError, ExprError) as exc:
        print(f"rtp: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DOMAIN_ERRORS + (ValueError,) as exc:
        print(f"rtp: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
