"""Command-line driver: verification suites, reports, table cache.

Exit codes: 0 all non-skipped checks pass, 1 at least one check fails
(the report is still written), 2 invalid configuration.  Reports are
deterministic: identical configuration (including the seed) produces a
byte-identical JSON file; wall-clock timings go to stdout only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .qfield import QRing, Scalar
from .quadratic import (HeckeError, QuadraticData, complementarity_check,
                        d_squared_is_zero, koszul_homology,
                        poincare_identity, re_algebra_dims, standard_hecke)
from .hyperboloid import (FlatnessViolation, Hyperboloid, QHParams,
                          TruncationOverflow)
from .derham import (MultiplicityMismatch, NoSolution, build_omega,
                     check_composite_zero, check_equivariance, cohomology,
                     synthesize_differential)
from .tangent import (AmbiguousSolution, alpha_classical_flip_check,
                      build_alpha, build_tangent, connection_linearity_check,
                      metric_classical_check, projectivity_certificate,
                      module_associativity_check, qg_generator_negative_test,
                      solve_braided_action, solve_connection, solve_metric)

SUITES = ("flatness", "koszul", "derham", "tangent", "metric", "connection")

# library errors that mean "a verified property is false", never a crash
CHECK_ERRORS = (NoSolution, MultiplicityMismatch, FlatnessViolation,
                TruncationOverflow, AmbiguousSolution, HeckeError,
                AssertionError, ValueError)


class ConfigError(ValueError):
    """Invalid flags or flag combinations (exit code 2)."""


class CheckFailure(RuntimeError):
    """At least one check failed (exit code 1)."""


# ---------------------------------------------------------------------------
# configuration

class RunConfig:
    """Validated run parameters; `describe()` is the deterministic echo."""

    def __init__(self, command, q="symbolic", seed=0, c="1", hbar="0",
                 degree=5, spin_cutoff=None, out=None, fmt="json", n=2):
        self.command = command
        if degree is None or degree < 2:
            raise ConfigError("degree must be at least 2")
        self.degree = degree
        self.q_mode = q
        self.seed = seed
        self.ring = self._resolve_ring(q, seed)
        try:
            self.c = Fraction(c)
            self.hbar = Fraction(hbar)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError("bad rational parameter: %s" % exc)
        if spin_cutoff is None:
            spin_cutoff = degree - 1
        if spin_cutoff > degree - 1:
            raise ConfigError("spin cutoff must be at most degree - 1")
        if spin_cutoff < 0:
            raise ConfigError("spin cutoff must be nonnegative")
        self.spin_cutoff = spin_cutoff
        self.out = out
        if fmt not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        self.fmt = fmt
        if n < 2:
            raise ConfigError("n (symmetry dimension) must be at least 2")
        self.n = n

    @staticmethod
    def _resolve_ring(q, seed):
        if q == "symbolic":
            return QRing()
        if q == "random":
            rng = random.Random(seed)
            while True:
                val = Fraction(rng.randint(2, 97), rng.randint(2, 97))
                if val != 1:
                    return QRing(val)
        try:
            val = Fraction(q)
        except (ValueError, ZeroDivisionError):
            raise ConfigError("q must be 'symbolic', 'random' or p/r")
        try:
            return QRing(val)
        except ValueError as exc:
            raise ConfigError(str(exc))

    def describe(self):
        return {
            "command": self.command,
            "q": self.q_mode,
            "q_value": self.ring.key(),
            "seed": self.seed,
            "c": str(self.c),
            "hbar": str(self.hbar),
            "degree": self.degree,
            "spin_cutoff": self.spin_cutoff,
            "n": self.n,
            "format": self.fmt,
        }


# ---------------------------------------------------------------------------
# serialization helpers

def _jsonable(x):
    if isinstance(x, (Scalar, Fraction)):
        return str(x)
    if isinstance(x, dict):
        return {_keystr(k): _jsonable(v) for k, v in sorted(
            x.items(), key=lambda kv: _keystr(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _keystr(k):
    if isinstance(k, tuple):
        return ",".join(str(t) for t in k)
    return str(k)


# ---------------------------------------------------------------------------
# product-table cache

def cache_dir():
    override = os.environ.get("QHCALC_CACHE_DIR")
    if override:
        return override
    return os.path.join(os.path.expanduser("~"), ".cache", "qhcalc")


def _cache_path(params):
    digest = hashlib.sha256(params.key().encode()).hexdigest()[:24]
    return os.path.join(cache_dir(), digest + ".json")


def _atomic_write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    tmp = path + ".tmp.%d" % os.getpid()
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _quarantine(path):
    os.replace(path, path + ".corrupt")


def cached_algebra(params, log=None):
    """Build the algebra, restoring any cached product table; corrupted
    cache entries are quarantined (renamed), never deleted."""
    alg = Hyperboloid(params)
    path = _cache_path(params)
    if os.path.exists(path):
        try:
            with open(path) as fh:
                state = json.load(fh)
            alg.load_table(state["table"])
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            _quarantine(path)
            if log:
                log("cache entry quarantined (%s): %s" % (path, exc))
    return alg


def save_table(alg):
    if not alg._table_dirty:
        return
    state = {"params": alg.params.key(), "table": alg.table_state()}
    _atomic_write(_cache_path(alg.params),
                  json.dumps(state, sort_keys=True))
    alg._table_dirty = False


def cache_command(action, log=print):
    d = cache_dir()
    entries = []
    if os.path.isdir(d):
        entries = sorted(f for f in os.listdir(d) if f.endswith(".json"))
    if action == "list":
        for f in entries:
            path = os.path.join(d, f)
            try:
                with open(path) as fh:
                    params = json.load(fh).get("params", "?")
            except (json.JSONDecodeError, OSError):
                params = "<unreadable>"
            log("%s  %8d bytes  %s" % (f, os.path.getsize(path), params))
        log("%d entries in %s" % (len(entries), d))
        return 0
    if action == "clear":
        removed = 0
        for f in entries:
            os.remove(os.path.join(d, f))
            removed += 1
        log("removed %d entries from %s" % (removed, d))
        return 0
    if action == "inspect":
        bad = 0
        for f in entries:
            path = os.path.join(d, f)
            try:
                with open(path) as fh:
                    state = json.load(fh)
                params = state["params"]
                nkeys = len(state["table"]["entries"])
                log("%s  ok  params=%s  products=%d" % (f, params, nkeys))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                _quarantine(path)
                bad += 1
                log("%s  CORRUPTED (quarantined as %s.corrupt): %s"
                    % (f, f, exc))
        log("%d entries, %d quarantined" % (len(entries), bad))
        return 0
    raise ConfigError("cache action must be list, clear or inspect")


# ---------------------------------------------------------------------------
# check runner

class Runner:
    def __init__(self, log):
        self.checks = []
        self.log = log

    def run(self, name, fn, skip_reason=None):
        if skip_reason is not None:
            self.checks.append({"name": name, "status": "skipped",
                                "detail": {"reason": skip_reason}})
            self.log("SKIP %s (%s)" % (name, skip_reason))
            return None
        t0 = time.monotonic()
        try:
            detail = fn() or {}
            status = "pass"
        except CHECK_ERRORS as exc:
            detail = {"error": "%s: %s" % (type(exc).__name__, exc)}
            status = "fail"
        dt = time.monotonic() - t0
        self.checks.append({"name": name, "status": status,
                            "detail": _jsonable(detail)})
        self.log("%s %s (%.2fs)" % (status.upper(), name, dt))
        return status == "pass"

    @property
    def failed(self):
        return any(c["status"] == "fail" for c in self.checks)


# ---------------------------------------------------------------------------
# suites

def suite_flatness(cfg, runner):
    n = min(cfg.degree, 5)
    points = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
              (Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))]
    if (cfg.c, cfg.hbar) not in points:
        points.append((cfg.c, cfg.hbar))
    for c, hbar in points:
        def check(c=c, hbar=hbar):
            alg = Hyperboloid(QHParams(cfg.ring, c, hbar, n))
            alg.require_flat()
            return {"dims": alg.dims,
                    "expected": [(d + 1) ** 2 for d in range(n + 1)]}
        runner.run("flatness[c=%s,hbar=%s]" % (c, hbar), check)


def suite_koszul(cfg, runner):
    box = {}

    def hecke():
        box["hecke"] = standard_hecke(cfg.n, cfg.ring)  # verifies axioms
        box["data"] = box["hecke"].quadratic_data()
        return {"n": cfg.n}
    if runner.run("hecke_axioms", hecke) is not True:
        return
    data = box["data"]
    comp_max = min(cfg.degree, 5 if cfg.n == 2 else 4)

    def complementarity():
        out = {}
        for deg in range(2, comp_max + 1):
            ok, report = complementarity_check(data, deg)
            out[deg] = report
            if not ok:
                raise NoSolution("complementarity fails at degree %d" % deg)
        return {"degrees": out}
    runner.run("complementarity", complementarity)

    def homology():
        out = {}
        for which in ("plus", "minus"):
            for total in range(2, min(cfg.degree, 5) + 1):
                for m in range(total):
                    if not d_squared_is_zero(data, which, m, total - m):
                        raise NoSolution(
                            "d^2 != 0 at (%s, %d, %d)" % (which, m, total - m))
                h, dims, ranks = koszul_homology(data, which, total)
                out["%s,%d" % (which, total)] = {"h": h, "dims": dims}
                if any(h[1:-1]):
                    raise NoSolution(
                        "interior homology at %s total %d: %s"
                        % (which, total, h))
        return {"complexes": out}
    runner.run("koszul_homology", homology)

    def poincare():
        ok, dp, dm, coeffs = poincare_identity(data, min(cfg.degree, 5))
        if not ok:
            raise NoSolution("Poincare series identity fails: %s" % coeffs)
        return {"dims_plus": dp, "dims_minus": dm, "product": coeffs}
    runner.run("poincare_series", poincare)

    def re_dims():
        dims, classical = re_algebra_dims(box["hecke"], 3)
        if dims != [1, 4, 10, 20] or dims != classical:
            raise NoSolution(
                "RE algebra dims %s != [1, 4, 10, 20]" % (dims,))
        return {"dims": dims, "classical": classical}
    runner.run("re_algebra_flatness", re_dims,
               skip_reason=None if cfg.n == 2 else "defined for n=2 only")


def suite_derham(cfg, runner, log):
    if cfg.hbar != 0:
        raise ConfigError("the de Rham suite requires hbar = 0")
    alg = cached_algebra(QHParams(cfg.ring, cfg.c, 0, cfg.degree), log)
    box = {}

    def build():
        box["om"] = [build_omega(alg, lvl) for lvl in range(3)]
        om = box["om"]
        cut = min(cfg.spin_cutoff, om[0].cutoff)
        return {"multiplicities": {
            lvl: [om[lvl].multiplicity(j) for j in range(cut + 1)]
            for lvl in range(3)}}
    if runner.run("omega_multiplicities", build) is not True:
        save_table(alg)
        return
    om0, om1, om2 = box["om"]

    def synth():
        box["d"] = synthesize_differential(om0, om1, om2)
        return {"d0": box["d"].d0, "d1": box["d"].d1}
    if runner.run("differential_synthesis", synth) is not True:
        save_table(alg)
        return
    data = box["d"]

    runner.run("equivariance", lambda: (
        {} if check_equivariance(om0, om1, om2, data)
        else _raise(NoSolution("differential is not equivariant"))))
    runner.run("d_squared_zero", lambda: (
        {} if check_composite_zero(om1, om2, data)
        else _raise(NoSolution("d1 d0 != 0"))))

    def coh():
        h, table, gens = cohomology(om0, om1, om2, data)
        if h != (1, 0, 1):
            raise NoSolution("cohomology %s != (1, 0, 1)" % (h,))
        return {"h": h, "per_spin": table}
    runner.run("cohomology", coh)
    save_table(alg)


def _raise(exc):
    raise exc


def suite_tangent(cfg, runner, log):
    if cfg.hbar != 0:
        raise ConfigError("the tangent suite requires hbar = 0")
    alg = cached_algebra(QHParams(cfg.ring, cfg.c, 0, cfg.degree), log)
    box = {}

    def build():
        box["tl"] = build_tangent(alg, "left")
        box["tr"] = build_tangent(alg, "right")
        cut = min(cfg.spin_cutoff, box["tl"].cutoff)
        return {"multiplicities":
                [box["tl"].multiplicity(j) for j in range(cut + 1)]}
    if runner.run("tangent_multiplicities", build) is not True:
        save_table(alg)
        return
    tl, tr = box["tl"], box["tr"]
    cap = min(cfg.spin_cutoff, 4)

    def braided():
        box["act"] = solve_braided_action(tl, alg, cap=cap)
        act = box["act"]
        return {"sigma": act.sigma, "nu": act.nu,
                "b": {k: v for k, v in act.b.items()},
                "nullspace_dims": act.nullspace_dims}
    if runner.run("braided_action", braided) is True:
        runner.run("module_associativity",
                   lambda: {"ok": module_associativity_check(box["act"], tl)})

    runner.run("qg_generator_negative", lambda: (
        {"rejected": True} if qg_generator_negative_test(alg)
        else _raise(NoSolution("quantum-group generators unexpectedly "
                               "define braided fields"))))

    def alpha():
        box["alpha"] = build_alpha(tl, tr)
        out = {"scalars": box["alpha"].scalars}
        if cfg.ring.symbolic:
            if not alpha_classical_flip_check(tl, tr, box["alpha"]):
                raise NoSolution("identification fails the q=1 flip check")
            out["classical_flip"] = True
        return out
    runner.run("left_right_identification", alpha)
    save_table(alg)
    return box


def suite_metric(cfg, runner, log):
    if cfg.hbar != 0:
        raise ConfigError("the metric suite requires hbar = 0")
    alg = cached_algebra(QHParams(cfg.ring, cfg.c, 0, cfg.degree), log)
    box = {}

    def uniqueness():
        tl = build_tangent(alg, "left")
        tr = build_tangent(alg, "right")
        md = solve_metric(tl, tr, alg)
        box["md"] = md
        if md.solution_dim != 1:
            raise NoSolution("metric solution space has dimension %d"
                             % md.solution_dim)
        return {"a": md.a, "b": md.b, "solution_dim": md.solution_dim}
    ok = runner.run("metric_uniqueness", uniqueness)

    classical_ok = cfg.ring.symbolic or cfg.ring.q == 1
    runner.run(
        "metric_classical_limit",
        lambda: {"scale": metric_classical_check(box["md"], alg)},
        skip_reason=None if (ok and classical_ok) else
        ("metric solve failed" if not ok
         else "no q=1 limit at a specialized q"))
    save_table(alg)


def suite_connection(cfg, runner, log):
    if cfg.hbar != 0:
        raise ConfigError("the connection suite requires hbar = 0")
    alg = cached_algebra(QHParams(cfg.ring, cfg.c, 0, cfg.degree), log)
    box = {}

    def solve():
        box["tl"] = build_tangent(alg, "left")
        cd = solve_connection(box["tl"], alg)
        box["cd"] = cd
        return {"coeffs": cd.coeffs, "solution_dim": cd.solution_dim}
    if runner.run("connection_solution", solve) is True:
        runner.run("connection_linearity", lambda: {
            "ok": connection_linearity_check(box["cd"], box["tl"], alg)})

    def projectivity():
        cert = projectivity_certificate(box["tl"], alg)
        expected = cfg.c != 0
        if cert.ok != expected:
            raise NoSolution(
                "projectivity certificate %s at c=%s (reason: %s)"
                % ("succeeded" if cert.ok else "failed", cfg.c, cert.reason))
        return {"ok": cert.ok, "gamma": cert.gamma, "reason": cert.reason}
    runner.run("projectivity", projectivity,
               skip_reason=None if "tl" in box else "tangent build failed")
    save_table(alg)


# ---------------------------------------------------------------------------
# report output

def render_report(cfg, checks):
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for c in checks:
        counts[c["status"]] += 1
    return {
        "tool": "qhcalc",
        "version": __version__,
        "config": cfg.describe(),
        "checks": checks,
        "summary": counts,
    }


def report_text(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    # csv: one row per flattened detail entry
    lines = ["check,status,key,value"]
    for c in report["checks"]:
        flat = _flatten(c["detail"])
        if not flat:
            flat = [("", "")]
        for key, value in flat:
            lines.append("%s,%s,%s,%s"
                         % (c["name"], c["status"], key, _csv_quote(value)))
    return "\n".join(lines) + "\n"


def _flatten(detail, prefix=""):
    out = []
    if isinstance(detail, dict):
        for k in sorted(detail, key=str):
            out.extend(_flatten(detail[k],
                                prefix + ("." if prefix else "") + str(k)))
    elif isinstance(detail, (list, tuple)):
        for i, v in enumerate(detail):
            out.extend(_flatten(v, "%s[%d]" % (prefix, i)))
    else:
        out.append((prefix, str(detail)))
    return out


def _csv_quote(s):
    if any(ch in s for ch in ",\"\n"):
        return '"' + s.replace('"', '""') + '"'
    return s


# ---------------------------------------------------------------------------
# entry point

def build_parser():
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Exact verification suites for the quantum "
                    "hyperboloid calculus.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUITES + ("all",):
        p = sub.add_parser(name, help="run the %s suite" % name)
        p.add_argument("--q", default="symbolic",
                       help="'symbolic', 'random' or a rational p/r")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for --q random")
        p.add_argument("--c", default="1", help="quadric level (rational)")
        p.add_argument("--hbar", default="0",
                       help="deformation step (rational)")
        p.add_argument("--degree", type=int, default=5,
                       help="filtration degree cap (>= 2)")
        p.add_argument("--spin-cutoff", type=int, default=None,
                       dest="spin_cutoff",
                       help="spin cap for reported sectors "
                            "(<= degree - 1)")
        p.add_argument("--out", default=None, help="report file path")
        p.add_argument("--format", default="json", choices=("json", "csv"),
                       dest="fmt", help="report format (json is canonical)")
        p.add_argument("--n", type=int, default=2,
                       help="symmetry dimension for the Koszul suite")
    pc = sub.add_parser("cache", help="manage the product-table cache")
    pc.add_argument("action", choices=("list", "clear", "inspect"))
    return parser


def run(cfg, log=print):
    runner = Runner(log)
    suites = SUITES if cfg.command == "all" else (cfg.command,)
    for name in suites:
        if name == "flatness":
            suite_flatness(cfg, runner)
        elif name == "koszul":
            suite_koszul(cfg, runner)
        elif name == "derham":
            suite_derham(cfg, runner, log)
        elif name == "tangent":
            suite_tangent(cfg, runner, log)
        elif name == "metric":
            suite_metric(cfg, runner, log)
        elif name == "connection":
            suite_connection(cfg, runner, log)
    return render_report(cfg, runner.checks), runner.failed


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "cache":
        try:
            return cache_command(args.action)
        except ConfigError as exc:
            print("configuration error: %s" % exc, file=sys.stderr)
            return 2
        except OSError as exc:
            print("cache I/O error: %s: %s"
                  % (getattr(exc, "filename", "?"), exc), file=sys.stderr)
            return 2
    try:
        cfg = RunConfig(args.command, q=args.q, seed=args.seed, c=args.c,
                        hbar=args.hbar, degree=args.degree,
                        spin_cutoff=args.spin_cutoff, out=args.out,
                        fmt=args.fmt, n=args.n)
        report, failed = run(cfg)
    except ConfigError as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2
    text = report_text(report, cfg.fmt)
    if cfg.out:
        _atomic_write(os.path.abspath(cfg.out), text)
        print("report written to %s" % cfg.out)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
