"""Command line front end.

One executable, `cyclocover`, with subcommands that mirror the library
surface: datum inspection, mu-ordinary polygons, Hasse-Witt entries and
chain composites, witness search, per-prime censuses, multi-prime
surveys, clutching, and the f(a,b,c) toolkit.

Configuration is resolved lowest to highest: built-in defaults, a
key=value config file (--config), the CYCLOCOVER_CACHE_DIR and
CYCLOCOVER_WORKERS environment variables, explicit flags.  A seed is
required only by commands that factor polynomials (witness); everything
else is deterministic without one.  Identical invocations print
byte-identical JSON.

Census records can be cached in a JSON-lines file under cache_dir.  The
key is a content hash of (command, datum, p, version), so a hit replays
exactly the record a fresh run would produce; census and survey share
the cache, and surveys append only the primes they had to compute.

Exit codes: 0 success, 2 hypothesis not met, 3 budget exceeded,
4 invalid input.  Errors print one line to stderr in the form
`error[<code>]: <message>` with the stable code slug of the exception.
"""

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .errors import (
    CyclocoverError,
    DegreeBudgetExceeded,
    HypothesisNotMet,
    InvalidInput,
    ParamOutOfRange,
)
from .fabc import FabcParams, fabc
from .fabc import strip as fabc_strip
from .ff import DEFAULT_TERM_BUDGET, ExtFieldElem, FpMultiPoly
from .hassewitt import (
    OrbitContext,
    h0,
    h1,
    nonordinary_witness,
    phi_entry,
    psi_entry,
    specialize_infty,
    witness_count,
)
from .monodromy import (
    MonodromyDatum,
    canonicalize,
    clutch,
    frobenius_orbits,
    genus,
    parse_datum,
    signature,
)
from .strata import census, mu_ordinary_family, ord_polygon, polygon_sum, survey_primes

_OUTPUTS = ("human", "json", "csv")
_CONFIG_KEYS = ("seed", "dmax", "term_budget", "workers", "output", "cache_dir")
_INT_KEYS = frozenset(("seed", "dmax", "term_budget", "workers"))


@dataclass(frozen=True)
class RunConfig:
    """Resolved run options shared by every subcommand."""

    seed: Optional[int] = None
    dmax: int = 4
    term_budget: int = DEFAULT_TERM_BUDGET
    workers: int = 1
    output: str = "human"
    cache_dir: Optional[str] = None

    def __post_init__(self):
        if self.term_budget < 1:
            raise ParamOutOfRange(f"term budget must be >= 1: got {self.term_budget}")
        if self.workers < 1:
            raise ParamOutOfRange(f"workers must be >= 1: got {self.workers}")
        if self.dmax < 1:
            raise ParamOutOfRange(f"dmax must be >= 1: got {self.dmax}")
        if self.output not in _OUTPUTS:
            raise InvalidInput(f"output must be one of {', '.join(_OUTPUTS)}")
        if self.seed is not None and not -(2**63) <= self.seed < 2**63:
            raise ParamOutOfRange("seed must fit in 64 bits")


def _coerce_int(name: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InvalidInput(f"{name} must be an integer: got {value!r}") from None


def read_config_file(path: str) -> dict:
    """key=value per line; blank lines and '#' comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise InvalidInput(f"cannot read config file {path}: {e}") from None
    out = {}
    for no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{no}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise InvalidInput(f"{path}:{no}: unknown key {key!r}")
        out[key] = value
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {
        "seed": None,
        "dmax": 4,
        "term_budget": DEFAULT_TERM_BUDGET,
        "workers": 1,
        "output": "human",
        "cache_dir": None,
    }
    config_path = getattr(args, "config", None)
    if config_path:
        for key, raw in read_config_file(config_path).items():
            values[key] = _coerce_int(key, raw) if key in _INT_KEYS else raw
    env_cache = os.environ.get("CYCLOCOVER_CACHE_DIR")
    if env_cache:
        values["cache_dir"] = env_cache
    env_workers = os.environ.get("CYCLOCOVER_WORKERS")
    if env_workers:
        values["workers"] = _coerce_int("CYCLOCOVER_WORKERS", env_workers)
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# output helpers

def _emit(line: str) -> None:
    sys.stdout.write(line + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _multi_text(f: FpMultiPoly) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for exps, c in sorted(f.terms.items()):
        piece = [str(c)]
        for i, e in enumerate(exps):
            if e == 1:
                piece.append(f"x{i + 1}")
            elif e > 1:
                piece.append(f"x{i + 1}^{e}")
        parts.append("*".join(piece))
    return " + ".join(parts)


def _csv_escape(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def _census_csv_rows(records: list) -> list:
    rows = ["p,class,label,dim,nonempty,certificate"]
    for rec in records:
        for s in rec["strata"]:
            cert = s["certificate"] if s["certificate"] is not None else ""
            rows.append(
                f"{rec['p']},{rec['class']},{s['label']},{s['dim']},"
                f"{str(s['nonempty']).lower()},{_csv_escape(cert)}"
            )
    return rows


def _census_human_rows(rec: dict) -> list:
    rows = [f"p={rec['p']} class={rec['class']}"]
    for s in rec["strata"]:
        state = "nonempty" if s["nonempty"] else "empty"
        line = f"  {s['label']:<11} dim {s['dim']}  {state}"
        if s["certificate"] is not None:
            line += f"  cert {s['certificate']}"
        rows.append(line)
    return rows


# ---------------------------------------------------------------------------
# census record cache

class RecordCache:
    """Append-only JSON-lines store of census records.

    Inert when no cache_dir is configured.  Unreadable lines are treated
    as misses so a damaged file degrades to recomputation, never to a
    wrong answer."""

    def __init__(self, cache_dir: Optional[str]):
        self.path = os.path.join(cache_dir, "census-cache.jsonl") if cache_dir else None
        self._records: dict = {}
        if self.path and os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for raw in fh:
                    raw = raw.strip()
                    if not raw:
                        continue
                    try:
                        obj = json.loads(raw)
                    except ValueError:
                        continue
                    if isinstance(obj, dict) and "key" in obj and "record" in obj:
                        self._records[obj["key"]] = obj["record"]

    @staticmethod
    def key(datum: MonodromyDatum, p: int) -> str:
        payload = json.dumps(
            {"command": "census", "datum": [datum.m, datum.r, list(datum.a)],
             "p": p, "version": __version__},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def get(self, key: str) -> Optional[dict]:
        return self._records.get(key)

    def put(self, key: str, record: dict) -> None:
        if key in self._records:
            return
        self._records[key] = record
        if self.path is None:
            return
        os.makedirs(os.path.dirname(self.path), exist_ok=True)
        line = json.dumps({"key": key, "record": record},
                          sort_keys=True, separators=(",", ":"))
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")


def _census_record(datum: MonodromyDatum, p: int, cfg: RunConfig,
                   cache: RecordCache) -> dict:
    key = RecordCache.key(datum, p)
    hit = cache.get(key)
    if hit is not None:
        return hit
    # the library refuses p <= 3m by default because the nonemptiness
    # certificates are only guaranteed above that bound; interactive use
    # wants the small primes anyway, so the command line opts in
    record = census(datum, p, allow_small=True, budget=cfg.term_budget).to_json_record()
    cache.put(key, record)
    return record


def _survey_worker(task):
    datum, p, budget = task
    return p, census(datum, p, allow_small=True, budget=budget).to_json_record()


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_datum(args, cfg: RunConfig) -> None:
    d = parse_datum(args.datum)
    op = args.op
    if op == "validate":
        if cfg.output == "json":
            _emit_json({"a": list(d.a), "genus": genus(d), "m": d.m, "r": d.r,
                        "valid": True})
        else:
            _emit(f"ok: {d.to_text()} (genus {genus(d)})")
    elif op == "canon":
        c = canonicalize(d)
        if cfg.output == "json":
            _emit_json(c.to_json())
        else:
            _emit(c.to_text())
    elif op == "signature":
        shown = list(signature(d)[1:])
        if cfg.output == "json":
            _emit_json({"signature": shown})
        else:
            _emit(",".join(str(x) for x in shown))
    elif op == "genus":
        if cfg.output == "json":
            _emit_json({"genus": genus(d)})
        else:
            _emit(str(genus(d)))
    else:  # orbits
        if args.p is None:
            raise InvalidInput("datum orbits needs a prime: pass -p")
        orbits = frobenius_orbits(d.m, args.p, signature(d))
        if cfg.output == "json":
            _emit_json({"orbits": [
                {"g": o.gO, "length": o.l, "members": list(o.members)}
                for o in orbits
            ]})
        else:
            for o in orbits:
                _emit(f"({' '.join(str(x) for x in o.members)})  l={o.l}  g={o.gO}")


def _cmd_mu_ord(args, cfg: RunConfig) -> None:
    d = parse_datum(args.datum)
    poly = mu_ordinary_family(d, args.p)
    if cfg.output == "json":
        _emit_json({"class": args.p % d.m, "polygon": poly.to_json()})
    else:
        _emit(poly.to_text())


def _cmd_hw(args, cfg: RunConfig) -> None:
    d = parse_datum(args.datum)
    p = args.p
    kind = args.kind
    if kind in ("phi", "psi"):
        for name in ("tau", "jp", "j"):
            if getattr(args, name) is None:
                raise InvalidInput(f"hw {kind} needs --tau, --jp and --j")
        build = phi_entry if kind == "phi" else psi_entry
        entry = build(d, p, args.tau, args.jp, args.j, cfg.term_budget)
        if args.specialize:
            uni = specialize_infty(entry)
            if cfg.output == "json":
                _emit_json({"entry": uni.to_json(), "specialized": True})
            else:
                _emit(uni.to_text())
        else:
            if cfg.output == "json":
                _emit_json({"entry": entry.to_json(), "specialized": False})
            else:
                _emit(_multi_text(entry))
    else:  # h1 | h0
        if args.b0 is None:
            raise InvalidInput(f"hw {kind} needs a base character: pass --b0")
        ctx = OrbitContext(d, p, args.b0)
        if kind == "h1":
            poly = h1(ctx, cfg.term_budget)
            if cfg.output == "json":
                _emit_json({"chars": list(ctx.chars), "h1": poly.to_json(),
                            "i0": ctx.i0})
            else:
                _emit(poly.to_text())
        else:
            poly = h0(ctx, cfg.term_budget)
            if cfg.output == "json":
                _emit_json({"chars": list(ctx.chars), "h0": poly.to_json()})
            else:
                _emit(_multi_text(poly))


def _cmd_witness(args, cfg: RunConfig) -> None:
    if cfg.seed is None:
        raise InvalidInput("witness factors polynomials; --seed is required")
    d = parse_datum(args.datum)
    ctx = OrbitContext(d, args.p, args.b0)
    w = nonordinary_witness(ctx, cfg.dmax, cfg.seed, cfg.term_budget)
    count = witness_count(ctx, cfg.term_budget)
    if w is None:
        if cfg.output == "json":
            _emit_json({"alpha": None, "branch_order": None, "certificate": None,
                        "count": 0, "degree": 0, "found": False})
        else:
            _emit("no roots outside {0, 1}: every smooth member here is ordinary")
        return
    alpha_json: object = None
    if isinstance(w.alpha, ExtFieldElem):
        alpha_json = w.alpha.to_json()
    elif w.alpha is not None:
        alpha_json = int(w.alpha)
    if cfg.output == "json":
        _emit_json({
            "alpha": alpha_json,
            "branch_order": list(w.branch_order),
            "certificate": w.certificate.to_json(),
            "count": count,
            "degree": w.degree,
            "found": w.alpha is not None,
        })
        return
    order = "(" + ", ".join(str(x) for x in w.branch_order) + ")"
    if w.alpha is None:
        _emit(f"no witness of degree <= {cfg.dmax}; smallest certificate has "
              f"degree {w.degree}: {w.certificate.to_text()}")
    elif w.degree == 1:
        _emit(f"witness alpha = {w.alpha} in F_{args.p}; certificate "
              f"{w.certificate.to_text()}; branch order {order}")
    else:
        _emit(f"witness of degree {w.degree}: generator of "
              f"F_{args.p}[t]/({w.certificate.to_text()}); branch order {order}")
    _emit(f"{count} distinct non-ordinary parameters outside {{0, 1}}")


def _cmd_census(args, cfg: RunConfig) -> None:
    d = parse_datum(args.datum)
    cache = RecordCache(cfg.cache_dir)
    record = _census_record(d, args.p, cfg, cache)
    if cfg.output == "json":
        _emit_json(record)
    elif cfg.output == "csv":
        for row in _census_csv_rows([record]):
            _emit(row)
    else:
        _emit(f"datum {d.to_text()}")
        for row in _census_human_rows(record):
            _emit(row)


def _cmd_survey(args, cfg: RunConfig) -> None:
    d = parse_datum(args.datum)
    primes = survey_primes(d.m, args.congruence, args.count)
    cache = RecordCache(cfg.cache_dir)
    by_p: dict = {}
    missing = []
    for p in primes:
        hit = cache.get(RecordCache.key(d, p))
        if hit is not None:
            by_p[p] = hit
        else:
            missing.append(p)
    if missing:
        tasks = [(d, p, cfg.term_budget) for p in missing]
        if cfg.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                computed = list(pool.map(_survey_worker, tasks))
        else:
            computed = [_survey_worker(t) for t in tasks]
        for p, record in computed:
            cache.put(RecordCache.key(d, p), record)
            by_p[p] = record
    records = [by_p[p] for p in primes]
    if cfg.output == "json":
        for record in records:
            _emit_json(record)
        return
    if cfg.output == "csv":
        for row in _census_csv_rows(records):
            _emit(row)
        return
    counts: dict = {}
    for rec in records:
        for s in rec["strata"]:
            if s["nonempty"]:
                counts[s["label"]] = counts.get(s["label"], 0) + 1
    for rec in records:
        labels = " ".join(
            f"{s['label']}={'+' if s['nonempty'] else '-'}" for s in rec["strata"]
        )
        _emit(f"p={rec['p']:<6} {labels}")
    if records:
        bottom = records[0]["strata"][-1]["label"]
        _emit(f"{counts.get(bottom, 0)}/{len(records)} {bottom.lower()}-nonempty")


def _cmd_clutch(args, cfg: RunConfig) -> None:
    d1 = parse_datum(args.datum1)
    d2 = parse_datum(args.datum2)
    joined, eps = clutch(d1, d2)
    payload = {"datum": joined.to_json(), "epsilon": eps}
    lines = [f"clutched datum {joined.to_text()}  eps={eps}"]
    if args.p is not None:
        whole = mu_ordinary_family(joined, args.p)
        composed = polygon_sum(
            polygon_sum(mu_ordinary_family(d1, args.p), mu_ordinary_family(d2, args.p)),
            ord_polygon(eps),
        )
        payload["polygon"] = whole.to_json()
        payload["composed"] = composed.to_json()
        payload["agrees"] = composed == whole
        lines.append(f"mu-ordinary polygon   {whole.to_text()}")
        lines.append(f"composed from pieces  {composed.to_text()}")
        lines.append(f"agreement: {str(composed == whole).lower()}")
    if cfg.output == "json":
        _emit_json(payload)
    else:
        for line in lines:
            _emit(line)


def _cmd_fabc(args, cfg: RunConfig) -> None:
    params = FabcParams(args.a, args.b, args.c, args.p)
    if args.mode == "strip":
        s = fabc_strip(params)
        reduced_poly = fabc(s.reduced)
        if cfg.output == "json":
            _emit_json({
                "reduced": {"a": s.reduced.a, "b": s.reduced.b,
                            "c": s.reduced.c, "p": s.reduced.p},
                "reduced_poly": reduced_poly.to_json(),
                "sign": s.sign,
                "t1_power": s.t1_power,
                "t_power": s.t_power,
            })
        else:
            _emit(f"sign={s.sign} t^{s.t_power} (t-1)^{s.t1_power}")
            _emit(f"reduced f({s.reduced.a},{s.reduced.b};{s.reduced.c}) = "
                  f"{reduced_poly.to_text()}")
    else:
        poly = fabc(params)
        if cfg.output == "json":
            _emit_json({"poly": poly.to_json()})
        else:
            _emit(poly.to_text())


_HANDLERS = {
    "datum": _cmd_datum,
    "mu-ord": _cmd_mu_ord,
    "hw": _cmd_hw,
    "witness": _cmd_witness,
    "census": _cmd_census,
    "survey": _cmd_survey,
    "clutch": _cmd_clutch,
    "fabc": _cmd_fabc,
}

_CSV_COMMANDS = frozenset(("census", "survey"))


# ---------------------------------------------------------------------------
# parser

class _Parser(argparse.ArgumentParser):
    """argparse that reports bad usage through the package error channel
    instead of exiting with its own status convention."""

    def error(self, message):
        raise InvalidInput(message)


def _common_options() -> argparse.ArgumentParser:
    par = argparse.ArgumentParser(add_help=False)
    g = par.add_argument_group("run options")
    g.add_argument("--seed", type=int, default=None,
                   help="RNG seed; required by commands that factor polynomials")
    g.add_argument("--dmax", type=int, default=None,
                   help="largest extension degree searched for witnesses")
    g.add_argument("--term-budget", type=int, default=None,
                   help="cap on multivariate term count")
    g.add_argument("--workers", type=int, default=None,
                   help="worker processes (survey only)")
    g.add_argument("-o", "--output", choices=list(_OUTPUTS), default=None)
    g.add_argument("--cache-dir", default=None,
                   help="directory for the JSON-lines census cache")
    g.add_argument("--config", default=None,
                   help="key=value file merged below env vars and flags")
    return par


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="cyclocover",
                     description="arithmetic of cyclic covers of the line")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("datum", parents=[common],
                         help="validate and inspect a monodromy datum")
    sp.add_argument("op", choices=["validate", "canon", "signature", "genus",
                                   "orbits"])
    sp.add_argument("datum", help="m:r:a1,...,ar")
    sp.add_argument("-p", "--prime", dest="p", type=int, default=None,
                    help="prime (orbits only)")

    sp = subs.add_parser("mu-ord", parents=[common],
                         help="mu-ordinary Newton polygon of the family")
    sp.add_argument("datum")
    sp.add_argument("-p", "--prime", dest="p", type=int, required=True)

    sp = subs.add_parser("hw", parents=[common],
                         help="Hasse-Witt entries and chain composites")
    sp.add_argument("kind", choices=["phi", "psi", "h1", "h0"])
    sp.add_argument("datum")
    sp.add_argument("-p", "--prime", dest="p", type=int, required=True)
    sp.add_argument("--tau", type=int, default=None, help="character index")
    sp.add_argument("--jp", type=int, default=None, help="row index")
    sp.add_argument("--j", type=int, default=None, help="column index")
    sp.add_argument("--b0", type=int, default=None,
                    help="base character of the chain (h1/h0)")
    sp.add_argument("--specialize", action="store_true",
                    help="send the last branch point to infinity (phi/psi)")

    sp = subs.add_parser("witness", parents=[common],
                         help="certified non-mu-ordinary member of a family")
    sp.add_argument("datum")
    sp.add_argument("-p", "--prime", dest="p", type=int, required=True)
    sp.add_argument("--b0", type=int, required=True, help="base character")

    sp = subs.add_parser("census", parents=[common],
                         help="stratum-by-stratum report at one prime")
    sp.add_argument("datum")
    sp.add_argument("-p", "--prime", dest="p", type=int, required=True)

    sp = subs.add_parser("survey", parents=[common],
                         help="census over the first primes in a residue class")
    sp.add_argument("datum")
    sp.add_argument("--class", dest="congruence", type=int, required=True,
                    help="residue class of p mod m")
    sp.add_argument("--count", type=int, required=True,
                    help="how many primes to visit")

    sp = subs.add_parser("clutch", parents=[common],
                         help="glue two data and compose their polygons")
    sp.add_argument("datum1")
    sp.add_argument("datum2")
    sp.add_argument("-p", "--prime", dest="p", type=int, default=None,
                    help="also compare mu-ordinary polygons at this prime")

    sp = subs.add_parser("fabc", parents=[common],
                         help="truncated (1+t)^a (1+xt)^b coefficient polynomials")
    sp.add_argument("mode", nargs="?", choices=["strip"], default=None,
                    help="strip: pull the roots at 0 and 1 out front")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("-p", "--prime", dest="p", type=int, required=True)

    return parser


def _fail(exc: CyclocoverError, status: int) -> int:
    sys.stderr.write(f"error[{exc.code}]: {exc}\n")
    return status


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = build_config(args)
        if cfg.output == "csv" and args.command not in _CSV_COMMANDS:
            raise InvalidInput("csv output is only available for census and survey")
        _HANDLERS[args.command](args, cfg)
        return 0
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code is None else int(exc.code)
    except BrokenPipeError:
        # consumer closed the pipe (e.g. piping into head); exit quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except DegreeBudgetExceeded as exc:
        return _fail(exc, 3)
    except HypothesisNotMet as exc:
        return _fail(exc, 2)
    except CyclocoverError as exc:
        return _fail(exc, 4)


if __name__ == "__main__":
    sys.exit(main())
