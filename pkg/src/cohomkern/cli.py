"""Command-line driver.

    cohomkern verify --group metacyclic:3,2,2 --family dihedral --degrees 0..1
    cohomkern cohomology --group metacyclic:5,4,2 --module M4 --degree 0
    cohomkern eta --group metacyclic:3,2,2 --degree 1 --sample 3
    cohomkern selfcheck

Exit codes: 0 when every claim passes, 1 when a claim fails, 2 on usage or
configuration errors. Options may also come from an INI file (section
[cohomkern]) given with --config; flags on the command line win.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .cohomology import (
    DEFAULT_SAMPLES,
    Cochain,
    cohomologous,
    cohomology_group,
    cor_res_check,
    eta_closed,
    eta_generic,
    shapiro_check,
    six_term_verify,
    verify_arason,
    verify_eta_basics,
    verify_eta_closed,
    verify_eta_lemma,
    verify_prism_lemma,
)
from .errors import CohomKernError, ConfigError, DegreeTooLarge, NotACocycle
from .group_ring import full_ring, trivial_module
from .groups import MetacyclicGroup, infer_family, make_group, parse_descriptor
from .report import STATUSES, Report
from .sequences import (
    build_sequence,
    sequence_family,
    verify_b_identities,
    verify_four_term,
    verify_kernel_diagram,
    verify_m4_structure,
    verify_oldlemma14,
)

CONFIG_SECTION = "cohomkern"
MODULE_NAMES = ("M1", "M2", "M3", "M4", "M3prime", "ring", "trivial")


@dataclass(frozen=True)
class Instance:
    d: int
    s: int
    t: int
    family: str  # sequence family

    @property
    def group_family(self) -> str:
        return "dihedral" if self.family == "dihedral-classic" else self.family

    @property
    def label(self) -> str:
        return f"metacyclic:{self.d},{self.s},{self.t}/{self.family}"

    def group(self) -> MetacyclicGroup:
        return make_group(self.d, self.s, self.t, self.group_family)


@dataclass
class RunConfig:
    instances: list[Instance]
    degrees: tuple[int, ...] = (0, 1)
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    json_path: str | None = None
    jobs: int = 1
    timing: bool = False
    verbose: bool = False
    echo: dict = field(default_factory=dict)


def parse_degrees(text: str) -> tuple[int, ...]:
    """"0..2" -> (0, 1, 2); "0,2" -> (0, 2); "1" -> (1,)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            out = tuple(range(lo, hi + 1))
        else:
            out = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise ConfigError(f"degrees must look like 0..1 or 0,2, got {text!r}") from None
    if not out or min(out) < 0:
        raise ConfigError(f"degree range {text!r} is empty or negative")
    return out


def resolve_instance(descriptor: str, family: str | None) -> Instance:
    d, s, t = parse_descriptor(descriptor)
    group_family = family or infer_family(d, s, t)
    if group_family == "dihedral-classic":
        group_family = "dihedral"
    G = make_group(d, s, t, group_family)
    return Instance(d, s, t, sequence_family(G, family or group_family))


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ConfigError(f"cannot read config file {path}")
    if CONFIG_SECTION not in parser:
        raise ConfigError(f"config file {path} has no [{CONFIG_SECTION}] section")
    return dict(parser[CONFIG_SECTION])


def _pick(flag, conf: dict, key: str, default, cast=str):
    if flag is not None:
        return flag
    if key in conf:
        try:
            return cast(conf[key])
        except ValueError:
            raise ConfigError(f"bad value for {key} in config: {conf[key]!r}") from None
    return default


def _as_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


def build_config(args: argparse.Namespace) -> RunConfig:
    conf = _read_config(getattr(args, "config", None))
    groups = args.group or conf.get("group", "").split()
    if not groups:
        raise ConfigError("at least one --group is required")
    family = _pick(args.family, conf, "family", None)
    degrees = parse_degrees(_pick(getattr(args, "degrees", None), conf, "degrees", "0..1"))
    samples = _pick(args.samples, conf, "samples", DEFAULT_SAMPLES, int)
    seed = _pick(args.seed, conf, "seed", 0, int)
    jobs = _pick(getattr(args, "jobs", None), conf, "jobs", 1, int)
    json_path = _pick(args.json, conf, "json", None)
    timing = args.timing or _as_bool(conf.get("timing", "false"))
    if samples < 1 or jobs < 1:
        raise ConfigError("samples and jobs must be positive")
    instances = [resolve_instance(g, family) for g in groups]
    echo = {"groups": [i.label for i in instances], "degrees": list(degrees), "samples": samples, "seed": seed}
    return RunConfig(instances, degrees, samples, seed, json_path, jobs, timing,
                     getattr(args, "verbose", False), echo)


def run_instance(inst: Instance, degrees: tuple[int, ...], samples: int, seed: int) -> Report:
    """The full verification suite for one group and family."""
    G = inst.group()
    rep = Report()
    seq = build_sequence(G, inst.family)
    rep.extend(verify_four_term(seq))
    if inst.family == "semidirect":
        rep.extend(verify_b_identities(G))
    if G.s % 2 == 0:
        rep.extend(verify_m4_structure(G, inst.family))
        rep.extend(verify_kernel_diagram(G, inst.family))
    if G.s == 2:
        rep.extend(verify_oldlemma14(G, inst.family))
    for n in degrees:
        try:
            rep.extend(six_term_verify(seq, n))
        except DegreeTooLarge as exc:
            rep.skip(f"six.n{n}", str(exc))
            continue
        rep.extend(verify_prism_lemma(seq, n))
        rep.extend(verify_eta_lemma(seq, n))
        rep.extend(verify_eta_basics(seq, n, samples, seed))
        rep.extend(verify_eta_closed(seq, n, samples, seed))
    return rep


def _instance_job(args: tuple) -> tuple[Instance, Report]:
    inst = args[0]
    try:
        return inst, run_instance(*args)
    except CohomKernError as exc:
        rep = Report()
        rep.add("instance.error", False, f"{type(exc).__name__}: {exc}")
        return inst, rep


def report_json(cfg: RunConfig, results: list[tuple[Instance, Report]]) -> dict:
    total = {s: 0 for s in STATUSES}
    blocks = []
    for inst, rep in results:
        counts = rep.counts()
        for s in STATUSES:
            total[s] += counts[s]
        blocks.append({
            "instance": inst.label,
            "claims": [c.to_dict(cfg.timing) for c in rep.claims],
            "records": rep.records,
            "ranks": rep.ranks,
            "summary": counts,
        })
    return {"tool": "cohomkern", "version": __version__, "config": cfg.echo,
            "instances": blocks, "summary": total}


def dump_json(data: dict, path: str) -> None:
    text = json.dumps(data, indent=2, sort_keys=True, default=_jsonable) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    jobs = [(inst, cfg.degrees, cfg.samples, cfg.seed) for inst in cfg.instances]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_instance_job, jobs))
    else:
        results = [_instance_job(j) for j in jobs]
    failed = False
    for inst, rep in results:
        counts = rep.counts()
        failed |= counts["fail"] > 0
        print(f"{inst.label}: {counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip")
        for c in rep.claims:
            if cfg.verbose or c.status == "fail":
                timing = f" [{c.seconds:.3f}s]" if cfg.timing else ""
                print(f"  {c.status:4} {c.id}{timing} {c.detail}".rstrip())
    if cfg.json_path:
        dump_json(report_json(cfg, results), cfg.json_path)
    return 1 if failed else 0


def _module_for(seq, G: MetacyclicGroup, name: str):
    if name == "trivial":
        return trivial_module(G, G.d, name="Z/d")
    if name == "ring":
        return full_ring(G, G.d).gmodule()
    if name == "M3prime":
        return seq.delta_reduced
    return seq.reduced(int(name[1]) - 1)


def cmd_cohomology(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    if len(cfg.instances) != 1:
        raise ConfigError("cohomology takes exactly one --group")
    inst = cfg.instances[0]
    G = inst.group()
    seq = build_sequence(G, inst.family) if args.module not in ("trivial", "ring") else None
    module = _module_for(seq, G, args.module)
    H = cohomology_group(module, args.degree)
    print(f"H^{args.degree}({inst.label}, {args.module} mod {G.d}) = {H.describe()}")
    for k, c in enumerate(H.generator_cochains()):
        nz = int(np.count_nonzero(c.table.any(axis=1)))
        print(f"  generator {k}: order {H.invariant_factors[k]}, {nz} nonzero entries")
    if cfg.json_path:
        dump_json({"instance": inst.label, "module": args.module, **H.to_json()}, cfg.json_path)
    return 0


def cmd_eta(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    if len(cfg.instances) != 1:
        raise ConfigError("eta takes exactly one --group")
    inst = cfg.instances[0]
    G = inst.group()
    seq = build_sequence(G, inst.family)
    M4, M1 = seq.reduced(3), seq.reduced(0)
    if args.cocycle:
        with open(args.cocycle, encoding="utf-8") as fh:
            cochains = [Cochain.from_json(json.load(fh), M4)]
        n = cochains[0].degree
    else:
        n = args.degree
        H = cohomology_group(M4, n)
        rows = H.sample_cocycles(args.sample, cfg.seed)
        cochains = [Cochain.from_vector(M4, n, v) for v in rows]
    outputs, worst = [], 0
    for c in cochains:
        if not c.is_cocycle():
            raise NotACocycle("the input cochain is not a cocycle")
        gen, closed = eta_generic(seq, c), eta_closed(seq, c, args.variant)
        if gen == closed:
            verdict = "equal"
        elif cohomologous(M1, n + 1, gen.vector, closed.vector)[0]:
            verdict = "cohomologous"
        else:
            verdict, worst = "different", 1
        print(f"degree {n} cocycle with {int(np.count_nonzero(c.table.any(axis=1)))} nonzero entries: {verdict}")
        outputs.append({"input": c.to_json(), "generic": gen.to_json(), "closed": closed.to_json(),
                        "verdict": verdict})
    if cfg.json_path:
        dump_json({"instance": inst.label, "variant": args.variant, "results": outputs}, cfg.json_path)
    return worst


def cmd_selfcheck(args: argparse.Namespace) -> int:
    """Engine checks: cyclic cohomology, Arason, Shapiro and cor-res."""
    rep = Report()
    for d in (2, 3, 5):
        G = make_group(d, 1, 1, "cyclic")
        M = trivial_module(G, d, name="Z/d")
        for n in (0, 1, 2):
            f = cohomology_group(M, n).invariant_factors
            rep.add(f"cyclic.Z{d}.H{n}", f == [d], f"invariant factors {f}")
    rep.extend(verify_arason(samples=args.samples or DEFAULT_SAMPLES, seed=args.seed or 0))
    for d, s, t, fam in ((3, 2, 2, "dihedral"), (5, 4, 2, "semidirect")):
        G = make_group(d, s, t, fam)
        seq = build_sequence(G, sequence_family(G, fam))
        for name in ("H", "J"):
            S = G.subgroup(name)
            for n in (0, 1):
                rep.extend(shapiro_check(G, S, n, d))
                rep.extend(cor_res_check(seq.reduced(3), S, n))
    counts = rep.counts()
    for c in rep.claims:
        if args.verbose or c.status == "fail":
            print(f"  {c.status:4} {c.id} {c.detail}".rstrip())
    print(f"selfcheck: {counts['pass']} pass, {counts['fail']} fail, {counts['skip']} skip")
    if args.json:
        dump_json({"claims": [c.to_dict(args.timing) for c in rep.claims], "summary": counts}, args.json)
    return 1 if counts["fail"] else 0


def _common(p: argparse.ArgumentParser, many: bool = False) -> None:
    p.add_argument("--group", action="append", help="metacyclic:d,s,t" + (" (repeatable)" if many else ""))
    p.add_argument("--family", choices=("cyclic", "dihedral", "dihedral-classic", "semidirect"))
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")
    p.add_argument("--config", metavar="INI", help="read defaults from the [cohomkern] section")
    p.add_argument("--timing", action="store_true", help="include per-claim timings")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohomkern", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cohomkern {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verification suite on one or more groups")
    _common(p, many=True)
    p.add_argument("--degrees", help="six-term degrees, e.g. 0..1 (default)")
    p.add_argument("--jobs", type=int, help="worker processes for independent groups")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohomology", help="invariant factors and generators of H^n")
    _common(p)
    p.add_argument("--module", choices=MODULE_NAMES, default="M4")
    p.add_argument("--degree", type=int, default=0)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("eta", help="generic and closed-form connecting map on a cocycle")
    _common(p)
    p.add_argument("--degree", type=int, default=0)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--cocycle", metavar="FILE", help="cochain JSON in the reduced M4")
    src.add_argument("--sample", type=int, default=1, metavar="K", help="sample K cocycles (default 1)")
    p.add_argument("--variant", choices=("derived", "stated"), default="derived")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("selfcheck", help="engine checks on small groups")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--timing", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DegreeTooLarge, NotACocycle) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
