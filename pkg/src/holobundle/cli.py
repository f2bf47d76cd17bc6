"""Command line interface.

Exit codes: 0 success, 1 check suite found violations, 2 config or
usage error, 3 domain error (input outside a decision rule's hypotheses),
4 strict mode and a verdict was not covered.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from .blowup import (
    BlowupMap,
    blow_up,
    decompose_c1,
    m_blowup_inequality_check,
    normalize_twist,
    pullback_invariance_check,
    pushforward_delta_bound,
)
from .bundles import discriminant, euler_characteristic, pontrjagin_p1, w2_vanishes
from .checks import run_suite
from .config import COMMANDS, OUTPUT_FORMATS, ConfigError, JobConfig, parse_config
from .criteria import (
    NOT_COVERED,
    SurfaceKind,
    Verdict,
    decide_class_vii,
    decide_filtrable_generic,
    decide_k3,
)
from .errors import DomainError
from .lattice import IntersectionLattice
from .minvariant import m_compute

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_NOT_COVERED = 4


def _bool_text(flag: bool) -> str:
    return "true" if flag else "false"


def _vector_text(v: Sequence[int]) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


def _decomposition_text(dec, structured: bool) -> str:
    if structured:
        return ";".join(",".join(str(c) for c in mu) for mu in dec)
    return "; ".join(_vector_text(mu) for mu in dec)


def _line(structured: bool, key: str, value: str) -> str:
    return f"{key}={value}" if structured else f"{key} = {value}"


def _run_m(cfg: JobConfig) -> Tuple[List[str], int]:
    res = m_compute(cfg.surface.lattice, cfg.bundle.rank, cfg.bundle.c1)
    s = cfg.output_format == "structured"
    lines = [
        _line(s, "m", str(res.value)),
        _line(s, "scaled_objective" if s else "scaled objective", str(res.scaled_objective)),
        _line(s, "decomposition", _decomposition_text(res.decomposition, s)),
        _line(s, "certified", _bool_text(res.certified)),
    ]
    return lines, EXIT_OK


def _run_delta(cfg: JobConfig) -> Tuple[List[str], int]:
    lat, bundle = cfg.surface.lattice, cfg.bundle
    s = cfg.output_format == "structured"
    lines = [
        _line(s, "delta", str(discriminant(lat, bundle))),
        _line(s, "p1", str(pontrjagin_p1(lat, bundle))),
    ]
    if bundle.rank == 2:
        lines.append(_line(s, "w2_vanishes", _bool_text(w2_vanishes(lat, bundle))))
    return lines, EXIT_OK


def _run_chi(cfg: JobConfig) -> Tuple[List[str], int]:
    chi, integral = euler_characteristic(cfg.surface, cfg.bundle)
    s = cfg.output_format == "structured"
    lines = [
        _line(s, "chi", str(chi)),
        _line(s, "integral", _bool_text(integral)),
    ]
    return lines, EXIT_OK


def _dispatch_decide(cfg: JobConfig) -> Verdict:
    if cfg.surface.kind is SurfaceKind.K3:
        return decide_k3(cfg.surface, cfg.bundle)
    if cfg.surface.kind is SurfaceKind.CLASS_VII:
        return decide_class_vii(cfg.surface, cfg.bundle)
    return decide_filtrable_generic(cfg.surface, cfg.bundle)


def _run_decide(cfg: JobConfig) -> Tuple[List[str], int]:
    verdict = _dispatch_decide(cfg)
    s = cfg.output_format == "structured"
    m_text = "" if verdict.m_value is None else str(verdict.m_value)
    if not s and not m_text:
        m_text = "n/a"
    lines = [
        _line(s, "delta", str(verdict.delta)),
        _line(s, "m", m_text),
        _line(s, "holomorphic", verdict.holomorphic),
        _line(s, "filtrable", verdict.filtrable),
        _line(s, "clause", verdict.clause),
        _line(s, "exceptional", _bool_text(verdict.exceptional_case)),
    ]
    if verdict.exceptional_case and not s:
        lines.append("EXCEPTIONAL: no holomorphic structure")
    code = EXIT_OK
    if cfg.strict and NOT_COVERED in (verdict.holomorphic, verdict.filtrable):
        code = EXIT_NOT_COVERED
    return lines, code


def _run_blowup(cfg: JobConfig) -> Tuple[List[str], int]:
    bmap = blow_up(cfg.surface.lattice)
    rep = pullback_invariance_check(bmap, cfg.bundle)
    s = cfg.output_format == "structured"
    lines = [
        _line(s, "base_rank" if s else "base rank", str(bmap.base.rank)),
        _line(s, "total_rank" if s else "total rank", str(bmap.total.rank)),
        _line(
            s,
            "exceptional_class" if s else "exceptional class",
            ",".join(str(c) for c in bmap.exceptional_class)
            if s
            else _vector_text(bmap.exceptional_class),
        ),
        _line(
            s,
            "pullback_c1" if s else "pullback c1",
            ",".join(str(c) for c in bmap.embed(cfg.bundle.c1))
            if s
            else _vector_text(bmap.embed(cfg.bundle.c1)),
        ),
        _line(s, "delta_base" if s else "delta base", str(rep.delta_base)),
        _line(s, "delta_total" if s else "delta total", str(rep.delta_total)),
        _line(s, "m_base" if s else "m base", str(rep.m_base)),
        _line(s, "m_total" if s else "m total", str(rep.m_total)),
        _line(s, "invariant", _bool_text(rep.holds)),
    ]
    return lines, EXIT_OK


def _strip_last(lattice: IntersectionLattice) -> IntersectionLattice:
    n = lattice.rank
    return IntersectionLattice(
        tuple(tuple(lattice.gram[i][j] for j in range(n - 1)) for i in range(n - 1))
    )


def _run_pushforward(cfg: JobConfig) -> Tuple[List[str], int]:
    total = cfg.surface.lattice
    if total.rank < 1:
        raise DomainError("pushforward needs a lattice of rank at least 1")
    bmap = BlowupMap(_strip_last(total), total, total.rank - 1)
    bundle = cfg.bundle
    _, k_raw = decompose_c1(bmap, bundle.c1)
    twisted, twist = normalize_twist(bmap, bundle)
    a, k = decompose_c1(bmap, twisted.c1)
    delta = discriminant(total, twisted)
    mrep = m_blowup_inequality_check(bmap, bundle.rank, a, k)
    s = cfg.output_format == "structured"
    lines = [
        _line(s, "k_raw" if s else "k raw", str(k_raw)),
        _line(s, "twist", str(twist)),
        _line(s, "k", str(k)),
        _line(
            s,
            "normalized_c1" if s else "normalized c1",
            ",".join(str(c) for c in twisted.c1) if s else _vector_text(twisted.c1),
        ),
        _line(s, "normalized_c2" if s else "normalized c2", str(twisted.c2)),
        _line(s, "delta", str(delta)),
        _line(
            s,
            "delta_bound" if s else "delta bound",
            str(pushforward_delta_bound(delta, bundle.rank, k)),
        ),
        _line(s, "m_total" if s else "m total", str(mrep.m_total)),
        _line(s, "m_base" if s else "m base", str(mrep.m_base)),
        _line(s, "m_margin" if s else "m margin", str(mrep.margin)),
        _line(s, "inequality", _bool_text(mrep.holds)),
    ]
    return lines, EXIT_OK


def _run_check(cfg: JobConfig) -> Tuple[List[str], int]:
    rep = run_suite(cfg.seed, cfg.radius)
    s = cfg.output_format == "structured"
    lines = []
    if s:
        lines.append(f"seed={rep.seed}")
        lines.append(f"radius={rep.radius}")
        for res in rep.results:
            lines.append(f"{res.name}={res.violations}")
        lines.append(f"total={rep.total_violations}")
    else:
        lines.append(f"seed = {rep.seed}, radius = {rep.radius}")
        for res in rep.results:
            status = "ok" if res.violations == 0 else f"FAIL ({res.violations} violations)"
            note = f", {res.note}" if res.note else ""
            lines.append(f"{res.name}: {status} ({res.instances} instances{note})")
        lines.append(f"violations: {rep.total_violations}")
    code = EXIT_OK if rep.total_violations == 0 else EXIT_VIOLATIONS
    return lines, code


_RUNNERS = {
    "m": _run_m,
    "delta": _run_delta,
    "chi": _run_chi,
    "decide": _run_decide,
    "blowup": _run_blowup,
    "pushforward": _run_pushforward,
    "check": _run_check,
}


def run(cfg: JobConfig) -> Tuple[str, int]:
    """Execute a parsed job; returns the report text and exit code."""
    lines, code = _RUNNERS[cfg.command](cfg)
    return "\n".join(lines), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holobundle",
        description=(
            "Existence tests for holomorphic and filtrable structures on "
            "topological vector bundles over non-algebraic surfaces."
        ),
    )
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--config", help="config file (required except for check)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the check suite")
    parser.add_argument(
        "--radius", type=int, default=3, help="search box radius for oracle cross checks"
    )
    parser.add_argument(
        "--format", dest="output_format", choices=OUTPUT_FORMATS, default="text"
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="exit with status 4 when a verdict is not covered",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = ""
        if args.config is not None:
            with open(args.config, "r", encoding="utf-8") as handle:
                text = handle.read()
        elif args.command != "check":
            raise ConfigError("--config is required for this command")
        cfg = parse_config(
            text,
            args.command,
            seed=args.seed,
            radius=args.radius,
            output_format=args.output_format,
            strict=args.strict,
        )
        report, code = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(report)
    return code


def main_entry() -> None:
    sys.exit(main())
