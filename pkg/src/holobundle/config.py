"""Config parsing for the CLI.

Grammar: INI-like sections [surface] and [bundle], '#' comments, and
key = value pairs.  Vectors are comma-separated integers; the Gram
matrix separates rows with ';'.  An empty gram or c1 value denotes a
rank zero lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .bundles import BundleTopology
from .criteria import SurfaceKind, SurfaceModel
from .errors import DomainError
from .lattice import Definiteness, IntersectionLattice, classify_definiteness

COMMANDS = ("m", "delta", "chi", "decide", "blowup", "pushforward", "check")
OUTPUT_FORMATS = ("text", "structured")

_SURFACE_KEYS = {"kind", "gram", "chi_o", "anticanonical", "a_x", "vii_applicable"}
_BUNDLE_KEYS = {"rank", "c1", "c2", "c1_in_ns"}

_Fields = Dict[str, Tuple[str, int]]


class ConfigError(Exception):
    """Parse or validation failure, with the offending line when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class JobConfig:
    command: str
    surface: Optional[SurfaceModel]
    bundle: Optional[BundleTopology]
    seed: int = 0
    radius: int = 3
    output_format: str = "text"
    strict: bool = False


def _parse_int(raw: str, key: str, line: int) -> int:
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigError(f"expected integer for {key}, got {raw.strip()!r}", line) from None


def _parse_vector(raw: str, key: str, line: int) -> Tuple[int, ...]:
    raw = raw.strip()
    if not raw:
        return ()
    return tuple(_parse_int(part, key, line) for part in raw.split(","))


def _parse_bool(raw: str, key: str, line: int) -> bool:
    low = raw.strip().lower()
    if low == "true":
        return True
    if low == "false":
        return False
    raise ConfigError(f"expected true or false for {key}, got {raw.strip()!r}", line)


def _split_sections(text: str) -> Dict[str, _Fields]:
    sections: Dict[str, _Fields] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("malformed section header", lineno)
            name = line[1:-1].strip()
            if name not in ("surface", "bundle"):
                raise ConfigError(f"unknown section [{name}]", lineno)
            if name in sections:
                raise ConfigError(f"duplicate section [{name}]", lineno)
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError("expected key = value", lineno)
        if current is None:
            raise ConfigError("key outside any section", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        allowed = _SURFACE_KEYS if current == "surface" else _BUNDLE_KEYS
        if key not in allowed:
            raise ConfigError(f"unknown key {key} in [{current}]", lineno)
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key}", lineno)
        sections[current][key] = (value.strip(), lineno)
    return sections


def _need(fields: _Fields, key: str) -> Tuple[str, int]:
    if key not in fields:
        raise ConfigError(f"missing field {key}")
    return fields[key]


def _build_surface(fields: _Fields) -> SurfaceModel:
    kind_raw, kind_line = _need(fields, "kind")
    try:
        kind = SurfaceKind(kind_raw)
    except ValueError:
        raise ConfigError(f"unknown kind {kind_raw!r}", kind_line) from None

    gram_raw, gram_line = _need(fields, "gram")
    rows = ()
    if gram_raw:
        rows = tuple(
            tuple(_parse_int(part, "gram", gram_line) for part in row.split(","))
            for row in gram_raw.split(";")
        )
    try:
        lattice = IntersectionLattice(rows)
    except DomainError as exc:
        raise ConfigError(str(exc), gram_line) from None
    if classify_definiteness(lattice) is Definiteness.INDEFINITE_OR_POSITIVE:
        raise ConfigError("lattice not negative semi-definite", gram_line)

    chi_o = 2 if kind is SurfaceKind.K3 else 0
    if "chi_o" in fields:
        chi_o = _parse_int(fields["chi_o"][0], "chi_o", fields["chi_o"][1])
    anticanonical = (0,) * lattice.rank
    if "anticanonical" in fields:
        raw, line = fields["anticanonical"]
        anticanonical = _parse_vector(raw, "anticanonical", line)
        if len(anticanonical) != lattice.rank:
            raise ConfigError(
                f"anticanonical length {len(anticanonical)} does not match lattice rank {lattice.rank}",
                line,
            )
    a_x = 0
    if "a_x" in fields:
        a_x = _parse_int(fields["a_x"][0], "a_x", fields["a_x"][1])
    vii = True
    if "vii_applicable" in fields:
        vii = _parse_bool(fields["vii_applicable"][0], "vii_applicable", fields["vii_applicable"][1])

    try:
        return SurfaceModel(
            kind,
            lattice,
            chi_o,
            anticanonical,
            algebraic_dimension=a_x,
            vii_applicable=vii,
        )
    except DomainError as exc:
        raise ConfigError(str(exc), kind_line) from None


def _build_bundle(fields: _Fields, lattice_rank: Optional[int]) -> BundleTopology:
    rank_raw, rank_line = _need(fields, "rank")
    rank = _parse_int(rank_raw, "rank", rank_line)
    c1_raw, c1_line = _need(fields, "c1")
    c1 = _parse_vector(c1_raw, "c1", c1_line)
    c2_raw, c2_line = _need(fields, "c2")
    c2 = _parse_int(c2_raw, "c2", c2_line)
    in_ns = True
    if "c1_in_ns" in fields:
        in_ns = _parse_bool(fields["c1_in_ns"][0], "c1_in_ns", fields["c1_in_ns"][1])
    if lattice_rank is not None and len(c1) != lattice_rank:
        raise ConfigError(
            f"c1 length {len(c1)} does not match lattice rank {lattice_rank}", c1_line
        )
    try:
        return BundleTopology(rank, c1, c2, in_ns)
    except DomainError as exc:
        raise ConfigError(str(exc), rank_line) from None


def parse_config(
    text: str,
    command: str,
    seed: int = 0,
    radius: int = 3,
    output_format: str = "text",
    strict: bool = False,
) -> JobConfig:
    """Parse a config document into a validated job description."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    if output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"unknown format {output_format!r}")
    if radius < 1:
        raise ConfigError("radius must be a positive integer")
    sections = _split_sections(text)
    surface = _build_surface(sections["surface"]) if "surface" in sections else None
    bundle = None
    if "bundle" in sections:
        bundle = _build_bundle(
            sections["bundle"], surface.lattice.rank if surface is not None else None
        )
    if command != "check":
        if surface is None:
            raise ConfigError("missing section [surface]")
        if bundle is None:
            raise ConfigError("missing section [bundle]")
    return JobConfig(command, surface, bundle, seed, radius, output_format, strict)


def render_config(surface: SurfaceModel, bundle: BundleTopology) -> str:
    """Canonical text for a surface and bundle pair; parses back to the same models."""
    gram = "; ".join(", ".join(str(e) for e in row) for row in surface.lattice.gram)
    lines = [
        "[surface]",
        f"kind = {surface.kind.value}",
        f"gram = {gram}",
        f"chi_o = {surface.chi_o}",
        f"anticanonical = {', '.join(str(e) for e in surface.anticanonical)}",
        f"a_x = {surface.algebraic_dimension}",
        f"vii_applicable = {'true' if surface.vii_applicable else 'false'}",
        "",
        "[bundle]",
        f"rank = {bundle.rank}",
        f"c1 = {', '.join(str(e) for e in bundle.c1)}",
        f"c2 = {bundle.c2}",
        f"c1_in_ns = {'true' if bundle.c1_in_ns else 'false'}",
    ]
    return "\n".join(lines) + "\n"
