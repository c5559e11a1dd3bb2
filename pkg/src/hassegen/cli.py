"""Batch front end: ``hassegen <command|run> --request FILE [--machine]``.

Exit status: 0 on success, 2 on bad input, 3 when a requested value is
unavailable, 1 when the oracle suite finds a mismatch.
"""

from __future__ import annotations

import argparse
import configparser
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .abgroup import FgGroup
from .curve import CurveSpec, Place, place_at
from .errors import (
    HassegenError,
    NoSplittingPoint,
    NotAdmissible,
    NotApplicable,
    UnitsUnavailable,
    UnsupportedCover,
)
from .finitefield import make_field
from .fundgroup import RES_MU, RES_ONE_MU, invariants
from .groups import GroupSpec, class_number, fundamental_group_of, genera_count, h1_size, hasse_verdict, tamagawa
from .hassedomain import CONSTANT, EXPLICIT, IDENTITY, CoverDescriptor, HasseDomain, make_cover

COMMANDS = ("invariants", "genera", "class-number", "hasse", "tamagawa", "report", "oracle-check")
MAX_REQUEST_BYTES = 1 << 20

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_UNAVAILABLE = 0, 1, 2, 3

# errors that mean "this value cannot be produced for this input"
UNAVAILABLE = (NotAdmissible, UnitsUnavailable, NoSplittingPoint, NotApplicable, UnsupportedCover)

SCHEMA = {
    "field": {"p", "k"},
    "curve": {"kind", "a", "b"},
    "places": {"s"},
    "cover": {"kind", "d", "curve_kind", "curve_a", "curve_b", "curve_k", "n"},
    "group": {"dynkin", "rank", "isogeny", "gs_noncompact", "splitting_place_ok"},
    "commands": {"run"},
}
REQUIRED_SECTIONS = ("field", "curve", "places")


class RequestError(Exception):
    """Invalid request file; the message names the key and line."""


@dataclass
class Request:
    path: str
    domain: HasseDomain
    cover: CoverDescriptor
    group: GroupSpec | None
    commands: list[str] = field(default_factory=list)


# --- parsing ---------------------------------------------------------------------


def _line_index(text: str) -> dict[tuple[str, str], int]:
    """``(section, key) -> line number`` (section headers use key ``""``)."""
    where: dict[tuple[str, str], int] = {}
    section = ""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#;":
            continue
        m = re.fullmatch(r"\[([^\]]+)\]", line)
        if m:
            section = m.group(1).strip().lower()
            where.setdefault((section, ""), no)
            continue
        key = re.split(r"[=:]", line, maxsplit=1)[0].strip().lower()
        where.setdefault((section, key), no)
    return where


class _Reader:
    def __init__(self, cp: configparser.ConfigParser, lines: dict[tuple[str, str], int]):
        self.cp, self.lines = cp, lines

    def where(self, section: str, key: str = "") -> str:
        no = self.lines.get((section, key))
        label = f"[{section}] {key}".strip()
        return f"{label} (line {no})" if no else label

    def fail(self, section: str, key: str, msg: str):
        raise RequestError(f"{self.where(section, key)}: {msg}")

    def has(self, section: str, key: str) -> bool:
        return self.cp.has_option(section, key)

    def get(self, section: str, key: str, default: str | None = None) -> str:
        if self.cp.has_option(section, key):
            return self.cp.get(section, key).strip()
        if default is None:
            raise RequestError(f"[{section}] missing required key {key!r}")
        return default

    def integer(self, section: str, key: str, default: int | None = None) -> int:
        raw = self.get(section, key, None if default is None else str(default))
        try:
            return int(raw)
        except ValueError:
            self.fail(section, key, f"expected an integer, got {raw!r}")

    def boolean(self, section: str, key: str) -> bool | None:
        if not self.has(section, key):
            return None
        raw = self.get(section, key).lower()
        if raw in ("true", "yes", "1", "on"):
            return True
        if raw in ("false", "no", "0", "off"):
            return False
        self.fail(section, key, f"expected true/false, got {raw!r}")

    def element(self, section: str, key: str):
        """An integer, or ``[c0, c1, ...]`` coefficients lowest degree first."""
        raw = self.get(section, key)
        try:
            if raw.startswith("["):
                body = raw.strip("[] ")
                return [int(x) for x in body.split(",")] if body else [0]
            return int(raw)
        except ValueError:
            self.fail(section, key, f"expected an integer or [c0, c1, ...], got {raw!r}")


_SELECTOR = re.compile(r"^\s*(\d+)\s*:\s*(\d+)\s*(?:@\s*(\d+))?\s*$")


def _selectors(rd: _Reader, section: str, key: str, raw: str, with_f: bool) -> list[tuple[int, int, int]]:
    out = []
    for item in filter(None, (s.strip() for s in raw.split(","))):
        m = _SELECTOR.match(item)
        if not m or bool(m.group(3)) != with_f:
            form = "degree:index@f" if with_f else "degree:index"
            rd.fail(section, key, f"bad place selector {item!r}, expected {form}")
        out.append((int(m.group(1)), int(m.group(2)), int(m.group(3) or 0)))
    return out


def _pick_place(rd: _Reader, section: str, key: str, curve: CurveSpec, deg: int, idx: int) -> Place:
    if deg < 1:
        rd.fail(section, key, "place degree must be >= 1")
    try:
        return place_at(curve, deg, idx)
    except IndexError as exc:
        rd.fail(section, key, str(exc))


def _curve(rd: _Reader, section: str, prefix: str, fld) -> CurveSpec:
    kind = rd.get(section, f"{prefix}kind").lower()
    try:
        if kind in ("line", "projective_line", "p1"):
            return CurveSpec.projective_line(fld)
        if kind == "elliptic":
            return CurveSpec.elliptic(fld, rd.element(section, f"{prefix}a"), rd.element(section, f"{prefix}b"))
    except HassegenError as exc:
        rd.fail(section, f"{prefix}kind", str(exc))
    rd.fail(section, f"{prefix}kind", f"unknown curve kind {kind!r}")


def _check_schema(rd: _Reader) -> None:
    for section in rd.cp.sections():
        if section not in SCHEMA:
            raise RequestError(f"{rd.where(section)}: unknown section [{section}]")
        for key in rd.cp.options(section):
            if section == "cover" and re.fullmatch(r"fiber\.\d+", key):
                continue
            if key not in SCHEMA[section]:
                rd.fail(section, key, f"unknown key {key!r}")
    for section in REQUIRED_SECTIONS:
        if not rd.cp.has_section(section):
            raise RequestError(f"missing section [{section}]")


def parse_request(path: str | Path) -> Request:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise RequestError(f"cannot read {path}: {exc.strerror}") from None
    if len(data) > MAX_REQUEST_BYTES:
        raise RequestError(f"{path} exceeds 1 MiB")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise RequestError(f"{path} is not UTF-8") from None
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise RequestError(f"malformed request: {exc}") from None
    rd = _Reader(cp, _line_index(text))
    _check_schema(rd)

    p = rd.integer("field", "p")
    k = rd.integer("field", "k", 1)
    if p == 2:
        rd.fail("field", "p", "unsupported characteristic 2")
    try:
        fld = make_field(p, k)
    except HassegenError as exc:
        rd.fail("field", "p", str(exc))
    curve = _curve(rd, "curve", "", fld)

    raw_s = rd.get("places", "s", "")
    sel = _selectors(rd, "places", "s", raw_s, with_f=False)
    if not sel:
        rd.fail("places", "s", "S must be nonempty")
    S = tuple(_pick_place(rd, "places", "s", curve, d, i) for d, i, _ in sel)
    try:
        domain = HasseDomain(curve, S)
    except HassegenError as exc:
        rd.fail("places", "s", str(exc))

    cover = _parse_cover(rd, domain)
    group = _parse_group(rd, domain, cover) if cp.has_section("group") else None
    commands = []
    if rd.has("commands", "run"):
        for c in filter(None, (x.strip() for x in rd.get("commands", "run").split(","))):
            if c not in COMMANDS:
                rd.fail("commands", "run", f"unknown command {c!r}")
            commands.append(c)
    return Request(str(path), domain, cover, group, commands)


def _parse_cover(rd: _Reader, domain: HasseDomain) -> CoverDescriptor:
    if not rd.cp.has_section("cover"):
        return make_cover(domain)
    kind = rd.get("cover", "kind", IDENTITY).lower()
    try:
        if kind == IDENTITY:
            return make_cover(domain)
        if kind == CONSTANT:
            return make_cover(domain, CONSTANT, d=rd.integer("cover", "d"))
        if kind != EXPLICIT:
            rd.fail("cover", "kind", f"unknown cover kind {kind!r}")
        base_field = domain.curve.field
        k_cov = rd.integer("cover", "curve_k", base_field.k)
        cov_field = make_field(base_field.p, k_cov)
        cov_curve = _curve(rd, "cover", "curve_", cov_field)
        n = rd.integer("cover", "n")
        fibers: dict[Place, list[tuple[Place, int]]] = {}
        for key in rd.cp.options("cover"):
            m = re.fullmatch(r"fiber\.(\d+)", key)
            if not m:
                continue
            j = int(m.group(1))
            if j >= len(domain.S):
                rd.fail("cover", key, f"S has only {len(domain.S)} places")
            above = _selectors(rd, "cover", key, rd.get("cover", key), with_f=True)
            fibers[domain.S[j]] = [(_pick_place(rd, "cover", key, cov_curve, d, i), f) for d, i, f in above]
        return make_cover(domain, EXPLICIT, cover_curve=cov_curve, degree=n, fibers=fibers)
    except (HassegenError, ValueError) as exc:
        rd.fail("cover", "kind", str(exc))


def _parse_group(rd: _Reader, domain: HasseDomain, cover: CoverDescriptor) -> GroupSpec:
    dynkin = rd.get("group", "dynkin")
    rank = rd.integer("group", "rank") if rd.has("group", "rank") else None
    try:
        return GroupSpec(
            domain,
            dynkin,
            rank,
            rd.get("group", "isogeny", "adjoint").lower(),
            None if cover.kind == IDENTITY else cover,
            rd.boolean("group", "gs_noncompact"),
            rd.boolean("group", "splitting_place_ok"),
        )
    except HassegenError as exc:
        rd.fail("group", "dynkin", str(exc))


# --- reporting ---------------------------------------------------------------------------


def fmt_q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fmt_group(g: FgGroup) -> str:
    return str(g).replace(" ", "")


class Report:
    """Collects ``key=value`` lines grouped by command."""

    def __init__(self):
        self.blocks: list[tuple[str, list[str]]] = []
        self.unavailable = False
        self.mismatch = False

    def block(self, title: str) -> list[str]:
        lines: list[str] = []
        self.blocks.append((title, lines))
        return lines

    def render(self, machine: bool) -> str:
        out = []
        for title, lines in self.blocks:
            if not machine:
                out.append(f"== {title} ==")
            out.extend(lines if machine else (f"  {ln}" for ln in lines))
        return "\n".join(out) + "\n"


def _try(rep: Report, lines: list[str], key: str, fn: Callable[[], str], strict: bool = True) -> None:
    """Append one rendered value; in a full report a not-applicable value does not force exit 3."""
    try:
        lines.append(fn())
    except UNAVAILABLE as exc:
        if strict or not isinstance(exc, NotApplicable):
            rep.unavailable = True
        lines.append(f"{key}=unavailable reason={exc.kind}")


def _route(F, closed: str, kernel: str) -> str:
    flavors = {f.flavor for f in F.factors}
    parts = [closed] * (RES_MU in flavors or not flavors) + [kernel] * (RES_ONE_MU in flavors)
    return "+".join(parts)


def _echo(req: Request, rep: Report) -> None:
    lines = rep.block("input")
    lines.append(f"input.field={req.domain.curve.field}")
    lines.append(f"input.curve={req.domain.curve}")
    lines.append(f"input.S={';'.join(str(p) for p in req.domain.S)}")
    lines.append(f"input.cover={str(req.cover).replace(' ', '_')}")
    if req.cover.kind != IDENTITY:
        lines.append(f"input.cover_places={';'.join(str(p) for p in req.cover.cover_places)}")
    if req.group is not None:
        g = req.group
        lines.append(f"input.group={g.label}/{g.isogeny}")
        lines.append(f"input.gs_noncompact={str(g.gs_noncompact).lower()}")
        lines.append(f"input.splitting_place_ok={str(g.splitting_place_ok).lower()}")
        lines.append(f"input.fund_group={str(fundamental_group_of(g)).replace(' ', '')}")


def _need_group(req: Request, command: str) -> GroupSpec:
    if req.group is None:
        raise RequestError(f"command {command!r} needs a [group] section")
    return req.group


def cmd_invariants(req: Request, rep: Report) -> None:
    g = _need_group(req, "invariants")
    lines = rep.block("invariants")
    F = fundamental_group_of(g)
    b = invariants(F)
    values = [
        ("i", lambda: f"i={fmt_group(b.i)} order={b.i.order} route={_route(F, 'brauer-torsion', 'corestriction-kernel')}"),
        ("j", lambda: f"j={fmt_group(b.j)} order={b.j.order} route={_route(F, 'picard-mod-m', 'norm-kernel-mod-m')}"),
        ("l", lambda: f"l={fmt_q(b.l)} route={_route(F, 'unit-closed-form', 'unit-norm-kernels')}"),
        ("h", lambda: f"h={b.h[0]},{b.h[1]},{b.h[2]} route=h-vector"),
        ("chi", lambda: f"chi={fmt_q(b.chi)} route=h-vector"),
    ]
    for key, render in values:
        if key in b.unavailable:
            rep.unavailable = True
            lines.append(f"{key}=unavailable reason={b.unavailable[key].split(':')[0]}")
        else:
            lines.append(render())
    ok = b.identity_holds
    if ok is not None:
        lines.append(f"chi_identity={'ok' if ok else 'FAILED'} l_times_i={fmt_q(b.l * b.i.order)} route=chi-identity")
        if not ok:
            rep.mismatch = True


def cmd_genera(req: Request, rep: Report) -> None:
    g = _need_group(req, "genera")
    lines = rep.block("genera")
    _try(rep, lines, "genera_count", lambda: f"genera_count={genera_count(g)} route=i-order")


def cmd_class_number(req: Request, rep: Report) -> None:
    g = _need_group(req, "class-number")
    lines = rep.block("class-number")

    def render():
        c = class_number(g)
        route = "j-order" if c.exact else "j-order-lower-bound"
        return f"class_number={c.value} exact={str(c.exact).lower()} route={route}"

    _try(rep, lines, "class_number", render)


def cmd_h1(req: Request, rep: Report) -> None:
    g = _need_group(req, "report")
    lines = rep.block("h1")
    _try(rep, lines, "h1_size", lambda: f"h1_size={h1_size(g)} route=h-vector", strict=False)


def cmd_hasse(req: Request, rep: Report) -> None:
    g = _need_group(req, "hasse")
    lines = rep.block("hasse")

    def render():
        v = hasse_verdict(g)
        return f"hasse={v.verdict} route={v.route}"

    _try(rep, lines, "hasse", render)


def cmd_tamagawa(req: Request, rep: Report, strict: bool = True) -> None:
    g = _need_group(req, "tamagawa")
    lines = rep.block("tamagawa")

    def render():
        t = tamagawa(g)
        if not t.crosscheck_ok:
            rep.mismatch = True
        flag = "ok" if t.crosscheck_ok else "FAILED"
        return f"tau={fmt_q(t.tau)} crosscheck={flag} route={t.route} crosscheck_value={fmt_q(t.crosscheck)} crosscheck_route=h-vector"

    _try(rep, lines, "tau", render, strict)


def cmd_report(req: Request, rep: Report) -> None:
    for fn in (cmd_invariants, cmd_genera, cmd_class_number, cmd_h1, cmd_hasse):
        fn(req, rep)
    cmd_tamagawa(req, rep, strict=False)


def cmd_oracle(req: Request, rep: Report) -> None:
    from .curve import ELLIPTIC
    from .oracle import corpus_reports, oracle_ec_structure, oracle_zeta

    lines = rep.block("oracle-check")
    reports = corpus_reports()
    curve = req.domain.curve
    if curve.kind == ELLIPTIC:
        reports.append(oracle_ec_structure(curve))
    reports.append(oracle_zeta(curve, 2))
    for r in reports:
        subject = re.sub(r"\s+", "_", r.subject)
        lines.append(f"oracle.{subject} instances={r.instances} mismatches={len(r.mismatches)} route=brute-force")
        for m in r.mismatches[:5]:
            lines.append(f"oracle.mismatch={m.replace(' ', '_')}")
        if not r.ok:
            rep.mismatch = True


HANDLERS = {
    "invariants": cmd_invariants,
    "genera": cmd_genera,
    "class-number": cmd_class_number,
    "hasse": cmd_hasse,
    "tamagawa": cmd_tamagawa,
    "report": cmd_report,
    "oracle-check": cmd_oracle,
}


def run(req: Request, commands: list[str]) -> tuple[Report, int]:
    rep = Report()
    _echo(req, rep)
    for c in commands:
        HANDLERS[c](req, rep)
    if rep.mismatch:
        return rep, EXIT_MISMATCH
    return rep, EXIT_UNAVAILABLE if rep.unavailable else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="hassegen", description="Invariants of semisimple groups over Hasse domains.")
    ap.add_argument("command", choices=COMMANDS + ("run",))
    ap.add_argument("--request", required=True, help="INI-style request file")
    ap.add_argument("--machine", action="store_true", help="emit key=value lines only")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        req = parse_request(args.request)
        if args.command == "run":
            if not req.commands:
                raise RequestError("[commands] run is empty or missing")
            commands = req.commands
        else:
            commands = [args.command]
        rep, code = run(req, commands)
    except RequestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HassegenError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.render(args.machine))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
