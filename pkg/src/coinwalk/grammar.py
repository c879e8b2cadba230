"""Text formats consumed by the CLI.

Three small grammars:

* complex literals ``a+bi`` (also ``a``, ``bi``, ``i``, ``-i``),
* angle literals in radians, with ``pi`` shorthand (``pi/4``, ``3pi/4``,
  ``-pi/2``, ``0.5pi``),
* walk configs and initial-state descriptions, documented in the README.

Walk config, one key per line (``#`` comments allowed)::

    dim 1
    coin 0.7071067811865476+0i, 0.7071067811865476+0i
    coin 0.7071067811865476+0i, -0.7071067811865476+0i
    shift 1
    shift -1

State grammar::

    local v=0 chi=(1,0)
    dist {-1:0.7071, 1:0.7071} chi=(1,0)
    general {-1:(0.7071,0), 1:(0,0.7071)}

Amplitudes are renormalized to unit norm if they are within 1e-3 of it
(so rounded literals like 0.7071 are accepted); larger deviations are
rejected as errors rather than silently rescaled.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import FormatError
from .states import DistributedState, GeneralState, InitialState, LocalState
from .walk import WalkSpec


def parse_complex(text: str) -> complex:
    """Parse a complex literal using ``i`` for the imaginary unit."""
    s = text.strip().replace(" ", "")
    if not s:
        raise FormatError("empty complex literal")
    if s in ("i", "+i"):
        return 1j
    if s == "-i":
        return -1j
    js = s[:-1] + "j" if s.endswith(("i", "I")) else s
    # bare trailing sign before i, e.g. "1+i"
    js = re.sub(r"([+-])j$", r"\g<1>1j", js)
    try:
        return complex(js)
    except ValueError as exc:
        raise FormatError(f"bad complex literal {text!r}") from exc


def format_complex(z: complex) -> str:
    re_s = format(z.real, ".17g")
    im_s = format(z.imag, ".17g")
    sign = "+" if not im_s.startswith("-") else ""
    return f"{re_s}{sign}{im_s}i"


_PI_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<div>\d+(?:\.\d+)?))?$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Parse an angle in radians; accepts plain floats and ``pi`` literals."""
    s = text.strip()
    try:
        return float(s)
    except ValueError:
        pass
    m = _PI_RE.match(s)
    if not m:
        raise FormatError(f"bad angle literal {text!r} (radians; e.g. 0.785 or pi/4)")
    value = np.pi * float(m.group("coef") or 1.0)
    if m.group("div"):
        value /= float(m.group("div"))
    return -value if m.group("sign") == "-" else value


def _parse_int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in re.split(r"[,\s]+", text.strip()) if p)
    except ValueError as exc:
        raise FormatError(f"bad integer vector {text!r}") from exc


def parse_walk_config(text: str) -> WalkSpec:
    """Parse the plain-text walk config format (see module docstring)."""
    dim: int | None = None
    coin_rows: list[list[complex]] = []
    shifts: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, _, rest = line.partition(" ")
        except ValueError:
            raise FormatError(f"line {lineno}: expected 'key value'")
        if key == "dim":
            try:
                dim = int(rest)
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad dim {rest!r}") from exc
        elif key == "coin":
            coin_rows.append([parse_complex(p) for p in rest.split(",")])
        elif key == "shift":
            shifts.append(_parse_int_vector(rest))
        else:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
    if dim is None:
        raise FormatError("missing 'dim' line")
    if not coin_rows:
        raise FormatError("missing 'coin' rows")
    n = len(coin_rows)
    if any(len(row) != n for row in coin_rows):
        raise FormatError("coin rows do not form a square matrix")
    if len(shifts) != n:
        raise FormatError(f"expected {n} 'shift' lines (one per coin state), got {len(shifts)}")
    if any(len(sv) != dim for sv in shifts):
        raise FormatError(f"every shift vector must have {dim} components")
    try:
        return WalkSpec(lattice_dim=dim, coin_dim=n, shifts=shifts, coin=coin_rows)
    except Exception as exc:
        raise FormatError(f"invalid walk config: {exc}") from exc


def format_walk_config(spec: WalkSpec) -> str:
    lines = [f"dim {spec.lattice_dim}"]
    for row in spec.coin:
        lines.append("coin " + ", ".join(format_complex(z) for z in row))
    for sv in spec.shifts:
        lines.append("shift " + " ".join(str(int(x)) for x in sv))
    return "\n".join(lines) + "\n"


def _renormalize(values: np.ndarray, what: str) -> np.ndarray:
    norm = float(np.linalg.norm(values))
    if abs(norm - 1.0) > 1e-3:
        raise FormatError(f"{what} has norm {norm:.6f}; must be within 1e-3 of 1")
    return values / norm


def _parse_vector_literal(text: str) -> np.ndarray:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise FormatError(f"expected a parenthesized vector, got {text!r}")
    return np.array([parse_complex(p) for p in s[1:-1].split(",")], dtype=np.complex128)


def _split_map_entries(body: str) -> list[tuple[tuple[int, ...], str]]:
    # split '{pos: value, pos: value}' where value may itself contain commas
    # inside parentheses
    entries: list[tuple[tuple[int, ...], str]] = []
    depth = 0
    current = ""
    parts: list[str] = []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += ch
    if current.strip():
        parts.append(current)
    for part in parts:
        pos_s, sep, val_s = part.partition(":")
        if not sep:
            raise FormatError(f"bad map entry {part!r}")
        pos = tuple(int(p) for p in re.split(r"[;\s]+", pos_s.strip()) if p)
        entries.append((pos, val_s.strip()))
    return entries


def parse_state(text: str) -> InitialState:
    """Parse the initial-state grammar (see module docstring)."""
    s = text.strip()
    kind, _, rest = s.partition(" ")
    try:
        if kind == "local":
            m = re.match(r"^v=(?P<v>[-\d,\s]+?)\s+chi=(?P<chi>\(.*\))$", rest.strip())
            if not m:
                raise FormatError(f"bad local state {text!r}")
            chi = _renormalize(_parse_vector_literal(m.group("chi")), "chi")
            return LocalState(position=_parse_int_vector(m.group("v")), chi=chi)
        if kind == "dist":
            m = re.match(r"^\{(?P<map>.*)\}\s+chi=(?P<chi>\(.*\))$", rest.strip())
            if not m:
                raise FormatError(f"bad dist state {text!r}")
            entries = _split_map_entries(m.group("map"))
            amps = np.array([parse_complex(v) for _, v in entries])
            amps = _renormalize(amps, "position amplitudes")
            chi = _renormalize(_parse_vector_literal(m.group("chi")), "chi")
            return DistributedState(
                amplitudes={pos: complex(a) for (pos, _), a in zip(entries, amps)}, chi=chi
            )
        if kind == "general":
            m = re.match(r"^\{(?P<map>.*)\}$", rest.strip())
            if not m:
                raise FormatError(f"bad general state {text!r}")
            entries = [
                (pos, _parse_vector_literal(v)) for pos, v in _split_map_entries(m.group("map"))
            ]
            total = float(np.sqrt(sum(np.linalg.norm(c) ** 2 for _, c in entries)))
            if abs(total - 1.0) > 1e-3:
                raise FormatError(f"general state has norm {total:.6f}; must be within 1e-3 of 1")
            return GeneralState(amplitudes={pos: c / total for pos, c in entries})
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"bad state {text!r}: {exc}") from exc
    raise FormatError(f"unknown state kind {kind!r} (expected local, dist or general)")
