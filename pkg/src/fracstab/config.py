"""Line-oriented run configuration: `key = value`, strict about unknown keys.

Lists are bracketed and comma-separated, expressions are quoted strings,
`#` starts a comment.  A `preset` line pulls in one of the built-in
examples; explicit keys then override its fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .expressions import to_text
from .operators import TimeGrid
from .presets import PRESET_NAMES, get_preset
from .solver import SystemDef

__all__ = ["RunConfig", "parse_config", "load_config"]

_SCALAR_KEYS = {"preset", "order", "dim", "t0", "t_end", "h", "output", "seed", "label", "phi"}
_LIST_KEYS = {"x0", "checks", "h_list"}
_DEFAULT_CHECK_COUNT = 100


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run request."""

    system: SystemDef
    grid: TimeGrid
    checks: tuple[tuple[str, int], ...] = ()
    output: str | None = None
    seed: int = 0
    preset: str | None = None
    phi: str | None = None
    h_list: tuple[float, ...] = ()


def _strip_comment(line: str) -> str:
    # a '#' inside a quoted expression does not start a comment
    out = []
    in_quote = False
    for ch in line:
        if ch == '"':
            in_quote = not in_quote
        if ch == "#" and not in_quote:
            break
        out.append(ch)
    return "".join(out)


def _parse_value(raw: str, lineno: int):
    raw = raw.strip()
    if not raw:
        raise ConfigError("missing value", lineno)
    if raw.startswith("[") :
        if not raw.endswith("]"):
            raise ConfigError("unterminated list", lineno)
        inner = raw[1:-1].strip()
        if not inner:
            return []
        return [_parse_value(part, lineno) for part in inner.split(",")]
    if raw.startswith('"'):
        if len(raw) < 2 or not raw.endswith('"'):
            raise ConfigError("unterminated string", lineno)
        return raw[1:-1]
    try:
        f = float(raw)
        return int(f) if f == int(f) and ("e" not in raw.lower() and "." not in raw) else f
    except ValueError:
        return raw  # bare word (preset names, check names)


def parse_config(text: str) -> RunConfig:
    """Parse config text into a resolved RunConfig; errors carry line numbers."""
    values: dict[str, object] = {}
    rhs_lines: dict[int, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(line).strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, raw = line.partition("=")
        key = key.strip()
        value = _parse_value(raw, lineno)
        if key.startswith("rhs") and key[3:].isdigit():
            idx = int(key[3:])
            if idx < 1:
                raise ConfigError(f"rhs components start at rhs1, got {key!r}", lineno)
            if not isinstance(value, str):
                raise ConfigError(f"{key} must be a quoted expression", lineno)
            if idx in rhs_lines:
                raise ConfigError(f"duplicate key {key!r}", lineno)
            rhs_lines[idx] = value
            continue
        if key not in _SCALAR_KEYS and key not in _LIST_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        values[key] = value

    preset_name = values.get("preset")
    phi = values.get("phi")
    if preset_name is not None:
        if preset_name not in PRESET_NAMES:
            raise ConfigError(f"unknown preset {preset_name!r}")
        preset = get_preset(str(preset_name), phi_text=str(phi) if phi else None)
        dim = int(values.get("dim", preset.system.dim))
        alpha = float(values.get("order", preset.system.order.alpha))
        x0 = values.get("x0", list(preset.system.x0))
        default_rhs = [None] * dim
        for i in range(min(dim, preset.system.dim)):
            default_rhs[i] = to_text(preset.system.rhs[i])
        t0 = float(values.get("t0", preset.grid.t0))
        t_end = float(values.get("t_end", preset.grid.t_end))
        h = float(values.get("h", preset.grid.h))
        label = str(values.get("label", preset.name))
    else:
        for key in ("dim", "order", "x0", "t_end", "h"):
            if key not in values:
                raise ConfigError(f"missing key {key!r}")
        dim = int(values["dim"])
        alpha = float(values["order"])
        x0 = values["x0"]
        default_rhs = [None] * dim
        t0 = float(values.get("t0", 0.0))
        t_end = float(values["t_end"])
        h = float(values["h"])
        label = str(values.get("label", "custom"))

    if not isinstance(x0, list):
        raise ConfigError("x0 must be a bracketed list")
    if len(x0) != dim:
        raise ConfigError(f"dimension mismatch: dim = {dim} but x0 has {len(x0)} entries")
    for idx in rhs_lines:
        if idx > dim:
            raise ConfigError(f"dimension mismatch: rhs{idx} present with dim = {dim}")
    rhs_texts = []
    for i in range(1, dim + 1):
        text_i = rhs_lines.get(i, default_rhs[i - 1])
        if text_i is None:
            raise ConfigError(f"missing key 'rhs{i}'")
        rhs_texts.append(text_i)

    if h <= 0:
        raise ConfigError(f"h must be > 0, got {h}")
    if t_end <= t0:
        raise ConfigError(f"t_end must exceed t0, got t_end={t_end}, t0={t0}")
    n_steps = round((t_end - t0) / h)
    if n_steps < 1 or abs(t0 + n_steps * h - t_end) > 1e-9 * max(1.0, abs(t_end)):
        raise ConfigError(f"(t_end - t0) must be a multiple of h, got {t_end - t0} / {h}")

    system = SystemDef.from_strings(dim, alpha, rhs_texts, [float(v) for v in x0], label)
    grid = TimeGrid(t0, h, n_steps)

    checks_raw = values.get("checks", [])
    if not isinstance(checks_raw, list):
        checks_raw = [checks_raw]
    checks = []
    for item in checks_raw:
        if not isinstance(item, str):
            raise ConfigError(f"bad check entry {item!r}")
        name, _, count = str(item).partition(":")
        try:
            n = int(count) if count else _DEFAULT_CHECK_COUNT
        except ValueError:
            raise ConfigError(f"bad instance count in check entry {item!r}") from None
        checks.append((name.strip(), n))

    seed = values.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    output = values.get("output")
    h_list = values.get("h_list", [])
    if not isinstance(h_list, list):
        raise ConfigError("h_list must be a bracketed list")

    return RunConfig(
        system=system,
        grid=grid,
        checks=tuple(checks),
        output=str(output) if output is not None else None,
        seed=seed,
        preset=str(preset_name) if preset_name else None,
        phi=str(phi) if phi else None,
        h_list=tuple(float(v) for v in h_list),
    )


def load_config(path: Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
