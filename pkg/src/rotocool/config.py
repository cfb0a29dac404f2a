"""TOML run-configuration parsing and validation.

Sections: [species] (built-in name or inline constants), [cavity], [plan],
[simulate], and optionally [sweep] for the sweep command.  Unknown keys,
missing required keys, and type mismatches are rejected with diagnostics
that name the section/key and, where possible, the source line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .planner import Scheme
from .species import RAW_FIELDS, MolecularSpecies, get_species, ingest_species

SWEEP_AXES = ("q_factor", "temperature_k", "jmax_x2")

_SECTION_KEYS = {
    "species": {"name", *RAW_FIELDS},
    "cavity": {"mode", "s", "q_factor", "lambda_m"},
    "plan": {"scheme", "jmax_x2", "efield_max_v_per_m"},
    "simulate": {"temperature_k", "nbar", "stage_cycles", "include_offresonant"},
    "sweep": {"axis", "values"},
}


class ConfigError(ValueError):
    """A run configuration is malformed or inconsistent."""


@dataclass(frozen=True)
class RunConfig:
    """Validated, fully defaulted inputs for one CLI run."""

    species: MolecularSpecies
    scheme: Scheme
    two_jmax: int
    cavity_mode: str          # "A" | "B" | "manual"
    s: int
    q_factor: float
    lambda_m: float | None
    efield_max: float | None
    temperature_k: float
    nbar_mode: str            # "zero" | "planck"
    stage_cycles: float
    include_offresonant: bool
    sweep_axis: str | None = None
    sweep_values: tuple[float, ...] | None = None


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        header = re.match(r"^\s*\[\s*([^]\s]+)\s*\]", line)
        if header:
            current = header.group(1)
            if key is None and current == section:
                return number
            continue
        if key is not None and current == section:
            if re.match(rf"^\s*{re.escape(key)}\s*=", line):
                return number
    return None


def _fail(text: str, section: str, key: str | None, message: str) -> ConfigError:
    where = f"[{section}]" + (f" {key}" if key else "")
    line = _line_of(text, section, key)
    suffix = f" (line {line})" if line is not None else ""
    return ConfigError(f"{where}: {message}{suffix}")


def _check_sections(text: str, doc: dict) -> None:
    for section, content in doc.items():
        if section not in _SECTION_KEYS:
            raise _fail(text, section, None, "unknown section")
        if not isinstance(content, dict):
            raise _fail(text, section, None, "expected a table")
        for key in content:
            if key not in _SECTION_KEYS[section]:
                raise _fail(text, section, key, "unknown key")


def _get(
    text: str,
    doc: dict,
    section: str,
    key: str,
    kind: type | tuple[type, ...],
    default=None,
    required: bool = False,
):
    table = doc.get(section, {})
    if key not in table:
        if required:
            raise _fail(text, section, key, "missing required key")
        return default
    value = table[key]
    if isinstance(value, bool) and bool not in (kind if isinstance(kind, tuple) else (kind,)):
        raise _fail(text, section, key, f"expected {_kind_name(kind)}, got bool")
    if not isinstance(value, kind):
        raise _fail(text, section, key, f"expected {_kind_name(kind)}, got {type(value).__name__}")
    return value


def _kind_name(kind) -> str:
    if isinstance(kind, tuple):
        return "/".join(k.__name__ for k in kind)
    return kind.__name__


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML configuration document."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc
    _check_sections(text, doc)

    species = _parse_species(text, doc)

    scheme_name = _get(text, doc, "plan", "scheme", str, required=True)
    try:
        scheme = Scheme(scheme_name)
    except ValueError:
        choices = ", ".join(s.value for s in Scheme)
        raise _fail(text, "plan", "scheme", f"must be one of: {choices}") from None
    two_jmax = _get(text, doc, "plan", "jmax_x2", int, required=True)
    if two_jmax % 2 != species.two_omega % 2:
        raise _fail(
            text,
            "plan",
            "jmax_x2",
            f"parity mismatch: jmax_x2={two_jmax} but 2*Omega={species.two_omega}",
        )
    if two_jmax < species.two_omega + 2:
        raise _fail(
            text, "plan", "jmax_x2", f"must be at least 2*Omega+2 = {species.two_omega + 2}"
        )
    efield_max = _get(text, doc, "plan", "efield_max_v_per_m", (int, float))
    efield_max = float(efield_max) if efield_max is not None else None

    mode, s, q_factor, lambda_m = _parse_cavity(text, doc, scheme)

    temperature = float(_get(text, doc, "simulate", "temperature_k", (int, float), default=1.0))
    if temperature <= 0.0:
        raise _fail(text, "simulate", "temperature_k", "must be positive")
    nbar_mode = _get(text, doc, "simulate", "nbar", str, default="zero")
    if nbar_mode not in ("zero", "planck"):
        raise _fail(text, "simulate", "nbar", "must be 'zero' or 'planck'")
    stage_cycles = float(_get(text, doc, "simulate", "stage_cycles", (int, float), default=4.0))
    if stage_cycles <= 0.0:
        raise _fail(text, "simulate", "stage_cycles", "must be positive")
    include_off = _get(text, doc, "simulate", "include_offresonant", bool, default=False)

    sweep_axis, sweep_values = _parse_sweep(text, doc)

    return RunConfig(
        species=species,
        scheme=scheme,
        two_jmax=two_jmax,
        cavity_mode=mode,
        s=s,
        q_factor=q_factor,
        lambda_m=lambda_m,
        efield_max=efield_max,
        temperature_k=temperature,
        nbar_mode=nbar_mode,
        stage_cycles=stage_cycles,
        include_offresonant=include_off,
        sweep_axis=sweep_axis,
        sweep_values=sweep_values,
    )


def _parse_species(text: str, doc: dict) -> MolecularSpecies:
    if "species" not in doc:
        raise ConfigError("missing [species] section")
    table = doc["species"]
    if "name" in table:
        extras = sorted(set(table) - {"name"})
        if extras:
            raise _fail(
                text, "species", extras[0], "inline constants cannot be mixed with name="
            )
        name = _get(text, doc, "species", "name", str, required=True)
        return get_species(name)
    missing = [key for key in RAW_FIELDS if key not in table]
    if missing:
        raise _fail(
            text, "species", None, f"needs name= or all inline fields (missing {missing[0]})"
        )
    for key in RAW_FIELDS:
        _get(text, doc, "species", key, (int, float), required=True)
    from .species import SpeciesError

    try:
        return ingest_species(table, name="custom")
    except SpeciesError as exc:
        raise _fail(text, "species", None, str(exc)) from exc


def _parse_cavity(text: str, doc: dict, scheme: Scheme) -> tuple[str, int, float, float | None]:
    natural = {
        Scheme.PI_ONLY: "A",
        Scheme.SEQ_A: "A",
        Scheme.SEQ_B: "B",
        Scheme.COMBINED: "combined",
    }[scheme]
    mode = _get(text, doc, "cavity", "mode", str, default=None)
    if mode is None:
        mode = natural
    elif mode not in ("A", "B", "manual"):
        raise _fail(text, "cavity", "mode", "must be 'A', 'B' or 'manual'")
    elif scheme is Scheme.COMBINED:
        raise _fail(
            text, "cavity", "mode", "the combined scheme builds both cavities; omit mode"
        )
    elif mode != "manual" and mode != natural:
        raise _fail(
            text, "cavity", "mode", f"scheme '{scheme.value}' needs cavity mode '{natural}'"
        )
    s = _get(text, doc, "cavity", "s", int, default=1)
    if s < 1:
        raise _fail(text, "cavity", "s", "must be >= 1")
    q_factor = float(_get(text, doc, "cavity", "q_factor", (int, float), default=1e6))
    if q_factor <= 0.0:
        raise _fail(text, "cavity", "q_factor", "must be positive")
    lambda_m = _get(text, doc, "cavity", "lambda_m", (int, float), default=None)
    if mode == "manual":
        if lambda_m is None:
            raise _fail(text, "cavity", "lambda_m", "required for mode='manual'")
        lambda_m = float(lambda_m)
        if lambda_m <= 0.0:
            raise _fail(text, "cavity", "lambda_m", "must be positive")
    elif lambda_m is not None:
        raise _fail(text, "cavity", "lambda_m", "only allowed with mode='manual'")
    return mode, s, q_factor, lambda_m


def _parse_sweep(text: str, doc: dict) -> tuple[str | None, tuple[float, ...] | None]:
    if "sweep" not in doc:
        return None, None
    axis = _get(text, doc, "sweep", "axis", str, required=True)
    if axis not in SWEEP_AXES:
        raise _fail(text, "sweep", "axis", f"must be one of: {', '.join(SWEEP_AXES)}")
    values = _get(text, doc, "sweep", "values", list, required=True)
    if not values:
        raise _fail(text, "sweep", "values", "must not be empty")
    numbers = []
    for value in values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _fail(text, "sweep", "values", "entries must be numbers")
        if axis == "jmax_x2" and value != int(value):
            raise _fail(text, "sweep", "values", "jmax_x2 values must be integers")
        numbers.append(float(value))
    return axis, tuple(numbers)


def config_for_sweep_value(config: RunConfig, axis: str, value: float) -> RunConfig:
    """A copy of the config with one sweep axis replaced."""
    if axis == "q_factor":
        return replace(config, q_factor=value)
    if axis == "temperature_k":
        return replace(config, temperature_k=value)
    if axis == "jmax_x2":
        return replace(config, two_jmax=int(value))
    raise ConfigError(f"unknown sweep axis '{axis}'")
