from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional, Union

from dissect.winratio.config import key_values, read_config_lines
from dissect.winratio.core import Alpha
from dissect.winratio.exceptions import ConfigError
from dissect.winratio.hypothesis import TestMethod, parse_tests
from dissect.winratio.intervals import NbMethod, WrMethod, parse_methods
from dissect.winratio.simulation.scenario import SimScenario, StudyKind

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_SIMULATION", "CRITICAL"))

DEFAULT_REPLICATES = 100_000
DEFAULT_SEED = 20_240_101

# Grid axes per study kind, outermost first
STUDY_AXES = {
    StudyKind.TYPE_ONE_ERROR: ("n", "pi"),
    StudyKind.POWER: ("n", "pw", "pl"),
    StudyKind.NET_BENEFIT: ("n", "nb", "pt"),
    StudyKind.WIN_RATIO: ("n", "wr", "pt"),
}


@dataclass
class GridDefaults:
    replicates: int = DEFAULT_REPLICATES
    seed: int = DEFAULT_SEED
    alpha: float = 0.05
    z: Optional[float] = None


@dataclass
class _Study:
    kind: StudyKind
    where: str
    axes: dict[str, list] = field(default_factory=dict)
    methods: tuple = ()
    replicates: Optional[int] = None
    seed: Optional[int] = None


def _parse_int(value: str, where: str, minimum: int = 0) -> int:
    try:
        result = int(value)
    except ValueError:
        raise ConfigError(f"{where}: not an integer {value!r}")
    if result < minimum:
        raise ConfigError(f"{where}: must be at least {minimum}, got {result}")
    return result


def _parse_float(value: str, where: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{where}: not a number {value!r}")


def _parse_list(value: str, where: str, parse: Callable[[str, str], Union[int, float]]) -> list:
    items = [item for item in value.split(",") if item]
    if not items:
        raise ConfigError(f"{where}: empty list")
    return [parse(item, where) for item in items]


def _parse_defaults(tokens: list[str], where: str, defaults: GridDefaults) -> None:
    for key, value in key_values(tokens, where):
        field_where = f"{where}.{key}"
        if key == "replicates":
            defaults.replicates = _parse_int(value, field_where, minimum=1)
        elif key == "seed":
            defaults.seed = _parse_int(value, field_where)
        elif key == "alpha":
            defaults.alpha = _parse_float(value, field_where)
            if not 0 < defaults.alpha < 1:
                raise ConfigError(f"{field_where}: must be in (0, 1), got {value}")
        elif key == "z":
            defaults.z = _parse_float(value, field_where)
            if defaults.z <= 0:
                raise ConfigError(f"{field_where}: must be positive, got {value}")
        else:
            raise ConfigError(f"{field_where}: unknown field")


def _parse_study(tokens: list[str], where: str) -> _Study:
    if not tokens:
        raise ConfigError(f"{where}: missing study kind")

    try:
        kind = StudyKind(tokens[0])
    except ValueError:
        raise ConfigError(f"{where}.kind: unknown study kind {tokens[0]!r}")

    study = _Study(kind, where)
    axes = STUDY_AXES[kind]
    for key, value in key_values(tokens[1:], where):
        field_where = f"{where}.{key}"
        if key == "n":
            study.axes[key] = _parse_list(value, field_where, lambda item, w: _parse_int(item, w, minimum=1))
        elif key in axes:
            study.axes[key] = _parse_list(value, field_where, _parse_float)
        elif key == "tests" and kind in (StudyKind.TYPE_ONE_ERROR, StudyKind.POWER):
            try:
                study.methods = parse_tests(value)
            except ValueError as e:
                raise ConfigError(f"{field_where}: {e}")
        elif key == "methods" and kind in (StudyKind.NET_BENEFIT, StudyKind.WIN_RATIO):
            try:
                study.methods = parse_methods(value, NbMethod if kind == StudyKind.NET_BENEFIT else WrMethod)
            except ValueError as e:
                raise ConfigError(f"{field_where}: {e}")
        elif key == "replicates":
            study.replicates = _parse_int(value, field_where, minimum=1)
        elif key == "seed":
            study.seed = _parse_int(value, field_where)
        else:
            raise ConfigError(f"{field_where}: unknown field for {kind.value} study")

    for axis in axes:
        if axis not in study.axes:
            raise ConfigError(f"{where}.{axis}: missing")

    if not study.methods:
        if kind in (StudyKind.TYPE_ONE_ERROR, StudyKind.POWER):
            study.methods = (TestMethod.Z_CORRECTED, TestMethod.Z_POCOCK)
        else:
            study.methods = tuple(NbMethod if kind == StudyKind.NET_BENEFIT else WrMethod)

    return study


def _expand(study: _Study, defaults: GridDefaults, first_stream: int) -> list[SimScenario]:
    common = {
        "replicates": study.replicates or defaults.replicates,
        "seed": study.seed if study.seed is not None else defaults.seed,
        "alpha": Alpha(defaults.alpha, defaults.z),
    }
    names = STUDY_AXES[study.kind]

    scenarios = []
    for stream, values in enumerate(itertools.product(*(study.axes[name] for name in names)), start=first_stream):
        cell = dict(zip(names, values))
        try:
            if study.kind == StudyKind.TYPE_ONE_ERROR:
                scenario = SimScenario.raw(cell["n"], cell["pi"], cell["pi"], tests=study.methods, **common)
            elif study.kind == StudyKind.POWER:
                if cell["pw"] == cell["pl"]:
                    raise ValueError("power study needs pw != pl")
                scenario = SimScenario.raw(cell["n"], cell["pw"], cell["pl"], tests=study.methods, **common)
            elif study.kind == StudyKind.NET_BENEFIT:
                scenario = SimScenario.from_nb(cell["n"], cell["nb"], cell["pt"], nb_methods=study.methods, **common)
            else:
                scenario = SimScenario.from_wr(cell["n"], cell["wr"], cell["pt"], wr_methods=study.methods, **common)
        except ValueError as e:
            raise ConfigError(f"{study.where}: cell {cell}: {e}")

        scenarios.append(replace(scenario, stream=stream))

    return scenarios


def parse_grid(
    source: Union[str, Path],
    text: Optional[str] = None,
    replicates: Optional[int] = None,
    seed: Optional[int] = None,
) -> list[SimScenario]:
    """Parse a simulation grid document into scenarios.

    A ``defaults`` line sets the replicate count, seed, level and optionally a fixed critical value. Every
    ``study`` line expands into the cartesian product of its lists, the first axis being the outermost::

        defaults replicates 100000 seed 1 alpha 0.05
        study type1 n 30,40 pi 0.1,0.2 tests z,z-pocock
        study power n 30 pw 0.4,0.5 pl 0.3
        study nb n 30,50 nb 0.25 pt 0.1,0.2 methods wald,mover-wilson
        study wr n 30 wr 2 pt 0.5 methods fieller

    Scenarios get consecutive stream keys in file order. ``replicates`` and ``seed`` override every value given in
    the document.
    """
    if replicates is not None and replicates < 1:
        raise ConfigError(f"{source}: replicates: must be at least 1, got {replicates}")
    if seed is not None and not 0 <= seed < 2**64:
        raise ConfigError(f"{source}: seed: must be a 64-bit unsigned integer, got {seed}")

    defaults = GridDefaults()
    studies = []
    for line in read_config_lines(source, text):
        where = f"{source}:{line.lineno}"
        if line.keyword == "defaults":
            if studies:
                raise ConfigError(f"{where}: defaults must precede every study")
            _parse_defaults(line.tokens, f"{where}: defaults", defaults)
        elif line.keyword == "study":
            study = _parse_study(line.tokens, f"{where}: study[{len(studies)}]")
            if replicates is not None:
                study.replicates = replicates
            if seed is not None:
                study.seed = seed
            studies.append(study)
        else:
            raise ConfigError(f"{where}: unknown statement {line.keyword!r}")

    if replicates is not None:
        defaults.replicates = replicates
    if seed is not None:
        defaults.seed = seed

    scenarios = []
    for study in studies:
        scenarios.extend(_expand(study, defaults, len(scenarios)))

    log.debug("Expanded %d studies from %s into %d scenarios", len(studies), source, len(scenarios))
    return scenarios


def read_grid(
    path: Union[str, Path], replicates: Optional[int] = None, seed: Optional[int] = None
) -> list[SimScenario]:
    return parse_grid(path, replicates=replicates, seed=seed)
