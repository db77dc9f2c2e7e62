"""Read and write the JSON input formats.

Five kinds of file are recognised by their keys:

| Kind | Shape |
|---|---|
| `matroid` | `{"type": "bases", "n": 3, "bases": [[0, 1], [0, 2], [1, 2]]}` |
| | `{"type": "cyclic_flats", "n": 6, "flats": [{"set": [0, 1, 2], "rank": 2}, ...]}` |
| | `{"type": "uniform", "n": 3, "r": 2}` |
| `configuration` | `{"nodes": [{"size": 0, "rank": 0}, ...], "leq": [[0, 1], ...]}` |
| `condensed` | `{"blocks": [{"size": 0, "rank": 0}, ...], "A": [[1, 1], [0, 1]]}` |
| `pmd` | `{"k": [0, 1, 3, 7]}` |
| `permutations` | `{"n": 6, "generators": [[3, 4, 5, 0, 1, 2]]}` |

In a configuration file `leq` may list covering pairs only; the order is
closed on load. Files are UTF-8 and `-` reads standard input.

See Also:
    `cyclic_tutte.engine.compute_rgp`: Dispatches a loaded input to its engine.
"""

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter
from pydantic import ValidationError as PydanticValidationError

from cyclic_tutte.condensation import CondensedConfiguration
from cyclic_tutte.configuration import Configuration
from cyclic_tutte.errors import CyclicTutteError, ValidationError
from cyclic_tutte.matroid import Matroid
from cyclic_tutte.pmd import PmdSpec

NonNegative = Annotated[int, Field(ge=0)]


class _FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BasesMatroidFile(_FileModel):
    type: Literal["bases"]
    n: NonNegative
    bases: list[list[NonNegative]]


class FlatEntry(_FileModel):
    set: list[NonNegative]
    rank: NonNegative


class CyclicFlatsMatroidFile(_FileModel):
    type: Literal["cyclic_flats"]
    n: NonNegative
    flats: list[FlatEntry]


class UniformMatroidFile(_FileModel):
    type: Literal["uniform"]
    n: NonNegative
    r: NonNegative


MatroidFile = Annotated[
    Union[BasesMatroidFile, CyclicFlatsMatroidFile, UniformMatroidFile],
    Field(discriminator="type"),
]


class LabelEntry(_FileModel):
    size: NonNegative
    rank: NonNegative


class ConfigurationFile(_FileModel):
    nodes: list[LabelEntry]
    leq: list[tuple[NonNegative, NonNegative]]


class CondensedFile(_FileModel):
    blocks: list[LabelEntry]
    A: list[list[NonNegative]]


class PmdFile(_FileModel):
    k: list[NonNegative]


class PermutationFile(_FileModel):
    n: NonNegative
    generators: list[list[NonNegative]]


_KIND_KEYS = {
    "type": "matroid",
    "nodes": "configuration",
    "blocks": "condensed",
    "k": "pmd",
    "generators": "permutations",
}

_MODELS = {
    "matroid": TypeAdapter(MatroidFile),
    "configuration": TypeAdapter(ConfigurationFile),
    "condensed": TypeAdapter(CondensedFile),
    "pmd": TypeAdapter(PmdFile),
    "permutations": TypeAdapter(PermutationFile),
}


@dataclass(frozen=True)
class LoadedInput:
    """A parsed and validated input file.

    Attributes:
        kind: One of `matroid`, `configuration`, `condensed`, `pmd`, `permutations`.
        value: The domain object (`Matroid`, `Configuration`,
            `CondensedConfiguration`, `PmdSpec` or a list of generators).
        source: Path or `-`.
    """
    kind: str
    value: Any
    source: str


def read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"Cannot read {source}: {e.strerror or e}.") from e


def detect_kind(data: Any) -> str:
    """Name the input kind of decoded JSON by its distinguishing key.

    Raises:
        ValidationError: If the data is not an object or no key matches.
    """
    if not isinstance(data, dict):
        raise ValidationError("Input must be a JSON object.")
    for key, kind in _KIND_KEYS.items():
        if key in data:
            return kind
    raise ValidationError(f"Cannot tell the input kind from keys {sorted(data)}.")


def _format_pydantic(e: PydanticValidationError) -> str:
    parts = []
    for err in e.errors():
        where = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{where}: {err['msg']}")
    return "; ".join(parts)


def _to_domain(kind: str, model: Any) -> Any:
    if kind == "matroid":
        if isinstance(model, UniformMatroidFile):
            return Matroid.uniform(model.r, model.n)
        if isinstance(model, BasesMatroidFile):
            return Matroid.from_bases(model.n, model.bases)
        return Matroid.from_cyclic_flats(model.n, [(entry.set, entry.rank) for entry in model.flats])
    if kind == "configuration":
        return Configuration.build([(node.size, node.rank) for node in model.nodes], model.leq)
    if kind == "condensed":
        return CondensedConfiguration.build([(block.size, block.rank) for block in model.blocks], model.A)
    if kind == "pmd":
        return PmdSpec(tuple(model.k))
    for g, perm in enumerate(model.generators):
        if sorted(perm) != list(range(model.n)):
            raise ValidationError(f"Generator {g} is not a permutation of 0..{model.n - 1}.")
    return [list(perm) for perm in model.generators]


def parse_input(text: str, source: str = "<string>", expect: str | None = None) -> LoadedInput:
    """Parse JSON text into a validated domain object.

    Args:
        text: The file contents.
        source: Where the text came from, for messages.
        expect: Required kind, if any.

    Raises:
        ValidationError: On malformed JSON, an unknown or unexpected kind,
            a schema error, or a structural invariant of the domain object.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{source} is not valid JSON: {e.msg} (line {e.lineno}).") from e
    kind = detect_kind(data)
    if expect is not None and kind != expect:
        raise ValidationError(f"{source} holds a {kind} input, expected {expect}.")
    try:
        model = _MODELS[kind].validate_python(data)
    except PydanticValidationError as e:
        raise ValidationError(f"{source}: {_format_pydantic(e)}") from None
    return LoadedInput(kind=kind, value=_to_domain(kind, model), source=source)


def load_input(source: str, expect: str | None = None) -> LoadedInput:
    """Read and parse a file (or `-` for standard input)."""
    return parse_input(read_text(source), source, expect)


def validate_input(text: str) -> list[str]:
    """Collect the problems of an input file.

    Returns a list of error messages. An empty list means the input is valid.
    """
    try:
        parse_input(text)
    except CyclicTutteError as e:
        return [str(e)]
    return []


def configuration_to_json(c: Configuration) -> str:
    """Serialise `c` with its covering pairs. Equal configurations give equal text."""
    model = ConfigurationFile(
        nodes=[LabelEntry(size=s, rank=r) for s, r in c.labels],
        leq=c.covers(),
    )
    return model.model_dump_json(indent=2) + "\n"


def condensed_to_json(cc: CondensedConfiguration) -> str:
    model = CondensedFile(
        blocks=[LabelEntry(size=s, rank=r) for s, r in cc.labels],
        A=[list(row) for row in cc.a],
    )
    return model.model_dump_json(indent=2) + "\n"
