from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from importlib import resources
import json
import logging
import os
from pathlib import Path
from typing import Iterable, Sequence

from src.codes.alphabet import PhaseAlphabet
from src.codes.code import Code, CodeSet, code_from_signs
from src.codes.errors import CodeError, DocumentError

logger = logging.getLogger(__name__)

FORMAT_VERSION = "1"
FIXTURES = {
    "example1_seed": "example1_seed.txt",
    "example1_szccs": "example1_szccs.txt",
}
SET_SEPARATOR = "="

Phases = tuple[tuple[int, ...], ...]


class Kind(StrEnum):
    CODE = "code"
    CODE_SET = "code_set"
    SZCCS_BUNDLE = "szccs_bundle"


@dataclass(frozen=True, slots=True)
class CodeSetDocument:
    """Persistent form of a code, a code set or a bundle of code sets."""

    kind: Kind
    m: int
    n: int
    k: int
    root_order: int
    codes: tuple[Phases, ...]
    group_sizes: tuple[int, ...]
    provenance: dict[str, object] = field(default_factory=dict)
    verdicts: tuple[dict[str, object], ...] = ()
    format_version: str = FORMAT_VERSION

    def __post_init__(self) -> None:
        if len(self.codes) != self.k or self.k < 1:
            raise DocumentError(f"document declares k={self.k} but holds {len(self.codes)} codes")
        if sum(self.group_sizes) != self.k:
            raise DocumentError(f"group sizes {list(self.group_sizes)} do not add up to k={self.k}")
        for index, phases in enumerate(self.codes):
            if len(phases) != self.m or any(len(row) != self.n for row in phases):
                raise DocumentError(f"code {index} is not {self.m}x{self.n}")
            if any(not 0 <= p < self.root_order for row in phases for p in row):
                raise DocumentError(f"code {index} has phases outside [0, {self.root_order})")

    @classmethod
    def from_sets(
        cls,
        sets: Sequence[CodeSet],
        *,
        kind: Kind | None = None,
        provenance: dict[str, object] | None = None,
        verdicts: Iterable[dict[str, object]] = (),
    ) -> "CodeSetDocument":
        union = CodeSet.of(code for code_set in sets for code in code_set)
        if kind is None:
            kind = Kind.SZCCS_BUNDLE if len(sets) > 1 else (Kind.CODE if union.size == 1 else Kind.CODE_SET)
        return cls(
            kind=kind,
            m=union.rows,
            n=union.cols,
            k=union.size,
            root_order=union.alphabet.q,
            codes=tuple(_phases_tuple(code) for code in union),
            group_sizes=tuple(s.size for s in sets),
            provenance=dict(provenance or {}),
            verdicts=tuple(verdicts),
        )

    @classmethod
    def from_code(
        cls,
        code: Code,
        *,
        provenance: dict[str, object] | None = None,
        verdicts: Iterable[dict[str, object]] = (),
    ) -> "CodeSetDocument":
        return cls.from_sets([CodeSet.of([code])], kind=Kind.CODE, provenance=provenance, verdicts=verdicts)

    def code(self, index: int) -> Code:
        if not 0 <= index < self.k:
            raise DocumentError(f"code index {index} outside [0, {self.k})")
        return Code(list(self.codes[index]), PhaseAlphabet(self.root_order))

    def code_set(self) -> CodeSet:
        return CodeSet.of(self.code(i) for i in range(self.k))

    def code_sets(self) -> list[CodeSet]:
        sets = []
        start = 0
        for size in self.group_sizes:
            sets.append(CodeSet.of(self.code(i) for i in range(start, start + size)))
            start += size
        return sets

    def is_binary(self) -> bool:
        return all(self.code(i).is_binary() for i in range(self.k))

    def to_dict(self) -> dict[str, object]:
        return {
            "format_version": self.format_version,
            "kind": str(self.kind),
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "root_order": self.root_order,
            "group_sizes": list(self.group_sizes),
            "codes": [[list(row) for row in code] for code in self.codes],
            "provenance": self.provenance,
            "verdicts": list(self.verdicts),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, raw: str) -> "CodeSetDocument":
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not a JSON document: {exc}") from exc
        if not isinstance(data, dict):
            raise DocumentError("JSON document must be an object")
        version = str(data.get("format_version", ""))
        if version != FORMAT_VERSION:
            raise DocumentError(f"unsupported format_version {version!r}, expected {FORMAT_VERSION!r}")
        try:
            codes = tuple(
                tuple(tuple(_exact_int(p, "phase") for p in row) for row in code) for code in data["codes"]
            )
            return cls(
                kind=Kind(data["kind"]),
                m=_exact_int(data["m"], "m"),
                n=_exact_int(data["n"], "n"),
                k=_exact_int(data["k"], "k"),
                root_order=_exact_int(data["root_order"], "root_order"),
                codes=codes,
                group_sizes=tuple(_exact_int(s, "group size") for s in data.get("group_sizes", [len(codes)])),
                provenance=dict(data.get("provenance", {})),
                verdicts=tuple(data.get("verdicts", [])),
                format_version=version,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError(f"malformed document: {exc!r}") from exc

    def to_text(self) -> str:
        """+/- text; codes separated by a blank line, code sets by a line of '='."""
        if not self.is_binary():
            raise DocumentError(f"codes over q={self.root_order} cannot be written as +/- text")
        blocks: list[str] = []
        start = 0
        for size in self.group_sizes:
            codes = ["\n".join(self.code(i).to_signs()) for i in range(start, start + size)]
            blocks.append("\n\n".join(codes))
            start += size
        return f"\n{SET_SEPARATOR * self.n}\n".join(blocks) + "\n"

    @classmethod
    def from_text(cls, raw: str, *, provenance: dict[str, object] | None = None) -> "CodeSetDocument":
        groups: list[list[list[str]]] = [[[]]]
        for line in raw.splitlines():
            stripped = line.strip()
            if stripped.startswith("#"):
                continue
            if stripped and set(stripped) == {SET_SEPARATOR}:
                groups.append([[]])
            elif not stripped:
                groups[-1].append([])
            else:
                groups[-1][-1].append(stripped)
        grouped = [[rows for rows in group if rows] for group in groups]
        grouped = [group for group in grouped if group]
        if not grouped:
            raise DocumentError("text document holds no codes")
        try:
            sets = [CodeSet.of(code_from_signs(rows) for rows in group) for group in grouped]
            return cls.from_sets(sets, provenance=provenance)
        except CodeError as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError(f"malformed +/- document: {exc}") from exc


def _phases_tuple(code: Code) -> Phases:
    return tuple(tuple(int(p) for p in row) for row in code.phases)


def _exact_int(value: object, what: str) -> int:
    # bool is an int subclass; floats would truncate silently
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{what} must be an integer, got {value!r}")
    return value


def load_document(path: str | Path) -> CodeSetDocument:
    path = Path(path).expanduser()
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    if path.suffix == ".json":
        return CodeSetDocument.from_json(raw)
    return CodeSetDocument.from_text(raw, provenance={"source": path.name})


def load_fixture(name: str) -> CodeSetDocument:
    if name not in FIXTURES:
        raise DocumentError(f"unknown fixture {name!r}; available: {sorted(FIXTURES)}")
    raw = resources.files("src.cli").joinpath("data", FIXTURES[name]).read_text(encoding="utf-8")
    return CodeSetDocument.from_text(raw, provenance={"fixture": name})


def resolve_document(ref: str | Path) -> CodeSetDocument:
    """A path if it exists, otherwise the name of a bundled fixture."""
    path = Path(ref).expanduser()
    if path.exists():
        return load_document(path)
    if str(ref) in FIXTURES:
        return load_fixture(str(ref))
    raise DocumentError(f"{ref} is neither a readable file nor a bundled fixture")


def save_document(document: CodeSetDocument, path: str | Path, *, fmt: str = "json") -> Path:
    path = Path(path).expanduser()
    payload = document.to_json() if fmt == "json" else document.to_text()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_suffix(path.suffix + ".tmp")
    tmp_path.write_text(payload, encoding="utf-8")
    os.replace(tmp_path, path)
    logger.info("wrote %s document with %d code(s) to %s", document.kind, document.k, path)
    return path
