"""Hierarchical administrative-division database.

Three levels are covered: province-level units (level 1), prefecture-level
cities (level 2), and counties/districts (level 3). Each record carries a
standard name plus optional aliases; lookups resolve any surface form to the
full set of matching records, so duplicate names (e.g. the two 朝阳区) stay
ambiguous until context disambiguates them.

Municipalities that administer districts directly (北京市, 上海市, ...) are
stored with an explicit self-named level-2 record so that every complete
division path is a uniform 3-slot chain.

Data format: JSONL, one record per line (lines starting with "#" are
comments):

    {"code": str, "name": str, "aliases": [str], "level": 1|2|3,
     "parent_code": str|null}
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import ClassVar


def bundled_gazetteer_path() -> Path:
    return Path(str(resources.files("locnorm").joinpath("data/gazetteer.jsonl")))


class GazetteerError(ValueError):
    """Raised when the division database fails validation."""


@dataclass(frozen=True, slots=True)
class AdRecord:
    """One administrative division."""

    code: str
    name: str
    aliases: tuple[str, ...]
    level: int
    parent_code: str | None

    def surfaces(self) -> tuple[str, ...]:
        return (self.name, *self.aliases)


@dataclass(frozen=True, slots=True)
class AdPath:
    """A (possibly partial) three-slot division hierarchy.

    ``levels`` holds the standard names for level 1..3 (None where unknown),
    ``codes`` the parallel record codes. Paths produced from gazetteer
    records are always prefix-shaped: every non-null level's ancestors are
    non-null.
    """

    levels: tuple[str | None, str | None, str | None]
    codes: tuple[str | None, str | None, str | None]

    EMPTY: ClassVar["AdPath"]  # the all-null path, set below

    @property
    def l1(self) -> str | None:
        return self.levels[0]

    @property
    def l2(self) -> str | None:
        return self.levels[1]

    @property
    def l3(self) -> str | None:
        return self.levels[2]

    @property
    def depth(self) -> int:
        """Deepest non-null level (0 for the all-null path)."""
        for i in (2, 1, 0):
            if self.levels[i] is not None:
                return i + 1
        return 0

    def truncated(self, depth: int) -> "AdPath":
        """Copy with every level deeper than ``depth`` reset to null."""
        keep = lambda i: i < depth  # noqa: E731
        return AdPath(
            tuple(v if keep(i) else None for i, v in enumerate(self.levels)),
            tuple(v if keep(i) else None for i, v in enumerate(self.codes)),
        )

    def is_empty(self) -> bool:
        return all(v is None for v in self.levels)

    def extends(self, other: "AdPath") -> bool:
        """True if every non-null level of ``other`` agrees with this path."""
        return all(
            o is None or o == s for o, s in zip(other.levels, self.levels)
        )


AdPath.EMPTY = AdPath((None, None, None), (None, None, None))

_VALID_LEVELS = (1, 2, 3)


class Gazetteer:
    """Immutable division database with exact surface-form lookup."""

    def __init__(self, records: list[AdRecord]):
        self._by_code: dict[str, AdRecord] = {}
        self._surface_index: dict[str, set[AdRecord]] = {}
        self._children: dict[str | None, list[AdRecord]] = {}
        seen_name_parent: set[tuple[str, str | None]] = set()

        for rec in records:
            if rec.code in self._by_code:
                raise GazetteerError(f"duplicate code {rec.code!r}")
            key = (rec.name, rec.parent_code)
            if key in seen_name_parent:
                raise GazetteerError(
                    f"duplicate (name, parent) pair {key!r} at code {rec.code!r}"
                )
            seen_name_parent.add(key)
            self._by_code[rec.code] = rec

        for rec in records:
            if rec.level == 1:
                if rec.parent_code is not None:
                    raise GazetteerError(
                        f"level-1 record {rec.code!r} must not have a parent"
                    )
            else:
                parent = self._by_code.get(rec.parent_code or "")
                if parent is None:
                    raise GazetteerError(
                        f"record {rec.code!r} has dangling parent_code "
                        f"{rec.parent_code!r}"
                    )
                if parent.level != rec.level - 1:
                    raise GazetteerError(
                        f"record {rec.code!r} (level {rec.level}) has parent "
                        f"{parent.code!r} of level {parent.level}"
                    )
            for surface in rec.surfaces():
                self._surface_index.setdefault(surface, set()).add(rec)
            self._children.setdefault(rec.parent_code, []).append(rec)

        for group in self._children.values():
            group.sort(key=lambda r: r.code)

        # every record's full path is cached up front: expansion sits on the
        # per-document hot path, and building the cache validates every chain
        self._path_by_code: dict[str, AdPath] = {
            rec.code: self._walk_chain(rec) for rec in records
        }
        self._all_surfaces = frozenset(self._surface_index)

    def _walk_chain(self, record: AdRecord) -> AdPath:
        names: list[str | None] = [None, None, None]
        codes: list[str | None] = [None, None, None]
        cur: AdRecord | None = record
        hops = 0
        while cur is not None:
            names[cur.level - 1] = cur.name
            codes[cur.level - 1] = cur.code
            if cur.level == 1:
                cur = None
            else:
                nxt = self._by_code.get(cur.parent_code or "")
                if nxt is None:
                    raise GazetteerError(f"broken parent chain above {record.code!r}")
                cur = nxt
            hops += 1
            if hops > len(_VALID_LEVELS):
                raise GazetteerError(f"parent cycle at {record.code!r}")
        return AdPath(tuple(names), tuple(codes))

    def __len__(self) -> int:
        return len(self._by_code)

    def __iter__(self):
        return iter(sorted(self._by_code.values(), key=lambda r: r.code))

    def record(self, code: str) -> AdRecord:
        return self._by_code[code]

    def surfaces(self) -> frozenset[str]:
        """All names and aliases known to the database."""
        return self._all_surfaces

    def lookup(self, surface: str) -> set[AdRecord]:
        """All records whose name or alias equals ``surface`` exactly."""
        return set(self._surface_index.get(surface, ()))

    def expand_to_paths(self, record: AdRecord) -> list[AdPath]:
        """Expand a record to full hierarchy paths by walking parent links.

        With a validated database the parent chain is unique, so the result
        holds exactly one path; levels below the record's own level are null.
        """
        path = self._path_by_code.get(record.code)
        if path is None or self._by_code.get(record.code) is not record:
            raise GazetteerError(f"record {record.code!r} does not belong here")
        return [path]

    def children(self, path: AdPath) -> list[AdRecord]:
        """Records one level below the deepest non-null element of ``path``.

        For the all-null path this is every level-1 record. Calling on a
        depth-3 path is a contract violation.
        """
        depth = path.depth
        if depth >= 3:
            raise ValueError("path is already complete; it has no children")
        if depth == 0:
            return list(self._children.get(None, ()))
        return list(self._children.get(path.codes[depth - 1], ()))

    def parent_names(self, name: str) -> set[str]:
        """Standard names of the direct parents of every record named ``name``."""
        out: set[str] = set()
        for rec in self._surface_index.get(name, ()):
            if rec.name != name or rec.parent_code is None:
                continue
            out.add(self._by_code[rec.parent_code].name)
        return out

    def paths_for_name(self, name: str) -> list[AdPath]:
        """Expanded paths of every record whose standard name is ``name``."""
        paths: list[AdPath] = []
        for rec in sorted(self._surface_index.get(name, ()), key=lambda r: r.code):
            if rec.name == name:
                paths.extend(self.expand_to_paths(rec))
        return paths

    def validate_path(self, path: AdPath) -> bool:
        """Check every consecutive non-null pair is a true parent/child edge."""
        for upper, lower in ((0, 1), (1, 2)):
            code = path.codes[lower]
            if code is None:
                continue
            rec = self._by_code.get(code)
            if rec is None or rec.name != path.levels[lower]:
                return False
            if rec.parent_code != path.codes[upper]:
                return False
        c1 = path.codes[0]
        if c1 is not None:
            rec = self._by_code.get(c1)
            if rec is None or rec.name != path.levels[0] or rec.level != 1:
                return False
        return True


def load_gazetteer(path: str | Path) -> Gazetteer:
    """Load and validate a division database from a JSONL file.

    Raises GazetteerError naming the offending line for parse problems, and
    for dangling parents / duplicate codes / out-of-range levels.
    """
    records: list[AdRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise GazetteerError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            try:
                rec = _record_from_json(raw)
            except (KeyError, TypeError, ValueError) as exc:
                raise GazetteerError(f"{path}:{lineno}: {exc}") from exc
            records.append(rec)
    return Gazetteer(records)


def _record_from_json(raw: dict) -> AdRecord:
    level = raw["level"]
    if level not in _VALID_LEVELS:
        raise ValueError(f"level {level!r} out of range {_VALID_LEVELS}")
    name = unicodedata.normalize("NFC", str(raw["name"]))
    aliases = tuple(
        unicodedata.normalize("NFC", str(a)) for a in raw.get("aliases", [])
    )
    parent = raw.get("parent_code")
    return AdRecord(
        code=str(raw["code"]),
        name=name,
        aliases=aliases,
        level=int(level),
        parent_code=str(parent) if parent is not None else None,
    )
