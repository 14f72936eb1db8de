"""Shipped presentations and identity scripts.

``scripts/make_fixtures.py`` regenerates the ``.pres`` files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..presentation import Presentation, parse_presentation
from ..words import Word


def _files():
    return resources.files(__name__)


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in _files().iterdir() if p.name.endswith(".pres"))


def fixture_text(name: str) -> str:
    path = _files() / f"{name}.pres"
    if not path.is_file():
        raise KeyError(f"no fixture named {name!r}; known: {', '.join(fixture_names())}")
    return path.read_text(encoding="utf-8")


def load_fixture(name: str) -> Presentation:
    return parse_presentation(fixture_text(name))


def fixture_description(name: str) -> str:
    first = fixture_text(name).splitlines()[0]
    return first[1:].strip() if first.startswith("#") else ""


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    nilpotency_class: int
    lhs: Word
    rhs: Word
    free: bool


def identity_script(name: str = "theorem7-identities") -> tuple[Presentation, list[IdentityCheck]]:
    data = json.loads((_files() / f"{name}.json").read_text(encoding="utf-8"))
    pres = load_fixture(data["presentation"])
    checks = [IdentityCheck(c["name"], c["class"], pres.word(c["lhs"]), pres.word(c["rhs"]), c["free"])
              for c in data["checks"]]
    return pres, checks
