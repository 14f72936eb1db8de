"""Finite presentations and their text file format.

    # comment
    gens: a, t
    rel: [a,t,t]
    rel: [a,t,a,a,a]

Relators may also be written as equations ``lhs = rhs``; they are stored
as ``lhs * rhs^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError, WordSyntaxError
from .words import Alphabet, Word, parse_word


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]

    def __init__(self, alphabet: Alphabet | Sequence[str], relators: Iterable[Word | str] = ()):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        rels = []
        for r in relators:
            if isinstance(r, str):
                r = parse_relator(r, alphabet)
            if r.alphabet != alphabet:
                raise ValueError("relator over a different alphabet")
            if not r.is_identity():
                rels.append(r)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relators", tuple(rels))

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def with_relators(self, extra: Iterable[Word]) -> Presentation:
        return Presentation(self.alphabet, self.relators + tuple(extra))

    def to_text(self) -> str:
        lines = [f"gens: {', '.join(self.alphabet.names)}"]
        lines += [f"rel: {_word_expr(r)}" for r in self.relators]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{', '.join(self.alphabet.names)} | {rels}>"


def _word_expr(w: Word) -> str:
    if w.is_identity():
        return "1"
    parts = []
    for g, e in w.syllables():
        name = w.alphabet.names[g]
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


def parse_relator(text: str, alphabet: Alphabet) -> Word:
    if text.count("=") > 1:
        raise WordSyntaxError("at most one '=' allowed in a relator", text.index("=", text.index("=") + 1), text)
    if "=" in text:
        lhs, rhs = text.split("=")
        return parse_word(lhs, alphabet) * parse_word(rhs, alphabet).inverse()
    return parse_word(text, alphabet)


def parse_presentation(text: str) -> Presentation:
    alphabet = None
    rels: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("gens", "rel"):
            raise ParseError(f"line {lineno}: expected 'gens:' or 'rel:', got {raw!r}")
        if key == "gens":
            if alphabet is not None:
                raise ParseError(f"line {lineno}: duplicate 'gens:' line")
            names = [s.strip() for s in value.split(",") if s.strip()]
            try:
                alphabet = Alphabet(names)
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        else:
            if alphabet is None:
                raise ParseError(f"line {lineno}: 'rel:' before 'gens:'")
            rels.append(value.strip())
    if alphabet is None:
        raise ParseError("presentation has no 'gens:' line")
    return Presentation(alphabet, [parse_relator(r, alphabet) for r in rels])


def load_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))
