"""Exception hierarchy shared by all modules."""


class NilquotError(Exception):
    pass


class ParseError(NilquotError, ValueError):
    pass


class WordSyntaxError(ParseError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class UnknownGeneratorError(ParseError, KeyError):
    def __init__(self, name: str, alphabet=None, position: int | None = None):
        self.name = name
        self.alphabet = alphabet
        self.position = position
        super().__init__(name)

    def __str__(self) -> str:
        names = ", ".join(self.alphabet.names) if self.alphabet is not None else "?"
        where = f" at position {self.position}" if self.position is not None else ""
        return f"unknown generator {self.name!r}{where} (alphabet: {names})"


class AlphabetMismatchError(NilquotError, ValueError):
    def __init__(self, left, right):
        super().__init__(f"alphabet mismatch: {left!r} vs {right!r}")


class BudgetExceededError(NilquotError):
    """A configured resource limit was hit; the computation was not truncated."""


class CapExceededError(NilquotError):
    """The word lies deeper than the requested degree cap."""


class InternalInconsistencyError(NilquotError, AssertionError):
    """An invariant that must hold by construction failed."""


class NotLieElementError(InternalInconsistencyError):
    pass
