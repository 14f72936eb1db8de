import pytest

from nilquot.errors import ParseError
from nilquot.presentation import Presentation, load_presentation, parse_presentation
from nilquot.words import Alphabet, parse_word

AT = Alphabet(("a", "t"))


def test_parse_file_format(tmp_path):
    text = "# comment\ngens: a, t\nrel: [a,t,t]   # trailing\n\nrel: [a,t] = [t,a]\n"
    p = tmp_path / "g.pres"
    p.write_text(text)
    pres = load_presentation(p)
    assert pres.alphabet == AT
    assert pres.relators == (parse_word("[a,t,t]", AT), parse_word("[a,t] [t,a]^-1", AT))


def test_round_trip():
    pres = Presentation(AT, ["[a,t,t]", "a^2 t^-3"])
    assert parse_presentation(pres.to_text()) == pres


def test_identity_relators_dropped():
    assert Presentation(AT, ["a a^-1", "[a,a]"]).relators == ()


@pytest.mark.parametrize("text", [
    "rel: a\n",
    "gens: a\ngens: b\n",
    "gens: a\nfoo: a\n",
    "gens: a, a\n",
    "",
    "gens: a\nrel: b\n",
    "gens: a\nrel: a = a = a\n",
])
def test_errors(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_error_mentions_line():
    with pytest.raises(ParseError, match="line 3"):
        parse_presentation("gens: a\n\nbogus\n")


def test_relator_alphabet_must_match():
    with pytest.raises(ValueError):
        Presentation(AT, [parse_word("x", ["x"])])
