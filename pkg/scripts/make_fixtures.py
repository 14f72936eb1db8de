"""Regenerate the shipped presentation files in src/nilquot/fixtures."""

from pathlib import Path

from nilquot.basic import basic_sequence
from nilquot.words import Alphabet

OUT = Path(__file__).resolve().parent.parent / "src" / "nilquot" / "fixtures"


def lnc(*parts):
    return "[" + ", ".join(parts) + "]"


def ts(n):
    return ["t"] * n


def write(name, comment, rels):
    lines = [f"# {comment}", "gens: a, t"] + [f"rel: {r}" for r in rels]
    (OUT / f"{name}.pres").write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    OUT.mkdir(exist_ok=True)
    for old in OUT.glob("*.pres"):
        old.unlink()
    write("free2", "free group of rank 2", [])
    d_rels = [lnc("a", "t", "t"), lnc("a", "t", "a", "a", "a")]
    write("theorem7", "two basic-commutator relators; 2-torsion modulo the 7th term", d_rels)
    extra = [b.label(Alphabet("at")) for b in basic_sequence(2, 10) if 7 <= b.weight <= 10]
    write("final-remark", "theorem7 plus all basic commutators of weight 7 to 10", d_rels + extra)
    for k in range(1, 6):
        write(f"hydra-k{k}", f"hydra group G({k})", [lnc("a", *ts(k))])
    for k in range(2, 6):
        e = lnc("a", *ts(k - 1))
        for l in range(1, 4):
            write(f"example1-k{k}-l{l}", f"hydra relator plus [a, t^{k - 2}, e^{l}], e = [a, t^{k - 1}]",
                  [lnc("a", *ts(k)), lnc("a", *ts(k - 2), *[e] * l)])
    write("example1-simplest", "smallest non-nilpotent member of the first family",
          [lnc(lnc("a", "t"), lnc("a", "t", "t")), lnc("a", "t", "t", "t")])
    for k in range(3, 6):
        for s in range(1, k - 1):
            write(f"example2-k{k}-s{s}", f"[[a, t^{s}], [a, t^{k - 1}]] and the hydra relator for k = {k}",
                  [lnc(lnc("a", *ts(s)), lnc("a", *ts(k - 1))), lnc("a", *ts(k))])
    write("example2-simple", "small member of the second family",
          [lnc(lnc("a", "t"), lnc("a", "t", "t", "t")), lnc("a", "t", "t", "t", "t")])
    for k in range(1, 6):
        write(f"central-k{k}", f"[a, t^{k - 1}, a] and [a, t^{k}]",
              [lnc("a", *ts(k - 1), "a"), lnc("a", *ts(k))])


if __name__ == "__main__":
    main()
