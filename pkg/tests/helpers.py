"""Small builders shared by the test modules."""

from symshift.core import Alphabet, SftSpec, Word, normalize_periodic

BIN = Alphabet(("0", "1"))
ABC = Alphabet(("a", "b", "c"))


def spec(symbols, *forbidden) -> SftSpec:
    """Build an SftSpec from symbol characters and forbidden words as strings."""
    alph = Alphabet(tuple(symbols))
    return SftSpec(alph, frozenset(alph.word(tuple(f)) for f in forbidden))


def w(alphabet: Alphabet, text: str) -> Word:
    return alphabet.parse_word(text)


def cfg(alphabet: Alphabet, text: str):
    return normalize_periodic(alphabet.parse_word(text))
