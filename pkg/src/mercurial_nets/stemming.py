"""Suffix-stripping stemmer for Italian tweet text.

The stemmer repeatedly removes the longest known inflectional or
derivational ending until nothing more can be stripped, so its output is a
fixpoint and ``stem(stem(w)) == stem(w)`` holds for every input.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Protocol

_VERB_SUFFIXES = (
    "erebbero", "irebbero", "arebbero",
    "eranno", "iranno", "aranno", "eremmo", "iremmo", "aremmo",
    "ereste", "ireste", "areste", "erebbe", "irebbe", "arebbe",
    "eresti", "iresti", "aresti", "assero", "essero", "issero",
    "avamo", "evamo", "ivamo", "avate", "evate", "ivate",
    "erete", "irete", "arete", "eremo", "iremo", "aremo",
    "ando", "endo", "ammo", "emmo", "immo", "erai", "irai", "arai",
    "ato", "ata", "ati", "ate", "uto", "uta", "uti", "ute",
    "ito", "ita", "iti", "ite", "ava", "eva", "iva", "avi", "evi", "ivi",
    "avo", "evo", "ivo", "are", "ere", "ire", "ano", "ono",
    "erò", "irò", "erà", "irà",
)

_NOUN_SUFFIXES = (
    "amento", "amenti", "imento", "imenti", "mente",
    "azione", "azioni", "atore", "atori", "atrice", "atrici",
    "abile", "abili", "ibile", "ibili", "issimo", "issima", "issimi", "issime",
    "ista", "iste", "isti", "ismo", "ismi", "anza", "anze", "enza", "enze",
    "ità",
)

_VOWELS = ("a", "e", "i", "o", "u", "à", "è", "é", "ì", "ò", "ù")

# (suffix, minimum length of what remains after stripping)
_RULES: tuple[tuple[str, int], ...] = tuple(
    sorted(
        [(s, 3) for s in _VERB_SUFFIXES + _NOUN_SUFFIXES + _VOWELS] + [("on", 4)],
        key=lambda rule: -len(rule[0]),
    )
)


class Stemmer(Protocol):
    def __call__(self, word: str) -> str: ...


def _strip_once(word: str) -> str:
    for suffix, min_rest in _RULES:
        if word.endswith(suffix) and len(word) - len(suffix) >= min_rest:
            return word[: -len(suffix)]
    return word


@lru_cache(maxsize=200_000)
def stem(word: str) -> str:
    """Return the stem of a lowercase surface token.

    >>> stem("abbandoneremo"), stem("abbandono")
    ('abband', 'abband')
    >>> stem("studiare"), stem("studio")
    ('stud', 'stud')
    """
    current = word
    while True:
        stripped = _strip_once(current)
        if stripped == current:
            return current
        current = stripped
