"""Porter suffix-stripping stemmer (the classic five-step rule cascade).

Only lowercase alphabetic words are stemmed; anything else (numbers, mixed
tokens, words of one or two letters) passes through unchanged.
"""
from __future__ import annotations

_VOWELS = "aeiou"

_STEP2_RULES = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
)

_STEP3_RULES = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4_SUFFIXES = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


class _Buffer:
    """Word under reduction, with the measure and shape predicates of the algorithm."""

    def __init__(self, word: str):
        self.b = word

    def is_consonant(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return i == 0 or not self.is_consonant(i - 1)
        return True

    def measure(self, stem: str) -> int:
        """Number of vowel-consonant alternations [C](VC)^m[V] in the stem."""
        saved, self.b = self.b, stem
        m = 0
        i = 0
        n = len(stem)
        while i < n and self.is_consonant(i):
            i += 1
        while i < n:
            while i < n and not self.is_consonant(i):
                i += 1
            if i == n:
                break
            m += 1
            while i < n and self.is_consonant(i):
                i += 1
        self.b = saved
        return m

    def has_vowel(self, stem: str) -> bool:
        saved, self.b = self.b, stem
        found = any(not self.is_consonant(i) for i in range(len(stem)))
        self.b = saved
        return found

    def ends_double_consonant(self) -> bool:
        return (
            len(self.b) >= 2
            and self.b[-1] == self.b[-2]
            and self.is_consonant(len(self.b) - 1)
        )

    def ends_cvc(self) -> bool:
        n = len(self.b)
        return (
            n >= 3
            and self.is_consonant(n - 1)
            and not self.is_consonant(n - 2)
            and self.is_consonant(n - 3)
            and self.b[-1] not in "wxy"
        )


def _step1a(buf: _Buffer) -> None:
    w = buf.b
    if w.endswith("sses"):
        buf.b = w[:-2]
    elif w.endswith("ies"):
        buf.b = w[:-2]
    elif w.endswith("s") and not w.endswith("ss"):
        buf.b = w[:-1]


def _step1b(buf: _Buffer) -> None:
    w = buf.b
    if w.endswith("eed"):
        if buf.measure(w[:-3]) > 0:
            buf.b = w[:-1]
        return
    if w.endswith("ed") and buf.has_vowel(w[:-2]):
        buf.b = w[:-2]
    elif w.endswith("ing") and buf.has_vowel(w[:-3]):
        buf.b = w[:-3]
    else:
        return
    w = buf.b
    if w.endswith(("at", "bl", "iz")):
        buf.b = w + "e"
    elif buf.ends_double_consonant() and w[-1] not in "lsz":
        buf.b = w[:-1]
    elif buf.measure(w) == 1 and buf.ends_cvc():
        buf.b = w + "e"


def _step1c(buf: _Buffer) -> None:
    if buf.b.endswith("y") and buf.has_vowel(buf.b[:-1]):
        buf.b = buf.b[:-1] + "i"


def _apply_rules(buf: _Buffer, rules) -> None:
    for suffix, replacement in rules:
        if buf.b.endswith(suffix):
            stem = buf.b[: -len(suffix)]
            if buf.measure(stem) > 0:
                buf.b = stem + replacement
            return


def _step4(buf: _Buffer) -> None:
    for suffix in _STEP4_SUFFIXES:
        if buf.b.endswith(suffix):
            stem = buf.b[: -len(suffix)]
            if buf.measure(stem) > 1:
                if suffix == "ion" and not stem.endswith(("s", "t")):
                    return
                buf.b = stem
            return


def _step5a(buf: _Buffer) -> None:
    if buf.b.endswith("e"):
        stem = buf.b[:-1]
        m = buf.measure(stem)
        if m > 1:
            buf.b = stem
        elif m == 1:
            probe = _Buffer(stem)
            if not probe.ends_cvc():
                buf.b = stem


def _step5b(buf: _Buffer) -> None:
    if buf.b.endswith("l") and buf.ends_double_consonant() and buf.measure(buf.b) > 1:
        buf.b = buf.b[:-1]


def stem(word: str) -> str:
    """Reduce an English word to its Porter stem."""
    if len(word) <= 2 or not word.isalpha() or not word.islower():
        return word
    buf = _Buffer(word)
    _step1a(buf)
    _step1b(buf)
    _step1c(buf)
    _apply_rules(buf, _STEP2_RULES)
    _apply_rules(buf, _STEP3_RULES)
    _step4(buf)
    _step5a(buf)
    _step5b(buf)
    return buf.b


def stem_tokens(tokens: list[str]) -> list[str]:
    return [stem(t) for t in tokens]
