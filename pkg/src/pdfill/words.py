"""Words over a generating set.

A word is a tuple of nonzero ints: ``+i`` is the i-th generator (1-based),
``-i`` its inverse.  Generators print as letters ``a``, ``b``, ``c``, ...
"""

from __future__ import annotations

from .errors import SpecParseError

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

Word = tuple  # tuple[int, ...]


def gen_name(index: int) -> str:
    if 1 <= index <= len(_LETTERS):
        return _LETTERS[index - 1]
    return f"g{index}"


def free_reduce(word) -> Word:
    out = []
    for letter in word:
        if letter == 0:
            raise SpecParseError("0 is not a letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word) -> Word:
    return tuple(-letter for letter in reversed(word))


def cyclically_reduce(word) -> Word:
    word = list(free_reduce(word))
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


def commutator_word(i: int, j: int) -> Word:
    return (i, j, -i, -j)


def letter_key(letter: int) -> int:
    # shortlex letter order: a < a^-1 < b < b^-1 < ...
    return 2 * abs(letter) + (1 if letter < 0 else 0)


def shortlex_key(word):
    return (len(word), tuple(letter_key(x) for x in word))


def word_to_string(word) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        letter = word[i]
        j = i
        while j < len(word) and word[j] == letter:
            j += 1
        count = j - i
        exponent = count if letter > 0 else -count
        name = gen_name(abs(letter))
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
        i = j
    return "*".join(parts)


def word_from_string(text: str) -> Word:
    """Parse ``"a*b^-1"`` (or the compact ``"abA"`` form, capitals = inverses)."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters = []
    for chunk in text.split("*"):
        chunk = chunk.strip()
        if not chunk:
            raise SpecParseError(f"empty factor in word {text!r}")
        if "^" in chunk:
            name, _, exp = chunk.partition("^")
            try:
                exponent = int(exp)
            except ValueError:
                raise SpecParseError(f"bad exponent in {chunk!r}") from None
            letters.extend(_letters_of(name, exponent, text))
        else:
            for ch in chunk:
                letters.extend(_letters_of(ch, 1, text))
    return tuple(letters)


def _letters_of(name: str, exponent: int, context: str):
    if name.isupper():
        name = name.lower()
        exponent = -exponent
    if name not in _LETTERS:
        raise SpecParseError(f"unknown generator {name!r} in {context!r}")
    index = _LETTERS.index(name) + 1
    if exponent == 0:
        return []
    sign = 1 if exponent > 0 else -1
    return [sign * index] * abs(exponent)
