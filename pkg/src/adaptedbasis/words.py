"""Freely reduced words over a named, indexed generator alphabet.

A letter is a pair ``(index, sign)`` with ``sign`` in ``{+1, -1}``.  Every
:class:`Word` is kept freely reduced, so two words are equal as Python
objects exactly when they are equal in the free group.

The text syntax juxtaposes generator names separated by whitespace, with a
``^-1`` suffix for inverses::

    >>> A = Alphabet("abcd")
    >>> w = A.parse("a b a^-1 b^-1")
    >>> str(w * A.parse("b a"))
    'a b'

The parser additionally accepts integer powers (``d^3``) and ``1`` for the
empty word.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import AlphabetError

Letter = tuple[int, int]

_TOKEN = re.compile(r"^(?P<name>.+?)(?:\^(?P<exp>-?\d+))?$")


class Alphabet:
    """An ordered registry of generator names.

    Alphabets compare by their name tuples.  An alphabet *extends* another
    when the other's names are a prefix of its own; words over the smaller
    alphabet may then be combined with words over the larger one.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise AlphabetError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not name or any(ch.isspace() for ch in name):
                raise AlphabetError(f"invalid generator name {name!r}")
            if name == "1" or _TOKEN.match(name).group("exp") is not None:
                raise AlphabetError(f"generator name {name!r} is ambiguous in word syntax")

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names)!r})"

    def extends(self, other: Alphabet) -> bool:
        return self.names[: len(other.names)] == other.names

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetError(f"unknown generator {name!r}") from None

    def gen(self, which: int | str) -> Word:
        i = self.index(which) if isinstance(which, str) else which
        return Word(self, ((i, 1),))

    def identity(self) -> Word:
        return Word._trusted(self, ())

    def parse(self, text: str) -> Word:
        """Parse whitespace-separated tokens such as ``"a b^-1 d^2"``."""
        letters: list[Letter] = []
        for token in text.split():
            if token == "1":
                continue
            m = _TOKEN.match(token)
            i = self.index(m.group("name"))
            exp = int(m.group("exp") or 1)
            s = 1 if exp > 0 else -1
            letters.extend([(i, s)] * abs(exp))
        return Word(self, letters)


def _reduce_letters(letters: Iterable[Letter], size: int) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for letter in letters:
        i, s = letter
        if not 0 <= i < size:
            raise AlphabetError(f"generator index {i} outside alphabet of size {size}")
        if s not in (1, -1):
            raise AlphabetError(f"letter sign must be +1 or -1, got {s}")
        if out and out[-1][0] == i and out[-1][1] == -s:
            out.pop()
        else:
            out.append((i, s))
    return tuple(out)


class Word:
    """An immutable, freely reduced word over an :class:`Alphabet`."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[Letter] = ()):
        self.alphabet = alphabet
        self.letters = _reduce_letters(letters, len(alphabet))

    @classmethod
    def _trusted(cls, alphabet: Alphabet, letters: tuple[Letter, ...]) -> Word:
        # caller guarantees the letters are valid and already reduced
        w = cls.__new__(cls)
        w.alphabet = alphabet
        w.letters = letters
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.letters == other.letters
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else invert(self)
        return Word(base.alphabet, base.letters * abs(k))

    def inverse(self) -> Word:
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def exponent_sum(self, i: int) -> int:
        return sum(s for j, s in self.letters if j == i)

    def occurrences(self, i: int) -> int:
        return sum(1 for j, _ in self.letters if j == i)


def reduce(alphabet: Alphabet, letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence."""
    return Word(alphabet, letters)


def invert(w: Word) -> Word:
    return Word._trusted(w.alphabet, tuple((i, -s) for i, s in reversed(w.letters)))


def _common_alphabet(u: Word, v: Word) -> Alphabet:
    if u.alphabet.extends(v.alphabet):
        return u.alphabet
    if v.alphabet.extends(u.alphabet):
        return v.alphabet
    raise AlphabetError("cannot combine words over unrelated alphabets")


def concat(u: Word, v: Word) -> Word:
    alphabet = _common_alphabet(u, v)
    a, b = u.letters, v.letters
    k = 0
    # only the junction can cancel since both halves are reduced
    while k < len(a) and k < len(b) and a[-1 - k][0] == b[k][0] and a[-1 - k][1] == -b[k][1]:
        k += 1
    return Word._trusted(alphabet, a[: len(a) - k] + b[k:])


def substitute(w: Word, target: int, replacement: Word) -> Word:
    """Replace every ``target^{+-1}`` in ``w`` by ``replacement^{+-1}``."""
    alphabet = _common_alphabet(w, replacement)
    if not 0 <= target < len(w.alphabet):
        raise AlphabetError(f"generator index {target} outside alphabet")
    fwd = replacement.letters
    bwd = invert(replacement).letters
    out: list[Letter] = []
    for i, s in w.letters:
        if i == target:
            out.extend(fwd if s == 1 else bwd)
        else:
            out.append((i, s))
    return Word(alphabet, out)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``u * r * u^-1`` with ``r`` cyclically reduced.

    Returns ``(r, u)``.
    """
    a = w.letters
    k = 0
    while 2 * k + 1 < len(a) and a[k][0] == a[-1 - k][0] and a[k][1] == -a[-1 - k][1]:
        k += 1
    core = Word._trusted(w.alphabet, a[k : len(a) - k])
    conj = Word._trusted(w.alphabet, a[:k])
    return core, conj


def cyclic_core(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    """Cyclically reduced core of an already freely reduced letter tuple."""
    k = 0
    n = len(letters)
    while 2 * k + 1 < n and letters[k][0] == letters[n - 1 - k][0] and letters[k][1] == -letters[n - 1 - k][1]:
        k += 1
    return tuple(letters[k : n - k])


def format_letters(names: Sequence[str], letters: Iterable[Letter]) -> str:
    toks = [names[i] if s == 1 else f"{names[i]}^-1" for i, s in letters]
    return " ".join(toks) if toks else "1"


def format_word(w: Word) -> str:
    return format_letters(w.alphabet.names, w.letters)


def compact_name(names: Sequence[str], letters: Sequence[Letter]) -> str:
    """Short display of a word with runs collapsed into powers, e.g. ``bd^2``.

    Names are juxtaposed when they are all single characters and joined by
    ``.`` otherwise.  The empty word is ``1``.
    """
    if not letters:
        return "1"
    runs: list[list] = []
    for i, s in letters:
        if runs and runs[-1][0] == i and (runs[-1][1] > 0) == (s > 0):
            runs[-1][1] += s
        else:
            runs.append([i, s])
    parts = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in runs]
    sep = "" if all(len(names[i]) == 1 for i, _ in runs) else "."
    return sep.join(parts)
