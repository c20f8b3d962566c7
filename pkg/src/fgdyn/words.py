"""Exact arithmetic on freely reduced words over a ranked alphabet.

A letter is a nonzero signed integer: ``+i`` is the i-th generator
(1-based), ``-i`` its inverse.  A :class:`Word` is immutable and always
freely reduced; reduction happens at construction, so the invariant can
never be violated downstream.

Internally a word is stored as a tuple of runs ``(generator, exponent)``
with nonzero exponents and distinct adjacent generators.  Iterating a
polynomially growing automorphism produces words that are almost entirely
long power blocks, so the run encoding keeps million-letter words cheap
to build and compare.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

Letter = int  # signed generator index; +i / -i, never 0


class AlphabetMismatchError(ValueError):
    """Operands live over different alphabets or use out-of-range letters."""


class EmptyWordError(ValueError):
    """The identity word was passed where a nontrivial element is required."""


class WordSyntaxError(ValueError):
    """Malformed word text (unknown symbol or bad exponent)."""


class Alphabet:
    """An ordered basis of the free group: ``rank`` distinct symbol names.

    >>> ab = Alphabet(("a", "b"))
    >>> ab.rank
    2
    >>> ab.index("b")
    2
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(names) < 2:
            raise ValueError("rank must be at least 2")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for name in names:
            if not name or "^" in name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid generator name: {name!r}")
        self.names = names
        self._index = {name: i + 1 for i, name in enumerate(names)}

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """1-based index of a generator name."""
        try:
            return self._index[name]
        except KeyError:
            raise WordSyntaxError(f"unknown symbol: {name!r}") from None

    def name(self, letter: Letter) -> str:
        return self.names[abs(letter) - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({self.names!r})"


def standard_alphabet(rank: int) -> Alphabet:
    """The alphabet a, b, c, ... of the given rank (at most 26)."""
    if rank > 26:
        raise ValueError("standard alphabet supports rank <= 26")
    return Alphabet(tuple("abcdefghijklmnopqrstuvwxyz"[:rank]))


def _push_run(runs: list[tuple[int, int]], gen: int, exp: int) -> None:
    # Stack push with merging/cancellation; keeps the run invariant.
    if exp == 0:
        return
    if runs and runs[-1][0] == gen:
        merged = runs[-1][1] + exp
        runs.pop()
        if merged != 0:
            runs.append((gen, merged))
    else:
        runs.append((gen, exp))


class Word:
    """A freely reduced word; the empty word is the group identity."""

    __slots__ = ("alphabet", "runs", "_length", "_hash")

    def __init__(self, alphabet: Alphabet, runs: tuple[tuple[int, int], ...] = ()):
        # Trusted constructor: `runs` must already satisfy the invariant.
        self.alphabet = alphabet
        self.runs = runs
        self._length = sum(abs(e) for _, e in runs)
        self._hash = None

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[Letter]) -> "Word":
        """Build the reduced word equal to the given letter sequence.

        >>> F = standard_alphabet(2)
        >>> str(Word.from_letters(F, [1, 2, -2, 1]))
        'a^2'
        """
        runs: list[tuple[int, int]] = []
        for letter in letters:
            gen = abs(letter)
            if letter == 0 or gen > alphabet.rank:
                raise AlphabetMismatchError(f"letter {letter} out of range")
            _push_run(runs, gen, 1 if letter > 0 else -1)
        return cls(alphabet, tuple(runs))

    @classmethod
    def from_runs(cls, alphabet: Alphabet, runs: Iterable[tuple[int, int]]) -> "Word":
        """Build a reduced word from (generator, exponent) pairs, reducing."""
        out: list[tuple[int, int]] = []
        for gen, exp in runs:
            if not 1 <= gen <= alphabet.rank:
                raise AlphabetMismatchError(f"generator {gen} out of range")
            _push_run(out, gen, exp)
        return cls(alphabet, tuple(out))

    def __len__(self) -> int:
        return self._length

    def is_identity(self) -> bool:
        return not self.runs

    def letters(self) -> Iterator[Letter]:
        """Yield the signed letters, one at a time."""
        for gen, exp in self.runs:
            letter = gen if exp > 0 else -gen
            for _ in range(abs(exp)):
                yield letter

    def first_letter(self) -> Letter:
        if not self.runs:
            raise EmptyWordError("identity word has no letters")
        gen, exp = self.runs[0]
        return gen if exp > 0 else -gen

    def last_letter(self) -> Letter:
        if not self.runs:
            raise EmptyWordError("identity word has no letters")
        gen, exp = self.runs[-1]
        return gen if exp > 0 else -gen

    def prefix(self, n: int) -> "Word":
        """The first ``n`` letters (the whole word if ``n >= len(self)``)."""
        if n >= self._length:
            return self
        if n <= 0:
            return Word(self.alphabet)
        out = []
        for gen, exp in self.runs:
            take = min(abs(exp), n)
            out.append((gen, take if exp > 0 else -take))
            n -= take
            if n == 0:
                break
        return Word(self.alphabet, tuple(out))

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple((g, -e) for g, e in reversed(self.runs)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        result = Word(self.alphabet)
        base = self
        while n:
            if n & 1:
                result = concat(result, base)
            n >>= 1
            if n:
                base = concat(base, base)
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.runs == other.runs
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet.names, self.runs))
        return self._hash

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"<Word {format_word(self)!r}>"


def identity(alphabet: Alphabet) -> Word:
    return Word(alphabet)


def generator(alphabet: Alphabet, letter: Letter) -> Word:
    """The one-letter word for a signed generator index."""
    if letter == 0 or abs(letter) > alphabet.rank:
        raise AlphabetMismatchError(f"letter {letter} out of range")
    return Word(alphabet, ((abs(letter), 1 if letter > 0 else -1),))


def reduce(alphabet: Alphabet, letters: Iterable[Letter]) -> Word:
    """Reduce a raw letter sequence to its unique freely reduced form."""
    return Word.from_letters(alphabet, letters)


def _check_same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError("words live over different alphabets")


def concat(u: Word, v: Word) -> Word:
    """The reduced product ``[uv]``."""
    _check_same_alphabet(u, v)
    if not u.runs:
        return v
    if not v.runs:
        return u
    runs = list(u.runs)
    for gen, exp in v.runs:
        _push_run(runs, gen, exp)
    return Word(u.alphabet, tuple(runs))


def invert(u: Word) -> Word:
    """The group inverse; an anti-homomorphism."""
    return u.inverse()


class CyclicDecomposition(NamedTuple):
    """``u = [w c w^-1]`` with ``c`` cyclically reduced and nonempty."""

    conjugator: Word
    core: Word


def cyclic_reduce(u: Word) -> CyclicDecomposition:
    """Strip matching conjugating letters from both ends of ``u``.

    >>> F = standard_alphabet(2)
    >>> dec = cyclic_reduce(parse_word(F, "b a^4 b^-1"))
    >>> str(dec.conjugator), str(dec.core)
    ('b', 'a^4')
    """
    if u.is_identity():
        raise EmptyWordError("identity word has no cyclic core")
    ls = list(u.letters())
    i, j = 0, len(ls) - 1
    while i < j and ls[i] == -ls[j]:
        i += 1
        j -= 1
    conj = Word.from_letters(u.alphabet, ls[:i])
    core = Word.from_letters(u.alphabet, ls[i : j + 1])
    return CyclicDecomposition(conj, core)


def primitive_root(u: Word) -> tuple[Word, int]:
    """Write ``u = root^power`` with the power maximal.

    The root of a conjugate ``w c^m w^-1`` is ``w r w^-1`` where ``r`` is
    the primitive root of the cyclic core.
    """
    if u.is_identity():
        raise EmptyWordError("identity word has no primitive root")
    conj, core = cyclic_reduce(u)
    ls = list(core.letters())
    m = len(ls)
    for d in range(1, m + 1):
        if m % d:
            continue
        if all(ls[i] == ls[i % d] for i in range(m)):
            root_core = Word.from_letters(u.alphabet, ls[:d])
            root = concat(concat(conj, root_core), conj.inverse())
            return root, m // d
    raise AssertionError("unreachable: every word is a power of itself")


def common_prefix_length(u: Word, v: Word) -> int:
    """Length of the longest common prefix (the Gromov product at 1)."""
    _check_same_alphabet(u, v)
    total = 0
    for (g1, e1), (g2, e2) in zip(u.runs, v.runs):
        if g1 != g2 or (e1 > 0) != (e2 > 0):
            break
        if e1 == e2:
            total += abs(e1)
            continue
        total += min(abs(e1), abs(e2))
        break
    return total


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse whitespace-separated tokens ``name`` or ``name^int``.

    The empty string denotes the identity.

    >>> F = standard_alphabet(4)
    >>> str(parse_word(F, "b a^-1 b^-1"))
    'b a^-1 b^-1'
    """
    runs: list[tuple[int, int]] = []
    for token in text.split():
        name, caret, exp_text = token.partition("^")
        if caret:
            try:
                exp = int(exp_text)
            except ValueError:
                raise WordSyntaxError(f"malformed exponent in {token!r}") from None
        else:
            exp = 1
        _push_run(runs, alphabet.index(name), exp)
    return Word(alphabet, tuple(runs))


def format_word(w: Word) -> str:
    """Canonical text form; inverse of :func:`parse_word` on canonical input."""
    tokens = []
    for gen, exp in w.runs:
        name = w.alphabet.names[gen - 1]
        tokens.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(tokens)
