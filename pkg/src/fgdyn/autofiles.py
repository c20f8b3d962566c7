"""Plain-text automorphism definition files.

Format (one directive per line, ``#`` starts a comment):

    alphabet: a b c d
    map b -> b a
    inv b -> b a^-1
    fix: a; b a b^-1
    seeds: b; b^-1; b d^-1

Every generator needs a ``map`` and an ``inv`` line; the two tables must
verify as mutually inverse.  ``fix`` and ``seeds`` are optional
semicolon-separated word lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .automorphisms import AutoPair, Endomorphism, verify_pair
from .words import Alphabet, Word, parse_word


class AutoFileError(ValueError):
    pass


@dataclass(frozen=True)
class AutoFile:
    pair: AutoPair
    fixed_generators: tuple[Word, ...]
    seeds: Optional[tuple[Word, ...]]


def parse_autofile(text: str) -> AutoFile:
    alphabet: Optional[Alphabet] = None
    forward: dict[str, Word] = {}
    backward: dict[str, Word] = {}
    fix_words: tuple[Word, ...] = ()
    seed_words: Optional[tuple[Word, ...]] = None

    def require_alphabet() -> Alphabet:
        if alphabet is None:
            raise AutoFileError("alphabet must be declared before images")
        return alphabet

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("alphabet:"):
                names = line[len("alphabet:") :].split()
                alphabet = Alphabet(names)
            elif line.startswith(("map ", "inv ")):
                table = forward if line.startswith("map ") else backward
                body = line[4:]
                gen, arrow, image = body.partition("->")
                if not arrow:
                    raise AutoFileError("expected '<generator> -> <word>'")
                gen = gen.strip()
                require_alphabet().index(gen)
                table[gen] = parse_word(require_alphabet(), image.strip())
            elif line.startswith("fix:"):
                fix_words = tuple(
                    parse_word(require_alphabet(), part.strip())
                    for part in line[len("fix:") :].split(";")
                    if part.strip()
                )
            elif line.startswith("seeds:"):
                seed_words = tuple(
                    parse_word(require_alphabet(), part.strip())
                    for part in line[len("seeds:") :].split(";")
                    if part.strip()
                )
            else:
                raise AutoFileError(f"unrecognized directive: {line!r}")
        except AutoFileError:
            raise
        except ValueError as exc:
            raise AutoFileError(f"line {lineno}: {exc}") from exc

    if alphabet is None:
        raise AutoFileError("missing alphabet declaration")
    missing = [n for n in alphabet.names if n not in forward or n not in backward]
    if missing:
        raise AutoFileError(f"missing map/inv lines for generators: {missing}")
    try:
        pair = verify_pair(
            Endomorphism(alphabet, [forward[n] for n in alphabet.names]),
            Endomorphism(alphabet, [backward[n] for n in alphabet.names]),
        )
    except ValueError as exc:
        raise AutoFileError(str(exc)) from exc
    for word in fix_words:
        if pair.apply(word) != word:
            raise AutoFileError(f"fix: word is not fixed: {word}")
    return AutoFile(pair, fix_words, seed_words)


def load_autofile(path) -> AutoFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_autofile(fh.read())
