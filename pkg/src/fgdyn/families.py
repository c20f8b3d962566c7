"""Catalog of the automorphism families with their known invariants.

Each constructor returns a verified :class:`AutoPair`; :func:`family`
wraps a pair together with its documented fixed generators, default
seeds and (where known) parabolic certificate, for use by the CLI and
the reproduction scenarios.

The ``phi_k`` family over F_4 (a fixed, b -> ba, c -> ca^(k+1), d -> dc)
carries a parabolic orbit seeded at ``b d^-1`` for k >= 1; at k = 0 the
word ``b a c^-1`` is itself fixed and the certificate degenerates.  The
``alpha_k`` family is the same with a fifth fixed generator, and ``beta``
glues the k = 1 member to a hyperbolic automorphism of a rank-2 free
factor, leaving any remaining generators fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .automorphisms import (
    AutoPair,
    Endomorphism,
    identity_pair,
    inner,
    power,
    verify_pair,
)
from .dynamics import rational_from_element, rational_point
from .graphs import GraphTemplate
from .words import (
    Alphabet,
    Word,
    format_word,
    identity,
    parse_word,
    primitive_root,
    standard_alphabet,
)


class UnknownFamilyError(ValueError):
    pass


F2 = standard_alphabet(2)
F4 = standard_alphabet(4)
F5 = standard_alphabet(5)


def _endo(alphabet: Alphabet, *images: str) -> Endomorphism:
    return Endomorphism(alphabet, [parse_word(alphabet, t) for t in images])


def make_phi_k(k: int) -> AutoPair:
    """The rank-4 polynomially growing member with twist parameter k >= 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    forward = _endo(F4, "a", "b a", f"c a^{k + 1}", "d c")
    backward = _endo(F4, "a", "b a^-1", f"c a^{-(k + 1)}", f"d a^{k + 1} c^-1")
    return verify_pair(forward, backward)


def make_alpha_k(k: int) -> AutoPair:
    """The rank-5 extension of :func:`make_phi_k` fixing the new generator."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    forward = _endo(F5, "a", "b a", f"c a^{k + 1}", "d c", "e")
    backward = _endo(F5, "a", "b a^-1", f"c a^{-(k + 1)}", f"d a^{k + 1} c^-1", "e")
    return verify_pair(forward, backward)


def make_sigma() -> AutoPair:
    """The rank-2 involution inverting both generators."""
    e = _endo(F2, "a^-1", "b^-1")
    return verify_pair(e, e)


def make_delta() -> AutoPair:
    """The rank-2 twist a -> a, b -> ba."""
    return verify_pair(_endo(F2, "a", "b a"), _endo(F2, "a", "b a^-1"))


def make_twist(n: int, k: int) -> AutoPair:
    """Conjugation by a^k composed with the n-th twist power over F_2.

    Images: a -> a, b -> a^k b a^(n-k); the inverse negates both
    parameters.  n = 0 is rejected (the result would be inner).
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    a, b = parse_word(F2, "a"), parse_word(F2, "b")
    forward = Endomorphism(F2, [a, a**k * b * a ** (n - k)])
    backward = Endomorphism(F2, [a, a**-k * b * a ** (k - n)])
    return verify_pair(forward, backward)


class TwistCase(Enum):
    TWO_COMPONENT = "two-component"
    NORTH_SOUTH = "north-south"
    SEMI_NORTH_SOUTH = "semi-north-south"


def classify_twist(n: int, k: int) -> TwistCase:
    """Dynamics type of the (n, k) twist, decided by the sign of k(n-k)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    s = k * (n - k)
    if s == 0:
        return TwistCase.TWO_COMPONENT
    return TwistCase.NORTH_SOUTH if s < 0 else TwistCase.SEMI_NORTH_SOUTH


def twist_reduce(u: Word, n: int, search_bound: int = 4) -> Optional[tuple[Word, int]]:
    """Bounded search for ``w`` with ``[w^-1 u delta^n(w)] = a^k``.

    A witness shows that conjugation by ``u`` composed with the n-th
    twist power is conjugate (by ``w``) to the (n, k) twist.  ``None``
    means no witness within the bound; that is "unresolved", not a
    hyperbolicity verdict.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    delta_n = power(make_delta(), n)
    frontier = [identity(F2)]
    seen = {frontier[0]}
    for _ in range(search_bound + 1):
        for w in frontier:
            candidate = w.inverse() * u * delta_n.apply(w)
            if candidate.is_identity():
                return w, 0
            if len(candidate.runs) == 1 and candidate.runs[0][0] == 1:
                return w, candidate.runs[0][1]
        nxt = []
        for w in frontier:
            for letter in (1, -1, 2, -2):
                if not w.is_identity() and letter == -w.last_letter():
                    continue
                extended = Word.from_letters(F2, list(w.letters()) + [letter])
                if extended not in seen:
                    seen.add(extended)
                    nxt.append(extended)
        frontier = nxt
    return None


# stock hyperbolic rank-2 automorphisms, named by abelianized trace
_STOCK_THETAS = {
    "trace3": ("a b a", "a b", "b^-1 a", "a^-1 b^2"),  # [[2,1],[1,1]], field Q(sqrt 5)
    "trace4": ("a b a b a", "b a", "a b^-2", "b^3 a^-1"),  # [[3,1],[2,1]], field Q(sqrt 3)
}


def stock_theta(name: str) -> AutoPair:
    """A shipped hyperbolic automorphism of F_2 (names: trace3, trace4)."""
    try:
        fwd_x, fwd_y, bwd_x, bwd_y = _STOCK_THETAS[name]
    except KeyError:
        raise UnknownFamilyError(
            f"unknown stock theta {name!r}; available: {sorted(_STOCK_THETAS)}"
        ) from None
    return verify_pair(_endo(F2, fwd_x, fwd_y), _endo(F2, bwd_x, bwd_y))


def stock_theta_names() -> list[str]:
    return sorted(_STOCK_THETAS)


def make_beta(rank: int, theta: AutoPair) -> AutoPair:
    """Free-product assembly over F_rank, rank >= 6.

    Generators 1-4 transform as the k = 1 rank-4 member, generators 5-6
    as the given rank-2 automorphism, and the rest stay fixed.
    """
    if rank < 6:
        raise ValueError("rank must be at least 6")
    if theta.alphabet.rank != 2:
        raise ValueError("theta must act on a rank-2 free group")
    alphabet = standard_alphabet(rank)
    phi = make_phi_k(1)

    def embed(w: Word, offset: int) -> Word:
        return Word.from_letters(
            alphabet,
            [(abs(x) + offset) * (1 if x > 0 else -1) for x in w.letters()],
        )

    def assemble(four: Endomorphism, two: Endomorphism) -> Endomorphism:
        images = [embed(img, 0) for img in four.images]
        images += [embed(img, 4) for img in two.images]
        images += [
            Word.from_letters(alphabet, [g]) for g in range(7, rank + 1)
        ]
        return Endomorphism(alphabet, images)

    return verify_pair(
        assemble(phi.forward, theta.forward),
        assemble(phi.backward, theta.backward),
    )


# ---------------------------------------------------------------------------
# Catalog and expected graph shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    params: dict = field(compare=False)
    pair: AutoPair = None
    fixed_generators: tuple[Word, ...] = ()
    default_seeds: Optional[tuple[Word, ...]] = None
    parabolic_seed: Optional[Word] = None


def _words(alphabet: Alphabet, *texts: str) -> tuple[Word, ...]:
    return tuple(parse_word(alphabet, t) for t in texts)


def family(name: str, **params) -> FamilyInstance:
    """Catalog lookup: a verified pair plus its documented metadata."""
    if name == "phi_k":
        k = int(params.get("k", 1))
        return FamilyInstance(
            name,
            {"k": k},
            make_phi_k(k),
            _words(F4, "a", "b a b^-1", "c a c^-1"),
            None,
            parse_word(F4, "b d^-1"),
        )
    if name == "alpha_k":
        k = int(params.get("k", 1))
        return FamilyInstance(
            name,
            {"k": k},
            make_alpha_k(k),
            _words(F5, "a", "b a b^-1", "c a c^-1", "e"),
            None,
            parse_word(F5, "b d^-1"),
        )
    if name == "beta":
        rank = int(params.get("rank", 6))
        theta_name = params.get("theta", "trace3")
        pair = make_beta(rank, stock_theta(theta_name))
        alphabet = pair.alphabet
        return FamilyInstance(
            name,
            {"rank": rank, "theta": theta_name},
            pair,
            _words(alphabet, "a", "b a b^-1", "c a c^-1"),
            None,
            parse_word(alphabet, "b d^-1"),
        )
    if name in ("twist", "delta"):
        n = int(params.get("n", 1))
        k = int(params.get("k", 0)) if name == "twist" else 0
        pair = make_twist(n, k)
        if k == 0:
            fixed = _words(F2, "a", "b a b^-1")
        elif k == n:
            fixed = _words(F2, "a", "b^-1 a b")
        else:
            fixed = _words(F2, "a")
        return FamilyInstance(
            name, {"n": n, "k": k}, pair, fixed, _words(F2, "b", "b^-1"), None
        )
    if name == "sigma":
        # the involution fixes no nontrivial element: it inverts every letter
        return FamilyInstance(name, {}, make_sigma(), (), None, None)
    if name == "inner":
        u_text = params.get("u", "a")
        rank = int(params.get("rank", 2))
        alphabet = standard_alphabet(rank)
        u = parse_word(alphabet, u_text) if isinstance(u_text, str) else u_text
        root = () if u.is_identity() else (primitive_root(u)[0],)
        return FamilyInstance(
            name, {"u": str(u), "rank": rank}, inner(u), root, None, None
        )
    if name == "identity":
        rank = int(params.get("rank", 2))
        alphabet = standard_alphabet(rank)
        gens = tuple(
            Word.from_letters(alphabet, [g]) for g in range(1, rank + 1)
        )
        return FamilyInstance(name, {"rank": rank}, identity_pair(alphabet), gens, None, None)
    raise UnknownFamilyError(
        f"unknown family {name!r}; available: phi_k, alpha_k, beta, twist, delta, sigma, inner, identity"
    )


def parse_family_spec(spec: str) -> FamilyInstance:
    """Parse catalog strings like ``phi_k:k=3`` or ``twist:n=2,k=1``."""
    name, _, param_text = spec.partition(":")
    params = {}
    if param_text:
        for item in param_text.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise UnknownFamilyError(f"malformed family parameter {item!r}")
            params[key.strip()] = value.strip()
    return family(name.strip(), **params)


def _attractor_prefix_text(k: int, backward: bool) -> str:
    """First 12 letters of the rank-4 family's irrational limit, as text."""
    point = [4]  # d
    if not backward:
        point += [3, 3]  # c c
    j = 1
    while len(point) < 12:
        point += [1] * (j * (k + 1)) + ([-3] if backward else [3])
        j += 1
    return format_word(Word.from_letters(F4, point[:12])) + " …"


def expected_graph(name: str, **params) -> GraphTemplate:
    """The documented dynamics-graph shape for a cataloged family."""
    if name == "phi_k":
        k = int(params.get("k", 1))
        if k < 1:
            raise ValueError("the documented shape needs k >= 1")
        loop_at = rational_point(parse_word(F4, "b"), parse_word(F4, "a^-1")).text()
        vertex_texts = (
            rational_point(parse_word(F4, "b"), parse_word(F4, "a")).text(),
            loop_at,
            rational_point(identity(F4), parse_word(F4, "a")).text(),
            rational_point(identity(F4), parse_word(F4, "a^-1")).text(),
            rational_point(parse_word(F4, "c"), parse_word(F4, "a")).text(),
            rational_point(parse_word(F4, "c"), parse_word(F4, "a^-1")).text(),
            _attractor_prefix_text(k, backward=False),
            _attractor_prefix_text(k, backward=True),
        )
        return GraphTemplate(
            n_vertices=8,
            n_edges=7,
            n_components=3,
            loops=((loop_at, "b d^-1"),),
            vertex_texts=vertex_texts,
        )
    if name == "inner":
        u = params["u"]
        if isinstance(u, str):
            u = parse_word(standard_alphabet(int(params.get("rank", 2))), u)
        plus = rational_from_element(u).text()
        minus = rational_from_element(u.inverse()).text()
        return GraphTemplate(
            n_vertices=2,
            n_edges=1,
            n_components=1,
            vertex_texts=(plus, minus),
            edge_texts=((minus, plus),),
        )
    if name in ("twist", "delta"):
        n = int(params["n"])
        k = int(params.get("k", 0))
        case = classify_twist(n, k)
        a_plus = rational_point(identity(F2), parse_word(F2, "a")).text()
        a_minus = rational_point(identity(F2), parse_word(F2, "a^-1")).text()
        if case is TwistCase.TWO_COMPONENT:
            head = "b" if k == 0 else "b^-1"
            sign = 1 if (k == 0) == (n > 0) else -1
            b_plus = rational_point(
                parse_word(F2, head), parse_word(F2, "a" if sign > 0 else "a^-1")
            ).text()
            b_minus = rational_point(
                parse_word(F2, head), parse_word(F2, "a^-1" if sign > 0 else "a")
            ).text()
            if k == 0:
                edges = ((b_minus, b_plus), (a_plus if n > 0 else a_minus, a_minus if n > 0 else a_plus))
            else:
                edges = ((b_minus, b_plus), (a_minus if n > 0 else a_plus, a_plus if n > 0 else a_minus))
            return GraphTemplate(
                n_vertices=4,
                n_edges=2,
                n_components=2,
                vertex_texts=(b_plus, b_minus, a_plus, a_minus),
                edge_texts=edges,
            )
        if case is TwistCase.NORTH_SOUTH:
            attracting = a_plus if k > 0 else a_minus
            repulsing = a_minus if k > 0 else a_plus
            return GraphTemplate(
                n_vertices=2,
                n_edges=1,
                n_components=1,
                vertex_texts=(a_plus, a_minus),
                edge_texts=((repulsing, attracting),),
            )
        return GraphTemplate(
            n_vertices=2,
            n_edges=2,
            n_components=1,
            vertex_texts=(a_plus, a_minus),
            edge_texts=((a_minus, a_plus), (a_plus, a_minus)),
        )
    raise UnknownFamilyError(f"no documented graph shape for family {name!r}")
