"""Homological action of the affine maps realizing the parabolic generators.

The horizontal shear T fixes every bottom edge and sends a left edge to
the diagonal of the sheared square, resolved as "left edge then top
edge"; the vertical shear S is the mirror image.  Composing with the
relabeling that carries the sheared surface back onto the original gives
an exact chain self-map whose action on H1 is the monodromy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .homology import (
    HomologyBasis,
    SplitBasis,
    bottom_edge,
    build_chain_complex,
    h1_basis,
    left_edge,
    split_zero_holonomy,
)
from .origami import (
    InternalInvariantViolation,
    MalformedWord,
    Origami,
    apply_veech_generator,
    parse_word,
)
from .permutations import Permutation, all_simultaneous_conjugators


class NotInVeechGroup(ValueError):
    """The requested generator does not stabilize the surface."""


class NontrivialAutomorphisms(ValueError):
    """Surfaces with automorphisms are rejected: the affine group is not
    identified with the stabilizer in that case."""


@dataclass
class EdgeChainMap:
    """Linear map on edge chains commuting with both boundary maps."""

    source: Origami
    target: Origami
    matrix: list[list[int]]  # 2n x 2n, column j = image of source edge j
    face_images: list[list[int]]  # column j = image 2-chain of source face j

    def apply(self, vec) -> list[int]:
        return exact.mat_vec(self.matrix, list(vec))


def _edge_map_from_images(o: Origami, target: Origami, b_img, l_img, face_img) -> EdgeChainMap:
    n = o.n
    matrix = exact.zero_matrix(2 * n, 2 * n)
    for i in range(1, n + 1):
        for edge, coeff in b_img(i):
            matrix[edge][bottom_edge(i)] += coeff
        for edge, coeff in l_img(i):
            matrix[edge][left_edge(i, n)] += coeff
    faces = exact.zero_matrix(n, n)
    for i in range(1, n + 1):
        for face, coeff in face_img(i):
            faces[face][i - 1] += coeff
    return EdgeChainMap(source=o, target=target, matrix=matrix, face_images=faces)


def shear_chain_map(o: Origami, letter: str) -> EdgeChainMap:
    """Chain map of the affine shear o -> g(o) with derivative g.

    Defined for every origami; no stabilizer condition is needed because
    the target is the sheared surface itself.
    """
    n = o.n
    target = apply_veech_generator(letter, o)
    if letter == "T":
        v2 = target.v  # v h^-1

        def b_img(i):
            return [(bottom_edge(i), 1)]

        def l_img(i):
            return [(left_edge(i, n), 1), (bottom_edge(v2(i)), 1)]

    elif letter == "S":
        h2 = target.h  # h v^-1

        def b_img(i):
            return [(bottom_edge(i), 1), (left_edge(h2(i), n), 1)]

        def l_img(i):
            return [(left_edge(i, n), 1)]

    elif letter in ("t", "s"):
        # inverse shear: the exact inverse of the forward map from g(o)
        forward = shear_chain_map(target, letter.upper())
        assert forward.target == o
        matrix = exact.int_inverse(forward.matrix)
        faces = exact.int_inverse(forward.face_images)
        return EdgeChainMap(source=o, target=target, matrix=matrix, face_images=faces)
    else:
        raise ValueError(f"unknown generator {letter!r}")

    def face_img(i):
        return [(i - 1, 1)]

    return _edge_map_from_images(o, target, b_img, l_img, face_img)


def relabel_chain_map(o: Origami, psi: Permutation, target: Origami) -> EdgeChainMap:
    n = o.n

    def b_img(i):
        return [(bottom_edge(psi(i)), 1)]

    def l_img(i):
        return [(left_edge(psi(i), n), 1)]

    def face_img(i):
        return [(psi(i) - 1, 1)]

    return _edge_map_from_images(o, target, b_img, l_img, face_img)


def compose_chain_maps(outer: EdgeChainMap, inner: EdgeChainMap) -> EdgeChainMap:
    if outer.source != inner.target:
        raise ValueError("chain maps do not compose")
    return EdgeChainMap(
        source=inner.source,
        target=outer.target,
        matrix=exact.mat_mul(outer.matrix, inner.matrix),
        face_images=exact.mat_mul(outer.face_images, inner.face_images),
    )


def pushforward_edge_paths(o: Origami, letter: str) -> EdgeChainMap:
    """Edge-level substitution map of the affine self-map with derivative
    T or S; requires the generator to stabilize the surface."""
    if letter not in ("T", "S"):
        raise ValueError("pushforward is defined for the generators T and S")
    shear = shear_chain_map(o, letter)
    conjugators = all_simultaneous_conjugators(shear.target.h, shear.target.v, o.h, o.v)
    if not conjugators:
        raise NotInVeechGroup(f"{letter} does not fix this surface up to relabeling")
    psi = conjugators[0]  # lexicographically smallest, for determinism
    relabel = relabel_chain_map(shear.target, psi, o)
    return compose_chain_maps(relabel, shear)


def chain_map_defect(f: EdgeChainMap) -> bool:
    """True when f commutes with the face boundary maps exactly."""
    src = build_chain_complex(f.source)
    dst = build_chain_complex(f.target)
    lhs = exact.mat_mul(f.matrix, src.d2)
    rhs = exact.mat_mul(dst.d2, f.face_images)
    return exact.mat_eq(lhs, rhs)


@dataclass
class MonodromyPair:
    origami: Origami
    basis: HomologyBasis
    split: SplitBasis
    full_t: list[list[int]]
    full_s: list[list[int]]
    restricted_t: list[list[int]]
    restricted_s: list[list[int]]

    def full(self, letter: str):
        return {"T": self.full_t, "S": self.full_s}[letter]

    def restricted(self, letter: str):
        return {"T": self.restricted_t, "S": self.restricted_s}[letter]


def _induced_full_matrix(f: EdgeChainMap, hb: HomologyBasis) -> list[list[int]]:
    images = [f.apply(cls) for cls in hb.classes]
    cols = hb.coords_many(images)
    g2 = hb.rank
    return [[cols[j][i] for j in range(g2)] for i in range(g2)]


def _restrict(full, split: SplitBasis) -> list[list[int]]:
    cols = []
    for z in split.zero_holonomy:
        img = exact.mat_vec(full, z)
        if split.holonomy_of_coords(img) != (0, 0):
            raise InternalInvariantViolation("action must preserve zero holonomy")
        cols.append(split.zero_coords(img))
    k = len(cols)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _taut_block(full, split: SplitBasis) -> list[list[int]]:
    """Induced action on holonomy coordinates; equals the group element."""
    before = [split.holonomy_of_coords(t) for t in split.tautological]
    after = [split.holonomy_of_coords(exact.mat_vec(full, t)) for t in split.tautological]
    a = [[Fraction(before[0][0]), Fraction(before[1][0])], [Fraction(before[0][1]), Fraction(before[1][1])]]
    rhs = [[Fraction(after[0][0]), Fraction(after[1][0])], [Fraction(after[0][1]), Fraction(after[1][1])]]
    sol = exact.solve_frac(a, rhs)
    if sol is None:
        raise InternalInvariantViolation("tautological block must be solvable")
    return exact.frac_to_int(sol)


def is_symplectic(m, gram) -> bool:
    return exact.mat_eq(exact.mat_mul(exact.mat_mul(exact.transpose(m), gram), m), gram)


def induced_matrices(o: Origami) -> MonodromyPair:
    """Full and zero-holonomy monodromy matrices of the two generators.

    Rejects surfaces with nontrivial automorphisms, where the affine
    group cannot be identified with the stabilizer.
    """
    auts = all_simultaneous_conjugators(o.h, o.v, o.h, o.v)
    if len(auts) != 1:
        raise NontrivialAutomorphisms(
            f"surface has {len(auts)} automorphisms; monodromy is only computed "
            "for origamis with trivial automorphism group"
        )
    cc = build_chain_complex(o)
    hb = h1_basis(cc)
    split = split_zero_holonomy(hb)
    mats = {}
    for letter in ("T", "S"):
        f = pushforward_edge_paths(o, letter)
        if not chain_map_defect(f):
            raise InternalInvariantViolation("pushforward is not a chain map")
        full = _induced_full_matrix(f, hb)
        if not is_symplectic(full, hb.gram):
            raise InternalInvariantViolation("full monodromy must preserve the form")
        restricted = _restrict(full, split)
        if not is_symplectic(restricted, split.restricted_gram):
            raise InternalInvariantViolation("restricted monodromy must preserve the form")
        mats[letter] = (full, restricted)
    return MonodromyPair(
        origami=o,
        basis=hb,
        split=split,
        full_t=mats["T"][0],
        full_s=mats["S"][0],
        restricted_t=mats["T"][1],
        restricted_s=mats["S"][1],
    )


def tautological_block(mp: MonodromyPair, letter: str) -> list[list[int]]:
    return _taut_block(mp.full(letter), mp.split)


def evaluate_word(word: str, generators: dict[str, list[list[int]]]) -> list[list[int]]:
    """Product of generator matrices read left to right; lowercase letters
    and negative exponents use exact integer inverses."""
    alphabet = "".join(sorted(generators))
    size = len(next(iter(generators.values())))
    result = exact.identity_matrix(size)
    for sym, k in parse_word(word, alphabet):
        m = generators[sym]
        result = exact.mat_mul(result, exact.mat_pow(m, k))
    return result


def monodromy_of_word(mp: MonodromyPair, word: str) -> list[list[int]]:
    """Zero-holonomy monodromy of a word over {T, S, t, s}."""
    if not isinstance(word, str):
        raise MalformedWord("word must be a string")
    return evaluate_word(word, {"T": mp.restricted_t, "S": mp.restricted_s})
