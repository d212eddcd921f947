"""Origamis (square-tiled surfaces) and their combinatorial geometry.

An origami is a transitive pair (h, v) of permutations of the squares
1..n: h(i) is the square right of i, v(i) the square above i.  The
cone point at the lower-left corner of square i is the orbit of i under
the commutator c = v h v^-1 h^-1; the corner is singular iff its orbit
is longer than 1.  This convention is pinned by the cylinder fixtures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .permutations import (
    DegreeMismatch,
    Permutation,
    RequiresTransitive,
    all_simultaneous_conjugators,
    commutator,
    format_cycles,
    is_transitive,
    parse_cycles,
    simultaneous_conjugator,
)


class InternalInvariantViolation(AssertionError):
    """A structural identity that must hold for valid input failed."""


GENERATOR_LETTERS = ("T", "S", "t", "s")

# column action on Z^2 of the two parabolic generators
MAT_T = ((1, 1), (0, 1))
MAT_S = ((1, 0), (1, 1))


class Origami:
    """A connected square-tiled surface given by its gluing pair."""

    def __init__(self, h: Permutation, v: Permutation, name: str | None = None):
        if h.degree != v.degree:
            raise DegreeMismatch(f"degree {h.degree} vs {v.degree}")
        if not is_transitive(h, v):
            raise RequiresTransitive("origami must be connected (transitive pair)")
        self.h = h
        self.v = v
        self.n = h.degree
        self.name = name

    @classmethod
    def from_cycles(cls, h: str, v: str, n: int | None = None, name: str | None = None):
        degree = n
        if degree is None:
            degree = max(parse_cycles(h).degree, parse_cycles(v).degree)
            degree = max(degree, 1)
        return cls(parse_cycles(h, degree), parse_cycles(v, degree), name=name)

    @cached_property
    def commutator(self) -> Permutation:
        return commutator(self.h, self.v)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        """Cone points as commutator orbits (1-based), smallest point first."""
        return self.commutator.cycles(include_fixed=True)

    @cached_property
    def vertex_of(self) -> list[int]:
        """vertex_of[i-1] = index into :attr:`vertices` of square i's corner."""
        out = [0] * self.n
        for k, orbit in enumerate(self.vertices):
            for p in orbit:
                out[p - 1] = k
        return out

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.h.imgs, self.v.imgs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Origami) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Origami{label} n={self.n} h={format_cycles(self.h)} v={format_cycles(self.v)}>"


@dataclass(frozen=True)
class Stratum:
    zero_orders: tuple[int, ...]
    genus: int

    def __str__(self) -> str:
        if not self.zero_orders:
            return "H()"
        return "H(" + ",".join(str(m) for m in self.zero_orders) + ")"


def stratum(o: Origami) -> Stratum:
    """Cone-point orders and genus from the commutator cycle structure."""
    lengths = [len(c) for c in o.vertices]
    orders = tuple(sorted((l - 1 for l in lengths if l > 1), reverse=True))
    c = len(lengths)
    if (o.n - c) % 2:
        raise InternalInvariantViolation("n - c must be even for a closed surface")
    genus = 1 + (o.n - c) // 2
    if sum(orders) != 2 * genus - 2 and genus >= 1:
        raise InternalInvariantViolation("zero orders inconsistent with genus")
    return Stratum(orders, genus)


def apply_veech_generator(letter: str, o: Origami) -> Origami:
    """Image surface under one generator; T:(h,v)->(h,vh^-1), S:(h,v)->(hv^-1,v).

    Lowercase letters apply the inverse generator.
    """
    h, v = o.h, o.v
    if letter == "T":
        return Origami(h, v * h.inverse())
    if letter == "t":
        return Origami(h, v * h)
    if letter == "S":
        return Origami(h * v.inverse(), v)
    if letter == "s":
        return Origami(h * v, v)
    raise ValueError(f"unknown generator {letter!r}; expected one of {GENERATOR_LETTERS}")


def veech_conjugator(letter: str, o: Origami) -> Permutation | None:
    """ψ with ψ·g(h,v)·ψ⁻¹ = (h,v) for generator g, or None."""
    img = apply_veech_generator(letter, o)
    return simultaneous_conjugator(img.h, img.v, o.h, o.v)


def is_veech_full(o: Origami) -> bool:
    """True iff T and S both fix the origami up to relabeling squares.

    Then the stabilizer contains both parabolic generators, hence every
    integer matrix of determinant one.
    """
    return veech_conjugator("T", o) is not None and veech_conjugator("S", o) is not None


def automorphisms(o: Origami) -> list[Permutation]:
    return all_simultaneous_conjugators(o.h, o.v, o.h, o.v)


def canonical_form(o: Origami) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Deterministic relabeling invariant: lexicographically smallest image
    pair over the n breadth-first relabelings (one per choice of start square).
    """
    n = o.n
    h, v = o.h.imgs, o.v.imgs
    best = None
    for start in range(n):
        relabel = [-1] * n
        relabel[start] = 0
        order = [start]
        queue = deque([start])
        nxt = 1
        while queue:
            x = queue.popleft()
            for y in (h[x], v[x]):
                if relabel[y] == -1:
                    relabel[y] = nxt
                    nxt += 1
                    order.append(y)
                    queue.append(y)
        h2 = tuple(relabel[h[order[i]]] for i in range(n))
        v2 = tuple(relabel[v[order[i]]] for i in range(n))
        cand = (h2, v2)
        if best is None or cand < best:
            best = cand
    return best


def canonical_origami(o: Origami) -> Origami:
    h2, v2 = canonical_form(o)
    return Origami(Permutation._from0(h2), Permutation._from0(v2), name=o.name)


@dataclass
class OrbitGraph:
    """Closure of an origami under T and S up to simultaneous conjugacy."""

    nodes: list[tuple[tuple[int, ...], tuple[int, ...]]]
    edges: dict[tuple[int, str], int]
    truncated: bool = False

    @property
    def size(self) -> int:
        return len(self.nodes)


def sl2z_orbit(o: Origami, max_size: int = 10000) -> OrbitGraph:
    """Breadth-first orbit of the surface under T and S.

    The node count is the index of the Veech group when the closure
    completes; a partial graph is returned with ``truncated`` set when
    ``max_size`` is exceeded.  Forward edges suffice: T and S permute the
    finite orbit, so the forward closure is closed under inverses too.
    """
    start = canonical_form(o)
    index = {start: 0}
    reps = [Origami(Permutation._from0(start[0]), Permutation._from0(start[1]))]
    edges: dict[tuple[int, str], int] = {}
    queue = deque([0])
    truncated = False
    while queue:
        i = queue.popleft()
        for letter in ("T", "S"):
            img = apply_veech_generator(letter, reps[i])
            key = canonical_form(img)
            j = index.get(key)
            if j is None:
                if len(reps) >= max_size:
                    truncated = True
                    continue
                j = len(reps)
                index[key] = j
                reps.append(Origami(Permutation._from0(key[0]), Permutation._from0(key[1])))
                queue.append(j)
            edges[(i, letter)] = j
    return OrbitGraph(nodes=[r.key() for r in reps], edges=edges, truncated=truncated)


@dataclass(frozen=True)
class Cylinder:
    circumference: int
    height: int
    rows: tuple[tuple[int, ...], ...]  # stacked h-cycles, bottom first

    @property
    def waist_squares(self) -> tuple[int, ...]:
        """Squares of the bottom row; the waist class is the sum of their
        bottom edges."""
        return self.rows[0]


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: tuple[int, int]
    cylinders: tuple[Cylinder, ...]
    surface: Origami = field(compare=False)
    word: str = ""  # word moving (1,0) to ``direction``; empty if horizontal

    @property
    def circumferences(self) -> tuple[int, ...]:
        return tuple(sorted((c.circumference for c in self.cylinders), reverse=True))

    def area(self) -> int:
        return sum(c.circumference * c.height for c in self.cylinders)


def horizontal_cylinders(o: Origami, marked: bool = True) -> CylinderDecomposition:
    """Maximal horizontal cylinders.

    With ``marked`` (the default) every lattice corner is a marked point,
    as for a cover of the once-marked square torus: every row boundary
    then carries marked points, so the cylinders are exactly the h-cycles
    with height one.  With ``marked=False`` only cone points block, and a
    row merges with the row above exactly when no singular corner lies on
    the shared boundary, i.e. when every upper-left corner along the row
    is fixed by the commutator.
    """
    rows = o.h.cycles(include_fixed=True)
    row_of = {}
    for k, row in enumerate(rows):
        for p in row:
            row_of[p] = k
    c = o.commutator
    up: dict[int, int] = {}
    for k, row in enumerate(rows):
        if not marked and all(c(o.v(i)) == o.v(i) for i in row):
            above = {row_of[o.v(i)] for i in row}
            if len(above) != 1:
                raise InternalInvariantViolation("merged boundary must lead to one row")
            k2 = above.pop()
            if len(rows[k2]) != len(row):
                raise InternalInvariantViolation("merged rows must share circumference")
            up[k] = k2
    down = {above: below for below, above in up.items()}
    seen = set()
    cylinders = []
    for k in range(len(rows)):
        if k in seen:
            continue
        # walk to the bottom of the stack, watching for a full cycle of rows
        bottom = k
        for _ in range(len(rows)):
            if bottom not in down:
                break
            bottom = down[bottom]
        else:  # cycle: pick the smallest row index as the base
            cyc = [k]
            cur = up[k]
            while cur != k:
                cyc.append(cur)
                cur = up[cur]
            bottom = min(cyc)
        stack = [bottom]
        seen.add(bottom)
        cur = bottom
        while cur in up and up[cur] not in seen:
            cur = up[cur]
            stack.append(cur)
            seen.add(cur)
        cylinders.append(
            Cylinder(
                circumference=len(rows[bottom]),
                height=len(stack),
                rows=tuple(rows[i] for i in stack),
            )
        )
    decomposition = CylinderDecomposition(
        direction=(1, 0), cylinders=tuple(cylinders), surface=o, word=""
    )
    if decomposition.area() != o.n:
        raise InternalInvariantViolation("cylinder areas must tile the surface")
    return decomposition


# --- words in the parabolic generators -------------------------------------

_R_INV_WORD = "tSt"  # inverse quarter turn: sends (y,0) to (0,y)
_MINUS_ID_WORD = "TsTTsT"


def word_matrix(word: str) -> tuple[tuple[int, int], ...]:
    """Evaluate a word over {T,S,t,s} (with ^k sugar) as a 2x2 matrix,
    leftmost letter applied last."""
    a, b, c, d = 1, 0, 0, 1
    for sym, k in parse_word(word, "TS"):
        if sym == "T":
            e, f, g, hh = 1, k, 0, 1
        else:
            e, f, g, hh = 1, 0, k, 1
        a, b, c, d = a * e + b * g, a * f + b * hh, c * e + d * g, c * f + d * hh
    return ((a, b), (c, d))


def parse_word(word: str, alphabet: str) -> list[tuple[str, int]]:
    """Parse e.g. "STST^20" into [("S",1),("T",1),("S",1),("T",20)].

    Uppercase letters are generators, lowercase their inverses, and ^k
    repeats the preceding letter (k may be negative).
    """
    out: list[tuple[str, int]] = []
    i = 0
    while i < len(word):
        ch = word[i]
        if ch.isspace():
            i += 1
            continue
        upper = ch.upper()
        if upper not in alphabet:
            raise MalformedWord(f"unexpected symbol {ch!r} in word {word!r}")
        exp = 1 if ch.isupper() else -1
        i += 1
        if i < len(word) and word[i] == "^":
            i += 1
            j = i
            if j < len(word) and word[j] in "+-":
                j += 1
            while j < len(word) and word[j].isdigit():
                j += 1
            if j == i:
                raise MalformedWord(f"missing exponent after ^ in {word!r}")
            exp *= int(word[i:j])
            i = j
        if exp:
            out.append((upper, exp))
    return out


class MalformedWord(ValueError):
    """A generator word string that cannot be parsed."""


def invert_word(word: str) -> str:
    """Word evaluating to the inverse matrix."""
    parts = []
    for sym, k in reversed(parse_word(word, "TS")):
        parts.append(f"{sym}^{-k}" if abs(k) != 1 else (sym.swapcase() if k > 0 else sym))
    return "".join(parts)


def apply_word(o: Origami, word: str) -> Origami:
    """Surface W·o; the affine map o -> W·o has derivative word_matrix(word).

    Letters are applied right to left so that composites match matrix
    products.
    """
    letters: list[str] = []
    for sym, k in parse_word(word, "TS"):
        letters.extend([sym if k > 0 else sym.swapcase()] * abs(k))
    result = o
    for letter in reversed(letters):
        result = apply_veech_generator(letter, result)
    return result


def word_for_direction(p: int, q: int) -> str:
    """Some word W in {T,S,t,s} with W·(1,0) = (p,q); requires gcd(|p|,|q|)=1."""
    from math import gcd

    if gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"direction ({p},{q}) is not primitive")
    letters: list[tuple[str, int]] = []
    x, y = p, q
    guard = 0
    while (x, y) != (1, 0):
        guard += 1
        if guard > 10000:
            raise RuntimeError("direction reduction failed to terminate")
        if y == 0:
            # x == -1: peel off -identity
            for sym, k in parse_word(_MINUS_ID_WORD, "TS"):
                letters.append((sym, k))
            x = -x
        elif x == 0:
            # (0, y) = W · (y, 0) for the quarter turn W = tSt
            for sym, k in parse_word(_R_INV_WORD, "TS"):
                letters.append((sym, k))
            x, y = y, 0
        elif abs(x) >= abs(y):
            k = x // y
            if k:
                letters.append(("T", k))
                x -= k * y
            else:
                letters.append(("S", y // x))
                y %= x
        else:
            k = y // x
            letters.append(("S", k))
            y -= k * x
    return "".join(
        (sym if e > 0 else sym.lower()) if abs(e) == 1 else f"{sym}^{e}" for sym, e in letters
    )


def cylinders_in_direction(
    o: Origami, direction: tuple[int, int], marked: bool = True
) -> CylinderDecomposition:
    """Cylinder decomposition in a primitive rational direction.

    The surface is renormalized by the inverse of a word sending (1,0) to
    the direction; horizontal cylinders there correspond to cylinders of
    ``o`` in the requested direction, with the same circumferences and
    heights.
    """
    p, q = direction
    word = word_for_direction(p, q)
    if not word:
        base = horizontal_cylinders(o, marked=marked)
        return CylinderDecomposition(
            direction=(p, q), cylinders=base.cylinders, surface=base.surface, word=""
        )
    transported = apply_word(o, invert_word(word))
    base = horizontal_cylinders(transported, marked=marked)
    return CylinderDecomposition(
        direction=(p, q), cylinders=base.cylinders, surface=transported, word=word
    )


def homological_dimension(o: Origami, direction: tuple[int, int] = (1, 0)) -> int:
    """Rank of the span of the waist classes in the given direction."""
    from . import homology

    decomposition = cylinders_in_direction(o, direction)
    return homology.waist_span_rank(decomposition)
