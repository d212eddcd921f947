"""Permutations of {1..n} with cycle-notation I/O and conjugacy search.

Points are labeled 1..n in all input and output; storage is 0-based.
Composition is right-to-left: (a * b)(x) = a(b(x)).  The commutator
convention is [h, v] = v h v^-1 h^-1, fixed once here because both
orders appear in the literature.
"""

from __future__ import annotations

import re
from collections import deque


class MalformedCycles(ValueError):
    """Cycle notation that does not describe a permutation."""


class DegreeMismatch(ValueError):
    """Operands act on different numbers of points."""


class RequiresTransitive(ValueError):
    """Operation needs a transitive pair of permutations."""


class Permutation:
    """Bijection of {1..n}; immutable and hashable."""

    __slots__ = ("imgs",)

    def __init__(self, images):
        """``images`` lists the 1-based image of each point 1..n in order."""
        imgs = tuple(x - 1 for x in images)
        n = len(imgs)
        if sorted(imgs) != list(range(n)):
            raise MalformedCycles(f"not a bijection of 1..{n}: {list(images)}")
        object.__setattr__(self, "imgs", imgs)

    @classmethod
    def _from0(cls, imgs0) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "imgs", tuple(imgs0))
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._from0(range(n))

    @property
    def degree(self) -> int:
        return len(self.imgs)

    def __call__(self, point: int) -> int:
        return self.imgs[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        return Permutation._from0(self.imgs[x] for x in other.imgs)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.imgs):
            inv[x] = i
        return Permutation._from0(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.imgs == other.imgs

    def __hash__(self) -> int:
        return hash(self.imgs)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.imgs))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycles as 1-based tuples, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.imgs[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, sorted descending."""
        lengths = [len(c) for c in self.cycles(include_fixed=True)]
        return tuple(sorted(lengths, reverse=True))

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation like "(1,2,3)(4,5)"; fixed points may be omitted.

    Whitespace is allowed anywhere, and points may be separated by commas
    or spaces.  If ``degree`` is given it must cover every mentioned point.
    """
    stripped = text.strip()
    body = _CYCLE_RE.sub("", stripped)
    if body.strip():
        raise MalformedCycles(f"unexpected text outside cycles: {text!r}")
    cycles = []
    seen: set[int] = set()
    for group in _CYCLE_RE.findall(stripped):
        parts = [p for p in re.split(r"[,\s]+", group.strip()) if p]
        if not parts:
            continue
        try:
            points = [int(p) for p in parts]
        except ValueError as exc:
            raise MalformedCycles(f"non-integer point in {group!r}") from exc
        for p in points:
            if p <= 0:
                raise MalformedCycles(f"points must be positive, got {p}")
            if p in seen:
                raise MalformedCycles(f"point {p} repeated")
            seen.add(p)
        cycles.append(points)
    top = max(seen, default=0)
    if degree is None:
        degree = top
    elif degree < top:
        raise MalformedCycles(f"degree {degree} smaller than mentioned point {top}")
    imgs = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            imgs[a - 1] = b - 1
    return Permutation._from0(imgs)


def format_cycles(p: Permutation) -> str:
    """Cycle notation; fixed points omitted, identity printed as "()"."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a after b: compose(a, b)(x) = a(b(x))."""
    return a * b


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def commutator(h: Permutation, v: Permutation) -> Permutation:
    """[h, v] = v h v^-1 h^-1 (applied right to left)."""
    return v * h * v.inverse() * h.inverse()


def is_transitive(h: Permutation, v: Permutation) -> bool:
    """True iff the group generated by h and v acts transitively."""
    if h.degree != v.degree:
        raise DegreeMismatch(f"degree {h.degree} vs {v.degree}")
    n = h.degree
    if n == 0:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    hi, vi = h.imgs, v.imgs
    hinv, vinv = h.inverse().imgs, v.inverse().imgs
    while queue:
        x = queue.popleft()
        for y in (hi[x], vi[x], hinv[x], vinv[x]):
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count == n


def _propagate_conjugator(h, v, h2, v2, image_of_0):
    """ψ with ψ(0-based 0) = image_of_0, ψh = h2ψ and ψv = v2ψ, or None."""
    n = h.degree
    psi = [-1] * n
    psi[0] = image_of_0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        y = psi[x]
        for p, p2 in ((h.imgs, h2.imgs), (v.imgs, v2.imgs)):
            nx, ny = p[x], p2[y]
            if psi[nx] == -1:
                psi[nx] = ny
                queue.append(nx)
            elif psi[nx] != ny:
                return None
    if -1 in psi or sorted(psi) != list(range(n)):
        return None
    # full verification of both conjugation identities
    for x in range(n):
        if psi[h.imgs[x]] != h2.imgs[psi[x]] or psi[v.imgs[x]] != v2.imgs[psi[x]]:
            return None
    return Permutation._from0(psi)


def all_simultaneous_conjugators(h, v, h2, v2) -> list[Permutation]:
    """All ψ with ψhψ⁻¹ = h2 and ψvψ⁻¹ = v2, sorted by image tuple.

    Requires (h, v) transitive, so each ψ is determined by ψ(1); the n
    candidate images of 1 are tried exhaustively.
    """
    for p in (v, h2, v2):
        if p.degree != h.degree:
            raise DegreeMismatch(f"degree {h.degree} vs {p.degree}")
    if not is_transitive(h, v):
        raise RequiresTransitive("conjugator search needs a transitive pair")
    found = []
    for c in range(h.degree):
        psi = _propagate_conjugator(h, v, h2, v2, c)
        if psi is not None:
            found.append(psi)
    return sorted(found, key=lambda p: p.imgs)


def simultaneous_conjugator(h, v, h2, v2) -> Permutation | None:
    """Least ψ with ψhψ⁻¹ = h2 and ψvψ⁻¹ = v2, or None if none exists."""
    found = all_simultaneous_conjugators(h, v, h2, v2)
    return found[0] if found else None
