"""Integral first homology of an origami from its square-tiled CW structure.

Edge conventions (fixed for the whole package):

* edge k, 0 <= k < n, is the bottom edge of square k+1, oriented left to
  right; edge n+k is the left edge of square k+1, oriented bottom to top;
* the boundary of face i is  b_i + l_{h(i)} - b_{v(i)} - l_i;
* the boundary of an edge is head vertex minus tail vertex, with vertices
  the commutator orbits.

The intersection number is computed by a local formula at the vertices
using the counterclockwise (ribbon) order of the half-edges; the torus
fixture <b, l> = +1 pins the global sign.  Everything here is exact
integer or rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .origami import CylinderDecomposition, InternalInvariantViolation, Origami


class NotACycle(ValueError):
    """Input vector is not in the kernel of the edge boundary map."""


class DegenerateSurface(ValueError):
    """The holonomy map has rank below 2; impossible for a valid origami."""


@dataclass
class ChainComplex:
    origami: Origami
    vertex_count: int
    edge_count: int
    face_count: int
    d1: list[list[int]]  # vertex_count x edge_count
    d2: list[list[int]]  # edge_count x face_count
    slots: list[list[tuple[int, int]]]  # per vertex: (edge, +1 out / -1 in) ccw

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    def is_cycle(self, vec) -> bool:
        return all(s == 0 for s in exact.mat_vec(self.d1, list(vec)))


def bottom_edge(i: int) -> int:
    """Edge index of b_i (1-based square label)."""
    return i - 1


def left_edge(i: int, n: int) -> int:
    """Edge index of l_i (1-based square label)."""
    return n + i - 1


def build_chain_complex(o: Origami) -> ChainComplex:
    n = o.n
    h, v = o.h, o.v
    hinv, vinv = h.inverse(), v.inverse()
    vertices = o.vertices
    vertex_of = o.vertex_of

    d1 = exact.zero_matrix(len(vertices), 2 * n)
    for i in range(1, n + 1):
        d1[vertex_of[h(i) - 1]][bottom_edge(i)] += 1
        d1[vertex_of[i - 1]][bottom_edge(i)] -= 1
        d1[vertex_of[v(i) - 1]][left_edge(i, n)] += 1
        d1[vertex_of[i - 1]][left_edge(i, n)] -= 1

    d2 = exact.zero_matrix(2 * n, n)
    for i in range(1, n + 1):
        d2[bottom_edge(i)][i - 1] += 1
        d2[left_edge(h(i), n)][i - 1] += 1
        d2[bottom_edge(v(i))][i - 1] -= 1
        d2[left_edge(i, n)][i - 1] -= 1

    # ccw half-edge slots around each vertex; four slots per sector turn:
    # b_i out, l_i out, b_{h^-1(i)} in, l_{v^-1(c(i))} in, then on to c(i)
    slots = []
    for orbit in vertices:
        lst: list[tuple[int, int]] = []
        m = len(orbit)
        for t, i in enumerate(orbit):
            nxt = orbit[(t + 1) % m]
            lst.append((bottom_edge(i), 1))
            lst.append((left_edge(i, n), 1))
            lst.append((bottom_edge(hinv(i)), -1))
            lst.append((left_edge(vinv(nxt), n), -1))
        slots.append(lst)

    return ChainComplex(
        origami=o,
        vertex_count=len(vertices),
        edge_count=2 * n,
        face_count=n,
        d1=d1,
        d2=d2,
        slots=slots,
    )


def intersection_number(x, y, cc: ChainComplex) -> int:
    """Algebraic intersection number of two cycles.

    At each vertex the outward flows through the ccw-ordered slots are
    paired antisymmetrically; the total double-counts the crossings.
    """
    for vec in (x, y):
        if not cc.is_cycle(vec):
            raise NotACycle("intersection pairing needs cycles")
    total = 0
    for lst in cc.slots:
        px = py = 0
        for edge, sign in lst:
            vx = sign * x[edge]
            vy = sign * y[edge]
            total += px * vy - py * vx
            px += vx
            py += vy
    if total % 2:
        raise InternalInvariantViolation("crossing count must be even")
    return total // 2


def holonomy(vec, n: int) -> tuple[int, int]:
    """(horizontal, vertical) displacement of an edge chain."""
    return (sum(vec[:n]), sum(vec[n:]))


@dataclass
class HomologyBasis:
    cc: ChainComplex
    classes: list[list[int]]  # 2g cycle vectors (edge coordinates)
    gram: list[list[int]]  # intersection pairing, unimodular skew
    holonomies: list[tuple[int, int]]
    _kernel: list[list[int]]  # columns: basis of Z1
    _u: list[list[int]]  # SNF row transform of the boundary-coordinate matrix
    _boundary_rank: int

    @property
    def rank(self) -> int:
        return len(self.classes)

    def coords_many(self, vecs) -> list[list[int]]:
        """H1 coordinates of several cycle vectors at once."""
        for vec in vecs:
            if not self.cc.is_cycle(vec):
                raise NotACycle("only cycles have homology coordinates")
        if not vecs:
            return []
        a = [[col[i] for col in self._kernel] for i in range(self.cc.edge_count)]
        rhs = [[vec[e] for vec in vecs] for e in range(self.cc.edge_count)]
        sol = exact.solve_frac(a, rhs)
        if sol is None:
            raise NotACycle("vector is outside the cycle lattice")
        tcoords = exact.frac_to_int([[sol[i][j] for i in range(len(self._kernel))] for j in range(len(vecs))])
        out = []
        for t in tcoords:
            y = exact.mat_vec(self._u, t)
            out.append(y[self._boundary_rank:])
        return out

    def coords(self, vec) -> list[int]:
        return self.coords_many([vec])[0]

    def class_from_coords(self, coords) -> list[int]:
        """An edge-chain representative of a homology coordinate vector."""
        vec = [0] * self.cc.edge_count
        for c, cls in zip(coords, self.classes):
            for e in range(len(vec)):
                vec[e] += c * cls[e]
        return vec


def h1_basis(cc: ChainComplex) -> HomologyBasis:
    """An integral basis of H1 with its intersection matrix and holonomies.

    The kernel of d1 is saturated by construction; face boundaries are
    expressed in kernel coordinates and quotiented out through a Smith
    normal form, whose free rows give the basis classes.
    """
    kernel = exact.kernel_basis(cc.d1)
    k = len(kernel)
    faces = [[cc.d2[e][f] for f in range(cc.face_count)] for e in range(cc.edge_count)]
    a = [[col[e] for col in kernel] for e in range(cc.edge_count)]
    sol = exact.solve_frac(a, faces)
    if sol is None:
        raise InternalInvariantViolation("face boundaries must be cycles")
    m = exact.frac_to_int(sol)  # k x face_count
    u, d, _ = exact.smith_normal_form(m)
    r = sum(1 for i in range(min(k, cc.face_count)) if d[i][i] != 0)
    for i in range(r):
        if d[i][i] != 1:
            raise InternalInvariantViolation("surface homology must be torsion-free")
    g2 = k - r
    if g2 != 2 * cc.genus():
        raise InternalInvariantViolation("H1 rank disagrees with the genus")
    uinv = exact.int_inverse(u)
    classes = []
    for j in range(r, k):
        xc = [uinv[i][j] for i in range(k)]
        vec = [0] * cc.edge_count
        for i, c in enumerate(xc):
            if c:
                col = kernel[i]
                for e in range(cc.edge_count):
                    vec[e] += c * col[e]
        classes.append(vec)
    gram = [[0] * g2 for _ in range(g2)]
    for i in range(g2):
        for j in range(i + 1, g2):
            val = intersection_number(classes[i], classes[j], cc)
            gram[i][j] = val
            gram[j][i] = -val
    if abs(exact.bareiss_det(gram)) != 1:
        raise InternalInvariantViolation("intersection form must be unimodular")
    hols = [holonomy(v, cc.origami.n) for v in classes]
    basis = HomologyBasis(
        cc=cc,
        classes=classes,
        gram=gram,
        holonomies=hols,
        _kernel=kernel,
        _u=u,
        _boundary_rank=r,
    )
    for j, cls in enumerate(classes):
        expected = [1 if i == j else 0 for i in range(g2)]
        if basis.coords(cls) != expected:
            raise InternalInvariantViolation("basis coordinates must be unit vectors")
    return basis


@dataclass
class SplitBasis:
    basis: HomologyBasis
    tautological: list[list[int]]  # 2 coordinate vectors in the H1 basis
    zero_holonomy: list[list[int]]  # 2g-2 coordinate vectors in the H1 basis
    restricted_gram: list[list[int]]

    def zero_coords(self, h1_coords) -> list[int]:
        """Coordinates of a zero-holonomy class in the zero-holonomy basis."""
        res = exact.lattice_coords([list(z) for z in self.zero_holonomy], list(h1_coords))
        if res is None:
            raise ValueError("class is not in the zero-holonomy sublattice")
        return res

    def holonomy_of_coords(self, h1_coords) -> tuple[int, int]:
        hols = self.basis.holonomies
        hx = sum(c * hols[i][0] for i, c in enumerate(h1_coords))
        hy = sum(c * hols[i][1] for i, c in enumerate(h1_coords))
        return (hx, hy)


def split_zero_holonomy(hb: HomologyBasis) -> SplitBasis:
    """Saturated zero-holonomy sublattice plus a tautological complement.

    The tautological classes span the symplectic complement of the
    zero-holonomy part, so the two blocks pair trivially.
    """
    g2 = hb.rank
    hol = [[hb.holonomies[j][0] for j in range(g2)], [hb.holonomies[j][1] for j in range(g2)]]
    if exact.rank(hol) < 2:
        raise DegenerateSurface("holonomy map must have rank 2")
    zero = exact.kernel_basis(hol)  # saturated, rank 2g-2
    zmat = [list(z) for z in zero]
    pair = exact.mat_mul(zmat, hb.gram)  # pairings against the zero classes
    taut = exact.kernel_basis(pair)
    if len(taut) != 2:
        raise InternalInvariantViolation("tautological complement must have rank 2")
    # orient the tautological pair positively in holonomy coordinates
    t_hol = [hb_holonomy(hb, t) for t in taut]
    det = t_hol[0][0] * t_hol[1][1] - t_hol[0][1] * t_hol[1][0]
    if det == 0:
        raise InternalInvariantViolation("tautological holonomies must be independent")
    if det < 0:
        taut = [taut[1], taut[0]]
    restricted = [[0] * len(zero) for _ in range(len(zero))]
    zg = exact.mat_mul(zmat, hb.gram)
    for i in range(len(zero)):
        for j in range(len(zero)):
            restricted[i][j] = sum(zg[i][k] * zero[j][k] for k in range(g2))
    if exact.bareiss_det(restricted) == 0:
        raise InternalInvariantViolation("restricted pairing must be nondegenerate")
    split = SplitBasis(
        basis=hb,
        tautological=[list(t) for t in taut],
        zero_holonomy=zmat,
        restricted_gram=restricted,
    )
    for z in zmat:
        if split.holonomy_of_coords(z) != (0, 0):
            raise InternalInvariantViolation("zero-holonomy class has holonomy")
    return split


def hb_holonomy(hb: HomologyBasis, coords) -> tuple[int, int]:
    hx = sum(c * hb.holonomies[i][0] for i, c in enumerate(coords))
    hy = sum(c * hb.holonomies[i][1] for i, c in enumerate(coords))
    return (hx, hy)


def symplectic_normalize(gram):
    """Unimodular U and normal form F = Uᵀ·gram·U = [[0, D], [-D, 0]].

    The diagonal of D is the divisor chain d1 | d2 | ... of the form.
    """
    return exact.skew_normal_form(gram)


def waist_vector(cc: ChainComplex, squares) -> list[int]:
    """Homology cycle of a cylinder waist: the sum of the bottom edges of
    its bottom row."""
    vec = [0] * cc.edge_count
    for s in squares:
        vec[bottom_edge(s)] += 1
    return vec


def waist_classes(decomposition: CylinderDecomposition) -> tuple[HomologyBasis, list[list[int]]]:
    """H1 basis of the transported surface plus coordinates of each waist."""
    cc = build_chain_complex(decomposition.surface)
    hb = h1_basis(cc)
    vecs = [waist_vector(cc, cyl.waist_squares) for cyl in decomposition.cylinders]
    return hb, hb.coords_many(vecs)


def waist_span_rank(decomposition: CylinderDecomposition) -> int:
    """Homological dimension of the decomposition's direction."""
    _, coords = waist_classes(decomposition)
    return exact.rank(coords)
