"""Finitely generated abelian groups presented by integer matrices.

Groups are kept in canonical form ``Z/d_1 x ... x Z/d_k x Z^r`` with
``d_i >= 2`` and ``d_i | d_{i+1}``.  Elements are tuples of coordinates in
the canonical generators (torsion coordinates reduced mod ``d_i``).

Matrices are row-major lists of Python ints.  Relations and homomorphism
matrices use the row-vector convention: row ``i`` of a relation matrix is
one relation, row ``i`` of a homomorphism matrix is the image of domain
generator ``i``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .errors import InvalidHom

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def vecmat(x: Sequence[int], a: Sequence[Sequence[int]], cols: int) -> list[int]:
    out = [0] * cols
    for xi, row in zip(x, a):
        if xi:
            for j in range(cols):
                out[j] += xi * row[j]
    return out


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular.  The pivot at each stage is the entry of
    smallest nonzero absolute value in the remaining block, ties broken by
    row then column.  ``ncols`` is needed only when ``m`` has no rows.
    """
    u, d, v, _ = _snf(m, ncols)
    return u, d, v


def _snf(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    rows = len(m)
    cols = len(m[0]) if rows else (ncols or 0)
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)
    vinv = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        # col_dst += k * col_src
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]
        vinv[src] = [x - k * y for x, y in zip(vinv[src], vinv[dst])]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return u, a, v, vinv
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v, vinv


@dataclass(frozen=True)
class FgGroup:
    """``Z/d_1 x ... x Z/d_k x Z^free_rank`` in canonical form."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        ds = self.invariant_factors
        if any(d < 2 for d in ds) or any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"not a canonical invariant-factor list: {ds}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def trivial(cls) -> FgGroup:
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> FgGroup:
        """``Z/n`` for ``n >= 1``; ``n == 0`` gives ``Z``."""
        if n == 0:
            return cls((), 1)
        return group_from_presentation(1, [[n]])

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FgGroup:
        """Canonical form of a direct sum of cyclic groups (0 meaning ``Z``)."""
        n = len(orders)
        return group_from_presentation(n, [[o if i == j else 0 for j in range(n)] for i, o in enumerate(orders)])

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-generator modulus, 0 for free generators."""
        return self.invariant_factors + (0,) * self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.invariant_factors) if self.is_finite else None

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(xi % d if d else xi for xi, d in zip(x, self.moduli))

    def add(self, x, y) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def elements(self) -> Iterator[tuple[int, ...]]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def torsion_count(self, k: int) -> int:
        """Number of elements killed by ``k`` (finite groups only)."""
        return math.prod(math.gcd(k, d) for d in self.invariant_factors)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


class Presentation(NamedTuple):
    """``Z^n / rowspace(relations)`` together with its canonical coordinates.

    ``basis[i]`` is the ``Z^n`` vector of canonical generator ``i``;
    ``change`` maps a ``Z^n`` row vector to canonical coordinates
    (``x -> x @ change`` restricted to ``kept`` columns, then reduced).
    """

    group: FgGroup
    ngens: int
    change: Matrix
    kept: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        y = vecmat(x, self.change, self.ngens)
        return self.group.reduce([y[j] for j in self.kept])

    def lift(self, i: int) -> tuple[int, ...]:
        return self.basis[i]


def present(n_generators: int, relations: Sequence[Sequence[int]]) -> Presentation:
    rels = [list(r) for r in relations if any(r)]
    for r in rels:
        if len(r) != n_generators:
            raise ValueError("relation length does not match generator count")
    _, d, v, vinv = _snf(rels, n_generators)
    torsion, free = [], []
    for j in range(n_generators):
        dj = d[j][j] if j < len(rels) else 0
        if dj == 0:
            free.append(j)
        elif dj > 1:
            torsion.append((j, dj))
    kept = tuple(j for j, _ in torsion) + tuple(free)
    group = FgGroup(tuple(dj for _, dj in torsion), len(free))
    basis = tuple(tuple(vinv[j]) for j in kept)
    return Presentation(group, n_generators, v, kept, basis)


def group_from_presentation(n_generators: int, relations: Sequence[Sequence[int]]) -> FgGroup:
    """``Z^n`` modulo the row space of ``relations``, in canonical form."""
    return present(n_generators, relations).group


def canonical_relations(a: FgGroup) -> Matrix:
    n = a.ngens
    return [[d if i == j else 0 for j in range(n)] for i, d in enumerate(a.invariant_factors)]


def torsion_and_quotient(a: FgGroup, m: int) -> tuple[FgGroup, FgGroup]:
    """Return ``(A[m], A/m)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    tors = [math.gcd(d, m) for d in a.invariant_factors]
    quot = tors + [m] * a.free_rank
    return FgGroup(tuple(t for t in tors if t > 1)), FgGroup(tuple(t for t in quot if t > 1))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between canonical groups; ``matrix[i]`` is the image of generator ``i``."""

    domain: FgGroup
    codomain: FgGroup
    matrix: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if len(self.matrix) != self.domain.ngens or any(len(r) != self.codomain.ngens for r in self.matrix):
            raise InvalidHom("matrix shape does not match domain/codomain")
        rows = tuple(self.codomain.reduce(r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        for d, row in zip(self.domain.moduli, rows):
            if d and any(self.codomain.reduce([d * x for x in row])):
                raise InvalidHom(f"relation of order {d} not respected by image {row}")

    @classmethod
    def zero(cls, a: FgGroup, b: FgGroup) -> GroupHom:
        return cls(a, b, tuple(b.zero() for _ in range(a.ngens)))

    @classmethod
    def identity(cls, a: FgGroup) -> GroupHom:
        return cls(a, a, tuple(tuple(identity(a.ngens)[i]) for i in range(a.ngens)))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.codomain.reduce(vecmat(x, self.matrix, self.codomain.ngens))

    def compose(self, g: GroupHom) -> GroupHom:
        """``self o g``."""
        if g.codomain != self.domain:
            raise InvalidHom("cannot compose: codomain/domain mismatch")
        return GroupHom(g.domain, self.codomain, tuple(self(r) for r in g.matrix))

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.domain, self.codomain, self.matrix) == (other.domain, other.codomain, other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))


class Kernel(NamedTuple):
    group: FgGroup
    inclusion: GroupHom


def _left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``{y : y @ rows == 0}``."""
    if not rows:
        return []
    u, d, _, _ = _snf(rows, ncols)
    rank = sum(1 for i in range(min(len(rows), ncols)) if d[i][i])
    return [u[i] for i in range(rank, len(rows))]


def _preimage_generators(mat: Sequence[Sequence[int]], target: FgGroup) -> Matrix:
    """Generators of ``{x in Z^n : x @ mat == 0 in target}``."""
    n = len(mat)
    stacked = [list(r) for r in mat]
    for j, d in enumerate(target.invariant_factors):
        stacked.append([d if k == j else 0 for k in range(target.ngens)])
    if target.ngens == 0:
        return identity(n)
    return [y[:n] for y in _left_kernel(stacked, target.ngens) if any(y[:n])]


def hom_kernel(f: GroupHom) -> Kernel:
    """Kernel of ``f`` with its inclusion into the domain."""
    a = f.domain
    gens = _preimage_generators(f.matrix, f.codomain)
    rels = _preimage_generators(gens, a) if gens else []
    pres = present(len(gens), rels)
    images = tuple(a.reduce(vecmat(pres.lift(i), gens, a.ngens)) for i in range(pres.group.ngens))
    return Kernel(pres.group, GroupHom(pres.group, a, images))


def _torsion_coords(a: FgGroup, m: int) -> list[tuple[int, int, int]]:
    """For each canonical generator of ``A[m]``: (index in A, step, order)."""
    out = []
    for i, d in enumerate(a.invariant_factors):
        g = math.gcd(d, m)
        if g > 1:
            out.append((i, d // g, g))
    return out


def induced_maps(f: GroupHom, m: int) -> tuple[GroupHom, GroupHom]:
    """Return ``(f[m], f/m)`` on the canonical bases of ``A[m], B[m]`` and ``A/m, B/m``.

    ``A[m]`` is generated by ``(d_i / gcd(d_i, m)) e_i``; ``A/m`` by the
    images of the ``e_i`` with nontrivial ``gcd(d_i, m)`` (``m`` for free
    generators).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    a, b = f.domain, f.codomain
    a_tors, a_quot = torsion_and_quotient(a, m)
    b_tors, b_quot = torsion_and_quotient(b, m)

    b_steps = _torsion_coords(b, m)
    tors_rows = []
    for i, step, _ in _torsion_coords(a, m):
        img = f([step if k == i else 0 for k in range(a.ngens)])
        coords = []
        for j, bstep, _ in b_steps:
            if img[j] % bstep:
                raise InvalidHom("image of an m-torsion element is not m-torsion")
            coords.append(img[j] // bstep)
        if any(img[j] for j in range(len(b.invariant_factors), b.ngens)):
            raise InvalidHom("m-torsion element mapped to a free coordinate")
        tors_rows.append(tuple(coords))
    f_tors = GroupHom(a_tors, b_tors, tuple(tors_rows))

    b_mods = list(b.moduli)
    b_keep = [j for j, d in enumerate(b_mods) if math.gcd(d, m) > 1]
    a_keep = [i for i, d in enumerate(a.moduli) if math.gcd(d, m) > 1]
    quot_rows = []
    for i in a_keep:
        row = f.matrix[i]
        quot_rows.append(tuple(row[j] for j in b_keep))
    f_quot = GroupHom(a_quot, b_quot, tuple(quot_rows))
    return f_tors, f_quot


def kernel_order(f: GroupHom) -> int:
    k = hom_kernel(f).group
    if not k.is_finite:
        raise ValueError("kernel is infinite")
    return k.order


def direct_product(groups: Sequence[FgGroup]) -> FgGroup:
    orders = [d for g in groups for d in g.invariant_factors] + [0] * sum(g.free_rank for g in groups)
    return FgGroup.from_orders(orders) if orders else FgGroup()


def hermite_rows(rows: Sequence[Sequence[int]], n: int) -> Matrix:
    """Row-style Hermite normal form basis of the lattice spanned by ``rows``."""
    a = [list(r) for r in rows if any(r)]
    out: Matrix = []
    for col in range(n):
        pivots = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            nxt = [p]
            for r in pivots[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            pivots = nxt
        if pivots:
            p = pivots[0]
            if p[col] < 0:
                p = [-x for x in p]
            for k, r in enumerate(out):
                q = r[col] // p[col]
                out[k] = [x - q * y for x, y in zip(r, p)]
            out.append(p)
        a = rest
    return out
