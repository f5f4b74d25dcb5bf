"""The symplectic vector space (V, omega) with its fixed adapted basis, the
Lie algebra sp(V, omega) as exact matrices, and its Chevalley basis.

Conventions (1-based indices i = 1..2l throughout):
  omega(e_i, e_{i+l}) = 1 for i <= l, omega(e_i, e_{i-l}) = -1 for i > l,
  all other pairings zero.  The inverse pairing omega^{ij} satisfies
  sum_k omega_{ik} omega^{kj} = delta_i^j, and the omega-dual basis is
  e-check_i = sum_j omega^{ij} e_j, which works out to
  e-check_i = -e_{i+l} and e-check_{i+l} = e_i for i <= l.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactnum import GaussianRational, ZERO, ONE, as_gq


class SympSpace:
    """Rank-l symplectic space: omega matrices and the omega-dual basis table."""

    def __init__(self, l: int):
        if l < 1:
            raise ValueError("rank l must be a positive integer")
        self.l = l
        self.dim = 2 * l
        lower = [[0] * self.dim for _ in range(self.dim)]
        for i in range(1, l + 1):
            lower[i - 1][i + l - 1] = 1
            lower[i + l - 1][i - 1] = -1
        self.omega_lower = tuple(tuple(r) for r in lower)
        # the two-sided inverse of the omega matrix is its negative
        self.omega_upper = tuple(tuple(-x for x in r) for r in lower)
        dual = {}
        for i in range(1, self.dim + 1):
            vec = [0] * self.dim
            for j in range(1, self.dim + 1):
                vec[j - 1] = self.omega_upper[i - 1][j - 1]
            dual[i] = tuple(vec)
        self.dual_basis_table = dual

    def omega(self, i: int, j: int) -> int:
        return self.omega_lower[i - 1][j - 1]

    def omega_up(self, i: int, j: int) -> int:
        return self.omega_upper[i - 1][j - 1]

    def dual_vector(self, i: int):
        """Coefficients of e-check_i in the basis {e_j}, as Gaussian rationals."""
        return tuple(GaussianRational(c) for c in self.dual_basis_table[i])

    def basis_vector(self, m: int):
        return tuple(ONE if j == m - 1 else ZERO for j in range(self.dim))

    def __eq__(self, other):
        return isinstance(other, SympSpace) and other.l == self.l

    def __hash__(self):
        return hash(("SympSpace", self.l))

    def __repr__(self):
        return f"SympSpace(l={self.l})"


class SpMatrix:
    """A 2l x 2l exact matrix; membership in sp(V, omega) is checked on demand."""

    __slots__ = ("entries", "n", "_hash")

    def __init__(self, rows):
        self.entries = tuple(tuple(as_gq(x) for x in row) for row in rows)
        self.n = len(self.entries)
        self._hash = None
        for row in self.entries:
            if len(row) != self.n:
                raise ValueError("matrix must be square")

    @classmethod
    def _wrap(cls, entries) -> "SpMatrix":
        self = object.__new__(cls)
        self.entries = entries
        self.n = len(entries)
        self._hash = None
        return self

    @classmethod
    def zero(cls, n: int) -> "SpMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def elementary(cls, n: int, i: int, j: int, c=1) -> "SpMatrix":
        """c * E_{i,j} with 1-based (i, j)."""
        rows = [[0] * n for _ in range(n)]
        rows[i - 1][j - 1] = c
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __add__(self, other):
        return SpMatrix([[a + b for a, b in zip(ra, rb)]
                         for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return SpMatrix([[a - b for a, b in zip(ra, rb)]
                         for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return SpMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "SpMatrix":
        c = as_gq(c)
        return SpMatrix([[c * a for a in row] for row in self.entries])

    def __matmul__(self, other):
        n = self.n
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            row = self.entries[i]
            acc = out[i]
            for k in range(n):
                a = row[k]
                if not a:
                    continue
                orow = other.entries[k]
                for j in range(n):
                    b = orow[j]
                    if b:
                        acc[j] = acc[j] + a * b
        return SpMatrix._wrap(tuple(tuple(r) for r in out))

    def transpose(self) -> "SpMatrix":
        return SpMatrix(list(zip(*self.entries)))

    def apply(self, vec):
        """Matrix-vector action (X v)_i = sum_j X_ij v_j on a coefficient tuple."""
        return tuple(_dot(row, vec) for row in self.entries)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __eq__(self, other):
        return isinstance(other, SpMatrix) and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def is_sp(self, space: SympSpace) -> bool:
        """Exact membership test X^T Omega + Omega X = 0.

        Omega has one +-1 entry per row, so entry (i, j) of the sum reduces to
        a signed pair of entries of X.
        """
        n = self.n
        if n != space.dim:
            return False
        l = space.l
        e = self.entries
        for i in range(n):
            ic, isg = (i + l, 1) if i < l else (i - l, -1)
            for j in range(n):
                jc, jsg = (j + l, -1) if j < l else (j - l, 1)
                a = e[jc][i]
                b = e[ic][j]
                s = (a if jsg == 1 else -a) + (b if isg == 1 else -b)
                if s:
                    return False
        return True

    def nonzero_entries(self):
        """Iterate (i, j, value) over nonzero entries, 1-based."""
        for i, row in enumerate(self.entries, start=1):
            for j, x in enumerate(row, start=1):
                if x:
                    yield i, j, x

    def to_json(self):
        return [x.to_json() for row in self.entries for x in row]

    @classmethod
    def from_json(cls, flat, n):
        if len(flat) != n * n:
            raise ValueError("matrix payload has wrong length")
        it = iter(flat)
        return cls([[GaussianRational.from_json(next(it)) for _ in range(n)]
                    for _ in range(n)])


def _dot(row, vec):
    s = ZERO
    for a, b in zip(row, vec):
        if a and b:
            s = s + a * b
    return s


def bracket(x: SpMatrix, y: SpMatrix) -> SpMatrix:
    """Commutator XY - YX."""
    if x.n != y.n:
        raise ValueError("dimension mismatch")
    return (x @ y) - (y @ x)


_SP_CHECKED: dict = {}


def require_sp(space: SympSpace, x: SpMatrix):
    key = (space.l, x)
    ok = _SP_CHECKED.get(key)
    if ok is None:
        ok = x.is_sp(space)
        _SP_CHECKED[key] = ok
    if not ok:
        raise ValueError("matrix is not in sp(V, omega)")


# ---------------------------------------------------------------------------
# Chevalley basis.  Simple generators are explicit matrices; the remaining
# root vectors are produced by left-normed brackets of simple ones, peeling
# off the lexicographically first simple root at each step.

def simple_roots(l: int):
    """Simple roots in epsilon-coordinates: e_i - e_{i+1} (i < l) and 2 e_l."""
    roots = []
    for i in range(l - 1):
        r = [0] * l
        r[i], r[i + 1] = 1, -1
        roots.append(tuple(r))
    last = [0] * l
    last[l - 1] = 2
    roots.append(tuple(last))
    return roots


def positive_roots(l: int):
    """All positive roots, sorted by height then lexicographically."""
    roots = []
    for i in range(l):
        for j in range(i + 1, l):
            r = [0] * l
            r[i], r[j] = 1, -1
            roots.append(tuple(r))
            r2 = [0] * l
            r2[i], r2[j] = 1, 1
            roots.append(tuple(r2))
        r3 = [0] * l
        r3[i] = 2
        roots.append(tuple(r3))
    return sorted(roots, key=lambda r: (_height(l, r), r))


def _height(l, root):
    # coefficients in the simple-root basis: alpha = sum n_k alpha_k
    n = _simple_coeffs(l, root)
    return sum(n)

def _simple_coeffs(l, root):
    # invert root = sum_k n_k alpha_k for type C_l:
    # n_j = c_1 + ... + c_j for j < l, and n_l = (c_1 + ... + c_l) / 2
    n = [0] * l
    acc = 0
    for k in range(l - 1):
        acc += root[k]
        n[k] = acc
    n[l - 1] = (acc + root[l - 1]) // 2
    return n


def root_pairing(root, mu_index: int, l: int) -> int:
    """Pairing of a root (epsilon-coordinates) with the coroot H[mu_index].

    mu_index in 1..l-1 selects H for e_i - e_{i+1}; mu_index == l selects the
    coroot of 2 e_l.
    """
    if mu_index < l:
        return root[mu_index - 1] - root[mu_index]
    return root[l - 1]


@lru_cache(maxsize=None)
def _simple_matrices(l: int):
    n = 2 * l
    mats = {}
    for i in range(1, l):
        x = SpMatrix.elementary(n, i, i + 1) - SpMatrix.elementary(n, i + 1 + l, i + l)
        mats[f"X[{i}]"] = x
        mats[f"Y[{i}]"] = x.transpose()
        h = (SpMatrix.elementary(n, i, i) - SpMatrix.elementary(n, i + 1, i + 1)
             + SpMatrix.elementary(n, l + i + 1, l + i + 1)
             - SpMatrix.elementary(n, l + i, l + i))
        mats[f"H[{i}]"] = h
    x2l = SpMatrix.elementary(n, l, 2 * l)
    mats["X2l"] = x2l
    mats["Y2l"] = x2l.transpose()
    mats["H2l"] = SpMatrix.elementary(n, l, l) - SpMatrix.elementary(n, 2 * l, 2 * l)
    return mats


@lru_cache(maxsize=None)
def _root_vector(l: int, root, lowering: bool) -> SpMatrix:
    simples = simple_roots(l)
    prefix = "Y" if lowering else "X"
    for k, alpha in enumerate(simples):
        if root == alpha:
            label = f"{prefix}2l" if k == l - 1 else f"{prefix}[{k + 1}]"
            return _simple_matrices(l)[label]
    pos = set(positive_roots(l))
    for k, alpha in enumerate(simples):
        rest = tuple(a - b for a, b in zip(root, alpha))
        if rest in pos:
            left = _root_vector(l, rest, lowering)
            right = _root_vector(l, alpha, lowering)
            out = bracket(left, right)
            if out.is_zero():
                raise ArithmeticError(f"vanishing bracket for root {root}")
            return out
    raise ValueError(f"{root} is not a positive root for rank {l}")


def chevalley(space: SympSpace, label: str) -> SpMatrix:
    """Simple Chevalley generator by label: X[i], X2l, Y[i], Y2l, H[i], H2l."""
    mats = _simple_matrices(space.l)
    if label not in mats:
        raise ValueError(f"unknown Chevalley label {label!r} for l={space.l}")
    return mats[label]


def root_vector(space: SympSpace, root, lowering: bool = False) -> SpMatrix:
    """Root vector X_alpha (or Y_alpha), bracket-generated for non-simple roots."""
    return _root_vector(space.l, tuple(root), lowering)


def root_name(root) -> str:
    return "(" + ",".join(str(c) for c in root) + ")"


@lru_cache(maxsize=None)
def _chevalley_basis_cached(l: int):
    space = SympSpace(l)
    out = []
    for i in range(1, l):
        out.append((f"H[{i}]", chevalley(space, f"H[{i}]")))
    out.append(("H2l", chevalley(space, "H2l")))
    for root in positive_roots(l):
        out.append((f"X{root_name(root)}", root_vector(space, root, lowering=False)))
        out.append((f"Y{root_name(root)}", root_vector(space, root, lowering=True)))
    return tuple(out)


def chevalley_basis(space: SympSpace):
    """The full basis of sp(2l): l Cartan coroots plus X/Y for every positive root."""
    return list(_chevalley_basis_cached(space.l))


def cartan_basis(space: SympSpace):
    """Simple coroots H[1..l-1], H2l as (label, matrix) pairs."""
    out = [(f"H[{i}]", chevalley(space, f"H[{i}]")) for i in range(1, space.l)]
    out.append(("H2l", chevalley(space, "H2l")))
    return out


def simple_raisings(space: SympSpace):
    out = [(f"X[{i}]", chevalley(space, f"X[{i}]")) for i in range(1, space.l)]
    out.append(("X2l", chevalley(space, "X2l")))
    return out


def dual_action(x: SpMatrix, mu):
    """Infinitesimal action on a covector: (X.mu)(v) = -mu(Xv), i.e. -X^T mu."""
    n = x.n
    out = [ZERO] * n
    for i, row in enumerate(x.entries):
        mi = mu[i]
        if not mi:
            continue
        for j, val in enumerate(row):
            if val:
                out[j] = out[j] - mi * val
    return tuple(out)


def weight_from_coroot_eigenvalues(c) -> tuple:
    """Convert joint coroot eigenvalues (c_1..c_l) into epsilon-coordinates.

    c_i is the eigenvalue of the coroot of e_i - e_{i+1} for i < l and c_l the
    eigenvalue of the coroot of 2 e_l; then lambda_l = c_l and
    lambda_i = lambda_{i+1} + c_i.
    """
    vals = [Fraction(x) if not isinstance(x, GaussianRational) else _real_part(x)
            for x in c]
    l = len(vals)
    lam = [Fraction(0)] * l
    lam[l - 1] = vals[l - 1]
    for i in range(l - 2, -1, -1):
        lam[i] = lam[i + 1] + vals[i]
    return tuple(lam)


def _real_part(g: GaussianRational) -> Fraction:
    if not g.is_real():
        raise ValueError("coroot eigenvalue is not real")
    return g.re
