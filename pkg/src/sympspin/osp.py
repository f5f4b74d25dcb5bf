"""The rank-1 ortho-symplectic super Lie algebra: abstract bracket table,
relation checking for arbitrary candidate representations, and the family of
finite-dimensional ladder modules G^j with their matrix realisations.

Basis {h, e+, e-, f+, f-} with h, e+- even and f+- odd; the nonzero brackets:

    [h, e+-] = +-e+-      [e+, e-] = 2h
    [h, f+-] = +-f+-/2    {f+, f-} = h/2
    [e+-, f-+] = -f+-     {f+-, f+-} = +-e+-/2
"""

from __future__ import annotations

from fractions import Fraction

BASIS = ("h", "e+", "e-", "f+", "f-")
PARITY = {"h": 0, "e+": 0, "e-": 0, "f+": 1, "f-": 1}

# bracket table on ordered basis pairs; [x,y] = -(-1)^{|x||y|} [y,x] fills the rest
_HALF = Fraction(1, 2)
_TABLE = {
    ("h", "e+"): (("e+", Fraction(1)),),
    ("h", "e-"): (("e-", Fraction(-1)),),
    ("e+", "e-"): (("h", Fraction(2)),),
    ("h", "f+"): (("f+", _HALF),),
    ("h", "f-"): (("f-", -_HALF),),
    ("f+", "f-"): (("h", _HALF),),
    ("e+", "f-"): (("f+", Fraction(-1)),),
    ("e-", "f+"): (("f-", Fraction(-1)),),
    ("f+", "f+"): (("e+", _HALF),),
    ("f-", "f-"): (("e-", -_HALF),),
}


def structure_bracket(a: str, b: str):
    """Super bracket of two basis elements, as a tuple of (basis, coeff)."""
    if (a, b) in _TABLE:
        return _TABLE[(a, b)]
    if (b, a) in _TABLE:
        sign = -1 if (PARITY[a] & PARITY[b]) == 0 else 1
        return tuple((name, sign * c) for name, c in _TABLE[(b, a)])
    return ()


class OspElement:
    """Element of osp(1|2) as rational coefficients over the basis."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for name, c in coeffs.items():
                if name not in BASIS:
                    raise ValueError(f"unknown basis element {name!r}")
                c = Fraction(c)
                if c:
                    self.coeffs[name] = c

    @classmethod
    def basis(cls, name):
        return cls({name: 1})

    def parity(self):
        """0, 1 or None for mixed-parity elements."""
        ps = {PARITY[n] for n in self.coeffs}
        return ps.pop() if len(ps) == 1 else None

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            v = out.get(n, Fraction(0)) + c
            if v:
                out[n] = v
            else:
                out.pop(n, None)
        return OspElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return OspElement({n: c * v for n, v in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, OspElement) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[n]})*{n}" for n in BASIS if n in self.coeffs)


def super_bracket(x: OspElement, y: OspElement) -> OspElement:
    """Bilinear extension of the bracket table (super bracket of homogeneous
    basis elements; mixed elements combine by bilinearity)."""
    out = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            for name, c in structure_bracket(a, b):
                v = out.get(name, Fraction(0)) + ca * cb * c
                if v:
                    out[name] = v
                else:
                    out.pop(name, None)
    return OspElement(out)


# ---------------------------------------------------------------------------
# Relation checking for candidate representations.  Operators are opaque
# callables acting on any vector type supporting +, -, .scale and .is_zero.

RELATIONS = (
    ("[h,e+]=+e+", ("h", "e+"), "commutator", ("e+", Fraction(1))),
    ("[h,e-]=-e-", ("h", "e-"), "commutator", ("e-", Fraction(-1))),
    ("[e+,e-]=2h", ("e+", "e-"), "commutator", ("h", Fraction(2))),
    ("[h,f+]=+f+/2", ("h", "f+"), "commutator", ("f+", Fraction(1, 2))),
    ("[h,f-]=-f-/2", ("h", "f-"), "commutator", ("f-", Fraction(-1, 2))),
    ("{f+,f-}=h/2", ("f+", "f-"), "anticommutator", ("h", Fraction(1, 2))),
    ("[e+,f-]=-f+", ("e+", "f-"), "commutator", ("f+", Fraction(-1))),
    ("[e-,f+]=-f-", ("e-", "f+"), "commutator", ("f-", Fraction(-1))),
    ("{f+,f+}=+e+/2", ("f+", "f+"), "anticommutator", ("e+", Fraction(1, 2))),
    ("{f-,f-}=-e-/2", ("f-", "f-"), "anticommutator", ("e-", Fraction(-1, 2))),
)


def check_relations(ops, probes, parity_of=None):
    """Evaluate every bracket relation on every probe vector, exactly.

    ops: mapping with keys h, e+, e-, f+, f-; each value a linear callable.
    parity_of: optional callable giving a probe's Z2-degree (or None); when
    provided, odd operators must swap it and even ones preserve it.

    Returns a report dict; report["ok"] is True iff every relation holds on
    every probe and no operator violates its parity tag.
    """
    probes = list(probes)
    relations = []
    ok = True
    for name, (a, b), kind, (target, coeff) in RELATIONS:
        failures = []
        for n, v in enumerate(probes):
            left = ops[a](ops[b](v))
            right = ops[b](ops[a](v))
            lhs = left + right if kind == "anticommutator" else left - right
            rhs = ops[target](v).scale(coeff)
            if not (lhs - rhs).is_zero():
                failures.append(n)
        if failures:
            ok = False
        relations.append({"relation": name, "cases": len(probes), "failures": failures})
    parity_failures = []
    if parity_of is not None:
        for name in BASIS:
            swap = PARITY[name] == 1
            for n, v in enumerate(probes):
                p = parity_of(v)
                if p is None:
                    continue
                img = ops[name](v)
                if img.is_zero():
                    continue
                q = parity_of(img)
                want = (1 - p) if swap else p
                if q != want:
                    parity_failures.append({"operator": name, "probe": n})
                    ok = False
    return {"ok": ok, "relations": relations, "parity_failures": parity_failures,
            "probes": len(probes)}


# ---------------------------------------------------------------------------
# The ladder modules G^j.

def coefficient_A(l: int, i: int, j: int) -> Fraction:
    """The rational ladder coefficient steering the raising matrix of G^j."""
    even = ((-1) ** (i - j) + 1)
    odd = ((-1) ** (i - j + 1) + 1)
    return Fraction(even * (i - j) + odd * (i + j - 2 * l - 1), 16)


class FVec:
    """Dense rational coordinate vector (the generic-vector protocol used by
    check_relations)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(c) for c in coords)

    def __add__(self, other):
        return FVec([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return FVec([a - b for a, b in zip(self.coords, other.coords)])

    def scale(self, c):
        c = Fraction(c)
        return FVec([c * a for a in self.coords])

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, FVec) and self.coords == other.coords

    def __repr__(self):
        return f"FVec({list(self.coords)})"


class GjModule:
    """The (2l-2j+1)-dimensional module with basis f_j .. f_{2l-j}; even part
    spanned by even-index vectors; out-of-range f_r are zero."""

    def __init__(self, l: int, j: int):
        if not 0 <= j <= l:
            raise ValueError(f"j={j} out of range 0..{l}")
        self.l = l
        self.j = j
        self.dim = 2 * l - 2 * j + 1
        self.indices = list(range(j, 2 * l - j + 1))
        n = self.dim
        fplus = [[Fraction(0)] * n for _ in range(n)]
        fminus = [[Fraction(0)] * n for _ in range(n)]
        for col, i in enumerate(self.indices):
            if col + 1 < n:
                fplus[col + 1][col] = coefficient_A(l, i + 1, j)
            if col - 1 >= 0:
                fminus[col - 1][col] = Fraction(1)
        h = _matrix_anticomm(fplus, fminus, 2)
        eplus = _matrix_anticomm(fplus, fplus, 2)
        eminus = _matrix_anticomm(fminus, fminus, -2)
        self.mats = {"f+": _freeze(fplus), "f-": _freeze(fminus),
                     "h": _freeze(h), "e+": _freeze(eplus), "e-": _freeze(eminus)}

    def operator(self, name):
        mat = self.mats[name]
        def act(v: FVec) -> FVec:
            return FVec([sum((row[c] * v.coords[c] for c in range(self.dim)),
                             Fraction(0)) for row in mat])
        return act

    def operators(self):
        return {name: self.operator(name) for name in BASIS}

    def basis_vector(self, i: int) -> FVec:
        """f_i as a coordinate vector; zero outside j..2l-j."""
        coords = [Fraction(0)] * self.dim
        if self.indices[0] <= i <= self.indices[-1]:
            coords[i - self.j] = Fraction(1)
        return FVec(coords)

    def basis_vectors(self):
        return [self.basis_vector(i) for i in self.indices]

    def index_parity(self, v: FVec):
        """Z2-degree by index parity, None if mixed."""
        ps = {self.indices[c] % 2 for c, x in enumerate(v.coords) if x}
        return ps.pop() if len(ps) == 1 else None

    def h_eigenvalue(self, i: int) -> Fraction:
        return Fraction(i - self.l, 2)

    def to_json(self):
        def mat_json(mat):
            return [[f"{x.numerator}/{x.denominator}" for x in row] for row in mat]
        return {"l": self.l, "j": self.j, "dim": self.dim,
                "indices": self.indices,
                "matrices": {name: mat_json(self.mats[name]) for name in BASIS}}


def _matrix_anticomm(a, b, factor):
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = Fraction(0)
            for k in range(n):
                s += a[i][k] * b[k][j] + b[i][k] * a[k][j]
            out[i][j] = factor * s
    return out


def _freeze(mat):
    return tuple(tuple(row) for row in mat)


def sigma_j_matrices(l: int, j: int) -> GjModule:
    """Matrix realisation of the five generators on G^j."""
    return GjModule(l, j)


def check_irreducible(mod: GjModule) -> bool:
    """True iff repeated f+- applications from any basis vector span the module."""
    from itertools import count
    n = mod.dim
    fplus, fminus = mod.mats["f+"], mod.mats["f-"]
    for start in range(n):
        seen_rows = []
        frontier = [[Fraction(1) if c == start else Fraction(0) for c in range(n)]]
        span_rank = 0
        while frontier:
            vec = frontier.pop()
            red = _reduce_into(seen_rows, vec)
            if red is None:
                continue
            span_rank += 1
            for mat in (fplus, fminus):
                img = [sum((mat[r][c] * red[c] for c in range(n)), Fraction(0))
                       for r in range(n)]
                if any(img):
                    frontier.append(img)
        if span_rank < n:
            return False
    return True


def _reduce_into(rows, vec):
    """Gaussian reduction of vec against rows; appends and returns the reduced
    vector if independent, else None."""
    v = list(vec)
    for pivot_col, row in rows:
        if v[pivot_col]:
            f = v[pivot_col]
            v = [a - f * b for a, b in zip(v, row)]
    for c, x in enumerate(v):
        if x:
            inv = 1 / x
            v = [a * inv for a in v]
            rows.append((c, v))
            return v
    return None
