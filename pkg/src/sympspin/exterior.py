"""The exterior algebra on V*: sparse multivectors, wedge, contraction, the
symplectic 2-form, and the sp-action by derivations."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactnum import GaussianRational, ZERO, ONE, as_gq
from .symplie import SympSpace, SpMatrix, require_sp


class Multivector:
    """Sparse element of Lambda(V*): map from strictly increasing index tuples
    inside {1..2l} to Q(i) coefficients."""

    __slots__ = ("dim", "_t")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        self._t = {}
        if terms:
            for idx, c in terms.items():
                idx = tuple(idx)
                if list(idx) != sorted(set(idx)) or (idx and (idx[0] < 1 or idx[-1] > dim)):
                    raise ValueError(f"bad form index {idx}")
                c = as_gq(c)
                if c:
                    self._t[idx] = c

    @classmethod
    def _wrap(cls, dim, d):
        mv = object.__new__(cls)
        mv.dim = dim
        mv._t = d
        return mv

    @classmethod
    def zero(cls, dim):
        return cls._wrap(dim, {})

    @classmethod
    def unit(cls, dim):
        return cls._wrap(dim, {(): ONE})

    @classmethod
    def basis(cls, dim, idx, coeff=1):
        return cls(dim, {tuple(idx): coeff})

    def items(self):
        return self._t.items()

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return isinstance(other, Multivector) and self.dim == other.dim and self._t == other._t

    def __add__(self, other):
        d = dict(self._t)
        for idx, c in other._t.items():
            _acc(d, idx, c)
        return Multivector._wrap(self.dim, d)

    def __sub__(self, other):
        d = dict(self._t)
        for idx, c in other._t.items():
            _acc(d, idx, -c)
        return Multivector._wrap(self.dim, d)

    def __neg__(self):
        return Multivector._wrap(self.dim, {k: -c for k, c in self._t.items()})

    def scale(self, c):
        c = as_gq(c)
        if not c:
            return Multivector.zero(self.dim)
        return Multivector._wrap(self.dim, {k: c * v for k, v in self._t.items()})

    def graded_part(self, r: int):
        return Multivector._wrap(self.dim, {k: c for k, c in self._t.items() if len(k) == r})

    def degrees(self):
        return sorted({len(k) for k in self._t})

    def wedge(self, other: "Multivector") -> "Multivector":
        d = {}
        for ia, ca in self._t.items():
            for ib, cb in other._t.items():
                merged = merge_indices(ia, ib)
                if merged is None:
                    continue
                idx, sign = merged
                _acc(d, idx, ca * cb if sign == 1 else -(ca * cb))
        return Multivector._wrap(self.dim, d)

    def wedge_pow(self, k: int) -> "Multivector":
        out = Multivector.unit(self.dim)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def __repr__(self):
        if not self._t:
            return "0"
        bits = []
        for idx in sorted(self._t):
            name = "^".join(f"eps{i}" for i in idx) if idx else "1"
            bits.append(f"({self._t[idx]!r})*{name}")
        return " + ".join(bits)

    def to_json(self):
        return {"terms": [{"form": list(k), "coeff": self._t[k].to_json()}
                          for k in sorted(self._t)]}

    @classmethod
    def from_json(cls, obj, dim):
        terms = {}
        for t in obj.get("terms", []):
            terms[tuple(int(i) for i in t["form"])] = GaussianRational.from_json(t["coeff"])
        return cls(dim, terms)


def _acc(d, key, c):
    cur = d.get(key)
    if cur is None:
        if c:
            d[key] = c
    else:
        cur = cur + c
        if cur:
            d[key] = cur
        else:
            del d[key]


def merge_indices(ia, ib):
    """Merge two strictly increasing tuples; None if they intersect, else
    (sorted union, permutation sign)."""
    if not ia:
        return ib, 1
    if not ib:
        return ia, 1
    seen = set(ia)
    for b in ib:
        if b in seen:
            return None
    # count inversions while merging
    out = []
    sign = 1
    i = j = 0
    na = len(ia)
    while i < na or j < len(ib):
        if j >= len(ib) or (i < na and ia[i] < ib[j]):
            out.append(ia[i])
            i += 1
        else:
            out.append(ib[j])
            if (na - i) % 2 == 1:
                sign = -sign
            j += 1
    return tuple(out), sign


def insert_index(idx, m):
    """Wedge a single eps^m on the left of eps^idx: (new index, sign) or None."""
    if m in idx:
        return None
    pos = 0
    while pos < len(idx) and idx[pos] < m:
        pos += 1
    sign = -1 if pos % 2 else 1
    return idx[:pos] + (m,) + idx[pos:], sign


def remove_index(idx, m):
    """Contract-style removal: position sign (-1)^pos, or None if m absent."""
    try:
        pos = idx.index(m)
    except ValueError:
        return None
    sign = -1 if pos % 2 else 1
    return idx[:pos] + idx[pos + 1:], sign


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return a.wedge(b)


def contract(v, a: Multivector) -> Multivector:
    """Interior product iota_v with v given by its coefficients in {e_m}."""
    d = {}
    for idx, c in a.items():
        for pos, m in enumerate(idx):
            vm = as_gq(v[m - 1])
            if not vm:
                continue
            coeff = c * vm if pos % 2 == 0 else -(c * vm)
            _acc(d, idx[:pos] + idx[pos + 1:], coeff)
    return Multivector._wrap(a.dim, d)


@lru_cache(maxsize=None)
def _omega_form_cached(l: int) -> Multivector:
    dim = 2 * l
    terms = {(k, k + l): ONE for k in range(1, l + 1)}
    return Multivector(dim, terms)


def omega_form(space: SympSpace) -> Multivector:
    """The symplectic 2-form eps^1^eps^{l+1} + ... + eps^l^eps^{2l}."""
    return _omega_form_cached(space.l)


def dual_action_on_basis(space: SympSpace, x: SpMatrix, m: int):
    """X . eps^m = sum_n (-X_{mn}) eps^n as a sparse list of (n, coeff)."""
    row = x.entries[m - 1]
    return [(n, -c) for n, c in enumerate(row, start=1) if c]


def sp_action_forms(space: SympSpace, x: SpMatrix, a: Multivector) -> Multivector:
    """Degree-0 derivation extending the dual action on covectors."""
    require_sp(space, x)
    images = {m: dual_action_on_basis(space, x, m) for m in range(1, space.dim + 1)}
    d = {}
    for idx, c in a.items():
        for pos, m in enumerate(idx):
            for n, coeff in images[m]:
                rest = idx[:pos] + idx[pos + 1:]
                ins = insert_index(rest, n)
                if ins is None:
                    continue
                new_idx, sign = ins
                # sign to move eps^n into the slot previously held by eps^m
                pre = -1 if pos % 2 else 1
                total = c * coeff
                if pre * sign < 0:
                    total = -total
                _acc(d, new_idx, total)
    return Multivector._wrap(a.dim, d)


def form_weight(space: SympSpace, idx) -> tuple:
    """Weight of eps^I in epsilon-coordinates: -e_k for k <= l, +e_{k-l} above."""
    l = space.l
    w = [Fraction(0)] * l
    for k in idx:
        if k <= l:
            w[k - 1] -= 1
        else:
            w[k - l - 1] += 1
    return tuple(w)
