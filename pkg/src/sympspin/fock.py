"""The polynomial Fock model of symplectic spinors.

Spinors are sparse polynomials in x^1..x^l over Q(i).  Clifford multiplication
sends e_i to d/dx^i and e_{i+l} to i*x^i; the infinitesimal metaplectic action
of X in sp(V, omega) is the Clifford-quadratic operator

    meta(X) s = (i/2) sum_j e_j . ((X e-check_j) . s),

whose prefactor is forced by the equivariance [meta(X), v.] = (Xv). .
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import GaussianRational, ZERO, ONE, I, as_gq
from .symplie import SympSpace, SpMatrix, require_sp


class Polynomial:
    """Sparse polynomial: map from exponent multi-indices (length l) to Q(i)."""

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self._t = {}
        if terms:
            for exp, c in terms.items():
                c = as_gq(c)
                if c:
                    exp = tuple(exp)
                    if len(exp) != nvars or any(a < 0 for a in exp):
                        raise ValueError(f"bad exponent index {exp}")
                    self._t[exp] = c

    @classmethod
    def _wrap(cls, nvars, d):
        p = object.__new__(cls)
        p.nvars = nvars
        p._t = d
        return p

    @classmethod
    def zero(cls, nvars):
        return cls._wrap(nvars, {})

    @classmethod
    def one(cls, nvars):
        return cls._wrap(nvars, {(0,) * nvars: ONE})

    @classmethod
    def monomial(cls, nvars, exp, coeff=1):
        return cls(nvars, {tuple(exp): coeff})

    @classmethod
    def variable(cls, nvars, k):
        """x^k, 1-based k."""
        exp = [0] * nvars
        exp[k - 1] = 1
        return cls._wrap(nvars, {tuple(exp): ONE})

    def items(self):
        return self._t.items()

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self._t == other._t

    def __hash__(self):
        return hash((self.nvars, frozenset(self._t.items())))

    def __add__(self, other):
        d = dict(self._t)
        for exp, c in other._t.items():
            _acc(d, exp, c)
        return Polynomial._wrap(self.nvars, d)

    def __sub__(self, other):
        d = dict(self._t)
        for exp, c in other._t.items():
            _acc(d, exp, -c)
        return Polynomial._wrap(self.nvars, d)

    def __neg__(self):
        return Polynomial._wrap(self.nvars, {e: -c for e, c in self._t.items()})

    def scale(self, c):
        c = as_gq(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._wrap(self.nvars, {e: c * v for e, v in self._t.items()})

    def diff(self, k: int):
        """Exact partial derivative with respect to x^k (1-based)."""
        d = {}
        for exp, c in self._t.items():
            a = exp[k - 1]
            if a:
                e2 = exp[:k - 1] + (a - 1,) + exp[k:]
                _acc(d, e2, c * a)
        return Polynomial._wrap(self.nvars, d)

    def times_var(self, k: int):
        """Multiply by x^k (1-based)."""
        d = {}
        for exp, c in self._t.items():
            e2 = exp[:k - 1] + (exp[k - 1] + 1,) + exp[k:]
            d[e2] = c
        return Polynomial._wrap(self.nvars, d)

    def max_degree(self) -> int:
        return max((sum(e) for e in self._t), default=0)

    def parity_piece(self, parity: int):
        return Polynomial._wrap(
            self.nvars, {e: c for e, c in self._t.items() if sum(e) % 2 == parity})

    def __repr__(self):
        if not self._t:
            return "0"
        bits = []
        for exp in sorted(self._t):
            mono = "*".join(f"x{k+1}^{a}" if a > 1 else f"x{k+1}"
                            for k, a in enumerate(exp) if a)
            c = repr(self._t[exp])
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    def to_json(self):
        return {"terms": [{"exp": list(e), "coeff": self._t[e].to_json()}
                          for e in sorted(self._t)]}

    @classmethod
    def from_json(cls, obj, nvars):
        terms = {}
        for t in obj.get("terms", []):
            exp = tuple(int(a) for a in t["exp"])
            terms[exp] = GaussianRational.from_json(t["coeff"])
        return cls(nvars, terms)


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


def p_plus(l: int) -> Polynomial:
    """Maximal vector of the even spinor half: the constant 1."""
    return Polynomial.one(l)


def p_minus(l: int) -> Polynomial:
    """Maximal vector of the odd spinor half: x^l (the unique degree-1 monomial
    killed by every simple raising of the canonical action)."""
    return Polynomial.variable(l, l)


def clifford_basis(l: int, m: int, s: Polynomial) -> Polynomial:
    """Clifford action of the basis vector e_m: d/dx^m for m <= l, i*x^{m-l} above."""
    if m <= l:
        return s.diff(m)
    return s.times_var(m - l).scale(I)


def clifford_mul(v, s: Polynomial) -> Polynomial:
    """Clifford action of v = sum v^m e_m, given as a coefficient tuple."""
    l = s.nvars
    out = Polynomial.zero(l)
    for m, c in enumerate(v, start=1):
        c = as_gq(c)
        if c:
            out = out + clifford_basis(l, m, s).scale(c)
    return out


def _meta_pairs(space: SympSpace, x: SpMatrix):
    """Sparse pairs (j, m, coeff) with meta(X) = (i/2) sum e_j . (coeff e_m) . """
    pairs = []
    l = space.l
    for j in range(1, 2 * l + 1):
        # X e-check_j: e-check_j = -e_{j+l} (j <= l), = e_{j-l} (j > l)
        col = j + l if j <= l else j - l
        sign = -1 if j <= l else 1
        for m in range(1, 2 * l + 1):
            c = x[m, col]
            if c:
                pairs.append((j, m, c if sign == 1 else -c))
    return pairs


def meta_fock(space: SympSpace, x: SpMatrix, s: Polynomial) -> Polynomial:
    """Infinitesimal metaplectic action meta(X) s, exact."""
    require_sp(space, x)
    l = space.l
    half_i = GaussianRational(0, Fraction(1, 2))
    out = Polynomial.zero(l)
    for j, m, c in _meta_pairs(space, x):
        t = clifford_basis(l, m, s).scale(c)
        out = out + clifford_basis(l, j, t)
    return out.scale(half_i)


def meta_quadratic(space: SympSpace, x: SpMatrix, s: Polynomial, prefactor) -> Polynomial:
    """The raw quadratic expression prefactor * sum_j e_j.((X e-check_j).s).

    Exposed so the prefactor-forcing bracket computation can be tested; the
    canonical action is the prefactor i/2 case.
    """
    l = space.l
    out = Polynomial.zero(l)
    for j, m, c in _meta_pairs(space, x):
        t = clifford_basis(l, m, s).scale(c)
        out = out + clifford_basis(l, j, t)
    return out.scale(as_gq(prefactor))


def monomial_weight(space: SympSpace, exp) -> tuple:
    """Weight of the monomial x^exp in epsilon-coordinates: (-a_k - 1/2)_k."""
    return tuple(Fraction(-a) - Fraction(1, 2) for a in exp)


def parity_split(s: Polynomial):
    """(even-total-degree part, odd part); the two reassemble s."""
    return s.parity_piece(0), s.parity_piece(1)
