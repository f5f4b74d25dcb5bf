"""Spinor-valued exterior forms W = Lambda(V*) (x) S and the five operators
h, e+, e-, f+, f- acting on them, together with weight and maximal-vector
machinery.

Operator conventions (all exact, checked by the verification suites):

    F+ (alpha (x) s) = (i/2) sum_m  eps^m ^ alpha (x) e_m . s
    F- (alpha (x) s) = -(1/2) sum_m iota_{e-check_m} alpha (x) e_m . s
    H = 2 {F+, F-},  scaling a form-degree-r piece by (r - l)/2
    E+ = +2 {F+, F+} = -i * (omega ^ .)
    E- = -2 {F-, F-} = -i * sum_k iota_{e_k} iota_{e_{k+l}}

The lowering prefactor -(1/2) (rather than +1/2) and the -i in the closed
quadratic forms are forced by the bracket rows of osp(1|2) together with the
fixed dual basis; the conformance report records the comparison with the
single-anticommutator and +i/2 normalisations.

The Z2-grading under which f+- are odd operators is form-degree parity.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import GaussianRational, ZERO, ONE, I, as_gq
from .symplie import (SympSpace, SpMatrix, require_sp, cartan_basis,
                      simple_raisings, weight_from_coroot_eigenvalues)
from .fock import Polynomial, clifford_basis
from .exterior import (Multivector, insert_index, remove_index, form_weight)
from . import linalg

_HALF_I = GaussianRational(0, Fraction(1, 2))
_NEG_HALF = GaussianRational(Fraction(-1, 2))
_NEG_I = GaussianRational(0, -1)


class NonEigenvectorError(ValueError):
    """A weight was requested for a vector that is not a joint Cartan eigenvector."""

    def __init__(self, label):
        self.failing_coroot = label
        super().__init__(f"not a Cartan eigenvector: fails for coroot {label}")


class SpinorForm:
    """Sparse element of W: map from strictly increasing form indices to
    polynomials, held flat as {(form index, exponent): coefficient}."""

    __slots__ = ("l", "_t")

    def __init__(self, l: int, by_form=None):
        self.l = l
        self._t = {}
        if by_form:
            for idx, poly in by_form.items():
                idx = tuple(idx)
                if list(idx) != sorted(set(idx)) or (idx and (idx[0] < 1 or idx[-1] > 2 * l)):
                    raise ValueError(f"bad form index {idx}")
                for exp, c in poly.items():
                    if c:
                        self._t[(idx, exp)] = c

    @classmethod
    def _wrap(cls, l, d):
        w = object.__new__(cls)
        w.l = l
        w._t = d
        return w

    @classmethod
    def zero(cls, l):
        return cls._wrap(l, {})

    @classmethod
    def basis(cls, l, idx, exp, coeff=1):
        c = as_gq(coeff)
        if not c:
            return cls.zero(l)
        return cls._wrap(l, {(tuple(idx), tuple(exp)): c})

    @classmethod
    def tensor(cls, mv: Multivector, poly: Polynomial) -> "SpinorForm":
        l = poly.nvars
        d = {}
        for idx, cf in mv.items():
            for exp, cp in poly.items():
                c = cf * cp
                if c:
                    d[(idx, exp)] = c
        return cls._wrap(l, d)

    def items(self):
        return self._t.items()

    def support(self) -> int:
        return len(self._t)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return isinstance(other, SpinorForm) and self.l == other.l and self._t == other._t

    def __add__(self, other):
        d = dict(self._t)
        for k, c in other._t.items():
            _acc(d, k, c)
        return SpinorForm._wrap(self.l, d)

    def __sub__(self, other):
        d = dict(self._t)
        for k, c in other._t.items():
            _acc(d, k, -c)
        return SpinorForm._wrap(self.l, d)

    def __neg__(self):
        return SpinorForm._wrap(self.l, {k: -c for k, c in self._t.items()})

    def scale(self, c):
        c = as_gq(c)
        if not c:
            return SpinorForm.zero(self.l)
        return SpinorForm._wrap(self.l, {k: c * v for k, v in self._t.items()})

    def graded_piece(self, r: int) -> "SpinorForm":
        return SpinorForm._wrap(self.l, {k: c for k, c in self._t.items() if len(k[0]) == r})

    def form_degrees(self):
        return sorted({len(k[0]) for k in self._t})

    def parity_piece(self, parity: int) -> "SpinorForm":
        """Piece whose polynomial part has the given total-degree parity."""
        return SpinorForm._wrap(
            self.l, {k: c for k, c in self._t.items() if sum(k[1]) % 2 == parity})

    def form_parity(self):
        """Form-degree parity if homogeneous for it (the osp Z2-grading), else None."""
        ps = {len(k[0]) % 2 for k in self._t}
        return ps.pop() if len(ps) == 1 else None

    def max_poly_degree(self) -> int:
        return max((sum(k[1]) for k in self._t), default=0)

    def by_form(self):
        out = {}
        for (idx, exp), c in self._t.items():
            out.setdefault(idx, {})[exp] = c
        return {idx: Polynomial(self.l, terms) for idx, terms in sorted(out.items())}

    def first_key(self):
        return min(self._t) if self._t else None

    def __repr__(self):
        if not self._t:
            return "0"
        bits = []
        for idx, poly in self.by_form().items():
            name = "^".join(f"eps{i}" for i in idx) if idx else "1"
            bits.append(f"{name} (x) [{poly!r}]")
        return " + ".join(bits)

    def to_json(self):
        return {"l": self.l,
                "terms": [{"form": list(idx), "poly": poly.to_json()}
                          for idx, poly in self.by_form().items()]}

    @classmethod
    def from_json(cls, obj) -> "SpinorForm":
        l = int(obj["l"])
        by_form = {}
        for t in obj.get("terms", []):
            idx = tuple(int(i) for i in t["form"])
            by_form[idx] = Polynomial.from_json(t["poly"], l)
        return cls(l, by_form)


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


# ---------------------------------------------------------------------------
# The five operators.  Single basis-term images are memoised: every operator
# is evaluated term by term and extended linearly, so vectors of any size ride
# on the per-term caches.

_FPLUS_CACHE: dict = {}
_FMINUS_CACHE: dict = {}
_EPLUS_CACHE: dict = {}
_EMINUS_CACHE: dict = {}


def _fplus_term(l, idx, exp):
    key = (l, idx, exp)
    hit = _FPLUS_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for m in range(1, l + 1):
        a = exp[m - 1]
        if a == 0 or m in idx:
            continue
        ins = insert_index(idx, m)
        if ins is None:
            continue
        idx2, sign = ins
        exp2 = exp[:m - 1] + (a - 1,) + exp[m:]
        out.append((idx2, exp2, _HALF_I * (sign * a)))
    for k in range(1, l + 1):
        m = l + k
        ins = insert_index(idx, m)
        if ins is None:
            continue
        idx2, sign = ins
        exp2 = exp[:k - 1] + (exp[k - 1] + 1,) + exp[k:]
        out.append((idx2, exp2, _NEG_HALF * sign))
    out = tuple(out)
    _FPLUS_CACHE[key] = out
    return out


def _fminus_term(l, idx, exp):
    key = (l, idx, exp)
    hit = _FMINUS_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for m in idx:
        if m > l:
            # iota_{e-check_k} for k <= l hits eps^{k+l} with a -1
            k = m - l
            rem = remove_index(idx, m)
            idx2, sign = rem
            a = exp[k - 1]
            if a:
                exp2 = exp[:k - 1] + (a - 1,) + exp[k:]
                # -(1/2) * (-sign) * a
                out.append((idx2, exp2, GaussianRational(Fraction(sign * a, 2))))
        else:
            # iota_{e-check_{l+m}} = iota_{e_m} hits eps^m
            rem = remove_index(idx, m)
            idx2, sign = rem
            exp2 = exp[:m - 1] + (exp[m - 1] + 1,) + exp[m:]
            # -(1/2) * sign * i
            out.append((idx2, exp2, GaussianRational(0, Fraction(-sign, 2))))
    out = tuple(out)
    _FMINUS_CACHE[key] = out
    return out


def _eplus_term(l, idx):
    key = (l, idx)
    hit = _EPLUS_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for k in range(1, l + 1):
        if k in idx or (k + l) in idx:
            continue
        step1 = insert_index(idx, k + l)
        idx1, s1 = step1
        step2 = insert_index(idx1, k)
        idx2, s2 = step2
        out.append((idx2, _NEG_I * (s1 * s2)))
    out = tuple(out)
    _EPLUS_CACHE[key] = out
    return out


def _eminus_term(l, idx):
    key = (l, idx)
    hit = _EMINUS_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for k in range(1, l + 1):
        if k not in idx or (k + l) not in idx:
            continue
        idx1, s1 = remove_index(idx, k + l)
        idx2, s2 = remove_index(idx1, k)
        out.append((idx2, _NEG_I * (s1 * s2)))
    out = tuple(out)
    _EMINUS_CACHE[key] = out
    return out


def f_plus(w: SpinorForm) -> SpinorForm:
    """Raising odd generator: degree +1 on forms, parity flip on polynomials."""
    d = {}
    l = w.l
    for (idx, exp), c in w.items():
        for idx2, exp2, coeff in _fplus_term(l, idx, exp):
            _acc(d, (idx2, exp2), c * coeff)
    return SpinorForm._wrap(l, d)


def f_minus(w: SpinorForm) -> SpinorForm:
    """Lowering odd generator: degree -1 on forms, parity flip on polynomials."""
    d = {}
    l = w.l
    for (idx, exp), c in w.items():
        for idx2, exp2, coeff in _fminus_term(l, idx, exp):
            _acc(d, (idx2, exp2), c * coeff)
    return SpinorForm._wrap(l, d)


def h_op(w: SpinorForm) -> SpinorForm:
    """Cartan operator 2{F+, F-}: scales a form-degree-r piece by (r - l)/2."""
    d = {}
    l = w.l
    for (idx, exp), c in w.items():
        f = Fraction(len(idx) - l, 2)
        if f:
            d[(idx, exp)] = c * f
    return SpinorForm._wrap(l, d)


def h_from_anticommutator(w: SpinorForm) -> SpinorForm:
    """2(F+F- + F-F+); must agree with h_op, and is tested to."""
    return (f_plus(f_minus(w)) + f_minus(f_plus(w))).scale(2)


def e_plus(w: SpinorForm) -> SpinorForm:
    """Even raising operator 2{F+, F+} = -i (omega ^ .)."""
    d = {}
    l = w.l
    for (idx, exp), c in w.items():
        for idx2, coeff in _eplus_term(l, idx):
            _acc(d, (idx2, exp), c * coeff)
    return SpinorForm._wrap(l, d)


def e_minus(w: SpinorForm) -> SpinorForm:
    """Even lowering operator -2{F-, F-} = -i sum_k iota_{e_k} iota_{e_{k+l}}."""
    d = {}
    l = w.l
    for (idx, exp), c in w.items():
        for idx2, coeff in _eminus_term(l, idx):
            _acc(d, (idx2, exp), c * coeff)
    return SpinorForm._wrap(l, d)


def e_pm(w: SpinorForm, sign: str) -> SpinorForm:
    return e_plus(w) if sign == "+" else e_minus(w)


def r_plus(w: SpinorForm) -> SpinorForm:
    """Projection onto even polynomial parts."""
    return w.parity_piece(0)


def r_minus(w: SpinorForm) -> SpinorForm:
    """Projection onto odd polynomial parts."""
    return w.parity_piece(1)


def r_pm(w: SpinorForm, sign: str) -> SpinorForm:
    return w.parity_piece(0 if sign == "+" else 1)


# ---------------------------------------------------------------------------
# The joint sp-action and weight machinery.

_RHO_CACHE: dict = {}


def _rho_term(space: SympSpace, x: SpMatrix, idx, exp):
    """Image of the basis term eps^idx (x) x^exp under the joint action, as a
    tuple of ((idx2, exp2), coeff); memoised per matrix and term."""
    key = (space.l, x, idx, exp)
    hit = _RHO_CACHE.get(key)
    if hit is not None:
        return hit
    from .fock import _meta_pairs
    l = space.l
    d = {}
    for pos, m in enumerate(idx):
        row = x.entries[m - 1]
        rest = idx[:pos] + idx[pos + 1:]
        pre = -1 if pos % 2 else 1
        for n, c in enumerate(row, start=1):
            if not c:
                continue
            ins = insert_index(rest, n)
            if ins is None:
                continue
            idx2, sign = ins
            val = -c if pre * sign > 0 else c
            _acc(d, (idx2, exp), val)
    mono = Polynomial.monomial(l, exp, 1)
    acc = Polynomial.zero(l)
    for j, m, coeff in _meta_pairs(space, x):
        acc = acc + clifford_basis(l, j, clifford_basis(l, m, mono).scale(coeff))
    for exp2, c2 in acc.scale(_HALF_I).items():
        _acc(d, (idx, exp2), c2)
    out = tuple(d.items())
    _RHO_CACHE[key] = out
    return out


def rho_action(space: SympSpace, x: SpMatrix, w: SpinorForm) -> SpinorForm:
    """Leibniz action (X.alpha) (x) s + alpha (x) meta(X) s, term by term."""
    require_sp(space, x)
    d = {}
    for (idx, exp), c in w.items():
        for key2, coeff in _rho_term(space, x, idx, exp):
            _acc(d, key2, c * coeff)
    return SpinorForm._wrap(space.l, d)


def cartan_eigenvalues(space: SympSpace, w: SpinorForm):
    """Joint coroot eigenvalues of w; NonEigenvectorError names the first failure."""
    if w.is_zero():
        raise ValueError("the zero vector has no weight")
    vals = []
    for label, h in cartan_basis(space):
        hw = rho_action(space, h, w)
        key = w.first_key()
        c = hw._t.get(key, ZERO) / w._t[key]
        if hw != w.scale(c):
            raise NonEigenvectorError(label)
        if not c.is_real():
            raise NonEigenvectorError(label)
        vals.append(c.re)
    return vals


def weight_of(space: SympSpace, w: SpinorForm) -> tuple:
    """Weight in epsilon-coordinates of a joint Cartan eigenvector."""
    return weight_from_coroot_eigenvalues(cartan_eigenvalues(space, w))


def term_weight(space: SympSpace, idx, exp) -> tuple:
    """Weight of the pure term eps^idx (x) x^exp: form weight plus monomial weight."""
    fw = form_weight(space, idx)
    return tuple(f - a - Fraction(1, 2) for f, a in zip(fw, exp))


class HwvReport:
    __slots__ = ("ok", "weight", "failing")

    def __init__(self, ok, weight=None, failing=None):
        self.ok = ok
        self.weight = weight
        self.failing = failing

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"HwvReport(ok=True, weight={self.weight})"
        return f"HwvReport(ok=False, failing={self.failing!r})"


def is_hwv(space: SympSpace, w: SpinorForm) -> HwvReport:
    """True iff w is a joint Cartan eigenvector killed by every simple raising."""
    if w.is_zero():
        return HwvReport(False, failing="zero vector")
    try:
        weight = weight_of(space, w)
    except NonEigenvectorError as err:
        return HwvReport(False, failing=f"cartan:{err.failing_coroot}")
    for label, x in simple_raisings(space):
        if not rho_action(space, x, w).is_zero():
            return HwvReport(False, weight=weight, failing=f"raising:{label}")
    return HwvReport(True, weight=weight)


def weight_space_basis(space: SympSpace, degree: int, weight, parity: int):
    """Basis (idx, exp) pairs of the weight space inside degree-`degree` forms
    with polynomial parity `parity`.

    The exponent is forced by the weight: a_k = (form weight)_k - weight_k - 1/2
    must be a nonnegative integer for eps^idx to contribute at all.
    """
    from itertools import combinations
    l = space.l
    weight = tuple(Fraction(x) for x in weight)
    out = []
    for idx in combinations(range(1, 2 * l + 1), degree):
        fw = form_weight(space, idx)
        exp = []
        ok = True
        for k in range(l):
            a = fw[k] - weight[k] - Fraction(1, 2)
            if a.denominator != 1 or a < 0:
                ok = False
                break
            exp.append(int(a))
        if not ok or sum(exp) % 2 != parity:
            continue
        out.append((idx, tuple(exp)))
    return sorted(out)


def find_hwv(space: SympSpace, degree: int, weight, parity: int):
    """Exact kernel of all simple raisings inside one finite weight space.

    Returns a (possibly empty) list of SpinorForms, each scaled so its first
    basis coordinate is 1.
    """
    parity = parity if parity in (0, 1) else (0 if parity == "+" else 1)
    basis = weight_space_basis(space, degree, weight, parity)
    if not basis:
        return []
    raisings = [x for _, x in simple_raisings(space)]
    images = []
    coord_keys = set()
    for idx, exp in basis:
        vec = SpinorForm.basis(space.l, idx, exp)
        imgs = [rho_action(space, x, vec) for x in raisings]
        images.append(imgs)
        for im in imgs:
            coord_keys.update(im._t.keys())
    coord_keys = sorted(coord_keys)
    pos = {k: n for n, k in enumerate(coord_keys)}
    nrows = len(coord_keys) * len(raisings)
    rows = [[ZERO] * len(basis) for _ in range(nrows)]
    for col, imgs in enumerate(images):
        for which, im in enumerate(imgs):
            off = which * len(coord_keys)
            for k, c in im._t.items():
                rows[off + pos[k]][col] = c
    kernel = linalg.null_space(rows, len(basis))
    out = []
    for vec in kernel:
        d = {}
        for (idx, exp), c in zip(basis, vec):
            if c:
                d[(idx, exp)] = c
        w = SpinorForm._wrap(space.l, d)
        key = w.first_key()
        out.append(w.scale(w._t[key].inverse()))
    return out
