"""The two-folded pairing between the metaplectic summands and the ladder
modules G^j: intertwiners, tower assembly, and joint-equivariance checks.

A tower (j, base) collects the cells (i, j) for i = j..2l-j, the cell at
level i carrying the sign Sgn(base, i - j) that alternates along the tower.
The intertwiner of level i sends v to ((F-)^(i-j) v, f_i); lowering matches
the G^j lowering matrix on the nose, raising matches it through the ladder
coefficient A(l, i+1, j), and both interplays are verified exactly on
projected probes.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import GaussianRational, ZERO
from .symplie import SympSpace, chevalley_basis
from .forms import SpinorForm, f_plus, f_minus, h_op, rho_action
from .osp import GjModule, coefficient_A
from .decomp import (rank_floor, m_of, in_xi, actual_weight, verified_hwv,
                     summand_projector, XiSet)
from . import probes as probegen


def sgn_after(base: str, k: int) -> str:
    """Sign after k parity flips: Sgn(+-, even) = +-, Sgn(+-, odd) = -+."""
    if base not in "+-":
        raise ValueError(f"bad sign {base!r}")
    if k % 2 == 0:
        return base
    return "-" if base == "+" else "+"


class Tower:
    """Levels i = j..2l-j of one tower, with its ladder module."""

    def __init__(self, space: SympSpace, j: int, base_sign: str):
        rank_floor(space.l)
        l = space.l
        if not 0 <= j <= l:
            raise ValueError(f"tower index j={j} out of range 0..{l}")
        self.space = space
        self.j = j
        self.base_sign = base_sign
        self.levels = [(i, sgn_after(base_sign, i - j)) for i in range(j, 2 * l - j + 1)]
        self.gj = GjModule(l, j)

    def __repr__(self):
        return f"Tower(j={self.j}, base={self.base_sign!r}, levels={len(self.levels)})"


def psi(space: SympSpace, i: int, j: int, sign: str, v: SpinorForm):
    """Intertwiner of level i: ((F-)^(i-j) v, i).

    v must lie in summand (i, j, sign); the input is projected first and any
    residual is an error carrying the residual support size."""
    rank_floor(space.l)
    if not in_xi(space.l, i, j):
        raise ValueError(f"({i},{j}) outside the triangle")
    proj = summand_projector(space, i, j, sign)
    inside = proj(v)
    residual = v - inside
    if not residual.is_zero():
        raise ValueError(
            f"input is not in summand ({i},{j},{sign}): residual has "
            f"{residual.support()} nonzero coordinates")
    out = inside
    for _ in range(i - j):
        out = f_minus(out)
    return out, i


def _level_probes(space, i, j, sign, count, seed):
    """Probes inside summand (i, j, sign): projected seeded sparse vectors,
    discarding the occasional zero projection."""
    proj = summand_projector(space, i, j, sign)
    out = []
    attempt = 0
    while len(out) < count and attempt < 20 * count + 20:
        raw = probegen.spinor_probe(space.l, i, 0 if sign == "+" else 1,
                                    probegen.cell_seed(seed, i, sign, attempt))
        attempt += 1
        p = proj(raw)
        if not p.is_zero():
            out.append(p)
    return out


def verify_tower(space: SympSpace, j: int, base_sign: str, probes_per_level=2,
                 seed=0, sp_basis=None):
    """Exact per-level checks of one tower.

    (a) lowering: psi intertwines F- with the G^j lowering matrix (and F-
        kills the bottom level);
    (b) raising: (F-)^(i+1-j) F+ v = A(l, i+1, j) (F-)^(i-j) v;
    (c) sp-equivariance: (F-)^(i-j) commutes with the whole Chevalley basis
        on the summand;
    (d) boundary: F+ dies from the top level, matching A(l, 2l-j+1, j) = 0;
    plus the spectral alignment of H with the G^j Cartan matrix and the
    parity alternation along the tower.
    """
    tower = Tower(space, j, base_sign)
    l = space.l
    gj = tower.gj
    if sp_basis is None:
        sp_basis = chevalley_basis(space)
    levels = []
    ok = True
    for i, sign in tower.levels:
        probes = _level_probes(space, i, j, sign, probes_per_level, seed)
        checks = {"fminus": True, "fplus": True, "equivariance": True,
                  "boundary": True, "h_spectrum": True, "parity": True}
        failures = []
        a_up = coefficient_A(l, i + 1, j)
        for n, v in enumerate(probes):
            steps = [v]
            for _ in range(i - j + 1):
                steps.append(f_minus(steps[-1]))
            # (a) lowering: the f_{i-1} tag matches sigma_j(f-) f_i = f_{i-1};
            # at the bottom level f- must kill the summand like f_{j-1} = 0.
            if i == j:
                if not steps[1].is_zero():
                    checks["fminus"] = False
                    failures.append({"check": "fminus", "probe": n})
            else:
                down_proj = summand_projector(space, i - 1, j, sgn_after(sign, 1))
                if down_proj(steps[1]) != steps[1]:
                    checks["fminus"] = False
                    failures.append({"check": "fminus", "probe": n})
                if steps[i - j].is_zero():
                    # the chain must stay injective until the bottom
                    checks["fminus"] = False
                    failures.append({"check": "fminus-injectivity", "probe": n})
            # (b) raising through the ladder coefficient
            up = f_plus(v)
            chain_up = up
            for _ in range(i + 1 - j):
                chain_up = f_minus(chain_up)
            want = steps[i - j].scale(a_up)
            if not (chain_up - want).is_zero():
                checks["fplus"] = False
                failures.append({"check": "fplus", "probe": n})
            # (d) boundary: the top level raises to zero and A vanishes with it
            if i == 2 * l - j:
                if not up.is_zero() or a_up != 0:
                    checks["boundary"] = False
                    failures.append({"check": "boundary", "probe": n})
            # top-kill: one more lowering past the bottom vanishes
            if i == 2 * l - j and not steps[i - j + 1].is_zero():
                checks["boundary"] = False
                failures.append({"check": "top-kill", "probe": n})
            # (c) sp-equivariance of the intertwiner composite
            for label, x in sp_basis:
                lhs = rho_action(space, x, steps[i - j])
                rhs = v
                rhs = rho_action(space, x, rhs)
                for _ in range(i - j):
                    rhs = f_minus(rhs)
                if lhs != rhs:
                    checks["equivariance"] = False
                    failures.append({"check": "equivariance", "probe": n, "x": label})
            # spectral alignment with the ladder module
            if h_op(v) != v.scale(gj.h_eigenvalue(i)):
                checks["h_spectrum"] = False
                failures.append({"check": "h_spectrum", "probe": n})
            # parity alternation: polynomial parity at level i is the level sign
            want_parity = 0 if sign == "+" else 1
            if v.parity_piece(want_parity) != v:
                checks["parity"] = False
                failures.append({"check": "parity", "probe": n})
        if not all(checks.values()):
            ok = False
        levels.append({"i": i, "sign": sign, "probes": len(probes),
                       "checks": checks, "failures": failures})
    return {"j": j, "base": base_sign, "ok": ok, "levels": levels}


def verify_all_towers(space: SympSpace, probes_per_level=2, seed=0):
    rank_floor(space.l)
    sp_basis = chevalley_basis(space)
    towers = []
    ok = True
    for base in "+-":
        for j in range(space.l + 1):
            rep = verify_tower(space, j, base, probes_per_level, seed, sp_basis)
            ok = ok and rep["ok"]
            towers.append(rep)
    return {"ok": ok, "towers": towers}


def duality_summary(space: SympSpace):
    """Bookkeeping of the two-folded pairing.

    Confirms that every cell-and-sign appears in exactly one tower, that each
    ladder module appears exactly twice (once per base sign), that level
    counts match the module dimensions, and that every level's highest weight
    equals its tower base's highest weight (the isomorphism-class invariant).
    """
    rank_floor(space.l)
    l = space.l
    xi = XiSet(l)
    towers = []
    coverage = {}
    ok = True
    gj_count = {}
    for base in "+-":
        for j in range(l + 1):
            tower = Tower(space, j, base)
            gj_count[j] = gj_count.get(j, 0) + 1
            base_weight = actual_weight(l, j, j, base)
            levels = []
            for i, sign in tower.levels:
                w = actual_weight(l, i, j, sign)
                match = (w == base_weight)
                if not match:
                    ok = False
                coverage.setdefault((i, j, sign), []).append((j, base))
                levels.append({"i": i, "sign": sign, "weight": w,
                               "matches_base": match})
            if len(levels) != tower.gj.dim:
                ok = False
            towers.append({"j": j, "base": base, "dim": tower.gj.dim,
                           "levels": levels})
    want = {(i, j, s) for (i, j) in xi.members for s in "+-"}
    covered = set(coverage)
    once = all(len(v) == 1 for v in coverage.values())
    complete = covered == want
    twofold = all(n == 2 for n in gj_count.values())
    ok = ok and once and complete and twofold
    return {"l": l, "ok": ok,
            "towers": towers,
            "cells": len(xi.members),
            "levels_per_base": sum(2 * l - 2 * j + 1 for j in range(l + 1)),
            "coverage_exact": once and complete,
            "gj_twofold": twofold}
