"""Blockings, supports, tightness, reconstructibility, and degeneration combinatorics.

A blocking partitions each factor's index range into labeled groups; the
support is the set of label triples whose block is nonzero.  Tight witnesses,
reconstructibility kernels and combinatorial degenerations are all decided in
exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSubset, ShapeMismatch, SizeLimit
from .linalg import feasible_point, kernel_basis
from .tensor import Tensor

Label = object   # labels are opaque; ints and strings are both used


class Blocking:
    """Per factor, an ordered partition of range(dim) into labeled groups."""

    __slots__ = ("factors",)

    def __init__(self, factor_u, factor_v, factor_w):
        factors = []
        for groups in (factor_u, factor_v, factor_w):
            norm = []
            seen_labels = set()
            seen_idx = set()
            for label, indices in groups:
                if label in seen_labels:
                    raise ValueError(f"duplicate label {label!r}")
                seen_labels.add(label)
                idx = tuple(int(i) for i in indices)
                if seen_idx & set(idx):
                    raise ValueError("groups overlap")
                seen_idx.update(idx)
                norm.append((label, idx))
            factors.append(tuple(norm))
        object.__setattr__(self, "factors", tuple(factors))

    def __setattr__(self, name, value):
        raise AttributeError("Blocking is immutable")

    @classmethod
    def uniform(cls, groups) -> Blocking:
        """Same partition on all three factors."""
        return cls(groups, groups, groups)

    @classmethod
    def singletons(cls, dims) -> Blocking:
        return cls(*[[(i, (i,)) for i in range(d)] for d in dims])

    def labels(self, factor: int):
        return tuple(label for label, _ in self.factors[factor])

    def group(self, factor: int, label):
        for lab, idx in self.factors[factor]:
            if lab == label:
                return idx
        raise KeyError(label)

    def covers(self, dims) -> bool:
        for f, d in enumerate(dims):
            idx = sorted(i for _, grp in self.factors[f] for i in grp)
            if idx != list(range(d)):
                return False
        return True

    def label_of_index(self, factor: int, index: int):
        for lab, idx in self.factors[f := factor]:
            if index in idx:
                return lab
        raise KeyError((factor, index))

    def to_json(self) -> dict:
        keys = ("U", "V", "W")
        return {k: [[label, list(idx)] for label, idx in self.factors[f]]
                for f, k in enumerate(keys)}

    @classmethod
    def from_json(cls, d: dict) -> Blocking:
        def norm(groups):
            return [(tuple(g[0]) if isinstance(g[0], list) else g[0], g[1]) for g in groups]
        return cls(norm(d["U"]), norm(d["V"]), norm(d["W"]))


def support(t: Tensor, blocking: Blocking) -> frozenset:
    """Set of label triples whose block contains a nonzero entry."""
    if not blocking.covers(t.dims):
        raise ShapeMismatch("blocking does not partition the tensor dims")
    lookup = []
    for f in range(3):
        table = {}
        for lab, idx in blocking.factors[f]:
            for i in idx:
                table[i] = lab
        lookup.append(table)
    return frozenset(
        (lookup[0][i], lookup[1][j], lookup[2][k]) for (i, j, k) in t.entries
    )


def block_component(t: Tensor, blocking: Blocking, triple) -> Tensor:
    """Sub-tensor of one block, re-indexed from zero; empty blocks allowed."""
    groups = [blocking.group(f, triple[f]) for f in range(3)]
    pos = [{i: n for n, i in enumerate(idx)} for idx in groups]
    entries = {}
    for (i, j, k), v in t.entries.items():
        if i in pos[0] and j in pos[1] and k in pos[2]:
            entries[(pos[0][i], pos[1][j], pos[2][k])] = v
    labels = None
    if t.labels is not None:
        labels = tuple(tuple(t.labels[f][i] for i in groups[f]) for f in range(3))
    return Tensor(tuple(len(g) for g in groups), entries, labels)


# ---------------------------------------------------------------------------
# tightness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TightWitness:
    """Injective integer labelings with alpha + beta + gamma = 0 on the support."""

    alpha: dict
    beta: dict
    gamma: dict
    r: int = 1
    bound: int | None = None

    def validate(self, phi) -> bool:
        maps = (self.alpha, self.beta, self.gamma)
        for m in maps:
            vals = list(m.values())
            if len(set(vals)) != len(vals):
                return False
        for (i, j, k) in phi:
            a, b, c = self.alpha[i], self.beta[j], self.gamma[k]
            if self.r == 1:
                if a + b + c != 0:
                    return False
            else:
                if any(x + y + z != 0 for x, y, z in zip(a, b, c)):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "bound": self.bound,
            "alpha": {str(k): v for k, v in self.alpha.items()},
            "beta": {str(k): v for k, v in self.beta.items()},
            "gamma": {str(k): v for k, v in self.gamma.items()},
        }


def _factor_labels(phi):
    return tuple(sorted({t[f] for t in phi}, key=str) for f in range(3))


def is_tight(phi, search_bound: int = 2) -> TightWitness | None:
    """Search a rank-1 tight witness with coordinates in [-b, b].

    Enumerates injective alpha over I and beta over J with small values first;
    gamma is then forced by the support equations.  Falls back to exact linear
    algebra over Q (integerized by clearing denominators) when the bounded
    enumeration fails; returns None if that is infeasible too.
    """
    phi = sorted(phi, key=str)
    if not phi:
        return TightWitness({}, {}, {}, bound=search_bound)
    ilabels, jlabels, klabels = _factor_labels(phi)
    values = sorted(range(-search_bound, search_bound + 1), key=abs)

    def forced_gamma(alpha, beta):
        gamma = {}
        for (i, j, k) in phi:
            g = -(alpha[i] + beta[j])
            if gamma.setdefault(k, g) != g:
                return None
        vals = list(gamma.values())
        if len(set(vals)) != len(vals):
            return None
        if any(abs(v) > search_bound for v in vals):
            return None
        return gamma

    for avals in itertools.permutations(values, len(ilabels)):
        alpha = dict(zip(ilabels, avals))
        for bvals in itertools.permutations(values, len(jlabels)):
            beta = dict(zip(jlabels, bvals))
            gamma = forced_gamma(alpha, beta)
            if gamma is not None:
                w = TightWitness(alpha, beta, gamma, bound=search_bound)
                if w.validate(phi):
                    return w

    # exact fallback: solve alpha+beta+gamma = 0 over Q and look for an
    # injective point of the solution space; scale to integers afterwards
    variables = [("a", l) for l in ilabels] + [("b", l) for l in jlabels] \
        + [("g", l) for l in klabels]
    vindex = {v: n for n, v in enumerate(variables)}
    rows = []
    for (i, j, k) in phi:
        row = [Fraction(0)] * len(variables)
        row[vindex[("a", i)]] = Fraction(1)
        row[vindex[("b", j)]] = Fraction(1)
        row[vindex[("g", k)]] = Fraction(1)
        rows.append(row)
    basis = kernel_basis(rows)
    if not basis:
        return None
    # deterministic pseudo-random combinations of the kernel basis
    for trial in range(1, 64):
        combo = [Fraction(0)] * len(variables)
        for n, vec in enumerate(basis):
            c = Fraction(((trial * 7 + n * 13) % 97) + 1, (n + 2))
            combo = [x + c * y for x, y in zip(combo, vec)]
        maps = ({}, {}, {})
        for (kind, lab), val in zip(variables, combo):
            maps["abg".index(kind)][lab] = val
        if all(len(set(m.values())) == len(m) for m in maps):
            denom = math.lcm(*(v.denominator for v in combo)) if combo else 1
            alpha = {k: int(v * denom) for k, v in maps[0].items()}
            beta = {k: int(v * denom) for k, v in maps[1].items()}
            gamma = {k: int(v * denom) for k, v in maps[2].items()}
            bound = max(abs(v) for m in (alpha, beta, gamma) for v in m.values())
            w = TightWitness(alpha, beta, gamma, bound=bound)
            if w.validate(phi):
                return w
    return None


# ---------------------------------------------------------------------------
# reconstructibility
# ---------------------------------------------------------------------------

def _marginal_matrix(phi):
    """0/1 matrix: one row per marginal fiber, one column per support triple."""
    phi = sorted(phi, key=str)
    ilabels, jlabels, klabels = _factor_labels(phi)
    rows = []
    for f, labels in enumerate((ilabels, jlabels, klabels)):
        for lab in labels:
            rows.append([Fraction(1 if t[f] == lab else 0) for t in phi])
    return phi, rows


def is_reconstructible(phi):
    """Kernel test; returns (flag, counterexample pair or None).

    A nonzero kernel vector v of the marginal map, added to and subtracted
    from the uniform distribution with a small enough rational epsilon, gives
    two distinct distributions with identical marginals.
    """
    phi_sorted, rows = _marginal_matrix(phi)
    if not phi_sorted:
        return True, None
    basis = kernel_basis(rows)
    if not basis:
        return True, None
    v = basis[0]
    n = len(phi_sorted)
    eps = Fraction(1, n) / (2 * max(abs(x) for x in v))
    p_plus = {t: Fraction(1, n) + eps * x for t, x in zip(phi_sorted, v)}
    p_minus = {t: Fraction(1, n) - eps * x for t, x in zip(phi_sorted, v)}
    return False, (p_plus, p_minus)


# ---------------------------------------------------------------------------
# combinatorial degenerations, diagonals, balance
# ---------------------------------------------------------------------------

def is_combinatorial_degeneration(psi, phi):
    """Rational witness (alpha, beta, gamma) with a+b+g = 0 on psi, >= 1 off psi.

    Strictness on phi minus psi is normalized to >= 1 by homogeneity.  Returns
    the witness dict or None when the exact LP is infeasible.
    """
    psi = frozenset(psi)
    phi = frozenset(phi)
    if not psi <= phi:
        raise NotSubset("psi must be contained in phi")
    ilabels, jlabels, klabels = _factor_labels(phi)
    variables = [("a", l) for l in ilabels] + [("b", l) for l in jlabels] \
        + [("g", l) for l in klabels]
    vindex = {v: n for n, v in enumerate(variables)}

    def row(t):
        r = [Fraction(0)] * len(variables)
        r[vindex[("a", t[0])]] = Fraction(1)
        r[vindex[("b", t[1])]] = Fraction(1)
        r[vindex[("g", t[2])]] = Fraction(1)
        return r

    a_eq = [row(t) for t in sorted(psi, key=str)]
    b_eq = [Fraction(0)] * len(a_eq)
    strict = sorted(phi - psi, key=str)
    a_ge = [row(t) for t in strict]
    b_ge = [Fraction(1)] * len(strict)
    x = feasible_point(a_eq, b_eq, a_ge, b_ge, len(variables))
    if x is None:
        return None
    out = ({}, {}, {})
    for (kind, lab), val in zip(variables, x):
        out["abg".index(kind)][lab] = val
    return {"alpha": out[0], "beta": out[1], "gamma": out[2]}


def is_diagonal(delta) -> bool:
    """All three projections are injective on delta."""
    delta = list(delta)
    for f in range(3):
        proj = [t[f] for t in delta]
        if len(set(proj)) != len(proj):
            return False
    return True


def is_balanced(delta, ilabels, jlabels, klabels) -> bool:
    """Projections surjective with all fibers of equal cardinality."""
    delta = list(delta)
    if not delta:
        return False
    for f, labels in enumerate((ilabels, jlabels, klabels)):
        labels = list(labels)
        counts = {lab: 0 for lab in labels}
        for t in delta:
            if t[f] not in counts:
                return False
            counts[t[f]] += 1
        sizes = set(counts.values())
        if 0 in sizes or len(sizes) != 1:
            return False
    return True


def max_degeneration_diagonal(phi, budget: int = 10_000) -> frozenset:
    """Maximum-cardinality diagonal subset realizable as a combinatorial degeneration.

    Branch and bound over sorted triples; candidates of record size are checked
    with the exact LP.  Deterministic: ties break toward the lexicographically
    smallest sorted triple list.
    """
    phi = sorted(phi, key=str)
    if len(phi) > budget:
        raise SizeLimit(f"support size {len(phi)} exceeds budget {budget}")
    best: list[tuple] = []

    def feasible(delta):
        return is_combinatorial_degeneration(delta, phi) is not None

    n = len(phi)

    def extend(start, chosen, used):
        nonlocal best
        if len(chosen) + (n - start) < len(best):
            return
        if len(chosen) > len(best) or (
                len(chosen) == len(best) and chosen < best):
            if feasible(chosen):
                best = list(chosen)
        for idx in range(start, n):
            t = phi[idx]
            if any(t[f] in used[f] for f in range(3)):
                continue
            for f in range(3):
                used[f].add(t[f])
            chosen.append(t)
            extend(idx + 1, chosen, used)
            chosen.pop()
            for f in range(3):
                used[f].discard(t[f])

    extend(0, [], (set(), set(), set()))
    return frozenset(best)


# ---------------------------------------------------------------------------
# entropy counting
# ---------------------------------------------------------------------------

def multinomial(n: int, parts) -> int:
    """Exact multinomial coefficient n! / prod(parts!)."""
    if sum(parts) != n:
        raise ValueError("parts must sum to n")
    out = 1
    rest = n
    for q in parts:
        out *= math.comb(rest, q)
        rest -= q
    return out


def multinomial_entropy_gap(parts, n: int) -> float:
    """| (1/n) log multinomial(n; parts) - H(parts/n) |, natural logarithm."""
    parts = [int(q) for q in parts]
    coeff = multinomial(n, parts)
    lhs = math.log(coeff) / n
    h = 0.0
    for q in parts:
        if q:
            p = q / n
            h -= p * math.log(p)
    return abs(lhs - h)
