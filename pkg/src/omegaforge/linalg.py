"""Exact linear algebra over Fraction or FieldElem entries.

Everything here is plain Gaussian elimination on lists of lists.  The matrices
that appear in this package are desk scale (a few hundred rows at the very
most), so clarity beats asymptotics.  The element type only needs +, -, *, /,
bool() and equality; both Fraction and FieldElem qualify.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import Infeasible


def _rref(rows):
    """In-place forward elimination; returns list of pivot column indices."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def rref(matrix):
    """Reduced row echelon form (copy) and pivot columns."""
    rows = [list(row) for row in matrix]
    pivots = _rref(rows)
    return rows, pivots


def rank(matrix) -> int:
    if not matrix:
        return 0
    rows = [list(row) for row in matrix]
    return len(_rref(rows))


def kernel_basis(matrix):
    """Basis of the right kernel of a matrix over Fraction entries."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def solve_linear(matrix, rhs):
    """One solution of A x = b over exact entries, or None if inconsistent."""
    if not matrix:
        return [] if not any(rhs) else None
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    for row in rows:
        if not any(row[:-1]) and row[-1]:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rows[r][-1]
    return x


def in_span(vectors, target) -> bool:
    """Whether target lies in the linear span of the given vectors (exact)."""
    if not any(target):
        return True
    if not vectors:
        return False
    cols = list(zip(*vectors))
    matrix = [list(c) for c in cols]
    return solve_linear(matrix, list(target)) is not None


# ---------------------------------------------------------------------------
# Exact rational linear feasibility (phase-1 simplex with Bland's rule)
# ---------------------------------------------------------------------------

def feasible_point(a_eq, b_eq, a_ge, b_ge, nvars):
    """A rational x with a_eq x = b_eq and a_ge x >= b_ge, or None.

    Free variables are split into positive and negative parts, slack variables
    turn inequalities into equations, and a phase-1 simplex minimizes the sum
    of artificial variables.  Bland's rule keeps the pivoting finite.
    """
    rows = []
    rhs = []
    for coeffs, b in zip(a_eq, b_eq):
        rows.append(list(coeffs) + [Fraction(0)] * len(a_ge))
        rhs.append(Fraction(b))
    for k, (coeffs, b) in enumerate(zip(a_ge, b_ge)):
        slack = [Fraction(0)] * len(a_ge)
        slack[k] = Fraction(-1)
        rows.append(list(coeffs) + slack)
        rhs.append(Fraction(b))
    if not rows:
        return [Fraction(0)] * nvars

    ntot = 2 * nvars + len(a_ge)   # x+ , x- , slacks
    tab = []
    for row, b in zip(rows, rhs):
        xplus = [Fraction(v) for v in row[:nvars]]
        xminus = [-v for v in xplus]
        slacks = [Fraction(v) for v in row[nvars:]]
        full = xplus + xminus + slacks
        if b < 0:
            full = [-v for v in full]
            b = -b
        tab.append(full + [Fraction(b)])

    m = len(tab)
    # artificial basis
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab[i] = tab[i][:-1] + art + [tab[i][-1]]
    width = ntot + m + 1
    basis = [ntot + i for i in range(m)]

    # objective: minimize sum of artificials -> row of reduced costs
    cost = [Fraction(0)] * width
    for i in range(m):
        for j in range(width):
            cost[j] += tab[i][j]
    for i in range(m):
        cost[ntot + i] -= Fraction(1)
    # cost[j] now holds sum of artificial rows minus artificial unit costs;
    # maximizing -sum(artificials) means pivoting while some cost[j] > 0 (j non-artificial)

    def pivot(pr, pc):
        piv = tab[pr][pc]
        tab[pr] = [v / piv for v in tab[pr]]
        for i in range(m):
            if i != pr and tab[i][pc]:
                f = tab[i][pc]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[pr])]
        f = cost[pc]
        if f:
            for j in range(width):
                cost[j] -= f * tab[pr][j]
        basis[pr] = pc

    while True:
        pc = None
        for j in range(ntot):          # Bland: smallest improving index
            if cost[j] > 0:
                pc = j
                break
        if pc is None:
            break
        pr = None
        best = None
        for i in range(m):
            if tab[i][pc] > 0:
                ratio = tab[i][-1] / tab[i][pc]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr is None:
            break   # unbounded direction in phase 1 cannot happen, guard anyway
        pivot(pr, pc)

    if cost[-1] != 0:
        return None   # artificials cannot be driven to zero

    x = [Fraction(0)] * ntot
    for i, b in enumerate(basis):
        if b < ntot:
            x[b] = tab[i][-1]
        elif tab[i][-1]:
            return None   # artificial stuck at a positive level
    return [x[j] - x[nvars + j] for j in range(nvars)]


def require_feasible(a_eq, b_eq, a_ge, b_ge, nvars):
    x = feasible_point(a_eq, b_eq, a_ge, b_ge, nvars)
    if x is None:
        raise Infeasible("no rational solution")
    return x
