"""Sparse order-3 tensors over Q(i, sqrt2), and Laurent-valued curve tensors.

A Tensor is a coordinate map (i, j, k) -> FieldElem on dims (n_U, n_V, n_W)
with only nonzero values stored.  A CurveTensor is the same with LaurentPoly
entries; taking t -> 0 entrywise turns it back into a Tensor.
"""

from __future__ import annotations

from .errors import NegativeOrder, ShapeMismatch, SizeLimit
from .exact import ZERO, FieldElem, LaurentPoly, field_from_str, field_to_str
from . import linalg

Triple = tuple[int, int, int]


def _check_entries(dims, entries):
    for (i, j, k), v in entries.items():
        if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
            raise ShapeMismatch(f"index {(i, j, k)} outside dims {dims}")
        if not v:
            raise ValueError(f"zero entry stored at {(i, j, k)}")


class Tensor:
    """Sparse 3-way array over FieldElem with optional basis labels per factor."""

    __slots__ = ("dims", "entries", "labels")

    def __init__(self, dims, entries, labels=None):
        dims = tuple(int(d) for d in dims)
        if len(dims) != 3 or any(d < 0 for d in dims):
            raise ShapeMismatch(f"bad dims {dims}")
        clean = {}
        for key, v in entries.items():
            v = FieldElem.coerce(v)
            if v:
                clean[tuple(int(x) for x in key)] = v
        _check_entries(dims, clean)
        if labels is not None:
            labels = tuple(tuple(str(x) for x in lab) for lab in labels)
            if any(len(lab) != d for lab, d in zip(labels, dims)):
                raise ShapeMismatch("label lists must match dims")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and self.entries == other.entries

    def __hash__(self):
        return hash((self.dims, frozenset(self.entries.items())))

    def __repr__(self):
        return f"Tensor(dims={self.dims}, nnz={len(self.entries)})"

    def entry(self, i, j, k) -> FieldElem:
        return self.entries.get((i, j, k), ZERO)

    def sorted_entries(self):
        return sorted(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def with_labels(self, labels) -> Tensor:
        return Tensor(self.dims, self.entries, labels)

    def add_to_entry(self, key, delta) -> Tensor:
        entries = dict(self.entries)
        key = tuple(key)
        v = entries.get(key, ZERO) + FieldElem.coerce(delta)
        if v:
            entries[key] = v
        else:
            entries.pop(key, None)
        return Tensor(self.dims, entries, self.labels)

    # -- json ---------------------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "dims": list(self.dims),
            "entries": [[i, j, k, field_to_str(v)] for (i, j, k), v in self.sorted_entries()],
        }
        if self.labels is not None:
            out["labels"] = [list(lab) for lab in self.labels]
        return out

    @classmethod
    def from_json(cls, d: dict) -> Tensor:
        entries = {(i, j, k): field_from_str(s) for i, j, k, s in d["entries"]}
        return cls(tuple(d["dims"]), entries, d.get("labels"))


class CurveTensor:
    """Sparse 3-way array of Laurent polynomials in the deformation parameter t."""

    __slots__ = ("dims", "entries", "labels")

    def __init__(self, dims, entries, labels=None):
        dims = tuple(int(d) for d in dims)
        clean = {}
        for key, p in entries.items():
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.const(p)
            if p:
                clean[tuple(int(x) for x in key)] = p
        for (i, j, k) in clean:
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise ShapeMismatch(f"index {(i, j, k)} outside dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("CurveTensor is immutable")

    def __add__(self, other) -> CurveTensor:
        if not isinstance(other, CurveTensor):
            return NotImplemented
        if self.dims != other.dims:
            raise ShapeMismatch(f"{self.dims} vs {other.dims}")
        out = dict(self.entries)
        for key, p in other.entries.items():
            q = out.get(key)
            q = p if q is None else q + p
            if q:
                out[key] = q
            else:
                out.pop(key, None)
        return CurveTensor(self.dims, out, self.labels)

    def scaled(self, w) -> CurveTensor:
        """Multiply every entry by the LaurentPoly or scalar w."""
        return CurveTensor(self.dims, {k: p * w for k, p in self.entries.items()}, self.labels)

    def limit(self, e: int = 0) -> Tensor:
        """Entrywise laurent_scale by e followed by t -> 0; drops zero limits."""
        out = {}
        for key, p in self.entries.items():
            try:
                v = p.shift(e).limit()
            except NegativeOrder as err:
                raise NegativeOrder(err.min_exponent, where=key) from None
            if v:
                out[key] = v
        return Tensor(self.dims, out, self.labels)


def curve_limit(ct: CurveTensor, e: int = 0) -> Tensor:
    return ct.limit(e)


def rank_one_curve(u, v, w, weight=None) -> CurveTensor:
    """weight * u(t) x v(t) x w(t) from Laurent coefficient vectors."""
    dims = (len(u), len(v), len(w))
    entries = {}
    for i, pu in enumerate(u):
        if not pu:
            continue
        for j, pv in enumerate(v):
            if not pv:
                continue
            puv = pu * pv
            for k, pw in enumerate(w):
                if not pw:
                    continue
                p = puv * pw
                if weight is not None:
                    p = p * weight
                if p:
                    entries[(i, j, k)] = p
    return CurveTensor(dims, entries)


class FactorMaps:
    """One matrix per factor, rows over FieldElem; not necessarily invertible."""

    __slots__ = ("maps",)

    def __init__(self, m_u, m_v, m_w):
        object.__setattr__(self, "maps", (m_u, m_v, m_w))

    def __setattr__(self, name, value):
        raise AttributeError("FactorMaps is immutable")

    @classmethod
    def identity(cls, dims) -> FactorMaps:
        mats = []
        for d in dims:
            mats.append([[FieldElem(1 if i == j else 0) for j in range(d)] for i in range(d)])
        return cls(*mats)

    @classmethod
    def diagonal(cls, scales_u, scales_v, scales_w) -> FactorMaps:
        def diag(scales):
            n = len(scales)
            return [[FieldElem.coerce(scales[i]) if i == j else ZERO for j in range(n)]
                    for i in range(n)]
        return cls(diag(scales_u), diag(scales_v), diag(scales_w))


# ---------------------------------------------------------------------------
# constructions and operations
# ---------------------------------------------------------------------------

def matmult_tensor(a: int, b: int, c: int) -> Tensor:
    """The a x b x c matrix multiplication tensor, dims (ab, bc, ca)."""
    if min(a, b, c) < 1:
        raise ShapeMismatch("matmult parameters must be >= 1")
    entries = {}
    for i in range(a):
        for j in range(b):
            for k in range(c):
                entries[(i * b + j, j * c + k, k * a + i)] = FieldElem(1)
    labels = (
        tuple(f"u{i}{j}" for i in range(a) for j in range(b)),
        tuple(f"v{j}{k}" for j in range(b) for k in range(c)),
        tuple(f"w{k}{i}" for k in range(c) for i in range(a)),
    )
    return Tensor((a * b, b * c, c * a), entries, labels)


def unit_tensor() -> Tensor:
    return Tensor((1, 1, 1), {(0, 0, 0): FieldElem(1)})


def kronecker(t1: Tensor, t2: Tensor) -> Tensor:
    """Kronecker product re-bracketed as a 3-tensor; row-major index pairing."""
    d1, d2 = t1.dims, t2.dims
    dims = (d1[0] * d2[0], d1[1] * d2[1], d1[2] * d2[2])
    entries = {}
    for (i1, j1, k1), v1 in t1.entries.items():
        for (i2, j2, k2), v2 in t2.entries.items():
            key = (i1 * d2[0] + i2, j1 * d2[1] + j2, k1 * d2[2] + k2)
            entries[key] = v1 * v2
    labels = None
    lab1 = t1.labels or tuple(tuple(str(x) for x in range(d)) for d in d1)
    lab2 = t2.labels or tuple(tuple(str(x) for x in range(d)) for d in d2)
    labels = tuple(
        tuple(f"{a}.{b}" for a in lab1[f] for b in lab2[f]) for f in range(3)
    )
    return Tensor(dims, entries, labels)


def permute_factors(t: Tensor, perm) -> Tensor:
    """New tensor whose factor f is the old factor perm[f]."""
    perm = tuple(perm)
    dims = tuple(t.dims[perm[f]] for f in range(3))
    entries = {}
    for key, v in t.entries.items():
        entries[tuple(key[perm[f]] for f in range(3))] = v
    labels = None
    if t.labels is not None:
        labels = tuple(t.labels[perm[f]] for f in range(3))
    return Tensor(dims, entries, labels)


# subgroups of S3 as sorted tuples of factor permutations
GROUPS = {
    "trivial": ((0, 1, 2),),
    "cyclic3": ((0, 1, 2), (1, 2, 0), (2, 0, 1)),
    "s3": ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)),
    "swap01": ((0, 1, 2), (1, 0, 2)),
    "swap02": ((0, 1, 2), (2, 1, 0)),
    "swap12": ((0, 1, 2), (0, 2, 1)),
}


def group_perms(group):
    """Normalize a group given by name or iterable of permutations."""
    if isinstance(group, str):
        try:
            return GROUPS[group]
        except KeyError:
            raise ValueError(f"unknown group {group!r}") from None
    perms = tuple(sorted(tuple(p) for p in group))
    if (0, 1, 2) not in perms:
        raise ValueError("group must contain the identity")
    return perms


def symmetrize(t: Tensor, group="cyclic3") -> Tensor:
    """Kronecker product of sigma(T) over the subgroup, in sorted perm order."""
    perms = group_perms(group)
    out = None
    for p in perms:
        tp = permute_factors(t, p)
        out = tp if out is None else kronecker(out, tp)
    return out


def direct_sum(t1: Tensor, t2: Tensor) -> Tensor:
    dims = tuple(a + b for a, b in zip(t1.dims, t2.dims))
    entries = dict(t1.entries)
    off = t1.dims
    for (i, j, k), v in t2.entries.items():
        entries[(i + off[0], j + off[1], k + off[2])] = v
    return Tensor(dims, entries)


def apply_restriction(t: Tensor, maps: FactorMaps) -> Tensor:
    """Image of t under three linear maps acting on the factors."""
    mats = maps.maps
    for f, mat in enumerate(mats):
        if mat and len(mat[0]) != t.dims[f]:
            raise ShapeMismatch(
                f"factor {f}: map has {len(mat[0])} columns, tensor dim {t.dims[f]}")
    new_dims = tuple(len(mat) for mat in mats)
    out: dict[Triple, FieldElem] = {}
    # sparse column views of the maps
    cols = []
    for mat in mats:
        col: dict[int, list] = {}
        for r, row in enumerate(mat):
            for c, v in enumerate(row):
                if v:
                    col.setdefault(c, []).append((r, v))
        cols.append(col)
    for (i, j, k), v in t.entries.items():
        for a, va in cols[0].get(i, ()):
            for b, vb in cols[1].get(j, ()):
                vab = va * vb
                for c, vc in cols[2].get(k, ()):
                    key = (a, b, c)
                    w = out.get(key, ZERO) + v * vab * vc
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
    return Tensor(new_dims, out)


def flattening_rank(t: Tensor, factor: int) -> int:
    """Rank of the flattening factor -> (other two factors)."""
    rows = {}
    for key, v in t.entries.items():
        i = key[factor]
        rest = tuple(key[f] for f in range(3) if f != factor)
        rows.setdefault(i, {})[rest] = v
    if not rows:
        return 0
    cols = sorted({c for row in rows.values() for c in row})
    cindex = {c: n for n, c in enumerate(cols)}
    matrix = []
    for i in sorted(rows):
        vec = [ZERO] * len(cols)
        for c, v in rows[i].items():
            vec[cindex[c]] = v
        matrix.append(vec)
    return linalg.rank(matrix)


def is_concise(t: Tensor):
    """Per-factor conciseness flags plus the concise (flattening-rank) dims."""
    ranks = tuple(flattening_rank(t, f) for f in range(3))
    flags = tuple(r == d for r, d in zip(ranks, t.dims))
    return flags, ranks


def contraction_space(t: Tensor, factor: int = 0):
    """Slice matrices t(e_i, ., .) for each basis vector of the chosen factor."""
    others = [f for f in range(3) if f != factor]
    shape = (t.dims[others[0]], t.dims[others[1]])
    slices = [[[ZERO] * shape[1] for _ in range(shape[0])] for _ in range(t.dims[factor])]
    for key, v in t.entries.items():
        slices[key[factor]][key[others[0]]][key[others[1]]] = v
    return slices


def reassemble_from_slices(slices, factor: int = 0) -> Tensor:
    """Inverse of contraction_space (round-trip check helper)."""
    n = len(slices)
    if n == 0:
        return Tensor((0, 0, 0), {})
    rows, cols = len(slices[0]), len(slices[0][0]) if slices[0] else 0
    entries = {}
    for i, mat in enumerate(slices):
        for a, row in enumerate(mat):
            for b, v in enumerate(row):
                if v:
                    key = [0, 0, 0]
                    key[factor] = i
                    others = [f for f in range(3) if f != factor]
                    key[others[0]] = a
                    key[others[1]] = b
                    entries[tuple(key)] = v
    dims = [0, 0, 0]
    dims[factor] = n
    others = [f for f in range(3) if f != factor]
    dims[others[0]] = rows
    dims[others[1]] = cols
    return Tensor(tuple(dims), entries)


# ---------------------------------------------------------------------------
# equality up to basis permutations
# ---------------------------------------------------------------------------

def _fingerprints(t: Tensor, factor: int):
    """Invariant per index: sorted entry values with positions forgotten."""
    data = {i: [] for i in range(t.dims[factor])}
    for key, v in t.entries.items():
        data[key[factor]].append(v.coords())
    return {i: tuple(sorted(vals)) for i, vals in data.items()}


def equal_up_to_permutation(t1: Tensor, t2: Tensor, node_budget: int = 200_000) -> bool:
    """Whether some triple of basis permutations maps t1 onto t2.

    Backtracking over entry matchings with forced-assignment propagation;
    candidate images are pruned by per-index entry-multiset fingerprints.
    Raises SizeLimit when the search exceeds node_budget nodes.
    """
    if t1.dims != t2.dims:
        raise ShapeMismatch(f"{t1.dims} vs {t2.dims}")
    if len(t1.entries) != len(t2.entries):
        return False
    if sorted(v.coords() for v in t1.entries.values()) != \
            sorted(v.coords() for v in t2.entries.values()):
        return False
    if not t1.entries:
        return True

    fp1 = [_fingerprints(t1, f) for f in range(3)]
    fp2 = [_fingerprints(t2, f) for f in range(3)]
    for f in range(3):
        if sorted(fp1[f].values()) != sorted(fp2[f].values()):
            return False

    entries1 = sorted(t1.entries.items())
    by_value2: dict[tuple, list] = {}
    for key, v in t2.entries.items():
        by_value2.setdefault(v.coords(), []).append(key)

    maps = [dict() for _ in range(3)]       # index of t1 -> index of t2
    used = [set() for _ in range(3)]
    budget = [node_budget]

    def compatible(key1, key2):
        for f in range(3):
            a, b = key1[f], key2[f]
            img = maps[f].get(a)
            if img is None:
                if b in used[f] or fp1[f][a] != fp2[f][b]:
                    return False
            elif img != b:
                return False
        return True

    def assign(key1, key2):
        added = []
        for f in range(3):
            a, b = key1[f], key2[f]
            if a not in maps[f]:
                maps[f][a] = b
                used[f].add(b)
                added.append((f, a, b))
        return added

    def unassign(added):
        for f, a, b in added:
            del maps[f][a]
            used[f].discard(b)

    matched2 = set()

    def backtrack(pos: int) -> bool:
        budget[0] -= 1
        if budget[0] <= 0:
            raise SizeLimit("permutation search exceeded node budget")
        if pos == len(entries1):
            return True
        key1, v = entries1[pos]
        for key2 in by_value2[v.coords()]:
            if key2 in matched2 or not compatible(key1, key2):
                continue
            added = assign(key1, key2)
            matched2.add(key2)
            if backtrack(pos + 1):
                return True
            matched2.discard(key2)
            unassign(added)
        return False

    return backtrack(0)
