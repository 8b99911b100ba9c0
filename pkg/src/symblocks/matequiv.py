"""Permutation equivalence of exact matrices.

Two questions are decided exactly:

* rectangular: are there permutation matrices P, Q with P A Q = B?
* similarity: is there one permutation matrix T with T A = B T?

Both run colour refinement on A and B side by side (rows and columns, or
indices, are coloured by the multiset of (entry, neighbour colour) pairs),
then individualise a vertex of the smallest non-trivial cell and branch over
every candidate image.  Branching over a full cell keeps the search
complete; every returned witness is verified against the input.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import InternalConsistencyError, ShapeError
from .exact import RationalMatrix

RECTANGULAR = "rectangular"
SIMILARITY = "similarity"


@dataclass(frozen=True)
class EquivWitness:
    rows: tuple  # A's row i goes to row rows[i] of B
    cols: tuple

    def __str__(self):
        return "rows: " + " ".join(map(str, self.rows)) + " | cols: " + " ".join(map(str, self.cols))


def _as_int_rows(a: RationalMatrix) -> list:
    return [[int(x) for x in row] for row in a.num]


def apply_witness(a: RationalMatrix, wit: EquivWitness) -> RationalMatrix:
    m, n = a.shape
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            out[wit.rows[i]][wit.cols[j]] = int(a.num[i, j])
    return RationalMatrix(out, a.den)


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class InvariantKey:
    text: str

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()[:16]


def invariant_key(a: RationalMatrix, mode: str = RECTANGULAR) -> InvariantKey:
    """A serialisation of data preserved by the mode's permutation action."""
    m, n = a.shape
    rows = _as_int_rows(a)
    if mode == RECTANGULAR:
        rc = sorted(tuple(sorted(r)) for r in rows)
        cc = sorted(tuple(sorted(rows[i][j] for i in range(m))) for j in range(n))
        # no diagonal here: independent row and column permutations move it
        parts = [f"{m}x{n}", f"/{a.den}", repr(rc), repr(cc)]
    elif mode == SIMILARITY:
        if m != n:
            raise ShapeError("similarity needs a square matrix")
        rc = sorted((rows[i][i], tuple(sorted(rows[i][j] for j in range(n) if j != i))) for i in range(m))
        parts = [f"{m}x{n}", f"/{a.den}", repr(sorted(rows[i][i] for i in range(m))), repr(rc)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return InvariantKey(";".join(parts))


# ---------------------------------------------------------------------------
# refinement


class _Pair:
    """Joint colour refinement of two matrices of equal shape."""

    def __init__(self, a: list, b: list, mode: str):
        self.a, self.b, self.mode = a, b, mode
        self.m = len(a)
        self.n = len(a[0]) if a else 0

    def initial(self):
        if self.mode == RECTANGULAR:
            ca = [0] * self.m + [1] * self.n
            return ca, list(ca)
        return [self.a[i][i] for i in range(self.m)], [self.b[i][i] for i in range(self.m)]

    def _signatures(self, mat, col):
        m, n = self.m, self.n
        if self.mode == RECTANGULAR:
            sig = []
            for i in range(m):
                row = mat[i]
                sig.append((col[i], tuple(sorted(Counter(zip(row, col[m:])).items()))))
            for j in range(n):
                sig.append((col[m + j], tuple(sorted(Counter(
                    (mat[i][j], col[i]) for i in range(m)).items()))))
            return sig
        sig = []
        for i in range(m):
            row = mat[i]
            sig.append((col[i], tuple(sorted(Counter(
                (row[j], col[j]) for j in range(m) if j != i).items()))))
        return sig

    def refine(self, ca, cb):
        """Refine to a stable colouring; ``None`` if A and B separate."""
        ncol = len(set(ca))
        while True:
            sa = self._signatures(self.a, ca)
            sb = self._signatures(self.b, cb)
            if Counter(sa) != Counter(sb):
                return None
            ids = {s: k for k, s in enumerate(sorted(set(sa)))}
            ca = [ids[s] for s in sa]
            cb = [ids[s] for s in sb]
            if len(ids) == ncol:
                return ca, cb
            ncol = len(ids)


def _search(pair: _Pair, ca, cb):
    res = pair.refine(ca, cb)
    if res is None:
        return None
    ca, cb = res
    cells = Counter(ca)
    open_cells = [(size, c) for c, size in cells.items() if size > 1]
    if not open_cells:
        where = {c: k for k, c in enumerate(cb)}
        return [where[c] for c in ca]
    _, colour = min(open_cells)
    v = ca.index(colour)
    fresh = max(cells) + 1
    for u in [k for k, c in enumerate(cb) if c == colour]:
        na, nb = list(ca), list(cb)
        na[v] = fresh
        nb[u] = fresh
        found = _search(pair, na, nb)
        if found is not None:
            return found
    return None


def _run(a: RationalMatrix, b: RationalMatrix, mode: str):
    if a.shape != b.shape:
        raise ShapeError(f"shapes {a.shape} and {b.shape} differ")
    if a.den != b.den:
        return None
    ai, bi = _as_int_rows(a), _as_int_rows(b)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return EquivWitness(tuple(range(a.shape[0])), tuple(range(a.shape[1])))
    pair = _Pair(ai, bi, mode)
    ca, cb = pair.initial()
    perm = _search(pair, ca, cb)
    if perm is None:
        return None
    m = a.shape[0]
    if mode == RECTANGULAR:
        wit = EquivWitness(tuple(perm[:m]), tuple(p - m for p in perm[m:]))
    else:
        wit = EquivWitness(tuple(perm), tuple(perm))
    if apply_witness(a, wit) != b:
        raise InternalConsistencyError("refinement search returned an invalid witness")
    return wit


def transforming_permutations(a: RationalMatrix, b: RationalMatrix):
    """Row and column permutations carrying A to B, or ``None``."""
    return _run(a, b, RECTANGULAR)


def permutation_similarity(a: RationalMatrix, b: RationalMatrix):
    """A single permutation T with T A = B T (i.e. B = T A T^t), or ``None``."""
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError("similarity needs square matrices of equal size")
    if not (a.is_symmetric() and b.is_symmetric()):
        raise ValueError("permutation_similarity expects symmetric matrices")
    return _run(a, b, SIMILARITY)


def equivalent(a: RationalMatrix, b: RationalMatrix, mode: str):
    if mode == RECTANGULAR:
        return transforming_permutations(a, b)
    return permutation_similarity(a, b)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    classes: tuple  # tuples of labels, each sorted; ordered by first label
    witnesses: dict  # label -> (class representative, witness) for non-representatives
    buckets: int
    comparisons: int


def _classify_bucket(args):
    items, mode = args
    reps = []  # (label, matrix, members)
    witnesses = {}
    comparisons = 0
    for label, mat in items:
        for rep_label, rep_mat, members in reps:
            comparisons += 1
            wit = equivalent(rep_mat, mat, mode)
            if wit is not None:
                members.append(label)
                witnesses[label] = (rep_label, wit)
                break
        else:
            reps.append((label, mat, [label]))
    return [tuple(m) for _, _, m in reps], witnesses, comparisons


def classify(items, mode: str = RECTANGULAR, jobs: int = 1) -> Classification:
    """Partition labelled matrices into equivalence classes.

    Matrices are bucketed by :func:`invariant_key`; inside a bucket each
    matrix is compared with one member of every class found so far.
    """
    items = sorted(items, key=lambda it: it[0])
    buckets = {}
    for label, mat in items:
        buckets.setdefault(invariant_key(mat, mode).text, []).append((label, mat))
    work = [(bucket, mode) for _, bucket in sorted(buckets.items(), key=lambda kv: kv[1][0][0])]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_bucket, work))
    else:
        results = [_classify_bucket(w) for w in work]
    classes, witnesses, comparisons = [], {}, 0
    for cls, wit, cmp in results:
        classes.extend(cls)
        witnesses.update(wit)
        comparisons += cmp
    classes.sort(key=lambda c: c[0])
    return Classification(tuple(classes), witnesses, len(buckets), comparisons)
