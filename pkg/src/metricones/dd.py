"""Double description: converting between inequality and generator descriptions.

The engine maintains the extreme rays of an intersected half-space
system, inserting one inequality at a time (most-violated first).  New
rays come only from adjacent (positive, negative) ray pairs, recognized
by the combinatorial test on tight-row bitsets.  Arithmetic runs on
int64 numpy arrays while a priori bounds allow, and falls back to
exact big-integer arrays otherwise; both paths are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .cones import Representation
from .exact import inverse, kernel_basis, normalize_ray, rank

_LIMIT = 2**62


class LinealityError(ValueError):
    """The inequality system admits a full line."""

    def __init__(self, vector):
        super().__init__(f"cone is not pointed; it contains the line through {vector}")
        self.vector = tuple(vector)


@dataclass
class DDState:
    processed_rows: list[tuple[int, ...]]
    input_order: list[int]
    rays: list[tuple[int, ...]]
    incidence: list[int]
    dim: int

    def tight_rows(self, ray_index: int) -> list[tuple[int, ...]]:
        mask = self.incidence[ray_index]
        return [row for k, row in enumerate(self.processed_rows) if mask >> k & 1]


def _greedy_basis(rows, dim: int) -> list[int]:
    reduced: list[tuple[int, list[Fraction]]] = []
    chosen: list[int] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for pc, rr in reduced:
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, rr)]
        piv = next((c for c, a in enumerate(v) if a), None)
        if piv is None:
            continue
        inv = v[piv]
        reduced.append((piv, [a / inv for a in v]))
        chosen.append(idx)
        if len(chosen) == dim:
            return chosen
    raise AssertionError("rank precondition violated")


def _max_abs(arr) -> int:
    if arr.size == 0:
        return 0
    return int(np.abs(arr).max())


def _to_object(arr):
    return arr.astype(object) if arr.dtype != object else arr


def _normalize_rows_int64(mat):
    g = np.gcd.reduce(np.abs(mat), axis=1)
    g[g == 0] = 1
    return mat // g[:, None]


def _normalize_rows_object(mat):
    out = mat.copy()
    for i in range(out.shape[0]):
        g = 0
        for x in out[i]:
            g = gcd(g, abs(int(x)))
        if g > 1:
            for j in range(out.shape[1]):
                out[i, j] = int(out[i, j]) // g
    return out


def _lex_order(rows: list[tuple[int, ...]]) -> list[int]:
    return sorted(range(len(rows)), key=lambda i: rows[i])


def run_dd(rows: list[tuple[int, ...]], dim: int) -> DDState:
    """Extreme rays of {x : row . x >= 0 for every row}.

    Requires rank(rows) = dim (pointed cone); raises LinealityError
    otherwise, naming a direction contained in the cone's lineality.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if len(set(rows)) != len(rows):
        raise ValueError("duplicate inequality rows")
    if rank(rows) < dim:
        line = kernel_basis(rows, ncols=dim)[0]
        raise LinealityError(line)

    total = len(rows)
    words = max(1, -(-total // 64))
    basis = _greedy_basis(rows, dim)
    basis_set = set(basis)
    inv = inverse([rows[i] for i in basis])
    init = [normalize_ray(tuple(inv[i][j] for i in range(dim))) for j in range(dim)]

    big = max(max(abs(x) for x in r) for r in init)
    dtype = object if big >= _LIMIT else np.int64
    R = np.array(init, dtype=dtype)
    T = np.zeros((dim, words), dtype=np.uint64)
    for j in range(dim):
        for k in range(dim):
            if k != j:
                T[j, k >> 6] |= np.uint64(1) << np.uint64(k & 63)

    processed = [rows[i] for i in basis]
    order = list(basis)
    remaining = [i for i in range(total) if i not in basis_set]
    d = dim

    while remaining:
        try:
            A = np.array([rows[i] for i in remaining], dtype=np.int64)
        except OverflowError:
            A = np.array([rows[i] for i in remaining], dtype=object)
        amax = _max_abs(A)
        if R.dtype != object and (
            A.dtype == object or d * amax * max(_max_abs(R), 1) >= _LIMIT
        ):
            R = _to_object(R)
        vals = R.dot(_to_object(A.T) if R.dtype == object else A.T)
        if R.shape[0]:
            neg_counts = np.asarray(vals < 0, dtype=bool).sum(axis=0)
            pick = int(np.argmax(neg_counts))
        else:
            pick = 0
        row_idx = remaining.pop(pick)
        v = vals[:, pick] if R.shape[0] else np.zeros(0, dtype=np.int64)
        nproc = len(processed)
        bit_word, bit_val = nproc >> 6, np.uint64(1) << np.uint64(nproc & 63)

        vneg = np.asarray(v < 0, dtype=bool)
        vzer = np.asarray(v == 0, dtype=bool)
        neg_idx = np.flatnonzero(vneg)
        zer_idx = np.flatnonzero(vzer)
        pos_idx = np.flatnonzero(~(vneg | vzer))

        if neg_idx.size == 0:
            T[zer_idx, bit_word] |= bit_val
            processed.append(rows[row_idx])
            order.append(row_idx)
            continue

        pair_p: list[np.ndarray] = []
        pair_n: list[np.ndarray] = []
        if pos_idx.size:
            T_pos = T[pos_idx]
            threshold = d - 2
            for start in range(0, neg_idx.size, 64):
                chunk = neg_idx[start:start + 64]
                common = T_pos[:, None, :] & T[chunk][None, :, :]
                counts = np.bitwise_count(common).sum(axis=2, dtype=np.int64)
                pi, ci = np.nonzero(counts >= threshold)
                if pi.size:
                    pair_p.append(pos_idx[pi])
                    pair_n.append(chunk[ci])
        if pair_p:
            P = np.concatenate(pair_p)
            N = np.concatenate(pair_n)
            meets = T[P] & T[N]
            counts = np.zeros(P.size, dtype=np.int64)
            for cstart in range(0, P.size, 128):
                M = meets[cstart:cstart + 128]
                acc = np.zeros(M.shape[0], dtype=np.int64)
                for rstart in range(0, T.shape[0], 16384):
                    block = T[rstart:rstart + 16384]
                    sub = (block[:, None, :] & M[None, :, :]) == M[None, :, :]
                    acc += sub.all(axis=2).sum(axis=0, dtype=np.int64)
                counts[cstart:cstart + 128] = acc
            keep_pairs = counts == 2
            P = P[keep_pairs]
            N = N[keep_pairs]
        else:
            P = np.zeros(0, dtype=np.int64)
            N = np.zeros(0, dtype=np.int64)

        if P.size:
            if R.dtype != object:
                vmax = _max_abs(v)
                if 2 * vmax * max(_max_abs(R), 1) >= _LIMIT:
                    R = _to_object(R)
                    v = _to_object(v)
            vp = v[P]
            vn = v[N]
            new = vp[:, None] * R[N] - vn[:, None] * R[P]
            new = (
                _normalize_rows_object(new)
                if new.dtype == object
                else _normalize_rows_int64(new)
            )
            new_T = (T[P] & T[N])
            new_T[:, bit_word] |= bit_val
            new_tuples = [tuple(int(x) for x in r) for r in new]
            perm = _lex_order(new_tuples)
            new = new[perm]
            new_T = new_T[perm]
        else:
            new = np.zeros((0, R.shape[1]), dtype=R.dtype)
            new_T = np.zeros((0, words), dtype=np.uint64)

        T[zer_idx, bit_word] |= bit_val
        keep = np.concatenate([pos_idx, zer_idx])
        keep.sort()
        if new.dtype != R.dtype:
            R = _to_object(R)
            new = _to_object(new)
        R = np.concatenate([R[keep], new], axis=0)
        T = np.concatenate([T[keep], new_T], axis=0)
        processed.append(rows[row_idx])
        order.append(row_idx)

    ray_tuples = [tuple(int(x) for x in r) for r in R]
    if len(set(ray_tuples)) != len(ray_tuples):
        raise AssertionError("duplicate rays produced")
    perm = _lex_order(ray_tuples)
    rays = [ray_tuples[i] for i in perm]
    masks = []
    for i in perm:
        m = 0
        for w in range(words):
            m |= int(T[i, w]) << (64 * w)
        masks.append(m)
    return DDState(
        processed_rows=processed,
        input_order=order,
        rays=rays,
        incidence=masks,
        dim=dim,
    )


def dual_description(rep: Representation) -> Representation:
    """All extreme rays of an H-represented pointed cone."""
    if rep.kind != "H":
        raise ValueError("dual_description expects an H-representation")
    state = run_dd(rep.rows, rep.dim)
    return Representation(
        kind="V", scheme=rep.scheme, rows=state.rays, spec=rep.spec, dd=state
    )


def facet_enumeration(rep: Representation) -> Representation:
    """All facets of a V-represented full-dimensional cone."""
    if rep.kind != "V":
        raise ValueError("facet_enumeration expects a V-representation")
    r = rank(rep.rows)
    if r < rep.dim:
        raise ValueError(f"generators span only {r} of {rep.dim} dimensions")
    state = run_dd(rep.rows, rep.dim)
    return Representation(
        kind="H", scheme=rep.scheme, rows=state.rays, spec=rep.spec, dd=state
    )


def dd_adjacency(state: DDState, r1: int, r2: int, mode: str = "combinatorial") -> bool:
    """Whether two stored rays span a 2-face of the processed cone."""
    if r1 == r2:
        raise ValueError("adjacency needs two distinct rays")
    meet = state.incidence[r1] & state.incidence[r2]
    if mode == "combinatorial":
        for k, m in enumerate(state.incidence):
            if k != r1 and k != r2 and m & meet == meet:
                return False
        return True
    if mode == "rank":
        tight = [row for k, row in enumerate(state.processed_rows) if meet >> k & 1]
        return rank(tight) == state.dim - 2
    raise ValueError(f"unknown adjacency mode {mode!r}")
