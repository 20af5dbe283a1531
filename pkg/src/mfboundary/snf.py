"""Exact integer Smith normal form and finitely generated abelian groups.

Everything here works with Python ints; entries may grow during elimination
so fixed-width arrays are never used in the kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

SparseRow = Dict[int, int]


@dataclass(frozen=True)
class AbelianGroupDesc:
    """Z^free_rank + Z_{d1} + Z_{d2} + ... with d1 | d2 | ...  and every d_i >= 2."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @property
    def even_torsion(self) -> int:
        """Number of even-order cyclic summands."""
        return sum(1 for d in self.torsion if d % 2 == 0)

    @property
    def mod2_betti(self) -> int:
        return self.free_rank + self.even_torsion

    def torsion_counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for d in self.torsion:
            out[d] = out.get(d, 0) + 1
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d, k in sorted(self.torsion_counts().items()):
            parts.append(f"Z_{d}" if k == 1 else f"Z_{d}^{k}")
        return " + ".join(parts) if parts else "0"

    def torsion_str(self) -> str:
        return str(AbelianGroupDesc(0, self.torsion))

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj: dict) -> "AbelianGroupDesc":
        return cls(obj["free_rank"], tuple(obj["torsion"]))


@dataclass(frozen=True)
class SmithForm:
    """Nonzero diagonal of the Smith normal form of a ``shape`` matrix."""

    diagonal: Tuple[int, ...]
    shape: Tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def cokernel(self) -> AbelianGroupDesc:
        """Abelian group presented by the rows of the matrix (columns = generators)."""
        return AbelianGroupDesc(self.shape[1] - self.rank,
                                tuple(d for d in self.diagonal if d > 1))


def smith_normal_form(matrix: Sequence[Sequence[int]] | List[SparseRow],
                      ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form of an integer matrix, dense rows or sparse dict rows.

    Unit pivots are eliminated first on the sparse representation, then the
    residual block gets the full dense treatment.
    """
    rows: List[SparseRow] = []
    if matrix and isinstance(matrix[0], dict):
        if ncols is None:
            raise ValueError("ncols is required for sparse input")
        for r in matrix:
            row = {c: int(v) for c, v in r.items() if v}
            if row:
                rows.append(row)
    else:
        width = len(matrix[0]) if len(matrix) else 0
        if ncols is None:
            ncols = width
        for r in matrix:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            row = {c: int(v) for c, v in enumerate(r) if v}
            if row:
                rows.append(row)
    nrows = len(matrix)
    units, residual, rcols = _eliminate_units(rows)
    dense = [[row.get(c, 0) for c in rcols] for row in residual]
    diag = [1] * units + _dense_invariants(dense)
    return SmithForm(tuple(diag), (nrows, ncols))


def _eliminate_units(rows: List[SparseRow]):
    """Pivot on +-1 entries (fewest-nonzeros first).  Returns (count, residual rows, residual columns)."""
    rows = [dict(r) for r in rows]
    alive = set(range(len(rows)))
    cols: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(i)
    units = 0
    while True:
        best = None
        for i in alive:
            r = rows[i]
            if best is not None and len(r) >= best[0]:
                continue
            for c, v in r.items():
                if v == 1 or v == -1:
                    cost = len(cols[c])
                    if best is None or (len(r), cost) < best[:2]:
                        best = (len(r), cost, i, c)
        if best is None:
            break
        _, _, i, c = best
        prow = rows[i]
        sign = prow[c]
        alive.discard(i)
        for c2 in prow:
            cols[c2].discard(i)
        for j in list(cols[c]):
            r = rows[j]
            f = r[c] * sign
            for c2, v in prow.items():
                nv = r.get(c2, 0) - f * v
                if nv:
                    if c2 not in r:
                        cols[c2].add(j)
                    r[c2] = nv
                elif c2 in r:
                    del r[c2]
                    cols[c2].discard(j)
            if not r:
                alive.discard(j)
        del cols[c]
        units += 1
    residual = [rows[i] for i in sorted(alive) if rows[i]]
    rcols = sorted({c for r in residual for c in r})
    return units, residual, rcols


def _dense_invariants(M: List[List[int]]) -> List[int]:
    """Nonzero invariant factors of a dense integer matrix (destroys M)."""
    if not M or not M[0]:
        return []
    m, n = len(M), len(M[0])
    diag: List[int] = []
    t = 0
    while t < min(m, n):
        # minimal |entry| in the trailing block
        piv = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv is not None and piv[0] == 1:
                break
        if piv is None:
            break
        _, i, j = piv
        M[t], M[i] = M[i], M[t]
        if j != t:
            for row in M:
                row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = M[i][t]
                if v:
                    q = v // p
                    if q:
                        Mi, Mt = M[i], M[t]
                        for k in range(t, n):
                            if Mt[k]:
                                Mi[k] -= q * Mt[k]
                    if M[i][t]:
                        dirty = True
            Mt = M[t]
            for j in range(t + 1, n):
                v = Mt[j]
                if v:
                    q = v // p
                    if q:
                        for row in M[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if Mt[j]:
                        dirty = True
            if dirty:
                # move the smallest remainder into the pivot slot
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if M[i][t] and abs(M[i][t]) < best[0]:
                        best = (abs(M[i][t]), i, t)
                for j in range(t + 1, n):
                    if Mt[j] and abs(Mt[j]) < best[0]:
                        best = (abs(Mt[j]), t, j)
                _, i, j = best
                if i != t:
                    M[t], M[i] = M[i], M[t]
                if j != t:
                    for row in M:
                        row[t], row[j] = row[j], row[t]
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for k in range(t + 1, n):
                    if M[i][k] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            Mt = M[t]
            Mb = M[bad]
            for k in range(t, n):
                Mt[k] += Mb[k]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def smith_with_transforms(M: List[List[int]]):
    """Return (D, P, Q) with P*M*Q = D diagonal, P and Q unimodular.

    Dense and plain; used for small residual systems only.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, r)) for r in M]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        P[dst] = [a - q * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            row[dst] -= q * row[src]
        for row in Q:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if not done:
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][k] % p for k in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            P[t] = [-a for a in P[t]]
        t += 1
    return A, P, Q


def solve_mod(rows: List[SparseRow], rhs: List[int], nvars: int, n: int) -> Optional[List[int]]:
    """One solution x in Z_n^nvars of rows . x = rhs (mod n), or None if infeasible."""
    eqs = []
    for r, c in zip(rows, rhs):
        row = {j: v % n for j, v in r.items() if v % n}
        eqs.append([row, c % n])
    subs = []  # (var, coeffs, const): x_var = const - coeffs . x
    progress = True
    while progress:
        progress = False
        for k, (row, c) in enumerate(eqs):
            piv = next((j for j, v in row.items() if math.gcd(v, n) == 1), None)
            if piv is None:
                continue
            inv = pow(row[piv], -1, n)
            coeffs = {j: v * inv % n for j, v in row.items() if j != piv}
            const = c * inv % n
            subs.append((piv, coeffs, const))
            eqs.pop(k)
            for e in eqs:
                a = e[0].pop(piv, 0)
                if a:
                    e[1] = (e[1] - a * const) % n
                    for j, v in coeffs.items():
                        nv = (e[0].get(j, 0) - a * v) % n
                        if nv:
                            e[0][j] = nv
                        else:
                            e[0].pop(j, None)
            progress = True
            break
    x = [0] * nvars
    eqs = [e for e in eqs if e[0] or e[1]]
    if any(not row and c for row, c in eqs):
        return None
    if eqs:
        # residual: A y + n z = c over Z
        vars_ = sorted({j for row, _ in eqs for j in row})
        R = len(eqs)
        B = [[row.get(j, 0) for j in vars_] + [n * int(i == k) for k in range(R)]
             for i, (row, _) in enumerate(eqs)]
        c = [cc for _, cc in eqs]
        D, P, Q = smith_with_transforms(B)
        Pc = [sum(p * v for p, v in zip(Prow, c)) for Prow in P]
        w = [0] * len(B[0])
        for i in range(R):
            d = D[i][i] if i < len(B[0]) else 0
            if d == 0:
                if Pc[i]:
                    return None
            else:
                if Pc[i] % d:
                    return None
                w[i] = Pc[i] // d
        y = [sum(q * v for q, v in zip(Qrow, w)) for Qrow in Q]
        for j, val in zip(vars_, y):
            x[j] = val % n
    for var, coeffs, const in reversed(subs):
        x[var] = (const - sum(v * x[j] for j, v in coeffs.items())) % n
    return x
