"""Mod-2 cohomology ring of the projectivized complement and its double.

H*(U; Z_2) is modeled by the Orlik-Solomon algebra of the affine
arrangement obtained by sending one line (the pivot) to infinity.  Degree-1
vectors are bitmasks over e_1..e_m (bit i-1 <-> e_i); degree-2 vectors are
bitmasks over the no-broken-circuit basis ``basis2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import gf2
from .arrangement import (ArrangementError, DegenerateArrangement, LineConfiguration,
                          l2_flats)


class OddLineCount(ArrangementError):
    pass


class ZeroFirstComponent(ValueError):
    pass


@dataclass(frozen=True)
class DeconedConfiguration:
    m: int
    affine_points: Tuple[Tuple[int, ...], ...]
    parallel_classes: Tuple[Tuple[int, ...], ...]
    original: Tuple[int, ...]  # original label of affine line i is original[i-1]
    pivot: int


def decone(config: LineConfiguration, pivot: Optional[int] = None) -> DeconedConfiguration:
    n = config.n
    if n <= 2:
        raise DegenerateArrangement(f"need at least 3 lines, got n={n}")
    pivot = n if pivot is None else pivot
    if not 1 <= pivot <= n:
        raise ValueError(f"pivot {pivot} out of range 1..{n}")
    original = tuple(i for i in range(1, n + 1) if i != pivot)
    new = {old: k for k, old in enumerate(original, 1)}
    points, classes = [], []
    for f in l2_flats(config):
        if pivot in f.lines:
            classes.append(tuple(sorted(new[i] for i in f.lines if i != pivot)))
        else:
            points.append(tuple(sorted(new[i] for i in f.lines)))
    return DeconedConfiguration(n - 1, tuple(sorted(points)), tuple(sorted(classes)),
                                original, pivot)


@dataclass(frozen=True)
class GradedAlgebraMod2:
    m: int
    basis2: Tuple[Tuple[int, int], ...]
    products: Dict[Tuple[int, int], int] = field(compare=False, hash=False)

    @property
    def dims(self) -> Tuple[int, int, int]:
        return (1, self.m, len(self.basis2))

    def product(self, i: int, j: int) -> int:
        """e_i * e_j as a degree-2 bitmask."""
        if i == j:
            return 0
        return self.products.get((min(i, j), max(i, j)), 0)

    def mult_images(self, a: int) -> List[int]:
        """Images of e_1..e_m under x -> x*a."""
        return [cup(1 << (i - 1), a, self) for i in range(1, self.m + 1)]


def build_os2(dec: DeconedConfiguration) -> GradedAlgebraMod2:
    pts = sorted(dec.affine_points, key=lambda p: (p[0], p[1]))
    basis = [(p[0], j) for p in pts for j in p[1:]]
    pos = {b: k for k, b in enumerate(basis)}
    products: Dict[Tuple[int, int], int] = {}
    for p in pts:
        lo = p[0]
        for j in p[1:]:
            products[(lo, j)] = 1 << pos[(lo, j)]
        # e_a e_b = e_lo e_a + e_lo e_b  (circuit relation mod 2)
        for x in range(1, len(p)):
            for y in range(x + 1, len(p)):
                a, b = p[x], p[y]
                products[(a, b)] = (1 << pos[(lo, a)]) | (1 << pos[(lo, b)])
    # pairs in a parallel class multiply to zero: simply absent from the table
    return GradedAlgebraMod2(dec.m, tuple(basis), products)


def cup(a: int, b: int, alg: GradedAlgebraMod2) -> int:
    """Product of two degree-1 vectors."""
    if a >> alg.m or b >> alg.m or a < 0 or b < 0:
        raise ValueError("degree-1 vector does not fit the algebra")
    out = 0
    ia = a
    while ia:
        lo = ia & -ia
        i = lo.bit_length()
        ib = b
        while ib:
            lo2 = ib & -ib
            out ^= alg.product(i, lo2.bit_length())
            ib ^= lo2
        ia ^= lo
    return out


# ---- the double -------------------------------------------------------------

@dataclass(frozen=True)
class DElem:
    """Element of D(A) = A + dual(A): ``a[k]`` in A^k, ``f[k]`` in dual(A^k)."""

    a: Tuple[int, int, int] = (0, 0, 0)
    f: Tuple[int, int, int] = (0, 0, 0)

    def __add__(self, other: "DElem") -> "DElem":
        return DElem(tuple(x ^ y for x, y in zip(self.a, other.a)),
                     tuple(x ^ y for x, y in zip(self.f, other.f)))

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.f)


@dataclass(frozen=True)
class DoubleAlgebraMod2:
    base: GradedAlgebraMod2

    def dims(self) -> Tuple[int, int, int, int]:
        d = self.base.dims
        return (d[0], d[1] + d[2], d[2] + d[1], d[0])

    def mul_A(self, i: int, x: int, j: int, y: int) -> Tuple[int, int]:
        """(degree, vector) of x*y for x in A^i, y in A^j."""
        k = i + j
        if k > 2 or not x or not y:
            return k, 0
        if i == 0:
            return k, y if x & 1 else 0
        if j == 0:
            return k, x if y & 1 else 0
        return k, cup(x, y, self.base)

    def act(self, i: int, x: int, j: int, g: int) -> Tuple[int, int]:
        """x.g in dual(A^{j-i}) for x in A^i, g in dual(A^j): (x.g)(c) = g(c*x)."""
        k = j - i
        if k < 0 or not x or not g:
            return k, 0
        out = 0
        for c in range(self.base.dims[k]):
            _, cx = self.mul_A(k, 1 << c, i, x)
            if gf2.popcount(cx & g) & 1:
                out |= 1 << c
        return k, out

    def multiply(self, u: DElem, v: DElem) -> DElem:
        """(a, f) * (b, g) = (ab, ag + fb); Z_2 coefficients make the two actions agree."""
        a = [0, 0, 0]
        f = [0, 0, 0]
        for i in range(3):
            for j in range(3):
                k, p = self.mul_A(i, u.a[i], j, v.a[j])
                if k <= 2:
                    a[k] ^= p
                k, p = self.act(i, u.a[i], j, v.f[j])
                if k >= 0:
                    f[k] ^= p
                k, p = self.act(j, v.a[j], i, u.f[i])
                if k >= 0:
                    f[k] ^= p
        return DElem(tuple(a), tuple(f))

    def basis(self, k: int) -> List[DElem]:
        """Basis of D^k = A^k + dual(A^{3-k})."""
        dims = self.base.dims
        out = []
        if k <= 2:
            for c in range(dims[k]):
                a = [0, 0, 0]
                a[k] = 1 << c
                out.append(DElem(tuple(a)))
        if 3 - k <= 2:
            for c in range(dims[3 - k]):
                f = [0, 0, 0]
                f[3 - k] = 1 << c
                out.append(DElem(f=tuple(f)))
        return out

    def coords(self, k: int, u: DElem) -> int:
        dims = self.base.dims
        out = u.a[k] if k <= 2 else 0
        if 3 - k <= 2:
            shift = dims[k] if k <= 2 else 0
            out |= u.f[3 - k] << shift
        return out

    def differential(self, k: int, w: DElem) -> List[int]:
        """Images of the D^k basis under right multiplication by w, as D^{k+1} coordinates."""
        return [self.coords(k + 1, self.multiply(u, w)) for u in self.basis(k)]


def double(alg: GradedAlgebraMod2) -> DoubleAlgebraMod2:
    return DoubleAlgebraMod2(alg)


@dataclass(frozen=True)
class ResonanceResult:
    h_A: Tuple[int, int, int]
    h_Abar: Tuple[int, int, int]
    h_D: Tuple[int, int, int, int]
    d: int
    beta: int
    les_alternating_sum: int

    @property
    def h1(self) -> int:
        return self.h_D[1]

    def checks(self) -> Dict[str, bool]:
        return {
            "h0_A_zero": self.h_A[0] == 0,
            "h2_A_is_beta_plus_d": self.h_A[2] == self.beta + self.d,
            "dual_symmetry": all(self.h_Abar[k] == self.h_A[2 - k] for k in range(3)),
            "les_exact": self.les_alternating_sum == 0,
            "h1_D_lower_bound": self.h_D[1] >= self.beta + self.d >= self.beta,
        }

    def to_json(self) -> dict:
        return {"h_A": list(self.h_A), "h_Abar": list(self.h_Abar), "h_D": list(self.h_D),
                "d": self.d, "beta": self.beta}


def _cohomology(dims: List[int], ranks: List[int]) -> List[int]:
    """dims[k] of C^k and ranks[k] of d: C^k -> C^{k+1}."""
    out = []
    for k, dk in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out.append(dk - r_out - r_in)
    return out


def resonance(dalg: DoubleAlgebraMod2, a: int, b: int = 0) -> ResonanceResult:
    """Cohomology dimensions of (A, a), (dual A, a) and (D(A), (a, b))."""
    alg = dalg.base
    if a == 0:
        raise ZeroFirstComponent("the A^1 component must be nonzero")
    dims = alg.dims
    if b >> dims[2] or a >> dims[1]:
        raise ValueError("element does not fit the algebra")
    # (A, a)
    d0 = [a]
    d1 = alg.mult_images(a)
    rA = [gf2.rank(d0), gf2.rank(d1)]
    h_A = _cohomology(list(dims), rA)
    # (dual A, a): dual(A^2) -> dual(A^1) -> dual(A^0) is the transpose
    rAb = [gf2.rank(gf2.transpose(d1, dims[2])), gf2.rank(gf2.transpose(d0, dims[1]))]
    h_Abar = _cohomology([dims[2], dims[1], dims[0]], rAb)
    # (D(A), (a, b))
    w = DElem((0, a, 0), (0, 0, b))
    rD = [gf2.rank(dalg.differential(k, w)) for k in range(3)]
    h_D = _cohomology(list(dalg.dims()), rD)
    seq = []
    for k in range(3):
        seq += [h_D[k], h_A[k], h_Abar[k]]
    seq.append(h_D[3])
    alt = sum(v if i % 2 == 0 else -v for i, v in enumerate(seq))
    beta = 1 - dims[1] + dims[2]
    return ResonanceResult(tuple(h_A), tuple(h_Abar), tuple(h_D), h_A[1], beta, alt)


def omega_bar_prime(alg: GradedAlgebraMod2, n: int) -> int:
    """Mod-2 class taking the value 1 on every meridian, in decone coordinates."""
    if n % 2:
        raise OddLineCount(f"n={n} is odd; the mod-2 reduction of the character does not exist")
    if alg.m != n - 1:
        raise ValueError("algebra does not come from an arrangement of n lines")
    return (1 << alg.m) - 1


def pivot_meridian_value(a: int, m: int) -> int:
    """Value on the pivot's meridian, which is the sum of the affine meridians."""
    return gf2.popcount(a & ((1 << m) - 1)) & 1


def algebra_for(config: LineConfiguration, pivot: Optional[int] = None) -> GradedAlgebraMod2:
    return build_os2(decone(config, pivot))


def alpha0(config: LineConfiguration, pivot: Optional[int] = None) -> int:
    """First mod-2 Aomoto-Betti number of H*(boundary manifold; Z_2) at the reduced character."""
    if config.n % 2:
        raise OddLineCount(f"n={config.n} is odd")
    alg = algebra_for(config, pivot)
    return resonance(double(alg), omega_bar_prime(alg, config.n), 0).h1
