"""Finite cyclic covers via Reidemeister-Schreier and their first homology."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .presentation import GroupPresentation, Word
from .plumbing import CharacterMap
from .snf import AbelianGroupDesc, smith_normal_form


class BadDivisor(ValueError):
    pass


class NotSurjectiveModD(ValueError):
    pass


class ModulusNotPowerOfTwo(ValueError):
    pass


def _transversal_generator(pres: GroupPresentation, values: Tuple[int, ...], d: int) -> int:
    """1-based index of the lowest line fiber (else any generator) with value a unit mod d."""
    cands = [i for i, g in enumerate(pres.generators) if g.startswith("g[L")]
    cands += [i for i in range(pres.ngens) if i not in cands]
    for i in cands:
        if math.gcd(values[i] % d, d) == 1:
            return i + 1
    raise NotSurjectiveModD(f"no generator maps to a unit of Z_{d}")


def _check(pres: GroupPresentation, character: CharacterMap, d: int) -> Tuple[int, ...]:
    if d < 1 or character.modulus % d:
        raise BadDivisor(f"{d} does not divide the modulus {character.modulus}")
    if len(character.values) != pres.ngens:
        raise ValueError("character does not match the presentation")
    values = tuple(v % d for v in character.values)
    g = d
    for v in values:
        g = math.gcd(g, v)
    if g != 1:
        raise NotSurjectiveModD(f"character is not onto Z_{d}")
    return values


def _schreier_setup(pres, character, d):
    values = _check(pres, character, d)
    t = _transversal_generator(pres, values, d)
    # the transversal is {t^k}; use powers of t's value to index cosets
    tv = values[t - 1]
    inv_tv = pow(tv, -1, d) if d > 1 else 0
    # coset of an element with character value c is k = c * inv_tv mod d
    step = [(v * inv_tv) % d if d > 1 else 0 for v in values]
    index: Dict[Tuple[int, int], int] = {}
    labels: List[str] = []
    for k in range(d):
        for g in range(1, pres.ngens + 1):
            if g == t and k < d - 1:
                continue  # t^k t t^-(k+1) freely reduces to 1
            index[(k, g)] = len(labels) + 1
            labels.append(f"s[{k};{pres.generators[g - 1]}]")
    return step, index, labels


def _rewrite(word: Word, start: int, step, index, d) -> List[int]:
    out = []
    c = start
    for x in word:
        g = abs(x)
        if x > 0:
            s = index.get((c, g))
            if s:
                out.append(s)
            c = (c + step[g - 1]) % d
        else:
            c = (c - step[g - 1]) % d
            s = index.get((c, g))
            if s:
                out.append(-s)
    if c != start:
        raise ValueError("relator is not in the kernel of the character")
    return out


def reidemeister_schreier(pres: GroupPresentation, character: CharacterMap,
                          d: int) -> GroupPresentation:
    """Presentation of the kernel of the character reduced mod d.

    Schreier generators s[k;g] = t^k g t^-(k + w(g)) over cosets k, omitting
    the d-1 that reduce to the identity; relators are the rewrites of
    t^k R t^-k for every relator R and k = 0..d-1.
    """
    step, index, labels = _schreier_setup(pres, character, d)
    rels = []
    for k in range(d):
        for r in pres.relators:
            rels.append(tuple(_rewrite(r, k, step, index, d)))
    return GroupPresentation(tuple(labels), tuple(rels))


def _cover_matrix(pres: GroupPresentation, character: CharacterMap, d: int):
    """Abelianized relation rows of the Reidemeister-Schreier presentation, built directly."""
    step, index, labels = _schreier_setup(pres, character, d)
    rows = []
    for k in range(d):
        for r in pres.relators:
            row: Dict[int, int] = {}
            for s in _rewrite(r, k, step, index, d):
                c = abs(s) - 1
                row[c] = row.get(c, 0) + (1 if s > 0 else -1)
            rows.append({c: v for c, v in row.items() if v})
    return rows, len(labels)


def h1_cover(pres: GroupPresentation, character: CharacterMap, d: int) -> AbelianGroupDesc:
    """H_1 of the d-fold cyclic cover determined by the character mod d."""
    rows, ncols = _cover_matrix(pres, character, d)
    return smith_normal_form(rows, ncols=ncols).cokernel()


@dataclass(frozen=True)
class TowerStats:
    levels: Tuple[AbelianGroupDesc, ...]  # H_1 of the 2^k-fold cover, k = 0..m

    @property
    def m(self) -> int:
        return len(self.levels) - 1

    def b1(self, k: int) -> int:
        return self.levels[k].free_rank

    def b1_mod2(self, k: int) -> int:
        return self.levels[k].mod2_betti

    def alpha(self, k: int) -> int:
        return self.b1_mod2(k + 1) - self.b1(k)

    def rho(self, k: int) -> int:
        return self.b1(k + 1) - self.b1(k)

    def tau(self, k: int) -> int:
        return self.levels[k].even_torsion

    def mod2_monotone(self) -> bool:
        return all(self.b1_mod2(k) <= self.b1_mod2(k + 1) for k in range(self.m))

    def to_json(self) -> dict:
        return {
            "levels": [dict(lv.to_json(), degree=2 ** k, str=str(lv))
                       for k, lv in enumerate(self.levels)],
            "b1": [self.b1(k) for k in range(self.m + 1)],
            "b1_mod2": [self.b1_mod2(k) for k in range(self.m + 1)],
            "alpha": [self.alpha(k) for k in range(self.m)],
            "rho": [self.rho(k) for k in range(self.m)],
            "tau": [self.tau(k) for k in range(self.m + 1)],
        }


def power_of_two_exponent(n: int) -> Optional[int]:
    if n >= 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


def tower_stats(pres: GroupPresentation, character: CharacterMap,
                m: Optional[int] = None) -> TowerStats:
    """Homology along the tower of double covers of the 2^m-fold cyclic cover."""
    e = power_of_two_exponent(character.modulus)
    if e is None:
        raise ModulusNotPowerOfTwo(f"modulus {character.modulus} is not a power of 2")
    m = e if m is None else m
    if m > e:
        raise ModulusNotPowerOfTwo(f"2^{m} does not divide {character.modulus}")
    levels = tuple(h1_cover(pres, character, 2 ** k) for k in range(m + 1))
    return TowerStats(levels)
