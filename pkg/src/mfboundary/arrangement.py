"""Combinatorial line arrangements and their intersection-poset invariants.

A central arrangement of n planes in C^3 is recorded by its projective line
arrangement: the lines 1..n and the multiple points of multiplicity >= 3.
Double points are implicit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple


class ArrangementError(ValueError):
    """Base class for invalid or unsupported arrangement input."""


class ValidationError(ArrangementError):
    def __init__(self, violations: List["Violation"], where: Optional[List[str]] = None):
        self.violations = violations
        msgs = [str(v) for v in violations]
        if where:
            msgs = [f"{w}: {m}" for w, m in zip(where, msgs)]
        super().__init__("; ".join(msgs))


class DegenerateArrangement(ArrangementError):
    pass


class NoSuchCatalogEntry(ArrangementError):
    pass


class ParseError(ArrangementError):
    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


@dataclass(frozen=True)
class Violation:
    kind: str  # DuplicatePair | BadIndex | FlatTooSmall | DuplicateFlat | BadLineCount
    detail: tuple

    def __str__(self):
        if self.kind == "DuplicatePair":
            i, j, a, b = self.detail
            return f"DuplicatePair{{{i},{j}}} in flats {sorted(a)} and {sorted(b)}"
        return f"{self.kind}{self.detail}"


@dataclass(frozen=True)
class LineConfiguration:
    n: int
    flats: FrozenSet[FrozenSet[int]] = frozenset()

    @classmethod
    def make(cls, n: int, flats: Iterable[Iterable[int]] = ()) -> "LineConfiguration":
        return cls(n, frozenset(frozenset(f) for f in flats))

    def sorted_flats(self) -> List[Tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.flats)


@dataclass(frozen=True)
class Flat2:
    lines: Tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)

    @property
    def mobius(self) -> int:
        return len(self.lines) - 1


@dataclass(frozen=True)
class BettiProfile:
    b_M: Tuple[int, int, int, int]
    b_U: Tuple[int, int, int]
    chi_U: int
    charpoly: Tuple[int, ...]  # coefficients of t^3, t^2, t, 1


def violations(config: LineConfiguration) -> List[Violation]:
    out: List[Violation] = []
    if config.n < 1:
        out.append(Violation("BadLineCount", (config.n,)))
    owner: Dict[Tuple[int, int], FrozenSet[int]] = {}
    for f in sorted(config.flats, key=lambda f: sorted(f)):
        if len(f) < 3:
            out.append(Violation("FlatTooSmall", tuple(sorted(f))))
        bad = [i for i in f if not (1 <= i <= config.n)]
        if bad:
            out.append(Violation("BadIndex", tuple(sorted(bad))))
        for p in itertools.combinations(sorted(f), 2):
            if p in owner:
                out.append(Violation("DuplicatePair", (p[0], p[1], owner[p], f)))
            else:
                owner[p] = f
    return out


def validate(config: LineConfiguration) -> LineConfiguration:
    """Return ``config`` unchanged if it is a valid configuration, else raise ValidationError."""
    v = violations(config)
    if v:
        raise ValidationError(v)
    return config


def l2_flats(config: LineConfiguration) -> List[Flat2]:
    """All codimension-two flats: the listed multiple points, then the double points.

    Multiple points come in sorted order, double points in lexicographic pair order.
    """
    covered = set()
    out = []
    for f in config.sorted_flats():
        out.append(Flat2(f))
        covered.update(itertools.combinations(f, 2))
    for p in itertools.combinations(range(1, config.n + 1), 2):
        if p not in covered:
            out.append(Flat2(p))
    return out


def mobius_function(config: LineConfiguration) -> Dict[FrozenSet[int], int]:
    """Moebius function on the full intersection poset, keyed by the set of lines containing each flat.

    The ambient space is the empty set, the origin the set of all lines.
    """
    n = config.n
    elems: List[FrozenSet[int]] = [frozenset()]
    elems += [frozenset([i]) for i in range(1, n + 1)]
    l2 = [frozenset(f.lines) for f in l2_flats(config)]
    elems += l2
    top = frozenset(range(1, n + 1))
    if n >= 2 and top not in elems:
        elems.append(top)
    mu: Dict[FrozenSet[int], int] = {}
    for x in sorted(elems, key=len):
        if not x:
            mu[x] = 1
        else:
            mu[x] = -sum(m for y, m in mu.items() if y < x)
    return mu


def _rank_of(config: LineConfiguration, lines: FrozenSet[int]) -> int:
    if len(lines) == 0:
        return 0
    if len(lines) == 1:
        return 1
    if len(lines) == 2 or any(lines <= f for f in config.flats):
        return 2
    return 3


def char_poly_and_betti(config: LineConfiguration) -> BettiProfile:
    mu = mobius_function(config)
    coeffs = [0, 0, 0, 0]  # index = dim X
    for x, m in mu.items():
        coeffs[3 - _rank_of(config, x)] += m
    charpoly = (coeffs[3], coeffs[2], coeffs[1], coeffs[0])
    b_M = tuple((-1) ** k * coeffs[3 - k] for k in range(4))
    b_U = [b_M[0]]
    for k in (1, 2):
        b_U.append(b_M[k] - b_U[k - 1])
    chi = 1 - b_U[1] + b_U[2]
    return BettiProfile(b_M, tuple(b_U), chi, charpoly)


def b1_milnor_boundary(config: LineConfiguration) -> int:
    """First Betti number of the Milnor fiber boundary from the multiplicities of double and multiple points."""
    _require_nondegenerate(config)
    n = config.n
    return sum(1 + (f.multiplicity - 2) * math.gcd(f.multiplicity, n) for f in l2_flats(config))


def assumption_star(config: LineConfiguration) -> bool:
    """True iff every multiple point has multiplicity 2 or multiplicity coprime to n."""
    n = config.n
    return all((f.multiplicity - 2) * (math.gcd(f.multiplicity, n) - 1) == 0
               for f in l2_flats(config))


def multiplicity_tuple(config: LineConfiguration) -> Tuple[int, ...]:
    """(n_3, ..., n_n): number of multiple points of each multiplicity >= 3."""
    counts = [0] * max(config.n - 2, 0)
    for f in config.flats:
        counts[len(f) - 3] += 1
    return tuple(counts)


def double_point_count(config: LineConfiguration) -> int:
    return sum(1 for f in l2_flats(config) if f.multiplicity == 2)


def _require_nondegenerate(config: LineConfiguration):
    if config.n <= 2:
        raise DegenerateArrangement(f"need at least 3 lines, got n={config.n}")


# ---- catalog --------------------------------------------------------------

def find_83_configuration() -> List[Tuple[int, int, int]]:
    """Exhaustive search for an 8_3 configuration (lexicographically first).

    8 lines, 8 triples, each line on exactly 3 triples, each pair of lines in
    at most one triple.
    """
    triples = list(itertools.combinations(range(1, 9), 3))
    chosen: List[Tuple[int, int, int]] = []
    degree = [0] * 9
    used_pairs = set()

    def search(start: int) -> bool:
        if len(chosen) == 8:
            return all(d == 3 for d in degree[1:])
        # triples come in lex order, so once t[0] passes the smallest unfinished
        # line that line can never be completed
        need = next(i for i in range(1, 9) if degree[i] < 3)
        for k in range(start, len(triples)):
            t = triples[k]
            if t[0] > need:
                break
            pairs = list(itertools.combinations(t, 2))
            if any(degree[i] >= 3 for i in t) or any(p in used_pairs for p in pairs):
                continue
            chosen.append(t)
            used_pairs.update(pairs)
            for i in t:
                degree[i] += 1
            if search(k + 1):
                return True
            chosen.pop()
            used_pairs.difference_update(pairs)
            for i in t:
                degree[i] -= 1
        return False

    if not search(0):  # pragma: no cover - the configuration exists
        raise RuntimeError("no 8_3 configuration found")
    return list(chosen)


DATA_DIR = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def maclane() -> LineConfiguration:
    """The 8_3 (MacLane) configuration, read from the generated fixture."""
    fixture = DATA_DIR / "maclane.arr"
    if fixture.exists():
        return read_arr(fixture)
    return validate(LineConfiguration.make(8, find_83_configuration()))


def catalog(name: str, *params) -> LineConfiguration:
    """Named configurations: generic(n), pencil(n), near_pencil(n), maclane, with_concurrencies(n, flats)."""
    if name == "generic":
        (n,) = params
        return validate(LineConfiguration.make(int(n)))
    if name == "pencil":
        (n,) = params
        return validate(LineConfiguration.make(int(n), [range(1, int(n) + 1)] if int(n) >= 3 else []))
    if name == "near_pencil":
        (n,) = params
        n = int(n)
        return validate(LineConfiguration.make(n, [range(1, n)] if n >= 4 else []))
    if name == "maclane":
        if params:
            raise NoSuchCatalogEntry("maclane takes no parameters")
        return maclane()
    if name == "with_concurrencies":
        n, flats = params
        return validate(LineConfiguration.make(int(n), flats))
    raise NoSuchCatalogEntry(name)


def parse_catalog_spec(spec: str) -> LineConfiguration:
    """Parse ``name:params`` as used on the command line.

    Examples: ``generic:8``, ``maclane``, ``with_concurrencies:8:1,2,3;1,4,5``.
    """
    name, _, rest = spec.partition(":")
    name = name.replace("-", "_")
    if name == "with_concurrencies":
        n, _, flat_str = rest.partition(":")
        flats = [[int(i) for i in f.split(",")] for f in flat_str.split(";") if f.strip()]
        return catalog(name, int(n), flats)
    if name == "maclane":
        return catalog(name)
    if not rest:
        raise NoSuchCatalogEntry(f"{name} needs a parameter, e.g. {name}:8")
    try:
        n = int(rest)
    except ValueError:
        raise NoSuchCatalogEntry(spec) from None
    return catalog(name, n)


# ---- .arr text format ------------------------------------------------------

def parse_arr(text: str) -> Tuple[LineConfiguration, Dict[str, str]]:
    """Parse the ``.arr`` format.  Returns the validated configuration and
    any ``#! key value`` annotations."""
    n: Optional[int] = None
    flats: List[List[int]] = []
    flat_line: Dict[FrozenSet[int], int] = {}
    notes: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if stripped.startswith("#!"):
            key, _, val = stripped[2:].strip().partition(" ")
            notes[key] = val.strip()
            continue
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] == "n":
            if n is not None:
                raise ParseError(lineno, "repeated 'n' directive")
            if len(line) != 2:
                raise ParseError(lineno, "expected 'n <integer>'")
            try:
                n = int(line[1])
            except ValueError:
                raise ParseError(lineno, f"not an integer: {line[1]!r}") from None
        elif line[0] == "flat":
            if n is None:
                raise ParseError(lineno, "'flat' before 'n'")
            try:
                idx = [int(t) for t in line[1:]]
            except ValueError:
                raise ParseError(lineno, "flat indices must be integers") from None
            if len(set(idx)) != len(idx):
                raise ParseError(lineno, "repeated index in flat")
            if len(idx) < 3:
                raise ParseError(lineno, f"FlatTooSmall: {idx}")
            if frozenset(idx) in {frozenset(f) for f in flats}:
                raise ParseError(lineno, f"duplicate flat {sorted(idx)}")
            flats.append(idx)
            flat_line[frozenset(idx)] = lineno
        else:
            raise ParseError(lineno, f"unknown directive {line[0]!r}")
    if n is None:
        raise ParseError(0, "missing 'n' directive")
    config = LineConfiguration.make(n, flats)
    found = violations(config)
    if found:
        where = []
        for v in found:
            f = v.detail[3] if v.kind == "DuplicatePair" else frozenset(v.detail)
            where.append(f"line {flat_line[f]}" if f in flat_line else "input")
        raise ValidationError(found, where)
    return config, notes


def read_arr(path) -> LineConfiguration:
    return parse_arr(Path(path).read_text(encoding="utf-8"))[0]


def write_arr(config: LineConfiguration) -> str:
    lines = [f"n {config.n}"]
    lines += ["flat " + " ".join(map(str, f)) for f in config.sorted_flats()]
    return "\n".join(lines) + "\n"
