"""Finite group presentations.

Words are tuples of nonzero ints: ``k`` is the k-th generator (1-based) and
``-k`` its inverse.  Labels are free-form strings without whitespace or '^'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .snf import AbelianGroupDesc, smith_normal_form

Word = Tuple[int, ...]


class PresentationError(ValueError):
    pass


def free_reduce(word: Iterable[int]) -> Word:
    out: List[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def commutator(a: int, b: int) -> Word:
    return (a, b, -a, -b)


@dataclass(frozen=True)
class GroupPresentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator labels")
        for lab in self.generators:
            if not lab or any(ch.isspace() for ch in lab) or "^" in lab:
                raise PresentationError(f"bad generator label {lab!r}")
        g = len(self.generators)
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > g:
                    raise PresentationError(f"relator {r} references undeclared generator {x}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, label: str) -> int:
        """1-based index of a generator label."""
        return self.generators.index(label) + 1

    def relation_matrix(self) -> List[Dict[int, int]]:
        """Exponent-sum rows (sparse, 0-based columns), one per relator."""
        rows = []
        for r in self.relators:
            row: Dict[int, int] = {}
            for x in r:
                c = abs(x) - 1
                row[c] = row.get(c, 0) + (1 if x > 0 else -1)
            rows.append({c: v for c, v in row.items() if v})
        return rows

    def abelianization(self) -> AbelianGroupDesc:
        return smith_normal_form(self.relation_matrix(), ncols=self.ngens).cokernel()

    def euler_characteristic(self) -> int:
        """Euler characteristic of the presentation 2-complex."""
        return 1 - self.ngens + len(self.relators)

    # ---- text format ------------------------------------------------------

    def word_to_str(self, word: Sequence[int]) -> str:
        return " ".join(f"{self.generators[abs(x) - 1]}^{1 if x > 0 else -1}" for x in word)

    def to_text(self) -> str:
        lines = [f"gen {g}" for g in self.generators]
        lines += [("rel " + self.word_to_str(r)).rstrip() for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupPresentation":
        gens: List[str] = []
        raw_rels: List[List[str]] = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "gen":
                gens.append(rest.strip())
            elif head == "rel":
                raw_rels.append(rest.split())
            else:
                raise PresentationError(f"line {lineno}: unknown directive {head!r}")
        lookup = {g: i + 1 for i, g in enumerate(gens)}
        rels = []
        for toks in raw_rels:
            word = []
            for tok in toks:
                lab, sep, exp = tok.rpartition("^")
                if not sep:
                    lab, exp = tok, "1"
                if lab not in lookup:
                    raise PresentationError(f"undeclared generator {lab!r}")
                e = int(exp)
                if e == 0:
                    continue
                word.extend([lookup[lab] if e > 0 else -lookup[lab]] * abs(e))
            rels.append(tuple(word))
        return cls(tuple(gens), tuple(rels))

    # ---- Tietze moves -----------------------------------------------------

    def simplify(self, protected: Iterable[str] = (), max_len: int = 4
                 ) -> Tuple["GroupPresentation", Dict[str, Word]]:
        """Eliminate generators occurring exactly once in a short relator.

        Returns the simplified presentation and, for every eliminated label,
        its expression as a word in the *original* generator indices.
        Protected labels are never eliminated.
        """
        keep = set(protected)
        rels = [cyclic_reduce(r) for r in self.relators]
        rels = [r for r in rels if r]
        defs: Dict[int, Word] = {}
        changed = True
        while changed:
            changed = False
            rels.sort(key=len)
            for k, r in enumerate(rels):
                if len(r) > max_len:
                    break
                counts: Dict[int, int] = {}
                for x in r:
                    counts[abs(x)] = counts.get(abs(x), 0) + 1
                g = next((a for a in r if counts[abs(a)] == 1
                          and self.generators[abs(a) - 1] not in keep), None)
                if g is None:
                    continue
                # r = u g v  =>  g = u^-1 v^-1 ; with g^-1: g = v u
                i = r.index(g)
                u, v = r[:i], r[i + 1:]
                expr = free_reduce(inverse(u) + inverse(v)) if g > 0 else free_reduce(v + u)
                gi = abs(g)
                defs = {h: _substitute(w, gi, expr) for h, w in defs.items()}
                defs[gi] = expr
                new = []
                for j, s in enumerate(rels):
                    if j == k:
                        continue
                    s = cyclic_reduce(_substitute(s, gi, expr))
                    if s:
                        new.append(s)
                rels = new
                changed = True
                break
        survivors = [i + 1 for i in range(self.ngens) if i + 1 not in defs]
        renum = {old: new for new, old in enumerate(survivors, 1)}
        out_rels = tuple(tuple(renum[abs(x)] * (1 if x > 0 else -1) for x in r)
                         for r in _dedupe(rels))
        pres = GroupPresentation(tuple(self.generators[i - 1] for i in survivors), out_rels)
        return pres, {self.generators[g - 1]: w for g, w in defs.items()}


def _substitute(word: Sequence[int], gen: int, expr: Word) -> Word:
    out: List[int] = []
    inv = inverse(expr)
    for x in word:
        if x == gen:
            out.extend(expr)
        elif x == -gen:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def _dedupe(rels: List[Word]) -> List[Word]:
    seen = set()
    out = []
    for r in rels:
        key = min(r, inverse(r))
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def evaluate(word: Sequence[int], values: Sequence[int], modulus: Optional[int] = None) -> int:
    """Exponent-sum evaluation of a word under an additive character."""
    s = 0
    for x in word:
        s += values[abs(x) - 1] if x > 0 else -values[abs(x) - 1]
    return s % modulus if modulus else s
