"""Published torsion of H_1 of the Milnor fiber boundary for eight lines.

Keyed by the multiplicity tuple (n_3, ..., n_8).  Torsion is given as
{order: count}; ``star`` records whether the row satisfies the coprimality
assumption; ``chi`` is the tabulated Euler characteristic of U.
"""

from __future__ import annotations

import re
from typing import Dict, NamedTuple, Optional, Tuple

from .snf import AbelianGroupDesc


class Row(NamedTuple):
    tuple: Tuple[int, ...]
    torsion: Dict[int, int]
    chi: int
    star: bool
    remark: str = ""


ROWS = [
    Row((0, 0, 0, 0, 0, 1), {}, 0, False, "Pencil case"),
    Row((0, 0, 0, 0, 1, 0), {}, 0, True, "Near-pencil case"),
    Row((1, 0, 0, 1, 0, 0), {4: 4}, 4, False),
    Row((0, 0, 0, 1, 0, 0), {4: 4, 8: 1}, 5, False),
    Row((6, 1, 0, 0, 0, 0), {2: 2, 8: 4}, 6, False),
    Row((3, 2, 0, 0, 0, 0), {2: 4, 8: 2}, 6, False),
    Row((3, 0, 1, 0, 0, 0), {8: 6}, 6, True),
    Row((0, 1, 1, 0, 0, 0), {2: 2, 8: 4}, 6, False),
    Row((8, 0, 0, 0, 0, 0), {8: 7}, 7, True, "MacLane arrangement"),
    Row((5, 1, 0, 0, 0, 0), {2: 2, 8: 5}, 7, False),
    Row((2, 2, 0, 0, 0, 0), {2: 4, 8: 3}, 7, False),
    Row((2, 0, 1, 0, 0, 0), {8: 7}, 7, True),
    Row((7, 0, 0, 0, 0, 0), {8: 8}, 8, True),
    Row((4, 1, 0, 0, 0, 0), {2: 2, 8: 6}, 8, False),
    Row((1, 2, 0, 0, 0, 0), {2: 4, 8: 4}, 8, False),
    Row((1, 0, 1, 0, 0, 0), {8: 8}, 8, True),
    Row((6, 0, 0, 0, 0, 0), {8: 9}, 9, True),
    Row((3, 1, 0, 0, 0, 0), {2: 2, 8: 7}, 9, False),
    Row((0, 2, 0, 0, 0, 0), {2: 4, 8: 5}, 9, False),
    Row((0, 0, 1, 0, 0, 0), {8: 9}, 9, True),
    Row((5, 0, 0, 0, 0, 0), {8: 10}, 10, True),
    Row((2, 1, 0, 0, 0, 0), {2: 2, 8: 8}, 10, False),
    Row((4, 0, 0, 0, 0, 0), {8: 11}, 11, True),
    Row((1, 1, 0, 0, 0, 0), {2: 2, 8: 9}, 11, False),
    Row((3, 0, 0, 0, 0, 0), {8: 12}, 12, True),
    Row((0, 1, 0, 0, 0, 0), {2: 2, 8: 10}, 12, False),
    Row((2, 0, 0, 0, 0, 0), {8: 13}, 13, True),
    Row((1, 0, 0, 0, 0, 0), {8: 14}, 14, True),
    Row((0, 0, 0, 0, 0, 0), {8: 15}, 15, True, "Generic arrangement"),
]

BY_TUPLE = {r.tuple: r for r in ROWS}


def lookup(mult_tuple) -> Optional[Row]:
    return BY_TUPLE.get(tuple(mult_tuple))


def torsion_of(counts: Dict[int, int]) -> Tuple[int, ...]:
    return tuple(d for d in sorted(counts) for _ in range(counts[d]))


_TERM = re.compile(r"^Z_(\d+)(?:\^(\d+))?$")


def parse_torsion(text: str) -> Tuple[int, ...]:
    """Parse ``Z_4^4 + Z_8`` (or ``0``) into an ordered torsion tuple."""
    text = text.strip()
    if text in ("0", ""):
        return ()
    counts: Dict[int, int] = {}
    for term in text.split("+"):
        mt = _TERM.match(term.strip())
        if not mt:
            raise ValueError(f"cannot parse torsion term {term!r}")
        d, k = int(mt.group(1)), int(mt.group(2) or 1)
        counts[d] = counts.get(d, 0) + k
    return torsion_of(counts)


def format_torsion(torsion: Tuple[int, ...]) -> str:
    return AbelianGroupDesc(0, tuple(torsion)).torsion_str()
