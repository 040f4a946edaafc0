"""Exact rational row reduction over sparse dict-keyed rows.

Rows are dicts mapping arbitrary hashable column keys to rational
coefficients. A RowSpace keeps an echelonized basis (one pivot per row,
pivots eliminated everywhere else), which is all the kernel/membership
machinery the bounded quotients need.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

from .rationals import ONE, ZERO

Row = Dict[Hashable, object]


class RowSpace:
    """Span of sparse rows with incremental reduction.

    key orders columns; the pivot of a row is its maximal column under key.
    """

    def __init__(self, key: Optional[Callable] = None):
        self.key = key
        self.rows: Dict[Hashable, Row] = {}  # pivot -> normalized row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: Row) -> Row:
        """Reduce row against the span; returns the residual (a new dict)."""
        out = {k: c for k, c in row.items() if c != 0}
        changed = True
        while changed:
            changed = False
            for piv in list(out):
                base = self.rows.get(piv)
                if base is None:
                    continue
                c = out[piv]
                for k, bc in base.items():
                    s = out.get(k, ZERO) - c * bc
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
                changed = True
        return out

    def add(self, row: Row) -> Row:
        """Insert a row; returns the residual (zero dict if dependent)."""
        res = self.reduce(row)
        if not res:
            return res
        piv = max(res, key=self.key) if self.key else max(res)
        inv = ONE / res[piv]
        norm = {k: c * inv for k, c in res.items()}
        # eliminate the new pivot from stored rows
        for other_piv, other in list(self.rows.items()):
            c = other.get(piv)
            if c:
                for k, bc in norm.items():
                    s = other.get(k, ZERO) - c * bc
                    if s == 0:
                        other.pop(k, None)
                    else:
                        other[k] = s
        self.rows[piv] = norm
        return res

    def add_all(self, rows: Iterable[Row]) -> None:
        for r in rows:
            self.add(r)

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)

    def pivots(self) -> List[Hashable]:
        return list(self.rows)


def kernel(
    vectors: List[Row], key: Optional[Callable] = None
) -> List[Tuple[object, ...]]:
    """Kernel of the linear map sending unit vector i to vectors[i].

    Returns coefficient tuples c with sum_i c_i vectors[i] = 0, echelonized.
    Implemented by reducing rows augmented with bookkeeping coordinates.
    """
    aux = object()  # unique tag so bookkeeping columns cannot collide
    if key is None:
        main_key = lambda k: (0, k)
    else:
        main_key = lambda k: (0, key(k))

    def full_key(k):
        if isinstance(k, tuple) and len(k) == 2 and k[0] is aux:
            return (-1, k[1])
        return main_key(k)

    space = RowSpace(key=full_key)
    out: List[Tuple[object, ...]] = []
    n = len(vectors)
    for i, v in enumerate(vectors):
        row = dict(v)
        row[(aux, i)] = ONE
        res = space.add(row)
        if res and all(isinstance(k, tuple) and len(k) == 2 and k[0] is aux for k in res):
            coeffs = [ZERO] * n
            for k, c in res.items():
                coeffs[k[1]] = c
            out.append(tuple(coeffs))
    return out
