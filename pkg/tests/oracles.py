"""Independent combinatorial oracles used by the test suite.

These are computed by enumeration or closed recursions, never through the
code paths they check.
"""

import itertools
from functools import lru_cache


def we_colored_counts(colors: int, max_degree: int) -> dict:
    """Dimensions of the free commutative magmatic algebra on `colors`
    generators: commutative (unordered) binary trees with colored leaves.

    c_1 = colors; c_d = sum_{i < d-i} c_i c_{d-i} + C(c_{d/2} + 1, 2) for even d.
    """
    c = {1: colors}
    for d in range(2, max_degree + 1):
        total = sum(c[i] * c[d - i] for i in range(1, (d - 1) // 2 + 1))
        if d % 2 == 0:
            half = c[d // 2]
            total += half * (half + 1) // 2
        c[d] = total
    return c


def enumerate_commutative_trees(colors: int, degree: int) -> int:
    """Direct enumeration: canonical forms of fully commutative binary trees."""

    @lru_cache(maxsize=None)
    def trees(d):
        if d == 1:
            return frozenset(("leaf", i) for i in range(colors))
        out = set()
        for i in range(1, d):
            for l in trees(i):
                for r in trees(d - i):
                    pair = tuple(sorted((l, r), key=repr))
                    out.add(("node",) + pair)
        return frozenset(out)

    return len(trees(degree))


def enumerate_pairswap_trees(colors: int, degree: int) -> int:
    """Trees modulo swapping children only at nodes whose children are both
    leaves: the graded model of K{V} / <xy - yx : x, y generators>."""

    @lru_cache(maxsize=None)
    def trees(d):
        if d == 1:
            return frozenset(("leaf", i) for i in range(colors))
        out = set()
        for i in range(1, d):
            for l in trees(i):
                for r in trees(d - i):
                    if l[0] == "leaf" and r[0] == "leaf":
                        pair = tuple(sorted((l, r), key=repr))
                        out.add(("node",) + pair)
                    else:
                        out.add(("node", l, r))
        return frozenset(out)

    return len(trees(degree))


def all_binary_monomials(generators, degree):
    """All product trees of the exact degree over the generator alphabet."""
    from homforge.expr import Leaf, Node

    @lru_cache(maxsize=None)
    def shapes(n):
        if n == 1:
            return (None,)
        out = []
        for k in range(1, n):
            for l in shapes(k):
                for r in shapes(n - k):
                    out.append((l, r))
        return tuple(out)

    def build(shape, it):
        if shape is None:
            return Leaf(next(it), 0)
        return Node("mu", (build(shape[0], it), build(shape[1], it)))

    out = []
    for shape in shapes(degree):
        for bases in itertools.product(generators, repeat=degree):
            out.append(build(shape, iter(bases)))
    return out
