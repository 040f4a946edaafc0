"""Free Hom-algebras as Hom-bialgebras.

The coproduct here makes generators primitive and is extended as an algebra
morphism into the componentwise tensor product; multiplication by the unit
applies the twisting map, which is what separates this coproduct from the
classical one. Two independent algorithms compute it: the recursive morphism
extension and a direct partition-labeling rule, cross-checked in the tests.

Quotients are degree/exponent bounded: ideal membership inside the bounds is
decided by exact row reduction; a nonzero normal form in a truncated
component is reported as inconclusive, never as a refutation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .expr import (
    MUL,
    Leaf,
    Monomial,
    Node,
    Poly,
    UNIT,
    alpha_mono,
    apply_alpha,
    apply_op,
    degree,
    leaves,
    map_leaves,
    mono_key,
    mul,
    mul_mono,
)
from .fdalg import AlgebraSpec, Matrix, OpFamily, Vector, matrix, nonzeros
from .linalg import RowSpace, kernel
from .qops import QSolver
from .rationals import ONE, ZERO, rat


class BoundsError(ValueError):
    """An element does not fit inside the quotient's degree/exponent bounds."""


# ---------------------------------------------------------------------------
# Tensor elements and the coproduct


class TensorElement:
    """Rational combination of ordered pairs of monomials (an element of B (x) B)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[Monomial, Monomial], object]] = None):
        if terms is None:
            terms = {}
        self.terms = {k: c for k, c in terms.items() if c != 0}

    @staticmethod
    def zero() -> "TensorElement":
        return TensorElement()

    @staticmethod
    def pair(a: Monomial, b: Monomial, c=ONE) -> "TensorElement":
        return TensorElement({(a, b): rat(c)})

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return TensorElement(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + other.scaled(-ONE)

    def scaled(self, c) -> "TensorElement":
        return TensorElement({k: c * v for k, v in self.terms.items()})

    def product(self, other: "TensorElement", op: str = MUL) -> "TensorElement":
        out: Dict[Tuple[Monomial, Monomial], object] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                key = (mul_mono(l1, l2, op), mul_mono(r1, r2, op))
                s = out.get(key, ZERO) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return TensorElement(out)

    def swap(self) -> "TensorElement":
        return TensorElement({(b, a): c for (a, b), c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __repr__(self) -> str:
        from .expr import render_mono
        from .rationals import rat_str

        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(
            self.terms.items(), key=lambda kv: (mono_key(kv[0][0]), mono_key(kv[0][1]))
        ):
            coeff = "" if c == 1 else f"{rat_str(c)}*"
            bits.append(f"{coeff}{render_mono(a)}(x){render_mono(b)}")
        return " + ".join(bits)


def delta(m: Monomial) -> TensorElement:
    """Recursive coproduct: unit grouplike, decorated generators primitive,
    extended through binary products componentwise."""
    if m is UNIT:
        return TensorElement.pair(UNIT, UNIT)
    if isinstance(m, Leaf):
        return TensorElement.pair(UNIT, m) + TensorElement.pair(m, UNIT)
    if len(m.args) != 2:
        raise ValueError("the coproduct is defined for binary products only")
    return delta(m.args[0]).product(delta(m.args[1]), m.op)


def delta_poly(p: Poly) -> TensorElement:
    out = TensorElement.zero()
    for m, c in p.terms.items():
        out = out + delta(m).scaled(c)
    return out


def counit_mono(m: Monomial):
    return ONE if m is UNIT else ZERO


def counit(p: Poly):
    return p.coeff(UNIT)


def is_primitive(p: Poly) -> bool:
    """Delta(p) = u(1) (x) p + p (x) u(1), exactly."""
    want = TensorElement.zero()
    for m, c in p.terms.items():
        want = want + TensorElement.pair(UNIT, m, c) + TensorElement.pair(m, UNIT, c)
    return delta_poly(p) == want


def _leaf_count(m: Monomial) -> int:
    return degree(m)


def delta_summand(m: Monomial, part1: Iterable[int]) -> Tuple[Monomial, Monomial]:
    """One coproduct summand by the partition-labeling rule.

    part1 is a set of leaf positions (preorder). Leaves get labels +1/-1 by
    the partition; labels propagate toward the root (equal labels survive,
    mixed become 0); each 0-labeled node with a nonzero child applies the
    twisting map to the opposite-label leaves of the other branch. The two
    restricted monomials are returned, with an empty part giving the unit.
    """
    n = _leaf_count(m)
    part1 = frozenset(part1)
    if not part1 <= frozenset(range(n)):
        raise ValueError(f"part1 must be a subset of leaf positions 0..{n - 1}")
    extra: Dict[int, int] = {}
    counter = itertools.count()

    def label(t: Monomial) -> Tuple[int, List[Tuple[int, int]]]:
        # returns (node label, [(leaf position, leaf label)])
        if t is UNIT:
            raise ValueError("partition labeling applies to unit-free monomials")
        if isinstance(t, Leaf):
            pos = next(counter)
            l = 1 if pos in part1 else -1
            return l, [(pos, l)]
        if len(t.args) != 2:
            raise ValueError("partition labeling applies to binary products only")
        la, lva = label(t.args[0])
        lb, lvb = label(t.args[1])
        mine = la if la == lb else 0
        if mine == 0:
            for lc, other in ((la, lvb), (lb, lva)):
                if lc != 0:
                    for pos, ll in other:
                        if ll == -lc:
                            extra[pos] = extra.get(pos, 0) + 1
        return mine, lva + lvb

    label(m)

    def restrict(t: Monomial, keep_label: int, counter2) -> Optional[Monomial]:
        if isinstance(t, Leaf):
            pos = next(counter2)
            mylabel = 1 if pos in part1 else -1
            if mylabel != keep_label:
                return None
            return Leaf(t.base, t.exp + extra.get(pos, 0))
        parts = []
        for a in t.args:
            r = restrict(a, keep_label, counter2)
            if r is not None:
                parts.append(r)
        if not parts:
            return None
        if len(parts) == 1:
            return parts[0]
        return Node(t.op, tuple(parts))

    left = restrict(m, 1, itertools.count())
    right = restrict(m, -1, itertools.count())
    return (left if left is not None else UNIT, right if right is not None else UNIT)


def delta_by_partitions(m: Monomial) -> TensorElement:
    """The coproduct as the sum of delta_summand over all ordered partitions."""
    n = _leaf_count(m)
    out: Dict[Tuple[Monomial, Monomial], object] = {}
    for mask in range(1 << n):
        part1 = frozenset(i for i in range(n) if mask >> i & 1)
        key = delta_summand(m, part1)
        out[key] = out.get(key, ZERO) + ONE
    return TensorElement(out)


# ---------------------------------------------------------------------------
# Antipode


def antipode_mono(m: Monomial) -> Tuple[object, Monomial]:
    """S on one monomial: S(g) = -g on generators, S(uv) = S(v)S(u), S(1) = 1."""
    if m is UNIT:
        return ONE, UNIT
    if isinstance(m, Leaf):
        return -ONE, m
    if len(m.args) != 2:
        raise ValueError("the antipode is defined for binary products only")
    sa, ma = antipode_mono(m.args[0])
    sb, mb = antipode_mono(m.args[1])
    return sa * sb, mul_mono(mb, ma, m.op)


def antipode(p: Poly) -> Poly:
    out: Dict[Monomial, object] = {}
    for m, c in p.terms.items():
        s, mm = antipode_mono(m)
        out[mm] = out.get(mm, ZERO) + s * c
    return Poly(out)


def antipode_defect(m: Monomial) -> Poly:
    """alpha( sum u_(1) S(u_(2)) - u(eps(u)) ), the element that must die in
    the free Hom-associative quotient."""
    total = Poly.zero()
    for (m1, m2), c in delta(m).terms.items():
        total = total + mul(Poly.monomial(m1), antipode(Poly.monomial(m2))).scaled(c)
    total = total - Poly.unit(counit_mono(m))
    return apply_alpha(total, 1)


# ---------------------------------------------------------------------------
# The bounded free Hom-associative quotient
#
# Relations alpha(a)(bc) - (ab)alpha(c) preserve, leaf by leaf, the quantity
# exponent + depth. The relation span therefore decomposes over the multiset
# of (generator, exponent + depth) pairs, and each graded component is a
# small space of tree shapes that can be row-reduced exactly.


def _leaf_depths(m: Monomial, depth: int = 0) -> List[Tuple[Leaf, int]]:
    if m is UNIT:
        return []
    if isinstance(m, Leaf):
        return [(m, depth)]
    out: List[Tuple[Leaf, int]] = []
    for a in m.args:
        out.extend(_leaf_depths(a, depth + 1))
    return out


def phi_signature(m: Monomial) -> Tuple[Tuple[str, int], ...]:
    return tuple(sorted((l.base, l.exp + d) for l, d in _leaf_depths(m)))


def _dec_mono(m: Monomial) -> Monomial:
    return map_leaves(m, lambda l: Leaf(l.base, l.exp - 1))


def _min_exp(m: Monomial) -> int:
    return min(l.exp for l in leaves(m))


def _tree_shapes(n: int, _cache={}) -> List:
    """All binary tree shapes with n leaves; a shape is None or (left, right)."""
    if n in _cache:
        return _cache[n]
    if n == 1:
        out = [None]
    else:
        out = []
        for k in range(1, n):
            for ls in _tree_shapes(k):
                for rs in _tree_shapes(n - k):
                    out.append((ls, rs))
    _cache[n] = out
    return out


def _shape_depths(shape, depth=0) -> List[int]:
    if shape is None:
        return [depth]
    return _shape_depths(shape[0], depth + 1) + _shape_depths(shape[1], depth + 1)


def _build_from_shape(shape, leaves_iter) -> Monomial:
    if shape is None:
        return next(leaves_iter)
    return Node(
        MUL, (_build_from_shape(shape[0], leaves_iter), _build_from_shape(shape[1], leaves_iter))
    )


class _PhiComponent:
    """One (generator, exp + depth) multiset component of the quotient."""

    def __init__(self, signature: Tuple[Tuple[str, int], ...], exp_bound: int):
        self.signature = signature
        self.exp_bound = exp_bound
        self.truncated = False
        self.monomials: List[Monomial] = []
        n = len(signature)
        seen = set()
        for shape in _tree_shapes(n):
            depths = _shape_depths(shape)
            for perm in set(itertools.permutations(signature)):
                ok = True
                lvs = []
                for (base, phi), d in zip(perm, depths):
                    e = phi - d
                    if e < 0:
                        ok = False
                        break
                    if e > exp_bound:
                        self.truncated = True
                        ok = False
                        break
                    lvs.append(Leaf(base, e))
                if not ok:
                    continue
                m = _build_from_shape(shape, iter(lvs))
                if m not in seen:
                    seen.add(m)
                    self.monomials.append(m)
        self.monomials.sort(key=mono_key)
        self.space = RowSpace(key=mono_key)
        self._build_rows(seen)

    def _rewrites(self, m: Monomial) -> List[Monomial]:
        out: List[Monomial] = []

        def walk(t: Monomial, rebuild):
            if not isinstance(t, Node):
                return
            a, b = t.args
            # alpha(A)(BC) -> (AB) alpha(C)
            if isinstance(b, Node) and _min_exp(a) >= 1:
                out.append(
                    rebuild(
                        Node(
                            t.op,
                            (
                                Node(t.op, (_dec_mono(a), b.args[0])),
                                alpha_mono(b.args[1], 1),
                            ),
                        )
                    )
                )
            # (AB) alpha(C) -> alpha(A)(BC)
            if isinstance(a, Node) and _min_exp(b) >= 1:
                out.append(
                    rebuild(
                        Node(
                            t.op,
                            (
                                alpha_mono(a.args[0], 1),
                                Node(t.op, (a.args[1], _dec_mono(b))),
                            ),
                        )
                    )
                )
            walk(a, lambda s: rebuild(Node(t.op, (s, b))))
            walk(b, lambda s: rebuild(Node(t.op, (a, s))))

        walk(m, lambda s: s)
        return out

    def _build_rows(self, members) -> None:
        for m in self.monomials:
            for m2 in self._rewrites(m):
                if m2 in members:
                    self.space.add({m: ONE, m2: -ONE})
                else:
                    # target exceeds the exponent bound
                    self.truncated = True

    @property
    def rank(self) -> int:
        return self.space.rank

    def reduce(self, terms: Dict[Monomial, object]) -> Dict[Monomial, object]:
        return self.space.reduce(terms)


@dataclass
class Reduction:
    normal_form: Poly
    truncated: bool

    def is_zero(self) -> bool:
        return self.normal_form.is_zero()

    @property
    def status(self) -> str:
        if self.is_zero():
            return "zero"
        return "inconclusive" if self.truncated else "nonzero"


class FreeHomAssocQuotient:
    """F_{alpha,ass}(X) truncated to degree <= d and leaf exponents <= E.

    Basis: all binary-product monomials over the generators inside the
    bounds. Relations: every instance of Hom-associativity, closed under
    multiplication by monomials, whose two sides both stay inside the bounds.
    """

    def __init__(self, generators: Sequence[str], degree_bound: int, exp_bound: int):
        if degree_bound < 1 or exp_bound < 0:
            raise BoundsError("need degree >= 1 and exponent bound >= 0")
        self.generators = tuple(generators)
        self.degree_bound = degree_bound
        self.exp_bound = exp_bound
        self._components: Dict[Tuple[Tuple[str, int], ...], _PhiComponent] = {}

    def component(self, signature: Tuple[Tuple[str, int], ...]) -> _PhiComponent:
        comp = self._components.get(signature)
        if comp is None:
            comp = _PhiComponent(signature, self.exp_bound)
            self._components[signature] = comp
        return comp

    def _check_in_bounds(self, m: Monomial) -> None:
        if m is UNIT:
            raise BoundsError("the quotient models the unit-free part")
        if degree(m) > self.degree_bound:
            raise BoundsError(f"monomial degree {degree(m)} exceeds bound {self.degree_bound}")
        for l in leaves(m):
            if l.base not in self.generators:
                raise BoundsError(f"unknown generator {l.base!r}")
            if l.exp > self.exp_bound:
                raise BoundsError(f"exponent {l.exp} exceeds bound {self.exp_bound}")

    def reduce(self, p: Poly) -> Reduction:
        groups: Dict[Tuple[Tuple[str, int], ...], Dict[Monomial, object]] = {}
        unit_part = ZERO
        for m, c in p.terms.items():
            if m is UNIT:
                unit_part = unit_part + c
                continue
            self._check_in_bounds(m)
            groups.setdefault(phi_signature(m), {})[m] = c
        out: Dict[Monomial, object] = {}
        if unit_part != 0:
            out[UNIT] = unit_part
        truncated = False
        for sig, terms in groups.items():
            comp = self.component(sig)
            truncated = truncated or comp.truncated
            for m, c in comp.reduce(terms).items():
                out[m] = out.get(m, ZERO) + c
        return Reduction(Poly(out), truncated)

    def nf(self, p: Poly) -> Poly:
        return self.reduce(p).normal_form

    def is_zero_in_quotient(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def monomials_of_degree(self, n: int) -> List[Monomial]:
        out = []
        for shape in _tree_shapes(n):
            for bases in itertools.product(self.generators, repeat=n):
                for exps in itertools.product(range(self.exp_bound + 1), repeat=n):
                    lvs = [Leaf(b, e) for b, e in zip(bases, exps)]
                    out.append(_build_from_shape(shape, iter(lvs)))
        return out

    def degree_report(self, n: int) -> Tuple[int, int]:
        """(quotient dimension, relation rank) of the degree-n piece."""
        signatures = set()
        count = 0
        for m in self.monomials_of_degree(n):
            signatures.add(phi_signature(m))
            count += 1
        rank = sum(self.component(sig).rank for sig in signatures)
        return count - rank, rank

    def report(self, degrees: Iterable[int]) -> Dict[int, Tuple[int, int]]:
        return {n: self.degree_report(n) for n in degrees}


@dataclass
class AntipodeResult:
    word: str
    status: str  # "pass" | "fail" | "inconclusive"
    degree_bound: int
    exp_bound: int
    normal_form: Poly

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        from .expr import render_poly

        return {
            "word": self.word,
            "status": self.status,
            "bounds": {"degree": self.degree_bound, "exp": self.exp_bound},
            "normal_form": render_poly(self.normal_form),
        }


def check_antipode(
    m: Monomial,
    quotient: Optional[FreeHomAssocQuotient] = None,
    degree_bound: Optional[int] = None,
    exp_bound: Optional[int] = None,
) -> AntipodeResult:
    """Reduce alpha(sum u_(1) S(u_(2)) - u(eps(u))) in the bounded quotient.

    Default bounds: degree = |u| and exponent = 2|u|, twice the margin the
    worked low-degree computations ever need.
    """
    from .expr import render_mono

    d = degree(m)
    if quotient is None:
        degree_bound = degree_bound if degree_bound is not None else max(d, 1)
        exp_bound = exp_bound if exp_bound is not None else 2 * max(d, 1)
        gens = sorted({l.base for l in leaves(m)}) or ["x"]
        quotient = FreeHomAssocQuotient(gens, degree_bound, exp_bound)
    defect = antipode_defect(m)
    try:
        red = quotient.reduce(defect)
    except BoundsError:
        return AntipodeResult(
            render_mono(m, top=True),
            "inconclusive",
            quotient.degree_bound,
            quotient.exp_bound,
            defect,
        )
    if red.is_zero():
        status = "pass"
    elif red.truncated:
        status = "inconclusive"
    else:
        status = "fail"
    return AntipodeResult(
        render_mono(m, top=True),
        status,
        quotient.degree_bound,
        quotient.exp_bound,
        red.normal_form,
    )


def alpha_injectivity_probe(
    generators: Sequence[str], max_degree: int, exp_bound: int
) -> Dict[int, bool]:
    """Finite sections of injectivity of the twisting map on F_{alpha,ass}.

    For each degree n: whenever alpha(p) lies in the bounded relation span,
    check that p already does. Returns {degree: section passed}.
    """
    quotient = FreeHomAssocQuotient(generators, max_degree, exp_bound + 1)
    inner = FreeHomAssocQuotient(generators, max_degree, exp_bound)
    out: Dict[int, bool] = {}
    for n in range(1, max_degree + 1):
        monos = inner.monomials_of_degree(n)
        images = [dict(quotient.nf(apply_alpha(Poly.monomial(m), 1)).terms) for m in monos]
        ok = True
        for combo in kernel(images, key=mono_key):
            p = Poly({m: c for m, c in zip(monos, combo) if c != 0})
            if not inner.reduce(p).is_zero():
                ok = False
                break
        out[n] = ok
    return out


# ---------------------------------------------------------------------------
# Universal enveloping Hom-algebras (truncated)


def expand_exponents(p: Poly, basis: Sequence[str], alpha: Matrix) -> Poly:
    """Rewrite decorated leaves through the matrix: a^k(e_i) expands linearly."""
    helper = AlgebraSpec(len(basis), basis, {}, matrix(alpha))
    index = {b: i for i, b in enumerate(basis)}

    def leaf_poly(l: Leaf) -> Poly:
        if l.exp == 0:
            return Poly.monomial(l)
        v = helper.apply_alpha_vec(helper.basis_vector(index[l.base]), l.exp)
        return Poly({Leaf(basis[j], 0): c for j, c in nonzeros(v)})

    def mono_poly(m: Monomial) -> Poly:
        if m is UNIT:
            return Poly.unit()
        if isinstance(m, Leaf):
            return leaf_poly(m)
        args = [mono_poly(a) for a in m.args]
        return apply_op(m.op, args)

    total = Poly.zero()
    for m, c in p.terms.items():
        total = total + mono_poly(m).scaled(c)
    return total


def _vector_poly(v: Vector, basis: Sequence[str]) -> Poly:
    return Poly({Leaf(basis[i], 0): c for i, c in nonzeros(v)})


class FilteredQuotient:
    """K{S} monomials of degree <= d modulo (possibly inhomogeneous) relations.

    Relations are closed under multiplication by monomials within the degree
    bound and row-reduced with a degree-dominant column order, so rows whose
    pivot sits in degree <= k span exactly the computed ideal section there.
    """

    def __init__(self, basis: Sequence[str], relations: Sequence[Poly], degree_bound: int):
        self.basis = tuple(basis)
        self.degree_bound = degree_bound
        self._monos: Dict[int, List[Monomial]] = {}
        for n in range(1, degree_bound + 1):
            out = []
            for shape in _tree_shapes(n):
                for bases in itertools.product(self.basis, repeat=n):
                    lvs = [Leaf(b, 0) for b in bases]
                    out.append(_build_from_shape(shape, iter(lvs)))
            self._monos[n] = out
        rows = self._closure([r for r in relations if not r.is_zero()])
        self.space = RowSpace(key=mono_key)
        for r in rows:
            self.space.add(dict(r.terms))

    def _closure(self, relations: Sequence[Poly]) -> List[Poly]:
        seen = set()
        work = list(relations)
        out: List[Poly] = []
        while work:
            r = work.pop()
            key = frozenset(r.terms.items())
            if key in seen or not key:
                continue
            seen.add(key)
            out.append(r)
            lead = r.degree()
            for n in range(1, self.degree_bound - lead + 1):
                for m in self._monos[n]:
                    pm = Poly.monomial(m)
                    work.append(mul(pm, r))
                    work.append(mul(r, pm))
        return out

    def monomials_of_degree(self, n: int) -> List[Monomial]:
        return list(self._monos[n])

    def nf(self, p: Poly) -> Poly:
        for m in p.terms:
            if degree(m) > self.degree_bound:
                raise BoundsError("element exceeds the degree bound")
        return Poly(self.space.reduce(dict(p.terms)))

    def is_zero_in_quotient(self, p: Poly) -> bool:
        return self.nf(p).is_zero()

    def filtration_dim(self, k: int) -> int:
        total = sum(len(self._monos[n]) for n in range(1, k + 1))
        cut = sum(1 for piv in self.space.pivots() if degree(piv) <= k)
        return total - cut

    def graded_dims(self, max_degree: Optional[int] = None) -> Dict[int, int]:
        top = max_degree or self.degree_bound
        dims = {}
        prev = 0
        for k in range(1, top + 1):
            cur = self.filtration_dim(k)
            dims[k] = cur - prev
            prev = cur
        return dims

    def report(self, degrees: Optional[Iterable[int]] = None) -> Dict[int, Tuple[int, int]]:
        degs = list(degrees) if degrees is not None else list(range(1, self.degree_bound + 1))
        graded = self.graded_dims(max(degs))
        ranks = {k: 0 for k in degs}
        for piv in self.space.pivots():
            d = degree(piv)
            if d in ranks:
                ranks[d] += 1
        return {k: (graded[k], ranks[k]) for k in degs}


def u_hom_relations(fam: OpFamily, alpha: Matrix, degree_bound: int) -> List[Poly]:
    """Generators of the enveloping ideal, as elements of K{S}.

    Three families: <u;a,b> + q(u,a,b) - q(u,b,a) for nonempty basis words u,
    [a,b] + <a,b> with [a,b] the free commutator, and Phi(u,v) minus the
    symmetrized q-average wherever Phi tables exist.
    """
    basis = fam.basis
    dim = fam.dim
    solver = QSolver()
    sym_cache: Dict[Tuple[int, int], Poly] = {}

    def q_free(u_idx: Tuple[int, ...], v_idx: Tuple[int, ...], z_idx: int) -> Poly:
        n, m = len(u_idx), len(v_idx)
        shape = (n, m)
        if shape not in sym_cache:
            u = tuple(f"u{i}" for i in range(n))
            v = tuple(f"v{j}" for j in range(m))
            sym_cache[shape] = solver.q(u, v, "zz")
        template = sym_cache[shape]
        mapping = {f"u{i}": basis[u_idx[i]] for i in range(n)}
        mapping.update({f"v{j}": basis[v_idx[j]] for j in range(m)})
        mapping["zz"] = basis[z_idx]
        renamed = Poly(
            {
                map_leaves(mono, lambda l: Leaf(mapping[l.base], l.exp)): c
                for mono, c in template.terms.items()
            }
        )
        return expand_exponents(renamed, basis, alpha)

    relations: List[Poly] = []
    for a in range(dim):
        for b in range(a, dim):
            r = (
                mul(Poly.gen(basis[a]), Poly.gen(basis[b]))
                - mul(Poly.gen(basis[b]), Poly.gen(basis[a]))
                + _vector_poly(fam.brackets[0].basis_value((a, b)), basis)
            )
            if not r.is_zero():
                relations.append(r)
    for n in range(1, min(fam.cutoff, degree_bound - 2) + 1):
        for word in itertools.product(range(dim), repeat=n):
            for a in range(dim):
                for b in range(a + 1, dim):
                    r = (
                        _vector_poly(
                            fam.brackets[n].basis_value((*word, a, b)), basis
                        )
                        + q_free(word, (a,), b)
                        - q_free(word, (b,), a)
                    )
                    if not r.is_zero():
                        relations.append(r)
    for (n, m), phi_op in fam.phi.items():
        if n + m > degree_bound:
            continue
        for uw in itertools.product(range(dim), repeat=n):
            for vw in itertools.product(range(dim), repeat=m):
                total = Poly.zero()
                for su in itertools.permutations(uw):
                    for sv in itertools.permutations(vw):
                        total = total + q_free(su, sv[:-1], sv[-1])
                r = _vector_poly(phi_op.basis_value((*uw, *vw)), basis) - total.scaled(
                    rat(1, math.factorial(n) * math.factorial(m))
                )
                if not r.is_zero():
                    relations.append(r)
    return relations


def u_hom(fam: OpFamily, alpha: Matrix, degree_bound: int) -> FilteredQuotient:
    """Truncated universal enveloping Hom-algebra of a Sabinin operation family.

    Every bracket relation with word length up to degree_bound - 2 is needed,
    so the family must have been built at least that far.
    """
    if fam.cutoff < degree_bound - 2:
        raise BoundsError(
            f"family cutoff {fam.cutoff} cannot supply bracket relations "
            f"up to degree {degree_bound}; need cutoff >= {degree_bound - 2}"
        )
    return FilteredQuotient(
        fam.basis, u_hom_relations(fam, alpha, degree_bound), degree_bound
    )


def pi_map(quotient: FilteredQuotient, basis_index: int) -> Poly:
    """The unit map pi(s) = nf(s) on a generator."""
    return quotient.nf(Poly.gen(quotient.basis[basis_index]))


# ---------------------------------------------------------------------------
# Bialgebra checks


@dataclass
class BialgebraReport:
    status: str
    checks: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def note(self, name: str, outcome: str) -> None:
        self.checks.append((name, outcome))
        if outcome == "fail":
            self.status = "fail"
        elif outcome == "inconclusive" and self.status == "pass":
            self.status = "inconclusive"

    def to_json(self) -> dict:
        return {"status": self.status, "checks": [list(c) for c in self.checks]}


def check_counit_laws(monomials: Sequence[Monomial]) -> BialgebraReport:
    """Scalar counit laws and the unit-composed form on sample monomials.

    (eps (x) id) Delta = id and (id (x) eps) Delta = id exactly, while
    sum x_(1) u(eps(x_(2))) = sum u(eps(x_(1))) x_(2) = alpha(x).
    """
    report = BialgebraReport(status="pass")
    for m in monomials:
        dm = delta(m)
        left = Poly.zero()
        right = Poly.zero()
        u_left = Poly.zero()
        u_right = Poly.zero()
        for (m1, m2), c in dm.terms.items():
            left = left + Poly.monomial(m2).scaled(c * counit_mono(m1))
            right = right + Poly.monomial(m1).scaled(c * counit_mono(m2))
            if counit_mono(m2) != 0:
                u_left = u_left + mul(
                    Poly.monomial(m1), Poly.unit(counit_mono(m2))
                ).scaled(c)
            if counit_mono(m1) != 0:
                u_right = u_right + mul(
                    Poly.unit(counit_mono(m1)), Poly.monomial(m2)
                ).scaled(c)
        me = Poly.monomial(m)
        scalar_ok = left == me and right == me
        hom_ok = u_left == apply_alpha(me, 1) and u_right == apply_alpha(me, 1)
        from .expr import render_mono

        report.note(f"counit[{render_mono(m, top=True)}]", "pass" if scalar_ok and hom_ok else "fail")
    return report


def check_cocommutative(monomials: Sequence[Monomial]) -> BialgebraReport:
    report = BialgebraReport(status="pass")
    from .expr import render_mono

    for m in monomials:
        dm = delta(m)
        report.note(
            f"cocomm[{render_mono(m, top=True)}]",
            "pass" if dm.swap() == dm else "fail",
        )
    return report


def check_coassociative(monomials: Sequence[Monomial]) -> BialgebraReport:
    """(Delta (x) id) Delta = (id (x) Delta) Delta on sample monomials."""
    report = BialgebraReport(status="pass")
    from .expr import render_mono

    for m in monomials:
        left: Dict[Tuple[Monomial, Monomial, Monomial], object] = {}
        right: Dict[Tuple[Monomial, Monomial, Monomial], object] = {}
        for (m1, m2), c in delta(m).terms.items():
            for (m11, m12), c2 in delta(m1).terms.items():
                key = (m11, m12, m2)
                left[key] = left.get(key, ZERO) + c * c2
            for (m21, m22), c2 in delta(m2).terms.items():
                key = (m1, m21, m22)
                right[key] = right.get(key, ZERO) + c * c2
        left = {k: c for k, c in left.items() if c != 0}
        right = {k: c for k, c in right.items() if c != 0}
        report.note(
            f"coassoc[{render_mono(m, top=True)}]", "pass" if left == right else "fail"
        )
    return report


def check_ideal_coproduct(
    quotient: FilteredQuotient,
    generators: Sequence[Poly],
    basis: Sequence[str],
    alpha: Matrix,
) -> BialgebraReport:
    """Delta(r) in B (x) I + I (x) B for ideal generators r, within bounds.

    Membership is tested through the quotient map on each tensor factor:
    the combination vanishes in (B/I) (x) (B/I) exactly when it lies in
    B (x) I + I (x) B. Coproduct summands carry twisting exponents, which are
    expanded through the matrix before reduction.
    """
    report = BialgebraReport(status="pass")
    for pos, r in enumerate(generators):
        acc: Dict[Tuple[Monomial, Monomial], object] = {}
        try:
            for (m1, m2), c in delta_poly(r).terms.items():
                p1 = expand_exponents(Poly.monomial(m1), basis, alpha)
                p2 = expand_exponents(Poly.monomial(m2), basis, alpha)
                n1 = quotient.nf(_strip_unit(p1))
                n2 = quotient.nf(_strip_unit(p2))
                u1 = p1.coeff(UNIT)
                u2 = p2.coeff(UNIT)
                for mm1, c1 in list(n1.terms.items()) + ([(UNIT, u1)] if u1 != 0 else []):
                    for mm2, c2 in list(n2.terms.items()) + ([(UNIT, u2)] if u2 != 0 else []):
                        key = (mm1, mm2)
                        s = acc.get(key, ZERO) + c * c1 * c2
                        if s == 0:
                            acc.pop(key, None)
                        else:
                            acc[key] = s
        except BoundsError:
            report.note(f"ideal_coproduct[{pos}]", "inconclusive")
            continue
        report.note(f"ideal_coproduct[{pos}]", "pass" if not acc else "fail")
    return report


def _strip_unit(p: Poly) -> Poly:
    return Poly({m: c for m, c in p.terms.items() if m is not UNIT})


def check_bialgebra(
    monomials: Sequence[Monomial] = (),
    quotient: Optional[FilteredQuotient] = None,
    generators: Sequence[Poly] = (),
    basis: Sequence[str] = (),
    alpha: Optional[Matrix] = None,
) -> BialgebraReport:
    """Counit laws, cocommutativity and coassociativity on sample monomials,
    plus Delta(ideal) membership in B (x) I + I (x) B when a quotient is given."""
    report = BialgebraReport(status="pass")
    if monomials:
        for sub in (
            check_counit_laws(monomials),
            check_cocommutative(monomials),
            check_coassociative(monomials),
        ):
            for name, outcome in sub.checks:
                report.note(name, outcome)
    if quotient is not None and generators:
        sub = check_ideal_coproduct(quotient, generators, basis, alpha)
        for name, outcome in sub.checks:
            report.note(name, outcome)
    return report
