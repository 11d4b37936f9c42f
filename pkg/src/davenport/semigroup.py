"""Finite commutative semigroup models.

Four kinds are built here, all sharing one representation:

* ``quotient`` — the multiplicative semigroup of F_p[x]/<f(x)>, elements
  are canonical residues enumerated by little-endian coefficient counting;
* ``cyclic_with_zero`` — a cyclic group of order n written g^0..g^(n-1)
  plus one absorbing element ``inf``;
* ``abelian_group`` — products of cyclic groups, written additively on
  exponent vectors;
* ``product`` — componentwise products of any of the above.

A semigroup owns a deterministic, indexed universe; the operation is
memoized into a full Cayley table when the universe has at most 256
elements and computed on the fly above that. Instances are immutable
after construction, so they can be shared freely.

The semigroup operation is written multiplicatively throughout (``mul``),
matching ring multiplication in the quotient case; for the adjoined-zero
and group kinds "multiplying" g^i and g^j adds exponents.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence as Seq

from .gfpoly import (
    Factorization,
    Poly,
    factor,
    prime_factors,
    validate_prime,
)

TABLE_CAP = 256
ASSOC_EXHAUSTIVE_CAP = 64
ASSOC_SPOT_SAMPLES = 10_000
CENSUS_CAP = 10_000


class HypothesisViolation(ValueError):
    """An operation was asked to assume structure the input does not have."""


class _Infinity:
    """Singleton printed as ``inf``: the absorbing element's value tag."""

    _instance: Optional["_Infinity"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


class FiniteSemigroup:
    """Indexed finite commutative semigroup with optional identity/zero."""

    def __init__(
        self,
        kind: str,
        values: list,
        mul_value: Callable,
        identity_value=None,
        zero_value=None,
        params: Optional[dict] = None,
        factors: Optional[list["FiniteSemigroup"]] = None,
        validate: bool = True,
    ):
        self.kind = kind
        self.values = list(values)
        self.index_of = {v: i for i, v in enumerate(self.values)}
        if len(self.index_of) != len(self.values):
            raise ValueError("universe contains duplicate elements")
        self._mul_value = mul_value
        self.identity = (
            self.index_of[identity_value] if identity_value is not None else None
        )
        self.zero = self.index_of[zero_value] if zero_value is not None else None
        self.params = dict(params or {})
        self.factors = factors
        self.table: Optional[list[list[int]]] = None
        if len(self.values) <= TABLE_CAP:
            self._build_table()
        if validate:
            self._validate_axioms()
        self._unit_cache: Optional[UnitGroup] = None
        self._search_cache = None  # lazily built by davenport search code

    # -- core ------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def op(self, i: int, j: int) -> int:
        """Product of elements by index."""
        if self.table is not None:
            return self.table[i][j]
        return self.index_of[self._mul_value(self.values[i], self.values[j])]

    def mul(self, a, b):
        """Product of elements by value."""
        return self.values[self.op(self.index_of[a], self.index_of[b])]

    def power(self, i: int, k: int) -> int:
        """k-th power by index; k = 0 requires an identity."""
        if k < 0:
            raise ValueError("negative power")
        if k == 0:
            if self.identity is None:
                raise ValueError("power 0 needs an identity element")
            return self.identity
        acc = None
        base = i
        while k:
            if k & 1:
                acc = base if acc is None else self.op(acc, base)
            k >>= 1
            if k:
                base = self.op(base, base)
        return acc

    def _build_table(self):
        n = len(self.values)
        vals = self.values
        idx = self.index_of
        mul = self._mul_value
        table = []
        for i in range(n):
            row = []
            for j in range(i + 1):
                v = mul(vals[i], vals[j])
                k = idx.get(v)
                if k is None:
                    raise ValueError(f"operation escapes the universe: {v!r}")
                row.append(k)
            table.append(row)
        # mirror to full square form; commutativity makes this exact
        full = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                full[i][j] = table[i][j]
                full[j][i] = table[i][j]
        self.table = full

    def _validate_axioms(self):
        n = len(self.values)
        rng = random.Random(0)
        if self.table is None:
            for _ in range(ASSOC_SPOT_SAMPLES // 10):
                i, j = rng.randrange(n), rng.randrange(n)
                if self.op(i, j) != self.op(j, i):
                    raise ValueError("operation is not commutative")
        if n <= ASSOC_EXHAUSTIVE_CAP and self.table is not None:
            t = self.table
            rng_n = range(n)
            for i in rng_n:
                ti = t[i]
                for j in rng_n:
                    tij = t[ti[j]]
                    tj = t[j]
                    for k in rng_n:
                        if tij[k] != ti[tj[k]]:
                            raise ValueError("operation is not associative")
        else:
            for _ in range(ASSOC_SPOT_SAMPLES):
                i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if self.op(self.op(i, j), k) != self.op(i, self.op(j, k)):
                    raise ValueError("operation is not associative")
        if self.identity is not None:
            e = self.identity
            for i in range(n):
                if self.op(e, i) != i:
                    raise ValueError("claimed identity is not neutral")
        if self.zero is not None:
            z = self.zero
            for i in range(n):
                if self.op(z, i) != z:
                    raise ValueError("claimed zero is not absorbing")

    # -- presentation ------------------------------------------------------

    def format_element(self, i: int) -> str:
        return format_value(self.values[i])

    def describe(self) -> dict:
        """Structured description record (CLI --dump, golden tests)."""
        rec = {
            "kind": self.kind,
            "size": self.size,
            "identity": self.identity,
            "zero": self.zero,
            "params": dict(self.params),
        }
        if self.factors is not None:
            rec["params"]["factors"] = [f.describe() for f in self.factors]
        return rec

    def __repr__(self):
        return f"FiniteSemigroup(kind={self.kind!r}, size={self.size})"


def format_value(v) -> str:
    """Canonical text for an element value of any semigroup kind."""
    if isinstance(v, Poly):
        return str(v)
    if v is INF:
        return "inf"
    if isinstance(v, int):
        return "g" if v == 1 else f"g^{v}"
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(c) for c in v) + ")"
    raise TypeError(f"unknown element value {v!r}")


# -- builders --------------------------------------------------------------


def build_quotient_semigroup(p: int, f: Poly) -> FiniteSemigroup:
    """Multiplicative semigroup of F_p[x]/<f(x)>.

    The universe holds all p^deg(f) residues, indexed by little-endian
    coefficient counting (index 0 is the zero residue, index 1 the
    constant 1).
    """
    validate_prime(p)
    if f.p != p:
        raise ValueError(f"modulus prime mismatch: {f.p} vs {p}")
    d = f.degree
    if d < 1:
        raise ValueError("quotient modulus must have degree >= 1")
    values = []
    for idx in range(p**d):
        coeffs = []
        k = idx
        for _ in range(d):
            k, c = divmod(k, p)
            coeffs.append(c)
        values.append(Poly(p, coeffs))

    def mul_residues(a: Poly, b: Poly) -> Poly:
        return (a * b) % f

    S = FiniteSemigroup(
        "quotient",
        values,
        mul_residues,
        identity_value=Poly(p, [1]),
        zero_value=Poly(p),
        params={"p": p, "f": str(f)},
    )
    S.p = p
    S.modulus = f
    return S


def build_cyclic_with_zero(n: int) -> FiniteSemigroup:
    """Cyclic group of order n with one absorbing element adjoined."""
    if n < 2:
        raise ValueError("cyclic part must have order >= 2")
    values = list(range(n)) + [INF]

    def mul_cyclic(a, b):
        if a is INF or b is INF:
            return INF
        return (a + b) % n

    S = FiniteSemigroup(
        "cyclic_with_zero",
        values,
        mul_cyclic,
        identity_value=0,
        zero_value=INF,
        params={"n": n},
    )
    S.n = n
    return S


def build_cyclic_group(n: int) -> FiniteSemigroup:
    """Cyclic group of order n on exponents 0..n-1."""
    if n < 1:
        raise ValueError("group order must be >= 1")

    def mul_exp(a, b):
        return (a + b) % n

    S = FiniteSemigroup(
        "abelian_group",
        list(range(n)),
        mul_exp,
        identity_value=0,
        params={"orders": [n]},
    )
    S.orders = (n,)
    return S


def build_abelian_group(orders: Seq[int]) -> FiniteSemigroup:
    """Direct product of cyclic groups C_{n_1} x ... x C_{n_k}."""
    orders = tuple(int(n) for n in orders)
    if not orders:
        raise ValueError("at least one cyclic order required")
    if any(n < 1 for n in orders):
        raise ValueError("cyclic orders must be >= 1")
    if len(orders) == 1:
        return build_cyclic_group(orders[0])

    values = [()]
    for n in orders:
        values = [v + (r,) for v in values for r in range(n)]

    def mul_vec(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    S = FiniteSemigroup(
        "abelian_group",
        values,
        mul_vec,
        identity_value=tuple(0 for _ in orders),
        params={"orders": list(orders)},
    )
    S.orders = orders
    return S


def build_product(factors: Seq[FiniteSemigroup]) -> FiniteSemigroup:
    """Componentwise product of semigroups, each of which has an identity."""
    factors = list(factors)
    if not factors:
        raise ValueError("product needs at least one factor")
    for f in factors:
        if f.identity is None:
            raise ValueError("every product factor needs an identity")

    values = [()]
    for f in factors:
        values = [v + (w,) for v in values for w in f.values]

    muls = [f._mul_value for f in factors]

    def mul_tuple(a, b):
        return tuple(m(x, y) for m, x, y in zip(muls, a, b))

    identity_value = tuple(f.values[f.identity] for f in factors)
    zero_value = None
    if all(f.zero is not None for f in factors):
        zero_value = tuple(f.values[f.zero] for f in factors)

    return FiniteSemigroup(
        "product",
        values,
        mul_tuple,
        identity_value=identity_value,
        zero_value=zero_value,
        params={},
        factors=factors,
    )


# -- unit groups -----------------------------------------------------------


@dataclass(frozen=True)
class UnitGroup:
    """Invertible elements of a semigroup, with inverse witnesses."""

    parent: FiniteSemigroup
    elements: tuple[int, ...]
    inverses: dict
    invariant_factors: Optional[tuple[int, ...]]
    group: FiniteSemigroup

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_semigroup(self) -> FiniteSemigroup:
        return self.group


def units_of(S: FiniteSemigroup) -> UnitGroup:
    """Extract the group of units {a : a*a' = identity for some a'}."""
    if S.identity is None:
        raise ValueError("unit group needs an identity element")
    if S._unit_cache is not None:
        return S._unit_cache
    e = S.identity
    n = S.size
    inverses = {}
    if S.table is not None:
        for i, row in enumerate(S.table):
            for j, v in enumerate(row):
                if v == e:
                    inverses[i] = j
                    break
    else:
        for i in range(n):
            for j in range(n):
                if S.op(i, j) == e:
                    inverses[i] = j
                    break
    elements = tuple(sorted(inverses))

    unit_values = [S.values[i] for i in elements]
    group = FiniteSemigroup(
        "abelian_group",
        unit_values,
        S._mul_value,
        identity_value=S.values[e],
        params={"units_of": S.kind},
        validate=False,
    )

    invariants = _closed_form_invariants(S, len(elements))
    census = None
    if len(elements) <= CENSUS_CAP:
        census = _invariants_by_census(group)
    if invariants is not None and census is not None and invariants != census:
        raise AssertionError(
            f"closed-form unit structure {invariants} disagrees with census {census}"
        )
    if invariants is None:
        invariants = census

    ug = UnitGroup(S, elements, inverses, invariants, group)
    S._unit_cache = ug
    return ug


def _closed_form_invariants(S: FiniteSemigroup, n_units: int):
    """Unit-group structure pinned down by the quotient modulus, when it is."""
    if S.kind != "quotient":
        return None
    f: Poly = S.modulus
    p: int = S.p
    fac: Factorization = factor(f)
    if fac.is_squarefree:
        orders = [p ** g.degree - 1 for g, _ in fac.factors]
        return invariant_factors_from_cyclic_orders(orders)
    if len(fac.factors) == 1:
        g, m = fac.factors[0]
        if m == 2 and g.degree == 1:
            return invariant_factors_from_cyclic_orders([p * (p - 1)])
    return None


def _invariants_by_census(group: FiniteSemigroup) -> tuple[int, ...]:
    """Abelian group structure from the multiset of element orders.

    For each prime q dividing |G|, counting elements of q-power order
    recovers the q-Sylow partition; the per-prime prime powers then merge
    rank by rank into the divisibility chain d_1 | d_2 | ... | d_r.
    """
    n = group.size
    if n == 1:
        return ()
    orders = [_element_order(group, i, n) for i in range(n)]
    per_prime: dict[int, list[int]] = {}
    for q in prime_factors(n):
        qpow_counts: dict[int, int] = {}
        for o in orders:
            # keep only elements whose order is a power of q
            t = o
            while t % q == 0:
                t //= q
            if t == 1:
                qpow_counts[o] = qpow_counts.get(o, 0) + 1
        parts = []  # conjugate partition: parts[j-1] = #(exponents >= j)
        j = 1
        prev = 1
        while True:
            nj = sum(c for o, c in qpow_counts.items() if o <= q**j)
            if nj == prev:
                break
            a, ratio = 0, nj // prev
            while ratio > 1 and ratio % q == 0:
                ratio //= q
                a += 1
            if ratio != 1 or prev * q**a != nj:
                raise AssertionError("element-order census is not a q-group layering")
            parts.append(a)
            prev = nj
            j += 1
        exps = [sum(1 for a in parts if a >= i) for i in range(1, max(parts) + 1)]
        per_prime[q] = sorted((q**e for e in exps), reverse=True)
    rank = max(len(v) for v in per_prime.values())
    chain = []
    for r in range(rank):
        d = 1
        for q, powers in per_prime.items():
            if r < len(powers):
                d *= powers[r]
        chain.append(d)
    return tuple(sorted(chain))


def _element_order(group: FiniteSemigroup, i: int, group_order: int) -> int:
    order = group_order
    for q in prime_factors(group_order):
        while order % q == 0 and group.power(i, order // q) == group.identity:
            order //= q
    return order


def invariant_factors_from_cyclic_orders(orders: Seq[int]) -> tuple[int, ...]:
    """Invariant factors of a product of cyclic groups of the given orders."""
    per_prime: dict[int, list[int]] = {}
    for n in orders:
        for q, e in prime_factors(n).items():
            per_prime.setdefault(q, []).append(e)
    if not per_prime:
        return ()
    for q in per_prime:
        per_prime[q].sort(reverse=True)
    rank = max(len(v) for v in per_prime.values())
    chain = []
    for r in range(rank):
        d = 1
        for q, exps in per_prime.items():
            if r < len(exps):
                d *= q ** exps[r]
        chain.append(d)
    return tuple(sorted(chain))


# -- Chinese-remainder decomposition ---------------------------------------


@dataclass(frozen=True)
class CrtDecomposition:
    """Residue-vector isomorphism for a squarefree quotient modulus."""

    source: FiniteSemigroup
    factor_polys: tuple[Poly, ...]
    factors: tuple[FiniteSemigroup, ...]
    product: FiniteSemigroup
    iso: dict  # source index -> product index

    def map_value(self, a: Poly) -> tuple:
        """Residue vector (a mod f_1, ..., a mod f_k)."""
        return tuple(a % g for g in self.factor_polys)

    @property
    def cyclic_orders(self) -> tuple[int, ...]:
        p = self.source.p
        return tuple(p**g.degree - 1 for g in self.factor_polys)


def crt_decompose(p: int, f: Poly) -> CrtDecomposition:
    """Split F_p[x]/<f> into quotients by the distinct irreducible factors.

    Requires f squarefree; each factor semigroup is a finite field's
    multiplicative semigroup, i.e. a cyclic group with an absorbing zero.
    """
    fac = factor(f)
    if not fac.is_squarefree:
        raise HypothesisViolation(
            f"modulus is not squarefree: {fac}; its repeated factors leave "
            "the decomposable regime"
        )
    source = build_quotient_semigroup(p, f)
    polys = tuple(g for g, _ in fac.factors)
    parts = tuple(build_quotient_semigroup(p, g) for g in polys)
    prod = build_product(list(parts))
    iso = {}
    seen = set()
    for i, a in enumerate(source.values):
        image = tuple(a % g for g in polys)
        j = prod.index_of[image]
        iso[i] = j
        seen.add(j)
    if len(seen) != source.size or prod.size != source.size:
        raise AssertionError("residue map failed to be a bijection")
    return CrtDecomposition(source, polys, parts, prod, iso)


# -- product-coordinate helpers --------------------------------------------


def _resolve(S: FiniteSemigroup, a):
    if isinstance(a, int) and not isinstance(a, bool) and a in range(S.size):
        # bare ints are ambiguous for group kinds whose values are ints;
        # treat as index only when the value itself is not in the universe
        if a in S.index_of:
            return S.index_of[a], a
        return a, S.values[a]
    if a in S.index_of:
        return S.index_of[a], a
    raise ValueError(f"element {a!r} not in the universe")


def j_set(S: FiniteSemigroup, a) -> frozenset:
    """1-based coordinates of a product element equal to the factor zero."""
    if S.kind != "product" or S.factors is None:
        raise TypeError("coordinate zero-sets are defined on product semigroups")
    _, value = _resolve(S, a)
    out = []
    for pos, (component, f) in enumerate(zip(value, S.factors), start=1):
        if f.zero is not None and component == f.values[f.zero]:
            out.append(pos)
    return frozenset(out)


def psi_projection(S: FiniteSemigroup, I, a):
    """Replace the (1-based) coordinates in I with the factor identity.

    The map is a homomorphism of the product onto the sub-semigroup
    supported on the remaining coordinates.
    """
    if S.kind != "product" or S.factors is None:
        raise TypeError("coordinate projections are defined on product semigroups")
    k = len(S.factors)
    I = set(I)
    for i in I:
        if not 1 <= i <= k:
            raise ValueError(f"coordinate {i} out of range [1, {k}]")
    _, value = _resolve(S, a)
    out = []
    for pos, (component, f) in enumerate(zip(value, S.factors), start=1):
        out.append(f.values[f.identity] if pos in I else component)
    return tuple(out)


def is_group(S: FiniteSemigroup) -> bool:
    """True when every element is invertible for the identity."""
    if S.identity is None:
        return False
    return units_of(S).order == S.size
