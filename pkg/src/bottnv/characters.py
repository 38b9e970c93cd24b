"""Exact characters of representations of G and of its Levi subgroups.

A :class:`Character` is stored on dominant representatives only: the
multiplicity of any other weight is that of its dominant conjugate under the
Weyl group of the context. Weights always carry every coordinate, including
the marked nodes of a Levi context, so the charge under the centre of the
Levi subgroup travels along with the weight.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb

from . import budget
from .rootsystem import RootSystem, Weight, inner_product, sort_to_chamber


class CharacterError(ValueError):
    pass


def _add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


class SymmetryContext:
    """The Weyl group ``W_L`` generated by the simple reflections at ``levi``.

    ``levi`` holds 0-based node indices. The full node set is the context of
    G itself; the complement of a marking is the context of the Levi factor.
    """

    def __init__(self, rs: RootSystem, levi):
        levi = tuple(sorted(set(levi)))
        if any(not 0 <= i < rs.rank for i in levi):
            raise CharacterError(f"levi nodes {levi} out of range for {rs.dynkin}")
        self.rs = rs
        self.levi = levi
        self._irreps: dict[Weight, dict[Weight, int]] = {}
        self._lock = threading.Lock()

    @staticmethod
    def full(rs: RootSystem) -> "SymmetryContext":
        return _context(rs, tuple(range(rs.rank)))

    @staticmethod
    def for_marking(rs: RootSystem, marked) -> "SymmetryContext":
        """Levi context of the parabolic with 1-based ``marked`` nodes."""
        skip = {k - 1 for k in marked}
        return _context(rs, tuple(i for i in range(rs.rank) if i not in skip))

    @property
    def marked(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.rs.rank) if i not in self.levi)

    def __repr__(self):
        return f"SymmetryContext({self.rs.dynkin}, levi={tuple(i + 1 for i in self.levi)})"

    def __reduce__(self):
        return _context, (self.rs, self.levi)

    @cached_property
    def positive_roots(self):
        lv = set(self.levi)
        return tuple(
            r for r in self.rs.positive_roots
            if all(c == 0 or i in lv for i, c in enumerate(r.simple))
        )

    @cached_property
    def _root_data(self):
        g = self.rs.gram_int
        out = []
        for r in self.positive_roots:
            ga = tuple(sum(g[i][j] * r.weight[j] for j in range(len(g))) for i in range(len(g)))
            out.append((r.weight, ga, sum(a * b for a, b in zip(r.weight, ga))))
        return tuple(out)

    @cached_property
    def height_vector(self) -> tuple[int, ...]:
        """``h`` with ``h . w`` a positive multiple of ``(w, 2 rho_L)``."""
        two_rho = [0] * self.rs.rank
        for r in self.positive_roots:
            two_rho = [a + b for a, b in zip(two_rho, r.weight)]
        g = self.rs.gram_int
        return tuple(sum(g[i][j] * two_rho[j] for j in range(len(g))) for i in range(len(g)))

    def height(self, w: Weight) -> int:
        return sum(a * b for a, b in zip(self.height_vector, w))

    def order_key(self, w: Weight):
        return (self.height(w), w)

    def is_dominant(self, w: Weight) -> bool:
        return all(w[i] >= 0 for i in self.levi)

    def dominant(self, w: Weight) -> Weight:
        return sort_to_chamber(self.rs, w, self.levi)[0]

    def orbit(self, w: Weight) -> list[Weight]:
        start = self.dominant(w)
        seen = {start}
        stack = [start]
        cartan = self.rs.cartan
        while stack:
            v = stack.pop()
            for i in self.levi:
                c = v[i]
                if c > 0:
                    u = tuple(x - c * a for x, a in zip(v, cartan[i]))
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
        return sorted(seen)

    def orbit_size(self, w: Weight) -> int:
        dom = self.dominant(w)
        return self._weyl_order(self.levi) // self._weyl_order(
            tuple(i for i in self.levi if dom[i] == 0)
        )

    def _weyl_order(self, nodes) -> int:
        return _weyl_order(self.rs, nodes)

    def weyl_group_order(self) -> int:
        return self._weyl_order(self.levi)


@lru_cache(maxsize=None)
def _context(rs: RootSystem, levi: tuple[int, ...]) -> SymmetryContext:
    return SymmetryContext(rs, levi)


@lru_cache(maxsize=None)
def _weyl_order(rs: RootSystem, nodes: tuple[int, ...]) -> int:
    # |W| = prod over positive roots of (ht + 1) / ht
    nodes = set(nodes)
    num = den = 1
    for r in rs.positive_roots:
        if all(c == 0 or i in nodes for i, c in enumerate(r.simple)):
            h = sum(r.simple)
            num *= h + 1
            den *= h
    return num // den


class Character:
    """A ``W_L``-invariant weight multiplicity function with big-integer values."""

    __slots__ = ("ctx", "_m")

    def __init__(self, ctx: SymmetryContext, dominant_mults=None):
        self.ctx = ctx
        self._m: dict[Weight, int] = {}
        for w, m in (dominant_mults or {}).items():
            if m:
                self._m[tuple(w)] = m

    @classmethod
    def from_weights(cls, ctx: SymmetryContext, weights, check: bool = True) -> "Character":
        """Build from an explicit weight list or ``{weight: mult}`` mapping."""
        counts: dict[Weight, int] = defaultdict(int)
        items = weights.items() if isinstance(weights, dict) else ((w, 1) for w in weights)
        for w, m in items:
            counts[tuple(w)] += m
        dom: dict[Weight, int] = {}
        for w, m in counts.items():
            if ctx.is_dominant(w):
                dom[w] = m
        if check:
            for w, m in counts.items():
                if m < 0:
                    raise CharacterError(f"negative multiplicity at {w}")
                if dom.get(ctx.dominant(w)) != m:
                    raise CharacterError(f"weights are not invariant under W_L at {w}")
            total = sum(m * ctx.orbit_size(w) for w, m in dom.items())
            if total != sum(counts.values()):
                raise CharacterError("weights are not invariant under W_L")
        return cls(ctx, dom)

    @classmethod
    def trivial(cls, ctx: SymmetryContext) -> "Character":
        return cls(ctx, {ctx.rs.zero(): 1})

    @classmethod
    def line(cls, ctx: SymmetryContext, w: Weight) -> "Character":
        w = tuple(w)
        if any(w[i] for i in ctx.levi):
            raise CharacterError(f"{w} is not a character of the Levi subgroup")
        return cls(ctx, {w: 1})

    def dominant_items(self):
        return sorted(self._m.items())

    def weights(self):
        """Yield ``(weight, mult)`` over the full support."""
        for w, m in sorted(self._m.items()):
            for u in self.ctx.orbit(w):
                yield u, m

    def mult(self, w: Weight) -> int:
        return self._m.get(self.ctx.dominant(tuple(w)), 0)

    def dim(self) -> int:
        return sum(m * self.ctx.orbit_size(w) for w, m in self._m.items())

    def support_size(self) -> int:
        return sum(self.ctx.orbit_size(w) for w in self._m)

    def is_genuine(self) -> bool:
        return all(m > 0 for m in self._m.values())

    def __bool__(self):
        return bool(self._m)

    def __len__(self):
        return len(self._m)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.ctx is other.ctx and self._m == other._m

    def __repr__(self):
        return f"Character({self.ctx!r}, dim={self.dim()}, {len(self._m)} dominant weights)"

    def _same(self, other: "Character"):
        if self.ctx is not other.ctx:
            raise CharacterError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "Character") -> "Character":
        self._same(other)
        out = dict(self._m)
        for w, m in other._m.items():
            out[w] = out.get(w, 0) + m
        return Character(self.ctx, out)

    def __sub__(self, other: "Character") -> "Character":
        self._same(other)
        out = dict(self._m)
        for w, m in other._m.items():
            out[w] = out.get(w, 0) - m
        return Character(self.ctx, out)

    def scale(self, k: int) -> "Character":
        return Character(self.ctx, {w: k * m for w, m in self._m.items()})

    def shift(self, twist: Weight) -> "Character":
        """Tensor with the line bundle of weight ``twist`` (zero on levi nodes)."""
        twist = tuple(twist)
        if any(twist[i] for i in self.ctx.levi):
            raise CharacterError(f"twist {twist} is not supported on the marked nodes")
        return Character(self.ctx, {_add(w, twist): m for w, m in self._m.items()})

    def __mul__(self, other: "Character") -> "Character":
        return char_tensor(self, other)

    def adams(self, k: int) -> "Character":
        return char_adams(self, k)


def char_add(a: Character, b: Character) -> Character:
    return a + b


def char_adams(c: Character, k: int) -> Character:
    """Adams operation: every weight is multiplied by ``k``."""
    if k < 1:
        raise CharacterError("Adams operations need k >= 1")
    # k*w is dominant with the same stabiliser, so the compressed form scales directly
    return Character(c.ctx, {tuple(k * x for x in w): m for w, m in c._m.items()})


def _multiply(ctx: SymmetryContext, small: list, big: dict) -> dict:
    """Dominant part of the product of a fully listed invariant character with a compressed one."""
    cache: dict[Weight, Weight] = {}
    rs, levi = ctx.rs, ctx.levi

    def dom(w):
        d = cache.get(w)
        if d is None:
            d = cache[w] = sort_to_chamber(rs, w, levi)[0]
        return d

    candidates = set()
    for mu, _ in small:
        for nu in big:
            candidates.add(dom(_add(mu, nu)))
    budget.check(len(candidates))
    out = {}
    for gamma in candidates:
        s = 0
        for mu, m in small:
            b = big.get(dom(_sub(gamma, mu)))
            if b:
                s += m * b
        if s:
            out[gamma] = s
    return out


def char_tensor(a: Character, b: Character) -> Character:
    a._same(b)
    if a.support_size() > b.support_size():
        a, b = b, a
    return Character(a.ctx, _multiply(a.ctx, list(a.weights()), b._m))


def exterior_power(c: Character, q: int) -> Character:
    """``q``-th exterior power from Newton's identity

    ``q Λ^q = Σ_{i=1..q} (-1)^(i-1) ψ^i(c) Λ^(q-i)``, evaluated on dominant
    weights; each division by ``q`` must be exact.
    """
    if q < 0:
        raise CharacterError("exterior power degree must be non-negative")
    ctx = c.ctx
    if q == 0:
        return Character.trivial(ctx)
    full = list(c.weights())
    if any(m < 0 for _, m in full):
        raise CharacterError("exterior powers of virtual characters are not supported")
    n = sum(m for _, m in full)
    if q > n:
        return Character(ctx)
    powers = [{ctx.rs.zero(): 1}]
    for k in range(1, q + 1):
        acc: dict[Weight, int] = defaultdict(int)
        for i in range(1, k + 1):
            psi = [(tuple(i * x for x in w), m) for w, m in full]
            sign = 1 if i % 2 else -1
            for w, m in _multiply(ctx, psi, powers[k - i]).items():
                acc[w] += sign * m
            budget.check(len(acc))
        layer = {}
        for w, m in acc.items():
            if m % k:
                raise CharacterError(f"non-exact division by {k} at {w}: corrupted character")
            m //= k
            if m < 0:
                raise CharacterError(f"negative multiplicity at {w} in exterior power {k}")
            if m:
                layer[w] = m
        powers.append(layer)
    return Character(ctx, powers[q])


def exterior_power_bruteforce(c: Character, q: int) -> Character:
    """Reference exterior power: sum over all ``q``-subsets of the weight multiset."""
    pool = [w for w, m in c.weights() for _ in range(m)]
    counts: dict[Weight, int] = defaultdict(int)
    zero = c.ctx.rs.zero()
    for subset in combinations(pool, q):
        w = zero
        for u in subset:
            w = _add(w, u)
        counts[w] += 1
    return Character.from_weights(c.ctx, dict(counts), check=False)


# -- irreducible characters --------------------------------------------------


def _require_dominant(ctx: SymmetryContext, lam: Weight):
    if not ctx.is_dominant(lam):
        bad = next(i for i in ctx.levi if lam[i] < 0)
        raise CharacterError(
            f"{lam} is not dominant for {ctx}: coordinate ω_{bad + 1} is {lam[bad]}"
        )


def weyl_dimension(ctx: SymmetryContext, lam: Weight) -> int:
    lam = tuple(lam)
    _require_dominant(ctx, lam)
    num = den = 1
    for r in ctx.positive_roots:
        num *= sum((x + 1) * c for x, c in zip(lam, r.coroot))
        den *= sum(r.coroot)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def _dominant_weights_below(ctx: SymmetryContext, lam: Weight) -> list[Weight]:
    found = {lam}
    stack = [lam]
    roots = [r.weight for r in ctx.positive_roots]
    levi = ctx.levi
    while stack:
        mu = stack.pop()
        for a in roots:
            nu = _sub(mu, a)
            if nu not in found and all(nu[i] >= 0 for i in levi):
                found.add(nu)
                stack.append(nu)
    return sorted(found, key=ctx.order_key, reverse=True)


def _freudenthal(ctx: SymmetryContext, lam: Weight) -> dict[Weight, int]:
    cached = ctx._irreps.get(lam)
    if cached is not None:
        return cached
    rs = ctx.rs
    levi = ctx.levi
    g = rs.gram_int
    rho = rs.rho  # pairs like rho_L against everything in the root lattice of L

    def norm(x):
        return sum(x[i] * sum(g[i][j] * x[j] for j in range(len(x))) for i in range(len(x)))

    top = norm(_add(lam, rho))
    doms = _dominant_weights_below(ctx, lam)
    mult = {lam: 1}
    cache: dict[Weight, Weight] = {}
    root_data = ctx._root_data
    for step, mu in enumerate(doms[1:], start=1):
        if step % 64 == 0:
            budget.check(len(doms))
        s = 0
        for a, ga, aa in root_data:
            base = sum(x * y for x, y in zip(mu, ga))
            k = 1
            nu = mu
            while True:
                nu = _add(nu, a)
                d = cache.get(nu)
                if d is None:
                    d = cache[nu] = sort_to_chamber(rs, nu, levi)[0]
                m = mult.get(d)
                if m is None:
                    break
                s += m * (base + k * aa)
                k += 1
        denom = top - norm(_add(mu, rho))
        m, rem = divmod(2 * s, denom)
        if rem:
            raise CharacterError(f"Freudenthal recursion produced a fraction at {mu}")
        # zero-multiplicity dominant weights cannot occur below a highest weight
        mult[mu] = m
    with ctx._lock:
        return ctx._irreps.setdefault(lam, mult)


def irrep_character(ctx: SymmetryContext, lam: Weight) -> Character:
    lam = tuple(lam)
    _require_dominant(ctx, lam)
    return Character(ctx, _freudenthal(ctx, lam))


def compose(ctx: SymmetryContext, irreps: dict) -> Character:
    out: dict[Weight, int] = defaultdict(int)
    for lam, m in irreps.items():
        for w, k in _freudenthal(ctx, tuple(lam)).items():
            out[w] += m * k
    return Character(ctx, out)


def decompose(c: Character) -> dict[Weight, int]:
    """Irreducible decomposition by repeatedly removing the leading dominant weight.

    Leading means largest ``(λ, 2ρ_L)``, ties broken lexicographically.
    """
    ctx = c.ctx
    rem = dict(c._m)
    out: dict[Weight, int] = {}
    for nu in sorted(rem, key=ctx.order_key, reverse=True):
        m = rem.get(nu, 0)
        if m == 0:
            continue
        if m < 0:
            raise CharacterError(f"negative multiplicity {m} at {nu}: not a genuine character")
        budget.check(len(rem))
        out[nu] = m
        for w, k in _freudenthal(ctx, nu).items():
            left = rem.get(w, 0) - m * k
            if left < 0:
                raise CharacterError(f"negative multiplicity at {w}: not a genuine character")
            if left:
                rem[w] = left
            else:
                rem.pop(w, None)
    return out


def klimyk_tensor(ctx: SymmetryContext, weights, irreps: dict) -> dict[Weight, int]:
    """Product of an invariant character (full weight list) with a sum of irreducibles.

    Brauer-Klimyk rule; an independent route to the same decomposition that
    never builds the character of the product. The result may be virtual
    when the input is.
    """
    rs = ctx.rs
    levi = ctx.levi
    rho = rs.rho
    out: dict[Weight, int] = defaultdict(int)
    for lam, k in irreps.items():
        shifted = _add(lam, rho)
        for mu, m in weights:
            w, length = sort_to_chamber(rs, _add(shifted, mu), levi)
            if any(w[i] == 0 for i in levi):
                continue
            out[_sub(w, rho)] += (-1) ** length * m * k
    return {w: m for w, m in out.items() if m}


def exterior_power_irreps(c: Character, q: int) -> dict[Weight, int]:
    """Decomposition of ``Λ^q c`` via Newton's identity in the representation ring."""
    ctx = c.ctx
    full = list(c.weights())
    powers = [{ctx.rs.zero(): 1}]
    for k in range(1, q + 1):
        acc: dict[Weight, int] = defaultdict(int)
        for i in range(1, k + 1):
            psi = [(tuple(i * x for x in w), m) for w, m in full]
            sign = 1 if i % 2 else -1
            for w, m in klimyk_tensor(ctx, psi, powers[k - i]).items():
                acc[w] += sign * m
        layer = {}
        for w, m in acc.items():
            if m % k:
                raise CharacterError(f"non-exact division by {k} at {w}")
            if m:
                layer[w] = m // k
        powers.append(layer)
    return powers[q]


def central_charge(ctx: SymmetryContext, w: Weight) -> Fraction:
    """``r_w = (w, ω_k) / (ω_k, ω_k)`` for the single marked node ``k``."""
    marked = ctx.marked
    if len(marked) != 1:
        raise CharacterError("central charge needs a maximal parabolic (one marked node)")
    k = marked[0]
    omega = tuple(int(i == k) for i in range(ctx.rs.rank))
    return inner_product(ctx.rs, w, omega) / inner_product(ctx.rs, omega, omega)


def central_charge_check(ctx: SymmetryContext, lam: Weight, q: int, result: dict) -> bool:
    """Every summand of ``Λ^q V(λ)`` must carry central charge ``q r_λ``."""
    target = q * central_charge(ctx, lam)
    return all(central_charge(ctx, nu) == target for nu in result)


def dimension_of(ctx: SymmetryContext, irreps: dict) -> int:
    return sum(m * weyl_dimension(ctx, lam) for lam, m in irreps.items())


def binomial_dim(c: Character, q: int) -> int:
    return comb(c.dim(), q)


__all__ = [
    "Character",
    "CharacterError",
    "SymmetryContext",
    "binomial_dim",
    "central_charge",
    "char_adams",
    "char_add",
    "char_tensor",
    "compose",
    "decompose",
    "dimension_of",
    "central_charge_check",
    "exterior_power",
    "exterior_power_bruteforce",
    "exterior_power_irreps",
    "irrep_character",
    "klimyk_tensor",
    "weyl_dimension",
]
