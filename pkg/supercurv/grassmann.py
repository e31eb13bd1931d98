"""Finite Grassmann algebra with Jet2 coefficients.

Monomials are bitmasks over the ordered generator list of an ``AlgebraConfig``;
a mask stands for the product of its generators in list order. The theta
generators always come first so that splitting off a theta monomial from the
left needs no sign.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from numbers import Number
from types import MappingProxyType

import numpy as np

from supercurv.errors import ConfigError, MismatchError, ParityError, TruncationError
from supercurv.jet import (
    Jet2,
    Orders,
    Scalar,
    Variable,
    jet_const,
    jet_dagger,
    jet_exp,
    jet_inv,
    jet_ln,
    jet_partial,
    jet_truncate,
    jet_zero,
)

THETA_PLUS = "theta+"
THETA_MINUS = "theta-"
MAX_GENERATORS = 8


@dataclass(frozen=True)
class AlgebraConfig:
    generators: tuple[str, ...]
    pairing: tuple[int, ...]

    def __post_init__(self) -> None:
        g = len(self.generators)
        if g > MAX_GENERATORS:
            raise ConfigError(f"at most {MAX_GENERATORS} generators are supported, got {g}")
        if len(set(self.generators)) != g:
            raise ConfigError(f"duplicate generator names in {self.generators}")
        if len(self.pairing) != g or any(not 0 <= j < g for j in self.pairing):
            raise ConfigError("pairing must map every generator to a generator")
        if any(self.pairing[self.pairing[i]] != i for i in range(g)):
            raise ConfigError("pairing must be an involution")

    @classmethod
    def from_pairs(cls, generators: Iterable[str], pairs: Mapping[str, str]) -> AlgebraConfig:
        names = tuple(generators)
        index = {name: i for i, name in enumerate(names)}
        pairing = list(range(len(names)))
        for left, right in pairs.items():
            if left not in index or right not in index:
                raise ConfigError(f"pairing {left}<->{right} names an unknown generator")
            pairing[index[left]] = index[right]
            pairing[index[right]] = index[left]
        return cls(names, tuple(pairing))

    @property
    def size(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise MismatchError(f"generator {name!r} is not part of {self.generators}") from None

    def mask(self, *names: str) -> int:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(name for i, name in enumerate(self.generators) if mask >> i & 1)


DEFAULT_ALGEBRA = AlgebraConfig.from_pairs((THETA_PLUS, THETA_MINUS), {THETA_PLUS: THETA_MINUS})


def odd_algebra(n_params: int = 1) -> AlgebraConfig:
    """theta+/theta- plus n_params odd parameters eps_i with conjugates eps_i*."""
    gens = [THETA_PLUS, THETA_MINUS]
    pairs = {THETA_PLUS: THETA_MINUS}
    for i in range(1, n_params + 1):
        gens += [f"eps{i}", f"eps{i}*"]
        pairs[f"eps{i}"] = f"eps{i}*"
    return AlgebraConfig.from_pairs(gens, pairs)


def _popcount(x: int) -> int:
    return x.bit_count()


@lru_cache(maxsize=65536)
def _merge_sign(a: int, b: int) -> int:
    """Sign of eta_a * eta_b = sign * eta_{a|b} for disjoint masks."""
    swaps = 0
    rest = b
    while rest:
        j = (rest & -rest).bit_length() - 1
        swaps += _popcount(a >> (j + 1))
        rest &= rest - 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=4096)
def _dagger_monomial(config: AlgebraConfig, mask: int) -> tuple[int, int]:
    indices = [i for i in range(config.size) if mask >> i & 1]
    image = [config.pairing[i] for i in reversed(indices)]
    inversions = sum(1 for x in range(len(image)) for y in range(x + 1, len(image)) if image[x] > image[y])
    new_mask = 0
    for i in image:
        new_mask |= 1 << i
    return new_mask, -1 if inversions & 1 else 1


@dataclass(frozen=True, eq=False)
class Supernumber:
    config: AlgebraConfig
    base_point: complex
    orders: Orders
    terms: Mapping[int, Jet2] = field(default_factory=dict)

    __array_ufunc__ = None

    def __post_init__(self) -> None:
        kept = {}
        for mask, jet in self.terms.items():
            if not 0 <= mask < 1 << self.config.size:
                raise MismatchError(f"monomial mask {mask} outside the algebra")
            if jet.base_point != self.base_point or jet.orders != tuple(self.orders):
                raise MismatchError("all coefficients must share base point and orders")
            if not jet.is_zero():
                kept[mask] = jet
        object.__setattr__(self, "orders", tuple(self.orders))
        object.__setattr__(self, "base_point", complex(self.base_point))
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(kept.items()))))

    def term(self, mask: int) -> Jet2:
        jet = self.terms.get(mask)
        return jet if jet is not None else jet_zero(self.base_point, self.orders)

    @property
    def body(self) -> Jet2:
        return self.term(0)

    @property
    def soul(self) -> Supernumber:
        return Supernumber(self.config, self.base_point, self.orders, {m: j for m, j in self.terms.items() if m})

    @property
    def value(self) -> complex:
        """Body of the body: the plain number at the base point."""
        return self.body.value

    @property
    def parity(self) -> int | None:
        """0 for even, 1 for odd, None when both parities are present."""
        parities = {_popcount(m) & 1 for m in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    @property
    def is_mixed(self) -> bool:
        return self.parity is None

    def _coerce(self, other) -> Supernumber | None:
        if isinstance(other, Supernumber):
            return other
        if isinstance(other, Jet2):
            return g_from_jet(other, self.config)
        if isinstance(other, Number):
            return g_const(other, self.config, self.base_point, self.orders)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else g_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else g_sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else g_sub(other, self)

    def __neg__(self) -> Supernumber:
        return g_neg(self)

    def __mul__(self, other):
        if isinstance(other, Supernumber):
            return g_mul(self, other)
        if isinstance(other, (Jet2, Number)):
            return g_scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Jet2, Number)):
            return g_scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Supernumber):
            return g_mul(self, g_inv(other))
        if isinstance(other, Jet2):
            return g_scale(self, jet_inv(other))
        if isinstance(other, Number):
            return g_scale(self, 1 / complex(other))
        return NotImplemented

    def __repr__(self) -> str:
        shown = ", ".join(f"{'*'.join(self.config.names(m)) or '1'}: {j.value:.6g}" for m, j in self.terms.items())
        return f"Supernumber({{{shown}}}, orders={self.orders})"


def _check_same(a: Supernumber, b: Supernumber) -> None:
    if a.config != b.config:
        raise MismatchError(f"algebras differ: {a.config.generators} vs {b.config.generators}")
    if a.base_point != b.base_point or a.orders != b.orders:
        raise MismatchError(f"jet shapes differ: {a.base_point}/{a.orders} vs {b.base_point}/{b.orders}")


def g_const(v: Scalar, config: AlgebraConfig, p: complex, orders: Orders) -> Supernumber:
    return Supernumber(config, p, orders, {0: jet_const(v, p, orders)})


def g_zero(config: AlgebraConfig, p: complex, orders: Orders) -> Supernumber:
    return Supernumber(config, p, orders, {})


def g_from_jet(jet: Jet2, config: AlgebraConfig) -> Supernumber:
    return Supernumber(config, jet.base_point, jet.orders, {0: jet})


def g_monomial(names: Iterable[str], coeff: Jet2, config: AlgebraConfig) -> Supernumber:
    """coeff times the ordered product of the named generators, re-sorted with sign."""
    mask, sign = 0, 1
    for name in names:
        bit = 1 << config.index(name)
        if mask & bit:
            return g_zero(config, coeff.base_point, coeff.orders)
        sign *= _merge_sign(mask, bit)
        mask |= bit
    return Supernumber(config, coeff.base_point, coeff.orders, {mask: coeff * sign})


def g_generator(name: str, config: AlgebraConfig, p: complex, orders: Orders) -> Supernumber:
    return g_monomial([name], jet_const(1, p, orders), config)


def _collect(config: AlgebraConfig, p: complex, orders: Orders, pieces: Iterable[tuple[int, Jet2]]) -> Supernumber:
    acc: dict[int, np.ndarray] = {}
    for mask, jet in pieces:
        if mask in acc:
            acc[mask] = acc[mask] + jet.coeffs
        else:
            acc[mask] = jet.coeffs
    return Supernumber(config, p, orders, {m: Jet2(p, c) for m, c in acc.items()})


def g_add(a: Supernumber, b: Supernumber) -> Supernumber:
    _check_same(a, b)
    return _collect(a.config, a.base_point, a.orders, [*a.terms.items(), *b.terms.items()])


def g_neg(a: Supernumber) -> Supernumber:
    return Supernumber(a.config, a.base_point, a.orders, {m: -j for m, j in a.terms.items()})


def g_sub(a: Supernumber, b: Supernumber) -> Supernumber:
    return g_add(a, g_neg(b))


def g_scale(a: Supernumber, s: Scalar | Jet2) -> Supernumber:
    """Multiply by an even scalar: a plain number or a Jet2."""
    return Supernumber(a.config, a.base_point, a.orders, {m: j * s for m, j in a.terms.items()})


def g_mul(a: Supernumber, b: Supernumber) -> Supernumber:
    _check_same(a, b)
    pieces = []
    for ma, ja in a.terms.items():
        for mb, jb in b.terms.items():
            if ma & mb:
                continue
            product = ja * jb
            pieces.append((ma | mb, product if _merge_sign(ma, mb) > 0 else -product))
    return _collect(a.config, a.base_point, a.orders, pieces)


def g_dagger(a: Supernumber) -> Supernumber:
    """Reverse each monomial, map generators through the pairing, conjugate coefficients."""
    if a.orders[0] != a.orders[1]:
        raise MismatchError(f"dagger needs square orders, got {a.orders}")
    pieces = []
    for mask, jet in a.terms.items():
        new_mask, sign = _dagger_monomial(a.config, mask)
        conj = jet_dagger(jet)
        pieces.append((new_mask, conj if sign > 0 else -conj))
    return _collect(a.config, a.base_point, a.orders, pieces)


def g_theta_derivative(a: Supernumber, gen: str) -> Supernumber:
    """Left derivative with respect to an odd generator."""
    g = a.config.index(gen)
    bit = 1 << g
    below = bit - 1
    pieces = []
    for mask, jet in a.terms.items():
        if mask & bit:
            pieces.append((mask ^ bit, -jet if _popcount(mask & below) & 1 else jet))
    return _collect(a.config, a.base_point, a.orders, pieces)


def g_partial(a: Supernumber, wrt: Variable) -> Supernumber:
    d_plus, d_minus = a.orders
    orders = (d_plus - 1, d_minus) if wrt == "plus" else (d_plus, d_minus - 1)
    if min(orders) < 0:
        raise TruncationError(f"no x{'+' if wrt == 'plus' else '-'} order left to differentiate")
    return Supernumber(a.config, a.base_point, orders, {m: jet_partial(j, wrt) for m, j in a.terms.items()})


def g_truncate(a: Supernumber, orders: Orders) -> Supernumber:
    if tuple(orders) == a.orders:
        return a
    if orders[0] > a.orders[0] or orders[1] > a.orders[1] or min(orders) < 0:
        raise TruncationError(f"cannot truncate orders {a.orders} to {orders}")
    return Supernumber(a.config, a.base_point, orders, {m: jet_truncate(j, orders) for m, j in a.terms.items()})


def common_orders(*orders: Orders) -> Orders:
    return (min(o[0] for o in orders), min(o[1] for o in orders))


def align(*values: Supernumber) -> list[Supernumber]:
    """Truncate every value to the smallest orders among them."""
    target = common_orders(*(v.orders for v in values))
    return [g_truncate(v, target) for v in values]


def _require_even(a: Supernumber, op: str) -> None:
    if a.parity != 0:
        raise ParityError(f"{op} is defined for even supernumbers only")


def _nilpotent_split(a: Supernumber, op: str) -> tuple[Jet2, Supernumber]:
    _require_even(a, op)
    return a.body, a.soul


def g_inv(a: Supernumber) -> Supernumber:
    body, soul = _nilpotent_split(a, "inverse")
    body_inv = jet_inv(body)
    t = g_scale(soul, body_inv)
    result = g_const(1, a.config, a.base_point, a.orders)
    for _ in range(a.config.size // 2):
        result = 1 - t * result
    return g_scale(result, body_inv)


def g_ln(a: Supernumber) -> Supernumber:
    body, soul = _nilpotent_split(a, "logarithm")
    t = g_scale(soul, jet_inv(body))
    n = a.config.size // 2
    if n == 0 or not t.terms:
        return g_from_jet(jet_ln(body), a.config)
    r = g_const(1 / n, a.config, a.base_point, a.orders)
    for k in range(n - 1, 0, -1):
        r = 1 / k - t * r
    return t * r + jet_ln(body)


def g_exp(a: Supernumber) -> Supernumber:
    body, soul = _nilpotent_split(a, "exponential")
    result = g_const(1, a.config, a.base_point, a.orders)
    for k in range(a.config.size // 2, 0, -1):
        result = 1 + g_scale(soul * result, 1 / k)
    return g_scale(result, jet_exp(body))


def theta_component(a: Supernumber, names: Iterable[str] = ()) -> Supernumber:
    """Coefficient c in a = eta_S * c + (terms not containing all of S), c free of S.

    With no names this is the part of ``a`` free of every theta generator.
    """
    s_mask = a.config.mask(*names)
    if not s_mask:
        thetas = a.config.mask(THETA_PLUS, THETA_MINUS)
        return Supernumber(a.config, a.base_point, a.orders, {m: j for m, j in a.terms.items() if not m & thetas})
    pieces = []
    for mask, jet in a.terms.items():
        if mask & s_mask == s_mask:
            rest = mask ^ s_mask
            pieces.append((rest, jet if _merge_sign(s_mask, rest) > 0 else -jet))
    return _collect(a.config, a.base_point, a.orders, pieces)


def point_values(a: Supernumber) -> dict[int, complex]:
    return {mask: jet.value for mask, jet in a.terms.items()}


def soul_max(a: Supernumber) -> float:
    return max((abs(v) for m, v in point_values(a).items() if m), default=0.0)


def point_max(a: Supernumber) -> float:
    """Largest monomial coefficient magnitude at the base point."""
    return max((abs(v) for v in point_values(a).values()), default=0.0)


def g_max_abs(a: Supernumber) -> float:
    """Largest coefficient magnitude over every monomial and every jet entry."""
    return max((float(np.max(np.abs(j.coeffs))) for j in a.terms.values()), default=0.0)
