"""Primitive Dirichlet characters with exact root-of-unity arithmetic.

A character mod q is stored as a length-q table of exponents: entry a is
None when gcd(a, q) > 1 and otherwise an integer k with
chi(a) = e^(2*pi*i*k/order).  All multiplicative structure lives in the
integer exponents, so multiplicativity is exact; conversion to complex
doubles happens only at evaluation time.

Enumeration walks the exponent vectors of (Z/qZ)^* lexicographically over
a fixed CRT generator convention (smallest primitive root per odd prime
power; <-1, 5> for 2^k with k >= 3), keeps the primitive ones, and labels
them 0, 1, 2, ... in that order.  Labels are therefore reproducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional

from .errors import DomainError
from .numtypes import ComplexValue

__all__ = [
    "CyclicFactor",
    "UnitGroupDecomposition",
    "DirichletCharacter",
    "unit_group",
    "enumerate_primitive",
    "from_label",
    "kronecker_character",
    "kronecker_symbol",
    "gauss_sum",
    "min_coprime",
]


def _factorize(q: int) -> list[tuple[int, int]]:
    out = []
    n, p = q, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _euler_phi(q: int) -> int:
    phi = 1
    for p, e in _factorize(q):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def _multiplicative_order(g: int, q: int, group_order: int) -> int:
    # order of g divides group_order; walk its divisors
    order = group_order
    for p, _ in _factorize(group_order):
        while order % p == 0 and pow(g, order // p, q) == 1:
            order //= p
    return order


def _smallest_primitive_root(pk: int, phi: int) -> int:
    for g in range(2, pk):
        if math.gcd(g, pk) != 1:
            continue
        if _multiplicative_order(g, pk, phi) == phi:
            return g
    raise RuntimeError(f"no primitive root mod {pk}")


@dataclass(frozen=True)
class CyclicFactor:
    """One cyclic factor of (Z/qZ)^*: a generator and its order."""

    generator: int  # lifted mod q (== 1 modulo the other prime powers)
    order: int


@dataclass(frozen=True)
class UnitGroupDecomposition:
    """(Z/qZ)^* as a product of cyclic groups via CRT over prime powers."""

    modulus: int
    factors: tuple[CyclicFactor, ...]

    @property
    def phi(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.order
        return n

    def exponents(self, a: int) -> tuple[int, ...]:
        """Unique exponent vector of a over the generators."""
        a %= self.modulus
        if math.gcd(a, self.modulus) != 1:
            raise DomainError(f"{a} is not a unit mod {self.modulus}")
        return _dlog_table(self.modulus)[a]


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroupDecomposition:
    """Decompose (Z/qZ)^* with the fixed generator convention."""
    if q < 1:
        raise DomainError("modulus must be positive")
    local: list[tuple[int, list[tuple[int, int]]]] = []  # (p^e, [(gen mod p^e, order)])
    for p, e in _factorize(q):
        pk = p ** e
        if p == 2:
            if e == 1:
                gens = []
            elif e == 2:
                gens = [(3, 2)]
            else:
                gens = [(pk - 1, 2), (5, 2 ** (e - 2))]
        else:
            phi = (p - 1) * p ** (e - 1)
            gens = [(_smallest_primitive_root(pk, phi), phi)]
        local.append((pk, gens))
    factors = []
    for pk, gens in local:
        rest = q // pk
        for g, order in gens:
            if rest == 1:
                lifted = g % q
            else:
                # CRT lift: == g mod p^e, == 1 mod q/p^e
                inv_rest = pow(rest, -1, pk)
                lifted = (1 + rest * ((g - 1) * inv_rest % pk)) % q
            factors.append(CyclicFactor(lifted, order))
    return UnitGroupDecomposition(q, tuple(factors))


@lru_cache(maxsize=64)
def _dlog_table(q: int) -> dict[int, tuple[int, ...]]:
    """Exponent vector for every unit mod q, built by direct enumeration."""
    grp = unit_group(q)
    table: dict[int, tuple[int, ...]] = {}
    ranges = [range(f.order) for f in grp.factors]
    for vec in product(*ranges):
        a = 1
        for f, x in zip(grp.factors, vec):
            a = a * pow(f.generator, x, q) % q
        table[a] = vec
    if len(table) != grp.phi:
        raise RuntimeError(f"unit group decomposition of {q} is not a bijection")
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    """A primitive character mod q held as exact exponents of e^(2*pi*i/order).

    ``exponents[a]`` is None when gcd(a, q) > 1, else k with
    chi(a) = e^(2*pi*i*k/order).  kappa is the parity bit: chi(-1) = (-1)^kappa.
    m is the least integer >= 2 coprime to q.
    """

    q: int
    exponents: tuple[Optional[int], ...]
    order: int
    kappa: int
    conductor: int
    m: int
    is_quadratic: bool
    label: int

    def exponent(self, n: int) -> Optional[tuple[int, int]]:
        """Root-of-unity exponent pair (k, order) of chi(n), or None."""
        k = self.exponents[n % self.q]
        return None if k is None else (k, self.order)

    def __call__(self, n: int) -> complex:
        k = self.exponents[n % self.q]
        if k is None:
            return 0j
        if self.order == 1:
            return 1 + 0j
        if 2 * k == self.order:
            return -1 + 0j
        return cmath.exp(2j * cmath.pi * k / self.order)

    @property
    def is_even(self) -> bool:
        return self.kappa == 0

    def conjugate(self) -> "DirichletCharacter":
        """The complex-conjugate character (same q, negated exponents)."""
        if self.order <= 2:
            return self
        conj = tuple(None if k is None else (-k) % self.order for k in self.exponents)
        label = _label_of_exponent_table(self.q, conj, self.order)
        return DirichletCharacter(
            q=self.q, exponents=conj, order=self.order, kappa=self.kappa,
            conductor=self.conductor, m=self.m, is_quadratic=self.is_quadratic,
            label=label,
        )

    def values_array(self):
        """chi(0..q-1) as a complex numpy array (cached per character)."""
        import numpy as np

        key = (self.q, self.label)
        arr = _VALUES_CACHE.get(key)
        if arr is None:
            arr = np.array([self(a) for a in range(self.q)], dtype=complex)
            _VALUES_CACHE[key] = arr
        return arr

    @property
    def max_partial_sum(self) -> float:
        """max_j |sum_{n<=j} chi(n)| over one period; Abel tail bounds use it."""
        key = (self.q, self.label)
        val = _PARTIAL_CACHE.get(key)
        if val is None:
            s, best = 0j, 0.0
            for a in range(self.q):
                s += self(a)
                best = max(best, abs(s))
            _PARTIAL_CACHE[key] = val = best
        return val


_VALUES_CACHE: dict = {}
_PARTIAL_CACHE: dict = {}


def min_coprime(q: int) -> int:
    """Least n >= 2 with gcd(n, q) = 1."""
    n = 2
    while math.gcd(n, q) != 1:
        n += 1
    return n


def _conductor_of(q: int, table: tuple[Optional[int], ...], order: int) -> int:
    """Smallest modulus d | q such that chi is trivial on a == 1 (mod d)."""
    for d in sorted(_divisors(q)):
        ok = True
        for a in range(1, q, d if d > 0 else q):
            k = table[a % q]
            if k is not None and k % order != 0:
                ok = False
                break
        if ok:
            return d
    return q


def _divisors(q: int) -> list[int]:
    divs = [1]
    for p, e in _factorize(q):
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return divs


@lru_cache(maxsize=32)
def _all_exponent_tables(q: int):
    """Every character mod q as (table mod group_exponent ... ) in label order.

    Returns a list of (exponents tuple normalized to the character order,
    order, kappa).  Order of the list is lexicographic in the generator
    exponent vectors; used by enumerate_primitive and the orthogonality
    tests.
    """
    grp = unit_group(q)
    dlog = _dlog_table(q)
    factor_orders = [f.order for f in grp.factors]
    chars = []
    for cvec in product(*[range(d) for d in factor_orders]):
        # chi(g_i) = e^(2 pi i c_i / d_i); character order = lcm d_i/gcd(d_i,c_i)
        order = 1
        for c, d in zip(cvec, factor_orders):
            order = math.lcm(order, d // math.gcd(d, c))
        table: list[Optional[int]] = [None] * q
        for a, vec in dlog.items():
            k = 0
            for c, d, x in zip(cvec, factor_orders, vec):
                k += x * (c * order // d)  # c*order/d is exact by choice of order
            table[a] = k % order
        kappa = 0 if q <= 2 or table[q - 1] == 0 else 1
        chars.append((tuple(table), order, kappa))
    return chars


@lru_cache(maxsize=32)
def enumerate_primitive(q: int) -> tuple[DirichletCharacter, ...]:
    """All primitive characters mod q, deterministically labeled.

    Raises DomainError for q < 3 (no primitive character mod 1 or 2 is of
    interest here).  May legitimately return an empty tuple, e.g. q = 6.
    """
    if q < 3:
        raise DomainError(f"q = {q} < 3: no primitive characters to enumerate")
    out = []
    m = min_coprime(q)
    for table, order, kappa in _all_exponent_tables(q):
        cond = _conductor_of(q, table, order)
        if cond != q:
            continue
        chi = DirichletCharacter(
            q=q, exponents=table, order=order, kappa=kappa, conductor=cond,
            m=m, is_quadratic=(order == 2), label=len(out),
        )
        out.append(chi)
    return tuple(out)


def from_label(q: int, label: int) -> DirichletCharacter:
    chars = enumerate_primitive(q)
    if not 0 <= label < len(chars):
        raise DomainError(f"label {label} out of range: {len(chars)} primitive characters mod {q}")
    return chars[label]


def _label_of_exponent_table(q: int, table: tuple[Optional[int], ...], order: int) -> int:
    for chi in enumerate_primitive(q):
        if chi.order == order and chi.exponents == table:
            return chi.label
    raise RuntimeError(f"character table not found in enumeration mod {q}")


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d|n), the extension of Jacobi to all integers."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    if d % 2 == 0 and n % 2 == 0:
        return 0
    sign = 1
    if n < 0:
        n = -n
        if d < 0:
            sign = -sign
    # strip twos from n: (d|2) = 0, 1, -1 for d even, d == +-1 (8), d == +-3 (8)
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t % 2 == 1 and d % 8 in (3, 5):
        sign = -sign
    d %= n
    # Jacobi symbol (d|n) for odd n > 0 by quadratic reciprocity
    a = d
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def _is_fundamental_discriminant(d: int) -> bool:
    if d == 1 or d == 0:
        return False

    def squarefree(n):
        return all(e == 1 for _, e in _factorize(abs(n)))

    if d % 4 == 1:
        return squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def kronecker_character(d: int) -> DirichletCharacter:
    """The real primitive character n -> (d|n) for a fundamental discriminant d.

    Positive d gives an even character, negative d an odd one; the modulus
    is |d|.  Non-fundamental input is rejected.
    """
    if not _is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    q = abs(d)
    table: list[Optional[int]] = [None] * q
    for a in range(q):
        v = kronecker_symbol(d, a)
        if v == 1:
            table[a] = 0
        elif v == -1:
            table[a] = 1
    order = 2 if any(k == 1 for k in table) else 1
    tup = tuple(table)
    cond = _conductor_of(q, tup, order)
    if cond != q:
        raise RuntimeError(f"Kronecker character of {d} is not primitive mod {q}")
    kappa = 0 if tup[q - 1] == 0 else 1
    label = _label_of_exponent_table(q, tup, order)
    return DirichletCharacter(
        q=q, exponents=tup, order=order, kappa=kappa, conductor=cond,
        m=min_coprime(q), is_quadratic=True, label=label,
    )


def gauss_sum(chi: DirichletCharacter) -> ComplexValue:
    """tau(chi) = sum_a chi(a) e^(2*pi*i*a/q); |tau| = sqrt(q) for primitive chi."""
    q = chi.q
    total = 0j
    for a in range(1, q):
        k = chi.exponents[a]
        if k is None:
            continue
        total += cmath.exp(2j * cmath.pi * (k / chi.order + a / q))
    err = 4e-16 * q * math.sqrt(q)
    if abs(abs(total) - math.sqrt(q)) > 1e-10 * math.sqrt(q):
        raise RuntimeError(f"|gauss_sum| != sqrt(q) for q={q}, label={chi.label}")
    return ComplexValue(total, err)
