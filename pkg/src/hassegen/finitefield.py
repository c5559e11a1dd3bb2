"""Small finite fields ``F_{p^k}`` in odd characteristic.

An element is a coefficient tuple ``(c_0, ..., c_{k-1})`` in the power basis
of ``F_p[u]/(modulus)``.  "Lexicographic" order on elements always means
tuple order on that coefficient vector, lowest degree first.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import FFZeroDivision, FieldMismatch, UnsupportedField

MAX_FIELD_SIZE = 2**20


def field_bound() -> int:
    """Largest allowed field size; ``HASSEGEN_FIELD_BOUND`` may only lower it."""
    env = os.environ.get("HASSEGEN_FIELD_BOUND")
    if env:
        try:
            return min(MAX_FIELD_SIZE, int(env))
        except ValueError:
            pass
    return MAX_FIELD_SIZE


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists lowest degree first -------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result, base = [1], _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over ``F_p``."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, f, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


# --- fields and elements ------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]  # monic, lowest degree first, length k+1

    @property
    def size(self) -> int:
        return self.p**self.k

    @property
    def q(self) -> int:
        return self.p**self.k

    def __call__(self, value) -> FFElem:
        return self.elem(value)

    def elem(self, value) -> FFElem:
        if isinstance(value, FFElem):
            if value.field != self:
                raise FieldMismatch(f"{value} is not in {self}")
            return value
        if isinstance(value, int):
            return FFElem(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise FieldMismatch(f"too many coefficients for {self}")
        return FFElem(self, tuple(coeffs) + (0,) * (self.k - len(coeffs)))

    def zero(self) -> FFElem:
        return self.elem(0)

    def one(self) -> FFElem:
        return self.elem(1)

    def gen(self) -> FFElem:
        """The class of ``u`` (0 for prime fields, where the modulus is ``x``)."""
        if self.k == 1:
            return self.elem(-self.modulus[0])
        return self.elem((0, 1))

    def elements(self) -> Iterator[FFElem]:
        """All elements in lexicographic order."""
        for c in itertools.product(range(self.p), repeat=self.k):
            yield FFElem(self, c)

    def primitive_element(self) -> FFElem:
        return _primitive_element(self)

    @functools.cached_property
    def _tables(self) -> _LogTables | None:
        if self.k == 1 or self.size > TABLE_LIMIT:
            return None
        return _LogTables.build(self)

    def __str__(self) -> str:
        return f"F_{self.size}"


def make_field(p: int, k: int = 1) -> FieldSpec:
    """``F_{p^k}`` with the lexicographically smallest monic irreducible modulus."""
    if p == 2:
        raise UnsupportedField("unsupported characteristic 2")
    if not is_prime(p) or k < 1:
        raise UnsupportedField(f"p={p}, k={k} is not an odd prime power")
    if p**k > field_bound():
        raise UnsupportedField(f"field size {p}^{k} exceeds bound {field_bound()}")
    return _make_field(p, k)


@functools.lru_cache(maxsize=None)
def _make_field(p: int, k: int) -> FieldSpec:
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return FieldSpec(p, k, tuple(f))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FFElem:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other) -> FFElem:
        if isinstance(other, int):
            return self.field.elem(other)
        if other.field != self.field:
            raise FieldMismatch(f"{other.field} != {self.field}")
        return other

    def __add__(self, other) -> FFElem:
        other = self._check(other)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FFElem:
        p = self.field.p
        return FFElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other) -> FFElem:
        return self + (-self._check(other))

    def __rsub__(self, other) -> FFElem:
        return self._check(other) - self

    def __mul__(self, other) -> FFElem:
        other = self._check(other)
        f = self.field
        if f.k == 1:
            return FFElem(f, (self.coeffs[0] * other.coeffs[0] % f.p,))
        t = f._tables
        if t is not None:
            la, lb = t.log.get(self.coeffs), t.log.get(other.coeffs)
            if la is None or lb is None:
                return f.zero()
            return t.exp[(la + lb) % t.n]
        return _slow_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FFElem:
        if e < 0:
            return self.inverse() ** (-e)
        t = self.field._tables
        if t is not None:
            la = t.log.get(self.coeffs)
            if la is None:
                return self.field.one() if e == 0 else self
            return t.exp[la * e % t.n]
        result, base = self.field.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FFElem:
        if self.is_zero():
            raise FFZeroDivision(f"division by zero in {self.field}")
        return self ** (self.field.size - 2)

    def __truediv__(self, other) -> FFElem:
        return self * self._check(other).inverse()

    def __rtruediv__(self, other) -> FFElem:
        return self._check(other) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def frobenius(self, times: int = 1) -> FFElem:
        return self ** (self.field.p**times)

    def __lt__(self, other: FFElem) -> bool:
        return self.coeffs < other.coeffs

    def __int__(self) -> int:
        if any(self.coeffs[1:]):
            raise ValueError(f"{self} is not in the prime field")
        return self.coeffs[0]

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
                terms.append(f"{c}{mono}" if c != 1 or i == 0 else mono)
        return "+".join(terms) if terms else "0"


def _slow_mul(a: FFElem, b: FFElem) -> FFElem:
    f = a.field
    prod = _pmod(_pmul(a.coeffs, b.coeffs, f.p), f.modulus, f.p)
    return FFElem(f, tuple(prod) + (0,) * (f.k - len(prod)))


# fields up to this size multiply through discrete-log tables
TABLE_LIMIT = 1 << 17


@dataclass(frozen=True)
class _LogTables:
    n: int
    exp: tuple[FFElem, ...]
    log: dict

    @classmethod
    def build(cls, f: FieldSpec) -> _LogTables:
        n = f.size - 1
        ps = prime_factors(n)
        one = f.one()

        def slow_pow(x: FFElem, e: int) -> FFElem:
            r = one
            while e:
                if e & 1:
                    r = _slow_mul(r, x)
                x = _slow_mul(x, x)
                e >>= 1
            return r

        for g in f.elements():
            if g.is_zero():
                continue
            if all(slow_pow(g, n // r) != one for r in ps):
                break
        exp, log, x = [], {}, one
        for i in range(n):
            exp.append(x)
            log[x.coeffs] = i
            x = _slow_mul(x, g)
        return cls(n, tuple(exp), log)


def arith(a: FFElem, b: FFElem | int, op: str) -> FFElem:
    """Dispatch ``op`` in ``{add, sub, mul, div, pow}``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


@functools.lru_cache(maxsize=None)
def _primitive_element(f: FieldSpec) -> FFElem:
    n = f.size - 1
    ps = prime_factors(n)
    for x in f.elements():
        if x.is_zero():
            continue
        if all(x ** (n // r) != f.one() for r in ps):
            return x
    raise AssertionError("no primitive element")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _nonresidue(f: FieldSpec) -> FFElem:
    e = (f.size - 1) // 2
    return next(x for x in f.elements() if not x.is_zero() and x**e != f.one())


def is_square(x: FFElem) -> tuple[bool, FFElem | None]:
    """Whether ``x`` is a square; if so also the lexicographically smaller root."""
    f = x.field
    if x.is_zero():
        return True, f.zero()
    q = f.size
    if x ** ((q - 1) // 2) != f.one():
        return False, None
    # Tonelli-Shanks
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = _nonresidue(f) ** t
    r = x ** ((t + 1) // 2)
    b = x**t
    m = s
    while b != f.one():
        i, bb = 0, b
        while bb != f.one():
            bb, i = bb * bb, i + 1
        w = z ** (2 ** (m - i - 1))
        r, z = r * w, w * w
        b, m = b * z, i
    return True, min(r, -r)


# --- subfields ----------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism ``small -> big`` fixed by the image of ``small.gen()``."""

    small: FieldSpec
    big: FieldSpec
    image_of_gen: FFElem

    def __call__(self, x: FFElem) -> FFElem:
        if x.field != self.small:
            raise FieldMismatch(f"{x} is not in {self.small}")
        if self.small.k == 1:
            return self.big.elem(x.coeffs[0])
        out = self.big.zero()
        power = self.big.one()
        for c in x.coeffs:
            if c:
                out = out + power * c
            power = power * self.image_of_gen
        return out

    @functools.cached_property
    def _preimages(self) -> dict[FFElem, FFElem]:
        return {self(x): x for x in self.small.elements()}

    def preimage(self, y: FFElem) -> FFElem | None:
        """Element of ``small`` mapping to ``y``, or None when ``y`` is outside the image."""
        return self._preimages.get(y)

    def compose(self, inner: Embedding) -> Embedding:
        """``self o inner``."""
        return Embedding(inner.small, self.big, self(inner.image_of_gen))


def subfield_elements(big: FieldSpec, k: int) -> list[FFElem]:
    """The unique subfield of size ``p^k`` inside ``big``, lexicographically sorted."""
    if big.k % k:
        raise FieldMismatch(f"F_{big.p}^{k} is not a subfield of {big}")
    g = big.primitive_element()
    h = g ** ((big.size - 1) // (big.p**k - 1))
    elems = [big.zero()]
    y = big.one()
    for _ in range(big.p**k - 1):
        elems.append(y)
        y = y * h
    return sorted(elems)


def _eval_poly(coeffs: Sequence[int], x: FFElem) -> FFElem:
    out = x.field.zero()
    for c in reversed(coeffs):
        out = out * x + c
    return out


def find_embedding(small: FieldSpec, big: FieldSpec, constraints: Sequence[tuple[FFElem, FFElem]] = ()) -> Embedding:
    """Embedding sending ``small.gen()`` to the lex-smallest admissible root of its modulus.

    ``constraints`` is a list of pairs ``(x, y)`` that the embedding must map
    ``x -> y``; used to keep towers of base changes compatible.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldMismatch(f"{small} does not embed in {big}")
    if small.k == 1:
        emb = Embedding(small, big, big.elem(-small.modulus[0]))
        if any(emb(x) != y for x, y in constraints):
            raise FieldMismatch("prime-field constraint cannot be met")
        return emb
    for r in subfield_elements(big, small.k):
        if _eval_poly(small.modulus, r).is_zero():
            emb = Embedding(small, big, r)
            if all(emb(x) == y for x, y in constraints):
                return emb
    raise FieldMismatch(f"no embedding {small} -> {big} meets the constraints")


@functools.lru_cache(maxsize=None)
def standard_embedding(small: FieldSpec, big: FieldSpec) -> Embedding:
    return find_embedding(small, big)


def norm_to_base(x: FFElem, base: FieldSpec, emb: Embedding | None = None) -> FFElem:
    """``x^((q^d - 1)/(q - 1))`` pulled back into ``base``."""
    big = x.field
    if base.p != big.p or big.k % base.k:
        raise FieldMismatch(f"{base} is not a subfield of {big}")
    emb = emb or standard_embedding(base, big)
    q = base.size
    y = x ** ((big.size - 1) // (q - 1)) if not x.is_zero() else big.zero()
    pre = emb.preimage(y)
    if pre is None:  # pragma: no cover - a norm always lies in the subfield
        raise AssertionError("norm outside the base field")
    return pre


def multiplicative_order(x: FFElem) -> int:
    if x.is_zero():
        raise FFZeroDivision("zero has no multiplicative order")
    n = x.field.size - 1
    order = n
    for r in prime_factors(n):
        while order % r == 0 and x ** (order // r) == x.field.one():
            order //= r
    return order
