"""Coefficient rings: GF(p^k), Z, Q and monogenic number rings Z[a]/(f).

All rings expose a small common protocol used by the polynomial layer:

- ``zero()``, ``one()``, ``coerce(x)``
- ``characteristic`` (int, 0 for Z/Q/number rings)
- ``is_field`` (bool)
- ``inv(c)`` (fields only)
- ``random(rng)`` for randomised tests
- ``descriptor()`` and the module-level ``parse_descriptor``

Elements are plain ``int`` (for Z), ``fractions.Fraction`` (for Q), or the
wrapper classes :class:`GFElem` / :class:`NRElem`, all of which support the
usual arithmetic operators and are falsy exactly when zero.
"""

from __future__ import annotations

from fractions import Fraction
import re

# ---------------------------------------------------------------------------
# primality


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all word-sized inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1) if n >= 0 else bytearray()
    out = []
    for q in range(2, n + 1):
        if sieve[q]:
            out.append(q)
            for m in range(q * q, n + 1, q):
                sieve[m] = 0
    return out


# ---------------------------------------------------------------------------
# univariate polynomials over F_p, stored as little-endian int lists


def up_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def up_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        c = (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        out[i] = c % p
    return up_trim(out)


def up_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        c = (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
        out[i] = c % p
    return up_trim(out)


def up_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return up_trim(out)


def up_scale(a, c, p):
    c %= p
    return up_trim([ai * c % p for ai in a])


def up_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and up_trim(a):
        if len(a) < len(b):
            break
        c = a[-1] * inv_lead % p
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] = (a[i + k] - c * bi) % p
        up_trim(a)
    return up_trim(q), up_trim(a)


def up_mod(a, b, p):
    return up_divmod(a, b, p)[1]


def up_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, up_mod(a, b, p)
    if a:
        a = up_scale(a, pow(a[-1], p - 2, p), p)
    return a


def up_pow_mod(a, e, mod, p):
    result = [1]
    a = up_mod(a, mod, p)
    while e > 0:
        if e & 1:
            result = up_mod(up_mul(result, a, p), mod, p)
        a = up_mod(up_mul(a, a, p), mod, p)
        e >>= 1
    return result


def up_deriv(a, p):
    return up_trim([(i * a[i]) % p for i in range(1, len(a))])


def up_is_irreducible(g: list[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    k = len(g) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x mod g
    h = x
    for _ in range(k):
        h = up_pow_mod(h, p, g, p)
    if up_trim(up_sub(h, x, p)):
        return False
    # gcd(x^(p^(k/q)) - x, g) == 1 for all prime divisors q of k
    for q in sorted({d for d in range(2, k + 1) if k % d == 0 and is_prime(d)}):
        h = x
        for _ in range(k // q):
            h = up_pow_mod(h, p, g, p)
        if len(up_gcd(up_sub(h, x, p), g, p)) > 1:
            return False
    return True


def canonical_irreducible(p: int, k: int) -> list[int]:
    """The first monic irreducible of degree k over F_p in counter order.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are enumerated by the
    integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}, smallest first.
    """
    if k == 1:
        return [0, 1]
    for code in range(p**k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        g = coeffs + [1]
        if up_is_irreducible(g, p):
            return g
    raise ArithmeticError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# GF(p^k)


class GFElem:
    """An element of GF(p^k), stored as a coefficient tuple in the generator t."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "GF", coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def _co(self, other):
        if isinstance(other, GFElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        return GFElem(self.field, [(a + b) % p for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        return GFElem(self.field, [(a - b) % p for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        p = self.field.p
        return GFElem(self.field, [(-a) % p for a in self.coeffs])

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        if f.k == 1:
            return GFElem(f, (self.coeffs[0] * o.coeffs[0] % f.p,))
        prod = up_mod(up_mul(list(self.coeffs), list(o.coeffs), f.p), f.modulus, f.p)
        prod += [0] * (f.k - len(prod))
        return GFElem(f, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def inverse(self) -> "GFElem":
        f = self.field
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if f.k == 1:
            return GFElem(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        # extended Euclid on (self, modulus)
        r0, r1 = list(f.modulus), up_trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = up_divmod(r0, r1, f.p)
            r0, r1 = r1, r
            s0, s1 = s1, up_sub(s0, up_mul(q, s1, f.p), f.p)
        inv = up_scale(s0, pow(r0[0], f.p - 2, f.p), f.p)
        inv += [0] * (f.k - len(inv))
        return GFElem(f, inv)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.coerce(other)
        return (
            isinstance(other, GFElem)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        f = self.field
        if f.k == 1:
            return str(self.coeffs[0])
        parts = []
        for i in range(f.k - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if c == 1 else f"{c}*{t}")
        return "+".join(parts) if parts else "0"


class GF:
    """The finite field GF(p^k) = F_p[t]/(g), g monic irreducible of degree k."""

    is_field = True

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.characteristic = p
        if k == 1:
            self.modulus = [0, 1]
        else:
            if modulus is None:
                modulus = canonical_irreducible(p, k)
            modulus = [c % p for c in modulus]
            if len(up_trim(list(modulus))) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not up_is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
            self.modulus = list(modulus)

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, tuple(self.modulus)))

    @property
    def order(self) -> int:
        return self.p**self.k

    def zero(self) -> GFElem:
        return GFElem(self, (0,) * self.k)

    def one(self) -> GFElem:
        return GFElem(self, (1,) + (0,) * (self.k - 1))

    def generator(self) -> GFElem:
        """The class of t (for k = 1 this is just 1)."""
        if self.k == 1:
            return self.one()
        return GFElem(self, (0, 1) + (0,) * (self.k - 2))

    def elem(self, coeffs) -> GFElem:
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        coeffs += [0] * (self.k - len(coeffs))
        return GFElem(self, coeffs)

    def coerce(self, x) -> GFElem:
        if isinstance(x, GFElem):
            if x.field != self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, int):
            return GFElem(self, (x % self.p,) + (0,) * (self.k - 1))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return self.coerce(x.numerator) / self.coerce(x.denominator)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def inv(self, c: GFElem) -> GFElem:
        return self.coerce(c).inverse()

    def frobenius(self, c: GFElem) -> GFElem:
        return self.coerce(c) ** self.p

    def pth_root(self, c: GFElem) -> GFElem:
        """The unique p-th root; inverse of Frobenius, so c**(p^(k-1))."""
        return self.coerce(c) ** (self.p ** (self.k - 1))

    def elements(self):
        for code in range(self.order):
            coeffs = []
            c = code
            for _ in range(self.k):
                coeffs.append(c % self.p)
                c //= self.p
            yield GFElem(self, coeffs)

    def random(self, rng) -> GFElem:
        return GFElem(self, [rng.randrange(self.p) for _ in range(self.k)])

    def random_nonzero(self, rng) -> GFElem:
        while True:
            c = self.random(rng)
            if c:
                return c

    def descriptor(self) -> str:
        if self.k == 1:
            return f"Fp:{self.p}"
        return f"Fq:{self.p}^{self.k}:{format_up(self.modulus, 't')}"

    def __repr__(self):
        return self.descriptor()


# ---------------------------------------------------------------------------
# Z and Q


class _ZZ:
    is_field = False
    characteristic = 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise TypeError(f"cannot coerce {x!r} into Z")

    def inv(self, c):
        if c in (1, -1):
            return c
        raise ZeroDivisionError(f"{c} is not a unit in Z")

    def random(self, rng):
        return rng.randint(-9, 9)

    def descriptor(self):
        return "Z"

    def __repr__(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, _ZZ)

    def __hash__(self):
        return hash("ZZ")


class _QQ:
    is_field = True
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def inv(self, c):
        return 1 / Fraction(c)

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def descriptor(self):
        return "Q"

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, _QQ)

    def __hash__(self):
        return hash("QQ")


ZZ = _ZZ()
QQ = _QQ()


# ---------------------------------------------------------------------------
# monogenic number rings Z[a]/(f)


class NRElem:
    """An element of Z[a]/(f), stored by its coefficient tuple in a."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "NumberRing", coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _co(self, other):
        if isinstance(other, NRElem):
            if other.ring != self.ring:
                raise ValueError("elements of different number rings")
            return other
        if isinstance(other, int):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return NRElem(self.ring, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return NRElem(self.ring, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return NRElem(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.ring.degree
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                prod[i + j] += a * b
        # reduce modulo the monic minimal polynomial
        f = self.ring.minpoly
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            prod[i] = 0
            for j in range(d):
                prod[i - d + j] -= c * f[j]
        return NRElem(self.ring, prod[:d])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in a ring")
        result = self.ring.one()
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.coerce(other)
        return (
            isinstance(other, NRElem)
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((tuple(self.ring.minpoly), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "a" if i == 1 else f"a^{i}"
                if c == 1:
                    parts.append(t)
                elif c == -1:
                    parts.append(f"-{t}")
                else:
                    parts.append(f"{c}*{t}")
        if not parts:
            return "0"
        out = parts[0]
        for s in parts[1:]:
            out += s if s.startswith("-") else "+" + s
        return out


class NumberRing:
    """Z[a]/(f) for a monic integer polynomial f."""

    is_field = False
    characteristic = 0

    def __init__(self, minpoly):
        minpoly = list(minpoly)
        if len(minpoly) < 2 or minpoly[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.minpoly = minpoly[:-1]  # non-leading coefficients, little-endian
        self.full_minpoly = minpoly
        self.degree = len(minpoly) - 1

    def __eq__(self, other):
        return isinstance(other, NumberRing) and other.full_minpoly == self.full_minpoly

    def __hash__(self):
        return hash(("NR", tuple(self.full_minpoly)))

    def zero(self):
        return NRElem(self, (0,) * self.degree)

    def one(self):
        return NRElem(self, (1,) + (0,) * (self.degree - 1))

    def generator(self) -> NRElem:
        if self.degree == 1:
            return NRElem(self, (-self.minpoly[0],))
        return NRElem(self, (0, 1) + (0,) * (self.degree - 2))

    def elem(self, coeffs) -> NRElem:
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients")
        coeffs += [0] * (self.degree - len(coeffs))
        return NRElem(self, coeffs)

    def coerce(self, x):
        if isinstance(x, NRElem):
            if x.ring != self:
                raise ValueError("element of a different number ring")
            return x
        if isinstance(x, int):
            return NRElem(self, (x,) + (0,) * (self.degree - 1))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def inv(self, c):
        c = self.coerce(c)
        if c == self.one():
            return c
        if c == -self.one():
            return c
        raise ZeroDivisionError("not an obvious unit in a number ring")

    def random(self, rng):
        return NRElem(self, [rng.randint(-5, 5) for _ in range(self.degree)])

    def descriptor(self) -> str:
        return "NR:" + format_up(self.full_minpoly, "a")

    def __repr__(self):
        return self.descriptor()


# ---------------------------------------------------------------------------
# reduction of number-ring coefficients modulo a prime


def factor_mod_p(coeffs, p: int) -> list[tuple[list[int], int]]:
    """Factor a univariate integer polynomial modulo p into monic irreducibles.

    Returns a list of (monic factor as little-endian coefficient list,
    multiplicity), sorted by (degree, coefficients).  Designed for the small
    degrees arising from minimal polynomials (degree <= 6).
    """
    f = up_trim([c % p for c in coeffs])
    if not f:
        raise ValueError("polynomial vanishes modulo p")
    f = up_scale(f, pow(f[-1], p - 2, p), p)
    if len(f) == 1:
        return []
    factors: dict[tuple[int, ...], int] = {}

    def record(g, mult):
        key = tuple(g)
        factors[key] = factors.get(key, 0) + mult

    def split_squarefree(g, mult):
        # distinct-degree splitting of a monic squarefree g
        g = list(g)
        h = [0, 1]
        d = 0
        while len(g) > 1:
            d += 1
            if 2 * d > len(g) - 1:
                record(g, mult)
                return
            h = up_pow_mod(h, p, g, p)
            gd = up_gcd(up_sub(h, [0, 1], p), g, p)
            if len(gd) > 1:
                for irr in split_equal_degree(gd, d):
                    record(irr, mult)
                g, _ = up_divmod(g, gd, p)

    def split_equal_degree(g, d):
        # g is a product of distinct monic irreducibles, all of degree d
        if len(g) - 1 == d:
            return [g]
        if d == 1:
            if p > 2_000_000:
                raise NotImplementedError("root search over a huge prime field")
            roots = [a for a in range(p) if up_mod(g, [(-a) % p, 1], p) == []]
            return [[(-a) % p, 1] for a in sorted(roots)]
        if p**d > 2_000_000:
            raise NotImplementedError("equal-degree splitting beyond search range")
        out = []
        rem = list(g)
        for code in range(p**d):
            cand = []
            c = code
            for _ in range(d):
                cand.append(c % p)
                c //= p
            cand.append(1)
            if not up_is_irreducible(cand, p):
                continue
            q, r = up_divmod(rem, cand, p)
            if not r:
                out.append(cand)
                rem = q
                if len(rem) - 1 < d:
                    break
        return out

    # squarefree decomposition over F_p, then split each squarefree part
    def squarefree_parts(g, outer):
        g = list(g)
        dg = up_deriv(g, p)
        if not dg:
            # g is a p-th power
            root = [g[i] for i in range(0, len(g), p)]
            squarefree_parts(root, outer * p)
            return
        c = up_gcd(g, dg, p)
        w, _ = up_divmod(g, c, p)
        i = 1
        while len(w) > 1:
            y = up_gcd(w, c, p)
            z, _ = up_divmod(w, y, p)
            if len(z) > 1:
                split_squarefree(z, outer * i)
            w = y
            c, _ = up_divmod(c, y, p)
            i += 1
        if len(c) > 1:
            root = [c[i] for i in range(0, len(c), p)]
            squarefree_parts(root, outer * p)

    squarefree_parts(f, 1)
    items = sorted(factors.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return [(list(k), m) for k, m in items]


def reduce_coefficient(c: NRElem, p: int, g) -> GFElem:
    """Map c in Z[a]/(f) to F_p[t]/(g) by a |-> t, where g | f mod p."""
    ring = c.ring
    f_mod = [x % p for x in ring.full_minpoly]
    g = up_trim([x % p for x in list(g)])
    _, r = up_divmod(f_mod, g, p)
    if up_trim(r):
        raise ValueError("modulus does not divide the minimal polynomial mod p")
    field = GF(p, len(g) - 1, g if len(g) > 2 else None)
    if len(g) == 2:
        # degree-1 factor t + g0: a maps to -g0 in F_p
        field = GF(p, 1)
        t = field.coerce(-g[0])
    else:
        t = field.generator()
    acc = field.zero()
    power = field.one()
    for coef in c.coeffs:
        acc = acc + field.coerce(coef) * power
        power = power * t
    return acc


def reduce_int(c: int, p: int) -> GFElem:
    return GF(p, 1).coerce(c)


# ---------------------------------------------------------------------------
# descriptors


def format_up(coeffs, var: str) -> str:
    """Render a little-endian integer coefficient list as e.g. 't^2+1'."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            v = var if i == 1 else f"{var}^{i}"
            if c == 1:
                term = v
            elif c == -1:
                term = f"-{v}"
            else:
                term = f"{c}*{v}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def parse_up(text: str, var: str) -> list[int]:
    """Parse e.g. 't^2+1' or '2*t+3' into a little-endian coefficient list."""
    text = text.replace(" ", "").replace("**", "^")
    if not text:
        raise ValueError("empty polynomial")
    tokens = re.findall(r"[+-]?[^+-]+", text)
    coeffs: dict[int, int] = {}
    for tok in tokens:
        sign = 1
        if tok.startswith("+"):
            tok = tok[1:]
        elif tok.startswith("-"):
            sign = -1
            tok = tok[1:]
        m = re.fullmatch(rf"(?:(\d+)\*?)?(?:{re.escape(var)}(?:\^(\d+))?)?", tok)
        if not m or (m.group(1) is None and var not in tok and not tok.isdigit()):
            raise ValueError(f"cannot parse monomial {tok!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if var in tok:
            exp = int(m.group(2)) if m.group(2) else 1
        else:
            exp = 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def parse_descriptor(text: str):
    """Parse a ring descriptor: Fp:5, Fq:3^2:t^2+1, Z, Q, NR:a^2+1."""
    text = text.strip()
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return GF(int(text[3:]), 1)
    if text.startswith("Fq:"):
        rest = text[3:]
        head, _, modtext = rest.partition(":")
        p_str, _, k_str = head.partition("^")
        p, k = int(p_str), int(k_str) if k_str else 1
        modulus = parse_up(modtext, "t") if modtext else None
        return GF(p, k, modulus)
    if text.startswith("NR:"):
        return NumberRing(parse_up(text[3:], "a"))
    raise ValueError(f"unknown ring descriptor {text!r}")
