"""
Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis ``1, z, ..., z^(phi(N)-1)`` reduced
modulo the N-th cyclotomic polynomial, so equality of elements is equality of
coefficient vectors.  Internally a :class:`CycloElement` keeps an integer
numerator vector and one positive common denominator; the public
``coefficients`` view is a tuple of :class:`fractions.Fraction`.

Heavy operations (minimal polynomials, Galois stabilisers) use reductions
modulo primes ``p = 1 (mod N)``, where the cyclotomic polynomial splits, and
then certify the answer with exact arithmetic.  Nothing returned by this module
depends on a modular computation being lucky.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .numtheory import divisors, euler_totient, mobius, split_prime, units


# --------------------------------------------------------------------------
# integer polynomial kernels (lowest degree first)

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _encode(a, kb):
    pos = b"".join((c if c > 0 else 0).to_bytes(kb, "little") for c in a)
    neg = b"".join((-c if c < 0 else 0).to_bytes(kb, "little") for c in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def int_poly_mul(a, b):
    """Product of two integer coefficient lists (Kronecker substitution)."""
    if not a or not b:
        return []
    if len(a) < 8 or len(b) < 8:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    kb = (bound.bit_length() + 2 + 7) // 8
    m = len(a) + len(b) - 1
    prod = _encode(a, kb) * _encode(b, kb)
    half = 1 << (8 * kb - 1)
    offset = int.from_bytes((b"\x00" * (kb - 1) + b"\x80") * m, "little")
    raw = (prod + offset).to_bytes(m * kb, "little")
    return [int.from_bytes(raw[i * kb:(i + 1) * kb], "little") - half for i in range(m)]


@lru_cache(maxsize=None)
def _cyclotomic_int(n):
    # Phi_n = prod_{d | n} (x^d - 1)^mu(n/d); multiply the positive factors,
    # then divide out the negative ones (exact, each division by x^d - 1).
    num = [1]
    dens = []
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            f = [-1] + [0] * (d - 1) + [1]
            num = int_poly_mul(num, f)
        elif mu == -1:
            dens.append(d)
    for d in dens:
        # divide by x^d - 1: q_i = -(a_i) + q_{i-d}  solved from the top
        deg = len(num) - 1
        q = [0] * (deg - d + 1)
        r = list(num)
        for i in range(deg, d - 1, -1):
            c = r[i]
            if c:
                q[i - d] = c
                r[i] = 0
                r[i - d] += c
        if any(r):
            raise ArithmeticError(f"non-exact division building Phi_{n}")
        num = q
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_terms(n):
    phi = _cyclotomic_int(n)
    deg = len(phi) - 1
    return deg, tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def _reduce(r, n):
    """Reduce an integer list (any length) modulo x^n - 1 and then Phi_n, in place-ish."""
    deg, terms = _reduction_terms(n)
    if len(r) > n:
        folded = r[:n]
        for i in range(n, len(r)):
            folded[i % n] += r[i]
        r = folded
    else:
        r = list(r)
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            base = i - deg
            for j, pj in terms:
                r[base + j] -= c * pj
    if len(r) < deg:
        r.extend([0] * (deg - len(r)))
    return r[:deg]


# --------------------------------------------------------------------------
# rational polynomials

def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip().replace("−", "-"))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def format_rational(q):
    q = _frac(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RatPolynomial:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("_c",)

    def __init__(self, coefficients=()):
        self._c = tuple(_trim([_frac(c) for c in coefficients]))

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def coefficients(self):
        return self._c

    @property
    def degree(self):
        """Degree; the zero polynomial has degree -1."""
        return len(self._c) - 1

    @property
    def leading(self):
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self):
        return not self._c

    def is_monic(self):
        return bool(self._c) and self._c[-1] == 1

    def is_integral(self):
        """Monic with integer coefficients."""
        return self.is_monic() and all(c.denominator == 1 for c in self._c)

    def monic(self):
        if not self._c:
            raise ZeroDivisionError("the zero polynomial has no monic associate")
        lead = self._c[-1]
        return RatPolynomial([c / lead for c in self._c])

    def __eq__(self, other):
        if isinstance(other, RatPolynomial):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPolynomial([-c for c in self._c])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self._c or not other._c:
            return RatPolynomial()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x:
                for j, y in enumerate(other._c):
                    out[i + j] += x * y
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = RatPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        dq = len(r) - len(other._c)
        if dq < 0:
            return RatPolynomial(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other._c[-1]
        db = len(other._c) - 1
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                f = c / lead
                q[i - db] = f
                for j, b in enumerate(other._c):
                    r[i - db + j] -= f * b
        return RatPolynomial(q), RatPolynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element accepting int/Fraction."""
        acc = None
        for c in reversed(self._c):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return Fraction(0) * value if isinstance(value, (int, Fraction)) else value * 0
        if not isinstance(acc, (int, Fraction)):
            return acc
        return Fraction(acc)

    def derivative(self):
        return RatPolynomial([i * c for i, c in enumerate(self._c)][1:])

    @staticmethod
    def xgcd(a, b):
        """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic (or zero)."""
        r0, r1 = _as_poly(a), _as_poly(b)
        s0, s1 = RatPolynomial([1]), RatPolynomial()
        t0, t1 = RatPolynomial(), RatPolynomial([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        lead = r0.leading
        return r0.monic(), s0 * RatPolynomial([1 / lead]), t0 * RatPolynomial([1 / lead])

    def __repr__(self):
        return f"RatPolynomial({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def to_json(self):
        return [format_rational(c) for c in self._c]

    @classmethod
    def from_json(cls, data):
        return cls([_frac(s) for s in data])


def _as_poly(x):
    if isinstance(x, RatPolynomial):
        return x
    return RatPolynomial([x])


def cyclotomic_polynomial(n):
    """The n-th cyclotomic polynomial as a :class:`RatPolynomial` (integer coefficients)."""
    if n < 1:
        raise ValueError(f"cyclotomic_polynomial needs n >= 1, got {n}")
    return RatPolynomial(_cyclotomic_int(n))


# --------------------------------------------------------------------------
# cyclotomic field elements

class CycloElement:
    """An element of Q(zeta_N) in the reduced power basis.

    Immutable and hashable.  Arithmetic between elements requires the same
    modulus; use :meth:`at_level` to move to a common level first.
    """

    __slots__ = ("modulus", "_num", "_den", "_hash")

    def __init__(self, modulus, coefficients):
        """``coefficients`` are rationals for ``zeta^0, zeta^1, ...`` (any length; reduced)."""
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        fr = [_frac(c) for c in coefficients]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._set(modulus, _reduce(nums, modulus), den)

    def _set(self, modulus, nums, den):
        g = gcd(den, *nums) if nums else den
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.modulus = modulus
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, modulus, nums, den=1):
        obj = cls.__new__(cls)
        obj._set(modulus, nums, den)
        return obj

    @classmethod
    def from_int_vector(cls, modulus, nums, den=1):
        """Build from an unreduced integer exponent vector divided by ``den``."""
        return cls._raw(modulus, _reduce(list(nums), modulus), den)

    @classmethod
    def rational(cls, modulus, value):
        q = _frac(value)
        return cls._raw(modulus, [q.numerator] + [0] * (euler_totient(modulus) - 1), q.denominator)

    @property
    def degree(self):
        """Dimension phi(N) of the ambient field over Q."""
        return len(self._num)

    @property
    def coefficients(self):
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self):
        return self._num

    @property
    def denominator(self):
        return self._den

    def is_zero(self):
        return not any(self._num)

    def is_rational(self):
        return not any(self._num[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"moduli differ ({self.modulus} vs {other.modulus}); raise both to a common level"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElement.rational(self.modulus, other)
        return None

    def __eq__(self, other):
        if isinstance(other, CycloElement):
            return self.modulus == other.modulus and self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, self._num, self._den))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d1, d2 = self._den, other._den
        den = d1 * d2 // gcd(d1, d2)
        f1, f2 = den // d1, den // d2
        return CycloElement._raw(self.modulus, [a * f1 + b * f2 for a, b in zip(self._num, other._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycloElement._raw(self.modulus, [-a for a in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod = _reduce(int_poly_mul(list(self._num), list(other._num)), self.modulus)
        return CycloElement._raw(self.modulus, prod, self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloElement.rational(self.modulus, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        """Multiplicative inverse via the extended gcd with Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloElement.rational(self.modulus, 1 / self.to_rational())
        g, s, _ = RatPolynomial.xgcd(self.to_polynomial(), cyclotomic_polynomial(self.modulus))
        if g.degree != 0:
            raise ArithmeticError("representative shares a factor with Phi_N")
        return CycloElement(self.modulus, s.coefficients)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    # -- structure ----------------------------------------------------------

    def to_polynomial(self):
        return RatPolynomial(self.coefficients)

    def at_level(self, level):
        """The same field element viewed in Q(zeta_level); ``level`` must be a multiple of N."""
        if level % self.modulus:
            raise ValueError(f"level {level} is not a multiple of {self.modulus}")
        step = level // self.modulus
        vec = [0] * (step * (len(self._num) - 1) + 1)
        for i, c in enumerate(self._num):
            vec[i * step] = c
        return CycloElement.from_int_vector(level, vec, self._den)

    def conjugate(self):
        """Complex conjugation, i.e. ``galois_apply(-1, x)``."""
        return galois_apply(-1, self)

    def evaluate(self, k=1, prec=53):
        """Numeric value at ``zeta = exp(2*pi*i*k/N)`` as an mpmath complex."""
        with mpmath.workprec(prec + 20):
            z = mpmath.expjpi(mpmath.mpf(2 * k) / self.modulus)
            acc = mpmath.mpc(0)
            for c in reversed(self._num):
                acc = acc * z + c
            return +(acc / self._den)

    def __repr__(self):
        return f"CycloElement({self.modulus}, {[format_rational(c) for c in self.coefficients]})"

    def to_json(self):
        return {"modulus": self.modulus, "coefficients": [format_rational(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, data):
        n = int(data["modulus"])
        coeffs = [_frac(s) for s in data["coefficients"]]
        if len(coeffs) != euler_totient(n):
            raise ValueError(f"expected {euler_totient(n)} coefficients for modulus {n}, got {len(coeffs)}")
        elem = cls(n, coeffs)
        if elem.coefficients != tuple(coeffs):
            raise ValueError("coefficient vector is not in reduced form")
        return elem


def root_of_unity(n, k=1):
    """``zeta_n ** k`` reduced modulo Phi_n."""
    if n < 1:
        raise ValueError(f"root_of_unity needs n >= 1, got {n}")
    vec = [0] * n
    vec[k % n] = 1
    return CycloElement.from_int_vector(n, vec)


def galois_apply(a, x):
    """The automorphism ``zeta -> zeta**a`` applied to ``x``."""
    n = x.modulus
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    a %= n
    if n <= 2 or a == 1:
        return x
    vec = [0] * n
    for i, c in enumerate(x._num):
        if c:
            vec[(a * i) % n] += c
    return CycloElement.from_int_vector(n, vec, x._den)


# --------------------------------------------------------------------------
# modular images

def _images(x, p, w):
    """Values of the numerator vector of ``x`` at ``zeta -> w**a`` for each unit a."""
    n = x.modulus
    pw = [1] * n
    for j in range(1, n):
        pw[j] = pw[j - 1] * w % p
    nz = [(i, c % p) for i, c in enumerate(x._num) if c]
    us = units(n)
    return {a: sum(c * pw[(a * i) % n] for i, c in nz) % p for a in us}


def _poly_from_roots_mod(roots, p):
    out = [1]
    for r in roots:
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] = (nxt[i + 1] + c) % p
            nxt[i] = (nxt[i] - c * r) % p
        out = nxt
    return out


def _exact_eval_is_zero(int_coeffs, x_nums, n):
    """True iff sum c_k y^k == 0 in Z[zeta_n], where y has numerator vector ``x_nums``."""
    y = list(x_nums)
    acc = [int_coeffs[-1]] + [0] * (len(y) - 1)
    for c in reversed(int_coeffs[:-1]):
        acc = _reduce(int_poly_mul(acc, y), n)
        acc[0] += c
    return not any(acc)


def minimal_polynomial(x):
    """Monic minimal polynomial of ``x`` over Q.

    The powers ``1, y, y^2, ...`` of the integral element ``y = D*x`` are tested
    for linear dependence modulo split primes ``p = 1 (mod N)``.  In the basis of
    evaluations at the primitive roots ``omega**a`` the power matrix is a
    Vandermonde matrix, so its first dependency is the product of ``t - e`` over
    the distinct images ``e``.  Coefficients are lifted by CRT (they are integers
    because ``y`` is an algebraic integer) until they stabilise, and the lift is
    accepted only after two exact checks: the candidate vanishes at ``y`` in
    exact arithmetic, and its degree ``d`` equals the number of distinct images,
    which proves ``1, y, ..., y^(d-1)`` independent over Q.
    """
    n = x.modulus
    den = x._den
    y_nums = x._num
    if x.is_rational():
        return RatPolynomial([-Fraction(y_nums[0], den), 1])
    norm1 = sum(abs(c) for c in y_nums)
    best_deg = 0
    modulus = 1
    residues = None
    prev = None
    idx = 0
    while True:
        p, w = split_prime(n, idx)
        idx += 1
        if idx > 400:
            raise ArithmeticError("minimal polynomial did not stabilise")
        distinct = sorted(set(_images(x, p, w).values()))
        if len(distinct) < best_deg:
            continue  # unlucky prime: two conjugates collide mod p
        if len(distinct) > best_deg:
            best_deg, modulus, residues, prev = len(distinct), 1, None, None
        coeffs = _poly_from_roots_mod(distinct, p)
        if residues is None:
            residues, modulus = coeffs, p
        else:
            inv = pow(modulus, -1, p)
            residues = [r + modulus * (((c - r) * inv) % p) for r, c in zip(residues, coeffs)]
            modulus *= p
        half = modulus // 2
        lifted = [r - modulus if r > half else r for r in residues]
        bound_hit = modulus > 2 * (1 + norm1) ** best_deg
        if lifted == prev or bound_hit:
            if _exact_eval_is_zero(lifted, y_nums, n):
                # undo the scaling y = den * x
                d = len(lifted) - 1
                return RatPolynomial([Fraction(c, den ** (d - k)) for k, c in enumerate(lifted)])
            if bound_hit:
                best_deg += 1  # every prime so far had a collision; demand more conjugates
                modulus, residues, prev = 1, None, None
                continue
        prev = lifted


class UnitSubgroup:
    """A subgroup of (Z/N)^*, stored as its sorted member residues."""

    __slots__ = ("modulus", "members")

    def __init__(self, modulus, members, check=True):
        self.modulus = modulus
        self.members = tuple(sorted(set(m % modulus if modulus > 2 else 1 for m in members)))
        if 1 not in self.members:
            raise ValueError("a subgroup must contain 1")
        if check:
            if any(gcd(a, modulus) != 1 for a in self.members):
                raise ValueError("subgroup members must be units mod N")
            if not self.is_closed():
                raise ValueError("members are not closed under multiplication mod N")

    @property
    def order(self):
        return len(self.members)

    @property
    def index(self):
        return euler_totient(self.modulus) // self.order

    def __contains__(self, a):
        return (a % self.modulus if self.modulus > 2 else 1) in self.members

    def __eq__(self, other):
        if isinstance(other, UnitSubgroup):
            return self.modulus == other.modulus and self.members == other.members
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.members))

    def __repr__(self):
        return f"UnitSubgroup({self.modulus}, {list(self.members)})"

    def is_closed(self):
        ms = set(self.members)
        n = self.modulus
        return all((a * b) % n in ms for a in ms for b in ms) if n > 2 else True

    def preimage(self, level):
        """The subgroup of (Z/level)^* mapping into this one; ``level`` a multiple of N."""
        if level % self.modulus:
            raise ValueError(f"level {level} is not a multiple of {self.modulus}")
        return UnitSubgroup(level, [a for a in units(level) if a in self], check=False)

    def to_json(self):
        return {"modulus": self.modulus, "members": list(self.members)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["modulus"]), [int(m) for m in data["members"]])


def stabilizer(x):
    """``{a in (Z/N)^* : galois_apply(a, x) == x}``.

    One split prime filters candidates (an automorphism that moves the image of
    ``x`` mod p certainly moves ``x``); every surviving candidate is confirmed
    with exact :func:`galois_apply`.
    """
    n = x.modulus
    us = units(n)
    if x.is_rational() or n <= 2:
        return UnitSubgroup(n, us)
    for idx in range(50):
        p, w = split_prime(n, idx)
        img = _images(x, p, w)
        cands = [a for a in us if all(img[(a * b) % n] == img[b] for b in us)]
        members = [a for a in cands if galois_apply(a, x) == x]
        if len(members) == len(cands):
            return UnitSubgroup(n, members)
    return UnitSubgroup(n, [a for a in us if galois_apply(a, x) == x])


def fixed_fields_equal(h1, h2):
    """Whether the fixed fields of two unit subgroups coincide inside a common cyclotomic field.

    Equivalent to equality of the preimages in (Z/L)^*, L = lcm of the moduli, but
    computed fibrewise over residues mod gcd of the moduli instead of enumerating
    (Z/L)^*: units u mod N1 and v mod N2 lift to a common unit mod L exactly when
    u = v mod gcd(N1, N2).
    """
    n1, n2 = h1.modulus, h2.modulus
    g = gcd(n1, n2)

    def fibres(h):
        seen = {}
        for u in units(h.modulus):
            r = u % g
            seen.setdefault(r, set()).add(u in h)
        return seen

    f1, f2 = fibres(h1), fibres(h2)
    for r, s1 in f1.items():
        s2 = f2.get(r)
        if s2 is None or len(s1) != 1 or s1 != s2:
            return False
    return True


def dumps(obj):
    """Compact JSON for polynomials, elements and subgroups (deterministic)."""
    return json.dumps(obj.to_json(), separators=(",", ":"))
