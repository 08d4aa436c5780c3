"""Concrete commutative rings with exact payload arithmetic.

Every ring kind works on plain hashable payloads (int, Fraction, coeff
tuples, term tuples); RingElem is a thin typed wrapper used at API
boundaries.  Internal kernels (matrices, normal forms) call the payload
methods directly.

Tier 1 kinds: Z, Zmod m, Fp, Q, univariate poly over a field, and its
monic quotients.  Tier 2: multivariate poly over a field (ideal
calculus only; no matrix kernels).
"""

from fractions import Fraction

from . import polys
from .errors import NotDivisibleError, RingMismatchError, TierError
from .factor import is_prime


class Ring:
    kind = "?"
    is_field = False
    is_domain = False
    tier = 1

    def signature(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return self.describe()

    def describe(self):
        raise NotImplementedError

    # payload arithmetic -------------------------------------------------

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, k):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def pow_(self, a, k):
        if k < 0:
            return self.pow_(self.inv_unit(a), -k)
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero()

    def is_one(self, a):
        return a == self.one()

    def is_unit(self, a):
        raise NotImplementedError

    def inv_unit(self, a):
        raise NotImplementedError

    def exact_div(self, a, b):
        raise NotImplementedError

    def render(self, a):
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    def elem(self, x):
        if isinstance(x, RingElem):
            if x.ring != self:
                raise RingMismatchError(f"element of {x.ring.describe()} used in {self.describe()}")
            return x
        if isinstance(x, int):
            return RingElem(self, self.from_int(x))
        raise TypeError(f"cannot coerce {x!r} into {self.describe()}")


class EuclideanRing(Ring):
    """Mixin for rings with exact division-with-remainder (Z, fields,
    univariate polynomials over a field)."""

    def euclid_norm(self, a):
        raise NotImplementedError

    def euclid_divmod(self, a, b):
        raise NotImplementedError

    def canonical_associate(self, a):
        """(c, u) with c = u*a the canonical generator of (a), u a unit."""
        raise NotImplementedError

    def gcd(self, a, b):
        while not self.is_zero(b):
            a, b = b, self.euclid_divmod(a, b)[1]
        return self.canonical_associate(a)[0]

    def gcd_list(self, items):
        acc = self.zero()
        for a in items:
            acc = self.gcd(acc, a)
        return acc

    def lcm(self, a, b):
        if self.is_zero(a) or self.is_zero(b):
            return self.zero()
        g = self.gcd(a, b)
        return self.canonical_associate(self.mul(self.exact_div(a, g), b))[0]


class QuotientRing(Ring):
    """Mixin for quotients of a Euclidean domain by a principal ideal."""

    cover_ring = None
    modulus = None

    def lift(self, a):
        raise NotImplementedError

    def project(self, c):
        raise NotImplementedError


class FieldRing(EuclideanRing):
    is_field = True
    is_domain = True

    def is_unit(self, a):
        return not self.is_zero(a)

    def inv_unit(self, a):
        raise NotImplementedError

    def exact_div(self, a, b):
        if self.is_zero(b):
            raise NotDivisibleError("division by zero")
        return self.mul(a, self.inv_unit(b))

    def euclid_norm(self, a):
        return 0 if self.is_zero(a) else 1

    def euclid_divmod(self, a, b):
        return self.exact_div(a, b), self.zero()

    def canonical_associate(self, a):
        if self.is_zero(a):
            return self.zero(), self.one()
        return self.one(), self.inv_unit(a)


# ------------------------------------------------------------------ kinds


class IntegerRing(EuclideanRing):
    kind = "Z"
    is_domain = True

    def signature(self):
        return ("Z",)

    def describe(self):
        return "Z"

    def zero(self):
        return 0

    def from_int(self, k):
        return k

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inv_unit(self, a):
        if a in (1, -1):
            return a
        raise NotDivisibleError(f"{a} is not a unit in Z")

    def exact_div(self, a, b):
        if b == 0:
            raise NotDivisibleError("division by zero")
        q, r = divmod(a, b)
        if r:
            raise NotDivisibleError(f"{b} does not divide {a} in Z")
        return q

    def euclid_norm(self, a):
        return abs(a)

    def euclid_divmod(self, a, b):
        # balanced remainder keeps SNF pivot growth down
        q, r = divmod(a, b)
        if 2 * abs(r) > abs(b):
            if (r > 0) == (b > 0):
                q, r = q + 1, r - b
            else:
                q, r = q - 1, r + b
        return q, r

    def canonical_associate(self, a):
        return (-a, -1) if a < 0 else (a, 1)

    def render(self, a):
        return str(a)

    def random_element(self, rng):
        return rng.randint(-9, 9)


class RationalRing(FieldRing):
    kind = "Q"

    def signature(self):
        return ("Q",)

    def describe(self):
        return "Q"

    def zero(self):
        return Fraction(0)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv_unit(self, a):
        if a == 0:
            raise NotDivisibleError("0 is not a unit in Q")
        return 1 / a

    def render(self, a):
        return str(a)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


class PrimeFieldRing(FieldRing):
    kind = "Fp"

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"Fp needs a prime, got {p}")
        self.p = p

    def signature(self):
        return ("Fp", self.p)

    def describe(self):
        return f"F{self.p}"

    def zero(self):
        return 0

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv_unit(self, a):
        if a % self.p == 0:
            raise NotDivisibleError(f"0 is not a unit in F{self.p}")
        return pow(a, -1, self.p)

    def render(self, a):
        return str(a)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)


class IntModRing(QuotientRing):
    kind = "Zmod"

    def __init__(self, m):
        if m < 2:
            raise ValueError(f"Zmod needs modulus >= 2, got {m}")
        self.m = m
        self.cover_ring = IntegerRing()
        self.modulus = m

    def signature(self):
        return ("Zmod", self.m)

    def describe(self):
        return f"Z/{self.m}"

    def zero(self):
        return 0

    def from_int(self, k):
        return k % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def is_unit(self, a):
        import math

        return math.gcd(a, self.m) == 1

    def inv_unit(self, a):
        try:
            return pow(a, -1, self.m)
        except ValueError:
            raise NotDivisibleError(f"{a} is not a unit in {self.describe()}")

    def exact_div(self, a, b):
        # least nonnegative solution x of b*x = a, if any
        import math

        g = math.gcd(b, self.m)
        if g == 0:
            if a == 0:
                return 0
            raise NotDivisibleError("division by zero")
        if a % g:
            raise NotDivisibleError(f"{b} does not divide {a} in {self.describe()}")
        m1 = self.m // g
        if m1 == 1:
            return 0
        return (a // g) * pow(b // g, -1, m1) % m1

    def lift(self, a):
        return a

    def project(self, c):
        return c % self.m

    def render(self, a):
        return str(a)

    def random_element(self, rng):
        return rng.randrange(self.m)

    def elements(self):
        return range(self.m)


class UniPolyRing(EuclideanRing):
    kind = "poly1"
    is_domain = True

    def __init__(self, coeff_field, var):
        if not coeff_field.is_field:
            raise ValueError("polynomial coefficients must come from a field")
        self.F = coeff_field
        self.var = var

    def signature(self):
        return ("poly1", self.F.signature(), self.var)

    def describe(self):
        return f"{self.F.describe()}[{self.var}]"

    def zero(self):
        return ()

    def from_int(self, k):
        return polys.uni_const(self.F, self.F.from_int(k))

    def var_payload(self):
        return polys.uni_x(self.F)

    def var_elem(self):
        return RingElem(self, self.var_payload())

    def add(self, a, b):
        return polys.uni_add(self.F, a, b)

    def neg(self, a):
        return polys.uni_neg(self.F, a)

    def mul(self, a, b):
        return polys.uni_mul(self.F, a, b)

    def is_unit(self, a):
        return len(a) == 1

    def inv_unit(self, a):
        if len(a) != 1:
            raise NotDivisibleError(f"{self.render(a)} is not a unit in {self.describe()}")
        return (self.F.inv_unit(a[0]),)

    def exact_div(self, a, b):
        if not b:
            raise NotDivisibleError("division by zero")
        q, r = polys.uni_divmod(self.F, a, b)
        if r:
            raise NotDivisibleError(f"{self.render(b)} does not divide {self.render(a)}")
        return q

    def euclid_norm(self, a):
        return len(a)

    def euclid_divmod(self, a, b):
        return polys.uni_divmod(self.F, a, b)

    def canonical_associate(self, a):
        monic, u = polys.uni_monic(self.F, a)
        return monic, polys.uni_const(self.F, u)

    def gcd(self, a, b):
        return polys.uni_gcd(self.F, a, b)

    def render(self, a):
        return render_uni(self.F, a, self.var)

    def random_element(self, rng):
        deg = rng.randint(0, 2)
        coeffs = [self.F.random_element(rng) for _ in range(deg + 1)]
        return polys.uni_trim(coeffs, self.F)


class UniQuotRing(QuotientRing):
    kind = "polyquot"

    def __init__(self, coeff_field, var, modulus):
        cover = UniPolyRing(coeff_field, var)
        modulus = polys.uni_monic(coeff_field, modulus)[0]
        if polys.uni_deg(modulus) < 1:
            raise ValueError("quotient modulus must have degree >= 1")
        self.F = coeff_field
        self.var = var
        self.cover_ring = cover
        self.modulus = modulus

    def signature(self):
        return ("polyquot", self.F.signature(), self.var, self.modulus)

    def describe(self):
        return f"{self.F.describe()}[{self.var}]/({self.cover_ring.render(self.modulus)})"

    def zero(self):
        return ()

    def from_int(self, k):
        return self.project(self.cover_ring.from_int(k))

    def var_elem(self):
        return RingElem(self, self.project(self.cover_ring.var_payload()))

    def add(self, a, b):
        return polys.uni_add(self.F, a, b)

    def neg(self, a):
        return polys.uni_neg(self.F, a)

    def mul(self, a, b):
        return self.project(polys.uni_mul(self.F, a, b))

    def is_unit(self, a):
        return polys.uni_deg(polys.uni_gcd(self.F, a, self.modulus)) == 0 if a else False

    def inv_unit(self, a):
        g, s, _ = polys.uni_ext_gcd(self.F, a, self.modulus)
        if polys.uni_deg(g) != 0:
            raise NotDivisibleError(f"{self.render(a)} is not a unit in {self.describe()}")
        return self.project(s)

    def exact_div(self, a, b):
        # solve b*x = a mod modulus; canonical solution of least degree
        F = self.F
        g = polys.uni_gcd(F, b, self.modulus)
        if not b and not a:
            return ()
        if not b:
            raise NotDivisibleError("division by zero")
        q, r = polys.uni_divmod(F, a, g)
        if r:
            raise NotDivisibleError(f"{self.render(b)} does not divide {self.render(a)} in {self.describe()}")
        b1 = polys.uni_divmod(F, b, g)[0]
        m1 = polys.uni_divmod(F, self.modulus, g)[0]
        if polys.uni_deg(m1) == 0:
            return ()
        _, s, _ = polys.uni_ext_gcd(F, b1, m1)
        return polys.uni_divmod(F, polys.uni_mul(F, q, s), m1)[1]

    def lift(self, a):
        return a

    def project(self, c):
        return polys.uni_divmod(self.F, c, self.modulus)[1]

    def render(self, a):
        return render_uni(self.F, a, self.var)

    def random_element(self, rng):
        d = polys.uni_deg(self.modulus)
        coeffs = [self.F.random_element(rng) for _ in range(d)]
        return polys.uni_trim(coeffs, self.F)


class MultiPolyRing(Ring):
    kind = "polym"
    is_domain = True
    tier = 2

    def __init__(self, coeff_field, variables, order="grevlex"):
        if not coeff_field.is_field:
            raise ValueError("polynomial coefficients must come from a field")
        variables = tuple(variables)
        if len(variables) < 2:
            raise ValueError("MultiPoly needs at least two variables")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if order not in polys.ORDER_KEYS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.F = coeff_field
        self.vars = variables
        self.order = order
        self.key = polys.ORDER_KEYS[order]

    def signature(self):
        return ("polym", self.F.signature(), self.vars, self.order)

    def describe(self):
        return f"{self.F.describe()}[{','.join(self.vars)}] ({self.order})"

    @property
    def nvars(self):
        return len(self.vars)

    def zero(self):
        return ()

    def from_int(self, k):
        return polys.m_const(self.F, self.nvars, self.F.from_int(k))

    def var_elem(self, i):
        return RingElem(self, polys.m_var(self.F, self.nvars, i))

    def add(self, a, b):
        return polys.m_add(self.F, a, b, self.key)

    def neg(self, a):
        return polys.m_neg(self.F, a)

    def mul(self, a, b):
        return polys.m_mul(self.F, a, b, self.key)

    def is_unit(self, a):
        return len(a) == 1 and polys.exp_deg(a[0][0]) == 0

    def inv_unit(self, a):
        if not self.is_unit(a):
            raise NotDivisibleError(f"{self.render(a)} is not a unit in {self.describe()}")
        return polys.m_const(self.F, self.nvars, self.F.inv_unit(a[0][1]))

    def exact_div(self, a, b):
        if not b:
            raise NotDivisibleError("division by zero")
        F, key = self.F, self.key
        rem = a
        quo = ()
        lt_b = polys.m_lt(b)
        while rem:
            lt_r = polys.m_lt(rem)
            if not polys.exp_divides(lt_b[0], lt_r[0]):
                raise NotDivisibleError(f"{self.render(b)} does not divide {self.render(a)}")
            e = polys.exp_div(lt_r[0], lt_b[0])
            c = F.exact_div(lt_r[1], lt_b[1])
            t = ((e, c),)
            quo = polys.m_add(F, quo, t, key)
            rem = polys.m_sub(F, rem, polys.m_mul(F, t, b, key), key)
        return quo

    def render(self, a):
        return render_multi(self.F, a, self.vars)

    def random_element(self, rng):
        terms = []
        for _ in range(rng.randint(0, 2)):
            exp = tuple(rng.randint(0, 2) for _ in range(self.nvars))
            terms.append((exp, self.F.random_element(rng)))
        return polys.m_canon(self.F, terms, self.key)


# ------------------------------------------------------------- rendering


def coeff_pieces(F, c):
    """(is_negative, rendered absolute value) for a field coefficient."""
    if F.kind == "Q" and c < 0:
        return True, str(-c)
    return False, F.render(c)


def render_uni(F, a, var):
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if F.is_zero(c):
            continue
        negative, mag = coeff_pieces(F, c)
        if d == 0:
            body = mag
        else:
            xpow = var if d == 1 else f"{var}^{d}"
            body = xpow if mag == "1" else f"{mag}*{xpow}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def render_monomial(exp, names):
    pieces = []
    for name, e in zip(names, exp):
        if e == 0:
            continue
        pieces.append(name if e == 1 else f"{name}^{e}")
    return "*".join(pieces)


def render_multi(F, a, names):
    if not a:
        return "0"
    parts = []
    for exp, c in a:
        negative, mag = coeff_pieces(F, c)
        mono = render_monomial(exp, names)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


# ------------------------------------------------------------- the wrapper


class RingElem:
    """Typed element wrapper; all operators check ring equality."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"mixing elements of {self.ring.describe()} and {other.ring.describe()}"
                )
            return other.payload
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElem(self.ring, self.ring.add(self.payload, p))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElem(self.ring, self.ring.sub(self.payload, p))

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElem(self.ring, self.ring.sub(p, self.payload))

    def __mul__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElem(self.ring, self.ring.mul(self.payload, p))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.payload))

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return RingElem(self.ring, self.ring.pow_(self.payload, k))

    def __truediv__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElem(self.ring, self.ring.exact_div(self.payload, p))

    def __rtruediv__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RingElem(self.ring, self.ring.exact_div(p, self.payload))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.payload == self.ring.from_int(other)
        return (
            isinstance(other, RingElem)
            and other.ring == self.ring
            and other.payload == self.payload
        )

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __bool__(self):
        return not self.ring.is_zero(self.payload)

    def __repr__(self):
        return self.ring.render(self.payload)

    def is_unit(self):
        return self.ring.is_unit(self.payload)


ZZ = IntegerRing()
QQ = RationalRing()


def GF(p):
    return PrimeFieldRing(p)


def Zmod(m):
    return IntModRing(m)


def poly_ring(coeff_field, variables, order="grevlex"):
    variables = tuple(variables)
    if len(variables) == 1:
        return UniPolyRing(coeff_field, variables[0])
    return MultiPolyRing(coeff_field, variables, order)
