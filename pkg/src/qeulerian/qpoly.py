"""Exact multivariate polynomial arithmetic in q, p, t, r, z.

Coefficients are rationals.  The q exponent may be negative (Laurent
support in q only); substitutions such as t -> t/q or q -> 1/q therefore
stay inside the ring.  Truncated z-series come in two flavours:

- ``Series``: plain power series in z with MPoly coefficients,
- ``QSeries``: series written over the q-factorial basis z^n/[n]_q!,
  multiplied by Gaussian-binomial convolution so that all stored
  coefficients remain polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

VARS = ("q", "p", "t", "r", "z")
_NVARS = len(VARS)
_ZERO_EXP = (0,) * _NVARS
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}

Scalar = Union[int, Fraction]


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class MPoly:
    """A Laurent-in-q polynomial in q, p, t, r, z with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[tuple(exp)] = clean.get(tuple(exp), Fraction(0)) + c
            for exp in [e for e, c in clean.items() if not c]:
                del clean[exp]
        self.terms = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(c: Scalar) -> "MPoly":
        c = _as_fraction(c)
        return MPoly({_ZERO_EXP: c}) if c else MPoly()

    @staticmethod
    def var(name: str, power: int = 1) -> "MPoly":
        exp = [0] * _NVARS
        exp[_VAR_INDEX[name]] = power
        return MPoly({tuple(exp): 1})

    @staticmethod
    def zero() -> "MPoly":
        return MPoly()

    @staticmethod
    def one() -> "MPoly":
        return MPoly.const(1)

    # -- ring operations ----------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            elif exp in out:
                del out[exp]
        res = MPoly.__new__(MPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        res = MPoly.__new__(MPoly)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return MPoly.const(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return MPoly()
            res = MPoly.__new__(MPoly)
            res.terms = {e: k * c for e, k in self.terms.items()}
            return res
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = MPoly.__new__(MPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a general polynomial")
        result = MPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------
    def coeff(self, var: str, k: int) -> "MPoly":
        """The coefficient of var**k, an MPoly in the remaining variables."""
        i = _VAR_INDEX[var]
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == k:
                e = list(exp)
                e[i] = 0
                e = tuple(e)
                out[e] = out.get(e, Fraction(0)) + c
        return MPoly(out)

    def degree(self, var: str) -> int:
        i = _VAR_INDEX[var]
        if not self.terms:
            return 0
        return max(exp[i] for exp in self.terms)

    def valuation(self, var: str) -> int:
        i = _VAR_INDEX[var]
        if not self.terms:
            return 0
        return min(exp[i] for exp in self.terms)

    def as_poly_in(self, var: str) -> dict:
        """Map exponent-of-var -> MPoly coefficient."""
        i = _VAR_INDEX[var]
        out: dict = {}
        for exp, c in self.terms.items():
            e = list(exp)
            k = e[i]
            e[i] = 0
            e = tuple(e)
            bucket = out.setdefault(k, {})
            bucket[e] = bucket.get(e, Fraction(0)) + c
        return {k: MPoly(b) for k, b in sorted(out.items())}

    def subs(self, **values) -> "MPoly":
        """Substitute variables by polynomials (or scalars).

        Substituting into a negative q-exponent requires the value to be
        a single invertible monomial.
        """
        vals = {}
        for name, v in values.items():
            if not isinstance(v, MPoly):
                v = MPoly.const(v)
            vals[_VAR_INDEX[name]] = v
        result = MPoly()
        for exp, c in self.terms.items():
            term = MPoly.const(c)
            rest = list(exp)
            for i, v in vals.items():
                k = rest[i]
                rest[i] = 0
                if k == 0:
                    continue
                if k > 0:
                    term = term * v ** k
                else:
                    term = term * _monomial_inverse(v) ** (-k)
            term = term * MPoly({tuple(rest): 1})
            result = result + term
        return result

    def eval(self, **values: Scalar) -> Fraction:
        """Evaluate with every variable assigned a rational value."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for name, val in values.items():
                k = exp[_VAR_INDEX[name]]
                if k:
                    v *= Fraction(val) ** k
            for i, k in enumerate(exp):
                if k and VARS[i] not in values:
                    raise ValueError(f"unassigned variable {VARS[i]}")
            total += v
        return total

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def constant_term(self) -> Fraction:
        return self.terms.get(_ZERO_EXP, Fraction(0))

    # -- display --------------------------------------------------------
    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            mono = "*".join(
                f"{VARS[i]}^{k}" if k != 1 else VARS[i]
                for i, k in enumerate(exp)
                if k
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)


def _monomial_inverse(v: MPoly) -> MPoly:
    if len(v.terms) != 1:
        raise ValueError("inverse exists only for monomials")
    (exp, c), = v.terms.items()
    return MPoly({tuple(-k for k in exp): Fraction(1) / c})


ZERO = MPoly.zero()
ONE = MPoly.one()
Q = MPoly.var("q")
P = MPoly.var("p")
T = MPoly.var("t")
R = MPoly.var("r")
Z = MPoly.var("z")


# -- q-analogue primitives ---------------------------------------------

def q_int(n: int, base: MPoly = Q) -> MPoly:
    """[n] = 1 + base + ... + base^(n-1)."""
    if n < 0:
        raise ValueError("q_int requires n >= 0")
    out = MPoly()
    power = ONE
    for _ in range(n):
        out = out + power
        power = power * base
    return out


@lru_cache(maxsize=None)
def q_fact(n: int) -> MPoly:
    if n < 0:
        raise ValueError("q_fact requires n >= 0")
    if n == 0:
        return ONE
    return q_fact(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def gauss(n: int, k: int) -> MPoly:
    """Gaussian binomial [n choose k]_q, by the Pascal recurrence."""
    if k < 0 or k > n:
        raise ValueError(f"gauss({n},{k}) out of range")
    if k == 0 or k == n:
        return ONE
    return gauss(n - 1, k - 1) + Q ** k * gauss(n - 1, k)


def q_multinomial(n: int, parts: Sequence[int]) -> MPoly:
    if sum(parts) != n:
        raise ValueError("parts must sum to n")
    out = ONE
    rem = n
    for k in parts:
        out = out * gauss(rem, k)
        rem -= k
    return out


def pochhammer(a: MPoly, n: int) -> MPoly:
    """(a;q)_n = (1-a)(1-aq)...(1-aq^(n-1))."""
    if n < 0:
        raise ValueError("pochhammer requires n >= 0")
    out = ONE
    for i in range(n):
        out = out * (ONE - a * Q ** i)
    return out


# -- plain truncated z-series ---------------------------------------------

class Series:
    """Power series in z truncated at order N, MPoly coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[MPoly], order: int):
        cs = list(coeffs)
        if len(cs) < order + 1:
            cs += [ZERO] * (order + 1 - len(cs))
        self.coeffs = cs[: order + 1]
        self.order = order

    @staticmethod
    def from_poly(p: MPoly, order: int) -> "Series":
        by_z = p.as_poly_in("z")
        return Series([by_z.get(n, ZERO) for n in range(order + 1)], order)

    def __eq__(self, other) -> bool:
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __add__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series(out, n)

    def scale(self, c: MPoly | Scalar) -> "Series":
        if not isinstance(c, MPoly):
            c = MPoly.const(c)
        return Series([x * c for x in self.coeffs], self.order)

    def reciprocal(self) -> "Series":
        c0 = self.coeffs[0]
        if len(c0.terms) != 1 or c0.constant_term() == 0:
            raise ValueError("reciprocal requires an invertible rational constant term")
        inv0 = MPoly.const(Fraction(1) / c0.constant_term())
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-inv0 * acc)
        return Series(out, self.order)


class QSeries:
    """Series sum a_n z^n/[n]_q!; products use Gaussian convolution."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[MPoly], order: int):
        cs = list(coeffs)
        if len(cs) < order + 1:
            cs += [ZERO] * (order + 1 - len(cs))
        self.coeffs = cs[: order + 1]
        self.order = order

    def __eq__(self, other) -> bool:
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + gauss(i + j, i) * a * b
        return QSeries(out, n)

    def scale(self, c: MPoly | Scalar) -> "QSeries":
        if not isinstance(c, MPoly):
            c = MPoly.const(c)
        return QSeries([x * c for x in self.coeffs], self.order)

    def reciprocal(self) -> "QSeries":
        c0 = self.coeffs[0]
        if len(c0.terms) != 1 or c0.constant_term() == 0:
            raise ValueError("reciprocal requires an invertible rational constant term")
        inv0 = MPoly.const(Fraction(1) / c0.constant_term())
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, n + 1):
                acc = acc + gauss(n, k) * self.coeffs[k] * out[n - k]
            out.append(-inv0 * acc)
        return QSeries(out, self.order)


def exp_q_series(order: int, arg: MPoly = ONE) -> QSeries:
    """exp_q(arg*z) as a QSeries: grade-n coefficient arg^n."""
    return QSeries([arg ** n for n in range(order + 1)], order)


def cap_exp_q_series(order: int, arg: MPoly = ONE) -> QSeries:
    """Exp_q(arg*z): grade-n coefficient q^C(n,2) arg^n."""
    return QSeries(
        [Q ** (n * (n - 1) // 2) * arg ** n for n in range(order + 1)], order
    )
