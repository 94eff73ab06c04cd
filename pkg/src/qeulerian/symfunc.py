"""Homogeneous symmetric and quasisymmetric functions with exact coefficients.

Coefficients live in the Laurent-in-q polynomial ring of :mod:`qpoly`
(so elements may carry t, r, q, p content).  QSym elements come in the
fundamental (F, indexed by subsets of [n-1]) and monomial (M, indexed by
compositions) bases; Sym elements in the m, h, e, p, s bases.

Basis conversions route through the Schur basis:

- Kostka numbers by semistandard-tableau counting give s -> m and h -> s;
- their unitriangular inverses (dominance order) give m -> s and s -> h;
- Murnaghan-Nakayama characters give p <-> s;
- omega handles e.

Transition matrices are cached per degree.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinat import (
    CapExceededError,
    composition_to_subset,
    compositions,
    conjugate_partition,
    part_multiplicities,
    partitions,
    subset_to_composition,
    z_lambda,
)
from .qpoly import MPoly, ONE, ZERO

DEGREE_CAP = 12

QSYM_BASES = ("F", "M")
SYM_BASES = ("m", "h", "e", "p", "s")

Coeff = MPoly


def _c(x) -> MPoly:
    return x if isinstance(x, MPoly) else MPoly.const(x)


def _clean(coeffs: Mapping) -> dict:
    return {k: _c(v) for k, v in coeffs.items() if _c(v)}


class QSymElem:
    """Homogeneous quasisymmetric function of a fixed degree."""

    __slots__ = ("n", "basis", "coeffs")

    def __init__(self, n: int, basis: str, coeffs: Mapping):
        if basis not in QSYM_BASES:
            raise ValueError(f"unknown QSym basis {basis}")
        self.n = n
        self.basis = basis
        self.coeffs = _clean(coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSymElem):
            return NotImplemented
        a, b = self.to_basis("M"), other.to_basis("M")
        return a.n == b.n and a.coeffs == b.coeffs

    def __add__(self, other: "QSymElem") -> "QSymElem":
        if self.n != other.n:
            raise ValueError("mixed degrees")
        a, b = self, other.to_basis(self.basis)
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return QSymElem(self.n, self.basis, out)

    def __sub__(self, other: "QSymElem") -> "QSymElem":
        return self + other.scale(-1)

    def scale(self, c) -> "QSymElem":
        c = _c(c)
        return QSymElem(self.n, self.basis, {k: v * c for k, v in self.coeffs.items()})

    def to_basis(self, basis: str) -> "QSymElem":
        if basis == self.basis:
            return self
        if self.basis == "F" and basis == "M":
            out: dict = {}
            n = self.n
            for S, c in self.coeffs.items():
                S = frozenset(S)
                free = [i for i in range(1, n) if i not in S]
                for k in range(len(free) + 1):
                    for extra in itertools.combinations(free, k):
                        alpha = subset_to_composition(S | set(extra), n)
                        out[alpha] = out.get(alpha, ZERO) + c
            return QSymElem(n, "M", out)
        if self.basis == "M" and basis == "F":
            out = {}
            n = self.n
            for alpha, c in self.coeffs.items():
                S = composition_to_subset(alpha)
                free = [i for i in range(1, n) if i not in S]
                for k in range(len(free) + 1):
                    sign = 1 if k % 2 == 0 else -1
                    for extra in itertools.combinations(free, k):
                        key = frozenset(S | set(extra))
                        out[key] = out.get(key, ZERO) + c * sign
            return QSymElem(n, "F", out)
        raise ValueError(f"no conversion {self.basis} -> {basis}")

    def omega(self) -> "QSymElem":
        """F_{S,n} -> F_{[n-1] - S, n}, extended linearly."""
        f = self.to_basis("F")
        full = frozenset(range(1, self.n))
        return QSymElem(
            self.n, "F", {full - frozenset(S): c for S, c in f.coeffs.items()}
        ).to_basis(self.basis)

    def is_symmetric(self) -> bool:
        m = self.to_basis("M")
        grouped: dict = {}
        for alpha, c in m.coeffs.items():
            grouped.setdefault(tuple(sorted(alpha, reverse=True)), []).append(
                (alpha, c)
            )
        for lam, items in grouped.items():
            want = items[0][1]
            n_rearr = _n_rearrangements(lam)
            if len(items) != n_rearr:
                return False
            if any(c != want for _, c in items):
                return False
        return True

    def to_sym(self) -> "SymElem":
        if not self.is_symmetric():
            raise ValueError("element is not symmetric")
        m = self.to_basis("M")
        out = {}
        for alpha, c in m.coeffs.items():
            lam = tuple(sorted(alpha, reverse=True))
            out[lam] = c
        return SymElem(self.n, "m", out)

    def monomial_expansion(self, nvars: int) -> dict:
        """Exponent-vector -> coefficient, in x_1..x_nvars."""
        m = self.to_basis("M")
        out: dict = {}
        for alpha, c in m.coeffs.items():
            k = len(alpha)
            if k > nvars:
                continue
            for pos in itertools.combinations(range(nvars), k):
                exp = [0] * nvars
                for i, part in zip(pos, alpha):
                    exp[i] = part
                key = tuple(exp)
                out[key] = out.get(key, ZERO) + c
        return {k: v for k, v in out.items() if v}

    def __repr__(self) -> str:
        return f"QSymElem(n={self.n}, {self.basis}, {len(self.coeffs)} terms)"


def _n_rearrangements(lam: tuple) -> int:
    total = 1
    for k in range(1, len(lam) + 1):
        total *= k
    for m in part_multiplicities(lam).values():
        f = 1
        for k in range(1, m + 1):
            f *= k
        total //= f
    return total


def from_fundamental(terms: Iterable[tuple]) -> QSymElem:
    """Sum of fundamentals from (n, S) pairs (a multiset)."""
    terms = list(terms)
    if not terms:
        return QSymElem(0, "F", {})
    degrees = {n for n, _ in terms}
    if len(degrees) != 1:
        raise ValueError("mixed degrees in fundamental sum")
    n = degrees.pop()
    out: dict = {}
    for _, S in terms:
        key = frozenset(S)
        if any(i < 1 or i >= n for i in key):
            raise ValueError(f"subset {sorted(key)} not inside [{n - 1}]")
        out[key] = out.get(key, ZERO) + ONE
    return QSymElem(n, "F", out)


def fundamental(n: int, S) -> QSymElem:
    return from_fundamental([(n, frozenset(S))])


# -- Sym ---------------------------------------------------------------------

class SymElem:
    """Homogeneous symmetric function of a fixed degree in a tagged basis."""

    __slots__ = ("n", "basis", "coeffs")

    def __init__(self, n: int, basis: str, coeffs: Mapping):
        if basis not in SYM_BASES:
            raise ValueError(f"unknown Sym basis {basis}")
        self.n = n
        self.basis = basis
        self.coeffs = _clean(coeffs)

    @staticmethod
    def zero(n: int, basis: str = "m") -> "SymElem":
        return SymElem(n, basis, {})

    @staticmethod
    def gen(basis: str, lam: Sequence[int]) -> "SymElem":
        lam = tuple(sorted(lam, reverse=True))
        return SymElem(sum(lam), basis, {lam: ONE})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymElem):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.basis == other.basis:
            return self.coeffs == other.coeffs
        return self.coeffs == other.to_basis(self.basis).coeffs

    def __add__(self, other: "SymElem") -> "SymElem":
        if self.n != other.n:
            raise ValueError("mixed degrees")
        b = other.to_basis(self.basis)
        out = dict(self.coeffs)
        for k, v in b.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return SymElem(self.n, self.basis, out)

    def __sub__(self, other: "SymElem") -> "SymElem":
        return self + other.scale(-1)

    def scale(self, c) -> "SymElem":
        c = _c(c)
        return SymElem(self.n, self.basis, {k: v * c for k, v in self.coeffs.items()})

    def mul(self, other: "SymElem") -> "SymElem":
        """Product, computed in a multiplicative basis (h, e or p)."""
        basis = self.basis if self.basis in ("h", "e", "p") else "h"
        a = self.to_basis(basis)
        b = other.to_basis(basis)
        out: dict = {}
        for lam, c1 in a.coeffs.items():
            for mu, c2 in b.coeffs.items():
                key = tuple(sorted(lam + mu, reverse=True))
                out[key] = out.get(key, ZERO) + c1 * c2
        return SymElem(self.n + other.n, basis, out)

    def coeff(self, lam: Sequence[int]) -> MPoly:
        return self.coeffs.get(tuple(sorted(lam, reverse=True)), ZERO)

    def map_coeffs(self, f) -> "SymElem":
        return SymElem(self.n, self.basis, {k: f(v) for k, v in self.coeffs.items()})

    def to_basis(self, basis: str) -> "SymElem":
        if basis == self.basis:
            return self
        if self.n > DEGREE_CAP:
            raise CapExceededError("basis conversion degree", self.n, DEGREE_CAP)
        via_s = self._to_s()
        if basis == "s":
            return via_s
        return via_s._from_s(basis)

    def _to_s(self) -> "SymElem":
        n, basis = self.n, self.basis
        if basis == "s":
            return self
        out: dict = {}
        if basis == "m":
            inv = _kostka_inverse(n)
            for mu, c in self.coeffs.items():
                for lam, k in inv[mu].items():
                    out[lam] = out.get(lam, ZERO) + c * k
        elif basis == "h":
            for mu, c in self.coeffs.items():
                for lam in partitions(n):
                    k = _kostka(lam, mu)
                    if k:
                        out[lam] = out.get(lam, ZERO) + c * k
        elif basis == "e":
            # e_mu = omega(h_mu) = sum_lam K_{lam,mu} s_{lam'}
            for mu, c in self.coeffs.items():
                for lam in partitions(n):
                    k = _kostka(lam, mu)
                    if k:
                        key = conjugate_partition(lam)
                        out[key] = out.get(key, ZERO) + c * k
        elif basis == "p":
            for mu, c in self.coeffs.items():
                for lam in partitions(n):
                    chi = _mn_character(lam, mu)
                    if chi:
                        out[lam] = out.get(lam, ZERO) + c * chi
        return SymElem(n, "s", out)

    def _from_s(self, basis: str) -> "SymElem":
        n = self.n
        out: dict = {}
        if basis == "m":
            for lam, c in self.coeffs.items():
                for mu in partitions(n):
                    k = _kostka(lam, mu)
                    if k:
                        out[mu] = out.get(mu, ZERO) + c * k
        elif basis == "h":
            inv = _kostka_transpose_inverse(n)
            for lam, c in self.coeffs.items():
                for mu, k in inv[lam].items():
                    out[mu] = out.get(mu, ZERO) + c * k
        elif basis == "e":
            inv = _kostka_transpose_inverse(n)
            for lam, c in self.coeffs.items():
                lamc = conjugate_partition(lam)
                for mu, k in inv[lamc].items():
                    out[mu] = out.get(mu, ZERO) + c * k
        elif basis == "p":
            for lam, c in self.coeffs.items():
                for mu in partitions(n):
                    chi = _mn_character(lam, mu)
                    if chi:
                        out[mu] = out.get(mu, ZERO) + c * Fraction(chi, z_lambda(mu))
        return SymElem(n, basis, out)

    def omega(self) -> "SymElem":
        basis = self.basis
        if basis == "h":
            return SymElem(self.n, "e", dict(self.coeffs))
        if basis == "e":
            return SymElem(self.n, "h", dict(self.coeffs))
        if basis == "s":
            return SymElem(
                self.n, "s", {conjugate_partition(l): c for l, c in self.coeffs.items()}
            )
        if basis == "p":
            out = {}
            for lam, c in self.coeffs.items():
                sign = -1 if (self.n - len(lam)) % 2 else 1
                out[lam] = c * sign
            return SymElem(self.n, "p", out)
        return self.to_basis("s").omega().to_basis(basis)

    def to_qsym(self) -> QSymElem:
        m = self.to_basis("m")
        out: dict = {}
        for lam, c in m.coeffs.items():
            for alpha in _distinct_rearrangements(lam):
                out[alpha] = c
        return QSymElem(self.n, "M", out)

    def monomial_expansion(self, nvars: int) -> dict:
        return self.to_qsym().monomial_expansion(nvars)

    def is_positive(self) -> bool:
        return all(c.is_nonnegative() for c in self.coeffs.values())

    def __repr__(self) -> str:
        return f"SymElem(n={self.n}, {self.basis}, {len(self.coeffs)} terms)"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for lam in sorted(self.coeffs, reverse=True):
            c = self.coeffs[lam]
            name = f"{self.basis}[{','.join(map(str, lam))}]"
            if c == ONE:
                bits.append(name)
            elif len(c.terms) == 1:
                bits.append(f"{c} {name}".replace("1*", ""))
            else:
                bits.append(f"({c}) {name}")
        return " + ".join(bits)


def _distinct_rearrangements(lam: tuple) -> set:
    return set(itertools.permutations(lam))


def sym_one() -> SymElem:
    return SymElem(0, "h", {(): ONE})


def h_elem(lam: Sequence[int]) -> SymElem:
    return SymElem.gen("h", lam)


# -- transition data ----------------------------------------------------------

@lru_cache(maxsize=None)
def _kostka(lam: tuple, mu: tuple) -> int:
    """Number of SSYT of shape lam and content mu."""
    if sum(lam) != sum(mu):
        return 0
    if not lam:
        return 1
    return _count_ssyt(lam, mu)


def _count_ssyt(lam: tuple, mu: tuple) -> int:
    """Fill entries 1..len(mu) row by row; entry i appears mu[i-1] times.

    Recursive peeling: place all copies of the LARGEST entry; they must
    occupy a horizontal strip at the outer boundary.
    """
    if not mu:
        return 1 if not lam or all(p == 0 for p in lam) else 0
    k = len(mu)
    last = mu[-1]
    shape = tuple(p for p in lam if p > 0)
    if not shape:
        return 1 if last == 0 and all(m == 0 for m in mu) else 0
    total = 0
    for strip in _horizontal_strips(shape, last):
        total += _count_ssyt(strip, mu[:-1])
    return total


def _horizontal_strips(shape: tuple, size: int):
    """Inner shapes nu <= shape with |shape| - |nu| = size and
    shape/nu a horizontal strip (at most one cell removed per column)."""
    rows = len(shape)

    def rec(i: int, remaining: int, acc: list):
        if i == rows:
            if remaining == 0:
                yield tuple(x for x in acc if x > 0)
            return
        below = shape[i + 1] if i + 1 < rows else 0
        lo = max(below, shape[i] - remaining)
        for new_len in range(lo, shape[i] + 1):
            # horizontal strip: cells removed from row i must sit strictly
            # right of row i+1's remaining cells
            if acc and new_len > acc[-1]:
                continue
            take = shape[i] - new_len
            acc.append(new_len)
            yield from rec(i + 1, remaining - take, acc)
            acc.pop()

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def _kostka_inverse(n: int) -> dict:
    """m_mu = sum_lam inv[mu][lam] s_lam, by unitriangular peeling.

    s_lam = m_lam + (dominance-smaller m's), so peeling the residual from
    the lex-largest partition downward terminates (lex refines dominance).
    """
    parts = list(partitions(n))
    order = sorted(parts, reverse=True)
    inv = {}
    for mu in parts:
        c: dict = {}
        residual = {mu: Fraction(1)}  # m-basis residual
        for lam in order:
            r = residual.get(lam, Fraction(0))
            if not r:
                continue
            c[lam] = r
            for nu in parts:
                k = _kostka(lam, nu)
                if k:
                    residual[nu] = residual.get(nu, Fraction(0)) - r * k
        inv[mu] = {l: v for l, v in c.items() if v}
    return inv


@lru_cache(maxsize=None)
def _kostka_transpose_inverse(n: int) -> dict:
    """s_lam = sum_mu inv[lam][mu] h_mu.

    h_mu = s_mu + (dominance-larger s's), so the residual is peeled from
    the lex-smallest partition upward.
    """
    parts = list(partitions(n))
    order = sorted(parts)
    inv = {}
    for target in parts:
        c: dict = {}
        residual = {target: Fraction(1)}  # s-basis residual
        for mu in order:
            r = residual.get(mu, Fraction(0))
            if not r:
                continue
            c[mu] = r
            for nu in parts:
                k = _kostka(nu, mu)
                if k:
                    residual[nu] = residual.get(nu, Fraction(0)) - r * k
        inv[target] = {l: v for l, v in c.items() if v}
    return inv


@lru_cache(maxsize=None)
def _mn_character(lam: tuple, mu: tuple) -> int:
    """chi^lam(mu) by the Murnaghan-Nakayama rule."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    k = mu[0]
    rest = mu[1:]
    total = 0
    for nu, height in _border_strips(lam, k):
        total += (-1) ** height * _mn_character(nu, rest)
    return total


def _border_strips(lam: tuple, k: int):
    """Shapes nu obtained from lam by removing a border strip of size k,
    together with the strip height (#rows - 1)."""
    lam = tuple(p for p in lam if p > 0)
    n = sum(lam)
    out = []
    for nu in partitions(n - k):
        padded = tuple(nu) + (0,) * (len(lam) - len(nu))
        if len(nu) > len(lam) or any(padded[i] > lam[i] for i in range(len(lam))):
            continue
        if _is_border_strip(lam, padded):
            height = sum(1 for i in range(len(lam)) if lam[i] > padded[i]) - 1
            out.append((nu, height))
    return out


def _is_border_strip(lam: tuple, nu: tuple) -> bool:
    """lam/nu is a connected skew shape with no 2x2 square."""
    rows = len(lam)
    nu = tuple(nu) + (0,) * (rows - len(nu))
    cells = [(i, j) for i in range(rows) for j in range(nu[i], lam[i])]
    if not cells:
        return False
    cellset = set(cells)
    # containment
    if any(nu[i] > lam[i] for i in range(rows)):
        return False
    # no 2x2
    for (i, j) in cells:
        if (i + 1, j) in cellset and (i, j + 1) in cellset and (i + 1, j + 1) in cellset:
            return False
    # connectivity (edge adjacency)
    seen = {cells[0]}
    stack = [cells[0]]
    while stack:
        i, j = stack.pop()
        for ni, nj in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if (ni, nj) in cellset and (ni, nj) not in seen:
                seen.add((ni, nj))
                stack.append((ni, nj))
    return len(seen) == len(cells)


# -- plethysm ------------------------------------------------------------------

def _pk_on_coeff(c: MPoly, k: int) -> MPoly:
    """p_k acts on coefficient indeterminates by raising exponents."""
    return MPoly({tuple(e * k for e in exp): v for exp, v in c.terms.items()})


def pk_plethysm(k: int, g: SymElem) -> SymElem:
    """p_k[g]: scale partition parts and coefficient exponents by k."""
    gp = g.to_basis("p")
    out = {}
    for lam, c in gp.coeffs.items():
        key = tuple(sorted((part * k for part in lam), reverse=True))
        out[key] = out.get(key, ZERO) + _pk_on_coeff(c, k)
    return SymElem(g.n * k, "p", out)


def plethysm_h(k: int, g: SymElem) -> SymElem:
    """h_k[g] via h_k = sum_{mu |- k} p_mu / z_mu."""
    if g.n * k > DEGREE_CAP:
        raise CapExceededError("plethysm degree", g.n * k, DEGREE_CAP)
    result = SymElem.zero(g.n * k, "p")
    for mu in partitions(k):
        term = SymElem(0, "p", {(): ONE})
        for part in mu:
            term = term.mul(pk_plethysm(part, g))
        result = result + term.scale(Fraction(1, z_lambda(mu)))
    return result


# -- specializations -----------------------------------------------------------

def _to_F(f) -> QSymElem:
    if isinstance(f, SymElem):
        f = f.to_qsym()
    return f.to_basis("F")


def stable_spec(f) -> MPoly:
    """Numerator of Lambda(f) over the implied denominator (q;q)_n."""
    F = _to_F(f)
    out = ZERO
    q = MPoly.var("q")
    for S, c in F.coeffs.items():
        out = out + c * q ** sum(S)
    return out


def principal_spec_m(f, m: int) -> MPoly:
    """Lambda_m(f): substitute x_i = q^(i-1) for i <= m, else 0."""
    F = _to_F(f)
    out = ZERO
    for S, c in F.coeffs.items():
        out = out + c * _lambda_m_fundamental(F.n, frozenset(S), m)
    return out


@lru_cache(maxsize=None)
def _lambda_m_fundamental(n: int, S: frozenset, m: int) -> MPoly:
    """Lambda_m(F_{S,n}) by direct weighted enumeration (DP over values)."""
    if n == 0:
        return ONE
    if m <= 0:
        return ZERO
    q = MPoly.var("q")
    # weights[v] for current position; positions processed right to left
    weights = {v: q ** (v - 1) for v in range(1, m + 1)}
    for i in range(n - 1, 0, -1):
        strict = i in S
        new = {}
        for v in range(1, m + 1):
            acc = ZERO
            top = v - 1 if strict else v
            for w in range(1, top + 1):
                acc = acc + weights[w]
            new[v] = q ** (v - 1) * acc
        weights = new
    total = ZERO
    for v in range(1, m + 1):
        total = total + weights[v]
    return total


def spec_p_series(f, order_p: int) -> MPoly:
    """sum_{m<=order_p} Lambda_m(f) p^m."""
    p = MPoly.var("p")
    out = ZERO
    for m in range(order_p + 1):
        out = out + principal_spec_m(f, m) * p ** m
    return out


def schur_expand(f: SymElem) -> SymElem:
    return f.to_basis("s")


def schur_positive(f: SymElem) -> bool:
    return schur_expand(f).is_positive()


def p1_derivative(f: SymElem) -> SymElem:
    """Degree-lowering adjoint of multiplication by p_1: p_lam ->
    m_1(lam) p_(lam minus one part 1)."""
    fp = f.to_basis("p")
    out: dict = {}
    for lam, c in fp.coeffs.items():
        m1 = sum(1 for part in lam if part == 1)
        if not m1:
            continue
        rest = list(lam)
        rest.remove(1)
        key = tuple(rest)
        out[key] = out.get(key, ZERO) + c * m1
    return SymElem(max(f.n - 1, 0), "p", out)
