"""Permutations, partitions and the elementary permutation statistics.

Permutations are 1-indexed tuples in one-line notation; the empty
permutation ``()`` is a first-class value with all statistics zero.
Bicolored letters are (value, barred) named tuples; two total orders on
them coexist and are always passed explicitly:

- ``order_barred_first``: 1' < 2' < ... < 1 < 2 < ...  (used for Exd)
- ``order_value_first``:  1 < 1' < 2 < 2' < ...        (used for Lyndon words,
  necklaces and the Gessel-Reutenauer maps)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Sequence

DEFAULT_CAP = 10

Perm = tuple  # one-line notation, values 1..n


class CapExceededError(Exception):
    """Raised when an enumeration request exceeds its configured cap."""

    def __init__(self, what: str, requested: int, cap: int):
        super().__init__(f"{what}: requested {requested} exceeds cap {cap}")
        self.requested = requested
        self.cap = cap


class Letter(NamedTuple):
    value: int
    barred: bool

    def __str__(self) -> str:
        return f"{self.value}'" if self.barred else str(self.value)


def bar(v: int) -> Letter:
    return Letter(v, True)


def unb(v: int) -> Letter:
    return Letter(v, False)


def order_barred_first(a: Letter) -> tuple:
    """Sort key for the order 1' < ... < n' < 1 < ... < n."""
    return (0 if a.barred else 1, a.value)


def order_value_first(a: Letter) -> tuple:
    """Sort key for the order 1 < 1' < 2 < 2' < ..."""
    return (a.value, 1 if a.barred else 0)


def parse_word(text: str) -> tuple:
    """Parse a word like "7'5'47" into a tuple of Letters.

    Values above 9 use comma-separated tokens, e.g. "12',3,10".
    """
    text = text.strip()
    letters = []
    if "," in text:
        tokens = [t for t in text.split(",") if t]
    else:
        tokens = []
        i = 0
        while i < len(text):
            j = i + 1
            if j < len(text) and text[j] == "'":
                j += 1
            tokens.append(text[i:j])
            i = j
    for tok in tokens:
        if tok.endswith("'"):
            letters.append(Letter(int(tok[:-1]), True))
        else:
            letters.append(Letter(int(tok), False))
    return tuple(letters)


def format_word(word: Sequence[Letter]) -> str:
    if any(a.value > 9 for a in word):
        return ",".join(str(a) for a in word)
    return "".join(str(a) for a in word)


# -- statistics -------------------------------------------------------------

@dataclass(frozen=True)
class StatRecord:
    des: int
    exc: int
    maj: int
    inv: int
    comaj: int
    fix: int
    Des: frozenset
    Exc: frozenset
    Exd: frozenset


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def descent_set(word: Sequence, key: Callable = None) -> frozenset:
    """Positions i (1-indexed) with word[i] > word[i+1]."""
    if key is None:
        key = lambda x: x
    return frozenset(
        i + 1 for i in range(len(word) - 1) if key(word[i]) > key(word[i + 1])
    )


def excedance_set(p: Perm) -> frozenset:
    return frozenset(i + 1 for i, v in enumerate(p) if v > i + 1)


def barred_word(p: Perm) -> tuple:
    """One-line word with bars on the excedance positions."""
    exc = excedance_set(p)
    return tuple(Letter(v, i + 1 in exc) for i, v in enumerate(p))


def exd_set(p: Perm) -> frozenset:
    """Descent set of the barred word under the barred-first order."""
    return descent_set(barred_word(p), key=order_barred_first)


def statistics(p: Sequence[int]) -> StatRecord:
    p = check_perm(p)
    n = len(p)
    des_s = descent_set(p)
    exc_s = excedance_set(p)
    maj = sum(des_s)
    inv = sum(
        1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j]
    )
    return StatRecord(
        des=len(des_s),
        exc=len(exc_s),
        maj=maj,
        inv=inv,
        comaj=n * (n - 1) // 2 - maj,
        fix=sum(1 for i, v in enumerate(p) if v == i + 1),
        Des=des_s,
        Exc=exc_s,
        Exd=exd_set(p),
    )


# -- cycle form --------------------------------------------------------------

def cycles(p: Perm) -> list:
    """Canonical cycle form: each cycle starts at its minimum, cycles
    sorted by minimum."""
    p = check_perm(p)
    seen = [False] * (len(p) + 1)
    out = []
    for start in range(1, len(p) + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x - 1]
        out.append(tuple(cyc))
    return out


def from_cycles(cycs: Sequence[Sequence[int]], n: int) -> Perm:
    word = list(range(1, n + 1))
    for cyc in cycs:
        for i, x in enumerate(cyc):
            word[x - 1] = cyc[(i + 1) % len(cyc)]
    return check_perm(word)


def cycle_type(p: Perm) -> tuple:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


# -- enumeration -------------------------------------------------------------

def enumerate_perms(n: int, cap: int = DEFAULT_CAP) -> Iterator[Perm]:
    """All of S_n in lexicographic order; S_0 = {()}."""
    if n > cap:
        raise CapExceededError("enumerate_perms", n, cap)
    if n <= 0:
        yield ()
        return
    yield from itertools.permutations(range(1, n + 1))


def enumerate_by(
    n: int,
    *,
    cycle_type_is: tuple | None = None,
    fix_count: int | None = None,
    derangements: bool = False,
    cap: int = DEFAULT_CAP,
) -> Iterator[Perm]:
    for p in enumerate_perms(n, cap):
        if cycle_type_is is not None and cycle_type(p) != tuple(cycle_type_is):
            continue
        if fix_count is not None or derangements:
            f = sum(1 for i, v in enumerate(p) if v == i + 1)
            if fix_count is not None and f != fix_count:
                continue
            if derangements and f != 0:
                continue
        yield p


def compatible_sequences(p: Perm, max_value: int) -> Iterator[tuple]:
    """Weakly decreasing sequences s with s_1 <= max_value that strictly
    decrease at every Exd position."""
    p = check_perm(p)
    n = len(p)
    if n == 0:
        yield ()
        return
    if max_value < 1:
        return
    strict = exd_set(p)

    def rec(i: int, prev: int, acc: list):
        if i > n:
            yield tuple(acc)
            return
        if i == 1:
            hi = max_value
        else:
            hi = prev - 1 if (i - 1) in strict else prev
        for v in range(hi, 0, -1):
            acc.append(v)
            yield from rec(i + 1, v, acc)
            acc.pop()

    yield from rec(1, 0, [])


def is_compatible(p: Perm, s: Sequence[int]) -> bool:
    if len(s) != len(p):
        return False
    if any(s[i] < s[i + 1] for i in range(len(s) - 1)):
        return False
    return all(s[i - 1] > s[i] for i in exd_set(p))


# -- partitions and compositions ---------------------------------------------

def partitions(n: int, max_part: int | None = None) -> Iterator[tuple]:
    """Partitions of n in reverse-lexicographic order (largest part first)."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def compositions(n: int) -> Iterator[tuple]:
    """Compositions of n (n >= 0)."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def concat_partitions(lam: Sequence[int], mu: Sequence[int]) -> tuple:
    return tuple(sorted(tuple(lam) + tuple(mu), reverse=True))


def part_multiplicities(lam: Sequence[int]) -> dict:
    mult: dict = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    return mult


def z_lambda(lam: Sequence[int]) -> int:
    """z_lambda = prod_i i^(m_i) m_i!."""
    out = 1
    for part, m in part_multiplicities(lam).items():
        f = 1
        for k in range(1, m + 1):
            f *= k
        out *= part ** m * f
    return out


def conjugate_partition(lam: Sequence[int]) -> tuple:
    if not lam:
        return ()
    return tuple(
        sum(1 for part in lam if part > i) for i in range(lam[0])
    )


def subset_to_composition(S: frozenset | set, n: int) -> tuple:
    """The composition of n with partial sums S (S a subset of [n-1])."""
    cuts = sorted(S) + [n]
    out = []
    prev = 0
    for c in cuts:
        out.append(c - prev)
        prev = c
    return tuple(x for x in out if x != 0) if n else ()


def composition_to_subset(alpha: Sequence[int]) -> frozenset:
    out = []
    acc = 0
    for part in alpha[:-1]:
        acc += part
        out.append(acc)
    return frozenset(out)
