"""Constructive maps between permutations, ornaments and banners.

All word comparisons here use the value-first order 1 < 1' < 2 < 2' < ...
A Lyndon word in this module follows the convention of being strictly
lexicographically larger than all of its rotations, and Lyndon
factorizations are weakly increasing sequences of such words (a proper
prefix counts as larger when comparing factors).
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterator, NamedTuple, Sequence

from .combinat import (
    CapExceededError,
    Letter,
    Perm,
    check_perm,
    cycles,
    excedance_set,
    format_word,
    is_compatible,
    order_value_first,
)

Word = tuple  # tuple of Letter


class Necklace(NamedTuple):
    """A primitive circular word stored in its canonical rotation (the
    lexicographically largest linear reading, value-first order)."""

    letters: Word

    def __str__(self) -> str:
        return f"({format_word(self.letters)})"


class Ornament(NamedTuple):
    necklaces: tuple  # sorted tuple of Necklace

    def __str__(self) -> str:
        return "".join(str(nk) for nk in self.necklaces)


class MarkedSequence(NamedTuple):
    values: tuple  # weakly increasing positive integers
    mark: int  # 1 <= mark <= len(values) - 1

    def __str__(self) -> str:
        return f"({''.join(map(str, self.values))},{self.mark})"


def _necklace_sort_key(nk: Necklace) -> tuple:
    return (len(nk.letters), tuple(order_value_first(a) for a in nk.letters))


def rotations(word: Word) -> Iterator[Word]:
    for i in range(len(word)):
        yield word[i:] + word[:i]


def is_primitive(word: Word) -> bool:
    return len(set(rotations(word))) == len(word)


def canonical_rotation(word: Word) -> Word:
    return max(rotations(word), key=lambda w: tuple(order_value_first(a) for a in w))


def is_necklace_word(word: Word) -> bool:
    """Definition check: primitive, bar-adjacency rules, singletons unbarred."""
    if not word:
        return False
    if len(word) == 1:
        return not word[0].barred
    if not is_primitive(word):
        return False
    for i, a in enumerate(word):
        b = word[(i + 1) % len(word)]
        if a.barred and b.value > a.value:
            return False
        if not a.barred and b.value < a.value:
            return False
    return True


def make_necklace(word: Word) -> Necklace:
    if not is_necklace_word(word):
        raise ValueError(f"{format_word(word)} is not a valid necklace word")
    return Necklace(canonical_rotation(word))


def make_ornament(necklaces: Sequence[Necklace]) -> Ornament:
    return Ornament(tuple(sorted(necklaces, key=_necklace_sort_key)))


def ornament_type(R: Ornament) -> tuple:
    return tuple(sorted((len(nk.letters) for nk in R.necklaces), reverse=True))


def ornament_bars(R: Ornament) -> int:
    return sum(a.barred for nk in R.necklaces for a in nk.letters)


def ornament_weight(R: Ornament) -> tuple:
    """Sorted multiset of letter values."""
    return tuple(sorted(a.value for nk in R.necklaces for a in nk.letters))


# -- the bicolored Gessel-Reutenauer pair -------------------------------------

def gr_phi(p: Perm, s: Sequence[int]) -> Ornament:
    """Write p in cycle form, bar the excedance letters, substitute s."""
    p = check_perm(p)
    if not is_compatible(p, s):
        raise ValueError("sequence is not compatible with the permutation")
    exc = excedance_set(p)
    necklaces = []
    for cyc in cycles(p):
        word = tuple(Letter(s[i - 1], i in exc) for i in cyc)
        necklaces.append(make_necklace(word))
    return make_ornament(necklaces)


def _periodic_key(nk: Necklace, start: int, length: int) -> tuple:
    word = nk.letters
    k = len(word)
    return tuple(
        order_value_first(word[(start + i) % k]) for i in range(length)
    )


def gr_eta(R: Ornament) -> tuple:
    """Inverse map: ornament -> (permutation, compatible sequence).

    Positions are ranked by their infinite periodic readings (compared on
    the first len1+len2 letters, enough to separate distinct periodic
    words), ties broken by the sorted necklace order.
    """
    positions = []  # (necklace index, offset)
    for idx, nk in enumerate(R.necklaces):
        for off in range(len(nk.letters)):
            positions.append((idx, off))
    n = len(positions)
    if n == 0:
        return (), ()
    maxlen = 2 * max(len(nk.letters) for nk in R.necklaces)

    def rank_key(pos):
        idx, off = pos
        return (_periodic_key(R.necklaces[idx], off, maxlen), idx, off)

    # i-th largest position gets label i (1-indexed)
    ordered = sorted(positions, key=rank_key, reverse=True)
    label = {pos: i + 1 for i, pos in enumerate(ordered)}
    succ = {}
    value = {}
    for idx, nk in enumerate(R.necklaces):
        k = len(nk.letters)
        for off in range(k):
            succ[label[(idx, off)]] = label[(idx, (off + 1) % k)]
            value[label[(idx, off)]] = nk.letters[off].value
    word = tuple(succ[i] for i in range(1, n + 1))
    s = tuple(value[i] for i in range(1, n + 1))
    return word, s


# -- Lyndon machinery ---------------------------------------------------------

def _default_key(x):
    return x


def lyndon_factorization(word: Sequence, key: Callable = None) -> list:
    """Factor into weakly increasing Lyndon words (larger-than-rotations
    convention).  This is Duval's algorithm run on the reversed order."""
    if key is None:
        key = _default_key
    w = list(word)
    n = len(w)
    factors = []
    k = 0
    while k < n:
        i, j = k, k + 1
        while j < n and key(w[j]) <= key(w[i]):
            if key(w[j]) < key(w[i]):
                i = k
            else:
                i += 1
            j += 1
        while k <= i:
            factors.append(tuple(w[k : k + j - i]))
            k += j - i
    return factors


def is_lyndon(word: Sequence, key: Callable = None) -> bool:
    if key is None:
        key = _default_key
    kw = tuple(key(a) for a in word)
    return all(kw > kw[i:] + kw[:i] for i in range(1, len(kw)))


def lyndon_type(word: Sequence, key: Callable = None) -> tuple:
    return tuple(
        sorted((len(f) for f in lyndon_factorization(word, key)), reverse=True)
    )


# -- banners -------------------------------------------------------------------

def is_banner(word: Word) -> bool:
    for i in range(len(word)):
        a = word[i]
        if i + 1 == len(word):
            if a.barred:
                return False
            break
        b = word[i + 1]
        if a.barred and b.value > a.value:
            return False
        if not a.barred and b.value < a.value:
            return False
    return True


def banner_bars(word: Word) -> int:
    return sum(a.barred for a in word)


def banner_lyndon_type(word: Word) -> tuple:
    return lyndon_type(word, key=order_value_first)


def banner_to_ornament(B: Word) -> Ornament:
    """Lyndon factors of the banner become the necklaces."""
    if not is_banner(B):
        raise ValueError(f"{format_word(B)} is not a banner")
    factors = lyndon_factorization(B, key=order_value_first)
    return make_ornament([Necklace(tuple(f)) for f in factors])


_END_SENTINEL = (float("inf"), 2)


def _factor_sort_key(word: Word) -> tuple:
    # factor order: lex on letters, a proper prefix counting as LARGER
    # (matches the order in which the Duval factors appear)
    return tuple(order_value_first(a) for a in word) + (_END_SENTINEL,)


def ornament_to_banner(R: Ornament) -> Word:
    """Arrange the Lyndon readings in weakly increasing factor order and
    concatenate."""
    factors = [nk.letters for nk in R.necklaces]
    factors.sort(key=_factor_sort_key)
    out: list = []
    for f in factors:
        out.extend(f)
    B = tuple(out)
    if not is_banner(B):
        raise ValueError("ornament does not concatenate to a banner")
    return B


def enumerate_banners(n: int, max_value: int, cap: int = 8) -> Iterator[Word]:
    """All banners of length n with letter values <= max_value."""
    if n > cap:
        raise CapExceededError("enumerate_banners", n, cap)
    if n == 0:
        yield ()
        return

    def rec(acc: list):
        i = len(acc)
        if i == n:
            if not acc[-1].barred:
                yield tuple(acc)
            return
        if i == 0:
            choices = [
                Letter(v, b) for v in range(1, max_value + 1) for b in (False, True)
            ]
        else:
            prev = acc[-1]
            if prev.barred:
                choices = [
                    Letter(v, b)
                    for v in range(1, prev.value + 1)
                    for b in (False, True)
                ]
            else:
                choices = [
                    Letter(v, b)
                    for v in range(prev.value, max_value + 1)
                    for b in (False, True)
                ]
        for letter in choices:
            acc.append(letter)
            yield from rec(acc)
            acc.pop()

    yield from rec([])


def enumerate_necklaces(size: int, max_value: int, cap: int = 8) -> list:
    """All necklaces of the given size with values <= max_value."""
    if size > cap:
        raise CapExceededError("enumerate_necklaces", size, cap)
    if size == 0:
        return []
    if size == 1:
        return [Necklace((Letter(v, False),)) for v in range(1, max_value + 1)]
    seen = set()
    out = []

    def rec(acc: list):
        i = len(acc)
        if i == size:
            a, b = acc[-1], acc[0]
            if a.barred and b.value > a.value:
                return
            if not a.barred and b.value < a.value:
                return
            word = tuple(acc)
            if not is_primitive(word):
                return
            canon = canonical_rotation(word)
            if canon not in seen:
                seen.add(canon)
                out.append(Necklace(canon))
            return
        if i == 0:
            choices = [
                Letter(v, b) for v in range(1, max_value + 1) for b in (False, True)
            ]
        else:
            prev = acc[-1]
            lo, hi = (1, prev.value) if prev.barred else (prev.value, max_value)
            choices = [Letter(v, b) for v in range(lo, hi + 1) for b in (False, True)]
        for letter in choices:
            acc.append(letter)
            rec(acc)
            acc.pop()

    rec([])
    return out


def enumerate_ornaments(
    lam: Sequence[int], max_value: int, cap: int = 8
) -> Iterator[Ornament]:
    """All ornaments of type lam with letter values <= max_value."""
    lam = tuple(sorted(lam, reverse=True))
    if lam and lam[0] > cap:
        raise CapExceededError("enumerate_ornaments", lam[0], cap)
    from .combinat import part_multiplicities

    mult = part_multiplicities(lam)
    pools = []
    for size, m in sorted(mult.items()):
        pool = enumerate_necklaces(size, max_value, cap)
        pools.append(list(itertools.combinations_with_replacement(pool, m)))
    for combo in itertools.product(*pools):
        necklaces = [nk for group in combo for nk in group]
        yield make_ornament(necklaces)


# -- increasing factorization and the recurrence bijection gamma ---------------

def increasing_factorization(word: Sequence, key: Callable = None):
    """Unique factorization into blocks a^j u with u nonempty, all letters
    of u below a, and block leaders weakly increasing; None if none exists."""
    if key is None:
        key = _default_key
    w = list(word)
    n = len(w)
    if n == 0:
        return []
    factors = []
    i = 0
    prev_lead = None
    while i < n:
        lead = w[i]
        if prev_lead is not None and key(lead) < key(prev_lead):
            return None
        j = i
        while j < n and key(w[j]) == key(lead):
            j += 1
        k = j
        while k < n and key(w[k]) < key(lead):
            k += 1
        if k == j:  # empty tail u
            return None
        factors.append(tuple(w[i:k]))
        prev_lead = lead
        i = k
    return factors


def banner_set_b0(n: int, max_value: int, cap: int = 8) -> Iterator[Word]:
    """Banners of length n whose Lyndon type has no parts of size 1."""
    for B in enumerate_banners(n, max_value, cap):
        if n == 0 or all(p != 1 for p in banner_lyndon_type(B)):
            yield B


def gamma(B: Word) -> tuple:
    """The recurrence bijection on banners with 1-free Lyndon type.

    Returns (B', (omega, b)) with wt(B) = wt(B') wt(omega) and
    bars(B) = bars(B') + b.
    """
    factors = increasing_factorization(B, key=order_value_first)
    if factors is None or not factors:
        raise ValueError("input is not a banner with an increasing factorization")
    last = factors[-1]
    lead = last[0]
    p = 0
    while p < len(last) and last[p] == lead:
        p += 1
    tail = last[p:]  # i_1 ... i_l
    l = len(tail)
    # r = index (0-based) of first unbarred tail letter
    r = 0
    while tail[r].barred:
        r += 1
    # sentinel: with r == 0 the bound letter is the (barred) lead itself
    bound = tail[r - 1] if r > 0 else lead
    s = None
    case2 = False
    for t in range(r, l):
        a = tail[t]
        if a.barred:
            if a.value <= bound.value:
                s = t
                case2 = True
            else:
                s = t - 1
            break
        if order_value_first(a) > order_value_first(bound):
            s = t - 1
            break
    if s is None:
        s = l - 1
    if not case2 and s == l - 1:
        # Case 1: extract the whole last factor
        omega = tuple(sorted(a.value for a in last))
        b = banner_bars(last)
        rest = factors[:-1]
    else:
        # Case 2: extract i_1..i_s, keep the lead run and the remainder
        taken = tail[: s + 1]
        omega = tuple(sorted(a.value for a in taken))
        b = banner_bars(taken)
        kept = (lead,) * p + tail[s + 1 :]
        rest = factors[:-1] + [kept]
    B_prime = tuple(a for f in rest for a in f)
    return B_prime, MarkedSequence(omega, b)


def gamma_inverse(B_prime: Word, ms: MarkedSequence) -> Word:
    omega, b = ms.values, ms.mark
    nm = len(omega)
    if not (1 <= b <= nm - 1):
        raise ValueError("invalid marked sequence")
    factors = increasing_factorization(B_prime, key=order_value_first)
    if factors is None:
        raise ValueError("B' has no increasing factorization")
    barred_desc = tuple(Letter(omega[nm - 1 - i], True) for i in range(b))
    rest_inc = tuple(Letter(v, False) for v in omega[: nm - b])
    if not factors or factors[-1][0].value <= omega[-1]:
        # Case 1: append a fresh last factor
        new_factor = barred_desc + rest_inc
        return B_prime + new_factor
    # Case 2: splice into the last factor
    last = factors[-1]
    lead = last[0]
    p = 0
    while p < len(last) and last[p] == lead:
        p += 1
    tail = last[p:]
    j1 = tail[0]
    lowest_bar = Letter(omega[nm - b], True)  # omega-bar_{n-m-b+1}
    if order_value_first(j1) > order_value_first(lowest_bar):
        new_last = (lead,) * p + barred_desc + rest_inc + tail
    else:
        new_last = (
            (lead,) * p + barred_desc[:-1] + rest_inc + (lowest_bar,) + tail
        )
    return tuple(a for f in factors[:-1] for a in f) + new_last


# -- symmetry involutions -------------------------------------------------------

def _swap_segment(seg: list, k: int, circular: bool) -> list:
    """Apply the k <-> k+1 content swap to one segment (letters of values
    k and k+1 only).  ``circular`` marks a full necklace with wraparound."""
    n = len(seg)
    values = [a.value for a in seg]
    switch_positions = [
        i
        for i in range(n if circular else n - 1)
        if values[i] != values[(i + 1) % n]
    ]
    if len(switch_positions) % 2 == 0:
        # swap values in place, then toggle the bar at every switch
        new = [Letter(2 * k + 1 - a.value, a.barred) for a in seg]
        for i in switch_positions:
            a = new[i]
            new[i] = Letter(a.value, not a.barred)
        return new
    # odd segment: swap block lengths pairwise, bars kept by position
    blocks = []
    i = 0
    while i < n:
        j = i
        while j < n and values[j] == values[i]:
            j += 1
        blocks.append((values[i], j - i))
        i = j
    new_values: list = []
    fixes = []  # (check_pos, other_pos, starts_low)
    offset = 0
    for bi in range(0, len(blocks), 2):
        (v1, m1), (v2, m2) = blocks[bi], blocks[bi + 1]
        new_values.extend([v2] * m2)
        new_values.extend([v1] * m1)
        starts_low = v1 == k
        fixes.append((offset + m2 - 1, offset + m1 - 1, starts_low))
        offset += m1 + m2
    new = [Letter(v, seg[i].barred) for i, v in enumerate(new_values)]
    for check, other, starts_low in fixes:
        if starts_low:
            # new k-block end must be unbarred; move any bar to `other`
            if new[check].barred:
                new[check] = Letter(new[check].value, False)
                new[other] = Letter(new[other].value, True)
        else:
            # new (k+1)-block end must be barred; pull the bar from `other`
            if not new[check].barred:
                new[check] = Letter(new[check].value, True)
                new[other] = Letter(new[other].value, False)
    return new


def involution_value_swap_necklace(nk: Necklace, k: int) -> Necklace:
    word = list(nk.letters)
    n = len(word)
    in_class = [a.value in (k, k + 1) for a in word]
    if not any(in_class):
        return nk
    if all(in_class):
        return make_necklace(tuple(_swap_segment(word, k, circular=True)))
    # split into maximal linear segments between intruders
    new = list(word)
    i = 0
    while i < n:
        if in_class[i] and not in_class[i - 1]:
            seg = []
            j = i
            while in_class[j % n]:
                seg.append(word[j % n])
                j += 1
            fixed = _swap_segment(seg, k, circular=False)
            for offset, letter in enumerate(fixed):
                new[(i + offset) % n] = letter
            i = j
        else:
            i += 1
    return make_necklace(tuple(new))


def involution_value_swap(R: Ornament, k: int) -> Ornament:
    return make_ornament(
        [involution_value_swap_necklace(nk, k) for nk in R.necklaces]
    )


def _complement_values(words: Sequence[Word]) -> dict:
    values = sorted({a.value for w in words for a in w})
    return {v: values[len(values) - 1 - i] for i, v in enumerate(values)}


def involution_complement(R: Ornament) -> Ornament:
    """Toggle every bar on nonsingleton necklaces, then replace the i-th
    smallest value by the i-th largest throughout."""
    comp = _complement_values([nk.letters for nk in R.necklaces])
    out = []
    for nk in R.necklaces:
        if len(nk.letters) == 1:
            out.append(Necklace((Letter(comp[nk.letters[0].value], False),)))
        else:
            word = tuple(Letter(comp[a.value], not a.barred) for a in nk.letters)
            out.append(make_necklace(word))
    return make_ornament(out)


def involution_complement_banner(B: Word) -> Word:
    """Toggle every bar except on the last letter, then complement values."""
    if not B:
        return B
    comp = _complement_values([B])
    out = [
        Letter(comp[a.value], not a.barred if i + 1 < len(B) else False)
        for i, a in enumerate(B)
    ]
    return tuple(out)
