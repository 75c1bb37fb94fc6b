"""Compositions, split compositions, diagrams and their box statistics.

Boxes are 1-based pairs (i, j): column i, row j, so dg(nu) holds the boxes
(i, j) with 1 <= j <= nu_i.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .qtfield import BivariatePoly

Composition = Tuple[int, ...]


class ShapeError(ValueError):
    pass


class Box(NamedTuple):
    i: int  # column
    j: int  # row


def comp(parts: Iterable[int]) -> Composition:
    c = tuple(int(p) for p in parts)
    if any(p < 0 for p in c):
        raise ShapeError(f"negative part in {c}")
    return c


def diagram(nu: Sequence[int]) -> List[Box]:
    return [Box(i + 1, j) for i, h in enumerate(nu) for j in range(1, h + 1)]


def _check_box(nu: Sequence[int], b) -> Tuple[int, int]:
    i, j = b
    if not (1 <= i <= len(nu) and 1 <= j <= nu[i - 1]):
        raise ShapeError(f"box {tuple(b)} is not in dg({tuple(nu)})")
    return i, j


def leg(nu: Sequence[int], b) -> int:
    i, j = _check_box(nu, b)
    return nu[i - 1] - j


def arm(nu: Sequence[int], b) -> int:
    i, j = _check_box(nu, b)
    h = nu[i - 1]
    left = sum(1 for r in range(i - 1) if j <= nu[r] <= h)
    right = sum(1 for r in range(i, len(nu)) if j - 1 <= nu[r] < h)
    return left + right


def arm_tilde(nu: Sequence[int], b) -> int:
    i, j = _check_box(nu, b)
    h = nu[i - 1]
    left = sum(1 for r in range(i - 1) if j <= nu[r] <= h)
    right = sum(1 for r in range(i, len(nu)) if j <= nu[r] < h)
    return left + right


def coarm(nu: Sequence[int], b) -> int:
    i, _ = _check_box(nu, b)
    h = nu[i - 1]
    left = sum(1 for r in range(i - 1) if h < nu[r])
    right = sum(1 for r in range(i, len(nu)) if h <= nu[r])
    return left + right


def lprime(nu: Sequence[int], i: int, variant: str = "x") -> int:
    """Eigenvalue exponent l'_nu(i).

    variant "x": #{j<i | nu_j > nu_i} + #{j>i | nu_j >= nu_i}, used with
    x-variables (dominant-minimal ordering).  variant "z" swaps the strict and
    weak inequalities; it is the same statistic read in reversed variables.
    """
    n = len(nu)
    if not 1 <= i <= n:
        raise ShapeError(f"index {i} out of range for n={n}")
    h = nu[i - 1]
    if variant == "x":
        return sum(1 for r in range(i - 1) if nu[r] > h) + sum(1 for r in range(i, n) if nu[r] >= h)
    if variant == "z":
        return sum(1 for r in range(i - 1) if nu[r] >= h) + sum(1 for r in range(i, n) if nu[r] > h)
    raise ShapeError(f"unknown l' variant {variant!r}")


def lprime_vector(nu: Sequence[int], variant: str = "x") -> Tuple[int, ...]:
    return tuple(lprime(nu, i, variant) for i in range(1, len(nu) + 1))


def rearrange(lam: Sequence[int], direction: str = "increasing") -> Composition:
    if direction == "increasing":
        return tuple(sorted(lam))
    if direction == "decreasing":
        return tuple(sorted(lam, reverse=True))
    raise ShapeError(f"unknown direction {direction!r}")


def is_partition(lam: Sequence[int]) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def t_factorial(m: int) -> BivariatePoly:
    """[m]_t! = prod_{i=1..m} (1 + t + ... + t^{i-1})."""
    out = BivariatePoly(1)
    for i in range(1, m + 1):
        out = out * BivariatePoly({(0, e): 1 for e in range(i)})
    return out


def poincare_W(lam: Sequence[int]) -> BivariatePoly:
    """Poincare polynomial sum_{w in Stab(lam)} t^{l(w)}."""
    out = BivariatePoly(1)
    for mult in Counter(lam).values():
        out = out * t_factorial(mult)
    return out


def inversions(nu: Sequence[int]) -> int:
    """Number of pairs a<b with nu_a > nu_b: length of the minimal w with w(nu^-) = nu."""
    return sum(1 for a in range(len(nu)) for b in range(a + 1, len(nu)) if nu[a] > nu[b])


def apply_reflection(nu: Sequence[int], i: int) -> Composition:
    """s_i(nu): swap entries i and i+1 (1-based)."""
    v = list(nu)
    v[i - 1], v[i] = v[i], v[i - 1]
    return tuple(v)


def apply_word_to_comp(word: Sequence[int], nu: Sequence[int]) -> Composition:
    """s_{i1} ... s_{il} (nu), rightmost letter acting first."""
    v = tuple(nu)
    for i in reversed(word):
        v = apply_reflection(v, i)
    return v


def minimal_word(source: Sequence[int], target: Sequence[int]) -> Tuple[int, ...]:
    """Reduced word of the minimal-length w with w(source) = target.

    The letters are found by sorting target back to source with adjacent swaps
    that remove inversions relative to source's arrangement.
    """
    if sorted(source) != sorted(target):
        raise ShapeError(f"{tuple(target)} is not a rearrangement of {tuple(source)}")
    # positions of source values, processed stably so equal entries keep order
    order = {}
    for idx, v in enumerate(source):
        order.setdefault(v, []).append(idx)
    used = Counter()
    labels = []
    for v in target:
        labels.append(order[v][used[v]])
        used[v] += 1
    word = []
    labels = list(labels)
    changed = True
    while changed:
        changed = False
        for a in range(len(labels) - 1):
            if labels[a] > labels[a + 1]:
                labels[a], labels[a + 1] = labels[a + 1], labels[a]
                word.append(a + 1)
                changed = True
    return tuple(word)


class OrbitElement(NamedTuple):
    composition: Composition
    word: Tuple[int, ...]
    length: int


def orbit(lam: Sequence[int]) -> List[Composition]:
    return sorted(set(itertools.permutations(tuple(lam))))


def orbit_and_order(lam: Sequence[int]) -> List[OrbitElement]:
    """S_n-orbit of lam; each entry carries the minimal w with w(lam^-) = entry."""
    base = rearrange(lam, "increasing")
    out = []
    for mu in orbit(lam):
        w = minimal_word(base, mu)
        out.append(OrbitElement(mu, w, len(w)))
    out.sort(key=lambda e: (e.length, e.composition))
    return out


def _std_leq(x: Sequence[int], y: Sequence[int]) -> bool:
    # tableau criterion; antidominant arrangement is the minimum
    for k in range(1, len(x) + 1):
        a = sorted(x[:k], reverse=True)
        b = sorted(y[:k], reverse=True)
        if any(u > v for u, v in zip(a, b)):
            return False
    return True


def bruhat_leq(nu: Sequence[int], mu: Sequence[int]) -> bool:
    """nu <= mu in the Bruhat order on one orbit, dominant arrangement minimal."""
    if sorted(nu) != sorted(mu):
        raise ShapeError("Bruhat comparison across different orbits")
    return _std_leq(mu, nu)


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Dominance order on partitions of equal size (shorter ones padded by 0)."""
    if sum(a) != sum(b):
        return False
    a, b = rearrange(a, "decreasing"), rearrange(b, "decreasing")
    n = max(len(a), len(b))
    a, b = a + (0,) * (n - len(a)), b + (0,) * (n - len(b))
    sa = sb = 0
    for u, v in zip(a, b):
        sa += u
        sb += v
        if sa > sb:
            return False
    return True


def triangular_below(nu: Sequence[int], mu: Sequence[int]) -> bool:
    """Strict order used for the triangularity of E_mu.

    Either nu^+ is strictly dominated by mu^+, or both lie in one orbit and
    nu is strictly below mu in Bruhat order.
    """
    if tuple(nu) == tuple(mu):
        return False
    if sorted(nu) == sorted(mu):
        return bruhat_leq(nu, mu)
    return dominance_leq(nu, mu)


def triangular_key(nu: Sequence[int]):
    """A total order extending triangular_below (larger key = higher)."""
    return (sum(nu), rearrange(nu, "decreasing"), -inversions(nu))


def compositions(n: int, d: int) -> List[Composition]:
    """All compositions of size d with n parts, in lexicographic order."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in compositions(n - 1, d - first):
            out.append((first,) + rest)
    return sorted(out)


def compositions_upto(n: int, d: int) -> List[Composition]:
    return [c for e in range(d + 1) for c in compositions(n, e)]


def partitions(d: int, max_len: int, max_part: int | None = None) -> List[Composition]:
    """Partitions of d with at most max_len parts, padded with zeros to max_len."""
    if max_part is None:
        max_part = d
    if d == 0:
        return [(0,) * max_len]
    if max_len == 0:
        return []
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, max_len - 1, first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class SplitComposition:
    """(lambda | gamma): symmetric block of length n-k, nonsymmetric block of length k."""

    lam: Composition
    gamma: Composition

    def __post_init__(self):
        object.__setattr__(self, "lam", comp(self.lam))
        object.__setattr__(self, "gamma", comp(self.gamma))

    @property
    def n(self) -> int:
        return len(self.lam) + len(self.gamma)

    @property
    def k(self) -> int:
        return len(self.gamma)

    @property
    def full(self) -> Composition:
        return self.lam + self.gamma

    @property
    def size(self) -> int:
        return sum(self.lam) + sum(self.gamma)

    def antidominant(self) -> "SplitComposition":
        return SplitComposition(rearrange(self.lam, "increasing"), self.gamma)

    def dominant(self) -> "SplitComposition":
        return SplitComposition(rearrange(self.lam, "decreasing"), self.gamma)

    @classmethod
    def from_full(cls, nu: Sequence[int], k: int) -> "SplitComposition":
        nu = tuple(nu)
        return cls(nu[: len(nu) - k], nu[len(nu) - k:])

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "gamma": list(self.gamma)}

    def __str__(self):
        return "(" + ",".join(map(str, self.lam)) + "|" + ",".join(map(str, self.gamma)) + ")"


def split_basis(n: int, k: int, d: int) -> List[SplitComposition]:
    """All (lambda|gamma) with lambda a partition of length n-k, |lambda|+|gamma| = d."""
    out = []
    for a in range(d + 1):
        for lam in partitions(a, n - k):
            for gamma in compositions(k, d - a):
                out.append(SplitComposition(lam, gamma))
    return out
