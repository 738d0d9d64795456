"""Metacyclic groups Z/d x|_t Z/s and their distinguished subgroups.

Elements are pairs (i, j) standing for tau^i sigma^j, with
sigma tau sigma^-1 = tau^t. Every table in the package indexes elements in
sigma-major order, so the pair (i, j) sits at position j*d + i and the
tau-blocks stay contiguous. Position 0 is always the identity.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import EvenD, FamilyMismatch, InvalidGroup, InvalidOrder

FAMILIES = ("cyclic", "dihedral", "semidirect", "arason")
DEFAULT_MAX_D = 50


def max_d() -> int:
    """Upper bound on d, read from ``COHOMKERN_MAX_D`` (default 50)."""
    raw = os.environ.get("COHOMKERN_MAX_D")
    if raw is None:
        return DEFAULT_MAX_D
    try:
        return int(raw)
    except ValueError:
        raise InvalidGroup(f"COHOMKERN_MAX_D must be an integer, got {raw!r}") from None


def multiplicative_order(t: int, d: int) -> int:
    if math.gcd(t, d) != 1:
        raise InvalidGroup(f"t={t} is not a unit modulo {d}")
    k, x = 1, t % d
    while x != 1 % d:
        x = x * t % d
        k += 1
    return k


@dataclass(frozen=True)
class GroupElement:
    i: int
    j: int

    def __str__(self) -> str:
        return f"t^{self.i} s^{self.j}"


class TableGroup:
    """Anything the cochain machinery can run over.

    Subclasses provide ``order``, ``mul_table`` (order x order ints) and
    ``labels`` (the (i, j) pair of each element in the ambient metacyclic
    group). Index 0 must be the identity.
    """

    order: int
    mul_table: np.ndarray
    labels: list[tuple[int, int]]

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 0)
        inv[rows] = cols
        return inv

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])


class MetacyclicGroup(TableGroup):
    """G = <tau, sigma | tau^d = sigma^s = 1, sigma tau sigma^-1 = tau^t>."""

    def __init__(self, d: int, s: int, t: int, family: str):
        self.d, self.s, self.t, self.family = d, s, t, family
        self.order = d * s
        self.labels = [(i, j) for j in range(s) for i in range(d)]
        jj, ii = np.divmod(np.arange(self.order), d)
        theta = np.array([self.theta(j) for j in range(s)], dtype=np.int64)
        # (i,j)(k,l) = (i + t^j k, j + l)
        new_i = (ii[:, None] + theta[jj][:, None] * ii[None, :]) % d
        new_j = (jj[:, None] + jj[None, :]) % s
        self.mul_table = new_j * d + new_i

    def __repr__(self) -> str:
        return f"MetacyclicGroup(d={self.d}, s={self.s}, t={self.t}, family={self.family!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetacyclicGroup):
            return NotImplemented
        return (self.d, self.s, self.t) == (other.d, other.s, other.t)

    def __hash__(self) -> int:
        return hash((self.d, self.s, self.t))

    @property
    def descriptor(self) -> str:
        return f"metacyclic:{self.d},{self.s},{self.t}"

    def index(self, i: int, j: int) -> int:
        return (j % self.s) * self.d + i % self.d

    def element(self, k: int) -> GroupElement:
        return GroupElement(*self.labels[k])

    @property
    def tau(self) -> int:
        return self.index(1, 0)

    @property
    def sigma(self) -> int:
        return self.index(0, 1)

    @property
    def generators(self) -> list[int]:
        gens = [self.tau]
        if self.s > 1:
            gens.append(self.sigma)
        return gens

    def theta(self, j: int) -> int:
        """t^j mod d; negative j uses the inverse of t."""
        return pow(self.t, j % self.s, self.d)

    def power(self, g: int, k: int) -> int:
        out = 0
        for _ in range(k % self.order):
            out = self.mul(out, g)
        return out

    def sigma_tau_split(self, g: int) -> tuple[int, int]:
        """Return (j, i) with g = sigma^j tau^i."""
        a, j = self.labels[g]
        # tau^a sigma^j = sigma^j tau^(a * t^-j)
        return j, a * pow(self.t, -j, self.d) % self.d

    def reflection_split(self, g: int) -> tuple[int, int]:
        """For s = 2, return (j, i) with g = (sigma tau)^j tau^i."""
        if self.s != 2:
            raise FamilyMismatch("reflection coset split needs s = 2")
        a, j = self.labels[g]
        if j == 0:
            return 0, a
        # sigma tau^(i+1) = tau^(-(i+1)) sigma when t = -1
        st = self.mul(self.sigma, self.tau)
        for i in range(self.d):
            if self.mul(st, self.index(i, 0)) == g:
                return 1, i
        raise AssertionError("unreachable: reflections cover the sigma-coset")

    def subgroup(self, name: str) -> Subgroup:
        _d, s = self.d, self.s
        if name == "J":
            gens = [self.tau]
        elif name == "H":
            gens = [self.sigma]
        elif name == "Jprime":
            if s % 2:
                raise FamilyMismatch("Jprime needs s even")
            gens = [self.tau, self.index(0, s // 2)]
        elif name == "Hprime":
            if s != 2:
                raise FamilyMismatch("Hprime is only used for s = 2")
            gens = [self.mul(self.sigma, self.tau)]
        elif name == "trivial":
            gens = []
        elif name == "full":
            gens = self.generators
        else:
            raise ValueError(f"unknown subgroup {name!r}")
        return Subgroup(self, name, self._closure(gens))

    def _closure(self, gens: list[int]) -> list[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(seen)


@dataclass(eq=False)
class Subgroup(TableGroup):
    parent: MetacyclicGroup
    name: str
    elements: list[int]
    order: int = field(init=False)

    def __post_init__(self):
        self.order = len(self.elements)
        pos = {g: k for k, g in enumerate(self.elements)}
        sub = self.parent.mul_table[np.ix_(self.elements, self.elements)]
        try:
            self.mul_table = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
        except KeyError:
            raise InvalidGroup(f"subgroup {self.name} is not closed") from None
        self.labels = [self.parent.labels[g] for g in self.elements]
        self._pos = pos

    def __repr__(self) -> str:
        return f"Subgroup({self.name}, order={self.order}, in {self.parent!r})"

    def local(self, g: int) -> int:
        return self._pos[g]

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def left_transversal(self) -> list[int]:
        """Smallest representative of each left coset gS."""
        G = self.parent
        reps, covered = [], set()
        for g in range(G.order):
            if g in covered:
                continue
            reps.append(g)
            covered.update(G.mul(g, h) for h in self.elements)
        return reps

    def right_split(self) -> tuple[np.ndarray, np.ndarray]:
        """For each g return (local index of s, coset rep c) with g = s c."""
        G = self.parent
        s_of = np.full(G.order, -1, dtype=np.int64)
        c_of = np.empty(G.order, dtype=np.int64)
        for g in range(G.order):
            if s_of[g] >= 0:
                continue
            for k, h in enumerate(self.elements):
                x = G.mul(h, g)
                s_of[x] = k
                c_of[x] = g
        return s_of, c_of


def make_group(d: int, s: int, t: int, family: str) -> MetacyclicGroup:
    """Validate (d, s, t) against the requested family and build the group."""
    if family not in FAMILIES:
        raise InvalidGroup(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if d < 2:
        raise InvalidGroup("d must be at least 2")
    if d > max_d():
        raise InvalidGroup(f"d={d} exceeds the configured cap {max_d()} (COHOMKERN_MAX_D)")
    if s < 1:
        raise InvalidGroup("s must be positive")
    if not 1 <= t < d:
        raise InvalidGroup(f"t must satisfy 1 <= t < d, got t={t}")
    if math.gcd(t, d) != 1:
        raise InvalidGroup(f"t={t} is not a unit modulo {d}")
    order = multiplicative_order(t, d)
    if order != s:
        raise InvalidOrder(f"t={t} has order {order} modulo {d}, expected s={s}")
    if family in ("cyclic", "arason"):
        if s != 1:
            raise FamilyMismatch(f"{family} family needs s = 1")
        if family == "arason" and d != 2:
            raise FamilyMismatch("arason family is the group of order 2")
    else:
        if d % 2 == 0:
            raise EvenD(f"{family} family needs d odd, got d={d}")
        if s % 2:
            raise FamilyMismatch(f"{family} family needs s even, got s={s}")
        if family == "dihedral" and (s != 2 or t != d - 1):
            raise FamilyMismatch("dihedral family needs s = 2 and t = -1 mod d")
        if pow(t, s // 2, d) != d - 1:
            raise FamilyMismatch(f"t^(s/2) = {pow(t, s // 2, d)} is not -1 modulo {d}")
    return MetacyclicGroup(d, s, t, family)


_DESCRIPTOR = re.compile(r"^metacyclic:(\d+),(\d+),(\d+)$")


def parse_descriptor(text: str) -> tuple[int, int, int]:
    m = _DESCRIPTOR.match(text.strip())
    if not m:
        raise InvalidGroup(f"group descriptor must look like metacyclic:d,s,t, got {text!r}")
    return int(m[1]), int(m[2]), int(m[3])


def infer_family(d: int, s: int, t: int) -> str:
    if s == 1:
        return "cyclic"
    if s == 2 and t == d - 1:
        return "dihedral"
    return "semidirect"
