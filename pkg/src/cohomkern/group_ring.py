"""The group ring Z/m[G] and free submodules of it given by explicit bases.

A ring element is a coefficient vector indexed like the group's element
table. Left multiplication by a group element permutes coefficients, and
every module map in the package is a right multiplication, so it commutes
with the left action automatically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConstructionFailure, FamilyMismatch, ModulusMismatch, NoSolution, NotStable
from .groups import MetacyclicGroup, Subgroup, TableGroup
from .znz_linalg import HowellForm, howell, kernel


def _reduce(x: np.ndarray, m: int) -> np.ndarray:
    return x % m if m else x


class RingElement:
    """An element of Z/m[G], stored as residues in canonical element order.

    Modulus 0 means integer coefficients, i.e. the ring Z[G] itself.
    """

    __slots__ = ("group", "modulus", "coeffs")

    def __init__(self, group: MetacyclicGroup, modulus: int, coeffs):
        c = _reduce(np.asarray(coeffs, dtype=np.int64), modulus)
        if c.shape != (group.order,):
            raise ValueError(f"need {group.order} coefficients, got shape {c.shape}")
        self.group, self.modulus, self.coeffs = group, modulus, c

    @classmethod
    def zero(cls, G: MetacyclicGroup, m: int) -> RingElement:
        return cls(G, m, np.zeros(G.order, dtype=np.int64))

    @classmethod
    def basis(cls, G: MetacyclicGroup, m: int, g: int, coeff: int = 1) -> RingElement:
        c = np.zeros(G.order, dtype=np.int64)
        c[g] = coeff
        return cls(G, m, c)

    @classmethod
    def monomial(cls, G: MetacyclicGroup, m: int, i: int, j: int, coeff: int = 1) -> RingElement:
        return cls.basis(G, m, G.index(i, j), coeff)

    def _check(self, other: RingElement) -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"moduli {self.modulus} and {other.modulus} differ")
        if self.group != other.group:
            raise ValueError("elements live in different group rings")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.group, self.modulus, self.coeffs + other.coeffs)

    def __sub__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.group, self.modulus, self.coeffs - other.coeffs)

    def __neg__(self) -> RingElement:
        return RingElement(self.group, self.modulus, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return ring_mul(self, other)
        return RingElement(self.group, self.modulus, self.coeffs * int(other))

    def __rmul__(self, k: int) -> RingElement:
        return RingElement(self.group, self.modulus, self.coeffs * int(k))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.modulus == other.modulus and self.group == other.group
                and bool(np.all(self.coeffs == other.coeffs)))

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        ring = f"mod {self.modulus}" if self.modulus else "over Z"
        return f"RingElement({format_element(self)} {ring})"

    def right_matrix(self) -> np.ndarray:
        """R with (x * self).coeffs == x.coeffs @ R (mod m)."""
        return right_mult_matrix(self.group, self.coeffs, self.modulus)


def right_mult_matrix(G: TableGroup, b: np.ndarray, m: int) -> np.ndarray:
    n = G.order
    R = np.zeros((n, n), dtype=np.int64)
    rows = np.repeat(np.arange(n), n)
    R[rows, G.mul_table.ravel()] = np.tile(b, n)
    return _reduce(R, m)


def left_translate(G: TableGroup, X: np.ndarray, g: int) -> np.ndarray:
    """Rows of X (coefficient vectors) multiplied on the left by g."""
    out = np.empty_like(X)
    out[..., G.mul_table[g]] = X
    return out


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    return RingElement(a.group, a.modulus, a.coeffs @ b.right_matrix())


def format_element(x: RingElement) -> str:
    terms = []
    for k in np.flatnonzero(x.coeffs):
        i, j = x.group.labels[k]
        terms.append(f"{int(x.coeffs[k])}·t^{i} s^{j}")
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(
    r"^(?:(?P<coef>[+-]?\d+)\s*[·*]?\s*)?(?P<mono>(?:t\^-?\d+|s\^-?\d+|\s)*)$"
)


def parse_element(text: str, G: MetacyclicGroup, m: int) -> RingElement:
    """Parse sums like ``3·t^2 s^1 + 1·t^0 s^0``; '*' may replace '·'."""
    out = np.zeros(G.order, dtype=np.int64)
    body = text.strip().replace("- ", "+ -")
    if body in ("", "0"):
        return RingElement(G, m, out)
    for raw in body.split("+"):
        term = raw.strip()
        if not term:
            continue
        mt = _TERM.match(term)
        if not mt or (mt["coef"] is None and not mt["mono"].strip()):
            raise ValueError(f"cannot parse ring term {term!r}")
        coef = int(mt["coef"]) if mt["coef"] is not None else 1
        i = j = 0
        for sym, exp in re.findall(r"([ts])\^(-?\d+)", mt["mono"]):
            if sym == "t":
                if j:
                    raise ValueError(f"write tau before sigma in {term!r}")
                i += int(exp)
            else:
                j += int(exp)
        out[G.index(i, j)] += coef
    return RingElement(G, m, out)


def special_element(G: MetacyclicGroup, kind: str, modulus: int, i: int = 0) -> RingElement:
    """The distinguished elements T_tau, T_sigma, C(i), B and B_dihedral.

    ``B`` is the semidirect-family element
    (1 - sigma^(s/2)) tau^((d+1)/2) sum_{j < s/2} (sum_{k < theta_j} tau^k) sigma^j;
    ``B_dihedral`` is 1 - sigma tau, used by the dihedral-classic sequence.
    """
    d, s, m = G.d, G.s, modulus
    one = RingElement.basis(G, m, 0)
    tau = RingElement.basis(G, m, G.tau)
    if kind == "T_tau":
        return sum((RingElement.monomial(G, m, k, 0) for k in range(d)), RingElement.zero(G, m))
    if kind == "T_sigma":
        return sum((RingElement.monomial(G, m, 0, j) for j in range(s)), RingElement.zero(G, m))
    if kind in ("C", "B") and (s % 2 or d % 2 == 0):
        raise FamilyMismatch(f"{kind} needs s even and d odd")
    if kind == "C":
        T_sigma = special_element(G, "T_sigma", m)
        return RingElement.monomial(G, m, i, 0) * T_sigma * (one - tau)
    if kind == "B":
        half = RingElement.monomial(G, m, 0, s // 2)
        inner = RingElement.zero(G, m)
        for j in range(s // 2):
            block = sum((RingElement.monomial(G, m, k, 0) for k in range(G.theta(j))),
                        RingElement.zero(G, m))
            inner = inner + block * RingElement.monomial(G, m, 0, j)
        return (one - half) * RingElement.monomial(G, m, (d + 1) // 2, 0) * inner
    if kind == "B_dihedral":
        if s != 2:
            raise FamilyMismatch("B_dihedral needs s = 2")
        return one - RingElement.monomial(G, m, 0, 1) * tau
    raise ValueError(f"unknown special element {kind!r}")


@dataclass(eq=False)
class GModule:
    """A free Z/m-module of rank r with a left action of a finite group.

    ``act[g]`` is the r x r matrix A with g.b_k = sum_l A[k, l] b_l, so on
    coefficient rows g.v = v @ act[g] and act[gh] = act[h] @ act[g].
    """

    name: str
    group: TableGroup
    modulus: int
    act: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.act.shape[1]

    def reduce(self, m: int) -> GModule:
        if self.modulus % m:
            raise ModulusMismatch(f"{m} does not divide {self.modulus}")
        return GModule(self.name, self.group, m, self.act % m)

    def restrict(self, S: Subgroup) -> GModule:
        return GModule(f"{self.name}|{S.name}", S, self.modulus, self.act[S.elements])

    def is_map_equivariant(self, other: GModule, F: np.ndarray) -> bool:
        """Whether v -> v @ F commutes with the action on every element."""
        lhs = np.einsum("gij,jk->gik", self.act, F) % self.modulus
        rhs = np.einsum("ij,gjk->gik", F, other.act) % self.modulus
        return bool(np.all(lhs == rhs))


def trivial_module(group: TableGroup, modulus: int, rank: int = 1, name: str = "trivial") -> GModule:
    act = np.broadcast_to(np.eye(rank, dtype=np.int64), (group.order, rank, rank)).copy()
    return GModule(name, group, modulus, act)


# prime used to find integer coordinates in lattices that are not saturated
_COORD_PRIME = 1_000_003


class FreeModuleBasis:
    """A G-stable lattice in Z[G] with a fixed basis, used as a free Z/m-module.

    With ``exact=True`` the rows are honest integer vectors and the module is
    lattice (x) Z/m, which stays free even when the lattice is not saturated
    in Z[G] (then its image in Z/m[G] is smaller). Coordinates of integer
    vectors are found exactly over Z. With ``exact=False`` the rows are only
    known mod m and must span a free summand of Z/m[G].
    """

    def __init__(self, name: str, group: MetacyclicGroup, modulus: int, elements, exact: bool = True):
        rows = [e.coeffs if isinstance(e, RingElement) else np.asarray(e) for e in elements]
        E = np.array(rows, dtype=np.int64).reshape(len(rows), group.order)
        if not exact:
            E = E % modulus
        self.name, self.group, self.modulus, self.elements = name, group, modulus, E
        self.exact = exact
        self.saturated = howell(E, modulus).size == modulus ** self.rank
        if exact and kernel(E, _COORD_PRIME).shape[0]:
            raise ConstructionFailure(f"basis of {name} is not linearly independent over Z")
        if not exact and not self.saturated:
            raise ConstructionFailure(f"basis of {name} is not linearly independent mod {modulus}")

    def __repr__(self) -> str:
        return f"FreeModuleBasis({self.name}, rank={self.rank}, mod {self.modulus})"

    @property
    def rank(self) -> int:
        return self.elements.shape[0]

    def element(self, k: int) -> RingElement:
        return RingElement(self.group, 0 if self.exact else self.modulus, self.elements[k])

    @cached_property
    def _form(self) -> HowellForm:
        return howell(self.elements, self.modulus, transform=True)

    @cached_property
    def _prime_form(self) -> HowellForm:
        return howell(self.elements, _COORD_PRIME, transform=True)

    def _integer_coords(self, X: np.ndarray) -> np.ndarray:
        P = _COORD_PRIME
        x = self._prime_form.solve(X)
        x = np.where(x > P // 2, x - P, x)
        if np.any(x @ self.elements != X):
            raise NoSolution(f"vector is not in the lattice {self.name}")
        return x

    def coords(self, X, exact: bool = True) -> np.ndarray:
        """Coordinates mod m of ring-element rows X in this basis.

        ``exact`` says X holds integer vectors rather than residues; residues
        are only accepted by saturated lattices. NoSolution if X is outside.
        """
        X = np.asarray(X, dtype=np.int64)
        single = X.ndim == 1
        X = X.reshape(-1, self.group.order)
        if self.saturated:
            out = self._form.solve(X % self.modulus)
        elif exact and self.exact:
            out = self._integer_coords(X) % self.modulus
        else:
            raise NoSolution(f"{self.name} is not saturated mod {self.modulus}; need integer vectors")
        return out[0] if single else out

    def contains(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.group.order)
        if self.saturated:
            return self._form.contains(X % self.modulus)
        return np.array([self._has(x) for x in X], dtype=bool)

    def _has(self, x: np.ndarray) -> bool:
        try:
            self._integer_coords(x.reshape(1, -1))
        except NoSolution:
            return False
        return True

    def action_matrix(self, g: int) -> np.ndarray:
        moved = left_translate(self.group, self.elements, g)
        try:
            return self.coords(moved, exact=self.exact)
        except NoSolution:
            raise NotStable(f"{self.name} is not stable under {self.group.labels[g]}") from None

    @cached_property
    def action(self) -> np.ndarray:
        return np.stack([self.action_matrix(g) for g in range(self.group.order)])

    def gmodule(self, modulus: int | None = None) -> GModule:
        mod = GModule(self.name, self.group, self.modulus, self.action)
        return mod if modulus is None else mod.reduce(modulus)

    def right_map(self, target: FreeModuleBasis, r: RingElement) -> np.ndarray:
        """Matrix of x -> x * r from this module to ``target``."""
        exact = self.exact and r.modulus == 0
        images = self.elements @ r.right_matrix()
        try:
            return target.coords(images, exact=exact)
        except NoSolution:
            raise ConstructionFailure(f"right multiplication does not map {self.name} into {target.name}") from None

    def include_into(self, target: FreeModuleBasis) -> np.ndarray:
        try:
            return target.coords(self.elements, exact=self.exact)
        except NoSolution:
            raise ConstructionFailure(f"{self.name} is not contained in {target.name}") from None


def full_ring(G: MetacyclicGroup, m: int) -> FreeModuleBasis:
    return FreeModuleBasis("fullring", G, m, np.eye(G.order, dtype=np.int64))
