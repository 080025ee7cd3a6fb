"""Element tables, the full subgroup lattice, and sections H/N inside it.

Every structural question about a group of desk-scale order is answered from
one enumerated lattice.  A subgroup of a section ``H/N`` is ``K/N`` for a
lattice member ``N <= K <= H``, and ``K/N`` is normal in ``H/N`` exactly when
``K`` is normal in ``H``.  So quotients and subgroups of any corpus group are
handled without building new permutation representations.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .perm import Permutation, PermGroup

LATTICE_BOUND = 1000
SUBGROUP_BOUND = 6000


class LatticeBoundError(RuntimeError):
    pass


def _key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


class GroupTable:
    """Cayley table of a permutation group; element 0 is the identity."""

    def __init__(self, G: PermGroup, bound: int = LATTICE_BOUND):
        n = G.order()
        if n > bound:
            raise LatticeBoundError(f"group order {n} exceeds lattice bound {bound}")
        self.group = G
        elems = list(G.chain.elements())
        self.n = n
        self.E = np.array(elems, dtype=np.int64).reshape(n, G.degree)
        base = G.chain.base
        if not base:
            self.mul = np.zeros((1, 1), dtype=np.int32)
        else:
            keys = self.E[:, base]
            d = G.degree
            if d ** len(base) < 2 ** 62:
                weights = d ** np.arange(len(base), dtype=np.int64)
                codes = keys @ weights
                order = np.argsort(codes)
                sorted_codes = codes[order]
                prod = self.E[:, keys]  # prod[i, j] = base images of e_i o e_j
                pcodes = prod @ weights
                pos = np.searchsorted(sorted_codes, pcodes)
                self.mul = order[pos].astype(np.int32)
            else:
                index = {keys[i].tobytes(): i for i in range(n)}
                prod = self.E[:, keys]
                self.mul = np.array(
                    [[index[prod[i, j].tobytes()] for j in range(n)] for i in range(n)],
                    dtype=np.int32)
        self.inv = np.argmax(self.mul == 0, axis=1).astype(np.int32)
        # conj[g, x] = g x g^-1
        self.conj = self.mul[self.mul, self.inv[:, None]]
        self.mul_list = self.mul.tolist()
        self._comm: np.ndarray | None = None
        self._powers: dict[int, np.ndarray] = {}

    @property
    def comm(self) -> np.ndarray:
        # comm[x, y] = x y x^-1 y^-1
        if self._comm is None:
            xy = self.mul
            xiyi = self.mul[self.inv[:, None], self.inv[None, :]]
            self._comm = self.mul[xy, xiyi]
        return self._comm

    def powers(self, g: int) -> np.ndarray:
        p = self._powers.get(g)
        if p is None:
            seq = [0]
            x = g
            while x != 0:
                seq.append(x)
                x = int(self.mul[x, g])
            p = np.array(seq, dtype=np.int64)
            self._powers[g] = p
        return p

    def element_order(self, g: int) -> int:
        return len(self.powers(g))

    def index_of(self, p: Permutation) -> int:
        row = np.array(p.images, dtype=np.int64)
        hits = np.flatnonzero((self.E == row).all(axis=1))
        if len(hits) == 0:
            raise ValueError(f"{p} is not an element of the group")
        return int(hits[0])

    def permutation(self, i: int) -> Permutation:
        return Permutation._trusted(tuple(int(x) for x in self.E[i]))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def _prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while n % p:
        p += 1
    while n % p == 0:
        n //= p
    return n == 1


class Lattice:
    """All subgroups of a group, sorted by (order, element-index key).

    Attributes
    ----------
    masks : (m, n) bool array, row k is the element set of subgroup k
    orders : (m,) int array
    sub : (m, m) bool, ``sub[i, j]`` iff subgroup i <= subgroup j
    normal_in : (m, m) bool, ``normal_in[i, j]`` iff i <= j and i normal in j
    normalizers : (m, n) bool, element sets of the normalizers in G
    """

    def __init__(self, G: PermGroup, bound: int = LATTICE_BOUND):
        self.group = G
        self.table = T = GroupTable(G, bound)
        n = T.n
        masks, gens = self._enumerate()
        keys = [tuple(np.flatnonzero(mk)) for mk in masks]
        perm = sorted(range(len(masks)), key=lambda i: (len(keys[i]), keys[i]))
        self.masks = np.array([masks[i] for i in perm], dtype=bool).reshape(len(masks), n)
        self.gens = [gens[i] for i in perm]
        self.m = m = len(perm)
        self.orders = self.masks.sum(axis=1).astype(np.int64)
        self._ids = {_key(self.masks[k]): k for k in range(m)}
        self.trivial = 0
        self.whole = m - 1
        Sf = self.masks.astype(np.float32)
        self.sub = (Sf @ Sf.T) == self.orders[:, None]
        norm = np.empty((m, n), dtype=bool)
        for k in range(m):
            idx = np.flatnonzero(self.masks[k])
            norm[k] = self.masks[k][T.conj[:, idx]].all(axis=1)
        self.normalizers = norm
        self.normal_in = ((norm.astype(np.float32) @ Sf.T) == self.orders[None, :]) & self.sub
        self._memo: dict = {}

    def _enumerate(self) -> tuple[list[np.ndarray], list[list[int]]]:
        """Cyclic extension: join every found subgroup with every cyclic
        subgroup of prime-power order until nothing new appears."""
        T = self.table
        n = T.n
        reps = []
        seen = set()
        for g in range(1, n):
            if not _prime_power(T.element_order(g)):
                continue
            cyc = np.zeros(n, dtype=bool)
            cyc[T.powers(g)] = True
            k = _key(cyc)
            if k not in seen:
                seen.add(k)
                reps.append(g)
        triv = np.zeros(n, dtype=bool)
        triv[0] = True
        masks = [triv]
        gens: list[list[int]] = [[]]
        found = {_key(triv): 0}
        i = 0
        while i < len(masks):
            H = masks[i]
            hidx = np.flatnonzero(H)
            h = len(hidx)
            # z in some <H, z'> of prime index over H gives that same join
            covered = H.copy()
            for z in reps:
                if covered[z]:
                    continue
                if H[T.conj[z, hidx]].all():
                    J = np.zeros(n, dtype=bool)
                    J[T.mul[hidx][:, T.powers(z)].ravel()] = True
                else:
                    J = self._closure(H, hidx, gens[i] + [z])
                k = _key(J)
                if _is_prime(int(J.sum()) // h):
                    covered |= J
                if k not in found:
                    if len(masks) >= SUBGROUP_BOUND:
                        raise LatticeBoundError(
                            f"more than {SUBGROUP_BOUND} subgroups")
                    found[k] = len(masks)
                    masks.append(J)
                    gens.append(gens[i] + [z])
            i += 1
        return masks, gens

    def _closure(self, H: np.ndarray, hidx: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        # grow <H, gens> one right coset H*x at a time
        T = self.table
        mul = T.mul_list
        J = H.copy()
        reps = [0]
        for r in reps:
            row = mul[r]
            for s in gens:
                x = row[s]
                if not J[x]:
                    J[T.mul[hidx, x]] = True
                    reps.append(x)
        return J

    # lookups

    def id_of_mask(self, mask: np.ndarray) -> int:
        k = self._ids.get(_key(np.asarray(mask, dtype=bool)))
        if k is None:
            raise ValueError("element set is not a subgroup")
        return k

    def generated(self, elements: Iterable[int]) -> int:
        """Smallest subgroup containing the given element indices."""
        idx = np.asarray(list(elements), dtype=np.int64)
        if len(idx) == 0:
            return self.trivial
        return int(np.argmax(self.masks[:, idx].all(axis=1)))

    def join(self, ids: Iterable[int]) -> int:
        ids = list(ids)
        if not ids:
            return self.trivial
        return int(np.argmax(self.sub[ids].all(axis=0)))

    def meet(self, ids: Iterable[int]) -> int:
        ids = list(ids)
        if not ids:
            return self.whole
        cand = np.flatnonzero(self.sub[:, ids].all(axis=1))
        return int(cand[-1])

    def id_of_group(self, H: PermGroup) -> int:
        T = self.table
        return self.generated(T.index_of(g) for g in H.generators)

    def subgroup(self, k: int, name: str | None = None) -> PermGroup:
        T = self.table
        gens = [T.permutation(g) for g in self.gens[k]]
        return PermGroup(gens, degree=self.group.degree, name=name)

    def section(self, top: int | None = None, bottom: int | None = None) -> Section:
        return Section(self, self.whole if top is None else top,
                       self.trivial if bottom is None else bottom)


def lattice(G: PermGroup, bound: int = LATTICE_BOUND) -> Lattice:
    """Memoized lattice of ``G``."""
    lat = G._cache.get("lattice")
    if lat is None:
        lat = Lattice(G, bound)
        G._cache["lattice"] = lat
    return lat


class Section:
    """The group ``top/bottom`` for lattice members ``bottom`` normal in ``top``.

    Subgroups of the section are reported as lattice ids ``K`` with
    ``bottom <= K <= top``; they stand for ``K/bottom``.
    """

    __slots__ = ("lat", "top", "bottom")

    def __init__(self, lat: Lattice, top: int, bottom: int):
        if not lat.normal_in[bottom, top]:
            raise ValueError("bottom is not a normal subgroup of top")
        self.lat = lat
        self.top = top
        self.bottom = bottom

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Section) and other.lat is self.lat
                and other.top == self.top and other.bottom == self.bottom)

    def __hash__(self) -> int:
        return hash((id(self.lat), self.top, self.bottom))

    def __repr__(self) -> str:
        return f"<Section {self.top}/{self.bottom} order={self.order}>"

    def memo(self, key, compute):
        k = (key, self.top, self.bottom)
        d = self.lat._memo
        if k not in d:
            d[k] = compute()
        return d[k]

    @property
    def order(self) -> int:
        o = self.lat.orders
        return int(o[self.top] // o[self.bottom])

    def rel_order(self, k: int) -> int:
        """Order of ``k/bottom``."""
        return int(self.lat.orders[k] // self.lat.orders[self.bottom])

    def is_trivial(self) -> bool:
        return self.top == self.bottom

    def subgroups(self) -> np.ndarray:
        lat = self.lat
        return np.flatnonzero(lat.sub[self.bottom] & lat.sub[:, self.top])

    def normal_subgroups(self) -> np.ndarray:
        def compute():
            lat = self.lat
            return np.flatnonzero(lat.sub[self.bottom] & lat.normal_in[:, self.top])
        return self.memo("normals", compute)

    def is_normal(self, k: int) -> bool:
        return bool(self.lat.normal_in[k, self.top])

    def sub(self, k: int) -> Section:
        if not (self.lat.sub[self.bottom, k] and self.lat.sub[k, self.top]):
            raise ValueError("not a subgroup of this section")
        return Section(self.lat, k, self.bottom)

    def quotient(self, k: int) -> Section:
        if not (self.lat.sub[self.bottom, k] and self.is_normal(k)):
            raise ValueError("not a normal subgroup of this section")
        return Section(self.lat, self.top, k)

    def whole(self) -> Section:
        return self

    def join(self, ids: Iterable[int]) -> int:
        return self.lat.join([self.bottom, *ids])

    def meet(self, ids: Iterable[int]) -> int:
        return self.lat.meet([self.top, *ids])

    def minimal_normal_subgroups(self) -> list[int]:
        lat = self.lat
        normals = [int(k) for k in self.normal_subgroups() if k != self.bottom]
        return [k for k in normals
                if not any(j != k and lat.sub[j, k] for j in normals)]

    def chief_series(self) -> list[int]:
        """Greedy chief series: each step takes the first (smallest) normal
        subgroup strictly above the current one."""
        def compute():
            lat = self.lat
            normals = self.normal_subgroups()
            series = [self.bottom]
            cur = self.bottom
            while cur != self.top:
                for k in normals:
                    if k != cur and lat.sub[cur, k]:
                        cur = int(k)
                        break
                series.append(cur)
            return series
        return self.memo("chief", compute)

    def chief_factor_orders(self) -> list[int]:
        s = self.chief_series()
        o = self.lat.orders
        return [int(o[b] // o[a]) for a, b in zip(s, s[1:])]

    def commutator_subgroup(self) -> int:
        """Lattice id of ``[top, top] * bottom``."""
        def compute():
            lat = self.lat
            idx = np.flatnonzero(lat.masks[self.top])
            comms = np.unique(lat.table.comm[np.ix_(idx, idx)])
            d = lat.generated(comms)
            return lat.join([d, self.bottom])
        return self.memo("derived", compute)

    def derived_series(self) -> list[int]:
        series = [self.top]
        cur = self
        while True:
            d = cur.commutator_subgroup()
            if d == cur.top:
                return series
            series.append(d)
            cur = Section(self.lat, d, self.bottom)

    def maximal_subgroups(self) -> list[int]:
        lat = self.lat
        subs = [int(k) for k in self.subgroups() if k != self.top]
        return [k for k in subs if not any(j != k and lat.sub[k, j] for j in subs)]

    def frattini(self) -> int:
        maxes = self.maximal_subgroups()
        if not maxes:
            return self.top
        return self.lat.meet(maxes)

    def centralizer(self, k: int) -> int:
        """Lattice id of ``C_top(k)``; only defined for sections with trivial bottom."""
        if self.bottom != self.lat.trivial:
            raise NotImplementedError("centralizers are computed in subgroups, not quotients")
        lat = self.lat
        T = lat.table
        g = np.asarray(lat.gens[k], dtype=np.int64)
        if len(g) == 0:
            return self.top
        mask = (T.mul[:, g] == T.mul[g, :].T).all(axis=1) & lat.masks[self.top]
        return lat.id_of_mask(mask)

    def center(self) -> int:
        return self.centralizer(self.top)

    def normal_closure(self, k: int) -> int:
        lat = self.lat
        cand = np.flatnonzero(lat.sub[k] & lat.normal_in[:, self.top])
        return int(cand[0])

    def is_abelian(self) -> bool:
        return self.commutator_subgroup() == self.bottom

    def group(self) -> PermGroup:
        """A permutation group isomorphic to this section."""
        if self.bottom == self.lat.trivial:
            return self.lat.subgroup(self.top)
        return coset_action(self.lat, self.top, self.bottom)


QUOTIENT_DEGREE_BOUND = 1024


def coset_action(lat: Lattice, top: int, bottom: int,
                 degree_bound: int = QUOTIENT_DEGREE_BOUND) -> PermGroup:
    """Faithful action of ``top/bottom`` on the right cosets of ``bottom`` in ``top``."""
    T = lat.table
    index = int(lat.orders[top] // lat.orders[bottom])
    if index > degree_bound:
        raise LatticeBoundError(f"quotient degree {index} exceeds bound {degree_bound}")
    bidx = np.flatnonzero(lat.masks[bottom])
    coset_of = np.full(T.n, -1, dtype=np.int64)
    reps = []
    for x in np.flatnonzero(lat.masks[top]):
        if coset_of[x] >= 0:
            continue
        coset_of[T.mul[bidx, x]] = len(reps)
        reps.append(int(x))
    gens = []
    for g in lat.gens[top]:
        images = tuple(int(coset_of[T.mul[r, g]]) for r in reps)
        p = Permutation._trusted(images)
        if not p.is_identity():
            gens.append(p)
    return PermGroup(gens, degree=index)
