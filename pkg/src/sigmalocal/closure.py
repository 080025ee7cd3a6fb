"""Witness search for closure under subgroups with pairwise coprime indices,
corpus sweeps, and the preconfigured verification suites.

A class ``F`` is closed at level ``t`` under a partition ``sigma`` when every
group having subgroups ``A_1, ..., A_t`` in ``F`` whose indices pairwise share
no block of ``sigma`` is itself in ``F``.  Index 1 is allowed, so ``G`` may
appear in a witness, any number of times.
"""

from __future__ import annotations

import json
import signal
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import builders as b
from . import formations as fm
from .lattice import LatticeBoundError, Section, lattice
from .perm import EnumerationBoundError, PermGroup, format_cycles, parse_cycles
from .sigma import (Block, BlockSet, SigmaPartition, are_sigma_coprime, format_sigma,
                    is_prime, sigma_of)
from . import sigma_classes as sc
from . import structure as st
from .structure import SubgroupRecord, as_section

DEFAULT_TIMEOUT = 60.0


class GroupTimeout(RuntimeError):
    pass


class CounterexampleRejected(ValueError):
    """A claimed counterexample failed independent re-validation."""


class SuiteError(KeyError):
    pass


@contextmanager
def _time_limit(seconds: float | None):
    usable = (seconds is not None and seconds > 0 and hasattr(signal, "setitimer")
              and threading.current_thread() is threading.main_thread())
    if not usable:
        yield
        return

    def handler(signum, frame):
        raise GroupTimeout(f"exceeded {seconds:g} s")
    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# witness search

def _disjoint_family(sigs: list[frozenset], t: int) -> list[int] | None:
    """Indices of ``t`` pairwise disjoint sets among ``sigs``, searched in list order."""
    chosen: list[int] = []

    def rec(start: int, used: frozenset) -> bool:
        if len(chosen) == t:
            return True
        for i in range(start, len(sigs)):
            if sigs[i] & used:
                continue
            chosen.append(i)
            if rec(i + 1, used | sigs[i]):
                return True
            chosen.pop()
        return False
    return list(chosen) if rec(0, frozenset()) else None


def _witness_ids(S: Section, F: fm.GroupClass, t: int, sigma: SigmaPartition,
                 deadline: float | None = None) -> tuple[int, ...] | None:
    n = S.order
    if F.member(S, sigma):
        return (S.top,) * t
    # G itself is excluded now, so every member has a nonempty block set of
    # its index and these must be pairwise disjoint inside sigma(G)
    if len(sigma_of(n, sigma)) < t:
        return None
    lat = S.lat
    by_sig: dict[frozenset, list[int]] = {}
    for k in sorted((int(k) for k in S.subgroups() if int(k) != S.top),
                    key=lambda k: (-int(lat.orders[k]), k)):
        by_sig.setdefault(sigma_of(n // S.rel_order(k), sigma), []).append(k)
    # a block set with an in-class member makes every superset redundant
    order = sorted(by_sig, key=lambda s: (len(s), sorted(b.sort_key() for b in s)))
    good_sigs: list[frozenset] = []
    rep: list[int] = []
    for s in order:
        if any(g <= s for g in good_sigs):
            continue
        for k in by_sig[s]:
            if deadline is not None and time.monotonic() > deadline:
                raise GroupTimeout("witness search deadline")
            if F.member(S.sub(k), sigma):
                good_sigs.append(s)
                rep.append(k)
                fam = _disjoint_family(good_sigs, t)
                if fam is not None:
                    return tuple(rep[i] for i in fam)
                break
    return None


def find_witness_tuple(G, F: fm.GroupClass, t: int, sigma: SigmaPartition,
                       deadline: float | None = None):
    """Subgroups ``A_1..A_t`` in ``F`` with pairwise sigma-coprime indices, or None.

    For a ``PermGroup`` the result is a tuple of :class:`SubgroupRecord`; for a
    ``Section`` it is a tuple of lattice ids.  If ``G`` is in ``F`` the answer
    is ``(G, ..., G)``.  Otherwise block sets of indices are scanned from
    smallest, subgroups within one block set by descending order, and the
    first complete family is returned.
    """
    if t < 1:
        raise ValueError("t must be positive")
    S = as_section(G)
    ids = _witness_ids(S, F, t, sigma, deadline)
    if ids is None or isinstance(G, Section):
        return ids
    lat = S.lat
    n = G.order()
    return tuple(SubgroupRecord(lat.subgroup(k), n // int(lat.orders[k]),
                                bool(lat.normal_in[k, lat.whole]), k) for k in ids)


def validate_counterexample(G: PermGroup, members: list[PermGroup], F: fm.GroupClass,
                            sigma: SigmaPartition, t: int | None = None) -> None:
    """Re-check a counterexample from scratch; raise CounterexampleRejected if it fails.

    Fresh group objects are built from the generators, so nothing cached by
    the search (lattices, membership memos) is reused.
    """
    if t is not None and len(members) != t:
        raise CounterexampleRejected(f"witness has {len(members)} members, expected {t}")
    G2 = PermGroup(list(G.generators), degree=G.degree)
    n = G2.order()
    idx = []
    for i, A in enumerate(members):
        if A.degree != G2.degree:
            raise CounterexampleRejected(f"member {i + 1} has the wrong degree")
        A2 = PermGroup(list(A.generators), degree=A.degree)
        if not all(G2.contains(g) for g in A2.generators):
            raise CounterexampleRejected(f"member {i + 1} is not a subgroup of the group")
        idx.append(n // A2.order())
        if not F.member(A2, sigma):
            raise CounterexampleRejected(f"member {i + 1} (order {A2.order()}) is not in {F.name}")
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if not are_sigma_coprime(idx[i], idx[j], sigma):
                raise CounterexampleRejected(
                    f"indices {idx[i]} and {idx[j]} are not sigma-coprime")
    if F.member(G2, sigma):
        raise CounterexampleRejected(f"the group is in {F.name}")


@dataclass
class ClosureReport:
    class_name: str
    sigma: str
    t: int
    groups_checked: int = 0
    witnesses: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    elapsed: float = 0.0
    in_class: int = 0
    searched: int = 0
    rejected_claims: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.rejected_claims

    def add_counterexample(self, gid: str, G: PermGroup, members: list[PermGroup],
                           F: fm.GroupClass, sigma: SigmaPartition) -> None:
        """Record a counterexample after re-validating it."""
        validate_counterexample(G, members, F, sigma, self.t)
        n = G.order()
        self.counterexamples.append({
            "group": gid,
            "witness": [{"order": A.order(), "index": n // A.order(),
                         "generators": [format_cycles(g) for g in A.generators]}
                        for A in members],
        })
        self.counterexamples.sort(key=lambda c: c["group"])

    def to_dict(self) -> dict:
        return {
            "class_name": self.class_name,
            "sigma": self.sigma,
            "t": self.t,
            "groups_checked": self.groups_checked,
            "witnesses": {k: self.witnesses[k] for k in sorted(self.witnesses)},
            "counterexamples": self.counterexamples,
            "skipped": self.skipped,
            "elapsed": round(self.elapsed, 3),
            "in_class": self.in_class,
            "searched": self.searched,
            "rejected_claims": self.rejected_claims,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def summary(self) -> str:
        found = sum(1 for w in self.witnesses.values() if w is not None)
        return (f"{self.class_name} t={self.t} sigma={self.sigma}: "
                f"{self.groups_checked} groups, {self.in_class} in class, "
                f"{self.searched} searched outside the class, {found} with a witness, "
                f"{len(self.counterexamples)} counterexamples, {len(self.skipped)} skipped, "
                f"{len(self.rejected_claims)} rejected claims, {self.elapsed:.1f} s")

    def lines(self) -> list[str]:
        """One line per group, then the summary."""
        out = []
        for gid in self.witnesses:
            w = self.witnesses[gid]
            if w is None:
                out.append(f"{gid}: no witness")
            else:
                out.append(f"{gid}: witness " + " ".join(f"{x['order']}[{x['index']}]" for x in w))
        for s in self.skipped:
            out.append(f"{s['group']}: skipped ({s['reason']})")
        for c in self.counterexamples:
            out.append(f"{c['group']}: COUNTEREXAMPLE")
        for r in self.rejected_claims:
            out.append(f"{r['group']}: claimed counterexample rejected ({r['reason']})")
        out.append(self.summary())
        return out


def _groups(corpus):
    return fm._groups(corpus)


def claimed_counterexamples(corpus) -> list[tuple[str, PermGroup, list[PermGroup]]]:
    """Records tagged ``claim=counterexample``; each ``witness=`` tag lists one
    member's generators separated by ``;`` (``()`` for the trivial subgroup)."""
    out = []
    records = getattr(corpus, "records", None)
    if not records:
        return out
    gmap = dict(corpus.groups())
    for r in records:
        if "claim=counterexample" not in r.tags:
            continue
        G = gmap[r.id]
        members = []
        for tag in r.tags:
            if tag.startswith("witness="):
                gens = [parse_cycles(x, r.degree) for x in tag[len("witness="):].split(";")
                        if x.strip()]
                members.append(PermGroup(gens, degree=r.degree))
        out.append((r.id, G, members))
    return out


def check_sigma_t_closed(F: fm.GroupClass, sigma: SigmaPartition, t: int, corpus,
                         timeout: float | None = DEFAULT_TIMEOUT,
                         honor_claims: bool = True) -> ClosureReport:
    """Sweep the corpus for groups outside ``F`` that have a witness tuple.

    Groups whose lattice exceeds the bounds or whose search runs past
    ``timeout`` seconds are listed under ``skipped``.  Records carrying a
    counterexample claim are re-validated; failures go to ``rejected_claims``.
    """
    rep = ClosureReport(F.name, format_sigma(sigma), t)
    start = time.monotonic()
    for gid, G in _groups(corpus):
        rep.groups_checked += 1
        try:
            with _time_limit(timeout):
                deadline = None if timeout is None else time.monotonic() + timeout
                S = as_section(G)
                w = _witness_ids(S, F, t, sigma, deadline)
                member = F.member(S, sigma)
        except (GroupTimeout, LatticeBoundError, EnumerationBoundError) as e:
            rep.skipped.append({"group": gid, "reason": f"{type(e).__name__}: {e}"})
            continue
        lat = S.lat
        n = S.order
        if member:
            rep.in_class += 1
        elif len(sigma_of(n, sigma)) >= t:
            rep.searched += 1
        if w is None:
            rep.witnesses[gid] = None
            continue
        rep.witnesses[gid] = [{"order": int(lat.orders[k]), "index": n // int(lat.orders[k])}
                              for k in w]
        if not member:
            rep.add_counterexample(gid, G, [lat.subgroup(k) for k in w], F, sigma)
    if honor_claims:
        for gid, G, members in claimed_counterexamples(corpus):
            try:
                rep.add_counterexample(gid, G, members, F, sigma)
            except CounterexampleRejected as e:
                rep.rejected_claims.append({"group": gid, "reason": str(e)})
    rep.elapsed = time.monotonic() - start
    return rep


# suites

def _pi_choices(sigma: SigmaPartition) -> list[BlockSet]:
    """At least three block sets per partition."""
    if sigma.mode == "canonical_sigma1":
        one = lambda *ps: BlockSet(frozenset(Block(frozenset([p])) for p in ps))
        return [one(2), one(3), one(5), one(2, 3)]
    blocks = sigma.blocks()
    out = [BlockSet(frozenset([bl])) for bl in blocks]
    if len(blocks) >= 3:
        out.append(BlockSet(frozenset(blocks[:2])))
    if len(out) < 3:
        out.append(BlockSet(frozenset()))
    return out


def _pi_primes(sigma: SigmaPartition) -> list[int]:
    if sigma.mode == "canonical_sigma1" or not sigma.explicit_blocks or \
            any(len(bl) != 1 for bl in sigma.explicit_blocks):
        raise SuiteError("this suite needs a partition of the form pi:p1,...,pn")
    return sorted(next(iter(bl)) for bl in sigma.explicit_blocks)


def _metanilpotent_local_classes() -> list[fm.GroupClass]:
    N, A, I = fm.builtin("N"), fm.builtin("A"), fm.builtin("I")
    two = Block(frozenset([2]))
    return [fm.lf_class(fm.constant(N)), fm.lf_class(fm.constant(A)),
            fm.lf_class(fm.constant(I)),
            fm.lf_class(fm.FormationSigmaFunction({two: N}, A))]


def _suite_classes(suite: str, sigma: SigmaPartition) -> list[tuple[fm.GroupClass, int]]:
    B = fm.builtin
    if suite == "meta-sigma-nilpotent-local":
        return [(fm.lf_class(fm.constant(B("Nsigma"))), 4)]
    if suite == "sigma-soluble-pi-closed":
        return [(B("sigma_soluble_pi_closed", Pi=P), 3) for P in _pi_choices(sigma)]
    if suite == "sigma-nilpotent-formations":
        return [(B("Nsigma"), 3), (fm.intersection(B("A"), B("Nsigma")), 3)]
    if suite == "supersoluble":
        return [(B("U"), 4)]
    if suite == "metanilpotent":
        return [(B("N2"), 4)]
    if suite == "derived-nilpotent":
        return [(B("DerivedN"), 4)]
    if suite == "metanilpotent-local":
        return [(c, 4) for c in _metanilpotent_local_classes()]
    if suite == "meta-pi-special":
        return [(B("meta_pi_special", primes=_pi_primes(sigma)), 4)]
    if suite == "derived-pi-special":
        return [(B("derived_pi_special", primes=_pi_primes(sigma)), 4)]
    if suite == "sigma-soluble-and-nilpotent":
        return [(B("Ssigma"), 3), (B("Nsigma"), 3)]
    if suite == "soluble":
        return [(B("S"), 3)]
    if suite == "nilpotent":
        return [(B("N"), 3)]
    if suite == "abelian":
        return [(B("A"), 3)]
    if suite == "pi-soluble":
        return [(B("pi_soluble", primes=_pi_primes(sigma)), 3)]
    if suite == "pi-special":
        return [(B("pi_special", primes=_pi_primes(sigma)), 3)]
    if suite == "soluble-pi-extension":
        return [(c, t) for c, t in _lemma32_classes(sigma)]
    if suite == "pi-closed-extension":
        return [(c, 3) for c in _lemma33_classes(sigma)]
    raise SuiteError(f"unknown suite {suite!r}")


SUITES = (
    "meta-sigma-nilpotent-local", "sigma-soluble-pi-closed", "sigma-nilpotent-formations",
    "supersoluble", "metanilpotent", "derived-nilpotent", "metanilpotent-local",
    "meta-pi-special", "derived-pi-special", "sigma-soluble-and-nilpotent",
    "soluble", "nilpotent", "abelian", "pi-soluble", "pi-special",
    "soluble-pi-extension", "pi-closed-extension",
)

PI_SUITES = ("meta-pi-special", "derived-pi-special", "pi-soluble", "pi-special")

SUITE_DESCRIPTIONS = {
    "meta-sigma-nilpotent-local": "sigma-local formation LF(f = Nsigma) of meta-sigma-nilpotent groups, t=4",
    "sigma-soluble-pi-closed": "sigma-soluble Pi-closed groups for several Pi, t=3",
    "sigma-nilpotent-formations": "formations of sigma-nilpotent groups (Nsigma, A & Nsigma), t=3",
    "supersoluble": "supersoluble groups, t=4",
    "metanilpotent": "metanilpotent groups, t=4",
    "derived-nilpotent": "groups with nilpotent derived subgroup, t=4",
    "metanilpotent-local": "local formations of metanilpotent groups, t=4",
    "meta-pi-special": "meta-pi-special groups, t=4 (sigma = pi:...)",
    "derived-pi-special": "groups with pi-special derived subgroup, t=4 (sigma = pi:...)",
    "sigma-soluble-and-nilpotent": "sigma-soluble groups and sigma-nilpotent groups, t=3",
    "soluble": "soluble groups, t=3",
    "nilpotent": "nilpotent groups, t=3",
    "abelian": "abelian groups, t=3",
    "pi-soluble": "pi-soluble groups, t=3 (sigma = pi:...)",
    "pi-special": "pi-special groups, t=3 (sigma = pi:...)",
    "soluble-pi-extension": "S_Pi X for X closed at level t, checked at level t+1",
    "pi-closed-extension": "S_Pi M for M a formation of sigma-soluble Pi-closed groups, t=3",
}


def verify_theorem(suite_id: str, sigma: SigmaPartition, corpus, t: int | None = None,
                   timeout: float | None = DEFAULT_TIMEOUT) -> list[ClosureReport]:
    """Run a preconfigured suite; one report per class in the suite.

    ``t`` overrides the suite's level for every class.
    """
    classes = _suite_classes(suite_id, sigma)
    return [check_sigma_t_closed(F, sigma, t or tt, corpus, timeout) for F, tt in classes]


# non-locality witness

@dataclass
class NonLocalWitness:
    sigma: str
    block: Block
    q: int
    p: int
    group: PermGroup
    base: PermGroup
    order: int
    base_order: int
    centralizer_is_base: bool
    O_block_is_group: bool
    sigma_of_group: frozenset
    supersoluble: bool

    def assertions(self) -> dict[str, bool]:
        return {
            "centralizer of base = base": self.centralizer_is_base,
            "O_{b',b}(G) = G": self.O_block_is_group,
            "sigma(G) = {b}": self.sigma_of_group == frozenset([self.block]),
            "G not supersoluble": not self.supersoluble,
        }

    def lines(self) -> list[str]:
        out = [f"sigma: {self.sigma}", f"block: {self.block}",
               f"G = C{self.q} wr C{self.p}, order {self.order}, base order {self.base_order}"]
        out += [f"{k}: {'holds' if v else 'FAILS'}" for k, v in self.assertions().items()]
        out.append(f"supersoluble: {str(self.supersoluble).lower()}")
        return out


WITNESS_ORDER_BOUND = 500


def non_sigma_local_witness(sigma: SigmaPartition) -> NonLocalWitness:
    """``C_q wr C_p`` for primes ``q < p`` sharing a block: a group showing that
    supersolubility cannot be sigma-local for this partition."""
    if sigma.mode == "canonical_sigma1":
        raise ValueError("the finest partition has no block with two primes")
    pair = None
    for bl in sigma.explicit_blocks:
        if len(bl) >= 2:
            q, p = sorted(bl)[:2]
            if pair is None or q ** p * p < pair[0] ** pair[1] * pair[1]:
                pair = (q, p)
    if pair is None:
        listed = set().union(*sigma.explicit_blocks) if sigma.explicit_blocks else set()
        rest = [r for r in range(2, 100) if r not in listed and is_prime(r)][:2]
        pair = (rest[0], rest[1])
    q, p = pair
    if q ** p * p > WITNESS_ORDER_BOUND:
        raise ValueError(f"smallest witness C{q} wr C{p} has order {q ** p * p}, "
                         f"above the bound {WITNESS_ORDER_BOUND}")
    block = sigma.block_of(q)
    W = b.regular_wreath(b.cyclic(q), b.cyclic(p))
    G, K = W.group, W.base
    lat = lattice(G)
    k = lat.id_of_group(K)
    S = lat.section()
    return NonLocalWitness(
        sigma=format_sigma(sigma), block=block, q=q, p=p, group=G, base=K,
        order=G.order(), base_order=K.order(),
        centralizer_is_base=S.centralizer(k) == k,
        O_block_is_group=sc._O_prime_block_id(S, block, sigma) == S.top,
        sigma_of_group=sigma_of(G.order(), sigma),
        supersoluble=st.is_supersoluble(G),
    )


# the two extension lemmas as corpus sweeps

def _lemma32_classes(sigma: SigmaPartition) -> list[tuple[fm.GroupClass, int]]:
    B = fm.builtin
    out = []
    for P in _pi_choices(sigma)[:2]:
        SP = B("S_Pi", Pi=P)
        out.append((fm.class_product(SP, B("Nsigma")), 4))
        out.append((fm.class_product(SP, fm.intersection(B("A"), B("Nsigma"))), 4))
        out.append((fm.class_product(SP, B("I")), 3))
    return out


def _lemma33_classes(sigma: SigmaPartition) -> list[fm.GroupClass]:
    B = fm.builtin
    out = []
    for P in _pi_choices(sigma)[:2]:
        SP = B("S_Pi", Pi=P)
        out.append(fm.class_product(SP, B("Nsigma")))
        out.append(fm.class_product(SP, B("sigma_soluble_pi_closed", Pi=P)))
    return out


def lemma32_check(corpus, sigma: SigmaPartition, Pi: BlockSet, t: int,
                  X: fm.GroupClass | None = None, timeout=DEFAULT_TIMEOUT) -> ClosureReport:
    """``S_Pi X`` at level ``t + 1`` for a class ``X`` closed at level ``t``
    (default ``Nsigma``)."""
    X = X if X is not None else fm.builtin("Nsigma")
    return check_sigma_t_closed(fm.class_product(fm.builtin("S_Pi", Pi=Pi), X), sigma, t + 1,
                                corpus, timeout)


def lemma33_check(corpus, sigma: SigmaPartition, Pi: BlockSet, t: int = 3,
                  M: fm.GroupClass | None = None, timeout=DEFAULT_TIMEOUT) -> ClosureReport:
    """``S_Pi M`` at level 3 for a formation ``M`` of sigma-soluble Pi-closed
    groups (default: all of them)."""
    M = M if M is not None else fm.builtin("sigma_soluble_pi_closed", Pi=Pi)
    return check_sigma_t_closed(fm.class_product(fm.builtin("S_Pi", Pi=Pi), M), sigma, t,
                                corpus, timeout)
