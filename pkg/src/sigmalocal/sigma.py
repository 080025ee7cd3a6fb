"""Partitions of the primes into blocks, and the block arithmetic of integers.

A partition is either the finest one (every prime its own block) or a finite
list of explicit blocks plus one residual block holding every unlisted prime.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n <= 0:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def pi_of(n: int) -> frozenset[int]:
    """Prime divisors of ``n``."""
    if n == 0:
        raise ValueError("pi_of(0) is undefined")
    return frozenset(p for p, _ in factorize(abs(n)))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


@dataclass(frozen=True)
class Block:
    """One block of a partition.  The residual block has ``residual=True`` and
    no listed primes."""

    primes: frozenset[int] = frozenset()
    residual: bool = False

    def __str__(self) -> str:
        if self.residual:
            return "rest"
        return "{" + ",".join(str(p) for p in sorted(self.primes)) + "}"

    def __repr__(self) -> str:
        return f"Block({self})"

    def sort_key(self) -> tuple:
        return (1, ()) if self.residual else (0, tuple(sorted(self.primes)))


RESIDUAL = Block(frozenset(), True)


@dataclass(frozen=True)
class SigmaPartition:
    """``mode`` is ``"canonical_sigma1"`` or ``"finite_plus_residual"``."""

    explicit_blocks: tuple[frozenset[int], ...] = ()
    mode: str = "finite_plus_residual"
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.mode not in ("canonical_sigma1", "finite_plus_residual"):
            raise ValueError(f"unknown partition mode {self.mode!r}")
        if self.mode == "canonical_sigma1" and self.explicit_blocks:
            raise ValueError("the finest partition lists no blocks")
        # block order is irrelevant: keep a canonical one so equality is structural
        object.__setattr__(self, "explicit_blocks",
                           tuple(sorted((frozenset(b) for b in self.explicit_blocks),
                                        key=lambda b: sorted(b))))
        seen: set[int] = set()
        for b in self.explicit_blocks:
            if not b:
                raise ValueError("empty block")
            for p in b:
                if not is_prime(p):
                    raise ValueError(f"{p} is not prime")
                if p in seen:
                    raise ValueError(f"prime {p} appears in two blocks")
                seen.add(p)

    def block_of(self, p: int) -> Block:
        if self.mode == "canonical_sigma1":
            return Block(frozenset((p,)))
        for b in self.explicit_blocks:
            if p in b:
                return Block(b)
        return RESIDUAL

    def blocks(self) -> list[Block]:
        """The listed blocks followed by the residual one (finest mode: empty)."""
        if self.mode == "canonical_sigma1":
            return []
        return [Block(b) for b in self.explicit_blocks] + [RESIDUAL]

    def __str__(self) -> str:
        if self.label:
            return self.label
        return format_sigma(self)


def sigma1() -> SigmaPartition:
    return SigmaPartition(mode="canonical_sigma1", label="sigma1")


def sigma_1pi(primes: Iterable[int]) -> SigmaPartition:
    """Singletons for the given primes, everything else lumped together."""
    ps = sorted(set(primes))
    return SigmaPartition(tuple(frozenset((p,)) for p in ps),
                          label="pi:" + ",".join(map(str, ps)))


def from_blocks(blocks: Iterable[Iterable[int]]) -> SigmaPartition:
    bs = tuple(frozenset(b) for b in blocks)
    return SigmaPartition(bs)


def single_block() -> SigmaPartition:
    """The partition with one block containing every prime."""
    return SigmaPartition((), label="blocks:|rest")


def block_of(sigma: SigmaPartition, p: int) -> Block:
    return sigma.block_of(p)


@dataclass(frozen=True)
class BlockSet:
    """A set of blocks, or (``complement=True``) every block except those listed."""

    blocks: frozenset[Block] = frozenset()
    complement: bool = False

    def __contains__(self, b: Block) -> bool:
        return (b in self.blocks) != self.complement

    def prime(self) -> BlockSet:
        """The complementary set of blocks."""
        return BlockSet(self.blocks, not self.complement)

    def __str__(self) -> str:
        inner = ",".join(str(b) for b in sorted(self.blocks, key=Block.sort_key))
        return ("~" if self.complement else "") + "{" + inner + "}"


def blockset(*blocks: Block | Iterable[int]) -> BlockSet:
    out = []
    for b in blocks:
        out.append(b if isinstance(b, Block) else Block(frozenset(b)))
    return BlockSet(frozenset(out))


def sigma_of(n: int, sigma: SigmaPartition) -> frozenset[Block]:
    """Blocks meeting the prime divisors of ``n``."""
    return frozenset(sigma.block_of(p) for p in pi_of(n))


def are_sigma_coprime(n: int, m: int, sigma: SigmaPartition) -> bool:
    return not (sigma_of(n, sigma) & sigma_of(m, sigma))


def is_pi_number(n: int, Pi: BlockSet, sigma: SigmaPartition) -> bool:
    return all(b in Pi for b in sigma_of(n, sigma))


def part_of(n: int, Pi: BlockSet, sigma: SigmaPartition) -> int:
    """Largest divisor of ``n`` all of whose prime divisors lie in blocks of ``Pi``."""
    d = 1
    for p, e in factorize(n):
        if sigma.block_of(p) in Pi:
            d *= p ** e
    return d


class SigmaSyntaxError(ValueError):
    pass


_BLOCKS_RE = re.compile(r"^blocks:((?:\[[0-9,\s]*\])*)\s*(\|\s*rest)?$")


def parse_sigma(text: str) -> SigmaPartition:
    """Parse ``sigma1``, ``pi:2,3`` or ``blocks:[2,3][5]|rest``."""
    t = text.strip()
    if t == "sigma1":
        return sigma1()
    if t.startswith("pi:"):
        try:
            ps = [int(x) for x in t[3:].split(",") if x.strip()]
        except ValueError:
            raise SigmaSyntaxError(f"bad prime list in {text!r}") from None
        if not ps:
            raise SigmaSyntaxError(f"empty prime list in {text!r}")
        try:
            s = sigma_1pi(ps)
        except ValueError as e:
            raise SigmaSyntaxError(str(e)) from None
        return s
    m = _BLOCKS_RE.match(t)
    if m:
        blocks = []
        for body in re.findall(r"\[([^\]]*)\]", m.group(1)):
            try:
                blocks.append([int(x) for x in body.split(",") if x.strip()])
            except ValueError:
                raise SigmaSyntaxError(f"bad block in {text!r}") from None
        try:
            s = from_blocks(blocks)
        except ValueError as e:
            raise SigmaSyntaxError(str(e)) from None
        return s
    raise SigmaSyntaxError(f"unparsable partition {text!r}")


def format_sigma(sigma: SigmaPartition) -> str:
    if sigma.mode == "canonical_sigma1":
        return "sigma1"
    if sigma.explicit_blocks and all(len(b) == 1 for b in sigma.explicit_blocks):
        return "pi:" + ",".join(str(next(iter(b))) for b in
                                sorted(sigma.explicit_blocks, key=min))
    return "blocks:" + "".join("[" + ",".join(map(str, sorted(b))) + "]"
                               for b in sigma.explicit_blocks) + "|rest"
