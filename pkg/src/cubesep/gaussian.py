"""The Gaussian cube V_n = {0,+1,-1,+i,-i}**n and its free-set machinery.

Coordinates are stored as two ternary mask pairs (real part, imaginary
part) with the constraint that no coordinate has both parts nonzero.
Multiplication by i permutes the masks, so closing a set under i and
taking differences are pure mask operations.

Serialization uses one character per coordinate: '+', '-' for the real
units, 'i', 'j' for +i and -i, '0' for zero.  Deterministic orders follow
the byte order of these strings.

An i-closed set containing the basis always has a difference-free subset
of exactly 2n+2 members.  The finder realifies the set (interleaving real
and imaginary parts), runs the ternary chain to get 2n+1 members, then
finishes with an exact seeded search; an input defeating the exact search
would be a research-grade find and is raised loudly, never swallowed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import mis
from .config import Config
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    IndexRangeError,
    PreconditionError,
    ResearchFlagError,
    SearchDefectError,
)
from .freesets import (
    COMPLEX_DIFFERENCE,
    EXHAUSTIVE,
    THEOREM_BACKED,
    WITNESS,
    ArrowCertificate,
    ValueCertificate,
    find_difference_free,
    witness_difference,
)
from .ternary import Key, SymmetricCubeSet, TernaryVector

GKey = tuple[int, int, int, int]  # (re_pos, re_neg, im_pos, im_neg)

_DEFAULT = Config()

_GDIGITS = {"+": (1, 0, 0, 0), "-": (0, 1, 0, 0), "0": (0, 0, 0, 0),
            "i": (0, 0, 1, 0), "j": (0, 0, 0, 1)}
# serialization byte order: '+' < '-' < '0' < 'i' < 'j'
_GORDER = {"+": 0, "-": 1, "0": 2, "i": 3, "j": 4}


# ---------------------------------------------------------------------------
# key-level helpers

def g_neg(key: GKey) -> GKey:
    rp, rn, ip, in_ = key
    return (rn, rp, in_, ip)


def g_i_mul(key: GKey) -> GKey:
    # (a + bi) * i = -b + ai
    rp, rn, ip, in_ = key
    return (in_, ip, rp, rn)


def g_diff(a: GKey, b: GKey) -> Optional[GKey]:
    """a - b when every coordinate stays in {0,+1,-1,+i,-i}, else None."""
    arp, arn, aip, ain = a
    brp, brn, bip, bin_ = b
    if (arp & brn) or (arn & brp) or (aip & bin_) or (ain & bip):
        return None  # a real or imaginary part hits +-2
    ore = arp | arn
    bre = brp | brn
    oim = aip | ain
    bim = bip | bin_
    rp = (arp & ~bre) | (brn & ~ore)
    rn = (arn & ~bre) | (brp & ~ore)
    ip = (aip & ~bim) | (bin_ & ~oim)
    in_ = (ain & ~bim) | (bip & ~oim)
    if (rp | rn) & (ip | in_):
        return None  # coordinate with both parts nonzero, e.g. 1 - i
    return (rp, rn, ip, in_)


def g_key_string(key: GKey, dim: int) -> str:
    rp, rn, ip, in_ = key
    out = []
    for k in range(dim):
        if (rp >> k) & 1:
            out.append("+")
        elif (rn >> k) & 1:
            out.append("-")
        elif (ip >> k) & 1:
            out.append("i")
        elif (in_ >> k) & 1:
            out.append("j")
        else:
            out.append("0")
    return "".join(out)


def g_key_from_string(text: str) -> GKey:
    rp = rn = ip = in_ = 0
    for k, ch in enumerate(text):
        try:
            a, b, c, d = _GDIGITS[ch]
        except KeyError:
            raise ValueError(f"invalid Gaussian digit {ch!r} in {text!r}") from None
        rp |= a << k
        rn |= b << k
        ip |= c << k
        in_ |= d << k
    return (rp, rn, ip, in_)


def g_sort_scalar(key: GKey, dim: int) -> int:
    rp, rn, ip, in_ = key
    total = 0
    for k in range(dim):
        if (rp >> k) & 1:
            v = 0
        elif (rn >> k) & 1:
            v = 1
        elif (ip >> k) & 1:
            v = 3
        elif (in_ >> k) & 1:
            v = 4
        else:
            v = 2
        total = total * 5 + v
    return total


def _spread(mask: int) -> int:
    out = 0
    while mask:
        lsb = mask & -mask
        out |= 1 << (2 * (lsb.bit_length() - 1))
        mask ^= lsb
    return out


def _compress_even(mask: int) -> int:
    out = 0
    k = 0
    while mask:
        if mask & 1:
            out |= 1 << k
        mask >>= 2
        k += 1
    return out


def g_embed_key(key: GKey) -> Key:
    """Real/imaginary interleaving into a ternary key of twice the dimension."""
    rp, rn, ip, in_ = key
    return (_spread(rp) | (_spread(ip) << 1), _spread(rn) | (_spread(in_) << 1))


def g_unembed_key(key: Key) -> GKey:
    pos, neg = key
    return (
        _compress_even(pos),
        _compress_even(neg),
        _compress_even(pos >> 1),
        _compress_even(neg >> 1),
    )


# ---------------------------------------------------------------------------
# vectors and sets

@dataclass(frozen=True)
class GaussianVector:
    """A point of V_n; coordinates in {0, +1, -1, +i, -i}."""

    dim: int
    key: GKey

    def __post_init__(self):
        if self.dim < 1:
            raise IndexRangeError("dimension must be positive")
        rp, rn, ip, in_ = self.key
        full = (1 << self.dim) - 1
        if (rp | rn | ip | in_) & ~full:
            raise ValueError("mask bits outside dimension")
        if rp & rn or ip & in_:
            raise ValueError("overlapping sign masks")
        if (rp | rn) & (ip | in_):
            raise ValueError("coordinate with both real and imaginary part")

    @classmethod
    def from_coords(cls, coords: Sequence[complex]) -> "GaussianVector":
        rp = rn = ip = in_ = 0
        for k, c in enumerate(coords):
            c = complex(c)
            if c == 1:
                rp |= 1 << k
            elif c == -1:
                rn |= 1 << k
            elif c == 1j:
                ip |= 1 << k
            elif c == -1j:
                in_ |= 1 << k
            elif c != 0:
                raise ValueError(f"coordinate {c!r} not in {{0,+-1,+-i}}")
        return cls(len(coords), (rp, rn, ip, in_))

    @classmethod
    def from_string(cls, text: str) -> "GaussianVector":
        return cls(len(text), g_key_from_string(text))

    @property
    def coords(self) -> tuple[complex, ...]:
        rp, rn, ip, in_ = self.key
        out = []
        for k in range(self.dim):
            if (rp >> k) & 1:
                out.append(1 + 0j)
            elif (rn >> k) & 1:
                out.append(-1 + 0j)
            elif (ip >> k) & 1:
                out.append(1j)
            elif (in_ >> k) & 1:
                out.append(-1j)
            else:
                out.append(0j)
        return tuple(out)

    def serialize(self) -> str:
        return g_key_string(self.key, self.dim)

    def __str__(self) -> str:
        return self.serialize()

    def __neg__(self) -> "GaussianVector":
        return GaussianVector(self.dim, g_neg(self.key))


def gaussian_basis_vector(dim: int, k: int) -> GaussianVector:
    if not 1 <= k <= dim:
        raise IndexRangeError(f"basis index {k} out of range 1..{dim}")
    return GaussianVector(dim, (1 << (k - 1), 0, 0, 0))


def i_multiply(x: GaussianVector) -> GaussianVector:
    return GaussianVector(x.dim, g_i_mul(x.key))


def embed_real(x: GaussianVector) -> TernaryVector:
    """Interleave real and imaginary parts into a ternary vector of twice
    the dimension; basis vectors map to odd-index basis vectors."""
    return TernaryVector.from_key(g_embed_key(x.key), 2 * x.dim)


class GaussianSet:
    """A finite subset of V_n with verified basis and i-closure flags."""

    __slots__ = ("dim", "keys", "contains_basis", "i_closed", "_sorted")

    def __init__(self, dim: int, keys: Iterable[GKey]):
        if dim < 1:
            raise IndexRangeError("dimension must be positive")
        self.dim = dim
        self.keys = frozenset(keys)
        for key in self.keys:
            GaussianVector(dim, key)  # validates masks
        self.contains_basis = all((1 << k, 0, 0, 0) in self.keys for k in range(dim))
        self.i_closed = all(g_i_mul(k) in self.keys for k in self.keys)
        self._sorted: Optional[list[GKey]] = None

    @classmethod
    def from_vectors(cls, dim: int, vectors: Iterable[GaussianVector]) -> "GaussianSet":
        keys = []
        for v in vectors:
            if v.dim != dim:
                raise DimensionMismatchError("mixed dimensions in set")
            keys.append(v.key)
        return cls(dim, keys)

    @classmethod
    def from_strings(cls, dim: int, members: Iterable[str]) -> "GaussianSet":
        keys = []
        for s in members:
            if len(s) != dim:
                raise DimensionMismatchError(f"member {s!r} has wrong length")
            keys.append(g_key_from_string(s))
        return cls(dim, keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, x: GaussianVector) -> bool:
        return x.dim == self.dim and x.key in self.keys

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaussianSet)
            and self.dim == other.dim
            and self.keys == other.keys
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.keys))

    def sorted_keys(self) -> list[GKey]:
        if self._sorted is None:
            self._sorted = sorted(self.keys, key=lambda k: g_sort_scalar(k, self.dim))
        return self._sorted

    def vectors(self) -> list[GaussianVector]:
        return [GaussianVector(self.dim, k) for k in self.sorted_keys()]

    def member_strings(self) -> list[str]:
        return [g_key_string(k, self.dim) for k in self.sorted_keys()]

    def require_admissible(self) -> None:
        if not self.contains_basis:
            raise PreconditionError("Gaussian set is missing a basis vector (condition (a))")
        if not self.i_closed:
            raise PreconditionError("Gaussian set is not closed under multiplication by i")

    def to_json(self) -> dict:
        return {"dim": self.dim, "members": self.member_strings(), "field": "gaussian"}

    @classmethod
    def from_json(cls, data: dict) -> "GaussianSet":
        return cls.from_strings(int(data["dim"]), data["members"])

    def __repr__(self) -> str:
        return f"GaussianSet(dim={self.dim}, size={len(self.keys)})"


def i_closure(vectors: Iterable[GaussianVector]) -> GaussianSet:
    """Closure under multiplication by i (hence also under negation)."""
    vectors = list(vectors)
    if not vectors:
        raise PreconditionError("i-closure of an empty collection has no dimension")
    dim = vectors[0].dim
    keys = set()
    for v in vectors:
        if v.dim != dim:
            raise DimensionMismatchError("mixed dimensions in closure input")
        k = v.key
        for _ in range(4):
            keys.add(k)
            k = g_i_mul(k)
    return GaussianSet(dim, keys)


def delta_construction(A: SymmetricCubeSet) -> GaussianSet:
    """A together with iA as a Gaussian set; requires 0 not in A so the two
    halves are disjoint and the crossed differences stay outside."""
    A.require_admissible()
    if A.has_key((0, 0)):
        raise PreconditionError("delta construction requires a set without the zero vector")
    keys = set()
    for pos, neg in A.keys:
        keys.add((pos, neg, 0, 0))
        keys.add((0, 0, pos, neg))
    return GaussianSet(A.dim, keys)


def embed_set(A: GaussianSet) -> SymmetricCubeSet:
    return SymmetricCubeSet(2 * A.dim, {g_embed_key(k) for k in A.keys})


# ---------------------------------------------------------------------------
# freeness and the guaranteed-size finder

def gaussian_is_free(B: Iterable[GaussianVector], A: GaussianSet) -> bool:
    keys = []
    for v in B:
        if v.dim != A.dim:
            raise DimensionMismatchError("witness dimension differs from ground set")
        if v.key not in A.keys:
            raise PreconditionError(f"witness element {v.serialize()} not in ground set")
        keys.append(v.key)
    return _gaussian_free_keys(keys, A.keys)


def _gaussian_free_keys(keys: Sequence[GKey], ground: frozenset) -> bool:
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            if a == b:
                continue
            d = g_diff(a, b)
            if d is not None and d in ground:
                return False
            d = g_diff(b, a)
            if d is not None and d in ground:
                return False
    return True


@dataclass
class GaussianFreeCertificate:
    ground_set: GaussianSet
    witness: tuple[GaussianVector, ...]
    claimed_size: int
    checked: bool

    def verify(self) -> bool:
        return (
            len(self.witness) == self.claimed_size
            and len({v.key for v in self.witness}) == self.claimed_size
            and gaussian_is_free(self.witness, self.ground_set)
        )

    def to_json(self) -> dict:
        return {
            "mode": "difference",
            "field": "gaussian",
            "ground_set": self.ground_set.to_json(),
            "witness": sorted(v.serialize() for v in self.witness),
            "claimed_size": self.claimed_size,
            "checked": self.checked,
        }


def gaussian_conflict_graph(A: GaussianSet) -> tuple[list[GKey], list[int]]:
    verts = A.sorted_keys()
    m = len(verts)
    adj = [0] * m
    ground = A.keys
    for i in range(m):
        for j in range(i + 1, m):
            d = g_diff(verts[i], verts[j])
            hit = d is not None and d in ground
            if not hit:
                d = g_diff(verts[j], verts[i])
                hit = d is not None and d in ground
            if hit:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return verts, adj


def gaussian_max_free(A: GaussianSet, config: Config = _DEFAULT) -> tuple[int, list[GaussianVector]]:
    if len(A) > config.mis_vertex_budget:
        raise BudgetExceededError(
            f"ground set has {len(A)} members, oracle budget {config.mis_vertex_budget}"
        )
    verts, adj = gaussian_conflict_graph(A)
    size, _ = mis.max_independent_set(adj, config.decision_node_budget)
    mask = mis.lex_least_independent_set_of_size(adj, size, config.decision_node_budget)
    witness = [GaussianVector(A.dim, verts[i]) for i in mis.mask_to_indices(mask)]
    return size, witness


def gaussian_exists_free(A: GaussianSet, size: int, config: Config = _DEFAULT) -> bool:
    if size <= 0:
        return True
    if size > len(A):
        return False
    _, adj = gaussian_conflict_graph(A)
    return mis.exists_independent_set(adj, size, config.decision_node_budget) is not None


def find_gaussian_difference_free(
    A: GaussianSet, config: Config = _DEFAULT
) -> GaussianFreeCertificate:
    """A verified difference-free subset of size exactly 2n+2.

    Route: realify, run the ternary chain for 2n+1 members, pull back,
    then reach 2n+2 with an exact search seeded by the embedded solution
    (a greedy completion is tried first, but the full search runs whenever
    greed is not enough).
    """
    A.require_admissible()
    n = A.dim
    target = 2 * n + 2
    fA = embed_set(A)
    if not fA.is_admissible():
        raise SearchDefectError("realified set lost admissibility")
    embedded = find_difference_free(fA, config)
    seed_keys = {g_unembed_key(v.key) for v in embedded.witness}
    if not seed_keys <= A.keys:
        raise SearchDefectError("embedded witness failed to pull back into the set")

    # Greedy completion in serialization order.
    ground = A.keys
    chosen = set(seed_keys)
    for z in A.sorted_keys():
        if len(chosen) >= target:
            break
        if z in chosen:
            continue
        ok = True
        for b in chosen:
            d = g_diff(z, b)
            if d is not None and d in ground:
                ok = False
                break
            d = g_diff(b, z)
            if d is not None and d in ground:
                ok = False
                break
        if ok:
            chosen.add(z)
    if len(chosen) < target:
        # Exact seeded search over the whole conflict graph.
        verts, adj = gaussian_conflict_graph(A)
        index = {k: i for i, k in enumerate(verts)}
        seed_mask = 0
        for k in seed_keys:
            seed_mask |= 1 << index[k]
        mask = mis.exists_independent_set(adj, target, config.decision_node_budget,
                                          seed_mask=seed_mask)
        if mask is None:
            raise ResearchFlagError(
                f"no difference-free subset of size {target} exists in this "
                f"i-closed admissible set; this input is a research artifact",
                artifact=A.to_json(),
            )
        chosen = {verts[i] for i in mis.mask_to_indices(mask)}
    witness = tuple(sorted((GaussianVector(n, k) for k in chosen),
                           key=lambda v: v.serialize())[:target])
    cert = GaussianFreeCertificate(A, witness, target, checked=False)
    if not cert.verify():
        raise SearchDefectError("Gaussian witness failed verification")
    cert.checked = True
    return cert


# ---------------------------------------------------------------------------
# i-orbit enumeration and the complex arrow relations

@lru_cache(maxsize=16)
def _g_orbit_table(dim: int) -> tuple[tuple[GKey, ...], tuple[GKey, ...]]:
    """(basis orbit reps, free orbit reps) for the {x, ix, -x, -ix} orbits
    of nonzero vectors, representatives minimal in serialization order."""
    reps = set()
    for digits in itertools.product("0+-ij", repeat=dim):
        if all(d == "0" for d in digits):
            continue
        key = g_key_from_string("".join(digits))
        orbit = []
        k = key
        for _ in range(4):
            orbit.append(k)
            k = g_i_mul(k)
        reps.add(min(orbit, key=lambda q: g_sort_scalar(q, dim)))
    basis = tuple((1 << k, 0, 0, 0) for k in range(dim))
    basis_set = set(basis)
    free = tuple(sorted((r for r in reps if r not in basis_set),
                        key=lambda q: g_sort_scalar(q, dim)))
    return basis, free


def gaussian_enumeration_size(dim: int, include_zero_choice: bool = True) -> int:
    _, free = _g_orbit_table(dim)
    return 1 << (len(free) + (1 if include_zero_choice else 0))


def gaussian_set_from_index(dim: int, index: int, include_zero_choice: bool = True) -> GaussianSet:
    basis, free = _g_orbit_table(dim)
    total = gaussian_enumeration_size(dim, include_zero_choice)
    if not 0 <= index < total:
        raise IndexRangeError(f"set index {index} out of range 0..{total - 1}")
    keys = set()

    def add_orbit(k: GKey) -> None:
        for _ in range(4):
            keys.add(k)
            k = g_i_mul(k)

    for k in basis:
        add_orbit(k)
    for i, rep in enumerate(free):
        if (index >> i) & 1:
            add_orbit(rep)
    if include_zero_choice and (index >> len(free)) & 1:
        keys.add((0, 0, 0, 0))
    return GaussianSet(dim, keys)


def enumerate_gaussian_admissible_sets(
    dim: int,
    include_zero_choice: bool = True,
    budget: Optional[int] = None,
) -> Iterator[GaussianSet]:
    total = gaussian_enumeration_size(dim, include_zero_choice)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"Gaussian enumeration for dim {dim} needs {total} sets, budget {budget}"
        )
    for index in range(total):
        yield gaussian_set_from_index(dim, index, include_zero_choice)


def random_gaussian_admissible_set(dim: int, rng, include_zero_choice: bool = True) -> GaussianSet:
    _, free = _g_orbit_table(dim)
    bits = len(free) + (1 if include_zero_choice else 0)
    index = rng.getrandbits(bits) if bits else 0
    return gaussian_set_from_index(dim, index, include_zero_choice)


def _gaussian_theorem_holds(N: int, l: int) -> bool:
    # every i-closed admissible subset of V_N has a free subset of 2N+2
    return l <= 2 * N + 2


def _gaussian_canonical_counterexample(N: int, l: int, config: Config) -> dict:
    """Delta set over the tight difference witness in C_N: its free subsets
    split into a real and an imaginary half of at most N+1 each."""
    delta = delta_construction(witness_difference(N + 2))
    entry = delta.to_json()
    if len(delta) <= config.mis_vertex_budget:
        size, _ = gaussian_max_free(delta, config)
        if size >= l:
            raise SearchDefectError("canonical Gaussian counterexample admits size l")
        entry["max_free"] = size
        entry["exact"] = True
    else:
        entry["max_free"] = 2 * N + 2
        entry["exact"] = False
    return entry


def gaussian_property_evidence(N: int, config: Config, seed: int) -> dict:
    rng = random.Random(seed)
    target = 2 * N + 2
    for _ in range(config.evidence_sets):
        A = random_gaussian_admissible_set(N, rng)
        cert = find_gaussian_difference_free(A, config)
        if not cert.checked or cert.claimed_size != target:
            raise SearchDefectError("randomized Gaussian evidence run failed verification")
    return {"seed": seed, "sets": config.evidence_sets, "dim": N, "target_size": target}


def gaussian_arrow_holds(
    N: int,
    l: int,
    strategy: str,
    config: Config = _DEFAULT,
    seed: Optional[int] = None,
) -> ArrowCertificate:
    """Certify or refute the complex arrow N -> l over V_N."""
    if N < 1 or l < 1:
        raise PreconditionError("N and l must be positive")
    if strategy == EXHAUSTIVE:
        if N > config.complex_exhaustive_max_dim:
            raise BudgetExceededError(
                f"exhaustive complex certification capped at dimension "
                f"{config.complex_exhaustive_max_dim}"
            )
        total = gaussian_enumeration_size(N)
        if config.admissible_set_budget is not None and total > config.admissible_set_budget:
            raise BudgetExceededError(
                f"Gaussian enumeration for dim {N} needs {total} sets, "
                f"budget {config.admissible_set_budget}"
            )
        from .freesets import scan_for_counterexample
        failure = scan_for_counterexample(COMPLEX_DIFFERENCE, N, l, config)
        if failure is not None:
            A = gaussian_set_from_index(N, failure)
            size, _ = gaussian_max_free(A, config)
            counter = A.to_json()
            counter["max_free"] = size
            counter["exact"] = True
            return ArrowCertificate(COMPLEX_DIFFERENCE, N, l, False, EXHAUSTIVE,
                                    sets_examined=failure + 1, counterexample=counter)
        return ArrowCertificate(COMPLEX_DIFFERENCE, N, l, True, EXHAUSTIVE,
                                sets_examined=total)
    if strategy == WITNESS:
        if _gaussian_theorem_holds(N, l):
            raise PreconditionError(
                f"witness strategy asked to refute complex {N} -> {l}, which holds"
            )
        counter = _gaussian_canonical_counterexample(N, l, config)
        return ArrowCertificate(COMPLEX_DIFFERENCE, N, l, False, WITNESS,
                                counterexample=counter)
    if strategy == THEOREM_BACKED:
        holds = _gaussian_theorem_holds(N, l)
        cert = ArrowCertificate(COMPLEX_DIFFERENCE, N, l, holds, THEOREM_BACKED,
                                theorem="K_C(2n+v)=n")
        if holds and seed is not None:
            cert.evidence = gaussian_property_evidence(N, config, seed)
        if not holds:
            cert.counterexample = _gaussian_canonical_counterexample(N, l, config)
        return cert
    raise PreconditionError(f"unknown strategy {strategy!r}")


def gaussian_kottman_value(
    l: int, config: Config = _DEFAULT, seed: Optional[int] = None
) -> ValueCertificate:
    """The complex value function: 1 up to l = 4, then floor((l-1)/2)."""
    if l < 1:
        raise PreconditionError("the complex value function needs l >= 1")
    value = max(1, (l - 1) // 2)
    if value <= config.complex_exhaustive_max_dim:
        upper = gaussian_arrow_holds(value, l, EXHAUSTIVE, config)
    else:
        upper = gaussian_arrow_holds(value, l, THEOREM_BACKED, config,
                                     seed=config.seed if seed is None else seed)
    if not upper.holds:
        raise ResearchFlagError("complex upper-bound arrow unexpectedly refuted",
                                artifact=upper.to_json())
    lower = None
    if l >= 5:
        lower = gaussian_arrow_holds(value - 1, l, WITNESS, config)
    return ValueCertificate("gaussian_kottman", l, value, upper, lower)
