"""Exact sign-vector arithmetic on the ternary cube {0,+1,-1}**n.

A vector is stored as two disjoint bitmasks (positive positions, negative
positions), bit k-1 holding coordinate k.  That makes negation, projection
and the in-cube difference/sum tests O(1) mask operations, which is what
the exhaustive searches downstream live on.

Serialization writes one character per coordinate, left to right:
'+' for +1, '-' for -1, '0' for 0.  All deterministic orders in the
package ("lexicographic") refer to the byte order of these strings,
i.e. '+' < '-' < '0'.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    IndexRangeError,
    PreconditionError,
)

Key = tuple[int, int]  # (positive mask, negative mask)

_CHARS = {(1, 0): "+", (0, 1): "-", (0, 0): "0"}
_DIGITS = {"+": (1, 0), "-": (0, 1), "0": (0, 0)}


# ---------------------------------------------------------------------------
# key-level helpers (hot paths work on raw (pos, neg) pairs)

def neg_key(key: Key) -> Key:
    pos, neg = key
    return (neg, pos)


def diff_key(a: Key, b: Key) -> Optional[Key]:
    """a - b as a cube key, or None when some coordinate leaves {-1,0,1}."""
    ap, an = a
    bp, bn = b
    if (ap & bn) or (an & bp):
        return None  # a +2 or -2 coordinate
    aocc = ap | an
    bocc = bp | bn
    return ((ap & ~bocc) | (bn & ~aocc), (an & ~bocc) | (bp & ~aocc))


def sum_key(a: Key, b: Key) -> Optional[Key]:
    """a + b as a cube key, or None when some coordinate leaves {-1,0,1}."""
    ap, an = a
    bp, bn = b
    if (ap & bp) or (an & bn):
        return None
    aocc = ap | an
    bocc = bp | bn
    return ((ap & ~bocc) | (bp & ~aocc), (an & ~bocc) | (bn & ~aocc))


def project_key(key: Key, n: int) -> Key:
    mask = (1 << n) - 1
    return (key[0] & mask, key[1] & mask)


def key_string(key: Key, dim: int) -> str:
    pos, neg = key
    return "".join(
        "+" if (pos >> k) & 1 else "-" if (neg >> k) & 1 else "0"
        for k in range(dim)
    )


def key_from_string(text: str) -> Key:
    pos = neg = 0
    for k, ch in enumerate(text):
        try:
            p, n = _DIGITS[ch]
        except KeyError:
            raise ValueError(f"invalid ternary digit {ch!r} in {text!r}") from None
        pos |= p << k
        neg |= n << k
    return (pos, neg)


@lru_cache(maxsize=64)
def _sort_weights(dim: int) -> tuple[int, ...]:
    # coordinate k+1 is the (dim-1-k)-th base-4 digit of the sort scalar
    return tuple(4 ** (dim - 1 - k) for k in range(dim))


def sort_scalar(key: Key, dim: int) -> int:
    """Integer whose natural order equals the serialization byte order."""
    pos, neg = key
    w = _sort_weights(dim)
    total = 0
    m = pos
    while m:
        lsb = m & -m
        total += 2 * w[lsb.bit_length() - 1]
        m ^= lsb
    m = neg
    while m:
        lsb = m & -m
        total += w[lsb.bit_length() - 1]
        m ^= lsb
    # '+' -> 0, '-' -> 1, '0' -> 2 per digit: subtract occupied weight sums
    return 2 * sum(w) - total


def sorted_keys(keys: Iterable[Key], dim: int) -> list[Key]:
    return sorted(keys, key=lambda k: sort_scalar(k, dim))


# ---------------------------------------------------------------------------
# vectors

@dataclass(frozen=True, order=False)
class TernaryVector:
    """A point of the cube C_n = {0,+1,-1}**n."""

    dim: int
    pos: int
    neg: int

    def __post_init__(self):
        if self.dim < 1:
            raise IndexRangeError("dimension must be positive")
        full = (1 << self.dim) - 1
        if self.pos & self.neg:
            raise ValueError("overlapping +1/-1 masks")
        if (self.pos | self.neg) & ~full:
            raise ValueError("mask bits outside dimension")

    @property
    def key(self) -> Key:
        return (self.pos, self.neg)

    @classmethod
    def from_key(cls, key: Key, dim: int) -> "TernaryVector":
        return cls(dim, key[0], key[1])

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "TernaryVector":
        pos = neg = 0
        for k, c in enumerate(coords):
            if c == 1:
                pos |= 1 << k
            elif c == -1:
                neg |= 1 << k
            elif c != 0:
                raise ValueError(f"coordinate {c!r} not in {{-1,0,1}}")
        return cls(len(coords), pos, neg)

    @classmethod
    def from_string(cls, text: str) -> "TernaryVector":
        key = key_from_string(text)
        return cls(len(text), key[0], key[1])

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(
            1 if (self.pos >> k) & 1 else -1 if (self.neg >> k) & 1 else 0
            for k in range(self.dim)
        )

    @property
    def support(self) -> frozenset[int]:
        occ = self.pos | self.neg
        return frozenset(k + 1 for k in range(self.dim) if (occ >> k) & 1)

    def is_zero(self) -> bool:
        return self.pos == 0 and self.neg == 0

    def __neg__(self) -> "TernaryVector":
        return TernaryVector(self.dim, self.neg, self.pos)

    def serialize(self) -> str:
        return key_string(self.key, self.dim)

    def __str__(self) -> str:
        return self.serialize()

    def sort_key(self) -> str:
        return self.serialize()


@dataclass(frozen=True)
class IntegerVector:
    """Raw integer difference/sum of two ternary vectors (diagnostics only).

    Coordinates stay in -2..2 by construction; this type never feeds the
    membership tests, which only accept in-cube results.
    """

    dim: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if any(abs(c) > 2 for c in self.coords):
            raise ValueError("integer vector coordinate out of -2..2")


def basis_vector(dim: int, k: int) -> TernaryVector:
    """Standard basis vector e_k, 1-indexed."""
    if not 1 <= k <= dim:
        raise IndexRangeError(f"basis index {k} out of range 1..{dim}")
    return TernaryVector(dim, 1 << (k - 1), 0)


def zero_vector(dim: int) -> TernaryVector:
    return TernaryVector(dim, 0, 0)


def _check_same_dim(x: TernaryVector, y: TernaryVector) -> None:
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dimensions differ: {x.dim} vs {y.dim}")


def ternary_difference(x: TernaryVector, y: TernaryVector) -> Optional[TernaryVector]:
    """x - y when it stays inside the cube, else None."""
    _check_same_dim(x, y)
    key = diff_key(x.key, y.key)
    return None if key is None else TernaryVector.from_key(key, x.dim)


def ternary_sum(x: TernaryVector, y: TernaryVector) -> Optional[TernaryVector]:
    """x + y when it stays inside the cube, else None."""
    _check_same_dim(x, y)
    key = sum_key(x.key, y.key)
    return None if key is None else TernaryVector.from_key(key, x.dim)


def raw_difference(x: TernaryVector, y: TernaryVector) -> IntegerVector:
    _check_same_dim(x, y)
    return IntegerVector(x.dim, tuple(a - b for a, b in zip(x.coords, y.coords)))


def raw_sum(x: TernaryVector, y: TernaryVector) -> IntegerVector:
    _check_same_dim(x, y)
    return IntegerVector(x.dim, tuple(a + b for a, b in zip(x.coords, y.coords)))


def project(x: TernaryVector, n: int) -> TernaryVector:
    """Prefix of x of length n (projection onto the first n coordinates)."""
    if not 1 <= n <= x.dim:
        raise IndexRangeError(f"projection length {n} out of range 1..{x.dim}")
    return TernaryVector.from_key(project_key(x.key, n), n)


# ---------------------------------------------------------------------------
# cube subsets

class SymmetricCubeSet:
    """A finite subset of C_n with exact membership and verified flags.

    ``contains_basis`` reports whether every e_k is a member and
    ``symmetric`` whether the set is closed under negation; both are
    computed from the data, never trusted from a caller.
    """

    __slots__ = ("dim", "keys", "contains_basis", "symmetric", "_sorted")

    def __init__(self, dim: int, keys: Iterable[Key]):
        if dim < 1:
            raise IndexRangeError("dimension must be positive")
        self.dim = dim
        self.keys = frozenset(keys)
        full = (1 << dim) - 1
        for pos, neg in self.keys:
            if pos & neg or (pos | neg) & ~full:
                raise ValueError("member outside the cube of this dimension")
        self.contains_basis = all((1 << k, 0) in self.keys for k in range(dim))
        self.symmetric = all((n_, p_) in self.keys for (p_, n_) in self.keys)
        self._sorted: Optional[list[Key]] = None

    @classmethod
    def from_vectors(cls, dim: int, vectors: Iterable[TernaryVector]) -> "SymmetricCubeSet":
        keys = []
        for v in vectors:
            if v.dim != dim:
                raise DimensionMismatchError("mixed dimensions in set")
            keys.append(v.key)
        return cls(dim, keys)

    @classmethod
    def from_strings(cls, dim: int, members: Iterable[str]) -> "SymmetricCubeSet":
        keys = []
        for s in members:
            if len(s) != dim:
                raise DimensionMismatchError(f"member {s!r} has wrong length")
            keys.append(key_from_string(s))
        return cls(dim, keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, x: TernaryVector) -> bool:
        return x.dim == self.dim and x.key in self.keys

    def has_key(self, key: Key) -> bool:
        return key in self.keys

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymmetricCubeSet)
            and self.dim == other.dim
            and self.keys == other.keys
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.keys))

    def sorted_keys(self) -> list[Key]:
        if self._sorted is None:
            self._sorted = sorted_keys(self.keys, self.dim)
        return self._sorted

    def vectors(self) -> list[TernaryVector]:
        return [TernaryVector.from_key(k, self.dim) for k in self.sorted_keys()]

    def member_strings(self) -> list[str]:
        return [key_string(k, self.dim) for k in self.sorted_keys()]

    def is_admissible(self) -> bool:
        return self.contains_basis and self.symmetric

    def require_admissible(self) -> None:
        if not self.contains_basis:
            raise PreconditionError("set is missing a basis vector (condition (a))")
        if not self.symmetric:
            raise PreconditionError("set is not symmetric (condition (b))")

    def with_zero(self) -> "SymmetricCubeSet":
        if (0, 0) in self.keys:
            return self
        return SymmetricCubeSet(self.dim, self.keys | {(0, 0)})

    def without_zero(self) -> "SymmetricCubeSet":
        if (0, 0) not in self.keys:
            return self
        return SymmetricCubeSet(self.dim, self.keys - {(0, 0)})

    def to_json(self) -> dict:
        return {"dim": self.dim, "members": self.member_strings()}

    @classmethod
    def from_json(cls, data: dict) -> "SymmetricCubeSet":
        return cls.from_strings(int(data["dim"]), data["members"])

    def __repr__(self) -> str:
        return f"SymmetricCubeSet(dim={self.dim}, size={len(self.keys)})"


def project_set(A: SymmetricCubeSet, n: int) -> SymmetricCubeSet:
    """pr_n A: the set of length-n prefixes of members of A."""
    if not 1 <= n <= A.dim:
        raise IndexRangeError(f"projection length {n} out of range 1..{A.dim}")
    mask = (1 << n) - 1
    return SymmetricCubeSet(n, {(p & mask, q & mask) for (p, q) in A.keys})


def extensions_of(x: TernaryVector, A: SymmetricCubeSet) -> list[TernaryVector]:
    """All (x, xi) in A, in the fixed order xi = +1, 0, -1.

    An empty result signals that x is not in the projection of A.
    """
    if x.dim + 1 != A.dim:
        raise DimensionMismatchError(
            f"extension target must have dimension {x.dim + 1}, got {A.dim}"
        )
    bit = 1 << x.dim
    out = []
    for key in ((x.pos | bit, x.neg), (x.pos, x.neg), (x.pos, x.neg | bit)):
        if key in A.keys:
            out.append(TernaryVector.from_key(key, A.dim))
    return out


def symmetric_closure(vectors: Iterable[TernaryVector]) -> SymmetricCubeSet:
    """S together with -S, flags recomputed."""
    vectors = list(vectors)
    if not vectors:
        raise PreconditionError("symmetric closure of an empty collection has no dimension")
    dim = vectors[0].dim
    keys = set()
    for v in vectors:
        if v.dim != dim:
            raise DimensionMismatchError("mixed dimensions in closure input")
        keys.add(v.key)
        keys.add(neg_key(v.key))
    return SymmetricCubeSet(dim, keys)


# ---------------------------------------------------------------------------
# symmetry-reduced enumeration of admissible sets

@lru_cache(maxsize=32)
def _orbit_table(dim: int) -> tuple[tuple[Key, ...], tuple[Key, ...], tuple[tuple[Key, Key], ...]]:
    """(basis orbit reps, free orbit reps, rep -> (rep, -rep)) for C_dim.

    Orbits are the antipodal pairs {x, -x} of nonzero vectors; the
    representative is the member with the smaller serialization.  Free
    orbits are sorted by representative serialization so that the
    inclusion bitmaps have one fixed meaning.
    """
    reps = []
    full = (1 << dim) - 1
    for occ in range(1, full + 1):
        sub = occ
        while True:
            key = (sub, occ ^ sub)
            nkey = (occ ^ sub, sub)
            if sort_scalar(key, dim) <= sort_scalar(nkey, dim):
                reps.append(key)
            if sub == 0:
                break
            sub = (sub - 1) & occ
    basis = tuple((1 << k, 0) for k in range(dim))
    basis_set = set(basis)
    free = tuple(sorted((r for r in reps if r not in basis_set),
                        key=lambda k: sort_scalar(k, dim)))
    pairs = tuple((r, neg_key(r)) for r in free)
    return basis, free, pairs


def admissible_enumeration_size(dim: int, include_zero_choice: bool = True) -> int:
    """Number of subsets of C_dim satisfying conditions (a) and (b).

    Equals 2**(((3**dim - 1) / 2) - dim + 1) when the zero vector is a free
    choice, half that otherwise.
    """
    _, free, _ = _orbit_table(dim)
    return 1 << (len(free) + (1 if include_zero_choice else 0))


def admissible_set_from_index(dim: int, index: int, include_zero_choice: bool = True) -> SymmetricCubeSet:
    """Deterministic index -> admissible set bijection.

    Bit i of ``index`` includes the i-th free antipodal orbit (orbits in
    representative serialization order); the top bit, when
    ``include_zero_choice``, includes the zero vector.  Basis orbits are
    always present.
    """
    basis, free, pairs = _orbit_table(dim)
    total = admissible_enumeration_size(dim, include_zero_choice)
    if not 0 <= index < total:
        raise IndexRangeError(f"set index {index} out of range 0..{total - 1}")
    keys = set()
    for k in basis:
        keys.add(k)
        keys.add(neg_key(k))
    for i, (rep, nrep) in enumerate(pairs):
        if (index >> i) & 1:
            keys.add(rep)
            keys.add(nrep)
    if include_zero_choice and (index >> len(pairs)) & 1:
        keys.add((0, 0))
    return SymmetricCubeSet(dim, keys)


def enumerate_admissible_sets(
    dim: int,
    include_zero_choice: bool = True,
    budget: Optional[int] = None,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[SymmetricCubeSet]:
    """Stream every admissible subset of C_dim exactly once.

    Order is lexicographic on the orbit-inclusion bitmaps (index order of
    admissible_set_from_index).  ``start``/``stop`` select an index range
    so the stream can be split across workers.  If the total count exceeds
    ``budget`` the enumeration refuses to start.
    """
    total = admissible_enumeration_size(dim, include_zero_choice)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"admissible-set enumeration for dim {dim} needs {total} sets, budget {budget}"
        )
    if stop is None:
        stop = total
    for index in range(start, min(stop, total)):
        yield admissible_set_from_index(dim, index, include_zero_choice)


def random_admissible_set(dim: int, rng, include_zero_choice: bool = True) -> SymmetricCubeSet:
    """Uniform admissible set: each free orbit (and the zero vector) is an
    independent fair coin, i.e. a uniform enumeration index."""
    _, free, _ = _orbit_table(dim)
    bits = len(free) + (1 if include_zero_choice else 0)
    index = rng.getrandbits(bits) if bits else 0
    return admissible_set_from_index(dim, index, include_zero_choice)


def full_cube_set(dim: int, include_zero: bool = False) -> SymmetricCubeSet:
    """C_dim itself (optionally with the zero vector) as a cube set."""
    keys = set()
    full = (1 << dim) - 1
    for occ in range(1, full + 1):
        sub = occ
        while True:
            keys.add((sub, occ ^ sub))
            if sub == 0:
                break
            sub = (sub - 1) & occ
    if include_zero:
        keys.add((0, 0))
    return SymmetricCubeSet(dim, keys)


def permute_key(key: Key, perm: Sequence[int]) -> Key:
    """Apply a coordinate permutation (perm[k] = image of coordinate k+1, 1-indexed)."""
    pos, neg = key
    npos = nneg = 0
    for k, image in enumerate(perm):
        if (pos >> k) & 1:
            npos |= 1 << (image - 1)
        if (neg >> k) & 1:
            nneg |= 1 << (image - 1)
    return (npos, nneg)


def permute_set(A: SymmetricCubeSet, perm: Sequence[int]) -> SymmetricCubeSet:
    if sorted(perm) != list(range(1, A.dim + 1)):
        raise PreconditionError("not a permutation of 1..dim")
    return SymmetricCubeSet(A.dim, {permute_key(k, perm) for k in A.keys})
