"""The verifier's simple search against the engine's exact oracle."""

from __future__ import annotations

import random

from cubesep.config import Config
from cubesep.freesets import DIFFERENCE, SUM, exists_free_subset, max_free_subset
from cubesep.ternary import random_admissible_set
from cubesep.verify import _coords, _exists_free

CFG = Config()


def _members_of(A):
    strings = A.member_strings()
    return [_coords(s) for s in strings]


def test_simple_search_agrees_with_oracle_on_random_sets():
    rng = random.Random(55)
    for _ in range(40):
        n = rng.randint(1, 3)
        A = random_admissible_set(n, rng)
        members = _members_of(A)
        member_set = set(members)
        for mode in (DIFFERENCE, SUM):
            size, _ = max_free_subset(A, mode, CFG)
            assert _exists_free(members, member_set, mode, size)
            assert not _exists_free(members, member_set, mode, size + 1)
            for target in range(1, size + 2):
                assert _exists_free(members, member_set, mode, target) == \
                    exists_free_subset(A, mode, target, CFG)


def test_simple_search_handles_zero_member():
    rng = random.Random(56)
    for _ in range(20):
        A = random_admissible_set(2, rng).with_zero()
        members = _members_of(A)
        member_set = set(members)
        size, _ = max_free_subset(A, SUM, CFG)
        assert _exists_free(members, member_set, SUM, size)
        assert not _exists_free(members, member_set, SUM, size + 1)
