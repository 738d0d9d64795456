import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cohomkern.groups import make_group  # noqa: E402
from cohomkern.sequences import build_sequence  # noqa: E402

GRID = [
    (2, 1, 1, "cyclic"),
    (3, 1, 1, "cyclic"),
    (5, 1, 1, "cyclic"),
    (3, 2, 2, "dihedral-classic"),
    (5, 2, 4, "dihedral-classic"),
    (7, 2, 6, "dihedral-classic"),
    (3, 2, 2, "semidirect"),
    (5, 4, 2, "semidirect"),
    (13, 4, 5, "semidirect"),
]


def group_family(family: str) -> str:
    return "dihedral" if family == "dihedral-classic" else family


@functools.lru_cache(maxsize=None)
def grid_group(d, s, t, family):
    return make_group(d, s, t, group_family(family))


@functools.lru_cache(maxsize=None)
def grid_sequence(d, s, t, family):
    return build_sequence(grid_group(d, s, t, family), family)


def grid_id(case) -> str:
    d, s, t, family = case
    return f"{family}-{d}-{s}-{t}"


@pytest.fixture(scope="session")
def s3():
    return grid_group(3, 2, 2, "dihedral-classic")


@pytest.fixture(scope="session")
def s3_seq():
    return grid_sequence(3, 2, 2, "dihedral-classic")


@pytest.fixture(scope="session")
def g542_seq():
    return grid_sequence(5, 4, 2, "semidirect")
