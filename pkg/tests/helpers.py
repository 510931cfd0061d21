"""Small shared fixtures for the test suite."""

from zchain.abelian import free_group, mk_group
from zchain.complexes import mk_complex
from zchain.intlinalg import IntMatrix
from zchain.randgen import random_hom  # noqa: F401  (re-exported for tests)


def Zmod(n):
    return mk_group(1, IntMatrix.from_rows([[n]]))


def sphere(n, m):
    from zchain.complexes import test_object

    return test_object("sphere", n, m)


def disk(n, m):
    from zchain.complexes import test_object

    return test_object("disk", n, m)


def r2_complex():
    """Z --x2--> Z in degrees 1, 0."""
    Z = free_group(1)
    return mk_complex((0, 1), {0: Z, 1: Z}, {1: IntMatrix.from_rows([[2]])})
