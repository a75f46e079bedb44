"""Index tables theta_1.. for genus 2 and genus 3 characteristics.

Entries are (top, bottom) numerator strings. Genus 2: the first ten are even.
Genus 3: the first 36 are even.
"""

from .charspace import HalfChar

_G2 = [
    ("00", "00"), ("00", "11"), ("00", "10"), ("00", "01"), ("10", "00"),
    ("10", "01"), ("01", "00"), ("11", "00"), ("01", "10"), ("11", "11"),
    ("01", "01"), ("01", "11"), ("10", "10"), ("11", "10"), ("10", "11"),
    ("11", "01"),
]

_G3 = [
    ("000", "000"), ("101", "111"), ("111", "000"), ("000", "100"), ("100", "010"),
    ("110", "001"), ("011", "100"), ("001", "010"), ("000", "001"), ("100", "000"),
    ("110", "110"), ("111", "101"), ("000", "110"), ("010", "000"), ("011", "011"),
    ("010", "101"), ("000", "011"), ("001", "000"), ("110", "111"), ("010", "001"),
    ("000", "010"), ("011", "000"), ("111", "110"), ("101", "101"), ("100", "001"),
    ("000", "111"), ("010", "100"), ("001", "110"), ("101", "000"), ("111", "011"),
    ("101", "010"), ("001", "100"), ("011", "111"), ("000", "101"), ("100", "011"),
    ("110", "000"),
    ("100", "100"), ("110", "010"), ("111", "001"), ("010", "110"), ("011", "101"),
    ("001", "011"), ("111", "100"), ("011", "010"), ("001", "001"), ("010", "011"),
    ("110", "101"), ("100", "110"), ("101", "110"), ("100", "101"), ("110", "011"),
    ("001", "111"), ("011", "001"), ("010", "010"), ("101", "001"), ("111", "111"),
    ("110", "100"), ("111", "010"), ("101", "100"), ("100", "111"), ("101", "011"),
    ("001", "101"), ("011", "110"), ("010", "111"),
]


def _build(g, rows):
    return {i + 1: HalfChar(g, tuple(map(int, t)), tuple(map(int, b))) for i, (t, b) in enumerate(rows)}


GENUS2 = _build(2, _G2)
GENUS3 = _build(3, _G3)
EVEN_COUNT = {2: 10, 3: 36}


def table(g: int) -> dict:
    if g == 2:
        return GENUS2
    if g == 3:
        return GENUS3
    raise KeyError(f"no index table for genus {g}")


def index_of(m: HalfChar) -> int:
    for k, c in table(m.genus).items():
        if c == m:
            return k
    raise KeyError(str(m))


def even_indices(g: int) -> range:
    return range(1, EVEN_COUNT[g] + 1)
