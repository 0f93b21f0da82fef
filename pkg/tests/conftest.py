import pytest

from curvecensus.words import enumerate_classes
from curvecensus.intersection import self_intersection


# Census of unoriented primitive curves: rows L = 2..8 over defects -1..11.
TABLE1_ROWS = {
    2: [3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    3: [9, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    4: [21, 6, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    5: [39, 18, 36, 9, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    6: [63, 38, 126, 54, 27, 18, 9, 0, 0, 0, 0, 0, 0],
    7: [93, 66, 276, 156, 216, 150, 135, 51, 21, 6, 0, 0, 0],
    8: [129, 102, 486, 318, 666, 528, 672, 438, 375, 180, 78, 72, 36],
}

# Published continuations of the census rows (defects -1..11 only; these
# rows keep going past defect 11).
TABLE1_ROWS_TRUNCATED = {
    9: [171, 146, 756, 540, 1386, 1218, 2070, 1648, 1995, 1269, 1088, 948, 660],
    10: [219, 198, 1086, 822, 2376, 2226, 4560, 4044, 5970, 4632, 5532, 4890, 4596],
}

# Columns delta = -1..3 continued down to L = 17.
TABLE1_COLUMNS = {
    -1: [3, 9, 21, 39, 63, 93, 129, 171, 219, 273, 333, 399, 471, 549, 633, 723],
    0: [0, 1, 6, 18, 38, 66, 102, 146, 198, 258, 326, 402, 486, 578, 678, 786],
    1: [0, 0, 3, 36, 126, 276, 486, 756, 1086, 1476, 1926, 2436, 3006, 3636, 4326, 5076],
    2: [0, 0, 0, 9, 54, 156, 318, 540, 822, 1164, 1566, 2028, 2550, 3132, 3774, 4476],
    3: [0, 0, 0, 0, 27, 216, 666, 1386, 2376, 3636, 5166, 6966, 9036, 11376, 13986, 16866],
}

MOTIF_COUNTS = {-1: 12, 0: 27, 1: 153, 2: 135, 3: 603, 4: 564, 5: 2391}

# The 27 defect-0 motifs in 6 symmetry orbits: (rho, L, orbit size, representative).
TABLE2 = [
    (0, 3, 1, "xyzxyz"),
    (1, 4, 6, "xyxyzxyz"),
    (2, 5, 6, "xyxyzxyzxz"),
    (2, 5, 6, "xyxyzxyzyz"),
    (3, 6, 6, "xyxyzxyzyzxz"),
    (3, 6, 2, "xyxyzxzxyzyz"),
]


@pytest.fixture(scope="session")
def classes_by_length():
    cache = {}

    def get(L: int):
        if L not in cache:
            cache[L] = list(enumerate_classes(L))
        return cache[L]

    return get


@pytest.fixture(scope="session")
def intersections_by_length(classes_by_length):
    cache = {}

    def get(L: int):
        if L not in cache:
            cache[L] = {
                c.canon: self_intersection(c.canon) for c in classes_by_length(L)
            }
        return cache[L]

    return get
