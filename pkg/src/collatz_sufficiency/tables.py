"""Residue sets listed in the published tables of sufficient sets.

Each entry is ``(residues, modulus)``. Entries are stored column by column
in the order they are printed, so a failing row can be found on the page
by its column and position.
"""

# Table 1: strongly sufficient (graph is a disjoint union of short cycles).
STRONG_TABLE: tuple[tuple[tuple[int, ...], int], ...] = (
    # column 1
    ((0,), 2),
    ((1,), 2),
    ((1,), 3),
    ((2,), 3),
    ((1,), 4),
    ((2,), 4),
    ((2,), 6),
    ((2,), 9),
    ((0, 3), 4),
    ((0, 1), 5),
    ((0, 2), 5),
    ((1, 3), 5),
    ((2, 3), 5),
    ((1, 4), 6),
    ((1, 5), 6),
    ((4, 5), 6),
    ((2, 3), 7),
    ((2, 5), 7),
    ((3, 4), 7),
    ((4, 5), 7),
    ((4, 6), 7),
    ((1, 4), 8),
    ((1, 5), 8),
    ((2, 3), 8),
    ((2, 6), 8),
    ((3, 4), 8),
    ((3, 5), 8),
    ((4, 6), 8),
    ((5, 6), 8),
    # column 2
    ((1, 4), 9),
    ((1, 8), 9),
    ((4, 5), 9),
    ((4, 7), 9),
    ((5, 8), 9),
    ((7, 8), 9),
    ((4, 7), 11),
    ((5, 6), 11),
    ((6, 8), 11),
    ((6, 9), 11),
    ((1, 5), 12),
    ((2, 5), 12),
    ((2, 8), 12),
    ((2, 10), 12),
    ((4, 5), 12),
    ((5, 8), 12),
    ((7, 8), 12),
    ((8, 11), 15),
    ((1, 8), 18),
    ((2, 8), 18),
    ((2, 11), 18),
    ((7, 8), 18),
    ((8, 10), 18),
    ((8, 14), 18),
    ((10, 11), 18),
    ((5, 11), 21),
    ((0, 1, 3), 7),
    ((0, 1, 5), 7),
    ((0, 1, 6), 7),
    # column 3
    ((1, 2, 6), 7),
    ((0, 1, 3), 8),
    ((0, 1, 6), 8),
    ((2, 4, 7), 8),
    ((2, 5, 7), 8),
    ((0, 1, 4), 10),
    ((0, 1, 6), 10),
    ((0, 1, 8), 10),
    ((0, 2, 4), 10),
    ((0, 2, 6), 10),
    ((0, 2, 7), 10),
    ((0, 2, 8), 10),
    ((0, 4, 7), 10),
    ((0, 6, 7), 10),
    ((0, 7, 8), 10),
    ((1, 3, 4), 10),
    ((1, 3, 6), 10),
    ((1, 3, 8), 10),
    ((1, 4, 5), 10),
    ((1, 5, 6), 10),
    ((1, 5, 8), 10),
    ((2, 3, 4), 10),
    ((2, 3, 6), 10),
    ((2, 3, 7), 10),
    ((2, 3, 8), 10),
    ((2, 4, 5), 10),
    ((2, 5, 6), 10),
    ((2, 5, 7), 10),
    ((2, 5, 8), 10),
    # column 4
    ((3, 4, 7), 10),
    ((3, 6, 7), 10),
    ((3, 7, 8), 10),
    ((4, 5, 7), 10),
    ((5, 6, 7), 10),
    ((5, 7, 8), 10),
    ((0, 1, 5), 11),
    ((0, 1, 8), 11),
    ((0, 1, 9), 11),
    ((0, 2, 5), 11),
    ((0, 2, 8), 11),
    ((0, 4, 5), 11),
    ((0, 4, 8), 11),
    ((0, 4, 9), 11),
    ((1, 2, 7), 11),
    ((1, 3, 5), 11),
    ((1, 3, 8), 11),
    ((1, 3, 9), 11),
    ((1, 3, 10), 11),
    ((1, 5, 7), 11),
    ((1, 7, 8), 11),
    ((1, 7, 9), 11),
    ((2, 3, 5), 11),
    ((2, 3, 7), 11),
    ((2, 3, 8), 11),
    ((2, 3, 9), 11),
    ((2, 3, 10), 11),
    ((2, 5, 7), 11),
    ((2, 6, 7), 11),
    # column 5
    ((2, 7, 8), 11),
    ((3, 4, 5), 11),
    ((3, 4, 8), 11),
    ((3, 4, 9), 11),
    ((3, 4, 10), 11),
    ((3, 6, 10), 11),
    ((1, 7, 10), 12),
    ((1, 8, 11), 12),
    ((2, 4, 11), 12),
    ((4, 7, 10), 12),
    ((1, 3, 4), 13),
    ((1, 4, 6), 13),
    ((1, 8, 11), 13),
    ((2, 3, 7), 13),
    ((2, 6, 7), 13),
    ((3, 4, 9), 13),
    ((3, 4, 10), 13),
    ((3, 7, 10), 13),
    ((3, 10, 11), 13),
    ((4, 6, 9), 13),
    ((4, 6, 10), 13),
    ((4, 8, 9), 13),
    ((6, 7, 10), 13),
    ((6, 10, 11), 13),
    ((7, 8, 9), 13),
    ((8, 9, 11), 13),
    ((8, 10, 11), 13),
    ((3, 4, 10), 14),
    ((4, 5, 6), 14),
    # column 6
    ((4, 5, 12), 14),
    ((4, 6, 11), 14),
    ((4, 11, 12), 14),
    ((6, 7, 8), 14),
    ((6, 8, 9), 14),
    ((7, 8, 12), 14),
    ((8, 9, 12), 14),
    ((1, 5, 7), 15),
    ((1, 5, 11), 15),
    ((1, 5, 13), 15),
    ((1, 5, 14), 15),
    ((1, 7, 8), 15),
    ((1, 8, 13), 15),
    ((1, 8, 14), 15),
    ((1, 10, 11), 15),
    ((1, 10, 13), 15),
    ((2, 5, 7), 15),
    ((2, 5, 11), 15),
    ((2, 5, 13), 15),
    ((2, 5, 14), 15),
    ((2, 7, 8), 15),
    ((2, 7, 10), 15),
    ((2, 8, 13), 15),
    ((2, 8, 14), 15),
    ((2, 10, 11), 15),
    ((2, 10, 13), 15),
    ((2, 10, 14), 15),
    ((4, 5, 11), 15),
    ((4, 10, 11), 15),
)

# Table 2: forward sufficient (every simple cycle below ln2/ln3 red).
FORWARD_TABLE: tuple[tuple[tuple[int, ...], int], ...] = (
    # column 1
    ((3,), 4),
    ((5,), 6),
    ((3,), 8),
    ((6,), 8),
    ((4,), 9),
    ((8,), 9),
    ((5,), 12),
    ((8,), 18),
    ((20,), 27),
    ((0, 3), 7),
    ((0, 5), 7),
    ((1, 7), 8),
    ((4, 5), 11),
    ((4, 8), 11),
    ((2, 11), 12),
    ((7, 10), 12),
    ((7, 11), 12),
    ((5, 11), 15),
    ((3, 11), 16),
    ((6, 7), 16),
    ((6, 14), 16),
    ((7, 9), 16),
    ((7, 11), 16),
    ((9, 12), 16),
    ((9, 14), 16),
    ((9, 15), 16),
    ((11, 14), 16),
    # column 2
    ((11, 15), 16),
    ((4, 13), 18),
    ((11, 17), 18),
    ((13, 17), 18),
    ((5, 14), 21),
    ((5, 17), 24),
    ((11, 14), 24),
    ((11, 17), 24),
    ((11, 19), 24),
    ((14, 20), 24),
    ((14, 22), 24),
    ((14, 23), 24),
    ((17, 23), 24),
    ((10, 17), 27),
    ((13, 17), 27),
    ((13, 22), 27),
    ((17, 26), 27),
    ((22, 26), 27),
    ((1, 3, 9), 10),
    ((1, 5, 9), 10),
    ((3, 7, 9), 10),
    ((5, 7, 9), 10),
    ((1, 2, 5), 11),
    ((1, 2, 8), 11),
    ((1, 5, 9), 11),
    ((1, 8, 9), 11),
    ((0, 1, 3), 13),
    # column 3
    ((0, 1, 6), 13),
    ((0, 2, 3), 13),
    ((0, 2, 6), 13),
    ((0, 3, 9), 13),
    ((0, 3, 10), 13),
    ((0, 6, 9), 13),
    ((0, 6, 10), 13),
    ((0, 8, 9), 13),
    ((1, 3, 7), 13),
    ((1, 3, 11), 13),
    ((1, 6, 7), 13),
    ((1, 6, 11), 13),
    ((2, 3, 4), 13),
    ((2, 3, 11), 13),
    ((2, 4, 6), 13),
    ((2, 6, 11), 13),
    ((2, 8, 11), 13),
    ((3, 7, 9), 13),
    ((3, 9, 11), 13),
    ((6, 7, 9), 13),
    ((6, 9, 11), 13),
    ((3, 6, 7), 14),
    ((3, 6, 9), 14),
    ((3, 7, 10), 14),
    ((3, 7, 12), 14),
    ((3, 7, 13), 14),
    ((3, 9, 10), 14),
    # column 4
    ((3, 9, 12), 14),
    ((3, 9, 13), 14),
    ((4, 5, 13), 14),
    ((4, 11, 13), 14),
    ((5, 6, 7), 14),
    ((5, 6, 9), 14),
    ((5, 7, 12), 14),
    ((5, 7, 13), 14),
    ((5, 9, 12), 14),
    ((5, 9, 13), 14),
    ((6, 7, 11), 14),
    ((6, 9, 11), 14),
    ((7, 8, 13), 14),
    ((7, 11, 12), 14),
    ((7, 11, 13), 14),
    ((8, 9, 13), 14),
    ((9, 11, 12), 14),
    ((9, 11, 13), 14),
    ((1, 3, 7), 16),
    ((1, 3, 9), 16),
    ((1, 3, 14), 16),
    ((2, 7, 12), 16),
    ((2, 11, 12), 16),
    ((2, 12, 14), 16),
    ((5, 11, 16), 18),
    ((7, 9, 15), 20),
    ((7, 15, 18), 20),
    # column 5
    ((7, 15, 19), 20),
    ((9, 11, 15), 20),
    ((11, 15, 18), 20),
    ((11, 15, 19), 20),
    ((10, 14, 17), 21),
    ((13, 14, 17), 21),
    ((14, 17, 20), 21),
    ((3, 10, 17), 22),
    ((3, 17, 20), 22),
    ((3, 17, 21), 22),
    ((4, 15, 19), 22),
    ((5, 16, 17), 22),
    ((8, 17, 19), 22),
    ((12, 13, 19), 22),
    ((4, 17, 22), 24),
    ((7, 17, 20), 24),
    ((7, 17, 22), 24),
    ((7, 19, 20), 24),
    ((7, 19, 22), 24),
    ((7, 19, 23), 24),
    ((8, 17, 23), 27),
    ((8, 17, 25), 27),
    ((10, 11, 13), 27),
    ((10, 11, 26), 27),
)

# Table 3: backward sufficient (every simple cycle above ln2/ln3 red).
BACKWARD_TABLE: tuple[tuple[tuple[int, ...], int], ...] = (
    # column 1
    ((2, 4), 8),
    ((2, 5), 8),
    ((1, 8), 12),
    ((2, 4), 18),
    ((2, 5), 24),
    ((1, 4, 10), 12),
    ((1, 3, 4), 16),
    # column 2
    ((1, 3, 5), 16),
    ((1, 3, 8), 16),
    ((1, 3, 10), 16),
    ((1, 4, 12), 16),
    ((1, 5, 13), 16),
    ((1, 8, 13), 16),
    ((2, 3, 10), 16),
    # column 3
    ((2, 4, 12), 16),
    ((2, 5, 12), 16),
    ((2, 5, 13), 16),
    ((2, 8, 12), 16),
    ((2, 8, 13), 16),
    ((2, 10, 12), 16),
    ((1, 4, 10), 18),
    # column 4
    ((1, 4, 20), 24),
    ((1, 5, 13), 24),
    ((1, 8, 20), 24),
    ((2, 4, 20), 24),
    ((2, 8, 20), 24),
)

# Table 4: cycle sufficient (per-component red-fraction split).
CYCLE_TABLE: tuple[tuple[tuple[int, ...], int], ...] = (
    ((1, 3), 16),
    ((2, 12), 16),
)

TABLES = {
    1: ("strong", STRONG_TABLE),
    2: ("forward", FORWARD_TABLE),
    3: ("backward", BACKWARD_TABLE),
    4: ("cycle", CYCLE_TABLE),
}


def format_residue_set(residues, modulus) -> str:
    """Render a set in the "a1,...,ak mod d" notation."""
    return ",".join(str(r) for r in sorted(residues)) + f" mod {modulus}"
