"""Exact mechanics of the 3x3x3 cube.

State is piece-based: permutations and orientations of the 8 corner and 12
edge cubies.  The 12 quarter-turn actions (clockwise and counter-clockwise
turns of the six faces) are hard-coded permutation/orientation-delta tables.
Facelet colors are derived from the piece representation only where a sticker
encoding is needed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

FACES = "RLUDFB"

# Fixed action order used everywhere a 12-vector is indexed:
# uppercase = clockwise, lowercase = counter-clockwise.
ACTION_LETTERS = ("R", "r", "L", "l", "U", "u", "D", "d", "F", "f", "B", "b")
NUM_ACTIONS = 12

# Corner slots.
URF, UFL, ULB, UBR, DFR, DLF, DBL, DRB = range(8)
# Edge slots.
UR, UF, UL, UB, DR, DF, DL, DB, FR, FL, BL, BR = range(12)


class CubeState(NamedTuple):
    """Immutable cube configuration.

    ``corner_perm[i]`` is the corner cubie sitting in slot ``i`` and
    ``corner_ori[i]`` its twist (mod 3) relative to solved; likewise for
    edges with flips (mod 2).
    """

    corner_perm: tuple
    corner_ori: tuple
    edge_perm: tuple
    edge_ori: tuple


@dataclass(frozen=True)
class Move:
    """One quarter turn of one face."""

    face: str
    clockwise: bool

    @property
    def index(self) -> int:
        """Position in the fixed action order."""
        return _MOVE_INDEX[(self.face, self.clockwise)]

    @property
    def letter(self) -> str:
        return self.face if self.clockwise else self.face.lower()

    def __str__(self) -> str:
        return self.letter


MOVES = tuple(Move(c.upper(), c.isupper()) for c in ACTION_LETTERS)
_MOVE_INDEX = {(m.face, m.clockwise): i for i, m in enumerate(MOVES)}
_MOVE_BY_LETTER = {m.letter: m for m in MOVES}


def parse_move(token: str) -> Move:
    """Parse a single-letter move token (case encodes direction)."""
    try:
        return _MOVE_BY_LETTER[token]
    except KeyError:
        raise ValueError(f"unknown move token {token!r}") from None


def parse_moves(text: str) -> tuple[Move, ...]:
    """Parse a whitespace-separated move sequence, e.g. ``"R U f"``."""
    return tuple(parse_move(tok) for tok in text.split())


def format_moves(moves: Iterable[Move]) -> str:
    return " ".join(m.letter for m in moves)


def inverse(move: Move) -> Move:
    """The move undoing ``move``."""
    return Move(move.face, not move.clockwise)


def invert_sequence(moves: Iterable[Move]) -> tuple[Move, ...]:
    """Reversed sequence of inverses; undoes ``moves``."""
    return tuple(inverse(m) for m in reversed(tuple(moves)))


# --------------------------------------------------------------------------
# Move tables.
#
# A table (cp, co, ep, eo) acts on a state by
#     new_corner_perm[i] = corner_perm[cp[i]]
#     new_corner_ori[i]  = (corner_ori[cp[i]] + co[i]) mod 3
# and analogously for edges (mod 2).  The six clockwise tables below are the
# classical cubie definitions; counter-clockwise tables are derived by
# composing a clockwise turn three times.
# --------------------------------------------------------------------------

_CW_TABLES = {
    "U": (
        (UBR, URF, UFL, ULB, DFR, DLF, DBL, DRB),
        (0, 0, 0, 0, 0, 0, 0, 0),
        (UB, UR, UF, UL, DR, DF, DL, DB, FR, FL, BL, BR),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    ),
    "R": (
        (DFR, UFL, ULB, URF, DRB, DLF, DBL, UBR),
        (2, 0, 0, 1, 1, 0, 0, 2),
        (FR, UF, UL, UB, BR, DF, DL, DB, DR, FL, BL, UR),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    ),
    "F": (
        (UFL, DLF, ULB, UBR, URF, DFR, DBL, DRB),
        (1, 2, 0, 0, 2, 1, 0, 0),
        (UR, FL, UL, UB, DR, FR, DL, DB, UF, DF, BL, BR),
        (0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0),
    ),
    "D": (
        (URF, UFL, ULB, UBR, DLF, DBL, DRB, DFR),
        (0, 0, 0, 0, 0, 0, 0, 0),
        (UR, UF, UL, UB, DF, DL, DB, DR, FR, FL, BL, BR),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    ),
    "L": (
        (URF, ULB, DBL, UBR, DFR, UFL, DLF, DRB),
        (0, 1, 2, 0, 0, 2, 1, 0),
        (UR, UF, BL, UB, DR, DF, FL, DB, FR, UL, DL, BR),
        (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    ),
    "B": (
        (URF, UFL, UBR, DRB, DFR, DLF, ULB, DBL),
        (0, 0, 1, 2, 0, 0, 2, 1),
        (UR, UF, UL, BR, DR, DF, DL, BL, FR, FL, UB, DB),
        (0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1),
    ),
}


def _compose(a, b):
    """Table for applying table ``a`` first, then table ``b``."""
    acp, aco, aep, aeo = a
    bcp, bco, bep, beo = b
    cp = tuple(acp[i] for i in bcp)
    co = tuple((aco[i] + d) % 3 for i, d in zip(bcp, bco))
    ep = tuple(aep[i] for i in bep)
    eo = tuple((aeo[i] + d) % 2 for i, d in zip(bep, beo))
    return cp, co, ep, eo


def _ccw(table):
    return _compose(_compose(table, table), table)


# Tables indexed by action order, with orientation deltas paired to their
# permutation sources for fast application.
def _prepare(table):
    cp, co, ep, eo = table
    return (cp, tuple(zip(cp, co)), ep, tuple(zip(ep, eo)))


_TABLES = tuple(
    _prepare(_CW_TABLES[letter] if letter.isupper() else _ccw(_CW_TABLES[letter.upper()]))
    for letter in ACTION_LETTERS
)

_MOD3 = (0, 1, 2, 0, 1)

_SOLVED = CubeState(
    tuple(range(8)), (0,) * 8, tuple(range(12)), (0,) * 12
)


def solved_state() -> CubeState:
    """The unique goal configuration."""
    return _SOLVED


def is_solved(state: CubeState) -> bool:
    return state == _SOLVED


def apply_move(state: CubeState, move: Move) -> CubeState:
    """Apply one quarter turn; pure, returns a new state."""
    cp, co, ep, eo = _TABLES[move.index]
    p, o, q, r = state
    return CubeState(
        tuple([p[i] for i in cp]),
        tuple([_MOD3[o[i] + d] for i, d in co]),
        tuple([q[i] for i in ep]),
        tuple([r[i] ^ d for i, d in eo]),
    )


def apply_moves(state: CubeState, moves: Iterable[Move]) -> CubeState:
    for m in moves:
        state = apply_move(state, m)
    return state


def neighbors(state: CubeState) -> list[tuple[Move, CubeState]]:
    """All 12 adjacent states, in the fixed action order."""
    p, o, q, r = state
    out = []
    for mi in range(NUM_ACTIONS):
        cp, co, ep, eo = _TABLES[mi]
        out.append(
            (
                MOVES[mi],
                CubeState(
                    tuple([p[i] for i in cp]),
                    tuple([_MOD3[o[i] + d] for i, d in co]),
                    tuple([q[i] for i in ep]),
                    tuple([r[i] ^ d for i, d in eo]),
                ),
            )
        )
    return out


# --------------------------------------------------------------------------
# Canonical keys.
#
# 100 bits packed big-endian into 13 bytes: corner_perm 8x3 bits, corner_ori
# 8x2 bits, edge_perm 12x4 bits, edge_ori 12x1 bit.  Injective on valid
# states, so equal keys identify equal states.
# --------------------------------------------------------------------------

KEY_LENGTH = 13


def canonical_key(state: CubeState) -> bytes:
    """Fixed-width byte-string identity of a state."""
    v = 0
    for x in state.corner_perm:
        v = (v << 3) | x
    for x in state.corner_ori:
        v = (v << 2) | x
    for x in state.edge_perm:
        v = (v << 4) | x
    for x in state.edge_ori:
        v = (v << 1) | x
    return v.to_bytes(KEY_LENGTH, "big")


def state_from_key(key: bytes) -> CubeState:
    """Inverse of :func:`canonical_key`."""
    if len(key) != KEY_LENGTH:
        raise ValueError(f"key must be {KEY_LENGTH} bytes, got {len(key)}")
    v = int.from_bytes(key, "big")
    eo = []
    for _ in range(12):
        eo.append(v & 1)
        v >>= 1
    ep = []
    for _ in range(12):
        ep.append(v & 0xF)
        v >>= 4
    co = []
    for _ in range(8):
        co.append(v & 0x3)
        v >>= 2
    cp = []
    for _ in range(8):
        cp.append(v & 0x7)
        v >>= 3
    state = CubeState(
        tuple(reversed(cp)), tuple(reversed(co)),
        tuple(reversed(ep)), tuple(reversed(eo)),
    )
    problem = validate(state)
    if problem is not None:
        raise ValueError(f"key does not encode a valid state: {problem}")
    return state


SOLVED_KEY = canonical_key(_SOLVED)


# --------------------------------------------------------------------------
# Facelet rendering and the one-hot sticker encoding.
#
# Facelets are indexed 0..53 in U,R,F,D,L,B blocks of 9 (row-major per face);
# colors 0..5 follow the same face order.  The slot->facelet maps below are
# the classical corner/edge sticker layouts.
# --------------------------------------------------------------------------

FACELET_COUNT = 54
COLOR_COUNT = 6
ONEHOT_WIDTH = FACELET_COUNT * COLOR_COUNT  # 324

_U1, _U2, _U3, _U4, _U5, _U6, _U7, _U8, _U9 = range(9)
_R1, _R2, _R3, _R4, _R5, _R6, _R7, _R8, _R9 = range(9, 18)
_F1, _F2, _F3, _F4, _F5, _F6, _F7, _F8, _F9 = range(18, 27)
_D1, _D2, _D3, _D4, _D5, _D6, _D7, _D8, _D9 = range(27, 36)
_L1, _L2, _L3, _L4, _L5, _L6, _L7, _L8, _L9 = range(36, 45)
_B1, _B2, _B3, _B4, _B5, _B6, _B7, _B8, _B9 = range(45, 54)

_CU, _CR, _CF, _CD, _CL, _CB = range(6)

_CORNER_FACELET = (
    (_U9, _R1, _F3), (_U7, _F1, _L3), (_U1, _L1, _B3), (_U3, _B1, _R3),
    (_D3, _F9, _R7), (_D1, _L9, _F7), (_D7, _B9, _L7), (_D9, _R9, _B7),
)
_EDGE_FACELET = (
    (_U6, _R2), (_U8, _F2), (_U4, _L2), (_U2, _B2),
    (_D6, _R8), (_D2, _F8), (_D4, _L8), (_D8, _B8),
    (_F6, _R4), (_F4, _L6), (_B6, _L4), (_B4, _R6),
)
_CORNER_COLOR = (
    (_CU, _CR, _CF), (_CU, _CF, _CL), (_CU, _CL, _CB), (_CU, _CB, _CR),
    (_CD, _CF, _CR), (_CD, _CL, _CF), (_CD, _CB, _CL), (_CD, _CR, _CB),
)
_EDGE_COLOR = (
    (_CU, _CR), (_CU, _CF), (_CU, _CL), (_CU, _CB),
    (_CD, _CR), (_CD, _CF), (_CD, _CL), (_CD, _CB),
    (_CF, _CR), (_CF, _CL), (_CB, _CL), (_CB, _CR),
)


def to_facelets(state: CubeState) -> list[int]:
    """Render the 54 sticker colors (0..5) from the piece representation."""
    f = [0] * FACELET_COUNT
    for face in range(6):
        f[9 * face + 4] = face  # centers never move
    for slot in range(8):
        cubie = state.corner_perm[slot]
        ori = state.corner_ori[slot]
        positions = _CORNER_FACELET[slot]
        colors = _CORNER_COLOR[cubie]
        for n in range(3):
            f[positions[(n + ori) % 3]] = colors[n]
    for slot in range(12):
        cubie = state.edge_perm[slot]
        ori = state.edge_ori[slot]
        positions = _EDGE_FACELET[slot]
        colors = _EDGE_COLOR[cubie]
        for n in range(2):
            f[positions[(n + ori) % 2]] = colors[n]
    return f


def encode_onehot(state: CubeState) -> np.ndarray:
    """54 stickers x 6 colors one-hot vector, length 324."""
    v = np.zeros(ONEHOT_WIDTH, dtype=np.float64)
    facelets = to_facelets(state)
    for pos, color in enumerate(facelets):
        v[COLOR_COUNT * pos + color] = 1.0
    return v


# --------------------------------------------------------------------------
# Validity.
# --------------------------------------------------------------------------

def _permutation_parity(perm) -> int:
    """0 for even, 1 for odd."""
    inversions = 0
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                inversions += 1
    return inversions & 1


def validate(state: CubeState) -> str | None:
    """Return ``None`` if valid, else a message naming the first violated
    invariant.  Accepts arbitrary field values."""
    if sorted(state.corner_perm) != list(range(8)):
        return "corner permutation is not a bijection on 0..7"
    if sorted(state.edge_perm) != list(range(12)):
        return "edge permutation is not a bijection on 0..11"
    if len(state.corner_ori) != 8 or any(o not in (0, 1, 2) for o in state.corner_ori):
        return "corner orientation values outside {0,1,2}"
    if sum(state.corner_ori) % 3 != 0:
        return "corner orientation sum is not 0 mod 3"
    if len(state.edge_ori) != 12 or any(o not in (0, 1) for o in state.edge_ori):
        return "edge orientation values outside {0,1}"
    if sum(state.edge_ori) % 2 != 0:
        return "edge orientation sum is not 0 mod 2"
    if _permutation_parity(state.corner_perm) != _permutation_parity(state.edge_perm):
        return "parity mismatch between corner and edge permutations"
    return None


def state_space_size() -> int:
    """Exact number of reachable cube states.

    Corners contribute 8! * 3^8 / 3 arrangements, edges 12! * 2^12 / 2, and
    only even overall permutations occur, halving the product:
    43 252 003 274 489 856 000.  (The commonly cited rounded figure ends in
    ...860 000; this is the exact integer value of the same product.)
    """
    corners = math.factorial(8) * 3**8 // 3
    edges = math.factorial(12) * 2**12 // 2
    return corners * edges // 2


# --------------------------------------------------------------------------
# Scrambling.
# --------------------------------------------------------------------------

def scramble(seed: int, depth: int) -> tuple[CubeState, tuple[Move, ...]]:
    """Deterministic random scramble of exactly ``depth`` quarter turns.

    Moves are drawn uniformly, except that a move is never immediately
    followed by its own inverse (same-face repeats are allowed), so the
    nominal depth is not trivially deflated.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    rng = random.Random(seed)
    moves = []
    state = _SOLVED
    previous = None
    for _ in range(depth):
        if previous is None:
            choices = MOVES
        else:
            banned = inverse(previous)
            choices = [m for m in MOVES if m != banned]
        move = choices[rng.randrange(len(choices))]
        moves.append(move)
        state = apply_move(state, move)
        previous = move
    return state, tuple(moves)
