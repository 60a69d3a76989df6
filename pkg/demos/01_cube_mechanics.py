"""
Cube states, quarter turns, and canonical keys
==============================================

The cube lives in a piece-level representation: a permutation plus an
orientation for the 8 corners and the 12 edges.  Twelve quarter turns
(R r L l U u D d F f B b, lowercase = counterclockwise) act on it.
"""

from wcdcube import (
    ACTION_LETTERS,
    apply_move,
    apply_moves,
    canonical_key,
    encode_onehot,
    format_moves,
    invert_sequence,
    parse_moves,
    scramble,
    solved_state,
    state_from_key,
    state_space_size,
    to_facelets,
    validate,
)

solved = solved_state()
print("solved corners:", solved.corner_perm, solved.corner_ori)
print("solved edges:  ", solved.edge_perm, solved.edge_ori)
print("action order:  ", " ".join(ACTION_LETTERS))

# Every face turn has order 4: applying it four times is the identity.
r = parse_moves("R R R R")
print("\nR four times returns to solved:", apply_moves(solved, r) == solved)

# The famous "sexy move" R U r u has order 6.
state = solved
for i in range(6):
    state = apply_moves(state, parse_moves("R U r u"))
print("(R U r u) six times returns to solved:", state == solved)

# Scrambles are deterministic in the seed and never stutter (a move is not
# immediately undone by its inverse).
state, moves = scramble(seed=42, depth=8)
print("\nscramble(42, 8):", format_moves(moves))

# Undo a scramble by replaying the inverted sequence in reverse.
undo = invert_sequence(moves)
print("undo sequence:  ", format_moves(undo))
print("applying undo returns to solved:", apply_moves(state, undo) == solved)

# canonical_key packs a state into 13 bytes; state_from_key restores it and
# refuses byte strings that decode to unreachable configurations.
key = canonical_key(state)
print("\ncanonical key:", key.hex())
print("round trip ok:", state_from_key(key) == state)

twisted = solved._replace(corner_ori=(1, 0, 0, 0, 0, 0, 0, 0))
print("single twisted corner is rejected:", validate(twisted))

# Sticker views: 54 facelets in 6 colors, and the flat 324-wide one-hot
# encoding used as network input.
facelets = to_facelets(state)
print("\nfacelet colors (9 per face):", facelets)
onehot = encode_onehot(state)
print("one-hot length and active bits:", onehot.shape[0], int(onehot.sum()))

# The reachable state space: 8! 12! 3^7 2^11 / 2.
print("\nreachable states:", state_space_size())
