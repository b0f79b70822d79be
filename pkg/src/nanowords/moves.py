"""The rewrite system on nanowords: shift and homotopy moves.

Move schemata (capital letters are single letters, lower case letters are
arbitrary subwords; every nanoword is kept a valid Gauss word):

  shift  AxAy <-> xByB         the rotated letter flips type
  H1     xAAy <-> xy           any type
  H2     xAByBAz <-> xyz       A, B of opposite types
  H2a    xAByABz <-> xyz       A, B of opposite types
  H3     xAByACzBCt <-> xBAyCAzCBt   A, B, C of one type
  H3a    xAByCAzBCt <-> xBAyACzCBt   A, C of one type, B of the other
  H3b    xAByCAzCBt <-> xBAyACzBCt   A, B of one type, C of the other
  H3c    xAByACzCBt <-> xBAyCAzBCt   B, C of one type, A of the other

Every H3-family rewrite reverses the three matched adjacent pairs in
place, so both directions of each schema are realized by the same pair
swap applied to the two pattern shapes.

On top of the raw schemata this module provides the 3-class (closure
under shift and 3-moves), reducibility, and a greedy reduction driver
that repeatedly removes crossings until the 3-class is irreducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .words import (
    EMPTY,
    MAX_LETTERS,
    TYPE_A,
    TYPE_B,
    Nanoword,
    NanowordError,
    flip_type,
    normalize_increasing,
)

SHIFT = "shift"
H1 = "H1"
H2 = "H2"
H2A = "H2a"
H3 = "H3"
H3A = "H3a"
H3B = "H3b"
H3C = "H3c"

ALL_KINDS = frozenset({SHIFT, H1, H2, H2A, H3, H3A, H3B, H3C})
REMOVAL_KINDS = (H1, H2, H2A)
H3_KINDS = (H3, H3A, H3B, H3C)

FORWARD = "forward"
BACKWARD = "backward"
REMOVE = "remove"
INSERT = "insert"

DEFAULT_MAX_MEMBERS = 10**6
DEFAULT_MAX_STEPS = 10**7

_ALPHA = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class MoveError(ValueError):
    """A move instance does not (or no longer does) match its nanoword."""


class TruncationError(RuntimeError):
    """An exploration hit its limits; ``partial`` carries the best-so-far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class MoveInstance:
    """One applicable rewrite, pinned to concrete positions.

    For removals and H3 moves ``positions`` are the matched occurrence
    indices (for H3: the starts of the three adjacent pairs) and
    ``letters`` the matched letters.  For insertions ``positions`` are the
    insertion sites in the current word, ``letters`` the fresh letters and
    ``new_types`` their types.
    """

    kind: str
    direction: str
    positions: tuple[int, ...]
    letters: tuple[str, ...]
    new_types: tuple[str, ...] = ()


@dataclass(frozen=True)
class ThreeClass:
    """Closure of a nanoword under shift moves and 3-moves."""

    members: frozenset[Nanoword]
    min_member: Nanoword
    reducible: bool
    truncated: bool
    limit_hit: str | None = None
    max_members: int = DEFAULT_MAX_MEMBERS
    max_steps: int = DEFAULT_MAX_STEPS


# ---------------------------------------------------------------------------
# Internal state representation.
#
# A state is (word, types): the word as a tuple of letter indices in
# increasing normal form (letter k first occurs before letter k+1), the
# types as a tuple indexed by letter with 0 = a, 1 = b.  Tuple comparison
# on states is exactly the alphabetical order on nanowords.
# ---------------------------------------------------------------------------

State = tuple[tuple[int, ...], tuple[int, ...]]


def _norm(word_seq, type_of) -> State:
    index: dict = {}
    out = []
    for x in word_seq:
        if x not in index:
            index[x] = len(index)
        out.append(index[x])
    types = [0] * len(index)
    for x, k in index.items():
        types[k] = type_of[x]
    return tuple(out), tuple(types)


def _encode(nw: Nanoword) -> State:
    type_of = {x: 0 if t == TYPE_A else 1 for x, t in nw.type_map.items()}
    return _norm(nw.word, type_of)


def _decode(state: State) -> Nanoword:
    word, types = state
    return Nanoword(
        "".join(_ALPHA[x] for x in word),
        "".join(TYPE_A if t == 0 else TYPE_B for t in types),
    )


def _positions(word: tuple[int, ...]) -> list[tuple[int, int]]:
    first: dict[int, int] = {}
    pos: list[tuple[int, int]] = [(-1, -1)] * (len(word) // 2)
    for i, x in enumerate(word):
        if x in first:
            pos[x] = (first[x], i)
        else:
            first[x] = i
    return pos


def _shift_state(state: State) -> State:
    word, types = state
    x = word[0]
    new_types = dict(enumerate(types))
    new_types[x] ^= 1
    return _norm(word[1:] + (x,), new_types)


def _reducible_state(state: State) -> bool:
    word, types = state
    L = len(word)
    for r in range(L - 1):
        if word[r] == word[r + 1]:
            return True
    pos = _positions(word)
    for x, (i, j) in enumerate(pos):
        if i + 1 >= L:
            continue
        y = word[i + 1]
        if y == x or types[y] == types[x]:
            continue
        iy, jy = pos[y]
        if iy == i + 1 and (jy == j - 1 or jy == j + 1):
            return True
    return False


# The eight directed H3-family patterns.  Each match is a triple of
# disjoint adjacent pairs at positions (p, p+1), (q, q+1), (r, r+1) with
# p+1 < q and q+1 < r; the rewrite reverses all three pairs.  The letter
# roles (A, B, C) below follow the schema texts in the module docstring.
#
# _same(tA, tB, tC) encodes the type constraint for each schema.

def _h3_matches(word: tuple[int, ...], types, pos) -> list[tuple[str, str, int, int, int]]:
    L = len(word)
    out = []
    for p in range(L - 1):
        u, v = word[p], word[p + 1]
        if u == v:
            continue
        pu, pv = pos[u], pos[v]
        tu, tv = types[u], types[v]

        # Forward shapes: pair 1 is (A, B) with A = u, B = v, and this is
        # the first occurrence of both.
        if pu[0] == p and pv[0] == p + 1:
            A, B = u, v
            a2, b2 = pu[1], pv[1]
            tA, tB = tu, tv
            # H3: A(p,q) B(p+1,r) C(q+1,r+1), pairs (A,B)(A,C)(B,C)
            q = a2
            if q >= p + 2 and q + 1 < L:
                C = word[q + 1]
                if C != A and C != B and pos[C] == (q + 1, b2 + 1) and b2 >= q + 2:
                    r = b2
                    tC = types[C]
                    if tA == tB == tC:
                        out.append((H3, FORWARD, p, q, r))
            # H3a: A(p,q+1) B(p+1,r) C(q,r+1), pairs (A,B)(C,A)(B,C)
            q = a2 - 1
            if q >= p + 2:
                C = word[q]
                if C != A and C != B and pos[C][0] == q and pos[C][1] == b2 + 1 and b2 >= q + 2:
                    r = b2
                    tC = types[C]
                    if tA == tC != tB:
                        out.append((H3A, FORWARD, p, q, r))
            # H3b: A(p,q+1) B(p+1,r+1) C(q,r), pairs (A,B)(C,A)(C,B)
            q = a2 - 1
            if q >= p + 2:
                C = word[q]
                if C != A and C != B:
                    c2 = pos[C][1]
                    if pos[C][0] == q and c2 >= q + 2 and b2 == c2 + 1:
                        r = c2
                        tC = types[C]
                        if tA == tB != tC:
                            out.append((H3B, FORWARD, p, q, r))
            # H3c: A(p,q) B(p+1,r+1) C(q+1,r), pairs (A,B)(A,C)(C,B)
            q = a2
            if q >= p + 2 and q + 1 < L:
                C = word[q + 1]
                if C != A and C != B:
                    c2 = pos[C][1]
                    if pos[C][0] == q + 1 and c2 >= q + 2 and b2 == c2 + 1:
                        r = c2
                        tC = types[C]
                        if tB == tC != tA:
                            out.append((H3C, FORWARD, p, q, r))

        # Backward shapes: pair 1 is (B, A) with B = u, A = v.
        B, A = u, v
        tB, tA = tu, tv
        pa, pb = pos[A], pos[B]
        # H3 backward: pairs (B,A)(C,A)(C,B): A(p+1,q+1) B(p,r+1) C(q,r)
        if pa[0] == p + 1 and pb[0] == p:
            q = pa[1] - 1
            if q >= p + 2:
                C = word[q]
                if C != A and C != B:
                    c2 = pos[C][1]
                    if pos[C][0] == q and c2 >= q + 2 and pb[1] == c2 + 1:
                        r = c2
                        tC = types[C]
                        if tA == tB == tC:
                            out.append((H3, BACKWARD, p, q, r))
            # H3a backward: pairs (B,A)(A,C)(C,B): A(p+1,q) B(p,r+1) C(q+1,r)
            q = pa[1]
            if q >= p + 2 and q + 1 < L:
                C = word[q + 1]
                if C != A and C != B:
                    c2 = pos[C][1]
                    if pos[C][0] == q + 1 and c2 >= q + 2 and pb[1] == c2 + 1:
                        r = c2
                        tC = types[C]
                        if tA == tC != tB:
                            out.append((H3A, BACKWARD, p, q, r))
            # H3b backward: pairs (B,A)(A,C)(B,C): A(p+1,q) B(p,r) C(q+1,r+1)
            q = pa[1]
            if q >= p + 2 and q + 1 < L:
                C = word[q + 1]
                if C != A and C != B:
                    r = pb[1]
                    if r >= q + 2 and pos[C] == (q + 1, r + 1):
                        tC = types[C]
                        if tA == tB != tC:
                            out.append((H3B, BACKWARD, p, q, r))
            # H3c backward: pairs (B,A)(C,A)(B,C): A(p+1,q+1) B(p,r) C(q,r+1)
            q = pa[1] - 1
            if q >= p + 2:
                C = word[q]
                if C != A and C != B:
                    r = pb[1]
                    if r >= q + 2 and pos[C] == (q, r + 1):
                        tC = types[C]
                        if tB == tC != tA:
                            out.append((H3C, BACKWARD, p, q, r))
    return out


def _swap_pairs(word: tuple[int, ...], p: int, q: int, r: int) -> tuple[int, ...]:
    w = list(word)
    w[p], w[p + 1] = w[p + 1], w[p]
    w[q], w[q + 1] = w[q + 1], w[q]
    w[r], w[r + 1] = w[r + 1], w[r]
    return tuple(w)


def _h3_successors(state: State) -> list[State]:
    word, types = state
    pos = _positions(word)
    type_of = dict(enumerate(types))
    out = []
    for _, _, p, q, r in _h3_matches(word, types, pos):
        out.append(_norm(_swap_pairs(word, p, q, r), type_of))
    return out


def _neighbors(state: State) -> list[State]:
    if not state[0]:
        return []
    return [_shift_state(state)] + _h3_successors(state)


# ---------------------------------------------------------------------------
# Public move enumeration and application.
# ---------------------------------------------------------------------------


def shift_rotate(nw: Nanoword) -> Nanoword:
    """One raw shift: first letter rotated to the end, its type flipped.

    The result is *not* normalized; 2n successive rotations restore the
    nanoword (each letter is rotated twice, flipping its type twice).
    """
    if not nw.word:
        raise NanowordError("cannot shift the empty nanoword")
    x = nw.word[0]
    word = nw.word[1:] + x
    types = "".join(
        flip_type(t) if y == x else t for y, t in zip(nw.letters, nw.types)
    )
    return Nanoword(word, types)


def _removal_instances(nw: Nanoword, kinds) -> list[MoveInstance]:
    word = nw.word
    L = len(word)
    out = []
    if H1 in kinds:
        for r in range(L - 1):
            if word[r] == word[r + 1]:
                out.append(MoveInstance(H1, REMOVE, (r, r + 1), (word[r],)))
    if H2 in kinds or H2A in kinds:
        for x in nw.letters:
            i, j = nw.occurrences(x)
            if i + 1 >= L:
                continue
            y = word[i + 1]
            if y == x or nw.type_of(y) == nw.type_of(x):
                continue
            iy, jy = nw.occurrences(y)
            if iy != i + 1:
                continue
            if H2 in kinds and jy == j - 1:
                out.append(MoveInstance(H2, REMOVE, (i, i + 1, j - 1, j), (x, y)))
            if H2A in kinds and jy == j + 1:
                out.append(MoveInstance(H2A, REMOVE, (i, i + 1, j, j + 1), (x, y)))
    return out


def _fresh_letters(nw: Nanoword, k: int) -> tuple[str, ...]:
    used = set(nw.letters)
    fresh = [x for x in _ALPHA if x not in used][:k]
    if len(fresh) < k:
        raise NanowordError("no fresh letters left")
    return tuple(fresh)


def _insertion_instances(nw: Nanoword, kinds) -> list[MoveInstance]:
    L = len(nw.word)
    out = []
    if H1 in kinds and nw.crossings + 1 <= MAX_LETTERS:
        (x,) = _fresh_letters(nw, 1)
        for u in range(L + 1):
            for t in (TYPE_A, TYPE_B):
                out.append(MoveInstance(H1, INSERT, (u,), (x,), (t,)))
    if (H2 in kinds or H2A in kinds) and nw.crossings + 2 <= MAX_LETTERS:
        x, y = _fresh_letters(nw, 2)
        for u in range(L + 1):
            for v in range(u, L + 1):
                for ta in (TYPE_A, TYPE_B):
                    tb = flip_type(ta)
                    if H2 in kinds:
                        out.append(MoveInstance(H2, INSERT, (u, v), (x, y), (ta, tb)))
                    if H2A in kinds:
                        out.append(MoveInstance(H2A, INSERT, (u, v), (x, y), (ta, tb)))
    return out


def applicable_moves(
    nw: Nanoword,
    kinds=ALL_KINDS,
    allow_insertions: bool = False,
) -> list[MoveInstance]:
    """All matches of the requested schemata on ``nw``.

    Shift contributes exactly one (rotation) instance on a nonempty word.
    Insertion instances (backward H1/H2/H2a) are enumerated only when
    ``allow_insertions``; fresh letters are the next unused alphabet
    letters, with both types for H1 and opposite-type pairs for H2/H2a.
    """
    kinds = frozenset(kinds)
    out: list[MoveInstance] = []
    if SHIFT in kinds and nw.word:
        x = nw.word[0]
        out.append(MoveInstance(SHIFT, FORWARD, nw.occurrences(x), (x,)))
    out.extend(_removal_instances(nw, kinds))
    h3_wanted = kinds & set(H3_KINDS)
    if h3_wanted and nw.word:
        state_word = tuple(nw.word)
        types = nw.type_map
        pos = {x: nw.occurrences(x) for x in nw.letters}
        for kind, direction, p, q, r in _h3_matches(state_word, types, pos):
            if kind in h3_wanted:
                if direction == FORWARD:
                    letters = (nw.word[p], nw.word[p + 1], nw.word[q + 1] if kind in (H3, H3C) else nw.word[q])
                else:
                    letters = (nw.word[p + 1], nw.word[p], nw.word[q] if kind in (H3, H3C) else nw.word[q + 1])
                out.append(MoveInstance(kind, direction, (p, q, r), letters))
    if allow_insertions:
        out.extend(_insertion_instances(nw, kinds))
    return out


def apply_move(nw: Nanoword, m: MoveInstance) -> Nanoword:
    """Apply a move instance; the result is increasing-normalized.

    Raises :class:`MoveError` if the instance no longer matches ``nw``.
    """
    word = nw.word
    L = len(word)

    def check(cond):
        if not cond:
            raise MoveError(f"stale move {m} on {nw}")

    if m.kind == SHIFT:
        check(bool(word) and word[0] == m.letters[0])
        out = shift_rotate(nw)
    elif m.direction == REMOVE:
        check(all(0 <= i < L for i in m.positions))
        if m.kind == H1:
            r = m.positions[0]
            check(word[r] == word[r + 1] == m.letters[0])
            out = _delete_letters(nw, {m.letters[0]})
        else:
            x, y = m.letters
            check(nw.type_of(x) != nw.type_of(y))
            i, j = nw.occurrences(x)
            iy, jy = nw.occurrences(y)
            if m.kind == H2:
                check((i, iy, jy, j) == (m.positions[0], m.positions[1], m.positions[2], m.positions[3]))
                check(iy == i + 1 and jy == j - 1)
            else:
                check((i, iy, j, jy) == (m.positions[0], m.positions[1], m.positions[2], m.positions[3]))
                check(iy == i + 1 and jy == j + 1)
            out = _delete_letters(nw, {x, y})
    elif m.direction == INSERT:
        for x in m.letters:
            check(x not in nw.type_map)
        if m.kind == H1:
            (u,) = m.positions
            (x,) = m.letters
            check(0 <= u <= L)
            out = _insert(nw, [(u, x + x)], dict(zip(m.letters, m.new_types)))
        else:
            u, v = m.positions
            x, y = m.letters
            check(0 <= u <= v <= L)
            check(m.new_types[0] != m.new_types[1])
            second = x + y if m.kind == H2A else y + x
            out = _insert(nw, [(u, x + y), (v, second)], dict(zip(m.letters, m.new_types)))
    else:
        check(m.kind in H3_KINDS)
        p, q, r = m.positions
        check(0 <= p and r + 1 < L)
        pos = {x: nw.occurrences(x) for x in nw.letters}
        matches = {
            (kind, direction, pp, qq, rr)
            for kind, direction, pp, qq, rr in _h3_matches(tuple(word), nw.type_map, pos)
        }
        check((m.kind, m.direction, p, q, r) in matches)
        new_word = list(word)
        new_word[p], new_word[p + 1] = new_word[p + 1], new_word[p]
        new_word[q], new_word[q + 1] = new_word[q + 1], new_word[q]
        new_word[r], new_word[r + 1] = new_word[r + 1], new_word[r]
        out = Nanoword("".join(new_word), nw.types)
    normalized, _ = normalize_increasing(out)
    return normalized


def _delete_letters(nw: Nanoword, letters: set[str]) -> Nanoword:
    word = "".join(x for x in nw.word if x not in letters)
    kept = [x for x in nw.letters if x not in letters]
    types = "".join(nw.type_of(x) for x in kept)
    return Nanoword(word, types)


def _insert(nw: Nanoword, chunks: list[tuple[int, str]], new_types: dict[str, str]) -> Nanoword:
    # chunks: (site, text) with sites in the *current* word, ascending
    word = nw.word
    out = []
    prev = 0
    for site, text in chunks:
        out.append(word[prev:site])
        out.append(text)
        prev = site
    out.append(word[prev:])
    word = "".join(out)
    tmap = dict(nw.type_map)
    tmap.update(new_types)
    types = "".join(tmap[x] for x in sorted(tmap))
    return Nanoword(word, types)


def is_reducible(nw: Nanoword) -> bool:
    """True iff an H1, H2 or H2a removal matches ``nw`` as written."""
    return bool(_removal_instances(nw, REMOVAL_KINDS))


def three_class(
    nw: Nanoword,
    max_members: int = DEFAULT_MAX_MEMBERS,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> ThreeClass:
    """Breadth-first closure of ``nw`` under shift rotations and 3-moves.

    Every generated word is increasing-normalized before deduplication,
    so members are isomorphism classes.  Truncation is reported on the
    result, never raised.
    """
    start = _encode(nw)
    seen = {start}
    queue = deque([start])
    reducible = _reducible_state(start)
    steps = 0
    truncated = False
    limit_hit = None
    while queue:
        state = queue.popleft()
        for nxt in _neighbors(state):
            steps += 1
            if steps > max_steps:
                truncated, limit_hit = True, "steps"
                queue.clear()
                break
            if nxt in seen:
                continue
            if len(seen) >= max_members:
                truncated, limit_hit = True, "members"
                queue.clear()
                break
            seen.add(nxt)
            reducible = reducible or _reducible_state(nxt)
            queue.append(nxt)
    members = frozenset(_decode(s) for s in seen)
    return ThreeClass(
        members=members,
        min_member=_decode(min(seen)),
        reducible=reducible,
        truncated=truncated,
        limit_hit=limit_hit,
        max_members=max_members,
        max_steps=max_steps,
    )


def _one_reduction(nw: Nanoword) -> Nanoword:
    inst = _removal_instances(nw, REMOVAL_KINDS)[0]
    return apply_move(nw, inst)


def reduce_to_irreducible(
    nw: Nanoword,
    max_extra_letters: int = 0,
    max_members: int = DEFAULT_MAX_MEMBERS,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Nanoword:
    """Greedy descent to an irreducible 3-class; returns its minimal member.

    Explores the current 3-class; whenever a reducible member appears, a
    crossing-reducing move is applied to the smallest reducible member
    found and the search restarts from the smaller word.  Terminates
    because the letter count strictly decreases on every round.  With
    ``max_extra_letters > 0`` an irreducible class is additionally probed
    through insertion moves (bounded by the budget) for an escape to a
    smaller word; the default budget of 0 never inserts.

    Note the result is the minimal member of *an* irreducible 3-class of
    the input's homotopy class.  Distinct irreducible 3-classes of one
    homotopy class are not known to be impossible, so callers must compare
    results via invariants, not by word equality alone.
    """
    current, _ = normalize_increasing(nw)
    while True:
        state = _encode(current)
        seen = {state}
        queue = deque([state])
        steps = 0
        reducible_member: State | None = None
        if _reducible_state(state):
            reducible_member = state
        while queue and reducible_member is None:
            s = queue.popleft()
            for nxt in _neighbors(s):
                steps += 1
                if steps > max_steps or len(seen) >= max_members:
                    raise TruncationError(
                        f"3-class of {current} exceeded limits", partial=current
                    )
                if nxt in seen:
                    continue
                seen.add(nxt)
                if _reducible_state(nxt):
                    reducible_member = nxt
                    queue.clear()
                    break
                queue.append(nxt)
        if reducible_member is not None:
            current = _one_reduction(_decode(reducible_member))
            continue
        if max_extra_letters > 0:
            smaller = _escape_with_insertions(
                current, max_extra_letters, max_members, max_steps
            )
            if smaller is not None:
                current = smaller
                continue
        return _decode(min(seen))


def _escape_with_insertions(nw, budget, max_members, max_steps):
    # Full move graph (including insertions) bounded by letter budget,
    # hunting for any word with fewer letters than the start.
    limit = nw.crossings + budget
    start = _encode(nw)
    seen = {start}
    queue = deque([start])
    steps = 0
    while queue:
        s = queue.popleft()
        word = _decode(s)
        for m in applicable_moves(word, ALL_KINDS, allow_insertions=True):
            if m.direction == INSERT:
                added = 1 if m.kind == H1 else 2
                if word.crossings + added > limit:
                    continue
            nxt = _encode(apply_move(word, m))
            steps += 1
            if steps > max_steps or len(seen) >= max_members:
                raise TruncationError(
                    f"insertion search from {nw} exceeded limits", partial=nw
                )
            if nxt in seen:
                continue
            if len(nxt[1]) < nw.crossings:
                return _decode(nxt)
            seen.add(nxt)
            queue.append(nxt)
    return None
