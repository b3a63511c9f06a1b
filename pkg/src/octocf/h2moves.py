"""The reduced move system for quadrangulations with three quadrilaterals.

Up to relabeling and an orientation-reversing symmetry, the diagonal-changes
induction on three quadrilaterals visits only two gluing data:

    LEFT:   pi_l = (1,2)(3)   pi_r = (2,3)(1)
    RIGHT:  pi_l = (1,2,3)    pi_r = (2,3)(1)

Five moves connect them: the double right-staircase move toggling the nodes
in both directions, the single right-staircase self-loop, the full left
move combined with a cyclic relabeling (self-loop at RIGHT), and the
left/right symmetry combined with the relabeling 1<->3 (self-loop at LEFT).
Each carries a fixed 6x6 integer matrix acting on the wedge vectors in the
basis (1,l),(1,r),(2,l),(2,r),(3,l),(3,r).

Composing the stored per-sector move words yields the seven acceleration
matrices A1..A7: one octagon Farey step equals one such word of staircase
moves.  Matrices compose with later moves on the left (column vectors);
parity counts symmetry moves, matching the orientation behavior of the
renormalizing element of each sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import intmat
from .diagch import Side
from .numerics import Mat2, Vec2

__all__ = [
    "NodeId",
    "ReducedMove",
    "ReducedState",
    "apply_reduced",
    "MoveWord",
    "RawToken",
    "LetterToken",
    "SymmetryToken",
    "RelabelToken",
    "move_matrix",
    "compose_word",
    "sector_word",
    "sector_raw_word",
    "sector_raw_plan",
    "sector_matrix",
    "SECTOR_MATRICES",
    "Q_PRIME_PI_L",
    "Q_PRIME_PI_R",
]

#: Gluing data of the two reduced nodes (and of the octagon's base
#: quadrangulation, which sits at LEFT).
Q_PRIME_PI_L = (2, 1, 3)  # (1,2)(3)
Q_PRIME_PI_R = (1, 3, 2)  # (1)(2,3)
_RIGHT_PI_L = (2, 3, 1)  # (1,2,3)


class NodeId(Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def pi_l(self) -> tuple[int, ...]:
        return Q_PRIME_PI_L if self is NodeId.LEFT else _RIGHT_PI_L

    @property
    def pi_r(self) -> tuple[int, ...]:
        return Q_PRIME_PI_R


_M_RR_L_TO_R = intmat.freeze(
    [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 1],
    ]
)

_M_RR_R_TO_L = intmat.freeze(
    [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
)

_M_RDOT = intmat.freeze(
    [
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
)

_M_LLL = intmat.freeze(
    [
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 1],
        [1, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
    ]
)

_M_SYM = intmat.freeze(
    [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
    ]
)


class ReducedMove(Enum):
    """The five edges of the reduced move graph."""

    RR_L_TO_R = "rr_left_to_right"
    RR_R_TO_L = "rr_right_to_left"
    RDOT = "rdot"
    LLL_RELABEL = "lll_relabel"
    SYM_RELABEL = "sym_relabel"

    @property
    def matrix(self) -> intmat.IntMat:
        return _MOVE_MATRICES[self]

    @property
    def source(self) -> NodeId:
        return _TRANSITIONS[self][0]

    @property
    def target(self) -> NodeId:
        return _TRANSITIONS[self][1]

    @property
    def flips_orientation(self) -> bool:
        return self is ReducedMove.SYM_RELABEL


_MOVE_MATRICES = {
    ReducedMove.RR_L_TO_R: _M_RR_L_TO_R,
    ReducedMove.RR_R_TO_L: _M_RR_R_TO_L,
    ReducedMove.RDOT: _M_RDOT,
    ReducedMove.LLL_RELABEL: _M_LLL,
    ReducedMove.SYM_RELABEL: _M_SYM,
}

_TRANSITIONS = {
    ReducedMove.RR_L_TO_R: (NodeId.LEFT, NodeId.RIGHT),
    ReducedMove.RR_R_TO_L: (NodeId.RIGHT, NodeId.LEFT),
    ReducedMove.RDOT: (None, None),  # self-loop at either node
    ReducedMove.LLL_RELABEL: (NodeId.RIGHT, NodeId.RIGHT),
    ReducedMove.SYM_RELABEL: (NodeId.LEFT, NodeId.LEFT),
}


def move_matrix(m: ReducedMove) -> intmat.IntMat:
    return m.matrix


_REFLECTION = Mat2(-1, 0, 0, 1)


@dataclass(frozen=True)
class ReducedState:
    """A reduced-graph position: node, six wedge vectors, reflection parity.

    The vectors sit in basis order (1,l),(1,r),...,(3,r); after undoing the
    parity reflection they satisfy the train-track relations of the node's
    gluing data.
    """

    node: NodeId
    vecs: tuple[Vec2, ...]
    parity: int = 0

    def __post_init__(self):
        if len(self.vecs) != 6:
            raise ValueError("a reduced state carries six wedge vectors")
        if self.parity not in (0, 1):
            raise ValueError("parity is a reflection count mod 2")


def apply_reduced(state: ReducedState, move: ReducedMove) -> ReducedState:
    """One reduced move: matrix entries weight whole vectors; symmetry reflects.

    The move must be available from the state's node; the symmetry move
    additionally applies the planar reflection to every vector and flips the
    parity.
    """
    src = _TRANSITIONS[move][0]
    if src is not None and src is not state.node:
        raise ValueError(f"move {move.value} is not available from {state.node.value}")
    vecs = intmat.matvec(move.matrix, state.vecs)
    parity = state.parity
    if move.flips_orientation:
        vecs = tuple(_REFLECTION.apply(v) for v in vecs)
        parity ^= 1
    return ReducedState(_next_node(state.node, move), tuple(vecs), parity)


@dataclass(frozen=True)
class MoveWord:
    """A path in the reduced graph, starting node plus move sequence."""

    start: NodeId
    moves: tuple[ReducedMove, ...]

    def __post_init__(self):
        node = self.start
        for m in self.moves:
            src, _ = _TRANSITIONS[m]
            if src is not None and src is not node:
                raise ValueError(f"move {m.value} is not available from {node.value}")
            node = _next_node(node, m)

    def end(self) -> NodeId:
        node = self.start
        for m in self.moves:
            node = _next_node(node, m)
        return node


def _next_node(node: NodeId, m: ReducedMove) -> NodeId:
    if m is ReducedMove.RDOT:
        return node
    return _TRANSITIONS[m][1]


def compose_word(word: MoveWord) -> tuple[intmat.IntMat, int, NodeId]:
    """Product of the word's matrices (later moves on the left), parity, end node."""
    acc = intmat.identity(6)
    parity = 0
    for m in word.moves:
        acc = intmat.matmul(m.matrix, acc)
        if m.flips_orientation:
            parity ^= 1
    return acc, parity, word.end()


# -- raw per-sector words ------------------------------------------------------


@dataclass(frozen=True)
class LetterToken:
    """One simultaneous batch of staircase moves, marked by quadrilateral label.

    ``side`` PI_R batches run along cycles of pi_r (left vectors updated),
    side PI_L along cycles of pi_l (right vectors updated); the marked set
    must split exactly into cycles of the current permutation.
    """

    side: Side
    marked: tuple[int, ...]

    def as_string(self) -> str:
        letter = "r" if self.side is Side.PI_R else "l"
        return "".join(letter if i in self.marked else "\N{MIDDLE DOT}" for i in (1, 2, 3))


@dataclass(frozen=True)
class SymmetryToken:
    """Left/right exchange plus the unique relabeling closing up the gluing data.

    ``printed`` records whether the sector listing spells the symmetry out;
    the sixth sector's listing leaves its final symmetry implicit (an even
    sector must flip orientation once).
    """

    printed: bool = True

    def as_string(self) -> str:
        return "symmetry"


@dataclass(frozen=True)
class RelabelToken:
    """A pure relabeling of quadrilateral labels between staircase moves."""

    sigma: tuple[int, ...]


RawToken = LetterToken | SymmetryToken | RelabelToken

_R = Side.PI_R
_L = Side.PI_L

#: Token plans of the seven sector words on the base quadrangulation.  The
#: relabel tokens in sectors 3 and 5 carry label bookkeeping that the letter
#: strings leave implicit; the whole table is pinned by the requirement that
#: each word reproduce its sector matrix exactly.
_RAW_PLANS: dict[int, tuple[RawToken, ...]] = {
    1: (
        LetterToken(_R, (2, 3)),
        LetterToken(_R, (1,)),
        LetterToken(_R, (2, 3)),
    ),
    2: (
        LetterToken(_R, (2, 3)),
        LetterToken(_L, (1, 2, 3)),
        LetterToken(_R, (1, 3)),
        LetterToken(_R, (2,)),
        SymmetryToken(),
    ),
    3: (
        LetterToken(_R, (2, 3)),
        LetterToken(_L, (1, 2, 3)),
        RelabelToken((3, 1, 2)),  # 1->3, 2->1, 3->2
        LetterToken(_L, (1, 2, 3)),
        RelabelToken((3, 1, 2)),
        LetterToken(_R, (2, 3)),
    ),
    4: (
        LetterToken(_L, (3,)),
        LetterToken(_R, (2, 3)),
        LetterToken(_R, (2, 3)),
        LetterToken(_L, (1, 2)),
        LetterToken(_L, (1, 2)),
        LetterToken(_R, (1,)),
        SymmetryToken(),
    ),
    5: (
        LetterToken(_L, (3,)),
        LetterToken(_R, (2, 3)),
        LetterToken(_L, (1, 2, 3)),
        LetterToken(_R, (1, 3)),
        LetterToken(_L, (1,)),
        RelabelToken((3, 1, 2)),
    ),
    6: (
        LetterToken(_L, (1, 2)),
        LetterToken(_L, (3,)),
        LetterToken(_R, (1, 2, 3)),
        LetterToken(_L, (1, 3)),
        SymmetryToken(printed=False),
    ),
    7: (
        LetterToken(_L, (1, 2)),
        LetterToken(_L, (3,)),
        LetterToken(_L, (1, 2)),
        LetterToken(_L, (3,)),
    ),
}

_REDUCED_WORDS: dict[int, tuple[ReducedMove, ...]] = {
    1: (ReducedMove.RR_L_TO_R, ReducedMove.RDOT, ReducedMove.RR_R_TO_L),
    4: (
        ReducedMove.SYM_RELABEL,
        ReducedMove.RDOT,
        ReducedMove.SYM_RELABEL,
        ReducedMove.RR_L_TO_R,
        ReducedMove.RR_R_TO_L,
        ReducedMove.SYM_RELABEL,
        ReducedMove.RR_L_TO_R,
        ReducedMove.RR_R_TO_L,
        ReducedMove.SYM_RELABEL,
        ReducedMove.RDOT,
        ReducedMove.SYM_RELABEL,
    ),
    5: (
        ReducedMove.SYM_RELABEL,
        ReducedMove.RDOT,
        ReducedMove.SYM_RELABEL,
        ReducedMove.RR_L_TO_R,
        ReducedMove.LLL_RELABEL,
        ReducedMove.RR_R_TO_L,
        ReducedMove.SYM_RELABEL,
        ReducedMove.RDOT,
        ReducedMove.SYM_RELABEL,
    ),
    6: (
        ReducedMove.SYM_RELABEL,
        ReducedMove.RR_L_TO_R,
        ReducedMove.RDOT,
        ReducedMove.LLL_RELABEL,
        ReducedMove.RR_R_TO_L,
    ),
    7: (
        ReducedMove.SYM_RELABEL,
        ReducedMove.RR_L_TO_R,
        ReducedMove.RDOT,
        ReducedMove.RR_R_TO_L,
        ReducedMove.RDOT,
        ReducedMove.SYM_RELABEL,
    ),
}

SECTOR_MATRICES: dict[int, intmat.IntMat] = {
    1: intmat.freeze(
        [
            [1, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 1, 1, 0, 0, 1],
            [0, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 1, 1],
            [0, 0, 0, 0, 0, 1],
        ]
    ),
    2: intmat.freeze(
        [
            [1, 1, 0, 0, 0, 0],
            [1, 0, 0, 1, 1, 1],
            [0, 1, 1, 0, 0, 1],
            [1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1],
            [0, 2, 2, 0, 0, 1],
        ]
    ),
    3: intmat.freeze(
        [
            [0, 0, 0, 0, 1, 1],
            [1, 1, 1, 0, 0, 1],
            [1, 1, 1, 1, 1, 1],
            [1, 1, 0, 0, 1, 1],
            [1, 2, 2, 0, 0, 1],
            [0, 1, 1, 1, 1, 1],
        ]
    ),
    4: intmat.freeze(
        [
            [0, 0, 1, 0, 0, 1],
            [0, 1, 1, 0, 1, 1],
            [1, 1, 1, 1, 1, 1],
            [0, 1, 2, 0, 0, 1],
            [1, 2, 1, 0, 1, 1],
            [2, 1, 1, 1, 1, 1],
        ]
    ),
    5: intmat.freeze(
        [
            [0, 1, 1, 0, 0, 0],
            [0, 0, 1, 1, 1, 1],
            [1, 1, 1, 0, 1, 1],
            [0, 1, 2, 0, 0, 1],
            [1, 0, 1, 1, 1, 1],
            [2, 2, 1, 0, 1, 1],
        ]
    ),
    6: intmat.freeze(
        [
            [0, 0, 0, 1, 1, 0],
            [1, 1, 1, 0, 0, 0],
            [1, 1, 1, 0, 1, 1],
            [1, 0, 0, 1, 1, 0],
            [1, 1, 2, 0, 0, 1],
            [0, 0, 1, 0, 1, 1],
        ]
    ),
    7: intmat.freeze(
        [
            [1, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 0],
            [1, 0, 0, 1, 1, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 2, 0, 0, 1],
        ]
    ),
}


def sector_matrix(i: int) -> intmat.IntMat:
    """The acceleration matrix of sector i, verbatim."""
    _check_sector(i)
    return SECTOR_MATRICES[i]


def sector_raw_plan(i: int) -> tuple[RawToken, ...]:
    """The executable token plan of sector i's word on the base quadrangulation."""
    _check_sector(i)
    return _RAW_PLANS[i]


def sector_raw_word(i: int) -> list[str]:
    """The printed move strings of sector i's word (relabelings are silent)."""
    _check_sector(i)
    out = []
    for token in _RAW_PLANS[i]:
        if isinstance(token, LetterToken):
            out.append(token.as_string())
        elif isinstance(token, SymmetryToken) and token.printed:
            out.append(token.as_string())
    return out


def sector_word(i: int) -> MoveWord:
    """The reduced-graph word of sector i; sectors 2 and 3 have none stored."""
    _check_sector(i)
    if i not in _REDUCED_WORDS:
        raise KeyError(f"sector {i} carries a raw word only")
    return MoveWord(NodeId.LEFT, _REDUCED_WORDS[i])


def has_reduced_word(i: int) -> bool:
    _check_sector(i)
    return i in _REDUCED_WORDS


def sector_parity(i: int) -> int:
    """1 when the sector word reverses orientation (even sectors), else 0."""
    _check_sector(i)
    return sum(1 for t in _RAW_PLANS[i] if isinstance(t, SymmetryToken)) % 2


def _check_sector(i: int) -> None:
    if i not in range(1, 8):
        raise ValueError(f"sector index must be 1..7, got {i}")
