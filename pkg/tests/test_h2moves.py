"""Reduced move system: the five matrices, words, and the seven sector matrices."""

import pytest

from octocf import intmat
from octocf.h2moves import (
    LetterToken,
    MoveWord,
    NodeId,
    ReducedMove,
    SymmetryToken,
    compose_word,
    has_reduced_word,
    move_matrix,
    sector_matrix,
    sector_parity,
    sector_raw_plan,
    sector_raw_word,
    sector_word,
)

MD = "\N{MIDDLE DOT}"


class TestMoveMatrices:
    def test_rr_left_to_right_rows(self):
        m = move_matrix(ReducedMove.RR_L_TO_R)
        assert m[2] == (0, 1, 1, 0, 0, 0)  # (2,l) += (1,r)
        assert m[4] == (0, 0, 0, 0, 1, 1)  # (3,l) += (3,r)

    def test_sym_is_antidiagonal_involution(self):
        s = move_matrix(ReducedMove.SYM_RELABEL)
        assert all(s[i][5 - i] == 1 for i in range(6))
        assert intmat.matmul(s, s) == intmat.identity(6)

    def test_rdot_same_at_both_nodes(self):
        assert move_matrix(ReducedMove.RDOT)[0] == (1, 0, 0, 1, 0, 0)

    def test_determinants_and_nonnegativity(self):
        for move in ReducedMove:
            m = move_matrix(move)
            assert intmat.det(m) in (-1, 1)
            assert all(x >= 0 for row in m for x in row)

    def test_transitions(self):
        assert ReducedMove.RR_L_TO_R.source is NodeId.LEFT
        assert ReducedMove.RR_L_TO_R.target is NodeId.RIGHT
        assert ReducedMove.LLL_RELABEL.source is NodeId.RIGHT
        assert ReducedMove.SYM_RELABEL.source is NodeId.LEFT


class TestMoveWords:
    def test_invalid_transition_rejected(self):
        with pytest.raises(ValueError):
            MoveWord(NodeId.LEFT, (ReducedMove.RR_R_TO_L,))
        with pytest.raises(ValueError):
            MoveWord(NodeId.RIGHT, (ReducedMove.SYM_RELABEL,))

    def test_sector_one_word_composes_to_a1(self):
        matrix, parity, end = compose_word(sector_word(1))
        assert matrix == sector_matrix(1)
        assert parity == 0 and end is NodeId.LEFT

    @pytest.mark.parametrize("i", [1, 4, 5, 6, 7])
    def test_reduced_words_compose_to_sector_matrices(self, i):
        matrix, parity, end = compose_word(sector_word(i))
        assert matrix == sector_matrix(i)
        assert parity == sector_parity(i)
        assert end is NodeId.LEFT

    def test_sectors_without_reduced_words(self):
        for i in (2, 3):
            assert not has_reduced_word(i)
            with pytest.raises(KeyError):
                sector_word(i)

    def test_sector_seven_parity(self):
        _, parity, _ = compose_word(sector_word(7))
        assert parity == 0

    def test_sector_four_parity_counts_five_symmetries(self):
        word = sector_word(4)
        assert sum(1 for m in word.moves if m is ReducedMove.SYM_RELABEL) == 5
        assert compose_word(word)[1] == 1


class TestRawWords:
    def test_printed_strings(self):
        assert sector_raw_word(1) == [f"{MD}rr", f"r{MD}{MD}", f"{MD}rr"]
        assert sector_raw_word(6) == [f"ll{MD}", f"{MD}{MD}l", "rrr", f"l{MD}l"]
        assert sector_raw_word(2) == [
            f"{MD}rr",
            "lll",
            f"r{MD}r",
            f"{MD}r{MD}",
            "symmetry",
        ]
        assert sector_raw_word(7) == [f"ll{MD}", f"{MD}{MD}l", f"ll{MD}", f"{MD}{MD}l"]

    def test_even_sector_plans_flip_orientation_once(self):
        for i in range(1, 8):
            syms = [t for t in sector_raw_plan(i) if isinstance(t, SymmetryToken)]
            assert len(syms) == (1 if i % 2 == 0 else 0)
            assert sector_parity(i) == (1 if i % 2 == 0 else 0)

    def test_sector_six_symmetry_is_implicit(self):
        assert "symmetry" not in sector_raw_word(6)
        assert any(
            isinstance(t, SymmetryToken) and not t.printed for t in sector_raw_plan(6)
        )

    def test_letter_tokens_render_positionally(self):
        token = LetterToken(side=next(iter({t.side for t in sector_raw_plan(1) if isinstance(t, LetterToken)})), marked=(2, 3))
        assert token.as_string() == f"{MD}rr"


class TestSectorMatrices:
    def test_a1_row(self):
        assert sector_matrix(1)[2] == (0, 1, 1, 0, 0, 1)

    def test_a7_row(self):
        assert sector_matrix(7)[5] == (0, 0, 2, 0, 0, 1)

    def test_unimodular(self):
        for i in range(1, 8):
            assert abs(intmat.det(sector_matrix(i))) == 1

    def test_determinant_sign_matches_parity(self):
        for i in range(1, 8):
            expected = -1 if i % 2 == 0 else 1
            assert intmat.det(sector_matrix(i)) == expected

    def test_bad_sector_index(self):
        with pytest.raises(ValueError):
            sector_matrix(0)
        with pytest.raises(ValueError):
            sector_raw_word(8)


class TestCrossModuleConsistency:
    def test_reduced_matrices_equal_elementary_matrices_at_their_nodes(self):
        from octocf.diagch import CombDatum, Side, elementary_matrix

        left = CombDatum(3, NodeId.LEFT.pi_l, NodeId.LEFT.pi_r)
        right = CombDatum(3, NodeId.RIGHT.pi_l, NodeId.RIGHT.pi_r)
        assert move_matrix(ReducedMove.RR_L_TO_R) == elementary_matrix(
            left, (2, 3), Side.PI_R
        )
        assert move_matrix(ReducedMove.RR_R_TO_L) == elementary_matrix(
            right, (2, 3), Side.PI_R
        )
        assert move_matrix(ReducedMove.RDOT) == elementary_matrix(left, (1,), Side.PI_R)
        assert move_matrix(ReducedMove.RDOT) == elementary_matrix(right, (1,), Side.PI_R)

    def test_node_transitions_of_the_double_staircase_move(self):
        from octocf.diagch import CombDatum, perm_cycles

        left = CombDatum(3, NodeId.LEFT.pi_l, NodeId.LEFT.pi_r)
        # cycle (2,3) of pi_r: pi_l becomes the 3-cycle of the right node
        pi_l = list(left.pi_l)
        for i in (2, 3):
            pi_l[i - 1] = left.pi_l[left.pi_r[i - 1] - 1]
        assert tuple(pi_l) == NodeId.RIGHT.pi_l
        # the single-quadrilateral cycle is a self-loop on the gluing data
        pi_l2 = list(NodeId.RIGHT.pi_l)
        pi_l2[0] = NodeId.RIGHT.pi_l[NodeId.RIGHT.pi_r[0] - 1]
        assert tuple(pi_l2) == NodeId.RIGHT.pi_l
        assert perm_cycles(NodeId.RIGHT.pi_l) == ((1, 2, 3),)


class TestReducedState:
    def _base(self):
        from octocf.h2moves import ReducedState
        from octocf.octagon import QPRIME_VECTORS

        return ReducedState(NodeId.LEFT, QPRIME_VECTORS)

    def test_double_staircase_goes_left_to_right(self):
        from octocf.h2moves import apply_reduced

        after = apply_reduced(self._base(), ReducedMove.RR_L_TO_R)
        assert after.node is NodeId.RIGHT
        assert after.parity == 0

    def test_rdot_self_loops(self):
        from octocf.h2moves import apply_reduced

        state = apply_reduced(self._base(), ReducedMove.RR_L_TO_R)
        after = apply_reduced(state, ReducedMove.RDOT)
        assert after.node is NodeId.RIGHT

    def test_symmetry_self_loops_and_reflects(self):
        from octocf.h2moves import apply_reduced

        state = self._base()
        after = apply_reduced(state, ReducedMove.SYM_RELABEL)
        assert after.node is NodeId.LEFT
        assert after.parity == 1
        twice = apply_reduced(after, ReducedMove.SYM_RELABEL)
        assert twice.parity == 0
        assert twice.vecs == state.vecs

    def test_invalid_move_rejected(self):
        from octocf.h2moves import apply_reduced

        with pytest.raises(ValueError):
            apply_reduced(self._base(), ReducedMove.LLL_RELABEL)

    def test_sector_word_applied_to_vectors_matches_matrix(self):
        from octocf.h2moves import apply_reduced
        from octocf import intmat

        state = self._base()
        for move in sector_word(1).moves:
            state = apply_reduced(state, move)
        expected = intmat.matvec(sector_matrix(1), self._base().vecs)
        assert state.vecs == expected
