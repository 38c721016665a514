import pytest

from codefusion import distance as dist
from codefusion.codes import seed, verify
from codefusion.environment import percept_key
from codefusion.symplectic import GeneratorMatrix, rref
from codefusion.tncode import (
    Action,
    FusionFailure,
    TensorNetworkCode,
    all_actions,
    allowed_actions,
    combine,
    format_network,
    fuse,
    parse_network,
    resolve_action,
)


def fresh_23_1():
    return combine([seed("five_qubit")] + [seed("six_qubit_state")] * 3)


class TestCombine:
    def test_23_1(self):
        tn = fresh_23_1()
        assert tn.code.signature() == (23, 1)
        assert tn.node_count == 4
        assert dist.distance(tn.code) == 3
        assert verify(tn.code).ok

    def test_28_2(self):
        tn = combine([seed("four_two_two")] + [seed("six_qubit_state")] * 4)
        assert tn.code.signature() == (28, 2)
        assert dist.distance(tn.code) == 2

    def test_21_2(self):
        tn = combine(
            [seed("ten_one_four"), seed("five_qubit"), seed("six_qubit_state")]
        )
        assert tn.code.signature() == (21, 2)
        assert dist.distance(tn.code) == 3

    def test_contiguous_node_assignment(self):
        tn = fresh_23_1()
        assert tn.live_qubits(0) == [1, 2, 3, 4, 5]
        assert tn.live_qubits(1) == [6, 7, 8, 9, 10, 11]

    def test_requires_a_seed(self):
        with pytest.raises(ValueError):
            combine([])


class TestActions:
    def test_fresh_network_has_all_pairs(self):
        tn = fresh_23_1()
        acts = allowed_actions(tn)
        assert len(acts) == 10
        assert set(acts) == set(all_actions(4))

    def test_empty_node_excluded(self):
        tn = fresh_23_1()
        node_of = tuple(0 if v == 2 else v for v in tn.node_of)
        moved = TensorNetworkCode(tn.code, 4, node_of)
        acts = allowed_actions(moved)
        assert all(2 not in (a.i, a.j) for a in acts)

    def test_single_qubit_node_excludes_self_fusion(self):
        tn = fresh_23_1()
        # strip node 1 down to one live qubit by reassigning the rest
        node_of = list(tn.node_of)
        for q in range(6, 11):
            node_of[q] = 0
        moved = TensorNetworkCode(tn.code, 4, tuple(node_of))
        acts = allowed_actions(moved)
        assert Action(1, 1) not in acts
        assert Action(1, 2) in acts and Action(0, 1) in acts

    def test_resolve_lowest_live(self):
        tn = fresh_23_1()
        assert resolve_action(tn, Action(0, 1)) == (1, 6)
        assert resolve_action(tn, Action(1, 1)) == (6, 7)

    def test_resolve_after_fusion(self):
        tn = fresh_23_1()
        fused = fuse(tn, 6, 7)
        assert not isinstance(fused, FusionFailure)
        # former qubits 8, 9 are now 6, 7; node 1's lowest live pair
        assert resolve_action(fused, Action(1, 1)) == (6, 7)
        assert fused.live_qubits(1) == [6, 7, 8, 9]

    def test_resolve_rejects_disallowed(self):
        tn = fresh_23_1()
        node_of = tuple(0 if v == 2 else v for v in tn.node_of)
        moved = TensorNetworkCode(tn.code, 4, node_of)
        with pytest.raises(ValueError):
            resolve_action(moved, Action(2, 3))


class TestFuse:
    def test_two_five_qubit_codes_give_8_2_3(self):
        tn = combine([seed("five_qubit"), seed("five_qubit")])
        found = False
        for qa in range(1, 6):
            for qb in range(6, 11):
                fused = fuse(tn, qa, qb)
                if isinstance(fused, FusionFailure):
                    continue
                assert fused.code.signature() == (8, 2)
                assert verify(fused.code).ok
                if dist.distance(fused.code) == 3:
                    found = True
        assert found

    def test_four_two_two_self_fusion_measures_logical(self):
        tn = combine([seed("four_two_two")])
        result = fuse(tn, 1, 2)
        assert isinstance(result, FusionFailure)
        assert result.reason == "measures_logical"

    def test_first_fusion_from_23_1(self):
        tn = fresh_23_1()
        for action in allowed_actions(tn):
            qa, qb = resolve_action(tn, action)
            fused = fuse(tn, qa, qb)
            assert not isinstance(fused, FusionFailure)
            assert fused.code.signature() == (21, 1)

    def test_success_invariants(self):
        tn = fresh_23_1()
        fused = fuse(tn, 1, 6)
        assert fused.code.n == tn.code.n - 2
        assert fused.code.k == tn.code.k
        assert fused.node_count == tn.node_count
        assert verify(fused.code).ok

    def test_symmetry(self):
        tn = fresh_23_1()
        a = fuse(tn, 3, 9)
        b = fuse(tn, 9, 3)
        assert percept_key(a.code) == percept_key(b.code)
        assert a.node_of == b.node_of

    def test_presentation_independent(self):
        tn = fresh_23_1()
        scrambled_stabs = rref(tn.code.stabilizers)
        from codefusion.codes import make_code

        alt_code = make_code(
            tn.code.n, tn.code.k, scrambled_stabs, tn.code.logical_x, tn.code.logical_z
        )
        alt = TensorNetworkCode(alt_code, tn.node_count, tn.node_of)
        a = fuse(tn, 2, 12)
        b = fuse(alt, 2, 12)
        assert percept_key(a.code) == percept_key(b.code)

    def test_fused_group_has_matching_preimage(self):
        from conftest import naive_group

        tn = combine([seed("five_qubit"), seed("five_qubit")])
        fused = fuse(tn, 5, 6)
        assert not isinstance(fused, FusionFailure)
        original = set(naive_group(tn.code.stabilizers.to_texts()))
        for g in naive_group(fused.code.stabilizers.to_texts()):
            # re-insert matching letters at positions 5 and 6 (1-based)
            candidates = [
                g[:4] + letter + letter + g[4:] for letter in "IXYZ"
            ]
            assert any(c in original for c in candidates)

    def test_rejects_equal_or_invalid_qubits(self):
        tn = fresh_23_1()
        with pytest.raises(ValueError):
            fuse(tn, 3, 3)
        with pytest.raises(Exception):
            fuse(tn, 0, 5)


class TestNetworkFormat:
    def test_round_trip(self):
        tn = fresh_23_1()
        fused = fuse(tn, 1, 6)
        text = format_network(fused)
        back = parse_network(text)
        assert back.code.signature() == fused.code.signature()
        assert back.node_of == fused.node_of
        assert format_network(back) == text
