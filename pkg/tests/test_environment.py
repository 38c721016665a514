import pytest

from codefusion import distance as dist
from codefusion.codes import make_code, seed
from codefusion.environment import (
    CodeTables,
    Environment,
    EnvironmentConfig,
    TableMissError,
    best_known_distance,
    percept_key,
)
from codefusion.symplectic import GeneratorMatrix, multiply
from codefusion.tncode import Action, FusionFailure, allowed_actions, combine, fuse


class TestCodeTables:
    @pytest.mark.parametrize("n,k,d", [(13, 1, 5), (11, 1, 5), (20, 2, 6)])
    def test_pinned_entries(self, n, k, d):
        assert best_known_distance(n, k) == d

    def test_covers_experiment_range(self):
        tables = CodeTables.bundled()
        for n in range(1, 41):
            for k in range(0, min(n, 4) + 1):
                assert (n, k) in tables.best

    def test_miss_raises(self):
        tables = CodeTables.bundled()
        with pytest.raises(TableMissError):
            tables.best_known_distance(99, 1)


class TestPerceptKey:
    def test_presentation_independent(self):
        code = seed("five_qubit")
        rows = list(code.stabilizers.rows)
        rows[0] = multiply(rows[0], rows[1])  # S1 -> S1*S2, same group
        alt = make_code(
            5, 1, GeneratorMatrix(5, tuple(rows)), code.logical_x, code.logical_z
        )
        assert percept_key(alt) == percept_key(code)

    def test_distinct_codes_distinct_keys(self):
        assert percept_key(seed("five_qubit")) != percept_key(seed("four_two_two"))

    def test_same_group_via_different_action_orders(self):
        # search small cases for two action orders reaching the same group
        tn = combine([seed("five_qubit"), seed("five_qubit")])
        seen = {}
        found = 0
        for first in ((1, 6), (2, 7), (1, 7), (2, 6)):
            mid = fuse(tn, *first)
            if isinstance(mid, FusionFailure):
                continue
            for second in ((1, 2), (1, 3), (2, 3)):
                final = fuse(mid, *second)
                if isinstance(final, FusionFailure):
                    continue
                key = percept_key(final.code)
                group = frozenset(
                    p.to_text()
                    for p in _expand(final.code.stabilizers)
                )
                marker = (group, tuple(p.to_text() for p in final.code.logical_x))
                if marker in seen:
                    assert seen[marker] == key
                    found += 1
                else:
                    seen[marker] = key
        assert found >= 1

    def test_caches_share_key(self):
        code = seed("five_qubit")
        d1 = dist.distance(code, cache_key=percept_key(code).key)
        assert d1 == dist.distance(code)


def _expand(matrix):
    from itertools import product

    from codefusion.symplectic import identity

    out = []
    for bits in product((0, 1), repeat=len(matrix.rows)):
        cur = identity(matrix.n)
        for bit, row in zip(bits, matrix.rows):
            if bit:
                cur = multiply(cur, row)
        out.append(cur)
    return out


SEEDS_23 = ("five_qubit",) + ("six_qubit_state",) * 3


class TestReset:
    def test_23_1(self):
        env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=5))
        out = env.reset()
        assert out.signature == (23, 1, 3)
        assert out.reward == 0
        assert not out.done
        assert len(out.allowed) == 10

    def test_28_2(self):
        env = Environment(
            EnvironmentConfig(
                seeds=("four_two_two",) + ("six_qubit_state",) * 4, steps=4
            )
        )
        out = env.reset()
        assert out.signature == (28, 2, 2)

    def test_config_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            EnvironmentConfig(seeds=SEEDS_23, steps=0)


class TestStep:
    def test_first_fusion_reward_zero(self):
        env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=5))
        out = env.reset()
        out = env.step(Action(0, 1))
        assert out.signature[:2] == (21, 1)
        assert out.signature[2] == 3
        assert out.reward == 0  # delta d = 0

    def test_failure_reward_and_termination(self):
        env = Environment(
            EnvironmentConfig(seeds=("four_two_two",), steps=1)
        )
        out = env.reset()
        d_old = out.signature[2]
        out = env.step(Action(0, 0))
        assert out.reward == -d_old
        assert out.done
        assert out.signature == (4, 2, d_old)  # state unchanged
        with pytest.raises(RuntimeError):
            env.step(Action(0, 0))

    def test_rejects_disallowed_action(self):
        env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=5))
        env.reset()
        with pytest.raises(ValueError):
            env.step(Action(0, 7))

    def test_done_after_s_steps(self):
        env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=2))
        out = env.reset()
        out = env.step(out.allowed[0])
        assert not out.done
        out = env.step(out.allowed[0])
        assert out.done

    def test_n_drops_by_two_k_constant(self):
        env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=4))
        out = env.reset()
        n, k = 23, 1
        while not out.done:
            out = env.step(out.allowed[-1])
            if out.reward <= -out.signature[2]:
                break
            n -= 2
            assert out.signature[:2] == (n, k)

    def test_plus_one_only_on_optimal_drop(self):
        # a drop to d_new == best(n_new, k) earns exactly +1
        env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=6))
        out = env.reset()
        d_prev = out.signature[2]
        saw_drop = False
        for _ in range(200):
            if out.done:
                out = env.reset()
                d_prev = out.signature[2]
            action = out.allowed[0]
            out = env.step(action)
            n, k, d = out.signature
            if out.reward == -d_prev and out.done:
                continue
            if d < d_prev:
                saw_drop = True
                if d == best_known_distance(n, k):
                    assert out.reward == 1
                else:
                    assert out.reward == d - d_prev
            else:
                assert out.reward == d - d_prev
            d_prev = d
        assert saw_drop

    def test_determinism(self):
        def run():
            env = Environment(EnvironmentConfig(seeds=SEEDS_23, steps=4))
            out = env.reset()
            trace = [out.signature]
            for _ in range(4):
                if out.done:
                    break
                out = env.step(out.allowed[2])
                trace.append((out.signature, out.reward, out.done))
            return trace

        assert run() == run()
