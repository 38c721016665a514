import math

import numpy as np
import pytest

from codefusion.agent import AgentConfig, AgentNetwork
from codefusion.environment import PerceptKey
from codefusion.tncode import Action, all_actions

KEY_A = PerceptKey("a")
KEY_B = PerceptKey("b")


def make_agent(beta=1.0, eta=0.05, gamma=0.0, nodes=4):
    return AgentNetwork(nodes, AgentConfig(beta=beta, eta=eta, gamma=gamma))


class TestConfig:
    def test_rejects_nonpositive_beta(self):
        with pytest.raises(ValueError):
            AgentConfig(beta=0.0)

    def test_rejects_eta_out_of_range(self):
        with pytest.raises(ValueError):
            AgentConfig(eta=1.5)


class TestSelection:
    def test_fresh_row_uniform(self):
        agent = make_agent()
        allowed = all_actions(4)
        probs = agent.action_probabilities(KEY_A, allowed)
        assert np.allclose(probs, 1 / 10)

    def test_softmax_arithmetic(self):
        agent = make_agent(beta=1.0, nodes=2)  # 3 actions
        agent._row_for(KEY_A)
        agent.h[0, :] = [2.0, 1.0, 1.0]
        probs = agent.action_probabilities(KEY_A, all_actions(2))
        e = math.e
        expected = np.array([e**2, e, e]) / (e**2 + 2 * e)
        assert np.allclose(probs, expected, atol=1e-12)

    def test_disallowed_renormalization(self):
        agent = make_agent(nodes=1)
        agent2 = make_agent(beta=1.0, nodes=2)
        agent2._row_for(KEY_A)
        agent2.h[0, :] = [5.0, 1.0, 1.0]
        probs = agent2.action_probabilities(KEY_A, [Action(0, 0), Action(1, 1)])
        assert probs[1] == 0.0
        assert probs[0] + probs[2] == pytest.approx(1.0, abs=1e-12)
        # only the first action allowed -> probability 1
        probs = agent2.action_probabilities(KEY_A, [Action(0, 0)])
        assert probs[0] == 1.0

    def test_probabilities_sum_to_one(self):
        agent = make_agent(beta=3.7)
        agent._row_for(KEY_A)
        agent.h[0, :] = np.linspace(-50, 50, 10)
        probs = agent.action_probabilities(KEY_A, all_actions(4)[:7])
        assert abs(probs.sum() - 1.0) < 1e-12

    def test_shift_invariance(self):
        agent = make_agent(beta=0.8)
        agent._row_for(KEY_A)
        agent.h[0, :] = np.arange(10, dtype=float)
        base = agent.action_probabilities(KEY_A, all_actions(4))
        agent.h[0, :] += 123.456
        shifted = agent.action_probabilities(KEY_A, all_actions(4))
        assert np.allclose(base, shifted, atol=1e-12)

    def test_empty_allowed_rejected(self):
        agent = make_agent()
        with pytest.raises(ValueError):
            agent.select_action(KEY_A, [], np.random.default_rng(0))

    def test_new_percepts_get_fresh_rows(self):
        agent = make_agent()
        agent._row_for(KEY_A)
        agent.h[0, :] = 7.0
        row_b = agent._row_for(KEY_B)
        assert np.all(agent.h[row_b] == 1.0)
        assert np.all(agent.g[row_b] == 0.0)

    def test_row_growth_preserves_values(self):
        agent = make_agent()
        agent._row_for(KEY_A)
        agent.h[0, 3] = 9.0
        for i in range(200):
            agent._row_for(PerceptKey(f"k{i}"))
        assert agent.h[0, 3] == 9.0


class TestUpdates:
    def test_reward_two_moves_h_one_to_three(self):
        agent = make_agent(eta=0.0, gamma=0.0)
        agent.record_step(KEY_A, Action(0, 1))
        agent.update(2.0)
        row = agent.percepts[KEY_A.key]
        col = agent.action_index[Action(0, 1)]
        assert agent.h[row, col] == pytest.approx(3.0, abs=1e-12)

    def test_damping(self):
        agent = make_agent(eta=0.0, gamma=0.1)
        agent._row_for(KEY_A)
        agent.h[0, :] = 2.0
        agent.update(0.0)
        assert np.allclose(agent.h[0], 1.9, atol=1e-12)

    def test_glow_decay(self):
        agent = make_agent(eta=0.05)
        agent.record_step(KEY_A, Action(0, 0))
        agent.update(0.0)
        row = agent.percepts[KEY_A.key]
        assert agent.g[row, agent.action_index[Action(0, 0)]] == pytest.approx(
            0.95, abs=1e-12
        )

    def test_two_step_glow_pattern(self):
        agent = make_agent(eta=0.05)
        agent.record_step(KEY_A, Action(0, 0))
        agent.update(0.0)
        agent.record_step(KEY_B, Action(0, 1))
        row_a = agent.percepts[KEY_A.key]
        row_b = agent.percepts[KEY_B.key]
        assert agent.g[row_a, agent.action_index[Action(0, 0)]] == 0.95
        assert agent.g[row_b, agent.action_index[Action(0, 1)]] == 1.0

    def test_eta_one_forgets_earlier_edges(self):
        agent = make_agent(eta=1.0)
        agent.record_step(KEY_A, Action(0, 0))
        agent.update(0.0)
        agent.record_step(KEY_B, Action(0, 1))
        row_a = agent.percepts[KEY_A.key]
        assert agent.g[row_a, agent.action_index[Action(0, 0)]] == 0.0

    def test_zero_reward_zero_gamma_fixed_point(self):
        agent = make_agent(eta=0.05, gamma=0.0)
        rng = np.random.default_rng(3)
        for i in range(20):
            key = PerceptKey(f"p{i % 4}")
            action = agent.select_action(key, all_actions(4), rng)
            agent.record_step(key, action)
            agent.update(0.0)
        assert np.all(agent.h[: agent.rows] == 1.0)

    def test_end_trial_clears_glow_keeps_h(self):
        agent = make_agent()
        agent.record_step(KEY_A, Action(0, 1))
        agent.update(3.0)
        h_before = agent.h[: agent.rows].copy()
        agent.end_trial()
        assert np.all(agent.g[: agent.rows] == 0.0)
        assert np.array_equal(agent.h[: agent.rows], h_before)

    def test_fresh_agent_unchanged_by_end_trial(self):
        agent = make_agent()
        agent.end_trial()
        probs = agent.action_probabilities(KEY_A, all_actions(4))
        assert np.allclose(probs, 0.1)


class TestDeterminism:
    def test_fixed_seed_replay_bit_identical(self):
        def run():
            agent = make_agent()
            rng = np.random.default_rng(42)
            rewards = iter([0.0, 2.0, -1.0, 1.0, 0.0, 0.0, 3.0, -2.0])
            for i in range(8):
                key = PerceptKey(f"p{i % 3}")
                action = agent.select_action(key, all_actions(4)[: 5 + i % 3], rng)
                agent.record_step(key, action)
                agent.update(next(rewards))
            return agent.h[: agent.rows].tobytes(), agent.g[: agent.rows].tobytes()

        assert run() == run()
