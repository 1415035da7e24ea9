"""BB84 eavesdropping game: interception statistics, payoffs, batching."""
import math
from fractions import Fraction

import numpy as np
import pytest

from qgames import GameConfig, RandomStream
from qgames import games
from qgames.games import bb84
from qgames.games.base import (BB84, TEAM1_RECEIVER, TEAM1_SENDER, TEAM2_EVE,
                               IllegalMove, OutOfTurn)
from qgames.policies import EveInterceptAll, EvePassAll, build_profile

from conftest import assert_no_hidden_quantum_data, play_trial


def exact_detection_probability(n: int, k: int) -> float:
    """Binomial-sift oracle: each checked bit errs with probability 1/4.

    Sums over the sift-count distribution, so short sifts (fewer than k
    matched bases) are handled exactly.
    """
    total = Fraction(0)
    for s in range(n + 1):
        p_s = Fraction(math.comb(n, s), 2 ** n)
        total += p_s * (1 - Fraction(3, 4) ** min(k, s))
    return float(total)


class TestProtocolMechanics:
    def test_eve_moves_then_receiver_declares(self):
        cfg = GameConfig(bb84_n_photons=4, bb84_check_bits=2)
        rng = RandomStream(50, 0)
        s = games.new_game(BB84, cfg, rng)
        assert s.to_move == TEAM2_EVE
        for _ in range(4):
            s = games.apply_move(s, TEAM2_EVE, bb84.PASS_PHOTON, rng)
        assert s.to_move == TEAM1_RECEIVER
        s = games.apply_move(s, TEAM1_RECEIVER, bb84.DeclareClean(), rng)
        assert s.terminal

    def test_out_of_turn_declaration(self):
        cfg = GameConfig(bb84_n_photons=4, bb84_check_bits=2)
        rng = RandomStream(50, 1)
        s = games.new_game(BB84, cfg, rng)
        with pytest.raises(OutOfTurn):
            games.apply_move(s, TEAM1_RECEIVER, bb84.DeclareClean(), rng)

    def test_declaring_with_a_photon_move_is_illegal(self):
        cfg = GameConfig(bb84_n_photons=2, bb84_check_bits=1)
        rng = RandomStream(50, 2)
        s = games.new_game(BB84, cfg, rng)
        s = games.apply_move(s, TEAM2_EVE, bb84.PASS_PHOTON, rng)
        s = games.apply_move(s, TEAM2_EVE, bb84.PASS_PHOTON, rng)
        with pytest.raises(IllegalMove):
            games.apply_move(s, TEAM1_RECEIVER, bb84.PASS_PHOTON, rng)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            GameConfig(bb84_n_photons=8, bb84_check_bits=9)


class TestBatchedEqualsStepped:
    def test_bitwise_identical_final_states(self):
        cfg = GameConfig(bb84_n_photons=24, bb84_check_bits=8)
        for trial in range(100):
            rng1, rng2 = RandomStream(51, trial), RandomStream(51, trial)
            eve = EveInterceptAll()
            s1 = games.new_game(BB84, cfg, rng1)
            s2 = games.new_game(BB84, cfg, rng2)
            plan = eve.plan(24, rng1)
            plan2 = eve.plan(24, rng2)
            for m in plan:
                s1 = games.apply_move(s1, TEAM2_EVE, m, rng1)
            s2 = games.apply_moves(s2, TEAM2_EVE, plan2, rng2)
            assert s1.eve_actions == s2.eve_actions
            assert np.array_equal(s1.recv_bits, s2.recv_bits)
            assert np.array_equal(s1.check_idx, s2.check_idx)
            assert s1.check_errors == s2.check_errors
            assert len(s1.move_log) == len(s2.move_log)


class TestInterceptionStatistics:
    def test_checked_bit_error_rate_is_one_quarter(self):
        cfg = GameConfig()
        rng = RandomStream(52, 0)
        eve = EveInterceptAll()
        errors = checked = 0
        for trial in range(4_000):
            rng.reset_trial(trial)
            s = games.new_game(BB84, cfg, rng)
            s = games.apply_moves(s, TEAM2_EVE,
                                  eve.plan(cfg.bb84_n_photons, rng), rng)
            errors += s.check_errors
            checked += len(s.check_idx)
        rate = errors / checked
        assert abs(rate - 0.25) < 4 * math.sqrt(0.25 * 0.75 / checked)

    def test_detection_probability_with_sixteen_check_bits(self):
        cfg = GameConfig()  # 64 photons, 16 check bits
        profile = build_profile(BB84, cfg)
        rng = RandomStream(53, 0)
        n = 20_000
        detected = 0
        for trial in range(n):
            rng.reset_trial(trial)
            s = play_trial(BB84, profile, cfg, rng)
            detected += s.declared == "eavesdropping"
        expected = exact_detection_probability(64, 16)
        assert expected == pytest.approx(1 - 0.75 ** 16, abs=1e-6)
        assert abs(detected / n - expected) < 0.01

    def test_passive_eve_never_trips_the_alarm(self):
        cfg = GameConfig()
        profile = build_profile(BB84, cfg, eve="pass-all")
        rng = RandomStream(54, 0)
        for trial in range(10_000):
            rng.reset_trial(trial)
            s = play_trial(BB84, profile, cfg, rng)
            assert s.check_errors == 0
            assert s.declared == "clean"
            result = games.payoff(s)
            assert result.by_role[TEAM1_SENDER] >= 0.0


class TestPayoffs:
    def test_false_alarm_is_penalized(self):
        cfg = GameConfig()
        rng = RandomStream(55, 0)
        s = games.new_game(BB84, cfg, rng)
        s = games.apply_moves(s, TEAM2_EVE,
                              EvePassAll().plan(cfg.bb84_n_photons, rng), rng)
        s = games.apply_move(s, TEAM1_RECEIVER, bb84.DeclareEavesdropping(), rng)
        result = games.payoff(s)
        assert result.by_role[TEAM1_SENDER] == -cfg.payoffs.false_alarm_penalty
        assert result.by_role[TEAM1_RECEIVER] == -cfg.payoffs.false_alarm_penalty
        assert games.outcome(s)["win"] is False

    def test_catching_a_real_tap_is_rewarded(self):
        cfg = GameConfig()
        rng = RandomStream(56, 0)
        found = False
        for trial in range(50):
            rng.reset_trial(trial)
            s = games.new_game(BB84, cfg, rng)
            s = games.apply_moves(
                s, TEAM2_EVE, EveInterceptAll().plan(cfg.bb84_n_photons, rng),
                rng)
            if s.check_errors > 0:
                s = games.apply_move(s, TEAM1_RECEIVER,
                                     bb84.DeclareEavesdropping(), rng)
                assert games.payoff(s).by_role[TEAM1_SENDER] == \
                    cfg.payoffs.catch_reward
                found = True
                break
        assert found

    def test_eve_scores_correct_key_bits_on_missed_taps(self):
        cfg = GameConfig()
        rng = RandomStream(57, 0)
        scored = 0
        for trial in range(3_000):
            rng.reset_trial(trial)
            s = games.new_game(BB84, cfg, rng)
            s = games.apply_moves(
                s, TEAM2_EVE, EveInterceptAll().plan(cfg.bb84_n_photons, rng),
                rng)
            if s.check_errors == 0:  # undetected interception
                s = games.apply_move(s, TEAM1_RECEIVER, bb84.DeclareClean(),
                                     rng)
                result = games.payoff(s)
                assert result.by_role[TEAM2_EVE] > 0
                scored += 1
        assert scored > 0

    def test_eve_guesses_match_sender_bits_when_bases_agree(self):
        cfg = GameConfig(bb84_n_photons=32, bb84_check_bits=8)
        rng = RandomStream(58, 0)
        s = games.new_game(BB84, cfg, rng)
        s = games.apply_moves(
            s, TEAM2_EVE, EveInterceptAll().plan(32, rng), rng)
        eve_bases = (np.array(s.eve_actions) == 2)
        same = eve_bases == s.send_bases.astype(bool)
        assert np.array_equal(s.eve_bits[same], s.send_bits[same])


class TestViews:
    def test_eve_outcomes_hidden_until_transmission_ends(self):
        cfg = GameConfig(bb84_n_photons=4, bb84_check_bits=2)
        rng = RandomStream(59, 0)
        s = games.new_game(BB84, cfg, rng)
        s = games.apply_move(s, TEAM2_EVE, bb84.INTERCEPT_RECT, rng)
        view = games.view(s, TEAM2_EVE)
        assert "your_outcomes" not in view
        assert "announced" not in view
        for _ in range(3):
            s = games.apply_move(s, TEAM2_EVE, bb84.INTERCEPT_RECT, rng)
        view = games.view(s, TEAM2_EVE)
        assert "your_outcomes" in view and "announced" in view

    def test_receiver_sees_comparison_but_not_eve_actions(self):
        cfg = GameConfig(bb84_n_photons=8, bb84_check_bits=3)
        rng = RandomStream(60, 0)
        s = games.new_game(BB84, cfg, rng)
        s = games.apply_moves(s, TEAM2_EVE, EvePassAll().plan(8, rng), rng)
        view = games.view(s, TEAM1_RECEIVER)
        assert view["announced"]["check_errors"] == 0
        assert "your_actions" not in view
        assert_no_hidden_quantum_data(view)

    def test_sender_never_sees_receiver_raw_bits(self):
        cfg = GameConfig(bb84_n_photons=8, bb84_check_bits=3)
        rng = RandomStream(61, 0)
        s = games.new_game(BB84, cfg, rng)
        s = games.apply_moves(s, TEAM2_EVE, EvePassAll().plan(8, rng), rng)
        view = games.view(s, TEAM1_SENDER)
        assert view["your_bits"] == [int(b) for b in s.send_bits]
