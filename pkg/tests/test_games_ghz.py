"""GHZ game: question draw, win predicate, perfect quantum play, no-comms."""
import inspect
import math

import pytest

from qgames import GameConfig, RandomStream
from qgames import games
from qgames.games import ghz
from qgames.games.base import (GHZ, PLAYER1, PLAYER2, PLAYER3, REFEREE,
                               IllegalMove, OutOfTurn)
from qgames.policies import (GhzQuantumTeam, GhzTablePlayer, GhzTeamPlayer,
                             build_profile)

from conftest import four_sigma, play_trial


class TestSetup:
    def test_question_triple_from_the_four_element_set(self):
        cfg = GameConfig()
        for trial in range(200):
            s = games.new_game(GHZ, cfg, RandomStream(42, trial))
            assert s.questions in ghz.QUESTION_TRIPLES

    def test_questions_drawn_uniformly(self):
        cfg = GameConfig()
        counts = {q: 0 for q in ghz.QUESTION_TRIPLES}
        n = 20_000
        rng = RandomStream(40, 0)
        for trial in range(n):
            rng.reset_trial(trial)
            counts[games.new_game(GHZ, cfg, rng).questions] += 1
        for q, c in counts.items():
            assert abs(c / n - 0.25) < four_sigma(0.25, n)

    def test_turn_order(self):
        cfg = GameConfig()
        rng = RandomStream(41, 0)
        s = games.new_game(GHZ, cfg, rng)
        assert s.to_move == PLAYER1
        s = games.apply_move(s, PLAYER1, ghz.Answer(1), rng)
        assert s.to_move == PLAYER2
        with pytest.raises(OutOfTurn):
            games.apply_move(s, PLAYER1, ghz.Answer(1), rng)

    def test_bad_answer_value(self):
        cfg = GameConfig()
        rng = RandomStream(41, 1)
        s = games.new_game(GHZ, cfg, rng)
        with pytest.raises(IllegalMove):
            games.apply_move(s, PLAYER1, ghz.Answer(0), rng)


class TestWinPredicate:
    def test_xxx_needs_positive_product(self):
        assert ghz.win_predicate(("x", "x", "x"), (1, 1, 1))
        assert ghz.win_predicate(("x", "x", "x"), (-1, -1, 1))
        assert not ghz.win_predicate(("x", "x", "x"), (-1, 1, 1))

    def test_other_questions_need_negative_product(self):
        assert ghz.win_predicate(("x", "y", "y"), (-1, 1, 1))
        assert not ghz.win_predicate(("y", "x", "y"), (1, 1, 1))


class TestQuantumTeam:
    def test_perfect_play_over_ten_thousand_trials(self):
        cfg = GameConfig()
        profile = build_profile(GHZ, cfg)
        rng = RandomStream(42, 0)
        for trial in range(10_000):
            rng.reset_trial(trial)
            s = play_trial(GHZ, profile, cfg, rng)
            assert s.win is True

    def test_answers_are_plus_minus_one(self):
        cfg = GameConfig()
        profile = build_profile(GHZ, cfg)
        rng = RandomStream(43, 0)
        s = play_trial(GHZ, profile, cfg, rng)
        assert set(s.answers) <= {1, -1}


class TestClassicalTeams:
    def test_best_table_wins_three_quarters(self):
        cfg = GameConfig()
        profile = build_profile(GHZ, cfg, players="classical-best")
        rng = RandomStream(44, 0)
        n = 20_000
        wins = 0
        for trial in range(n):
            rng.reset_trial(trial)
            wins += play_trial(GHZ, profile, cfg, rng).win
        assert abs(wins / n - 0.75) < four_sigma(0.75, n)

    def test_constant_answers_win_one_quarter(self):
        cfg = GameConfig()
        profile = build_profile(GHZ, cfg, players="classical-constant")
        rng = RandomStream(45, 0)
        n = 20_000
        wins = 0
        for trial in range(n):
            rng.reset_trial(trial)
            wins += play_trial(GHZ, profile, cfg, rng).win
        assert abs(wins / n - 0.25) < four_sigma(0.25, n)


class TestNoCommunication:
    def test_answer_functions_take_only_own_question(self):
        # Structural rule: a player's answer callable accepts exactly
        # (question, rng); there is no argument through which another
        # player's question could arrive.
        for cls in (GhzTeamPlayer, GhzTablePlayer):
            params = list(inspect.signature(cls.answer).parameters)
            assert params == ["self", "question", "rng"]

    def test_player_views_hold_only_their_question(self):
        cfg = GameConfig()
        rng = RandomStream(46, 0)
        s = games.new_game(GHZ, cfg, rng)
        s = games.apply_move(s, PLAYER1, ghz.Answer(1), rng)
        view = games.view(s, PLAYER2)
        assert set(view) == {"game", "stage", "to_move", "terminal", "you",
                             "legal_moves", "your_question", "your_answer"}
        assert view["your_question"] == s.questions[1]
        assert view["your_answer"] is None

    def test_referee_sees_everything(self):
        cfg = GameConfig()
        rng = RandomStream(47, 0)
        s = games.new_game(GHZ, cfg, rng)
        view = games.view(s, REFEREE)
        assert view["questions"] == list(s.questions)


class TestPayoff:
    def test_cooperative_scores(self):
        cfg = GameConfig()
        profile = build_profile(GHZ, cfg)
        rng = RandomStream(48, 0)
        s = play_trial(GHZ, profile, cfg, rng)
        result = games.payoff(s)
        assert result.by_role[PLAYER1] == result.by_role[PLAYER2] == \
            result.by_role[PLAYER3] == 1.0
        assert result.by_role[REFEREE] == 0.0
