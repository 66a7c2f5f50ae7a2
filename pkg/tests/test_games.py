import math

import numpy as np
import pytest

from ptgrid.games import (
    BudgetExceededError,
    FiniteGame,
    GameFormatError,
    MixedProfile,
    best_response,
    brute_force_equilibrium,
    equilibrium_residual,
    eut_utility,
    format_game,
    parse_game,
    pt_utility,
    solve_2x2,
    solve_fixed_point,
)
from ptgrid.prospects import PrelecWeighting, PtProfile, ValueFrame

MATCHING_PENNIES = FiniteGame.from_bimatrix(
    [[1.0, -1.0], [-1.0, 1.0]],
    [[-1.0, 1.0], [1.0, -1.0]],
)

PRISONERS_DILEMMA = FiniteGame.from_bimatrix(
    [[-1.0, -3.0], [0.0, -2.0]],
    [[-1.0, 0.0], [-3.0, -2.0]],
)


def eut_behaviors(n):
    return [PtProfile.eut()] * n


def random_game(rng, n_players=None):
    n = n_players or int(rng.integers(2, 4))
    counts = [int(rng.integers(2, 4)) for _ in range(n)]
    payoffs = rng.uniform(-5.0, 5.0, size=(n, *counts))
    return FiniteGame(payoffs)


def random_profile(rng, game):
    return MixedProfile([rng.dirichlet(np.ones(a)) for a in game.action_counts])


# ---------------------------------------------------------------------------
# construction and validation


def test_game_validation():
    with pytest.raises(ValueError):
        FiniteGame(np.zeros((2, 2)))  # missing per-player axes
    with pytest.raises(ValueError):
        FiniteGame(np.zeros((2, 2, 1)))  # one action
    with pytest.raises(ValueError):
        FiniteGame(np.full((2, 2, 2), np.inf))
    game = FiniteGame(np.zeros((2, 2, 2)))
    with pytest.raises(AttributeError):
        game.payoffs = None
    with pytest.raises(ValueError):
        game.payoffs[0, 0, 0] = 1.0  # read-only array


def test_profile_validation():
    game = MATCHING_PENNIES
    with pytest.raises(ValueError):
        MixedProfile([[0.5, 0.6], [0.5, 0.5]])
    with pytest.raises(ValueError):
        MixedProfile([[-0.1, 1.1], [0.5, 0.5]])
    uniform = MixedProfile.uniform(game)
    np.testing.assert_array_equal(uniform[0], [0.5, 0.5])
    pure = MixedProfile.pure(game, (1, 0))
    np.testing.assert_array_equal(pure[0], [0.0, 1.0])
    with pytest.raises(ValueError):
        MixedProfile.pure(game, (2, 0))


# ---------------------------------------------------------------------------
# utilities


def test_constant_game_utility():
    game = FiniteGame(np.full((2, 2, 2), 3.25))
    rng = np.random.default_rng(0)
    for _ in range(5):
        prof = random_profile(rng, game)
        assert eut_utility(game, 0, prof) == pytest.approx(3.25, abs=1e-12)
        assert eut_utility(game, 1, prof) == pytest.approx(3.25, abs=1e-12)


def test_pure_profile_reads_tensor_entry():
    rng = np.random.default_rng(1)
    game = random_game(rng, 3)
    for joint in [(0, 0, 0), (1, 1, 1), (0, 1, 0)]:
        prof = MixedProfile.pure(game, joint)
        for i in range(3):
            assert eut_utility(game, i, prof) == pytest.approx(
                game.payoffs[(i, *joint)], abs=1e-12
            )


def test_matching_pennies_uniform_is_zero():
    prof = MixedProfile.uniform(MATCHING_PENNIES)
    assert eut_utility(MATCHING_PENNIES, 0, prof) == pytest.approx(0.0, abs=1e-15)
    assert eut_utility(MATCHING_PENNIES, 1, prof) == pytest.approx(0.0, abs=1e-15)


def test_pt_reduces_to_eut_randomized():
    rng = np.random.default_rng(2)
    for _ in range(100):
        game = random_game(rng)
        prof = random_profile(rng, game)
        behaviors = eut_behaviors(game.n_players)
        for i in range(game.n_players):
            assert abs(
                pt_utility(game, i, prof, behaviors) - eut_utility(game, i, prof)
            ) <= 1e-12


def test_pt_endpoint_weights_ignore_alpha():
    # against a pure opponent the weighting cannot matter: w(0)=0, w(1)=1
    rng = np.random.default_rng(3)
    game = random_game(rng, 2)
    behaviors = [PtProfile.weighting_only(0.3)] * 2
    pure_opp = MixedProfile(
        [rng.dirichlet(np.ones(game.action_counts[0])), np.eye(game.action_counts[1])[0]]
    )
    assert pt_utility(game, 0, pure_opp, behaviors) == pytest.approx(
        eut_utility(game, 0, pure_opp), abs=1e-12
    )


def test_pt_hand_expanded_2x2():
    # opponent mixes 0.5/0.5 under alpha=0.5: both outcomes weighted by
    # w(0.5) = exp(-sqrt(ln 2)) instead of 0.5
    game = FiniteGame.from_bimatrix([[4.0, -2.0], [1.0, 3.0]], [[0.0, 0.0], [0.0, 0.0]])
    behaviors = [PtProfile.weighting_only(0.5), PtProfile.eut()]
    prof = MixedProfile([[1.0, 0.0], [0.5, 0.5]])
    w = math.exp(-math.sqrt(math.log(2.0)))
    assert pt_utility(game, 0, prof, behaviors) == pytest.approx(
        w * 4.0 + w * -2.0, abs=1e-12
    )
    prof2 = MixedProfile([[0.25, 0.75], [0.5, 0.5]])
    expected = 0.25 * (w * 4.0 + w * -2.0) + 0.75 * (w * 1.0 + w * 3.0)
    assert pt_utility(game, 0, prof2, behaviors) == pytest.approx(expected, abs=1e-12)


def test_pt_framing_applies_to_own_payoffs():
    game = FiniteGame.from_bimatrix([[4.0, -4.0], [0.0, 0.0]], [[0.0] * 2] * 2)
    frame = ValueFrame(reference=0.0, gamma=2.0, beta_gain=1.0, beta_loss=1.0)
    behaviors = [PtProfile(frame=frame), PtProfile.eut()]
    prof = MixedProfile([[1.0, 0.0], [0.5, 0.5]])
    # gains kept, losses doubled: 0.5*4 + 0.5*(-8) = -2
    assert pt_utility(game, 0, prof, behaviors) == pytest.approx(-2.0, abs=1e-12)


def test_renormalized_weights_cancel_in_two_action_games():
    game = MATCHING_PENNIES
    behaviors = [PtProfile.weighting_only(0.4)] * 2
    rng = np.random.default_rng(4)
    for _ in range(10):
        prof = random_profile(rng, game)
        # symmetric q/(1-q) renormalization collapses to plain probabilities
        # only when the two weights are equal; just check it stays a proper
        # convex evaluation: value between min and max framed payoff
        val = pt_utility(game, 0, prof, behaviors, renormalize=True)
        assert -1.0 - 1e-9 <= val <= 1.0 + 1e-9


def test_per_opponent_weighting_flag():
    rng = np.random.default_rng(5)
    game = random_game(rng, 3)
    behaviors = [PtProfile.weighting_only(0.5)] * 3
    prof = random_profile(rng, game)
    joint = pt_utility(game, 0, prof, behaviors)
    factored = pt_utility(game, 0, prof, behaviors, per_opponent=True)
    # the two weighting orders genuinely differ away from EUT
    assert joint != pytest.approx(factored, abs=1e-9)
    eut_like = [PtProfile.eut()] * 3
    assert pt_utility(game, 0, prof, eut_like, per_opponent=True) == pytest.approx(
        eut_utility(game, 0, prof), abs=1e-12
    )


def test_affine_shift_with_weighting_only():
    # framing off: adding c to every payoff of player i shifts its perceived
    # utility by c * sum of weights and leaves best responses unchanged
    rng = np.random.default_rng(6)
    game = random_game(rng, 2)
    behaviors = [PtProfile.weighting_only(0.45)] * 2
    prof = random_profile(rng, game)
    shifted = FiniteGame(
        np.stack([game.payoffs[0] + 7.5, game.payoffs[1]])
    )
    base_br = best_response(game, 0, prof, behaviors)
    shifted_br = best_response(shifted, 0, prof, behaviors)
    assert base_br == shifted_br
    from ptgrid.games import _opponent_weights

    wsum = _opponent_weights(game, 0, prof, 0.45, False, False).sum()
    assert pt_utility(shifted, 0, prof, behaviors) == pytest.approx(
        pt_utility(game, 0, prof, behaviors) + 7.5 * wsum, abs=1e-10
    )


# ---------------------------------------------------------------------------
# best response


def test_best_response_dominant_action():
    behaviors = eut_behaviors(2)
    prof = MixedProfile.uniform(PRISONERS_DILEMMA)
    assert best_response(PRISONERS_DILEMMA, 0, prof, behaviors) == (1,)
    assert best_response(PRISONERS_DILEMMA, 1, prof, behaviors) == (1,)


def test_best_response_constant_game_ties():
    game = FiniteGame(np.zeros((2, 3, 2)))
    prof = MixedProfile.uniform(game)
    assert best_response(game, 0, prof, eut_behaviors(2)) == (0, 1, 2)


def test_player_index_errors():
    prof = MixedProfile.uniform(MATCHING_PENNIES)
    with pytest.raises(IndexError):
        eut_utility(MATCHING_PENNIES, 2, prof)
    with pytest.raises(IndexError):
        pt_utility(MATCHING_PENNIES, -1, prof, eut_behaviors(2))


# ---------------------------------------------------------------------------
# 2x2 solver


def interior(results):
    return [
        r
        for r in results
        if all(np.all(m > 0.0) and np.all(m < 1.0) for m in r.profile)
    ]


def test_solve_2x2_prisoners_dilemma():
    results = solve_2x2(PRISONERS_DILEMMA)
    assert len(results) == 1
    prof = results[0].profile
    np.testing.assert_allclose(prof[0], [0.0, 1.0])
    np.testing.assert_allclose(prof[1], [0.0, 1.0])
    assert results[0].residual <= 1e-9


def test_solve_2x2_matching_pennies_eut():
    results = solve_2x2(MATCHING_PENNIES)
    assert len(results) == 1
    mixed = results[0].profile
    np.testing.assert_allclose(mixed[0], [0.5, 0.5], atol=1e-12)
    np.testing.assert_allclose(mixed[1], [0.5, 0.5], atol=1e-12)


def test_solve_2x2_matching_pennies_pt_symmetric():
    behaviors = [PtProfile.weighting_only(0.5)] * 2
    results = interior(solve_2x2(MATCHING_PENNIES, behaviors))
    assert len(results) == 1
    # symmetry forces w(p) = w(1-p), hence p = 1/2 even under weighting
    np.testing.assert_allclose(results[0].profile[0], [0.5, 0.5], atol=1e-10)
    np.testing.assert_allclose(results[0].profile[1], [0.5, 0.5], atol=1e-10)


def test_solve_2x2_asymmetric_pt_deviates_from_eut():
    game = FiniteGame.from_bimatrix(
        [[3.0, -1.0], [-2.0, 2.0]],
        [[-3.0, 1.0], [2.0, -2.0]],
    )
    eut_mix = interior(solve_2x2(game))[0].profile
    pt_mix = interior(solve_2x2(game, [PtProfile.weighting_only(0.5)] * 2))[0].profile
    # player 2's mix solves player 1's asymmetric indifference (gaps 5 vs 3)
    assert eut_mix[1][0] == pytest.approx(3.0 / 8.0, abs=1e-10)
    assert not np.allclose(eut_mix[1], pt_mix[1], atol=1e-3)
    for res in solve_2x2(game, [PtProfile.weighting_only(0.5)] * 2):
        assert res.residual <= 1e-9


def test_solve_2x2_no_interior_reported_by_omission():
    results = solve_2x2(PRISONERS_DILEMMA, eut_behaviors(2))
    assert interior(results) == []


def test_solve_2x2_rejects_wrong_shape():
    rng = np.random.default_rng(7)
    with pytest.raises(ValueError):
        solve_2x2(random_game(rng, 3))


# ---------------------------------------------------------------------------
# fixed-point solver


def test_fixed_point_already_at_pure_equilibrium():
    init = MixedProfile.pure(PRISONERS_DILEMMA, (1, 1))
    res = solve_fixed_point(PRISONERS_DILEMMA, init=init)
    assert res.converged
    assert res.iterations == 0
    assert res.residual == 0.0


def test_fixed_point_matching_pennies_stays_uniform():
    res = solve_fixed_point(MATCHING_PENNIES, init=MixedProfile.uniform(MATCHING_PENNIES))
    assert res.converged
    assert res.iterations == 0
    np.testing.assert_allclose(res.profile[0], [0.5, 0.5], atol=1e-12)


def test_fixed_point_finds_dominant_equilibrium():
    res = solve_fixed_point(PRISONERS_DILEMMA)
    assert res.converged
    np.testing.assert_allclose(res.profile[0], [0.0, 1.0], atol=1e-6)
    np.testing.assert_allclose(res.profile[1], [0.0, 1.0], atol=1e-6)
    assert res.residual <= 1e-9


def test_fixed_point_reports_nonconvergence_honestly():
    res = solve_fixed_point(MATCHING_PENNIES, max_iter=3, tol=1e-12)
    # from uniform the residual is zero; force a hard start instead
    res = solve_fixed_point(
        MATCHING_PENNIES,
        init=MixedProfile([[0.9, 0.1], [0.2, 0.8]]),
        max_iter=3,
        tol=1e-12,
    )
    assert not res.converged
    assert res.iterations == 3
    assert res.residual > 1e-12


def test_fixed_point_certificate_matches_recomputed_residual():
    rng = np.random.default_rng(8)
    for _ in range(5):
        game = random_game(rng, 2)
        behaviors = [PtProfile.weighting_only(float(rng.uniform(0.3, 1.0)))] * 2
        res = solve_fixed_point(game, behaviors, max_iter=4000, tol=1e-8)
        recomputed = equilibrium_residual(game, res.profile, behaviors)
        assert recomputed == pytest.approx(res.residual, abs=1e-12)
        if res.converged:
            assert res.residual <= 1e-8


def test_determinism_bit_identical():
    rng = np.random.default_rng(9)
    game = random_game(rng, 2)
    behaviors = [PtProfile.weighting_only(0.6)] * 2
    r1 = solve_fixed_point(game, behaviors)
    r2 = solve_fixed_point(game, behaviors)
    assert r1.residual == r2.residual
    assert r1.iterations == r2.iterations
    for m1, m2 in zip(r1.profile, r2.profile):
        np.testing.assert_array_equal(m1, m2)


# ---------------------------------------------------------------------------
# brute force oracle


def test_brute_force_matching_pennies():
    profiles = brute_force_equilibrium(MATCHING_PENNIES, grid=100)
    assert any(
        np.all(np.abs(p[0] - 0.5) <= 0.01) and np.all(np.abs(p[1] - 0.5) <= 0.01)
        for p in profiles
    )


def test_brute_force_dominance():
    profiles = brute_force_equilibrium(PRISONERS_DILEMMA, grid=50)
    assert any(
        np.allclose(p[0], [0.0, 1.0]) and np.allclose(p[1], [0.0, 1.0])
        for p in profiles
    )


def test_brute_force_budget():
    rng = np.random.default_rng(10)
    game = random_game(rng, 3)
    with pytest.raises(BudgetExceededError):
        brute_force_equilibrium(game, grid=200, budget=1000)


def test_solver_vs_oracle_on_random_2x2():
    # the acceptance suite runs the full 20-game version at grid=200;
    # here a faster smoke version guards the invariant during development
    rng = np.random.default_rng(12)
    for _ in range(5):
        game = random_game(rng, 2)
        if game.action_counts != (2, 2):
            game = FiniteGame(rng.uniform(-5, 5, size=(2, 2, 2)))
        behaviors = [
            PtProfile.weighting_only(float(rng.uniform(0.2, 1.0))) for _ in range(2)
        ]
        solved = solve_2x2(game, behaviors)
        oracle = brute_force_equilibrium(game, behaviors, grid=100)
        for res in solved:
            assert res.residual <= 1e-9
            dist = min(
                max(
                    np.max(np.abs(res.profile[i] - cand[i])) for i in range(2)
                )
                for cand in oracle
            )
            assert dist <= 0.02


# ---------------------------------------------------------------------------
# text format


def test_boundary_layer_equilibrium_certified_by_residual():
    # under strong weighting (alpha ~ 0.34) the weight curve is nearly flat,
    # so indifference can pin a mixing probability of order 1e-4; the grid
    # oracle cannot resolve that boundary layer at any practical resolution,
    # but the residual certificate still verifies the solved point
    rng = np.random.default_rng(2024)
    game = FiniteGame(rng.uniform(-5.0, 5.0, size=(2, 2, 2)))
    behaviors = [
        PtProfile.weighting_only(float(rng.uniform(0.2, 1.0))) for _ in range(2)
    ]
    results = solve_2x2(game, behaviors)
    extreme = [
        r for r in results if any(np.min(m) < 1e-3 and np.min(m) > 0 for m in r.profile)
    ]
    assert extreme, "expected a boundary-layer mixed equilibrium"
    for r in extreme:
        assert r.residual <= 1e-9
        assert equilibrium_residual(game, r.profile, behaviors) <= 1e-9


def test_format_round_trip():
    rng = np.random.default_rng(13)
    for _ in range(5):
        game = random_game(rng)
        text = format_game(game)
        back = parse_game(text)
        assert back.action_counts == game.action_counts
        np.testing.assert_array_equal(back.payoffs, game.payoffs)


def test_format_is_documented_layout():
    text = format_game(MATCHING_PENNIES)
    lines = text.strip().splitlines()
    assert lines[0] == "players 2"
    assert lines[1] == "actions 2 2"
    assert len(lines) == 2 + 4
    assert lines[2].split() == ["1", "-1"]  # joint action (0, 0)


def test_parse_errors():
    with pytest.raises(GameFormatError):
        parse_game("players 2\nactions 2 2\n1 1\n")  # wrong line count
    with pytest.raises(GameFormatError):
        parse_game("actors 2\nactions 2 2\n" + "0 0\n" * 4)
    with pytest.raises(GameFormatError):
        parse_game("players 2\nactions 2\n" + "0 0\n" * 4)
    with pytest.raises(GameFormatError):
        parse_game("players 2\nactions 2 2\n" + "0 x\n" * 4)


def test_parse_ignores_comments_and_blanks():
    text = "# a game\nplayers 2\n\nactions 2 2\n1 -1\n-1 1\n-1 1\n1 -1\n"
    game = parse_game(text)
    np.testing.assert_array_equal(game.payoffs, MATCHING_PENNIES.payoffs)
