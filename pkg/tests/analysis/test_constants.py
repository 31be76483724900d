"""Tests for the seed constants C, C', J_n and Gamma."""

import json


def test_kuhn_square_constants():
    from src.analysis import c_of_seed
    from src.forest import new_forest
    from src.seed import kuhn_cube

    forest, _ = new_forest(kuhn_cube(2))
    constants = c_of_seed(forest)
    assert constants.C == 1
    assert constants.C_prime == 1
    assert constants.J == {0: 0, 1: 0, 2: 0}
    assert constants.Gamma == 1
    assert constants.Gamma_plus == 2
    assert constants.jump_bound(0) == 2
    assert constants.gensharp_bound(0) == 2
    assert constants.gensharp_bound(2) == 4
    assert json.loads(json.dumps(constants.to_dict()))["J"] == {"0": 0, "1": 0, "2": 0}


def test_kuhn_cube_constants_in_three_dimensions():
    from src.analysis import c_of_seed
    from src.forest import new_forest
    from src.seed import kuhn_cube

    forest, tria = new_forest(kuhn_cube(3))
    constants = c_of_seed(forest)
    assert constants.J[1] == 2
    assert constants.J[2] == constants.J[3] == 0
    assert constants.Gamma == 1 + constants.J[0] + 2
    assert constants.C >= 1 and constants.C_prime >= 1
    assert constants.gensharp_bound(1) == 12
    # building T0+ does not touch existing views
    assert len(tria) == 6


def test_jump_table_clamps_j0():
    from src.analysis import jump_table
    from src.analysis.constants import gamma_from_table

    table = jump_table(7, 3)
    assert table == {0: 4, 1: 2, 2: 0, 3: 0}
    assert gamma_from_table(table, 3) == 7
    assert jump_table(0, 3)[0] == 0
    assert jump_table(1, 2) == {0: 0, 1: 0, 2: 0}
