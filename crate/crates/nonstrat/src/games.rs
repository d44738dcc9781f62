//! Small catalog of named games used by demos and tests.

use crate::game::NormalFormGame;

/// The classic prisoner's dilemma. Row payoffs: CC=3, CD=0, DC=4, DD=1;
/// symmetric for the column player.
pub fn prisoners_dilemma() -> NormalFormGame {
    NormalFormGame::two_player(
        &["C", "D"],
        &["C", "D"],
        &[3.0, 0.0, 4.0, 1.0],
        &[3.0, 4.0, 0.0, 1.0],
    )
    .expect("valid game")
}

/// A 2x2 game in which the row player is paid for matching the column
/// player's move while the column player strictly prefers mismatching one
/// way over the other. Against a uniform opponent every action of both
/// players ties exactly, which makes the uniform profile an exact quantal
/// fixed point and makes the game the canonical probe for belief-sensitive
/// models.
pub fn matching_game() -> NormalFormGame {
    matching_game_for(0)
}

/// [`matching_game`] with the roles assigned so that `player` is the
/// matching side. `player` must be 0 or 1.
pub fn matching_game_for(player: usize) -> NormalFormGame {
    assert!(player < 2, "matching game has two players");
    if player == 0 {
        NormalFormGame::two_player(
            &["U", "D"],
            &["L", "R"],
            &[1.0, 0.0, 0.0, 1.0],
            &[1.0, 2.0, 2.0, 1.0],
        )
        .expect("valid game")
    } else {
        NormalFormGame::two_player(
            &["U", "D"],
            &["L", "R"],
            &[1.0, 2.0, 2.0, 1.0],
            &[1.0, 0.0, 0.0, 1.0],
        )
        .expect("valid game")
    }
}
