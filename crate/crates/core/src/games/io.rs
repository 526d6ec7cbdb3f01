//! JSON game files.
//!
//! ```json
//! {"players": 2,
//!  "strategies": [["Stop", "Go"], ["Stop", "Go"]],
//!  "payoffs": {"0,0": ["0/1", "0/1"], "0,1": ["0/1", "1/1"], ...}}
//! ```
//!
//! Payoff keys are comma-separated strategy indices, one per player.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BimatrixGame, NormalFormGame};
use crate::error::{Error, Result};
use crate::numeric::{Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub players: usize,
    pub strategies: Vec<Vec<String>>,
    pub payoffs: BTreeMap<String, Vec<Rational>>,
}

/// A game together with its strategy names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGame {
    pub game: NormalFormGame,
    pub names: Vec<Vec<String>>,
}

fn profile_key(profile: &[usize]) -> String {
    profile.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn default_names(counts: &[usize]) -> Vec<Vec<String>> {
    counts.iter().map(|&c| (0..c).map(|s| format!("s{}", s)).collect()).collect()
}

impl NamedGame {
    pub fn unnamed(game: NormalFormGame) -> Self {
        let names = default_names(game.strategy_counts());
        NamedGame { game, names }
    }

    pub fn from_file(file: GameFile) -> Result<Self> {
        if file.players == 0 || file.strategies.len() != file.players {
            return Err(Error::input(format!(
                "{} players declared but {} strategy lists given",
                file.players,
                file.strategies.len()
            )));
        }
        let counts: Vec<usize> = file.strategies.iter().map(Vec::len).collect();
        let outcomes = counts.iter().product::<usize>();
        if file.payoffs.len() != outcomes {
            return Err(Error::input(format!(
                "payoff table has {} entries, expected {}",
                file.payoffs.len(),
                outcomes
            )));
        }
        let mut table: Vec<Option<Vec<Rational>>> = vec![None; outcomes];
        let probe = NormalFormGame::new(counts.clone(), vec![vec![Rational::zero(); file.players]; outcomes])?;
        for (key, values) in file.payoffs {
            let profile: Vec<usize> = key
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::input(format!("bad payoff key {:?}", key)))?;
            let idx = probe
                .index_of(&profile)
                .ok_or_else(|| Error::input(format!("payoff key {:?} out of range", key)))?;
            if values.len() != file.players {
                return Err(Error::input(format!("payoff {:?} needs {} values", key, file.players)));
            }
            if table[idx].replace(values).is_some() {
                return Err(Error::input(format!("duplicate payoff key {:?}", key)));
            }
        }
        let payoffs = table.into_iter().map(|v| v.expect("all keys present")).collect();
        Ok(NamedGame {
            game: NormalFormGame::new(counts, payoffs)?,
            names: file.strategies,
        })
    }

    pub fn to_file(&self) -> GameFile {
        let mut payoffs = BTreeMap::new();
        for (idx, profile) in self.game.profiles().enumerate() {
            let values = (0..self.game.players()).map(|p| self.game.payoff_at(idx, p).clone()).collect();
            payoffs.insert(profile_key(&profile), values);
        }
        GameFile {
            players: self.game.players(),
            strategies: self.names.clone(),
            payoffs,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GameFile = serde_json::from_str(text).map_err(|e| Error::input(format!("game JSON: {}", e)))?;
        NamedGame::from_file(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn to_bimatrix(&self) -> Result<BimatrixGame> {
        if self.game.players() != 2 {
            return Err(Error::input(format!("expected a two-player game, got {} players", self.game.players())));
        }
        let (m, n) = (self.game.strategy_counts()[0], self.game.strategy_counts()[1]);
        let a = Matrix::from_fn(m, n, |i, j| self.game.payoff(&[i, j], 0).clone());
        let b = Matrix::from_fn(m, n, |i, j| self.game.payoff(&[i, j], 1).clone());
        BimatrixGame::new(a, b)
    }

    pub fn from_bimatrix(game: &BimatrixGame) -> Self {
        NamedGame::unnamed(game.to_normal_form())
    }
}
