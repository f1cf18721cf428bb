//! JSON form of an automaton:
//! `{"tapes":k,"alphabet":[tokens],"states":N,"initial":i,"accepting":[...],
//! "transitions":[[src,[sym_or_"#",...],dst],...]}`.

use serde::{Deserialize, Serialize};

use super::{AutomatonError, SyncAutomaton};
use crate::words::{Letter, TupleSymbol};

const PADDING: &str = "#";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub tapes: usize,
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, Vec<String>, usize)>,
}

impl From<&SyncAutomaton> for AutomatonJson {
    fn from(a: &SyncAutomaton) -> AutomatonJson {
        let mut letters: Vec<Letter> = a.alphabet().iter().flatten().copied().collect();
        letters.sort();
        letters.dedup();
        AutomatonJson {
            tapes: a.tapes(),
            alphabet: letters.iter().map(Letter::to_string).collect(),
            states: a.num_states(),
            initial: a.initial(),
            accepting: a.accepting_states().collect(),
            transitions: a
                .transitions()
                .into_iter()
                .map(|(src, sym, dst)| {
                    let sym = sym
                        .iter()
                        .map(|s| s.map_or_else(|| PADDING.to_string(), |l| l.to_string()))
                        .collect();
                    (src, sym, dst)
                })
                .collect(),
        }
    }
}

impl AutomatonJson {
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<AutomatonJson, AutomatonError> {
        serde_json::from_str(text).map_err(|e| AutomatonError::Json(e.to_string()))
    }

    /// Every tape gets the full listed alphabet.
    pub fn to_automaton(&self) -> Result<SyncAutomaton, AutomatonError> {
        let letters = self
            .alphabet
            .iter()
            .map(|t| t.parse::<Letter>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (src, sym, dst) in &self.transitions {
            let tuple: TupleSymbol = sym
                .iter()
                .map(|t| if t == PADDING { Ok(None) } else { t.parse::<Letter>().map(Some) })
                .collect::<Result<_, _>>()?;
            transitions.push((*src, tuple, *dst));
        }
        SyncAutomaton::new(
            vec![letters; self.tapes],
            self.states,
            self.initial,
            self.accepting.iter().copied(),
            transitions,
        )
    }
}
