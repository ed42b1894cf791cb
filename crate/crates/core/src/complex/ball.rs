//! Metric balls in the Cayley graph of A_Γ (the 1-skeleton of the
//! universal cover of the Salvetti complex), enumerated breadth first
//! through a word-problem oracle.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::oracle::{Form, Letter, WordOracle};

const NONE: u32 = u32::MAX;

pub struct CayleyBall {
    pub radius: u32,
    rank: usize,
    forms: Vec<Form>,
    words: Vec<Vec<Letter>>,
    dist: Vec<u32>,
    /// `succ[v * rank + s]` = index of `v·s` when inside the ball.
    succ: Vec<u32>,
    pred: Vec<u32>,
    index: HashMap<Form, u32>,
}

impl CayleyBall {
    /// Exact BFS ball of the given radius around the identity.
    pub fn build(oracle: &WordOracle, radius: u32) -> CayleyBall {
        let rank = oracle.rank();
        let mut forms = vec![oracle.identity()];
        let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut dist = vec![0u32];
        let mut index = HashMap::from([(oracle.identity(), 0u32)]);
        let mut frontier: Vec<u32> = vec![0];
        for d in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                let form = forms[v as usize].clone();
                for s in 0..rank as u8 {
                    for letter in [Letter::pos(s), Letter::neg(s)] {
                        let nf = oracle.mul_letter(&form, letter);
                        if !index.contains_key(&nf) {
                            let id = forms.len() as u32;
                            index.insert(nf.clone(), id);
                            let mut w = words[v as usize].clone();
                            w.push(letter);
                            words.push(w);
                            forms.push(nf);
                            dist.push(d);
                            next.push(id);
                        }
                    }
                }
            }
            frontier = next;
        }
        let n = forms.len();
        let mut succ = vec![NONE; n * rank];
        let mut pred = vec![NONE; n * rank];
        for v in 0..n {
            for s in 0..rank as u8 {
                let fwd = oracle.mul_letter(&forms[v], Letter::pos(s));
                if let Some(&t) = index.get(&fwd) {
                    succ[v * rank + s as usize] = t;
                    pred[t as usize * rank + s as usize] = v as u32;
                }
            }
        }
        CayleyBall { radius, rank, forms, words, dist, succ, pred, index }
    }

    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self, v: u32) -> &Form {
        &self.forms[v as usize]
    }

    /// A witness word of length `distance(v)` from the identity.
    pub fn word(&self, v: u32) -> &[Letter] {
        &self.words[v as usize]
    }

    pub fn distance(&self, v: u32) -> u32 {
        self.dist[v as usize]
    }

    pub fn vertex_of(&self, form: &Form) -> Option<u32> {
        self.index.get(form).copied()
    }

    /// `v·s` when inside the ball.
    pub fn succ(&self, v: u32, s: u8) -> Option<u32> {
        let t = self.succ[v as usize * self.rank + s as usize];
        (t != NONE).then_some(t)
    }

    /// `v·s⁻¹` when inside the ball.
    pub fn pred(&self, v: u32, s: u8) -> Option<u32> {
        let t = self.pred[v as usize * self.rank + s as usize];
        (t != NONE).then_some(t)
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().filter(|&&t| t != NONE).count()
    }

    /// Render a vertex by its witness word.
    pub fn label(&self, v: u32, names: &[String]) -> String {
        if self.words[v as usize].is_empty() {
            return "1".to_string();
        }
        self.words[v as usize]
            .iter()
            .map(|l| {
                let name = names[l.gen as usize].as_str();
                if l.positive { name.to_string() } else { format!("{name}⁻¹") }
            })
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn to_dot(&self, names: &[String]) -> String {
        let mut out = String::from("digraph cayley_ball {\n");
        for v in 0..self.order() as u32 {
            let _ = writeln!(out, "  n{v} [label=\"{}\"];", self.label(v, names));
        }
        for v in 0..self.order() as u32 {
            for s in 0..self.rank as u8 {
                if let Some(t) = self.succ(v, s) {
                    let _ = writeln!(out, "  n{v} -> n{t} [label=\"{}\"];", names[s as usize]);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn dump(&self, names: &[String]) -> BallDump {
        BallDump {
            radius: self.radius,
            vertices: (0..self.order() as u32)
                .map(|v| BallVertex { word: self.label(v, names), distance: self.distance(v) })
                .collect(),
            edges: (0..self.order() as u32)
                .flat_map(|v| {
                    (0..self.rank as u8).filter_map(move |s| {
                        self.succ(v, s).map(|t| (v, t, names[s as usize].clone()))
                    })
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct BallVertex {
    pub word: String,
    pub distance: u32,
}

#[derive(Serialize)]
pub struct BallDump {
    pub radius: u32,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<(u32, u32, String)>,
}
