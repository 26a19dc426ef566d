//! Fixed list of local characters over F_p(x)((t)) used by the cross-check and
//! valuation suites.

use crate::conductors::Character;
use crate::error::Result;
use crate::expr::{parse_ratfunc, Vocabulary};
use crate::local::LocalElem;
use crate::witt::WittVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub p: u32,
    /// Components in written order `(a_{s-1}, ..., a_0)`.
    pub comps: Vec<&'static str>,
}

impl CorpusEntry {
    pub fn character(&self) -> Result<Character> {
        let comps = self
            .comps
            .iter()
            .map(|c| parse_ratfunc(c, self.p, &Vocabulary::LOCAL).map(LocalElem::new))
            .collect::<Result<Vec<_>>>()?;
        Character::new(WittVec::new(self.p, comps))
    }

    pub fn label(&self) -> String {
        format!("p={} ({})", self.p, self.comps.join(", "))
    }
}

const ENTRIES: &[(u32, &[&str])] = &[
    // p = 2, length 1
    (2, &["1/t"]),
    (2, &["1/t^3"]),
    (2, &["1/t^5"]),
    (2, &["x/t"]),
    (2, &["x/t^3"]),
    (2, &["x/t^5"]),
    (2, &["(x + 1)/t^3"]),
    (2, &["x^2/t^3"]),
    (2, &["1/(x*t^3)"]),
    (2, &["x/t^4"]),
    (2, &["x/t^4 + 1/t^3"]),
    (2, &["x^3/t^4"]),
    (2, &["1/t^3 + x/t^2"]),
    (2, &["(x^2 + x)/t^5"]),
    (2, &["x/t^6"]),
    (2, &["x/t^3 + x^2/t"]),
    // p = 2, dt = 2
    (2, &["x/t^2"]),
    (2, &["(x + 1)/t^2"]),
    (2, &["x^3/t^2"]),
    (2, &["x/t^2 + 1/t"]),
    (2, &["x/t^2 + x/t"]),
    (2, &["1/(x*t^2)"]),
    (2, &["(x^3 + x)/t^2"]),
    (2, &["x/t^2 + t"]),
    (2, &["x^2/t^2"]),
    (2, &["(x^2 + 1)/t^2"]),
    (2, &["x^5/t^2"]),
    (2, &["x", "x/t^2"]),
    (2, &["1", "x/t^2"]),
    (2, &["t", "x/t^2 + 1/t"]),
    (2, &["0", "x/t^2"]),
    // p = 2, length 2
    (2, &["1/t", "0"]),
    (2, &["x/t", "0"]),
    (2, &["x/t", "1/t^3"]),
    (2, &["1/t", "x/t^3"]),
    (2, &["x/t", "x/t"]),
    (2, &["(x + 1)/t", "1/t"]),
    (2, &["x^2/t", "0"]),
    (2, &["1/t", "x/t^2"]),
    // p = 3, length 1
    (3, &["1/t"]),
    (3, &["1/t^2"]),
    (3, &["x/t"]),
    (3, &["x/t^2"]),
    (3, &["x/t^3"]),
    (3, &["x/t^4"]),
    (3, &["1/t^4"]),
    (3, &["1/t^5"]),
    (3, &["x^2/t^2"]),
    (3, &["(x + 1)/t^4"]),
    (3, &["x/t^3 + 1/t^2"]),
    (3, &["1/(x*t)"]),
    (3, &["x/t^5"]),
    (3, &["x/t^6"]),
    (3, &["x^3/t^3 + x/t^2"]),
    // p = 3, length 2
    (3, &["1/t", "0"]),
    (3, &["x/t", "0"]),
    (3, &["x/t", "1/t"]),
    (3, &["1/t", "x/t^2"]),
    (3, &["0", "x/t^2"]),
    (3, &["x/t", "x/t^3"]),
];

pub fn corpus() -> Vec<CorpusEntry> {
    ENTRIES
        .iter()
        .map(|(p, comps)| CorpusEntry {
            p: *p,
            comps: comps.to_vec(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductors::total_dimension;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c.len() >= 50);
        let mut exceptional = 0;
        for e in &c {
            let (dt, _) = total_dimension(&e.character().unwrap()).unwrap();
            assert!((2..=6).contains(&dt), "{} has dt = {dt}", e.label());
            assert!(e.comps.len() <= 2);
            if e.p == 2 && dt == 2 {
                exceptional += 1;
            }
        }
        assert!(exceptional >= 10, "{exceptional}");
    }
}
