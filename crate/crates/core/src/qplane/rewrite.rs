use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::poly::{NcPoly, Word};
use super::QPlaneError;
use crate::scalars::Scalar;

/// Two reductions of one overlap word that do not meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapWitness {
    pub word: Word,
    pub left: NcPoly,
    pub right: NcPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Confluence {
    Unchecked,
    Yes,
    No(OverlapWitness),
}

/// Rewriting rules `word -> polynomial`, applied at the leftmost match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    n: usize,
    rules: BTreeMap<Word, NcPoly>,
    confluent: Confluence,
}

#[derive(Serialize)]
struct RuleDump<'a> {
    lhs: &'a Word,
    rhs: &'a NcPoly,
}

impl Serialize for RewriteSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rules().map(|(lhs, rhs)| RuleDump { lhs, rhs }))
    }
}

impl RewriteSystem {
    pub fn new<I: IntoIterator<Item = (Word, NcPoly)>>(n: usize, rules: I) -> Self {
        Self {
            n,
            rules: rules.into_iter().collect(),
            confluent: Confluence::Unchecked,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rules in descending order of their left-hand sides.
    pub fn rules(&self) -> impl Iterator<Item = (&Word, &NcPoly)> {
        self.rules.iter().rev()
    }

    pub fn rule(&self, lhs: &Word) -> Option<&NcPoly> {
        self.rules.get(lhs)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Adds or replaces a rule; resets the confluence status.
    pub fn set_rule(&mut self, lhs: Word, rhs: NcPoly) {
        self.rules.insert(lhs, rhs);
        self.confluent = Confluence::Unchecked;
    }

    pub fn confluence(&self) -> &Confluence {
        &self.confluent
    }

    pub fn certify(&mut self) -> &Confluence {
        self.confluent = check_confluence(self);
        &self.confluent
    }

    fn max_key_len(&self) -> usize {
        self.rules.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Leftmost match, shortest key first at each position.
    fn find_match(&self, letters: &[usize]) -> Option<(usize, usize, &NcPoly)> {
        let max = self.max_key_len();
        for pos in 0..letters.len() {
            for len in 1..=max.min(letters.len() - pos) {
                if let Some(rhs) = self.rules.get(&Word::new(&letters[pos..pos + len])) {
                    return Some((pos, len, rhs));
                }
            }
        }
        None
    }

    /// Relations `lhs - rhs` of the system.
    pub fn relations(&self) -> Vec<(Word, NcPoly)> {
        self.rules()
            .map(|(lhs, rhs)| (lhs.clone(), NcPoly::monomial(lhs.clone(), Scalar::one()).sub(rhs)))
            .collect()
    }
}

/// Rewrites until no rule applies.
pub fn normal_form(p: &NcPoly, rs: &RewriteSystem) -> NcPoly {
    let mut pending = p.clone();
    let mut out = NcPoly::zero();
    while let Some((w, c)) = pending.pop_first() {
        match rs.find_match(w.letters()) {
            None => out.add_term(w, c),
            Some((pos, len, rhs)) => {
                let l = w.letters();
                let image = rhs.sandwich(&l[..pos], &l[pos + len..]).scale(&c);
                for (w2, c2) in image.terms() {
                    pending.add_term(w2.clone(), c2.clone());
                }
            }
        }
    }
    out
}

/// Diamond-lemma check: every overlap and inclusion ambiguity between rule
/// left-hand sides resolves to the same normal form.
pub fn check_confluence(rs: &RewriteSystem) -> Confluence {
    let rules: Vec<(&Word, &NcPoly)> = rs.rules().collect();
    for &(k1, r1) in &rules {
        let a = k1.letters();
        for &(k2, r2) in &rules {
            let b = k2.letters();
            for ov in 1..a.len().min(b.len()) {
                if a[a.len() - ov..] != b[..ov] {
                    continue;
                }
                let word = Word::new([a, &b[ov..]].concat());
                let left = r1.sandwich(&[], &b[ov..]);
                let right = r2.sandwich(&a[..a.len() - ov], &[]);
                if let Some(w) = compare(rs, word, &left, &right) {
                    return Confluence::No(w);
                }
            }
            if b.len() < a.len() {
                for p in 0..=a.len() - b.len() {
                    if a[p..p + b.len()] != *b {
                        continue;
                    }
                    let right = r2.sandwich(&a[..p], &a[p + b.len()..]);
                    if let Some(w) = compare(rs, k1.clone(), r1, &right) {
                        return Confluence::No(w);
                    }
                }
            }
        }
    }
    Confluence::Yes
}

fn compare(rs: &RewriteSystem, word: Word, left: &NcPoly, right: &NcPoly) -> Option<OverlapWitness> {
    let (l, r) = (normal_form(left, rs), normal_form(right, rs));
    (l != r).then_some(OverlapWitness {
        word,
        left: l,
        right: r,
    })
}

/// Knuth-Bendix style completion: each unresolved overlap adds the rule
/// obtained by orienting the difference of its two normal forms by `order`.
/// Returns the number of rules added.
pub fn complete<F>(rs: &mut RewriteSystem, order: F, cap: usize) -> Result<usize, QPlaneError>
where
    F: Fn(&Word, &Word) -> Ordering,
{
    for round in 0..=cap {
        match check_confluence(rs) {
            Confluence::Yes => {
                rs.confluent = Confluence::Yes;
                return Ok(round);
            }
            Confluence::No(w) if round < cap => {
                let diff = w.left.sub(&w.right);
                let (lead, lc) = diff
                    .terms()
                    .max_by(|x, y| order(x.0, y.0))
                    .map(|(w, c)| (w.clone(), c.clone()))
                    .expect("unresolved overlap has nonzero difference");
                let inv = lc.inv().expect("leading coefficient is nonzero");
                let rhs = NcPoly::monomial(lead.clone(), lc).sub(&diff).scale(&inv);
                rs.set_rule(lead, rhs);
            }
            Confluence::No(w) => {
                rs.confluent = Confluence::No(w);
                break;
            }
            Confluence::Unchecked => unreachable!(),
        }
    }
    Err(QPlaneError::CompletionFailed(cap))
}
