use std::cmp::Ordering;

use serde::Serialize;

use super::poly::{NcPoly, Word};
use super::rewrite::{check_confluence, complete, normal_form, Confluence, RewriteSystem};
use super::QPlaneError;
use crate::linalg::{pair_index, row_reduce, SqMat};
use crate::rmatrix::{build_projectors, GroupShape};
use crate::scalars::{ConjRegime, Scalar};

/// The quantum plane `P_A (x (x) x) = 0` as rules `x^a x^b -> ...` for `a < b`.
pub fn plane_relations(n: usize) -> Result<RewriteSystem, QPlaneError> {
    GroupShape::new(n)?;
    let pa = build_projectors(n)?.pa;
    let rows: Vec<_> = (1..=n * n).map(|r| pa.row(r).clone()).collect();
    let leading: Vec<usize> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| pair_index(a, b, n)))
        .collect();
    let red = row_reduce(rows, &leading);
    let expected = n * (n - 1) / 2;
    if red.pivots.len() != expected || pa.rank() != expected {
        return Err(QPlaneError::RankMismatch {
            rules: red.pivots.len(),
            rank: pa.rank(),
        });
    }
    let word_of = |col: usize| Word::new([(col - 1) / n + 1, (col - 1) % n + 1]);
    let rules = red.rows.iter().zip(&red.pivots).map(|(row, &piv)| {
        let rhs = NcPoly::from_terms(
            row.iter()
                .filter(|(c, _)| **c != piv)
                .map(|(c, v)| (word_of(*c), -v.clone())),
        );
        (word_of(piv), rhs)
    });
    Ok(RewriteSystem::new(n, rules))
}

/// Antilinear antimultiplicative extension of `x^a -> sum_b K_ab x^b`.
pub fn conj_poly(p: &NcPoly, k: &SqMat, regime: ConjRegime) -> NcPoly {
    let images: Vec<NcPoly> = (1..=k.dim())
        .map(|a| NcPoly::from_terms(k.row(a).iter().map(|(b, v)| (Word::new([*b]), v.clone()))))
        .collect();
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let reversed = NcPoly::monomial(w.reversed(), c.bar(regime));
        out = out.add(&reversed.substitute(&images));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarFailure {
    /// Leading word of the relation whose conjugate does not reduce to zero.
    pub relation: Word,
    pub residue: NcPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    /// `(x^a)** = x^a` for every generator.
    pub involutive: bool,
    pub failures: Vec<StarFailure>,
}

impl StarReport {
    pub fn pass(&self) -> bool {
        self.involutive && self.failures.is_empty()
    }
}

/// The conjugation maps the relation ideal into itself and squares to the identity.
pub fn check_star_consistency(rs: &RewriteSystem, k: &SqMat, regime: ConjRegime) -> StarReport {
    let involutive = (1..=rs.n()).all(|a| {
        let x = NcPoly::generator(a);
        conj_poly(&conj_poly(&x, k, regime), k, regime) == x
    });
    let failures = rs
        .relations()
        .into_iter()
        .filter_map(|(lhs, rel)| {
            let residue = normal_form(&conj_poly(&rel, k, regime), rs);
            (!residue.is_zero()).then_some(StarFailure { relation: lhs, residue })
        })
        .collect();
    StarReport { involutive, failures }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientSign {
    /// `x^3 = x^2`: the euclidean subplane.
    Plus,
    /// `x^3 = -x^2`: the SO(2,1) subplane.
    Minus,
}

impl QuotientSign {
    fn value(self) -> i64 {
        match self {
            QuotientSign::Plus => 1,
            QuotientSign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub sign: QuotientSign,
    pub scaled: bool,
    pub rules_added: usize,
    pub confluent: bool,
    /// Normal forms of the images of the three-dimensional plane relations.
    pub residues: Vec<(Word, NcPoly)>,
}

impl QuotientReport {
    pub fn pass(&self) -> bool {
        self.confluent && self.residues.iter().all(|(_, r)| r.is_zero())
    }
}

/// Words with more `x^3` letters are larger, then the usual word order.
fn elimination_order(a: &Word, b: &Word) -> Ordering {
    let count = |w: &Word| w.letters().iter().filter(|&&l| l == 3).count();
    count(a).cmp(&count(b)).then_with(|| a.cmp(b))
}

/// The four-dimensional plane modulo `x^3 = +-x^2`.
pub fn quotient_system(sign: QuotientSign) -> Result<(RewriteSystem, usize), QPlaneError> {
    let mut rs = plane_relations(4)?;
    rs.set_rule(
        Word::new([3]),
        NcPoly::generator(2).scale(&Scalar::from_int(sign.value())),
    );
    let added = complete(&mut rs, elimination_order, 10)?;
    Ok((rs, added))
}

/// Embeds the three-dimensional plane in the quotient via `y^1 -> x^1`,
/// `y^2 -> t x^2` (or `i t x^2`), `y^3 -> x^4`, with `t^2 = q^{1/2} + q^{-1/2}`.
/// With `scaled = false` the factor `t` is left out.
pub fn quotient_check_with(sign: QuotientSign, scaled: bool) -> Result<QuotientReport, QPlaneError> {
    let (rs, added) = quotient_system(sign)?;
    let confluent = check_confluence(&rs) == Confluence::Yes;
    let mut y2 = if scaled { Scalar::t() } else { Scalar::one() };
    if sign == QuotientSign::Minus {
        y2 = &y2 * &Scalar::i();
    }
    let images = [
        NcPoly::generator(1),
        NcPoly::generator(2).scale(&y2),
        NcPoly::generator(4),
    ];
    let residues = plane_relations(3)?
        .relations()
        .into_iter()
        .map(|(lhs, rel)| (lhs, normal_form(&rel.substitute(&images), &rs)))
        .collect();
    Ok(QuotientReport {
        sign,
        scaled,
        rules_added: added,
        confluent,
        residues,
    })
}

pub fn quotient_check(sign: QuotientSign) -> Result<QuotientReport, QPlaneError> {
    quotient_check_with(sign, true)
}
