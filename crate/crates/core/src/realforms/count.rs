use serde::Serialize;

use super::autos::{canonical_d, enumerate_autos, AutoFamily, Base, FamilyKind};
use super::classify::{classify, RealFormLabel};
use super::spec::ConjugationSpec;
use super::witness::{
    automorphism_factor, dsecond_unit_witness, intertwining_scalar, odd_sharp_witness, pairing_witness, sigma_witness,
    WitnessLevel,
};
use super::RealFormsError;
use crate::linalg::{Signature, SqMat};
use crate::rmatrix::{GroupShape, RData};
use crate::scalars::ConjRegime;

#[derive(Debug, Clone, Serialize)]
pub struct RealFormClass {
    /// Members in enumeration order; the first is the representative.
    pub members: Vec<ConjugationSpec>,
    /// Label of the first classifiable member.
    pub label: Option<RealFormLabel>,
    pub signature: Option<Signature>,
}

impl RealFormClass {
    pub fn representative(&self) -> &ConjugationSpec {
        &self.members[0]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RealFormCount {
    pub n: usize,
    pub regime: ConjRegime,
    pub classes: Vec<RealFormClass>,
    /// `N = 8`: triality adds outer automorphisms not covered here.
    pub triality_caveat: bool,
}

impl RealFormCount {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// `2^n` (odd, real), `2^n + 2^(n-2)` (even, real), `1` (odd, unit), `2` (even, unit).
pub fn expected_count(n: usize, regime: ConjRegime) -> Result<usize, RealFormsError> {
    let shape = GroupShape::new(n)?;
    let h = shape.half() as u32;
    Ok(match (regime, shape.is_odd()) {
        (ConjRegime::RealQ, true) => 1 << h,
        (ConjRegime::RealQ, false) => (1 << h) + (1 << h) / 4,
        (ConjRegime::UnitModulusQ, true) => 1,
        (ConjRegime::UnitModulusQ, false) => 2,
    })
}

/// All conjugations built from one base, at most one `D'` or `D''`, and optionally `D`.
///
/// `[D, D'']` is left out: `D` and `D''` anticommute on the middle block, so
/// their product squares to neither `+I` nor `-I`.
pub fn enumerate_specs(n: usize, regime: ConjRegime) -> Result<Vec<ConjugationSpec>, RealFormsError> {
    let shape = GroupShape::new(n)?;
    let base = match regime {
        ConjRegime::RealQ => Base::Star,
        ConjRegime::UnitModulusQ => Base::Cross,
    };
    let d = canonical_d(n)?;
    let dprimes = enumerate_autos(n, FamilyKind::DPrime)?;
    let mut out = Vec::new();
    for dp in &dprimes {
        out.push(ConjugationSpec::new(base, vec![dp.clone()], regime, n)?);
    }
    for dp in &dprimes {
        out.push(ConjugationSpec::new(base, vec![d.clone(), dp.clone()], regime, n)?);
    }
    if !shape.is_odd() {
        for ds in enumerate_autos(n, FamilyKind::DSecond)? {
            out.push(ConjugationSpec::new(base, vec![ds], regime, n)?);
        }
    }
    Ok(out)
}

fn candidates(n: usize, s1: &ConjugationSpec, s2: &ConjugationSpec) -> Vec<SqMat> {
    let mut out = vec![SqMat::identity(n)];
    if n % 2 == 1 {
        out.push(odd_sharp_witness(n));
    } else {
        out.push(pairing_witness(n));
    }
    for a in s1.autos.iter().chain(&s2.autos) {
        match &a.family {
            AutoFamily::DPrime(eps) => out.push(sigma_witness(eps)),
            AutoFamily::DSecond(eps) => out.push(dsecond_unit_witness(eps)),
            AutoFamily::CanonicalSharp => {}
        }
    }
    out.dedup();
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Groups the enumerated conjugations into classes, merging two only when one of
/// the known witness matrices verifies the equivalence exactly.
pub fn count_real_forms(n: usize, regime: ConjRegime) -> Result<RealFormCount, RealFormsError> {
    let rdata = RData::new(n)?;
    let specs = enumerate_specs(n, regime)?;
    let gs: Vec<SqMat> = specs.iter().map(ConjugationSpec::composed).collect();
    let mut uf = UnionFind((0..specs.len()).collect());
    let mut auto_memo: Vec<(SqMat, bool)> = Vec::new();
    let mut is_auto = |a: &SqMat| -> Result<bool, RealFormsError> {
        if let Some((_, ok)) = auto_memo.iter().find(|(m, _)| m == a) {
            return Ok(*ok);
        }
        let ok = automorphism_factor(a, &rdata, WitnessLevel::Exact)?.is_some();
        auto_memo.push((a.clone(), ok));
        Ok(ok)
    };

    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            let base = specs[i].base;
            'search: for a in candidates(n, &specs[i], &specs[j]) {
                for (x, y) in [(i, j), (j, i)] {
                    if intertwining_scalar(base, regime, &gs[x], &gs[y], &a, &rdata.metric)?.is_ok() && is_auto(&a)? {
                        uf.union(i, j);
                        break 'search;
                    }
                }
            }
        }
    }

    let mut classes: Vec<(usize, RealFormClass)> = Vec::new();
    for (k, spec) in specs.into_iter().enumerate() {
        let root = uf.find(k);
        match classes.iter_mut().find(|(r, _)| *r == root) {
            Some((_, class)) => class.members.push(spec),
            None => classes.push((
                root,
                RealFormClass {
                    members: vec![spec],
                    label: None,
                    signature: None,
                },
            )),
        }
    }
    let mut out = Vec::with_capacity(classes.len());
    for (_, mut class) in classes {
        for member in &class.members {
            match classify(member, &rdata) {
                Ok(c) => {
                    class.label = Some(c.label);
                    class.signature = c.signature;
                    break;
                }
                Err(RealFormsError::Unclassifiable | RealFormsError::NoPlaneConjugation) => continue,
                Err(e) => return Err(e),
            }
        }
        out.push(class);
    }
    Ok(RealFormCount {
        n,
        regime,
        classes: out,
        triality_caveat: n == 8,
    })
}
