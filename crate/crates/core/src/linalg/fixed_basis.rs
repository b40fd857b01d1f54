use super::{LinalgError, SqMat};
use crate::scalars::{ConjRegime, GaussRat, Scalar};

type Row = Vec<GaussRat>;

/// `tau(r) = bar(r) K` for a row vector `r`.
fn tau(r: &Row, k: &[Row]) -> Row {
    let n = r.len();
    let mut out = vec![GaussRat::zero(); n];
    for (i, ri) in r.iter().enumerate() {
        if ri.is_zero() {
            continue;
        }
        let c = ri.conj();
        for (j, o) in out.iter_mut().enumerate() {
            if !k[i][j].is_zero() {
                *o += &(&c * &k[i][j]);
            }
        }
    }
    out
}

/// Incremental echelon basis used for greedy rank selection.
struct Echelon {
    rows: Vec<(usize, Row)>,
}

impl Echelon {
    /// Adds `v` if it is independent of the rows so far.
    fn try_insert(&mut self, v: &Row) -> bool {
        let mut w = v.clone();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &(&f * y);
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        let w: Row = w.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&w) {
                    *x -= &(&f * y);
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Builds an invertible `M` whose rows are fixed by the antilinear involution
/// `tau(r) = bar(r) K`, so that `x' = M x` are real coordinates whenever
/// `x* = K x`.
///
/// `K` must have constant (Gaussian rational) entries, i.e. be evaluated at
/// `q = 1`. Candidates are the real parts `(e_j + tau(e_j)) / 2` for
/// `j = 1..N`, then the imaginary parts `i (e_j - tau(e_j)) / 2`, kept
/// greedily while they raise the rank.
pub fn antilinear_fixed_basis(k: &SqMat, regime: ConjRegime) -> Result<SqMat, LinalgError> {
    let n = k.dim();
    let kc = k.constant_entries()?;
    if !k.matmul(&k.bar(regime))?.is_identity() {
        return Err(LinalgError::NotInvolution);
    }
    let unit = |j: usize| -> Row {
        let mut e = vec![GaussRat::zero(); n];
        e[j] = GaussRat::one();
        e
    };
    let half = GaussRat::from_ratio(1, 2);
    let i_half = &GaussRat::i() * &half;
    let plus = (0..n).map(|j| {
        let e = unit(j);
        let t = tau(&e, &kc);
        e.iter().zip(&t).map(|(a, b)| &half * &(a + b)).collect::<Row>()
    });
    let minus = (0..n).map(|j| {
        let e = unit(j);
        let t = tau(&e, &kc);
        e.iter().zip(&t).map(|(a, b)| &i_half * &(a - b)).collect::<Row>()
    });

    let mut ech = Echelon { rows: Vec::new() };
    let mut chosen: Vec<Row> = Vec::with_capacity(n);
    for cand in plus.chain(minus) {
        if chosen.len() == n {
            break;
        }
        if ech.try_insert(&cand) {
            chosen.push(cand);
        }
    }
    if chosen.len() < n {
        return Err(LinalgError::RankDeficient);
    }
    Ok(SqMat::from_fn(n, |r, c| {
        Scalar::from_gauss(chosen[r - 1][c - 1].clone())
    }))
}
