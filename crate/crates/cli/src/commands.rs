use serde_json::{json, Value};

use qortho::check::{CheckOutcome, Mismatch};
use qortho::linalg::SqMat;
use qortho::qplane::{
    check_confluence, check_star_consistency, conj_poly, plane_relations, quotient_check_with, Confluence, NcPoly,
    QPlaneError, QuotientSign, RewriteSystem,
};
use qortho::realforms::{
    builtin_witnesses, check_auto_conditions, check_equivalence_witness, check_reality, check_sostar,
    classify as classify_spec, count_real_forms, enumerate_autos, enumerate_specs, expected_count, parse_autos,
    plane_conjugation_matrix, Base, Classification, ConjugationSpec, FamilyKind, RealFormsError,
};
use qortho::rmatrix::{
    build_projectors, build_r, build_rho, check_char_eq, check_r_reality, check_ybe, GroupShape, RData, RMatrixError,
};
use qortho::scalars::{ConjRegime, Scalar};

use crate::report::{to_value, Check, Report, TableRow};
use crate::{BaseArg, RegimeArg, SignArg};

const N_CAP: usize = 12;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<RMatrixError> for CliError {
    fn from(e: RMatrixError) -> Self {
        match e {
            RMatrixError::BadN(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<RealFormsError> for CliError {
    fn from(e: RealFormsError) -> Self {
        match e {
            RealFormsError::BadN(_)
            | RealFormsError::BadFamily
            | RealFormsError::BadSignVector(_)
            | RealFormsError::RegimeMismatch { .. }
            | RealFormsError::BadSpec(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<QPlaneError> for CliError {
    fn from(e: QPlaneError) -> Self {
        match e {
            QPlaneError::BadN(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub enum Output {
    Report(Report),
    Table(Vec<TableRow>),
}

impl Output {
    pub fn pass(&self) -> bool {
        match self {
            Output::Report(r) => r.pass(),
            Output::Table(_) => true,
        }
    }
}

type CmdResult = Result<Output, CliError>;

fn regime_of(r: RegimeArg) -> ConjRegime {
    match r {
        RegimeArg::Real => ConjRegime::RealQ,
        RegimeArg::Unit => ConjRegime::UnitModulusQ,
    }
}

fn shape(n: usize, force: bool) -> Result<GroupShape, CliError> {
    let s = GroupShape::new(n)?;
    if n > N_CAP && !force {
        return Err(CliError::Usage(format!(
            "N = {n} exceeds the cap of {N_CAP}; pass --force to run anyway"
        )));
    }
    Ok(s)
}

/// Witness JSON for a matrix mismatch, with tensor indices when the matrix acts on `width^arity`.
fn mismatch_value(m: &Mismatch, width: usize, arity: usize) -> Value {
    let mut v = to_value(m);
    if m.row > 0 && m.col > 0 && arity > 1 {
        let (r, c) = m.composite(width, arity);
        v["row_index"] = json!(r.parts());
        v["col_index"] = json!(c.parts());
    }
    v
}

fn outcome_check(name: &str, out: &CheckOutcome, width: usize, arity: usize) -> Check {
    let mut c = Check::new(name, out.pass);
    if let Some(m) = &out.witness {
        c.witness = Some(mismatch_value(m, width, arity));
    } else if !out.pass {
        c.witness = Some(json!({ "reason": "dimension mismatch" }));
    }
    c
}

fn matrix_lines(m: &SqMat) -> Vec<String> {
    m.entries().map(|(r, c, v)| format!("[{r},{c}] {v}")).collect()
}

pub fn rmat(n: usize) -> CmdResult {
    let rdata = RData::new(n)?;
    let rho = build_rho(n)?;
    let mut report = Report::new("rmat", n);
    let cc = rdata
        .metric
        .matmul(&rdata.metric)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let mut lines = vec![format!(
        "rho = ({})",
        rho.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
    )];
    lines.push("C:".into());
    lines.extend(matrix_lines(&rdata.metric));
    lines.push("R:".into());
    lines.extend(matrix_lines(&rdata.r));
    report.push(
        outcome_check(
            "metric-squares-to-identity",
            &CheckOutcome::compare(&cc, &SqMat::identity(n)),
            n,
            1,
        )
        .data(&json!({ "rho": rho, "metric": rdata.metric, "r": rdata.r }))
        .lines(lines),
    );
    Ok(Output::Report(report))
}

pub fn ybe(n: usize, force: bool) -> CmdResult {
    shape(n, force)?;
    let r = build_r(n)?;
    let mut report = Report::new("ybe", n);
    report.push(outcome_check("ybe", &check_ybe(&r, n)?, n, 3));
    Ok(Output::Report(report))
}

fn projector_checks(n: usize) -> Result<Vec<Check>, CliError> {
    let p = build_projectors(n)?;
    let nn = n * n;
    let fail = |e: qortho::linalg::LinalgError| CliError::Failed(e.to_string());
    let pa2 = p.pa.matmul(&p.pa).map_err(fail)?;
    let p02 = p.p0.matmul(&p.p0).map_err(fail)?;
    let pap0 = p.pa.matmul(&p.p0).map_err(fail)?;
    let sum = p.p0.add(&p.pa).and_then(|s| s.add(&p.ps)).map_err(fail)?;
    let rank = p.pa.rank();
    let expected = n * (n - 1) / 2;
    let trace = p.p0.trace();
    let mut trace_check = Check::new("p0-trace", trace.is_one()).data(&json!({ "trace": trace.to_string() }));
    if !trace.is_one() {
        trace_check.witness = Some(json!({ "trace": trace.to_string() }));
    }
    Ok(vec![
        outcome_check("pa-idempotent", &CheckOutcome::compare(&pa2, &p.pa), n, 2),
        outcome_check("p0-idempotent", &CheckOutcome::compare(&p02, &p.p0), n, 2),
        outcome_check(
            "pa-p0-orthogonal",
            &CheckOutcome::compare(&pap0, &SqMat::zeros(nn)),
            n,
            2,
        ),
        outcome_check(
            "resolution-of-identity",
            &CheckOutcome::compare(&sum, &SqMat::identity(nn)),
            n,
            2,
        ),
        trace_check,
        Check::new("pa-rank", rank == expected)
            .data(&json!({ "rank": rank, "expected": expected }))
            .lines([format!("rank P_A = {rank}, expected {expected}")]),
        outcome_check("characteristic-equation", &check_char_eq(&p.rhat, n)?, n, 2),
    ])
}

pub fn projectors(n: usize) -> CmdResult {
    GroupShape::new(n)?;
    let mut report = Report::new("projectors", n);
    for c in projector_checks(n)? {
        report.push(c);
    }
    Ok(Output::Report(report))
}

fn classification_check(spec: &ConjugationSpec, rdata: &RData) -> Result<Vec<Check>, CliError> {
    match classify_spec(spec, rdata) {
        Ok(cl) => Ok(classification_checks(spec, &cl)),
        Err(RealFormsError::Unclassifiable) => Ok(vec![Check::new("classification", false)
            .witness(Some(json!({ "reason": "unclassifiable", "spec": spec.to_string() })))]),
        Err(e) => Err(e.into()),
    }
}

fn classification_checks(spec: &ConjugationSpec, cl: &Classification) -> Vec<Check> {
    let signature = cl.signature.map(|s| [s.positive, s.negative]);
    let mut lines = vec![format!("spec: {spec}"), format!("label: {}", cl.label)];
    if let Some([p, m]) = signature {
        lines.push(format!("signature: ({p},{m})"));
    }
    let mut out = vec![Check::new("classification", true)
        .data(&json!({
            "spec": spec,
            "label": cl.label,
            "signature": signature,
            "basis": cl.basis,
        }))
        .lines(lines)];
    if let Some(sym) = cl.symbolic_involution {
        out.push(Check::new("plane-conjugation-involutive", sym));
    }
    if let Some(rep) = &cl.sostar {
        out.push(outcome_check("sostar-metric", &rep.metric, spec.dim(), 1));
        out.push(
            outcome_check("sostar-transport", &rep.transport, spec.dim(), 1)
                .data(&json!({ "unit": rep.transport_unit.as_ref().map(Scalar::to_string) })),
        );
        out.push(outcome_check("sostar-reduction", &rep.reduction, spec.dim(), 1));
    }
    out
}

pub fn classify(n: usize, regime: RegimeArg, base: Option<BaseArg>, autos: Option<&str>) -> CmdResult {
    let rdata = RData::new(n)?;
    let regime = regime_of(regime);
    let base = match base {
        Some(BaseArg::Star) => Base::Star,
        Some(BaseArg::Cross) => Base::Cross,
        None if regime == ConjRegime::RealQ => Base::Star,
        None => Base::Cross,
    };
    let autos = match autos {
        Some(text) if !text.trim().is_empty() => parse_autos(text, n)?,
        _ => Vec::new(),
    };
    let spec = ConjugationSpec::new(base, autos, regime, n)?;
    let mut report = Report::new("classify", n);
    report.regime = Some(regime.to_string());
    for c in classification_check(&spec, &rdata)? {
        report.push(c);
    }
    Ok(Output::Report(report))
}

pub fn table(n: usize, regime: RegimeArg) -> CmdResult {
    let count = count_real_forms(n, regime_of(regime))?;
    let rows = count
        .classes
        .iter()
        .map(|class| {
            let rep = class.representative();
            TableRow {
                spec: to_value(rep),
                label: class.label.map(|l| l.to_string()),
                signature: class.signature.map(|s| [s.positive, s.negative]),
                spec_text: rep.to_string(),
                members: class.members.len(),
            }
        })
        .collect();
    Ok(Output::Table(rows))
}

fn rule_lines(rs: &RewriteSystem) -> Vec<String> {
    rs.rules().map(|(lhs, rhs)| format!("{lhs} -> {rhs}")).collect()
}

fn confluence_check(rs: &RewriteSystem) -> Check {
    match check_confluence(rs) {
        Confluence::Yes => Check::new("confluence", true),
        Confluence::No(w) => {
            let line = format!("overlap {}: {} vs {}", w.word, w.left, w.right);
            Check::new("confluence", false).witness(Some(&w)).lines([line])
        }
        Confluence::Unchecked => Check::new("confluence", false),
    }
}

fn relations_check(rs: &RewriteSystem, n: usize) -> Check {
    let expected = n * (n - 1) / 2;
    Check::new("plane-relations", rs.len() == expected)
        .data(rs)
        .lines(rule_lines(rs))
}

pub fn plane(n: usize, relations: bool, confluence: bool) -> CmdResult {
    let rs = plane_relations(n)?;
    let mut report = Report::new("plane", n);
    if relations || !confluence {
        report.push(relations_check(&rs, n));
    }
    if confluence {
        report.push(confluence_check(&rs));
    }
    Ok(Output::Report(report))
}

fn star_check(rs: &RewriteSystem, k: &SqMat, regime: ConjRegime, name: &str) -> Check {
    let rep = check_star_consistency(rs, k, regime);
    let lines = rep
        .failures
        .iter()
        .map(|f| format!("relation {}: residue {}", f.relation, f.residue));
    let mut c = Check::new(name, rep.pass()).lines(lines);
    if !rep.pass() {
        c.witness = Some(to_value(&rep));
    }
    c
}

pub fn plane_conj(n: usize, spec_text: &str, check: bool) -> CmdResult {
    let rdata = RData::new(n)?;
    let spec = ConjugationSpec::parse(spec_text, n)?;
    let mut report = Report::new("plane-conj", n);
    report.regime = Some(spec.regime.to_string());
    let k = match plane_conjugation_matrix(&spec, &rdata) {
        Ok(k) => k,
        Err(RealFormsError::NoPlaneConjugation) => {
            report.push(Check::new("plane-conjugation", false).witness(Some(json!({
                "reason": "composed automorphism squares to -1",
                "spec": spec.to_string(),
            }))));
            return Ok(Output::Report(report));
        }
        Err(e) => return Err(e.into()),
    };
    let images: Vec<String> = (1..=n)
        .map(|a| conj_poly(&NcPoly::generator(a), &k, spec.regime).to_string())
        .collect();
    let lines = images
        .iter()
        .enumerate()
        .map(|(a, img)| format!("(x{})* = {img}", a + 1));
    report.push(
        Check::new("plane-conjugation", true)
            .data(&json!({ "spec": spec, "k": k, "images": images }))
            .lines(lines),
    );
    if check {
        let rs = plane_relations(n)?;
        report.push(star_check(&rs, &k, spec.regime, "star-consistency"));
    }
    Ok(Output::Report(report))
}

pub fn quotient(sign: SignArg, unscaled: bool) -> CmdResult {
    let sign = match sign {
        SignArg::Plus => QuotientSign::Plus,
        SignArg::Minus => QuotientSign::Minus,
    };
    let rep = quotient_check_with(sign, !unscaled)?;
    let mut report = Report::new("quotient", 4);
    report.push(Check::new("quotient-confluent", rep.confluent).data(&json!({ "rules_added": rep.rules_added })));
    let failing: Vec<_> = rep.residues.iter().filter(|(_, r)| !r.is_zero()).collect();
    let lines = rep
        .residues
        .iter()
        .map(|(w, r)| format!("relation {w}: normal form {r}"));
    let mut embed = Check::new("subplane-embedding", failing.is_empty())
        .data(&json!({ "sign": sign, "scaled": rep.scaled }))
        .lines(lines);
    if !failing.is_empty() {
        embed.witness = Some(json!(failing
            .iter()
            .map(|(w, r)| json!({ "relation": w, "normal_form": r }))
            .collect::<Vec<_>>()));
    }
    report.push(embed);
    Ok(Output::Report(report))
}

pub fn verify_all(n: usize, force: bool) -> CmdResult {
    let shape = shape(n, force)?;
    let rdata = RData::new(n)?;
    let mut report = Report::new("verify-all", n);
    let fail = |e: qortho::linalg::LinalgError| CliError::Failed(e.to_string());

    let cc = rdata.metric.matmul(&rdata.metric).map_err(fail)?;
    report.push(outcome_check(
        "metric-squares-to-identity",
        &CheckOutcome::compare(&cc, &SqMat::identity(n)),
        n,
        1,
    ));
    report.push(outcome_check("ybe", &check_ybe(&rdata.r, n)?, n, 3));
    for c in projector_checks(n)? {
        report.push(c);
    }
    report.push(outcome_check(
        "r-reality-unit",
        &check_r_reality(&rdata.r, ConjRegime::UnitModulusQ, n)?,
        n,
        2,
    ));
    report.push(outcome_check(
        "r-reality-real",
        &check_r_reality(&rdata.r, ConjRegime::RealQ, n)?,
        n,
        2,
    ));

    let mut families = vec![FamilyKind::CanonicalSharp, FamilyKind::DPrime];
    if !shape.is_odd() {
        families.push(FamilyKind::DSecond);
    }
    for kind in families {
        let name = match kind {
            FamilyKind::CanonicalSharp => "automorphism-canonical",
            FamilyKind::DPrime => "automorphism-dprime",
            FamilyKind::DSecond => "automorphism-dsecond",
        };
        let mut check = Check::new(name, true);
        let members = enumerate_autos(n, kind)?;
        for a in &members {
            let failure = match check_auto_conditions(&a.mat, &rdata) {
                Err(RealFormsError::ConditionFailed { condition, witness }) => Some(
                    json!({ "auto": a.family.to_string(), "condition": condition.to_string(), "mismatch": witness }),
                ),
                Err(e) => return Err(e.into()),
                Ok(_) => {
                    [Base::Star, Base::Cross]
                        .into_iter()
                        .find_map(|base| match check_reality(&a.mat, base, &rdata) {
                            Ok(out) if out.pass => None,
                            Ok(out) => {
                                Some(json!({ "auto": a.family.to_string(), "reality": base, "mismatch": out.witness }))
                            }
                            Err(e) => Some(json!({ "auto": a.family.to_string(), "error": e.to_string() })),
                        })
                }
            };
            if let Some(w) = failure {
                check = Check::new(name, false).witness(Some(w));
                break;
            }
        }
        report.push(check.data(&json!({ "members": members.len() })));
    }

    let rs = plane_relations(n)?;
    let mut rel = relations_check(&rs, n);
    rel.lines.clear();
    report.push(rel);
    report.push(confluence_check(&rs));
    let mut star_failures = Vec::new();
    let mut star_checked = 0;
    for regime in [ConjRegime::RealQ, ConjRegime::UnitModulusQ] {
        for spec in enumerate_specs(n, regime)? {
            let Ok(k) = plane_conjugation_matrix(&spec, &rdata) else {
                continue;
            };
            star_checked += 1;
            if !check_star_consistency(&rs, &k, regime).pass() {
                star_failures.push(spec.to_string());
            }
        }
    }
    let mut star = Check::new("star-consistency", star_failures.is_empty()).data(&json!({ "specs": star_checked }));
    if !star_failures.is_empty() {
        star.witness = Some(json!({ "specs": star_failures }));
    }
    report.push(star);

    for regime in [ConjRegime::RealQ, ConjRegime::UnitModulusQ] {
        let count = count_real_forms(n, regime)?;
        let expected = expected_count(n, regime)?;
        let name = format!("real-form-count-{regime}");
        let mut c = Check::new(name, count.count() == expected).data(&json!({
            "count": count.count(),
            "expected": expected,
            "triality_caveat": count.triality_caveat,
        }));
        c.lines.push(format!("{} classes, expected {expected}", count.count()));
        if count.count() != expected {
            c.witness = Some(json!({ "count": count.count(), "expected": expected }));
        }
        report.push(c);
    }

    let mut witness_check = Check::new("equivalence-witnesses", true);
    let entries = builtin_witnesses(n)?;
    for e in &entries {
        if let Err(err) = check_equivalence_witness(&e.a, &e.spec1, &e.spec2, &rdata, e.level) {
            witness_check = Check::new("equivalence-witnesses", false).witness(Some(json!({
                "name": e.name,
                "spec1": e.spec1.to_string(),
                "spec2": e.spec2.to_string(),
                "error": err.to_string(),
            })));
            break;
        }
    }
    report.push(witness_check.data(&json!({ "witnesses": entries.len() })));

    if !shape.is_odd() {
        let mut c = Check::new("sostar", true);
        for ds in enumerate_autos(n, FamilyKind::DSecond)? {
            let rep = check_sostar(&rdata, &ds.mat, None)?;
            if !rep.pass() {
                c = Check::new("sostar", false).witness(Some(json!({ "auto": ds.family.to_string(), "report": rep })));
                break;
            }
        }
        report.push(c);
    }

    if n == 4 {
        for sign in [QuotientSign::Plus, QuotientSign::Minus] {
            let rep = quotient_check_with(sign, true)?;
            let name = format!("quotient-{}", to_value(&sign).as_str().unwrap_or_default());
            let mut c = Check::new(name, rep.pass());
            if !rep.pass() {
                c.witness = Some(to_value(&rep));
            }
            report.push(c);
        }
    }
    Ok(Output::Report(report))
}
