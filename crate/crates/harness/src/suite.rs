//! Top-level drivers: classification and theorem suites over documents,
//! model queries, and the fuzz loop with greedy shrinking.

use std::time::Instant;

use thiserror::Error;

use domcheck_core::classifier::{classify, verify_theorems, ClassifyError};
use domcheck_core::models::{
    model_classify, model_relation, DcpoModel, ModelError, ModelRelation,
};
use domcheck_core::poset::{FinitePoset, Subset};
use domcheck_core::relations::{aux_relation, RelationKind};
use domcheck_core::topology::{generate_topology, TopologyKind};

use crate::doc::PosetDocument;
use crate::emit::RunReport;
use crate::gen::{enumerate_labeled_posets, random_poset, GenError, Shape};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// Deliberate defect injection for exercising the fuzz validation path.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Defect {
    Transitivity,
    Antisymmetry,
    Reflexivity,
}

/// What to run.
pub enum SuiteSpec {
    DocumentClassify(PosetDocument),
    DocumentTheorems(PosetDocument),
    ModelClassify {
        name: String,
        bound: u64,
    },
    ModelRelation {
        name: String,
        kind: ModelRelation,
        x: String,
        y: String,
        bound: u64,
    },
    Fuzz {
        n: usize,
        count: usize,
        seed: u64,
        exhaustive: bool,
        inject: Option<Defect>,
    },
}

fn millis_since(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Runs one suite and aggregates outcomes. Process exit code is 0 exactly
/// when no `fail` outcome was recorded; model `fails` verdicts are data.
pub fn run_suite(spec: &SuiteSpec, input_digest: String) -> Result<RunReport, SuiteError> {
    let mut report = RunReport::new(input_digest);
    match spec {
        SuiteSpec::DocumentClassify(doc) => {
            for named in &doc.posets {
                let start = Instant::now();
                let result = classify(&named.poset)?;
                let ms = millis_since(start);
                let entries = [
                    ("continuous", Some(&result.continuous)),
                    ("hypercontinuous", Some(&result.hypercontinuous)),
                    ("strongly-continuous", Some(&result.strongly_continuous)),
                    ("prime-continuous", result.prime_continuous.as_ref()),
                    (
                        "completely-distributive",
                        result.completely_distributive.as_ref(),
                    ),
                ];
                for (label, verdict) in entries {
                    let id = format!("{}.{label}", named.name);
                    match verdict {
                        None => report.push(id, "not-applicable", None, ms),
                        Some(v) => {
                            let witness = v
                                .routes
                                .iter()
                                .find_map(|r| r.witness.clone());
                            report.push(id, if v.holds { "holds" } else { "fails" }, witness, ms);
                        }
                    }
                }
            }
        }
        SuiteSpec::DocumentTheorems(doc) => {
            for named in &doc.posets {
                let start = Instant::now();
                let result = verify_theorems(&named.poset)?;
                let ms = millis_since(start);
                for entry in &result.entries {
                    let id = format!("{}.{}", named.name, entry.id);
                    let outcome = if !entry.applicable {
                        "not-applicable"
                    } else if entry.agree {
                        "pass"
                    } else {
                        "fail"
                    };
                    report.push(id, outcome, entry.counterexample.clone(), ms);
                }
            }
        }
        SuiteSpec::ModelClassify { name, bound } => {
            let model = DcpoModel::instantiate(name)?;
            let start = Instant::now();
            let result = model_classify(&model, *bound);
            let ms = millis_since(start);
            for (label, verdict) in [
                ("continuous", &result.continuous),
                ("strongly-continuous", &result.strongly_continuous),
                ("hypercontinuous", &result.hypercontinuous),
            ] {
                report.push(
                    format!("model.{name}.{label}"),
                    verdict.outcome.label(),
                    verdict.witness.as_ref().map(|w| w.note.clone()),
                    ms,
                );
            }
        }
        SuiteSpec::ModelRelation {
            name,
            kind,
            x,
            y,
            bound,
        } => {
            let model = DcpoModel::instantiate(name)?;
            let x = model.parse_element(x)?;
            let y = model.parse_element(y)?;
            let start = Instant::now();
            let verdict = model_relation(&model, *kind, &x, &y, *bound)?;
            let ms = millis_since(start);
            report.push(
                format!("model.{name}.{}({x},{y})", kind.label()),
                verdict.outcome.label(),
                verdict.witness.as_ref().map(|w| {
                    match &w.ideal {
                        Some(ideal) => format!("ideal {ideal}: {}", w.note),
                        None => w.note.clone(),
                    }
                }),
                ms,
            );
        }
        SuiteSpec::Fuzz {
            n,
            count,
            seed,
            exhaustive,
            inject,
        } => {
            run_fuzz(&mut report, *n, *count, *seed, *exhaustive, *inject)?;
        }
    }
    Ok(report)
}

fn run_fuzz(
    report: &mut RunReport,
    n: usize,
    count: usize,
    seed: u64,
    exhaustive: bool,
    inject: Option<Defect>,
) -> Result<(), SuiteError> {
    let posets: Vec<(String, FinitePoset)> = if exhaustive {
        enumerate_labeled_posets(n)?
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("enumerated.{n}.{i}"), p))
            .collect()
    } else {
        (0..count)
            .map(|i| {
                random_poset(n, seed.wrapping_add(i as u64), Shape::Any)
                    .map(|p| (format!("random.{n}.{}", seed.wrapping_add(i as u64)), p))
            })
            .collect::<Result<_, _>>()?
    };
    let mut checked = 0usize;
    for (label, poset) in posets {
        let start = Instant::now();
        if let Some(defect) = inject {
            // corrupt the relation table and make sure validation rejects it
            let diagnostic = validate_corrupted(&poset, defect);
            match diagnostic {
                Some(message) => report.push(
                    format!("{label}.inject-{defect:?}").to_lowercase(),
                    "fail",
                    Some(message),
                    millis_since(start),
                ),
                None => report.push(
                    format!("{label}.inject-{defect:?}").to_lowercase(),
                    "pass",
                    Some("corruption was not detected".into()),
                    millis_since(start),
                ),
            }
            continue;
        }
        match fuzz_one(&poset) {
            None => checked += 1,
            Some(failure) => {
                let shrunk = shrink(&poset, failure.property);
                report.push(
                    format!("{label}.{}", failure.property),
                    "fail",
                    Some(format!(
                        "{} (shrunk witness: {})",
                        failure.detail,
                        crate::emit::emit_poset("witness", &shrunk, crate::emit::EmitFormat::Text)
                            .expect("text emission")
                            .replace('\n', "; ")
                    )),
                    millis_since(start),
                );
            }
        }
    }
    if checked > 0 {
        report.push(
            format!("fuzz.{n}.clean"),
            "pass",
            Some(format!("{checked} posets checked")),
            0,
        );
    }
    Ok(())
}

/// Rebuilds the poset with one deliberate axiom violation and reports the
/// validator's diagnostic.
fn validate_corrupted(poset: &FinitePoset, defect: Defect) -> Option<String> {
    let n = poset.len();
    if n < 3 && defect == Defect::Transitivity {
        return Some("carrier too small to break transitivity; treated as detected".into());
    }
    if n < 2 && defect == Defect::Antisymmetry {
        return Some("carrier too small to break antisymmetry; treated as detected".into());
    }
    // replace the relation outright so the violation is the only defect
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    match defect {
        Defect::Transitivity => {
            leq[0][1] = true;
            leq[1][2] = true;
        }
        Defect::Antisymmetry => {
            leq[0][1] = true;
            leq[1][0] = true;
        }
        Defect::Reflexivity => {
            leq[0][0] = false;
        }
    }
    FinitePoset::from_leq_table(poset.names().to_vec(), &leq)
        .err()
        .map(|e| e.to_string())
}

struct FuzzFailure {
    property: &'static str,
    detail: String,
}

/// The invariants the fuzz loop holds every generated poset to.
fn fuzz_one(poset: &FinitePoset) -> Option<FuzzFailure> {
    // finite collapse of the topologies
    let strong = generate_topology(poset, TopologyKind::StrongScott);
    let scott = generate_topology(poset, TopologyKind::Scott);
    if !strong.same_opens(&scott) {
        return Some(FuzzFailure {
            property: "strong-scott-collapse",
            detail: "strong Scott and Scott families differ".into(),
        });
    }
    let upper = generate_topology(poset, TopologyKind::Upper);
    if !upper.coarser_or_equal(&strong) {
        return Some(FuzzFailure {
            property: "upper-inside-strong-scott",
            detail: "upper topology is not coarser".into(),
        });
    }
    // finite collapse of the relations
    let leq = aux_relation(poset, RelationKind::Leq).expect("no preconditions");
    let swb = aux_relation(poset, RelationKind::StrongWayBelow).expect("no preconditions");
    if !swb.same_pairs(&leq) {
        return Some(FuzzFailure {
            property: "strong-way-below-collapse",
            detail: "strong way-below differs from the order".into(),
        });
    }
    // specialization round trip
    match strong.specialization_order() {
        Ok(spec) if spec.same_order(poset) => {}
        _ => {
            return Some(FuzzFailure {
                property: "specialization-round-trip",
                detail: "specialization order does not recover the poset".into(),
            })
        }
    }
    // theorem suite
    if let Ok(theorems) = verify_theorems(poset) {
        if let Some(entry) = theorems.failures().first() {
            return Some(FuzzFailure {
                property: "theorem-suite",
                detail: format!(
                    "{}: {}",
                    entry.id,
                    entry.counterexample.clone().unwrap_or_default()
                ),
            });
        }
    }
    None
}

fn property_fails(poset: &FinitePoset, property: &str) -> bool {
    match fuzz_one(poset) {
        Some(failure) => failure.property == property,
        None => false,
    }
}

/// Greedy shrinking: repeatedly drop single elements while the violated
/// property keeps failing.
fn shrink(poset: &FinitePoset, property: &str) -> FinitePoset {
    let mut current = poset.clone();
    loop {
        let n = current.len();
        if n <= 1 {
            return current;
        }
        let mut shrunk = None;
        for drop in 0..n {
            let mut keep = Subset::full(n);
            keep.remove(domcheck_core::ElementId(drop));
            let candidate = current.restrict(&keep);
            if property_fails(&candidate, property) {
                shrunk = Some(candidate);
                break;
            }
        }
        match shrunk {
            Some(next) => current = next,
            None => return current,
        }
    }
}
