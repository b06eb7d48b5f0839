//! The `invcat` command line: one computation per invocation, reported as
//! canonical JSON on standard output.
//!
//! Exit codes: 0 on success or a positive verdict, 1 when axioms fail or a
//! verdict is inconclusive, 2 on input errors.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::actions::{validate_partial, PartialActionBundle};
use crate::algebra::{decompose, morita_check, MoritaStatus};
use crate::bernoulli::{
    bernoulli_global_bundle, bernoulli_partial, bernoulli_strict, bernoulli_strict_global_bundle,
    build_p, BernoulliPoset, StrictBernoulli,
};
use crate::category::{find_inverse_structure, validate_category, Functor, InverseCategory, ObjectId};
use crate::completion::{
    cauchy_completion, completion_functor, enlargement_check, equivalence_check, idempotent_classes,
    restriction_groupoid,
};
use crate::error::{Error, Limits, Result};
use crate::expansion::{inner_szendrei, szendrei, SzVariant};
use crate::spec_file::{CategorySpecFile, EmbeddingFile};

#[derive(Debug, Parser)]
#[command(name = "invcat", version, about = "Computations on finite inverse categories")]
pub struct Cli {
    /// Cap on enumerated elements.
    #[arg(long, global = true, env = "INVCAT_MAX_ELEMENTS")]
    pub max_elements: Option<usize>,

    /// Omit the timing section from the report.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category axioms and compute generalized inverses.
    Validate { path: PathBuf },
    /// Bernoulli posets and the domains of the four Bernoulli actions.
    Bernoulli {
        path: PathBuf,
        /// List the points of P∘(C) instead of P(C).
        #[arg(long)]
        circ: bool,
    },
    /// A Szendrei expansion.
    Expand {
        path: PathBuf,
        #[arg(long, default_value = "global")]
        variant: SzVariant,
        /// Also tabulate the pseudo product on the inner expansion at OBJECT.
        #[arg(long, value_name = "OBJECT")]
        inner: Option<String>,
        /// Write the expansion to FILE as a category description.
        #[arg(long, value_name = "FILE")]
        emit_spec: Option<PathBuf>,
    },
    /// Cauchy completion, restriction groupoid and idempotent classes.
    Cauchy { path: PathBuf },
    /// Check whether D is an enlargement of C.
    Enlargement {
        c: PathBuf,
        d: PathBuf,
        /// Morphism-name map from C to D; names are matched when omitted.
        #[arg(long, value_name = "FILE")]
        embedding: Option<PathBuf>,
    },
    /// Block decomposition of the convolution algebra.
    Decompose { path: PathBuf },
    /// Compare the block decompositions of two convolution algebras.
    Morita { a: PathBuf, b: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Bernoulli { .. } => "bernoulli",
            Command::Expand { .. } => "expand",
            Command::Cauchy { .. } => "cauchy",
            Command::Enlargement { .. } => "enlargement",
            Command::Decompose { .. } => "decompose",
            Command::Morita { .. } => "morita",
        }
    }
}

/// The finished report and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
struct Input {
    path: String,
    sha256: String,
}

struct Run {
    inputs: Vec<Input>,
    limits: Limits,
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        self.inputs.push(Input {
            path: path.display().to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        });
        String::from_utf8(bytes).map_err(|e| Error::Parse {
            line: 1,
            column: 1,
            message: e.to_string(),
        })
    }

    fn spec(&mut self, path: &Path) -> Result<CategorySpecFile> {
        let text = self.read(path)?;
        CategorySpecFile::parse(&text)
    }

    fn inverse(&mut self, path: &Path) -> Result<Arc<InverseCategory>> {
        Ok(Arc::new(self.spec(path)?.to_inverse()?))
    }
}

/// The payload and exit code of a successful command.
type Payload = (Value, Vec<Value>, i32);

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut limits = Limits::default();
    if let Some(n) = cli.max_elements {
        limits = limits.with_max_elements(n);
    }
    let mut state = Run {
        inputs: Vec::new(),
        limits,
    };
    let result = dispatch(&cli.command, &mut state);
    let mut report = serde_json::Map::new();
    report.insert("command".into(), json!(cli.command.name()));
    report.insert("inputs".into(), json!(state.inputs));
    let code = match result {
        Ok((payload, violations, code)) => {
            report.insert("result".into(), payload);
            report.insert("violations".into(), json!(violations));
            code
        }
        Err(e) => {
            report.insert("error".into(), error_value(&e));
            2
        }
    };
    report.insert("exit_code".into(), json!(code));
    if !cli.no_timing {
        report.insert(
            "timing".into(),
            json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1000.0 }),
        );
    }
    Outcome {
        code,
        report: Value::Object(report),
    }
}

fn error_value(e: &Error) -> Value {
    let mut v = json!({ "code": e.code(), "message": e.to_string() });
    match e {
        Error::Parse { line, column, .. } => {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        Error::SizeCapExceeded { estimate, cap, what } => {
            v["estimate"] = json!(estimate);
            v["cap"] = json!(cap);
            v["what"] = json!(what);
        }
        Error::InvalidCategory(report) | Error::InvalidAction(report) => {
            v["violations"] = json!(report.violations);
        }
        Error::NotInverseCategory { morphism, count } => {
            v["morphism"] = json!(morphism);
            v["count"] = json!(count);
        }
        _ => {}
    }
    v
}

fn dispatch(command: &Command, state: &mut Run) -> Result<Payload> {
    match command {
        Command::Validate { path } => cmd_validate(state, path),
        Command::Bernoulli { path, circ } => cmd_bernoulli(state, path, *circ),
        Command::Expand {
            path,
            variant,
            inner,
            emit_spec,
        } => cmd_expand(state, path, *variant, inner.as_deref(), emit_spec.as_deref()),
        Command::Cauchy { path } => cmd_cauchy(state, path),
        Command::Enlargement { c, d, embedding } => cmd_enlargement(state, c, d, embedding.as_deref()),
        Command::Decompose { path } => cmd_decompose(state, path),
        Command::Morita { a, b } => cmd_morita(state, a, b),
    }
}

fn cmd_validate(state: &mut Run, path: &Path) -> Result<Payload> {
    let spec = state.spec(path)?;
    let cat = spec.to_category()?;
    let report = validate_category(&cat);
    let violations: Vec<Value> = report.violations.iter().map(|v| json!(v)).collect();
    let mut result = json!({
        "valid": report.valid,
        "objects": cat.object_count(),
        "morphisms": cat.morphism_count(),
    });
    if !report.valid {
        result["inverse"] = json!(false);
        return Ok((result, violations, 1));
    }
    match find_inverse_structure(&cat) {
        Ok(_) => {
            let ic = spec.to_inverse()?;
            let map: serde_json::Map<String, Value> = ic
                .morphisms()
                .map(|s| (ic.name(s).to_string(), json!(ic.name(ic.inv(s)))))
                .collect();
            result["inverse"] = json!(true);
            result["inverse_map"] = Value::Object(map);
            result["idempotents"] = json!(ic.names(&ic.idempotents()));
            Ok((result, violations, 0))
        }
        Err(Error::NotInverseCategory { morphism, count }) => {
            result["inverse"] = json!(false);
            let v = json!({ "rule": "unique-inverse", "witnesses": [morphism], "count": count });
            Ok((result, vec![v], 1))
        }
        Err(e) => Err(e),
    }
}

fn bundle_domains(p: &BernoulliPoset, b: &PartialActionBundle) -> Value {
    let cat = &b.cat;
    let map: serde_json::Map<String, Value> = cat
        .morphisms()
        .map(|s| {
            let names: Vec<&str> = b.domain(s).iter().map(|x| b.poset.name(x)).collect();
            (cat.name(s).to_string(), json!(names))
        })
        .collect();
    let report = validate_partial(b, false);
    json!({
        "points": p.len(),
        "global": b.is_global(),
        "valid": report.valid,
        "domains": map,
    })
}

fn cmd_bernoulli(state: &mut Run, path: &Path, circ: bool) -> Result<Payload> {
    let cat = state.inverse(path)?;
    let limits = state.limits;
    let p = build_p(&cat, &limits)?;
    let (pc, partial) = bernoulli_partial(&cat, &limits)?;
    let StrictBernoulli::Partial(_, strict_partial) = bernoulli_strict(&cat, false, &limits)? else {
        unreachable!()
    };
    let shown = if circ { &pc } else { &p };
    let elements: Vec<Value> = (0..shown.len())
        .map(|i| {
            let el = shown.element(i);
            json!({
                "name": shown.name(i),
                "object": cat.object_name(el.object),
                "idempotent": cat.name(el.idempotent),
            })
        })
        .collect();
    let mut order = Vec::new();
    for a in 0..shown.len() {
        for b in 0..shown.len() {
            if a != b && shown.leq(a, b) {
                order.push(json!([shown.name(a), shown.name(b)]));
            }
        }
    }
    let variants = json!({
        "global": bundle_domains(&p, &bernoulli_global_bundle(&p)?),
        "partial": bundle_domains(&pc, &partial),
        "strict-global": bundle_domains(&p, &bernoulli_strict_global_bundle(&p)?),
        "strict-partial": bundle_domains(&pc, &strict_partial),
    });
    let all_valid = ["global", "partial", "strict-global", "strict-partial"]
        .iter()
        .all(|k| variants[k]["valid"] == json!(true));
    let result = json!({
        "p_count": p.len(),
        "p_circ_count": pc.len(),
        "listed": if circ { "p_circ" } else { "p" },
        "elements": elements,
        "order": order,
        "actions": variants,
    });
    Ok((result, Vec::new(), if all_valid { 0 } else { 1 }))
}

fn cmd_expand(
    state: &mut Run,
    path: &Path,
    variant: SzVariant,
    inner: Option<&str>,
    emit_spec: Option<&Path>,
) -> Result<Payload> {
    let cat = state.inverse(path)?;
    let sz = szendrei(&cat, variant, &state.limits)?;
    let arrows: Vec<Value> = sz
        .morphisms()
        .map(|m| {
            let a = sz.arrow(m);
            json!({
                "name": sz.name(m),
                "point": sz.bernoulli.name(a.point),
                "morphism": cat.name(a.mor),
                "src": sz.object_name(sz.src(m)),
                "tgt": sz.object_name(sz.tgt(m)),
            })
        })
        .collect();
    let mut result = json!({
        "variant": variant.as_str(),
        "objects": sz.object_count(),
        "arrow_count": sz.morphism_count(),
        "arrows": arrows,
        "idempotents": sz.names(&sz.idempotents()),
    });
    let mut code = 0;
    if let Some(object) = inner {
        let x: ObjectId = cat.object(object)?;
        let semigroup = inner_szendrei(&sz, x)?;
        let table: Vec<Vec<&str>> = semigroup
            .table
            .iter()
            .map(|row| row.iter().map(|&k| semigroup.names[k].as_str()).collect())
            .collect();
        let inverse = semigroup.is_inverse_semigroup();
        if !inverse {
            code = 1;
        }
        result["inner"] = json!({
            "object": object,
            "elements": semigroup.names,
            "table": table,
            "associative": semigroup.is_associative(),
            "inverse_semigroup": inverse,
            "identity": semigroup.identity().map(|i| semigroup.names[i].clone()),
        });
    }
    if let Some(out) = emit_spec {
        std::fs::write(out, CategorySpecFile::from_inverse(&sz).to_text())?;
        result["emitted"] = json!(out.display().to_string());
    }
    Ok((result, Vec::new(), code))
}

fn cmd_cauchy(state: &mut Run, path: &Path) -> Result<Payload> {
    let cat = state.inverse(path)?;
    let cc = cauchy_completion(&cat, &state.limits)?;
    let (groupoid, _) = restriction_groupoid(&cc)?;
    let c = &cc.category;
    let classes: Vec<Value> = idempotent_classes(&cat)?
        .into_iter()
        .map(|k| {
            json!({
                "representative": cat.name(k.representative),
                "multiplicity": k.members.len(),
                "members": cat.names(&k.members),
                "group_order": k.group.order(),
                "group": k.group.elements,
            })
        })
        .collect();
    let result = json!({
        "objects": c.objects().map(|x| c.object_name(x)).collect::<Vec<_>>(),
        "morphisms": c.morphisms().map(|m| c.name(m)).collect::<Vec<_>>(),
        "morphism_count": c.morphism_count(),
        "restriction_groupoid": groupoid.morphisms().map(|m| groupoid.name(m)).collect::<Vec<_>>(),
        "restriction_groupoid_count": groupoid.morphism_count(),
        "idempotent_classes": classes,
    });
    Ok((result, Vec::new(), 0))
}

fn cmd_enlargement(state: &mut Run, c_path: &Path, d_path: &Path, embedding: Option<&Path>) -> Result<Payload> {
    let c = state.inverse(c_path)?;
    let d = state.inverse(d_path)?;
    let f = match embedding {
        Some(p) => {
            let text = state.read(p)?;
            EmbeddingFile::parse(&text)?.to_functor(&c, &d)?
        }
        None => Functor::by_equal_names(&c, &d)?,
    };
    let report = enlargement_check(&c, &d, &f)?;
    let (cc, cd) = (
        cauchy_completion(&c, &state.limits)?,
        cauchy_completion(&d, &state.limits)?,
    );
    let induced = completion_functor(&f, &cc, &cd)?;
    let equivalence = equivalence_check(&cc.category, &cd.category, &induced)?;
    let mut violations = Vec::new();
    for (rule, check) in [("(I)", &report.axiom1), ("(II)", &report.axiom2), ("(III)", &report.axiom3)] {
        for w in &check.witnesses {
            violations.push(json!({ "rule": rule, "witnesses": w }));
        }
    }
    let code = if report.overall { 0 } else { 1 };
    let result = json!({
        "enlargement": report,
        "completions_equivalent": equivalence,
    });
    Ok((result, violations, code))
}

fn cmd_decompose(state: &mut Run, path: &Path) -> Result<Payload> {
    let cat = state.inverse(path)?;
    let d = decompose(&cat)?;
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .map(|b| {
            json!({
                "representative": b.representative,
                "multiplicity": b.multiplicity,
                "group_order": b.group.order(),
                "group": b.group.elements,
                "dimension": b.dimension(),
            })
        })
        .collect();
    let result = json!({
        "blocks": blocks,
        "dimension_identity": {
            "morphisms": d.morphisms,
            "sum": d.dimension(),
            "holds": d.morphisms == d.dimension(),
        },
    });
    Ok((result, Vec::new(), 0))
}

fn cmd_morita(state: &mut Run, a: &Path, b: &Path) -> Result<Payload> {
    let ca = state.inverse(a)?;
    let cb = state.inverse(b)?;
    let verdict = morita_check(&ca, &cb, &state.limits)?;
    let code = match verdict.status {
        MoritaStatus::EquivalentCertified => 0,
        MoritaStatus::Inconclusive => 1,
    };
    Ok((json!(verdict), Vec::new(), code))
}
