use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::Context;
use prealg_core::format::{algebra_value, parse_algebra, parse_map, parse_subspace, write_algebra, FieldSpec};
use prealg_core::idempotents::{
    anti_pre_classification_check, check_pair, is_idempotent_endo, pair_from_idempotent, roundtrip_check, IdempotentKind,
};
use prealg_core::identities::{Identity, IdentityReport};
use prealg_core::morphisms::{classify_map as classify, Condition};
use prealg_core::substructures::{huq_smith_commutator, pre_ideal_commutator, quotient as quotient_by};
use prealg_core::superalgebra::{double as double_algebra, DoublingParams, SuperAlgebra};
use prealg_core::tensor::{generators_in_kernel_check, graded_ideal_closure, theorem_generators, GeneratorKind};
use prealg_core::{Algebra, ProductKind, Subspace};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::text;

pub const REPORT_FORMAT: &str = "prealg-report/1";

/// A finished command: structured fields for `--format json`, lines for
/// `--format text`, and whether every checked claim held.
pub struct Outcome {
    command: &'static str,
    fields: Map<String, Value>,
    lines: Vec<String>,
    pub holds: bool,
    elapsed: Option<Duration>,
}

impl Outcome {
    fn new(command: &'static str, a: &Algebra) -> Self {
        let mut o = Outcome { command, fields: Map::new(), lines: Vec::new(), holds: true, elapsed: None };
        o.set("algebra", a.name());
        o.set("field", FieldSpec::of(a.domain()));
        o.set("dim", a.dim());
        o.line(format!("{command}: {} over {}, dim {}", a.name(), a.domain(), a.dim()));
        o
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.fields.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed = Some(d);
    }

    pub fn json(&self) -> String {
        let mut fields = self.fields.clone();
        fields.insert("format".into(), REPORT_FORMAT.into());
        fields.insert("command".into(), self.command.into());
        fields.insert("holds".into(), self.holds.into());
        if let Some(d) = self.elapsed {
            fields.insert("elapsed_ms".into(), (d.as_millis() as u64).into());
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(fields)).expect("serializable");
        out.push('\n');
        out
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        if let Some(d) = self.elapsed {
            out.push_str(&format!("elapsed: {} ms\n", d.as_millis()));
        }
        out
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_algebra(path: &Path) -> anyhow::Result<Algebra> {
    let text = read(path)?;
    parse_algebra(&text).with_context(|| format!("in {}", path.display()))
}

fn load_subspace(path: &Path, a: &Algebra) -> anyhow::Result<Subspace> {
    let text = read(path)?;
    parse_subspace(&text, a.domain(), a.dim()).with_context(|| format!("in {}", path.display()))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn condition_text(labels: &[String], c: &Condition) -> String {
    match c.witness {
        None => "yes".into(),
        Some(p) => format!("no, fails at {}", text::pair(labels, p)),
    }
}

fn identity_lines(a: &Algebra, r: &IdentityReport) -> Vec<String> {
    let labels = a.labels();
    let method = serde_json::to_value(&r.method).expect("serializable");
    let method = method.as_str().unwrap_or_default().to_string();
    let mut lines = Vec::new();
    match &r.witness {
        None => lines.push(format!("{}: holds [{method}]", r.identity)),
        Some(w) => {
            let args = if w.indices.is_empty() {
                let parts: Vec<String> = w.arguments.iter().map(|v| text::combo(labels, v)).collect();
                format!("({})", parts.join(", "))
            } else {
                text::tuple(labels, &w.indices)
            };
            lines.push(format!(
                "{}: fails [{method}] clause {} at {args}, defect {}",
                r.identity,
                w.clause,
                text::combo(labels, &w.defect)
            ));
        }
    }
    if let Some(c) = &r.caveat {
        lines.push(format!("  caveat: {c}"));
    }
    lines
}

pub fn check(path: &Path, names: &[String], budget: u64) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let identities: Vec<Identity> = if names.is_empty() {
        Identity::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?
    };
    let mut o = Outcome::new("check", &a);
    let reports: Vec<IdentityReport> = identities.iter().map(|i| i.check(&a, budget)).collect();
    for r in &reports {
        for l in identity_lines(&a, r) {
            o.line(l);
        }
    }
    o.holds = reports.iter().all(|r| r.holds);
    o.set("reports", &reports);
    Ok(o)
}

pub fn classify_map(path: &Path, map: &Path, target: Option<&Path>) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let t = match target {
        Some(p) => load_algebra(p)?,
        None => a.clone(),
    };
    let f = parse_map(&read(map)?, &a, &t).with_context(|| format!("in {}", map.display()))?;
    let profile = classify(&f)?;
    let mut o = Outcome::new("classify-map", &a);
    o.set("target", t.name());
    o.set("matrix", f.matrix());
    o.set("profile", profile);
    let labels = a.labels();
    o.line(format!("map {} -> {}: {}", a.name(), t.name(), text::matrix(f.matrix())));
    for (name, c) in [
        ("algebra morphism", &profile.algebra_morphism),
        ("anti-homomorphism", &profile.anti_homomorphism),
        ("pre-morphism", &profile.pre_morphism),
        ("generalized morphism", &profile.generalized_morphism),
        ("anti-pre-morphism", &profile.anti_pre_morphism),
    ] {
        o.line(format!("{name}: {}", condition_text(labels, c)));
    }
    Ok(o)
}

pub fn idempotents(path: &Path, kind: &str, verify: Option<&Path>, budget: u64) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let kind: IdempotentKind = kind.parse()?;
    let mut o = Outcome::new("idempotents", &a);
    o.set("kind", kind);
    let labels = a.labels();
    match verify {
        None => {
            let r = roundtrip_check(&a, kind, budget)?;
            o.set("mode", "enumerate");
            o.line(format!("kind: {kind}"));
            o.line(format!("idempotents |E| = {}, decomposition pairs |P| = {}", r.idempotents, r.pairs));
            o.line(format!("pair -> idempotent -> pair is the identity: {}", yes_no(r.pair_roundtrip)));
            o.line(format!("idempotent -> pair -> idempotent is the identity: {}", yes_no(r.idempotent_roundtrip)));
            o.line(format!("bijection: {}", yes_no(r.bijection)));
            for e in &r.sorted_idempotents {
                o.line(format!("  {}", text::matrix(e)));
            }
            o.holds = r.bijection;
            if kind == IdempotentKind::AntiPreMorphism {
                let c = anti_pre_classification_check(&a, budget)?;
                o.line(format!(
                    "characterization (idempotent, kills [M,M], commuting image) matches on {} matrices: {}",
                    c.matrices_checked,
                    yes_no(c.agree)
                ));
                o.holds &= c.agree;
                o.set("characterization", c);
            }
            o.set("census", r);
        }
        Some(map) => {
            let f = parse_map(&read(map)?, &a, &a).with_context(|| format!("in {}", map.display()))?;
            let e = f.matrix();
            let r = is_idempotent_endo(&a, e, kind)?;
            o.set("mode", "verify");
            o.set("matrix", e);
            o.line(format!("matrix: {}", text::matrix(e)));
            o.line(format!("idempotent: {}", yes_no(r.idempotent)));
            o.line(format!("{kind}: {}", condition_text(labels, &r.condition)));
            o.holds = r.holds;
            if r.holds {
                let pair = pair_from_idempotent(&a, e, kind)?;
                let check = check_pair(&a, &pair)?;
                o.line(format!("kernel: {}", text::subspace(labels, &pair.k_part)));
                o.line(format!("image: {}", text::subspace(labels, &pair.b_part)));
                o.line(format!("valid decomposition pair: {}", yes_no(check.valid)));
                o.holds &= check.valid;
                o.set("pair", &pair);
                o.set("pair_check", check);
            }
            o.set("report", r);
        }
    }
    Ok(o)
}

pub fn decompose(path: &Path, out_dir: Option<&Path>) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let split = a.split_product()?;
    let recombines = split.recombine() == a;
    let comm_ok = split.comm.is_commutative();
    let anti_ok = split.anticomm.is_anticommutative();
    let mut o = Outcome::new("decompose", &a);
    o.set("comm", algebra_value(&split.comm));
    o.set("anticomm", algebra_value(&split.anticomm));
    o.set("recombines", recombines);
    o.set("comm_is_commutative", comm_ok);
    o.set("anticomm_is_anticommutative", anti_ok);
    for (title, part) in [("commutative part", &split.comm), ("anticommutative part", &split.anticomm)] {
        o.line(format!("{title} {}:", part.name()));
        for l in text::product_table(part) {
            o.line(l);
        }
    }
    o.line(format!("recombines to the original product: {}", yes_no(recombines)));
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let mut written = Vec::new();
        for part in [&split.comm, &split.anticomm] {
            let name = format!("{}.json", part.name());
            write(&dir.join(&name), &write_algebra(part))?;
            written.push(name);
        }
        o.line(format!("wrote {}", written.join(", ")));
        o.set("written", written);
    }
    o.holds = recombines && comm_ok && anti_ok;
    Ok(o)
}

pub fn double(path: &Path, mu: &str, lambda: &str, output: Option<&Path>) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let d = a.domain();
    let p = DoublingParams::new(d.parse_scalar(mu)?, d.parse_scalar(lambda)?)?;
    let doubled = double_algebra(&a, &p)?;
    let grading = SuperAlgebra::new(&a, &p)?.grading_holds();
    let mut o = Outcome::new("double", &a);
    o.set("mu", &p.mu);
    o.set("lambda", &p.lambda);
    o.set("constraint_satisfied", p.satisfies_constraint());
    o.set("grading_holds", grading);
    o.set("double", algebra_value(&doubled));
    o.line(format!("mu = {}, lambda = {}", p.mu, p.lambda));
    o.line(format!("mu(lambda^2 - 1) = 0: {}", yes_no(p.satisfies_constraint())));
    o.line(format!("double {} (dim {}):", doubled.name(), doubled.dim()));
    for l in text::product_table(&doubled) {
        o.line(l);
    }
    o.line(format!("grading respected: {}", yes_no(grading)));
    if let Some(out) = output {
        write(out, &write_algebra(&doubled))?;
        o.line(format!("wrote {}", out.file_name().map(|n| n.to_string_lossy()).unwrap_or_default()));
    }
    o.holds = grading;
    Ok(o)
}

pub fn tensor(path: &Path, kind: &str, max_degree: usize, budget: u64) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let kind: GeneratorKind = kind.parse()?;
    let gens = theorem_generators(&a, kind, max_degree)?;
    let kernel = generators_in_kernel_check(&a, kind);
    let closure = graded_ideal_closure(&gens, max_degree, budget)?;
    let labels = a.labels();
    let mut o = Outcome::new("tensor", &a);
    o.set("kind", kind);
    o.set("max_degree", max_degree);
    if kind == GeneratorKind::LieAdmissible {
        o.set("degree_three_generator", "cyclic associator sum minus anticyclic associator sum");
    }
    let identity = match kind {
        GeneratorKind::PreLie => "pre-lie",
        GeneratorKind::LieAdmissible => "lie-admissible",
    };
    o.line(format!("generators: {} ({} family)", kernel.generators, kind.name()));
    match &kernel.first_outside {
        None => o.line("all generators lie in the kernel of the evaluation map"),
        Some((tuple, img)) => {
            o.line(format!("generator at {} evaluates to {}", text::tuple(labels, tuple), text::combo(labels, img)))
        }
    }
    o.line(format!("{identity} holds: {}, consistent with kernel membership: {}", yes_no(kernel.identity_holds), yes_no(kernel.agree)));
    o.line(format!("ideal closure up to degree {max_degree}: total dim {} of {}", closure.total_dim, closure.ambient_dim));
    for d in &closure.per_degree {
        o.line(format!("  degree {}: {} of {}", d.degree, d.dim, d.ambient));
    }
    for t in &closure.per_tree {
        o.line(format!("  tree {}: {} of {}", t.tree, t.dim, t.ambient));
    }
    o.line(format!("degree-one part of the ideal is zero: {}", yes_no(closure.degree_one_trivial)));
    o.holds = kernel.all_in_kernel && kernel.agree;
    o.set("kernel", kernel);
    o.set("closure", closure);
    Ok(o)
}

pub fn quotient(path: &Path, subspace: &Path, kind: ProductKind, output: Option<&Path>) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let k = load_subspace(subspace, &a)?;
    let q = quotient_by(&a, &k, kind)?;
    let labels = a.labels();
    let morphism = q.projection_is_morphism();
    let mut o = Outcome::new("quotient", &a);
    o.set("product", kind);
    o.set("ideal", q.ideal());
    o.set("section", q.section());
    o.set("quotient", algebra_value(q.induced()));
    o.set("projection_is_morphism", morphism);
    o.line(format!("product: {}", kind.name()));
    o.line(format!("ideal: {}", text::subspace(labels, q.ideal())));
    o.line(format!("representatives: {}", text::subspace(labels, q.section())));
    o.line(format!("quotient {} (dim {}):", q.induced().name(), q.induced().dim()));
    for l in text::product_table(q.induced()) {
        o.line(l);
    }
    o.line(format!("projection is a morphism: {}", yes_no(morphism)));
    if let Some(out) = output {
        write(out, &write_algebra(q.induced()))?;
        o.line(format!("wrote {}", out.file_name().map(|n| n.to_string_lossy()).unwrap_or_default()));
    }
    o.holds = morphism;
    Ok(o)
}

pub fn commutator(path: &Path, left: &Path, right: &Path, pre: bool) -> anyhow::Result<Outcome> {
    let a = load_algebra(path)?;
    let i = load_subspace(left, &a)?;
    let j = load_subspace(right, &a)?;
    let result = if pre { pre_ideal_commutator(&a, &i, &j)? } else { huq_smith_commutator(&a, &i, &j)? };
    let labels = a.labels();
    let mut o = Outcome::new("commutator", &a);
    o.set("kind", if pre { "pre" } else { "huq" });
    o.set("left", &i);
    o.set("right", &j);
    o.set("result", &result);
    o.set("result_dim", result.rank());
    o.line(format!("I = {}", text::subspace(labels, &i)));
    o.line(format!("J = {}", text::subspace(labels, &j)));
    let name = if pre { "pre-ideal commutator" } else { "Huq=Smith commutator" };
    o.line(format!("{name} [I, J] = {}", text::subspace(labels, &result)));
    Ok(o)
}
