use serde_json::{json, Map, Value};

use bvinf::bvinfty::{
    ce_complex, check_bv, degeneration_of, e1_collapses, fiber_structure, main_theorem_check,
    BVInfinity, HOperator,
};
use bvinf::linfty::{
    contraction_of, mc_exponential_check, transfer, LInftyError, LInftyStructure, RelationReport,
    TestCdga,
};
use bvinf::polygeom::{check_poisson, dsquared_check, koszul_brackets, PolyError};
use bvinf::random;
use bvinf::superalg::{derived_on_vectors, SuperAlgebra};
use bvinf::{Algebra, Parity, Rational};

use crate::expr::{parse_expression, render, OddSymbol};
use crate::report::Report;
use crate::schema::{parse_rational, Problem};
use crate::CliError;

/// Effective settings: command-line flags over file options over defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub arity_cap: usize,
    pub degree_cap: u32,
    pub n_max: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            arity_cap: 5,
            degree_cap: 6,
            n_max: 4,
            seed: 0,
        }
    }
}

fn q_str(x: &Rational) -> String {
    x.to_string()
}

/// Nonzero coordinates keyed by basis label.
fn vector_json(v: &[Rational], labels: &[String]) -> Value {
    let map: Map<String, Value> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != zero())
        .map(|(i, x)| (labels[i].clone(), q_str(x).into()))
        .collect();
    Value::Object(map)
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

fn brackets_json(l: &LInftyStructure<Rational>, from: usize) -> Value {
    let labels = l.space().labels();
    let mut out = Map::new();
    for n in from..=l.arity_cap() {
        let m = l.bracket(n);
        let entries: Vec<Value> = m
            .entries()
            .map(|(inputs, value)| {
                let mut dense = vec![zero(); labels.len()];
                for (k, c) in value {
                    dense[*k] = c.clone();
                }
                json!({
                    "inputs": inputs.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    "value": vector_json(&dense, labels),
                })
            })
            .collect();
        out.insert(format!("m{n}"), Value::Array(entries));
    }
    Value::Object(out)
}

fn relations_json(report: &RelationReport<Rational>, labels: &[String]) -> Value {
    match &report.failure {
        None => Value::Null,
        Some(w) => json!({
            "arity": w.arity,
            "inputs": w.inputs.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
            "value": vector_json(&w.value, labels),
        }),
    }
}

fn linfty_err(e: LInftyError) -> CliError {
    match e {
        LInftyError::NotEven | LInftyError::NotInMaximalIdeal | LInftyError::Malformed(_) => {
            CliError::Input(e.to_string())
        }
        other => CliError::Math(other.to_string()),
    }
}

fn lie_structure(
    labels: &[String],
    constants: &[(usize, usize, usize, Rational)],
    cap: usize,
) -> Result<LInftyStructure<Rational>, CliError> {
    LInftyStructure::from_lie(labels.to_vec(), constants.iter().cloned(), cap).map_err(linfty_err)
}

/// The finite BV∞ algebra behind a problem: the family itself, `D` alone, or
/// the Chevalley–Eilenberg complex truncated at `h^{n_max}`.
fn bv_of(problem: &Problem, settings: &Settings) -> Result<BVInfinity<Rational>, CliError> {
    let bv = match problem {
        Problem::Operator { algebra, operator } => {
            let ops = HOperator::new(settings.n_max, vec![operator.clone()])
                .map_err(|e| CliError::Input(e.to_string()))?;
            BVInfinity::new(algebra.clone(), ops)
        }
        Problem::Family { algebra, ops } => BVInfinity::new(algebra.clone(), ops.clone()),
        Problem::Lie {
            labels,
            constants,
            lie,
        } => {
            lie.as_ref().map_err(|e| CliError::Math(e.clone()))?;
            ce_complex(&lie_structure(labels, constants, 2)?, settings.n_max)
        }
        Problem::Poisson { .. } => {
            return Err(CliError::Input(
                "this command needs a finite model, not a polynomial geometry".into(),
            ))
        }
    };
    bv.map_err(|e| CliError::Math(e.to_string()))
}

fn check_algebra(report: &mut Report, algebra: &Algebra) {
    let a = algebra.check();
    report.check("algebra_valid", a.is_valid());
    if let Some(f) = a.failure {
        report.set("algebra_failure", format!("{f:?}"));
    }
}

pub fn check(problem: &Problem, settings: &Settings) -> Result<Report, CliError> {
    let mut r = Report::new("check");
    let cap = settings.arity_cap;
    match problem {
        Problem::Operator { algebra, operator } => {
            check_algebra(&mut r, algebra);
            r.check("operator_odd", operator.parity() == Parity::Odd);
            r.check(
                "kills_unit",
                operator.apply(&algebra.one()).iter().all(|x| *x == zero()),
            );
            r.check("square_zero", operator.compose(operator).is_zero());
            if operator.parity() == Parity::Odd {
                let rel = LInftyStructure::derived(algebra, operator, cap).check_relations(cap);
                r.check("linfty_relations", rel.passed());
                r.set(
                    "relation_witness",
                    relations_json(&rel, algebra.space().labels()),
                );
            }
        }
        Problem::Family { algebra, ops } => {
            check_algebra(&mut r, algebra);
            let bv = check_bv(algebra, ops);
            r.check("bv_axioms", bv.is_valid());
            r.set(
                "orders",
                bv.orders
                    .iter()
                    .map(|o| format!("{o:?}"))
                    .collect::<Vec<_>>(),
            );
            r.set(
                "violations",
                bv.violations
                    .iter()
                    .map(|v| format!("{v:?}"))
                    .collect::<Vec<_>>(),
            );
            r.set("squares_to_zero_exactly", ops.squares_to_zero_exactly());
        }
        Problem::Lie {
            labels,
            constants,
            lie,
        } => {
            r.check("jacobi", lie.is_ok());
            if lie.is_ok() {
                let l = lie_structure(labels, constants, cap)?;
                let rel = l.check_relations(cap.min(4));
                r.check("linfty_relations", rel.passed());
                let bv =
                    ce_complex(&l, settings.n_max).map_err(|e| CliError::Math(e.to_string()))?;
                r.check("ce_bv_axioms", check_bv(bv.algebra(), bv.ops()).is_valid());
                r.set("ce_dim", bv.algebra().dim());
            }
        }
        Problem::Poisson { p, .. } => {
            let cert = check_poisson(p);
            r.check("oracle_agrees", cert.oracle_agrees());
            r.check("poisson", cert.is_poisson());
            r.set("square", render(&cert.square, OddSymbol::Partial));
            r.set("graded_in_h", cert.graded_in_h());
            if let Some((m, c)) = cert.first_nonzero() {
                r.set("first_nonzero_h_power", m);
                r.set("first_nonzero_coefficient", render(c, OddSymbol::Partial));
            }
            if cert.is_poisson() {
                r.check(
                    "dsquared",
                    dsquared_check(p, settings.degree_cap, settings.n_max),
                );
                r.set("degree_cap", settings.degree_cap);
                r.set("n_max", settings.n_max);
            }
        }
    }
    Ok(r)
}

fn basis_index(name: &str, labels: &[String]) -> Result<usize, CliError> {
    if let Some(i) = labels.iter().position(|l| l == name) {
        return Ok(i);
    }
    match name.parse::<usize>() {
        Ok(i) if i < labels.len() => Ok(i),
        _ => Err(CliError::Input(format!("unknown basis element {name:?}"))),
    }
}

fn basis_vectors(
    inputs: &[String],
    alg: &SuperAlgebra<Rational>,
) -> Result<Vec<Vec<Rational>>, CliError> {
    inputs
        .iter()
        .map(|s| Ok(alg.basis(basis_index(s, alg.space().labels())?)))
        .collect()
}

pub fn brackets(problem: &Problem, inputs: &[String]) -> Result<Report, CliError> {
    let mut r = Report::new("brackets");
    let n = inputs.len();
    if n == 0 {
        return Err(CliError::Input("give at least one --input".into()));
    }
    r.set("arity", n);
    r.set("inputs", inputs.to_vec());
    match problem {
        Problem::Operator { algebra, operator } => {
            let v = derived_on_vectors(algebra, operator, &basis_vectors(inputs, algebra)?);
            r.set("value", vector_json(&v, algebra.space().labels()));
        }
        Problem::Family { algebra, ops } => {
            let v = derived_on_vectors(
                algebra,
                &ops.component(n - 1),
                &basis_vectors(inputs, algebra)?,
            );
            r.set("value", vector_json(&v, algebra.space().labels()));
        }
        Problem::Lie {
            labels,
            constants,
            lie,
        } => {
            lie.as_ref().map_err(|e| CliError::Math(e.clone()))?;
            let l = lie_structure(labels, constants, n.max(2))?;
            let unit = |i: usize| -> Vec<Rational> {
                (0..labels.len())
                    .map(|k| {
                        if k == i {
                            Rational::from_integer(1.into())
                        } else {
                            zero()
                        }
                    })
                    .collect()
            };
            let args: Vec<Vec<Rational>> = inputs
                .iter()
                .map(|s| Ok(unit(basis_index(s, labels)?)))
                .collect::<Result<_, CliError>>()?;
            let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
            r.set("value", vector_json(&l.eval(&refs), labels));
        }
        Problem::Poisson { nvars, p } => {
            let forms = inputs
                .iter()
                .map(|s| parse_expression(s, *nvars, OddSymbol::Differential))
                .collect::<Result<Vec<_>, _>>()?;
            let v = koszul_brackets(p, n, &forms).map_err(|e| match e {
                PolyError::NotPoisson => CliError::Math(e.to_string()),
                other => CliError::Input(other.to_string()),
            })?;
            r.set("value", render(&v, OddSymbol::Differential));
        }
    }
    Ok(r)
}

fn select_cdga(name: &str) -> Result<TestCdga<Rational>, CliError> {
    let zoo = TestCdga::<Rational>::zoo();
    if let Ok(i) = name.parse::<usize>() {
        return zoo
            .into_iter()
            .nth(i)
            .ok_or_else(|| CliError::Input(format!("no test cdga with index {i}")));
    }
    let names: Vec<String> = zoo.iter().map(|c| c.name().to_string()).collect();
    zoo.into_iter().find(|c| c.name() == name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown test cdga {name:?}; available: {}",
            names.join(", ")
        ))
    })
}

/// `c:a:p/q` triples separated by commas, `c ⊗ a` having index `c·dim A + a`.
fn parse_element(text: &str, cdim: usize, adim: usize) -> Result<Vec<Rational>, CliError> {
    let mut v = vec![zero(); cdim * adim];
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let fields: Vec<&str> = part.splitn(3, ':').collect();
        let [c, a, x] = fields[..] else {
            return Err(CliError::Input(format!(
                "element entries are c:a:p/q, got {part:?}"
            )));
        };
        let parse_idx = |s: &str, bound: usize| match s.parse::<usize>() {
            Ok(i) if i < bound => Ok(i),
            _ => Err(CliError::Input(format!("index {s:?} out of range"))),
        };
        let idx = parse_idx(c, cdim)? * adim + parse_idx(a, adim)?;
        v[idx] = v[idx].clone() + parse_rational(x)?;
    }
    Ok(v)
}

pub fn mc(
    problem: &Problem,
    settings: &Settings,
    cdga: &str,
    element: Option<&str>,
) -> Result<Report, CliError> {
    let Problem::Operator { algebra, operator } = problem else {
        return Err(CliError::Input(
            "mc needs an algebra-operator problem".into(),
        ));
    };
    let c = select_cdga(cdga)?;
    let mut r = Report::new("mc");
    let t = c.algebra().tensor_left_ideal(algebra);
    let xi = match element {
        Some(text) => parse_element(text, c.dim(), algebra.dim())?,
        None => {
            if !operator.compose(operator).is_zero() {
                return Err(CliError::Math("operator does not square to zero".into()));
            }
            let mut rng = random::seeded(settings.seed);
            random::random_mc_candidate(&mut rng, algebra, operator, &c)
        }
    };
    let check = mc_exponential_check(algebra, operator, &c, &xi).map_err(linfty_err)?;
    r.set("cdga", c.name());
    r.set("element", vector_json(&xi, t.space().labels()));
    r.set("is_mc", check.is_mc);
    r.set("is_cycle", check.is_cycle);
    r.check("agree", check.agree);
    r.check("identity_holds", check.identity_holds);
    r.set("residual", vector_json(&check.residual, t.space().labels()));
    Ok(r)
}

pub fn degeneration(problem: &Problem, settings: &Settings) -> Result<Report, CliError> {
    let bv = bv_of(problem, settings)?;
    let n_max = settings.n_max.min(bv.trunc());
    let report = degeneration_of(bv.ops(), n_max).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("degeneration");
    r.set("n_max", n_max);
    r.set("base_dim", report.base_dim);
    let levels: Vec<Value> = report
        .levels
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "dim": l.dim,
                "free_bound": l.n * report.base_dim,
                "free": l.free,
                "dimension_identity": l.dimension_identity,
                "blocks": l.blocks.sizes,
            })
        })
        .collect();
    r.set("levels", levels);
    let summary: Vec<String> = report
        .levels
        .iter()
        .map(|l| {
            format!(
                "N={} free: {}, dim {} vs {}",
                l.n,
                l.free,
                l.dim,
                l.n * report.base_dim
            )
        })
        .collect();
    r.set("summary", summary.join("; "));
    r.set("degenerate", report.is_degenerate());
    r.set(
        "e1_collapse",
        e1_collapses(bv.ops()).map_or(Value::Null, Value::Bool),
    );
    r.check("certificates_agree", report.certificates_agree());
    Ok(r)
}

fn structure_of(
    problem: &Problem,
    settings: &Settings,
) -> Result<LInftyStructure<Rational>, CliError> {
    let cap = settings.arity_cap;
    match problem {
        Problem::Operator { algebra, operator } => {
            LInftyStructure::from_operator(algebra, operator, cap).map_err(linfty_err)
        }
        Problem::Family { .. } => Ok(fiber_structure(&bv_of(problem, settings)?, cap)),
        Problem::Lie {
            labels,
            constants,
            lie,
        } => {
            lie.as_ref().map_err(|e| CliError::Math(e.clone()))?;
            lie_structure(labels, constants, cap)
        }
        Problem::Poisson { .. } => Err(CliError::Input(
            "transfer needs a finite model, not a polynomial geometry".into(),
        )),
    }
}

pub fn transfer_cmd(problem: &Problem, settings: &Settings) -> Result<Report, CliError> {
    let l = structure_of(problem, settings)?;
    let c = contraction_of(l.space(), &l.m1_matrix()).map_err(linfty_err)?;
    let mut r = Report::new("transfer");
    r.check("contraction_valid", c.check().is_valid());
    let t = transfer(&l, &c, settings.arity_cap).map_err(linfty_err)?;
    r.set("arity_cap", settings.arity_cap);
    r.set("homology_dim", c.homology().dim());
    r.set(
        "homology_parities",
        c.homology()
            .parities()
            .iter()
            .map(|p| p.bit())
            .collect::<Vec<_>>(),
    );
    r.set("minimal_model", brackets_json(&t.structure, 2));
    r.set("homotopy_abelian", t.structure.is_abelian());
    Ok(r)
}

pub fn main_theorem(problem: &Problem, settings: &Settings) -> Result<Report, CliError> {
    let bv = bv_of(problem, settings)?;
    let n_max = settings.n_max.min(bv.trunc());
    let v = main_theorem_check(&bv, settings.arity_cap, n_max)
        .map_err(|e| CliError::Math(e.to_string()))?;
    let mut r = Report::new("main-theorem");
    r.set("n_max", n_max);
    r.set("arity_cap", settings.arity_cap);
    r.set("degenerate", v.degenerate);
    r.set("homotopy_abelian", v.homotopy_abelian);
    r.set("minimal_model", brackets_json(&v.minimal_model, 2));
    r.check("consistent", v.consistent);
    Ok(r)
}
