//! Problem files: versioned JSON, rationals as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use bvinf::bvinfty::HOperator;
use bvinf::polygeom::{GeneralizedPoisson, LieData};
use bvinf::superalg::{LinearOperator, SuperAlgebra, SuperSpace};
use bvinf::{Algebra, Operator, Parity, Rational};

use crate::expr::{parse_expression, OddSymbol};
use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// `(row, col, "p/q")`.
pub type Entry = (usize, usize, String);
/// `(i, j, k, "p/q")`: `e_i · e_j` (or `[e_i, e_j]`) has coefficient on `e_k`.
pub type Constant = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
    pub problem: Payload,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Payload {
    /// An algebra with one odd operator `D`.
    AlgebraOperator {
        algebra: AlgebraSpec,
        operator: OperatorSpec,
    },
    /// `D = Σ h^i D_i` over `k[h]/(h^trunc)`; `components[i]` holds the
    /// entries of `D_i`.
    BvFamily {
        algebra: AlgebraSpec,
        trunc: usize,
        components: Vec<Vec<Entry>>,
    },
    /// A Lie algebra, studied through its Chevalley–Eilenberg complex.
    LieData {
        dim: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        labels: Vec<String>,
        constants: Vec<Constant>,
    },
    /// A multivector field on `ℝⁿ` written with `x1..`, `@1..` (for `∂ᵢ`) and `^`.
    PoissonGeometry { nvars: usize, p: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Exterior {
        generators: usize,
    },
    TruncatedPolynomial {
        length: usize,
    },
    Tensor {
        factors: Vec<AlgebraSpec>,
    },
    General {
        /// One entry per basis element, `0` even and `1` odd.
        parities: Vec<u8>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        labels: Vec<String>,
        unit: usize,
        products: Vec<Constant>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ideal: Option<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    /// `0` even, `1` odd.
    pub parity: u8,
    pub entries: Vec<Entry>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Input(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) || !digits(den) || den.starts_with('-') {
        return Err(bad());
    }
    if den.bytes().all(|b| b == b'0') {
        return Err(CliError::Input(format!("zero denominator in {s:?}")));
    }
    s.parse().map_err(|_| bad())
}

fn parity(bit: u8) -> Result<Parity, CliError> {
    Parity::from_bit(bit)
        .ok_or_else(|| CliError::Input(format!("parity must be 0 or 1, got {bit}")))
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<Algebra, CliError> {
        Ok(match self {
            AlgebraSpec::Exterior { generators } => {
                if *generators > 12 {
                    return Err(CliError::Input("at most 12 exterior generators".into()));
                }
                SuperAlgebra::exterior(*generators)
            }
            AlgebraSpec::TruncatedPolynomial { length } => {
                if *length == 0 {
                    return Err(CliError::Input(
                        "truncated polynomial ring needs length ≥ 1".into(),
                    ));
                }
                SuperAlgebra::truncated_polynomial(*length, "t")
            }
            AlgebraSpec::Tensor { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| CliError::Input("empty tensor product".into()))?
                    .build()?;
                it.try_fold(first, |acc, f| Ok::<_, CliError>(acc.tensor(&f.build()?)))?
            }
            AlgebraSpec::General {
                parities,
                labels,
                unit,
                products,
                ideal,
            } => {
                let parities = parities
                    .iter()
                    .map(|&b| parity(b))
                    .collect::<Result<Vec<_>, _>>()?;
                let space = if labels.is_empty() {
                    SuperSpace::anonymous(parities)
                } else {
                    SuperSpace::new(labels.clone(), parities)?
                };
                let constants = products
                    .iter()
                    .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_rational(c)?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                let alg = SuperAlgebra::from_structure_constants(space, *unit, constants)?;
                match ideal {
                    Some(i) => alg.with_ideal(i.clone())?,
                    None => alg.with_augmentation_ideal(),
                }
            }
        })
    }
}

pub fn build_operator(
    alg: &Algebra,
    parity_bit: u8,
    entries: &[Entry],
) -> Result<Operator, CliError> {
    let n = alg.dim();
    let triplets = entries
        .iter()
        .map(|(r, c, v)| Ok((*r, *c, parse_rational(v)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let m =
        bvinf::Matrix::from_triplets(n, n, triplets).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(LinearOperator::new(alg.space(), parity(parity_bit)?, m)?)
}

/// A problem with every payload built into engine objects.
pub enum Problem {
    Operator {
        algebra: Algebra,
        operator: Operator,
    },
    Family {
        algebra: Algebra,
        ops: HOperator<Rational>,
    },
    Lie {
        labels: Vec<String>,
        constants: Vec<(usize, usize, usize, Rational)>,
        lie: Result<LieData<Rational>, String>,
    },
    Poisson {
        nvars: usize,
        p: GeneralizedPoisson<Rational>,
    },
}

impl Payload {
    pub fn build(&self) -> Result<Problem, CliError> {
        Ok(match self {
            Payload::AlgebraOperator { algebra, operator } => {
                let algebra = algebra.build()?;
                let operator = build_operator(&algebra, operator.parity, &operator.entries)?;
                Problem::Operator { algebra, operator }
            }
            Payload::BvFamily {
                algebra,
                trunc,
                components,
            } => {
                let algebra = algebra.build()?;
                let comps = components
                    .iter()
                    .map(|c| build_operator(&algebra, 1, c))
                    .collect::<Result<Vec<_>, _>>()?;
                let ops =
                    HOperator::new(*trunc, comps).map_err(|e| CliError::Input(e.to_string()))?;
                Problem::Family { algebra, ops }
            }
            Payload::LieData {
                dim,
                labels,
                constants,
            } => {
                if *dim == 0 || *dim > 10 {
                    return Err(CliError::Input(
                        "Lie algebra dimension must be between 1 and 10".into(),
                    ));
                }
                let labels = if labels.is_empty() {
                    (1..=*dim).map(|i| format!("w{i}")).collect()
                } else if labels.len() == *dim {
                    labels.clone()
                } else {
                    return Err(CliError::Input(format!("expected {dim} labels")));
                };
                let constants = constants
                    .iter()
                    .map(|(i, j, k, c)| {
                        if *i >= *dim || *j >= *dim || *k >= *dim || i == j {
                            return Err(CliError::Input(format!(
                                "bad structure constant ({i}, {j}, {k})"
                            )));
                        }
                        Ok((*i, *j, *k, parse_rational(c)?))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                let lie = LieData::new(*dim, constants.clone()).map_err(|e| e.to_string());
                Problem::Lie {
                    labels,
                    constants,
                    lie,
                }
            }
            Payload::PoissonGeometry { nvars, p } => {
                if *nvars == 0 || *nvars > 6 {
                    return Err(CliError::Input(
                        "between 1 and 6 coordinates are supported".into(),
                    ));
                }
                let poly = parse_expression(p, *nvars, OddSymbol::Partial)?;
                let p =
                    GeneralizedPoisson::new(&poly).map_err(|e| CliError::Input(e.to_string()))?;
                Problem::Poisson { nvars: *nvars, p }
            }
        })
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ProblemFile = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("invalid problem file: {e}")))?;
        if file.version != FORMAT_VERSION {
            return Err(CliError::Input(format!(
                "unsupported format version {}",
                file.version
            )));
        }
        Ok(file)
    }

    /// Canonical serialization: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem files serialize");
        s.push('\n');
        s
    }
}
