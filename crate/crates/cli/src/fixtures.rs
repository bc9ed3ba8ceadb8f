use clap::ValueEnum;

use crate::schema::{Options, Payload, ProblemFile, FORMAT_VERSION};

/// Bundled example problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Abelian Lie algebra of dimension 3.
    Abelian3,
    /// Heisenberg algebra `[w1, w2] = w3`.
    Heisenberg,
    /// `sl₂` in the basis `h, e, f`.
    Sl2,
    /// `x ∂x∧∂y` on the plane.
    R2LinearPoisson,
    /// `∂₁∧∂₂ + x₁ ∂₁∧∂₂∧∂₃∧∂₄` on `ℝ⁴`.
    R4Generalized,
}

fn lie(dim: usize, labels: &[&str], constants: &[(usize, usize, usize, &str)]) -> Payload {
    Payload::LieData {
        dim,
        labels: labels.iter().map(|s| s.to_string()).collect(),
        constants: constants
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, c.to_string()))
            .collect(),
    }
}

impl Fixture {
    pub fn problem(self) -> ProblemFile {
        let problem = match self {
            Fixture::Abelian3 => lie(3, &[], &[]),
            Fixture::Heisenberg => lie(3, &[], &[(0, 1, 2, "1")]),
            Fixture::Sl2 => lie(
                3,
                &["h", "e", "f"],
                &[(0, 1, 1, "2"), (0, 2, 2, "-2"), (1, 2, 0, "1")],
            ),
            Fixture::R2LinearPoisson => Payload::PoissonGeometry {
                nvars: 2,
                p: "x1*@1^@2".into(),
            },
            Fixture::R4Generalized => Payload::PoissonGeometry {
                nvars: 4,
                p: "@1^@2 + x1*@1^@2^@3^@4".into(),
            },
        };
        ProblemFile {
            version: FORMAT_VERSION,
            options: Options::default(),
            problem,
        }
    }
}
