//! Serializable views shared by the report JSON schema and the CLI.
//!
//! Integers are emitted as JSON numbers even beyond 64 bits (serde_json's
//! arbitrary-precision number support carries them losslessly), so the
//! schema never degrades to strings for large exponents.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::classify::ClassificationReport;
use crate::coeffsys::CoefficientSystem;
use crate::freegroup::GeneratorSet;
use crate::intlinalg::{AbelianGroup, IntMatrix};

/// A JSON integer of arbitrary size.
#[derive(Clone, Debug)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if let Some(v) = self.0.to_i64() {
            serializer.serialize_i64(v)
        } else {
            let number: serde_json::Number =
                self.0.to_string().parse().map_err(serde::ser::Error::custom)?;
            number.serialize(serializer)
        }
    }
}

/// `{torsion: [int], free_rank: int}`
#[derive(Clone, Debug, Serialize)]
pub struct Group {
    pub torsion: Vec<Int>,
    pub free_rank: usize,
}

pub fn group(g: &AbelianGroup) -> Group {
    Group {
        torsion: g.torsion().iter().cloned().map(Int).collect(),
        free_rank: g.free_rank(),
    }
}

pub fn matrix(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(Int).collect()).collect()
}

/// `{gen: ±1, …}` in generator declaration order.
#[derive(Clone, Debug)]
pub struct Signs(pub Vec<(String, i64)>);

impl Signs {
    pub fn of(generators: &GeneratorSet, system: &CoefficientSystem) -> Self {
        Signs(
            system
                .signs()
                .iter()
                .enumerate()
                .map(|(i, s)| (generators.name(i).to_string(), s.value()))
                .collect(),
        )
    }
}

impl Serialize for Signs {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, value) in &self.0 {
            map.serialize_entry(name, value)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
pub struct AlphaView {
    pub signs: Signs,
    pub label: Option<String>,
    pub delta_alpha: Vec<Vec<Int>>,
    pub h2: Group,
    pub c_star: Int,
    pub c_free: Int,
    pub strongly_surjective: Int,
}

#[derive(Serialize)]
pub struct TotalsView {
    pub free_classes: Int,
    pub strongly_surjective: Int,
}

/// The stable classify schema:
/// `{presentation, hypothesis_ok, h2_untwisted, alphas, totals}`.
#[derive(Serialize)]
pub struct ClassificationView {
    pub presentation: String,
    pub hypothesis_ok: bool,
    pub h2_untwisted: Group,
    pub alphas: Vec<AlphaView>,
    pub totals: TotalsView,
}

pub fn classification_view(report: &ClassificationReport) -> ClassificationView {
    let generators = report.presentation.generators();
    ClassificationView {
        presentation: report.presentation.to_string(),
        hypothesis_ok: report.hypothesis_ok,
        h2_untwisted: group(&report.h2_untwisted),
        alphas: report
            .reports
            .iter()
            .map(|r| AlphaView {
                signs: Signs::of(generators, &r.system),
                label: r.system.label().map(|l| l.to_string()),
                delta_alpha: matrix(&r.delta_alpha),
                h2: group(&r.h2),
                c_star: Int(r.c_star.clone()),
                c_free: Int(r.c_free.clone()),
                strongly_surjective: Int(r.strongly_surjective.clone()),
            })
            .collect(),
        totals: TotalsView {
            free_classes: Int(report.totals.free_classes.clone()),
            strongly_surjective: Int(report.totals.strongly_surjective.clone()),
        },
    }
}
