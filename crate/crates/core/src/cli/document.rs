//! Machine-readable artifacts. Exact rationals are written as
//! `{"num": "<int>", "den": "<int>"}` strings so nothing is lost to JSON
//! number precision.

use std::fmt::Write as _;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::darboux::{build_transform, partner_eigenfunction, LevelSelection, TransformResult};
use crate::error::{Error, Result};
use crate::model::SolvableModel;
use crate::polycore::{Poly, RatFun, Rational};
use crate::spectral::{sample, Grid};
use crate::susy::SusyClassification;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for ExactRational {
    fn from(q: &Rational) -> Self {
        ExactRational {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl ExactRational {
    pub fn to_rational(&self) -> Result<Rational> {
        let parse =
            |s: &str| BigInt::from_str(s).map_err(|e| Error::InvalidSelection(format!("bad integer {s:?}: {e}")));
        let den = parse(&self.den)?;
        if den == BigInt::from(0) {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational::new(parse(&self.num)?, den))
    }
}

fn poly_coeffs(p: &Poly) -> Vec<ExactRational> {
    p.coeffs().iter().map(ExactRational::from).collect()
}

fn poly_from_coeffs(c: &[ExactRational]) -> Result<Poly> {
    Ok(Poly::new(
        c.iter().map(ExactRational::to_rational).collect::<Result<_>>()?,
    ))
}

/// A rational function as numerator and denominator coefficient lists,
/// lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatFun {
    pub num: Vec<ExactRational>,
    pub den: Vec<ExactRational>,
}

impl From<&RatFun> for ExactRatFun {
    fn from(r: &RatFun) -> Self {
        ExactRatFun {
            num: poly_coeffs(r.num()),
            den: poly_coeffs(r.den()),
        }
    }
}

impl ExactRatFun {
    pub fn to_ratfun(&self) -> Result<RatFun> {
        RatFun::reduce(poly_from_coeffs(&self.num)?, poly_from_coeffs(&self.den)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformDocument {
    pub model: String,
    pub levels: Vec<u32>,
    pub alphas: Vec<ExactRational>,
    pub order: usize,
    /// Rational part of the Wronskian: numerator coefficients.
    pub wronskian_poly: Vec<ExactRational>,
    pub wronskian_den: Vec<ExactRational>,
    /// `s` in `W = r(x) exp(s x^2 / 4)`.
    pub wronskian_weight: ExactRational,
    pub potential_difference: ExactRatFun,
    pub v0: ExactRatFun,
    pub vn: ExactRatFun,
    /// Coefficients `a_0 .. a_N` of `L = sum a_j d^j`.
    pub operator: Vec<ExactRatFun>,
}

impl TransformDocument {
    pub fn from_transform(model: &str, tr: &TransformResult) -> Self {
        TransformDocument {
            model: model.to_string(),
            levels: tr.selection.levels().to_vec(),
            alphas: tr.selection.alphas().iter().map(ExactRational::from).collect(),
            order: tr.order(),
            wronskian_poly: poly_coeffs(tr.wronskian.ratfun().num()),
            wronskian_den: poly_coeffs(tr.wronskian.ratfun().den()),
            wronskian_weight: tr.wronskian.weight().into(),
            potential_difference: (&tr.potential_difference).into(),
            v0: (&tr.v0).into(),
            vn: (&tr.vn).into(),
            operator: tr.operator.coeffs().iter().map(ExactRatFun::from).collect(),
        }
    }

    /// Rebuilds the transform from `levels` and checks every stored
    /// coefficient is reproduced bit-exactly, and that the stored rational
    /// functions parse back to the rebuilt canonical values.
    pub fn reverify(&self, model: &dyn SolvableModel) -> Result<bool> {
        let sel = LevelSelection::new(model, self.levels.clone())?;
        let tr = build_transform(model, &sel)?;
        if TransformDocument::from_transform(&self.model, &tr) != *self {
            return Ok(false);
        }
        let parsed_ops: Vec<RatFun> = self
            .operator
            .iter()
            .map(ExactRatFun::to_ratfun)
            .collect::<Result<_>>()?;
        Ok(self.vn.to_ratfun()? == tr.vn && parsed_ops.as_slice() == tr.operator.coeffs())
    }
}

/// Normalized partner eigenfunctions `psi_n = L phi_n / ||L phi_n||` for the
/// levels in `0..=n_max` that survive the transformation.
pub fn psi_columns(
    model: &dyn SolvableModel,
    tr: &TransformResult,
    n_max: u32,
    grid: &Grid,
) -> Result<Vec<(u32, Vec<f64>)>> {
    (0..=n_max)
        .filter(|&n| !tr.selection.contains(n))
        .map(|n| {
            let (psi, squared_norm) = partner_eigenfunction(model, tr, n)?;
            let c = squared_norm
                .inv_sqrt_f64()
                .ok_or_else(|| Error::InvalidSelection(format!("level {n} has nonpositive transported norm")))?;
            Ok((n, sample(&psi, grid)?.samples.into_iter().map(|v| v * c).collect()))
        })
        .collect()
}

/// Fixed 17-significant-digit decimal formatting.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with columns `x, V0, VN, psi_<n>...`.
pub fn transform_csv(model: &dyn SolvableModel, tr: &TransformResult, n_max: u32, grid: &Grid) -> Result<String> {
    let v0 = sample(&tr.v0, grid)?;
    let vn = sample(&tr.vn, grid)?;
    let psis = psi_columns(model, tr, n_max, grid)?;
    let mut out = String::from("x,V0,VN");
    for (n, _) in &psis {
        let _ = write!(out, ",psi_{n}");
    }
    out.push('\n');
    for (i, x) in grid.points().enumerate() {
        let _ = write!(
            out,
            "{},{},{}",
            fmt_f64(x),
            fmt_f64(v0.samples[i]),
            fmt_f64(vn.samples[i])
        );
        for (_, col) in &psis {
            let _ = write!(out, ",{}", fmt_f64(col[i]));
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelTagDocument {
    pub level: u32,
    pub energy: ExactRational,
    pub tag: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationDocument {
    pub model: String,
    pub levels: Vec<u32>,
    pub n0: Vec<u32>,
    pub vacuum_level: u32,
    pub vacuum_energy: ExactRational,
    pub tags: Vec<LevelTagDocument>,
    pub below_vacuum: Vec<u32>,
}

impl ClassificationDocument {
    pub fn new(model: &dyn SolvableModel, levels: &[u32], c: &SusyClassification) -> Self {
        ClassificationDocument {
            model: model.name().to_string(),
            levels: levels.to_vec(),
            n0: c.n0.iter().copied().collect(),
            vacuum_level: c.vacuum_level,
            vacuum_energy: (&c.vacuum_energy).into(),
            tags: c
                .tags
                .iter()
                .map(|t| LevelTagDocument {
                    level: t.level,
                    energy: (&model.eigenvalue(t.level)).into(),
                    tag: match t.tag {
                        crate::susy::Degeneracy::Doublet => "doublet".into(),
                        crate::susy::Degeneracy::Singlet => "singlet".into(),
                    },
                })
                .collect(),
            below_vacuum: c.below_vacuum.iter().copied().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::Oscillator;
    use crate::polycore::rat;
    use proptest::prelude::*;

    fn transform(levels: &[u32]) -> TransformResult {
        let sel = LevelSelection::new(&Oscillator, levels.to_vec()).unwrap();
        build_transform(&Oscillator, &sel).unwrap()
    }

    #[test]
    fn wronskian_coefficients_for_pair_one_two() {
        let doc = TransformDocument::from_transform("oscillator", &transform(&[1, 2]));
        let one = ExactRational {
            num: "1".into(),
            den: "1".into(),
        };
        let zero = ExactRational {
            num: "0".into(),
            den: "1".into(),
        };
        assert_eq!(doc.wronskian_poly, vec![one.clone(), zero, one]);
        assert_eq!(
            doc.wronskian_weight,
            ExactRational {
                num: "-2".into(),
                den: "1".into()
            }
        );
    }

    #[test]
    fn json_round_trip_reverifies() {
        let doc = TransformDocument::from_transform("oscillator", &transform(&[1, 2, 5, 6]));
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: TransformDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert!(back.reverify(&Oscillator).unwrap());

        let mut tampered = back;
        tampered.vn.num[0].num.push('1');
        assert!(!tampered.reverify(&Oscillator).unwrap());
    }

    #[test]
    fn zero_denominator_string_rejected() {
        let bad = ExactRational {
            num: "1".into(),
            den: "0".into(),
        };
        assert!(bad.to_rational().is_err());
    }

    proptest! {
        #[test]
        fn exact_rational_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let q = rat(n, d);
            prop_assert_eq!(ExactRational::from(&q).to_rational().unwrap(), q);
        }
    }

    #[test]
    fn csv_has_fixed_columns() {
        let tr = transform(&[0, 1]);
        let grid = Grid::new(-1.0, 1.0, 5).unwrap();
        let csv = transform_csv(&Oscillator, &tr, 3, &grid).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,V0,VN,psi_2,psi_3"));
        for line in lines {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert!((cols[2] - cols[1] - 2.0).abs() < 1e-12);
        }
        assert_eq!(csv, transform_csv(&Oscillator, &tr, 3, &grid).unwrap());
    }
}
