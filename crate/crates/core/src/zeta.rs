//! Motivic zeta functions: the intrinsic series `ζ(N;t) = Σ [Sym^n N] t^n`
//! and the Kapranov series `ζ_μ(X;t) = Σ μ([S^n X]) t^n`, truncated at a
//! fixed order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::{LaurentPolynomial, SeriesCoefficient, TruncatedSeries};
use crate::error::{MotiveError, Result};
use crate::measure::{
    class_of_chow, class_of_nc, class_of_schur_cut, evaluate, symmetric_power_symbol, Measure, MeasureValue,
    VarLedger,
};
use crate::motive::{nc_of, ChowMotive, NCMotive};
use crate::schur::sym;

/// Default truncation order of the equality checks.
pub const EQUALITY_ORDER: usize = 5;

/// Largest `n` for which `[Sym^n N]` is also computed from the cut itself.
pub const CATEGORICAL_LIMIT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Intrinsic,
    Kapranov,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaSeries<R> {
    pub series: TruncatedSeries<R>,
    pub provenance: Provenance,
}

pub type ChowZeta = ZetaSeries<LaurentPolynomial>;
pub type NCZeta = ZetaSeries<BigInt>;

impl<R: SeriesCoefficient> ZetaSeries<R> {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coefficients(&self) -> &[R] {
        self.series.coefficients()
    }

    pub fn coefficient(&self, n: usize) -> &R {
        self.series.coefficient(n)
    }

    /// Index and both values of the first coefficient where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, R, R)> {
        self.coefficients()
            .iter()
            .zip(other.coefficients())
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(n, (a, b))| (n, a.clone(), b.clone()))
    }
}

impl ChowZeta {
    /// The series under `L -> 1`, when every coefficient is a constant or
    /// the caller is fine collapsing twists.
    pub fn collapse(&self) -> NCZeta {
        ZetaSeries {
            series: self.series.map(|c| c.evaluate_integer(&BigInt::from(1)).expect("evaluation at a unit")),
            provenance: self.provenance,
        }
    }

    /// `Some` when every coefficient is an integer (no powers of `L`).
    pub fn to_integer(&self) -> Option<NCZeta> {
        self.coefficients()
            .iter()
            .all(|c| c.terms().all(|(e, _)| e == 0))
            .then(|| self.collapse())
    }
}

impl<R: SeriesCoefficient> Serialize for ZetaSeries<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ZetaSeries", 3)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coefficients", &self.coefficients().iter().map(R::to_json).collect::<Vec<_>>())?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

impl<R: SeriesCoefficient> fmt::Display for ZetaSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.series.fmt(f)
    }
}

/// `Π_i (1 - L^i t)^{-a_i}` for the class `Σ a_i L^i`.
pub fn tate_type_zeta(class: &LaurentPolynomial, order: usize) -> Result<TruncatedSeries<LaurentPolynomial>> {
    let mut out = TruncatedSeries::one(order);
    for (i, a) in class.terms() {
        let factor = TruncatedSeries::one_minus(order, LaurentPolynomial::monomial(i, 1));
        let k: i64 = a.try_into().map_err(|_| MotiveError::InvalidArgument(format!("multiplicity {a} is too large")))?;
        out = out.mul(&factor.pow(-k)?)?;
    }
    Ok(out)
}

/// `(1 - t)^{-d}`.
pub fn rank_zeta(d: &BigInt, order: usize) -> Result<TruncatedSeries<BigInt>> {
    let k: i64 = d.try_into().map_err(|_| MotiveError::InvalidArgument(format!("rank {d} is too large")))?;
    TruncatedSeries::one_minus(order, BigInt::from(1)).pow(-k)
}

/// Objects with an intrinsic zeta function: `[Sym^n N]` from the Schur cut,
/// and a closed form from the class of `N`.
pub trait IntrinsicZeta {
    type Coefficient: SeriesCoefficient;
    fn sym_class(&self, n: u32) -> Result<Self::Coefficient>;
    fn closed_form(&self, order: usize) -> Result<TruncatedSeries<Self::Coefficient>>;
}

impl IntrinsicZeta for ChowMotive {
    type Coefficient = LaurentPolynomial;
    fn sym_class(&self, n: u32) -> Result<LaurentPolynomial> {
        Ok(class_of_schur_cut(&sym(n, self)?))
    }
    fn closed_form(&self, order: usize) -> Result<TruncatedSeries<LaurentPolynomial>> {
        tate_type_zeta(&class_of_chow(self), order)
    }
}

impl IntrinsicZeta for NCMotive {
    type Coefficient = BigInt;
    fn sym_class(&self, n: u32) -> Result<BigInt> {
        Ok(BigInt::from(sym(n, self)?.rank()))
    }
    fn closed_form(&self, order: usize) -> Result<TruncatedSeries<BigInt>> {
        rank_zeta(&class_of_nc(self), order)
    }
}

/// `ζ(N;t)` to order `T`. The first `min(T, 4)` coefficients are computed
/// from the cuts and must agree with the closed form; a disagreement is an
/// `InternalConsistency` error.
pub fn zeta_intrinsic<N: IntrinsicZeta>(obj: &N, order: usize) -> Result<ZetaSeries<N::Coefficient>> {
    let closed = obj.closed_form(order)?;
    for n in 1..=order.min(CATEGORICAL_LIMIT) {
        let categorical = obj.sym_class(n as u32)?;
        if &categorical != closed.coefficient(n) {
            return Err(MotiveError::InternalConsistency(format!(
                "[Sym^{n}] is {categorical} from the symmetric cut but {} from the closed form",
                closed.coefficient(n)
            )));
        }
    }
    Ok(ZetaSeries { series: closed, provenance: Provenance::Intrinsic })
}

/// `ζ_μ(X;t)` from the registered symmetric powers `S^n(X)`, `n <= T`.
/// `S^0(X)` defaults to the point when it is not registered.
pub fn zeta_kapranov(ledger: &VarLedger, symbol: &str, m: &Measure, order: usize) -> Result<ChowZeta> {
    if !ledger.contains(symbol) {
        return Err(MotiveError::UnregisteredSymbol(symbol.to_string()));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let s = symmetric_power_symbol(symbol, n as u32);
        let v = if ledger.contains(&s) {
            evaluate(ledger, m, &s)?
        } else if n == 0 {
            MeasureValue::Integer(BigInt::from(1))
        } else {
            return Err(MotiveError::MissingSymmetricPower { symbol: symbol.to_string(), n });
        };
        coeffs.push(v.as_class());
    }
    Ok(ZetaSeries { series: TruncatedSeries::new(order, coeffs), provenance: Provenance::Kapranov })
}

fn cellular<'a>(ledger: &'a VarLedger, symbol: &str) -> Result<&'a crate::geometry::CellularVariety> {
    if !ledger.contains(symbol) {
        return Err(MotiveError::UnregisteredSymbol(symbol.to_string()));
    }
    ledger
        .motive(symbol)
        .ok_or_else(|| MotiveError::InvalidArgument(format!("`{symbol}` has no cellular model, so it has no motive")))
}

/// A coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientMismatch {
    pub n: usize,
    pub left: String,
    pub right: String,
}

fn mismatch<R: SeriesCoefficient>(a: &ZetaSeries<R>, b: &ZetaSeries<R>) -> Option<CoefficientMismatch> {
    a.first_difference(b).map(|(n, l, r)| CoefficientMismatch { n, left: l.to_string(), right: r.to_string() })
}

/// Equality of the noncommutative intrinsic zeta with the `μ_NC` Kapranov
/// zeta, and of `[Sym^n M(X)]` with `μ_GS([S^n X])`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaEqualityVerdict {
    pub symbol: String,
    pub order: usize,
    pub intrinsic_nc: NCZeta,
    pub kapranov_nc: NCZeta,
    pub nc_mismatch: Option<CoefficientMismatch>,
    pub intrinsic_chow: ChowZeta,
    pub kapranov_chow: ChowZeta,
    pub chow_mismatch: Option<CoefficientMismatch>,
}

impl ZetaEqualityVerdict {
    pub fn holds(&self) -> bool {
        self.nc_mismatch.is_none() && self.chow_mismatch.is_none()
    }
}

pub fn zeta_equality_check(ledger: &VarLedger, symbol: &str, order: usize) -> Result<ZetaEqualityVerdict> {
    let x = cellular(ledger, symbol)?;
    let intrinsic_nc = zeta_intrinsic(&nc_of(x), order)?;
    let kapranov_nc = zeta_kapranov(ledger, symbol, &Measure::Noncommutative, order)?.collapse();
    let intrinsic_chow = zeta_intrinsic(&ChowMotive::of(x), order)?;
    let kapranov_chow = zeta_kapranov(ledger, symbol, &Measure::GilletSoule, order)?;
    Ok(ZetaEqualityVerdict {
        symbol: symbol.to_string(),
        order,
        nc_mismatch: mismatch(&intrinsic_nc, &kapranov_nc),
        chow_mismatch: mismatch(&intrinsic_chow, &kapranov_chow),
        intrinsic_nc,
        kapranov_nc,
        intrinsic_chow,
        kapranov_chow,
    })
}

/// `ζ_{μ_χc}(X;t) = (1 - t)^{-χ_c(X)}`, and both equal `ζ(NC(X);t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedFormVerdict {
    pub symbol: String,
    pub order: usize,
    #[serde(serialize_with = "crate::algebra::rational::serde_bigint::serialize")]
    pub chi_c: BigInt,
    pub kapranov_chi: NCZeta,
    pub closed_form: NCZeta,
    pub intrinsic_nc: NCZeta,
    pub kapranov_mismatch: Option<CoefficientMismatch>,
    pub intrinsic_mismatch: Option<CoefficientMismatch>,
}

impl ClosedFormVerdict {
    pub fn holds(&self) -> bool {
        self.kapranov_mismatch.is_none() && self.intrinsic_mismatch.is_none()
    }
}

pub fn closed_form_check(ledger: &VarLedger, symbol: &str, order: usize) -> Result<ClosedFormVerdict> {
    let x = cellular(ledger, symbol)?;
    let chi = &Measure::HochschildEuler;
    let chi_c = evaluate(ledger, chi, symbol)?.as_integer().cloned().expect("integer-valued measure");
    if chi_c.is_negative() {
        return Err(MotiveError::InternalConsistency(format!("χ_c({symbol}) = {chi_c} is negative")));
    }
    let kapranov_chi = zeta_kapranov(ledger, symbol, chi, order)?.collapse();
    let closed_form = ZetaSeries { series: rank_zeta(&chi_c, order)?, provenance: Provenance::ClosedForm };
    let intrinsic_nc = zeta_intrinsic(&nc_of(x), order)?;
    Ok(ClosedFormVerdict {
        symbol: symbol.to_string(),
        order,
        chi_c,
        kapranov_mismatch: mismatch(&kapranov_chi, &closed_form),
        intrinsic_mismatch: mismatch(&intrinsic_nc, &closed_form),
        kapranov_chi,
        closed_form,
        intrinsic_nc,
    })
}
