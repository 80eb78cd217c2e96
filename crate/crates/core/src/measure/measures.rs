//! The motivic measures `μ_GS`, `μ_NC`, `μ_#` and `μ_χc` on a ledger.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::k0::{class_of_chow, class_of_nc, collapse};
use super::ledger::{LedgerData, Relation, SymbolPolynomial, VarLedger};
use crate::algebra::LaurentPolynomial;
use crate::error::{MotiveError, Result};
use crate::geometry::CellularVariety;
use crate::motive::{nc_of, ChowMotive};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    /// `X -> [M(X)]` in `K_0(Chow)`.
    GilletSoule,
    /// `X -> [NC(X)]`, an integer once twists collapse.
    Noncommutative,
    /// `X -> #X(F_q)`.
    PointCount { q: u64 },
    /// The Euler characteristic of Hochschild homology,
    /// `sum_{p,q} (-1)^{q-p} h^{p,q}`.
    HochschildEuler,
}

impl Measure {
    pub fn name(&self) -> String {
        match self {
            Measure::GilletSoule => "mu_GS".into(),
            Measure::Noncommutative => "mu_NC".into(),
            Measure::PointCount { q } => format!("mu_#(q={q})"),
            Measure::HochschildEuler => "mu_chi_c".into(),
        }
    }

    /// The four measures, with `μ_#` at the given field size.
    pub fn all(q: u64) -> [Measure; 4] {
        [Measure::GilletSoule, Measure::Noncommutative, Measure::PointCount { q }, Measure::HochschildEuler]
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Measure {
    type Err = MotiveError;

    /// `gs`, `nc`, `chi`, or `sharp:Q` / `count:Q`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "gs" | "mu_gs" => Ok(Measure::GilletSoule),
            "nc" | "mu_nc" => Ok(Measure::Noncommutative),
            "chi" | "chi_c" | "mu_chi_c" => Ok(Measure::HochschildEuler),
            _ => {
                let q = lower
                    .strip_prefix("sharp:")
                    .or_else(|| lower.strip_prefix("count:"))
                    .ok_or_else(|| MotiveError::Parse(format!("unknown measure `{s}` (expected gs, nc, chi, sharp:Q)")))?;
                let q: u64 = q.parse().map_err(|_| MotiveError::Parse(format!("bad field size in `{s}`")))?;
                if q < 2 {
                    return Err(MotiveError::InvalidArgument(format!("field size {q} is below 2")));
                }
                Ok(Measure::PointCount { q })
            }
        }
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// A value of a measure: a class in `K_0(Chow)` for `μ_GS`, an integer for
/// the others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum MeasureValue {
    Class(LaurentPolynomial),
    Integer(#[serde(serialize_with = "crate::algebra::rational::serde_bigint::serialize")] BigInt),
}

impl MeasureValue {
    fn of(measure: &Measure, v: LaurentPolynomial) -> Self {
        match measure {
            Measure::GilletSoule => MeasureValue::Class(v),
            _ => MeasureValue::Integer(v.coefficient(0)),
        }
    }

    pub fn as_class(&self) -> LaurentPolynomial {
        match self {
            MeasureValue::Class(c) => c.clone(),
            MeasureValue::Integer(n) => LaurentPolynomial::monomial(0, n.clone()),
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            MeasureValue::Integer(n) => Some(n),
            MeasureValue::Class(_) => None,
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValue::Class(c) => write!(f, "{c}"),
            MeasureValue::Integer(n) => write!(f, "{n}"),
        }
    }
}

/// `Σ_{p,q} (-1)^{q-p} h^{p,q}`; a cellular variety has `h^{p,p} = rank A^p`
/// and no other Hodge numbers.
pub fn hochschild_euler_characteristic(x: &CellularVariety) -> BigInt {
    let ranks = ChowMotive::of(x).graded_ranks();
    let mut total = BigInt::zero();
    for (&p, &h) in &ranks {
        let q = p;
        let sign = if (i64::from(q) - i64::from(p)).is_even() { 1 } else { -1 };
        total += BigInt::from(sign) * BigInt::from(h);
    }
    total
}

fn value_of(data: &LedgerData, m: &Measure, symbol: &str, visiting: &mut BTreeSet<String>) -> Result<LaurentPolynomial> {
    if !data.symbols.contains(symbol) {
        return Err(MotiveError::UnregisteredSymbol(symbol.to_string()));
    }
    let constant = |n: BigInt| LaurentPolynomial::monomial(0, n);
    let at = |c: &LaurentPolynomial, x: u64| c.evaluate_integer(&BigInt::from(x)).map(constant);
    let direct = match m {
        Measure::GilletSoule => {
            data.motives.get(symbol).map(|x| class_of_chow(&ChowMotive::of(x))).or_else(|| data.classes.get(symbol).cloned())
        }
        Measure::Noncommutative => match data.motives.get(symbol) {
            Some(x) => Some(constant(class_of_nc(&nc_of(x)))),
            None => data.classes.get(symbol).map(|c| constant(collapse(c))),
        },
        Measure::PointCount { q } => match (data.point_counts.get(symbol), data.motives.get(symbol), data.classes.get(symbol)) {
            (Some(c), _, _) => Some(at(c, *q)?),
            (None, Some(x), _) => Some(at(&class_of_chow(&ChowMotive::of(x)), *q)?),
            (None, None, Some(c)) => Some(at(c, *q)?),
            (None, None, None) => None,
        },
        Measure::HochschildEuler => match data.motives.get(symbol) {
            Some(x) => Some(constant(hochschild_euler_characteristic(x))),
            None => data.classes.get(symbol).map(|c| constant(collapse(c))),
        },
    };
    if let Some(v) = direct {
        return Ok(v);
    }
    // Otherwise the first relation whose left side is exactly this symbol
    // defines it.
    let def = data.relations.iter().find(|r| r.lhs.as_symbol() == Some(symbol)).map(|r| r.rhs.clone());
    let Some(rhs) = def else {
        return Err(MotiveError::MissingValue { symbol: symbol.to_string(), measure: m.name() });
    };
    if !visiting.insert(symbol.to_string()) {
        return Err(MotiveError::MissingValue { symbol: symbol.to_string(), measure: format!("{} (circular definition)", m.name()) });
    }
    let v = eval_poly(data, m, &rhs, visiting);
    visiting.remove(symbol);
    v
}

fn eval_poly(data: &LedgerData, m: &Measure, p: &SymbolPolynomial, visiting: &mut BTreeSet<String>) -> Result<LaurentPolynomial> {
    let mut total = LaurentPolynomial::zero();
    for (syms, c) in p.terms() {
        let mut term = LaurentPolynomial::monomial(0, c.clone());
        for s in syms {
            term = &term * &value_of(data, m, s, visiting)?;
        }
        total = &total + &term;
    }
    Ok(total)
}

pub(crate) fn evaluate_polynomial(data: &LedgerData, m: &Measure, p: &SymbolPolynomial) -> Result<LaurentPolynomial> {
    eval_poly(data, m, p, &mut BTreeSet::new())
}

/// `μ(symbol)`.
pub fn evaluate(ledger: &VarLedger, m: &Measure, symbol: &str) -> Result<MeasureValue> {
    Ok(MeasureValue::of(m, value_of(&ledger.data, m, symbol, &mut BTreeSet::new())?))
}

/// `μ` of an integer polynomial in symbols.
pub fn evaluate_expression(ledger: &VarLedger, m: &Measure, p: &SymbolPolynomial) -> Result<MeasureValue> {
    Ok(MeasureValue::of(m, evaluate_polynomial(&ledger.data, m, p)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub lhs: MeasureValue,
    pub rhs: MeasureValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerCheck {
    pub measure: Measure,
    pub relations_checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl LedgerCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => Err(MotiveError::InconsistentRelation {
                measure: self.measure.name(),
                relation: format!("{}: {} vs {}", f.relation, f.lhs, f.rhs),
            }),
        }
    }
}

/// Evaluates both sides of every relation.
pub fn ledger_check(ledger: &VarLedger, m: &Measure) -> Result<LedgerCheck> {
    let mut failures = Vec::new();
    for r in ledger.relations() {
        let (l, rv) = relation_sides(ledger, m, r)?;
        if l != rv {
            failures.push(RelationFailure { relation: r.to_string(), lhs: l, rhs: rv });
        }
    }
    Ok(LedgerCheck { measure: m.clone(), relations_checked: ledger.relations().len(), failures })
}

fn relation_sides(ledger: &VarLedger, m: &Measure, r: &Relation) -> Result<(MeasureValue, MeasureValue)> {
    Ok((evaluate_expression(ledger, m, &r.lhs)?, evaluate_expression(ledger, m, &r.rhs)?))
}

/// The comparison of `μ_#` with `μ_NC`: congruent modulo `q - 1` (both
/// are `μ_GS` at `L = q` and `L = 1`), but different on the nose as soon as
/// `X` has a cell of positive dimension, so `μ_#` does not factor through
/// `μ_NC`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonFactoringVerdict {
    pub symbol: String,
    pub q: u64,
    #[serde(serialize_with = "crate::algebra::rational::serde_bigint::serialize")]
    pub point_count: BigInt,
    #[serde(serialize_with = "crate::algebra::rational::serde_bigint::serialize")]
    pub nc: BigInt,
    pub modulus: u64,
    pub congruent: bool,
    pub equal: bool,
    /// Congruent but unequal: a witness that `μ_#` does not factor.
    pub non_factoring_witness: bool,
}

pub fn mod_q_minus_1_check(ledger: &VarLedger, symbol: &str, q: u64) -> Result<NonFactoringVerdict> {
    if q < 2 {
        return Err(MotiveError::InvalidArgument(format!("field size {q} is below 2")));
    }
    let integer = |m: &Measure| -> Result<BigInt> {
        Ok(evaluate(ledger, m, symbol)?.as_integer().cloned().expect("integer-valued measure"))
    };
    let point_count = integer(&Measure::PointCount { q })?;
    let nc = integer(&Measure::Noncommutative)?;
    let modulus = q - 1;
    let diff = &point_count - &nc;
    let congruent = diff.mod_floor(&BigInt::from(modulus)).is_zero();
    let equal = diff.is_zero();
    Ok(NonFactoringVerdict {
        symbol: symbol.to_string(),
        q,
        point_count,
        nc,
        modulus,
        congruent,
        equal,
        non_factoring_witness: congruent && !equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::ledger::{symmetric_power_symbol, LedgerBuilder};

    fn int(n: i64) -> MeasureValue {
        MeasureValue::Integer(BigInt::from(n))
    }

    #[test]
    fn measures_of_projective_spaces() {
        let l = VarLedger::builtin();
        assert_eq!(evaluate(&l, &Measure::GilletSoule, "P2").unwrap(), MeasureValue::Class(LaurentPolynomial::geometric(2)));
        assert_eq!(evaluate(&l, &Measure::Noncommutative, "P2").unwrap(), int(3));
        assert_eq!(evaluate(&l, &Measure::Noncommutative, "P1").unwrap(), int(2));
        assert_eq!(evaluate(&l, &Measure::PointCount { q: 5 }, "P2").unwrap(), int(31));
        assert_eq!(evaluate(&l, &Measure::HochschildEuler, "P1").unwrap(), int(2));
        assert_eq!(evaluate(&l, &Measure::HochschildEuler, "P1xP1").unwrap(), int(4));
        assert_eq!(evaluate(&l, &Measure::GilletSoule, "A3").unwrap(), MeasureValue::Class(LaurentPolynomial::monomial(3, 1)));
        assert_eq!(
            evaluate(&l, &Measure::GilletSoule, &symmetric_power_symbol("P1", 3)).unwrap(),
            MeasureValue::Class(LaurentPolynomial::geometric(3))
        );
        assert!(matches!(evaluate(&l, &Measure::GilletSoule, "nope"), Err(MotiveError::UnregisteredSymbol(_))));
    }

    #[test]
    fn all_measures_respect_builtin_relations() {
        let l = VarLedger::builtin();
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for m in Measure::all(q) {
                let check = ledger_check(&l, &m).unwrap();
                assert!(check.holds(), "{m}: {:?}", check.failures);
                assert!(check.relations_checked > 40);
            }
        }
    }

    #[test]
    fn missing_values_are_reported() {
        let mut b = LedgerBuilder::new();
        b.register_symbol("X").unwrap();
        b.register_point_count("Y", LaurentPolynomial::geometric(1)).unwrap();
        let l = b.seal();
        assert!(matches!(evaluate(&l, &Measure::GilletSoule, "X"), Err(MotiveError::MissingValue { .. })));
        assert!(matches!(evaluate(&l, &Measure::GilletSoule, "Y"), Err(MotiveError::MissingValue { .. })));
        assert_eq!(evaluate(&l, &Measure::PointCount { q: 3 }, "Y").unwrap(), int(4));
        let mut b = l.into_builder();
        b.register_symbol("Z").unwrap();
        b.add_relation(Relation::parse("Z", "W").unwrap()).unwrap_err();
        b.add_relation(Relation::parse("X", "Z").unwrap()).unwrap();
        b.add_relation(Relation::parse("Z", "X").unwrap()).unwrap();
        let l = b.seal();
        assert!(matches!(evaluate(&l, &Measure::GilletSoule, "X"), Err(MotiveError::MissingValue { .. })));
        assert!("sharp:1".parse::<Measure>().is_err());
        assert_eq!("sharp:4".parse::<Measure>().unwrap(), Measure::PointCount { q: 4 });
    }

    #[test]
    fn non_factoring() {
        let l = VarLedger::builtin();
        let v = mod_q_minus_1_check(&l, "P1", 5).unwrap();
        assert_eq!((v.point_count.clone(), v.nc.clone()), (BigInt::from(6), BigInt::from(2)));
        assert!(v.congruent && !v.equal && v.non_factoring_witness);
        let v = mod_q_minus_1_check(&l, "P2", 3).unwrap();
        assert_eq!(v.point_count, BigInt::from(13));
        assert!(v.congruent);
        assert!(mod_q_minus_1_check(&l, "P2", 2).unwrap().congruent);
        let v = mod_q_minus_1_check(&l, "pt", 7).unwrap();
        assert!(v.congruent && v.equal && !v.non_factoring_witness);
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for s in l.cellular_symbols() {
                assert!(mod_q_minus_1_check(&l, s, q).unwrap().congruent, "{s} at q={q}");
            }
        }
        assert!(mod_q_minus_1_check(&l, "P1", 1).is_err());
    }

    // Points of P^n over F_p: nonzero vectors whose first nonzero entry is 1.
    fn normalized_vectors(n: u32, p: u64) -> u64 {
        let len = n as usize + 1;
        let total = p.pow(len as u32);
        (1..total)
            .filter(|&code| {
                let digits: Vec<u64> = (0..len).map(|i| code / p.pow(i as u32) % p).collect();
                digits.iter().find(|&&d| d != 0) == Some(&1)
            })
            .count() as u64
    }

    fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    fn monic(d: usize, p: u64) -> Vec<Vec<u64>> {
        (0..p.pow(d as u32))
            .map(|code| {
                let mut c: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
                c.push(1);
                c
            })
            .collect()
    }

    // Closed points of degree d on P^1 over F_p: monic irreducibles of
    // degree d, plus the point at infinity in degree 1.
    fn closed_points(d: usize, p: u64) -> u64 {
        let mut reducible = BTreeSet::new();
        for a in 1..d {
            for f in monic(a, p) {
                for g in monic(d - a, p) {
                    reducible.insert(poly_mul(&f, &g, p));
                }
            }
        }
        let irreducible = monic(d, p).into_iter().filter(|f| !reducible.contains(f)).count() as u64;
        irreducible + u64::from(d == 1)
    }

    // Effective zero-cycles of degree n: multisets of closed points.
    fn effective_cycles(n: usize, p: u64) -> u64 {
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for d in 1..=n {
            for _ in 0..closed_points(d, p) {
                for total in d..=n {
                    ways[total] += ways[total - d];
                }
            }
        }
        ways[n]
    }

    #[test]
    fn point_counts_match_brute_force() {
        let l = VarLedger::builtin();
        for p in [2u64, 3, 5] {
            for n in 1..=4 {
                let v = evaluate(&l, &Measure::PointCount { q: p }, &format!("P{n}")).unwrap();
                assert_eq!(v, int(normalized_vectors(n, p) as i64), "P{n} over F_{p}");
            }
        }
        assert_eq!(effective_cycles(2, 2), 7);
        for p in [2u64, 3] {
            for n in 1..=4u32 {
                let v = evaluate(&l, &Measure::PointCount { q: p }, &symmetric_power_symbol("P1", n)).unwrap();
                assert_eq!(v, int(effective_cycles(n as usize, p) as i64), "S^{n}(P1) over F_{p}");
            }
        }
    }
}
