//! A generators-and-relations model of the part of `K_0(Var_k)` the engine
//! works with: named symbols, integer polynomial relations among them, and
//! the data measures are evaluated on (cellular models, classes, point
//! counts).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::k0::class_of_chow;
use crate::algebra::LaurentPolynomial;
use crate::error::{MotiveError, Result};
use crate::geometry::CellularVariety;
use crate::motive::ChowMotive;

/// The largest index of the built-in families `A^n`, `P^n`, `S^n(-)`.
pub const BUILTIN_RANGE: u32 = 8;

/// An integer polynomial in ledger symbols, e.g. `A0 + A1` or `2*P1*P2 - pt`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolPolynomial {
    terms: BTreeMap<Vec<String>, BigInt>,
}

impl SymbolPolynomial {
    pub fn symbol(name: &str) -> Self {
        Self::monomial(vec![name.to_string()], BigInt::one())
    }

    pub fn monomial(mut symbols: Vec<String>, c: BigInt) -> Self {
        symbols.sort();
        let mut out = Self::default();
        if !c.is_zero() {
            out.terms.insert(symbols, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<String>, BigInt> {
        &self.terms
    }

    pub fn symbols(&self) -> BTreeSet<&str> {
        self.terms.keys().flatten().map(String::as_str).collect()
    }

    /// The single symbol, when the polynomial is exactly one symbol.
    pub fn as_symbol(&self) -> Option<&str> {
        match self.terms.iter().next() {
            Some((s, c)) if self.terms.len() == 1 && s.len() == 1 && c.is_one() => Some(&s[0]),
            _ => None,
        }
    }

    fn add_term(&mut self, symbols: Vec<String>, c: BigInt) {
        let e = self.terms.entry(symbols.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&symbols);
        }
    }

    pub fn sum(parts: impl IntoIterator<Item = SymbolPolynomial>) -> Self {
        let mut out = Self::default();
        for p in parts {
            for (s, c) in p.terms {
                out.add_term(s, c);
            }
        }
        out
    }
}

impl fmt::Display for SymbolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (syms, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || syms.is_empty() {
                factors.push(abs.to_string());
            }
            factors.extend(syms.iter().cloned());
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for SymbolPolynomial {
    type Err = MotiveError;

    /// Terms separated by `+`/`-` outside parentheses; factors separated by
    /// `*`, each an integer or a symbol name.
    fn from_str(s: &str) -> Result<Self> {
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut current = String::new();
        let mut negative = false;
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(MotiveError::Parse(format!("unbalanced `)` at {pos} in `{s}`")));
                    }
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if current.trim().is_empty() {
                        if !terms.is_empty() || ch == '+' {
                            return Err(MotiveError::Parse(format!("missing term before `{ch}` at {pos} in `{s}`")));
                        }
                    } else {
                        terms.push((negative, std::mem::take(&mut current)));
                    }
                    negative = ch == '-';
                }
                _ => current.push(ch),
            }
        }
        if depth != 0 {
            return Err(MotiveError::Parse(format!("unbalanced `(` in `{s}`")));
        }
        if current.trim().is_empty() {
            return Err(MotiveError::Parse(format!("empty term in `{s}`")));
        }
        terms.push((negative, current));
        let mut out = SymbolPolynomial::default();
        for (neg, term) in terms {
            let mut c = BigInt::one();
            let mut syms = Vec::new();
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(MotiveError::Parse(format!("empty factor in `{term}`")));
                }
                if let Ok(k) = factor.parse::<BigInt>() {
                    c *= k;
                } else if is_symbol_name(factor) {
                    syms.push(factor.to_string());
                } else {
                    return Err(MotiveError::Parse(format!("bad symbol `{factor}`")));
                }
            }
            syms.sort();
            out.add_term(syms, if neg { -c } else { c });
        }
        Ok(out)
    }
}

fn is_symbol_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || "_^()".contains(c))
}

impl Serialize for SymbolPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: SymbolPolynomial,
    pub rhs: SymbolPolynomial,
}

impl Relation {
    pub fn parse(lhs: &str, rhs: &str) -> Result<Self> {
        Ok(Relation { lhs: lhs.parse()?, rhs: rhs.parse()? })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] = [{}]", self.lhs, self.rhs)
    }
}

/// `S^n(X)`.
pub fn symmetric_power_symbol(x: &str, n: u32) -> String {
    format!("S^{n}({x})")
}

/// The serialized ledger:
/// `{symbols, relations: [{lhs, rhs}], motives, classes, point_counts}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct LedgerData {
    pub symbols: BTreeSet<String>,
    pub relations: Vec<Relation>,
    #[serde(default)]
    pub motives: BTreeMap<String, CellularVariety>,
    #[serde(default)]
    pub classes: BTreeMap<String, LaurentPolynomial>,
    #[serde(default)]
    pub point_counts: BTreeMap<String, LaurentPolynomial>,
}

/// Registration phase. Relations are checked against `μ_GS` wherever it can
/// be evaluated, so an inconsistent relation is rejected on the spot.
#[derive(Clone, Debug, Default)]
pub struct LedgerBuilder {
    data: LedgerData,
}

impl LedgerBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Affine spaces, projective spaces, a few products, and the symmetric
    /// powers of all of them up to [`BUILTIN_RANGE`].
    pub fn with_builtins() -> Self {
        let mut b = Self::new();
        b.populate_builtins().expect("built-in relations are consistent");
        b
    }

    fn populate_builtins(&mut self) -> Result<()> {
        let n_max = BUILTIN_RANGE;
        self.register_motive("pt", CellularVariety::point())?;
        self.register_point_count("pt", LaurentPolynomial::one())?;
        for n in 0..=n_max {
            let a = format!("A{n}");
            self.register_class(&a, LaurentPolynomial::monomial(i64::from(n), 1))?;
            self.register_point_count(&a, LaurentPolynomial::monomial(i64::from(n), 1))?;
        }
        self.add_relation(Relation::parse("pt", "A0")?)?;
        for n in 1..=n_max {
            let p = format!("P{n}");
            self.register_motive(&p, CellularVariety::projective(n))?;
            self.register_point_count(&p, LaurentPolynomial::geometric(n))?;
            let cells: Vec<String> = (0..=n).map(|i| format!("A{i}")).collect();
            self.add_relation(Relation::parse(&p, &cells.join(" + "))?)?;
        }
        for m in 1..=n_max {
            for n in m..=n_max - m {
                self.add_relation(Relation::parse(&format!("A{m}*A{n}"), &format!("A{}", m + n))?)?;
            }
        }
        for (a, b) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
            let name = format!("P{a}xP{b}");
            self.register_motive(&name, CellularVariety::product_of_projective(&[a, b]))?;
            self.add_relation(Relation::parse(&name, &format!("P{a}*P{b}"))?)?;
        }
        for n in 0..=n_max {
            let s = symmetric_power_symbol("pt", n);
            self.register_symbol(&s)?;
            self.add_relation(Relation::parse(&s, "pt")?)?;
            let s = symmetric_power_symbol("P1", n);
            self.register_symbol(&s)?;
            self.add_relation(Relation::parse(&s, &if n == 0 { "pt".to_string() } else { format!("P{n}") })?)?;
        }
        // For the other cellular models, [S^n(X)] is registered through its
        // Chow class [Sym^n M(X)], read off the Tate-type zeta function.
        let models: Vec<(String, CellularVariety)> =
            self.data.motives.iter().filter(|(s, _)| !["pt", "P1"].contains(&s.as_str())).map(|(s, x)| (s.clone(), x.clone())).collect();
        for (s, x) in models {
            let series = crate::zeta::tate_type_zeta(&class_of_chow(&ChowMotive::of(&x)), n_max as usize)?;
            for n in 0..=n_max {
                self.register_class(&symmetric_power_symbol(&s, n), series.coefficient(n as usize).clone())?;
            }
        }
        Ok(())
    }

    pub fn register_symbol(&mut self, name: &str) -> Result<()> {
        if !is_symbol_name(name) {
            return Err(MotiveError::InvalidArgument(format!("`{name}` is not a valid symbol name")));
        }
        self.data.symbols.insert(name.to_string());
        Ok(())
    }

    /// A cellular model, which `μ_GS`, `μ_NC` and `μ_χc` evaluate through
    /// its motive.
    pub fn register_motive(&mut self, name: &str, x: CellularVariety) -> Result<()> {
        self.register_symbol(name)?;
        self.data.motives.insert(name.to_string(), x);
        Ok(())
    }

    /// A class in `K_0(Chow)`, registered at the measure level.
    pub fn register_class(&mut self, name: &str, class: LaurentPolynomial) -> Result<()> {
        self.register_symbol(name)?;
        self.data.classes.insert(name.to_string(), class);
        Ok(())
    }

    /// `#X(F_q)` as a polynomial in `q`.
    pub fn register_point_count(&mut self, name: &str, count: LaurentPolynomial) -> Result<()> {
        if count.min_exponent().is_some_and(|e| e < 0) {
            return Err(MotiveError::InvalidArgument(format!("point count of `{name}` has negative powers of q")));
        }
        self.register_symbol(name)?;
        self.data.point_counts.insert(name.to_string(), count);
        Ok(())
    }

    pub fn add_relation(&mut self, relation: Relation) -> Result<()> {
        for s in relation.lhs.symbols().into_iter().chain(relation.rhs.symbols()) {
            if !self.data.symbols.contains(s) {
                return Err(MotiveError::UnregisteredSymbol(s.to_string()));
            }
        }
        self.data.relations.push(relation);
        let rel = self.data.relations.last().expect("just pushed");
        let gs = super::measures::Measure::GilletSoule;
        let sides = (
            super::measures::evaluate_polynomial(&self.data, &gs, &rel.lhs),
            super::measures::evaluate_polynomial(&self.data, &gs, &rel.rhs),
        );
        if let (Ok(l), Ok(r)) = sides {
            if l != r {
                let relation = self.data.relations.pop().expect("just pushed");
                return Err(MotiveError::InconsistentRelation {
                    measure: gs.name(),
                    relation: format!("{relation}: {l} vs {r}"),
                });
            }
        }
        Ok(())
    }

    pub fn seal(self) -> VarLedger {
        VarLedger { data: self.data }
    }
}

/// A sealed ledger: immutable, evaluated by [`super::measures`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarLedger {
    pub(crate) data: LedgerData,
}

impl VarLedger {
    pub fn builtin() -> Self {
        LedgerBuilder::with_builtins().seal()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.data.symbols.iter().map(String::as_str)
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.data.symbols.contains(symbol)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.data.relations
    }

    pub fn motive(&self, symbol: &str) -> Option<&CellularVariety> {
        self.data.motives.get(symbol)
    }

    /// Symbols with a cellular model.
    pub fn cellular_symbols(&self) -> impl Iterator<Item = &str> {
        self.data.motives.keys().map(String::as_str)
    }

    /// Re-opens the ledger for registration.
    pub fn into_builder(self) -> LedgerBuilder {
        LedgerBuilder { data: self.data }
    }

    /// Parses the JSON file format, re-registering every entry so that the
    /// relation checks run.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: LedgerData = serde_json::from_str(text).map_err(|e| MotiveError::Parse(format!("ledger: {e}")))?;
        Self::from_data(raw, LedgerBuilder::new())
    }

    /// Same, layered on top of the built-in ledger.
    pub fn from_json_with_builtins(text: &str) -> Result<Self> {
        let raw: LedgerData = serde_json::from_str(text).map_err(|e| MotiveError::Parse(format!("ledger: {e}")))?;
        Self::from_data(raw, LedgerBuilder::with_builtins())
    }

    fn from_data(raw: LedgerData, mut b: LedgerBuilder) -> Result<Self> {
        for s in &raw.symbols {
            b.register_symbol(s)?;
        }
        for (s, x) in raw.motives {
            b.register_motive(&s, x)?;
        }
        for (s, c) in raw.classes {
            b.register_class(&s, c)?;
        }
        for (s, c) in raw.point_counts {
            b.register_point_count(&s, c)?;
        }
        for r in raw.relations {
            b.add_relation(r)?;
        }
        Ok(b.seal())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.data).expect("ledger serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_syntax() {
        let p: SymbolPolynomial = "A0 + A1 - 2*P1*A1 + S^2(P1)".parse().unwrap();
        assert_eq!(p.symbols().len(), 4);
        let again: SymbolPolynomial = p.to_string().parse().unwrap();
        assert_eq!(again, p);
        assert_eq!("P1".parse::<SymbolPolynomial>().unwrap().as_symbol(), Some("P1"));
        assert_eq!("-P1".parse::<SymbolPolynomial>().unwrap().to_string(), "-P1");
        assert!("A0 +".parse::<SymbolPolynomial>().is_err());
        assert!("A0 + (".parse::<SymbolPolynomial>().is_err());
        assert!("1bad".parse::<SymbolPolynomial>().is_err());
        assert_eq!("A1 - A1".parse::<SymbolPolynomial>().unwrap().to_string(), "0");
    }

    #[test]
    fn registration_checks() {
        let mut b = LedgerBuilder::with_builtins();
        assert!(matches!(b.add_relation(Relation::parse("P1", "Q7").unwrap()), Err(MotiveError::UnregisteredSymbol(s)) if s == "Q7"));
        let err = b.add_relation(Relation::parse("P1", "A0 + A2").unwrap()).unwrap_err();
        assert!(matches!(err, MotiveError::InconsistentRelation { .. }));
        let before = b.clone().seal().relations().len();
        b.register_symbol("C").unwrap();
        b.add_relation(Relation::parse("C", "P1 - A0").unwrap()).unwrap();
        assert_eq!(b.seal().relations().len(), before + 1);
    }

    #[test]
    fn json_round_trip() {
        let ledger = VarLedger::builtin();
        let text = ledger.to_json();
        assert_eq!(VarLedger::from_json(&text).unwrap(), ledger);
        let small = r#"{"symbols":["X","pt","A0","A1"],
            "relations":[{"lhs":"X","rhs":"A0 + A1"}],
            "motives":{"pt":[]},
            "classes":{"A0":{"0":1},"A1":{"1":1}},
            "point_counts":{"X":{"0":1,"1":1}}}"#;
        let l = VarLedger::from_json(small).unwrap();
        assert!(l.contains("X"));
        let bad = r#"{"symbols":["X","A0","A1"],"relations":[{"lhs":"A1","rhs":"A0"}],"classes":{"A0":{"0":1},"A1":{"1":1}}}"#;
        assert!(matches!(VarLedger::from_json(bad), Err(MotiveError::InconsistentRelation { .. })));
    }
}
