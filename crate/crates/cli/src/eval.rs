//! Evaluation of parsed expressions against the engine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use motivecalc_core::algebra::rational::serde_bigint;
use motivecalc_core::algebra::LaurentPolynomial;
use motivecalc_core::geometry::CellularVariety;
use motivecalc_core::measure::{class_of_chow, class_of_nc, VarLedger};
use motivecalc_core::motive::{nc_of, realize, ChowMotive, Motive, NCMotive, OrbitMotive};
use motivecalc_core::schur::{schur_cut, Partition};
use motivecalc_core::zeta::{zeta_intrinsic, ChowZeta, NCZeta};
use motivecalc_core::MotiveError;

use crate::expr::{Expr, Func};
use crate::report::{Citation, Failure};

pub const DEFAULT_ORDER: usize = motivecalc_core::zeta::EQUALITY_ORDER;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Chow,
    Orbit,
    NC,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Chow => "chow",
            Category::Orbit => "orbit",
            Category::NC => "nc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "chow" => Some(Category::Chow),
            "orbit" => Some(Category::Orbit),
            "nc" => Some(Category::NC),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub category: Category,
    pub dimension: usize,
    /// Orbit degrees (or the single Chow degree) and their dimensions.
    pub graded: Option<BTreeMap<i64, usize>>,
}

#[derive(Clone, Debug)]
pub enum Value {
    Integer(BigInt),
    Partition(Partition),
    Category(Category),
    Variety(CellularVariety),
    /// A ledger symbol without a cellular model.
    Symbol(String),
    Chow(ChowMotive),
    NC(NCMotive),
    Class(LaurentPolynomial),
    Hom(HomSpace),
    ChowZeta(ChowZeta),
    NCZeta(NCZeta),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Integer(_) => "an integer",
            Value::Partition(_) => "a partition",
            Value::Category(_) => "a category name",
            Value::Variety(_) => "a variety",
            Value::Symbol(_) => "a ledger symbol",
            Value::Chow(_) => "a Chow motive",
            Value::NC(_) => "a noncommutative motive",
            Value::Class(_) => "a class in K_0",
            Value::Hom(_) => "a Hom space",
            Value::ChowZeta(_) | Value::NCZeta(_) => "a zeta series",
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Integer(n) => serde_bigint::to_value(n),
            Value::Partition(p) => json!(p.to_string()),
            Value::Category(c) => json!(c.name()),
            Value::Variety(x) => json!({
                "variety": x.name(),
                "components": x.components(),
                "dimension": x.dimension(),
                "rank": x.rank(),
            }),
            Value::Symbol(s) => json!({ "symbol": s }),
            Value::Chow(m) => json!({
                "category": "chow",
                "variety": m.variety().name(),
                "twist": m.twist(),
                "rank": m.rank(),
                "graded_ranks": m.graded_ranks(),
            }),
            Value::NC(n) => json!({ "category": "nc", "variety": n.variety().name(), "rank": n.rank() }),
            Value::Class(c) => serde_json::to_value(c).expect("classes serialize"),
            Value::Hom(h) => {
                let mut v = json!({ "category": h.category.name(), "dimension": h.dimension });
                if let Some(g) = &h.graded {
                    v["graded"] = serde_json::to_value(g).expect("maps serialize");
                }
                v
            }
            Value::ChowZeta(z) => serde_json::to_value(z).expect("series serialize"),
            Value::NCZeta(z) => serde_json::to_value(z).expect("series serialize"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(n) => write!(f, "{n}"),
            Value::Partition(p) => write!(f, "{p}"),
            Value::Category(c) => f.write_str(c.name()),
            Value::Variety(x) => write!(f, "{x} (dimension {}, rank {})", x.dimension(), x.rank()),
            Value::Symbol(s) => f.write_str(s),
            Value::Chow(m) => write!(f, "{m} (rank {})", m.rank()),
            Value::NC(n) => write!(f, "NC({}) (rank {})", n.variety(), n.rank()),
            Value::Class(c) => write!(f, "{c}"),
            Value::Hom(h) => {
                write!(f, "{} ({})", h.dimension, h.category.name())?;
                if let Some(g) = &h.graded {
                    let parts: Vec<String> = g.iter().map(|(d, n)| format!("{d}: {n}")).collect();
                    write!(f, "; by degree {{{}}}", parts.join(", "))?;
                }
                Ok(())
            }
            Value::ChowZeta(z) => write!(f, "{z}"),
            Value::NCZeta(z) => write!(f, "{z}"),
        }
    }
}

pub struct Evaluator<'a> {
    ledger: &'a VarLedger,
    order: usize,
    citations: BTreeSet<Citation>,
}

fn type_error(message: impl Into<String>) -> Failure {
    Failure::Precondition(message.into())
}

impl<'a> Evaluator<'a> {
    pub fn new(ledger: &'a VarLedger, order: Option<usize>) -> Self {
        Evaluator { ledger, order: order.unwrap_or(DEFAULT_ORDER), citations: BTreeSet::new() }
    }

    pub fn citations(&self) -> Vec<Citation> {
        self.citations.iter().copied().collect()
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Value, Failure> {
        match e {
            Expr::Int(n) => Ok(Value::Integer(BigInt::from(*n))),
            Expr::Partition(parts) => Ok(Value::Partition(Partition::new(parts.clone())?)),
            Expr::Projective(n) => Ok(Value::Variety(CellularVariety::projective(*n))),
            Expr::Ident(name) => self.ident(name),
            Expr::Product(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match (a, b) {
                    (Value::Variety(x), Value::Variety(y)) => Ok(Value::Variety(x.product(&y))),
                    (Value::Chow(m), Value::Chow(n)) => Ok(Value::Chow(m.tensor(&n))),
                    (Value::NC(m), Value::NC(n)) => Ok(Value::NC(m.tensor(&n))),
                    (a, b) => Err(type_error(format!(
                        "`*` multiplies two varieties or tensors two motives of the same kind, not {} and {}",
                        a.kind(),
                        b.kind()
                    ))),
                }
            }
            Expr::Sum(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match (a, b) {
                    (Value::Variety(x), Value::Variety(y)) => Ok(Value::Variety(x.disjoint_union(&y))),
                    (Value::Chow(m), Value::Chow(n)) => Ok(Value::Chow(m.direct_sum(&n)?)),
                    (Value::NC(m), Value::NC(n)) => Ok(Value::NC(m.direct_sum(&n))),
                    (a, b) => Err(type_error(format!(
                        "`+` joins two varieties or sums two motives of the same kind, not {} and {}",
                        a.kind(),
                        b.kind()
                    ))),
                }
            }
            Expr::Call(f, args) => self.call(*f, args),
        }
    }

    fn ident(&self, name: &str) -> Result<Value, Failure> {
        if name == "pt" {
            return Ok(Value::Variety(CellularVariety::point()));
        }
        if let Some(c) = Category::parse(name) {
            return Ok(Value::Category(c));
        }
        if let Some(x) = self.ledger.motive(name) {
            return Ok(Value::Variety(x.clone().with_name(name)));
        }
        if self.ledger.contains(name) {
            return Ok(Value::Symbol(name.to_string()));
        }
        Err(Failure::Parse(format!("unknown identifier `{name}`")))
    }

    fn arity(&self, f: Func, args: &[Expr], allowed: &[usize]) -> Result<(), Failure> {
        if allowed.contains(&args.len()) {
            return Ok(());
        }
        let want: Vec<String> = allowed.iter().map(usize::to_string).collect();
        Err(Failure::Parse(format!("{} takes {} argument(s), got {}", f.name(), want.join(" or "), args.len())))
    }

    fn variety_arg(&self, f: Func, v: Value) -> Result<CellularVariety, Failure> {
        match v {
            Value::Variety(x) => Ok(x),
            Value::Symbol(s) => Err(type_error(format!(
                "`{s}` is a ledger symbol with no cellular model, so {}({s}) is not defined; \
                 evaluate its measures with `motivecalc measure eval {s}` instead",
                f.name()
            ))),
            other => Err(type_error(format!("{}(...) takes a variety such as P(2) or P(1)*P(1), not {}", f.name(), other.kind()))),
        }
    }

    fn degree_arg(&self, f: Func, v: Value) -> Result<u32, Failure> {
        match v {
            Value::Integer(n) => {
                u32::try_from(n).map_err(|_| type_error(format!("the degree of {} must be a non-negative integer", f.name())))
            }
            other => Err(type_error(format!("the first argument of {} is a degree, not {}", f.name(), other.kind()))),
        }
    }

    fn motive_mismatch(f: Func, v: &Value) -> Failure {
        let hint = match v {
            Value::Variety(x) => format!("; wrap the variety as M({0}) or NC({0})", x.name()),
            Value::Symbol(s) => format!(
                "; `{s}` is a ledger symbol, and symmetric powers of ledger symbols are registered classes \
                 such as S^n({s}), evaluated with `motivecalc measure eval`"
            ),
            _ => String::new(),
        };
        type_error(format!("{} expects a motive, not {}{hint}", f.name(), v.kind()))
    }

    fn cut(&mut self, f: Func, lambda: &Partition, obj: Value) -> Result<Value, Failure> {
        self.citations.insert(Citation::SchurFunctor);
        match obj {
            Value::Chow(m) => Ok(Value::Chow(schur_cut(lambda, &m)?.to_chow_motive()?)),
            Value::NC(n) => Ok(Value::NC(schur_cut(lambda, &n)?.to_nc_motive()?)),
            other => Err(Self::motive_mismatch(f, &other)),
        }
    }

    fn call(&mut self, f: Func, args: &[Expr]) -> Result<Value, Failure> {
        match f {
            Func::M => {
                self.arity(f, args, &[1])?;
                let x = self.eval(&args[0])?;
                Ok(Value::Chow(ChowMotive::of(&self.variety_arg(f, x)?)))
            }
            Func::NC => {
                self.arity(f, args, &[1])?;
                match self.eval(&args[0])? {
                    Value::Chow(m) => {
                        self.citations.insert(Citation::ComparisonFunctor);
                        Ok(Value::NC(realize(&OrbitMotive::from_chow(&m))))
                    }
                    other => Ok(Value::NC(nc_of(&self.variety_arg(f, other)?))),
                }
            }
            Func::Twist => {
                self.arity(f, args, &[2])?;
                let j = match self.eval(&args[0])? {
                    Value::Integer(n) => i64::try_from(n).map_err(|_| type_error("twist out of range"))?,
                    other => return Err(type_error(format!("twist(j, N) takes an integer j, not {}", other.kind()))),
                };
                match self.eval(&args[1])? {
                    Value::Chow(m) => Ok(Value::Chow(m.twisted(j))),
                    Value::NC(_) => Err(type_error(
                        "Tate twists are identified away on the noncommutative side; twist the Chow motive and apply NC(...)",
                    )),
                    other => Err(Self::motive_mismatch(f, &other)),
                }
            }
            Func::Sym | Func::Alt => {
                self.arity(f, args, &[2])?;
                let degree = self.eval(&args[0])?;
                let n = self.degree_arg(f, degree)?;
                let obj = self.eval(&args[1])?;
                if n == 0 {
                    return match obj {
                        Value::Chow(_) => Ok(Value::Chow(ChowMotive::unit())),
                        Value::NC(_) => Ok(Value::NC(Motive::unit())),
                        other => Err(Self::motive_mismatch(f, &other)),
                    };
                }
                let lambda = if f == Func::Sym { Partition::row(n) } else { Partition::column(n) };
                self.cut(f, &lambda, obj)
            }
            Func::Schur => {
                self.arity(f, args, &[2])?;
                let lambda = match self.eval(&args[0])? {
                    Value::Partition(p) => p,
                    Value::Integer(n) => Partition::row(self.degree_arg(f, Value::Integer(n))?.max(1)),
                    other => return Err(type_error(format!("schur(λ, N) takes a partition like [2,1], not {}", other.kind()))),
                };
                let obj = self.eval(&args[1])?;
                self.cut(f, &lambda, obj)
            }
            Func::Hom => {
                self.arity(f, args, &[2, 3])?;
                let a = self.eval(&args[0])?;
                let b = self.eval(&args[1])?;
                let category = match args.get(2).map(|e| self.eval(e)).transpose()? {
                    None => None,
                    Some(Value::Category(c)) => Some(c),
                    Some(other) => {
                        return Err(type_error(format!("the third argument of hom is chow, orbit or nc, not {}", other.kind())))
                    }
                };
                self.hom(a, b, category).map(Value::Hom)
            }
            Func::Zeta => {
                self.arity(f, args, &[1, 2])?;
                let obj = self.eval(&args[0])?;
                let order = match args.get(1).map(|e| self.eval(e)).transpose()? {
                    None => self.order,
                    Some(Value::Integer(n)) => usize::try_from(n).map_err(|_| type_error("the zeta order must be non-negative"))?,
                    Some(other) => return Err(type_error(format!("the zeta order is an integer, not {}", other.kind()))),
                };
                self.citations.insert(Citation::IntrinsicZeta);
                match obj {
                    Value::Chow(m) => Ok(Value::ChowZeta(zeta_intrinsic(&m, order)?)),
                    Value::NC(n) => Ok(Value::NCZeta(zeta_intrinsic(&n, order)?)),
                    other => Err(Self::motive_mismatch(f, &other)),
                }
            }
            Func::Class => {
                self.arity(f, args, &[1])?;
                match self.eval(&args[0])? {
                    Value::Chow(m) => {
                        self.citations.insert(Citation::ChowGrothendieckRing);
                        Ok(Value::Class(class_of_chow(&m)))
                    }
                    Value::NC(n) => {
                        self.citations.insert(Citation::NoncommutativeClass);
                        Ok(Value::Integer(class_of_nc(&n)))
                    }
                    other => Err(Self::motive_mismatch(f, &other)),
                }
            }
        }
    }

    pub fn hom(&mut self, a: Value, b: Value, category: Option<Category>) -> Result<HomSpace, Failure> {
        match (a, b) {
            (Value::Chow(a), Value::Chow(b)) => match category.unwrap_or(Category::Chow) {
                Category::Chow => {
                    let d = a.hom_dimension(&b);
                    let graded = (d > 0).then(|| BTreeMap::from([(a.hom_degree(&b), d)]));
                    Ok(HomSpace { category: Category::Chow, dimension: d, graded })
                }
                Category::Orbit => {
                    self.citations.insert(Citation::OrbitHom);
                    let hom = OrbitMotive::from_chow(&a).hom(&OrbitMotive::from_chow(&b))?;
                    Ok(HomSpace { category: Category::Orbit, dimension: hom.dimension(), graded: hom.graded })
                }
                Category::NC => {
                    self.citations.insert(Citation::ComparisonFunctor);
                    let (x, y) = (realize(&OrbitMotive::from_chow(&a)), realize(&OrbitMotive::from_chow(&b)));
                    Ok(HomSpace { category: Category::NC, dimension: x.hom_dimension(&y), graded: None })
                }
            },
            (Value::NC(a), Value::NC(b)) => match category.unwrap_or(Category::NC) {
                Category::NC => Ok(HomSpace { category: Category::NC, dimension: a.hom_dimension(&b), graded: None }),
                other => Err(type_error(format!(
                    "noncommutative motives have no {} Hom; compare M(X) and M(Y) instead",
                    other.name()
                ))),
            },
            (a, b) => Err(type_error(format!(
                "hom takes two Chow motives or two noncommutative motives, not {} and {}",
                a.kind(),
                b.kind()
            ))),
        }
    }
}

impl From<MotiveError> for Failure {
    fn from(e: MotiveError) -> Self {
        Failure::from_motive(e)
    }
}
