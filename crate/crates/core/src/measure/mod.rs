//! Grothendieck rings of motives, the scissor-relation ledger and the
//! motivic measures defined on it.

pub mod k0;
pub mod ledger;
pub mod measures;

pub use k0::{class_of_chow, class_of_nc, class_of_orbit, class_of_schur_cut, collapse, K0ChowClass, K0NCClass};
pub use ledger::{symmetric_power_symbol, LedgerBuilder, Relation, SymbolPolynomial, VarLedger, BUILTIN_RANGE};
pub use measures::{
    evaluate, evaluate_expression, hochschild_euler_characteristic, ledger_check, mod_q_minus_1_check, LedgerCheck,
    Measure, MeasureValue, NonFactoringVerdict, RelationFailure,
};
