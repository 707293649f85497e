use exact_arith::{Ring, Zpn};
use multipoly::MultiPoly;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Terms in canonical order, each as {"monomial": [[var, exp], …], "coeff": "…"}.
pub fn poly<R: Ring>(f: &MultiPoly<R>) -> Value {
    Value::Array(
        f.records()
            .into_iter()
            .map(|(m, c)| json!({ "monomial": m.into_iter().map(|(v, e)| json!([v, e])).collect::<Vec<_>>(), "coeff": c }))
            .collect(),
    )
}

/// Same, with Z/p^N coefficients printed as plain residues.
pub fn series(f: &MultiPoly<Zpn>) -> Value {
    let plain = f.map_coeffs(exact_arith::Rationals, |c| BigInt::from(*c).into());
    let mut v = poly(&plain);
    if let Some(d) = f.trunc() {
        v = json!({ "terms": v, "truncated_above_degree": d });
    }
    v
}

pub fn bigints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}
