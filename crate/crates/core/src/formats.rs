//! JSON encodings of order expressions, gradings, group-ring pairs and
//! automorphism lists.
//!
//! Integers are read from JSON numbers or base-10 strings and always
//! written as strings.

use serde_json::{json, Map, Value};

use crate::abgroups::FinAbGroup;
use crate::gradings::Grading;
use crate::orders::{AtomSpec, Built, Order, OrderExpr, Provenance};
use crate::starkdec::GpRgPair;
use crate::{Error, Int, IntHnf, IntMatrix, Result};

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("malformed JSON: {e}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::input(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::input(format!("`{what}` must be an array")))
}

pub fn int_from_json(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(Error::input(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<Int>()
            .map_err(|_| Error::input(format!("`{s}` is not a base-10 integer"))),
        _ => Err(Error::input("expected an integer")),
    }
}

pub fn vector_from_json(v: &Value, what: &str) -> Result<Vec<Int>> {
    array(v, what)?.iter().map(int_from_json).collect()
}

pub fn vectors_from_json(v: &Value, what: &str) -> Result<Vec<Vec<Int>>> {
    array(v, what)?.iter().map(|x| vector_from_json(x, what)).collect()
}

fn usize_from_json(v: &Value, what: &str) -> Result<usize> {
    let n = int_from_json(v)?;
    usize::try_from(&n).map_err(|_| Error::input(format!("`{what}` must be a non-negative machine integer")))
}

/// Group given by cyclic orders, normalized to invariant factors.
pub fn group_from_orders(v: &Value) -> Result<FinAbGroup> {
    let orders = vector_from_json(v, "group")?;
    Ok(FinAbGroup::from_orders(&orders)?.group)
}

pub fn order_expr_from_json(v: &Value) -> Result<OrderExpr> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| Error::input("`kind` must be a string"))?;
    match kind {
        "int" => Ok(OrderExpr::Int),
        "atom" => {
            let rank = usize_from_json(field(v, "rank")?, "rank")?;
            if rank == 0 {
                return Err(Error::input("an order must have positive rank"));
            }
            let table = array(field(v, "mul")?, "mul")?;
            if table.len() != rank {
                return Err(Error::input("`mul` must have `rank` rows"));
            }
            let mut mul = Vec::with_capacity(rank * rank * rank);
            for row in table {
                let row = vectors_from_json(row, "mul")?;
                if row.len() != rank || row.iter().any(|c| c.len() != rank) {
                    return Err(Error::input("`mul` must be a rank x rank x rank tensor"));
                }
                mul.extend(row.into_iter().flatten());
            }
            let one = vector_from_json(field(v, "one")?, "one")?;
            let mu_gens = match v.get("mu_gens") {
                None | Some(Value::Null) => None,
                Some(g) => Some(vectors_from_json(g, "mu_gens")?),
            };
            Ok(OrderExpr::Atom(AtomSpec {
                rank,
                mul,
                one,
                mu_gens,
            }))
        }
        "group_ring" => Ok(OrderExpr::group_ring(
            order_expr_from_json(field(v, "base")?)?,
            group_from_orders(field(v, "group")?)?,
        )),
        "product" => Ok(OrderExpr::Product(
            array(field(v, "factors")?, "factors")?
                .iter()
                .map(order_expr_from_json)
                .collect::<Result<_>>()?,
        )),
        "span" => Ok(OrderExpr::Span(
            Box::new(order_expr_from_json(field(v, "ambient")?)?),
            vectors_from_json(field(v, "gens")?, "gens")?,
        )),
        other => Err(Error::input(format!("unknown order kind `{other}`"))),
    }
}

pub fn order_expr_from_str(text: &str) -> Result<OrderExpr> {
    order_expr_from_json(&parse_json(text)?)
}

pub fn int_json(n: &Int) -> Value {
    Value::String(n.to_string())
}

pub fn vector_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn vectors_json(vs: &[Vec<Int>]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

/// Matrix written row by row.
pub fn matrix_json(m: &IntMatrix) -> Value {
    vectors_json(&m.row_vecs())
}

pub fn group_json(g: &FinAbGroup) -> Value {
    vector_json(g.factors())
}

pub fn order_expr_json(e: &OrderExpr) -> Value {
    match e {
        OrderExpr::Int => json!({"kind": "int"}),
        OrderExpr::Atom(a) => {
            let n = a.rank;
            let mul: Vec<Value> = (0..n)
                .map(|i| {
                    Value::Array(
                        (0..n)
                            .map(|j| vector_json(&a.mul[(i * n + j) * n..(i * n + j + 1) * n]))
                            .collect(),
                    )
                })
                .collect();
            let mut m = Map::new();
            m.insert("kind".into(), json!("atom"));
            m.insert("rank".into(), int_json(&Int::from(n)));
            m.insert("mul".into(), Value::Array(mul));
            m.insert("one".into(), vector_json(&a.one));
            if let Some(g) = &a.mu_gens {
                m.insert("mu_gens".into(), vectors_json(g));
            }
            Value::Object(m)
        }
        OrderExpr::GroupRing(b, g) => json!({"kind": "group_ring", "base": order_expr_json(b), "group": group_json(g)}),
        OrderExpr::Product(fs) => json!({"kind": "product", "factors": fs.iter().map(order_expr_json).collect::<Vec<_>>()}),
        OrderExpr::Span(a, gens) => json!({"kind": "span", "ambient": order_expr_json(a), "gens": vectors_json(gens)}),
    }
}

/// An order as a standalone atom expression.
pub fn order_json(order: &Order) -> Value {
    order_expr_json(&OrderExpr::Atom(AtomSpec {
        rank: order.rank(),
        mul: order.structure_constants().to_vec(),
        one: order.one().to_vec(),
        mu_gens: None,
    }))
}

/// Translates vectors given in the coordinates named by `coords` into
/// coordinates of the order's own basis. `"ambient"` applies to span
/// expressions and means the ambient order's basis.
fn to_order_coords(b: &Built, coords: Option<&Value>, vs: Vec<Vec<Int>>) -> Result<Vec<Vec<Int>>> {
    match coords.and_then(Value::as_str) {
        None | Some("order") => {
            if vs.iter().any(|v| v.len() != b.order.rank()) {
                return Err(Error::input("vector length does not match the order's rank"));
            }
            Ok(vs)
        }
        Some("ambient") => {
            let Provenance::Span { ambient, basis } = &b.prov else {
                return Err(Error::input("`coords: ambient` requires a span expression"));
            };
            vs.iter()
                .map(|v| {
                    if v.len() != ambient.order.rank() {
                        return Err(Error::input("vector length does not match the ambient rank"));
                    }
                    basis
                        .coordinates(v)
                        .ok_or_else(|| Error::input("vector does not lie in the order"))
                })
                .collect()
        }
        Some(other) => Err(Error::input(format!("unknown coordinate system `{other}`"))),
    }
}

/// `{"gamma": [d…], "components": [{"degree": […], "basis": [[…]]}], "coords"?}`.
pub fn grading_from_json(v: &Value, b: &Built) -> Result<Grading> {
    let factors = vector_from_json(field(v, "gamma")?, "gamma")?;
    let gamma = FinAbGroup::new(factors)?;
    let coords = v.get("coords");
    let comps = array(field(v, "components")?, "components")?
        .iter()
        .map(|c| {
            let degree = vector_from_json(field(c, "degree")?, "degree")?;
            if degree.len() != gamma.ngens() {
                return Err(Error::input("degree length does not match gamma"));
            }
            let basis = to_order_coords(b, coords, vectors_from_json(field(c, "basis")?, "basis")?)?;
            Ok((gamma.reduce(&degree), basis))
        })
        .collect::<Result<Vec<_>>>()?;
    Grading::new(&b.order, &gamma, &comps)
}

pub fn grading_json(g: &Grading) -> Value {
    let comps: Vec<Value> = g
        .components()
        .iter()
        .map(|(k, l)| json!({"degree": vector_json(k), "basis": vectors_json(&l.vectors())}))
        .collect();
    json!({"gamma": group_json(g.gamma()), "components": comps})
}

/// `{"pairs": [{"a": [[…]], "g": [[…]]}, …], "coords"?}`: `a` spans the
/// base subring, `g` generates the unit group.
pub fn pairs_from_json(v: &Value, b: &Built, bound: usize) -> Result<Vec<GpRgPair>> {
    let coords = v.get("coords");
    array(field(v, "pairs")?, "pairs")?
        .iter()
        .map(|p| pair_from_json(p, b, coords, bound))
        .collect()
}

fn pair_from_json(p: &Value, b: &Built, coords: Option<&Value>, bound: usize) -> Result<GpRgPair> {
    let a = to_order_coords(b, coords, vectors_from_json(field(p, "a")?, "a")?)?;
    let g = to_order_coords(b, coords, vectors_from_json(field(p, "g")?, "g")?)?;
    let a = IntHnf::span(b.order.rank(), &a);
    GpRgPair::new(&b.order, a, &g, bound)
}

pub fn pair_json(p: &GpRgPair) -> Value {
    json!({
        "a": vectors_json(&p.a.vectors()),
        "g": vectors_json(&p.g.generator_images()),
        "group": group_json(p.group()),
    })
}

/// `{"automorphisms": [M…]}` with each matrix given row by row, acting on
/// coordinate column vectors.
pub fn automorphisms_from_json(v: &Value, rank: usize) -> Result<Vec<IntMatrix>> {
    array(field(v, "automorphisms")?, "automorphisms")?
        .iter()
        .map(|m| {
            let rows = vectors_from_json(m, "automorphism")?;
            if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                return Err(Error::input("automorphism matrix has the wrong shape"));
            }
            IntMatrix::from_rows(&rows, rank)
        })
        .collect()
}
