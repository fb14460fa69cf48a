//! Command dispatch for the `stark` binary.
//!
//! Every verb reads an order expression, runs one pipeline and returns a
//! single JSON document. Numbers in the output are base-10 strings.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use stark_core::abgroups::FinAbGroup;
use stark_core::autgroups::{aut_order, exact_sequence_check, AutData};
use stark_core::formats::{
    automorphisms_from_json, grading_from_json, grading_json, group_json, int_json, matrix_json, order_expr_from_json,
    order_json, pair_json, pairs_from_json, parse_json, vector_json, vectors_json,
};
use stark_core::gradings::{fingerprint, universal_for, Grading};
use stark_core::orders::{build_with, components, idempotents, is_connected, mu, Built};
use stark_core::starkdec::{
    common_refinement, degree_map_for, enumerate_gprg, group_ring_determinant, is_stark, maximal_gprg, swap_check,
    Certificate, GpRgPair,
};
use stark_core::{Error, Int, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Validate,
    Mu,
    Idempotents,
    Components,
    Grading,
    DegreeMap,
    Stark,
    Decompose,
    GprgEnum,
    SwapCheck,
    Refine,
    AutCount,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Validate => "validate",
            Verb::Mu => "mu",
            Verb::Idempotents => "idempotents",
            Verb::Components => "components",
            Verb::Grading => "grading",
            Verb::DegreeMap => "degree-map",
            Verb::Stark => "stark",
            Verb::Decompose => "decompose",
            Verb::GprgEnum => "gprg-enum",
            Verb::SwapCheck => "swap-check",
            Verb::Refine => "refine",
            Verb::AutCount => "aut-count",
        }
    }

    fn uses_grading(self) -> bool {
        matches!(
            self,
            Verb::Grading | Verb::DegreeMap | Verb::Stark | Verb::Decompose | Verb::GprgEnum | Verb::Refine
        )
    }
}

/// Group-ring structure of reduced orders.
#[derive(Debug, Parser)]
#[command(name = "stark", version)]
pub struct Command {
    pub verb: Verb,
    /// Order expression file.
    pub input: PathBuf,
    /// Pairs file for `swap-check` and `refine`.
    pub pairs: Option<PathBuf>,
    /// Upper bound on enumerated elements.
    #[arg(long, default_value_t = 4096)]
    pub max_enum: usize,
    /// Worker threads for per-component evaluation.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Grading to use as the universal grading, flagged as trusted.
    #[arg(long)]
    pub grading_file: Option<PathBuf>,
    /// Cross-check declared roots of unity by exhaustive search.
    #[arg(long)]
    pub verify_mu: bool,
    /// Group for `aut-count`, as comma-separated cyclic orders.
    #[arg(long, value_delimiter = ',')]
    pub group: Option<Vec<u64>>,
    /// Automorphisms of the base for `aut-count`.
    #[arg(long)]
    pub aut_file: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => 2,
        Error::NotFinite | Error::NotReduced | Error::TooLarge { .. } | Error::Unsupported(_) => 3,
        Error::Invariant(_) => 4,
    }
}

pub fn run(cmd: &Command) -> Outcome {
    match dispatch(cmd) {
        Ok(v) => Outcome {
            code: 0,
            stdout: serde_json::to_string_pretty(&v).expect("serializable") + "\n",
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

fn check_flags(cmd: &Command) -> Result<(), Error> {
    let bad = |flag: &str| Err(Error::Input(format!("{flag} is not accepted by `{}`", cmd.verb.name())));
    if cmd.grading_file.is_some() && !cmd.verb.uses_grading() {
        return bad("--grading-file");
    }
    if cmd.verify_mu && cmd.verb != Verb::Mu {
        return bad("--verify-mu");
    }
    if cmd.verb != Verb::AutCount {
        if cmd.group.is_some() {
            return bad("--group");
        }
        if cmd.aut_file.is_some() {
            return bad("--aut-file");
        }
    } else if cmd.group.is_none() {
        return Err(Error::Input("aut-count needs --group".into()));
    }
    match (cmd.verb, &cmd.pairs) {
        (Verb::SwapCheck, None) => Err(Error::Input("swap-check needs a pairs file".into())),
        (Verb::SwapCheck | Verb::Refine, _) | (_, None) => Ok(()),
        (_, Some(_)) => bad("a pairs file"),
    }
}

fn dispatch(cmd: &Command) -> Result<Value, Error> {
    check_flags(cmd)?;
    if cmd.jobs == 0 {
        return Err(Error::Input("--jobs must be positive".into()));
    }
    let limits = Limits {
        max_enum: cmd.max_enum,
        jobs: cmd.jobs,
        ..Limits::default()
    };
    let expr = order_expr_from_json(&read_json(&cmd.input)?)?;
    let b = build_with(&expr, &limits)?;
    if !b.order.is_reduced() {
        return Err(Error::NotReduced);
    }
    let trusted = match &cmd.grading_file {
        Some(p) => Some(grading_from_json(&read_json(p)?, &b)?),
        None => None,
    };
    let trusted = trusted.as_ref();
    let mut out = match cmd.verb {
        Verb::Validate => validate(&b, &limits)?,
        Verb::Mu => {
            let roots = mu(&b, &limits, cmd.verify_mu)?;
            json!({
                "order": int_json(&Int::from(roots.len())),
                "group": group_json(roots.group()),
                "generators": vectors_json(&roots.generator_images()),
                "elements": vectors_json(roots.elements()),
            })
        }
        Verb::Idempotents => json!({"idempotents": vectors_json(&idempotents(&b.order, &limits)?)}),
        Verb::Components => {
            let comps = components(&b, &limits)?;
            let list: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!({
                        "rank": int_json(&Int::from(c.built.order.rank())),
                        "idempotent": vector_json(&c.incl.mul_vec(c.built.order.one())),
                        "order": order_json(&c.built.order),
                    })
                })
                .collect();
            json!({"components": list})
        }
        Verb::Grading => {
            let g = universal_for(&b, trusted, &limits)?;
            grading_value(&g, &limits)?
        }
        Verb::DegreeMap => {
            let dm = degree_map_for(&b, trusted, &limits)?;
            let images: Vec<Value> = dm.d.images().iter().map(|x| vector_json(x)).collect();
            json!({
                "mu": group_json(dm.mu.group()),
                "mu_generators": vectors_json(&dm.mu.generator_images()),
                "gamma": group_json(dm.grading.gamma()),
                "images": images,
                "zero": dm.d.is_zero(),
                "trusted": dm.grading.is_trusted(),
            })
        }
        Verb::Stark => {
            let v = is_stark(&b, trusted, &limits)?;
            json!({"stark": v.stark, "trusted": v.trusted})
        }
        Verb::Decompose => decompose(&b, trusted, &limits)?,
        Verb::GprgEnum => {
            require_connected(&b, &limits)?;
            let dm = degree_map_for(&b, trusted, &limits)?;
            let poset = enumerate_gprg(&dm, &limits)?;
            let hasse: Vec<Value> = poset
                .hasse
                .iter()
                .map(|&(i, j)| json!([int_json(&Int::from(i)), int_json(&Int::from(j))]))
                .collect();
            json!({
                "count": int_json(&Int::from(poset.pairs.len())),
                "pairs": poset.pairs.iter().map(pair_json).collect::<Vec<_>>(),
                "hasse": hasse,
                "maximal": poset.maximal().iter().map(|&i| int_json(&Int::from(i))).collect::<Vec<_>>(),
                "trusted": dm.grading.is_trusted(),
            })
        }
        Verb::SwapCheck => {
            let pairs = read_pairs(cmd, &b, &limits)?;
            let r = swap_check(&b.order, &pairs[0], &pairs[1])?;
            json!({"a_g": r.a_g, "b_h": r.b_h, "a_h": r.a_h, "b_g": r.b_g, "all_hold": r.all_hold()})
        }
        Verb::Refine => refine(cmd, &b, trusted, &limits)?,
        Verb::AutCount => aut_count(cmd, &b, &limits)?,
    };
    out["verb"] = json!(cmd.verb.name());
    Ok(out)
}

fn require_connected(b: &Built, limits: &Limits) -> Result<(), Error> {
    if is_connected(b, limits)? {
        Ok(())
    } else {
        Err(Error::Unsupported("this verb needs a connected order".into()))
    }
}

fn validate(b: &Built, limits: &Limits) -> Result<Value, Error> {
    Ok(json!({
        "rank": int_json(&Int::from(b.order.rank())),
        "discriminant": int_json(&b.order.discriminant()),
        "reduced": true,
        "connected": is_connected(b, limits)?,
    }))
}

fn grading_value(g: &Grading, limits: &Limits) -> Result<Value, Error> {
    let mut v = grading_json(g);
    let profile: Vec<Value> = g.rank_profile(limits.max_enum)?.iter().map(|&r| int_json(&Int::from(r))).collect();
    v["rank_profile"] = Value::Array(profile);
    v["trusted"] = json!(g.is_trusted());
    Ok(v)
}

fn decompose(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<Value, Error> {
    let dec = maximal_gprg(b, trusted, limits)?;
    let base = Built::plain(dec.base.clone());
    let base_trust = if dec.group.is_trivial() {
        trusted.cloned()
    } else {
        None
    };
    let base_trust = match &base_trust {
        Some(g) => Some(rebase_grading(g, &dec.base, &dec.pair)?),
        None => None,
    };
    let fp = match fingerprint(&base, base_trust.as_ref(), limits) {
        Ok(f) => json!({
            "rank": int_json(&Int::from(f.rank)),
            "discriminant": int_json(&f.discriminant),
            "mu_order": int_json(&Int::from(f.mu_order)),
            "gamma": vector_json(&f.gamma),
        }),
        Err(Error::Unsupported(_)) => Value::Null,
        Err(e) => return Err(e),
    };
    let det = group_ring_determinant(&b.order, &dec.pair.a, dec.pair.g.elements())
        .ok_or_else(|| Error::Invariant("decomposition has the wrong rank".into()))?;
    let mut cert = match &dec.certificate {
        Certificate::NoIsoSummand => json!({"kind": "no_iso_summand"}),
        Certificate::Gcd { factor_groups } => json!({
            "kind": "gcd",
            "factor_groups": factor_groups.iter().map(group_json).collect::<Vec<_>>(),
        }),
    };
    cert["determinant"] = int_json(&det);
    Ok(json!({
        "group": group_json(&dec.group),
        "base": order_json(&dec.base),
        "base_rank": int_json(&Int::from(dec.base.rank())),
        "fingerprint": fp,
        "embedding": pair_json(&dec.pair),
        "certificate": cert,
        "trusted": dec.trusted,
    }))
}

/// Carries a grading of `R` over to the base order when `A = R`.
fn rebase_grading(g: &Grading, base: &stark_core::orders::Order, pair: &GpRgPair) -> Result<Grading, Error> {
    let comps: Vec<_> = g
        .components()
        .iter()
        .map(|(k, l)| {
            let vs = l
                .vectors()
                .iter()
                .map(|v| pair.a.coordinates(v).ok_or_else(|| Error::Invariant("base is not the whole ring".into())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((k.clone(), vs))
        })
        .collect::<Result<_, Error>>()?;
    Ok(Grading::new(base, g.gamma(), &comps)?.with_trust(g.is_trusted()))
}

fn read_pairs(cmd: &Command, b: &Built, limits: &Limits) -> Result<Vec<GpRgPair>, Error> {
    let path = cmd.pairs.as_ref().ok_or_else(|| Error::Input("missing pairs file".into()))?;
    let pairs = pairs_from_json(&read_json(path)?, b, limits.max_enum)?;
    if pairs.len() != 2 {
        return Err(Error::Input("pairs file must list exactly two pairs".into()));
    }
    Ok(pairs)
}

fn refine(cmd: &Command, b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<Value, Error> {
    require_connected(b, limits)?;
    let dm = degree_map_for(b, trusted, limits)?;
    let pairs = match &cmd.pairs {
        Some(_) => read_pairs(cmd, b, limits)?,
        None => {
            let poset = enumerate_gprg(&dm, limits)?;
            let max = poset.maximal();
            let pick = |k: usize| poset.pairs[max[k.min(max.len() - 1)]].clone();
            vec![pick(0), pick(1)]
        }
    };
    let r = common_refinement(b, &dm, &pairs[0], &pairs[1], limits)?;
    Ok(json!({
        "pairs": pairs.iter().map(pair_json).collect::<Vec<_>>(),
        "c": vectors_json(&r.c.vectors()),
        "i": group_json(&r.i),
        "j": group_json(&r.j),
        "i_generators": vectors_json(&r.i_gens),
        "j_generators": vectors_json(&r.j_gens),
        "conjugator": matrix_json(&r.conjugator),
        "trusted": dm.grading.is_trusted(),
    }))
}

fn aut_count(cmd: &Command, b: &Built, limits: &Limits) -> Result<Value, Error> {
    let orders: Vec<Int> = cmd.group.as_deref().unwrap_or_default().iter().map(|&n| Int::from(n)).collect();
    let g = FinAbGroup::from_orders(&orders)?.group;
    let aut_a = match &cmd.aut_file {
        Some(p) => Some(automorphisms_from_json(&read_json(p)?, b.order.rank())?),
        None => None,
    };
    let ctx = AutData::new(b, aut_a, limits)?;
    let count = aut_order(&ctx, &g, limits)?;
    let exact = match exact_sequence_check(&ctx, &g, limits) {
        Ok(r) => json!({
            "holds": r.holds(),
            "u_star_base": int_json(&Int::from(r.u_star_base)),
            "u_star_group_ring": int_json(&Int::from(r.u_star_group_ring)),
            "u_star_matrix_form": int_json(&r.u_star_matrix_form),
            "aut_base": int_json(&Int::from(r.aut_base)),
            "aut_group_ring": int_json(&Int::from(r.aut_group_ring)),
            "cardinality_identity": r.cardinality_identity,
            "iota_injective": r.iota_injective,
            "pi_surjective": r.pi_surjective,
            "kernel_is_image": r.kernel_is_image,
        }),
        Err(Error::TooLarge { what, bound }) => json!({"skipped": format!("{what} exceeds bound {bound}")}),
        Err(e) => return Err(e),
    };
    if exact.get("holds") == Some(&json!(false)) {
        return Err(Error::Invariant("exact sequence check failed".into()));
    }
    Ok(json!({
        "group": group_json(&g),
        "aut_order": int_json(&count),
        "aut_base": int_json(&Int::from(ctx.aut_a.len())),
        "exact_sequence": exact,
    }))
}
