use crate::json as js;
use crate::verify;
use crate::{CliError, Command, ExpandKind, RankTarget, RelationKind, Report, Variant};
use conj_invariants::{RankClaim, RankKind, RANK_PRIME};
use exact_arith::Rationals;
use multipoly::MultiPoly;
use quad_invariants as quad;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use serre_tate::{self as st, BasicKind, ExpansionParams};

/// "3" ↦ 6, "1/2" ↦ 1: twice the value, which must be a nonnegative
/// integer or half-integer.
pub fn parse_half_integer(s: &str) -> Result<u32, CliError> {
    let bad = || CliError::Usage(format!("s = {s:?} is not an integer or half-integer"));
    match s.split_once('/') {
        Some((num, "2")) => num.trim().parse().map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => s
            .trim()
            .parse::<u32>()
            .ok()
            .and_then(|v| v.checked_mul(2))
            .ok_or_else(bad),
    }
}

fn ok(result: Value, source: &'static str) -> Result<Report, CliError> {
    Ok(Report {
        result,
        source,
        passed: true,
    })
}

fn det_t(g: usize) -> Result<MultiPoly<Rationals>, CliError> {
    quad::theta(g, &[g]).map_err(CliError::usage)
}

fn value_name<T: clap::ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

pub fn dispatch(cmd: &Command, seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match cmd {
        Command::Dims { g, r, s, cap } => {
            let s2 = parse_half_integer(s)?;
            let basis = quad::invariant_dimension(*g, *r, s2, *cap).map_err(CliError::usage)?;
            ok(
                json!({ "g": g, "r": r, "s": s, "dimension": basis.dimension(), "slice_size": basis.slice_size }),
                "kernel of the Lie-algebra action on the torus slice",
            )
        }
        Command::Hilbert {
            r,
            variant,
            terms,
            brute_force,
        } => {
            let v = match variant {
                Variant::Even => quad::HilbertVariant::Even,
                Variant::Grassmannian => quad::HilbertVariant::Grassmannian,
            };
            let series = quad::hilbert_closed(*r, v).map_err(CliError::usage)?;
            let coeffs = series.coefficients(*terms);
            let mut out = json!({
                "r": r,
                "variant": value_name(variant),
                "numerator": js::bigints(&series.numerator),
                "denominator_power": series.denominator_power,
                "coefficients": js::bigints(&coeffs),
            });
            let mut passed = true;
            if *brute_force {
                if !matches!(variant, Variant::Grassmannian) {
                    return Err(CliError::Usage(
                        "--brute-force needs --variant grassmannian".into(),
                    ));
                }
                let dims = (0..(*terms).min(4))
                    .map(|d| quad::plucker_span_dimension(r + 1, d).map_err(CliError::usage))
                    .collect::<Result<Vec<_>, _>>()?;
                passed = dims
                    .iter()
                    .zip(&coeffs)
                    .all(|(d, c)| num_bigint::BigInt::from(*d) == *c);
                out["brute_force"] = json!(dims);
            }
            Ok(Report {
                result: out,
                source: "closed-form Hilbert series",
                passed,
            })
        }
        Command::Theta { g, r } => {
            let mut members = Vec::new();
            let mut invariant = true;
            for m in quad::multidegrees(*g, *r) {
                let f = quad::theta(*g, &m).map_err(CliError::usage)?;
                invariant &= quad::is_lie_invariant(&f, *g);
                members.push(json!({ "multidegree": m, "poly": js::poly(&f) }));
            }
            ok(
                json!({
                    "g": g, "r": r,
                    "count": members.len(),
                    "expected_count": quad::theta_count(*g, *r),
                    "all_lie_invariant": invariant,
                    "members": members,
                }),
                "coefficients of det(Σ y_l T^(l))",
            )
        }
        Command::Upsilon { g, levels } => {
            let f = quad::upsilon(*g, levels).map_err(CliError::usage)?;
            ok(
                json!({ "g": g, "levels": levels, "poly": js::poly(&f) }),
                "determinant of level columns",
            )
        }
        Command::Xi { levels } => {
            let f = quad::xi_lift(levels).map_err(CliError::usage)?;
            let image = quad::jmath(&f, 2).map_err(CliError::usage)?;
            let passed = image == quad::xi_target(levels);
            Ok(Report {
                result: json!({ "levels": levels, "poly": js::poly(&f), "j_image_matches": passed }),
                source: "linear solve for the ȷ-preimage of a Plücker cycle",
                passed,
            })
        }
        Command::Relations { kind, levels, s } => match kind {
            RelationKind::Cyclic => {
                let c = quad::cyclic_relation(levels, *s).map_err(CliError::usage)?;
                Ok(Report {
                    result: json!({ "kind": "cyclic", "levels": levels, "s": s, "holds": c.holds, "reordered": c.reordered }),
                    source: "cyclic relation among Ξ invariants",
                    passed: c.holds,
                })
            }
            RelationKind::Plucker => {
                let arr: [usize; 4] = levels.as_slice().try_into().map_err(|_| {
                    CliError::Usage("plucker relations need exactly 4 levels".into())
                })?;
                let c = quad::plucker_relation(arr).map_err(CliError::usage)?;
                let quartic: Vec<Value> = c
                    .quartic
                    .iter()
                    .map(|(m, q)| json!({ "theta_monomial": quad::format_theta_monomial(m), "coeff": exact_arith::format_rational(q) }))
                    .collect();
                let passed = c.kernel_dim == 1 && c.j_image_vanishes;
                Ok(Report {
                    result: json!({
                        "kind": "plucker",
                        "levels": levels,
                        "slice_size": c.slice_size,
                        "kernel_dim": c.kernel_dim,
                        "matches_plucker_shape": c.matches_plucker_shape,
                        "j_image_vanishes": c.j_image_vanishes,
                        "quartic": quartic,
                    }),
                    source: "kernel of Θ-monomials on a partial-degree slice",
                    passed,
                })
            }
        },
        Command::Expand {
            g,
            p,
            prec,
            deg,
            kind,
            index,
        } => {
            let levels = match kind {
                ExpandKind::Psi | ExpandKind::Partial => 1,
                _ => *index,
            };
            let params =
                ExpansionParams::new(*g, *p, *prec, *deg, levels).map_err(CliError::usage)?;
            let s = match kind {
                ExpandKind::Psi => st::psi(params),
                ExpandKind::Fr => st::expansion_basic(params, BasicKind::FR(*index)),
                ExpandKind::Angle => st::expansion_basic(params, BasicKind::Angle(*index)),
                ExpandKind::Bracket => st::expansion_basic(params, BasicKind::Bracket(*index)),
                ExpandKind::Partial => st::expansion_basic(params, BasicKind::Partial),
            }
            .map_err(CliError::usage)?;
            let mut entries = Vec::new();
            for i in 0..*g {
                for j in i..*g {
                    entries
                        .push(json!({ "i": i + 1, "j": j + 1, "series": js::series(s.get(i, j)) }));
                }
            }
            ok(
                json!({ "g": g, "p": p, "prec": prec, "deg": deg, "kind": value_name(kind), "index": index, "entries": entries }),
                "truncated p-adic Serre-Tate expansion",
            )
        }
        Command::Diamond {
            g,
            p,
            prec,
            deg,
            multidegree,
        } => {
            let (f, slots) = match multidegree {
                Some(m) => (quad::theta(*g, m).map_err(CliError::usage)?, m.len() as u16),
                None => (det_t(*g)?, 1),
            };
            let params =
                ExpansionParams::new(*g, *p, *prec, *deg, slots).map_err(CliError::usage)?;
            let series = st::diamond_realize(&f, slots, params).map_err(CliError::usage)?;
            let d = f.degree().unwrap_or(0);
            let lowest = st::club(&series, d);
            let heart = st::heart_diamond(&f, slots, *g, *p).map_err(CliError::usage)?;
            let heart_z =
                delta_calculus::reduce_poly(&heart, params.ring()).map_err(CliError::usage)?;
            let passed = d > *deg || lowest == heart_z;
            Ok(Report {
                result: json!({
                    "g": g, "p": p, "prec": prec, "deg": deg,
                    "form": js::poly(&f),
                    "series": js::series(&series),
                    "lowest_component": js::series(&lowest),
                    "heart": js::poly(&heart),
                    "heart_matches": lowest == heart_z,
                }),
                source: "substitution of Frobenius twists of Ψ",
                passed,
            })
        }
        Command::Rank {
            kind,
            g,
            n,
            points,
            max_len,
        } => {
            let (rank, expected) = match kind {
                RankTarget::Pencil => {
                    let th = quad::pencil_thetas(*g).map_err(CliError::usage)?;
                    let r = quad::random_jacobian_rank(
                        &th,
                        &quad::t_vars(*g, 1),
                        RANK_PRIME,
                        *points,
                        &mut rng,
                    )
                    .map_err(CliError::usage)?;
                    (r, g + 1)
                }
                RankTarget::Theta => {
                    if *n < 2 {
                        return Err(CliError::Usage("theta ranks need --n at least 2".into()));
                    }
                    let r = n - 1;
                    let th = quad::multidegrees(*g, r)
                        .iter()
                        .map(|m| quad::theta(*g, m))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(CliError::usage)?;
                    let rank = quad::random_jacobian_rank(
                        &th,
                        &quad::t_vars(*g, r),
                        RANK_PRIME,
                        *points,
                        &mut rng,
                    )
                    .map_err(CliError::usage)?;
                    // (r+1)·g(g+1)/2 − dim SL_g once the generic stabilizer is finite
                    let td = ((r + 1) * g * (g + 1) / 2 + 1).saturating_sub(g * g);
                    (rank, th.len().min(td.max(1)))
                }
                RankTarget::Conjugation | RankTarget::PulledBack => {
                    let k = if matches!(kind, RankTarget::Conjugation) {
                        RankKind::Conjugation
                    } else {
                        RankKind::PulledBack
                    };
                    let c = RankClaim::compute(k, *g, *n, *max_len, *points, &mut rng)
                        .map_err(CliError::usage)?;
                    (c.rank, c.expected)
                }
            };
            Ok(Report {
                result: json!({
                    "kind": value_name(kind), "g": g, "n": n, "points": points,
                    "field": RANK_PRIME, "rank": rank, "expected": expected,
                }),
                source: "Jacobian rank at random points",
                passed: rank == expected,
            })
        }
        Command::B0 { g, q, trials } => {
            let rep = quad::b0_count(*g, *q, *trials, &mut rng).map_err(CliError::usage)?;
            let mut hist = std::collections::BTreeMap::new();
            for c in &rep.counts {
                *hist.entry(c.to_string()).or_insert(0usize) += 1;
            }
            ok(
                json!({ "g": g, "q": q, "trials": trials, "max_count": rep.max_count, "histogram": hist }),
                "solution counts over F_q",
            )
        }
        Command::Verify {
            suite,
            p,
            prec,
            deg,
        } => {
            let checks =
                verify::run_suite(*suite, *p, *prec, *deg, seed).map_err(CliError::usage)?;
            let passed = checks.iter().all(|c| c.passed);
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "source": c.source }))
                .collect();
            Ok(Report {
                result: json!({ "suite": value_name(suite), "checks": list, "all_passed": passed }),
                source: "identities proved for all parameters",
                passed,
            })
        }
    }
}
