//! Independent verification batteries: exhaustive group-axiom checks,
//! closed-form cross-checks, enumeration-strategy equivalence, and
//! structural invariants. These back the `oracle` command and the
//! acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::aut::{self, EnumLimits, EnumMode};
use crate::group::{all_params_up_to, Elem, Family, FamilyGroup};
use crate::structure;

/// Exhaustive-associativity threshold; above it a seeded random sample of
/// at least [`RANDOM_TRIPLES`] triples is used instead.
pub const EXHAUSTIVE_ORDER: u64 = 512;
pub const RANDOM_TRIPLES: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub group: String,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn ok(group: &FamilyGroup, name: &'static str, detail: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            group: group.params().to_string(),
            name,
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(group: &FamilyGroup, name: &'static str, detail: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            group: group.params().to_string(),
            name,
            pass: false,
            detail: detail.into(),
        }
    }
}

fn outcome(
    group: &FamilyGroup,
    name: &'static str,
    failure: Option<String>,
    ok_detail: impl Into<String>,
) -> CheckOutcome {
    match failure {
        None => CheckOutcome::ok(group, name, ok_detail),
        Some(detail) => CheckOutcome::fail(group, name, detail),
    }
}

/// Engine checks for one group: relations, identity/inverse laws,
/// associativity, normal-form faithfulness, and closed-form agreement.
pub fn engine_battery(group: &FamilyGroup, seed: u64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(relations_check(group));
    out.push(identity_inverse_check(group));
    out.push(associativity_check(group, seed));
    out.push(normal_form_check(group, seed));
    if group.order() <= EXHAUSTIVE_ORDER {
        out.push(power_formula_check(group));
        out.push(commutator_formula_check(group));
    }
    out.push(frattini_generation_check(group));
    out
}

fn relations_check(group: &FamilyGroup) -> CheckOutcome {
    let failure = group
        .defining_relation_violation(group.gen_a(), group.gen_b())
        .map(|rel| format!("relation {rel} fails on the realized generators"));
    outcome(group, "defining-relations", failure, "all presentation relations hold")
}

fn identity_inverse_check(group: &FamilyGroup) -> CheckOutcome {
    let e = group.identity();
    let failure = group.elements().find_map(|x| {
        if group.mul(e, x) != x || group.mul(x, e) != x {
            return Some(format!("identity law fails at {x}"));
        }
        let inv = group.inv(x);
        if !group.mul(x, inv).is_identity() || !group.mul(inv, x).is_identity() {
            return Some(format!("inverse law fails at {x}"));
        }
        None
    });
    outcome(
        group,
        "identity-inverse-laws",
        failure,
        format!("checked all {} elements", group.order()),
    )
}

fn associativity_check(group: &FamilyGroup, seed: u64) -> CheckOutcome {
    let order = group.order();
    if order <= EXHAUSTIVE_ORDER {
        let elems: Vec<Elem> = group.elements().collect();
        let failure = elems
            .par_iter()
            .find_map_any(|&x| {
                for &y in &elems {
                    let xy = group.mul(x, y);
                    for &z in &elems {
                        if group.mul(xy, z) != group.mul(x, group.mul(y, z)) {
                            return Some(format!("({x})({y})({z}) associates differently"));
                        }
                    }
                }
                None
            });
        outcome(
            group,
            "associativity",
            failure,
            format!("exhaustive over {}^3 triples", order),
        )
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ order);
        let mut failure = None;
        for _ in 0..RANDOM_TRIPLES {
            let x = group.elem_at(rng.gen_range(0..order));
            let y = group.elem_at(rng.gen_range(0..order));
            let z = group.elem_at(rng.gen_range(0..order));
            if group.mul(group.mul(x, y), z) != group.mul(x, group.mul(y, z)) {
                failure = Some(format!("({x})({y})({z}) associates differently"));
                break;
            }
        }
        outcome(
            group,
            "associativity",
            failure,
            format!("{RANDOM_TRIPLES} seeded random triples"),
        )
    }
}

/// The canonical triples are pairwise-distinct group elements: the closure of
/// `{a, b}` reaches all of them, and left multiplication by any fixed element
/// permutes them.
fn normal_form_check(group: &FamilyGroup, seed: u64) -> CheckOutcome {
    let order = group.order();
    let reach = structure::closure(group, &[group.gen_a(), group.gen_b()]);
    if reach.order() != order {
        return CheckOutcome::fail(
            group,
            "normal-form-faithfulness",
            format!("closure of {{a, b}} reaches {} of {} triples", reach.order(), order),
        );
    }
    let multipliers: Vec<Elem> = if order <= EXHAUSTIVE_ORDER {
        group.elements().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ order.rotate_left(17));
        (0..64).map(|_| group.elem_at(rng.gen_range(0..order))).collect()
    };
    let failure = multipliers.par_iter().find_map_any(|&h| {
        let mut seen = vec![false; order as usize];
        for x in group.elements() {
            let slot = &mut seen[group.elem_index(group.mul(h, x))];
            if *slot {
                return Some(format!("left multiplication by {h} is not injective"));
            }
            *slot = true;
        }
        None
    });
    outcome(
        group,
        "normal-form-faithfulness",
        failure,
        format!("left multiplication bijective for {} multipliers", multipliers.len()),
    )
}

fn power_formula_check(group: &FamilyGroup) -> CheckOutcome {
    let failure = group.elements().collect::<Vec<_>>().par_iter().find_map_any(|&x| {
        let mut acc = group.identity();
        for m in 0..=group.order() {
            if group.pow(x, m as i64) != acc {
                return Some(format!("pow({x}, {m}) disagrees with repeated multiplication"));
            }
            acc = group.mul(acc, x);
        }
        None
    });
    outcome(
        group,
        "power-closed-form",
        failure,
        format!("all exponents 0..={} for every element", group.order()),
    )
}

fn commutator_formula_check(group: &FamilyGroup) -> CheckOutcome {
    let elems: Vec<Elem> = group.elements().collect();
    let failure = elems.par_iter().find_map_any(|&x| {
        for &y in &elems {
            let direct = group.mul(group.mul(group.inv(x), group.inv(y)), group.mul(x, y));
            if group.commutator(x, y) != direct {
                return Some(format!("[{x}, {y}] disagrees with x^-1 y^-1 x y"));
            }
        }
        None
    });
    outcome(group, "commutator-closed-form", failure, "all pairs against the definition")
}

/// `<a^2, b^2, c>` must equal the closure of all squares and all commutators.
fn frattini_generation_check(group: &FamilyGroup) -> CheckOutcome {
    let (a, b) = (group.gen_a(), group.gen_b());
    let from_gens = structure::closure(
        group,
        &[group.mul(a, a), group.mul(b, b), group.gen_c()],
    );
    let mut gens: Vec<Elem> = group.elements().map(|x| group.mul(x, x)).collect();
    // Every commutator is c^t with t = i*j' - j*i' taken mod the order of c,
    // and distinct exponents give distinct elements; mark which occur.
    let c_order = group.c_order();
    let mut comm_seen = vec![false; c_order as usize];
    if group.order() <= 1 << 12 {
        for x in group.elements() {
            for y in group.elements() {
                comm_seen[((x.i * y.j - x.j * y.i).rem_euclid(c_order)) as usize] = true;
            }
        }
    } else {
        // commutators against the generators already realize every power of c
        for x in group.elements() {
            comm_seen[(x.i.rem_euclid(c_order)) as usize] = true;
            comm_seen[(-x.j).rem_euclid(c_order) as usize] = true;
        }
    }
    let c = group.gen_c();
    for (t, seen) in comm_seen.iter().enumerate() {
        if *seen {
            gens.push(group.pow(c, t as i64));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let from_def = structure::closure(group, &gens);
    let failure = (!from_gens.set_eq(&from_def)).then(|| {
        format!(
            "closure of {{a^2, b^2, c}} has order {} but squares+commutators give {}",
            from_gens.order(),
            from_def.order()
        )
    });
    outcome(group, "frattini-generation", failure, "both generating sets agree")
}

/// Structural invariants every realized group must satisfy.
pub fn structure_battery(group: &FamilyGroup) -> Vec<CheckOutcome> {
    let z = structure::center(group);
    let phi = structure::frattini(group);
    let derived = structure::derived_subgroup(group);
    let mut out = Vec::new();

    let mut fails = Vec::new();
    if !structure::is_cyclic(&z) {
        fails.push("Z(G) is not cyclic".to_string());
    }
    if !z.is_subset_of(&phi) {
        fails.push("Z(G) is not contained in the Frattini subgroup".to_string());
    }
    if !derived.is_subset_of(&z) {
        fails.push("G' is not central".to_string());
    }
    if !derived.set_eq(&structure::closure(group, &[group.gen_c()])) {
        fails.push("G' differs from <c>".to_string());
    }
    if structure::min_generator_count(group) != 2 {
        fails.push(format!("d(G) = {}", structure::min_generator_count(group)));
    }
    match structure::omega1(&z) {
        Ok(om) if om.is_subset_of(&phi) => {}
        Ok(_) => fails.push("Omega_1(Z(G)) escapes the Frattini subgroup".to_string()),
        Err(e) => fails.push(e.to_string()),
    }
    if group.order() != phi.order() * (1 << structure::min_generator_count(group)) {
        fails.push("|G| != |Frattini| * 2^d(G)".to_string());
    }
    out.push(outcome(
        group,
        "structural-invariants",
        (!fails.is_empty()).then(|| fails.join("; ")),
        "center cyclic and contained in Frattini, G' = <c> central, d(G) = 2",
    ));
    out
}

/// Star-dependent structural checks: when every Frattini-fixing involution is
/// inner, the centralizer of `Z(Frattini)` is the Frattini subgroup and
/// `d(G) * d(Z(G)) <= d(Z(Frattini))`.
pub fn star_structure_battery(group: &FamilyGroup, limits: &EnumLimits) -> Vec<CheckOutcome> {
    let report = match aut::star_condition(group, EnumMode::Pruned, limits) {
        Ok(r) => r,
        Err(e) => {
            return vec![CheckOutcome::fail(group, "star-structure", e.to_string())];
        }
    };
    if !report.star_holds {
        return vec![CheckOutcome::ok(
            group,
            "star-structure",
            "not a star group; no additional constraints",
        )];
    }
    let phi = structure::frattini(group);
    let z_phi = structure::subgroup_center(&phi);
    let cent = structure::centralizer(group, &z_phi);
    let d = structure::min_generator_count(group);
    let d_z = structure::subgroup_min_generator_count(&structure::center(group));
    let d_z_phi = structure::subgroup_min_generator_count(&z_phi);
    let mut fails = Vec::new();
    if !cent.set_eq(&phi) {
        fails.push(format!(
            "C_G(Z(Frattini)) has order {} != |Frattini| = {}",
            cent.order(),
            phi.order()
        ));
    }
    if d * d_z > d_z_phi {
        fails.push(format!("d(G)*d(Z(G)) = {} > d(Z(Frattini)) = {}", d * d_z, d_z_phi));
    }
    vec![outcome(
        group,
        "star-structure",
        (!fails.is_empty()).then(|| fails.join("; ")),
        "centralizer equality and rank inequality hold",
    )]
}

/// Enumeration checks for one group within the brute cap.
pub fn enumeration_battery(group: &FamilyGroup, limits: &EnumLimits) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let pruned = aut::phi_fixing_involutions(group, EnumMode::Pruned, limits);
    let brute = aut::phi_fixing_involutions(group, EnumMode::Brute, limits);
    let (pruned, brute) = match (pruned, brute) {
        (Ok(p), Ok(b)) => (p, b),
        (p, b) => {
            let detail = format!("enumeration failed: {:?} / {:?}", p.err(), b.err());
            return vec![CheckOutcome::fail(group, "pruned-vs-brute", detail)];
        }
    };
    let pruned_maps: Vec<_> = pruned.iter().map(|a| a.gen_map()).collect();
    let brute_maps: Vec<_> = brute.iter().map(|a| a.gen_map()).collect();
    out.push(outcome(
        group,
        "pruned-vs-brute",
        (pruned_maps != brute_maps).then(|| {
            format!(
                "pruned finds {} involutions, brute force finds {}",
                pruned_maps.len(),
                brute_maps.len()
            )
        }),
        format!("both strategies return the same {} involutions", pruned_maps.len()),
    ));

    // criterion vs direct over the enumerated involutions and all inner
    // automorphisms
    let derived = structure::derived_subgroup(group);
    let mut mismatch = None;
    for a in &pruned {
        let direct = aut::inner_witness(a).is_some();
        let crit = aut::is_inner_by_criterion(a, &derived);
        if direct != crit {
            mismatch = Some(format!("criterion disagrees on {}", a.gen_map()));
            break;
        }
    }
    if mismatch.is_none() {
        for x in group.elements() {
            let a = aut::inner_from(group, x);
            if aut::inner_witness(&a).is_none() || !aut::is_inner_by_criterion(&a, &derived) {
                mismatch = Some(format!("conjugation by {x} misclassified"));
                break;
            }
        }
    }
    out.push(outcome(
        group,
        "inner-criterion-agreement",
        mismatch,
        "direct search and displacement criterion agree everywhere",
    ));

    // |Inn(G)| = |G| / |Z(G)|
    let z = structure::center(group);
    let mut maps: Vec<aut::GenMap> = group
        .elements()
        .map(|x| {
            aut::GenMap::new(
                group.conjugate(group.gen_a(), x),
                group.conjugate(group.gen_b(), x),
            )
        })
        .collect();
    maps.sort_unstable();
    maps.dedup();
    let expected = group.order() / z.order();
    out.push(outcome(
        group,
        "inner-count",
        (maps.len() as u64 != expected).then(|| {
            format!("{} distinct inner automorphisms, expected {}", maps.len(), expected)
        }),
        format!("{expected} distinct inner automorphisms"),
    ));

    // conjugation by x fixes the Frattini subgroup pointwise iff x
    // centralizes it
    let phi = structure::frattini(group);
    let cent = structure::centralizer(group, &phi);
    let failure = group.elements().find_map(|x| {
        let fixes = phi
            .elements()
            .iter()
            .all(|&s| group.conjugate(s, x) == s);
        (fixes != cent.contains(x))
            .then(|| format!("conjugation by {x}: fixes={fixes}, centralizes={}", cent.contains(x)))
    });
    out.push(outcome(
        group,
        "conjugation-frattini-fixing",
        failure,
        "pointwise fixing coincides with centralizing",
    ));

    out
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub max_order: u64,
    pub seed: u64,
    pub limits: EnumLimits,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub checks: Vec<CheckOutcome>,
    pub all_pass: bool,
}

/// Runs every battery on every family group with order at most
/// `config.max_order`; enumeration checks apply within the brute cap.
pub fn run_oracle(config: &OracleConfig) -> OracleReport {
    let params = all_params_up_to(config.max_order);
    let checks: Vec<CheckOutcome> = params
        .par_iter()
        .map(|p| {
            let group = p.make().expect("enumerated parameters are valid");
            let mut out = engine_battery(&group, config.seed);
            out.extend(structure_battery(&group));
            if group.order() <= config.limits.pruned_max_order {
                out.extend(star_structure_battery(&group, &config.limits));
            }
            if group.order() <= config.limits.brute_max_order {
                out.extend(enumeration_battery(&group, &config.limits));
            }
            out
        })
        .flatten()
        .collect();
    let all_pass = checks.iter().all(|c| c.pass);
    OracleReport { checks, all_pass }
}

/// The family groups the default oracle run covers, for reporting.
pub fn oracle_group_list(max_order: u64) -> Vec<String> {
    all_params_up_to(max_order)
        .into_iter()
        .map(|p| p.to_string())
        .collect()
}

/// Convenience: every family tag paired with its groups below the cap.
pub fn groups_by_family(max_order: u64) -> Vec<(Family, usize)> {
    Family::ALL
        .into_iter()
        .map(|f| {
            (
                f,
                crate::group::family_params_up_to(f, max_order).len(),
            )
        })
        .collect()
}
