//! The constructive toolbox: the catalog of explicit witness automorphisms
//! for each family, involutions induced by homomorphisms into the center,
//! extensions of generator translations, their kernel, and common extensions
//! of automorphisms of a factorization.

use serde::Serialize;
use thiserror::Error;

use crate::aut::{self, Aut, GenMap, ValidateError};
use crate::group::{Elem, Family, FamilyGroup, GroupParams};
use crate::structure::{self, FrattiniBasis, StructureError, SubgroupSet};

/// Identifier of one cataloged witness shape. Cases `1ii` and the two `1iii`
/// shapes carry free parameters `m` (and `s`) in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessCase {
    C1i,
    C1ii,
    C1iiiA1,
    C1iiiA2,
    C2i,
    C2ii,
    C2iii,
    C3i,
    C3ii,
}

impl WitnessCase {
    pub const ALL: [WitnessCase; 9] = [
        WitnessCase::C1i,
        WitnessCase::C1ii,
        WitnessCase::C1iiiA1,
        WitnessCase::C1iiiA2,
        WitnessCase::C2i,
        WitnessCase::C2ii,
        WitnessCase::C2iii,
        WitnessCase::C3i,
        WitnessCase::C3ii,
    ];

    pub fn id(self) -> &'static str {
        match self {
            WitnessCase::C1i => "1i",
            WitnessCase::C1ii => "1ii",
            WitnessCase::C1iiiA1 => "1iii-a1",
            WitnessCase::C1iiiA2 => "1iii-a2",
            WitnessCase::C2i => "2i",
            WitnessCase::C2ii => "2ii",
            WitnessCase::C2iii => "2iii",
            WitnessCase::C3i => "3i",
            WitnessCase::C3ii => "3ii",
        }
    }

    pub fn parse(s: &str) -> Option<WitnessCase> {
        WitnessCase::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
    }

    pub fn uses_m(self) -> bool {
        matches!(
            self,
            WitnessCase::C1ii | WitnessCase::C1iiiA1 | WitnessCase::C1iiiA2
        )
    }

    pub fn uses_s(self) -> bool {
        matches!(self, WitnessCase::C1iiiA1 | WitnessCase::C1iiiA2)
    }

    /// Parameter range the case is defined for.
    fn requirement(self) -> &'static str {
        match self {
            WitnessCase::C1i => "Q1 with n = 2, r = 1",
            WitnessCase::C1ii => "Q1 with r = 1, n >= 3",
            WitnessCase::C1iiiA1 | WitnessCase::C1iiiA2 => "Q1 with r >= 2, n > 2",
            WitnessCase::C2i => "Q2 with n = r = 1",
            WitnessCase::C2ii => "Q2 with n = r > 1",
            WitnessCase::C2iii => "Q2 with r > 1, r + 1 <= n < 2r",
            WitnessCase::C3i => "R3 with n = 1",
            WitnessCase::C3ii => "R3 with n >= 2",
        }
    }

    pub fn applies_to(self, group: &FamilyGroup) -> bool {
        let n = group.n();
        let r = group.r().unwrap_or(0);
        match (self, group.family()) {
            (WitnessCase::C1i, Family::Q1) => n == 2 && r == 1,
            (WitnessCase::C1ii, Family::Q1) => r == 1 && n >= 3,
            (WitnessCase::C1iiiA1 | WitnessCase::C1iiiA2, Family::Q1) => r >= 2 && n > 2,
            (WitnessCase::C2i, Family::Q2) => n == 1 && r == 1,
            (WitnessCase::C2ii, Family::Q2) => n == r && n > 1,
            (WitnessCase::C2iii, Family::Q2) => r > 1 && n >= r + 1,
            (WitnessCase::C3i, Family::R3) => n == 1,
            (WitnessCase::C3ii, Family::R3) => n >= 2,
            _ => false,
        }
    }

    /// The cataloged claims for this case. Every case claims a valid,
    /// Frattini-fixing map; the order and inner-ness claims differ.
    pub fn claims(self) -> Vec<ClaimKind> {
        let mut claims = vec![ClaimKind::ValidAutomorphism, ClaimKind::FixesFrattiniPointwise];
        match self {
            WitnessCase::C1iiiA1 => claims.push(ClaimKind::Inner),
            WitnessCase::C1iiiA2 => {
                claims.push(ClaimKind::OrderNotTwo);
                claims.push(ClaimKind::NonInner);
            }
            _ => {
                claims.push(ClaimKind::OrderTwo);
                claims.push(ClaimKind::NonInner);
            }
        }
        claims
    }
}

impl std::fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Free parameters of a witness case; both default to 0 where unused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct WitnessParams {
    pub m: u8,
    pub s: u8,
}

impl WitnessParams {
    pub fn new(m: u8, s: u8) -> WitnessParams {
        WitnessParams { m, s }
    }

    /// All parameter combinations meaningful for `case`.
    pub fn combinations(case: WitnessCase) -> Vec<WitnessParams> {
        let ms: &[u8] = if case.uses_m() { &[0, 1] } else { &[0] };
        let ss: &[u8] = if case.uses_s() { &[0, 1] } else { &[0] };
        let mut out = Vec::new();
        for &m in ms {
            for &s in ss {
                out.push(WitnessParams::new(m, s));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("case {case} requires {requirement}, got {group}")]
    Inapplicable {
        case: WitnessCase,
        group: GroupParams,
        requirement: &'static str,
    },
    #[error("witness parameters m, s must lie in {{0, 1}}")]
    BadParams,
}

/// Evaluates the cataloged generator-image formulas for `case` on `group`,
/// exactly as written: the image is `a^E b^F c^K` with the literal exponents,
/// reduced only by normalization.
pub fn witness_gen_map(
    group: &FamilyGroup,
    case: WitnessCase,
    params: WitnessParams,
) -> Result<GenMap, WitnessError> {
    if params.m > 1 || params.s > 1 {
        return Err(WitnessError::BadParams);
    }
    if !case.applies_to(group) {
        return Err(WitnessError::Inapplicable {
            case,
            group: group.params(),
            requirement: case.requirement(),
        });
    }
    let n = group.n();
    let r = group.r().unwrap_or(0);
    let p2 = |s: u32| 1i64 << s;
    let m = params.m as i64;
    let s = params.s as i64;
    let word = |e: i64, f: i64, k: i64| {
        group.mul(
            group.mul(group.pow(group.gen_a(), e), group.pow(group.gen_b(), f)),
            group.pow(group.gen_c(), k),
        )
    };
    let map = match case {
        WitnessCase::C1i => GenMap::new(word(3, 0, 0), word(1, 1, 0)),
        WitnessCase::C1ii => GenMap::new(
            word(1 + p2(n - 2) + m * p2(n - 1), 1, 0),
            word(p2(n - 1), 1, 0),
        ),
        WitnessCase::C1iiiA1 => GenMap::new(
            word(1 + m * p2(n - 1), 0, 0),
            word(s * p2(n - 1), 1, 0),
        ),
        WitnessCase::C1iiiA2 => GenMap::new(
            word(1 + p2(n - 2) + m * p2(n - 1), p2(r - 1), 0),
            word(s * p2(n - 1), 1, 0),
        ),
        WitnessCase::C2i => GenMap::new(word(0, 1, 0), word(1, 0, 0)),
        WitnessCase::C2ii => GenMap::new(
            word(p2(r - 1) + 1, 0, 0),
            word(0, p2(r - 1) + 1, 0),
        ),
        WitnessCase::C2iii => GenMap::new(
            word(p2(n - 1) - p2(r - 1) + 1, 0, p2(2 * r - n - 1)),
            word(p2(n - 1), p2(r - 1) + 1, 0),
        ),
        WitnessCase::C3i => GenMap::new(word(1, 1, 0), word(0, 3, 0)),
        WitnessCase::C3ii => GenMap::new(
            word(p2(n) + p2(n - 1) + 1, 0, p2(n - 2)),
            word(0, p2(n) + p2(n - 1) + 1, p2(n - 2)),
        ),
    };
    Ok(map)
}

/// The checks a witness claim is subject to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    ValidAutomorphism,
    FixesFrattiniPointwise,
    OrderTwo,
    OrderNotTwo,
    Inner,
    NonInner,
}

impl ClaimKind {
    pub fn describe(self) -> &'static str {
        match self {
            ClaimKind::ValidAutomorphism => "determines an automorphism",
            ClaimKind::FixesFrattiniPointwise => "fixes the Frattini subgroup elementwise",
            ClaimKind::OrderTwo => "has order 2",
            ClaimKind::OrderNotTwo => "has order different from 2",
            ClaimKind::Inner => "is inner",
            ClaimKind::NonInner => "is not inner",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimResult {
    pub claim: ClaimKind,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of checking every claim of one cataloged case on one group.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessVerdict {
    pub case: WitnessCase,
    pub params: WitnessParams,
    pub group: GroupParams,
    pub map: GenMap2,
    pub claims: Vec<ClaimResult>,
    /// Computed automorphism order, when the map validates.
    pub computed_order: Option<u64>,
    pub all_pass: bool,
    /// Filled only when the map fails its relation check: reports whether the
    /// mirrored realization (the opposite reading of `[a, b]`) accepts it.
    pub convention_note: Option<String>,
}

/// Serializable image pair (triples of exponents).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GenMap2 {
    pub image_a: Elem,
    pub image_b: Elem,
}

impl From<GenMap> for GenMap2 {
    fn from(m: GenMap) -> GenMap2 {
        GenMap2 {
            image_a: m.image_a,
            image_b: m.image_b,
        }
    }
}

/// Validates the cataloged map and checks each of its claims; claim failures
/// land in the verdict rather than an error.
pub fn verify_witness(
    group: &FamilyGroup,
    case: WitnessCase,
    params: WitnessParams,
) -> Result<WitnessVerdict, WitnessError> {
    let map = witness_gen_map(group, case, params)?;
    let mut claims = Vec::new();
    let mut computed_order = None;
    let mut convention_note = None;

    match aut::validate(group, map) {
        Ok(a) => {
            let order = a.order();
            computed_order = Some(order);
            let phi = structure::frattini(group);
            let inner = aut::inner_witness(&a).is_some();
            let derived = structure::derived_subgroup(group);
            debug_assert_eq!(inner, aut::is_inner_by_criterion(&a, &derived));
            for claim in case.claims() {
                let (pass, detail) = match claim {
                    ClaimKind::ValidAutomorphism => (true, "validated".to_string()),
                    ClaimKind::FixesFrattiniPointwise => {
                        let ok = a.fixes_pointwise(&phi);
                        (ok, format!("checked on all {} elements", phi.order()))
                    }
                    ClaimKind::OrderTwo => (order == 2, format!("computed order {order}")),
                    ClaimKind::OrderNotTwo => (order != 2, format!("computed order {order}")),
                    ClaimKind::Inner => {
                        let w = aut::inner_witness(&a);
                        (
                            w.is_some(),
                            match w {
                                Some(x) => format!("conjugation by {x}"),
                                None => "no conjugating element exists".to_string(),
                            },
                        )
                    }
                    ClaimKind::NonInner => (
                        !inner,
                        if inner {
                            "an inner witness exists".to_string()
                        } else {
                            "no conjugating element exists".to_string()
                        },
                    ),
                };
                claims.push(ClaimResult { claim, pass, detail });
            }
        }
        Err(err) => {
            if matches!(err, ValidateError::RelationViolated(_)) {
                convention_note = Some(mirror_diagnostic(group, case, params));
            }
            for claim in case.claims() {
                let (pass, detail) = match claim {
                    ClaimKind::ValidAutomorphism => (false, err.to_string()),
                    _ => (false, "not evaluated: map is not an automorphism".to_string()),
                };
                claims.push(ClaimResult { claim, pass, detail });
            }
        }
    }

    let all_pass = claims.iter().all(|c| c.pass);
    Ok(WitnessVerdict {
        case,
        params,
        group: group.params(),
        map: map.into(),
        claims,
        computed_order,
        all_pass,
        convention_note,
    })
}

/// Re-evaluates the case in the mirrored realization and reports which
/// convention accepts the relations.
fn mirror_diagnostic(group: &FamilyGroup, case: WitnessCase, params: WitnessParams) -> String {
    let mirrored =
        match FamilyGroup::mirrored_realization(group.family(), group.n(), group.r()) {
            Ok(m) => m,
            Err(e) => return format!("mirrored realization unavailable: {e}"),
        };
    match witness_gen_map(&mirrored, case, params) {
        Ok(map) => match aut::validate(&mirrored, map) {
            Ok(_) => "relations hold under the opposite commutator reading; \
                      the realization convention is transposed"
                .to_string(),
            Err(e) => format!("mirrored realization also rejects the map: {e}"),
        },
        Err(e) => format!("mirrored evaluation failed: {e}"),
    }
}

/// Cases applicable to this group, each with its parameter combinations.
pub fn applicable_cases(group: &FamilyGroup) -> Vec<(WitnessCase, Vec<WitnessParams>)> {
    WitnessCase::ALL
        .into_iter()
        .filter(|case| case.applies_to(group))
        .map(|case| (case, WitnessParams::combinations(case)))
        .collect()
}

/// Finds a cataloged case (any parameters) whose formula evaluates to `map`.
pub fn match_witness_case(group: &FamilyGroup, map: &GenMap) -> Option<&'static str> {
    for (case, combos) in applicable_cases(group) {
        for params in combos {
            if witness_gen_map(group, case, params).ok().as_ref() == Some(map) {
                return Some(case.id());
            }
        }
    }
    None
}

/// For groups of the first family with `r >= 2`, checks that every
/// Frattini-fixing automorphism (of any order) matches one of the two
/// cataloged shapes; returns the maps that match neither.
pub fn unmatched_phi_fixing_shapes<'g>(
    group: &'g FamilyGroup,
    limits: &aut::EnumLimits,
) -> Result<Vec<GenMap>, aut::EnumError> {
    let auts = aut::phi_fixing_automorphisms(group, limits)?;
    let mut shapes: Vec<GenMap> = Vec::new();
    for case in [WitnessCase::C1iiiA1, WitnessCase::C1iiiA2] {
        for params in WitnessParams::combinations(case) {
            if let Ok(map) = witness_gen_map(group, case, params) {
                shapes.push(map);
            }
        }
    }
    Ok(auts
        .iter()
        .map(|a| a.gen_map())
        .filter(|m| !shapes.contains(m))
        .collect())
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("value {value} is not in Omega_1(Z(G))")]
    NotInOmegaCenter { value: Elem },
    #[error("Omega_1(Z(G)) is not contained in the Frattini subgroup")]
    OmegaOutsideFrattini,
}

/// A homomorphism from the Frattini quotient into `Omega_1(Z(G))`, given by
/// the images of the two basis cosets. Well-defined because the quotient is
/// elementary abelian of rank 2 and both values are central involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrattiniHom {
    val_a: Elem,
    val_b: Elem,
}

impl FrattiniHom {
    pub fn new(
        group: &FamilyGroup,
        val_a: Elem,
        val_b: Elem,
    ) -> Result<FrattiniHom, ConstructionError> {
        let omega = structure::omega1(&structure::center(group))?;
        for value in [val_a, val_b] {
            if !omega.contains(value) {
                return Err(ConstructionError::NotInOmegaCenter { value });
            }
        }
        Ok(FrattiniHom { val_a, val_b })
    }

    pub fn values(&self) -> (Elem, Elem) {
        (self.val_a, self.val_b)
    }

    /// Pointwise product of two homomorphisms.
    pub fn product(&self, other: &FrattiniHom, group: &FamilyGroup) -> FrattiniHom {
        FrattiniHom {
            val_a: group.mul(self.val_a, other.val_a),
            val_b: group.mul(self.val_b, other.val_b),
        }
    }
}

/// The automorphism `g -> g * f(g mod Frattini)`: always valid, of order
/// dividing 2, fixing the Frattini subgroup elementwise.
pub fn aut_from_frattini_hom<'g>(
    group: &'g FamilyGroup,
    hom: &FrattiniHom,
) -> Result<Aut<'g>, ConstructionError> {
    let phi = structure::frattini(group);
    let omega = structure::omega1(&structure::center(group))?;
    if !omega.is_subset_of(&phi) {
        return Err(ConstructionError::OmegaOutsideFrattini);
    }
    let basis = FrattiniBasis::new(group, phi)?;
    let mut table = vec![0u32; group.order() as usize];
    for (idx, g) in group.elements().enumerate() {
        let (e1, e2) = basis.bits(g)?;
        let mut img = g;
        if e1 == 1 {
            img = group.mul(img, hom.val_a);
        }
        if e2 == 1 {
            img = group.mul(img, hom.val_b);
        }
        table[idx] = group.elem_index(img) as u32;
    }
    Ok(Aut::from_table(group, table)
        .expect("a central-involution translation along the Frattini quotient is an automorphism"))
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("translation value {value} for generator {which} is not in Omega_1(Z(Frattini))")]
    NotInOmegaCenterOfFrattini { which: usize, value: Elem },
    #[error("generator {which} does not commute with its translation value")]
    GeneratorDoesNotCommute { which: usize },
    #[error("[a, b2] != [b, b1]: the cross-commutator hypothesis fails")]
    CrossCommutatorMismatch,
}

/// Extends `a -> a*b1, b -> b*b2` to an automorphism of order dividing 2
/// fixing the Frattini subgroup, provided `b1, b2` are involutions in the
/// center of the Frattini subgroup with `[a, b1] = [b, b2] = 1` and
/// `[a, b2] = [b, b1]`.
pub fn extend_to_involution<'g>(
    group: &'g FamilyGroup,
    b1: Elem,
    b2: Elem,
) -> Result<Aut<'g>, ExtendError> {
    let phi = structure::frattini(group);
    let omega = structure::omega1(&structure::subgroup_center(&phi))?;
    for (which, value) in [(1usize, b1), (2usize, b2)] {
        if !omega.contains(value) {
            return Err(ExtendError::NotInOmegaCenterOfFrattini { which, value });
        }
    }
    let (a, b) = (group.gen_a(), group.gen_b());
    if !group.commutator(a, b1).is_identity() {
        return Err(ExtendError::GeneratorDoesNotCommute { which: 1 });
    }
    if !group.commutator(b, b2).is_identity() {
        return Err(ExtendError::GeneratorDoesNotCommute { which: 2 });
    }
    if group.commutator(a, b2) != group.commutator(b, b1) {
        return Err(ExtendError::CrossCommutatorMismatch);
    }
    let map = GenMap::new(group.mul(a, b1), group.mul(b, b2));
    Ok(aut::validate(group, map)
        .expect("a compatible central-involution translation always extends"))
}

/// All pairs `(b1, b2)` in `Omega_1(Z(Frattini))^2` with `[a, b1] = 1`,
/// `[b, b2] = 1` and `[a, b2] * [b1, b] = 1` — exactly the pairs accepted by
/// [`extend_to_involution`].
pub fn extension_kernel(group: &FamilyGroup) -> Result<Vec<(Elem, Elem)>, StructureError> {
    let phi = structure::frattini(group);
    let omega = structure::omega1(&structure::subgroup_center(&phi))?;
    let (a, b) = (group.gen_a(), group.gen_b());
    let mut out = Vec::new();
    for &b1 in omega.elements() {
        for &b2 in omega.elements() {
            if group.commutator(a, b1).is_identity()
                && group.commutator(b, b2).is_identity()
                && group
                    .mul(group.commutator(a, b2), group.commutator(b1, b))
                    .is_identity()
            {
                out.push((b1, b2));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SubgroupMapError {
    #[error("image {0} lies outside the subgroup")]
    ImageOutside(Elem),
    #[error("images do not form a bijection of the subgroup")]
    NotBijective,
    #[error("map is not a homomorphism of the subgroup")]
    NotHomomorphism,
}

/// An automorphism of a subgroup, stored as the image list parallel to the
/// subgroup's sorted elements.
#[derive(Debug, Clone)]
pub struct SubgroupMap {
    images: Vec<Elem>,
}

impl SubgroupMap {
    pub fn new(
        sub: &SubgroupSet<'_>,
        mut f: impl FnMut(Elem) -> Elem,
    ) -> Result<SubgroupMap, SubgroupMapError> {
        let group = sub.group();
        let images: Vec<Elem> = sub.elements().iter().map(|&x| f(x)).collect();
        for &img in &images {
            if !sub.contains(img) {
                return Err(SubgroupMapError::ImageOutside(img));
            }
        }
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != images.len() {
            return Err(SubgroupMapError::NotBijective);
        }
        let map = SubgroupMap { images };
        for &x in sub.elements() {
            for &y in sub.elements() {
                if map.apply(sub, group.mul(x, y))
                    != group.mul(map.apply(sub, x), map.apply(sub, y))
                {
                    return Err(SubgroupMapError::NotHomomorphism);
                }
            }
        }
        Ok(map)
    }

    pub fn identity(sub: &SubgroupSet<'_>) -> SubgroupMap {
        SubgroupMap {
            images: sub.elements().to_vec(),
        }
    }

    pub fn apply(&self, sub: &SubgroupSet<'_>, x: Elem) -> Elem {
        let pos = sub
            .elements()
            .binary_search(&x)
            .expect("element must belong to the subgroup");
        self.images[pos]
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CommonExtensionError {
    #[error("the first factor is not normal in the group")]
    NotNormal,
    #[error("|A| * |B| / |A and B| = {product} does not equal the group order")]
    NotFactorization { product: u64 },
    #[error("the maps disagree on the intersection at {at}")]
    DisagreeOnIntersection { at: Elem },
    #[error("[a, b]^alpha != [a^alpha, b^beta] at a = {a}, b = {b}")]
    CommutatorCondition { a: Elem, b: Elem },
}

/// Common extension of an automorphism `alpha` of a normal subgroup `A` and
/// an automorphism `beta` of `B` with `G = A*B`: exists iff they agree on
/// the intersection and `[a, b]^alpha = [a^alpha, b^beta]` for all pairs,
/// and is then `(a*b) -> a^alpha * b^beta`.
pub fn common_extension<'g>(
    group: &'g FamilyGroup,
    a_sub: &SubgroupSet<'g>,
    b_sub: &SubgroupSet<'g>,
    alpha: &SubgroupMap,
    beta: &SubgroupMap,
) -> Result<Aut<'g>, CommonExtensionError> {
    if !a_sub.is_normal() {
        return Err(CommonExtensionError::NotNormal);
    }
    let inter = a_sub.intersect(b_sub);
    let product = a_sub.order() * b_sub.order() / inter.order();
    if product != group.order() {
        return Err(CommonExtensionError::NotFactorization { product });
    }
    for &x in inter.elements() {
        if alpha.apply(a_sub, x) != beta.apply(b_sub, x) {
            return Err(CommonExtensionError::DisagreeOnIntersection { at: x });
        }
    }
    for &a in a_sub.elements() {
        for &b in b_sub.elements() {
            let comm = group.commutator(a, b);
            debug_assert!(a_sub.contains(comm), "normality keeps [A, B] inside A");
            if alpha.apply(a_sub, comm)
                != group.commutator(alpha.apply(a_sub, a), beta.apply(b_sub, b))
            {
                return Err(CommonExtensionError::CommutatorCondition { a, b });
            }
        }
    }

    let mut table = vec![0u32; group.order() as usize];
    for (idx, g) in group.elements().enumerate() {
        let mut image = None;
        for &a in a_sub.elements() {
            let rest = group.mul(group.inv(a), g);
            if b_sub.contains(rest) {
                image = Some(group.mul(alpha.apply(a_sub, a), beta.apply(b_sub, rest)));
                break;
            }
        }
        let image = image.expect("G = A*B guarantees a factorization of every element");
        table[idx] = group.elem_index(image) as u32;
    }
    Ok(Aut::from_table(group, table)
        .expect("agreeing factor automorphisms with matching commutators extend"))
}
