//! Automorphisms given by generator images: validation, application,
//! composition, enumeration of Frattini-fixing involutions, and two
//! independent inner-ness tests.

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{Elem, FamilyGroup, GroupParams};
use crate::structure::{self, SubgroupSet};

/// A candidate automorphism, recorded by the images of the two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenMap {
    pub image_a: Elem,
    pub image_b: Elem,
}

impl GenMap {
    pub fn new(image_a: Elem, image_b: Elem) -> GenMap {
        GenMap { image_a, image_b }
    }
}

impl std::fmt::Display for GenMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a -> {}, b -> {})", self.image_a, self.image_b)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("images violate defining relation {0}")]
    RelationViolated(&'static str),
    #[error("induced map on normal forms is not a homomorphism")]
    NotHomomorphism,
    #[error("images do not generate the group")]
    NotSurjective,
}

/// A validated automorphism: generator images plus the full permutation of
/// the element list (index-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aut<'g> {
    group: &'g FamilyGroup,
    map: GenMap,
    table: Vec<u32>,
}

/// Checks that a candidate generator-image pair determines an automorphism:
/// (a) the images satisfy every defining relation of the presentation,
/// (b) the induced total map `a^i b^j c^k -> X^i Y^j [X,Y]^k` is a
/// homomorphism — established by the one-step checks `f(g*a) = f(g)*X` and
/// `f(g*b) = f(g)*Y` over all `g`, which extend to arbitrary products by
/// induction on word length — and (c) the images generate the group, so the
/// map is surjective and hence bijective.
pub fn validate<'g>(group: &'g FamilyGroup, map: GenMap) -> Result<Aut<'g>, ValidateError> {
    let (x, y) = (map.image_a, map.image_b);
    if let Some(rel) = group.defining_relation_violation(x, y) {
        return Err(ValidateError::RelationViolated(rel));
    }

    let c_img = group.commutator(x, y);
    let order = group.order();
    let mut table = vec![0u32; order as usize];
    for (idx, g) in group.elements().enumerate() {
        let img = group.mul(
            group.mul(group.pow(x, g.i), group.pow(y, g.j)),
            group.pow(c_img, g.k),
        );
        table[idx] = group.elem_index(img) as u32;
    }

    let (a, b) = (group.gen_a(), group.gen_b());
    for (idx, g) in group.elements().enumerate() {
        let img = group.elem_at(table[idx] as u64);
        let ga = table[group.elem_index(group.mul(g, a))] as u64;
        if group.elem_at(ga) != group.mul(img, x) {
            return Err(ValidateError::NotHomomorphism);
        }
        let gb = table[group.elem_index(group.mul(g, b))] as u64;
        if group.elem_at(gb) != group.mul(img, y) {
            return Err(ValidateError::NotHomomorphism);
        }
    }

    if structure::closure(group, &[x, y]).order() != order {
        return Err(ValidateError::NotSurjective);
    }

    Ok(Aut { group, map, table })
}

impl<'g> Aut<'g> {
    /// Builds an automorphism from an explicit image table, verifying that it
    /// is a bijective homomorphism fixing the generator images it claims.
    pub(crate) fn from_table(group: &'g FamilyGroup, table: Vec<u32>) -> Result<Aut<'g>, ValidateError> {
        assert_eq!(table.len() as u64, group.order());
        let mut seen = vec![false; table.len()];
        for &t in &table {
            let slot = &mut seen[t as usize];
            if *slot {
                return Err(ValidateError::NotSurjective);
            }
            *slot = true;
        }
        let map = GenMap::new(
            group.elem_at(table[group.elem_index(group.gen_a())] as u64),
            group.elem_at(table[group.elem_index(group.gen_b())] as u64),
        );
        let (a, b, x, y) = (group.gen_a(), group.gen_b(), map.image_a, map.image_b);
        for (idx, g) in group.elements().enumerate() {
            let img = group.elem_at(table[idx] as u64);
            let ga = group.elem_at(table[group.elem_index(group.mul(g, a))] as u64);
            let gb = group.elem_at(table[group.elem_index(group.mul(g, b))] as u64);
            if ga != group.mul(img, x) || gb != group.mul(img, y) {
                return Err(ValidateError::NotHomomorphism);
            }
        }
        Ok(Aut { group, map, table })
    }

    pub fn identity(group: &'g FamilyGroup) -> Aut<'g> {
        let table = (0..group.order() as u32).collect();
        Aut {
            group,
            map: GenMap::new(group.gen_a(), group.gen_b()),
            table,
        }
    }

    pub fn group(&self) -> &'g FamilyGroup {
        self.group
    }

    pub fn gen_map(&self) -> GenMap {
        self.map
    }

    pub fn apply(&self, g: Elem) -> Elem {
        self.group.elem_at(self.table[self.group.elem_index(g)] as u64)
    }

    pub fn is_identity(&self) -> bool {
        self.map.image_a == self.group.gen_a() && self.map.image_b == self.group.gen_b()
    }

    /// `self.compose(other)` applies `self` first, then `other`.
    pub fn compose(&self, other: &Aut<'g>) -> Aut<'g> {
        assert!(std::ptr::eq(self.group, other.group), "same parent group required");
        let table: Vec<u32> = self.table.iter().map(|&t| other.table[t as usize]).collect();
        let map = GenMap::new(
            self.group.elem_at(table[self.group.elem_index(self.group.gen_a())] as u64),
            self.group.elem_at(table[self.group.elem_index(self.group.gen_b())] as u64),
        );
        Aut {
            group: self.group,
            map,
            table,
        }
    }

    /// Order of the automorphism: the order of its permutation table
    /// (the least common multiple of the cycle lengths).
    pub fn order(&self) -> u64 {
        let mut visited = vec![false; self.table.len()];
        let mut result: u64 = 1;
        for start in 0..self.table.len() {
            if visited[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut at = start;
            while !visited[at] {
                visited[at] = true;
                at = self.table[at] as usize;
                len += 1;
            }
            result = lcm(result, len);
        }
        result
    }

    /// Order exactly 2: the square fixes both generators and the map is not
    /// the identity.
    pub fn is_involution(&self) -> bool {
        if self.is_identity() {
            return false;
        }
        let ia = self.group.elem_index(self.group.gen_a());
        let ib = self.group.elem_index(self.group.gen_b());
        self.table[self.table[ia] as usize] == ia as u32
            && self.table[self.table[ib] as usize] == ib as u32
    }

    /// True iff every element of `sub` is fixed.
    pub fn fixes_pointwise(&self, sub: &SubgroupSet<'_>) -> bool {
        sub.elements().iter().all(|&s| {
            let idx = self.group.elem_index(s);
            self.table[idx] == idx as u32
        })
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

/// The inner automorphism `g -> x^-1 g x`; always validates.
pub fn inner_from<'g>(group: &'g FamilyGroup, x: Elem) -> Aut<'g> {
    let table: Vec<u32> = group
        .elements()
        .map(|g| group.elem_index(group.conjugate(g, x)) as u32)
        .collect();
    Aut::from_table(group, table).expect("conjugation is always an automorphism")
}

/// Ground-truth inner-ness oracle: searches for `x` whose conjugation action
/// matches the generator images; returns the lexicographically least witness.
pub fn inner_witness(aut: &Aut<'_>) -> Option<Elem> {
    let group = aut.group();
    let (a, b) = (group.gen_a(), group.gen_b());
    let map = aut.gen_map();
    group
        .elements()
        .find(|&x| group.conjugate(a, x) == map.image_a && group.conjugate(b, x) == map.image_b)
}

/// Criterion-based inner test for 2-generator class-2 groups with cyclic
/// derived subgroup: `aut` is inner iff every displacement `g^-1 aut(g)`
/// lies in the derived subgroup.
pub fn is_inner_by_criterion(aut: &Aut<'_>, derived: &SubgroupSet<'_>) -> bool {
    let group = aut.group();
    group
        .elements()
        .all(|g| derived.contains(group.mul(group.inv(g), aut.apply(g))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    /// Candidate images restricted to square roots of `a^2` / `b^2` with the
    /// right commutator; sound because fixing `a^2`, `b^2` and `[a,b]`
    /// pointwise-fixes their closure, which is the whole Frattini subgroup.
    Pruned,
    /// Every generator-image pair, filtered by validation, order 2 and an
    /// explicit elementwise Frattini check.
    Brute,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumLimits {
    pub pruned_max_order: u64,
    pub brute_max_order: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            pruned_max_order: 1 << 12,
            brute_max_order: 1 << 10,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("group order {order} exceeds the {mode} enumeration cap {cap}")]
    CapExceeded { order: u64, cap: u64, mode: &'static str },
}

/// All automorphisms of order exactly 2 fixing the Frattini subgroup
/// elementwise, in lexicographic `(image_a, image_b)` order.
pub fn phi_fixing_involutions<'g>(
    group: &'g FamilyGroup,
    mode: EnumMode,
    limits: &EnumLimits,
) -> Result<Vec<Aut<'g>>, EnumError> {
    let order = group.order();
    let cap = match mode {
        EnumMode::Pruned => limits.pruned_max_order,
        EnumMode::Brute => limits.brute_max_order,
    };
    if order > cap {
        return Err(EnumError::CapExceeded {
            order,
            cap,
            mode: match mode {
                EnumMode::Pruned => "pruned",
                EnumMode::Brute => "brute",
            },
        });
    }

    let mut auts = match mode {
        EnumMode::Pruned => {
            let (a, b) = (group.gen_a(), group.gen_b());
            let a2 = group.mul(a, a);
            let b2 = group.mul(b, b);
            let c = group.gen_c();
            let sqrt_a: Vec<Elem> = group.elements().filter(|&x| group.mul(x, x) == a2).collect();
            let sqrt_b: Vec<Elem> = group.elements().filter(|&y| group.mul(y, y) == b2).collect();
            sqrt_a
                .par_iter()
                .flat_map_iter(|&x| {
                    let sqrt_b = &sqrt_b;
                    sqrt_b.iter().filter_map(move |&y| {
                        if group.commutator(x, y) != c {
                            return None;
                        }
                        validate(group, GenMap::new(x, y))
                            .ok()
                            .filter(|aut| aut.is_involution())
                    })
                })
                .collect::<Vec<_>>()
        }
        EnumMode::Brute => {
            let phi = structure::frattini(group);
            let all: Vec<Elem> = group.elements().collect();
            all.par_iter()
                .flat_map_iter(|&x| {
                    let all = &all;
                    let phi = &phi;
                    all.iter().filter_map(move |&y| {
                        validate(group, GenMap::new(x, y))
                            .ok()
                            .filter(|aut| aut.is_involution() && aut.fixes_pointwise(phi))
                    })
                })
                .collect::<Vec<_>>()
        }
    };
    auts.sort_by_key(|aut| {
        (
            group.elem_index(aut.gen_map().image_a),
            group.elem_index(aut.gen_map().image_b),
        )
    });
    Ok(auts)
}

/// All automorphisms fixing the Frattini subgroup elementwise, of any order
/// (the identity included), via the pruned candidate set.
pub fn phi_fixing_automorphisms<'g>(
    group: &'g FamilyGroup,
    limits: &EnumLimits,
) -> Result<Vec<Aut<'g>>, EnumError> {
    let order = group.order();
    if order > limits.pruned_max_order {
        return Err(EnumError::CapExceeded {
            order,
            cap: limits.pruned_max_order,
            mode: "pruned",
        });
    }
    let (a, b) = (group.gen_a(), group.gen_b());
    let a2 = group.mul(a, a);
    let b2 = group.mul(b, b);
    let c = group.gen_c();
    let sqrt_a: Vec<Elem> = group.elements().filter(|&x| group.mul(x, x) == a2).collect();
    let sqrt_b: Vec<Elem> = group.elements().filter(|&y| group.mul(y, y) == b2).collect();
    let mut auts: Vec<Aut<'g>> = sqrt_a
        .par_iter()
        .flat_map_iter(|&x| {
            let sqrt_b = &sqrt_b;
            sqrt_b.iter().filter_map(move |&y| {
                (group.commutator(x, y) == c)
                    .then(|| validate(group, GenMap::new(x, y)).ok())
                    .flatten()
            })
        })
        .collect();
    auts.sort_by_key(|aut| {
        (
            group.elem_index(aut.gen_map().image_a),
            group.elem_index(aut.gen_map().image_b),
        )
    });
    Ok(auts)
}

/// Verdict and witness inventory for one group: does every Frattini-fixing
/// involution come from conjugation?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    pub params: GroupParams,
    pub order: u64,
    pub total: usize,
    pub inner_count: usize,
    pub noninner_witnesses: Vec<GenMap>,
    pub star_holds: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StarError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("inner-ness criterion disagrees with the direct search on {map} (direct witness {direct:?}, criterion {criterion}); this is a bug")]
    CriterionMismatch {
        map: GenMap,
        direct: Option<Elem>,
        criterion: bool,
    },
}

/// Enumerates the Frattini-fixing involutions and classifies each one by the
/// direct conjugation search, cross-checked against the displacement
/// criterion. A disagreement is a hard failure.
pub fn star_condition<'g>(
    group: &'g FamilyGroup,
    mode: EnumMode,
    limits: &EnumLimits,
) -> Result<StarReport, StarError> {
    let auts = phi_fixing_involutions(group, mode, limits)?;
    let derived = structure::derived_subgroup(group);
    let mut inner_count = 0usize;
    let mut noninner = Vec::new();
    for aut in &auts {
        let direct = inner_witness(aut);
        let criterion = is_inner_by_criterion(aut, &derived);
        if direct.is_some() != criterion {
            return Err(StarError::CriterionMismatch {
                map: aut.gen_map(),
                direct,
                criterion,
            });
        }
        if direct.is_some() {
            inner_count += 1;
        } else {
            noninner.push(aut.gen_map());
        }
    }
    Ok(StarReport {
        params: group.params(),
        order: group.order(),
        total: auts.len(),
        inner_count,
        star_holds: noninner.is_empty(),
        noninner_witnesses: noninner,
    })
}
