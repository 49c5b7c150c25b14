//! Exact element arithmetic for the three families of 2-generator class-2
//! finite 2-groups with cyclic center.
//!
//! Every group is realized as a collected power-commutator normal form:
//! each element is a triple `a^i b^j c^k` with `c = [a, b]` central and
//! `0 <= i < Ma`, `0 <= j < Mb`, `0 <= k < Mc`. The moduli and the carry
//! rules that fold overflowing exponents back into the normal form are
//! fixed per family:
//!
//! * `Q1` — `<a, b | a^(2^n) = b^(2^r) = 1, a^(2^(n-r)) = [a,b]>`, `2r <= n`.
//!   `Ma = 2^n`, `Mb = 2^r`, `Mc = 1`; a full turn of `k` adds `2^(n-r)` to `i`.
//! * `Q2` — `<a, b | a^(2^n) = b^(2^r) = 1, a^(2^r) = [a,b]^(2^(2r-n))>`,
//!   `r <= n < 2r`. `Ma = 2^n`, `Mb = 2^r`, `Mc = 2^(2r-n)`; a full turn of
//!   `k` adds `2^r` to `i`.
//! * `R3` — `<a, b | a^(2^(n+1)) = b^(2^(n+1)) = 1, a^(2^n) = [a,b]^(2^(n-1)) = b^(2^n)>`,
//!   `n >= 1`. `Ma = 2^(n+1)`, `Mb = 2^n`, `Mc = 2^(n-1)`; a full turn of `j`
//!   adds `2^(n-1)` to `k`, a full turn of `k` adds `2^n` to `i`.
//!
//! Multiplication collects via `b^j a^i = a^i b^j [a,b]^(-ij)`, which is the
//! class-2 collection rule under the convention `[x, y] = x^-1 y^-1 x y`.
//! All defining relations are re-verified on the realized generators at
//! construction time.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Default ceiling on the group order accepted by [`FamilyGroup::new`].
pub const DEFAULT_ORDER_CAP: u64 = 1 << 21;

/// Presentation family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// `a^(2^(n-r)) = [a,b]` with `2r <= n`.
    Q1,
    /// `a^(2^r) = [a,b]^(2^(2r-n))` with `r <= n < 2r`.
    Q2,
    /// `a^(2^n) = [a,b]^(2^(n-1)) = b^(2^n)` with `n >= 1`.
    R3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Q1, Family::Q2, Family::R3];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Q1 => "Q1",
            Family::Q2 => "Q2",
            Family::R3 => "R3",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_uppercase().as_str() {
            "Q1" => Some(Family::Q1),
            "Q2" => Some(Family::Q2),
            "R3" => Some(Family::R3),
            _ => None,
        }
    }

    /// Whether this family takes the second parameter `r`.
    pub fn takes_r(self) -> bool {
        !matches!(self, Family::R3)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters identifying one concrete group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupParams {
    pub family: Family,
    pub n: u32,
    pub r: Option<u32>,
}

impl GroupParams {
    pub fn new(family: Family, n: u32, r: Option<u32>) -> GroupParams {
        GroupParams { family, n, r }
    }

    pub fn make(self) -> Result<FamilyGroup, GroupError> {
        FamilyGroup::new(self.family, self.n, self.r)
    }

    /// Group order implied by the parameters, without constructing the group.
    pub fn order(self) -> Option<u64> {
        let (ma, mb, mc) = moduli_shifts(self.family, self.n, self.r?)?;
        Some(1u64 << (ma + mb + mc))
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r {
            Some(r) => write!(f, "{}({},{})", self.family, self.n, r),
            None => write!(f, "{}({})", self.family, self.n),
        }
    }
}

fn moduli_shifts(family: Family, n: u32, r: u32) -> Option<(u32, u32, u32)> {
    match family {
        Family::Q1 => Some((n, r, 0)),
        Family::Q2 => Some((n, r, (2 * r).checked_sub(n)?)),
        Family::R3 => Some((n + 1, n, n.checked_sub(1)?)),
    }
}

/// A group element in canonical reduced form: the exponent triple of
/// `a^i b^j c^k`. Ordering is lexicographic in `(i, j, k)`.
/// Serializes as the array `[i, j, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.i, self.j, self.k).serialize(serializer)
    }
}

impl Elem {
    pub const IDENTITY: Elem = Elem { i: 0, j: 0, k: 0 };

    pub fn is_identity(self) -> bool {
        self == Elem::IDENTITY
    }

    pub fn triple(self) -> (i64, i64, i64) {
        (self.i, self.j, self.k)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let mut first = true;
        for (sym, e) in [("a", self.i), ("b", self.j), ("c", self.k)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameters for {family}: constraint `{constraint}` violated (n = {n}, r = {r:?})")]
    InvalidParameters {
        family: Family,
        constraint: &'static str,
        n: u32,
        r: Option<u32>,
    },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
}

/// Immutable realization of one presented group.
///
/// All operations are pure; a `FamilyGroup` can be shared freely across
/// threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGroup {
    family: Family,
    n: u32,
    r: Option<u32>,
    ma_sh: u32,
    mb_sh: u32,
    mc_sh: u32,
    /// Added to `k` for each full turn of `j` past `Mb` (`R3` only).
    j_carry: i64,
    /// Added to `i` for each full turn of `k` past `Mc`.
    k_carry: i64,
    /// Collection sign: `-1` for `[x,y] = x^-1 y^-1 x y` (the standard
    /// realization), `+1` for the mirrored realization that reads the
    /// presentation's `[a,b]` as the opposite commutator.
    twist: i64,
    order: u64,
    c_order: i64,
}

impl FamilyGroup {
    /// Builds the group with the default order cap, verifying the family
    /// constraints and every defining relation of the presentation.
    pub fn new(family: Family, n: u32, r: Option<u32>) -> Result<FamilyGroup, GroupError> {
        FamilyGroup::with_order_cap(family, n, r, DEFAULT_ORDER_CAP)
    }

    pub fn with_order_cap(
        family: Family,
        n: u32,
        r: Option<u32>,
        cap: u64,
    ) -> Result<FamilyGroup, GroupError> {
        FamilyGroup::build(family, n, r, cap, false)
    }

    /// The same realization with the collection sign flipped, i.e. reading
    /// the presentation's `[a, b]` as the opposite commutator. Used to
    /// diagnose convention mismatches; not part of the normal surface.
    pub fn mirrored_realization(
        family: Family,
        n: u32,
        r: Option<u32>,
    ) -> Result<FamilyGroup, GroupError> {
        FamilyGroup::build(family, n, r, DEFAULT_ORDER_CAP, true)
    }

    fn build(
        family: Family,
        n: u32,
        r: Option<u32>,
        cap: u64,
        mirrored: bool,
    ) -> Result<FamilyGroup, GroupError> {
        let fail = |constraint: &'static str| GroupError::InvalidParameters {
            family,
            constraint,
            n,
            r,
        };
        let (ma_sh, mb_sh, mc_sh, j_carry_sh, k_carry_sh) = match family {
            Family::Q1 => {
                let r = r.ok_or_else(|| fail("family Q1 requires parameter r"))?;
                if r < 1 {
                    return Err(fail("r >= 1"));
                }
                if 2 * r > n {
                    return Err(fail("2r <= n"));
                }
                (n, r, 0, None, n - r)
            }
            Family::Q2 => {
                let r = r.ok_or_else(|| fail("family Q2 requires parameter r"))?;
                if r < 1 {
                    return Err(fail("r >= 1"));
                }
                if n < r {
                    return Err(fail("r <= n"));
                }
                if n >= 2 * r {
                    return Err(fail("n < 2r"));
                }
                (n, r, 2 * r - n, None, r)
            }
            Family::R3 => {
                if r.is_some() {
                    return Err(fail("family R3 takes no parameter r"));
                }
                if n < 1 {
                    return Err(fail("n >= 1"));
                }
                (n + 1, n, n - 1, Some(n - 1), n)
            }
        };
        let total = u64::from(ma_sh + mb_sh + mc_sh);
        if total >= 63 {
            return Err(GroupError::OrderCapExceeded { order: u64::MAX, cap });
        }
        let order = 1u64 << total;
        if order > cap {
            return Err(GroupError::OrderCapExceeded { order, cap });
        }

        let mut group = FamilyGroup {
            family,
            n,
            r,
            ma_sh,
            mb_sh,
            mc_sh,
            j_carry: j_carry_sh.map_or(0, |s| 1i64 << s),
            k_carry: 1i64 << k_carry_sh,
            twist: if mirrored { 1 } else { -1 },
            order,
            c_order: 1,
        };
        group.c_order = group.element_order_by_doubling(group.gen_c()) as i64;

        // The realization must satisfy the presentation it claims to
        // realize, and must have class exactly 2.
        if let Some(rel) = group.defining_relation_violation(group.gen_a(), group.gen_b()) {
            panic!("realization of {} violates relation {rel}", group.params());
        }
        let c = group.gen_c();
        assert!(!c.is_identity(), "realization of {} is abelian", group.params());
        assert!(
            group.commutator(c, group.gen_a()).is_identity()
                && group.commutator(c, group.gen_b()).is_identity(),
            "derived generator of {} is not central",
            group.params()
        );
        Ok(group)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> Option<u32> {
        self.r
    }

    pub fn params(&self) -> GroupParams {
        GroupParams::new(self.family, self.n, self.r)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_mirrored(&self) -> bool {
        self.twist == 1
    }

    /// Canonical exponent ranges `(Ma, Mb, Mc)`.
    pub fn moduli(&self) -> (i64, i64, i64) {
        (1 << self.ma_sh, 1 << self.mb_sh, 1 << self.mc_sh)
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn gen_a(&self) -> Elem {
        self.normalize((1, 0, 0))
    }

    pub fn gen_b(&self) -> Elem {
        self.normalize((0, 1, 0))
    }

    /// The canonical form of `[a, b]`; for `Q1` this folds into a power of `a`.
    pub fn gen_c(&self) -> Elem {
        self.normalize((0, 0, 1))
    }

    /// Order of `[a, b]` as a group element.
    pub fn c_order(&self) -> i64 {
        self.c_order
    }

    /// Reduces an arbitrary exponent triple to canonical form: `j` first
    /// (carrying into `k`), then `k` (carrying into `i`), then `i`.
    /// Idempotent on canonical triples.
    pub fn normalize(&self, raw: (i64, i64, i64)) -> Elem {
        self.normalize_wide(raw.0 as i128, raw.1 as i128, raw.2 as i128)
    }

    fn normalize_wide(&self, i: i128, j: i128, k: i128) -> Elem {
        let mb = 1i128 << self.mb_sh;
        let qj = j.div_euclid(mb);
        let j = j - qj * mb;
        let k = k + qj * self.j_carry as i128;
        let mc = 1i128 << self.mc_sh;
        let qk = k.div_euclid(mc);
        let k = k - qk * mc;
        let i = i + qk * self.k_carry as i128;
        let ma = 1i128 << self.ma_sh;
        Elem {
            i: i.rem_euclid(ma) as i64,
            j: j as i64,
            k: k as i64,
        }
    }

    /// Fast-path normalization for intermediates produced by `mul`/`inv` of
    /// canonical elements (all magnitudes stay far below `i64` range).
    #[inline]
    fn normalize_small(&self, i: i64, j: i64, k: i64) -> Elem {
        let qj = j >> self.mb_sh;
        let j = j & ((1 << self.mb_sh) - 1);
        let k = k + qj * self.j_carry;
        let qk = k >> self.mc_sh;
        let k = k & ((1 << self.mc_sh) - 1);
        let i = (i + qk * self.k_carry) & ((1 << self.ma_sh) - 1);
        Elem { i, j, k }
    }

    /// Product of canonical elements: `(i+i', j+j', k+k' - j*i')`, collected.
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.normalize_small(x.i + y.i, x.j + y.j, x.k + y.k + self.twist * x.j * y.i)
    }

    /// Inverse: `(-i, -j, -k - i*j)`, collected.
    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.normalize_small(-x.i, -x.j, -x.k + self.twist * x.i * x.j)
    }

    /// `m`-th power via the class-2 closed form
    /// `(m*i, m*j, m*k - C(m,2)*i*j)`; any integer `m` is accepted.
    pub fn pow(&self, x: Elem, m: i64) -> Elem {
        // Element orders divide |G|, so the exponent may be reduced first;
        // this keeps every intermediate within i128.
        let m = m.rem_euclid(self.order as i64) as i128;
        let binom = m * (m - 1) / 2;
        self.normalize_wide(
            m * x.i as i128,
            m * x.j as i128,
            m * x.k as i128 + self.twist as i128 * binom * x.i as i128 * x.j as i128,
        )
    }

    /// `[x, y] = x^-1 y^-1 x y`, computed by bilinearity: `c^(i*j' - j*i')`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let e = (x.i * y.j - x.j * y.i) & (self.c_order - 1);
        self.normalize_small(0, 0, e)
    }

    /// Conjugate `x^-1 g x = g * [g, x]`.
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(g, self.commutator(g, x))
    }

    /// Smallest `m >= 1` with `g^m = e`; always a power of two here.
    pub fn element_order(&self, g: Elem) -> u64 {
        self.element_order_by_doubling(g)
    }

    fn element_order_by_doubling(&self, g: Elem) -> u64 {
        let mut h = g;
        let mut m = 1u64;
        while !h.is_identity() {
            h = self.mul(h, h);
            m *= 2;
        }
        m
    }

    /// All `Ma * Mb * Mc` canonical elements in lexicographic `(i, j, k)` order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(move |idx| self.elem_at(idx))
    }

    /// Position of a canonical element in lexicographic order.
    #[inline]
    pub fn elem_index(&self, g: Elem) -> usize {
        (((g.i << self.mb_sh) | g.j) << self.mc_sh | g.k) as usize
    }

    #[inline]
    pub fn elem_at(&self, idx: u64) -> Elem {
        let k = (idx & ((1 << self.mc_sh) - 1)) as i64;
        let j = ((idx >> self.mc_sh) & ((1 << self.mb_sh) - 1)) as i64;
        let i = (idx >> (self.mc_sh + self.mb_sh)) as i64;
        Elem { i, j, k }
    }

    pub fn is_canonical(&self, g: Elem) -> bool {
        let (ma, mb, mc) = self.moduli();
        (0..ma).contains(&g.i) && (0..mb).contains(&g.j) && (0..mc).contains(&g.k)
    }

    /// Checks the images `(x, y)` against every defining relation of the
    /// family presentation; returns the first violated relation.
    pub fn defining_relation_violation(&self, x: Elem, y: Elem) -> Option<&'static str> {
        let e = self.identity();
        let c = self.commutator(x, y);
        let p2 = |s: u32| 1i64 << s;
        match self.family {
            Family::Q1 => {
                let r = self.r.unwrap();
                if self.pow(x, p2(self.n)) != e {
                    return Some("a^(2^n) = 1");
                }
                if self.pow(y, p2(r)) != e {
                    return Some("b^(2^r) = 1");
                }
                if self.pow(x, p2(self.n - r)) != c {
                    return Some("a^(2^(n-r)) = [a,b]");
                }
            }
            Family::Q2 => {
                let r = self.r.unwrap();
                if self.pow(x, p2(self.n)) != e {
                    return Some("a^(2^n) = 1");
                }
                if self.pow(y, p2(r)) != e {
                    return Some("b^(2^r) = 1");
                }
                if self.pow(x, p2(r)) != self.pow(c, p2(2 * r - self.n)) {
                    return Some("a^(2^r) = [a,b]^(2^(2r-n))");
                }
                if !self.commutator(c, x).is_identity() {
                    return Some("[[a,b],a] = 1");
                }
                if !self.commutator(c, y).is_identity() {
                    return Some("[[a,b],b] = 1");
                }
            }
            Family::R3 => {
                let n = self.n;
                if self.pow(x, p2(n + 1)) != e {
                    return Some("a^(2^(n+1)) = 1");
                }
                if self.pow(y, p2(n + 1)) != e {
                    return Some("b^(2^(n+1)) = 1");
                }
                let half = self.pow(c, p2(n - 1));
                if self.pow(x, p2(n)) != half {
                    return Some("a^(2^n) = [a,b]^(2^(n-1))");
                }
                if self.pow(y, p2(n)) != half {
                    return Some("b^(2^n) = [a,b]^(2^(n-1))");
                }
                if !self.commutator(c, x).is_identity() {
                    return Some("[[a,b],a] = 1");
                }
                if !self.commutator(c, y).is_identity() {
                    return Some("[[a,b],b] = 1");
                }
            }
        }
        None
    }
}

/// All parameter tuples of `family` whose group order is at most `max_order`,
/// sorted by `(n, r)`.
pub fn family_params_up_to(family: Family, max_order: u64) -> Vec<GroupParams> {
    let mut out = Vec::new();
    match family {
        Family::Q1 => {
            // order 2^(n+r), r >= 1, 2r <= n
            for r in 1u32.. {
                if 1u64 << (3 * r) > max_order {
                    break;
                }
                for n in (2 * r).. {
                    if 1u64 << (n + r) > max_order {
                        break;
                    }
                    out.push(GroupParams::new(Family::Q1, n, Some(r)));
                }
            }
        }
        Family::Q2 => {
            // order 2^(3r), r <= n < 2r
            for r in 1u32.. {
                if 1u64 << (3 * r) > max_order {
                    break;
                }
                for n in r..2 * r {
                    out.push(GroupParams::new(Family::Q2, n, Some(r)));
                }
            }
        }
        Family::R3 => {
            // order 2^(3n)
            for n in 1u32.. {
                if 1u64 << (3 * n) > max_order {
                    break;
                }
                out.push(GroupParams::new(Family::R3, n, None));
            }
        }
    }
    out.sort();
    out
}

/// All groups of all three families with order at most `max_order`,
/// in `(family, n, r)` order.
pub fn all_params_up_to(max_order: u64) -> Vec<GroupParams> {
    let mut out = Vec::new();
    for family in Family::ALL {
        out.extend(family_params_up_to(family, max_order));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashMap};

    /// Cayley-table oracle: builds the group by closure from `{a, b}` using
    /// only `mul`, independent of `elements()`/`pow`/`inv` closed forms.
    fn closure_from_generators(g: &FamilyGroup) -> BTreeSet<Elem> {
        let mut set: BTreeSet<Elem> = BTreeSet::new();
        set.insert(g.identity());
        let gens = [g.gen_a(), g.gen_b()];
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = g.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn repeated_mul(g: &FamilyGroup, x: Elem, m: u64) -> Elem {
        let mut acc = g.identity();
        for _ in 0..m {
            acc = g.mul(acc, x);
        }
        acc
    }

    fn q1(n: u32, r: u32) -> FamilyGroup {
        FamilyGroup::new(Family::Q1, n, Some(r)).unwrap()
    }

    fn q2(n: u32, r: u32) -> FamilyGroup {
        FamilyGroup::new(Family::Q2, n, Some(r)).unwrap()
    }

    fn r3(n: u32) -> FamilyGroup {
        FamilyGroup::new(Family::R3, n, None).unwrap()
    }

    #[test]
    fn q1_2_1_is_dihedral_of_order_8() {
        let g = q1(2, 1);
        assert_eq!(g.order(), 8);
        // D8 has exactly 5 involutions; Q8 would have 1.
        let involutions = g.elements().filter(|&x| !x.is_identity() && g.element_order(x) == 2).count();
        assert_eq!(involutions, 5);
        assert_eq!(closure_from_generators(&g).len(), 8);
    }

    #[test]
    fn q1_rejects_2r_greater_than_n() {
        let err = FamilyGroup::new(Family::Q1, 1, Some(1)).unwrap_err();
        match err {
            GroupError::InvalidParameters { constraint, .. } => assert_eq!(constraint, "2r <= n"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn r3_1_is_quaternion_of_order_8() {
        let g = r3(1);
        assert_eq!(g.order(), 8);
        let involutions: Vec<Elem> = g
            .elements()
            .filter(|&x| !x.is_identity() && g.element_order(x) == 2)
            .collect();
        assert_eq!(involutions.len(), 1, "unique involution");
        assert!(g.elements().all(|x| g.element_order(x) <= 4), "exponent 4");
        assert_eq!(closure_from_generators(&g).len(), 8);
    }

    #[test]
    fn order_cap_is_enforced() {
        let err = FamilyGroup::with_order_cap(Family::Q1, 8, Some(2), 512).unwrap_err();
        assert!(matches!(err, GroupError::OrderCapExceeded { order: 1024, cap: 512 }));
    }

    #[test]
    fn normalize_folds_c_into_a_for_q1() {
        let g = q1(2, 1);
        assert_eq!(g.normalize((0, 0, 1)), Elem { i: 2, j: 0, k: 0 });
        assert_eq!(g.normalize((0, 0, 0)), Elem::IDENTITY);
    }

    #[test]
    fn normalize_r3_wraps_j_through_k() {
        let g = r3(1);
        // b^2 = a^2 by the chained carries.
        assert_eq!(g.normalize((0, 2, 0)), Elem { i: 2, j: 0, k: 0 });
        // Confirm against the multiplication oracle.
        let b = g.gen_b();
        assert_eq!(repeated_mul(&g, b, 2), Elem { i: 2, j: 0, k: 0 });
    }

    #[test]
    fn normalize_is_idempotent_on_arbitrary_input() {
        for g in [q1(3, 1), q2(3, 2), r3(2)] {
            for raw in [(-5, 17, -23), (1 << 20, -(1 << 19), 3), (0, -1, -1)] {
                let once = g.normalize(raw);
                assert!(g.is_canonical(once));
                assert_eq!(g.normalize(once.triple()), once);
            }
        }
    }

    #[test]
    fn mul_matches_dihedral_relations() {
        let g = q1(2, 1);
        let (a, b) = (g.gen_a(), g.gen_b());
        // b * a = a^3 b
        assert_eq!(g.mul(b, a), Elem { i: 3, j: 1, k: 0 });
        // identity law
        for x in g.elements() {
            assert_eq!(g.mul(g.identity(), x), x);
            assert_eq!(g.mul(x, g.identity()), x);
        }
        // ab is an involution in D8
        let ab = g.mul(a, b);
        assert_eq!(g.mul(ab, ab), g.identity());
    }

    #[test]
    fn inv_examples() {
        let g = q1(2, 1);
        assert_eq!(g.inv(g.identity()), g.identity());
        let ab = g.mul(g.gen_a(), g.gen_b());
        assert_eq!(g.inv(ab), ab);

        let g = q1(3, 1);
        assert_eq!(g.inv(g.gen_a()), Elem { i: 7, j: 0, k: 0 });
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            assert_eq!(g.mul(g.inv(x), x), g.identity());
        }
    }

    #[test]
    fn pow_examples() {
        let d8 = q1(2, 1);
        let ab = d8.mul(d8.gen_a(), d8.gen_b());
        assert_eq!(d8.pow(ab, 2), d8.identity());
        assert_eq!(d8.pow(ab, 1), ab);

        let q8 = r3(1);
        let ab = q8.mul(q8.gen_a(), q8.gen_b());
        let sq = q8.pow(ab, 2);
        assert_eq!(sq, Elem { i: 2, j: 0, k: 0 });
        assert_ne!(sq, q8.identity());
        assert_eq!(q8.pow(ab, 4), q8.identity());
        assert_eq!(q8.pow(ab, 2), repeated_mul(&q8, ab, 2));
    }

    #[test]
    fn pow_handles_negative_and_huge_exponents() {
        let g = q2(3, 2);
        for x in g.elements() {
            assert_eq!(g.pow(x, -1), g.inv(x));
            assert_eq!(g.pow(x, 0), g.identity());
            let m = 3 * g.order() as i64 + 5;
            assert_eq!(g.pow(x, m), repeated_mul(&g, x, m as u64));
            assert_eq!(g.pow(x, i64::MAX), g.pow(x, i64::MAX.rem_euclid(g.order() as i64)));
        }
    }

    #[test]
    fn commutator_examples() {
        let g = q1(2, 1);
        let (a, b) = (g.gen_a(), g.gen_b());
        assert_eq!(g.commutator(a, b), g.gen_c());
        for x in g.elements() {
            assert_eq!(g.commutator(x, x), g.identity());
        }
        // [a^3, ab] = a^2
        let a3 = g.pow(a, 3);
        let ab = g.mul(a, b);
        assert_eq!(g.commutator(a3, ab), Elem { i: 2, j: 0, k: 0 });
        // against the definition
        let direct = g.mul(g.mul(g.inv(a3), g.inv(ab)), g.mul(a3, ab));
        assert_eq!(g.commutator(a3, ab), direct);
    }

    #[test]
    fn element_order_examples() {
        let g = q1(2, 1);
        assert_eq!(g.element_order(g.identity()), 1);
        assert_eq!(g.element_order(g.gen_a()), 4);
        assert_eq!(g.element_order(g.gen_b()), 2);

        let q8 = r3(1);
        assert_eq!(q8.element_order(q8.mul(q8.gen_a(), q8.gen_b())), 4);
    }

    #[test]
    fn elements_enumeration_matches_closure() {
        for g in [q1(2, 1), r3(2), q2(1, 1)] {
            let listed: BTreeSet<Elem> = g.elements().collect();
            assert_eq!(listed.len() as u64, g.order());
            assert_eq!(listed, closure_from_generators(&g));
            for x in &listed {
                assert!(g.is_canonical(*x));
            }
        }
        assert_eq!(q1(2, 1).order(), 8);
        assert_eq!(r3(2).order(), 64);
    }

    #[test]
    fn q2_1_1_is_dihedral_of_order_8() {
        let g = q2(1, 1);
        assert_eq!(g.order(), 8);
        let center: Vec<Elem> = g
            .elements()
            .filter(|&x| {
                g.commutator(x, g.gen_a()).is_identity() && g.commutator(x, g.gen_b()).is_identity()
            })
            .collect();
        assert_eq!(center.len(), 2);
        let mut orders: Vec<u64> = g.elements().map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn elem_index_roundtrip() {
        for g in [q1(4, 2), q2(3, 2), r3(2)] {
            for (pos, x) in g.elements().enumerate() {
                assert_eq!(g.elem_index(x), pos);
                assert_eq!(g.elem_at(pos as u64), x);
            }
        }
    }

    #[test]
    fn mirrored_realization_satisfies_relations_too() {
        for params in [
            GroupParams::new(Family::Q1, 3, Some(1)),
            GroupParams::new(Family::Q2, 3, Some(2)),
            GroupParams::new(Family::R3, 2, None),
        ] {
            let m = FamilyGroup::mirrored_realization(params.family, params.n, params.r).unwrap();
            assert!(m.is_mirrored());
            assert_eq!(m.order(), params.make().unwrap().order());
        }
    }

    #[test]
    fn both_commutator_words_agree_on_class_2_groups() {
        // x^-1 y^-1 x y and x y x^-1 y^-1 name the same element when the
        // derived subgroup is central, so either reading of `[x, y]` yields
        // the same realization.
        for g in [q1(3, 1), q2(2, 2), r3(2)] {
            for x in g.elements() {
                for y in [g.gen_a(), g.gen_b(), g.mul(g.gen_a(), g.gen_b())] {
                    let left = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
                    let right = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn family_params_enumeration() {
        let q1_list = family_params_up_to(Family::Q1, 1 << 5);
        assert_eq!(
            q1_list,
            vec![
                GroupParams::new(Family::Q1, 2, Some(1)),
                GroupParams::new(Family::Q1, 3, Some(1)),
                GroupParams::new(Family::Q1, 4, Some(1)),
            ]
        );
        let q2_list = family_params_up_to(Family::Q2, 1 << 6);
        assert_eq!(
            q2_list,
            vec![
                GroupParams::new(Family::Q2, 1, Some(1)),
                GroupParams::new(Family::Q2, 2, Some(2)),
                GroupParams::new(Family::Q2, 3, Some(2)),
            ]
        );
        let r3_list = family_params_up_to(Family::R3, 1 << 9);
        assert_eq!(
            r3_list,
            vec![
                GroupParams::new(Family::R3, 1, None),
                GroupParams::new(Family::R3, 2, None),
                GroupParams::new(Family::R3, 3, None),
            ]
        );
        // orders implied by parameters match the realizations
        for p in all_params_up_to(1 << 10) {
            assert_eq!(p.order().unwrap(), p.make().unwrap().order());
        }
    }

    #[test]
    fn left_multiplication_permutes_elements() {
        let g = q1(4, 2);
        for h in g.elements() {
            let mut seen: HashMap<Elem, Elem> = HashMap::new();
            for x in g.elements() {
                if let Some(prev) = seen.insert(g.mul(h, x), x) {
                    panic!("h*{prev} = h*{x} for h = {h}");
                }
            }
            assert_eq!(seen.len() as u64, g.order());
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_group() -> impl Strategy<Value = FamilyGroup> {
            prop_oneof![
                (2u32..=6, 1u32..=3).prop_filter_map("q1 constraint", |(n, r)| {
                    (2 * r <= n).then(|| FamilyGroup::new(Family::Q1, n, Some(r)).unwrap())
                }),
                (1u32..=3).prop_flat_map(|r| (r..2 * r, Just(r))).prop_map(|(n, r)| {
                    FamilyGroup::new(Family::Q2, n, Some(r)).unwrap()
                }),
                (1u32..=3).prop_map(|n| FamilyGroup::new(Family::R3, n, None).unwrap()),
            ]
        }

        proptest! {
            #[test]
            fn normalize_idempotent((g, raw) in arb_group().prop_flat_map(|g| {
                (Just(g), (any::<i32>(), any::<i32>(), any::<i32>()))
            })) {
                let once = g.normalize((raw.0 as i64, raw.1 as i64, raw.2 as i64));
                prop_assert!(g.is_canonical(once));
                prop_assert_eq!(g.normalize(once.triple()), once);
            }

            #[test]
            fn group_axioms_hold((g, xi, yi, zi) in arb_group().prop_flat_map(|g| {
                let n = g.order();
                (Just(g), 0..n, 0..n, 0..n)
            })) {
                let (x, y, z) = (g.elem_at(xi), g.elem_at(yi), g.elem_at(zi));
                prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
                prop_assert_eq!(g.mul(g.inv(x), x), g.identity());
            }

            #[test]
            fn pow_matches_repeated_mul((g, xi, m) in arb_group().prop_flat_map(|g| {
                let n = g.order();
                (Just(g), 0..n, 0u64..40)
            })) {
                let x = g.elem_at(xi);
                prop_assert_eq!(g.pow(x, m as i64), repeated_mul(&g, x, m));
            }

            #[test]
            fn commutator_matches_definition((g, xi, yi) in arb_group().prop_flat_map(|g| {
                let n = g.order();
                (Just(g), 0..n, 0..n)
            })) {
                let (x, y) = (g.elem_at(xi), g.elem_at(yi));
                let direct = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
                prop_assert_eq!(g.commutator(x, y), direct);
            }
        }
    }
}
