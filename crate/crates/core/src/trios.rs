//! Additive trios, saturation and Vosper duality.

use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicSet;
use crate::error::{Error, Result};

/// Nonempty `(A, B, C)` with `A+B+C != G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trio {
    #[serde(rename = "A")]
    pub a: CyclicSet,
    #[serde(rename = "B")]
    pub b: CyclicSet,
    #[serde(rename = "C")]
    pub c: CyclicSet,
    /// `n - |A| - |B| - |C|`.
    pub r: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    A,
    B,
    C,
}

impl Trio {
    pub fn new(a: CyclicSet, b: CyclicSet, c: CyclicSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return Err(Error::EmptySet);
        }
        let s = a.sumset(&b)?.sumset(&c)?;
        if s.is_full() {
            return Err(Error::Precondition("A+B+C covers the group".into()));
        }
        let r = a.modulus() as i64 - (a.len() + b.len() + c.len()) as i64;
        Ok(Trio { a, b, c, r })
    }

    pub fn modulus(&self) -> usize {
        self.a.modulus()
    }

    pub fn get(&self, role: Role) -> &CyclicSet {
        match role {
            Role::A => &self.a,
            Role::B => &self.b,
            Role::C => &self.c,
        }
    }

    /// The set in `role` followed by the other two.
    fn split(&self, role: Role) -> (&CyclicSet, &CyclicSet, &CyclicSet) {
        match role {
            Role::A => (&self.a, &self.b, &self.c),
            Role::B => (&self.b, &self.a, &self.c),
            Role::C => (&self.c, &self.a, &self.b),
        }
    }

    pub fn total_sumset(&self) -> CyclicSet {
        self.a
            .sumset(&self.b)
            .and_then(|s| s.sumset(&self.c))
            .expect("same modulus")
    }

    /// Reorders the sets; `perm[i]` names the role that goes to position `i`.
    pub fn permuted(&self, perm: [Role; 3]) -> Trio {
        Trio {
            a: self.get(perm[0]).clone(),
            b: self.get(perm[1]).clone(),
            c: self.get(perm[2]).clone(),
            r: self.r,
        }
    }
}

/// All six orderings of the roles.
pub const PERMUTATIONS: [[Role; 3]; 6] = [
    [Role::A, Role::B, Role::C],
    [Role::A, Role::C, Role::B],
    [Role::B, Role::A, Role::C],
    [Role::B, Role::C, Role::A],
    [Role::C, Role::A, Role::B],
    [Role::C, Role::B, Role::A],
];

/// `(A, B, -(A+B)^c)`.
pub fn complement_trio(a: &CyclicSet, b: &CyclicSet) -> Result<Trio> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let s = a.sumset(b)?;
    if s.is_full() {
        return Err(Error::FullSumset);
    }
    let c = s.complement().neg();
    let r = s.len() as i64 - a.len() as i64 - b.len() as i64;
    Ok(Trio {
        a: a.clone(),
        b: b.clone(),
        c,
        r,
    })
}

/// True when adding any outside element to the chosen set fills the group.
pub fn is_saturated(t: &Trio, which: Role) -> bool {
    let (x, y, z) = t.split(which);
    let yz = y.sumset(z).expect("same modulus");
    // x ∪ {w} + y + z = G  ⇔  every gap of x+y+z is covered by w + (y+z)
    let gaps = x.sumset(&yz).expect("same modulus").complement();
    x.complement().iter().all(|w| {
        let cover = yz.translate(w as i64);
        gaps.is_subset(&cover)
    })
}

/// `{x : x + other ⊆ target}`.
fn maximal_summand(other: &CyclicSet, target: &CyclicSet) -> CyclicSet {
    let n = target.modulus();
    let mut out = CyclicSet::empty(n).expect("n >= 1");
    for x in 0..n {
        if other.translate(x as i64).is_subset(target) {
            out.insert(x);
        }
    }
    out
}

/// Successive saturation: the first role in `order` becomes `z - (Y+Z)^c`,
/// the second grows maximally keeping its sum with the third, and the third
/// grows maximally keeping its sum with the (new) second.
pub fn saturate(t: &Trio, z: usize, order: [Role; 3]) -> Result<Trio> {
    let n = t.modulus();
    if z >= n {
        return Err(Error::ElementOutOfRange { elem: z as i64, n });
    }
    if t.total_sumset().contains(z) {
        return Err(Error::Precondition(format!("{z} lies in A+B+C")));
    }
    let mut sets = [t.a.clone(), t.b.clone(), t.c.clone()];
    let idx = |r: Role| match r {
        Role::A => 0,
        Role::B => 1,
        Role::C => 2,
    };
    let (i1, i2, i3) = (idx(order[0]), idx(order[1]), idx(order[2]));
    if i1 == i2 || i2 == i3 || i1 == i3 {
        return Err(Error::Precondition("order must be a permutation".into()));
    }
    let s23 = sets[i2].sumset(&sets[i3])?;
    sets[i1] = s23.complement().neg().translate(z as i64);
    sets[i2] = maximal_summand(&sets[i3], &s23);
    let s23 = sets[i2].sumset(&sets[i3])?;
    sets[i3] = maximal_summand(&sets[i2], &s23);
    let [a, b, c] = sets;
    Trio::new(a, b, c)
}

/// The deterministic saturation used by the harness: smallest `z` outside
/// `A+B+C` and order `(C, B, A)`.
pub fn saturate_default(t: &Trio) -> Result<Trio> {
    let z = t
        .total_sumset()
        .complement()
        .min_elem()
        .expect("a trio never fills the group");
    saturate(t, z, [Role::C, Role::B, Role::A])
}

/// `-(A+B)^c + B` and whether it equals `-A^c`.
pub fn vosper_dual(a: &CyclicSet, b: &CyclicSet) -> Result<(CyclicSet, bool)> {
    let s = a.sumset(b)?;
    let lhs = s.complement().neg().sumset(b)?;
    let rhs = a.complement().neg();
    assert!(lhs.is_subset(&rhs), "duality containment failed for {a:?}, {b:?}");
    let eq = lhs == rhs;
    if eq && !s.is_full() {
        let r = s.len() as i64 - a.len() as i64 - b.len() as i64;
        assert_eq!(
            lhs.len() as i64,
            (a.modulus() - s.len()) as i64 + b.len() as i64 + r
        );
    }
    Ok((lhs, eq))
}

/// `A` saturated in `A+B`: every outside element enlarges the sumset.
pub fn saturated_in_sumset(a: &CyclicSet, b: &CyclicSet) -> bool {
    let s = a.sumset(b).expect("same modulus");
    a.complement()
        .iter()
        .all(|x| !b.translate(x as i64).is_subset(&s))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaFlags {
    pub delta_a: u8,
    pub delta_b: u8,
    pub delta_c: u8,
}

impl DeltaFlags {
    pub fn get(&self, role: Role) -> u8 {
        match role {
            Role::A => self.delta_a,
            Role::B => self.delta_b,
            Role::C => self.delta_c,
        }
    }
}

fn flags_with(t: &Trio, f: impl Fn(&CyclicSet, &CyclicSet, &CyclicSet) -> bool) -> DeltaFlags {
    let one = |role| {
        let (x, y, z) = t.split(role);
        u8::from(f(x, y, z))
    };
    DeltaFlags {
        delta_a: one(Role::A),
        delta_b: one(Role::B),
        delta_c: one(Role::C),
    }
}

/// The tentative correction terms of the conjectured 3k−4 statement mod p:
/// `δ_X = 1` if `r >= 0` and `X` is a translate of another set of the trio,
/// or if `r >= 2` and the other two sets are translates of each other with
/// both of size `r+4`.
pub fn delta_flags(t: &Trio) -> DeltaFlags {
    let r = t.r;
    flags_with(t, |x, y, z| {
        (r >= 0 && (x.is_translate_of(y) || x.is_translate_of(z)))
            || (r >= 2 && y.is_translate_of(z) && y.len() as i64 == r + 4 && z.len() as i64 == r + 4)
    })
}

/// The unguarded variant: `δ_X = 1` iff `X` is a translate of another set.
pub fn delta_flags_prop7(t: &Trio) -> DeltaFlags {
    flags_with(t, |x, y, z| x.is_translate_of(y) || x.is_translate_of(z))
}
