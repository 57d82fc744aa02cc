//! Finite groups given by construction parameters rather than Cayley tables.
//!
//! Every group here has a canonical numbering of its elements, `0..order`,
//! and that numbering agrees with the lexicographic order of the element
//! encodings. Quotients rely on this: the canonical representative of a
//! coset is its lexicographically least member, which is also the member
//! with the smallest index in the parent.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{GroupError, Result};

/// Largest group order any constructor will produce.
pub const HARD_ORDER_CAP: u64 = 1 << 14;

/// Canonical encoding of one group element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(SmallVec<[u32; 8]>);

impl Element {
    pub fn new(residues: impl IntoIterator<Item = u32>) -> Self {
        Element(residues.into_iter().collect())
    }

    pub fn residues(&self) -> &[u32] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    fn concat(a: &Element, b: &Element) -> Element {
        let mut v = a.0.clone();
        v.extend_from_slice(&b.0);
        Element(v)
    }

    fn with_twist(base: &Element, twist: u32) -> Element {
        let mut v = base.0.clone();
        v.push(twist);
        Element(v)
    }

    fn split_twist(&self) -> (Element, u32) {
        let (last, base) = self
            .0
            .split_last()
            .expect("twisted encoding is never empty");
        (Element(base.into()), *last)
    }

    fn split_at(&self, mid: usize) -> (Element, Element) {
        let (a, b) = self.0.split_at(mid);
        (Element(a.into()), Element(b.into()))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Abelian,
    Metacyclic2,
    GenDihedral,
    GenDicyclic,
    DirectProduct,
    Quotient,
}

/// An immutable finite group. Cloning is cheap.
#[derive(Clone)]
pub struct Group {
    core: Arc<Core>,
    involution: Option<Element>,
}

struct Core {
    order: u64,
    width: usize,
    repr: Repr,
}

enum Repr {
    Abelian {
        moduli: Vec<u32>,
    },
    /// `<x, y | x^m, y^2 = x^s, y^-1 x y = x^t>`, element `(i, e)` is `x^i y^e`.
    Metacyclic {
        m: u32,
        s: u32,
        t: u32,
    },
    Dihedral {
        base: Group,
    },
    Dicyclic {
        base: Group,
        square: Element,
    },
    Direct {
        left: Group,
        right: Group,
    },
    Quotient {
        parent: Group,
        reps: Vec<Element>,
        // parent index -> index of the coset representative in `reps`
        coset_of: Vec<u32>,
    },
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("kind", &self.kind())
            .field("order", &self.order())
            .field("involution", &self.involution)
            .finish()
    }
}

fn check_cap(order: u128) -> Result<u64> {
    if order > HARD_ORDER_CAP as u128 {
        return Err(GroupError::CapExceeded {
            order,
            cap: HARD_ORDER_CAP,
        });
    }
    Ok(order as u64)
}

fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

impl Group {
    fn from_core(order: u64, width: usize, repr: Repr) -> Group {
        Group {
            core: Arc::new(Core { order, width, repr }),
            involution: None,
        }
    }

    pub fn order(&self) -> u64 {
        self.core.order
    }

    /// Number of residues in each element encoding.
    pub fn width(&self) -> usize {
        self.core.width
    }

    pub fn kind(&self) -> GroupKind {
        match &self.core.repr {
            Repr::Abelian { .. } => GroupKind::Abelian,
            Repr::Metacyclic { .. } => GroupKind::Metacyclic2,
            Repr::Dihedral { .. } => GroupKind::GenDihedral,
            Repr::Dicyclic { .. } => GroupKind::GenDicyclic,
            Repr::Direct { .. } => GroupKind::DirectProduct,
            Repr::Quotient { .. } => GroupKind::Quotient,
        }
    }

    /// The designated central involution used by central products.
    pub fn central_involution(&self) -> Option<&Element> {
        self.involution.as_ref()
    }

    /// Replace the designated central involution after checking that `z`
    /// is a central element of order 2.
    pub fn with_central_involution(&self, z: Element) -> Result<Group> {
        self.check_member(&z)?;
        if self.element_order(&z)? != 2 {
            return Err(GroupError::InvalidParameter(format!(
                "{z} is not an involution"
            )));
        }
        if !self.is_central(&z) {
            return Err(GroupError::InvalidParameter(format!("{z} is not central")));
        }
        Ok(Group {
            core: Arc::clone(&self.core),
            involution: Some(z),
        })
    }

    /// Drop the designated involution.
    pub fn without_central_involution(&self) -> Group {
        Group {
            core: Arc::clone(&self.core),
            involution: None,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.core.repr {
            Repr::Abelian { moduli } => Element::new(moduli.iter().map(|_| 0)),
            Repr::Metacyclic { .. } => Element::new([0, 0]),
            Repr::Dihedral { base } | Repr::Dicyclic { base, .. } => {
                Element::with_twist(&base.identity(), 0)
            }
            Repr::Direct { left, right } => Element::concat(&left.identity(), &right.identity()),
            Repr::Quotient { reps, .. } => reps[0].clone(),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        match &self.core.repr {
            Repr::Quotient { reps, .. } => *g == reps[0],
            _ => g.0.iter().all(|&r| r == 0),
        }
    }

    /// Position of `g` in the canonical numbering, or `None` if `g` is not
    /// a valid encoding for this group.
    pub fn index_of(&self, g: &Element) -> Option<usize> {
        if g.width() != self.width() {
            return None;
        }
        match &self.core.repr {
            Repr::Abelian { moduli } => {
                let mut idx = 0usize;
                for (&r, &m) in g.0.iter().zip(moduli) {
                    if r >= m {
                        return None;
                    }
                    idx = idx * m as usize + r as usize;
                }
                Some(idx)
            }
            Repr::Metacyclic { m, .. } => {
                let (i, e) = (g.0[0], g.0[1]);
                (i < *m && e < 2).then(|| i as usize * 2 + e as usize)
            }
            Repr::Dihedral { base } | Repr::Dicyclic { base, .. } => {
                let (a, e) = g.split_twist();
                if e >= 2 {
                    return None;
                }
                base.index_of(&a).map(|i| i * 2 + e as usize)
            }
            Repr::Direct { left, right } => {
                let (a, b) = g.split_at(left.width());
                let i = left.index_of(&a)?;
                let j = right.index_of(&b)?;
                Some(i * right.order() as usize + j)
            }
            Repr::Quotient { reps, .. } => reps.binary_search(g).ok(),
        }
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index_of(g).is_some()
    }

    fn check_member(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::InvalidElement(g.to_string()))
        }
    }

    /// Element at position `index` of the canonical numbering.
    ///
    /// Panics if `index >= order`.
    pub fn element_at(&self, index: usize) -> Element {
        assert!(
            (index as u64) < self.order(),
            "element index {index} out of range"
        );
        match &self.core.repr {
            Repr::Abelian { moduli } => {
                let mut out: SmallVec<[u32; 8]> = SmallVec::from_elem(0, moduli.len());
                let mut rest = index;
                for (slot, &m) in out.iter_mut().zip(moduli).rev() {
                    *slot = (rest % m as usize) as u32;
                    rest /= m as usize;
                }
                Element(out)
            }
            Repr::Metacyclic { .. } => Element::new([(index / 2) as u32, (index % 2) as u32]),
            Repr::Dihedral { base } | Repr::Dicyclic { base, .. } => {
                Element::with_twist(&base.element_at(index / 2), (index % 2) as u32)
            }
            Repr::Direct { left, right } => {
                let n = right.order() as usize;
                Element::concat(&left.element_at(index / n), &right.element_at(index % n))
            }
            Repr::Quotient { reps, .. } => reps[index].clone(),
        }
    }

    /// All elements in canonical (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// Group product. Both arguments must be members of this group.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        match &self.core.repr {
            Repr::Abelian { moduli } => Element(
                a.0.iter()
                    .zip(&b.0)
                    .zip(moduli)
                    .map(|((&x, &y), &m)| ((x as u64 + y as u64) % m as u64) as u32)
                    .collect(),
            ),
            Repr::Metacyclic { m, s, t } => {
                let (m, s, t) = (*m as u64, *s as u64, *t as u64);
                let (i, e) = (a.0[0] as u64, a.0[1]);
                let (j, f) = (b.0[0] as u64, b.0[1]);
                if e == 0 {
                    Element::new([((i + j) % m) as u32, f])
                } else {
                    let exp = (i + t * j + s * f as u64) % m;
                    Element::new([exp as u32, (1 + f) % 2])
                }
            }
            Repr::Dihedral { base } => {
                let (x, e) = a.split_twist();
                let (y, f) = b.split_twist();
                let y = if e == 1 { base.invert(&y) } else { y };
                Element::with_twist(&base.multiply(&x, &y), (e + f) % 2)
            }
            Repr::Dicyclic { base, square } => {
                let (x, e) = a.split_twist();
                let (y, f) = b.split_twist();
                if e == 0 {
                    Element::with_twist(&base.multiply(&x, &y), f)
                } else {
                    let mut prod = base.multiply(&x, &base.invert(&y));
                    if f == 1 {
                        prod = base.multiply(&prod, square);
                    }
                    Element::with_twist(&prod, (1 + f) % 2)
                }
            }
            Repr::Direct { left, right } => {
                let w = left.width();
                let (a1, a2) = a.split_at(w);
                let (b1, b2) = b.split_at(w);
                Element::concat(&left.multiply(&a1, &b1), &right.multiply(&a2, &b2))
            }
            Repr::Quotient { parent, .. } => self.project_unchecked(parent, &parent.multiply(a, b)),
        }
    }

    pub fn invert(&self, a: &Element) -> Element {
        match &self.core.repr {
            Repr::Abelian { moduli } => {
                Element(a.0.iter().zip(moduli).map(|(&x, &m)| (m - x) % m).collect())
            }
            Repr::Metacyclic { m, s, t } => {
                let (m, s, t) = (*m as u64, *s as u64, *t as u64);
                let (i, e) = (a.0[0] as u64, a.0[1]);
                if e == 0 {
                    Element::new([((m - i) % m) as u32, 0])
                } else {
                    // (i,1)(j,1) = (i + t j + s, 0) vanishes for j = -t(i + s)
                    let j = (m - (t * ((i + s) % m)) % m) % m;
                    Element::new([j as u32, 1])
                }
            }
            Repr::Dihedral { base } => {
                let (x, e) = a.split_twist();
                if e == 0 {
                    Element::with_twist(&base.invert(&x), 0)
                } else {
                    a.clone()
                }
            }
            Repr::Dicyclic { base, square } => {
                let (x, e) = a.split_twist();
                if e == 0 {
                    Element::with_twist(&base.invert(&x), 0)
                } else {
                    Element::with_twist(&base.multiply(&x, square), 1)
                }
            }
            Repr::Direct { left, right } => {
                let (a1, a2) = a.split_at(left.width());
                Element::concat(&left.invert(&a1), &right.invert(&a2))
            }
            Repr::Quotient { parent, .. } => self.project_unchecked(parent, &parent.invert(a)),
        }
    }

    fn project_unchecked(&self, parent: &Group, g: &Element) -> Element {
        let Repr::Quotient { reps, coset_of, .. } = &self.core.repr else {
            unreachable!("projection on a non-quotient group")
        };
        let idx = parent
            .index_of(g)
            .expect("parent product is a parent element");
        reps[coset_of[idx] as usize].clone()
    }

    /// Image of a parent element in this quotient group.
    pub fn project(&self, parent_element: &Element) -> Result<Element> {
        match &self.core.repr {
            Repr::Quotient { parent, .. } => {
                parent.check_member(parent_element)?;
                Ok(self.project_unchecked(parent, parent_element))
            }
            _ => Err(GroupError::InvalidParameter("not a quotient group".into())),
        }
    }

    pub fn power(&self, g: &Element, mut k: u64) -> Element {
        let mut result = self.identity();
        let mut base = g.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    pub fn commute(&self, a: &Element, b: &Element) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&self.invert(&ba), &ab)
    }

    pub fn is_central(&self, z: &Element) -> bool {
        self.elements().all(|h| self.commute(z, &h))
    }

    /// Least `k >= 1` with `g^k = 1`, by repeated multiplication.
    pub fn element_order(&self, g: &Element) -> Result<u64> {
        self.check_member(g)?;
        Ok(self.order_of_member(g))
    }

    pub(crate) fn order_of_member(&self, g: &Element) -> u64 {
        let mut k = 1;
        let mut acc = g.clone();
        while !self.is_identity(&acc) {
            acc = self.multiply(&acc, g);
            k += 1;
            debug_assert!(k <= self.order(), "element order exceeds group order");
        }
        k
    }

    /// Commutativity, decided structurally where possible and exhaustively
    /// otherwise.
    pub fn is_abelian(&self) -> bool {
        match &self.core.repr {
            Repr::Abelian { .. } => true,
            Repr::Direct { left, right } => left.is_abelian() && right.is_abelian(),
            Repr::Quotient { parent, .. } if parent.is_abelian() => true,
            _ => {
                let elems: Vec<Element> = self.elements().collect();
                elems
                    .iter()
                    .enumerate()
                    .all(|(i, a)| elems[i + 1..].iter().all(|b| self.commute(a, b)))
            }
        }
    }

    /// Elements of order exactly 2, in canonical order.
    pub fn involutions(&self) -> Vec<Element> {
        self.elements()
            .filter(|g| !self.is_identity(g) && self.is_identity(&self.multiply(g, g)))
            .collect()
    }
}

/// Cyclic group `Z_m` with elements `0..m` under addition.
pub fn cyclic(m: u64) -> Result<Group> {
    abelian(&[m])
}

/// Direct sum of cyclic groups with the given moduli.
pub fn abelian(moduli: &[u64]) -> Result<Group> {
    if moduli.is_empty() {
        return Err(GroupError::InvalidParameter("empty list of moduli".into()));
    }
    if let Some(&m) = moduli.iter().find(|&&m| m == 0) {
        return Err(GroupError::InvalidParameter(format!(
            "modulus {m} must be positive"
        )));
    }
    let order = moduli
        .iter()
        .try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
        .unwrap_or(u128::MAX);
    let order = check_cap(order)?;
    let moduli: Vec<u32> = moduli.iter().map(|&m| m as u32).collect();
    // involution of the largest factor, the last one among equals
    let involution = moduli
        .iter()
        .enumerate()
        .max_by_key(|&(i, &m)| (m, i))
        .filter(|&(_, &m)| m % 2 == 0)
        .map(|(pos, &m)| {
            Element::new(
                moduli
                    .iter()
                    .enumerate()
                    .map(|(i, _)| if i == pos { m / 2 } else { 0 }),
            )
        });
    let mut g = Group::from_core(order, moduli.len(), Repr::Abelian { moduli });
    g.involution = involution;
    Ok(g)
}

/// Elementary abelian group `Z_p^k`.
pub fn elementary_abelian(p: u64, k: usize) -> Result<Group> {
    abelian(&vec![p; k])
}

pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let order = check_cap(g.order() as u128 * h.order() as u128)?;
    let involution = match (g.central_involution(), h.central_involution()) {
        (_, Some(zh)) => Some(Element::concat(&g.identity(), zh)),
        (Some(zg), None) => Some(Element::concat(zg, &h.identity())),
        (None, None) => None,
    };
    let mut out = Group::from_core(
        order,
        g.width() + h.width(),
        Repr::Direct {
            left: g.clone(),
            right: h.clone(),
        },
    );
    out.involution = involution;
    Ok(out)
}

/// `<x, y | x^m = 1, y^2 = x^s, y^-1 x y = x^t>` of order `2m`.
pub fn metacyclic2(m: u64, s: u64, t: u64) -> Result<Group> {
    if m == 0 {
        return Err(GroupError::InvalidParameter("m must be positive".into()));
    }
    if s >= m || t >= m {
        return Err(GroupError::InvalidParameter(format!(
            "s={s}, t={t} must be residues mod {m}"
        )));
    }
    let order = check_cap(2 * m as u128)?;
    if (t * t) % m != 1 % m {
        return Err(GroupError::InvalidPresentation(format!(
            "t^2 = {t}^2 is not 1 mod {m}"
        )));
    }
    if (s * t) % m != s {
        return Err(GroupError::InvalidPresentation(format!(
            "s*t = {s}*{t} is not s mod {m}"
        )));
    }
    let mut g = Group::from_core(
        order,
        2,
        Repr::Metacyclic {
            m: m as u32,
            s: s as u32,
            t: t as u32,
        },
    );
    if m.is_multiple_of(2) && t % 2 == 1 {
        g.involution = Some(Element::new([(m / 2) as u32, 0]));
    }
    Ok(g)
}

fn two_group_order(order: u64, min: u64, family: &str) -> Result<()> {
    if !is_power_of_two(order) || order < min {
        return Err(GroupError::InvalidParameter(format!(
            "{family} needs a power-of-two order >= {min}, got {order}"
        )));
    }
    Ok(())
}

/// Dihedral group of the given (even) order.
pub fn dihedral(order: u64) -> Result<Group> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral order {order} must be even and >= 4"
        )));
    }
    let m = order / 2;
    metacyclic2(m, 0, m - 1)
}

/// Generalized quaternion group `Q_{2^n}`, `n >= 3`.
pub fn quaternion(order: u64) -> Result<Group> {
    two_group_order(order, 8, "generalized quaternion group")?;
    let m = order / 2;
    metacyclic2(m, m / 2, m - 1)
}

/// Quasi-dihedral group `S_{2^n}`, `n >= 4`.
pub fn quasi_dihedral(order: u64) -> Result<Group> {
    two_group_order(order, 16, "quasi-dihedral group")?;
    let m = order / 2;
    metacyclic2(m, 0, m / 2 - 1)
}

/// Modular group `M(2^n)`, `n >= 4`.
pub fn modular(order: u64) -> Result<Group> {
    two_group_order(order, 16, "modular group")?;
    let m = order / 2;
    metacyclic2(m, 0, m / 2 + 1)
}

/// `D(A)`: the abelian group `A` extended by an involution acting by inversion.
pub fn generalized_dihedral(base: &Group) -> Result<Group> {
    if !base.is_abelian() {
        return Err(GroupError::InvalidParameter(
            "generalized dihedral group needs an abelian base".into(),
        ));
    }
    let order = check_cap(2 * base.order() as u128)?;
    let involution = base.central_involution().map(|z| Element::with_twist(z, 0));
    let mut g = Group::from_core(
        order,
        base.width() + 1,
        Repr::Dihedral { base: base.clone() },
    );
    g.involution = involution;
    Ok(g)
}

/// `Dic(A)` with `gamma^2 = square`, an involution of the abelian group `A`.
pub fn generalized_dicyclic(base: &Group, square: &Element) -> Result<Group> {
    if !base.is_abelian() {
        return Err(GroupError::InvalidParameter(
            "generalized dicyclic group needs an abelian base".into(),
        ));
    }
    base.check_member(square).map_err(|_| {
        GroupError::InvalidParameter(format!("{square} is not an element of the base"))
    })?;
    if base.is_identity(square) || !base.is_identity(&base.multiply(square, square)) {
        return Err(GroupError::InvalidParameter(format!(
            "{square} is not an involution of the base"
        )));
    }
    let order = check_cap(2 * base.order() as u128)?;
    let mut g = Group::from_core(
        order,
        base.width() + 1,
        Repr::Dicyclic {
            base: base.clone(),
            square: square.clone(),
        },
    );
    g.involution = Some(Element::with_twist(square, 0));
    Ok(g)
}

/// The involution lying in a largest cyclic factor of an abelian group: the
/// appropriate power of the first element of maximal order.
pub fn default_dicyclic_square(base: &Group) -> Result<Element> {
    let (g, ord) = base
        .elements()
        .map(|g| {
            let o = base.order_of_member(&g);
            (g, o)
        })
        .fold(None::<(Element, u64)>, |best, (g, o)| match best {
            Some((_, bo)) if bo >= o => best,
            _ => Some((g, o)),
        })
        .expect("groups are nonempty");
    if ord % 2 != 0 {
        return Err(GroupError::InvalidParameter(
            "base group has no involution".into(),
        ));
    }
    Ok(base.power(&g, ord / 2))
}

/// Sorted list of canonical encodings, used for subgroups and normal subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet(Vec<Element>);

impl ElementSet {
    pub fn new(elements: impl IntoIterator<Item = Element>) -> Self {
        let mut v: Vec<Element> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        ElementSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.0.binary_search(g).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.0
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Check that `subset` is a subgroup of `g`.
pub fn check_subgroup(g: &Group, subset: &ElementSet) -> Result<()> {
    if let Some(bad) = subset.iter().find(|x| !g.contains(x)) {
        return Err(GroupError::InvalidElement(bad.to_string()));
    }
    if !subset.contains(&g.identity()) {
        return Err(GroupError::NotASubgroup("identity missing".into()));
    }
    for a in subset {
        if !subset.contains(&g.invert(a)) {
            return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
        }
        for b in subset {
            let ab = g.multiply(a, b);
            if !subset.contains(&ab) {
                return Err(GroupError::NotASubgroup(format!("{a}*{b} = {ab} missing")));
            }
        }
    }
    Ok(())
}

pub fn is_normal(g: &Group, subgroup: &ElementSet) -> bool {
    g.elements().all(|x| {
        let xi = g.invert(&x);
        subgroup
            .iter()
            .all(|n| subgroup.contains(&g.multiply(&g.multiply(&x, n), &xi)))
    })
}

/// `G/N` with lexicographically least coset representatives.
pub fn quotient(g: &Group, normal: &ElementSet) -> Result<Group> {
    check_subgroup(g, normal)?;
    if !is_normal(g, normal) {
        return Err(GroupError::NotNormal);
    }
    Ok(quotient_unchecked(g, normal))
}

fn quotient_unchecked(g: &Group, normal: &ElementSet) -> Group {
    let n = g.order() as usize;
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(n / normal.len());
    for i in 0..n {
        if coset_of[i] != u32::MAX {
            continue;
        }
        // the first unassigned index is the least member of its coset
        let rep = g.element_at(i);
        let pos = reps.len() as u32;
        for m in normal {
            let j = g.index_of(&g.multiply(&rep, m)).expect("coset member");
            coset_of[j] = pos;
        }
        reps.push(rep);
    }
    let order = reps.len() as u64;
    Group::from_core(
        order,
        g.width(),
        Repr::Quotient {
            parent: g.clone(),
            reps,
            coset_of,
        },
    )
}

/// External central product identifying the designated involutions.
pub fn central_product(g: &Group, h: &Group) -> Result<Group> {
    let zg = g.central_involution().ok_or_else(|| {
        GroupError::InvalidParameter("left factor has no designated central involution".into())
    })?;
    let zh = h.central_involution().ok_or_else(|| {
        GroupError::InvalidParameter("right factor has no designated central involution".into())
    })?;
    for (grp, z) in [(g, zg), (h, zh)] {
        if !grp.is_identity(&grp.multiply(z, z)) || grp.is_identity(z) || !grp.is_central(z) {
            return Err(GroupError::InvalidParameter(format!(
                "{z} is not a central involution"
            )));
        }
    }
    let product = direct_product(
        &g.without_central_involution(),
        &h.without_central_involution(),
    )?;
    let diagonal = ElementSet::new([product.identity(), Element::concat(zg, zh)]);
    let mut out = quotient_unchecked(&product, &diagonal);
    let image = out.project_unchecked(&product, &Element::concat(zg, &h.identity()));
    out.involution = Some(image);
    Ok(out)
}

/// Central product of the groups in order, associating to the left.
pub fn central_product_all(factors: &[Group]) -> Result<Group> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| GroupError::InvalidParameter("empty central product".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, h| central_product(&acc, h))
}

fn extraspecial_rank(order: u64, offset: u32, family: &str) -> Result<u32> {
    if is_power_of_two(order) {
        let e = order.trailing_zeros();
        if e > offset && (e - offset).is_multiple_of(2) {
            return Ok((e - offset) / 2);
        }
    }
    Err(GroupError::InvalidParameter(format!(
        "no {family} group of order {order}"
    )))
}

/// `D8^{*r}` of order `2^{2r+1}`.
pub fn extraspecial_plus(order: u64) -> Result<Group> {
    let r = extraspecial_rank(order, 1, "extraspecial")?;
    check_cap(order as u128)?;
    central_product_all(&vec![dihedral(8)?; r as usize])
}

/// `Q8 * D8^{*(r-1)}` of order `2^{2r+1}`.
pub fn extraspecial_minus(order: u64) -> Result<Group> {
    let r = extraspecial_rank(order, 1, "extraspecial")?;
    check_cap(order as u128)?;
    let mut factors = vec![quaternion(8)?];
    factors.extend(std::iter::repeat_n(dihedral(8)?, r as usize - 1));
    central_product_all(&factors)
}

/// `D8^{*r} * Z4` of order `2^{2r+2}`.
pub fn almost_extraspecial(order: u64) -> Result<Group> {
    let r = extraspecial_rank(order, 2, "almost extraspecial")?;
    check_cap(order as u128)?;
    let mut factors = vec![dihedral(8)?; r as usize];
    factors.push(cyclic(4)?);
    central_product_all(&factors)
}

/// Exhaustive check of the group axioms; returns a description of the
/// first violation.
pub fn check_axioms(g: &Group) -> std::result::Result<(), String> {
    let elems: Vec<Element> = g.elements().collect();
    let distinct: HashSet<&Element> = elems.iter().collect();
    if distinct.len() as u64 != g.order() {
        return Err(format!(
            "{} distinct elements, order {}",
            distinct.len(),
            g.order()
        ));
    }
    for (i, e) in elems.iter().enumerate() {
        if g.index_of(e) != Some(i) {
            return Err(format!("index of {e} is not {i}"));
        }
    }
    let id = g.identity();
    for a in &elems {
        if g.multiply(&id, a) != *a || g.multiply(a, &id) != *a {
            return Err(format!("identity law fails at {a}"));
        }
        if !g.is_identity(&g.multiply(&g.invert(a), a))
            || !g.is_identity(&g.multiply(a, &g.invert(a)))
        {
            return Err(format!("inverse law fails at {a}"));
        }
        for b in &elems {
            let ab = g.multiply(a, b);
            if !g.contains(&ab) {
                return Err(format!("{a}*{b} = {ab} is not an element"));
            }
        }
    }
    for a in &elems {
        for b in &elems {
            let ab = g.multiply(a, b);
            for c in &elems {
                if g.multiply(&ab, c) != g.multiply(a, &g.multiply(b, c)) {
                    return Err(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}
