use std::sync::Arc;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::perm::{conjugacy_classes, ConjugacyClasses, Permutation, PermutationGroup};

use super::cyclotomic::{Cyclotomic, CyclotomicRepr, Rational};

/// Largest group for which classes and character tables are computed.
pub const CLASS_CAP: u64 = 10_000;

/// A group together with its conjugacy classes; shared by every class
/// function on that group.
pub struct ClassData {
    group: PermutationGroup,
    classes: ConjugacyClasses,
}

impl ClassData {
    pub fn new(group: &PermutationGroup) -> Result<Arc<Self>> {
        check_cap("group order for class functions", group.order(), CLASS_CAP)?;
        let classes = conjugacy_classes(group)?;
        Ok(Arc::new(ClassData { group: group.clone(), classes }))
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    fn same(&self, other: &ClassData) -> bool {
        std::ptr::eq(self, other) || self.group.same_group(&other.group)
    }
}

/// A class function: one exact value per conjugacy class.
#[derive(Clone)]
pub struct ClassFunction {
    data: Arc<ClassData>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(data: &Arc<ClassData>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != data.num_classes() {
            return Err(Error::Precondition(format!(
                "{} values for {} classes",
                values.len(),
                data.num_classes()
            )));
        }
        Ok(ClassFunction { data: data.clone(), values })
    }

    pub fn from_fn(data: &Arc<ClassData>, f: impl Fn(&Permutation) -> Cyclotomic) -> Self {
        let values = data.classes.reps().iter().map(f).collect();
        ClassFunction { data: data.clone(), values }
    }

    pub fn trivial(data: &Arc<ClassData>) -> Self {
        ClassFunction { data: data.clone(), values: vec![Cyclotomic::one(); data.num_classes()] }
    }

    /// `|G|` at the identity, zero elsewhere.
    pub fn regular(data: &Arc<ClassData>) -> Self {
        let mut values = vec![Cyclotomic::zero(); data.num_classes()];
        values[0] = Cyclotomic::from_integer(data.order() as i64);
        ClassFunction { data: data.clone(), values }
    }

    pub fn zero(data: &Arc<ClassData>) -> Self {
        ClassFunction { data: data.clone(), values: vec![Cyclotomic::zero(); data.num_classes()] }
    }

    pub fn data(&self) -> &Arc<ClassData> {
        &self.data
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.data.group
    }

    pub fn class_reps(&self) -> &[Permutation] {
        self.data.classes.reps()
    }

    pub fn class_sizes(&self) -> &[u64] {
        self.data.classes.sizes()
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn value_at(&self, g: &Permutation) -> Result<&Cyclotomic> {
        let c = self.data.classes.class_of(g).ok_or(Error::NotInGroup)?;
        Ok(&self.values[c])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if self.data.same(&other.data) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { data: self.data.clone(), values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { data: self.data.clone(), values })
    }

    pub fn scale(&self, q: &Rational) -> ClassFunction {
        ClassFunction { data: self.data.clone(), values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction { data: self.data.clone(), values: self.values.iter().map(Cyclotomic::conj).collect() }
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { data: self.data.clone(), values })
    }

    /// `(1/|G|) Σ_g χ(g) conj(ψ(g))`, possibly irrational for arbitrary class functions.
    pub fn inner_product_cyclotomic(&self, other: &ClassFunction) -> Result<Cyclotomic> {
        self.check_same(other)?;
        let sizes = self.data.classes.sizes();
        let sum: Cyclotomic = self
            .values
            .iter()
            .zip(&other.values)
            .zip(sizes)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), &h)| (a * &b.conj()).scale(&int(h as i64)))
            .sum();
        Ok(sum.scale(&Rational::new(1.into(), (self.data.order() as i64).into())))
    }

    /// Inner product; an error if it is not rational.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Rational> {
        self.inner_product_cyclotomic(other)?
            .to_rational()
            .ok_or_else(|| Error::NotACharacter("inner product is not rational".into()))
    }

    /// Restriction to a subgroup, given the subgroup's class data.
    pub fn restrict(&self, h: &Arc<ClassData>) -> Result<ClassFunction> {
        if !h.group.is_subgroup_of(&self.data.group) {
            return Err(Error::NotSubgroup);
        }
        let values = h
            .classes
            .reps()
            .iter()
            .map(|r| self.value_at(r).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { data: h.clone(), values })
    }

    /// Induction to an overgroup:
    /// `Ind(g) = |C_G(g)| Σ_{H-classes c ⊆ g^G} χ(c) / |C_H(c)|`.
    pub fn induce(&self, g: &Arc<ClassData>) -> Result<ClassFunction> {
        let h = &self.data;
        if !h.group.is_subgroup_of(&g.group) {
            return Err(Error::NotSubgroup);
        }
        let mut values = vec![Cyclotomic::zero(); g.num_classes()];
        for (c, rep) in h.classes.reps().iter().enumerate() {
            if self.values[c].is_zero() {
                continue;
            }
            let gc = g.classes.class_of(rep).ok_or(Error::NotSubgroup)?;
            let w = Rational::new(
                (g.classes.centralizer_order(gc) as i64).into(),
                (h.classes.centralizer_order(c) as i64).into(),
            );
            values[gc] = &values[gc] + &self.values[c].scale(&w);
        }
        Ok(ClassFunction { data: g.clone(), values })
    }

    /// Frobenius formula `(1/|H|) Σ_{t ∈ G, t g t⁻¹ ∈ H} χ(t g t⁻¹)`, evaluated by
    /// brute force over `G`; an independent check of [`ClassFunction::induce`].
    pub fn induce_brute(&self, g: &Arc<ClassData>) -> Result<ClassFunction> {
        let h = &self.data;
        if !h.group.is_subgroup_of(&g.group) {
            return Err(Error::NotSubgroup);
        }
        let elems = g.classes.elements();
        let values = g
            .classes
            .reps()
            .iter()
            .map(|x| {
                let mut acc = Cyclotomic::zero();
                for t in &elems.elements {
                    let y = t.conjugate(x);
                    if let Some(c) = h.classes.class_of(&y) {
                        acc = &acc + &self.values[c];
                    }
                }
                acc.scale(&Rational::new(1.into(), (h.order() as i64).into()))
            })
            .collect();
        Ok(ClassFunction { data: g.clone(), values })
    }

    /// Serialisable form with 1-based cycle notation for representatives.
    pub fn to_repr(&self) -> ClassFunctionRepr {
        ClassFunctionRepr {
            class_reps: self.class_reps().iter().map(|r| r.to_string()).collect(),
            class_sizes: self.class_sizes().to_vec(),
            values: self.values.iter().map(Cyclotomic::to_repr).collect(),
        }
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.data.same(&other.data) && self.values == other.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFunctionRepr {
    pub class_reps: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub values: Vec<CyclotomicRepr>,
}

fn int(i: i64) -> Rational {
    Rational::from_integer(i.into())
}

pub(crate) fn rational_is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && *q >= Rational::zero()
}
