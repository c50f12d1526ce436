//! Genus theory: subsets of ramified primes onto `Cl+(K)[2]`.
//!
//! The genus map sends `I`, a subset of the ramified primes, to the narrow
//! class of `prod_{p in I} P_p`, where `P_p^2 = (p)`. Its kernel has two
//! elements and its image is all of `Cl+(K)[2]`, so the 2-rank of `Cl+(K)`
//! is `r - 1`. The kernel is computed here, not assumed.

use serde::{Deserialize, Serialize};

use crate::bqf::{ambiguous_form, compose, principal_form, ClassGroup, Form};
use crate::error::{Error, Result};
use crate::quadfield::{has_norm_minus_one, QuadField};

/// A subset of the ramified primes as a bitmask over their ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusSubset {
    pub mask: u32,
}

impl GenusSubset {
    pub fn new(field: &QuadField, mask: u32) -> Result<Self> {
        if field.r < 32 && mask >> field.r != 0 {
            return Err(Error::invalid(format!(
                "mask {mask:#b} exceeds {} ramified primes",
                field.r
            )));
        }
        Ok(GenusSubset { mask })
    }

    /// Selects primes by value.
    pub fn from_primes(field: &QuadField, primes: &[u64]) -> Result<Self> {
        let mut mask = 0;
        for p in primes {
            let i = field
                .ramified
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| Error::invalid(format!("{p} is not ramified in Q(sqrt {})", field.d)))?;
            mask |= 1 << i;
        }
        Ok(GenusSubset { mask })
    }

    pub fn primes(&self, field: &QuadField) -> Vec<u64> {
        field
            .ramified
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelGeneratorKind {
    /// All ramified primes.
    E,
    /// The primes dividing `d`, i.e. the ideal `(sqrt d)`.
    SupportD,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub d: i64,
    #[serde(rename = "D")]
    pub disc: i64,
    pub r: usize,
    pub rank2: usize,
    pub kernel_masks: Vec<u32>,
    pub kernel_generator_kind: KernelGeneratorKind,
    pub image_is_two_torsion: bool,
    pub gauss_holds: bool,
    pub wide_rank: usize,
}

/// 2-torsion of the wide class group `Cl(K) = Cl+(K) / <c>`, where `c` is the
/// narrow class of `(sqrt d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WideReport {
    pub narrow_rank: usize,
    pub wide_rank: usize,
    /// Index of `c` in the class group.
    pub c_class: usize,
    pub c_principal: bool,
    pub norm_minus_one: bool,
    /// `c` principal exactly when a norm -1 unit exists (always true for `d < 0`).
    pub consistent: bool,
}

/// A field with its narrow class group and the classes of the ramified primes.
#[derive(Debug, Clone)]
pub struct Genus {
    pub field: QuadField,
    pub group: ClassGroup,
    ambiguous: Vec<Form>,
}

impl Genus {
    pub fn new(field: QuadField, max_class_number: usize) -> Result<Self> {
        let group = ClassGroup::compute(field.disc, max_class_number)?;
        Self::with_group(field, group)
    }

    /// Reuses an already computed class group (e.g. from a cache).
    pub fn with_group(field: QuadField, group: ClassGroup) -> Result<Self> {
        if group.disc != field.disc {
            return Err(Error::invalid("class group belongs to another discriminant"));
        }
        let ambiguous = field
            .ramified
            .iter()
            .map(|&p| ambiguous_form(p, field.disc))
            .collect::<Result<_>>()?;
        Ok(Genus {
            field,
            group,
            ambiguous,
        })
    }

    /// Class of the product of the ramified primes in `subset`, composed in
    /// ascending order of the primes.
    pub fn genus_map(&self, subset: GenusSubset) -> Result<usize> {
        let mut acc = principal_form(self.field.disc)?;
        for (i, &amb) in self.ambiguous.iter().enumerate() {
            if subset.mask >> i & 1 == 1 {
                acc = compose(acc, amb)?;
            }
        }
        self.group.class_of(acc)
    }

    fn all_masks(&self) -> impl Iterator<Item = GenusSubset> {
        (0..1u32 << self.field.r).map(|mask| GenusSubset { mask })
    }

    /// Masks sent to the principal class, ascending.
    pub fn kernel(&self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for s in self.all_masks() {
            if self.genus_map(s)? == self.group.identity() {
                out.push(s.mask);
            }
        }
        Ok(out)
    }

    pub fn classify_kernel(&self, kernel: &[u32]) -> KernelGeneratorKind {
        match kernel {
            [0, g] if *g == self.field.full_mask() => KernelGeneratorKind::E,
            [0, g] if *g == self.field.support_of_d_mask() => KernelGeneratorKind::SupportD,
            _ => KernelGeneratorKind::Other,
        }
    }

    pub fn wide_two_torsion(&self) -> Result<WideReport> {
        let g = &self.group;
        let narrow_rank = g.two_rank();
        let c = self.genus_map(GenusSubset {
            mask: self.field.support_of_d_mask(),
        })?;
        let c_principal = c == g.identity();
        if !self.field.is_real {
            return Ok(WideReport {
                narrow_rank,
                wide_rank: narrow_rank,
                c_class: c,
                c_principal,
                norm_minus_one: false,
                consistent: c_principal,
            });
        }
        let norm_minus_one = has_norm_minus_one(&self.field)?;
        let subgroup = [g.identity(), c];
        // cosets x<c> with x^2 in <c>
        let hits = (0..g.order())
            .filter(|&x| subgroup.contains(&g.mul(x, x)))
            .count();
        let coset_size = if c_principal { 1 } else { 2 };
        let count = hits / coset_size;
        Ok(WideReport {
            narrow_rank,
            wide_rank: count.trailing_zeros() as usize,
            c_class: c,
            c_principal,
            norm_minus_one,
            consistent: c_principal == norm_minus_one,
        })
    }

    pub fn verify_gauss(&self) -> Result<GenusReport> {
        let kernel = self.kernel()?;
        let mut image: Vec<usize> = self
            .all_masks()
            .map(|s| self.genus_map(s))
            .collect::<Result<_>>()?;
        image.sort_unstable();
        image.dedup();
        let image_is_two_torsion = image == self.group.two_torsion();
        let rank2 = self.group.two_rank();
        let wide = self.wide_two_torsion()?;
        Ok(GenusReport {
            d: self.field.d,
            disc: self.field.disc,
            r: self.field.r,
            rank2,
            kernel_generator_kind: self.classify_kernel(&kernel),
            kernel_masks: kernel,
            image_is_two_torsion,
            gauss_holds: rank2 + 1 == self.field.r,
            wide_rank: wide.wide_rank,
        })
    }
}

/// Convenience wrapper: full report for `Q(sqrt d)`.
pub fn verify_gauss(d: i64, max_class_number: usize) -> Result<GenusReport> {
    Genus::new(QuadField::from_d(d)?, max_class_number)?.verify_gauss()
}
