//! 2-torsion of the Picard group of a double cover from its branch data.
//!
//! For a double cover `X -> S` branched along components `E_1..E_R`, let
//! `phi: (Z/2)^R -> Pic(S) (x) Z/2` send `e_i` to `[E_i]`. When `Pic(S)` has
//! no 2-torsion, `Pic(X)[2]` is `Ker phi / <e>` with `e = e_1 + ... + e_R`.
//! Otherwise the sequence `0 -> Pic(S)[2] -> Pic(X)^G[2] -> Ker phi / <e> -> 0`
//! splits and the ranks add.
//!
//! A kernel element `sum_{i in I} e_i` has `sum E_i = 2L` and corresponds to
//! the class `sum_{i in I} F_i - pi^* L`, with `F_i` the preimage of `E_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, Gf2Matrix, Gf2Vec};

/// Classes of the branch components in `Pic(S) (x) Z/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BranchConfigurationRecord", try_from = "BranchConfigurationRecord")]
pub struct BranchConfiguration {
    /// `m x R`; column `i` is `[E_i]`.
    phi: Gf2Matrix,
    /// Rank of `Pic(S)[2]`.
    pub pic_two_rank: usize,
}

/// File format of a branch configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchConfigurationRecord {
    pub n_components: usize,
    pub ambient_rank: usize,
    #[serde(default)]
    pub pic_two_rank: usize,
    /// `ambient_rank` rows of `n_components` entries each.
    pub phi_matrix: Vec<Vec<u8>>,
}

impl From<BranchConfiguration> for BranchConfigurationRecord {
    fn from(c: BranchConfiguration) -> Self {
        BranchConfigurationRecord {
            n_components: c.n_components(),
            ambient_rank: c.ambient_rank(),
            pic_two_rank: c.pic_two_rank,
            phi_matrix: (0..c.phi.nrows()).map(|i| c.phi.row(i).to_bits()).collect(),
        }
    }
}

impl TryFrom<BranchConfigurationRecord> for BranchConfiguration {
    type Error = Error;

    fn try_from(rec: BranchConfigurationRecord) -> Result<Self> {
        if rec.phi_matrix.len() != rec.ambient_rank {
            return Err(Error::invalid(format!(
                "phi_matrix has {} rows, ambient_rank is {}",
                rec.phi_matrix.len(),
                rec.ambient_rank
            )));
        }
        let mut rows = Vec::with_capacity(rec.ambient_rank);
        for (i, row) in rec.phi_matrix.iter().enumerate() {
            if row.len() != rec.n_components {
                return Err(Error::invalid(format!(
                    "phi_matrix row {i} has {} entries, expected {}",
                    row.len(),
                    rec.n_components
                )));
            }
            if let Some(bad) = row.iter().find(|&&x| x > 1) {
                return Err(Error::invalid(format!("phi_matrix entry {bad} is not 0 or 1")));
            }
            rows.push(Gf2Vec::from_bits(&row.iter().map(|&x| x == 1).collect::<Vec<_>>()));
        }
        BranchConfiguration::new(Gf2Matrix::from_rows(rec.n_components, rows), rec.pic_two_rank)
    }
}

impl BranchConfiguration {
    pub fn new(phi: Gf2Matrix, pic_two_rank: usize) -> Result<Self> {
        if phi.ncols() == 0 {
            return Err(Error::invalid("a branched double cover needs at least one branch component"));
        }
        Ok(BranchConfiguration { phi, pic_two_rank })
    }

    /// Builds `phi` from integral classes of the components: column `i` is
    /// the parity vector of `components[i]`.
    pub fn from_divisors(components: &[DivisorVector], pic_two_rank: usize) -> Result<Self> {
        let m = components.first().map_or(0, |c| c.coords.len());
        let mut phi = Gf2Matrix::zeros(m, components.len());
        for (j, comp) in components.iter().enumerate() {
            if comp.coords.len() != m {
                return Err(Error::invalid("components use different bases"));
            }
            for (i, &x) in comp.coords.iter().enumerate() {
                phi.set(i, j, x.rem_euclid(2) == 1);
            }
        }
        Self::new(phi, pic_two_rank)
    }

    /// `S = Spec Z`: no ambient classes, one component per ramified prime.
    pub fn arithmetic(ramified_count: usize) -> Result<Self> {
        Self::new(Gf2Matrix::zeros(0, ramified_count), 0)
    }

    pub fn n_components(&self) -> usize {
        self.phi.ncols()
    }

    pub fn ambient_rank(&self) -> usize {
        self.phi.nrows()
    }

    pub fn phi(&self) -> &Gf2Matrix {
        &self.phi
    }

    pub fn all_ones(&self) -> Gf2Vec {
        Gf2Vec::ones(self.n_components())
    }

    pub fn apply(&self, subset: &Gf2Vec) -> Gf2Vec {
        self.phi.mul_vec(subset)
    }

    fn check_even(&self) -> Result<()> {
        if self.apply(&self.all_ones()).is_zero() {
            Ok(())
        } else {
            Err(Error::BranchNotEven)
        }
    }
}

/// `Ker phi` and coset representatives of `Ker phi / <e>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelQuotient {
    pub kernel_basis: Vec<Gf2Vec>,
    /// Independent modulo `e`; `representatives.len() = dim Ker phi - 1`.
    pub representatives: Vec<Gf2Vec>,
}

impl KernelQuotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn kernel_mod_e(config: &BranchConfiguration) -> Result<KernelQuotient> {
    config.check_even()?;
    let kernel_basis = config.phi.kernel();
    let mut span = EchelonBasis::new();
    span.insert(&config.all_ones());
    let representatives = kernel_basis
        .iter()
        .filter(|v| span.insert(v))
        .cloned()
        .collect();
    Ok(KernelQuotient {
        kernel_basis,
        representatives,
    })
}

/// Rank of `Pic(X)^G[2]`: `rank Pic(S)[2] + dim Ker phi / <e>`.
pub fn two_torsion_rank(config: &BranchConfiguration) -> Result<usize> {
    Ok(config.pic_two_rank + kernel_mod_e(config)?.dim())
}

/// The 2-torsion class attached to a kernel element `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftDescription {
    /// Component indices in `I`, ascending.
    pub subset: Vec<usize>,
    pub n_components: usize,
    pub half_class: String,
    /// `sum_{i in I} E_i = 2 L`.
    pub relation: String,
    /// `sum_{i in I} F_i - pi^* L`.
    pub expression: String,
}

impl LiftDescription {
    /// Presentations agree up to replacing `I` by its complement.
    pub fn is_equivalent(&self, other: &LiftDescription) -> bool {
        if self.n_components != other.n_components {
            return false;
        }
        let mine = Gf2Vec::from_indices(self.n_components, &self.subset);
        let theirs = Gf2Vec::from_indices(other.n_components, &other.subset);
        mine == theirs || mine.complement() == theirs
    }

    pub fn is_trivial(&self) -> bool {
        self.subset.is_empty() || self.subset.len() == self.n_components
    }
}

pub fn lift_element(
    config: &BranchConfiguration,
    subset: &[usize],
    half_class: &str,
) -> Result<LiftDescription> {
    let n = config.n_components();
    if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
        return Err(Error::invalid(format!("component index {bad} out of range")));
    }
    let v = Gf2Vec::from_indices(n, subset);
    if !config.apply(&v).is_zero() {
        return Err(Error::NotInKernel);
    }
    let indices = v.ones_indices();
    let (relation, expression) = if indices.is_empty() {
        ("0 = 2*0".to_string(), "0".to_string())
    } else {
        let sum = |sym: &str| {
            indices
                .iter()
                .map(|i| format!("{sym}_{}", i + 1))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        (
            format!("{} = 2*{half_class}", sum("E")),
            format!("{} - pi^*({half_class})", sum("F")),
        )
    };
    Ok(LiftDescription {
        subset: indices,
        n_components: n,
        half_class: half_class.to_string(),
        relation,
        expression,
    })
}

/// Integral divisor class in a declared free basis of `Pic(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorVector {
    pub basis: Vec<String>,
    pub coords: Vec<i64>,
}

impl DivisorVector {
    pub fn new(basis: &[String], coords: Vec<i64>) -> Self {
        assert_eq!(basis.len(), coords.len());
        DivisorVector {
            basis: basis.to_vec(),
            coords,
        }
    }

    pub fn add(&self, other: &DivisorVector) -> DivisorVector {
        assert_eq!(self.basis, other.basis);
        DivisorVector {
            basis: self.basis.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> DivisorVector {
        DivisorVector {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }
}

/// `Some(v / 2)` when every coordinate is even. Valid because dataset bases
/// are free, so divisibility in `Pic(S)` is coordinatewise.
pub fn is_two_divisible(v: &DivisorVector) -> Option<DivisorVector> {
    v.coords.iter().all(|x| x % 2 == 0).then(|| DivisorVector {
        basis: v.basis.clone(),
        coords: v.coords.iter().map(|x| x / 2).collect(),
    })
}

/// A divisor expected to be 2-divisible, with the expected half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCheck {
    pub name: String,
    pub divisor: DivisorVector,
    pub expected_half: DivisorVector,
}

impl ParityCheck {
    pub fn passes(&self) -> bool {
        is_two_divisible(&self.divisor).as_ref() == Some(&self.expected_half)
    }
}

/// Branch data of a double cover together with its integral relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub basis: Vec<String>,
    pub components: Vec<(String, DivisorVector)>,
    pub config: BranchConfiguration,
    pub parity_checks: Vec<ParityCheck>,
}

fn sum_all<'a>(basis: &[String], parts: impl IntoIterator<Item = &'a DivisorVector>) -> DivisorVector {
    parts
        .into_iter()
        .fold(DivisorVector::new(basis, vec![0; basis.len()]), |acc, v| acc.add(v))
}

/// Basis `b*L, F, E~_1..E~_5, E'_1..E'_5` of the blown-up plane.
fn plane_blowup_basis() -> Vec<String> {
    let mut basis = vec!["b*L".to_string(), "F".to_string()];
    basis.extend((1..=5).map(|i| format!("E~{i}")));
    basis.extend((1..=5).map(|i| format!("E'{i}")));
    basis
}

/// `E~_i` for `i` in `1..=5`.
fn tilde_e(basis: &[String], i: usize) -> DivisorVector {
    let mut coords = vec![0; basis.len()];
    coords[1 + i] = 1;
    DivisorVector::new(basis, coords)
}

/// Coordinates `(l, f, [tilde; 5], [prime; 5])`.
fn plane_class(basis: &[String], l: i64, f: i64, tilde: [i64; 5], prime: [i64; 5]) -> DivisorVector {
    let mut coords = vec![l, f];
    coords.extend(tilde);
    coords.extend(prime);
    DivisorVector::new(basis, coords)
}

/// Double plane branched along a degree-10 curve with a quadruple point and
/// five `(3,3)` points. Branch components: `C~` and `E~_1..E~_5`, where
/// `C~ = 10 b*L - 4F - sum (3 E~_i + 6 E'_i)`.
pub fn dataset_campedelli() -> Dataset {
    let basis = plane_blowup_basis();
    let c = plane_class(&basis, 10, -4, [-3; 5], [-6; 5]);
    let mut components = vec![("C~".to_string(), c)];
    components.extend((1..=5).map(|i| (format!("E~{i}"), tilde_e(&basis, i))));
    let branch = sum_all(&basis, components.iter().map(|(_, v)| v));
    let check = ParityCheck {
        name: "C~ + sum E~_i".to_string(),
        divisor: branch,
        expected_half: plane_class(&basis, 5, -2, [-1; 5], [-3; 5]),
    };
    let divisors: Vec<DivisorVector> = components.iter().map(|(_, v)| v.clone()).collect();
    Dataset {
        name: "campedelli".to_string(),
        config: BranchConfiguration::from_divisors(&divisors, 0).expect("nonempty"),
        basis,
        components,
        parity_checks: vec![check],
    }
}

/// The branch curve split as an octic `B` plus a conic `Q` through
/// `p_1..p_4`, with `Q~ + E~_1 + ... + E~_4 = 2 b*L` as the recorded
/// relation. Branch components: `B~`, `Q~`, `E~_1..E~_5`.
pub fn dataset_werner() -> Dataset {
    let basis = plane_blowup_basis();
    let q = plane_class(&basis, 2, 0, [-1, -1, -1, -1, 0], [0; 5]);
    let c = plane_class(&basis, 10, -4, [-3; 5], [-6; 5]);
    let b = c.add(&q.scale(-1));
    let mut components = vec![("B~".to_string(), b), ("Q~".to_string(), q.clone())];
    components.extend((1..=5).map(|i| (format!("E~{i}"), tilde_e(&basis, i))));

    let conic_part = sum_all(&basis, std::iter::once(&q).chain(components[2..6].iter().map(|(_, v)| v)));
    let branch = sum_all(&basis, components.iter().map(|(_, v)| v));
    let checks = vec![
        ParityCheck {
            name: "Q~ + E~_1 + ... + E~_4".to_string(),
            divisor: conic_part,
            expected_half: plane_class(&basis, 1, 0, [0; 5], [0; 5]),
        },
        ParityCheck {
            name: "B~ + Q~ + sum E~_i".to_string(),
            divisor: branch,
            expected_half: plane_class(&basis, 5, -2, [-1; 5], [-3; 5]),
        },
    ];
    let divisors: Vec<DivisorVector> = components.iter().map(|(_, v)| v.clone()).collect();
    Dataset {
        name: "werner".to_string(),
        config: BranchConfiguration::from_divisors(&divisors, 0).expect("nonempty"),
        basis,
        components,
        parity_checks: checks,
    }
}

/// Hyperelliptic curve of genus `g` as a double cover of `P^1` branched at
/// `2g + 2` points.
pub fn dataset_hyperelliptic(g: usize) -> Result<Dataset> {
    if g == 0 {
        return Err(Error::invalid("genus must be at least 1"));
    }
    let basis = vec!["pt".to_string()];
    let n = 2 * g + 2;
    let components: Vec<(String, DivisorVector)> = (1..=n)
        .map(|i| (format!("P{i}"), DivisorVector::new(&basis, vec![1])))
        .collect();
    let branch = sum_all(&basis, components.iter().map(|(_, v)| v));
    let check = ParityCheck {
        name: "sum P_i".to_string(),
        divisor: branch,
        expected_half: DivisorVector::new(&basis, vec![g as i64 + 1]),
    };
    let divisors: Vec<DivisorVector> = components.iter().map(|(_, v)| v.clone()).collect();
    Ok(Dataset {
        name: format!("hyperelliptic-{g}"),
        config: BranchConfiguration::from_divisors(&divisors, 0)?,
        basis,
        components,
        parity_checks: vec![check],
    })
}
