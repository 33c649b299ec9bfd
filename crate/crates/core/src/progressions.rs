//! Arithmetic progressions and the boxes built out of them.
//!
//! An [`Ap`] is the usual `a, a+d, ..., a+(k-1)d` with a non-negative base
//! and positive step. A [`Gap`] is a generalized progression: a base plus
//! every combination of multiples `0..volume` of each of its steps. The
//! bridge between the two is [`embed_gap_in_ap`], which carves a box with
//! prescribed volumes out of a single long progression by giving the steps
//! a mixed-radix structure, and [`Gap::to_centered`], which rewrites an
//! odd-volume box around its middle element so coefficients range over
//! symmetric intervals. The solver leans on both.

use thiserror::Error;

use crate::num::{int, nat, Int};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProgressionError {
    #[error("progression length must be at least 1")]
    ZeroLength,
    #[error("progression base must be non-negative")]
    NegativeBase,
    #[error("progression step must be positive")]
    NonPositiveStep,
    #[error("box dimension must be at least 1")]
    ZeroDimension,
    #[error("expected {expected} volumes, got {found}")]
    VolumeCountMismatch { expected: usize, found: usize },
    #[error("volumes must be at least 1")]
    ZeroVolume,
    #[error("centering needs every volume odd, volume {volume} is even")]
    EvenVolume { volume: u64 },
    #[error("progression of length {actual} cannot hold a box of {needed} elements")]
    ApTooShort { needed: u128, actual: u64 },
    #[error("value does not fit the scalar type")]
    ScalarOverflow,
}

/// Finite arithmetic progression `base, base + step, ..., base + (len-1)*step`
/// with `base >= 0` and `step >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ap<T> {
    len: u64,
    base: T,
    step: T,
}

impl<T: Int> Ap<T> {
    pub fn new(len: u64, base: T, step: T) -> Result<Self, ProgressionError> {
        if len == 0 {
            return Err(ProgressionError::ZeroLength);
        }
        if base.is_negative() {
            return Err(ProgressionError::NegativeBase);
        }
        if !step.is_positive() {
            return Err(ProgressionError::NonPositiveStep);
        }
        Ok(Ap { len, base, step })
    }

    /// Progression over set members given as machine words.
    pub fn from_u64(len: u64, base: u64, step: u64) -> Result<Self, ProgressionError> {
        let base = nat(base).ok_or(ProgressionError::ScalarOverflow)?;
        let step = nat(step).ok_or(ProgressionError::ScalarOverflow)?;
        Ap::new(len, base, step)
    }

    /// Number of elements, always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn step(&self) -> &T {
        &self.step
    }

    /// `base + (len-1)*step`, the largest element.
    pub fn last(&self) -> T {
        self.base.clone() + self.step.clone() * self.nth_offset(self.len - 1)
    }

    fn nth_offset(&self, i: u64) -> T {
        nat::<T>(i).expect("progression index fits the scalar")
    }

    /// All elements in ascending order.
    pub fn elements(&self) -> Vec<T> {
        let count = usize::try_from(self.len).expect("progression length fits in memory");
        let mut out = Vec::with_capacity(count);
        let mut cur = self.base.clone();
        for _ in 0..count {
            out.push(cur.clone());
            cur += self.step.clone();
        }
        out
    }

    /// Membership test without materializing the elements.
    pub fn contains(&self, x: &T) -> bool {
        let diff = x.clone() - self.base.clone();
        if diff.is_negative() {
            return false;
        }
        let (q, r) = diff.div_rem(&self.step);
        r.is_zero() && q < self.nth_offset(self.len)
    }
}

/// Generalized arithmetic progression: all sums `base + n_1*steps_1 + ... +
/// n_dim*steps_dim` with `0 <= n_i < volumes_i`. Elements need not be
/// distinct for arbitrary step choices; [`Gap::elements`] reports whether
/// collisions happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap<T> {
    base: T,
    steps: Vec<T>,
    volumes: Vec<u64>,
}

/// Sorted distinct values of a box, plus whether any collision was dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapElements<T> {
    pub values: Vec<T>,
    pub had_duplicates: bool,
}

impl<T: Int> Gap<T> {
    pub fn new(base: T, steps: Vec<T>, volumes: Vec<u64>) -> Result<Self, ProgressionError> {
        if steps.is_empty() {
            return Err(ProgressionError::ZeroDimension);
        }
        if steps.len() != volumes.len() {
            return Err(ProgressionError::VolumeCountMismatch {
                expected: steps.len(),
                found: volumes.len(),
            });
        }
        if base.is_negative() {
            return Err(ProgressionError::NegativeBase);
        }
        if steps.iter().any(|s| !s.is_positive()) {
            return Err(ProgressionError::NonPositiveStep);
        }
        if volumes.contains(&0) {
            return Err(ProgressionError::ZeroVolume);
        }
        Ok(Gap { base, steps, volumes })
    }

    pub fn dimension(&self) -> usize {
        self.steps.len()
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn steps(&self) -> &[T] {
        &self.steps
    }

    pub fn volumes(&self) -> &[u64] {
        &self.volumes
    }

    /// Number of coefficient combinations (counting collisions separately).
    pub fn combination_count(&self) -> u128 {
        self.volumes.iter().map(|&v| v as u128).product()
    }

    /// Materialize the box.
    ///
    /// # Panics
    ///
    /// Panics if the combination count does not fit in memory; callers that
    /// build boxes from user input should check [`Gap::combination_count`].
    pub fn elements(&self) -> GapElements<T> {
        let count = usize::try_from(self.combination_count())
            .expect("box combination count fits in memory");
        let mut values = Vec::with_capacity(count);
        let mut coeffs = vec![0u64; self.dimension()];
        loop {
            let mut v = self.base.clone();
            for (c, s) in coeffs.iter().zip(&self.steps) {
                v += s.clone() * nat::<T>(*c).expect("coefficient fits the scalar");
            }
            values.push(v);
            if !odometer_step(&mut coeffs, &self.volumes) {
                break;
            }
        }
        values.sort();
        let before = values.len();
        values.dedup();
        GapElements { had_duplicates: values.len() != before, values }
    }

    /// Rewrite an all-odd-volume box around its middle element, so that the
    /// same value set becomes `center + n_1*steps_1 + ... + n_dim*steps_dim`
    /// with each `n_i` ranging over `-(h_i - 1) ..= h_i - 1` where
    /// `h_i = (volumes_i + 1) / 2`.
    pub fn to_centered(&self) -> Result<CenteredGap<T>, ProgressionError> {
        let mut half_widths = Vec::with_capacity(self.dimension());
        for &v in &self.volumes {
            if v % 2 == 0 {
                return Err(ProgressionError::EvenVolume { volume: v });
            }
            half_widths.push(v / 2 + 1);
        }
        let mut center = self.base.clone();
        for (h, s) in half_widths.iter().zip(&self.steps) {
            center += s.clone() * nat::<T>(h - 1).expect("half width fits the scalar");
        }
        Ok(CenteredGap { center, steps: self.steps.clone(), half_widths })
    }
}

/// A box written around its middle element: `center + n_1*steps_1 + ... +
/// n_dim*steps_dim` with `|n_i| < half_widths_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenteredGap<T> {
    center: T,
    steps: Vec<T>,
    half_widths: Vec<u64>,
}

impl<T: Int> CenteredGap<T> {
    pub fn center(&self) -> &T {
        &self.center
    }

    pub fn steps(&self) -> &[T] {
        &self.steps
    }

    pub fn half_widths(&self) -> &[u64] {
        &self.half_widths
    }

    pub fn dimension(&self) -> usize {
        self.steps.len()
    }

    /// Sorted distinct values, for checking the rewrite against the original.
    pub fn elements(&self) -> Vec<T> {
        let volumes: Vec<u64> = self.half_widths.iter().map(|&h| 2 * h - 1).collect();
        let count: u128 = volumes.iter().map(|&v| v as u128).product();
        let count = usize::try_from(count).expect("box combination count fits in memory");
        let mut values = Vec::with_capacity(count);
        let mut coeffs = vec![0u64; self.dimension()];
        loop {
            let mut v = self.center.clone();
            for ((c, s), h) in coeffs.iter().zip(&self.steps).zip(&self.half_widths) {
                // coefficient runs -(h-1) ..= h-1, encoded as 0 .. 2h-1
                let signed = int::<T>(*c as i64) - int::<T>((h - 1) as i64);
                v += s.clone() * signed;
            }
            values.push(v);
            if !odometer_step(&mut coeffs, &volumes) {
                break;
            }
        }
        values.sort();
        values.dedup();
        values
    }
}

/// Carve a `dim`-dimensional box with the given volumes out of a single
/// arithmetic progression.
///
/// The box takes the progression's base and the mixed-radix steps
/// `step * volumes_1 * ... * volumes_{i-1}`, so its value set is exactly the
/// first `volumes_1 * ... * volumes_dim` elements of the progression; the
/// progression must be at least that long.
pub fn embed_gap_in_ap<T: Int>(
    ap: &Ap<T>,
    dim: usize,
    volumes: &[u64],
) -> Result<Gap<T>, ProgressionError> {
    if dim == 0 {
        return Err(ProgressionError::ZeroDimension);
    }
    if volumes.len() != dim {
        return Err(ProgressionError::VolumeCountMismatch { expected: dim, found: volumes.len() });
    }
    if volumes.contains(&0) {
        return Err(ProgressionError::ZeroVolume);
    }
    let needed: u128 = volumes.iter().map(|&v| v as u128).product();
    if (ap.len() as u128) < needed {
        return Err(ProgressionError::ApTooShort { needed, actual: ap.len() });
    }
    let mut steps = Vec::with_capacity(dim);
    let mut radix = T::one();
    for &v in volumes {
        steps.push(ap.step().clone() * radix.clone());
        radix *= nat::<T>(v).ok_or(ProgressionError::ScalarOverflow)?;
    }
    Gap::new(ap.base().clone(), steps, volumes.to_vec())
}

/// Advance a mixed-radix counter; returns false once it wraps to all zeros.
fn odometer_step(coeffs: &mut [u64], radices: &[u64]) -> bool {
    for i in (0..coeffs.len()).rev() {
        coeffs[i] += 1;
        if coeffs[i] < radices[i] {
            return true;
        }
        coeffs[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(len: u64, base: i64, step: i64) -> Ap<i64> {
        Ap::new(len, base, step).unwrap()
    }

    #[test]
    fn elements_and_membership() {
        let p = ap(5, 5, 6);
        assert_eq!(p.elements(), vec![5, 11, 17, 23, 29]);
        assert_eq!(p.last(), 29);
        assert!(p.contains(&17));
        assert!(!p.contains(&18));
        assert!(!p.contains(&35));
        assert!(!p.contains(&-1));
        let single = ap(1, 7, 3);
        assert_eq!(single.elements(), vec![7]);
        assert!(single.contains(&7));
        assert!(!single.contains(&10));
    }

    #[test]
    fn constructor_guards() {
        assert_eq!(Ap::new(0, 1i64, 1), Err(ProgressionError::ZeroLength));
        assert_eq!(Ap::new(3, -1i64, 1), Err(ProgressionError::NegativeBase));
        assert_eq!(Ap::new(3, 1i64, 0), Err(ProgressionError::NonPositiveStep));
        assert_eq!(Ap::new(3, 1i64, -2), Err(ProgressionError::NonPositiveStep));
        assert!(Ap::new(3, 0i64, 1).is_ok());
    }

    #[test]
    fn gap_elements_with_and_without_collisions() {
        let g = Gap::new(1i64, vec![1, 10], vec![3, 2]).unwrap();
        assert_eq!(g.combination_count(), 6);
        let e = g.elements();
        assert_eq!(e.values, vec![1, 2, 3, 11, 12, 13]);
        assert!(!e.had_duplicates);

        let collide = Gap::new(0i64, vec![1, 1], vec![2, 2]).unwrap();
        let e = collide.elements();
        assert_eq!(e.values, vec![0, 1, 2]);
        assert!(e.had_duplicates);
    }

    #[test]
    fn gap_guards() {
        assert_eq!(Gap::new(0i64, vec![], vec![]), Err(ProgressionError::ZeroDimension));
        assert_eq!(
            Gap::new(0i64, vec![1], vec![1, 2]),
            Err(ProgressionError::VolumeCountMismatch { expected: 1, found: 2 })
        );
        assert_eq!(Gap::new(0i64, vec![1], vec![0]), Err(ProgressionError::ZeroVolume));
        assert_eq!(Gap::new(0i64, vec![0], vec![2]), Err(ProgressionError::NonPositiveStep));
        assert_eq!(Gap::new(-1i64, vec![1], vec![2]), Err(ProgressionError::NegativeBase));
    }

    #[test]
    fn centering_one_dimension() {
        let g = Gap::new(3i64, vec![2], vec![3]).unwrap();
        let c = g.to_centered().unwrap();
        assert_eq!(*c.center(), 5);
        assert_eq!(c.half_widths(), &[2]);
        assert_eq!(c.elements(), g.elements().values);
    }

    #[test]
    fn centering_two_dimensions() {
        let g = Gap::new(0i64, vec![1, 10], vec![3, 3]).unwrap();
        let c = g.to_centered().unwrap();
        assert_eq!(*c.center(), 11);
        assert_eq!(c.elements(), g.elements().values);
    }

    #[test]
    fn centering_rejects_even_volumes() {
        let g = Gap::new(0i64, vec![1], vec![4]).unwrap();
        assert_eq!(g.to_centered(), Err(ProgressionError::EvenVolume { volume: 4 }));
    }

    #[test]
    fn embedding_gives_mixed_radix_steps() {
        let p = ap(9, 0, 1);
        let g = embed_gap_in_ap(&p, 2, &[3, 3]).unwrap();
        assert_eq!(g.steps(), &[1, 3]);
        assert_eq!(g.elements().values, (0..=8).collect::<Vec<i64>>());

        let p = ap(3, 3, 2);
        let g = embed_gap_in_ap(&p, 1, &[3]).unwrap();
        assert_eq!(g.elements().values, p.elements());
    }

    #[test]
    fn embedding_needs_enough_room() {
        let p = ap(8, 0, 1);
        assert_eq!(
            embed_gap_in_ap(&p, 2, &[3, 3]),
            Err(ProgressionError::ApTooShort { needed: 9, actual: 8 })
        );
        assert_eq!(
            embed_gap_in_ap(&p, 2, &[3]),
            Err(ProgressionError::VolumeCountMismatch { expected: 2, found: 1 })
        );
        assert_eq!(embed_gap_in_ap(&p, 0, &[]), Err(ProgressionError::ZeroDimension));
    }

    #[test]
    fn embedded_box_is_subset_of_progression() {
        let p = ap(30, 7, 5);
        let g = embed_gap_in_ap(&p, 3, &[2, 3, 4]).unwrap();
        let elems = g.elements();
        assert_eq!(elems.values.len(), 24);
        assert!(!elems.had_duplicates);
        for v in &elems.values {
            assert!(p.contains(v), "{v} escaped the progression");
        }
    }
}
