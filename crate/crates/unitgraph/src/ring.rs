//! Modular arithmetic over `Z_n` and direct sums `Z_{n1} ⊕ … ⊕ Z_{nr}`:
//! units, Euler phi, and the CRT decomposition into prime-power factors.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization by trial division, smallest prime first.
/// Panics on n < 2 (callers validate).
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 2, "factorize requires n >= 2");
    let mut n = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0u32;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Euler's totient: the number of residues in `[1, n]` coprime to `n`.
/// phi(1) = 1 by the empty-product convention.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("euler_phi(0) is undefined".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut phi = 1u64;
    for (p, k) in factorize(n) {
        phi *= p.pow(k - 1) * (p - 1);
    }
    Ok(phi)
}

/// A direct sum `Z_{n1} ⊕ … ⊕ Z_{nr}` given by its moduli. Order is
/// significant: element tuples index positionally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    moduli: Vec<u64>,
}

impl RingSpec {
    /// Builds a spec, rejecting zero moduli and products that overflow the
    /// native word (silent wraparound would corrupt everything downstream).
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Domain("ring spec needs at least one modulus".into()));
        }
        if let Some(&m) = moduli.iter().find(|&&m| m == 0) {
            return Err(Error::Domain(format!("modulus {m} must be >= 1")));
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::Domain("ring cardinality overflows u64".into()))?;
        Ok(RingSpec { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    /// Number of elements, `∏ n_i`.
    pub fn cardinality(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// `∏ phi(n_i)`, the number of units.
    pub fn phi_product(&self) -> u64 {
        self.moduli
            .iter()
            .map(|&m| euler_phi(m).expect("modulus >= 1"))
            .product()
    }

    pub fn all_moduli_odd(&self) -> bool {
        self.moduli.iter().all(|&m| m % 2 == 1)
    }

    pub fn even_moduli_count(&self) -> usize {
        self.moduli.iter().filter(|&&m| m % 2 == 0).count()
    }

    /// The element at `index` in lexicographic tuple order (first coordinate
    /// most significant). Inverse of [`RingSpec::index_of`].
    pub fn element_at(&self, index: u64) -> RingElement {
        debug_assert!(index < self.cardinality());
        let mut residues = vec![0u64; self.arity()];
        let mut rest = index;
        for i in (0..self.arity()).rev() {
            residues[i] = rest % self.moduli[i];
            rest /= self.moduli[i];
        }
        RingElement { residues }
    }

    pub fn index_of(&self, x: &RingElement) -> u64 {
        debug_assert_eq!(x.residues.len(), self.arity());
        x.residues
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&r, &m)| acc * m + r)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.cardinality()).map(|i| self.element_at(i))
    }

    /// Componentwise unit lookup: `tables[i][v]` is true iff `v` is a unit
    /// mod `moduli[i]`.
    pub(crate) fn unit_tables(&self) -> Vec<Vec<bool>> {
        self.moduli
            .iter()
            .map(|&m| (0..m).map(|v| gcd(v, m) == 1).collect())
            .collect()
    }
}

/// One element of a [`RingSpec`]: a residue tuple, each coordinate reduced
/// mod its modulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement {
    residues: Vec<u64>,
}

impl RingElement {
    pub fn new(residues: Vec<u64>, spec: &RingSpec) -> Result<Self> {
        if residues.len() != spec.arity() {
            return Err(Error::Domain(format!(
                "element has {} coordinates, spec has {}",
                residues.len(),
                spec.arity()
            )));
        }
        for (&r, &m) in residues.iter().zip(spec.moduli()) {
            if r >= m {
                return Err(Error::Domain(format!("residue {r} not reduced mod {m}")));
            }
        }
        Ok(RingElement { residues })
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Componentwise sum mod the spec's moduli.
    pub fn add(&self, other: &RingElement, spec: &RingSpec) -> RingElement {
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(spec.moduli())
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        RingElement { residues }
    }
}

/// True iff every coordinate is coprime to its modulus. For modulus 1 the
/// sole residue 0 counts as a unit (zero ring, 0 = 1); gcd(0, 1) = 1 makes
/// that fall out of the same rule.
pub fn is_unit(x: &RingElement, spec: &RingSpec) -> Result<bool> {
    if x.residues.len() != spec.arity() {
        return Err(Error::Domain(format!(
            "element has {} coordinates, spec has {}",
            x.residues.len(),
            spec.arity()
        )));
    }
    Ok(x.residues
        .iter()
        .zip(spec.moduli())
        .all(|(&r, &m)| gcd(r, m) == 1))
}

/// All units of the spec, in lexicographic order.
pub fn units(spec: &RingSpec) -> Vec<RingElement> {
    spec.elements()
        .filter(|x| is_unit(x, spec).expect("shape matches"))
        .collect()
}

/// The prime-power moduli of `n`, ascending by prime: `crt_decompose(12)`
/// is `Z_4 ⊕ Z_3`.
pub fn crt_decompose(n: u64) -> Result<RingSpec> {
    if n < 2 {
        return Err(Error::Domain(format!("crt_decompose requires n >= 2, got {n}")));
    }
    let moduli = factorize(n).into_iter().map(|(p, k)| p.pow(k)).collect();
    RingSpec::new(moduli)
}

/// The residues of `x` modulo each prime-power factor of `n`. Bijection
/// from `Z_n` onto the decomposed direct sum.
pub fn crt_map(x: u64, n: u64) -> Result<RingElement> {
    let spec = crt_decompose(n)?;
    if x >= n {
        return Err(Error::Domain(format!("{x} is out of range for Z_{n}")));
    }
    let residues = spec.moduli().iter().map(|&m| x % m).collect();
    Ok(RingElement { residues })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: count coprime residues by direct gcd scan.
    fn phi_by_scan(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(phi_by_scan(9), 6);
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(phi_by_scan(15), 8);
        assert_eq!(euler_phi(15).unwrap(), 8);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn euler_phi_matches_scan_up_to_500() {
        for n in 1..=500 {
            assert_eq!(euler_phi(n).unwrap(), phi_by_scan(n), "phi({n})");
        }
    }

    #[test]
    fn is_unit_examples() {
        let z6 = RingSpec::new(vec![6]).unwrap();
        let x = RingElement::new(vec![5], &z6).unwrap();
        assert!(is_unit(&x, &z6).unwrap());

        let z9z4 = RingSpec::new(vec![9, 4]).unwrap();
        let y = RingElement::new(vec![3, 2], &z9z4).unwrap();
        assert!(!is_unit(&y, &z9z4).unwrap());

        let z1 = RingSpec::new(vec![1]).unwrap();
        let zero = RingElement::new(vec![0], &z1).unwrap();
        assert!(is_unit(&zero, &z1).unwrap());

        assert!(is_unit(&x, &z9z4).is_err());
    }

    #[test]
    fn units_examples() {
        let z6 = RingSpec::new(vec![6]).unwrap();
        let us: Vec<u64> = units(&z6).iter().map(|u| u.residues()[0]).collect();
        assert_eq!(us, vec![1, 5]);

        let z3z2 = RingSpec::new(vec![3, 2]).unwrap();
        let us: Vec<Vec<u64>> = units(&z3z2).iter().map(|u| u.residues().to_vec()).collect();
        assert_eq!(us, vec![vec![1, 1], vec![2, 1]]);

        let z1 = RingSpec::new(vec![1]).unwrap();
        assert_eq!(units(&z1).len(), 1);
        assert_eq!(units(&z1)[0].residues(), &[0]);
    }

    #[test]
    fn unit_count_is_phi_product() {
        for moduli in [vec![6], vec![9, 5], vec![4, 3], vec![2, 2], vec![1, 7], vec![8, 9, 5]] {
            let spec = RingSpec::new(moduli).unwrap();
            assert_eq!(units(&spec).len() as u64, spec.phi_product());
        }
    }

    #[test]
    fn unit_of_direct_sum_iff_componentwise() {
        // Cross-enumeration: units of the sum vs cartesian product of
        // componentwise unit sets.
        let spec = RingSpec::new(vec![4, 9]).unwrap();
        let z4 = RingSpec::new(vec![4]).unwrap();
        let z9 = RingSpec::new(vec![9]).unwrap();
        let u4: Vec<u64> = units(&z4).iter().map(|u| u.residues()[0]).collect();
        let u9: Vec<u64> = units(&z9).iter().map(|u| u.residues()[0]).collect();
        let mut expected = Vec::new();
        for &a in &u4 {
            for &b in &u9 {
                expected.push(vec![a, b]);
            }
        }
        expected.sort();
        let got: Vec<Vec<u64>> = units(&spec).iter().map(|u| u.residues().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn crt_decompose_examples() {
        assert_eq!(crt_decompose(12).unwrap().moduli(), &[4, 3]);
        assert_eq!(crt_decompose(15).unwrap().moduli(), &[3, 5]);
        assert_eq!(crt_decompose(7).unwrap().moduli(), &[7]);
        assert!(crt_decompose(1).is_err());
        assert!(crt_decompose(0).is_err());
    }

    #[test]
    fn crt_map_examples() {
        assert_eq!(crt_map(7, 12).unwrap().residues(), &[3, 1]);
        assert_eq!(crt_map(0, 15).unwrap().residues(), &[0, 0]);
        assert_eq!(crt_map(11, 15).unwrap().residues(), &[2, 1]);
        assert!(crt_map(15, 15).is_err());
    }

    #[test]
    fn crt_map_is_bijective_up_to_200() {
        for n in 2..=200u64 {
            let spec = crt_decompose(n).unwrap();
            let mut seen = vec![false; n as usize];
            for x in 0..n {
                let idx = spec.index_of(&crt_map(x, n).unwrap()) as usize;
                assert!(!seen[idx], "crt_map collides at n={n}, x={x}");
                seen[idx] = true;
            }
        }
    }

    #[test]
    fn crt_map_preserves_unit_sums_spot() {
        // x + y a unit in Z_n iff the mapped sum is a unit componentwise.
        // Exhaustive over all pairs for a few composite n; the full n <= 500
        // run lives in the acceptance suite.
        for n in [12u64, 45, 90] {
            let spec = crt_decompose(n).unwrap();
            for x in 0..n {
                for y in 0..n {
                    let direct = gcd((x + y) % n, n) == 1;
                    let mapped = crt_map(x, n)
                        .unwrap()
                        .add(&crt_map(y, n).unwrap(), &spec);
                    assert_eq!(direct, is_unit(&mapped, &spec).unwrap(), "n={n} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn sum_of_unit_and_non_unit_is_unit_in_prime_power_rings() {
        // Exhaustive for every prime power p^k <= 512.
        for n in 2..=512u64 {
            let f = factorize(n);
            if f.len() != 1 {
                continue;
            }
            let spec = RingSpec::new(vec![n]).unwrap();
            let (us, nus): (Vec<u64>, Vec<u64>) = (0..n).partition(|&v| gcd(v, n) == 1);
            assert_eq!(us.len() as u64, euler_phi(n).unwrap());
            for &u in &us {
                for &v in &nus {
                    let s = RingElement::new(vec![(u + v) % n], &spec).unwrap();
                    assert!(is_unit(&s, &spec).unwrap(), "unit {u} + non-unit {v} mod {n}");
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(RingSpec::new(vec![]).is_err());
        assert!(RingSpec::new(vec![6, 0]).is_err());
        assert!(RingSpec::new(vec![u64::MAX, 3]).is_err());
        assert!(RingElement::new(vec![6], &RingSpec::new(vec![6]).unwrap()).is_err());
    }

    #[test]
    fn element_indexing_roundtrip() {
        let spec = RingSpec::new(vec![3, 2, 5]).unwrap();
        for i in 0..spec.cardinality() {
            assert_eq!(spec.index_of(&spec.element_at(i)), i);
        }
        // Lexicographic order: (0,0,0), (0,0,1), ..., (0,1,0), ...
        assert_eq!(spec.element_at(0).residues(), &[0, 0, 0]);
        assert_eq!(spec.element_at(1).residues(), &[0, 0, 1]);
        assert_eq!(spec.element_at(5).residues(), &[0, 1, 0]);
    }
}
