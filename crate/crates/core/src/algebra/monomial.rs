use std::cmp::Ordering;

/// Exponent vector `I = (i_1, …, i_n)`.
///
/// Ordered by graded reverse lexicographic order: higher total degree is
/// larger; on ties the monomial with the smaller exponent in the last
/// differing variable is larger.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable this monomial is a power of, if any.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, ascending
/// in grevlex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, d, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

/// All exponent vectors of total degree at most `d`.
pub fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex() {
        // x > y > z in degree one
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // x y > x z, y^2 > x z in grevlex
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 15).len(), 136);
        assert_eq!(monomials_up_to_degree(2, 3).len(), 10);
        assert!(monomials_of_degree(4, 3).iter().all(|m| m.degree() == 3));
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert_eq!(m(&[2, 1]).div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 3])), m(&[2, 3]));
        assert_eq!(m(&[0, 4]).pure_power_of(), Some(1));
        assert_eq!(m(&[1, 4]).pure_power_of(), None);
    }
}
