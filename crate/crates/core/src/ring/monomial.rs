use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// Exponent vector of a monomial in `r` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Writes the monomial with the given variable names (`1` when constant).
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    names[k].clone()
                } else {
                    format!("{}^{}", names[k], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&variable_names(self.nvars())))
    }
}

/// Lowercase variable names used by the text grammar.
pub fn variable_names(nvars: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if nvars <= 4 {
        NAMES[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

/// Uppercase names for the dual ring; the fourth variable is `X4` so that it
/// cannot be confused with a dual subspace `W`.
pub fn dual_variable_names(nvars: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["X", "Y", "Z", "X4"];
    if nvars <= 4 {
        NAMES[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("X{i}")).collect()
    }
}

/// `C(n, k)` as u64 (0 when k > n).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// `r_d = dim R_d = C(d + r - 1, d)`.
pub fn num_monomials(nvars: usize, degree: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    binomial(degree + nvars - 1, degree) as usize
}

/// Same as [`num_monomials`] but zero for negative degree.
pub fn num_monomials_signed(nvars: usize, degree: i64) -> i64 {
    if degree < 0 {
        0
    } else {
        num_monomials(nvars, degree as usize) as i64
    }
}

/// All monomials of one degree in degree-reverse-lexicographic order
/// (largest first), with a reverse index.
#[derive(Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    fn build(nvars: usize, degree: usize) -> Self {
        let mut monomials = Vec::with_capacity(num_monomials(nvars, degree));
        let mut current = vec![0u16; nvars];
        compositions(nvars, degree, 0, &mut current, &mut monomials);
        monomials.sort_by(|a, b| degrevlex_cmp(b, a));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.monomials.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn compositions(
    nvars: usize,
    remaining: usize,
    pos: usize,
    current: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if nvars == 0 {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos == nvars - 1 {
        current[pos] = remaining as u16;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u16;
        compositions(nvars, remaining - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// Degree-reverse-lexicographic comparison.
pub fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            // smaller exponent in the last differing variable is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

type BasisCache = RwLock<HashMap<(usize, usize), Arc<MonomialBasis>>>;
type ShiftCache = RwLock<HashMap<(usize, usize), Arc<Vec<Vec<usize>>>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn shift_cache() -> &'static ShiftCache {
    static CACHE: OnceLock<ShiftCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Canonically ordered monomials of degree `d` in `r` variables (memoized).
pub fn monomial_basis(nvars: usize, degree: usize) -> Arc<MonomialBasis> {
    if let Some(b) = basis_cache().read().unwrap().get(&(nvars, degree)) {
        return Arc::clone(b);
    }
    let built = Arc::new(MonomialBasis::build(nvars, degree));
    let mut w = basis_cache().write().unwrap();
    Arc::clone(w.entry((nvars, degree)).or_insert(built))
}

/// `table[k][i]` is the index in degree `d+1` of `x_k` times monomial `i` of
/// degree `d`.
pub fn shift_tables(nvars: usize, degree: usize) -> Arc<Vec<Vec<usize>>> {
    if let Some(t) = shift_cache().read().unwrap().get(&(nvars, degree)) {
        return Arc::clone(t);
    }
    let src = monomial_basis(nvars, degree);
    let dst = monomial_basis(nvars, degree + 1);
    let tables: Vec<Vec<usize>> = (0..nvars)
        .map(|k| {
            src.monomials()
                .iter()
                .map(|m| {
                    let mut e = m.0.clone();
                    e[k] += 1;
                    dst.index_of(&Monomial(e)).expect("shifted monomial")
                })
                .collect()
        })
        .collect();
    let built = Arc::new(tables);
    let mut w = shift_cache().write().unwrap();
    Arc::clone(w.entry((nvars, degree)).or_insert(built))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrics_in_three_variables() {
        let b = monomial_basis(3, 2);
        let names: Vec<String> = b.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]);
    }

    #[test]
    fn counts() {
        assert_eq!(monomial_basis(3, 0).len(), 1);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(4, 3).len(), 20);
        assert_eq!(num_monomials(4, 3), 20);
        assert_eq!(monomial_basis(1, 5).len(), 1);
    }

    #[test]
    fn shift_tables_agree_with_multiplication() {
        let t = shift_tables(3, 2);
        let src = monomial_basis(3, 2);
        let dst = monomial_basis(3, 3);
        for k in 0..3 {
            for (i, m) in src.monomials().iter().enumerate() {
                assert_eq!(dst.get(t[k][i]), &m.mul(&Monomial::variable(3, k)));
            }
        }
    }
}
