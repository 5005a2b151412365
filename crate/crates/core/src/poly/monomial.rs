use std::cmp::Ordering;

/// Exponent vector of a monomial. `Ord` is graded reverse lexicographic,
/// which is also the canonical storage order of polynomial terms.
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

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lowers the exponent of variable `i` by one; `None` if it is zero.
    pub fn lower(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.0[i];
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[i] -= 1;
        Some((e, Monomial(out)))
    }

    pub fn raise(&self, i: usize) -> Monomial {
        let mut out = self.0.clone();
        out[i] += 1;
        Monomial(out)
    }

    /// All monomials of total degree at most `degree`, in increasing grevlex order.
    pub fn all_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(nvars)];
        let mut layer = out.clone();
        for _ in 0..degree {
            let next: std::collections::BTreeSet<Monomial> = layer
                .iter()
                .flat_map(|m| (0..nvars).map(move |i| m.raise(i)))
                .collect();
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::Grevlex.compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(MonomialOrder::Grevlex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}
