use num_traits::Zero;

use super::AlgebroidError;
use crate::exterior::{mask_indices, Wedge};
use crate::kernel::{BasePoly, Rational};

/// Anchor and structure functions of a candidate Lie algebroid of rank `n`
/// over an `m`-dimensional base, in a fixed frame `e_1..e_n`:
/// `rho(e_a) = anchor[a][i] d/dx^i` and `[e_a, e_b] = structure[a][b][c] e_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebroidData {
    m: usize,
    n: usize,
    anchor: Vec<Vec<BasePoly>>,
    structure: Vec<Vec<Vec<BasePoly>>>,
}

/// A symmetric pairing on `A*`, i.e. an element of `Sym^2 A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pi: Vec<Vec<BasePoly>>,
}

impl Pairing {
    pub fn new(pi: Vec<Vec<BasePoly>>) -> Result<Self, AlgebroidError> {
        let n = pi.len();
        for (a, row) in pi.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebroidError::Shape(format!(
                    "pairing row {} has length {}",
                    a + 1,
                    row.len()
                )));
            }
            for b in 0..a {
                if row[b] != pi[b][a] {
                    return Err(AlgebroidError::NotSymmetric(a + 1, b + 1));
                }
            }
        }
        Ok(Pairing { pi })
    }

    pub fn zero(n: usize) -> Self {
        Pairing {
            pi: vec![vec![BasePoly::zero(); n]; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.pi.len()
    }

    pub fn entry(&self, a: usize, b: usize) -> &BasePoly {
        &self.pi[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.pi.iter().flatten().all(Zero::is_zero)
    }

    /// The induced map `A* -> A`, `flat(xi)^b = pi^{ab} xi_a`.
    pub fn flat(&self, xi: &[BasePoly]) -> Vec<BasePoly> {
        let n = self.rank();
        (0..n)
            .map(|b| (0..n).fold(BasePoly::zero(), |acc, a| &acc + &(&self.pi[a][b] * &xi[a])))
            .collect()
    }
}

impl LieAlgebroidData {
    pub fn new(
        m: usize,
        n: usize,
        anchor: Vec<Vec<BasePoly>>,
        structure: Vec<Vec<Vec<BasePoly>>>,
    ) -> Result<Self, AlgebroidError> {
        if anchor.len() != n || anchor.iter().any(|r| r.len() != m) {
            return Err(AlgebroidError::Shape(format!("anchor must be {n} x {m}")));
        }
        if structure.len() != n
            || structure
                .iter()
                .any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
        {
            return Err(AlgebroidError::Shape(format!(
                "structure functions must be {n} x {n} x {n}"
            )));
        }
        for f in anchor
            .iter()
            .flatten()
            .chain(structure.iter().flatten().flatten())
        {
            if f.num_vars() > m {
                return Err(AlgebroidError::Shape(format!(
                    "{f} uses more than {m} coordinates"
                )));
            }
        }
        for a in 0..n {
            for b in 0..=a {
                for c in 0..n {
                    if structure[a][b][c] != -structure[b][a][c].clone() {
                        return Err(AlgebroidError::NotAntisymmetric {
                            a: a + 1,
                            b: b + 1,
                            c: c + 1,
                        });
                    }
                }
            }
        }
        Ok(LieAlgebroidData {
            m,
            n,
            anchor,
            structure,
        })
    }

    /// A Lie algebra over a point from constants `c[a][b][c]`.
    pub fn lie_algebra(
        n: usize,
        constants: impl Fn(usize, usize, usize) -> Rational,
    ) -> Result<Self, AlgebroidError> {
        let structure = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..n)
                            .map(|c| BasePoly::constant(constants(a, b, c)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(0, n, vec![Vec::new(); n], structure)
    }

    /// Builds the structure tensor from the brackets `[e_a, e_b]` with `a < b`.
    pub fn from_brackets(
        m: usize,
        n: usize,
        anchor: Vec<Vec<BasePoly>>,
        brackets: &[((usize, usize), Vec<BasePoly>)],
    ) -> Result<Self, AlgebroidError> {
        let mut structure = vec![vec![vec![BasePoly::zero(); n]; n]; n];
        for ((a, b), v) in brackets {
            if *a >= n || *b >= n || a == b || v.len() != n {
                return Err(AlgebroidError::Shape(format!(
                    "bad bracket entry [{}, {}]",
                    a + 1,
                    b + 1
                )));
            }
            for c in 0..n {
                structure[*a][*b][c] = &structure[*a][*b][c] + &v[c];
                structure[*b][*a][c] = &structure[*b][*a][c] - &v[c];
            }
        }
        Self::new(m, n, anchor, structure)
    }

    /// The tangent algebroid of `R^m`.
    pub fn tangent(m: usize) -> Self {
        let anchor = (0..m)
            .map(|a| (0..m).map(|i| BasePoly::int((a == i) as i64)).collect())
            .collect();
        Self::new(m, m, anchor, vec![vec![vec![BasePoly::zero(); m]; m]; m])
            .expect("tangent data is well formed")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn anchor(&self, a: usize, i: usize) -> &BasePoly {
        &self.anchor[a][i]
    }

    pub fn structure(&self, a: usize, b: usize, c: usize) -> &BasePoly {
        &self.structure[a][b][c]
    }

    pub fn is_point_base(&self) -> bool {
        self.m == 0
    }

    /// `rho(v) f` for a section `v`.
    pub fn anchor_apply(&self, v: &[BasePoly], f: &BasePoly) -> BasePoly {
        let mut out = BasePoly::zero();
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for i in 0..self.m {
                if !self.anchor[a][i].is_zero() {
                    out = &out + &(&(va * &self.anchor[a][i]) * &f.partial(i));
                }
            }
        }
        out
    }

    /// `rho(v)` as a vector field, by components.
    pub fn anchor_vector(&self, v: &[BasePoly]) -> Vec<BasePoly> {
        (0..self.m)
            .map(|i| {
                (0..self.n).fold(BasePoly::zero(), |acc, a| {
                    &acc + &(&v[a] * &self.anchor[a][i])
                })
            })
            .collect()
    }

    /// The bracket of two sections, with the anchor's Leibniz terms.
    pub fn bracket(&self, u: &[BasePoly], v: &[BasePoly]) -> Vec<BasePoly> {
        let n = self.n;
        let mut out: Vec<BasePoly> = (0..n)
            .map(|c| &self.anchor_apply(u, &v[c]) - &self.anchor_apply(v, &u[c]))
            .collect();
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let w = &u[a] * &v[b];
                for (c, o) in out.iter_mut().enumerate() {
                    if !self.structure[a][b][c].is_zero() {
                        *o = &*o + &(&w * &self.structure[a][b][c]);
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, a: usize) -> Vec<BasePoly> {
        let mut v = vec![BasePoly::zero(); self.n];
        v[a] = BasePoly::int(1);
        v
    }

    /// `[e_a, [e_b, e_c]] + [e_b, [e_c, e_a]] + [e_c, [e_a, e_b]]`.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<BasePoly> {
        let (ea, eb, ec) = (self.basis(a), self.basis(b), self.basis(c));
        let t1 = self.bracket(&ea, &self.bracket(&eb, &ec));
        let t2 = self.bracket(&eb, &self.bracket(&ec, &ea));
        let t3 = self.bracket(&ec, &self.bracket(&ea, &eb));
        (0..self.n).map(|i| &(&t1[i] + &t2[i]) + &t3[i]).collect()
    }

    /// `rho([e_a, e_b]) - [rho(e_a), rho(e_b)]` by vector field components.
    pub fn anchor_defect(&self, a: usize, b: usize) -> Vec<BasePoly> {
        let br = self.bracket(&self.basis(a), &self.basis(b));
        let lhs = self.anchor_vector(&br);
        (0..self.m)
            .map(|i| {
                let commutator = &self.anchor_apply(&self.basis(a), &self.anchor[b][i])
                    - &self.anchor_apply(&self.basis(b), &self.anchor[a][i]);
                &lhs[i] - &commutator
            })
            .collect()
    }

    /// True when the anchor is compatible and the Jacobi identity holds on
    /// every basis triple.
    pub fn is_lie(&self) -> bool {
        let n = self.n;
        let anchor_ok =
            (0..n).all(|a| (a + 1..n).all(|b| self.anchor_defect(a, b).iter().all(Zero::is_zero)));
        anchor_ok
            && (0..n).all(|a| {
                (a + 1..n)
                    .all(|b| (b + 1..n).all(|c| self.jacobiator(a, b, c).iter().all(Zero::is_zero)))
            })
    }

    /// `d_A` of a base function, as a 1-form.
    fn d_function(&self, f: &BasePoly) -> Wedge {
        let mut out = Wedge::zero(self.n);
        for a in 0..self.n {
            out.add_term(1 << a, self.anchor_apply(&self.basis(a), f));
        }
        out
    }

    /// `d_A alpha^c = -sum_{a<b} c^c_{ab} alpha^a alpha^b`.
    fn d_alpha(&self, c: usize) -> Wedge {
        let mut out = Wedge::zero(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                out.add_term(1 << a | 1 << b, -self.structure[a][b][c].clone());
            }
        }
        out
    }

    /// Schouten bracket `[x, Pi]` of a section with a multivector in the
    /// frame `e_1..e_n`.
    pub fn lie_derivative_multivector(&self, x: &[BasePoly], pi: &Wedge) -> Wedge {
        let n = self.n;
        let mut out = Wedge::zero(n);
        for (mask, f) in pi.terms() {
            let idx = mask_indices(*mask);
            out.add_term(*mask, self.anchor_apply(x, f));
            for s in 0..idx.len() {
                let mut acc = Wedge::word(n, 0, f.clone());
                for (t, &i) in idx.iter().enumerate() {
                    let factor = if t == s {
                        Wedge::linear(&self.bracket(x, &self.basis(i)))
                    } else {
                        Wedge::word(n, 1 << i, BasePoly::int(1))
                    };
                    acc = acc.wedge(&factor);
                }
                out = &out + &acc;
            }
        }
        out
    }

    /// The Lie algebroid differential on forms in the frame `alpha^1..alpha^n`.
    pub fn differential(&self, w: &Wedge) -> Wedge {
        let n = self.n;
        let mut out = Wedge::zero(n);
        for (mask, f) in w.terms() {
            out = &out
                + &self
                    .d_function(f)
                    .wedge(&Wedge::word(n, *mask, BasePoly::int(1)));
            let idx = mask_indices(*mask);
            for (s, &i) in idx.iter().enumerate() {
                let before = Wedge::word(n, crate::exterior::mask_of(&idx[..s]), f.clone());
                let after =
                    Wedge::word(n, crate::exterior::mask_of(&idx[s + 1..]), BasePoly::int(1));
                let term = before.wedge(&self.d_alpha(i)).wedge(&after);
                out = if s % 2 == 1 {
                    &out - &term
                } else {
                    &out + &term
                };
            }
        }
        out
    }
}
