use super::{check_table, zeros, RuthError, Table3};
use crate::kernel::BasePoly;

/// A linear connection on `A` over the base: `nabla_{d/dx^i} e_a =
/// sum_b gamma[i][a][b] e_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionData {
    m: usize,
    n: usize,
    gamma: Table3,
}

impl ConnectionData {
    pub fn new(m: usize, n: usize, gamma: Table3) -> Result<Self, RuthError> {
        check_table("connection", &gamma, [m, n, n], m)?;
        Ok(ConnectionData { m, n, gamma })
    }

    /// The connection with vanishing Christoffel symbols.
    pub fn trivial(m: usize, n: usize) -> Self {
        ConnectionData {
            m,
            n,
            gamma: vec![vec![zeros(n); n]; m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn christoffel(&self, i: usize, a: usize, b: usize) -> &BasePoly {
        &self.gamma[i][a][b]
    }

    pub fn gamma(&self) -> &Table3 {
        &self.gamma
    }

    /// `nabla_X s` for a vector field `X` and a section `s`, by components.
    pub fn covariant(&self, x: &[BasePoly], s: &[BasePoly]) -> Vec<BasePoly> {
        let mut out = zeros(self.n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for b in 0..self.n {
                let mut t = s[b].partial(i);
                for (a, sa) in s.iter().enumerate() {
                    if !sa.is_zero() && !self.gamma[i][a][b].is_zero() {
                        t = &t + &(sa * &self.gamma[i][a][b]);
                    }
                }
                out[b] = &out[b] + &(xi * &t);
            }
        }
        out
    }
}
