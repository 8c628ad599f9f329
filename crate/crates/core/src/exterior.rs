//! Sparse elements of an exterior algebra over a rank-`n` frame, with
//! polynomial coefficients. The same type holds forms (in the dual frame
//! `alpha^1..alpha^n`) and multivectors (in `e_1..e_n`).
//!
//! A basis word is a bitmask; bit `i` stands for the `(i+1)`-th frame element
//! and words are read in increasing index order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::kernel::expr::parse_terms;
use crate::kernel::{BasePoly, KernelError, Rational};

pub type Mask = u32;

/// Ordered indices of a basis word.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..Mask::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .collect()
}

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

/// All words of length `j` in a rank-`n` frame, in lexicographic order of
/// their index lists.
pub fn words(n: usize, j: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, left: usize, acc: Mask, out: &mut Vec<Mask>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            rec(i + 1, n, left - 1, acc | 1 << i, out);
        }
    }
    if j <= n {
        rec(0, n, j, 0, &mut out);
    }
    out
}

/// Sign of `w1 ^ w2` relative to the sorted word, or `None` if they overlap.
pub fn wedge_sign(w1: Mask, w2: Mask) -> Option<bool> {
    if w1 & w2 != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for i in mask_indices(w2) {
        swaps += (w1 >> (i + 1)).count_ones();
    }
    Some(swaps % 2 == 1)
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Wedge {
    n: usize,
    terms: BTreeMap<Mask, BasePoly>,
}

impl Wedge {
    pub fn zero(n: usize) -> Self {
        Wedge {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::word(n, 0, BasePoly::one())
    }

    pub fn word(n: usize, mask: Mask, c: BasePoly) -> Self {
        let mut w = Wedge::zero(n);
        w.add_term(mask, c);
        w
    }

    /// The degree-1 element `sum_i v[i] * frame_i`.
    pub fn linear(v: &[BasePoly]) -> Self {
        let mut w = Wedge::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            w.add_term(1 << i, c.clone());
        }
        w
    }

    /// Parses a sum of terms such as `2*x1*alpha1*alpha3 - alpha2*alpha1`,
    /// with frame elements `{prefix}1..{prefix}n` and base coordinates
    /// `x1, x2, ...`. Frame factors anticommute in the written order.
    pub fn parse(input: &str, n: usize, prefix: &str) -> Result<Wedge, KernelError> {
        let mut out = Wedge::zero(n);
        for (c, factors) in parse_terms(input)? {
            let mut exps: Vec<u32> = Vec::new();
            let (mut word, mut negative, mut vanishes) = (0 as Mask, false, false);
            for (name, e) in factors {
                let index = |p: &str| {
                    name.strip_prefix(p)
                        .and_then(|r| r.parse::<usize>().ok())
                        .filter(|&i| i >= 1)
                };
                if let Some(j) = index(prefix) {
                    if j > n {
                        return Err(KernelError::UnknownGenerator(format!("{name} (rank {n})")));
                    }
                    match (e, wedge_sign(word, 1 << (j - 1))) {
                        (0, _) => {}
                        (1, Some(sign)) => {
                            negative ^= sign;
                            word |= 1 << (j - 1);
                        }
                        _ => vanishes = true,
                    }
                } else if let Some(i) = index("x") {
                    if exps.len() < i {
                        exps.resize(i, 0);
                    }
                    exps[i - 1] += e;
                } else {
                    return Err(KernelError::UnknownGenerator(name));
                }
            }
            if !vanishes {
                let c = if negative { -c } else { c };
                out.add_term(word, BasePoly::from_terms([(exps, c)]));
            }
        }
        Ok(out)
    }

    /// Prints in the syntax of [`Wedge::parse`], one term per monomial.
    pub fn to_expr(&self, prefix: &str) -> String {
        let mut out = String::new();
        for (mask, c) in &self.terms {
            let frame: Vec<String> = mask_indices(*mask)
                .iter()
                .map(|i| format!("{prefix}{}", i + 1))
                .collect();
            for (exps, r) in c.terms() {
                let mono = BasePoly::from_terms([(exps.clone(), r.clone())]).to_string();
                let (negative, body) = match mono.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, mono),
                };
                let term = match (body.as_str(), frame.is_empty()) {
                    (_, true) => body.clone(),
                    ("1", false) => frame.join("*"),
                    _ => format!("{body}*{}", frame.join("*")),
                };
                match (out.is_empty(), negative) {
                    (true, true) => out = format!("-{term}"),
                    (true, false) => out = term,
                    (false, true) => out += &format!(" - {term}"),
                    (false, false) => out += &format!(" + {term}"),
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, mask: Mask, c: BasePoly) {
        debug_assert!(mask >> self.n == 0);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mask, &BasePoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mask: Mask) -> BasePoly {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == d)
    }

    pub fn wedge(&self, other: &Wedge) -> Wedge {
        let mut out = Wedge::zero(self.n.max(other.n));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(neg) = wedge_sign(*m1, *m2) {
                    let c = c1 * c2;
                    out.add_term(m1 | m2, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Contraction from the left by a vector (for a form) or a covector (for
    /// a multivector): `i_v (f_1 ^ ... ^ f_j) = sum (-1)^{s-1} v(f_s) ...`.
    pub fn interior(&self, v: &[BasePoly]) -> Wedge {
        let mut out = Wedge::zero(self.n);
        for (m, c) in &self.terms {
            for (s, i) in mask_indices(*m).into_iter().enumerate() {
                let Some(vi) = v.get(i) else { continue };
                if vi.is_zero() {
                    continue;
                }
                let t = c * vi;
                out.add_term(m & !(1 << i), if s % 2 == 1 { -t } else { t });
            }
        }
        out
    }

    /// Contraction by a word of the opposite type: `i_{w}` with
    /// `w = v_1 ^ ... ^ v_r` applied as `i_{v_r} ... i_{v_1}`.
    pub fn interior_word(&self, w: &Wedge) -> Wedge {
        let mut out = Wedge::zero(self.n);
        for (mw, cw) in &w.terms {
            let mut cur = self.clone();
            for i in mask_indices(*mw) {
                let mut e = vec![BasePoly::zero(); self.n];
                e[i] = BasePoly::one();
                cur = cur.interior(&e);
            }
            out = &out + &cur.scale(cw);
        }
        out
    }

    /// Full pairing `<w, v>` with `<frame^I, frame_J> = delta_{IJ}`.
    pub fn pair(&self, other: &Wedge) -> BasePoly {
        let mut acc = BasePoly::zero();
        for (m, c) in &self.terms {
            if let Some(d) = other.terms.get(m) {
                acc = &acc + &(c * d);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BasePoly) -> Wedge {
        let mut out = Wedge::zero(self.n);
        for (m, d) in &self.terms {
            out.add_term(*m, d * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Wedge {
        self.scale(&BasePoly::constant(c.clone()))
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&BasePoly) -> BasePoly) -> Wedge {
        let mut out = Wedge::zero(self.n);
        for (m, d) in &self.terms {
            out.add_term(*m, f(d));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Wedge {
        self.map_coefficients(|c| BasePoly::constant(c.eval(point)))
    }

    /// Replaces frame element `i` by the degree-1 element `images[i]` (all of
    /// one target rank) and multiplies out. Pullback of a form along a frame
    /// map, or pushforward of a multivector.
    pub fn substitute_frame(&self, images: &[Wedge], target_rank: usize) -> Wedge {
        let mut out = Wedge::zero(target_rank);
        for (m, c) in &self.terms {
            let mut acc = Wedge::word(target_rank, 0, c.clone());
            for i in mask_indices(*m) {
                acc = acc.wedge(&images[i]);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Coefficients on the words of length `j`, in [`words`] order.
    pub fn coordinates(&self, j: usize) -> Vec<BasePoly> {
        words(self.n, j)
            .into_iter()
            .map(|m| self.coefficient(m))
            .collect()
    }

    pub fn from_coordinates(n: usize, j: usize, coords: &[BasePoly]) -> Wedge {
        let mut out = Wedge::zero(n);
        for (m, c) in words(n, j).into_iter().zip(coords) {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl std::ops::Add for &Wedge {
    type Output = Wedge;
    fn add(self, rhs: &Wedge) -> Wedge {
        let mut out = self.clone();
        out.n = out.n.max(rhs.n);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Wedge {
    type Output = Wedge;
    fn sub(self, rhs: &Wedge) -> Wedge {
        let mut out = self.clone();
        out.n = out.n.max(rhs.n);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Wedge {
    type Output = Wedge;
    fn neg(self) -> Wedge {
        self.map_coefficients(|c| -c.clone())
    }
}

impl fmt::Debug for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let idx: Vec<String> = mask_indices(*m)
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("({c})[{}]", idx.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
