//! Pointwise linear algebra on the fibre `A + wedge^{k-1} A*`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::SubbundleSpec;
use crate::exterior::{words, Wedge};
use crate::kernel::{BasePoly, GradedPoly, Rational};
use crate::linalg::{nullspace, Echelon};
use crate::symplectic::{CotangentChart, Section};

pub(crate) fn constant(b: &BasePoly, point: &[Rational]) -> Rational {
    b.eval(point)
}

pub(crate) fn vector_at(v: &[BasePoly], point: &[Rational]) -> Vec<Rational> {
    v.iter().map(|c| constant(c, point)).collect()
}

pub(crate) fn form_row(w: &Wedge, j: usize, point: &[Rational]) -> Vec<Rational> {
    w.coordinates(j)
        .iter()
        .map(|c| constant(c, point))
        .collect()
}

pub(crate) fn row_form(row: &[Rational], n: usize, j: usize) -> Wedge {
    let coords: Vec<BasePoly> = row.iter().cloned().map(BasePoly::constant).collect();
    Wedge::from_coordinates(n, j, &coords)
}

pub(crate) fn constants(v: &[Rational]) -> Vec<BasePoly> {
    v.iter().cloned().map(BasePoly::constant).collect()
}

pub(crate) fn section_row(s: &Section, k: u32, point: &[Rational]) -> Vec<Rational> {
    let mut row = vector_at(&s.a, point);
    row.extend(form_row(&s.omega, k as usize - 1, point));
    row
}

pub(crate) fn row_section(row: &[Rational], n: usize, k: u32) -> Section {
    Section {
        a: constants(&row[..n]),
        omega: row_form(&row[n..], n, k as usize - 1),
    }
}

/// Degree-`(1 + extra)` coordinates of `eps ^ word` over covectors `eps`
/// and all words of length `extra`.
pub(crate) fn wedge_span(
    covectors: &[Vec<Rational>],
    extra: usize,
    n: usize,
) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for eps in covectors {
        let eps = Wedge::linear(&constants(eps));
        for w in words(n, extra) {
            let f = eps.wedge(&Wedge::word(n, w, BasePoly::int(1)));
            out.push(form_row(&f, extra + 1, &[]));
        }
    }
    out
}

/// Multivector coordinates of all `j`-fold wedges of the given vectors.
pub(crate) fn multivector_span(
    vectors: &[Vec<Rational>],
    j: usize,
    n: usize,
) -> Vec<Vec<Rational>> {
    words(vectors.len(), j)
        .into_iter()
        .map(|mask| {
            let mut acc = Wedge::one(n);
            for i in crate::exterior::mask_indices(mask) {
                acc = acc.wedge(&Wedge::linear(&constants(&vectors[i])));
            }
            form_row(&acc, j, &[])
        })
        .collect()
}

/// `<a + omega, b + eta> = i_a eta + i_b omega`.
pub(crate) fn pairing(s: &Section, t: &Section) -> Wedge {
    &t.omega.interior(&s.a) + &s.omega.interior(&t.a)
}

/// `L` at one point, reduced so that the rows with a pivot in `A` give a
/// basis of `p1(L)` with lifts, and the remaining rows a basis of
/// `L ∩ wedge^{k-1} A*`.
pub(crate) struct Fibre {
    pub n: usize,
    pub k: u32,
    pub basis: Vec<Vec<Rational>>,
    pub e: Vec<Vec<Rational>>,
    pub lifts: Vec<Vec<Rational>>,
    pub cap: Vec<Vec<Rational>>,
}

impl Fibre {
    pub fn at(spec: &SubbundleSpec, point: &[Rational]) -> Self {
        let (n, k) = (spec.n(), spec.k());
        let rows: Vec<Vec<Rational>> = spec
            .sections()
            .iter()
            .map(|s| section_row(s, k, point))
            .collect();
        Self::from_rows(&rows, n, k)
    }

    pub fn from_rows(rows: &[Vec<Rational>], n: usize, k: u32) -> Self {
        let width = n + words(n, k as usize - 1).len();
        let ech = Echelon::new(rows, width);
        let mut f = Fibre {
            n,
            k,
            basis: ech.rows().to_vec(),
            e: Vec::new(),
            lifts: Vec::new(),
            cap: Vec::new(),
        };
        for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
            if p < n {
                f.e.push(row[..n].to_vec());
                f.lifts.push(row[n..].to_vec());
            } else {
                f.cap.push(row[n..].to_vec());
            }
        }
        f
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn width(&self) -> usize {
        self.n + words(self.n, self.k as usize - 1).len()
    }

    pub fn p1_rank(&self) -> usize {
        self.e.len()
    }

    /// `p1(L)°` as covectors.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        nullspace(&self.e, self.n)
    }

    pub fn sections(&self) -> Vec<Section> {
        self.basis
            .iter()
            .map(|r| row_section(r, self.n, self.k))
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        Echelon::new(&self.basis, self.width()).contains(v)
    }
}

/// Coordinates of a fibre-linear function at a point: the base coordinates
/// are evaluated and dropped from the monomial key.
pub(crate) fn fibre_coords(
    p: &GradedPoly,
    chart: &CotangentChart,
    point: &[Rational],
) -> BTreeMap<Vec<u32>, Rational> {
    let m = chart.m();
    let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let ex = mono.exponents();
        let base = BasePoly::from_terms([(ex[..m].to_vec(), c.clone())]);
        let v = base.eval(point);
        if v.is_zero() {
            continue;
        }
        let mut key = ex.to_vec();
        key[..m].iter_mut().for_each(|e| *e = 0);
        *out.entry(key).or_insert_with(Rational::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}
