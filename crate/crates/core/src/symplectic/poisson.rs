use super::{CotangentChart, GeneratorKind, SymplecticError};
use crate::kernel::{same_table, Derivation, GradedPoly, KernelError};

/// `{g, .}` for the generator at table position `pos`.
///
/// The chart is fixed by `{p_i, x^j} = delta` and `{a_j, alpha^l} = delta`;
/// skew-symmetry then gives `{x^j, p_i} = -delta` and
/// `{alpha^l, a_j} = (-1)^k delta`.
pub fn generator_vf(chart: &CotangentChart, pos: usize) -> Derivation {
    let t = chart.table();
    let k = chart.k();
    let (kind, i) = chart.kind(pos);
    match kind {
        GeneratorKind::P => Derivation::partial(t, chart.x_pos(i)),
        GeneratorKind::A => Derivation::partial(t, chart.alpha_pos(i)),
        GeneratorKind::X => Derivation::partial(t, chart.p_pos(i)).scale(&crate::kernel::int(-1)),
        GeneratorKind::Alpha => {
            let d = Derivation::partial(t, chart.a_pos(i));
            if k % 2 == 1 {
                d.scale(&crate::kernel::int(-1))
            } else {
                d
            }
        }
    }
}

fn check(chart: &CotangentChart, f: &GradedPoly) -> Result<(), SymplecticError> {
    if same_table(f.table(), chart.table()) {
        Ok(())
    } else {
        Err(KernelError::TableMismatch.into())
    }
}

/// Hamiltonian vector field `{theta, .}` of a homogeneous element, of degree
/// `|theta| - k`. The zero element yields the zero derivation of degree 1.
pub fn hamiltonian_vf(
    theta: &GradedPoly,
    chart: &CotangentChart,
) -> Result<Derivation, SymplecticError> {
    check(chart, theta)?;
    let k = chart.k() as i64;
    let t = chart.table();
    if theta.is_zero() {
        return Ok(Derivation::zero(t, 1));
    }
    let d = theta
        .degree()
        .ok_or_else(|| SymplecticError::NotHomogeneous(theta.to_string()))? as i64;
    let values = (0..t.len())
        .map(|pos| {
            let g = t.degree(pos) as i64;
            let v = generator_vf(chart, pos).apply(theta)?;
            // {theta, g} = -(-1)^{(|theta|+k)(|g|+k)} {g, theta}
            Ok(if ((d + k) * (g + k)) % 2 == 0 { -v } else { v })
        })
        .collect::<Result<Vec<_>, KernelError>>()?;
    Ok(Derivation::new(t, d - k, values)?)
}

/// The degree `-k` Poisson bracket, extended biadditively over homogeneous
/// components of `f`.
pub fn poisson(
    f: &GradedPoly,
    g: &GradedPoly,
    chart: &CotangentChart,
) -> Result<GradedPoly, SymplecticError> {
    check(chart, f)?;
    check(chart, g)?;
    let mut out = GradedPoly::zero(chart.table());
    for (_, fd) in f.degree_components() {
        out += &hamiltonian_vf(&fd, chart)?.apply(g)?;
    }
    Ok(out)
}
