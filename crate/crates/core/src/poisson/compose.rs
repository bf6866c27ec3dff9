//! Operadic composition and the cosimplicial maps built from `m` and `u`.

use super::algebra::{self, Coeffs, Poly};
use super::{coeffs_for, product2, unit, PoissonElement, PoissonMonomial};
use crate::error::{out_of_range, GwError, Result};

fn shift_blocks(blocks: &[Vec<u8>], by: u8) -> Vec<Vec<u8>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|l| l + by).collect())
        .collect()
}

/// `x ∘ᵢ y` for a single pair of monomials, accumulated into `out`.
///
/// The monomial `x` is read as the tree `((B₁·B₂)·B₃)⋯` of left-normed
/// brackets. Plugging `y` into leaf `i` costs the Koszul sign
/// `(-1)^{|y|·(|R| + e)}` at every bracket ancestor where the leaf sits on
/// the left (`R` the right subtree) and `(-1)^{|y||R|}` at product ancestors.
fn compose_mono(x: &PoissonMonomial, i0: u8, y: &PoissonMonomial, e: u32, k: Coeffs, c: i64, out: &mut Poly) {
    let m = y.arity() as u8;
    let relabel = |l: u8| -> u8 {
        if l < i0 {
            l
        } else {
            l + m - 1
        }
    };
    let (j, p) = x
        .blocks()
        .iter()
        .enumerate()
        .find_map(|(j, b)| b.iter().position(|&l| l == i0).map(|p| (j, p)))
        .expect("slot label occurs in the monomial");
    let yd = y.degree(e + 1);
    let blk = &x.blocks()[j];
    let right: u32 = x.blocks()[j + 1..]
        .iter()
        .map(|b| algebra::block_degree(b, e))
        .sum();
    let exponent = yd * (e * (blk.len() as u32 - 1 - p as u32) + right);
    let s = algebra::sign(exponent % 2 == 1);

    let mut ypoly = Poly::new();
    ypoly.insert(shift_blocks(y.blocks(), i0), 1);

    let mut value = algebra::unit();
    for (bj, b) in x.blocks().iter().enumerate() {
        let factor = if bj == j {
            let args: Vec<Poly> = b
                .iter()
                .map(|&l| {
                    if l == i0 {
                        ypoly.clone()
                    } else {
                        algebra::generator(relabel(l))
                    }
                })
                .collect();
            algebra::left_normed(&args, e, k)
        } else {
            let mut f = Poly::new();
            f.insert(vec![b.iter().map(|&l| relabel(l)).collect()], 1);
            f
        };
        value = algebra::mul(&value, &factor, e, k);
        if value.is_empty() {
            return;
        }
    }
    algebra::add_poly(out, &value, k.mul(c, s), k);
}

/// Unit insertion at a 0-based slot: relabeling for `m = 0` lowers the labels above.
fn compose_unit_mono(x: &PoissonMonomial, i0: u8, k: Coeffs, c: i64, out: &mut Poly) {
    let mut blocks = Vec::with_capacity(x.blocks().len());
    for b in x.blocks() {
        if b.contains(&i0) {
            if b.len() > 1 {
                // bracket with the unit vanishes
                return;
            }
            continue;
        }
        blocks.push(b.iter().map(|&l| if l > i0 { l - 1 } else { l }).collect());
    }
    algebra::add_term(out, blocks, c, k);
}

/// Operadic composition `x ∘ᵢ y`, slot `i` 1-based.
pub fn compose(x: &PoissonElement, i: usize, y: &PoissonElement) -> Result<PoissonElement> {
    if x.ring != y.ring {
        return Err(GwError::RingMismatch(x.ring.to_string(), y.ring.to_string()));
    }
    if x.d != y.d {
        return Err(GwError::Unsupported(format!("ambient dimensions {} and {} differ", x.d, y.d)));
    }
    if i == 0 || i > x.arity {
        return Err(out_of_range("slot", i as i64, format!("1 <= i <= {}", x.arity)));
    }
    let k = coeffs_for(x.ring)?;
    let e = x.d - 1;
    let i0 = (i - 1) as u8;
    let mut out = Poly::new();
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            let c = k.mul(*cx, *cy);
            if my.arity() == 0 {
                compose_unit_mono(mx, i0, k, c, &mut out);
            } else {
                compose_mono(mx, i0, my, e, k, c, &mut out);
            }
        }
    }
    Ok(PoissonElement::from_poly(x.ring, x.d, x.arity + y.arity - 1, out))
}

/// Coface `dⁱ: P(q) → P(q+1)`, `0 ≤ i ≤ q+1`.
///
/// `d⁰` puts a new first point in front, `d^{q+1}` a new last point behind,
/// and the inner cofaces double a point by composing with the product.
pub fn coface(q: usize, i: usize, x: &PoissonElement) -> Result<PoissonElement> {
    if x.arity != q {
        return Err(out_of_range("arity", x.arity as i64, format!("element must have arity q = {q}")));
    }
    if i > q + 1 {
        return Err(out_of_range("coface index", i as i64, format!("0 <= i <= {}", q + 1)));
    }
    let m = product2(x.ring, x.d)?;
    if i == 0 {
        compose(&m, 2, x)
    } else if i == q + 1 {
        compose(&m, 1, x)
    } else {
        compose(x, i, &m)
    }
}

/// Codegeneracy `sⁱ: P(q) → P(q-1)`, `1 ≤ i ≤ q`: insert the unit at slot `i`.
pub fn codegeneracy(q: usize, i: usize, x: &PoissonElement) -> Result<PoissonElement> {
    if x.arity != q {
        return Err(out_of_range("arity", x.arity as i64, format!("element must have arity q = {q}")));
    }
    if q == 0 || i == 0 || i > q {
        return Err(out_of_range("codegeneracy index", i as i64, format!("1 <= i <= {q}")));
    }
    compose(x, i, &unit(x.ring, x.d)?)
}

#[cfg(test)]
mod tests {
    use super::super::{normalize, poisson_basis};
    use super::*;
    use crate::page::Ring;

    fn el(s: &str, d: u32) -> PoissonElement {
        normalize(s, d, Ring::Z).unwrap()
    }

    #[test]
    fn products_substitute_into_products() {
        for d in [3, 4] {
            let got = compose(&el("1*2", d), 1, &el("1*2", d)).unwrap();
            assert_eq!(got.to_string(), "1*2*3");
        }
    }

    #[test]
    fn bracket_with_product_expands_by_leibniz() {
        // [x₁x₂, x₃] = x₁[x₂,x₃] + [x₁,x₃]x₂ for either parity
        for d in [3, 4] {
            let got = compose(&el("[1,2]", d), 1, &el("1*2", d)).unwrap();
            assert_eq!(got.to_string(), "1*[2,3] + [1,3]*2", "d = {d}");
        }
    }

    #[test]
    fn unit_kills_brackets() {
        let u = unit(Ring::Z, 3).unwrap();
        assert_eq!(compose(&el("1*2", 3), 1, &u).unwrap().to_string(), "1");
        assert!(compose(&el("[1,2]", 3), 1, &u).unwrap().is_zero());
        assert_eq!(codegeneracy(3, 3, &el("[1,2]*3", 3)).unwrap().to_string(), "[1,2]");
    }

    #[test]
    fn coface_examples() {
        let x = el("1", 3);
        for i in 0..=2 {
            assert_eq!(coface(1, i, &x).unwrap().to_string(), "1*2");
        }
        assert!(coface(1, 3, &x).is_err());
        assert!(codegeneracy(1, 2, &x).is_err());
    }

    #[test]
    fn sequential_and_parallel_associativity() {
        for d in [3, 4] {
            let xs = poisson_basis(3, d, 1).unwrap();
            let ys = poisson_basis(2, d, 1).unwrap();
            let zs = poisson_basis(3, d, 2).unwrap();
            for x in &xs {
                for y in &ys {
                    for z in &zs {
                        let x = PoissonElement::from_monomial(Ring::Z, d, x.clone()).unwrap();
                        let y = PoissonElement::from_monomial(Ring::Z, d, y.clone()).unwrap();
                        let z = PoissonElement::from_monomial(Ring::Z, d, z.clone()).unwrap();
                        // sequential: (x ∘₂ y) ∘₃ z = x ∘₂ (y ∘₂ z)
                        let a = compose(&compose(&x, 2, &y).unwrap(), 3, &z).unwrap();
                        let b = compose(&x, 2, &compose(&y, 2, &z).unwrap()).unwrap();
                        assert_eq!(a, b);
                        // parallel: (x ∘₁ y) ∘_{3+1} z = (-1)^{|y||z|} (x ∘₃ z) ∘₁ y
                        let a = compose(&compose(&x, 1, &y).unwrap(), 4, &z).unwrap();
                        let b = compose(&compose(&x, 3, &z).unwrap(), 1, &y).unwrap();
                        let yz = y.degree().unwrap() * z.degree().unwrap();
                        let b = if yz % 2 == 1 { b.scale(-1) } else { b };
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn cosimplicial_identities_on_basis() {
        for d in [3, 4] {
            for q in 1..=3usize {
                for n in 0..q {
                    for m in poisson_basis(q, d, n).unwrap() {
                        let x = PoissonElement::from_monomial(Ring::Z, d, m).unwrap();
                        for j in 0..=q + 2 {
                            for i in 0..j {
                                // dʲdⁱ = dⁱdʲ⁻¹ for i < j
                                let a = coface(q + 1, j, &coface(q, i, &x).unwrap()).unwrap();
                                let b = coface(q + 1, i, &coface(q, j - 1, &x).unwrap()).unwrap();
                                assert_eq!(a, b, "d={d} q={q} i={i} j={j} x={x}");
                            }
                        }
                        // codegeneracies sʲ (1-based here) against cofaces
                        for j in 1..=q + 1 {
                            for i in 0..=q + 1 {
                                let got = codegeneracy(q + 1, j, &coface(q, i, &x).unwrap()).unwrap();
                                let jj = j - 1;
                                let want = if i < jj {
                                    coface(q - 1, i, &codegeneracy(q, jj, &x).unwrap()).unwrap()
                                } else if i == jj || i == jj + 1 {
                                    x.clone()
                                } else {
                                    coface(q - 1, i - 1, &codegeneracy(q, j, &x).unwrap()).unwrap()
                                };
                                assert_eq!(got, want, "d={d} q={q} s{j} d{i} x={x}");
                            }
                        }
                    }
                }
            }
        }
    }
}
