//! Identities of the differential Hopf algebra with divided powers, each
//! as a predicate on concrete elements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::glue_points;
use crate::diagram::Diagram;
use crate::error::Result;
use crate::hopf::{coproduct, coproduct_lin, Algebra, TensorComb};
use crate::lincomb::LinComb;
use crate::relations::binomial;
use crate::ring::Ring;

type Triple = BTreeMap<(Diagram, Diagram, Diagram), BigInt>;

fn odd(alg: &Algebra, x: &LinComb) -> Result<bool> {
    Ok(x.degree_is_odd(alg.parity())?.unwrap_or(false))
}

fn sign(neg: bool) -> BigInt {
    if neg {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Both tensor factors Arnold-reduced.
pub fn reduce_tensor(alg: &mut Algebra, t: &TensorComb) -> Result<TensorComb> {
    let mut out = TensorComb::zero();
    for ((l, r), c) in t.iter() {
        let rl = alg.reduce(&LinComb::from_diagram(l.clone()))?;
        let rr = alg.reduce(&LinComb::from_diagram(r.clone()))?;
        for (a, u) in rl.iter() {
            for (b, v) in rr.iter() {
                out.add_term(a.clone(), b.clone(), c * u * v);
            }
        }
    }
    Ok(out)
}

fn add_triple(t: &mut Triple, k: (Diagram, Diagram, Diagram), c: BigInt) {
    let e = t.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        t.retain(|_, v| !v.is_zero());
    }
}

/// `(xy)z = x(yz)`.
pub fn associativity(alg: &mut Algebra, x: &LinComb, y: &LinComb, z: &LinComb) -> Result<bool> {
    let xy = alg.product(x, y)?;
    let yz = alg.product(y, z)?;
    Ok(alg.product(&xy, z)? == alg.product(x, &yz)?)
}

/// `1·x = x = x·1`.
pub fn unit(alg: &mut Algebra, x: &LinComb) -> Result<bool> {
    let one = LinComb::unit();
    let x = alg.reduce(x)?;
    Ok(alg.product(&one, &x)? == x && alg.product(&x, &one)? == x)
}

/// `xy = (-1)^{|x||y|} yx`.
pub fn commutativity(alg: &mut Algebra, x: &LinComb, y: &LinComb) -> Result<bool> {
    let s = sign(odd(alg, x)? && odd(alg, y)?);
    Ok(alg.product(x, y)? == alg.product(y, x)?.scaled(&s))
}

/// `(Δ⊗1)Δ = (1⊗Δ)Δ`.
pub fn coassociativity(alg: &Algebra, x: &LinComb) -> bool {
    let parity = alg.parity();
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for ((l, r), c) in coproduct_lin(x, parity).iter() {
        for p in coproduct(l, parity) {
            add_triple(&mut left, (p.left, p.right, r.clone()), c * p.sign);
        }
        for p in coproduct(r, parity) {
            add_triple(&mut right, (l.clone(), p.left, p.right), c * p.sign);
        }
    }
    left == right
}

/// `(ε⊗1)Δx = x = (1⊗ε)Δx`.
pub fn counit(alg: &Algebra, x: &LinComb) -> bool {
    let (mut left, mut right) = (LinComb::zero(), LinComb::zero());
    for ((l, r), c) in coproduct_lin(x, alg.parity()).iter() {
        if l.n() == 0 {
            left.add_term(r.clone(), c.clone());
        }
        if r.n() == 0 {
            right.add_term(l.clone(), c.clone());
        }
    }
    left == *x && right == *x
}

/// `Δ(xy) = Δx·Δy`.
pub fn bialgebra(alg: &mut Algebra, x: &LinComb, y: &LinComb) -> Result<bool> {
    let parity = alg.parity();
    let xy = alg.product(x, y)?;
    let lhs = reduce_tensor(alg, &coproduct_lin(&xy, parity))?;
    let prod = coproduct_lin(x, parity).product(&coproduct_lin(y, parity), parity);
    Ok(lhs == reduce_tensor(alg, &prod)?)
}

fn diff(alg: &mut Algebra, x: &LinComb, horizontal: bool) -> Result<LinComb> {
    if horizontal {
        alg.d_h(x)
    } else {
        alg.d(x)
    }
}

/// `∂(xy) = ∂x·y + (-1)^{|x|} x·∂y`.
pub fn derivation(alg: &mut Algebra, x: &LinComb, y: &LinComb, horizontal: bool) -> Result<bool> {
    let xy = alg.product(x, y)?;
    let lhs = diff(alg, &xy, horizontal)?;
    let dx = diff(alg, x, horizontal)?;
    let dy = diff(alg, y, horizontal)?;
    let mut rhs = alg.product(&dx, y)?;
    let s = sign(odd(alg, x)?);
    rhs.add_scaled(&alg.product(x, &dy)?, &s);
    Ok(lhs == rhs)
}

/// `Δ∂ = (∂⊗1 + 1⊗∂)Δ`.
pub fn coderivation(alg: &mut Algebra, x: &LinComb, horizontal: bool) -> Result<bool> {
    let parity = alg.parity();
    let dx = diff(alg, x, horizontal)?;
    let lhs = reduce_tensor(alg, &coproduct_lin(&dx, parity))?;
    let mut rhs = TensorComb::zero();
    for ((l, r), c) in coproduct_lin(x, parity).iter() {
        let (l1, r1) = (LinComb::from_diagram(l.clone()), LinComb::from_diagram(r.clone()));
        let (dl, dr) = (diff(alg, &l1, horizontal)?, diff(alg, &r1, horizontal)?);
        let (rl, rr) = (alg.reduce(&l1)?, alg.reduce(&r1)?);
        for (a, u) in dl.iter() {
            for (b, v) in rr.iter() {
                rhs.add_term(a.clone(), b.clone(), c * u * v);
            }
        }
        let s = sign(l.degree_is_odd(parity));
        for (a, u) in rl.iter() {
            for (b, v) in dr.iter() {
                rhs.add_term(a.clone(), b.clone(), c * u * v * &s);
            }
        }
    }
    Ok(lhs == rhs)
}

/// `⟨A,B⟩ + (-1)^{|A||B|} ⟨B,A⟩ = A*B` for factors without empty terms.
pub fn divided_splits_product(alg: &mut Algebra, a: &LinComb, b: &LinComb) -> Result<bool> {
    let s = sign(odd(alg, a)? && odd(alg, b)?);
    let mut lhs = alg.divided(&[a.clone(), b.clone()])?;
    lhs.add_scaled(&alg.divided(&[b.clone(), a.clone()])?, &s);
    Ok(lhs == alg.product(a, b)?)
}

/// `A⊨B = (-1)^{(|A|-1)(|B|-1)} B⊨A`.
pub fn vdash_commutativity(alg: &mut Algebra, a: &LinComb, b: &LinComb) -> Result<bool> {
    let s = sign(!odd(alg, a)? && !odd(alg, b)?);
    Ok(alg.vdash(a, b)? == alg.vdash(b, a)?.scaled(&s))
}

/// `(A⊨B)⊨C = A⊨(B⊨C)`.
pub fn vdash_associativity(alg: &mut Algebra, a: &LinComb, b: &LinComb, c: &LinComb) -> Result<bool> {
    let ab = alg.vdash(a, b)?;
    let bc = alg.vdash(b, c)?;
    Ok(alg.vdash(&ab, c)? == alg.vdash(a, &bc)?)
}

/// The Leibniz rule for `∂⟨A_1,…,A_ℓ⟩`.
pub fn leibniz(alg: &mut Algebra, factors: &[LinComb], horizontal: bool) -> Result<bool> {
    let all = alg.divided(factors)?;
    let lhs = diff(alg, &all, horizontal)?;
    let mut rhs = LinComb::zero();
    let mut before = false;
    for k in 0..factors.len() {
        let mut f = factors.to_vec();
        f[k] = diff(alg, &factors[k], horizontal)?;
        rhs.add_scaled(&alg.divided(&f)?, &sign(before));
        before ^= odd(alg, &factors[k])?;
        if k + 1 < factors.len() {
            let glued = if horizontal {
                alg.vdash_h(&factors[k], &factors[k + 1])?
            } else {
                alg.vdash(&factors[k], &factors[k + 1])?
            };
            let mut g: Vec<LinComb> = factors[..k].to_vec();
            g.push(glued);
            g.extend_from_slice(&factors[k + 2..]);
            // (-1)^{|A_1|+…+|A_k|-1}
            rhs.add_scaled(&alg.divided(&g)?, &sign(!before));
        }
    }
    Ok(lhs == rhs)
}

/// The Leibniz rule for `∂⟨A_1,…,A_ℓ | D⟩`, with `∂_k D` in the gluing
/// terms.
pub fn bracket_leibniz(alg: &mut Algebra, factors: &[LinComb], d: &Diagram, horizontal: bool) -> Result<bool> {
    let parity = alg.parity();
    let all = alg.bracket_over(factors, d)?;
    let lhs = diff(alg, &all, horizontal)?;
    let mut rhs = LinComb::zero();
    let mut before = false;
    for k in 0..factors.len() {
        let mut f = factors.to_vec();
        f[k] = diff(alg, &factors[k], horizontal)?;
        rhs.add_scaled(&alg.bracket_over(&f, d)?, &sign(before));
        before ^= odd(alg, &factors[k])?;
        if k + 1 < factors.len() {
            let glued = if horizontal {
                alg.vdash_h(&factors[k], &factors[k + 1])?
            } else {
                alg.vdash(&factors[k], &factors[k + 1])?
            };
            let mut g: Vec<LinComb> = factors[..k].to_vec();
            g.push(glued);
            g.extend_from_slice(&factors[k + 2..]);
            // `∂_k D` here carries no `(-1)^k` position factor
            for (e, c) in glue_points(d, k, parity).iter() {
                let term = alg.bracket_over(&g, e)?;
                rhs.add_scaled(&term, &(c * sign(!before ^ (k % 2 == 1))));
            }
        }
    }
    Ok(lhs == rhs)
}

/// `x⊨x = 0` for even `x`.
pub fn self_vdash_vanishes(alg: &mut Algebra, x: &LinComb) -> Result<bool> {
    Ok(alg.vdash(x, x)?.is_zero())
}

fn power(alg: &mut Algebra, x: &LinComb, n: usize) -> Result<LinComb> {
    let mut out = LinComb::unit();
    for _ in 0..n {
        out = alg.product(&out, x)?;
    }
    Ok(out)
}

/// `x^⟨0⟩ = 1`, `x^⟨1⟩ = x` and `ℓ! x^⟨ℓ⟩ = x^ℓ`.
pub fn divided_power_normalization(alg: &mut Algebra, x: &LinComb, ell: usize) -> Result<bool> {
    let z = Ring::Integers;
    let x = alg.reduce(x)?;
    if alg.divided_power(&x, 0, z)? != LinComb::unit() || alg.divided_power(&x, 1, z)? != x {
        return Ok(false);
    }
    let fact: BigInt = (1..=ell).map(BigInt::from).product();
    Ok(alg.divided_power(&x, ell, z)?.scaled(&fact) == power(alg, &x, ell)?)
}

/// `(x+y)^⟨ℓ⟩ = Σ x^⟨a⟩ y^⟨ℓ-a⟩`.
pub fn divided_power_of_sum(alg: &mut Algebra, x: &LinComb, y: &LinComb, ell: usize) -> Result<bool> {
    let z = Ring::Integers;
    let lhs = alg.divided_power(&x.plus(y), ell, z)?;
    let mut rhs = LinComb::zero();
    for a in 0..=ell {
        let xa = alg.divided_power(x, a, z)?;
        let yb = alg.divided_power(y, ell - a, z)?;
        rhs.add_assign(&alg.product(&xa, &yb)?);
    }
    Ok(lhs == rhs)
}

/// `x^⟨a⟩ x^⟨b⟩ = C(a+b, a) x^⟨a+b⟩`.
pub fn divided_power_product(alg: &mut Algebra, x: &LinComb, a: usize, b: usize) -> Result<bool> {
    let z = Ring::Integers;
    let xa = alg.divided_power(x, a, z)?;
    let xb = alg.divided_power(x, b, z)?;
    let lhs = alg.product(&xa, &xb)?;
    Ok(lhs == alg.divided_power(x, a + b, z)?.scaled(&binomial(a + b, a)))
}

/// `(xy)^⟨n⟩ = x^n y^⟨n⟩`.
pub fn divided_power_of_product(alg: &mut Algebra, x: &LinComb, y: &LinComb, n: usize) -> Result<bool> {
    let z = Ring::Integers;
    let xy = alg.product(x, y)?;
    let lhs = alg.divided_power(&xy, n, z)?;
    let xn = power(alg, x, n)?;
    let yn = alg.divided_power(y, n, z)?;
    Ok(lhs == alg.product(&xn, &yn)?)
}

/// `∂x^⟨ℓ⟩ = ∂x · x^⟨ℓ-1⟩`.
pub fn divided_power_boundary(alg: &mut Algebra, x: &LinComb, ell: usize, horizontal: bool) -> Result<bool> {
    let z = Ring::Integers;
    let xl = alg.divided_power(x, ell, z)?;
    let lhs = diff(alg, &xl, horizontal)?;
    let dx = diff(alg, x, horizontal)?;
    let rest = alg.divided_power(x, ell - 1, z)?;
    Ok(lhs == alg.product(&dx, &rest)?)
}

/// `I(xy) = I(x) I(y)`.
pub fn iso_multiplicative(alg: &mut Algebra, x: &LinComb, y: &LinComb) -> Result<bool> {
    let xy = alg.product(x, y)?;
    let lhs = alg.iso_i(&xy)?;
    let (ix, iy) = (alg.iso_i(x)?, alg.iso_i(y)?);
    Ok(lhs == alg.product(&ix, &iy)?)
}

/// `I(x⊨y) = I(x) ⊨ I(y)`.
pub fn iso_respects_vdash(alg: &mut Algebra, x: &LinComb, y: &LinComb) -> Result<bool> {
    let v = alg.vdash_h(x, y)?;
    let lhs = alg.iso_i(&v)?;
    let (ix, iy) = (alg.iso_i(x)?, alg.iso_i(y)?);
    Ok(lhs == alg.vdash(&ix, &iy)?)
}

/// `ΔI = (I⊗I)Δ`.
pub fn iso_comultiplicative(alg: &mut Algebra, x: &LinComb) -> Result<bool> {
    let parity = alg.parity();
    let ix = alg.iso_i(x)?;
    let lhs = reduce_tensor(alg, &coproduct_lin(&ix, parity))?;
    let mut rhs = TensorComb::zero();
    for ((l, r), c) in coproduct_lin(x, parity).iter() {
        let il = alg.iso_i(&LinComb::from_diagram(l.clone()))?;
        let ir = alg.iso_i(&LinComb::from_diagram(r.clone()))?;
        for (a, u) in il.iter() {
            for (b, v) in ir.iter() {
                rhs.add_term(a.clone(), b.clone(), c * u * v);
            }
        }
    }
    Ok(lhs == reduce_tensor(alg, &rhs)?)
}

/// `I(x^⟨ℓ⟩) = I(x)^⟨ℓ⟩`.
pub fn iso_respects_divided_powers(alg: &mut Algebra, x: &LinComb, ell: usize) -> Result<bool> {
    let z = Ring::Integers;
    let xl = alg.divided_power(x, ell, z)?;
    let lhs = alg.iso_i(&xl)?;
    let ix = alg.iso_i(x)?;
    Ok(lhs == alg.divided_power(&ix, ell, z)?)
}

/// `I(D) = D + (terms with fewer top asterisks)` for a basis diagram `D`.
pub fn iso_unitriangular(alg: &mut Algebra, d: &Diagram) -> Result<bool> {
    let ix = alg.iso_i(&LinComb::from_diagram(d.clone()))?;
    Ok(ix.coefficient(d).is_one() && ix.diagrams().all(|e| e == d || e.top_total() < d.top_total()))
}

/// `I` commutes with the differentials and `I⁻¹ I = id`.
pub fn iso_chain_map_with_inverse(alg: &mut Algebra, x: &LinComb) -> Result<bool> {
    let ix = alg.iso_i(x)?;
    let dix = alg.d(&ix)?;
    let dx = alg.d_h(x)?;
    let back = alg.iso_i_inv(&ix)?;
    Ok(dix == alg.iso_i(&dx)? && back == alg.reduce(x)?)
}
