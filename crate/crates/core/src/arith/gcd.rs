//! Multivariate gcd over `Z[x_1..x_n, q]`.
//!
//! The main entry point tries the heuristic evaluation/interpolation gcd
//! (large integer evaluation of one variable at a time, balanced base-ξ
//! reconstruction, trial division as the certificate) and falls back to a
//! recursive primitive PRS when the heuristic gives up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::Poly;

const HEU_ATTEMPTS: usize = 6;

/// Greatest common divisor of two polynomials with nonnegative exponents,
/// normalized to a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars());
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    // monomial part
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let mono = ma.meet(&mb);
    let a = a.mul_monomial(&ma.inv());
    let b = b.mul_monomial(&mb.inv());
    let core = gcd_stripped(&a, &b);
    normalize_sign(core.mul_monomial(&mono))
}

/// gcd of polynomials with no monomial content.
fn gcd_stripped(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Poly::constant(n, a.content().gcd(&b.content()));
    }
    if a == b {
        return a.clone();
    }
    let vars: Vec<usize> = (0..=n).filter(|&v| a.uses_var(v) || b.uses_var(v)).collect();
    if let Some((h, _, _)) = heu_gcd(a, b, &vars) {
        return h;
    }
    prs_gcd(a, b, &vars)
}

fn normalize_sign(p: Poly) -> Poly {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn heu_gcd(f: &Poly, g: &Poly, vars: &[usize]) -> Option<(Poly, Poly, Poly)> {
    let n = f.nvars();
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let Some((&v, rest)) = vars.split_last() else {
        let fc = f.constant_value()?;
        let gc = g.constant_value()?;
        let h = fc.gcd(&gc);
        if h.is_zero() {
            return None;
        }
        return Some((Poly::constant(n, h.clone()), Poly::constant(n, &fc / &h), Poly::constant(n, &gc / &h)));
    };
    let gc = f.content().gcd(&g.content());
    let f = f.div_scalar(&gc);
    let g = g.div_scalar(&gc);
    let f_norm = f.max_norm();
    let g_norm = g.max_norm();
    let small = f_norm.clone().min(g_norm.clone());
    let bound: BigInt = BigInt::from(2) * &small + 29;
    let lc_f = f.leading_coeff().abs();
    let lc_g = g.leading_coeff().abs();
    let alt: BigInt = BigInt::from(2) * (&f_norm / &lc_f).min(&g_norm / &lc_g) + 4;
    let mut xi = bound.clone().min(BigInt::from(99) * bound.sqrt()).max(alt);

    for _ in 0..HEU_ATTEMPTS {
        let ff = f.eval_var(v, &xi);
        let gg = g.eval_var(v, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some((h, cff, cfg)) = heu_gcd(&ff, &gg, rest) {
                let h = primitive(&interpolate(&h, &xi, v));
                if let Some(cf) = f.div_exact(&h) {
                    if let Some(cg) = g.div_exact(&h) {
                        return Some((h.scale(&gc), cf, cg));
                    }
                }
                let cff = interpolate(&cff, &xi, v);
                if !cff.is_zero() {
                    if let Some(h) = f.div_exact(&cff) {
                        if !h.is_zero() {
                            if let Some(cg) = g.div_exact(&h) {
                                return Some((h.scale(&gc), cff, cg));
                            }
                        }
                    }
                }
                let cfg = interpolate(&cfg, &xi, v);
                if !cfg.is_zero() {
                    if let Some(h) = g.div_exact(&cfg) {
                        if !h.is_zero() {
                            if let Some(cf) = f.div_exact(&h) {
                                return Some((h.scale(&gc), cf, cfg));
                            }
                        }
                    }
                }
            }
        }
        xi = BigInt::from(73794) * &xi * xi.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Rebuild a polynomial in variable `v` from its image at `v = xi` using the
/// balanced base-`xi` expansion of every integer coefficient.
fn interpolate(h: &Poly, xi: &BigInt, v: usize) -> Poly {
    let n = h.nvars();
    let half = xi / 2;
    let mut out = Poly::zero(n);
    for (m, c) in h.terms() {
        let mut c = c.clone();
        let mut e = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            c = (&c - &d) / xi;
            if !d.is_zero() {
                let mut k = *m;
                k.set_var_exp(v, n, e);
                out.add_term(k, d);
            }
            e += 1;
        }
    }
    out
}

fn primitive(p: &Poly) -> Poly {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        p.clone()
    } else {
        p.div_scalar(&c)
    }
}

/// Recursive primitive polynomial remainder sequence gcd.
pub(crate) fn prs_gcd(a: &Poly, b: &Poly, vars: &[usize]) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let Some((&v, rest)) = vars.split_first() else {
        return Poly::constant(n, a.content().gcd(&b.content()));
    };
    let ca = content_in(a, v, rest);
    let cb = content_in(b, v, rest);
    let c = prs_gcd(&ca, &cb, rest);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut r = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < r.degree_in(v) {
        std::mem::swap(&mut p, &mut r);
    }
    while !r.is_zero() && r.degree_in(v) > 0 {
        let rem = pseudo_rem(&p, &r, v);
        p = r;
        r = if rem.is_zero() { rem } else { primitive_in(&rem, v, rest) };
    }
    let h = if r.is_zero() { primitive_in(&p, v, rest) } else { Poly::one(n) };
    normalize_sign(h.try_mul(&c).unwrap())
}

fn content_in(p: &Poly, v: usize, rest: &[usize]) -> Poly {
    let mut acc = Poly::zero(p.nvars());
    for coeff in p.coefficients_in(v).into_values() {
        acc = prs_gcd(&acc, &coeff, rest);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_in(p: &Poly, v: usize, rest: &[usize]) -> Poly {
    let c = content_in(p, v, rest);
    p.div_exact(&c).expect("content divides")
}

/// `lc(b)^k * a mod b` with respect to variable `v`.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = a.nvars();
    let db = b.degree_in(v);
    let coeffs = b.coefficients_in(v);
    let lcb = coeffs.get(&db).cloned().unwrap();
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lcr = r.coefficients_in(v).remove(&dr).unwrap();
        let mut shift = Monomial::ONE;
        shift.set_var_exp(v, n, dr - db);
        let t = b.try_mul(&lcr).unwrap().mul_monomial(&shift);
        r = r.try_mul(&lcb).unwrap().try_sub(&t).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, v: usize) -> Poly {
        if v == n {
            Poly::monomial(n, Monomial::q(1))
        } else {
            Poly::monomial(n, Monomial::x(v + 1, 1))
        }
    }

    fn c(n: usize, k: i64) -> Poly {
        Poly::constant(n, BigInt::from(k))
    }

    #[test]
    fn gcd_of_products_with_shared_factor() {
        let n = 3;
        let (x1, x2, x3, q) = (var(n, 0), var(n, 1), var(n, 2), var(n, 3));
        // shared factor (q^2 x1 - x2)(x1 - x3)
        let g = q.pow(2).try_mul(&x1).unwrap().try_sub(&x2).unwrap().try_mul(&x1.try_sub(&x3).unwrap()).unwrap();
        let a = g.try_mul(&x2.try_add(&c(n, 3)).unwrap()).unwrap();
        let b = g.try_mul(&q.try_sub(&x3).unwrap().pow(2)).unwrap().scale(&BigInt::from(6));
        let h = gcd(&a, &b);
        assert_eq!(h, normalize_sign(g.clone()));
        let vars: Vec<usize> = (0..=n).collect();
        assert_eq!(prs_gcd(&a, &b, &vars), normalize_sign(g));
    }

    #[test]
    fn coprime_inputs_give_one() {
        let n = 2;
        let a = var(n, 0).try_sub(&var(n, 1)).unwrap();
        let b = var(n, 0).try_add(&var(n, 1)).unwrap();
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn integer_and_monomial_content() {
        let n = 1;
        let x = var(n, 0);
        let a = x.pow(3).scale(&BigInt::from(4));
        let b = x.pow(2).try_mul(&var(n, 1)).unwrap().scale(&BigInt::from(6));
        assert_eq!(gcd(&a, &b), x.pow(2).scale(&BigInt::from(2)));
    }
}
