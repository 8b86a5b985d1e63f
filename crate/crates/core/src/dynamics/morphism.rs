//! Quadratic rational maps `f(x) = (t1 x² + t2 x + t3) / (t4 x² + t5 x + t6)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::point::ProjPoint;
use super::scalar::QuadExtScalar;
use super::DynamicsError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticMorphism {
    t: [BigRational; 6],
    /// `t` scaled to coprime integers.
    int: [BigInt; 6],
}

/// The two critical points, living in `ℚ(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoints {
    pub p0: ProjPoint,
    pub q0: ProjPoint,
    pub d: BigInt,
    pub rational: bool,
}

fn homogeneous_resultant(t: &[BigRational; 6]) -> BigRational {
    let [t1, t2, t3, t4, t5, t6] = t;
    let u = t1 * t6 - t3 * t4;
    &u * &u - (t1 * t5 - t2 * t4) * (t2 * t6 - t3 * t5)
}

/// Writes `|n| = s² m` with small square factors moved into `s`.
fn strip_squares(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1000);
    while p <= limit {
        let p2 = &p * &p;
        while (&m % &p2).is_zero() {
            m /= &p2;
            s *= &p;
        }
        p += 1;
    }
    let root = m.sqrt();
    if &root * &root == m {
        s *= root;
        m = BigInt::one();
    }
    (s, m)
}

impl QuadraticMorphism {
    /// Rejects maps of degree below 2, i.e. when numerator and denominator
    /// share a root on the projective line.
    pub fn new(t: [BigRational; 6]) -> Result<Self, DynamicsError> {
        if homogeneous_resultant(&t).is_zero() {
            return Err(DynamicsError::Degenerate);
        }
        let lcm = t.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut int = t
            .clone()
            .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer());
        let content = int.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        for v in &mut int {
            *v /= &content;
        }
        Ok(QuadraticMorphism { t, int })
    }

    pub fn from_integers(t: [i64; 6]) -> Result<Self, DynamicsError> {
        Self::new(t.map(|v| BigRational::from_integer(v.into())))
    }

    pub fn coefficients(&self) -> &[BigRational; 6] {
        &self.t
    }

    /// Resultant of the homogeneous numerator and denominator.
    pub fn resultant(&self) -> BigRational {
        homogeneous_resultant(&self.t)
    }

    /// Coefficients `(A, B, C)` of `A X² + B X Y + C Y²`, whose roots are the
    /// critical points.
    pub fn critical_form(&self) -> [BigRational; 3] {
        let [t1, t2, t3, t4, t5, t6] = &self.t;
        let two = BigRational::from_integer(2.into());
        [
            t1 * t5 - t2 * t4,
            two * (t1 * t6 - t3 * t4),
            t2 * t6 - t3 * t5,
        ]
    }

    /// The critical points. `∞` comes first when it is critical; otherwise
    /// the root with `+√` comes first.
    pub fn critical_points(&self) -> Result<CriticalPoints, DynamicsError> {
        let [a, b, c] = self.critical_form();
        // The discriminant B² - 4AC is 4 times the resultant.
        let res = self.resultant();
        let n = res.numer().clone();
        let m = res.denom().clone();
        let (s, d) = strip_squares(&(&n * &m));
        let d = if n.is_negative() { -d } else { d };
        let rational = d.is_one();
        let (p0, q0) = if a.is_zero() {
            if b.is_zero() {
                return Err(DynamicsError::Degenerate);
            }
            (
                ProjPoint::Infinity,
                ProjPoint::Finite(QuadExtScalar::rational(-c / b, &d)),
            )
        } else {
            let two = BigRational::from_integer(2.into());
            let x = -&b / (&two * &a);
            // √Δ / (2A) = 2 s √d / (M · 2A) = s √d / (M A)
            let y = BigRational::from_integer(s) / (BigRational::from_integer(m) * &a);
            (
                ProjPoint::Finite(QuadExtScalar::new(x.clone(), y.clone(), d.clone())),
                ProjPoint::Finite(QuadExtScalar::new(x, -y, d.clone())),
            )
        };
        let crit = CriticalPoints {
            p0,
            q0,
            d,
            rational,
        };
        if self.eval_affine(&crit.p0, &crit.d) == self.eval_affine(&crit.q0, &crit.d) {
            return Err(DynamicsError::Degenerate);
        }
        Ok(crit)
    }

    fn lift(&self, d: &BigInt) -> [QuadExtScalar; 6] {
        self.t.clone().map(|v| QuadExtScalar::rational(v, d))
    }

    /// `f(x)` using the affine chart.
    pub fn eval_affine(&self, p: &ProjPoint, d: &BigInt) -> ProjPoint {
        let [t1, t2, t3, t4, t5, t6] = self.lift(d);
        match p {
            ProjPoint::Infinity => {
                if t4.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(t1.checked_div(&t4).expect("t4 is nonzero"))
                }
            }
            ProjPoint::Finite(x) => {
                let num = &(&(&t1 * x) + &t2) * x;
                let num = &num + &t3;
                let den = &(&(&t4 * x) + &t5) * x;
                let den = &den + &t6;
                ProjPoint::from_homogeneous(&num, &den)
                    .expect("a nondegenerate map has no base points")
            }
        }
    }

    /// `f(x)` computed on integral homogeneous coordinates, with a single
    /// reduction at the end. This is the evaluation used for iteration.
    pub fn eval(&self, p: &ProjPoint, d: &BigInt) -> ProjPoint {
        let (x, y) = match p {
            ProjPoint::Infinity => (
                ZSqrt::from_int(BigInt::one()),
                ZSqrt::from_int(BigInt::zero()),
            ),
            ProjPoint::Finite(v) => {
                let den = v.x().denom().lcm(v.y().denom());
                let a = v.x().numer() * (&den / v.x().denom());
                let b = v.y().numer() * (&den / v.y().denom());
                (ZSqrt { a, b }, ZSqrt::from_int(den))
            }
        };
        let xx = x.mul(&x, d);
        let xy = x.mul(&y, d);
        let yy = y.mul(&y, d);
        let [t1, t2, t3, t4, t5, t6] = &self.int;
        let num = xx.scale(t1).add(&xy.scale(t2)).add(&yy.scale(t3));
        let den = xx.scale(t4).add(&xy.scale(t5)).add(&yy.scale(t6));
        if den.is_zero() {
            return ProjPoint::Infinity;
        }
        // num / den = num · conj(den) / N(den)
        let top = num.mul(&den.conjugate(), d);
        let mut c = &den.a * &den.a - d * &den.b * &den.b;
        let g = top.a.gcd(&top.b).gcd(&c);
        let (mut a, mut b) = (top.a / &g, top.b / &g);
        c /= &g;
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        ProjPoint::Finite(QuadExtScalar::new(
            BigRational::new(a, c.clone()),
            BigRational::new(b, c),
            d.clone(),
        ))
    }

    /// `f(x)` through homogeneous coordinates `(λx : λ)`, `λ` a random
    /// nonzero rational. Used to cross-check [`QuadraticMorphism::eval_affine`].
    pub fn eval_homogeneous<R: Rng + ?Sized>(
        &self,
        p: &ProjPoint,
        d: &BigInt,
        rng: &mut R,
    ) -> ProjPoint {
        let mut lambda = 0i64;
        while lambda == 0 {
            lambda = rng.gen_range(-50..=50);
        }
        let lam = QuadExtScalar::rational(
            BigRational::new(lambda.into(), rng.gen_range(1..=50i64).into()),
            d,
        );
        let (x, y) = match p {
            ProjPoint::Infinity => (lam, QuadExtScalar::from_integer(0, d)),
            ProjPoint::Finite(v) => (&lam * v, lam),
        };
        let [t1, t2, t3, t4, t5, t6] = self.lift(d);
        let xx = &x * &x;
        let xy = &x * &y;
        let yy = &y * &y;
        let num = &(&(&t1 * &xx) + &(&t2 * &xy)) + &(&t3 * &yy);
        let den = &(&(&t4 * &xx) + &(&t5 * &xy)) + &(&t6 * &yy);
        ProjPoint::from_homogeneous(&num, &den).expect("a nondegenerate map has no base points")
    }
}

/// `a + b√d` with integer `a`, `b`; `d` is passed to each product.
struct ZSqrt {
    a: BigInt,
    b: BigInt,
}

impl ZSqrt {
    fn from_int(a: BigInt) -> Self {
        ZSqrt {
            a,
            b: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &ZSqrt, d: &BigInt) -> ZSqrt {
        let bb = if self.b.is_zero() || o.b.is_zero() {
            BigInt::zero()
        } else {
            d * &self.b * &o.b
        };
        ZSqrt {
            a: &self.a * &o.a + bb,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn scale(&self, k: &BigInt) -> ZSqrt {
        ZSqrt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    fn add(&self, o: &ZSqrt) -> ZSqrt {
        ZSqrt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn conjugate(&self) -> ZSqrt {
        ZSqrt {
            a: self.a.clone(),
            b: -&self.b,
        }
    }
}

impl FromStr for QuadraticMorphism {
    type Err = DynamicsError;

    /// Six comma-separated rationals such as `"1,0,-2,1,0,2"` or `"1/2,0,1,0,0,1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(DynamicsError::CoefficientParse(format!(
                "expected 6 coefficients, got {}",
                parts.len()
            )));
        }
        let mut t: [BigRational; 6] = Default::default();
        for (slot, part) in t.iter_mut().zip(&parts) {
            *slot = part.parse::<BigRational>().map_err(|_| {
                DynamicsError::CoefficientParse(format!("not a rational number: {part:?}"))
            })?;
        }
        QuadraticMorphism::new(t)
    }
}

fn polynomial(c: &[BigRational]) -> String {
    let mut out = String::new();
    for (coef, mono) in c.iter().zip(["x^2", "x", ""]) {
        if coef.is_zero() {
            continue;
        }
        let sign = if coef.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if coef.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let abs = coef.abs();
        if !abs.is_one() || mono.is_empty() {
            out.push_str(&abs.to_string());
        }
        out.push_str(mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for QuadraticMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / ({})",
            polynomial(&self.t[..3]),
            polynomial(&self.t[3..])
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> QuadExtScalar {
        QuadExtScalar::from_integer(n, &BigInt::one())
    }

    #[test]
    fn example_family_critical_points() {
        let f = QuadraticMorphism::from_integers([1, 0, -2, 1, 0, 2]).unwrap();
        let c = f.critical_points().unwrap();
        assert_eq!(c.p0, ProjPoint::Infinity);
        assert_eq!(c.q0, ProjPoint::Finite(rat(0)));
        assert!(c.rational);
    }

    #[test]
    fn monomial() {
        let f = QuadraticMorphism::from_integers([1, 0, 0, 0, 0, 1]).unwrap();
        let c = f.critical_points().unwrap();
        assert_eq!(c.p0, ProjPoint::Infinity);
        assert_eq!(c.q0, ProjPoint::Finite(rat(0)));
    }

    #[test]
    fn x_plus_inverse() {
        // (x² + 1) / x: P'Q - PQ' = 2x·x - (x² + 1) = x² - 1
        let f = QuadraticMorphism::from_integers([1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(
            f.critical_form().map(|v| v.to_integer()),
            [1.into(), 0.into(), (-1).into()]
        );
        let c = f.critical_points().unwrap();
        assert_eq!(
            (c.p0, c.q0),
            (ProjPoint::Finite(rat(1)), ProjPoint::Finite(rat(-1)))
        );
    }

    #[test]
    fn irrational_critical_points() {
        // (x² + x) / (x² + 1): critical points 1 ± √2.
        let f = QuadraticMorphism::from_integers([1, 1, 0, 1, 0, 1]).unwrap();
        let c = f.critical_points().unwrap();
        assert!(!c.rational);
        assert_eq!(c.d, BigInt::from(2));
        let [a, b, cc] = f.critical_form();
        for p in [&c.p0, &c.q0] {
            let ProjPoint::Finite(x) = p else {
                panic!("finite expected")
            };
            let lift = |v: &BigRational| QuadExtScalar::rational(v.clone(), &c.d);
            let val = &(&(&lift(&a) * x) + &lift(&b)) * x;
            assert!((&val + &lift(&cc)).is_zero());
        }
    }

    #[test]
    fn degenerate_maps_are_rejected() {
        assert_eq!(
            QuadraticMorphism::from_integers([1, -1, 0, 1, -1, 0]).unwrap_err(),
            DynamicsError::Degenerate
        );
        assert!(QuadraticMorphism::from_integers([0, 1, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn parse_coefficients() {
        let f: QuadraticMorphism = "1, 0, -2, 1, 0, 2".parse().unwrap();
        assert_eq!(
            f,
            QuadraticMorphism::from_integers([1, 0, -2, 1, 0, 2]).unwrap()
        );
        let g: QuadraticMorphism = "1/2,0,1,0,0,1".parse().unwrap();
        assert_eq!(g.coefficients()[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(f.to_string(), "(x^2 - 2) / (x^2 + 2)");
        assert_eq!(g.to_string(), "(1/2x^2 + 1) / (1)");
        assert!("1,2,3".parse::<QuadraticMorphism>().is_err());
        assert!("1,0,x,1,0,2".parse::<QuadraticMorphism>().is_err());
    }

    #[test]
    fn evaluation_charts_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut tested = 0;
        while tested < 1000 {
            let t: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-4..=4));
            let Ok(f) = QuadraticMorphism::from_integers(t) else {
                continue;
            };
            let c = f.critical_points().unwrap();
            let mut p = c.p0.clone();
            let mut q = c.q0.clone();
            for _ in 0..3 {
                let p_next = f.eval_affine(&p, &c.d);
                assert_eq!(p_next, f.eval_homogeneous(&p, &c.d, &mut rng));
                assert_eq!(p_next, f.eval(&p, &c.d));
                let q_next = f.eval_affine(&q, &c.d);
                assert_eq!(q_next, f.eval_homogeneous(&q, &c.d, &mut rng));
                assert_eq!(q_next, f.eval(&q, &c.d));
                p = p_next;
                q = q_next;
            }
            tested += 1;
        }
    }
}
