use num_traits::Zero;

use super::rational::Rational;
use super::vector::RationalVector;

/// Unnormalized Gram–Schmidt. Returns pairwise orthogonal vectors spanning
/// the same space as `vs`, each with its exact squared norm; vectors that
/// reduce to zero are dropped.
pub fn gram_schmidt(vs: &[RationalVector]) -> Vec<(RationalVector, Rational)> {
    orthogonalize(vs, false)
}

/// Like [`gram_schmidt`], but each output vector is rescaled to a primitive
/// integer vector before it is used to reduce the next one. Same span and
/// orthogonality, much smaller numbers.
pub fn gram_schmidt_primitive(vs: &[RationalVector]) -> Vec<(RationalVector, Rational)> {
    orthogonalize(vs, true)
}

fn orthogonalize(vs: &[RationalVector], primitive: bool) -> Vec<(RationalVector, Rational)> {
    let mut out: Vec<(RationalVector, Rational)> = Vec::new();
    for v in vs {
        let mut u = v.clone();
        for (w, norm) in &out {
            let c = u.dot(w) / norm;
            if !c.is_zero() {
                u.sub_scaled(&c, w);
            }
        }
        if u.is_zero() {
            continue;
        }
        if primitive {
            u = u.to_primitive();
        }
        let norm = u.dot(&u);
        out.push((u, norm));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn orthonormal_input_unchanged() {
        let a = RationalVector::from_vec(vec![q(3, 5), q(4, 5)]);
        let b = RationalVector::from_vec(vec![q(-4, 5), q(3, 5)]);
        let out = gram_schmidt(&[a.clone(), b.clone()]);
        assert_eq!(out, vec![(a, int(1)), (b, int(1))]);
    }

    #[test]
    fn e1_and_sum() {
        let e1 = RationalVector::from_ints([1, 0]);
        let s = RationalVector::from_ints([1, 1]);
        let out = gram_schmidt(&[e1.clone(), s]);
        assert_eq!(out[0].0, e1);
        assert_eq!(out[1].0, RationalVector::from_ints([0, 1]));
    }

    #[test]
    fn dependent_triple() {
        let vs = [
            RationalVector::from_ints([1, 2]),
            RationalVector::from_ints([2, 4]),
            RationalVector::from_ints([0, 1]),
        ];
        for out in [gram_schmidt(&vs), gram_schmidt_primitive(&vs)] {
            assert_eq!(out.len(), 2);
            assert!(out[0].0.dot(&out[1].0).is_zero());
            for (v, n) in &out {
                assert_eq!(&v.dot(v), n);
            }
        }
    }
}
