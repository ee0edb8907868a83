//! Exact minors and total positivity, Sturm-certified isolation of positive
//! simple zeros, interlacing, and the map from component zeros to the
//! zeros of the symmetric sequence on the star.

use std::io::Write;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{format_rational, Rational, Ring, UniPoly};

/// Default minor-order cap for polynomial-ring entries.
pub const SYMBOLIC_MAX_ORDER: usize = 3;
/// Largest leading block enumerated for polynomial-ring entries.
pub const SYMBOLIC_MAX_BLOCK: usize = 6;
/// Largest leading block enumerated at full order for rational entries.
pub const RATIONAL_MAX_BLOCK: usize = 8;
/// Boxes are never refined below `2^-FLOOR_BITS`.
pub const FLOOR_BITS: usize = 256;

pub fn minor_det<R: Ring>(m: &Matrix<R>, rows: &[usize], cols: &[usize]) -> Result<R> {
    m.minor(rows, cols)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinorReport<R> {
    pub order: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: R,
    /// Coefficientwise for polynomials, by sign for rationals.
    pub nonneg: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TpReport<R> {
    pub block: usize,
    pub max_order: usize,
    pub minors: Vec<MinorReport<R>>,
}

impl<R: Ring> TpReport<R> {
    pub fn passed(&self) -> bool {
        self.minors.iter().all(|m| m.nonneg)
    }

    pub fn failures(&self) -> impl Iterator<Item = &MinorReport<R>> {
        self.minors.iter().filter(|m| !m.nonneg)
    }

    /// Columns `order, rows, cols, nonneg, value`; index sets are
    /// space-separated.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::InvalidParameter(format!("csv output failed: {e}"));
        w.write_record(["order", "rows", "cols", "nonneg", "value"]).map_err(io)?;
        for m in &self.minors {
            w.write_record([
                m.order.to_string(),
                m.rows.iter().join(" "),
                m.cols.iter().join(" "),
                m.nonneg.to_string(),
                m.value.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::InvalidParameter(format!("csv output failed: {e}")))
    }
}

/// Every minor of order `1..=max_order` of the leading `block x block`
/// submatrix, in lexicographic order of (order, rows, cols).
pub fn tp_check<R: Ring>(m: &Matrix<R>, block: usize, max_order: usize) -> Result<TpReport<R>> {
    if block > m.size() {
        return Err(Error::IndexOutOfRange {
            index: block,
            dim: m.size(),
        });
    }
    let max_order = max_order.min(block);
    let jobs: Vec<(Vec<usize>, Vec<usize>)> = (1..=max_order)
        .flat_map(|d| {
            (0..block).combinations(d).flat_map(move |rows| {
                (0..block).combinations(d).map(move |cols| (rows.clone(), cols))
            })
        })
        .collect();
    let minors = jobs
        .into_par_iter()
        .map(|(rows, cols)| {
            let value = m.minor(&rows, &cols)?;
            Ok(MinorReport {
                order: rows.len(),
                nonneg: value.is_nonnegative(),
                rows,
                cols,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TpReport {
        block,
        max_order,
        minors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscillationVerdict {
    pub totally_positive: bool,
    pub nonsingular: bool,
    pub off_diagonals_positive: bool,
}

impl OscillationVerdict {
    pub fn passed(&self) -> bool {
        self.totally_positive && self.nonsingular && self.off_diagonals_positive
    }
}

/// Totally nonnegative, nonsingular, with positive sub- and supradiagonal.
pub fn oscillation_check(m: &Matrix<Rational>) -> Result<OscillationVerdict> {
    let n = m.size();
    let all: Vec<usize> = (0..n).collect();
    let off_diagonals_positive =
        (1..n).all(|i| m.get(i, i - 1).is_positive() && m.get(i - 1, i).is_positive());
    Ok(OscillationVerdict {
        totally_positive: tp_check(m, n, n)?.passed(),
        nonsingular: !m.minor(&all, &all)?.is_zero(),
        off_diagonals_positive,
    })
}

/// Open interval `(lo, hi)` holding exactly one simple root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBox {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootBox {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Positive multiple of a rational polynomial with coprime integer
/// coefficients; it has the same signs everywhere and evaluates without
/// fraction reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn new(p: &UniPoly<Rational>) -> Self {
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return IntPoly(ints);
        }
        IntPoly(ints.into_iter().map(|c| c / &g).collect())
    }

    fn leading_sign(&self) -> i32 {
        self.0.last().map_or(0, |c| c.signum().to_i32().unwrap_or(0))
    }

    /// Sign at `x = p/q` from `sum c_i p^i q^(d-i)`, as `q > 0`.
    fn sign_at(&self, x: &Rational) -> i32 {
        let Some(last) = self.0.last() else {
            return 0;
        };
        let (num, den) = (x.numer(), x.denom());
        let mut acc = last.clone();
        let mut qpow = BigInt::one();
        for c in self.0.iter().rev().skip(1) {
            qpow *= den;
            acc = acc * num + c * &qpow;
        }
        acc.signum().to_i32().unwrap_or(0)
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly<Rational>) -> Self {
        let mut chain = vec![p.clone(), p.differentiate()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        SturmChain {
            chain: chain.iter().map(IntPoly::new).collect(),
        }
    }

    fn variations_at(&self, x: &Rational) -> usize {
        variations(self.chain.iter().map(|q| q.sign_at(x)))
    }

    fn variations_at_infinity(&self) -> usize {
        variations(self.chain.iter().map(IntPoly::leading_sign))
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct roots in `(a, oo)`.
    pub fn count_above(&self, a: &Rational) -> usize {
        self.variations_at(a) - self.variations_at_infinity()
    }
}

/// A polynomial together with certified boxes for all of its roots.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoots {
    pub poly: UniPoly<Rational>,
    pub boxes: Vec<RootBox>,
    scaled: IntPoly,
}

impl IsolatedRoots {
    pub fn new(poly: UniPoly<Rational>, boxes: Vec<RootBox>) -> Self {
        let scaled = IntPoly::new(&poly);
        IsolatedRoots {
            poly,
            boxes,
            scaled,
        }
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        self.scaled.sign_at(x)
    }

    /// Halves the box around root `i`, keeping endpoints off the root.
    pub fn refine(&mut self, i: usize) {
        self.boxes[i] = halve(&self.scaled, &self.boxes[i]);
    }

    pub fn refine_to(&mut self, width: &Rational) {
        for i in 0..self.boxes.len() {
            while self.boxes[i].width() > *width {
                self.refine(i);
            }
        }
    }
}

// Sign bisection of a box holding one simple root with nonzero endpoint signs.
fn halve(p: &IntPoly, b: &RootBox) -> RootBox {
    let mid = b.midpoint();
    let s_mid = p.sign_at(&mid);
    if s_mid == 0 {
        let quarter = b.width() / Rational::from_integer(4.into());
        return RootBox {
            lo: &mid - &quarter,
            hi: &mid + &quarter,
        };
    }
    if s_mid == p.sign_at(&b.lo) {
        RootBox {
            lo: mid,
            hi: b.hi.clone(),
        }
    } else {
        RootBox {
            lo: b.lo.clone(),
            hi: mid,
        }
    }
}

// A point strictly inside (a, b) that is not a root: the midpoint when
// possible.
fn split_point(p: &IntPoly, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    for den in 2i64.. {
        for num in 1..den {
            let t = a + &w * Rational::new(num.into(), den.into());
            if p.sign_at(&t) != 0 {
                return t;
            }
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

/// Certifies that `p` is squarefree with every root real and positive, and
/// returns one box per root, of width at most `width`, in increasing order.
pub fn isolate_positive_simple_roots(
    p: &UniPoly<Rational>,
    width: &Rational,
) -> Result<IsolatedRoots> {
    let deg = match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if !width.is_positive() {
        return Err(Error::InvalidParameter("box width must be positive".into()));
    }
    if p.gcd(&p.differentiate()).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let sturm = SturmChain::new(p);
    let scaled = IntPoly::new(p);
    let zero = Rational::zero();
    let positive = sturm.count_above(&zero);
    if positive != deg || scaled.sign_at(&zero) == 0 {
        return Err(Error::RootsNotAllPositive(positive));
    }
    // Cauchy bound 1 + max |a_i / a_n|, raised to a power of two so that
    // bisection points stay dyadic.
    let lead = p.leading().expect("nonconstant").abs();
    let cauchy = Rational::one()
        + p.coeffs()[..deg]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
    let mut bound = Rational::one();
    while bound <= cauchy {
        bound *= Rational::from_integer(2.into());
    }

    let mut boxes = Vec::with_capacity(deg);
    let mut stack = vec![(zero, bound, deg)];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            let mut b = RootBox { lo: a, hi: b };
            while b.width() > *width {
                b = halve(&scaled, &b);
            }
            boxes.push(b);
            continue;
        }
        let m = split_point(&scaled, &a, &b);
        let left = sturm.count(&a, &m);
        stack.push((m.clone(), b, count - left));
        stack.push((a, m, left));
    }
    boxes.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(IsolatedRoots::new(p.clone(), boxes))
}

/// Certifies `y_1 < x_1 < y_2 < ... < x_n < y_{n+1}` for the roots `x` of
/// `lower` and `y` of `upper`, refining boxes as needed. A shared root, or a
/// certain violation of the order, gives `false`.
pub fn interlacing_check(lower: &IsolatedRoots, upper: &IsolatedRoots) -> Result<bool> {
    if upper.boxes.len() != lower.boxes.len() + 1 {
        return Ok(false);
    }
    if lower.boxes.is_empty() {
        return Ok(true);
    }
    if lower.poly.gcd(&upper.poly).degree() != Some(0) {
        return Ok(false);
    }
    let mut lower = lower.clone();
    let mut upper = upper.clone();
    let floor = Rational::new(
        1.into(),
        num_traits::pow(BigInt::from(2), FLOOR_BITS),
    );
    loop {
        // (is_upper, index) in the required order
        let order: Vec<(bool, usize)> = (0..lower.boxes.len())
            .flat_map(|i| [(true, i), (false, i)])
            .chain(std::iter::once((true, lower.boxes.len())))
            .collect();
        let get = |u: &IsolatedRoots, l: &IsolatedRoots, (is_upper, i): (bool, usize)| {
            if is_upper {
                u.boxes[i].clone()
            } else {
                l.boxes[i].clone()
            }
        };
        let mut overlapping = Vec::new();
        for pair in order.windows(2) {
            let a = get(&upper, &lower, pair[0]);
            let b = get(&upper, &lower, pair[1]);
            if a.hi <= b.lo {
                continue;
            }
            if b.hi <= a.lo {
                return Ok(false);
            }
            overlapping.push(pair[0]);
            overlapping.push(pair[1]);
        }
        if overlapping.is_empty() {
            return Ok(true);
        }
        overlapping.sort();
        overlapping.dedup();
        for (is_upper, i) in overlapping {
            let target = if is_upper { &mut upper } else { &mut lower };
            if target.boxes[i].width() < floor {
                return Err(Error::CannotSeparate);
            }
            target.refine(i);
        }
    }
}

/// A zero of the symmetric sequence off the origin: radius box on ray
/// `ray`, i.e. at angle `2 pi ray / (r+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarZero {
    pub ray: usize,
    /// Position of the underlying component zero in increasing order.
    pub index: usize,
    pub radius: RootBox,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarZeros {
    pub r: usize,
    pub j: usize,
    pub origin_multiplicity: usize,
    pub zeros: Vec<StarZero>,
}

impl StarZeros {
    /// Columns `r, j, n, index, lo, hi, ray`.
    pub fn write_csv<W: Write>(&self, n: usize, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidParameter(format!("csv output failed: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "j", "n", "index", "lo", "hi", "ray"]).map_err(io)?;
        for z in &self.zeros {
            w.write_record([
                self.r.to_string(),
                self.j.to_string(),
                n.to_string(),
                z.index.to_string(),
                format_rational(&z.radius.lo),
                format_rational(&z.radius.hi),
                z.ray.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::InvalidParameter(format!("csv output failed: {e}")))
    }
}

/// Rational `(lo, hi)` with `lo^m <= x <= hi^m` and `hi - lo <= tol`.
pub fn root_bracket(x: &Rational, m: usize, tol: &Rational) -> (Rational, Rational) {
    let two = Rational::from_integer(2.into());
    let pow = |y: &Rational| num_traits::pow(y.clone(), m);
    let mut lo = Rational::zero();
    let mut hi = if *x > Rational::one() {
        x.clone()
    } else {
        Rational::one()
    };
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        match pow(&mid).cmp(x) {
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return (mid.clone(), mid),
        }
    }
    (lo, hi)
}

/// Zeros of `P_{(r+1)n+j}` from the boxes of `P_n^[j]`: the `(r+1)`-th root
/// of each box, rounded outward to within `tol`, copied onto every ray, plus
/// the origin with multiplicity `j`.
pub fn star_zero_map(r: usize, j: usize, boxes: &[RootBox], tol: &Rational) -> StarZeros {
    let m = r + 1;
    let radii: Vec<RootBox> = boxes
        .iter()
        .map(|b| RootBox {
            lo: root_bracket(&b.lo, m, tol).0,
            hi: root_bracket(&b.hi, m, tol).1,
        })
        .collect();
    let zeros = (0..m)
        .flat_map(|ray| {
            radii.iter().enumerate().map(move |(index, radius)| StarZero {
                ray,
                index,
                radius: radius.clone(),
            })
        })
        .collect();
    StarZeros {
        r,
        j,
        origin_multiplicity: j,
        zeros,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::AlphaSpec;
    use crate::bidiag::{build_factors, hessenberg_product};
    use crate::mop::{decompose, symmetric_sequence};
    use crate::paths::generalised_sr;
    use crate::ring::{int, rat, MultiPoly};

    fn q(v: &[Rational]) -> UniPoly<Rational> {
        UniPoly::new(v.to_vec())
    }

    fn two_pow(bits: usize) -> Rational {
        Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), bits))
    }

    #[test]
    fn minor_examples() {
        let h = hessenberg_product::<MultiPoly>(1, 0, &AlphaSpec::Symbolic, 4)
            .unwrap()
            .to_matrix();
        assert_eq!(minor_det(&h, &[1], &[0]).unwrap(), *h.get(1, 0));
        let d = minor_det(&h, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(d, MultiPoly::var(0) * MultiPoly::var(2));
        assert!(minor_det(&h, &[0, 4], &[0, 1]).is_err());
    }

    #[test]
    fn bidiagonal_minors_are_monomials() {
        let factors = build_factors::<MultiPoly>(2, &AlphaSpec::Symbolic, 5).unwrap();
        for f in factors {
            let rep = tp_check(&f.to_matrix(), 5, 3).unwrap();
            for m in rep.minors {
                assert!(m.value.len() <= 1, "{}", m.value);
                assert!(m.nonneg);
            }
        }
    }

    #[test]
    fn symbolic_tp_examples() {
        let h = hessenberg_product::<MultiPoly>(1, 0, &AlphaSpec::Symbolic, 4).unwrap();
        let rep = tp_check(&h.to_matrix(), 4, 2).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.minors.len(), 16 + 36);

        let s = AlphaSpec::Symbolic;
        let rows: Vec<Vec<MultiPoly>> = (0..4)
            .map(|n| (0..4).map(|k| generalised_sr(2, 1, n, k, &s).unwrap()).collect())
            .collect();
        assert!(tp_check(&Matrix::from_rows(rows).unwrap(), 4, 2).unwrap().passed());
    }

    #[test]
    fn symbolic_tp_of_leading_blocks() {
        for r in 1..=3 {
            for j in 0..=r {
                let h = hessenberg_product::<MultiPoly>(r, j, &AlphaSpec::Symbolic, 6).unwrap();
                let rep = tp_check(&h.to_matrix(), 6, SYMBOLIC_MAX_ORDER).unwrap();
                assert!(rep.passed(), "r={r} j={j}");
            }
        }
    }

    #[test]
    fn rational_tp_and_oscillation() {
        let h = hessenberg_product::<Rational>(2, 0, &AlphaSpec::Appell(2), 6)
            .unwrap()
            .to_matrix();
        assert!(tp_check(&h, 6, 6).unwrap().passed());
        assert!(oscillation_check(&h.crop(3)).unwrap().passed());

        let bad = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        let v = oscillation_check(&bad).unwrap();
        assert!(v.totally_positive && v.nonsingular && !v.off_diagonals_positive);

        let one = Matrix::from_rows(vec![vec![rat(2, 9)]]).unwrap();
        assert!(oscillation_check(&one).unwrap().passed());

        let neg = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(1)]]).unwrap();
        assert!(!tp_check(&neg, 2, 2).unwrap().passed());
    }

    #[test]
    fn oscillation_of_appell_blocks() {
        for r in 1..=3 {
            for j in 0..=r {
                let h = hessenberg_product::<Rational>(r, j, &AlphaSpec::Appell(r), 6)
                    .unwrap()
                    .to_matrix();
                for n in 1..=6 {
                    assert!(oscillation_check(&h.crop(n)).unwrap().passed(), "r={r} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn minors_csv() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(0), rat(1, 2)]]).unwrap();
        let mut out = Vec::new();
        tp_check(&m, 2, 2).unwrap().write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "order,rows,cols,nonneg,value");
        assert_eq!(lines[1], "1,0,0,true,1");
        assert_eq!(lines[5], "2,0 1,0 1,true,1/2");
    }

    #[test]
    fn isolate_linear_and_quadratic() {
        let w = two_pow(30);
        let lin = isolate_positive_simple_roots(&q(&[rat(-2, 9), int(1)]), &w).unwrap();
        assert_eq!(lin.boxes.len(), 1);
        assert!(lin.boxes[0].contains(&rat(2, 9)));

        // roots (20 -+ 6 sqrt 10) / 9
        let p = q(&[rat(40, 81), rat(-40, 9), int(1)]);
        let iso = isolate_positive_simple_roots(&p, &w).unwrap();
        assert_eq!(iso.boxes.len(), 2);
        // 6 sqrt 10 = |9x - 20| at both roots, so compare squares with 360
        let d = |x: &Rational| num_traits::pow(int(9) * x - int(20), 2);
        let (b0, b1) = (&iso.boxes[0], &iso.boxes[1]);
        assert!(b0.hi < rat(20, 9) && d(&b0.hi) < int(360) && int(360) < d(&b0.lo));
        assert!(b1.lo > rat(20, 9) && d(&b1.lo) < int(360) && int(360) < d(&b1.hi));
        for b in &iso.boxes {
            assert!(b.width() <= w);
            assert_eq!(p.sign_at(&b.lo) * p.sign_at(&b.hi), -1);
        }
        assert!(iso.boxes[0].hi < rat(1139, 10000) + rat(1, 1000));
        assert!(iso.boxes[1].lo > rat(4330, 1000));
    }

    #[test]
    fn isolation_errors() {
        let w = two_pow(10);
        assert_eq!(
            isolate_positive_simple_roots(&q(&[int(1), int(0), int(1)]), &w).unwrap_err(),
            Error::RootsNotAllPositive(0)
        );
        assert_eq!(
            isolate_positive_simple_roots(&q(&[int(1), int(-2), int(1)]), &w).unwrap_err(),
            Error::NotSquarefree
        );
        assert_eq!(
            isolate_positive_simple_roots(&q(&[int(2), int(-1), int(-2), int(1)]), &w).unwrap_err(),
            Error::RootsNotAllPositive(2)
        );
        assert_eq!(
            isolate_positive_simple_roots(&q(&[int(0), int(-1), int(1)]), &w).unwrap_err(),
            Error::RootsNotAllPositive(1)
        );
        assert_eq!(
            isolate_positive_simple_roots(&q(&[int(3)]), &w).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn isolation_handles_rational_roots_at_split_points() {
        // roots at 1, 2, 3, 4 include natural bisection points
        let p = q(&[int(24), int(-50), int(35), int(-10), int(1)]);
        let iso = isolate_positive_simple_roots(&p, &two_pow(20)).unwrap();
        for (b, root) in iso.boxes.iter().zip(1..) {
            assert!(b.contains(&int(root)));
            assert_ne!(p.sign_at(&b.lo), 0);
            assert_ne!(p.sign_at(&b.hi), 0);
        }
    }

    #[test]
    fn interlacing_examples() {
        let w = two_pow(8);
        let p1 = isolate_positive_simple_roots(&q(&[rat(-2, 9), int(1)]), &w).unwrap();
        let p2 =
            isolate_positive_simple_roots(&q(&[rat(40, 81), rat(-40, 9), int(1)]), &w).unwrap();
        assert!(interlacing_check(&p1, &p2).unwrap());
        assert!(!interlacing_check(&p2, &p1).unwrap());

        let a = isolate_positive_simple_roots(&q(&[int(-1), int(1)]), &w).unwrap();
        let b = isolate_positive_simple_roots(&q(&[int(2), int(-3), int(1)]), &w).unwrap();
        assert!(!interlacing_check(&a, &b).unwrap());

        let empty = IsolatedRoots::new(UniPoly::one(), vec![]);
        assert!(interlacing_check(&empty, &a).unwrap());

        // 5/2 lies outside (1, 2): same sizes, wrong order
        let c = isolate_positive_simple_roots(&q(&[rat(-5, 2), int(1)]), &w).unwrap();
        let d = isolate_positive_simple_roots(&q(&[int(2), int(-3), int(1)]), &w).unwrap();
        assert!(!interlacing_check(&c, &d).unwrap());
    }

    #[test]
    fn appell_components_interlace() {
        let w = two_pow(12);
        for r in 1..=3 {
            let alpha = AlphaSpec::Appell(r);
            let s = symmetric_sequence::<Rational>(r, &alpha, 8 * (r + 1) + r).unwrap();
            for c in decompose(&s).unwrap() {
                let mut prev: Option<IsolatedRoots> = None;
                for n in 1..=8 {
                    let iso = isolate_positive_simple_roots(&c.polys[n], &w).unwrap();
                    assert_eq!(iso.boxes.len(), n);
                    for b in &iso.boxes {
                        assert_eq!(c.polys[n].sign_at(&b.lo) * c.polys[n].sign_at(&b.hi), -1);
                    }
                    if let Some(p) = &prev {
                        assert!(interlacing_check(p, &iso).unwrap(), "r={r} j={} n={n}", c.j);
                    }
                    prev = Some(iso);
                }
            }
        }
    }

    #[test]
    fn star_zeros() {
        let w = two_pow(30);
        let iso = isolate_positive_simple_roots(&q(&[rat(-2, 9), int(1)]), &w).unwrap();
        let z = star_zero_map(2, 0, &iso.boxes, &w);
        assert_eq!(z.origin_multiplicity, 0);
        assert_eq!(z.zeros.iter().map(|s| s.ray).collect::<Vec<_>>(), vec![0, 1, 2]);
        let rad = &z.zeros[0].radius;
        // cube root of 2/9 is about 0.6057
        assert!(rad.lo > rat(6056, 10000) && rad.hi < rat(6058, 10000));
        let cube = |y: &Rational| num_traits::pow(y.clone(), 3);
        assert!(cube(&rad.lo) < rat(2, 9) && cube(&rad.hi) > rat(2, 9));

        let z1 = star_zero_map(1, 1, &iso.boxes, &w);
        assert_eq!(z1.origin_multiplicity, 1);
        assert_eq!(z1.zeros.len(), 2);

        let mut out = Vec::new();
        z.write_csv(1, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("r,j,n,index,lo,hi,ray\n2,0,1,0,"));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn star_radius_is_a_zero_on_ray_zero() {
        // P_{(r+1)n+j} changes sign across the ray-0 radius box
        let w = two_pow(20);
        let r = 2;
        let s = symmetric_sequence::<Rational>(r, &AlphaSpec::Appell(r), 3 * 3 + r).unwrap();
        let comps = decompose(&s).unwrap();
        for c in &comps {
            let n = 3;
            let iso = isolate_positive_simple_roots(&c.polys[n], &w).unwrap();
            let z = star_zero_map(r, c.j, &iso.boxes, &w);
            let big = &s.polys[(r + 1) * n + c.j];
            for sz in z.zeros.iter().filter(|sz| sz.ray == 0) {
                assert_eq!(big.sign_at(&sz.radius.lo) * big.sign_at(&sz.radius.hi), -1);
            }
        }
    }

    #[test]
    fn root_brackets() {
        let tol = two_pow(20);
        let (lo, hi) = root_bracket(&int(8), 3, &tol);
        assert_eq!((lo, hi), (int(2), int(2)));
        let (lo, hi) = root_bracket(&int(2), 2, &tol);
        assert!(&lo * &lo <= int(2) && &hi * &hi >= int(2) && &hi - &lo <= tol);
        assert_eq!(root_bracket(&int(0), 4, &tol).0, int(0));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn boxes_bracket_known_roots(
            roots in proptest::collection::btree_set((1i64..200, 1i64..12), 1..6),
            bits in 4usize..40,
        ) {
            let roots: std::collections::BTreeSet<Rational> =
                roots.into_iter().map(|(p, d)| rat(p, d)).collect();
            let p = roots.iter().fold(UniPoly::one(), |acc, x| {
                acc * q(&[-x.clone(), int(1)])
            });
            let w = two_pow(bits);
            let iso = isolate_positive_simple_roots(&p, &w).unwrap();
            prop_assert_eq!(iso.boxes.len(), roots.len());
            for (b, x) in iso.boxes.iter().zip(&roots) {
                prop_assert!(b.contains(x));
                prop_assert!(b.width() <= w);
                let (lo, hi) = (p.sign_at(&b.lo), p.sign_at(&b.hi));
                prop_assert!(lo * hi == -1 || b.lo == b.hi);
            }
        }
    }
}
